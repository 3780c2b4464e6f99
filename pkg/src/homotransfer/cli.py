"""Command line front end: ``homotransfer {verify,transfer,suite}``.

Exit status: 0 when every check passes, 1 when a check fails, 2 when the
input cannot be read or violates the interchange schema.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional, Sequence

from . import interchange as ix
from .ainfty import bar_defect, stasheff_defect
from .fields import QQ, ExactField
from .graded import amplify, compose, map_differential, tensor_power_complex
from .perturbation import (
    Contraction,
    check_sdr,
    is_contraction,
    repair_to_contraction,
    side_condition_defects,
    transfer,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class CommandReport:
    command: str
    parameters: Dict[str, Any]
    checks: List[Dict[str, Any]] = dc_field(default_factory=list)
    notes: Dict[str, Any] = dc_field(default_factory=dict)
    items: Optional[List[Dict[str, Any]]] = None
    timing_seconds: float = 0.0
    error: Optional[str] = None

    def check(self, name: str, defects: int) -> None:
        self.checks.append({"name": name, "passed": defects == 0, "defects": int(defects)})

    @property
    def passed(self) -> bool:
        ok = self.error is None and all(c["passed"] for c in self.checks)
        if self.items is not None:
            ok = ok and all(it["passed"] for it in self.items)
        return ok

    def to_json(self) -> dict:
        out = {"command": self.command, "parameters": self.parameters, "passed": self.passed, "checks": self.checks}
        if self.notes:
            out["notes"] = self.notes
        if self.items is not None:
            out["items"] = self.items
        if self.error is not None:
            out["error"] = self.error
        out["timing_seconds"] = round(self.timing_seconds, 6)
        return out

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=1)
        lines = [f"{self.command}: {'PASS' if self.passed else 'FAIL'}"]
        if self.error:
            lines.append(f"  error: {self.error}")
        for c in self.checks:
            lines.append(f"  {'PASS' if c['passed'] else 'FAIL'} {c['name']} (defects={c['defects']})")
        for k, v in self.notes.items():
            lines.append(f"  note {k}: {v}")
        for it in self.items or ():
            status = "PASS" if it["passed"] else "FAIL " + ", ".join(it["failed"])
            lines.append(f"  [{it['index']}] {it['description']}: {status}")
        lines.append(f"  time {self.timing_seconds:.3f}s")
        return "\n".join(lines)


class InputError(Exception):
    pass


def _check_field(doc: ix.Document, requested: Optional[str]) -> None:
    if requested is None:
        return
    try:
        f = ExactField.from_string(requested)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if f != doc.field:
        raise InputError(f"file is over {doc.field}, but --field {requested} was given")


# ----------------------------------------------------------------------


def _complex_checks(report: CommandReport, C) -> None:
    report.check("d o d = 0", compose(C.d, C.d).nnz)


def cmd_verify(path: str, kind: str, max_arity: Optional[int] = None, field: Optional[str] = None) -> CommandReport:
    report = CommandReport("verify", {"path": str(path), "kind": kind, "max_arity": max_arity})
    doc = ix.load(path)
    _check_field(doc, field)
    if kind == "complex":
        _complex_checks(report, ix.read_complex(doc))
    elif kind == "dga":
        C, mu = ix.read_dga(doc)
        _complex_checks(report, C)
        report.check("mu closed (graded Leibniz)", map_differential(mu, tensor_power_complex(C, 2), C).nnz)
        assoc = compose(mu, amplify(mu, None, C.space)) - compose(mu, amplify(mu, C.space, None))
        report.check("mu associative", assoc.nnz)
    elif kind == "ainfty":
        A = ix.read_ainfty(doc, max_arity)
        for n in range(1, A.N + 1):
            report.check(f"stasheff[{n}]", stasheff_defect(A, n).nnz)
        for n in range(1, A.N + 1):
            report.check(f"bar identity[{n}]", bar_defect(A, n).nnz)
        report.parameters["max_arity"] = A.N
    elif kind == "sdr":
        datum = ix.read_sdr(doc)
        _complex_checks(report, datum.C)
        _complex_checks(report, datum.D)
        for name, m in check_sdr(datum).defects.items():
            report.check(name, m.nnz)
        report.notes["side conditions"] = {k: m.nnz for k, m in side_condition_defects(datum).items()}
    else:
        raise InputError(f"unknown kind {kind!r}")
    return report


def _transfer_document(T) -> ix.Document:
    c = T.contraction
    doc = ix.sdr_document(c)
    for n in range(1, T.N + 1):
        doc.maps[f"m{n}"] = T.structure.m(n)
    for n in range(2, T.N + 1):
        doc.maps[f"D.m{n}"] = T.source.m(n)
    for n in range(1, T.N + 1):
        doc.maps[f"alpha_inf{n}"] = T.alpha_inf.f(n)
        doc.maps[f"r_inf{n}"] = T.r_inf.f(n)
        doc.maps[f"H_inf{n}"] = T.homotopy[n - 1]
    return doc


def cmd_transfer(
    path: str,
    max_arity: Optional[int] = None,
    out: Optional[str] = None,
    repair: bool = False,
    field: Optional[str] = None,
) -> CommandReport:
    report = CommandReport("transfer", {"path": str(path), "max_arity": max_arity, "repair": repair})
    doc = ix.load(path)
    _check_field(doc, field)
    datum = ix.read_sdr(doc)
    sdr = check_sdr(datum)
    if not sdr.passed:
        for name, m in sdr.defects.items():
            report.check(name, m.nnz)
        report.error = "input is not an SDR datum"
        return report
    if is_contraction(datum):
        c = Contraction(datum.C, datum.D, datum.alpha, datum.r, datum.H)
    elif repair:
        c = repair_to_contraction(datum)
        report.notes["repaired"] = True
    else:
        report.error = "SDR datum violates the side conditions; rerun with --repair"
        for name, m in side_condition_defects(datum).items():
            report.check(name, m.nnz)
        return report
    if max_arity is None:
        max_arity = max(ix.stored_arity(doc), 4) if "mu" not in doc.maps else 4
    if max_arity < 1:
        raise InputError("--max-arity must be at least 1")
    report.parameters["max_arity"] = max_arity
    try:
        A = ix.read_structure_on_D(doc, datum.D, max_arity)
    except ValueError as exc:
        raise InputError(f"structure on D: {exc}") from None
    for n in range(1, max_arity + 1):
        if not stasheff_defect(A, n).is_zero():
            report.check(f"input stasheff[{n}]", stasheff_defect(A, n).nnz)
            report.error = "input structure is not A-infinity through the requested arity"
            return report
    T = transfer(c, A, max_arity)
    for name, count in T.verify().items():
        report.check(name, count)
    report.notes["recursion depth"] = T.depth
    report.notes["nonzero operations"] = [n for n in range(1, T.N + 1) if not T.structure.m(n).is_zero()]
    report.notes["m3 nonzero"] = T.N >= 3 and not T.structure.m(3).is_zero()
    if out:
        _transfer_document(T).write(out)
        report.parameters["out"] = str(out)
    return report


def cmd_suite(
    seed: int,
    count: int,
    max_arity: int = 4,
    field: Optional[str] = None,
    max_dim: int = 6,
) -> CommandReport:
    from .ainfty import from_dga
    from .factory import random_suite

    try:
        f = ExactField.from_string(field) if field else QQ
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = CommandReport(
        "suite",
        {"seed": seed, "count": count, "max_arity": max_arity, "field": str(f), "max_dim": max_dim},
    )
    items = []
    for inst in random_suite(seed, count, max_dim=max_dim, field=f):
        A = from_dga(inst.complex, inst.mu, max_arity)
        T = transfer(inst.contraction, A, max_arity)
        counts = T.verify()
        failed = [k for k, v in counts.items() if v]
        items.append({"index": inst.index, "description": inst.description, "passed": not failed, "failed": failed})
    report.items = items
    return report


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--field", help="Q or Fp:q")
    common.add_argument("--max-arity", type=int, dest="max_arity")

    p = argparse.ArgumentParser(prog="homotransfer", description="Exact A-infinity transfer and verification.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="check the identities of a stored object")
    v.add_argument("path")
    v.add_argument("--kind", choices=["complex", "dga", "ainfty", "sdr"], required=True)

    t = sub.add_parser("transfer", parents=[common], help="transfer a structure across a contraction")
    t.add_argument("path")
    t.add_argument("--out")
    t.add_argument("--repair", action="store_true", help="repair the side conditions first")

    s = sub.add_parser("suite", parents=[common], help="run the randomized transfer suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--max-dim", type=int, default=6, dest="max_dim")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command == "verify":
            report = cmd_verify(args.path, args.kind, args.max_arity, args.field)
        elif args.command == "transfer":
            report = cmd_transfer(args.path, args.max_arity, args.out, args.repair, args.field)
        else:
            if args.count < 0:
                raise InputError("--count must be nonnegative")
            report = cmd_suite(args.seed, args.count, args.max_arity or 4, args.field, args.max_dim)
    except (ix.InterchangeError, InputError) as exc:
        report = CommandReport(args.command, {k: v for k, v in vars(args).items() if k not in ("command", "format")})
        report.error = f"input error: {exc}"
        report.timing_seconds = time.perf_counter() - start
        print(report.render(args.format))
        return EXIT_INPUT
    report.timing_seconds = time.perf_counter() - start
    print(report.render(args.format))
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
