"""JSON interchange: spaces, sparse maps and bar-map block tables.

Document layout::

    {"field": "Q" | {"Fp": q},
     "spaces": {name: [{"name": label, "degree": p, "weight": n}, ...]},
     "maps": {name: {"source": space | [space, ...], "target": space | [...],
                     "bidegree": [r, s], "arity": i,
                     "entries": [{"from": label | [labels], "to": label | [labels],
                                  "coeff": "a/b"}]}}}

A bar map is stored as ``{"degree": k, "blocks": {"j->k": map, ...}}``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from .ainfty import AInfinityStructure
from .fields import ExactField
from .graded import BigradedSpace, Complex, GradedMap, tensor_spaces
from .perturbation import SDRDatum


class InterchangeError(ValueError):
    """Malformed document; ``location`` is a dotted path into the JSON."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


@dataclass
class Document:
    field: ExactField
    spaces: Dict[str, BigradedSpace] = dc_field(default_factory=dict)
    maps: Dict[str, Any] = dc_field(default_factory=dict)
    extra: Dict[str, Any] = dc_field(default_factory=dict)

    # -- writing ------------------------------------------------------

    def add_space(self, name: str, space: BigradedSpace) -> None:
        if space.is_tensor:
            raise ValueError("register factor spaces, not tensor spaces")
        self.spaces[name] = space

    def _space_ref(self, space: BigradedSpace):
        factors = space.factors if space.is_tensor else (space,)
        names = []
        for f in factors:
            hit = next((k for k, v in self.spaces.items() if v == f), None)
            if hit is None:
                raise ValueError(f"space {f!r} is not registered in the document")
            names.append(hit)
        return names if space.is_tensor else names[0]

    def _map_json(self, m: GradedMap) -> dict:
        src, tgt = m.source, m.target
        fmt = self.field.format
        entries = []
        for i in sorted(m.entries):
            for j in sorted(m.entries[i]):
                entries.append({"from": _label_json(src.labels[i]), "to": _label_json(tgt.labels[j]), "coeff": fmt(m.entries[i][j])})
        out = {"source": self._space_ref(src), "target": self._space_ref(tgt), "bidegree": list(m.bidegree)}
        if src.is_tensor:
            out["arity"] = src.arity
        out["entries"] = entries
        return out

    def to_json(self) -> dict:
        from .bar import BarMap

        maps = {}
        for name, m in self.maps.items():
            if isinstance(m, BarMap):
                maps[name] = {
                    "degree": m.degree,
                    "blocks": {f"{j}->{k}": self._map_json(b) for (j, k), b in sorted(m.blocks.items())},
                }
            elif isinstance(m, dict):
                maps[name] = m
            else:
                maps[name] = self._map_json(m)
        spaces = {
            name: [{"name": l, "degree": p, "weight": n} for l, p, n in zip(sp.labels, sp.degrees, sp.weights)]
            for name, sp in self.spaces.items()
        }
        out = {"field": self.field.to_json(), "spaces": spaces, "maps": maps}
        out.update(self.extra)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.dumps())

    # -- reading ------------------------------------------------------

    def map(self, name: str) -> GradedMap:
        if name not in self.maps:
            raise InterchangeError(f"maps.{name}", "missing")
        m = self.maps[name]
        if not isinstance(m, GradedMap):
            raise InterchangeError(f"maps.{name}", "expected a graded map, found a bar map")
        return m

    def has(self, *names: str) -> bool:
        return all(n in self.maps for n in names)


def _label_json(label):
    return list(label) if isinstance(label, tuple) else label


# ----------------------------------------------------------------------


def _require(obj, key, loc, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise InterchangeError(loc, f"missing key {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise InterchangeError(f"{loc}.{key}", f"expected {getattr(kind, '__name__', kind)}")
    return val


def _parse_space(items, loc) -> List[tuple]:
    if not isinstance(items, list):
        raise InterchangeError(loc, "expected a list of basis elements")
    basis = []
    for k, el in enumerate(items):
        here = f"{loc}[{k}]"
        name = _require(el, "name", here, str)
        deg = _require(el, "degree", here, int)
        wt = _require(el, "weight", here, int)
        if isinstance(deg, bool) or isinstance(wt, bool):
            raise InterchangeError(here, "degree and weight must be integers")
        basis.append((name, deg, wt))
    if len({b[0] for b in basis}) != len(basis):
        raise InterchangeError(loc, "basis labels are not unique")
    return basis


def _resolve_space(ref, spaces, loc) -> BigradedSpace:
    if isinstance(ref, str):
        if ref not in spaces:
            raise InterchangeError(loc, f"unknown space {ref!r}")
        return spaces[ref]
    if isinstance(ref, list) and ref and all(isinstance(r, str) for r in ref):
        for r in ref:
            if r not in spaces:
                raise InterchangeError(loc, f"unknown space {r!r}")
        return tensor_spaces(*(spaces[r] for r in ref))
    raise InterchangeError(loc, "expected a space name or a list of names")


def _index(space: BigradedSpace, label, loc) -> int:
    key = tuple(label) if isinstance(label, list) else label
    try:
        return space.index(key)
    except (KeyError, ValueError):
        raise InterchangeError(loc, f"unknown basis element {label!r}") from None


def _parse_map(obj, spaces, field: ExactField, loc) -> GradedMap:
    src = _resolve_space(_require(obj, "source", loc), spaces, f"{loc}.source")
    tgt = _resolve_space(_require(obj, "target", loc), spaces, f"{loc}.target")
    bd = _require(obj, "bidegree", loc, list)
    if len(bd) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in bd):
        raise InterchangeError(f"{loc}.bidegree", "expected [r, s] integers")
    if "arity" in obj:
        arity = obj["arity"]
        if arity != (src.arity if src.is_tensor else 1):
            raise InterchangeError(f"{loc}.arity", f"declared {arity} but source has arity {src.arity if src.is_tensor else 1}")
    entries: Dict[int, Dict[int, object]] = {}
    for k, e in enumerate(_require(obj, "entries", loc, list)):
        here = f"{loc}.entries[{k}]"
        i = _index(src, _require(e, "from", here), f"{here}.from")
        j = _index(tgt, _require(e, "to", here), f"{here}.to")
        coeff = _require(e, "coeff", here)
        try:
            c = field.parse(str(coeff))
        except (ValueError, ZeroDivisionError) as exc:
            raise InterchangeError(f"{here}.coeff", f"bad coefficient {coeff!r}: {exc}") from None
        col = entries.setdefault(i, {})
        col[j] = field.normalize(col.get(j, field.zero) + c)
    try:
        return GradedMap(src, tgt, tuple(bd), field, entries)
    except ValueError as exc:
        raise InterchangeError(loc, str(exc)) from None


def parse_document(obj: Mapping) -> Document:
    if not isinstance(obj, dict):
        raise InterchangeError("$", "document must be a JSON object")
    try:
        field = ExactField.from_json(_require(obj, "field", "$"))
    except InterchangeError:
        raise
    except (ValueError, TypeError) as exc:
        raise InterchangeError("field", str(exc)) from None
    spaces = {}
    for name, items in _require(obj, "spaces", "$", dict).items():
        spaces[name] = BigradedSpace(_parse_space(items, f"spaces.{name}"), name=name)
    doc = Document(field, spaces)
    for name, m in _require(obj, "maps", "$", dict).items():
        loc = f"maps.{name}"
        if isinstance(m, dict) and "blocks" in m:
            doc.maps[name] = m  # bar maps stay raw; see load_bar_map
        else:
            doc.maps[name] = _parse_map(m, spaces, field, loc)
    doc.extra = {k: v for k, v in obj.items() if k not in ("field", "spaces", "maps")}
    return doc


def loads(text: str) -> Document:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InterchangeError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return parse_document(obj)


def load(path) -> Document:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InterchangeError(str(path), exc.strerror or str(exc)) from None
    return loads(text)


def load_bar_blocks(doc: Document, name: str) -> Dict[tuple, GradedMap]:
    """Block table ``{(j, k): GradedMap}`` of a stored bar map."""
    raw = doc.maps.get(name)
    if not isinstance(raw, dict) or "blocks" not in raw:
        raise InterchangeError(f"maps.{name}", "not a bar map")
    out = {}
    for key, m in raw["blocks"].items():
        try:
            j, k = (int(x) for x in key.split("->"))
        except ValueError:
            raise InterchangeError(f"maps.{name}.blocks", f"bad block key {key!r}") from None
        out[(j, k)] = _parse_map(m, doc.spaces, doc.field, f"maps.{name}.blocks.{key}")
    return out


# ----------------------------------------------------------------------
# conventions per file kind


def complex_document(C: Complex, name: str = "C") -> Document:
    doc = Document(C.field)
    doc.add_space(name, C.space)
    doc.maps["d"] = C.d
    return doc


def dga_document(C: Complex, mu: GradedMap, name: str = "D") -> Document:
    doc = complex_document(C, name)
    doc.maps["mu"] = mu
    return doc


def ainfty_document(A: AInfinityStructure, name: str = "A") -> Document:
    doc = Document(A.field)
    doc.add_space(name, A.space)
    for n in range(1, A.N + 1):
        doc.maps[f"m{n}"] = A.m(n)
    return doc


def sdr_document(datum: SDRDatum, mu: GradedMap | None = None, structure: AInfinityStructure | None = None) -> Document:
    """Spaces ``C``, ``D``; maps ``d_C``, ``d_D``, ``alpha``, ``r``, ``H`` and the structure on ``D``."""
    doc = Document(datum.field)
    doc.add_space("C", datum.C.space)
    doc.add_space("D", datum.D.space)
    doc.maps.update(d_C=datum.C.d, d_D=datum.D.d, alpha=datum.alpha, r=datum.r, H=datum.H)
    if mu is not None:
        doc.maps["mu"] = mu
    if structure is not None:
        for n in range(2, structure.N + 1):
            doc.maps[f"m{n}"] = structure.m(n)
    return doc


def _complex_from(doc: Document, dname: str, loc: str) -> Complex:
    d = doc.map(dname)
    if d.source != d.target or d.source.is_tensor:
        raise InterchangeError(f"maps.{dname}", "differential must be an endomorphism of one space")
    if not d.is_zero() and d.bidegree != (1, 0):
        raise InterchangeError(f"maps.{dname}.bidegree", "differential must have bidegree [1, 0]")
    return Complex(d.source, d, check=False)


def read_complex(doc: Document) -> Complex:
    for name in ("d", "d_D", "m1"):
        if name in doc.maps:
            return _complex_from(doc, name, name)
    raise InterchangeError("maps", "no differential (expected 'd', 'd_D' or 'm1')")


def read_dga(doc: Document):
    """``(Complex, mu)`` without validity checks."""
    C = read_complex(doc)
    mu = doc.map("mu")
    if mu.target != C.space or mu.source != tensor_spaces(C.space, C.space):
        raise InterchangeError("maps.mu", "product must map D (x) D -> D")
    if not mu.is_zero() and mu.bidegree != (0, 0):
        raise InterchangeError("maps.mu.bidegree", "product must have bidegree [0, 0]")
    return C, mu


def stored_arity(doc: Document) -> int:
    n = 1
    while f"m{n + 1}" in doc.maps:
        n += 1
    return n


def read_ainfty(doc: Document, max_arity: int | None = None) -> AInfinityStructure:
    if "m1" not in doc.maps:
        raise InterchangeError("maps", "A-infinity file needs m1, m2, ...")
    N = stored_arity(doc)
    if max_arity is not None and max_arity > N:
        raise InterchangeError("maps", f"requested arity {max_arity} exceeds stored arity {N}")
    C = _complex_from(doc, "m1", "m1")
    ops = [doc.map(f"m{n}") for n in range(1, (max_arity or N) + 1)]
    try:
        return AInfinityStructure(C, ops)
    except ValueError as exc:
        raise InterchangeError("maps", str(exc)) from None


def read_sdr(doc: Document) -> SDRDatum:
    for key in ("C", "D"):
        if key not in doc.spaces:
            raise InterchangeError("spaces", f"SDR file needs space {key!r}")
    C = _complex_from(doc, "d_C", "d_C")
    D = _complex_from(doc, "d_D", "d_D")
    try:
        return SDRDatum(C, D, doc.map("alpha"), doc.map("r"), doc.map("H"))
    except InterchangeError:
        raise
    except ValueError as exc:
        raise InterchangeError("maps", str(exc)) from None


def read_structure_on_D(doc: Document, D: Complex, N: int) -> AInfinityStructure:
    """The structure on ``D``: ``mu`` (a DGA), or ``m2, ..., mK`` with ``m1 = d_D``."""
    if "mu" in doc.maps:
        mu = doc.map("mu")
        return AInfinityStructure(D, [D.d, mu] + [None] * max(0, N - 2))
    K = stored_arity(doc)
    ops = [D.d] + [doc.map(f"m{n}") for n in range(2, K + 1)]
    ops += [None] * max(0, N - K)
    return AInfinityStructure(D, ops[: max(N, 1)])


# ----------------------------------------------------------------------
# bundled fixtures

FIXTURES = ("interval", "circle", "torus", "massey")


def fixture_path(name: str):
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return resources.files("homotransfer") / "data" / f"{name}.json"


def load_fixture(name: str) -> Document:
    return loads(fixture_path(name).read_text())


def build_fixture(name: str) -> Document:
    """Regenerate a bundled fixture: a cochain or Massey DGA with its elimination contraction."""
    from .factory import SimplicialComplexDescription, cochain_dga, gaussian_contraction, massey_instance

    if name == "massey":
        D, mu, x, y, z = massey_instance()
        doc = sdr_document(gaussian_contraction(D), mu)
        labels = D.space.labels
        doc.extra["cycles"] = {k: {labels[i]: str(c) for i, c in v.items()} for k, v in (("x", x), ("y", y), ("z", z))}
        return doc
    K = getattr(SimplicialComplexDescription, name)()
    D, mu = cochain_dga(K, name="D")
    return sdr_document(gaussian_contraction(D), mu)
