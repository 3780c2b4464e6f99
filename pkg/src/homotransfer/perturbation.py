"""SDR data, contractions and the tensor-trick transfer of A-infinity structures.

Sign note: with ``delta(H) = 1 - alpha r`` and ``S(H)`` taken through the
suspension bijection, the bar homotopy ``B(H)`` satisfies
``delta(B(H)) = 1 - B(alpha) B(r)``.  The perturbation series is then written
in terms of ``h = -B(H)``, the homotopy with ``delta(h) = B(alpha) B(r) - 1``:

    t^(1) = t,   t^(p+1) = (t h)^p t,   Sigma = t^(1) + ... + t^(N-1)
    b_C      = d_C + B(r) Sigma B(alpha)
    alpha^oo = B(alpha) + h Sigma B(alpha)
    r^oo     = B(r) + B(r) Sigma h
    h^oo     = h + h Sigma h,   B(H)^oo = -h^oo

which keeps ``delta(B(H)^oo) = 1 - alpha^oo r^oo`` for the perturbed
differentials.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from .ainfty import (
    AInfinityMorphism,
    AInfinityStructure,
    bar_defect,
    bar_differential,
    desuspend_multilinear,
    stasheff_defect,
    suspend_multilinear,
)
from .bar import (
    BarContext,
    BarMap,
    compose_bar,
    identity_bar,
    is_coalgebra_morphism,
    is_coderivation,
    lift_coderivation,
    lift_morphism,
)
from .graded import (
    Complex,
    GradedMap,
    amplify,
    compose,
    map_differential,
    sum_maps,
    tensor_map,
    tensor_maps,
    tensor_power,
)


@dataclass(frozen=True, eq=False)
class SDRDatum:
    """``alpha: C -> D``, ``r: D -> C`` and ``H: D -> D`` of bidegree ``(-1, 0)``."""

    C: Complex
    D: Complex
    alpha: GradedMap
    r: GradedMap
    H: GradedMap

    def __post_init__(self):
        shapes = (
            ("alpha", self.alpha, self.C, self.D, (0, 0)),
            ("r", self.r, self.D, self.C, (0, 0)),
            ("H", self.H, self.D, self.D, (-1, 0)),
        )
        for name, m, src, tgt, bideg in shapes:
            if m.source != src.space or m.target != tgt.space:
                raise ValueError(f"{name} has the wrong source or target")
            if not m.is_zero() and m.bidegree != bideg:
                raise ValueError(f"{name} has bidegree {m.bidegree}, expected {bideg}")
        if self.C.field != self.D.field:
            raise ValueError("C and D are over different fields")

    @property
    def field(self):
        return self.D.field

    def projector(self) -> GradedMap:
        """``1 - alpha r`` on ``D``."""
        return self.D.identity() - compose(self.alpha, self.r)


@dataclass
class SDRReport:
    defects: Dict[str, GradedMap]

    @property
    def counts(self) -> Dict[str, int]:
        return {k: m.nnz for k, m in self.defects.items()}

    @property
    def passed(self) -> bool:
        return all(m.is_zero() for m in self.defects.values())

    @property
    def failures(self) -> List[str]:
        return [k for k, m in self.defects.items() if not m.is_zero()]


def check_sdr(datum: SDRDatum) -> SDRReport:
    C, D = datum.C, datum.D
    defects = {
        "alpha closed": map_differential(datum.alpha, C, D),
        "r closed": map_differential(datum.r, D, C),
        "r o alpha = 1": compose(datum.r, datum.alpha) - C.identity(),
        "delta(H) = 1 - alpha o r": map_differential(datum.H, D) - datum.projector(),
    }
    return SDRReport(defects)


def side_condition_defects(datum: SDRDatum) -> Dict[str, GradedMap]:
    return {
        "H o alpha = 0": compose(datum.H, datum.alpha),
        "r o H = 0": compose(datum.r, datum.H),
        "H o H = 0": compose(datum.H, datum.H),
    }


class Contraction(SDRDatum):
    """An SDR datum that also satisfies ``H alpha = 0``, ``r H = 0``, ``H H = 0``."""

    def __post_init__(self):
        super().__post_init__()
        report = check_sdr(self)
        if not report.passed:
            raise ValueError(f"not an SDR datum: {', '.join(report.failures)} fail")
        bad = [k for k, m in side_condition_defects(self).items() if not m.is_zero()]
        if bad:
            raise ValueError(f"side conditions fail: {', '.join(bad)}")

    @classmethod
    def identity(cls, C: Complex) -> "Contraction":
        one = C.identity()
        return cls(C, C, one, one, GradedMap.zero(C.space, C.space, (-1, 0), C.field))


def is_contraction(datum: SDRDatum) -> bool:
    return check_sdr(datum).passed and all(m.is_zero() for m in side_condition_defects(datum).values())


def repair_to_contraction(datum: SDRDatum) -> Contraction:
    """Replace ``H`` by ``H'' = H' d H'`` where ``H' = delta(H) H delta(H)``.

    The result is re-verified on construction, including ``delta(H'') = 1 - alpha r``.
    """
    report = check_sdr(datum)
    if not report.passed:
        raise ValueError(f"input is not an SDR datum: {', '.join(report.failures)} fail")
    pi = map_differential(datum.H, datum.D)
    h1 = compose(pi, compose(datum.H, pi))
    h2 = compose(h1, compose(datum.D.d, h1))
    if h2.is_zero():
        h2 = GradedMap.zero(datum.D.space, datum.D.space, (-1, 0), datum.field)
    return Contraction(datum.C, datum.D, datum.alpha, datum.r, h2)


# ----------------------------------------------------------------------


def suspended_maps(c: SDRDatum) -> Tuple[GradedMap, GradedMap, GradedMap]:
    """``S(alpha)``, ``S(r)``, ``S(H)`` through the suspension bijection."""
    return suspend_multilinear(c.alpha), suspend_multilinear(c.r), suspend_multilinear(c.H)


def bar_homotopy(c: Contraction, N: int) -> BarMap:
    """``B(H)``: on ``(SD)^{(x) n}`` the sum over ``i`` of ``1^{i-1} (x) S(H) (x) (S(alpha) S(r))^{n-i}``."""
    if not isinstance(c, Contraction):
        raise ValueError("bar_homotopy needs a contraction (see repair_to_contraction)")
    ctx = BarContext(c.D, N)
    Sa, Sr, SH = suspended_maps(c)
    P = compose(Sa, Sr)
    powers = [None]
    for m in range(1, N):
        powers.append(P if m == 1 else tensor_map(powers[-1], P))
    field = c.field
    blocks = {}
    for n in range(1, N + 1):
        terms = []
        for i in range(1, n + 1):
            core = SH if n == i else tensor_map(SH, powers[n - i])
            terms.append(amplify(core, ctx.power(i - 1) if i > 1 else None, None))
        blocks[(n, n)] = sum_maps(terms, ctx.power(n), ctx.power(n), SH.bidegree, field)
    return BarMap(ctx, ctx, -1, blocks, check=False)


def bar_inclusion(c: SDRDatum, N: int) -> BarMap:
    Sa = suspend_multilinear(c.alpha)
    return lift_morphism({1: Sa}, BarContext(c.C, N), BarContext(c.D, N))


def bar_projection(c: SDRDatum, N: int) -> BarMap:
    Sr = suspend_multilinear(c.r)
    return lift_morphism({1: Sr}, BarContext(c.D, N), BarContext(c.C, N))


def plain_bar_differential(C: Complex, N: int) -> BarMap:
    """Coderivation lifting ``d_SC`` alone."""
    ctx = BarContext(C, N)
    return lift_coderivation({1: ctx.suspended.d}, ctx, degree=1)


@dataclass(eq=False)
class TransferResult:
    contraction: Contraction
    source: AInfinityStructure
    structure: AInfinityStructure
    alpha_inf: AInfinityMorphism
    r_inf: AInfinityMorphism
    homotopy: List[GradedMap]
    b_C: BarMap
    b_D: BarMap
    alpha_bar: BarMap
    r_bar: BarMap
    homotopy_bar: BarMap
    sigma: BarMap
    depth: int
    N: int

    def identity_defects(self, *, homotopy: bool = True) -> Dict[str, BarMap | GradedMap]:
        """Defect of every post-condition; all are zero for a correct transfer."""
        C = self.contraction.C
        out: Dict[str, BarMap | GradedMap] = {}
        for n in range(1, self.N + 1):
            out[f"stasheff[{n}]"] = stasheff_defect(self.structure, n)
        out["b_C o b_C = 0"] = compose_bar(self.b_C, self.b_C)
        out["m1 = d_C"] = self.structure.m(1) - C.d
        out["r_inf o alpha_inf = 1"] = compose_bar(self.r_bar, self.alpha_bar) - identity_bar(self.b_C.source)
        out["alpha_inf intertwines"] = compose_bar(self.alpha_bar, self.b_C) - compose_bar(self.b_D, self.alpha_bar)
        out["r_inf intertwines"] = compose_bar(self.r_bar, self.b_D) - compose_bar(self.b_C, self.r_bar)
        if homotopy:
            HH = self.homotopy_bar
            lhs = compose_bar(self.b_D, HH) + compose_bar(HH, self.b_D)
            rhs = identity_bar(self.b_D.source) - compose_bar(self.alpha_bar, self.r_bar)
            out["delta(H_inf) = 1 - alpha_inf r_inf"] = lhs - rhs
        return out

    def structural_checks(self) -> Dict[str, bool]:
        return {
            "b_C is a coderivation": is_coderivation(self.b_C),
            "alpha_inf is a coalgebra map": is_coalgebra_morphism(self.alpha_bar),
            "r_inf is a coalgebra map": is_coalgebra_morphism(self.r_bar),
        }

    def verify(self, *, homotopy: bool = True) -> Dict[str, int]:
        """Nonzero-entry count of each identity defect (zero means pass)."""
        counts = {k: v.nnz for k, v in self.identity_defects(homotopy=homotopy).items()}
        for k, ok in self.structural_checks().items():
            counts[k] = 0 if ok else 1
        return counts


def transfer(c: Contraction, A: AInfinityStructure, N: int | None = None) -> TransferResult:
    """Transfer ``A`` on ``D`` to ``C`` across the contraction ``c`` through arity ``N``."""
    if not isinstance(c, Contraction):
        raise ValueError("transfer needs a contraction; apply repair_to_contraction first")
    if A.space != c.D.space:
        raise ValueError("the structure does not live on the contraction's big complex")
    if A.m(1) != c.D.d:
        raise ValueError("t_D does not lower arity: m_1 of the structure differs from d_D")
    N = A.N if N is None else int(N)
    A = A.truncate(N)
    C, D = c.C, c.D
    ctxC, ctxD = BarContext(C, N), BarContext(D, N)

    b_D = bar_differential(A)
    t = b_D - plain_bar_differential(D, N)
    drop = t.max_arity_drop()
    if drop is not None and drop < 1:
        raise ValueError("t_D does not lower the arity filtration")
    B_alpha = bar_inclusion(c, N)
    B_r = bar_projection(c, N)
    B_H = bar_homotopy(c, N)
    h = -B_H

    sigma = t
    term = t
    depth = 1
    while True:
        term = compose_bar(t, compose_bar(h, term))
        if term.is_zero():
            break
        sigma = sigma + term
        depth += 1

    sigma_alpha = compose_bar(sigma, B_alpha)
    b_C = plain_bar_differential(C, N) + compose_bar(B_r, sigma_alpha)
    alpha_bar = B_alpha + compose_bar(h, sigma_alpha)
    sigma_h = compose_bar(sigma, h)
    r_bar = B_r + compose_bar(B_r, sigma_h)
    homotopy_bar = B_H - compose_bar(h, sigma_h)
    # B(H)^oo = -(h + h Sigma h) = B(H) - h Sigma h

    ops = [desuspend_multilinear(b_C.corestriction(n)) for n in range(1, N + 1)]
    ops[0] = C.d if ops[0].is_zero() or ops[0] == C.d else ops[0]
    structure = AInfinityStructure(C, ops)
    alpha_inf = AInfinityMorphism.from_bar(alpha_bar, structure, A)
    r_inf = AInfinityMorphism.from_bar(r_bar, A, structure)
    homotopy = [desuspend_multilinear(homotopy_bar.corestriction(n)) for n in range(1, N + 1)]
    return TransferResult(
        contraction=c,
        source=A,
        structure=structure,
        alpha_inf=alpha_inf,
        r_inf=r_inf,
        homotopy=homotopy,
        b_C=b_C,
        b_D=b_D,
        alpha_bar=alpha_bar,
        r_bar=r_bar,
        homotopy_bar=homotopy_bar,
        sigma=sigma,
        depth=depth,
        N=N,
    )


# ----------------------------------------------------------------------


@dataclass
class NaturalityReport:
    hypotheses: Dict[str, bool]
    checks: Dict[str, Optional[Tuple[int, int] | int]] = dc_field(default_factory=dict)

    @property
    def hypotheses_ok(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def natural(self) -> Optional[bool]:
        if not self.hypotheses_ok:
            return None
        return all(v is None for v in self.checks.values())

    @property
    def status(self) -> str:
        if not self.hypotheses_ok:
            return "hypotheses not satisfied"
        return "natural" if self.natural else "naturality failure"


def _first_block(F: BarMap):
    return F.first_nonzero_block()


def naturality_check(
    c: Contraction,
    c2: Contraction,
    phi_D: GradedMap,
    phi_C: GradedMap,
    A: AInfinityStructure,
    A2: AInfinityStructure,
    N: int | None = None,
) -> NaturalityReport:
    """Check that comparison maps compatible with the data commute with the transfer."""
    N = min(A.N, A2.N) if N is None else N
    hyp: Dict[str, bool] = {}
    shapes_ok = (
        phi_D.source == c.D.space and phi_D.target == c2.D.space
        and phi_C.source == c.C.space and phi_C.target == c2.C.space
        and (phi_D.is_zero() or phi_D.bidegree == (0, 0))
        and (phi_C.is_zero() or phi_C.bidegree == (0, 0))
    )
    hyp["shapes"] = shapes_ok
    if not shapes_ok:
        return NaturalityReport(hyp)
    hyp["phi_D closed"] = map_differential(phi_D, c.D, c2.D).is_zero()
    hyp["phi_C closed"] = map_differential(phi_C, c.C, c2.C).is_zero()
    hyp["phi_D alpha = alpha' phi_C"] = compose(phi_D, c.alpha) == compose(c2.alpha, phi_C)
    hyp["phi_C r = r' phi_D"] = compose(phi_C, c.r) == compose(c2.r, phi_D)
    hyp["phi_D H = H' phi_D"] = compose(phi_D, c.H) == compose(c2.H, phi_D)
    power = phi_D
    for n in range(1, N + 1):
        if n > 1:
            power = tensor_map(power, phi_D)
        hyp[f"phi_D intertwines m{n}"] = compose(phi_D, A.m(n)) == compose(A2.m(n), power)
    report = NaturalityReport(hyp)
    if not report.hypotheses_ok:
        return report

    T = transfer(c, A, N)
    T2 = transfer(c2, A2, N)
    power = phi_C
    for n in range(1, N + 1):
        if n > 1:
            power = tensor_map(power, phi_C)
        diff = compose(phi_C, T.structure.m(n)) - compose(T2.structure.m(n), power)
        report.checks[f"phi_C intertwines transferred m{n}"] = None if diff.is_zero() else n
    B_phi_D = lift_morphism({1: suspend_multilinear(phi_D)}, BarContext(c.D, N), BarContext(c2.D, N))
    B_phi_C = lift_morphism({1: suspend_multilinear(phi_C)}, BarContext(c.C, N), BarContext(c2.C, N))
    report.checks["B(phi_D) alpha_inf = alpha'_inf B(phi_C)"] = _first_block(
        compose_bar(B_phi_D, T.alpha_bar) - compose_bar(T2.alpha_bar, B_phi_C)
    )
    report.checks["B(phi_C) r_inf = r'_inf B(phi_D)"] = _first_block(
        compose_bar(B_phi_C, T.r_bar) - compose_bar(T2.r_bar, B_phi_D)
    )
    return report
