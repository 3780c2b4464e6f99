"""A-infinity structures in m-form (signed) and b-form (sign-free on the bar side)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

from .bar import BarContext, BarMap, compose_bar, lift_coderivation, lift_morphism
from .fields import ExactField
from .graded import (
    BigradedSpace,
    Complex,
    GradedMap,
    amplify,
    compose,
    desuspension_map,
    inverse_signed_bijection,
    is_closed,
    map_differential,
    suspension_map,
    sum_maps,
    tensor_map,
    tensor_maps,
    tensor_power,
    tensor_power_complex,
)
from . import linalg
from .homology import Homology


# ----------------------------------------------------------------------
# suspension bijection


@lru_cache(maxsize=None)
def _desuspension_power(space: BigradedSpace, i: int, field: ExactField) -> GradedMap:
    """``(s^{-1})^{(x) i}: (SX)^{(x) i} -> X^{(x) i}`` with Koszul signs."""
    return tensor_maps([desuspension_map(space, field)] * i)


@lru_cache(maxsize=None)
def _suspension_power_inverse(space: BigradedSpace, i: int, field: ExactField) -> GradedMap:
    return inverse_signed_bijection(_desuspension_power(space, i, field))


def _base_of(space: BigradedSpace) -> BigradedSpace:
    base = space.factors[0]
    if any(f != base for f in space.factors):
        raise ValueError("multilinear maps must have source C^{(x) i} for a single C")
    return base


def arity_sign(i: int) -> int:
    """``(-1)**((i-1)(i+2)/2)``: +1 for arities 1, 2, 5, 6, ... and -1 for 3, 4, 7, 8, ...

    Composing the bare bijection ``s f (s^{-1})^{(x) i}`` with Koszul
    evaluation turns ``b o b = 0`` into Stasheff identities with sign
    ``(-1)**(t + s r)``.  This extra factor converts them to the
    ``(-1)**(r + s t)`` convention without touching arities 1 and 2.
    """
    return -1 if ((i - 1) * (i + 2) // 2) % 2 else 1


def suspend_multilinear(f: GradedMap) -> GradedMap:
    """``(-1)**(r+s+i-1) c(i) s_D o f o (s_C^{-1})^{(x) i}`` for ``f: C^{(x) i} -> D``.

    ``c(i)`` is :func:`arity_sign`.
    """
    C = _base_of(f.source)
    i = f.source.arity
    D = f.target
    if D.is_tensor:
        raise ValueError("target of a multilinear map must be a base space")
    r, s = f.bidegree
    out = compose(suspension_map(D, f.field), compose(f, _desuspension_power(C, i, f.field)))
    if (r + s + i - 1) % 2:
        out = -out
    if arity_sign(i) < 0:
        out = -out
    if out.is_zero():
        return GradedMap.zero(out.source, out.target, (r + i - 1, s), f.field)
    return out


def desuspend_multilinear(b: GradedMap) -> GradedMap:
    """Inverse of :func:`suspend_multilinear`."""
    SC = _base_of(b.source)
    SD = b.target
    C, D = SC.desuspension, SD.desuspension
    if C is None or D is None:
        raise ValueError("source and target must be suspended spaces")
    i = b.source.arity
    r1, s = b.bidegree
    out = compose(desuspension_map(D, b.field), compose(b, _suspension_power_inverse(C, i, b.field)))
    if (r1 + s) % 2:
        out = -out
    if arity_sign(i) < 0:
        out = -out
    if out.is_zero():
        return GradedMap.zero(out.source, out.target, (r1 - i + 1, s), b.field)
    return out


# ----------------------------------------------------------------------


def _zero_op(space: BigradedSpace, n: int, bidegree, field) -> GradedMap:
    return GradedMap.zero(tensor_power(space, n), space, bidegree, field)


class AInfinityStructure:
    """Operations ``m_1 = d, m_2, ..., m_N`` with ``m_n`` of bidegree ``(2 - n, 0)``.

    The contract is "A-infinity through arity N": Stasheff identities are only
    meaningful up to the truncation.
    """

    def __init__(self, complex: Complex, operations: Sequence[GradedMap | None]):
        if not operations:
            raise ValueError("need at least m_1")
        A = complex.space
        field = complex.field
        ops = []
        for n, m in enumerate(operations, start=1):
            if m is None:
                m = _zero_op(A, n, (2 - n, 0), field)
            if m.source != tensor_power(A, n) or m.target != A:
                raise ValueError(f"m_{n} must map A^(x){n} -> A")
            if m.is_zero():
                m = _zero_op(A, n, (2 - n, 0), field)
            elif m.bidegree != (2 - n, 0):
                raise ValueError(f"m_{n} has bidegree {m.bidegree}, expected {(2 - n, 0)}")
            ops.append(m)
        if ops[0] != complex.d:
            raise ValueError("m_1 must coincide with the differential")
        self.complex = complex
        self.operations: Tuple[GradedMap, ...] = tuple(ops)

    @property
    def N(self) -> int:
        return len(self.operations)

    @property
    def field(self) -> ExactField:
        return self.complex.field

    @property
    def space(self) -> BigradedSpace:
        return self.complex.space

    def m(self, n: int) -> GradedMap:
        if n <= self.N:
            return self.operations[n - 1]
        return _zero_op(self.space, n, (2 - n, 0), self.field)

    def truncate(self, N: int) -> "AInfinityStructure":
        return AInfinityStructure(self.complex, [self.m(n) for n in range(1, N + 1)])

    def replace(self, n: int, m: GradedMap) -> "AInfinityStructure":
        ops = list(self.operations)
        ops[n - 1] = m
        return AInfinityStructure(self.complex, ops)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AInfinityStructure):
            return NotImplemented
        N = max(self.N, other.N)
        return self.complex == other.complex and all(self.m(n) == other.m(n) for n in range(1, N + 1))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        nnz = [m.nnz for m in self.operations]
        return f"AInfinityStructure(dim={self.space.dim}, N={self.N}, nnz={nnz})"


class AInfinityMorphism:
    """Components ``f_n: A^{(x) n} -> B`` of bidegree ``(1 - n, 0)``."""

    def __init__(self, source: AInfinityStructure, target: AInfinityStructure, components: Sequence[GradedMap | None]):
        if source.N != target.N:
            raise ValueError("source and target must share the truncation arity")
        A, B = source.space, target.space
        field = source.field
        comps = []
        for n, f in enumerate(components, start=1):
            if f is None or f.is_zero():
                f = GradedMap.zero(tensor_power(A, n), B, (1 - n, 0), field)
            if f.source != tensor_power(A, n) or f.target != B:
                raise ValueError(f"f_{n} must map A^(x){n} -> B")
            if not f.is_zero() and f.bidegree != (1 - n, 0):
                raise ValueError(f"f_{n} has bidegree {f.bidegree}, expected {(1 - n, 0)}")
            comps.append(f)
        for n in range(len(comps) + 1, source.N + 1):
            comps.append(GradedMap.zero(tensor_power(A, n), B, (1 - n, 0), field))
        self.source = source
        self.target = target
        self.components: Tuple[GradedMap, ...] = tuple(comps[: source.N])

    @property
    def N(self) -> int:
        return self.source.N

    def f(self, n: int) -> GradedMap:
        return self.components[n - 1]

    def bar(self) -> BarMap:
        src = BarContext(self.source.complex, self.N)
        tgt = BarContext(self.target.complex, self.N)
        return lift_morphism([suspend_multilinear(f) for f in self.components], src, tgt)

    @classmethod
    def identity(cls, A: AInfinityStructure) -> "AInfinityMorphism":
        return cls(A, A, [GradedMap.identity(A.space, A.field)])

    @classmethod
    def from_bar(cls, F: BarMap, source: AInfinityStructure, target: AInfinityStructure) -> "AInfinityMorphism":
        return cls(source, target, [desuspend_multilinear(F.corestriction(j)) for j in range(1, F.N + 1)])


# ----------------------------------------------------------------------


def _first_failing(m: GradedMap):
    hit = m.first_nonzero()
    return None if hit is None else hit[0]


def from_dga(C: Complex, mu: GradedMap, max_arity: int = 3) -> AInfinityStructure:
    """``m_1 = d``, ``m_2 = mu``, higher operations zero."""
    A = C.space
    if mu.source != tensor_power(A, 2) or mu.target != A:
        raise ValueError("product must map A (x) A -> A")
    if not mu.is_zero() and mu.bidegree != (0, 0):
        raise ValueError(f"product must have bidegree (0, 0), got {mu.bidegree}")
    leibniz = map_differential(mu, tensor_power_complex(C, 2), C)
    if not leibniz.is_zero():
        raise ValueError(f"product is not closed (Leibniz fails on {_first_failing(leibniz)})")
    one = C.identity()
    assoc = compose(mu, tensor_map(mu, one)) - compose(mu, tensor_map(one, mu))
    if not assoc.is_zero():
        raise ValueError(f"product is not associative (fails on {_first_failing(assoc)})")
    ops = [C.d, mu] + [None] * (max_arity - 2)
    return AInfinityStructure(C, ops[:max(max_arity, 1)])


def stasheff_defect(A: AInfinityStructure, n: int) -> GradedMap:
    """``sum_{r+s+t=n} (-1)**(r+st) m_u o (1^{(x) r} (x) m_s (x) 1^{(x) t})``."""
    if n > A.N:
        raise ValueError(f"arity {n} exceeds truncation {A.N}")
    space = A.space
    terms = []
    for s in range(1, n + 1):
        for r in range(0, n - s + 1):
            t = n - s - r
            u = r + 1 + t
            inner = amplify(A.m(s), tensor_power(space, r) if r else None, tensor_power(space, t) if t else None)
            term = compose(A.m(u), inner)
            if (r + s * t) % 2:
                term = -term
            if not term.is_zero():
                terms.append(term)
    return sum_maps(terms, tensor_power(space, n), space, (3 - n, 0), A.field)


def b_form(A: AInfinityStructure) -> List[GradedMap]:
    """``b_n``: the suspended operations, all of bidegree ``(1, 0)``."""
    return [suspend_multilinear(m) for m in A.operations]


def bar_differential(A: AInfinityStructure) -> BarMap:
    return lift_coderivation(b_form(A), BarContext(A.complex, A.N), degree=1)


def bar_defect(A: AInfinityStructure, n: int) -> GradedMap:
    """``sum_{r+s+t=n} b_u o (1^{(x) r} (x) b_s (x) 1^{(x) t})`` (no signs)."""
    b = b_form(A)
    SA = b[0].target
    terms = []
    for s in range(1, n + 1):
        for r in range(0, n - s + 1):
            t = n - s - r
            u = r + 1 + t
            inner = amplify(b[s - 1], tensor_power(SA, r) if r else None, tensor_power(SA, t) if t else None)
            term = compose(b[u - 1], inner)
            if not term.is_zero():
                terms.append(term)
    return sum_maps(terms, tensor_power(SA, n), SA, (2, 0), A.field)


def is_ainfinity(A: AInfinityStructure) -> bool:
    return all(stasheff_defect(A, n).is_zero() for n in range(1, A.N + 1))


def check_morphism(F: AInfinityMorphism) -> bool:
    """True iff the bar form of ``F`` intertwines the bar differentials through arity N."""
    Fb = F.bar()
    left = compose_bar(Fb, bar_differential(F.source))
    right = compose_bar(bar_differential(F.target), Fb)
    return left == right


# ----------------------------------------------------------------------
# Massey products


def as_vector(space: BigradedSpace, vec: Mapping, field: ExactField) -> Dict[int, object]:
    """Accept ``{index: coeff}`` or ``{label: coeff}``."""
    out = {}
    for k, c in vec.items():
        i = k if isinstance(k, int) else space.index(k)
        c = field(c)
        if c:
            out[i] = c
    return out


def tensor_vectors(space: BigradedSpace, *vecs: Mapping[int, object]) -> Dict[int, object]:
    """Plain tensor of elements (no Koszul sign: nothing is moved past anything)."""
    out: Dict[int, object] = {0: 1}
    n = space.dim
    for v in vecs:
        out = {i * n + j: c * e for i, c in out.items() for j, e in v.items()}
    return out


def _bidegree_of(space: BigradedSpace, vec: Mapping[int, object]) -> Tuple[int, int]:
    bds = {space.bidegree(i) for i in vec}
    if len(bds) != 1:
        raise ValueError("Massey inputs must be homogeneous")
    return bds.pop()


def _total_parity(space: BigradedSpace, vec: Mapping[int, object]) -> int:
    parities = {space.parity[i] for i in vec}
    if len(parities) > 1:
        raise ValueError("Massey inputs must be homogeneous")
    return parities.pop() if parities else 0


@dataclass(frozen=True)
class MasseyProduct:
    value: Dict[int, object]
    bidegree: Tuple[int, int] | None
    class_coordinates: Tuple[object, ...]
    indeterminacy: Tuple[Tuple[object, ...], ...]
    nonvanishing: bool


def massey_triple(A: AInfinityStructure, x, y, z) -> MasseyProduct:
    """Class of ``m_3(x, y, z)`` and its indeterminacy.

    When ``m_2(x, y) = m_1(u)`` and ``m_2(y, z) = m_1(v)`` at chain level the
    cycle ``m_3(x,y,z) + m_2(u,z) - (-1)**|x| m_2(x,v)`` is used; on a complex
    with zero differential this is ``m_3(x,y,z)`` itself.
    """
    if A.N < 3:
        raise ValueError("Massey triple products need m_3")
    space, field = A.space, A.field
    x, y, z = (as_vector(space, v, field) for v in (x, y, z))
    H = Homology(A.complex)
    for name, v in (("x", x), ("y", y), ("z", z)):
        if not H.is_cycle(v):
            raise ValueError(f"{name} is not a cycle")
    m2, m3 = A.m(2), A.m(3)
    xy = m2(tensor_vectors(space, x, y))
    yz = m2(tensor_vectors(space, y, z))
    u = H.preimage(xy)
    if u is None:
        raise ValueError(f"[m2(x, y)] = {H.class_of(xy)} is nonzero")
    v = H.preimage(yz)
    if v is None:
        raise ValueError(f"[m2(y, z)] = {H.class_of(yz)} is nonzero")
    value = dict(m3(tensor_vectors(space, x, y, z)))
    sign = -1 if _total_parity(space, x) == 0 else 1
    for k, c in m2(tensor_vectors(space, u, z)).items():
        value[k] = value.get(k, 0) + c
    for k, c in m2(tensor_vectors(space, x, v)).items():
        value[k] = value.get(k, 0) + sign * c
    value = {k: field.normalize(c) for k, c in value.items() if field.normalize(c)}

    bd = None
    if x and y and z:
        (px, nx), (py, ny), (pz, nz) = (_bidegree_of(space, w) for w in (x, y, z))
        bd = (px + py + pz - 1, nx + ny + nz)
    betti = H.betti(*bd) if bd else 0
    zero = tuple(field.zero for _ in range(betti))
    coords = H.class_of(value).get(bd, zero) if value else zero

    indet = []
    for piece in H.pieces():
        for rep in piece.representatives:
            for w in (m2(tensor_vectors(space, x, rep)), m2(tensor_vectors(space, rep, z))):
                if w:
                    c = H.class_of(w).get(bd)
                    if c is not None and any(c):
                        indet.append(c)
    nonvanishing = any(coords) and not linalg.in_span(indet, coords, field)
    return MasseyProduct(value, bd, tuple(coords), tuple(indet), bool(nonvanishing))
