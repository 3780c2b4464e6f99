"""Arity-truncated reduced tensor coalgebra on a suspended complex.

The coalgebra itself is never built.  A :class:`BarMap` stores component
blocks ``(j, k)``: maps ``(SC)^{(x) j} -> (SC')^{(x) k}`` for ``1 <= j, k <= N``.
Comultiplication only enters through the two lifting constructions and the
checks that invert them.
"""
from __future__ import annotations

from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .graded import (
    BigradedSpace,
    Complex,
    GradedMap,
    amplify,
    compose,
    suspend,
    sum_maps,
    tensor_map,
    tensor_power,
)

Block = Tuple[int, int]


class BarContext:
    """``B(C)`` truncated at arity ``N``: the spaces ``(SC)^{(x) j}``, ``j <= N``."""

    def __init__(self, C: Complex, N: int):
        if N < 1:
            raise ValueError("truncation arity must be at least 1")
        self.complex = C
        self.N = int(N)
        self.suspended, self.s = suspend(C)

    @property
    def field(self):
        return self.complex.field

    @property
    def base(self) -> BigradedSpace:
        return self.suspended.space

    def power(self, j: int) -> BigradedSpace:
        return tensor_power(self.base, j)

    def with_arity(self, N: int) -> "BarContext":
        return BarContext(self.complex, N)

    def compatible(self, other: "BarContext") -> bool:
        return self.N == other.N and self.base == other.base

    def __repr__(self) -> str:
        return f"BarContext({self.complex!r}, N={self.N})"


class BarMap:
    """Block table of a map ``B(C) -> B(C')`` of fixed total degree.

    Absent blocks are zero.  Blocks are keyed ``(j, k)`` for source arity ``j``
    and target arity ``k``.
    """

    __slots__ = ("source", "target", "degree", "blocks")

    def __init__(
        self,
        source: BarContext,
        target: BarContext,
        degree: int,
        blocks: Mapping[Block, GradedMap] | None = None,
        *,
        check: bool = True,
    ):
        if source.N != target.N:
            raise ValueError(f"truncation mismatch: {source.N} vs {target.N}")
        self.source = source
        self.target = target
        self.degree = int(degree)
        clean: Dict[Block, GradedMap] = {}
        for (j, k), m in (blocks or {}).items():
            if m.is_zero():
                continue
            if check:
                if not (1 <= j <= source.N and 1 <= k <= target.N):
                    raise ValueError(f"block {j}->{k} outside truncation {source.N}")
                if m.source != source.power(j) or m.target != target.power(k):
                    raise ValueError(f"block {j}->{k} has the wrong source or target")
                if m.total_degree != self.degree:
                    raise ValueError(
                        f"block {j}->{k} has total degree {m.total_degree}, declared {self.degree}"
                    )
            clean[(j, k)] = m
        self.blocks = clean

    @property
    def N(self) -> int:
        return self.source.N

    @property
    def field(self):
        return self.source.field

    def block(self, j: int, k: int) -> GradedMap:
        m = self.blocks.get((j, k))
        if m is None:
            return GradedMap.zero(self.source.power(j), self.target.power(k), (self.degree, 0), self.field)
        return m

    def corestriction(self, j: int) -> GradedMap:
        """The component ``(SC)^{(x) j} -> SC'``."""
        return self.block(j, 1)

    def corestrictions(self) -> list:
        return [self.corestriction(j) for j in range(1, self.N + 1)]

    def is_zero(self) -> bool:
        return not self.blocks

    @property
    def nnz(self) -> int:
        return sum(m.nnz for m in self.blocks.values())

    def first_nonzero_block(self) -> Block | None:
        return min(self.blocks) if self.blocks else None

    def max_arity_drop(self) -> int | None:
        """Smallest ``j - k`` over nonzero blocks (``None`` if zero)."""
        return min((j - k for j, k in self.blocks), default=None)

    def _like(self, blocks) -> "BarMap":
        return BarMap(self.source, self.target, self.degree, blocks, check=False)

    def _check_shape(self, other: "BarMap") -> None:
        if not (self.source.compatible(other.source) and self.target.compatible(other.target)):
            raise ValueError("bar maps live on different coalgebras or truncations")
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "BarMap") -> "BarMap":
        self._check_shape(other)
        blocks = dict(self.blocks)
        for key, m in other.blocks.items():
            blocks[key] = blocks[key] + m if key in blocks else m
        degree = other.degree if self.is_zero() else self.degree
        return BarMap(self.source, self.target, degree, blocks, check=False)

    def __neg__(self) -> "BarMap":
        return self._like({key: -m for key, m in self.blocks.items()})

    def __sub__(self, other: "BarMap") -> "BarMap":
        return self + (-other)

    def __matmul__(self, other: "BarMap") -> "BarMap":
        return compose_bar(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BarMap):
            return NotImplemented
        if not (self.source.compatible(other.source) and self.target.compatible(other.target)):
            return False
        keys = set(self.blocks) | set(other.blocks)
        return all(self.block(*key) == other.block(*key) for key in keys)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"BarMap(N={self.N}, degree={self.degree}, blocks={sorted(self.blocks)})"


# ----------------------------------------------------------------------


def _components(components, N: int) -> Dict[int, GradedMap]:
    if isinstance(components, Mapping):
        items = components.items()
    else:
        items = enumerate(components, start=1)
    out = {}
    for i, c in items:
        if c is None or i > N:
            continue
        if i < 1:
            raise ValueError("components start at arity 1")
        out[int(i)] = c
    return out


def _common_degree(comps: Iterable[GradedMap], default: int | None) -> int:
    degrees = {c.total_degree for c in comps if not c.is_zero()}
    if len(degrees) > 1:
        raise ValueError(f"components have mixed total degrees {sorted(degrees)}")
    if degrees:
        return degrees.pop()
    if default is None:
        raise ValueError("cannot infer the degree of an all-zero family; pass degree=")
    return default


def lift_coderivation(
    components: Sequence[GradedMap | None] | Mapping[int, GradedMap],
    ctx: BarContext,
    degree: int | None = None,
) -> BarMap:
    """Unique coderivation with the given corestriction ``b_1, ..., b_N``.

    Block ``j -> k`` is ``sum 1^{(x) r} (x) b_s (x) 1^{(x) t}`` over
    ``r + s + t = j``, ``k = r + 1 + t``.
    """
    N = ctx.N
    comps = _components(components, N)
    deg = _common_degree(comps.values(), degree if degree is not None else 1)
    for s, b in comps.items():
        if b.source != ctx.power(s) or b.target != ctx.base:
            raise ValueError(f"component of arity {s} does not map (SC)^{s} -> SC")
    blocks: Dict[Block, GradedMap] = {}
    for j in range(1, N + 1):
        for s, b in comps.items():
            if s > j or b.is_zero():
                continue
            k = j - s + 1
            terms = [
                amplify(b, ctx.power(r) if r else None, ctx.power(k - 1 - r) if k - 1 - r else None)
                for r in range(k)
            ]
            total = sum_maps(terms, ctx.power(j), ctx.power(k), b.bidegree, ctx.field)
            if (j, k) in blocks:
                total = blocks[(j, k)] + total
            blocks[(j, k)] = total
    return BarMap(ctx, ctx, deg, blocks, check=False)


def lift_morphism(
    components: Sequence[GradedMap | None] | Mapping[int, GradedMap],
    source: BarContext,
    target: BarContext,
) -> BarMap:
    """Coalgebra map with corestriction ``f_1, ..., f_N`` (all of total degree 0).

    Block ``j -> k`` is the sum over compositions ``j = i_1 + ... + i_k`` of
    ``f_{i_1} (x) ... (x) f_{i_k}``.
    """
    N = source.N
    if target.N != N:
        raise ValueError(f"truncation mismatch: {source.N} vs {target.N}")
    comps = _components(components, N)
    for i, f in comps.items():
        if not f.is_zero() and f.total_degree != 0:
            raise ValueError(f"morphism component f_{i} has total degree {f.total_degree}, expected 0")
        if f.source != source.power(i) or f.target != target.base:
            raise ValueError(f"component of arity {i} does not map (SC)^{i} -> SC'")
    field = source.field
    # table[(j, k)]: sum over compositions of j into k parts
    table: Dict[Block, GradedMap] = {}
    for j in range(1, N + 1):
        f = comps.get(j)
        if f is not None and not f.is_zero():
            table[(j, 1)] = f
    for k in range(2, N + 1):
        for j in range(k, N + 1):
            terms = []
            for i in range(1, j - k + 2):
                head = table.get((j - i, k - 1))
                f = comps.get(i)
                if head is None or f is None or f.is_zero():
                    continue
                terms.append(tensor_map(head, f))
            if terms:
                m = sum_maps(terms, source.power(j), target.power(k), (0, 0), field) if len(terms) > 1 else terms[0]
                if not m.is_zero():
                    table[(j, k)] = m
    return BarMap(source, target, 0, table, check=False)


def identity_bar(ctx: BarContext) -> BarMap:
    return BarMap(ctx, ctx, 0, {(j, j): GradedMap.identity(ctx.power(j), ctx.field) for j in range(1, ctx.N + 1)}, check=False)


def zero_bar(source: BarContext, target: BarContext, degree: int) -> BarMap:
    return BarMap(source, target, degree, {}, check=False)


def compose_bar(F: BarMap, G: BarMap) -> BarMap:
    """``(F o G)_{j->k} = sum_m F_{m->k} o G_{j->m}``."""
    if F.N != G.N:
        raise ValueError(f"truncation mismatch: {F.N} vs {G.N}")
    if not G.target.compatible(F.source):
        raise ValueError("target of G is not the source of F")
    by_source: Dict[int, list] = {}
    for (m, k), f in F.blocks.items():
        by_source.setdefault(m, []).append((k, f))
    acc: Dict[Block, list] = {}
    for (j, m), g in G.blocks.items():
        for k, f in by_source.get(m, ()):
            acc.setdefault((j, k), []).append(compose(f, g))
    degree = F.degree + G.degree
    field = F.field
    blocks = {}
    for (j, k), terms in acc.items():
        terms = [t for t in terms if not t.is_zero()]
        if len(terms) == 1:
            blocks[(j, k)] = terms[0]
        elif terms:
            blocks[(j, k)] = sum_maps(terms, G.source.power(j), F.target.power(k), terms[0].bidegree, field)
    return BarMap(G.source, F.target, degree, blocks, check=False)


def is_coderivation(F: BarMap) -> bool:
    """True iff ``F`` is the coderivation lifting its own corestriction."""
    if not F.source.compatible(F.target):
        raise ValueError("coderivation check needs an endomorphism of one coalgebra")
    lifted = lift_coderivation(
        {j: F.corestriction(j) for j in range(1, F.N + 1)}, F.source, degree=F.degree
    )
    return lifted == F


def is_coalgebra_morphism(F: BarMap) -> bool:
    """True iff ``F`` equals the coalgebra map generated by its corestriction."""
    if F.degree != 0 and not F.is_zero():
        return False
    lifted = lift_morphism({j: F.corestriction(j) for j in range(1, F.N + 1)}, F.source, F.target)
    return lifted == F


def bar_of(f: GradedMap, source: BarContext, target: BarContext) -> BarMap:
    """``B(f)`` for a chain map ``f`` given already in suspended form."""
    return lift_morphism({1: f}, source, target)
