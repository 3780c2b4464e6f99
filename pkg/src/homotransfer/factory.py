"""Concrete inputs: cochain algebras, elimination contractions, random suites."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .fields import QQ, ExactField
from .graded import BigradedSpace, Complex, GradedMap, compose, map_differential, tensor_map, tensor_power
from .perturbation import Contraction, SDRDatum, repair_to_contraction


# ----------------------------------------------------------------------
# simplicial cochains


@dataclass(frozen=True)
class SimplicialComplexDescription:
    vertices: Tuple[str, ...]
    facets: Tuple[Tuple[int, ...], ...]

    def __init__(self, vertices: Sequence, facets: Sequence[Sequence[int]]):
        verts = tuple(str(v) for v in vertices)
        if len(set(verts)) != len(verts):
            raise ValueError("vertex labels must be unique")
        fs = []
        for facet in facets:
            facet = tuple(facet)
            if not facet:
                raise ValueError("empty facet")
            if any(not isinstance(i, int) or isinstance(i, bool) for i in facet):
                raise ValueError(f"facet {facet} has non-integer entries")
            if any(i < 0 or i >= len(verts) for i in facet):
                raise ValueError(f"facet {facet} refers to a missing vertex")
            if any(a >= b for a, b in zip(facet, facet[1:])):
                raise ValueError(f"facet {facet} is not strictly increasing")
            fs.append(facet)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "facets", tuple(fs))

    def simplices(self) -> List[Tuple[int, ...]]:
        """Face closure, sorted by dimension then lexicographically."""
        faces = set()
        for facet in self.facets:
            for k in range(1, len(facet) + 1):
                faces.update(itertools.combinations(facet, k))
        return sorted(faces, key=lambda s: (len(s), s))

    def label(self, simplex: Sequence[int]) -> str:
        return "-".join(self.vertices[i] for i in simplex)

    @classmethod
    def interval(cls) -> "SimplicialComplexDescription":
        return cls(["0", "1"], [[0, 1]])

    @classmethod
    def circle(cls) -> "SimplicialComplexDescription":
        return cls(["0", "1", "2"], [[0, 1], [1, 2], [0, 2]])

    @classmethod
    def torus(cls) -> "SimplicialComplexDescription":
        """Nine-vertex torus: the 3x3 grid with opposite sides glued, two triangles per square."""
        def v(i, j):
            return 3 * (i % 3) + (j % 3)

        facets = []
        for i in range(3):
            for j in range(3):
                a, b, c, d = v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)
                facets.append(sorted((a, b, d)))
                facets.append(sorted((a, c, d)))
        return cls([str(k) for k in range(9)], facets)


def cochain_dga(K: SimplicialComplexDescription, field: ExactField = QQ, name: str | None = None):
    """Simplicial cochains with coboundary and the front/back-face cup product.

    Returns ``(Complex, mu)``; the basis element for a simplex is its dual
    cochain, labelled by the vertex labels joined with ``-``.
    """
    simplices = K.simplices()
    pos = {s: i for i, s in enumerate(simplices)}
    space = BigradedSpace([(K.label(s), len(s) - 1, 0) for s in simplices], name=name)
    d_entries: Dict[int, Dict[int, int]] = {}
    for tau in simplices:
        for i in range(len(tau)):
            face = tau[:i] + tau[i + 1:]
            if face:
                d_entries.setdefault(pos[face], {})[pos[tau]] = (-1) ** i
    d = GradedMap(space, space, (1, 0), field, d_entries)
    C = Complex(space, d)
    sq = tensor_power(space, 2)
    n = len(simplices)
    mu_entries: Dict[int, Dict[int, int]] = {}
    for a, sa in enumerate(simplices):
        for b, sb in enumerate(simplices):
            if sa[-1] != sb[0]:
                continue
            joined = sa + sb[1:]
            if joined in pos:
                mu_entries[a * n + b] = {pos[joined]: 1}
    mu = GradedMap(sq, space, (0, 0), field, mu_entries)
    return C, mu


def unit_vector(K: SimplicialComplexDescription, C: Complex) -> Dict[int, int]:
    """The unit cochain: the sum of all vertex duals."""
    return {C.space.index(v): 1 for v in K.vertices}


# ----------------------------------------------------------------------
# Gaussian elimination


def gaussian_contraction(D: Complex, max_steps: int | None = None, name: str | None = None) -> Contraction:
    """Contract ``D`` by repeatedly cancelling a pair ``b -> c`` with ``d(b)`` having ``c``-coefficient nonzero.

    Pivots: lowest degree first, then basis order; ``c`` is the first basis
    element in the support of ``d(b)``.  Run to completion the small complex
    has zero differential; ``max_steps`` stops early.
    """
    f = D.field
    q = f.q
    sp = D.space
    n = sp.dim
    d = {i: dict(D.d.column(i)) for i in range(n)}
    alive = set(range(n))
    alpha = {i: {i: f.one} for i in range(n)}  # survivor -> vector in D
    r = {i: {i: f.one} for i in range(n)}  # D basis -> vector in survivors
    H: Dict[int, Dict[int, object]] = {}
    order = sorted(range(n), key=lambda i: (sp.degrees[i], i))

    def norm(x):
        return x % q if q else x

    steps = 0
    while max_steps is None or steps < max_steps:
        b = next((i for i in order if i in alive and d[i]), None)
        if b is None:
            break
        db = d[b]
        c = min(db)
        inv = f.inv(db[c])
        rest = {y: e for y, e in db.items() if y != c}  # [d b]_R
        ab = alpha[b]
        # coefficients <d x, c>
        coef = {x: d[x][c] for x in alive if x not in (b, c) and c in d[x]}
        # H_total += alpha_total o H_step o r_total, with H_step(c) = inv * b
        for e, col in r.items():
            k = col.get(c)
            if k:
                target = H.setdefault(e, {})
                for y, v in ab.items():
                    target[y] = norm(target.get(y, 0) + k * inv * v)
                H[e] = {y: v for y, v in target.items() if v}
        # r_total' = r_step o r_total
        for e, col in r.items():
            k = col.pop(c, None)
            col.pop(b, None)
            if k:
                for y, v in rest.items():
                    col[y] = norm(col.get(y, 0) - k * inv * v)
                r[e] = {y: v for y, v in col.items() if v}
        # alpha_total' = alpha_total o alpha_step, differential update
        for x, k in coef.items():
            ax = alpha[x]
            for y, v in ab.items():
                ax[y] = norm(ax.get(y, 0) - k * inv * v)
            alpha[x] = {y: v for y, v in ax.items() if v}
            dx = d[x]
            for y, v in rest.items():
                dx[y] = norm(dx.get(y, 0) - k * inv * v)
        for x in alive:
            if x in (b, c):
                continue
            dx = d[x]
            dx.pop(c, None)
            dx.pop(b, None)
            d[x] = {y: v for y, v in dx.items() if v}
        alive -= {b, c}
        del alpha[b], alpha[c]
        steps += 1

    keep = sorted(alive)
    new = {old: i for i, old in enumerate(keep)}
    small = BigradedSpace(
        [(sp.labels[i], sp.degrees[i], sp.weights[i]) for i in keep],
        name=name or (f"{sp.name}'" if sp.name else None),
    )
    dC = GradedMap(small, small, (1, 0), f, {new[x]: {new[y]: v for y, v in d[x].items()} for x in keep})
    C = Complex(small, dC)
    a_map = GradedMap(small, sp, (0, 0), f, {new[x]: alpha[x] for x in keep})
    r_map = GradedMap(sp, small, (0, 0), f, {e: {new[y]: v for y, v in col.items()} for e, col in r.items()})
    h_map = GradedMap(sp, sp, (-1, 0), f, H)
    return Contraction(C, D, a_map, r_map, h_map)


# ----------------------------------------------------------------------
# the Massey example


def massey_instance(field: ExactField = QQ):
    """Nine-dimensional DGA with ``xy = du``, ``yz = dv`` and ``uz = w`` a nonzero class.

    Returns ``(Complex, mu, x, y, z)`` with the cycles given as index vectors.
    """
    basis = [("e", 0, 0)] + [(s, 1, 0) for s in "xyzuv"] + [(s, 2, 0) for s in "abw"]
    space = BigradedSpace(basis, name="M")
    ix = space.index
    d = GradedMap(space, space, (1, 0), field, {ix("u"): {ix("a"): 1}, ix("v"): {ix("b"): 1}})
    C = Complex(space, d)
    n = space.dim
    table = {("x", "y"): "a", ("y", "z"): "b", ("u", "z"): "w"}
    for lab in space.labels:
        table[("e", lab)] = lab
        table[(lab, "e")] = lab
    entries = {ix(s) * n + ix(t): {ix(p): 1} for (s, t), p in table.items()}
    mu = GradedMap(tensor_power(space, 2), space, (0, 0), field, entries)
    return C, mu, {ix("x"): 1}, {ix("y"): 1}, {ix("z"): 1}


# ----------------------------------------------------------------------
# random generation

_DEGREES = (-1, 0, 1, 2)


@dataclass
class RawDGA:
    """Label-level description of a small unital DGA, before conjugation."""

    basis: List[Tuple[str, int, int]]
    d: Dict[str, Dict[str, int]]
    mu: Dict[Tuple[str, str], Dict[str, int]]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bidegrees(self) -> Dict[str, Tuple[int, int]]:
        return {lab: (p, w) for lab, p, w in self.basis}


def _unital(basis, d, products, unit="1") -> RawDGA:
    mu = {k: dict(v) for k, v in products.items()}
    for lab, _, _ in basis:
        mu[(unit, lab)] = {lab: 1}
        mu[(lab, unit)] = {lab: 1}
    return RawDGA(list(basis), d, mu)


def _atom(rng: random.Random, weights: Sequence[int]) -> RawDGA:
    kind = rng.choice(["ground", "dual", "cone", "trunc", "interval", "massey", "massey"])
    p, w = rng.choice(_DEGREES), rng.choice(list(weights))
    if kind == "massey":
        return _massey_atom(rng, weights)
    if kind == "ground":
        return _unital([("1", 0, 0)], {}, {})
    if kind == "dual":
        return _unital([("1", 0, 0), ("x", p, w)], {}, {})
    if kind == "cone":
        return _unital([("1", 0, 0), ("x", p, w), ("y", p + 1, w)], {"x": {"y": 1}}, {})
    if kind == "trunc":
        if (2 * w) not in weights:
            w = 0
        p = rng.choice((0, 1, 2)) if w else rng.choice((1, 2))
        return _unital([("1", 0, 0), ("x", p, w), ("xx", 2 * p, 2 * w)], {}, {("x", "x"): {"xx": 1}})
    # cochains on an interval: v0, v1 idempotents, e an edge
    mu = {("v0", "v0"): {"v0": 1}, ("v1", "v1"): {"v1": 1}, ("v0", "e"): {"e": 1}, ("e", "v1"): {"e": 1}}
    return RawDGA([("v0", 0, 0), ("v1", 0, 0), ("e", 1, 0)], {"v0": {"e": -1}, "v1": {"e": 1}}, mu)


def _massey_atom(rng: random.Random, weights: Sequence[int]) -> RawDGA:
    """``x y = d u`` and ``u x = w``: a nonzero transferred ``m_3(x, y, x)``."""
    weights = list(weights)
    for _ in range(20):
        (p1, n1), (p2, n2) = [(rng.choice((0, 1, 2)), rng.choice(weights)) for _ in range(2)]
        if n1 + n2 in weights and 2 * n1 + n2 in weights:
            break
    else:
        p1, n1, p2, n2 = 1, 0, 1, 0
    basis = [
        ("x", p1, n1), ("y", p2, n2), ("u", p1 + p2 - 1, n1 + n2),
        ("a", p1 + p2, n1 + n2), ("w", 2 * p1 + p2 - 1, 2 * n1 + n2),
    ]
    products = {("x", "y"): {"a": 1}, ("u", "x"): {"w": 1}}
    if rng.random() < 0.5:
        return _unital([("1", 0, 0)] + basis, {"u": {"a": 1}}, products)
    return RawDGA(basis, {"u": {"a": 1}}, products)


def _tensor(A: RawDGA, B: RawDGA) -> RawDGA:
    """Graded tensor product ``(a b)(a' b') = (-1)^{|b||a'|} aa' bb'``."""
    da, db = A.bidegrees(), B.bidegrees()
    tot = lambda bd: (bd[0] + bd[1]) % 2
    basis = [(f"{a}.{b}", pa + pb, wa + wb) for a, pa, wa in A.basis for b, pb, wb in B.basis]
    d: Dict[str, Dict[str, int]] = {}
    for a, _, _ in A.basis:
        for b, _, _ in B.basis:
            out: Dict[str, int] = {}
            for a2, c in A.d.get(a, {}).items():
                out[f"{a2}.{b}"] = out.get(f"{a2}.{b}", 0) + c
            sign = -1 if tot(da[a]) else 1
            for b2, c in B.d.get(b, {}).items():
                out[f"{a}.{b2}"] = out.get(f"{a}.{b2}", 0) + sign * c
            out = {k: v for k, v in out.items() if v}
            if out:
                d[f"{a}.{b}"] = out
    mu: Dict[Tuple[str, str], Dict[str, int]] = {}
    for (a, a2), pa in A.mu.items():
        for (b, b2), pb in B.mu.items():
            sign = -1 if tot(db[b]) * tot(da[a2]) else 1
            out = {}
            for x, cx in pa.items():
                for y, cy in pb.items():
                    out[f"{x}.{y}"] = sign * cx * cy
            mu[(f"{a}.{b}", f"{a2}.{b2}")] = out
    return RawDGA(basis, d, mu)


def _product(A: RawDGA, B: RawDGA) -> RawDGA:
    """Direct product ``A x B`` (componentwise multiplication)."""
    def tag(prefix, raw):
        ren = lambda s: f"{prefix}{s}"
        basis = [(ren(l), p, w) for l, p, w in raw.basis]
        d = {ren(k): {ren(t): c for t, c in v.items()} for k, v in raw.d.items()}
        mu = {(ren(a), ren(b)): {ren(t): c for t, c in v.items()} for (a, b), v in raw.mu.items()}
        return basis, d, mu

    b1, d1, m1 = tag("L", A)
    b2, d2, m2 = tag("R", B)
    return RawDGA(b1 + b2, {**d1, **d2}, {**m1, **m2})


def _random_raw_dga(rng: random.Random, max_dim: int, weights: Sequence[int]) -> RawDGA:
    weights = list(weights)
    for _ in range(50):
        A = _atom(rng, weights)
        if rng.random() < 0.6:
            B = _atom(rng, weights)
            C = _tensor(A, B) if rng.random() < 0.5 else _product(A, B)
            if C.dim <= max_dim and all(w in weights for _, _, w in C.basis):
                A = C
        if A.dim <= max_dim and all(w in weights for _, _, w in A.basis):
            return A
    return _unital([("1", 0, 0)], {}, {})


def random_automorphism(rng: random.Random, space: BigradedSpace, field: ExactField):
    """A random bidegree-(0,0) automorphism and its inverse, built from unit-triangular blocks."""
    g: Dict[int, Dict[int, object]] = {}
    ginv: Dict[int, Dict[int, object]] = {}
    for _, idx in space.pieces().items():
        k = len(idx)
        L = [[field.one if i == j else (field(rng.randint(-1, 1)) if i > j else field.zero) for j in range(k)] for i in range(k)]
        U = [[field.one if i == j else (field(rng.randint(-1, 1)) if i < j else field.zero) for j in range(k)] for i in range(k)]
        M = [[field.normalize(sum((L[i][t] * U[t][j] for t in range(k)), field.zero)) for j in range(k)] for i in range(k)]
        Mi = linalg.inverse(M, field)
        perm = list(range(k))
        rng.shuffle(perm)
        for j in range(k):
            g[idx[perm[j]]] = {idx[i]: M[i][j] for i in range(k) if M[i][j]}
            # columns of g are permuted, so rows of g^{-1} follow the same permutation
        for j in range(k):
            ginv[idx[j]] = {idx[perm[i]]: Mi[i][j] for i in range(k) if Mi[i][j]}
    return GradedMap(space, space, (0, 0), field, g), GradedMap(space, space, (0, 0), field, ginv)


def _conjugated(raw: RawDGA, rng: random.Random, field: ExactField, name: str):
    space = BigradedSpace(raw.basis, name=name)
    ix = space.index
    n = space.dim
    d = GradedMap(space, space, (1, 0), field, {ix(k): {ix(t): c for t, c in v.items()} for k, v in raw.d.items()})
    mu = GradedMap(
        tensor_power(space, 2), space, (0, 0), field,
        {ix(a) * n + ix(b): {ix(t): c for t, c in v.items()} for (a, b), v in raw.mu.items()},
    )
    g, gi = random_automorphism(rng, space, field)
    d2 = compose(g, compose(d, gi))
    mu2 = compose(g, compose(mu, tensor_map(gi, gi)))
    return Complex(space, d2), mu2


def random_dga(rng: random.Random, max_dim: int = 6, weights: Sequence[int] = range(-2, 3), field: ExactField = QQ, name: str = "D"):
    """A random unital DGA (Complex, mu) of dimension at most ``max_dim``."""
    return _conjugated(_random_raw_dga(rng, max_dim, weights), rng, field, name)


def random_complex(rng: random.Random, max_dim: int = 6, weights: Sequence[int] = range(-2, 3), field: ExactField = QQ, name: str = "D") -> Complex:
    """Random bigraded complex: cancelling pairs plus free cycles, conjugated by an automorphism."""
    weights = list(weights)
    dim = rng.randint(1, max_dim)
    basis = []
    d_pairs = []
    while len(basis) < dim:
        p, w = rng.choice(_DEGREES), rng.choice(weights)
        if len(basis) + 2 <= dim and rng.random() < 0.5:
            i = len(basis)
            basis += [(f"b{i}", p, w), (f"c{i}", p + 1, w)]
            d_pairs.append((i, i + 1))
        else:
            basis.append((f"z{len(basis)}", p, w))
    space = BigradedSpace(basis, name=name)
    d = GradedMap(space, space, (1, 0), field, {b: {c: field(rng.choice([-2, -1, 1, 2, 3]))} for b, c in d_pairs})
    g, gi = random_automorphism(rng, space, field)
    return Complex(space, compose(g, compose(d, gi)))


def random_map(rng: random.Random, source: BigradedSpace, target: BigradedSpace, bidegree, field: ExactField, density: float = 0.5) -> GradedMap:
    r, s = bidegree
    entries: Dict[int, Dict[int, object]] = {}
    for i in range(source.dim):
        p, n = source.bidegree(i)
        for j in target.piece(p + r, n - s):
            if rng.random() < density:
                c = rng.randint(-3, 3)
                if c:
                    entries.setdefault(i, {})[j] = field(c)
    return GradedMap(source, target, (r, s), field, entries)


def noisy_sdr(rng: random.Random, c: Contraction) -> SDRDatum:
    """Same ``alpha``, ``r``; ``H`` altered by a chain-homotopic term, so side conditions generally fail."""
    D = c.D
    K = random_map(rng, D.space, D.space, (-2, 0), c.field, 0.4)
    H = c.H + map_differential(K, D)
    if c.C.d.is_zero():
        Y = random_map(rng, c.C.space, c.C.space, (-1, 0), c.field, 0.4)
        H = H + compose(c.alpha, compose(Y, c.r))
    if H.is_zero():
        H = GradedMap.zero(D.space, D.space, (-1, 0), c.field)
    return SDRDatum(c.C, D, c.alpha, c.r, H)


def twisted(rng: random.Random, c: Contraction) -> Contraction:
    """Replace ``(alpha, r)`` by ``(alpha g, g^-1 r)`` for a random automorphism ``g`` of a zero-differential ``C``."""
    if not c.C.d.is_zero():
        return c
    g, gi = random_automorphism(rng, c.C.space, c.field)
    return Contraction(c.C, c.D, compose(c.alpha, g), compose(gi, c.r), c.H)


@dataclass
class SuiteInstance:
    index: int
    complex: Complex
    mu: Optional[GradedMap]
    contraction: Contraction
    description: str


def random_contraction(rng: random.Random, D: Complex, *, partial: bool | None = None) -> Tuple[Contraction, str]:
    if partial is None:
        partial = rng.random() < 0.25
    steps = None
    if partial:
        steps = rng.randint(0, max(0, D.dim // 2 - 1))
    c = twisted(rng, gaussian_contraction(D, max_steps=steps))
    notes = ["partial" if partial else "full"]
    if rng.random() < 0.7:
        c = repair_to_contraction(noisy_sdr(rng, c))
        notes.append("repaired")
    return c, "+".join(notes)


def random_suite(
    seed: int,
    count: int,
    max_dim: int = 6,
    weights: Sequence[int] = range(-2, 3),
    field: ExactField = QQ,
    with_dga: bool = True,
) -> List[SuiteInstance]:
    """Deterministic list of (complex, optional product, contraction) triples."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        if with_dga:
            D, mu = random_dga(rng, max_dim, weights, field)
        else:
            D, mu = random_complex(rng, max_dim, weights, field), None
        c, notes = random_contraction(rng, D)
        out.append(SuiteInstance(k, D, mu, c, f"dim {D.dim} -> {c.C.dim}, {notes}"))
    return out


# ----------------------------------------------------------------------
# direct sums and comparison pairs


def direct_sum_space(X: BigradedSpace, Y: BigradedSpace, name: str | None = None) -> BigradedSpace:
    """``X (+) Y`` with labels prefixed ``L.`` and ``R.``."""
    basis = [(f"L.{l}", p, n) for l, p, n in zip(X.labels, X.degrees, X.weights)]
    basis += [(f"R.{l}", p, n) for l, p, n in zip(Y.labels, Y.degrees, Y.weights)]
    return BigradedSpace(basis, name=name)


def block_sum(f: GradedMap, g: GradedMap, source: BigradedSpace, target: BigradedSpace) -> GradedMap:
    """``f (+) g`` between direct sums built by :func:`direct_sum_space`."""
    so, to = f.source.dim, f.target.dim
    entries = {i: dict(col) for i, col in f.entries.items()}
    for i, col in g.entries.items():
        entries[so + i] = {to + j: c for j, c in col.items()}
    bideg = f.bidegree if not f.is_zero() else g.bidegree
    return GradedMap(source, target, bideg, f.field, entries)


def direct_sum_complex(X: Complex, Y: Complex, name: str | None = None) -> Complex:
    sp = direct_sum_space(X.space, Y.space, name)
    return Complex(sp, block_sum(X.d, Y.d, sp, sp))


def direct_sum_dga(X: Complex, mu_x: GradedMap | None, Y: Complex, mu_y: GradedMap | None, name: str | None = None):
    """Product algebra: the two products on the diagonal blocks, mixed products zero."""
    Z = direct_sum_complex(X, Y, name)
    nx, n = X.dim, Z.dim
    entries: Dict[int, Dict[int, object]] = {}
    if mu_x is not None:
        for k, col in mu_x.entries.items():
            a, b = divmod(k, nx)
            entries[a * n + b] = dict(col)
    if mu_y is not None:
        ny = Y.dim
        for k, col in mu_y.entries.items():
            a, b = divmod(k, ny)
            entries[(nx + a) * n + nx + b] = {nx + j: c for j, c in col.items()}
    return Z, GradedMap(tensor_power(Z.space, 2), Z.space, (0, 0), X.field, entries)


def direct_sum_contraction(c1: Contraction, c2: Contraction, names=("C", "D")) -> Contraction:
    C = direct_sum_complex(c1.C, c2.C, names[0])
    D = direct_sum_complex(c1.D, c2.D, names[1])
    return Contraction(
        C, D,
        block_sum(c1.alpha, c2.alpha, C.space, D.space),
        block_sum(c1.r, c2.r, D.space, C.space),
        block_sum(c1.H, c2.H, D.space, D.space),
    )


def summand_inclusion(X: BigradedSpace, total: BigradedSpace, field: ExactField, offset: int = 0) -> GradedMap:
    return GradedMap(X, total, (0, 0), field, {i: {offset + i: field.one} for i in range(X.dim)})


def diagonal(X: BigradedSpace, total: BigradedSpace, field: ExactField) -> GradedMap:
    n = X.dim
    return GradedMap(X, total, (0, 0), field, {i: {i: field.one, n + i: field.one} for i in range(n)})


def acyclic_cone(rng: random.Random, weights: Sequence[int], field: ExactField) -> Complex:
    p, w = rng.choice(_DEGREES), rng.choice(list(weights))
    sp = BigradedSpace([("b", p, w), ("c", p + 1, w)], name="K")
    return Complex(sp, GradedMap(sp, sp, (1, 0), field, {0: {1: field(rng.choice([1, -1, 2]))}}))


def staircase(rng: random.Random, weights: Sequence[int], field: ExactField) -> Complex:
    """Acyclic ``e0 -> e1``, ``e2 -> e3`` with ``e1`` and ``e2`` in one bidegree.

    Its contractions are not unique, which is what makes homotopies differ.
    """
    p, w = rng.choice(_DEGREES), rng.choice(list(weights))
    sp = BigradedSpace([("e0", p, w), ("e1", p + 1, w), ("e2", p + 1, w), ("e3", p + 2, w)], name="K")
    return Complex(sp, GradedMap(sp, sp, (1, 0), field, {0: {1: field.one}, 2: {3: field.one}}))


@dataclass
class ComparisonPair:
    """Inputs for a naturality check: two contractions, two structures, two comparison maps."""

    contraction: Contraction
    other: Contraction
    phi_D: GradedMap
    phi_C: GradedMap
    mu: GradedMap
    other_mu: GradedMap
    kind: str


def commuting_pair(rng: random.Random, kind: str, max_dim: int = 4, weights: Sequence[int] = range(-2, 3), field: ExactField = QQ) -> ComparisonPair:
    """Constructed comparison data satisfying every naturality hypothesis.

    ``identity``: the same data twice.  ``cone``: ``D' = D (+) K`` with ``K``
    acyclic and multiplying trivially, ``phi_D`` the inclusion.  ``diagonal``:
    ``D' = D x D`` with the diagonal maps.
    """
    D, mu = random_dga(rng, max_dim, weights, field)
    c, _ = random_contraction(rng, D)
    if kind == "identity":
        return ComparisonPair(c, c, D.identity(), c.C.identity(), mu, mu, kind)
    if kind == "cone":
        K = acyclic_cone(rng, weights, field)
        cK = gaussian_contraction(K)
        c2 = direct_sum_contraction(c, cK)
        D2, mu2 = direct_sum_dga(D, mu, K, None, "D")
        phi_D = summand_inclusion(D.space, c2.D.space, field)
        phi_C = summand_inclusion(c.C.space, c2.C.space, field)
        return ComparisonPair(c, c2, phi_D, phi_C, mu, mu2, kind)
    if kind == "diagonal":
        c2 = direct_sum_contraction(c, c)
        D2, mu2 = direct_sum_dga(D, mu, D, mu, "D")
        return ComparisonPair(
            c, c2, diagonal(D.space, c2.D.space, field), diagonal(c.C.space, c2.C.space, field), mu, mu2, kind
        )
    raise ValueError(f"unknown pair kind {kind!r}")


def conjugated_homotopy(rng: random.Random, c: Contraction) -> Contraction:
    """``H' = g H g^-1`` for a chain automorphism ``g = 1 + delta(P K P)``, ``P = 1 - alpha r``.

    ``g`` fixes ``alpha`` and ``r``, so ``(alpha, r, H')`` is again a contraction.
    """
    D = c.D
    P = c.projector()
    for _ in range(50):
        K = compose(P, compose(random_map(rng, D.space, D.space, (-1, 0), c.field, 0.5), P))
        g = D.identity() + map_differential(K, D)
        rows = [[g.column(j).get(i, c.field.zero) for j in range(D.dim)] for i in range(D.dim)]
        try:
            inv = linalg.inverse(rows, c.field)
        except ValueError:
            continue
        gi = GradedMap(D.space, D.space, (0, 0), c.field,
                       {j: {i: inv[i][j] for i in range(D.dim) if inv[i][j]} for j in range(D.dim)})
        H2 = compose(g, compose(c.H, gi))
        if H2.is_zero():
            H2 = GradedMap.zero(D.space, D.space, (-1, 0), c.field)
        return Contraction(c.C, D, c.alpha, c.r, H2)
    return c


def violating_pair(rng: random.Random, max_dim: int = 5, weights: Sequence[int] = range(-2, 3), field: ExactField = QQ) -> ComparisonPair:
    """``phi = identity`` between two contractions that differ only in ``H``.

    ``phi_D`` intertwines the products, ``alpha`` and ``r`` but not the homotopies.
    """
    for _ in range(200):
        D0, mu0 = random_dga(rng, max_dim, weights, field)
        D, mu = direct_sum_dga(D0, mu0, staircase(rng, weights, field), None, "D")
        c = gaussian_contraction(D)
        c2 = conjugated_homotopy(rng, c)
        if c2.H != c.H:
            return ComparisonPair(c, c2, D.identity(), c.C.identity(), mu, mu, "violating")
    raise RuntimeError("could not build a pair with distinct homotopies")  # pragma: no cover
