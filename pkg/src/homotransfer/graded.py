"""Bigraded spaces, sparse graded maps and the Koszul sign calculus.

Conventions (all signs use the *total* degree, i.e. degree + weight):

* a map of bidegree ``(r, s)`` sends the piece ``(p, n)`` to ``(p + r, n - s)``;
* ``delta(u) = d u + (-1)**(k + 1) u d`` for ``u`` of total degree ``k``;
* ``(u (x) v)(a (x) b) = (-1)**(|a| |v|) u(a) (x) v(b)``;
* ``(S C)^i(n) = C^{i+1}(n)`` with ``d_SC = -d_C``, and ``s: C -> SC`` is the
  identity on components, of bidegree ``(-1, 0)``.

Tensor products are kept flat: ``(A (x) B) (x) C`` and ``A (x) (B (x) C)`` are
the same space, indexed in row-major order over the factors.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

from .fields import ExactField

Bidegree = Tuple[int, int]
Vector = Dict[int, object]


class BigradedSpace:
    """Finite free module on an ordered, labelled, bigraded basis."""

    __slots__ = (
        "degrees",
        "weights",
        "parity",
        "factors",
        "name",
        "desuspension",
        "_labels",
        "_index",
        "_hash",
        "_pieces",
    )

    def __init__(self, basis: Iterable[Tuple[object, int, int]], name: str | None = None):
        basis = list(basis)
        labels = tuple(b[0] for b in basis)
        if len(set(labels)) != len(labels):
            raise ValueError(f"basis labels of {name or 'space'} are not unique")
        self._labels = labels
        self.degrees = tuple(int(b[1]) for b in basis)
        self.weights = tuple(int(b[2]) for b in basis)
        self.parity = tuple((p + n) & 1 for p, n in zip(self.degrees, self.weights))
        self.factors: Tuple[BigradedSpace, ...] = (self,)
        self.name = name
        self.desuspension: BigradedSpace | None = None
        self._index = None
        self._hash = hash(("base", labels, self.degrees, self.weights))
        self._pieces = None

    @classmethod
    def _tensor(cls, factors: Tuple["BigradedSpace", ...]) -> "BigradedSpace":
        self = cls.__new__(cls)
        degrees, weights = (0,), (0,)
        for f in factors:
            degrees = tuple(a + b for a in degrees for b in f.degrees)
            weights = tuple(a + b for a in weights for b in f.weights)
        self.degrees = degrees
        self.weights = weights
        self.parity = tuple((p + n) & 1 for p, n in zip(degrees, weights))
        self.factors = factors
        self.name = None
        self.desuspension = None
        self._labels = None
        self._index = None
        self._hash = hash(("tensor", factors))
        self._pieces = None
        return self

    # ------------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)

    @property
    def is_tensor(self) -> bool:
        return len(self.factors) != 1 or self.factors[0] is not self

    @property
    def arity(self) -> int:
        return len(self.factors)

    @property
    def labels(self) -> tuple:
        if self._labels is None:
            labels = [()]
            for f in self.factors:
                labels = [a + (b,) for a in labels for b in f.labels]
            self._labels = tuple(labels)
        return self._labels

    def index(self, label) -> int:
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{label!r} is not a basis label of {self}") from None

    def bidegree(self, i: int) -> Bidegree:
        return self.degrees[i], self.weights[i]

    def total_degree(self, i: int) -> int:
        return self.degrees[i] + self.weights[i]

    def pieces(self) -> Dict[Bidegree, list]:
        """Basis indices grouped by bidegree, in basis order."""
        if self._pieces is None:
            pieces: Dict[Bidegree, list] = {}
            for i, bd in enumerate(zip(self.degrees, self.weights)):
                pieces.setdefault(bd, []).append(i)
            self._pieces = pieces
        return self._pieces

    def piece(self, p: int, n: int) -> list:
        return self.pieces().get((p, n), [])

    def split(self, i: int) -> Tuple[int, ...]:
        """Factor indices of the tensor basis element ``i``."""
        out = []
        for f in reversed(self.factors):
            i, rem = divmod(i, f.dim)
            out.append(rem)
        return tuple(reversed(out))

    # ------------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, BigradedSpace) or self._hash != other._hash:
            return False
        if self.is_tensor or other.is_tensor:
            return self.is_tensor and other.is_tensor and self.factors == other.factors
        return (
            self._labels == other._labels
            and self.degrees == other.degrees
            and self.weights == other.weights
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if self.is_tensor:
            return "(" + " (x) ".join(repr(f) for f in self.factors) + ")"
        return f"<{self.name or 'space'} dim={self.dim}>"


def tensor_spaces(*spaces: BigradedSpace) -> BigradedSpace:
    factors = tuple(f for sp in spaces for f in sp.factors)
    if len(factors) == 1:
        return factors[0]
    return _tensor_cached(factors)


@lru_cache(maxsize=None)
def _tensor_cached(factors):
    return BigradedSpace._tensor(factors)


def tensor_power(space: BigradedSpace, n: int) -> BigradedSpace:
    if n < 1:
        raise ValueError("tensor powers start at 1")
    return tensor_spaces(*([space] * n))


# ----------------------------------------------------------------------
# vectors


def add_into(acc: dict, vec: Mapping, scale=1) -> None:
    for k, c in vec.items():
        acc[k] = acc.get(k, 0) + c * scale


def clean(vec: dict, field: ExactField) -> dict:
    q = field.q
    if q:
        return {k: c % q for k, c in vec.items() if c % q}
    return {k: c for k, c in vec.items() if c}


# ----------------------------------------------------------------------


class GradedMap:
    """Sparse linear map of fixed bidegree between bigraded spaces.

    ``entries[i]`` is the image of source basis element ``i`` as a dict from
    target indices to nonzero coefficients.  Instances are never mutated after
    construction.
    """

    __slots__ = ("source", "target", "bidegree", "field", "entries")

    def __init__(
        self,
        source: BigradedSpace,
        target: BigradedSpace,
        bidegree: Bidegree,
        field: ExactField,
        entries: Mapping[int, Mapping[int, object]] | None = None,
        *,
        check: bool = True,
    ):
        self.source = source
        self.target = target
        self.bidegree = (int(bidegree[0]), int(bidegree[1]))
        self.field = field
        if entries is None:
            entries = {}
        if check:
            entries = self._validated(entries)
        self.entries: Dict[int, Dict[int, object]] = entries

    def _validated(self, entries) -> dict:
        f = self.field
        r, s = self.bidegree
        sdeg, swt = self.source.degrees, self.source.weights
        tdeg, twt = self.target.degrees, self.target.weights
        out = {}
        for i, col in entries.items():
            if not 0 <= i < self.source.dim:
                raise IndexError(f"source index {i} out of range")
            clean_col = {}
            for j, c in col.items():
                c = f(c) if not isinstance(c, int) or f.q == 0 else c % f.q
                if not c:
                    continue
                if not 0 <= j < self.target.dim:
                    raise IndexError(f"target index {j} out of range")
                if tdeg[j] != sdeg[i] + r or twt[j] != swt[i] - s:
                    raise ValueError(
                        f"entry {i}->{j} maps bidegree {(sdeg[i], swt[i])} to "
                        f"{(tdeg[j], twt[j])}, inconsistent with map bidegree {(r, s)}"
                    )
                clean_col[j] = c
            if clean_col:
                out[i] = clean_col
        return out

    # ------------------------------------------------------------------
    @classmethod
    def from_function(cls, source, target, bidegree, field, fn, *, check=True):
        """Build a map from ``fn(i) -> {target index: coeff}`` on basis indices."""
        entries = {}
        for i in range(source.dim):
            col = fn(i)
            if col:
                entries[i] = dict(col)
        return cls(source, target, bidegree, field, entries, check=check)

    @classmethod
    def identity(cls, space: BigradedSpace, field: ExactField) -> "GradedMap":
        one = field.one
        return cls(space, space, (0, 0), field, {i: {i: one} for i in range(space.dim)}, check=False)

    @classmethod
    def zero(cls, source, target, bidegree, field) -> "GradedMap":
        return cls(source, target, bidegree, field, {}, check=False)

    # ------------------------------------------------------------------
    @property
    def total_degree(self) -> int:
        return self.bidegree[0] + self.bidegree[1]

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.entries.values())

    def is_zero(self) -> bool:
        return not self.entries

    def column(self, i: int) -> Dict[int, object]:
        return self.entries.get(i, {})

    def __call__(self, vec: Mapping[int, object]) -> Dict[int, object]:
        acc: dict = {}
        for i, c in vec.items():
            col = self.entries.get(i)
            if col:
                for j, e in col.items():
                    acc[j] = acc.get(j, 0) + c * e
        return clean(acc, self.field)

    def _check_same_shape(self, other: "GradedMap") -> None:
        if (
            self.source != other.source
            or self.target != other.target
            or self.bidegree != other.bidegree
        ):
            raise ValueError(
                f"cannot combine maps of bidegrees {self.bidegree} and {other.bidegree}"
                " or with different source/target"
            )

    def _combine(self, other: "GradedMap", sign: int) -> "GradedMap":
        self._check_same_shape(other)
        q = self.field.q
        out = {i: dict(col) for i, col in self.entries.items()}
        for i, col in other.entries.items():
            acc = out.setdefault(i, {})
            for j, c in col.items():
                v = acc.get(j, 0) + sign * c
                if q:
                    v %= q
                if v:
                    acc[j] = v
                else:
                    acc.pop(j, None)
            if not acc:
                del out[i]
        return GradedMap(self.source, self.target, self.bidegree, self.field, out, check=False)

    def _check_spaces(self, other: "GradedMap") -> None:
        if self.source != other.source or self.target != other.target:
            raise ValueError("cannot combine maps with different source/target")

    # a zero map lives in every bidegree, so it combines with anything of the
    # same shape
    def __add__(self, other: "GradedMap") -> "GradedMap":
        if other.is_zero():
            self._check_spaces(other)
            return self
        if self.is_zero():
            self._check_spaces(other)
            return other
        return self._combine(other, 1)

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        if other.is_zero():
            self._check_spaces(other)
            return self
        if self.is_zero():
            self._check_spaces(other)
            return -other
        return self._combine(other, -1)

    def __neg__(self) -> "GradedMap":
        return self.scale(-1)

    def scale(self, c) -> "GradedMap":
        f = self.field
        c = f(c)
        if not c:
            return GradedMap.zero(self.source, self.target, self.bidegree, f)
        q = f.q
        out = {}
        for i, col in self.entries.items():
            out[i] = {j: (e * c) % q for j, e in col.items()} if q else {j: e * c for j, e in col.items()}
        return GradedMap(self.source, self.target, self.bidegree, f, out, check=False)

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        if self.entries != other.entries:
            return False
        return self.is_zero() or self.bidegree == other.bidegree

    __hash__ = None  # type: ignore[assignment]

    def first_nonzero(self):
        """``(source label, target label, coeff)`` of the first entry, or None."""
        for i in sorted(self.entries):
            j = min(self.entries[i])
            return self.source.labels[i], self.target.labels[j], self.entries[i][j]
        return None

    def label_entries(self) -> Iterator[Tuple[object, object, object]]:
        """Entries as ``(from label, to label, coeff)`` in basis order."""
        slab, tlab = self.source.labels, self.target.labels
        for i in sorted(self.entries):
            col = self.entries[i]
            for j in sorted(col):
                yield slab[i], tlab[j], col[j]

    def __repr__(self) -> str:
        return f"GradedMap({self.source!r} -> {self.target!r}, bidegree={self.bidegree}, nnz={self.nnz})"


def compose(u: GradedMap, v: GradedMap) -> GradedMap:
    """``u o v``; composition carries no sign."""
    if v.target != u.source:
        raise ValueError(
            f"cannot compose: target of v (bidegree {v.bidegree}) does not match "
            f"source of u (bidegree {u.bidegree})"
        )
    bideg = (u.bidegree[0] + v.bidegree[0], u.bidegree[1] + v.bidegree[1])
    q = u.field.q
    ue = u.entries
    out = {}
    if ue:
        for i, vcol in v.entries.items():
            acc: dict = {}
            for m, c in vcol.items():
                ucol = ue.get(m)
                if ucol is None:
                    continue
                for j, e in ucol.items():
                    acc[j] = acc.get(j, 0) + c * e
            if q:
                acc = {j: x % q for j, x in acc.items() if x % q}
            else:
                acc = {j: x for j, x in acc.items() if x}
            if acc:
                out[i] = acc
    return GradedMap(v.source, u.target, bideg, u.field, out, check=False)


def sum_maps(maps: Iterable[GradedMap], source, target, bidegree, field) -> GradedMap:
    """Sum of equally shaped maps, accumulated in one pass."""
    q = field.q
    acc: Dict[int, dict] = {}
    for m in maps:
        if m.is_zero():
            continue
        if m.source != source or m.target != target or m.bidegree != tuple(bidegree):
            raise ValueError(f"summand of bidegree {m.bidegree} does not match {tuple(bidegree)}")
        for i, col in m.entries.items():
            a = acc.get(i)
            if a is None:
                acc[i] = dict(col)
            else:
                for j, c in col.items():
                    a[j] = a.get(j, 0) + c
    out = {}
    for i, col in acc.items():
        col = {j: x % q for j, x in col.items() if x % q} if q else {j: x for j, x in col.items() if x}
        if col:
            out[i] = col
    return GradedMap(source, target, bidegree, field, out, check=False)


def tensor_map(u: GradedMap, v: GradedMap) -> GradedMap:
    """``u (x) v`` with ``(u (x) v)(a (x) b) = (-1)**(|a||v|) u(a) (x) v(b)``."""
    if u.field != v.field:
        raise ValueError("cannot tensor maps over different fields")
    source = tensor_spaces(u.source, v.source)
    target = tensor_spaces(u.target, v.target)
    bideg = (u.bidegree[0] + v.bidegree[0], u.bidegree[1] + v.bidegree[1])
    q = u.field.q
    odd = v.total_degree & 1
    par = u.source.parity
    dvs, dvt = v.source.dim, v.target.dim
    vitems = list(v.entries.items())
    out = {}
    for a, ucol in u.entries.items():
        neg = odd and par[a]
        uitems = list(ucol.items())
        for b, vcol in vitems:
            col = {}
            for ta, ca in uitems:
                base = ta * dvt
                for tb, cb in vcol.items():
                    x = ca * cb
                    if neg:
                        x = -x
                    col[base + tb] = x % q if q else x
            out[a * dvs + b] = col
    return GradedMap(source, target, bideg, u.field, out, check=False)


def tensor_maps(maps: Sequence[GradedMap]) -> GradedMap:
    out = maps[0]
    for m in maps[1:]:
        out = tensor_map(out, m)
    return out


def amplify(u: GradedMap, left: BigradedSpace | None, right: BigradedSpace | None) -> GradedMap:
    """``1_left (x) u (x) 1_right``; either side may be ``None`` (no factor)."""
    q = u.field.q
    odd = u.total_degree & 1
    ls = [] if left is None else [left]
    rs = [] if right is None else [right]
    source = tensor_spaces(*ls, u.source, *rs)
    target = tensor_spaces(*ls, u.target, *rs)
    ldim = 1 if left is None else left.dim
    lpar = (0,) if left is None else left.parity
    rdim = 1 if right is None else right.dim
    sdim, tdim = u.source.dim, u.target.dim
    out = {}
    items = list(u.entries.items())
    for l in range(ldim):
        neg = odd and lpar[l]
        for a, col in items:
            if neg:
                col_l = {(l * tdim + t) * rdim: (-c) % q if q else -c for t, c in col.items()}
            else:
                col_l = {(l * tdim + t) * rdim: c for t, c in col.items()}
            src_base = (l * sdim + a) * rdim
            if rdim == 1:
                out[src_base] = col_l
            else:
                for rr in range(rdim):
                    out[src_base + rr] = {t + rr: c for t, c in col_l.items()}
    return GradedMap(source, target, u.bidegree, u.field, out, check=False)


# ----------------------------------------------------------------------


class Complex:
    """A bigraded space with a differential of bidegree ``(1, 0)``."""

    __slots__ = ("space", "d", "_suspension")

    def __init__(self, space: BigradedSpace, d: GradedMap, *, check: bool = True):
        if d.source != space or d.target != space:
            raise ValueError("differential must be an endomorphism of the space")
        if d.bidegree != (1, 0) and not d.is_zero():
            raise ValueError(f"differential must have bidegree (1, 0), got {d.bidegree}")
        if d.bidegree != (1, 0):
            d = GradedMap.zero(space, space, (1, 0), d.field)
        if check:
            dd = compose(d, d)
            if not dd.is_zero():
                raise ValueError(f"d o d != 0 (first entry {dd.first_nonzero()})")
        self.space = space
        self.d = d
        self._suspension = None

    @classmethod
    def zero_differential(cls, space: BigradedSpace, field: ExactField) -> "Complex":
        return cls(space, GradedMap.zero(space, space, (1, 0), field), check=False)

    @property
    def field(self) -> ExactField:
        return self.d.field

    @property
    def dim(self) -> int:
        return self.space.dim

    def identity(self) -> GradedMap:
        return GradedMap.identity(self.space, self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return self.space == other.space and self.d == other.d

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Complex({self.space!r}, nnz(d)={self.d.nnz})"


def tensor_space(C: Complex, D: Complex) -> Complex:
    """``C (x) D`` with ``d(a (x) b) = da (x) b + (-1)**(p+n) a (x) db``."""
    if C.field != D.field:
        raise ValueError(f"field mismatch: {C.field} vs {D.field}")
    d = tensor_map(C.d, D.identity()) + tensor_map(C.identity(), D.d)
    return Complex(tensor_spaces(C.space, D.space), d, check=False)


def tensor_power_complex(C: Complex, n: int) -> Complex:
    """``C^{(x) n}`` with differential ``sum_i 1^{i-1} (x) d (x) 1^{n-i}``."""
    space = tensor_power(C.space, n)
    terms = [
        amplify(
            C.d,
            tensor_power(C.space, i) if i else None,
            tensor_power(C.space, n - 1 - i) if n - 1 - i else None,
        )
        for i in range(n)
    ]
    d = sum_maps(terms, space, space, (1, 0), C.field)
    return Complex(space, d, check=False)


def _differential_of(X, space: BigradedSpace) -> GradedMap:
    if isinstance(X, Complex):
        if X.space != space:
            raise ValueError("complex does not match the map's space")
        return X.d
    if isinstance(X, GradedMap):
        if X.source != space or X.target != space:
            raise ValueError("differential does not match the map's space")
        return X
    raise TypeError("map_differential needs the source and target complexes")


def map_differential(u: GradedMap, source, target=None) -> GradedMap:
    """``delta(u) = d_target u + (-1)**(k+1) u d_source``, ``k`` the total degree.

    ``source``/``target`` are the complexes (or their differentials) carried by
    ``u.source`` and ``u.target``; ``target`` defaults to ``source``.
    """
    if source is None:
        raise TypeError("map_differential needs the source and target complexes")
    if target is None:
        target = source
    ds = _differential_of(source, u.source)
    dt = _differential_of(target, u.target)
    k = u.total_degree
    left = compose(dt, u)
    right = compose(u, ds)
    out = left - right if (k + 1) % 2 else left + right
    if out.is_zero():
        return GradedMap.zero(u.source, u.target, (u.bidegree[0] + 1, u.bidegree[1]), u.field)
    return out


def is_closed(u: GradedMap, source, target=None) -> bool:
    return map_differential(u, source, target).is_zero()


# ----------------------------------------------------------------------
# suspension


def suspend_space(space: BigradedSpace) -> BigradedSpace:
    """``S X`` with ``(S X)^i(n) = X^{i+1}(n)``; basis order is preserved."""
    if space.is_tensor:
        raise ValueError("suspension is applied to base spaces only")
    cached = _SUSPENSIONS.get(space)
    if cached is not None:
        return cached
    name = f"S{space.name}" if space.name else None
    sx = BigradedSpace(
        ((f"s{lab}", p - 1, n) for lab, p, n in zip(space.labels, space.degrees, space.weights)),
        name=name,
    )
    sx.desuspension = space
    _SUSPENSIONS[space] = sx
    return sx


_SUSPENSIONS: Dict[BigradedSpace, BigradedSpace] = {}


def suspension_map(space: BigradedSpace, field: ExactField) -> GradedMap:
    """``s: X -> S X``, identity on components, bidegree ``(-1, 0)``."""
    sx = suspend_space(space)
    one = field.one
    return GradedMap(space, sx, (-1, 0), field, {i: {i: one} for i in range(space.dim)}, check=False)


def desuspension_map(space: BigradedSpace, field: ExactField) -> GradedMap:
    """``s^{-1}: S X -> X`` of bidegree ``(1, 0)``."""
    sx = suspend_space(space)
    one = field.one
    return GradedMap(sx, space, (1, 0), field, {i: {i: one} for i in range(space.dim)}, check=False)


def suspend(C: Complex) -> Tuple[Complex, GradedMap]:
    """Return ``(S C, s_C)`` with ``d_SC = -s d s^{-1}``."""
    if C._suspension is None:
        f = C.field
        s = suspension_map(C.space, f)
        s_inv = desuspension_map(C.space, f)
        d = -compose(s, compose(C.d, s_inv))
        C._suspension = (Complex(s.target, d, check=False), s)
    return C._suspension


def inverse_signed_bijection(u: GradedMap) -> GradedMap:
    """Inverse of a map sending each basis element to +-(a basis element)."""
    out = {}
    field = u.field
    for i, col in u.entries.items():
        if len(col) != 1:
            raise ValueError("map is not a signed bijection of bases")
        (j, c), = col.items()
        out[j] = {i: field.inv(c)}
    if len(out) != u.target.dim or len(u.entries) != u.source.dim:
        raise ValueError("map is not a signed bijection of bases")
    return GradedMap(u.target, u.source, (-u.bidegree[0], -u.bidegree[1]), field, out, check=False)
