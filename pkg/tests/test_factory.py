from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from homotransfer.ainfty import from_dga, is_ainfinity, tensor_vectors
from homotransfer.factory import (
    SimplicialComplexDescription,
    cochain_dga,
    gaussian_contraction,
    massey_instance,
    random_automorphism,
    random_suite,
    unit_vector,
)
from homotransfer.fields import GF, QQ
from homotransfer.graded import (
    BigradedSpace,
    Complex,
    GradedMap,
    amplify,
    compose,
    is_closed,
    tensor_power_complex,
    tensor_space,
)
from homotransfer.homology import Homology
from homotransfer.perturbation import check_sdr, is_contraction, side_condition_defects, transfer

from helpers import complexes

seeds = st.integers(0, 2**32 - 1)
SHAPES = {
    "interval": SimplicialComplexDescription.interval,
    "circle": SimplicialComplexDescription.circle,
    "torus": SimplicialComplexDescription.torus,
}


def graded_dims(C):
    out = {}
    for p in C.space.degrees:
        out[p] = out.get(p, 0) + 1
    return tuple(out[p] for p in sorted(out))


@pytest.mark.parametrize("facets", [[[0, 0]], [[1, 0]], [[0, 3]], [[]], [[0, "1"]]])
def test_malformed_facets(facets):
    with pytest.raises(ValueError):
        SimplicialComplexDescription(["a", "b", "c"], facets)


def test_duplicate_vertices():
    with pytest.raises(ValueError):
        SimplicialComplexDescription(["a", "a"], [[0, 1]])


def test_face_closure_is_computed():
    K = SimplicialComplexDescription(["a", "b", "c"], [[0, 1, 2]])
    assert len(K.simplices()) == 7


def test_interval_dims_and_vertex_products():
    K = SimplicialComplexDescription.interval()
    C, mu = cochain_dga(K)
    assert graded_dims(C) == (2, 1)
    a, b = C.space.index("0"), C.space.index("1")
    n = C.dim
    assert mu.column(a * n + a) == {a: 1}
    assert mu.column(a * n + b) == {}


def test_circle_dims():
    C, _ = cochain_dga(SimplicialComplexDescription.circle())
    assert graded_dims(C) == (3, 3)


@pytest.mark.parametrize("shape", sorted(SHAPES))
@pytest.mark.parametrize("field", [QQ, GF(3)])
def test_cochain_dga_properties(shape, field):
    K = SHAPES[shape]()
    C, mu = cochain_dga(K, field)
    assert set(C.space.weights) == {0}
    assert compose(C.d, C.d).is_zero()
    assert is_closed(mu, tensor_power_complex(C, 2), C)
    assoc = compose(mu, amplify(mu, None, C.space)) - compose(mu, amplify(mu, C.space, None))
    assert assoc.is_zero()
    one = unit_vector(K, C)
    for i in range(C.dim):
        assert mu(tensor_vectors(C.space, one, {i: 1})) == {i: 1}
        assert mu(tensor_vectors(C.space, {i: 1}, one)) == {i: 1}


def test_gaussian_on_two_term():
    sp = BigradedSpace([("b", 0, 0), ("c", 1, 0)])
    D = Complex(sp, GradedMap(sp, sp, (1, 0), QQ, {0: {1: 4}}))
    c = gaussian_contraction(D)
    assert c.C.dim == 0
    assert c.H.column(1) == {0: QQ.parse("1/4")}


def test_gaussian_on_circle():
    C, _ = cochain_dga(SimplicialComplexDescription.circle())
    c = gaussian_contraction(C)
    assert graded_dims(c.C) == (1, 1)
    assert c.C.d.is_zero()
    assert is_contraction(c)


def test_gaussian_on_zero_differential_is_identity():
    C = Complex.zero_differential(BigradedSpace([("a", 0, 1), ("b", 1, -1)]), QQ)
    c = gaussian_contraction(C)
    assert c.C.dim == 2 and c.alpha == C.identity() and c.H.is_zero()


@given(seeds)
def test_gaussian_dims_are_betti_numbers(seed):
    D = complexes(random.Random(seed))
    c = gaussian_contraction(D)
    assert c.C.d.is_zero()
    counts = {}
    for i in range(c.C.dim):
        bd = c.C.space.bidegree(i)
        counts[bd] = counts.get(bd, 0) + 1
    assert counts == Homology(D).betti_numbers()
    assert check_sdr(c).passed
    assert all(m.is_zero() for m in side_condition_defects(c).values())


def test_massey_instance_shape():
    C, mu, x, y, z = massey_instance(QQ)
    assert C.dim <= 12
    A = from_dga(C, mu, 3)
    H = Homology(C)
    for v in (x, y, z):
        assert H.is_cycle(v) and not H.is_boundary(v)
    assert H.is_boundary(mu(tensor_vectors(C.space, x, y)))
    assert H.is_boundary(mu(tensor_vectors(C.space, y, z)))
    assert is_ainfinity(A)


def test_massey_transfer_is_ainfinity_through_five():
    C, mu, *_ = massey_instance(QQ)
    T = transfer(gaussian_contraction(C), from_dga(C, mu, 5))
    assert is_ainfinity(T.structure)
    assert not T.structure.m(3).is_zero()


def test_suite_is_deterministic_and_valid():
    a = random_suite(11, 25)
    b = random_suite(11, 25)
    assert [i.description for i in a] == [i.description for i in b]
    for x, y in zip(a, b):
        assert x.complex.space == y.complex.space and x.complex.d == y.complex.d
        assert x.mu == y.mu and x.contraction.H == y.contraction.H
        assert x.complex.dim <= 6
        assert is_contraction(x.contraction)
        from_dga(x.complex, x.mu, 3)
    assert random_suite(5, 0) == []


def test_suite_without_products():
    for inst in random_suite(2, 10, with_dga=False):
        assert inst.mu is None and check_sdr(inst.contraction).passed


def test_random_automorphism_inverts():
    rng = random.Random(8)
    sp = complexes(rng).space
    g, gi = random_automorphism(rng, sp, QQ)
    assert compose(g, gi) == GradedMap.identity(sp, QQ)


def weight_blind_differential(X: Complex, Y: Complex) -> GradedMap:
    """Tensor differential using only the homological degree for the Koszul sign."""
    T = tensor_space(X, Y)
    n = Y.dim
    entries = {}
    for i in range(X.dim):
        for j in range(n):
            col = entries.setdefault(i * n + j, {})
            for k, c in X.d.column(i).items():
                col[k * n + j] = col.get(k * n + j, 0) + c
            sign = -1 if X.space.degrees[i] % 2 else 1
            for k, c in Y.d.column(j).items():
                col[i * n + k] = col.get(i * n + k, 0) + sign * c
    return GradedMap(T.space, T.space, (1, 0), X.field, entries)


def test_weights_matter_for_signs_only_when_nonzero():
    flat = random_suite(3, 20, max_dim=4, weights=[0], with_dga=False)
    assert all(
        weight_blind_differential(a.complex, b.complex) == tensor_space(a.complex, b.complex).d
        for a, b in zip(flat, flat[1:])
    )
    wide = random_suite(3, 20, max_dim=4, weights=range(-2, 3), with_dga=False)
    assert any(
        weight_blind_differential(a.complex, b.complex) != tensor_space(a.complex, b.complex).d
        for a, b in zip(wide, wide[1:])
    )
