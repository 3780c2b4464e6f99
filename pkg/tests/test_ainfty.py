from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from homotransfer.ainfty import (
    AInfinityMorphism,
    AInfinityStructure,
    arity_sign,
    b_form,
    bar_defect,
    bar_differential,
    check_morphism,
    desuspend_multilinear,
    from_dga,
    is_ainfinity,
    massey_triple,
    stasheff_defect,
    suspend_multilinear,
)
from homotransfer.bar import compose_bar
from homotransfer.factory import (
    SimplicialComplexDescription,
    cochain_dga,
    gaussian_contraction,
    massey_instance,
    random_contraction,
    random_dga,
    random_map,
)
from homotransfer.fields import QQ
from homotransfer.graded import BigradedSpace, Complex, GradedMap, amplify, compose, suspend, tensor_power
from homotransfer.homology import homology_basis
from homotransfer.perturbation import transfer

from helpers import complexes

seeds = st.integers(0, 2**32 - 1)


def test_arity_sign_values():
    assert [arity_sign(i) for i in range(1, 7)] == [1, 1, -1, -1, 1, 1]


def test_suspend_degree_zero_unary_has_no_sign():
    rng = random.Random(1)
    C = complexes(rng, 5)
    f = random_map(rng, C.space, C.space, (0, 0), QQ, 0.8)
    SC, s = suspend(C)
    Sf = suspend_multilinear(f)
    assert Sf.bidegree == (0, 0)
    assert compose(Sf, s) == compose(s, f)


def test_suspend_differential_is_suspended_differential():
    C = complexes(random.Random(2), 6)
    SC, _ = suspend(C)
    assert suspend_multilinear(C.d) == SC.d
    assert desuspend_multilinear(SC.d) == C.d


def test_suspend_binary_by_basis_expansion():
    rng = random.Random(3)
    C = complexes(rng, 4)
    mu = random_map(rng, tensor_power(C.space, 2), C.space, (0, 0), QQ, 1.0)
    b2 = suspend_multilinear(mu)
    assert b2.bidegree == (1, 0)
    n = C.dim
    # b2(sa (x) sb) = -(-1)^{|sa|} s mu(a (x) b), the Koszul sign from moving s^-1 past sa
    for a in range(n):
        for b in range(n):
            sign = -1 if C.space.parity[a] else 1  # |sa| = |a| - 1
            expected = {k: sign * c for k, c in mu.column(a * n + b).items()}
            assert b2.column(a * n + b) == expected


def test_desuspend_zero():
    C = complexes(random.Random(4))
    SC, _ = suspend(C)
    z = GradedMap.zero(tensor_power(SC.space, 3), SC.space, (1, 0), QQ)
    assert desuspend_multilinear(z).is_zero()


@given(seeds, st.integers(1, 4))
def test_suspension_round_trip(seed, arity):
    rng = random.Random(seed)
    C = complexes(rng, 3)
    bd = (rng.randint(-2, 2), rng.randint(-1, 1))
    f = random_map(rng, tensor_power(C.space, arity), C.space, bd, QQ, 0.6)
    Sf = suspend_multilinear(f)
    assert desuspend_multilinear(Sf) == f
    if not f.is_zero():
        assert Sf.bidegree == (bd[0] + arity - 1, bd[1])
    SC, _ = suspend(C)
    b = random_map(rng, tensor_power(SC.space, arity), SC.space, bd, QQ, 0.6)
    assert suspend_multilinear(desuspend_multilinear(b)) == b


def test_structure_bidegree_audit():
    C, mu = cochain_dga(SimplicialComplexDescription.interval())
    with pytest.raises(ValueError):
        AInfinityStructure(C, [C.d, mu, mu])
    with pytest.raises(ValueError):
        AInfinityStructure(C, [C.identity()])


def test_ground_field_dga():
    sp = BigradedSpace([("1", 0, 0)])
    k = Complex.zero_differential(sp, QQ)
    mu = GradedMap(tensor_power(sp, 2), sp, (0, 0), QQ, {0: {0: 5}})
    assert is_ainfinity(from_dga(k, mu))
    # 5 * 5 != 5, but the product is still associative
    assert from_dga(k, mu).m(2).column(0) == {0: 5}


def test_interval_dga_is_valid():
    C, mu = cochain_dga(SimplicialComplexDescription.interval())
    A = from_dga(C, mu, 4)
    assert is_ainfinity(A)
    assert compose_bar(bar_differential(A), bar_differential(A)).is_zero()
    b = b_form(A)
    assert all(x.is_zero() for x in b[2:])


def test_from_dga_rejects_leibniz_failure():
    C, mu = cochain_dga(SimplicialComplexDescription.interval())
    col = C.space.index("0")
    k = col * C.dim + C.space.index("0-1")
    broken = mu + GradedMap(mu.source, mu.target, (0, 0), QQ, {k: {C.space.index("0-1"): 1}})
    with pytest.raises(ValueError, match="not closed"):
        from_dga(C, broken)


def test_from_dga_rejects_nonassociative():
    sp2 = BigradedSpace([("a", 0, 0), ("b", 0, 0)])
    k2 = Complex.zero_differential(sp2, QQ)
    # a*a = b, everything else zero except b*a = a: (aa)a = ba = a, a(aa) = ab = 0
    mu2 = GradedMap(tensor_power(sp2, 2), sp2, (0, 0), QQ, {0: {1: 1}, 2: {0: 1}})
    with pytest.raises(ValueError, match="associative"):
        from_dga(k2, mu2)


def test_stasheff_arity_one_and_two():
    rng = random.Random(6)
    C, mu = random_dga(rng, 5)
    A = from_dga(C, mu, 3)
    assert stasheff_defect(A, 1).is_zero()
    d = C.d
    expected = compose(d, mu) - compose(mu, amplify(d, None, C.space)) - compose(mu, amplify(d, C.space, None))
    assert stasheff_defect(A, 2) == expected
    assert expected.is_zero()


def test_stasheff_arity_three_on_circle():
    C, mu = cochain_dga(SimplicialComplexDescription.circle())
    A = from_dga(C, mu, 3)
    assert stasheff_defect(A, 3).is_zero()
    with pytest.raises(ValueError):
        stasheff_defect(A, 4)


def test_single_m3_entry_breaks_both_forms():
    rng = random.Random(7)
    C, mu = random_dga(rng, 4)
    A = from_dga(C, mu, 4)
    space = tensor_power(C.space, 3)
    for i in range(space.dim):
        targets = [j for j in range(C.dim) if C.space.bidegree(j) == (space.degrees[i] - 1, space.weights[i])]
        if targets:
            m3 = GradedMap(space, C.space, (-1, 0), QQ, {i: {targets[0]: 1}})
            break
    else:
        pytest.skip("no room for an m3 entry")
    B = A.replace(3, m3)
    bb = compose_bar(bar_differential(B), bar_differential(B))
    assert not bb.is_zero()
    assert not all(stasheff_defect(B, n).is_zero() for n in range(1, 5))
    assert not all(bar_defect(B, n).is_zero() for n in range(1, 5))


def test_zero_higher_operations():
    C = complexes(random.Random(8))
    A = AInfinityStructure(C, [C.d, None, None])
    assert is_ainfinity(A)
    assert compose_bar(bar_differential(A), bar_differential(A)).is_zero()


def test_identity_and_transferred_morphisms():
    rng = random.Random(9)
    C, mu = random_dga(rng, 5)
    A = from_dga(C, mu, 4)
    assert check_morphism(AInfinityMorphism.identity(A))
    c, _ = random_contraction(rng, C)
    T = transfer(c, A)
    assert check_morphism(T.alpha_inf)
    assert check_morphism(T.r_inf)


def test_strict_map_failing_leibniz_is_not_a_morphism():
    C, mu = cochain_dga(SimplicialComplexDescription.interval())
    A = from_dga(C, mu, 2)
    i, j = C.space.index("0"), C.space.index("1")
    swap = C.identity() + GradedMap(C.space, C.space, (0, 0), QQ, {i: {j: 1}})
    assert not check_morphism(AInfinityMorphism(A, A, [swap]))


def test_massey_on_a_dga_with_chain_level_zero_products():
    C, mu = cochain_dga(SimplicialComplexDescription.circle())
    A = from_dga(C, mu, 3)
    (_, (one,), _), (_, (x,), _) = homology_basis(C)
    res = massey_triple(A, x, x, x)
    assert not res.nonvanishing
    assert not any(res.class_coordinates)


def test_massey_of_zero_inputs():
    C, mu = cochain_dga(SimplicialComplexDescription.circle())
    res = massey_triple(from_dga(C, mu, 3), {}, {}, {})
    assert res.value == {} and not res.nonvanishing


def test_massey_rejects_nonvanishing_product():
    C, mu = cochain_dga(SimplicialComplexDescription.torus())
    c = gaussian_contraction(C)
    T = transfer(c, from_dga(C, mu, 2))
    A = AInfinityStructure(c.C, [c.C.d, T.structure.m(2), None])
    a, b = [i for i in range(c.C.dim) if c.C.space.degrees[i] == 1]
    with pytest.raises(ValueError, match="nonzero"):
        massey_triple(A, {a: 1}, {b: 1}, {a: 1})


def test_massey_requires_m3():
    C, mu = cochain_dga(SimplicialComplexDescription.circle())
    with pytest.raises(ValueError):
        massey_triple(from_dga(C, mu, 2), {}, {}, {})


def test_massey_instance_dga_and_transfer_agree():
    C, mu, x, y, z = massey_instance(QQ)
    A = from_dga(C, mu, 3)
    chain = massey_triple(A, x, y, z)
    assert chain.nonvanishing
    c = gaussian_contraction(C)
    T = transfer(c, A)
    xs, ys, zs = (c.r(v) for v in (x, y, z))
    res = massey_triple(T.structure, xs, ys, zs)
    assert res.nonvanishing
    assert res.indeterminacy == ()
