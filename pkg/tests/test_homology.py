from __future__ import annotations

import random

from hypothesis import given, strategies as st

from homotransfer.factory import SimplicialComplexDescription, cochain_dga, gaussian_contraction
from homotransfer.fields import GF, QQ
from homotransfer.graded import BigradedSpace, Complex, GradedMap
from homotransfer.homology import Homology, homology_basis

from helpers import complexes


def test_acyclic_two_term():
    sp = BigradedSpace([("b", 0, 0), ("c", 1, 0)])
    C = Complex(sp, GradedMap(sp, sp, (1, 0), QQ, {0: {1: 1}}))
    assert homology_basis(C) == []


def test_circle_betti():
    C, _ = cochain_dga(SimplicialComplexDescription.circle())
    assert Homology(C).betti_numbers() == {(0, 0): 1, (1, 0): 1}


def test_torus_betti():
    C, _ = cochain_dga(SimplicialComplexDescription.torus())
    assert C.dim == 9 + 27 + 18
    assert Homology(C).betti_numbers() == {(0, 0): 1, (1, 0): 2, (2, 0): 1}


def test_torus_betti_mod_two():
    C, _ = cochain_dga(SimplicialComplexDescription.torus(), GF(2))
    assert Homology(C).betti_numbers() == {(0, 0): 1, (1, 0): 2, (2, 0): 1}


def test_representatives_are_cycles_with_independent_classes():
    C, _ = cochain_dga(SimplicialComplexDescription.torus())
    H = Homology(C)
    for bd, reps, betti in homology_basis(C):
        assert len(reps) == betti
        for k, rep in enumerate(reps):
            assert H.is_cycle(rep)
            coords = H.class_of(rep)[bd]
            assert coords == tuple(1 if j == k else 0 for j in range(betti))


def test_boundaries_have_zero_class_and_a_preimage():
    C, _ = cochain_dga(SimplicialComplexDescription.circle())
    H = Homology(C)
    b = C.d({0: 1})
    assert H.is_boundary(b)
    assert C.d(H.preimage(b)) == b
    assert H.preimage({C.space.index("0-1"): 1}) is None


@given(st.integers(0, 2**32 - 1))
def test_betti_matches_elimination(seed):
    C = complexes(random.Random(seed))
    c = gaussian_contraction(C)
    counts = {}
    for i in range(c.C.dim):
        counts[c.C.space.bidegree(i)] = counts.get(c.C.space.bidegree(i), 0) + 1
    assert Homology(C).betti_numbers() == counts
