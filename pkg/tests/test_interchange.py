from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, strategies as st

from homotransfer import interchange as ix
from homotransfer.ainfty import from_dga
from homotransfer.bar import BarContext, lift_coderivation
from homotransfer.factory import random_contraction, random_dga
from homotransfer.fields import GF, QQ
from homotransfer.perturbation import transfer

seeds = st.integers(0, 2**32 - 1)


@given(seeds)
def test_sdr_round_trip(seed):
    rng = random.Random(seed)
    field = rng.choice([QQ, GF(7)])
    D, mu = random_dga(rng, 5, field=field)
    c, _ = random_contraction(rng, D)
    doc = ix.sdr_document(c, mu)
    back = ix.loads(doc.dumps())
    assert back.field == field
    datum = ix.read_sdr(back)
    assert datum.C.space == c.C.space and datum.D.space == c.D.space
    for name in ("alpha", "r", "H"):
        assert getattr(datum, name) == getattr(c, name)
    assert back.map("mu") == mu
    assert back.dumps() == doc.dumps()


def test_ainfty_and_bar_round_trip():
    rng = random.Random(3)
    D, mu = random_dga(rng, 4)
    c, _ = random_contraction(rng, D)
    T = transfer(c, from_dga(D, mu, 3))
    doc = ix.ainfty_document(T.structure)
    A = ix.read_ainfty(ix.loads(doc.dumps()))
    assert A == T.structure
    ctx = BarContext(D, 3)
    B = lift_coderivation({1: ctx.suspended.d}, ctx)
    bdoc = ix.Document(QQ)
    bdoc.add_space("S", ctx.base)
    bdoc.maps["B"] = B
    blocks = ix.load_bar_blocks(ix.loads(bdoc.dumps()), "B")
    assert blocks == B.blocks
    assert set(json.loads(bdoc.dumps())["maps"]["B"]["blocks"]) == {f"{j}->{k}" for j, k in B.blocks}


def test_read_ainfty_arity_bound():
    doc = ix.load_fixture("circle")
    C, mu = ix.read_dga(ix.loads(ix.dga_document(ix.read_complex(doc), doc.map("mu")).dumps()))
    adoc = ix.ainfty_document(from_dga(C, mu, 3))
    assert ix.read_ainfty(adoc, 2).N == 2
    with pytest.raises(ix.InterchangeError, match="exceeds stored arity 3"):
        ix.read_ainfty(adoc, 4)


def test_json_syntax_error_has_line_and_column():
    with pytest.raises(ix.InterchangeError) as err:
        ix.loads('{"field": "Q",\n "spaces": {,}}')
    assert err.value.location == "line 2 column 13"


@pytest.mark.parametrize(
    "mutate, location",
    [
        (lambda o: o.pop("field"), "$"),
        (lambda o: o.__setitem__("field", "R"), "field"),
        (lambda o: o["spaces"]["D"][0].pop("weight"), "spaces.D[0]"),
        (lambda o: o["maps"]["d"].__setitem__("source", "X"), "maps.d.source"),
        (lambda o: o["maps"]["d"]["entries"][0].__setitem__("to", "nope"), "maps.d.entries[0].to"),
        (lambda o: o["maps"]["d"]["entries"][0].__setitem__("coeff", "1/0"), "maps.d.entries[0].coeff"),
        (lambda o: o["maps"]["d"].__setitem__("bidegree", [1]), "maps.d.bidegree"),
        (lambda o: o["maps"]["mu"].__setitem__("arity", 3), "maps.mu.arity"),
        (lambda o: o["maps"]["d"].__setitem__("bidegree", [2, 0]), "maps.d"),
    ],
)
def test_schema_errors_are_located(mutate, location):
    doc = ix.dga_document(*ix.read_dga(_circle_dga()))
    obj = doc.to_json()
    mutate(obj)
    with pytest.raises(ix.InterchangeError) as err:
        ix.parse_document(obj)
    assert err.value.location == location


def _circle_dga():
    doc = ix.load_fixture("circle")
    return ix.dga_document(ix.read_complex(doc), doc.map("mu"))


def test_missing_file():
    with pytest.raises(ix.InterchangeError):
        ix.load("/nonexistent/file.json")


def test_prime_field_coefficients_serialize_reduced():
    doc = ix.loads(json.dumps({
        "field": {"Fp": 5},
        "spaces": {"V": [{"name": "a", "degree": 0, "weight": 0}, {"name": "b", "degree": 1, "weight": 0}]},
        "maps": {"d": {"source": "V", "target": "V", "bidegree": [1, 0],
                       "entries": [{"from": "a", "to": "b", "coeff": "7/2"}]}},
    }))
    assert doc.map("d").column(0) == {1: 1}  # 7/2 = 2 * 3 = 6 = 1 mod 5
    assert doc.to_json()["maps"]["d"]["entries"][0]["coeff"] == "1"


@pytest.mark.parametrize("name", ix.FIXTURES)
def test_bundled_fixtures_match_builder(name):
    assert ix.load_fixture(name).dumps() == ix.build_fixture(name).dumps()


def test_unknown_fixture():
    with pytest.raises(KeyError):
        ix.fixture_path("sphere")
