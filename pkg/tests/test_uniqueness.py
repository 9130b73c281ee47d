import json
from datetime import date

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import build, person
from oracles import pairwise_histogram, record_key
from reident.dataset import Address
from reident.errors import DuplicateToken, EmptyInputError, EmptySpecError, LevelOutOfRange, UnknownToken
from reident.synthgen import SynthConfig, generate_population
from reident.uniqueness import (
    DEFAULT_SPECS,
    QuasiIdentifierSpec,
    equivalence_classes,
    generalize_address,
    generalize_birth_date,
    parse_spec,
    reports_to_csv,
    reports_to_json,
    sweep,
)


def test_parse_spec():
    spec = parse_spec("g, d1 ,A3")
    assert spec == QuasiIdentifierSpec(gender=True, birth_date=1, address=3)
    assert spec.label == "G,D1,A3"
    assert parse_spec("A2,C,G,D0").label == "G,D0,C,A2"
    assert [s.label for s in DEFAULT_SPECS][:2] == ["G,D0,C,A0", "G,D0,A0"]
    assert len(DEFAULT_SPECS) == 8


@pytest.mark.parametrize("text, error", [
    ("G,X", UnknownToken),
    ("G,G", DuplicateToken),
    ("D0,D1", DuplicateToken),
    ("A5", UnknownToken),
    ("D3", UnknownToken),
    ("", UnknownToken),
    ("G,,A0", UnknownToken),
])
def test_parse_spec_errors(text, error):
    with pytest.raises(error):
        parse_spec(text)


def test_spec_level_bounds():
    with pytest.raises(LevelOutOfRange):
        QuasiIdentifierSpec(address=5)
    with pytest.raises(LevelOutOfRange):
        QuasiIdentifierSpec(birth_date=-1)


def test_generalizers():
    a = Address("3", "S", "N", "D", "C")
    assert generalize_address(a, 0) == ("3", "S", "N", "D", "C")
    assert generalize_address(a, 4) == ("C",)
    d = date(1970, 4, 9)
    assert generalize_birth_date(d, 0) == (9, 4, 1970)
    assert generalize_birth_date(d, 2) == (1970,)
    with pytest.raises(LevelOutOfRange):
        generalize_address(a, 5)


def test_hand_example():
    recs = [
        person(1, "A", "X", "M", 1970, "1"),
        person(2, "B", "X", "M", 1970, "1"),
        person(3, "C", "X", "F", 1970, "1"),
        person(4, "D", "X", "M", 1971, "2"),
    ]
    ds = build(recs)
    r = equivalence_classes(ds, parse_spec("G,D0,A0"))
    assert r.class_size_histogram == {1: 2, 2: 1}
    assert r.unique_fraction == 0.5
    r = equivalence_classes(ds, parse_spec("G"))
    assert r.class_size_histogram == {1: 1, 3: 1}
    assert r.n_classes == 2


def test_empty_inputs(small_population):
    ds, _ = small_population
    with pytest.raises(EmptySpecError):
        equivalence_classes(ds, QuasiIdentifierSpec())
    empty, _ = generate_population(SynthConfig(population_size=0))
    with pytest.raises(EmptyInputError):
        equivalence_classes(empty, parse_spec("G"))


@pytest.mark.parametrize("seed", range(3))
def test_matches_pairwise_oracle(seed):
    ds, _ = generate_population(SynthConfig(population_size=600, seed=100 + seed))
    recs = list(ds)
    specs = list(DEFAULT_SPECS) + [parse_spec("C"), parse_spec("D2,C,A4"), parse_spec("G,D1,C,A2")]
    for spec in specs:
        want = pairwise_histogram([record_key(r, spec) for r in recs])
        got = equivalence_classes(ds, spec)
        assert got.class_size_histogram == want, spec.label
        assert got.unique_fraction == want.get(1, 0) / len(recs)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.booleans(), st.sampled_from([None, 0, 1, 2]), st.booleans(),
       st.sampled_from([None, 0, 1, 2, 3, 4]))
def test_histogram_accounts_for_everyone(seed, g, d, c, a):
    spec = QuasiIdentifierSpec(g, d, c, a)
    if spec.is_empty:
        return
    ds, _ = generate_population(SynthConfig(population_size=300, seed=seed))
    r = equivalence_classes(ds, spec)
    assert sum(size * count for size, count in r.class_size_histogram.items()) == len(ds)
    assert 0.0 <= r.unique_fraction <= 1.0


def test_monotone_under_generalization(medium_population):
    ds, _ = medium_population
    addr = [equivalence_classes(ds, QuasiIdentifierSpec(True, 0, False, a)).unique_fraction for a in range(5)]
    dob = [equivalence_classes(ds, QuasiIdentifierSpec(True, d, False, 0)).unique_fraction for d in range(3)]
    assert addr == sorted(addr, reverse=True)
    assert dob == sorted(dob, reverse=True)


def test_serializers(small_population):
    ds, _ = small_population
    reports = sweep(ds)
    rows = reports_to_csv(reports).splitlines()
    assert rows[0] == "spec,unique_fraction,population,size,count"
    assert all(line.startswith(tuple(f'"{s.label}"' for s in DEFAULT_SPECS)) for line in rows[1:])
    data = json.loads(reports_to_json(reports))
    assert [d["spec"] for d in data] == [s.label for s in DEFAULT_SPECS]
    assert data[0]["population"] == len(ds)
    assert np.isclose(data[0]["unique_fraction"], reports[0].unique_fraction)
