"""The seeded check suites: entailment properties, constant/quantifier
laws, and completeness-condition agreement.

Full-size runs belong to the acceptance tests; here the suites run at
small case counts to pin the report shape, determinism, and the generator
contracts they rely on.
"""

import json
import random

from goedel.suites import (
    constants_suite,
    eqd_suite,
    property_suite,
    random_closed_fo,
    random_open,
    random_propositional,
    random_theory,
)
from goedel.syntax import constants_of


def test_property_suite_small():
    report = property_suite(cases=40, seed=1)
    assert report.ok
    assert report.suite == "property"
    assert report.seed == 1
    assert [i.item for i in report.items] == [str(k) for k in range(1, 12)]
    assert all(i.cases == 40 for i in report.items)
    assert all(i.failures == () for i in report.items)


def test_property_suite_deterministic():
    a = property_suite(cases=15, seed=7).to_dict()
    b = property_suite(cases=15, seed=7).to_dict()
    assert a == b
    json.dumps(a)
    assert a["ok"] is True
    assert {"item", "cases", "failures"} == set(a["items"][0])


def test_constants_suite_small():
    report = constants_suite(cases=6, item7_cases=3, seed=2, max_universe=2, sample=30)
    assert report.ok
    assert report.suite == "constants"
    assert [i.item for i in report.items] == [str(k) for k in range(1, 8)]
    assert report.items[-1].cases == 3
    assert report.items[0].cases == 6


def test_eqd_suite_small():
    report = eqd_suite(cases=6, seed=3)
    assert report.ok
    assert report.suite == "eqd"
    assert len(report.items) == 1
    assert report.items[0].item == "agreement"
    assert report.items[0].cases == 6


def test_generators_deterministic():
    fs1 = [random_propositional(random.Random("g:1")) for _ in range(5)]
    fs2 = [random_propositional(random.Random("g:1")) for _ in range(5)]
    assert fs1 == fs2


def test_random_open_has_free_x():
    rng = random.Random("open")
    for _ in range(60):
        f = random_open(rng)
        assert f.free_vars == frozenset({"x"})
        assert "c" not in constants_of([f])


def test_random_closed_fo_is_closed_and_c_free():
    rng = random.Random("closed")
    for _ in range(60):
        f = random_closed_fo(rng)
        assert not f.free_vars
        assert "c" not in constants_of([f])


def test_random_theory_size_bound():
    rng = random.Random("thy")
    for _ in range(30):
        theory = random_theory(rng, 3)
        assert 0 <= len(theory) <= 3
