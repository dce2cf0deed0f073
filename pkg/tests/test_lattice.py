import itertools

import numpy as np
from hypothesis import given, settings, strategies as st

from clusterforms.lattice import (
    FinPoset,
    check_bounded_lattice,
    greatest_of,
    lattice_law_violations,
    least_of,
    powerset_poset,
)


def test_singleton_poset():
    rep = check_bounded_lattice(FinPoset(np.ones((1, 1), dtype=bool)))
    assert rep.ok and rep.data["top"] == rep.data["bottom"] == 0


def test_antichain_has_no_top():
    rep = check_bounded_lattice(FinPoset(np.eye(2, dtype=bool)))
    assert not rep.ok and not rep["top"] and not rep["bottom"]


def test_non_poset_flagged():
    leq = np.ones((2, 2), dtype=bool)
    rep = check_bounded_lattice(FinPoset(leq))
    assert rep.reason == "not-a-poset"


def test_powerset_meet_join_are_set_ops():
    p, subsets = powerset_poset(2)
    rep = check_bounded_lattice(p)
    assert rep.ok
    join, meet = rep.data["join"], rep.data["meet"]
    for a, b in itertools.product(range(4), repeat=2):
        assert subsets[join[a, b]] == subsets[a] | subsets[b]
        assert subsets[meet[a, b]] == subsets[a] & subsets[b]
    assert not lattice_law_violations(join, meet)


def test_least_of_chain_and_incomparable():
    p, subsets = powerset_poset(2)
    ix = {s: i for i, s in enumerate(subsets)}
    a, b, ab = ix[frozenset({0})], ix[frozenset({1})], ix[frozenset({0, 1})]
    assert least_of(p, [a, ab]) == a
    assert least_of(p, [a, b]) is None
    assert greatest_of(p, range(4)) == ab


def divisor_poset(n):
    ds = [d for d in range(1, n + 1) if n % d == 0]
    return FinPoset(np.array([[b % a == 0 for b in ds] for a in ds], dtype=bool), ds)


def test_divisor_lattice_gcd_lcm():
    p = divisor_poset(12)
    rep = check_bounded_lattice(p)
    ds = p.elements
    from math import gcd

    for i, j in itertools.product(range(len(ds)), repeat=2):
        assert ds[rep.data["meet"][i, j]] == gcd(ds[i], ds[j])
        assert ds[rep.data["join"][i, j]] == ds[i] * ds[j] // gcd(ds[i], ds[j])


@st.composite
def random_posets(draw):
    # order relation from a random DAG's transitive closure
    k = draw(st.integers(1, 6))
    edges = draw(st.lists(st.tuples(st.integers(0, k - 1), st.integers(0, k - 1)), max_size=12))
    leq = np.eye(k, dtype=bool)
    for a, b in edges:
        if a < b:
            leq[a, b] = True
    for m in range(k):
        leq |= leq[:, [m]] & leq[[m], :]
    return FinPoset(leq)


@settings(max_examples=60, deadline=None)
@given(random_posets(), st.data())
def test_least_of_is_a_lower_bound(p, data):
    sub = data.draw(st.sets(st.integers(0, p.size - 1), min_size=1))
    m = least_of(p, sub)
    if m is not None:
        assert m in sub and all(p.leq[m, b] for b in sub)
    else:
        assert not any(all(p.leq[a, b] for b in sub) for a in sub)


@settings(max_examples=60, deadline=None)
@given(random_posets())
def test_lattice_tables_satisfy_laws(p):
    rep = check_bounded_lattice(p)
    if rep.ok:
        assert not lattice_law_violations(rep.data["join"], rep.data["meet"])
        # join is the least upper bound by brute force
        for a, b in itertools.product(range(p.size), repeat=2):
            ups = [u for u in range(p.size) if p.leq[a, u] and p.leq[b, u]]
            assert rep.data["join"][a, b] == least_of(p, ups)
