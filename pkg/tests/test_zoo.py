import itertools
import json

import numpy as np
import pytest

from clusterforms import zoo
from clusterforms.fincat import validate_category
from clusterforms.formcore import find_isomorphism, validate_form
from clusterforms.orean import as_orean, check_noetherian, noetherian_verdicts

from conftest import obj

BELL = [1, 1, 2, 5, 15, 52]


def brute_homs(g, h):
    return [
        t
        for t in itertools.product(range(len(h)), repeat=len(g))
        if all(t[g[a][b]] == h[t[a]][t[b]] for a in range(len(g)) for b in range(len(g)))
    ]


def brute_subgroups(t):
    n = len(t)
    return [
        s
        for r in range(1, n + 1)
        for s in map(frozenset, itertools.combinations(range(n), r))
        if 0 in s and all(t[a][b] in s for a in s for b in s)
    ]


def brute_antichains(n):
    subs = [frozenset(s) for r in range(n + 1) for s in itertools.combinations(range(n), r)]
    out = 0
    for r in range(1, len(subs) + 1):
        for fam in itertools.combinations(subs, r):
            if all(not (a < b or b < a) for a, b in itertools.combinations(fam, 2)):
                out += 1
    return out


@pytest.mark.parametrize("n", range(6))
def test_set_partitions_bell(n):
    parts = zoo.set_partitions(n)
    assert len(parts) == BELL[n] == len(set(parts))


def test_pointed_homs(pointed3):
    p2 = obj(pointed3, "P2")
    assert len(pointed3.hom(p2, p2)) == 2
    assert validate_category(pointed3).ok


def test_groups_objects_and_homs(groups4):
    assert groups4.objects == ("1", "Z2", "Z3", "Z4", "V4")
    assert len(groups4.hom(obj(groups4, "Z4"), obj(groups4, "Z2"))) == 2
    for a, b in itertools.product(range(groups4.k), repeat=2):
        assert len(groups4.hom(a, b)) == len(brute_homs(groups4.tables[a], groups4.tables[b]))
    assert validate_category(groups4).ok


def test_groups_cache_round_trip(tmp_path):
    c = zoo.groups_category(3, cache_dir=tmp_path)
    path = tmp_path / "groups-3.json"
    assert path.exists()
    again = zoo._groups_category.__wrapped__(3, str(tmp_path))
    assert again.names == c.names and np.array_equal(again.table, c.table)
    assert set(json.loads(path.read_text())) == {f"{a},{b}" for a in range(3) for b in range(3)}


def test_exaq_fiber_sizes(exaq3):
    assert exaq3.fiber_sizes == (1, 2, 5, 15)
    for n in range(4):
        assert exaq3.size(n) == sum(len(set(r)) + 1 for r in zoo.set_partitions(n))


def test_palettes_over_s2(finset2):
    P = zoo.palettes_form(finset2)
    assert P.size(obj(finset2, "S2")) == 5 == brute_antichains(2)
    assert P.size(obj(finset2, "S0")) == brute_antichains(0) == 1


def test_subgroups_of_v4(groups4):
    S = zoo.subgroup_form(groups4)
    for x, t in enumerate(groups4.tables):
        assert sorted(map(sorted, S.payload[x])) == sorted(map(sorted, brute_subgroups(t)))
    assert S.size(obj(groups4, "V4")) == 5
    assert S.fiber_sizes == (1, 2, 2, 3, 5)


def test_subgroup_form_is_noetherian(groups4):
    assert all(noetherian_verdicts(check_noetherian(as_orean(zoo.subgroup_form(groups4)))).values())


def test_m_subobjects_are_subsets(finset2):
    M = zoo.m_subobjects_form(finset2, zoo.monos(finset2))
    assert find_isomorphism(M, zoo.subsets_form(finset2)).found


def test_subquotients_with_trivial_e(finset2):
    ids = list(finset2.identity)
    isos = [f for f in range(finset2.n) if finset2.is_iso(f)]
    SQ = zoo.subquotients_form(finset2, isos, zoo.monos(finset2))
    assert find_isomorphism(SQ, zoo.m_subobjects_form(finset2, zoo.monos(finset2))).found
    SQ2 = zoo.subquotients_form(finset2, zoo.epis(finset2), isos)
    assert find_isomorphism(SQ2, zoo.e_quotients_form(finset2, zoo.epis(finset2))).found
    assert ids


def test_e_quotients_are_partitions(finset3):
    Q = zoo.e_quotients_form(finset3, zoo.epis(finset3))
    assert find_isomorphism(Q, zoo.equivrel_form(finset3)).found


@pytest.mark.parametrize("name", zoo.zoo_names())
def test_every_zoo_entry_builds(name):
    if name in zoo.CATEGORIES:
        assert validate_category(zoo.zoo_category(name)).ok
        return
    F = zoo.zoo_form(name)
    assert validate_form(F).ok
    for x in range(F.base.k):
        assert len(set(F.clusters[x])) == F.size(x)
        if F.payload is not None:
            assert len(set(map(repr, (F.decode(x, i) for i in range(F.size(x)))))) == F.size(x)


def test_unknown_zoo_name():
    with pytest.raises(KeyError):
        zoo.zoo_form("nope")


def test_size_guard_warns():
    with pytest.warns(UserWarning):
        zoo._guard(5, "finset_skeleton")


def test_two_chain_classes():
    (c, E1, M1, F1), (_, E2, M2, F2) = zoo.two_chain_example()
    f, g, gf = (c.names.index(n) for n in ("0->1", "1->2", "0->2"))
    assert set(E1) == set(c.identity) and {f, g} <= set(M1)
    assert g in E2 and {f, gf} <= set(M2)
    for F in (F1, F2):
        assert all(noetherian_verdicts(check_noetherian(as_orean(F))).values())
