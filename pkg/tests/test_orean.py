import itertools

import numpy as np
import pytest

from clusterforms import zoo
from clusterforms.formcore import Form, Operator, subform, validate_operator
from clusterforms.orean import (
    as_orean,
    check_noetherian,
    check_orean,
    classify,
    closed_subform,
    constant_bottom,
    constant_top,
    enumerate_closure_operators,
    find_embedding,
    find_quotient,
    hull_conormal,
    is_strongly_orean,
    noetherian_verdicts,
    operator_normality,
    restricted_modular_violations,
    special_predicates,
    strongly_orean,
    top_subform,
    bottom_subform,
    validate_closure,
)

from conftest import mor, obj


def partition_of(labels):
    """Restricted growth string of a labelling."""
    seen, out = {}, []
    for v in labels:
        seen.setdefault(v, len(seen))
        out.append(seen[v])
    return tuple(out)


def test_subsets_images_are_pointwise(O_subsets, subsets3):
    F, c = subsets3, subsets3.base
    for f in range(c.n):
        t = c.maps[f]
        x, y = c.dom[f], c.cod[f]
        for s, A in enumerate(F.payload[x]):
            assert F.payload[y][O_subsets.direct(f, s)] == frozenset(t[i] for i in A)
        for u, B in enumerate(F.payload[y]):
            pre = frozenset(i for i in range(c.carriers[x]) if t[i] in B)
            assert F.payload[x][O_subsets.inverse(u, f)] == pre


def test_equivrel_bounds(O_equivrel, equivrel3):
    for x, n in enumerate(equivrel3.base.carriers):
        assert equivrel3.payload[x][O_equivrel.bottom[x]] == tuple(range(n))
        assert equivrel3.payload[x][O_equivrel.top[x]] == (0,) * n


def test_equivrel_kernel_is_kernel_pair(O_equivrel, equivrel3):
    c = equivrel3.base
    for f in range(c.n):
        assert equivrel3.payload[c.dom[f]][O_equivrel.kernel(f)] == partition_of(c.maps[f])


def test_equivrel_image_collapses_the_range(O_equivrel, equivrel3):
    c = equivrel3.base
    for f in range(c.n):
        rng = set(c.maps[f])
        want = partition_of(["*" if v in rng else v for v in range(c.carriers[c.cod[f]])])
        assert equivrel3.payload[c.cod[f]][O_equivrel.image(f)] == want


def test_identity_image_and_kernel(O_exaq):
    c = O_exaq.base
    for x in range(c.k):
        assert O_exaq.image(c.identity[x]) == O_exaq.top[x]
        assert O_exaq.kernel(c.identity[x]) == O_exaq.bottom[x]


def test_collapse_to_point(O_subsets, finset2):
    O = as_orean(zoo.subsets_form(finset2))
    f = mor(finset2, "S2->S1:00")
    s1 = obj(finset2, "S1")
    assert O.form.payload[s1][O.image(f)] == frozenset({0}) and O.image(f) == O.top[s1]
    assert O.form.payload[obj(finset2, "S2")][O.kernel(f)] == frozenset()


def test_galois_adjunction_brute_force(O_exaq, exaq3):
    F, c = exaq3, exaq3.base
    for f in range(c.n):
        x, y = c.dom[f], c.cod[f]
        gx, gy = F.ge(x), F.ge(y)
        for s, t in itertools.product(range(F.size(x)), range(F.size(y))):
            assert gy[t, O_exaq.direct(f, s)] == gx[O_exaq.inverse(t, f), s] == F.rel[f][t, s]


def test_non_orean_form_detected():
    # a form over the arrow 0 -> 1 whose fiber over 1 is an antichain has no top
    c = zoo.chain_category(1)
    F = Form(c, [["a"], ["p", "q"]], [np.ones((1, 1), bool), np.ones((2, 1), bool), np.eye(2, dtype=bool)], "antichain")
    rep, O = check_orean(F)
    assert O is None and not rep.ok


def test_subsets_classification(O_subsets, subsets3):
    cl = classify(O_subsets)
    for x in range(subsets3.base.k):
        assert cl.conormal[x] == frozenset(range(subsets3.size(x)))
        assert [subsets3.payload[x][i] for i in cl.normal[x]] == [frozenset()]


def test_equivrel_classification(O_equivrel, equivrel3):
    cl = classify(O_equivrel)
    for x in range(equivrel3.base.k):
        assert cl.normal[x] == frozenset(range(equivrel3.size(x)))
        for i, r in enumerate(equivrel3.payload[x]):
            big = sum(1 for b in set(r) if r.count(b) > 1)
            assert (i in cl.conormal[x]) == (big <= 1)


def test_exaq_conormal_over_s2(finset2):
    F = zoo.exaq_form(finset2)
    O = as_orean(F)
    s2 = obj(finset2, "S2")
    assert F.size(s2) == 5
    # oracle: Im f = (range f, one class holding the range), or (∅, Δ) for the empty map
    c = finset2
    want = set()
    for f in c.into[s2]:
        rng = frozenset(c.maps[f])
        r = partition_of(["*" if v in rng else v for v in range(2)])
        want.add((rng, r) if rng else (frozenset(), (0, 1)))
    got = {F.payload[s2][i] for i in classify(O).conormal[s2]}
    assert got == want and len(got) == 4


def test_embedding_of_point(finset2):
    O = as_orean(zoo.subsets_form(finset2))
    s2 = obj(finset2, "S2")
    a = O.form.payload[s2].index(frozenset({0}))
    assert finset2.names[find_embedding(O, s2, a)] == "S1->S2:0"


def test_embedding_of_top_is_iso(O_exaq):
    c = O_exaq.base
    for x in range(c.k):
        assert c.is_iso(find_embedding(O_exaq, x, O_exaq.top[x]))


def test_quotient_collapsing_01(O_equivrel, finset3):
    s3 = obj(finset3, "S3")
    r = O_equivrel.form.payload[s3].index((0, 0, 1))
    q = find_quotient(O_equivrel, s3, r)
    assert finset3.names[q] == "S3->S2:001"


def test_noetherian_pattern_subsets(O_subsets):
    v = noetherian_verdicts(check_noetherian(O_subsets))
    assert v == {"N1-join": False, "N1-meet": True, "N2": False, "N3": True}


def test_noetherian_pattern_equivrel(O_equivrel):
    v = noetherian_verdicts(check_noetherian(O_equivrel))
    assert v["N1-join"] and v["N1-meet"] and not v["N2"] and v["N3"]


def test_exaq_is_noetherian(O_exaq):
    rep = check_noetherian(O_exaq)
    assert all(noetherian_verdicts(rep).values())
    assert not restricted_modular_violations(O_exaq)


def test_collapse_operator_is_conormal_only(subsets3, equivrel3):
    t = zoo.collapse_operator(subsets3, equivrel3)
    assert "valid" in validate_operator(t)
    assert operator_normality(t) == {"conormal"}


def test_constant_bottom_is_normal_only(equivrel3, subsets3, O_subsets):
    t = zoo.constant_operator(equivrel3, subsets3, lambda x: O_subsets.bottom[x])
    assert operator_normality(t) == {"normal"}


def test_strongly_orean_hull_inclusion_is_conormal(O_exaq, exaq3):
    assert is_strongly_orean(O_exaq)
    H = hull_conormal(O_exaq)
    sel = H._cache["selection"]
    inc = Operator.from_function(H, exaq3, lambda x, i: sel[x][i])
    assert "conormal" in operator_normality(inc)
    assert strongly_orean(O_exaq).ok


def test_special_predicates(O_subsets, palettes3):
    s = special_predicates(O_subsets)
    assert s["conormal_form"] and s["antinormal"] and not s["isoform"]
    p = special_predicates(as_orean(palettes3))
    assert p["antinormal"] and not p["conormal_form"]


@pytest.mark.parametrize("pick", [top_subform, bottom_subform])
def test_extreme_subforms_are_isoforms(O_equivrel, pick):
    assert special_predicates(as_orean(pick(O_equivrel)))["isoform"]


def test_trivial_closures(O_exaq):
    for t in (Operator.identity(O_exaq.form), constant_top(O_exaq)):
        rep = validate_closure(t)
        assert rep.ok and rep.data["idempotent"]
    assert validate_closure(constant_bottom(O_exaq), co=True).ok
    assert not validate_closure(constant_bottom(O_exaq)).ok


def test_closed_subform_of_constant_top(O_exaq):
    rep, Ok = closed_subform(constant_top(O_exaq))
    assert rep.ok and Ok.form.fiber_sizes == (1,) * O_exaq.base.k


def _same_set(census, ops):
    got = sorted(tuple(np.concatenate(t.assign).tolist()) for t in census.operators)
    want = sorted(tuple(np.concatenate(t.assign).tolist()) for t in ops)
    return got == want


def test_equivrel_census(O_equivrel):
    up = enumerate_closure_operators(O_equivrel)
    down = enumerate_closure_operators(O_equivrel, co=True)
    assert up.status == down.status == "complete"
    ident = Operator.identity(O_equivrel.form)
    assert _same_set(up, [ident, constant_top(O_equivrel)])
    assert _same_set(down, [ident, constant_bottom(O_equivrel)])


def test_subsets_census_contains_nonempty_to_full(O_subsets, subsets3):
    census = enumerate_closure_operators(O_subsets)
    t = Operator.from_function(subsets3, subsets3, lambda x, s: s if not subsets3.payload[x][s] else O_subsets.top[x])
    assert any(op.same_as(t) for op in census.operators)
    assert any(op.same_as(constant_top(O_subsets)) for op in census.operators)
    for op in census.operators:
        assert validate_closure(op).ok
