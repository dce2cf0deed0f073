import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from clusterforms import zoo
from clusterforms.decomp import (
    TERMS,
    canonical_join_decomposition,
    check_decomposition,
    exact_join_check,
    exact_join_identities,
    exact_meet_check,
    find_exact_decomposition,
    identity_decomposition,
    left_join_decomposition,
    right_join_decomposition,
    semiexact_consequences,
)
from clusterforms.formcore import Form, FormError, Operator, dual_form, product
from clusterforms.orean import as_orean, bottom_subform, classify, constant_top, is_strongly_orean, top_subform


def test_isoform_identity_decomposition(O_exaq):
    iso = as_orean(bottom_subform(O_exaq))
    d = identity_decomposition(iso)
    assert d.valid and d.exact and d.terms == set(TERMS)


def test_binormal_identity_decomposition(O_equivrel):
    # over sets of size <= 3 every equivalence relation is conormal too
    d = identity_decomposition(O_equivrel)
    assert d.exact and {"first", "second", "meet", "join"} <= d.terms


def test_non_idempotent_operator_rejected(O_exaq, exaq3):
    c = exaq3.base
    bump = Operator.from_function(exaq3, exaq3, lambda x, s: O_exaq.top[x] if s == O_exaq.bottom[x] else O_exaq.bottom[x])
    with pytest.raises(FormError):
        check_decomposition(O_exaq, bump, Operator.identity(exaq3))
    assert c.k == 4


def test_exaq_interiors_give_exact_join(O_exaq):
    rep, d = exact_join_check(O_exaq)
    assert rep.ok and d.exact and "join" in d.terms
    cl = classify(O_exaq)
    for x in range(O_exaq.base.k):
        assert d.ks.assign[x].tolist() == cl.c_interior[x]
        assert d.ke.assign[x].tolist() == cl.n_interior[x]


def test_subsets_exact_join_is_left(O_subsets):
    rep, d = exact_join_check(O_subsets)
    assert rep.ok and d.exact
    assert d.Fe.fiber_sizes == (1,) * O_subsets.base.k
    assert left_join_decomposition(O_subsets).same_as(d)


def test_product_has_no_exact_join(subsets3, equivrel3):
    P = product(subsets3, equivrel3)
    rep, d = exact_join_check(P)
    assert d is None and not rep["join-of-interiors"]
    w = rep.witnesses["join-of-interiors"][0]
    assert w["conormal-interior"] is None or w["normal-interior"] is None


def test_meet_check_is_dual_of_join(O_exaq):
    rep, d = exact_meet_check(dual_form(O_exaq.form))
    assert rep.ok and "meet" in d.terms


def test_canonical_join_sets(subsets3, equivrel3):
    d, rep = canonical_join_decomposition(subsets3, equivrel3)
    assert rep.ok and d.semiexact and not d.exact and "join" in d.terms


def test_canonical_join_with_bottoms_is_exact(subsets3, O_subsets):
    d, rep = canonical_join_decomposition(subsets3, bottom_subform(O_subsets))
    assert rep.ok and d.exact


def test_find_exact_routes(O_exaq, O_subsets, palettes3):
    rep, d = find_exact_decomposition(O_exaq)
    assert rep.ok and rep.data["routes"] == ["join"] and d.kind == ["join"]
    rep, d = find_exact_decomposition(O_subsets)
    assert rep.data["routes"] == ["left", "join"]
    rep, d = find_exact_decomposition(palettes3)
    assert d is None and rep.data["found"] is False


def test_equivrel3_is_binormal_and_exact(O_equivrel):
    rep, d = find_exact_decomposition(O_equivrel)
    assert rep.ok and d is not None and set(rep.data["routes"]) == {"left", "right", "join", "meet"}


def test_right_join_of_equivrel_not_semiexact(O_equivrel):
    d = right_join_decomposition(O_equivrel)
    assert d.valid and not d.semiexact and not d.exact


@pytest.mark.slow
def test_equivrel4_has_no_exact_decomposition():
    F = zoo.equivrel_form(zoo.finset_skeleton(4))
    O = as_orean(F)
    assert not classify(O).conormal[4] == frozenset(range(F.size(4)))
    rep, d = find_exact_decomposition(O)
    assert d is None and rep.data["found"] is False
    assert not right_join_decomposition(O).semiexact


def test_exact_join_identities_exaq(O_exaq):
    rep = exact_join_identities(O_exaq)
    assert rep.ok and set(rep.results) >= {"(i)", "(ii)", "(iii)", "(iv)", "(v)"}


@pytest.mark.parametrize("i", [0, 1])
def test_exact_join_identities_two_chain(i):
    assert exact_join_identities(zoo.two_chain_example()[i][3]).ok


def test_identities_need_preconditions(O_subsets):
    rep = exact_join_identities(O_subsets)
    assert rep.reason == "precondition"


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_mutation_breaks_something(exaq3, data):
    c = exaq3.base
    f = data.draw(st.sampled_from([f for f in range(c.n) if exaq3.rel[f].size > 1]))
    b = data.draw(st.integers(0, exaq3.rel[f].shape[0] - 1))
    a = data.draw(st.integers(0, exaq3.rel[f].shape[1] - 1))
    rel = [r.copy() for r in exaq3.rel]
    rel[f][b, a] = not rel[f][b, a]
    M = Form(c, exaq3.clusters, rel, "mutant")
    assert not exact_join_identities(M).ok


def test_semiexact_consequences_hold(O_exaq):
    _, d = exact_join_check(O_exaq)
    assert semiexact_consequences(d).ok


def test_decomposition_by_constant_top_is_not_valid(O_exaq, exaq3):
    d = check_decomposition(O_exaq, constant_top(O_exaq), constant_top(O_exaq))
    assert not d.valid
