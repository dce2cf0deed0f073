import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from clusterforms import zoo
from clusterforms.fincat import FinCategory
from clusterforms.formcore import (
    Form,
    FormError,
    Operator,
    dual_form,
    find_full_embedding,
    find_isomorphism,
    pair_index,
    product,
    relabel,
    subform,
    validate_form,
    validate_operator,
)
from clusterforms.orean import as_orean, classify

from conftest import obj


def poset_form(leq):
    c = FinCategory(["*"], [0], [0], [0], {(0, 0): 0}, ["id"])
    leq = np.asarray(leq, dtype=bool)
    return Form(c, [[str(i) for i in range(len(leq))]], [leq.T.copy()], "poset")


def mutated(F, f, b, a):
    rel = [r.copy() for r in F.rel]
    rel[f][b, a] = not rel[f][b, a]
    return Form(F.base, F.clusters, rel, "mutant")


def test_poset_as_form():
    chain = np.array([[1, 1, 1], [0, 1, 1], [0, 0, 1]], dtype=bool)
    assert validate_form(poset_form(chain)).ok


def test_non_antisymmetric_poset_fails():
    rep = validate_form(poset_form(np.ones((2, 2), dtype=bool)))
    assert not rep["F3-antisymmetric"]


@pytest.mark.parametrize("name", ["subsets", "equivrel", "exaq", "palettes"])
def test_zoo_forms_valid(finset3, name):
    F = zoo.FORMS[name][1](finset3)
    assert validate_form(F).ok


def test_composite_deletion_breaks_f2(equivrel3):
    F, c = equivrel3, equivrel3.base
    # find a composite entry that is forced by an intermediate cluster, then delete it
    for g, f in c.composable_pairs():
        gf = c.table[g, f]
        via = (F.rel[g].astype(int) @ F.rel[f].astype(int)) > 0
        hits = np.argwhere(via & F.rel[gf])
        if len(hits) and not c.is_identity(g) and not c.is_identity(f):
            C, A = hits[0]
            rep = validate_form(mutated(F, gf, C, A))
            assert not rep["F2-composition"]
            w = rep.witnesses["F2-composition"][0]
            assert w["C"] == C and w["A"] == A
            return
    pytest.fail("no composite found")


def test_dual_of_poset_form_reverses_order():
    chain = np.array([[1, 1], [0, 1]], dtype=bool)
    F = poset_form(chain)
    D = dual_form(F)
    assert np.array_equal(D.ge(0), F.ge(0).T)


def test_dual_is_involutive(subsets3):
    assert dual_form(dual_form(subsets3)) is subsets3
    fresh = Form(subsets3.base, subsets3.clusters, subsets3.rel, "copy")
    twice = dual_form(Form(dual_form(fresh).base, fresh.clusters, [r.T for r in fresh.rel]))
    assert twice.same_tables(fresh)


def test_dual_kernels_are_images(O_equivrel):
    D = as_orean(dual_form(O_equivrel.form))
    for f in range(O_equivrel.base.n):
        assert O_equivrel.kernel(f) == D.image(f)
        assert O_equivrel.image(f) == D.kernel(f)


def test_full_selection_is_identity(subsets3):
    G = subform(subsets3, [range(subsets3.size(x)) for x in range(subsets3.base.k)])
    assert G.same_tables(subsets3)


def test_conormal_selection_of_subsets(O_subsets, subsets3):
    cl = classify(O_subsets)
    G = subform(subsets3, cl.conormal)
    assert G.same_tables(subsets3)


def test_bottom_selection_is_isoform(O_exaq, exaq3):
    G = subform(exaq3, [[b] for b in O_exaq.bottom])
    assert G.fiber_sizes == (1,) * exaq3.base.k and validate_form(G).ok


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_any_selection_stays_valid(equivrel3, data):
    # removing clusters only removes premises of the composition law
    sel = [data.draw(st.sets(st.integers(0, equivrel3.size(x) - 1), min_size=1)) for x in range(equivrel3.base.k)]
    G = subform(equivrel3, sel)
    assert validate_form(G).ok and G.fiber_sizes == tuple(len(s) for s in sel)


def test_product_sizes(finset3, subsets3, equivrel3):
    P = product(subsets3, equivrel3)
    for x in range(finset3.k):
        assert P.size(x) == subsets3.size(x) * equivrel3.size(x)
    assert P.size(obj(finset3, "S2")) == 8
    assert validate_form(P).ok


def test_product_relation_is_conjunction(finset2):
    S, E = zoo.subsets_form(finset2), zoo.equivrel_form(finset2)
    P = product(S, E)
    c = finset2
    for f in range(c.n):
        x, y = c.dom[f], c.cod[f]
        for (b1, b2), (a1, a2) in itertools.product(
            itertools.product(range(S.size(y)), range(E.size(y))), itertools.product(range(S.size(x)), range(E.size(x)))
        ):
            want = S.rel[f][b1, a1] and E.rel[f][b2, a2]
            assert P.rel[f][pair_index(E, y, b1, b2), pair_index(E, x, a1, a2)] == want


def test_product_with_isoform_projects_isomorphically(subsets3, O_subsets):
    iso = subform(subsets3, [[t] for t in O_subsets.top])
    P = product(subsets3, iso)
    res = find_isomorphism(P, subsets3)
    assert res.found
    proj = Operator.from_function(P, subsets3, lambda x, k: k)
    assert {"valid", "full", "injective"} <= validate_operator(proj)


def test_product_base_mismatch(subsets3, finset2):
    with pytest.raises(FormError):
        product(subsets3, zoo.subsets_form(finset2))


def test_identity_operator_flags(exaq3):
    assert validate_operator(Operator.identity(exaq3)) == {"valid", "full", "injective", "idempotent"}


def test_palette_operators(finset3, palettes3, subsets3):
    ops = zoo.palette_operators(palettes3, subsets3)
    gamma = validate_operator(ops["union"])
    assert "valid" in gamma and "injective" not in gamma
    assert {"valid", "idempotent"} <= validate_operator(ops["merge"])


def test_operator_rejects_foreign_base(subsets3, finset2):
    with pytest.raises(FormError):
        Operator.identity(subsets3).then(Operator.identity(zoo.subsets_form(finset2)))
    with pytest.raises(FormError):
        Operator(subsets3, zoo.subsets_form(finset2), [])


def test_self_isomorphism(exaq3):
    res = find_isomorphism(exaq3, exaq3)
    assert res.found and validate_operator(res.as_operator(exaq3, exaq3)) >= {"full", "injective"}


def test_two_chain_forms_not_isomorphic():
    (_, _, _, F1), (_, _, _, F2) = zoo.two_chain_example()
    assert F1.fiber_sizes == (1, 2, 3) and F2.fiber_sizes == (1, 3, 2)
    for a, b in ((F1, F2), (F2, F1)):
        res = find_isomorphism(a, b)
        assert res.status == "refuted" and "fiber sizes" in res.certificate


def test_relabelled_form_is_isomorphic(exaq3):
    rng = np.random.default_rng(7)
    perms = [rng.permutation(exaq3.size(x)) for x in range(exaq3.base.k)]
    G = relabel(exaq3, perms)
    fwd, back = find_isomorphism(exaq3, G), find_isomorphism(G, exaq3)
    assert fwd.found and back.found


def test_budget_exhaustion_is_distinct(exaq3):
    res = find_isomorphism(exaq3, relabel(exaq3, [list(reversed(range(exaq3.size(x)))) for x in range(exaq3.base.k)]), budget=1)
    assert res.status == "budget-exhausted" and not res.found


def test_full_embedding_of_subform(subsets3, O_subsets):
    small = subform(subsets3, [sorted({O_subsets.top[x], O_subsets.bottom[x]}) for x in range(subsets3.base.k)])
    assert find_full_embedding(small, subsets3).found
    assert not find_full_embedding(subsets3, small).found


def test_form_json_round_trip(exaq3):
    doc = json.loads(exaq3.to_json())
    G = Form.from_dict(doc)
    assert G.clusters == exaq3.clusters
    assert all(np.array_equal(a, b) for a, b in zip(G.rel, exaq3.rel))
    assert G.to_json() == exaq3.to_json()


def test_form_schema_checked(exaq3):
    doc = exaq3.to_dict()
    doc["schema"] = "form/2"
    with pytest.raises(ValueError):
        Form.from_dict(doc)
