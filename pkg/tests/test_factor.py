import itertools

import pytest

from clusterforms import zoo
from clusterforms.factor import (
    check_orean_factorization,
    check_synthesis_conditions,
    construct_join_noetherian,
    exactness_flags,
    factorization_from_hulls,
    kappa_operator,
    pair_exactness,
    quotient_reduction_report,
    synthesis_selection,
    wyler_laws,
)
from clusterforms.formcore import FormError, find_isomorphism, product
from clusterforms.orean import as_orean, bottom_subform, top_subform

from conftest import obj


@pytest.fixture(scope="module")
def fac(subsets3, equivrel3):
    rep, fac = check_orean_factorization(subsets3, equivrel3)
    assert rep.ok
    return fac


def test_sets_factorization_classes(fac, finset3):
    c = finset3
    assert fac.M == {f for f in range(c.n) if c.is_mono(f)}
    assert fac.E == {f for f in range(c.n) if c.is_epi(f)}


def test_same_form_twice_fails(subsets3):
    rep, fac = check_orean_factorization(subsets3, subsets3)
    assert fac is None and not rep["Fe-normal"]


def test_isoform_quotients_break_factorization(subsets3, O_equivrel):
    # with only trivial quotients every morphism would have to be an embedding
    rep, fac = check_orean_factorization(subsets3, bottom_subform(O_equivrel))
    assert fac is None and not rep["every-morphism-factorizes"]
    assert rep.witnesses["every-morphism-factorizes"][0]["f"]


def test_wyler_join_example(fac, subsets3, equivrel3):
    s3 = obj(subsets3.base, "S3")
    a = subsets3.payload[s3].index(frozenset({0}))
    r = equivrel3.payload[s3].index((0, 0, 1))
    assert subsets3.payload[s3][fac.join(s3, a, r)] == frozenset({0, 1})


def test_wyler_join_is_saturation(fac, subsets3, equivrel3):
    # A∗R is the union of the R-classes meeting A
    c = subsets3.base
    for x in range(c.k):
        for (a, A), (r, R) in itertools.product(enumerate(subsets3.payload[x]), enumerate(equivrel3.payload[x])):
            hit = {R[i] for i in A}
            want = frozenset(i for i in range(c.carriers[x]) if R[i] in hit)
            assert subsets3.payload[x][fac.join(x, a, r)] == want


def test_wyler_representative_independence(fac):
    c = fac.base
    for x in range(c.k):
        for r in range(fac.Fe.form.size(x)):
            quots = [p for p in c.out_of[x] if c.is_epi(p) and fac.Fe.kernel(p) == r]
            for a in range(fac.Fs.form.size(x)):
                assert len({fac.join_via(p, a) for p in quots}) == 1


def test_wyler_laws(fac):
    assert wyler_laws(fac).ok


def test_pair_exactness_sets(subsets3, equivrel3, finset3):
    d = pair_exactness(subsets3, equivrel3)
    assert d["semiexact"] and not d["left_exact"]
    s2 = obj(finset3, "S2")
    full = equivrel3.payload[s2].index((0, 0))
    back = d["alpha"](s2, d["beta"](s2, full))
    assert equivrel3.payload[s2][back] == (0, 1)


def test_conormal_antinormal_with_bottoms_is_semiexact(subsets3, O_subsets):
    assert "semiexact" in exactness_flags(subsets3, bottom_subform(O_subsets))


def test_isoform_pair_is_biexact(O_exaq):
    iso = top_subform(O_exaq)
    assert "biexact" in exactness_flags(iso, iso)


def test_pair_exactness_needs_polarity(subsets3):
    with pytest.raises(FormError):
        pair_exactness(subsets3, subsets3)


def test_synthesis_conditions_sets(fac):
    rep = check_synthesis_conditions(fac)
    assert rep.ok and rep.data["first_form"] and rep.data["simplified_form"]


def test_synthesis_output(fac, exaq3, finset3):
    G, rep = construct_join_noetherian(fac)
    assert rep.ok
    assert G.size(obj(finset3, "S0")) == 1
    assert G.size(obj(finset3, "S2")) == 5
    assert G.size(obj(finset3, "S3")) == 15
    s2 = obj(finset3, "S2")
    pairs = {(A, R) for A, R in G.payload[s2]}
    assert pairs == {
        (frozenset(), (0, 1)),
        (frozenset({0}), (0, 1)),
        (frozenset({1}), (0, 1)),
        (frozenset(), (0, 0)),
        (frozenset({0, 1}), (0, 0)),
    }
    assert find_isomorphism(G, exaq3).found


def test_kappa_and_filter_agree(fac):
    P = product(fac.Fs.form, fac.Fe.form)
    k = kappa_operator(fac, P)
    assert k.image_selection() == [sorted(s) for s in synthesis_selection(fac)]


def test_fiber_oracle_sum_over_partitions(fac, finset3):
    # pairs (A, R) with A∗R = A and α(A) ≤ R: A empty or one class of R
    for x, n in enumerate(finset3.carriers):
        want = sum(len(set(r)) + 1 for r in zoo.set_partitions(n))
        assert len(synthesis_selection(fac)[x]) == want


def test_unverified_conditions_rejected(fac):
    from clusterforms.report import CheckReport

    with pytest.raises(FormError):
        construct_join_noetherian(fac, CheckReport("empty"))


def test_quotient_reduction(fac):
    assert quotient_reduction_report(fac).ok


def test_groups_hull_factorization(groups4):
    S = zoo.subgroup_form(groups4)
    rep, fac = factorization_from_hulls(S)
    assert rep.ok
    # all groups of order <= 4 are abelian, so saturation cannot fail here
    for t in groups4.tables:
        assert all(t[a][b] == t[b][a] for a in range(len(t)) for b in range(len(t)))
    assert check_synthesis_conditions(fac).ok
