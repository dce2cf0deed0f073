import pytest

from clusterforms import zoo
from clusterforms.bicat import (
    AXIOMS,
    Bicategory,
    axiom_verdicts,
    check_axiom,
    is_regular_epi,
    left_exact_bicat_check,
    optimality_check,
    pointed_reformulations,
    synthesize_ejd_form,
    synthesize_emd_form,
    trivial_objects,
)
from clusterforms.formcore import FormError, dual_form, find_isomorphism
from clusterforms.orean import as_orean, check_noetherian, noetherian_verdicts


def sets_bicat(c, label="sets"):
    # surjections / injections straight from the underlying functions
    E = [f for f in range(c.n) if set(c.maps[f]) == set(range(c.carriers[c.cod[f]]))]
    M = [f for f in range(c.n) if len(set(c.maps[f])) == len(c.maps[f])]
    return Bicategory(c, E, M, label)


@pytest.fixture(scope="module")
def finset_b(finset3):
    return sets_bicat(finset3, "finset")


@pytest.fixture(scope="module")
def pointed_b(pointed3):
    return sets_bicat(pointed3, "pointed")


def test_classes_match_epis_and_monos(finset_b, finset3):
    assert finset_b.E == set(zoo.epis(finset3)) and finset_b.M == set(zoo.monos(finset3))


def test_dual_is_involutive(finset_b):
    assert finset_b.dual.dual is finset_b
    assert finset_b.dual.E == finset_b.M


def test_finset_dual_side_passes(finset_b):
    assert all(axiom_verdicts(finset_b, dual=True).values())


def test_finset_direct_side_pattern(finset_b):
    v = axiom_verdicts(finset_b)
    failing = {k for k, ok in v.items() if not ok}
    assert failing == {"B1", "B1'", "B2", "B2'", "B4"}


def test_b0_fails_for_bad_classes(finset3):
    b = Bicategory(finset3, list(finset3.identity), list(range(finset3.n)))
    rep = check_axiom(b, "B0")
    assert not rep.ok


def test_unknown_axiom(finset_b):
    with pytest.raises((KeyError, ValueError)):
        check_axiom(finset_b, "B9")


def test_trivial_objects_finset(finset_b, finset3):
    left, right, rep = trivial_objects(finset_b)
    assert rep.ok
    assert [finset3.objects[x] for x in sorted(left)] == ["S0"]
    # every morphism into S0 or S1 from a nonempty set is surjective
    assert [finset3.objects[x] for x in sorted(right)] == ["S0", "S1"]


def test_trivial_objects_pointed(pointed_b):
    left, right, rep = trivial_objects(pointed_b)
    assert rep.ok and left == right == {0}
    assert rep.data["initial"] == rep.data["terminal"] == ["P1"]


def test_two_chain_left_trivial_is_computed():
    for c, E, M, _ in zoo.two_chain_example():
        left, _, rep = trivial_objects(Bicategory(c, E, M))
        assert rep.ok and left == {0}


def test_ejd_synthesis_finset(finset_b, exaq3):
    G, rep = synthesize_ejd_form(finset_b)
    assert rep.ok and find_isomorphism(G, exaq3).found


def test_emd_refused_when_axioms_fail(finset_b):
    with pytest.raises(FormError, match="axiom-battery-failed"):
        synthesize_emd_form(finset_b)


@pytest.mark.parametrize("i", [0, 1])
def test_two_chain_structures(i):
    c, E, M, F = zoo.two_chain_example()[i]
    b = Bicategory(c, E, M)
    assert all(axiom_verdicts(b, dual=True).values())
    G, rep = synthesize_ejd_form(b)
    assert rep.ok and find_isomorphism(G, F).found


def test_two_chain_direct_verdicts():
    (c1, E1, M1, _), (c2, E2, M2, _) = zoo.two_chain_example()
    v1, v2 = axiom_verdicts(Bicategory(c1, E1, M1)), axiom_verdicts(Bicategory(c2, E2, M2))
    assert {k for k, ok in v1.items() if not ok} == {"B4"}
    assert {k for k, ok in v2.items() if not ok} == {"B2", "B2'", "B4"}


def test_pointed_sets(pointed_b, pointed3):
    v = axiom_verdicts(pointed_b)
    assert not v["B1"] and not v["B2"] and not v["B5"]
    assert all(axiom_verdicts(pointed_b, dual=True).values())
    G, rep = synthesize_ejd_form(pointed_b)
    assert rep.ok and find_isomorphism(G, zoo.quotients_form(pointed3)).found


def test_pointed_opposite_is_left_exact(pointed_b):
    rep = left_exact_bicat_check(pointed_b.dual)
    assert rep.ok and rep.data["left_exact"]
    assert all(pointed_reformulations(pointed_b.dual).results.values())


def test_finset_not_left_exact(finset_b):
    rep = left_exact_bicat_check(finset_b)
    assert rep.ok and rep.data["left_exact"] is False
    assert not axiom_verdicts(finset_b)["B2"] and axiom_verdicts(finset_b, dual=True)["B4"]


def test_groups_pointed_axioms(groups4):
    b = Bicategory(groups4, zoo.epis(groups4), zoo.monos(groups4), "groups")
    assert all(axiom_verdicts(b).values())
    assert all(pointed_reformulations(b).results.values())
    rep = left_exact_bicat_check(b)
    assert rep.ok and rep.data["left_exact"]


def test_not_pointed(finset_b):
    assert pointed_reformulations(finset_b).reason == "not-pointed"


def test_regular_epis_are_surjections(finset3):
    for f in range(finset3.n):
        assert is_regular_epi(finset3, f) == finset3.is_epi(f)


def test_emd_form_is_noetherian(groups4):
    b = Bicategory(groups4, zoo.epis(groups4), zoo.monos(groups4), "groups")
    G, rep = synthesize_emd_form(b)
    assert rep.ok
    assert all(noetherian_verdicts(check_noetherian(as_orean(G))).values())


def test_optimality_into_dual_subquotients(finset2):
    b = sets_bicat(finset2)
    ambient = dual_form(zoo.subquotients_form(finset2.opposite, zoo.monos(finset2), zoo.epis(finset2)))
    assert optimality_check(b, ambient).ok


def test_json_round_trip(finset_b):
    d = Bicategory.from_dict(finset_b.to_dict())
    assert d.E == finset_b.E and d.M == finset_b.M and d.cat.names == finset_b.cat.names


def test_axiom_names():
    assert AXIOMS[0] == "B0" and len(AXIOMS) == len(set(AXIOMS))
