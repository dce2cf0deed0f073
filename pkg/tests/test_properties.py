"""Property tests: algebraic laws on random clusters, morphisms and relabellings."""

import numpy as np
from hypothesis import given, settings, strategies as st

from clusterforms import zoo
from clusterforms.formcore import dual_form, find_isomorphism, relabel, validate_form
from clusterforms.orean import as_orean, classify

FORMS = {}


def form(name):
    if name not in FORMS:
        FORMS[name] = zoo.zoo_form(name)
    return FORMS[name]


names = st.sampled_from(["subsets", "equivrel", "exaq", "palettes", "quotients", "two-chain-1", "two-chain-2"])


@settings(max_examples=80, deadline=None)
@given(names, st.data())
def test_galois_and_monotonicity(name, data):
    O = as_orean(form(name))
    c = O.base
    f = data.draw(st.integers(0, c.n - 1))
    x, y = c.dom[f], c.cod[f]
    s1, s2 = (data.draw(st.integers(0, O.form.size(x) - 1)) for _ in range(2))
    t = data.draw(st.integers(0, O.form.size(y) - 1))
    assert O.le(y, O.direct(f, s1), t) == O.le(x, s1, O.inverse(t, f))
    if O.le(x, s1, s2):
        assert O.le(y, O.direct(f, s1), O.direct(f, s2))
    # f·(S ∨ S') = f·S ∨ f·S'
    j = int(O.join[x][s1, s2])
    assert O.direct(f, j) == int(O.join[y][O.direct(f, s1), O.direct(f, s2)])


@settings(max_examples=60, deadline=None)
@given(names, st.data())
def test_functoriality_of_images(name, data):
    O = as_orean(form(name))
    c = O.base
    g, f = data.draw(st.sampled_from(list(c.composable_pairs())))
    s = data.draw(st.integers(0, O.form.size(c.dom[f]) - 1))
    assert O.direct(c.compose(g, f), s) == O.direct(g, O.direct(f, s))
    t = data.draw(st.integers(0, O.form.size(c.cod[g]) - 1))
    assert O.inverse(t, c.compose(g, f)) == O.inverse(O.inverse(t, g), f)


@settings(max_examples=30, deadline=None)
@given(names, st.integers(0, 2**32 - 1))
def test_relabelling_preserves_everything(name, seed):
    F = form(name)
    rng = np.random.default_rng(seed)
    perms = [rng.permutation(F.size(x)) for x in range(F.base.k)]
    G = relabel(F, perms)
    assert validate_form(G).ok
    assert find_isomorphism(F, G).found and find_isomorphism(G, F).found
    cf, cg = classify(as_orean(F)), classify(as_orean(G))
    assert [len(s) for s in cf.conormal] == [len(s) for s in cg.conormal]


@settings(max_examples=20, deadline=None)
@given(names)
def test_duality_swaps_images_and_kernels(name):
    F = form(name)
    O, D = as_orean(F), as_orean(dual_form(F))
    for x in range(F.base.k):
        assert O.top[x] == D.bottom[x] and O.bottom[x] == D.top[x]
    cl, cd = classify(O), classify(D)
    assert cl.conormal == cd.normal and cl.normal == cd.conormal
