"""The acceptance battery: eleven end-to-end checks over the example zoo.

Each ``criterion_N`` returns a CheckReport whose ``ok`` is the verdict.
Timings are kept out of the reports so their JSON stays byte-stable.
"""

from __future__ import annotations

import time
from typing import Callable

from .bicat import Bicategory, axiom_verdicts, check_axiom, left_exact_bicat_check, optimality_check, pointed_reformulations, synthesize_ejd_form
from .decomp import exact_join_check, exact_join_identities, exact_meet_check
from .factor import (
    check_orean_factorization,
    check_synthesis_conditions,
    construct_join_noetherian,
    factorization_from_hulls,
    wyler_laws,
)
from .formcore import dual_form, find_isomorphism, validate_form
from .orean import (
    as_orean,
    check_noetherian,
    check_orean,
    classify,
    constant_bottom,
    constant_top,
    enumerate_closure_operators,
    is_strongly_orean,
    noetherian_verdicts,
    restricted_modular_violations,
    special_predicates,
)
from .formcore import Operator
from .report import CheckReport
from .zoo import (
    epis,
    equivrel_form,
    exaq_form,
    finset_skeleton,
    groups_category,
    monos,
    palettes_form,
    pointed_finset_skeleton,
    quotients_form,
    subgroup_form,
    subquotients_form,
    subsets_form,
    two_chain_example,
)

TITLES = {
    1: "subsets/equivalence-relations axiom pattern",
    2: "pairs form: noetherian, exact join, identity battery",
    3: "synthesis from (subsets, equivalence relations)",
    4: "dual bicategory axioms and join synthesis over finite sets",
    5: "two non-isomorphic structures on the 2-chain",
    6: "closure operator census",
    7: "Wyler join laws on every factorization",
    8: "restricted modular law",
    9: "duality involution of verdicts",
    10: "pointed sets and small groups",
    11: "optimality embedding over finite sets",
}


def _witnessed(rep: CheckReport, law: str) -> bool:
    return not rep.results.get(law, True) and bool(rep.witnesses.get(law))


def criterion_1(n: int = 3) -> CheckReport:
    c = finset_skeleton(n)
    rep = CheckReport("subsets/equivrel pattern")
    S, E = subsets_form(c), equivrel_form(c)
    for name, F in (("subsets", S), ("equivrel", E)):
        rep.check(f"{name}:F1-F3", validate_form(F).ok)
        orep, _ = check_orean(F)
        rep.check(f"{name}:O1-O3", orep.ok, orep.failed)
    srep = check_noetherian(as_orean(S))
    sv = noetherian_verdicts(srep)
    rep.data["subsets"] = sv
    rep.check("subsets:N1-meet-passes", sv["N1-meet"])
    rep.check("subsets:N3-passes", sv["N3"])
    rep.check("subsets:N1-join-fails-with-witness", not sv["N1-join"] and _witnessed(srep, "N1-join"))
    rep.check("subsets:N2-fails-with-witness", not sv["N2"] and _witnessed(srep, "N2"))
    erep = check_noetherian(as_orean(E))
    ev = noetherian_verdicts(erep)
    rep.data["equivrel"] = ev
    rep.check("equivrel:N1-passes", ev["N1-join"] and ev["N1-meet"])
    rep.check("equivrel:N2-fails-with-witness", not ev["N2"] and _witnessed(erep, "N2"))
    rep.data["witnesses"] = {
        "subsets:N1-join": srep.witnesses.get("N1-join", [])[:1],
        "subsets:N2": srep.witnesses.get("N2", [])[:1],
        "equivrel:N2": erep.witnesses.get("N2", [])[:1],
    }
    return rep


def criterion_2(n: int = 3) -> CheckReport:
    c = finset_skeleton(n)
    X = exaq_form(c)
    rep = CheckReport("pairs form")
    rep.data["fiber_sizes"] = list(X.fiber_sizes)
    rep.check("fiber-sizes", X.fiber_sizes == (1, 2, 5, 15)[: n + 1], X.fiber_sizes)
    nrep = check_noetherian(as_orean(X))
    rep.check("noetherian", nrep.ok, nrep.failed)
    jrep, d = exact_join_check(X)
    rep.check("exact-join", d is not None, jrep.failed)
    brep = exact_join_identities(X)
    for law in ("(i)", "(ii)", "(iii)", "(iv)", "(v)"):
        rep.check(f"identities{law}", brep.results.get(law, False))
    return rep


def criterion_3(n: int = 3) -> CheckReport:
    c = finset_skeleton(n)
    rep = CheckReport("synthesis pipeline")
    frep, fac = check_orean_factorization(subsets_form(c), equivrel_form(c))
    rep.check("factorization", fac is not None, frep.failed)
    if fac is None:
        return rep
    sc = check_synthesis_conditions(fac)
    rep.check("synthesis-conditions", sc.ok, sc.failed)
    G, grep = construct_join_noetherian(fac, sc)
    rep.data["G_fiber_sizes"] = list(G.fiber_sizes)
    iso = find_isomorphism(G, exaq_form(c))
    rep.check("isomorphic-to-pairs-form", iso.found, iso.certificate)
    rep.check("closure-and-filter-agree", grep.results.get("kappa-agrees", False) and grep.results.get("kappa-form-agrees", False))
    rep.check("construction-report", grep.ok, grep.failed)
    return rep


def criterion_4(n: int = 3) -> CheckReport:
    c = finset_skeleton(n)
    b = Bicategory(c, epis(c), monos(c), f"finset{n}")
    rep = CheckReport("dual axioms")
    v = axiom_verdicts(b, dual=True)
    rep.data["dual_axioms"] = v
    for name, ok in v.items():
        rep.check(f"dual-{name}", ok)
    F, srep = synthesize_ejd_form(b)
    rep.check("ejd-synthesis-report", srep.ok, srep.failed)
    iso = find_isomorphism(F, exaq_form(c))
    rep.check("ejd-isomorphic-to-pairs-form", iso.found, iso.certificate)
    return rep


def criterion_5() -> CheckReport:
    rep = CheckReport("2-chain")
    forms = []
    for k, (c, E, M, F) in enumerate(two_chain_example(), start=1):
        forms.append(F)
        O = as_orean(F)
        nrep = check_noetherian(O)
        rep.check(f"structure{k}:noetherian", nrep.ok, nrep.failed)
        _, d = exact_join_check(O)
        rep.check(f"structure{k}:exact-join", d is not None)
        rep.check(f"structure{k}:identities", exact_join_identities(O).ok)
        b = Bicategory(c, E, M, f"two-chain-{k}")
        dv = axiom_verdicts(b, dual=True)
        rep.check(f"structure{k}:dual-axioms", all(dv.values()), dv)
        G, _ = synthesize_ejd_form(b, check=False)
        rep.check(f"structure{k}:synthesis-matches", find_isomorphism(G, F).found)
    rep.data["fiber_sizes"] = [list(F.fiber_sizes) for F in forms]
    rep.check("fiber-sizes", [F.fiber_sizes for F in forms] == [(1, 2, 3), (1, 3, 2)])
    res = find_isomorphism(forms[0], forms[1])
    rep.data["iso_status"] = res.status
    rep.data["certificate"] = res.certificate
    rep.check("refuted-not-exhausted", res.status == "refuted", res.status)
    return rep


def _nonempty_to_full(O) -> Operator:
    F = O.form
    return Operator.from_function(F, F, lambda x, i: O.bottom[x] if i == O.bottom[x] else O.top[x], "empty-fixed")


def criterion_6(n: int = 3, budget: int = 10**8) -> CheckReport:
    c = finset_skeleton(n)
    rep = CheckReport("closure census")
    for name, F, expected_closure in (("subsets", subsets_form(c), 3), ("equivrel", equivrel_form(c), 2)):
        O = as_orean(F)
        named = {"identity": Operator.identity(F), "constant-top": constant_top(O)}
        if name == "subsets":
            named["empty-fixed"] = _nonempty_to_full(O)
        co_named = {"identity": Operator.identity(F), "constant-bottom": constant_bottom(O)}
        for co, want, exp in ((False, named, expected_closure), (True, co_named, 2)):
            kind = "co-closure" if co else "closure"
            census = enumerate_closure_operators(O, co=co, budget=budget)
            if census.status != "complete":
                rep.reason = "budget-exhausted"
            rep.data[f"{name}:{kind}-count"] = len(census.operators)
            for label, op in want.items():
                rep.check(f"{name}:{kind}:has-{label}", any(op.same_as(t) for t in census.operators))
            extra = [t.assign for t in census.operators if not any(t.same_as(w) for w in want.values())]
            rep.data[f"{name}:{kind}-excess"] = extra
            rep.check(f"{name}:{kind}:count-equals-{exp}", len(census.operators) == exp, len(census.operators))
    return rep


def _factorizations():
    """Every orean factorization the zoo provides, by name."""
    out = []
    for n in (2, 3):
        c = finset_skeleton(n)
        out.append((f"(subsets,equivrel)@finset{n}", lambda c=c: check_orean_factorization(subsets_form(c), equivrel_form(c))))
    c = finset_skeleton(3)
    for name, F in (("exaq", exaq_form(c)), ("equivrel", equivrel_form(c))):
        out.append((f"hulls({name})@finset3", lambda F=F: factorization_from_hulls(F)))
    out.append(("hulls(quotients)@pointed3", lambda: factorization_from_hulls(quotients_form(pointed_finset_skeleton(3)))))
    out.append(("hulls(subgroups)@groups4", lambda: factorization_from_hulls(subgroup_form(groups_category(4)))))
    for k, (_, _, _, F) in enumerate(two_chain_example(), start=1):
        out.append((f"hulls(two-chain-{k})", lambda F=F: factorization_from_hulls(F)))
    return out


WYLER_CORE = ("bottom-neutral", "idempotent", "beta-is-bottom-join", "beta-absorbs", "alpha-equivalence", "pullback-biconditional")


def criterion_7() -> CheckReport:
    rep = CheckReport("Wyler laws")
    used = []
    for name, build in _factorizations():
        frep, fac = build()
        if fac is None:
            rep.data.setdefault("not-factorizations", []).append(name)
            continue
        used.append(name)
        w = wyler_laws(fac)
        for law in WYLER_CORE:
            rep.check(f"{name}:{law}", w.results.get(law, False), w.witnesses.get(law))
        rep.check(f"{name}:all-laws", w.ok, w.failed)
    rep.data["factorizations"] = used
    rep.check("some-factorizations", len(used) >= 5, used)
    return rep


def zoo_forms():
    c = finset_skeleton(3)
    forms = [subsets_form(c), equivrel_form(c), exaq_form(c), palettes_form(c)]
    forms.append(quotients_form(pointed_finset_skeleton(3)))
    forms.append(subgroup_form(groups_category(4)))
    forms.extend(F for _, _, _, F in two_chain_example())
    c2 = finset_skeleton(2)
    forms.append(subquotients_form(c2, epis(c2), monos(c2)))
    return forms


def criterion_8() -> CheckReport:
    rep = CheckReport("restricted modular law")
    checked = []
    for F in zoo_forms():
        _, O = check_orean(F)
        if O is None:
            continue
        v = noetherian_verdicts(check_noetherian(O, modular=False))
        if not (v["N1-join"] and v["N1-meet"]):
            continue
        checked.append(F.label)
        rep.record(f"{F.label}", restricted_modular_violations(O))
    rep.data["forms"] = checked
    return rep


def verdict_vector(F) -> dict[str, bool]:
    """Checker verdicts of ``F`` under names that duality permutes."""
    rep, O = check_orean(F)
    out = {"orean": O is not None}
    if O is None:
        return out
    out["strongly-orean"] = is_strongly_orean(O)
    out.update(noetherian_verdicts(check_noetherian(O, modular=False)))
    sp = special_predicates(O)
    for k in ("conormal_form", "normal_form", "antinormal", "anticonormal", "binormal", "antibinormal", "isoform"):
        out[k] = sp[k]
    out["exact-join"] = exact_join_check(O)[1] is not None
    out["exact-meet"] = exact_meet_check(O)[1] is not None
    return out


DUAL_NAMES = {
    "N1-join": "N1-meet",
    "conormal_form": "normal_form",
    "antinormal": "anticonormal",
    "exact-join": "exact-meet",
}
DUAL_NAMES.update({v: k for k, v in DUAL_NAMES.items()})


def dual_permuted(v: dict[str, bool]) -> dict[str, bool]:
    return {DUAL_NAMES.get(k, k): val for k, val in v.items()}


def criterion_9() -> CheckReport:
    rep = CheckReport("duality involution")
    for F in zoo_forms():
        v, dv = verdict_vector(F), verdict_vector(dual_form(F))
        want = dual_permuted(v)
        rep.check(f"form:{F.label}", dv == want, {k: (want.get(k), dv.get(k)) for k in set(dv) | set(want) if want.get(k) != dv.get(k)})
    bicats = [Bicategory(finset_skeleton(2), epis(finset_skeleton(2)), monos(finset_skeleton(2)), "finset2")]
    pc = pointed_finset_skeleton(3)
    bicats.append(Bicategory(pc, epis(pc), monos(pc), "pointed3"))
    bicats.extend(Bicategory(c, E, M, f"two-chain-{k}") for k, (c, E, M, _) in enumerate(two_chain_example(), start=1))
    for b in bicats:
        direct = check_axiom(b, "all")
        # evaluated on a freshly built opposite, so no cached structure is shared
        op = Bicategory(b.cat.opposite, b.M, b.E, f"op({b.label})")
        mirrored = check_axiom(op, "all", dual=True)
        same = {w: direct.results[w] for w in direct.data["axioms"]} == {w: mirrored.results[w] for w in mirrored.data["axioms"]}
        rep.check(f"bicategory:{b.label}", same)
    return rep


def criterion_10() -> CheckReport:
    rep = CheckReport("pointed sets and small groups")
    pc = pointed_finset_skeleton(3)
    Q = quotients_form(pc)
    O = as_orean(Q)
    nrep = check_noetherian(O)
    rep.check("quotients:noetherian", nrep.ok, nrep.failed)
    # the semi-abelian category is the opposite of pointed sets; its subobject form is dual(Q)
    _, dm = exact_meet_check(dual_form(Q))
    rep.check("quotients:exact-meet-on-opposite", dm is not None)
    _, dj = exact_join_check(O)
    rep.check("quotients:exact-join", dj is not None)
    rep.data["quotients:exact-meet-over-pointed-sets"] = exact_meet_check(O)[1] is not None
    b = Bicategory(pc, epis(pc), monos(pc), "pointed3")
    le = left_exact_bicat_check(b.dual)
    rep.check("opposite-pointed:left-exact-bicategory", le.ok and le.data.get("left_exact", False), le.failed)
    rep.data["opposite-pointed:pointed-reformulations"] = dict(pointed_reformulations(b.dual).results)
    gc = groups_category(4)
    S = subgroup_form(gc)
    OS = as_orean(S)
    rep.check("subgroups:conormal", special_predicates(OS)["conormal_form"])
    grep = check_noetherian(OS)
    rep.check("subgroups:noetherian", grep.ok, grep.failed)
    cl = classify(OS)
    rep.check("subgroups:normal-exteriors", all(v is not None for row in cl.n_exterior for v in row))
    gb = Bicategory(gc, epis(gc), monos(gc), "groups4")
    pr = pointed_reformulations(gb)
    for law in ("B1*", "B2*", "B5*"):
        rep.check(f"groups:{law}", pr.results.get(law, False))
    rep.data["truncation"] = "groups of order <= 4 only; products such as Z4xZ4 are absent, so only implications whose hypotheses hold inside the truncation are checked"
    return rep


def criterion_11(n: int = 2) -> CheckReport:
    c = finset_skeleton(n)
    b = Bicategory(c, epis(c), monos(c), f"finset{n}")
    rep = CheckReport("optimality")
    # the join side lives on the opposite bicategory, whose subquotients are dualized back over c
    ambient = dual_form(subquotients_form(c.opposite, monos(c), epis(c), "subquotients(op)"))
    r = optimality_check(b, ambient)
    rep.check("embeds-into-opposite-subquotients", r.ok, r.data.get("status"))
    direct = optimality_check(b, subquotients_form(c, epis(c), monos(c)))
    rep.data["direct-subquotients-status"] = direct.data.get("status")
    _, O = check_orean(ambient)
    rep.check("ambient-noetherian", O is not None and check_noetherian(O, modular=False).ok)
    return rep


CRITERIA: dict[int, Callable[[], CheckReport]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
}


def run_battery(which=None, timings: dict | None = None) -> list[tuple[int, CheckReport]]:
    out = []
    for k in which or sorted(CRITERIA):
        t0 = time.perf_counter()
        rep = CRITERIA[k]()
        rep.subject = f"criterion {k}: {TITLES[k]}"
        if timings is not None:
            timings[k] = time.perf_counter() - t0
        out.append((k, rep))
    return out


def battery_report(results) -> CheckReport:
    rep = CheckReport("acceptance battery")
    for k, r in results:
        rep.check(f"criterion-{k:02d}", r.ok, r.failed or r.reason)
        rep.data[f"criterion-{k:02d}"] = r.to_dict()
    return rep
