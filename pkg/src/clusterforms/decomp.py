"""Decompositions of orean forms by a pair of idempotent operators (κs, κe)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .formcore import Form, FormError, Operator, dual_form, find_isomorphism, product, subform, validate_operator
from .orean import (
    OreanForm,
    as_orean,
    bottom_subform,
    check_noetherian,
    check_orean,
    classify,
    forced_conormal_operator,
    hull_conormal,
    hull_normal,
    is_strongly_orean,
    noetherian_verdicts,
    operator_normality,
    special_predicates,
)
from .report import CheckReport

TERMS = ("top", "bottom", "first", "second", "meet", "join")
DUAL_TERM = {"top": "bottom", "bottom": "top", "first": "second", "second": "first", "meet": "join", "join": "meet"}


def _orean(F) -> OreanForm:
    return F if isinstance(F, OreanForm) else as_orean(F)


@dataclass(eq=False)
class Decomposition:
    form: OreanForm
    ks: Operator
    ke: Operator
    terms: frozenset
    semiexact: bool
    exact: bool
    Fs: Form | None = None
    Fe: Form | None = None
    report: CheckReport = field(default_factory=lambda: CheckReport("decomposition"))

    @property
    def valid(self) -> bool:
        """(D1) holds and at least one term decomposes every cluster."""
        return bool(self.terms) and self.report.results.get("D1", False)

    @property
    def kind(self) -> list[str]:
        names = []
        if self.terms & {"top", "bottom"}:
            names.append("nullary")
        if "first" in self.terms:
            names.append("left")
        if "second" in self.terms:
            names.append("right")
        if "meet" in self.terms:
            names.append("meet")
        if "join" in self.terms:
            names.append("join")
        return names

    def summary(self) -> dict:
        return {
            "form": self.form.form.label,
            "terms": sorted(self.terms),
            "kind": self.kind,
            "semiexact": self.semiexact,
            "exact": self.exact,
            "Fs_sizes": None if self.Fs is None else list(self.Fs.fiber_sizes),
            "Fe_sizes": None if self.Fe is None else list(self.Fe.fiber_sizes),
        }

    def same_as(self, other: Decomposition) -> bool:
        return self.ks.same_as(other.ks) and self.ke.same_as(other.ke)


def _projection(F: Form, k: Operator, sub: Form) -> Operator:
    """The corestriction F → F_κ of an idempotent κ."""
    sel = sub._cache["selection"]
    pos = [{c: i for i, c in enumerate(s)} for s in sel]
    return Operator(F, sub, [[pos[x][int(v)] for v in a] for x, a in enumerate(k.assign)], "tau")


def _inclusion(sub: Form, F: Form) -> Operator:
    return Operator(sub, F, [list(s) for s in sub._cache["selection"]], "inclusion")


def check_decomposition(F, ks: Operator, ke: Operator) -> Decomposition:
    """Compute every decomposing term satisfied by (κs, κe) and classify exactness."""
    O = _orean(F)
    Fm = O.form
    for name, k in (("ks", ks), ("ke", ke)):
        if k.src is not Fm or k.dst is not Fm:
            raise FormError(f"{name} is not an operator on {Fm.label}")
        flags = validate_operator(k)
        if "valid" not in flags:
            raise FormError(f"{name} is not monotone")
        if "idempotent" not in flags:
            raise FormError("non-idempotent")
    c = O.base
    rep = CheckReport(f"decomposition {Fm.label}")
    Fs = subform(Fm, ks.image_selection(), f"Fs({Fm.label})")
    Fe = subform(Fm, ke.image_selection(), f"Fe({Fm.label})")
    _, Os = check_orean(Fs)
    _, Oe = check_orean(Fe)
    d1 = Os is not None and Oe is not None and special_predicates(Os)["conormal_form"] and special_predicates(Oe)["normal_form"]
    rep.check("D1", d1, {"Fs-orean": Os is not None, "Fe-orean": Oe is not None})
    terms = set()
    for t in TERMS:
        ok = True
        for x in range(c.k):
            s = np.arange(Fm.size(x))
            a, r = ks.assign[x], ke.assign[x]
            want = {
                "top": np.full_like(s, O.top[x]),
                "bottom": np.full_like(s, O.bottom[x]),
                "first": a,
                "second": r,
                "meet": O.meet[x][a, r],
                "join": O.join[x][a, r],
            }[t]
            if not (want == s).all():
                ok = False
                break
        if ok:
            terms.add(t)
    rep.data["terms"] = sorted(terms)
    semi = exact = False
    if d1:
        tau_s, tau_e = _projection(Fm, ks, Fs), _projection(Fm, ke, Fe)
        binormal = "binormal" in operator_normality(tau_s) and "binormal" in operator_normality(tau_e)
        from .factor import pair_exactness

        pair = pair_exactness(Os, Oe)
        semi = binormal and pair["semiexact"]
        rep.data.update(projections_binormal=binormal, pair_semiexact=pair["semiexact"])
        if semi:
            exact = "conormal" in operator_normality(_inclusion(Fs, Fm)) and "normal" in operator_normality(_inclusion(Fe, Fm))
    rep.data.update(semiexact=semi, exact=exact)
    if exact:
        # an exact decomposition uses the conormal and normal hulls
        cl = classify(O)
        rep.check("exact-uses-hulls", [frozenset(s) for s in Fs._cache["selection"]] == cl.conormal
                  and [frozenset(s) for s in Fe._cache["selection"]] == cl.normal)
    return Decomposition(O, ks, ke, frozenset(terms), semi, exact, Fs, Fe, rep)


def identity_decomposition(F) -> Decomposition:
    O = _orean(F)
    return check_decomposition(O, Operator.identity(O.form), Operator.identity(O.form))


# -- exact join / meet ----------------------------------------------------------


def _interior_operator(O: OreanForm, table, label: str) -> Operator:
    return Operator(O.form, O.form, [[int(v) for v in row] for row in table], label)


def exact_join_check(F) -> tuple[CheckReport, Decomposition | None]:
    """Test the three join conditions directly; on success build F = F_c ∨ F_n."""
    O = _orean(F)
    Fm, c, cl = O.form, O.base, classify(O)
    rep = CheckReport(f"exact-join {Fm.label}")
    split = []
    for x in range(c.k):
        for s in range(Fm.size(x)):
            a, n = cl.c_interior[x][s], cl.n_interior[x][s]
            if a is None or n is None or O.join[x][a, n] != s:
                split.append({"S": Fm.describe(x, s), "conormal-interior": a, "normal-interior": n})
    rep.record("join-of-interiors", split)
    if split:
        return rep, None
    inv_bad, img_bad = [], []
    for f in range(c.n):
        x, y = c.dom[f], c.cod[f]
        for s in range(Fm.size(y)):
            if O.inverse(cl.n_interior[y][s], f) != cl.n_interior[x][O.inverse(s, f)]:
                inv_bad.append({"f": c.names[f], "S": Fm.clusters[y][s]})
        if O.direct(f, cl.n_interior[x][O.top[x]]) != cl.n_interior[y][O.image(f)]:
            img_bad.append({"f": c.names[f]})
    rep.record("normal-interior-inverse-images", inv_bad)
    rep.record("normal-interior-of-images", img_bad)
    if not rep.ok:
        return rep, None
    ks = _interior_operator(O, cl.c_interior, "conormal-interior")
    ke = _interior_operator(O, cl.n_interior, "normal-interior")
    d = check_decomposition(O, ks, ke)
    rep.check("is-exact-join-decomposition", d.exact and "join" in d.terms, d.summary())
    closure = []
    for x in range(c.k):
        ns, cs = sorted(cl.normal[x]), sorted(cl.conormal[x])
        for a in ns:
            for b in ns:
                if O.join[x][a, b] not in cl.normal[x]:
                    closure.append(("normal-join", Fm.describe(x, a), Fm.describe(x, b)))
        for a in cs:
            for b in cs:
                if O.join[x][a, b] not in cl.conormal[x]:
                    closure.append(("conormal-join", Fm.describe(x, a), Fm.describe(x, b)))
    for f in range(c.n):
        for a in cl.normal[c.dom[f]]:
            if O.direct(f, a) not in cl.normal[c.cod[f]]:
                closure.append(("normal-direct-image", c.names[f], Fm.describe(c.dom[f], a)))
    rep.record("closure-consequences", closure)
    return rep, d if rep.ok else None


def exact_meet_check(F) -> tuple[CheckReport, Decomposition | None]:
    """The join check on the dual form, translated back."""
    O = _orean(F)
    drep, dd = exact_join_check(dual_form(O.form))
    rep = CheckReport(f"exact-meet {O.form.label}")
    rep.merge(drep)
    if dd is None:
        return rep, None
    ks = Operator(O.form, O.form, dd.ke.assign, "normal-exterior")
    ke = Operator(O.form, O.form, dd.ks.assign, "conormal-exterior")
    d = check_decomposition(O, ks, ke)
    rep.check("is-exact-meet-decomposition", d.exact and "meet" in d.terms, d.summary())
    return rep, d if rep.ok else None


# -- canonical decomposition of a product -------------------------------------------------


def canonical_join_decomposition(Fs, Fe) -> tuple[Decomposition, CheckReport]:
    """Fs×Fe = (Fs×Fe^⊥) ∨ (Fs^⊥×Fe), with its three biconditionals checked."""
    from .factor import pair_exactness

    Os, Oe = _orean(Fs), _orean(Fe)
    if not special_predicates(Os)["conormal_form"] or not special_predicates(Oe)["normal_form"]:
        raise FormError("canonical decomposition needs a conormal and a normal form")
    P = product(Os.form, Oe.form)
    OP = as_orean(P)
    c = Os.base

    def ks(x, k):
        ne = Oe.form.size(x)
        return (k // ne) * ne + Oe.bottom[x]

    def ke(x, k):
        ne = Oe.form.size(x)
        return Os.bottom[x] * ne + k % ne

    d = check_decomposition(OP, Operator.from_function(P, P, ks, "ks"), Operator.from_function(P, P, ke, "ke"))
    rep = CheckReport(f"canonical-join ({Os.form.label}, {Oe.form.label})")
    rep.check("join-term", "join" in d.terms, sorted(d.terms))
    rep.check("projections-binormal", bool(d.report.data.get("projections_binormal")))
    semi_pair = pair_exactness(Os, Oe)["semiexact"]
    rep.check("semiexact-iff-pair-semiexact", d.semiexact == semi_pair, {"decomposition": d.semiexact, "pair": semi_pair})
    iso_anti = special_predicates(Oe)["isoform"] and special_predicates(Os)["antinormal"]
    rep.check("exact-iff-isoform-and-antinormal", d.exact == iso_anti, {"decomposition": d.exact, "criterion": iso_anti})
    rep.data.update(d.summary())
    return d, rep


# -- exact decompositions in general ------------------------------------------------------


def _left_unary_candidate(O: OreanForm) -> Decomposition | None:
    """(1, β∘α) with α the forced conormal operator onto the normal hull."""
    if not special_predicates(O)["conormal_form"]:
        return None
    N = hull_normal(O)
    _, On = check_orean(N)
    if On is None:
        return None
    alpha = forced_conormal_operator(O, On)
    if alpha is None:
        return None
    sel = N._cache["selection"]
    ke = Operator(O.form, O.form, [np.asarray(sel[x])[a] for x, a in enumerate(alpha.assign)], "normal-part")
    if "idempotent" not in validate_operator(ke):
        return None
    try:
        return check_decomposition(O, Operator.identity(O.form), ke)
    except FormError:
        return None


def _right_unary_candidate(O: OreanForm) -> Decomposition | None:
    dd = _left_unary_candidate(O.dual)
    if dd is None:
        return None
    try:
        return check_decomposition(
            O, Operator(O.form, O.form, dd.ke.assign, "conormal-part"), Operator.identity(O.form)
        )
    except FormError:
        return None


def find_exact_decomposition(F) -> tuple[CheckReport, Decomposition | None]:
    """Try nullary, left, right, join and meet in turn; all exact hits must coincide."""
    O = _orean(F)
    rep = CheckReport(f"exact-decomposition {O.form.label}")
    found: list[tuple[str, Decomposition]] = []
    if special_predicates(O)["isoform"]:
        d = identity_decomposition(O)
        if d.exact:
            found.append(("nullary", d))
    for name, d in (("left", _left_unary_candidate(O)), ("right", _right_unary_candidate(O))):
        if d is not None and d.valid and d.exact:
            found.append((name, d))
    _, dj = exact_join_check(O)
    if dj is not None:
        found.append(("join", dj))
    _, dm = exact_meet_check(O)
    if dm is not None:
        found.append(("meet", dm))
    rep.data["routes"] = [n for n, _ in found]
    rep.check("unique", all(d.same_as(found[0][1]) for _, d in found), [n for n, _ in found])
    if not found:
        rep.data["found"] = False
        return rep, None
    rep.data["found"] = True
    first = found[0][1]
    rep.data.update(first.summary())
    _characterizations(O, rep, dict(found))
    return rep, first


def _characterizations(O: OreanForm, rep: CheckReport, found: dict) -> None:
    """Cross-checks of the structural characterizations that apply to ``O``."""
    cl = classify(O)
    c = O.base
    sp = special_predicates(O)
    if "join" in found and sp["conormal_form"]:
        nv = noetherian_verdicts(check_noetherian(O, modular=False))
        if all(nv.values()):
            below = []
            for x in range(c.k):
                ge = O.form.ge(x)
                for n in cl.normal[x]:
                    for s in range(O.form.size(x)):
                        if ge[n, s] and s not in cl.normal[x]:
                            below.append((O.form.describe(x, n), O.form.describe(x, s)))
            rep.record("below-normal-is-normal", below)
    if sp["conormal_form"]:
        exteriors = all(cl.n_exterior[x][s] is not None for x in range(c.k) for s in range(O.form.size(x)))
        meet_exact = "meet" in found
        rep.check("meet-exact-iff-normal-exteriors", meet_exact == exteriors, {"meet": meet_exact, "exteriors": exteriors})


def decomposition_report(F) -> CheckReport:
    """Summary used by the command line: exact join, exact meet and the general search."""
    O = _orean(F)
    rep = CheckReport(f"decompose {O.form.label}")
    jrep, dj = exact_join_check(O)
    mrep, dm = exact_meet_check(O)
    frep, d = find_exact_decomposition(O)
    rep.data["exact_join"] = dj is not None
    rep.data["exact_meet"] = dm is not None
    rep.data["exact"] = None if d is None else d.summary()
    rep.data["join_witnesses"] = {k: v for k, v in jrep.witnesses.items()}
    rep.data["meet_witnesses"] = {k: v for k, v in mrep.witnesses.items()}
    rep.check("exact-decomposition-found", d is not None)
    for law in ("unique", "below-normal-is-normal", "meet-exact-iff-normal-exteriors"):
        if law in frep.results:
            rep.check(law, frep[law])
    return rep


# -- the battery for noetherian forms with exact join decomposition ------------------------


def exact_join_identities(F) -> CheckReport:
    """Five families of identities for a noetherian form with exact join decomposition."""
    from .factor import factorization_from_hulls

    if not isinstance(F, OreanForm):
        orep, O = check_orean(F)
        if O is None:
            rep = CheckReport(f"exact-join-battery {F.label}")
            rep.reason = "precondition"
            rep.merge(orep, "orean:")
            return rep
        F = O
    O = F
    Fm, c, cl = O.form, O.base, classify(O)
    rep = CheckReport(f"exact-join-battery {Fm.label}")
    jrep, d = exact_join_check(O)
    if d is None or not all(noetherian_verdicts(check_noetherian(O, modular=False)).values()):
        rep.reason = "precondition"
        rep.merge(jrep)
        return rep
    frep, fac = factorization_from_hulls(Fm)
    if fac is None:
        rep.reason = "hulls-not-a-factorization"
        rep.merge(frep)
        return rep
    sc, sn = fac.Fs.form._cache["selection"], fac.Fe.form._cache["selection"]
    pc = [{a: i for i, a in enumerate(s)} for s in sc]
    pn = [{r: i for i, r in enumerate(s)} for s in sn]
    ts = [np.asarray(cl.c_interior[x]) for x in range(c.k)]
    te = [np.asarray(cl.n_interior[x]) for x in range(c.k)]

    def star(x, a, r):
        return sc[x][fac.join(x, pc[x][a], pn[x][r])]

    def alpha(x, a):
        return sn[x][fac.a(x, pc[x][a])]

    def beta(x, r):
        return sc[x][fac.b(x, pn[x][r])]

    laws: dict[str, list] = {f"({k})": [] for k in ("i", "ii", "iii", "iv", "v")}
    for x in range(c.k):
        ge, J, M = Fm.ge(x), O.join[x], O.meet[x]
        for k in range(Fm.size(x)):
            a, r = ts[x][k], te[x][k]
            if star(x, a, r) != a or not ge[r, alpha(x, a)]:
                laws["(i)"].append(Fm.describe(x, k))
        admissible = [(a, r) for a in sc[x] for r in sn[x] if star(x, a, r) == a and ge[r, alpha(x, a)]]
        for a, r in admissible:
            j = J[a, r]
            if ts[x][j] != a or te[x][j] != r:
                laws["(ii)"].append((Fm.describe(x, a), Fm.describe(x, r)))
            for f in c.into[x]:
                y = c.dom[f]
                lhs = O.inverse(j, f)
                ia = sc[y][fac.Fs.inverse(pc[x][a], f)]
                ir = sn[y][fac.Fe.inverse(pn[x][r], f)]
                if lhs != O.join[y][ia, ir]:
                    laws["(iii)"].append({"f": c.names[f], "A": Fm.clusters[x][a], "R": Fm.clusters[x][r]})
        for group, name in ((cl.conormal[x], "conormal"), (cl.normal[x], "normal")):
            for a in group:
                for b in group:
                    if J[a, b] not in group or M[a, b] not in group:
                        laws["(iv)"].append((name, Fm.describe(x, a), Fm.describe(x, b)))
        for r in cl.normal[x]:
            for k in range(Fm.size(x)):
                if M[r, k] not in cl.normal[x]:
                    laws["(iv)"].append(("meet-with-normal", Fm.describe(x, r), Fm.describe(x, k)))
        for k in range(Fm.size(x)):
            for l in range(Fm.size(x)):
                m = M[k, l]
                if ts[x][m] != M[ts[x][k], ts[x][l]] or te[x][m] != M[te[x][k], te[x][l]]:
                    laws["(v)"].append(("tau", Fm.describe(x, k), Fm.describe(x, l)))
        for a in cl.conormal[x]:
            for b in cl.conormal[x]:
                if alpha(x, M[a, b]) != M[alpha(x, a), alpha(x, b)]:
                    laws["(v)"].append(("alpha", Fm.describe(x, a), Fm.describe(x, b)))
        for r in cl.normal[x]:
            for s in cl.normal[x]:
                if beta(x, M[r, s]) != M[beta(x, r), beta(x, s)]:
                    laws["(v)"].append(("beta", Fm.describe(x, r), Fm.describe(x, s)))
    # α and β are the interiors on the hulls
    for x in range(c.k):
        for a in cl.conormal[x]:
            if alpha(x, a) != te[x][a]:
                laws["(v)"].append(("alpha-is-normal-interior", Fm.describe(x, a)))
        for r in cl.normal[x]:
            if beta(x, r) != ts[x][r]:
                laws["(v)"].append(("beta-is-conormal-interior", Fm.describe(x, r)))
    for law, bad in laws.items():
        rep.record(law, bad)
    return rep


def semiexact_consequences(d: Decomposition) -> CheckReport:
    """For a semiexact decomposition: Fs ≅ F_c, Fe ≅ F_n, and N2 holds iff (Fs, Fe) factorizes."""
    from .factor import check_orean_factorization

    rep = CheckReport(f"semiexact-consequences {d.form.form.label}")
    if not d.semiexact:
        rep.reason = "not-semiexact"
        return rep
    O = d.form
    rep.check("Fs-iso-conormal-hull", find_isomorphism(d.Fs, hull_conormal(O)).found)
    rep.check("Fe-iso-normal-hull", find_isomorphism(d.Fe, hull_normal(O)).found)
    rep.check("strongly-orean", is_strongly_orean(O))
    n2 = noetherian_verdicts(check_noetherian(O, modular=False))["N2"]
    _, fac = check_orean_factorization(d.Fs, d.Fe, round_trip=False)
    rep.check("N2-iff-factorization", n2 == (fac is not None), {"N2": n2, "factorization": fac is not None})
    return rep


def left_join_decomposition(F) -> Decomposition:
    """F = F ∨ F^⊥ for a conormal orean form."""
    O = _orean(F)
    return check_decomposition(O, Operator.identity(O.form), Operator.from_function(O.form, O.form, lambda x, i: O.bottom[x], "bottom"))


def right_join_decomposition(F) -> Decomposition:
    """F = F^⊥ ∨ F for a normal orean form."""
    O = _orean(F)
    return check_decomposition(O, Operator.from_function(O.form, O.form, lambda x, i: O.bottom[x], "bottom"), Operator.identity(O.form))
