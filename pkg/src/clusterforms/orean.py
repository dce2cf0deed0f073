"""Orean structure: fiber lattices, direct/inverse images, images and kernels,
hulls, embeddings/quotients, the noetherian axioms and closure operators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .formcore import Form, FormError, Operator, dual_form, subform, validate_form, validate_operator
from .lattice import FinPoset, check_bounded_lattice, greatest_of, least_of
from .report import CheckReport


class NotOrean(FormError):
    pass


class OreanForm:
    """A form together with its lattice operations and Galois maps.

    ``img[f][S]`` is f·S and ``inv[f][T]`` is T·f (cluster indices).
    """

    def __init__(self, form: Form, top, bottom, meet, join, img, inv):
        self.form = form
        self.top = list(top)
        self.bottom = list(bottom)
        self.meet = list(meet)
        self.join = list(join)
        self.img = list(img)
        self.inv = list(inv)

    @property
    def base(self):
        return self.form.base

    def ge(self, x: int) -> np.ndarray:
        return self.form.ge(x)

    def le(self, x: int, a: int, b: int) -> bool:
        """a ≤ b over x."""
        return bool(self.form.ge(x)[b, a])

    def direct(self, f: int, s: int) -> int:
        return int(self.img[f][s])

    def inverse(self, t: int, f: int) -> int:
        return int(self.inv[f][t])

    def image(self, f: int) -> int:
        return int(self.img[f][self.top[self.base.dom[f]]])

    def kernel(self, f: int) -> int:
        return int(self.inv[f][self.bottom[self.base.cod[f]]])

    def poset(self, x: int) -> FinPoset:
        return FinPoset(self.form.ge(x).T)

    def label(self, x: int, i: int | None) -> str | None:
        return None if i is None else self.form.clusters[x][i]

    def name(self, f: int) -> str:
        return self.base.names[f]

    @property
    def dual(self) -> OreanForm:
        return as_orean(dual_form(self.form))


# -- orean check ----------------------------------------------------------------


def _fiber_lattices(F: Form, rep: CheckReport):
    tops, bottoms, meets, joins = [], [], [], []
    bad = []
    for x in range(F.base.k):
        lat = check_bounded_lattice(FinPoset(F.ge(x).T))
        if not lat.ok:
            bad.append({"object": F.base.objects[x], "failed": lat.failed})
            continue
        tops.append(lat.data["top"])
        bottoms.append(lat.data["bottom"])
        meets.append(lat.data["meet"])
        joins.append(lat.data["join"])
    rep.record("O1-fiber-lattices", bad)
    return (tops, bottoms, meets, joins) if not bad else None


def check_orean(F: Form) -> tuple[CheckReport, OreanForm | None]:
    """Verify O1–O3, the Galois adjunction and the derived image laws exhaustively."""
    if "orean" in F._cache:
        return F._cache["orean"]
    rep = CheckReport(f"orean {F.label}")
    base_rep = validate_form(F)
    rep.merge(base_rep)
    if not base_rep.ok:
        rep.reason = base_rep.reason or "not-a-form"
        F._cache["orean"] = (rep, None)
        return rep, None
    c = F.base
    lat = _fiber_lattices(F, rep)
    o2 = []
    for g, f in c.composable_pairs():
        via = (F.rel[g].astype(np.int32) @ F.rel[f].astype(np.int32)) > 0
        miss = F.rel[c.table[g, f]] & ~via
        if miss.any():
            cc, a = np.argwhere(miss)[0]
            o2.append({"g": c.names[g], "f": c.names[f], "C": F.clusters[c.cod[g]][cc], "A": F.clusters[c.dom[f]][a]})
    rep.record("O2-factor-through", o2)
    if lat is None:
        F._cache["orean"] = (rep, None)
        return rep, None
    tops, bottoms, meets, joins = lat
    img, inv, o3 = [], [], []
    for f in range(c.n):
        x, y = c.dom[f], c.cod[f]
        r = F.rel[f]
        py, px = FinPoset(F.ge(y).T), FinPoset(F.ge(x).T)
        di = [least_of(py, np.nonzero(r[:, s])[0]) for s in range(F.size(x))]
        ii = [greatest_of(px, np.nonzero(r[t, :])[0]) for t in range(F.size(y))]
        for s, v in enumerate(di):
            if v is None:
                o3.append({"f": c.names[f], "direct-image-missing": F.clusters[x][s]})
        for t, v in enumerate(ii):
            if v is None:
                o3.append({"f": c.names[f], "inverse-image-missing": F.clusters[y][t]})
        img.append(np.array([-1 if v is None else v for v in di], dtype=np.int64))
        inv.append(np.array([-1 if v is None else v for v in ii], dtype=np.int64))
    rep.record("O3-images-exist", o3)
    if o3:
        F._cache["orean"] = (rep, None)
        return rep, None
    O = OreanForm(F, tops, bottoms, meets, joins, img, inv)
    _galois_laws(O, rep)
    result = (rep, O if rep.ok else None)
    F._cache["orean"] = result
    return result


def _galois_laws(O: OreanForm, rep: CheckReport) -> None:
    F, c = O.form, O.base
    laws: dict[str, list] = {
        "galois-direct": [],
        "galois-inverse": [],
        "unit": [],
        "counit": [],
        "direct-bottom": [],
        "inverse-top": [],
        "direct-joins": [],
        "inverse-meets": [],
        "direct-composite": [],
        "inverse-composite": [],
        "identity-images": [],
        "iso-images": [],
    }
    for f in range(c.n):
        x, y = c.dom[f], c.cod[f]
        img, inv, r = O.img[f], O.inv[f], F.rel[f]
        gx, gy = F.ge(x), F.ge(y)
        nm = c.names[f]
        # T ≥ f·S ⇔ T ≥_f S ⇔ T·f ≥ S
        if not (gy[:, img] == r).all():
            laws["galois-direct"].append({"f": nm})
        if not (gx[inv, :] == r).all():
            laws["galois-inverse"].append({"f": nm})
        s_idx = np.arange(F.size(x))
        t_idx = np.arange(F.size(y))
        if not gx[inv[img], s_idx].all():
            laws["unit"].append({"f": nm})
        if not gy[t_idx, img[inv]].all():
            laws["counit"].append({"f": nm})
        if img[O.bottom[x]] != O.bottom[y]:
            laws["direct-bottom"].append({"f": nm})
        if inv[O.top[y]] != O.top[x]:
            laws["inverse-top"].append({"f": nm})
        if not (img[O.join[x]] == O.join[y][np.ix_(img, img)]).all():
            laws["direct-joins"].append({"f": nm})
        if not (inv[O.meet[y]] == O.meet[x][np.ix_(inv, inv)]).all():
            laws["inverse-meets"].append({"f": nm})
        for g in c.out_of[y]:
            gf = c.table[g, f]
            if not (O.img[gf] == O.img[g][img]).all():
                laws["direct-composite"].append({"g": c.names[g], "f": nm})
            if not (O.inv[gf] == inv[O.inv[g]]).all():
                laws["inverse-composite"].append({"g": c.names[g], "f": nm})
        if c.is_identity(f):
            if not ((img == s_idx).all() and (inv == s_idx).all()):
                laws["identity-images"].append({"f": nm})
        elif c.is_iso(f):
            finv = c.inverse(f)
            if not ((inv[img] == s_idx).all() and (img == O.inv[finv]).all()):
                laws["iso-images"].append({"f": nm})
    for law, bad in laws.items():
        rep.record(law, bad)


def as_orean(F: Form) -> OreanForm:
    rep, O = check_orean(F)
    if O is None:
        raise NotOrean(f"{F.label} is not orean: {rep.failed}")
    return O


def is_orean(F: Form) -> bool:
    return check_orean(F)[1] is not None


# -- images, kernels, classification ------------------------------------------------


def image(O: OreanForm, f: int) -> int:
    return O.image(f)


def kernel(O: OreanForm, f: int) -> int:
    return O.kernel(f)


@dataclass
class Classification:
    conormal: list[frozenset[int]]
    normal: list[frozenset[int]]
    image_of: dict[tuple[int, int], int]
    kernel_of: dict[tuple[int, int], int]
    c_interior: list[list[int | None]]
    c_exterior: list[list[int | None]]
    n_interior: list[list[int | None]]
    n_exterior: list[list[int | None]]

    def is_conormal(self, x: int, a: int) -> bool:
        return a in self.conormal[x]

    def is_normal(self, x: int, a: int) -> bool:
        return a in self.normal[x]


def classify(O: OreanForm) -> Classification:
    F = O.form
    if "classification" in F._cache:
        return F._cache["classification"]
    c = O.base
    image_of, kernel_of = {}, {}
    for f in range(c.n):
        image_of.setdefault((c.cod[f], O.image(f)), f)
        kernel_of.setdefault((c.dom[f], O.kernel(f)), f)
    conormal = [frozenset(a for (y, a) in image_of if y == x) for x in range(c.k)]
    normal = [frozenset(a for (y, a) in kernel_of if y == x) for x in range(c.k)]
    ci, ce, ni, ne = [], [], [], []
    for x in range(c.k):
        p = O.poset(x)
        ge = F.ge(x)
        cs, ns = sorted(conormal[x]), sorted(normal[x])
        ci.append([greatest_of(p, [b for b in cs if ge[a, b]]) for a in range(F.size(x))])
        ce.append([least_of(p, [b for b in cs if ge[b, a]]) for a in range(F.size(x))])
        ni.append([greatest_of(p, [b for b in ns if ge[a, b]]) for a in range(F.size(x))])
        ne.append([least_of(p, [b for b in ns if ge[b, a]]) for a in range(F.size(x))])
    cl = Classification(conormal, normal, image_of, kernel_of, ci, ce, ni, ne)
    F._cache["classification"] = cl
    return cl


def hull_conormal(O: OreanForm) -> Form:
    cache = O.form._cache
    if "conormal-hull" not in cache:
        cl = classify(O)
        cache["conormal-hull"] = subform(O.form, [sorted(s) for s in cl.conormal], f"conormal-hull({O.form.label})")
    return cache["conormal-hull"]


def hull_normal(O: OreanForm) -> Form:
    cache = O.form._cache
    if "normal-hull" not in cache:
        cl = classify(O)
        cache["normal-hull"] = subform(O.form, [sorted(s) for s in cl.normal], f"normal-hull({O.form.label})")
    return cache["normal-hull"]


def _hull_formula_report(O: OreanForm, rep: CheckReport, prefix: str) -> bool:
    """Conormal-hull formulas (interiors/exteriors); returns whether the hull is orean."""
    F, c, cl = O.form, O.base, classify(O)
    H = hull_conormal(O)
    sel = H._cache["selection"]
    ok_rep, Oc = check_orean(H)
    # the hull is orean iff these constructions exist
    exist = []
    for x in range(c.k):
        if cl.c_exterior[x][O.bottom[x]] is None:
            exist.append(("exterior-of-bottom", c.objects[x]))
        for a in cl.conormal[x]:
            for b in cl.conormal[x]:
                if cl.c_exterior[x][O.join[x][a, b]] is None or cl.c_interior[x][O.meet[x][a, b]] is None:
                    exist.append(("join/meet", c.objects[x], a, b))
    for f in range(c.n):
        for a in cl.conormal[c.cod[f]]:
            if cl.c_interior[c.dom[f]][O.inverse(a, f)] is None:
                exist.append(("inverse-image", c.names[f], a))
    rep.check(prefix + "hull-orean-iff-constructions", (Oc is not None) == (not exist), exist[:3])
    if Oc is None:
        return False
    bad = []
    for x in range(c.k):
        s = sel[x]
        if s[Oc.top[x]] != O.top[x]:
            bad.append(("top", c.objects[x]))
        if s[Oc.bottom[x]] != cl.c_exterior[x][O.bottom[x]]:
            bad.append(("bottom", c.objects[x]))
        for i, a in enumerate(s):
            for j, b in enumerate(s):
                if s[Oc.meet[x][i, j]] != cl.c_interior[x][O.meet[x][a, b]]:
                    bad.append(("meet", c.objects[x], a, b))
                if s[Oc.join[x][i, j]] != cl.c_exterior[x][O.join[x][a, b]]:
                    bad.append(("join", c.objects[x], a, b))
    for f in range(c.n):
        sx, sy = sel[c.dom[f]], sel[c.cod[f]]
        for i, a in enumerate(sx):
            if sy[Oc.img[f][i]] != O.direct(f, a):
                bad.append(("direct", c.names[f], a))
        for j, b in enumerate(sy):
            if sx[Oc.inv[f][j]] != cl.c_interior[c.dom[f]][O.inverse(b, f)]:
                bad.append(("inverse", c.names[f], b))
    rep.record(prefix + "hull-formulas", bad)
    return True


def strongly_orean(O: OreanForm) -> CheckReport:
    """Both hulls orean, with every interior/exterior formula for them verified."""
    rep = CheckReport(f"strongly-orean {O.form.label}")
    c_ok = _hull_formula_report(O, rep, "conormal-")
    n_ok = _hull_formula_report(O.dual, rep, "normal-")
    rep.check("conormal-hull-orean", c_ok)
    rep.check("normal-hull-orean", n_ok)
    return rep


def is_strongly_orean(O: OreanForm) -> bool:
    rep = strongly_orean(O)
    return rep["conormal-hull-orean"] and rep["normal-hull-orean"]


# -- embeddings and quotients ----------------------------------------------------------


def embeddings_of(O: OreanForm, x: int, a: int) -> list[int]:
    """All embeddings of cluster ``a`` over ``x`` (empty unless it is conormal)."""
    key = ("embeddings", x, a)
    cache = O.form._cache
    if key in cache:
        return cache[key]
    c = O.base
    below = [g for g in c.into[x] if O.le(x, O.image(g), a)]
    found = []
    for f in c.into[x]:
        if O.image(f) != a or not c.is_mono(f):
            continue
        w = c.dom[f]
        ok = True
        for g in below:
            us = c.hom(c.dom[g], w)
            if int((c.table[f, us] == g).sum()) != 1:
                ok = False
                break
        if ok:
            found.append(f)
    cache[key] = found
    return found


def find_embedding(O: OreanForm, x: int, a: int) -> int | None:
    e = embeddings_of(O, x, a)
    return e[0] if e else None


def quotients_of(O: OreanForm, x: int, r: int) -> list[int]:
    return embeddings_of(O.dual, x, r)


def find_quotient(O: OreanForm, x: int, r: int) -> int | None:
    q = quotients_of(O, x, r)
    return q[0] if q else None


def embedding_class(O: OreanForm) -> list[int]:
    """Morphisms that embed their own image."""
    return [f for f in range(O.base.n) if f in embeddings_of(O, O.base.cod[f], O.image(f))]


def quotient_class(O: OreanForm) -> list[int]:
    return embedding_class(O.dual)


def n2_factorizations(O: OreanForm, f: int) -> list[tuple[int, int]]:
    """Pairs (ι, π) with ι an embedding of Im f, π a quotient of Ker f and ι∘π = f."""
    c = O.base
    out = []
    for i in embeddings_of(O, c.cod[f], O.image(f)):
        for p in quotients_of(O, c.dom[f], O.kernel(f)):
            if c.cod[p] == c.dom[i] and c.table[i, p] == f:
                out.append((i, p))
    return out


# -- noetherian axioms -----------------------------------------------------------------


def check_noetherian(O: OreanForm, modular: bool = True) -> CheckReport:
    F, c = O.form, O.base
    rep = CheckReport(f"noetherian {F.label}")
    nj, nm, rj, rm = [], [], [], []
    for f in range(c.n):
        x, y = c.dom[f], c.cod[f]
        ker, im = O.kernel(f), O.image(f)
        ge_x, ge_y = F.ge(x), F.ge(y)
        back = O.inv[f][O.img[f]]
        want = O.join[x][:, ker]
        for s in np.nonzero(back != want)[0]:
            nj.append({"f": c.names[f], "S": F.clusters[x][s], "(f.S).f": F.clusters[x][back[s]], "S v Ker f": F.clusters[x][want[s]]})
            if ge_x[s, ker]:
                rj.append({"f": c.names[f], "S": F.clusters[x][s]})
        fwd = O.img[f][O.inv[f]]
        want = O.meet[y][:, im]
        for t in np.nonzero(fwd != want)[0]:
            nm.append({"f": c.names[f], "T": F.clusters[y][t], "f.(T.f)": F.clusters[y][fwd[t]], "T ^ Im f": F.clusters[y][want[t]]})
            if ge_y[im, t]:
                rm.append({"f": c.names[f], "T": F.clusters[y][t]})
    rep.record("N1-join", nj)
    rep.record("N1-meet", nm)
    # the reduced implications must agree with the full formulas
    rep.check("N1-join-reduced-agrees", (not nj) == (not rj), {"full": len(nj), "reduced": len(rj)})
    rep.check("N1-meet-reduced-agrees", (not nm) == (not rm), {"full": len(nm), "reduced": len(rm)})
    n2 = []
    for f in range(c.n):
        pairs = n2_factorizations(O, f)
        if not pairs:
            n2.append(
                {
                    "f": c.names[f],
                    "Im f": F.clusters[c.cod[f]][O.image(f)],
                    "Ker f": F.clusters[c.dom[f]][O.kernel(f)],
                    "embeddings": len(embeddings_of(O, c.cod[f], O.image(f))),
                    "quotients": len(quotients_of(O, c.dom[f], O.kernel(f))),
                }
            )
    rep.record("N2", n2)
    cl = classify(O)
    n3n, n3c = [], []
    for x in range(c.k):
        ns, cs = sorted(cl.normal[x]), sorted(cl.conormal[x])
        for i, a in enumerate(ns):
            for b in ns[i + 1 :]:
                if O.join[x][a, b] not in cl.normal[x]:
                    n3n.append({"object": c.objects[x], "R": F.clusters[x][a], "S": F.clusters[x][b]})
        for i, a in enumerate(cs):
            for b in cs[i + 1 :]:
                if O.meet[x][a, b] not in cl.conormal[x]:
                    n3c.append({"object": c.objects[x], "A": F.clusters[x][a], "B": F.clusters[x][b]})
    rep.record("N3-normal-joins", n3n)
    rep.record("N3-conormal-meets", n3c)
    if modular and not nj and not nm:
        rep.record("restricted-modular", restricted_modular_violations(O))
    return rep


def noetherian_verdicts(rep: CheckReport) -> dict[str, bool]:
    return {
        "N1-join": rep["N1-join"],
        "N1-meet": rep["N1-meet"],
        "N2": rep["N2"],
        "N3": rep["N3-normal-joins"] and rep["N3-conormal-meets"],
    }


def is_noetherian(O: OreanForm) -> bool:
    v = noetherian_verdicts(check_noetherian(O, modular=False))
    return all(v.values())


def restricted_modular_violations(O: OreanForm) -> list[dict]:
    """(X∨Y)∧Z = X∨(Y∧Z) for X ≤ Z when X normal and Y conormal, or Y normal and Z conormal."""
    F, c, cl = O.form, O.base, classify(O)
    bad = []
    for x in range(c.k):
        J, M, ge = O.join[x], O.meet[x], F.ge(x)
        k = F.size(x)
        for a in range(k):
            for z in range(k):
                if not ge[z, a]:
                    continue
                for y in range(k):
                    if not ((a in cl.normal[x] and y in cl.conormal[x]) or (y in cl.normal[x] and z in cl.conormal[x])):
                        continue
                    if M[J[a, y], z] != J[a, M[y, z]]:
                        bad.append({"object": c.objects[x], "X": F.clusters[x][a], "Y": F.clusters[x][y], "Z": F.clusters[x][z]})
    return bad


# -- special predicates ----------------------------------------------------------------


def bottom_subform(O: OreanForm) -> Form:
    return subform(O.form, [[b] for b in O.bottom], f"bottoms({O.form.label})")


def top_subform(O: OreanForm) -> Form:
    return subform(O.form, [[t] for t in O.top], f"tops({O.form.label})")


def special_predicates(O: OreanForm) -> dict[str, bool]:
    F, c, cl = O.form, O.base, classify(O)
    every = [frozenset(range(F.size(x))) for x in range(c.k)]
    flags = {
        "conormal_form": cl.conormal == every,
        "normal_form": cl.normal == every,
        "antinormal": all(cl.normal[x] == {O.bottom[x]} for x in range(c.k)),
        "anticonormal": all(cl.conormal[x] == {O.top[x]} for x in range(c.k)),
        "isoform": all(F.size(x) == 1 for x in range(c.k)),
    }
    flags["binormal"] = flags["conormal_form"] and flags["normal_form"]
    flags["antibinormal"] = flags["antinormal"] and flags["anticonormal"]
    return flags


def special_predicates_report(O: OreanForm) -> CheckReport:
    """Flags plus the isoform characterizations and the bottom/top subform facts."""
    rep = CheckReport(f"special {O.form.label}")
    flags = special_predicates(O)
    rep.data.update(flags)
    c = O.base
    tops_are_bottoms = all(O.top[x] == O.bottom[x] for x in range(c.k))
    iso = flags["isoform"]
    rep.check("isoform-iff-top-is-bottom", iso == tops_are_bottoms)
    rep.check("isoform-iff-conormal-anticonormal", iso == (flags["conormal_form"] and flags["anticonormal"]))
    rep.check("isoform-iff-normal-antinormal", iso == (flags["normal_form"] and flags["antinormal"]))
    for name, sub in (("bottoms", bottom_subform(O)), ("tops", top_subform(O))):
        _, So = check_orean(sub)
        rep.check(f"{name}-subform-isoform", So is not None and special_predicates(So)["isoform"])
    return rep


# -- operators between orean forms ---------------------------------------------------------


def operator_normality(t: Operator) -> frozenset[str]:
    """Conormal: τ(Im f) = Im f; normal: τ(Ker f) = Ker f (images computed in each form)."""
    F, G = as_orean(t.src), as_orean(t.dst)
    c = F.base
    conormal = all(t(c.cod[f], F.image(f)) == G.image(f) for f in range(c.n))
    normal = all(t(c.dom[f], F.kernel(f)) == G.kernel(f) for f in range(c.n))
    if conormal and not all(t(x, F.top[x]) == G.top[x] for x in range(c.k)):
        raise AssertionError("conormal operator that does not preserve tops")
    if normal and not all(t(x, F.bottom[x]) == G.bottom[x] for x in range(c.k)):
        raise AssertionError("normal operator that does not preserve bottoms")
    flags = set()
    if conormal:
        flags.add("conormal")
    if normal:
        flags.add("normal")
    if conormal and normal:
        flags.add("binormal")
    return frozenset(flags)


def forced_conormal_operator(F: OreanForm, G: OreanForm) -> Operator | None:
    """The only candidate conormal operator out of a conormal form: Im^F g ↦ Im^G g.

    Returns None when the assignment is ill-defined, partial or not monotone.
    """
    c = F.base
    assign = [[-1] * F.form.size(x) for x in range(c.k)]
    for g in range(c.n):
        y = c.cod[g]
        a, b = F.image(g), G.image(g)
        if assign[y][a] not in (-1, b):
            return None
        assign[y][a] = b
    if any(v < 0 for row in assign for v in row):
        return None
    t = Operator(F.form, G.form, assign, "forced-conormal")
    return t if "valid" in validate_operator(t) else None


def forced_normal_operator(F: OreanForm, G: OreanForm) -> Operator | None:
    t = forced_conormal_operator(F.dual, G.dual)
    return None if t is None else Operator(F.form, G.form, t.assign, "forced-normal")


# -- closure operators -------------------------------------------------------------------


def validate_closure(t: Operator, co: bool = False) -> CheckReport:
    rep = CheckReport("co-closure" if co else "closure")
    if t.src is not t.dst:
        rep.reason = "not-an-endo-operator"
        return rep
    F = t.src
    flags = validate_operator(t)
    rep.check("monotone", "valid" in flags)
    bad = []
    for x in range(F.base.k):
        ge = F.ge(x)
        for s in range(F.size(x)):
            k = t(x, s)
            if not (ge[s, k] if co else ge[k, s]):
                bad.append({"object": F.base.objects[x], "S": F.clusters[x][s], "image": F.clusters[x][k]})
    rep.record("deflationary" if co else "inflationary", bad)
    rep.data["idempotent"] = "idempotent" in flags
    return rep


def closed_subform(t: Operator) -> tuple[CheckReport, OreanForm]:
    """The form of κ-closed clusters, with its lattice and image formulas verified."""
    rep = validate_closure(t)
    if not rep.ok or not rep.data["idempotent"]:
        raise FormError("closed_subform needs an idempotent closure operator")
    O = as_orean(t.src)
    c = O.base
    sel = [sorted(set(a.tolist())) for a in t.assign]
    K = subform(O.form, sel, f"closed({O.form.label})")
    Ok = as_orean(K)
    bad = []
    for x in range(c.k):
        s = sel[x]
        kap = t.assign[x]
        if s[Ok.top[x]] != O.top[x]:
            bad.append(("top", c.objects[x]))
        if s[Ok.bottom[x]] != kap[O.bottom[x]]:
            bad.append(("bottom", c.objects[x]))
        for i, a in enumerate(s):
            for j, b in enumerate(s):
                if s[Ok.join[x][i, j]] != kap[O.join[x][a, b]]:
                    bad.append(("join", c.objects[x], a, b))
                if s[Ok.meet[x][i, j]] != O.meet[x][a, b]:
                    bad.append(("meet", c.objects[x], a, b))
    for f in range(c.n):
        sx, sy = sel[c.dom[f]], sel[c.cod[f]]
        for i, a in enumerate(sx):
            if sy[Ok.img[f][i]] != t.assign[c.cod[f]][O.direct(f, a)]:
                bad.append(("direct", c.names[f], a))
        for j, b in enumerate(sy):
            if sx[Ok.inv[f][j]] != O.inverse(b, f):
                bad.append(("inverse", c.names[f], b))
    rep.record("closed-form-formulas", bad)
    return rep, Ok


@dataclass
class Census:
    operators: list[Operator]
    status: str
    nodes: int


def enumerate_closure_operators(O: OreanForm, co: bool = False, budget: int = 10**8) -> Census:
    """Every monotone operator with κS ≥ S (or S ≥ δS when ``co``), by backtracking."""
    F = O.form
    W = dual_form(F) if co else F
    c = W.base
    vars_ = [(x, s) for x in range(c.k) for s in range(W.size(x))]
    stacks = {}
    for x in range(c.k):
        for y in range(c.k):
            ms = c.hom(x, y)
            if len(ms):
                stacks[x, y] = np.stack([W.rel[m] for m in ms])
    domains = [[k for k in range(W.size(x)) if W.ge(x)[k, s]] for x, s in vars_]
    assign = [[-1] * W.size(x) for x in range(c.k)]
    done: list[list[int]] = [[] for _ in range(c.k)]
    found: list[list[np.ndarray]] = []
    nodes = 0

    def consistent(x: int, s: int, k: int) -> bool:
        for y in range(c.k):
            prev = done[y]
            if not prev:
                continue
            img = [assign[y][b] for b in prev]
            if (x, y) in stacks:
                st = stacks[x, y]
                need = st[:, prev, s]
                if (need & ~st[:, img, k]).any():
                    return False
            if (y, x) in stacks:
                st = stacks[y, x]
                need = st[:, s, prev]
                if (need & ~st[:, k, img]).any():
                    return False
        st = stacks[x, x]
        return not (st[:, s, s] & ~st[:, k, k]).any()

    def search(pos: int) -> bool:
        nonlocal nodes
        if pos == len(vars_):
            found.append([np.array(a, dtype=np.int64) for a in assign])
            return True
        x, s = vars_[pos]
        for k in domains[pos]:
            nodes += 1
            if nodes > budget:
                return False
            if consistent(x, s, k):
                assign[x][s] = k
                done[x].append(s)
                if not search(pos + 1) and nodes > budget:
                    return False
                done[x].pop()
                assign[x][s] = -1
        return True

    search(0)
    status = "budget-exhausted" if nodes > budget else "complete"
    label = "co-closure" if co else "closure"
    ops = [Operator(F, F, a, f"{label}#{i}") for i, a in enumerate(found)]
    return Census(ops, status, nodes)


def constant_top(O: OreanForm) -> Operator:
    return Operator.from_function(O.form, O.form, lambda x, i: O.top[x], "constant-top")


def constant_bottom(O: OreanForm) -> Operator:
    return Operator.from_function(O.form, O.form, lambda x, i: O.bottom[x], "constant-bottom")


def closure_transfer_report(O: OreanForm, kappa: Operator) -> CheckReport:
    """For a binormal idempotent closure: N3 passes to the closed form, N2 transfers both ways."""
    rep = CheckReport("closure-transfer")
    _, Ok = closed_subform(kappa)
    if "binormal" not in operator_normality(kappa):
        rep.reason = "not-binormal"
        return rep
    base = noetherian_verdicts(check_noetherian(O, modular=False))
    closed = noetherian_verdicts(check_noetherian(Ok, modular=False))
    rep.check("N3-inherited", (not base["N3"]) or closed["N3"])
    rep.check("N2-equivalent", base["N2"] == closed["N2"])
    rep.data.update(base=base, closed=closed)
    return rep
