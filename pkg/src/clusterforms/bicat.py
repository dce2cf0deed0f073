"""Bicategories (C, E, M): right morphisms E, left morphisms M, and the axioms B0-B5."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable

from .fincat import CommutativeSquare, FinCategory, factorization_system_report, is_pullback, is_pushout, pullback, pushout
from .formcore import Form, FormError, dual_form, subform
from .lattice import FinPoset, check_bounded_lattice
from .report import CheckReport

SCHEMA = "bicat/1"

AXIOMS = ("B0", "B1", "B1'", "B1a", "B2", "B2'", "B3", "B4", "B5", "B5'")


class Bicategory:
    """A finite category with designated right (E) and left (M) morphism classes."""

    def __init__(self, cat: FinCategory, E: Iterable[int], M: Iterable[int], label: str = "bicategory"):
        self.cat = cat
        self.E = frozenset(int(e) for e in E)
        self.M = frozenset(int(m) for m in M)
        self.label = label

    @cached_property
    def dual(self) -> Bicategory:
        d = Bicategory(self.cat.opposite, self.M, self.E, f"dual({self.label})")
        d.__dict__["dual"] = self
        return d

    def left_into(self, x: int) -> list[int]:
        return [m for m in self.cat.into[x] if m in self.M]

    def right_out_of(self, x: int) -> list[int]:
        return [e for e in self.cat.out_of[x] if e in self.E]

    def factors_through(self, t: int, target: int) -> bool:
        c = self.cat
        return any(c.table[t, u] == target for u in c.hom(c.dom[target], c.dom[t]))

    @cached_property
    def initial_left(self) -> tuple[int | None, ...]:
        """Per object, the least-id initial left morphism into it (None if absent)."""
        out = []
        for x in range(self.cat.k):
            ms = self.left_into(x)
            hit = None
            for i in ms:
                # uniqueness of u is automatic since left morphisms are checked monic in B0
                if all(self.factors_through(m, i) for m in ms):
                    hit = i
                    break
            out.append(hit)
        return tuple(out)

    @cached_property
    def terminal_right(self) -> tuple[int | None, ...]:
        return self.dual.initial_left

    def is_initial_left(self, m: int) -> bool:
        i = self.initial_left[self.cat.cod[m]]
        return m in self.M and i is not None and self.factors_through(m, i) and self.factors_through(i, m)

    def to_dict(self) -> dict:
        return {"schema": SCHEMA, "category": self.cat.to_dict(), "E": sorted(self.E), "M": sorted(self.M), "label": self.label}

    @classmethod
    def from_dict(cls, doc: dict) -> Bicategory:
        if doc.get("schema", SCHEMA) != SCHEMA:
            raise ValueError(f"expected schema {SCHEMA}, got {doc.get('schema')}")
        return cls(FinCategory.from_dict(doc["category"]), doc["E"], doc["M"], doc.get("label", "bicategory"))

    def __repr__(self) -> str:
        return f"Bicategory({self.label}: {len(self.E)} right, {len(self.M)} left)"


def _sq(c: FinCategory, sq: CommutativeSquare) -> dict:
    return {"top": c.names[sq.top], "left": c.names[sq.left], "right": c.names[sq.right], "bottom": c.names[sq.bottom]}


# -- trivial objects -----------------------------------------------------------------


def trivial_objects(b: Bicategory) -> tuple[frozenset[int], frozenset[int], CheckReport]:
    """Left-trivial and right-trivial objects, with their alternative characterizations checked."""
    c = b.cat
    left = frozenset(c.dom[i] for i in b.initial_left if i is not None)
    right = frozenset(c.cod[t] for t in b.terminal_right if t is not None)
    rep = CheckReport(f"trivial-objects {b.label}")
    for x in range(c.k):
        into_right = all(f in b.E for f in c.into[x])
        left_isos = all(c.is_iso(m) for m in b.left_into(x))
        rep.check("left-trivial-iff-all-into-right", (x in left) == into_right, c.objects[x])
        rep.check("left-trivial-iff-left-into-are-isos", (x in left) == left_isos, c.objects[x])
        out_left = all(f in b.M for f in c.out_of[x])
        right_isos = all(c.is_iso(e) for e in b.right_out_of(x))
        rep.check("right-trivial-iff-all-out-left", (x in right) == out_left, c.objects[x])
        rep.check("right-trivial-iff-right-out-are-isos", (x in right) == right_isos, c.objects[x])
    terminals = [x for x in range(c.k) if all(len(c.hom(y, x)) == 1 for y in range(c.k))]
    initials = [x for x in range(c.k) if all(len(c.hom(x, y)) == 1 for y in range(c.k))]
    rep.data.update(
        left_trivial=[c.objects[x] for x in sorted(left)],
        right_trivial=[c.objects[x] for x in sorted(right)],
        terminal=[c.objects[x] for x in terminals],
        initial=[c.objects[x] for x in initials],
    )
    if terminals:
        b4 = right <= left
        conds = {
            "B4": b4,
            "terminals-left-trivial": all(t in left for t in terminals),
            "into-terminal-are-right": all(f in b.E for t in terminals for f in c.into[t]),
            "right-trivial-are-terminal": right == frozenset(terminals),
        }
        rep.check("terminal-is-right-trivial", all(t in right for t in terminals))
        rep.check("terminal-conditions-equivalent", len(set(conds.values())) == 1, conds)
        if initials:
            arrow = int(c.hom(initials[0], terminals[0])[0])
            rep.check("B4-iff-initial-to-terminal-right", b4 == (arrow in b.E), {"B4": b4})
        if b4:
            bad = [c.names[f] for t in terminals for f in c.out_of[t] if not b.is_initial_left(f)]
            rep.record("out-of-terminal-initial-left", bad)
    if initials:
        # an initial left morphism is the left part of the factorization of I -> Y
        bad = []
        for y in range(c.k):
            f = int(c.hom(initials[0], y)[0])
            parts = [(e, m) for m in b.left_into(y) for e in b.right_out_of(initials[0]) if c.table[m, e] == f]
            if not parts or not b.is_initial_left(parts[0][1]):
                bad.append(c.objects[y])
        rep.record("initial-left-from-initial-object", bad)
    return left, right, rep


# -- the axioms -------------------------------------------------------------------------


def _b0(b: Bicategory, rep: CheckReport) -> None:
    from .zoo import e_quotients_form, m_subobjects_form

    c = b.cat
    rep.merge(factorization_system_report(c, b.E, b.M), "B0:")
    for name, F in (("subobjects", m_subobjects_form(c, sorted(b.M))), ("quotients", e_quotients_form(c, sorted(b.E)))):
        bad = [c.objects[x] for x in range(c.k) if not check_bounded_lattice(FinPoset(F.ge(x).T)).ok]
        rep.record(f"B0:{name}-lattices", bad)
    no_pb = [(c.names[m], c.names[f]) for m in sorted(b.M) for f in c.into[c.cod[m]] if pullback(c, f, m) is None]
    rep.record("B0:left-pullbacks-exist", no_pb)
    no_po = [(c.names[e], c.names[f]) for e in sorted(b.E) for f in c.out_of[c.dom[e]] if pushout(c, e, f) is None]
    rep.record("B0:right-pushouts-exist", no_po)
    rep.results["B0"] = all(v for k, v in rep.results.items() if k.startswith("B0:"))


def _b1a(b: Bicategory, rep: CheckReport) -> None:
    c, bad = b.cat, []
    for e in sorted(b.E):
        for m in sorted(b.M):
            if c.cod[m] != c.cod[e]:
                continue
            sq = pullback(c, m, e)
            if sq is not None and sq.left not in b.E:
                bad.append({"right": c.names[e], "along": c.names[m]})
    rep.record("B1a", bad)


def _squares(c: FinCategory, H: frozenset, V: frozenset) -> list[CommutativeSquare]:
    """Commuting squares with top/bottom in ``H`` and verticals in ``V``."""
    out = []
    for top in sorted(H):
        for left in [v for v in c.out_of[c.dom[top]] if v in V]:
            for right in [v for v in c.out_of[c.cod[top]] if v in V]:
                val = c.table[right, top]
                for bottom in c.hom(c.cod[left], c.cod[right]):
                    if int(bottom) in H and c.table[bottom, left] == val:
                        out.append(CommutativeSquare(top, left, right, int(bottom)))
    return out


def _b1(b: Bicategory, rep: CheckReport) -> None:
    c, bad, used = b.cat, [], 0
    # square: top a->>b, left a>->c, right b>->d, bottom c->>d
    for top in sorted(b.E):
        for left in [m for m in sorted(b.M) if c.dom[m] == c.dom[top]]:
            for bottom in b.right_out_of(c.cod[left]):
                val = c.table[bottom, left]
                for right in c.hom(c.cod[top], c.cod[bottom]):
                    right = int(right)
                    if right not in b.M or c.table[right, top] != val:
                        continue
                    i = b.initial_left[c.cod[bottom]]
                    if i is None:
                        continue
                    par = pullback(c, bottom, i)
                    if par is None or not b.factors_through(left, par.left):
                        continue
                    used += 1
                    sq = CommutativeSquare(top, left, right, bottom)
                    if not is_pullback(c, sq):
                        bad.append(_sq(c, sq))
    rep.record("B1:square-pullback", bad)
    rep.data["B1-instances"] = used
    rep.results["B1"] = rep.results["B1a"] and rep.results["B1:square-pullback"]


def _b1_prime(b: Bicategory, rep: CheckReport) -> None:
    c, bad, used = b.cat, [], 0
    squares = _squares(c, b.M, b.E)
    by_left: dict[int, list[CommutativeSquare]] = {}
    for s in squares:
        by_left.setdefault(s.left, []).append(s)
    pb_cache: dict[CommutativeSquare, bool] = {}

    def pb(s):
        if s not in pb_cache:
            # the square with horizontal left morphisms, read as a pullback of (bottom, right)
            pb_cache[s] = is_pullback(c, CommutativeSquare(s.top, s.left, s.right, s.bottom))
        return pb_cache[s]

    for first in squares:
        for second in by_left.get(first.right, []):
            outer = CommutativeSquare(
                int(c.table[second.top, first.top]), first.left, second.right, int(c.table[second.bottom, first.bottom])
            )
            if not pb(outer):
                continue
            used += 1
            if not pb(second):
                bad.append({"left": _sq(c, first), "right": _sq(c, second)})
    rep.record("B1':right-square-pullback", bad)
    rep.data["B1'-instances"] = used
    rep.results["B1'"] = rep.results["B1a"] and rep.results["B1':right-square-pullback"]


def _b2(b: Bicategory, rep: CheckReport, initial_only: bool) -> None:
    c, bad, skipped, used = b.cat, [], 0, 0
    law = "B2" if initial_only else "B2'"
    for e in sorted(b.E):
        d = c.cod[e]
        bottoms = [b.initial_left[d]] if initial_only else b.left_into(d)
        for i in bottoms:
            if i is None:
                continue
            sq = pullback(c, i, e)
            if sq is None:
                continue
            if sq.top not in b.M or sq.left not in b.E:
                skipped += 1
                continue
            used += 1
            if not is_pushout(c, sq):
                bad.append(_sq(c, sq))
    rep.record(law, bad)
    rep.data[f"{law}-instances"] = used
    rep.data[f"{law}-skipped"] = skipped


def _b3(b: Bicategory, rep: CheckReport) -> None:
    c, bad, used = b.cat, [], 0
    for m in sorted(b.M):
        for e in b.right_out_of(c.dom[m]):
            sq = pushout(c, m, e)
            if sq is None:
                continue
            i = b.initial_left[c.cod[e]]
            if i is None:
                continue
            used += 1
            if int(c.table[sq.bottom, i]) not in b.M:
                bad.append({"left": c.names[m], "right": c.names[e], "initial": c.names[i]})
    rep.record("B3", bad)
    rep.data["B3-instances"] = used


def _b4(b: Bicategory, rep: CheckReport) -> None:
    left, right, _ = trivial_objects(b)
    rep.record("B4", [b.cat.objects[x] for x in sorted(right - left)])


def _b5_diagrams(b: Bicategory):
    """Yield (e1, e2, p_left, p_top, n_v, r) for every well-shaped B5 diagram base."""
    c = b.cat
    for x in range(c.k):
        outs = b.right_out_of(x)
        for e1 in outs:
            for e2 in outs:
                po = pushout(c, e1, e2)
                if po is None:
                    continue
                # po.right: n -> v, po.bottom: u -> v
                l = b.initial_left[c.cod[e2]]
                r = b.initial_left[c.cod[po.right]]
                if l is None or r is None:
                    continue
                pl = pullback(c, e2, l)
                if pl is None:
                    continue
                yield e1, e2, po, pl, r


def _b5(b: Bicategory, rep: CheckReport) -> None:
    c, bad, skipped, used = b.cat, [], 0, 0
    for e1, e2, po, pl, r in _b5_diagrams(b):
        if po.right not in b.E or po.bottom not in b.E or pl.left not in b.M or pl.top not in b.E:
            skipped += 1
            continue
        pr = pullback(c, po.right, r)
        if pr is None or pr.left not in b.M or pr.top not in b.E:
            skipped += 1
            continue
        target = int(c.table[e1, pl.left])
        ts = [int(t) for t in c.hom(c.dom[pl.left], c.dom[pr.left]) if c.table[pr.left, t] == target]
        if not ts:
            skipped += 1
            continue
        used += 1
        if ts[0] not in b.E:
            bad.append({"e1": c.names[e1], "e2": c.names[e2], "top": c.names[ts[0]]})
    rep.record("B5", bad)
    rep.data["B5-instances"] = used
    rep.data["B5-skipped"] = skipped


def _b5_prime(b: Bicategory, rep: CheckReport) -> None:
    c, bad, skipped, used = b.cat, [], 0, 0
    for e1, e2, po, pl, r in _b5_diagrams(b):
        if po.right not in b.E or po.bottom not in b.E or pl.left not in b.M or pl.top not in b.E:
            skipped += 1
            continue
        n = c.cod[e1]
        target = int(c.table[e1, pl.left])
        seen = set()
        for q in range(c.k):
            for mq in c.hom(q, n):
                mq = int(mq)
                if mq not in b.M:
                    continue
                for eq in c.hom(q, c.dom[r]):
                    eq = int(eq)
                    if eq not in b.E or c.table[r, eq] != c.table[po.right, mq]:
                        continue
                    if not any(int(t) in b.E and c.table[mq, t] == target for t in c.hom(c.dom[pl.left], q)):
                        continue
                    if (mq, eq) in seen:
                        continue
                    seen.add((mq, eq))
                    used += 1
                    sq = CommutativeSquare(eq, mq, r, po.right)
                    if not is_pullback(c, sq):
                        bad.append({"e1": c.names[e1], "e2": c.names[e2], "diamond": _sq(c, sq)})
    rep.record("B5'", bad)
    rep.data["B5'-instances"] = used
    rep.data["B5'-skipped"] = skipped


def check_axiom(b: Bicategory, which: str, dual: bool = False) -> CheckReport:
    """One axiom (or ``"all"``) on ``b``; the dual variant runs on (C^op, M, E)."""
    if dual:
        rep = check_axiom(b.dual, which, False)
        rep.subject = f"dual {which} {b.label}"
        return rep
    which = which.replace("′", "'")
    names = AXIOMS if which == "all" else (which,)
    for w in names:
        if w not in AXIOMS:
            raise ValueError(f"unknown axiom {w!r}")
    rep = CheckReport(f"{which} {b.label}")
    done: set[str] = set()

    def need(w):
        if w in done:
            return
        done.add(w)
        if w == "B0":
            _b0(b, rep)
        elif w == "B1a":
            _b1a(b, rep)
        elif w == "B1":
            need("B1a")
            _b1(b, rep)
        elif w == "B1'":
            need("B1a")
            _b1_prime(b, rep)
        elif w == "B2":
            _b2(b, rep, True)
        elif w == "B2'":
            _b2(b, rep, False)
        elif w == "B3":
            _b3(b, rep)
        elif w == "B4":
            _b4(b, rep)
        elif w == "B5":
            _b5(b, rep)
        elif w == "B5'":
            _b5_prime(b, rep)

    for w in names:
        need(w)
    if which == "all":
        b0 = rep.results["B0"]
        rep.data["axioms"] = {w: rep.results[w] for w in AXIOMS}
        pairs = [("B1", "B1'"), ("B2", "B2'"), ("B5", "B5'")]
        for p, q in pairs:
            if b0:
                rep.check(f"{p}-iff-{q}", rep.results[p] == rep.results[q], {p: rep.results[p], q: rep.results[q]})
    return rep


def axiom_verdicts(b: Bicategory, dual: bool = False) -> dict[str, bool]:
    rep = check_axiom(b, "all", dual)
    return {w: rep.results[w] for w in AXIOMS}


def axioms_hold(b: Bicategory, dual: bool = False, names=("B0", "B1", "B2", "B3", "B4", "B5")) -> bool:
    v = axiom_verdicts(b, dual)
    return all(v[n] for n in names)


# -- synthesis -----------------------------------------------------------------------


def synthesize_emd_form(b: Bicategory, check: bool = True) -> tuple[Form, CheckReport]:
    """Subquotients [e, m] whose pushout of m along e is an initial left morphism."""
    from .zoo import subquotients_form

    rep = CheckReport(f"emd-synthesis {b.label}")
    if check:
        v = axiom_verdicts(b)
        rep.data["axioms"] = v
        if not all(v[n] for n in ("B0", "B1", "B2", "B3", "B4", "B5")):
            raise FormError("axiom-battery-failed")
    c = b.cat
    SQ = subquotients_form(c, sorted(b.E), sorted(b.M), f"subquotients({b.label})")
    sel = []
    for x in range(c.k):
        keep = []
        for k, (e, m) in enumerate(SQ.payload[x]):
            sq = pushout(c, m, e)
            if sq is not None and b.is_initial_left(sq.bottom):
                keep.append(k)
        sel.append(keep)
    G = subform(SQ, sel, f"emd({b.label})")
    if check:
        _synthesis_checks(G, b, rep, meet=True)
    return G, rep


def synthesize_ejd_form(b: Bicategory, check: bool = True) -> tuple[Form, CheckReport]:
    """The dual construction: emd synthesis on (C^op, M, E), dualized back over C."""
    G, drep = synthesize_emd_form(b.dual, check=False)
    rep = CheckReport(f"ejd-synthesis {b.label}")
    if check:
        v = axiom_verdicts(b, dual=True)
        rep.data["dual-axioms"] = v
        if not all(v[n] for n in ("B0", "B1", "B2", "B3", "B4", "B5")):
            raise FormError("axiom-battery-failed")
    F = dual_form(G)
    F.label = f"ejd({b.label})"
    if check:
        _synthesis_checks(F, b, rep, meet=False)
    return F, rep


def _synthesis_checks(F: Form, b: Bicategory, rep: CheckReport, meet: bool) -> None:
    from .decomp import exact_join_check, exact_meet_check
    from .orean import check_noetherian, check_orean, embedding_class, noetherian_verdicts, quotient_class

    orep, O = check_orean(F)
    rep.check("orean", O is not None, orep.failed)
    if O is None:
        return
    nv = noetherian_verdicts(check_noetherian(O, modular=False))
    rep.check("noetherian", all(nv.values()), nv)
    _, d = (exact_meet_check if meet else exact_join_check)(O)
    rep.check("exact-meet-decomposition" if meet else "exact-join-decomposition", d is not None)
    rep.check("embeddings-are-left", set(embedding_class(O)) == set(b.M))
    rep.check("quotients-are-right", set(quotient_class(O)) == set(b.E))


def optimality_check(b: Bicategory, other: Form, join: bool = True) -> CheckReport:
    """The synthesized form embeds fully and injectively into ``other``."""
    from .formcore import find_full_embedding

    G, _ = (synthesize_ejd_form if join else synthesize_emd_form)(b, check=False)
    res = find_full_embedding(G, other)
    rep = CheckReport(f"optimality {G.label} -> {other.label}")
    rep.check("full-embedding", res.found, res.certificate)
    rep.data.update(status=res.status, nodes=res.nodes, mapping=res.mapping)
    if res.status == "budget-exhausted":
        rep.reason = "budget-exhausted"
    return rep


# -- left exactness -----------------------------------------------------------------------


def _zero_object(c: FinCategory) -> int | None:
    for x in range(c.k):
        if all(len(c.hom(x, y)) == 1 and len(c.hom(y, x)) == 1 for y in range(c.k)):
            return x
    return None


def _coequalizes(c: FinCategory, e: int, u: int, v: int) -> bool:
    """``e`` is a coequalizer of the parallel pair (u, v)."""
    if c.table[e, u] != c.table[e, v]:
        return False
    x = c.cod[u]
    for y in range(c.k):
        hs = c.hom(x, y)
        ws = c.hom(c.cod[e], y)
        for h in hs:
            if c.table[h, u] != c.table[h, v]:
                continue
            if sum(1 for w in ws if c.table[w, e] == h) != 1:
                return False
    return True


def is_regular_epi(c: FinCategory, e: int) -> bool:
    x = c.dom[e]
    for w in range(c.k):
        hs = [int(h) for h in c.hom(w, x)]
        for i, u in enumerate(hs):
            for v in hs[i:]:
                if c.table[e, u] == c.table[e, v] and _coequalizes(c, e, u, v):
                    return True
    return False


def _kernel(c: FinCategory, z: int, f: int) -> CommutativeSquare | None:
    return pullback(c, f, int(c.hom(z, c.cod[f])[0]))


def _cokernel(c: FinCategory, z: int, f: int) -> CommutativeSquare | None:
    return pushout(c, f, int(c.hom(c.dom[f], z)[0]))


def _is_kernel(c: FinCategory, z: int, m: int) -> bool:
    co = _cokernel(c, z, m)
    if co is None:
        return False
    zero_in = int(c.hom(z, c.cod[co.right])[0])
    return is_pullback(c, CommutativeSquare(int(c.hom(c.dom[m], z)[0]), m, zero_in, co.right))


def pointed_reformulations(b: Bicategory) -> CheckReport:
    """Kernel/cokernel forms of B1, B2 and B5 in a pointed category."""
    c = b.cat
    rep = CheckReport(f"pointed {b.label}")
    z = _zero_object(c)
    if z is None:
        rep.reason = "not-pointed"
        return rep
    b1a = CheckReport("b1a")
    _b1a(b, b1a)
    bad1 = []
    for top in sorted(b.E):
        for m in [m for m in sorted(b.M) if c.dom[m] == c.dom[top]]:
            for e in b.right_out_of(c.cod[m]):
                val = c.table[e, m]
                for right in c.hom(c.cod[top], c.cod[e]):
                    if int(right) not in b.M or c.table[right, top] != val:
                        continue
                    k = _kernel(c, z, e)
                    if k is None or not b.factors_through(m, k.left):
                        continue
                    sq = CommutativeSquare(top, m, int(right), e)
                    if not is_pullback(c, sq):
                        bad1.append(_sq(c, sq))
    rep.record("B1*", bad1 + ([] if b1a.ok else ["pullback of a right morphism along a left one is not right"]))
    bad2 = []
    for e in sorted(b.E):
        k = _kernel(c, z, e)
        if k is None:
            bad2.append(c.names[e])
            continue
        sq = CommutativeSquare(k.left, int(c.hom(c.dom[k.left], z)[0]), e, int(c.hom(z, c.cod[e])[0]))
        if not is_pushout(c, sq):
            bad2.append(c.names[e])
    rep.record("B2*", bad2)
    bad5 = []
    for sq in _squares(c, b.E, b.M):
        m, mp = sq.left, sq.right
        if _is_kernel(c, z, m) and not _is_kernel(c, z, mp):
            bad5.append({"m": c.names[m], "m'": c.names[mp]})
    rep.record("B5*", bad5)
    return rep


def left_exact_bicat_check(b: Bicategory) -> CheckReport:
    """Left exactness of the subobject/quotient pair against B2 and the dual of B4."""
    from .factor import pair_exactness
    from .orean import as_orean
    from .zoo import e_quotients_form, m_subobjects_form

    c = b.cat
    rep = CheckReport(f"left-exact {b.label}")
    b0 = check_axiom(b, "B0")
    rep.check("B0", b0.ok, b0.failed)
    if not b0.ok:
        rep.reason = "precondition"
        return rep
    Fs, Fe = as_orean(m_subobjects_form(c, sorted(b.M))), as_orean(e_quotients_form(c, sorted(b.E)))
    ex = pair_exactness(Fs, Fe)
    left_exact = bool(ex["left_exact"])
    b2 = check_axiom(b, "B2").ok
    b2p = check_axiom(b, "B2'").ok
    db4 = check_axiom(b, "B4", dual=True).ok
    rep.data.update(left_exact=left_exact, B2=b2, B2_prime=b2p, dual_B4=db4)
    rep.check("left-exact-iff-B2-and-dual-B4", left_exact == (b2 and db4), rep.data.copy())
    rep.check("B2-iff-B2'", b2 == b2p)
    initials = [x for x in range(c.k) if all(len(c.hom(x, y)) == 1 for y in range(c.k))]
    if left_exact and initials:
        rep.record("right-iff-regular-epi", [c.names[f] for f in range(c.n) if (f in b.E) != is_regular_epi(c, f)])
        rep.record("left-iff-mono", [c.names[f] for f in range(c.n) if (f in b.M) != c.is_mono(f)])
    if _zero_object(c) is not None:
        p = pointed_reformulations(b)
        rep.data["pointed"] = dict(p.results)
        direct = {"B1*": "B1", "B2*": "B2", "B5*": "B5"}
        if left_exact:
            v = axiom_verdicts(b)
            for star, plain in direct.items():
                rep.check(f"{star}-iff-{plain}", p.results[star] == v[plain], {star: p.results[star], plain: v[plain]})
    return rep
