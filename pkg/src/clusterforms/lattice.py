"""Finite posets and bounded-lattice checks.

Elements are indices ``0..k-1``; ``leq[a, b]`` means ``a <= b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .report import CheckReport


@dataclass(eq=False)
class FinPoset:
    leq: np.ndarray
    elements: Sequence = field(default=())

    def __post_init__(self):
        self.leq = np.asarray(self.leq, dtype=bool)
        if not self.elements:
            self.elements = tuple(range(len(self.leq)))

    @property
    def size(self) -> int:
        return len(self.leq)


def poset_violations(p: FinPoset) -> dict[str, list]:
    L = p.leq
    k = len(L)
    refl = [a for a in range(k) if not L[a, a]]
    anti = [(a, b) for a, b in zip(*np.nonzero(L & L.T)) if a < b]
    # a<=b<=c with not a<=c
    trans = []
    if k:
        path = (L.astype(np.int64) @ L.astype(np.int64)) > 0
        trans = [(int(a), int(c)) for a, c in zip(*np.nonzero(path & ~L))]
    return {"reflexive": refl, "antisymmetric": [(int(a), int(b)) for a, b in anti], "transitive": trans}


def least_of(p: FinPoset, subset: Iterable[int]) -> int | None:
    """The minimum of ``subset``; None when there is none (even if minimal elements exist)."""
    s = list(subset)
    for a in s:
        if all(p.leq[a, b] for b in s):
            return a
    return None


def greatest_of(p: FinPoset, subset: Iterable[int]) -> int | None:
    s = list(subset)
    for a in s:
        if all(p.leq[b, a] for b in s):
            return a
    return None


def minimal_of(p: FinPoset, subset: Iterable[int]) -> list[int]:
    s = list(subset)
    return [a for a in s if not any(p.leq[b, a] and b != a for b in s)]


def maximal_of(p: FinPoset, subset: Iterable[int]) -> list[int]:
    s = list(subset)
    return [a for a in s if not any(p.leq[a, b] and b != a for b in s)]


def _bound_table(L: np.ndarray, upper: bool) -> tuple[np.ndarray, list]:
    """Join table when ``upper`` else meet table; -1 where the bound is missing."""
    k = len(L)
    table = np.full((k, k), -1, dtype=np.int64)
    missing = []
    for a in range(k):
        for b in range(a, k):
            cand = L[a] & L[b] if upper else L[:, a] & L[:, b]
            idx = np.nonzero(cand)[0]
            best = -1
            for c in idx:
                if upper and L[c, idx].all():
                    best = c
                    break
                if not upper and L[idx, c].all():
                    best = c
                    break
            table[a, b] = table[b, a] = best
            if best < 0:
                missing.append((a, b))
    return table, missing


def check_bounded_lattice(p: FinPoset) -> CheckReport:
    """Pass iff ``p`` is a bounded lattice; the data carries top, bottom, meet and join."""
    rep = CheckReport("bounded-lattice")
    viol = poset_violations(p)
    for law, bad in viol.items():
        rep.record("poset-" + law, bad)
    if any(viol.values()):
        rep.reason = "not-a-poset"
        return rep
    everything = range(p.size)
    top, bottom = greatest_of(p, everything), least_of(p, everything)
    rep.check("top", top is not None, maximal_of(p, everything))
    rep.check("bottom", bottom is not None, minimal_of(p, everything))
    join, no_join = _bound_table(p.leq, upper=True)
    meet, no_meet = _bound_table(p.leq, upper=False)
    rep.record("joins", no_join)
    rep.record("meets", no_meet)
    if rep.ok:
        rep.data.update(top=top, bottom=bottom, join=join, meet=meet)
    return rep


def lattice_law_violations(join: np.ndarray, meet: np.ndarray) -> list[tuple]:
    """Commutativity, associativity and absorption on all triples."""
    k = len(join)
    bad = []
    for a in range(k):
        for b in range(k):
            if join[a, b] != join[b, a] or meet[a, b] != meet[b, a]:
                bad.append(("commutative", a, b))
            if join[a, meet[a, b]] != a or meet[a, join[a, b]] != a:
                bad.append(("absorption", a, b))
            for c in range(k):
                if join[join[a, b], c] != join[a, join[b, c]] or meet[meet[a, b], c] != meet[a, meet[b, c]]:
                    bad.append(("associative", a, b, c))
    return bad


def powerset_poset(n: int) -> tuple[FinPoset, list[frozenset]]:
    subsets = [frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)]
    leq = np.array([[a <= b for b in subsets] for a in subsets], dtype=bool)
    return FinPoset(leq, subsets), subsets
