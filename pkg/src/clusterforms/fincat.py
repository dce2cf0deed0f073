"""Finite categories stored as explicit composition tables."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .report import CheckReport

SCHEMA = "fincat/1"

FLAGS = ("mono", "epi", "split_mono", "split_epi", "iso")


class FinCategory:
    """Objects ``0..k-1`` and morphisms ``0..n-1`` with a total composition table.

    ``table[g, f]`` is the id of ``g∘f`` when ``dom g == cod f`` and -1
    otherwise.  Instances are treated as immutable once built.
    """

    def __init__(
        self,
        objects: Sequence[str],
        dom: Sequence[int],
        cod: Sequence[int],
        identity: Sequence[int],
        compose: Mapping[tuple[int, int], int] | np.ndarray,
        names: Sequence[str] | None = None,
    ):
        self.objects = tuple(str(o) for o in objects)
        self.dom = tuple(int(x) for x in dom)
        self.cod = tuple(int(x) for x in cod)
        self.identity = tuple(int(x) for x in identity)
        n = len(self.dom)
        self.names = tuple(names) if names is not None else tuple(f"m{i}" for i in range(n))
        # entries pointing outside the id range are kept aside for validation
        self.dangling: list[tuple] = []
        if isinstance(compose, np.ndarray):
            self.table = compose.astype(np.int64)
        else:
            self.table = np.full((n, n), -1, dtype=np.int64)
            for (g, f), h in compose.items():
                if not (0 <= g < n and 0 <= f < n):
                    self.dangling.append((g, f, h))
                    continue
                self.table[g, f] = h
        for x in (*self.dom, *self.cod):
            if not 0 <= x < len(self.objects):
                self.dangling.append(("object", x))
        for i in self.identity:
            if not 0 <= i < n:
                self.dangling.append(("identity", i))
        bad = (self.table >= n) | (self.table < -1)
        for g, f in zip(*np.nonzero(bad)):
            self.dangling.append((int(g), int(f), int(self.table[g, f])))

    # -- basic access -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.dom)

    @property
    def k(self) -> int:
        return len(self.objects)

    def compose(self, g: int, f: int) -> int:
        h = int(self.table[g, f])
        if h < 0:
            raise ValueError(f"morphisms {g} and {f} are not composable")
        return h

    def chain(self, *ms: int) -> int:
        """Compose right to left: ``chain(h, g, f) == h∘g∘f``."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    def object_index(self, name: str) -> int:
        return self.objects.index(name)

    @cached_property
    def _homs(self) -> dict[tuple[int, int], np.ndarray]:
        buckets: dict[tuple[int, int], list[int]] = {}
        for m in range(self.n):
            buckets.setdefault((self.dom[m], self.cod[m]), []).append(m)
        return {key: np.array(v, dtype=np.int64) for key, v in buckets.items()}

    def hom(self, a: int, b: int) -> np.ndarray:
        return self._homs.get((a, b), np.empty(0, dtype=np.int64))

    @cached_property
    def into(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(m for m in range(self.n) if self.cod[m] == x) for x in range(self.k))

    @cached_property
    def out_of(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(m for m in range(self.n) if self.dom[m] == x) for x in range(self.k))

    def is_identity(self, m: int) -> bool:
        return self.identity[self.dom[m]] == m

    def composable_pairs(self) -> Iterable[tuple[int, int]]:
        for f in range(self.n):
            for g in self.out_of[self.cod[f]]:
                yield g, f

    @cached_property
    def opposite(self) -> FinCategory:
        """Same ids, dom/cod swapped, ``table_op[f, g] = table[g, f]``."""
        op = FinCategory(self.objects, self.cod, self.dom, self.identity, self.table.T.copy(), self.names)
        op.__dict__["opposite"] = self
        return op

    # -- morphism classification -------------------------------------------

    @cached_property
    def flags(self) -> tuple[frozenset[str], ...]:
        return tuple(_flags(self, f) for f in range(self.n))

    def is_mono(self, f: int) -> bool:
        return "mono" in self.flags[f]

    def is_epi(self, f: int) -> bool:
        return "epi" in self.flags[f]

    def is_iso(self, f: int) -> bool:
        return "iso" in self.flags[f]

    def inverse(self, f: int) -> int | None:
        for r in self.hom(self.cod[f], self.dom[f]):
            if self.table[r, f] == self.identity[self.dom[f]] and self.table[f, r] == self.identity[self.cod[f]]:
                return int(r)
        return None

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        comp = [[int(g), int(f), int(self.table[g, f])] for g, f in zip(*np.nonzero(self.table >= 0))]
        return {
            "schema": SCHEMA,
            "objects": list(self.objects),
            "morphisms": [
                {"id": m, "dom": self.objects[self.dom[m]], "cod": self.objects[self.cod[m]], "name": self.names[m]}
                for m in range(self.n)
            ],
            "identity": {self.objects[x]: self.identity[x] for x in range(self.k)},
            "compose": comp,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> FinCategory:
        if doc.get("schema", SCHEMA) != SCHEMA:
            raise ValueError(f"expected schema {SCHEMA}, got {doc.get('schema')}")
        objects = [str(o) for o in doc["objects"]]
        index = {o: i for i, o in enumerate(objects)}
        mors = sorted(doc["morphisms"], key=lambda m: m["id"])
        if [m["id"] for m in mors] != list(range(len(mors))):
            raise ValueError("morphism ids must be 0..n-1")
        dom = [index.get(str(m["dom"]), -1) for m in mors]
        cod = [index.get(str(m["cod"]), -1) for m in mors]
        names = [m.get("name", f"m{m['id']}") for m in mors]
        identity = [doc["identity"].get(o, -1) for o in objects]
        compose = {(g, f): h for g, f, h in doc["compose"]}
        return cls(objects, dom, cod, identity, compose, names)

    def __repr__(self) -> str:
        return f"FinCategory({self.k} objects, {self.n} morphisms)"


def _flags(c: FinCategory, f: int) -> frozenset[str]:
    out = set()
    a, b = c.dom[f], c.cod[f]
    mono = all(len(set(c.table[f, c.hom(w, a)].tolist())) == len(c.hom(w, a)) for w in range(c.k))
    epi = all(len(set(c.table[c.hom(b, z), f].tolist())) == len(c.hom(b, z)) for z in range(c.k))
    back = c.hom(b, a)
    split_mono = any(c.table[r, f] == c.identity[a] for r in back)
    split_epi = any(c.table[f, s] == c.identity[b] for s in back)
    if mono:
        out.add("mono")
    if epi:
        out.add("epi")
    if split_mono:
        out.add("split_mono")
    if split_epi:
        out.add("split_epi")
    if c.inverse(f) is not None:
        out.add("iso")
    return frozenset(out)


def morphism_flags(c: FinCategory, f: int) -> frozenset[str]:
    return c.flags[f]


def validate_category(c: FinCategory) -> CheckReport:
    rep = CheckReport("category")
    if c.dangling:
        rep.reason = "malformed-table"
        rep.record("ids-resolve", [list(d) for d in c.dangling])
        return rep
    rep.record("ids-resolve")
    domain_bad = []
    for g in range(c.n):
        for f in range(c.n):
            h = int(c.table[g, f])
            composable = c.dom[g] == c.cod[f]
            if composable and (h < 0 or c.dom[h] != c.dom[f] or c.cod[h] != c.cod[g]):
                domain_bad.append((g, f, h))
            elif not composable and h >= 0:
                domain_bad.append((g, f, h))
    rep.record("composition-domain", domain_bad)
    if domain_bad:
        return rep
    ident_bad = [(x, i) for x, i in enumerate(c.identity) if c.dom[i] != x or c.cod[i] != x]
    for f in range(c.n):
        if c.table[c.identity[c.cod[f]], f] != f or c.table[f, c.identity[c.dom[f]]] != f:
            ident_bad.append(("unit", f))
    rep.record("identity", ident_bad)
    assoc_bad = []
    for f in range(c.n):
        for g in c.out_of[c.cod[f]]:
            gf = c.table[g, f]
            for h in c.out_of[c.cod[g]]:
                if c.table[h, gf] != c.table[c.table[h, g], f]:
                    assoc_bad.append((int(h), int(g), int(f)))
    rep.record("associativity", assoc_bad)
    return rep


def opposite(c: FinCategory) -> FinCategory:
    return c.opposite


# -- pullbacks and pushouts ---------------------------------------------------


@dataclass(frozen=True)
class CommutativeSquare:
    """A square ``right∘top == bottom∘left``::

        P --top--> B
        |left      |right
        A --bottom-> C
    """

    top: int
    left: int
    right: int
    bottom: int
    kind: str = "plain"


def _cones(c: FinCategory, f: int, g: int, q: int) -> set[tuple[int, int]]:
    h1, h2 = c.hom(q, c.dom[f]), c.hom(q, c.dom[g])
    if not len(h1) or not len(h2):
        return set()
    eq = c.table[f, h1][:, None] == c.table[g, h2][None, :]
    return {(int(h1[i]), int(h2[j])) for i, j in zip(*np.nonzero(eq))}


def _mediates(c: FinCategory, p1: int, p2: int, cones: list[set]) -> bool:
    apex = c.dom[p1]
    for q, wanted in enumerate(cones):
        us = c.hom(q, apex)
        if len(us) != len(wanted):
            return False
        if not len(us):
            continue
        got = set(zip(c.table[p1, us].tolist(), c.table[p2, us].tolist()))
        if got != wanted:
            return False
    return True


def is_pullback(c: FinCategory, sq: CommutativeSquare) -> bool:
    """Exhaustive universal-property test of ``sq`` as a pullback of (bottom, right)."""
    if c.table[sq.right, sq.top] < 0 or c.table[sq.right, sq.top] != c.table[sq.bottom, sq.left]:
        return False
    cones = [_cones(c, sq.bottom, sq.right, q) for q in range(c.k)]
    return _mediates(c, sq.left, sq.top, cones)


def is_pushout(c: FinCategory, sq: CommutativeSquare) -> bool:
    return is_pullback(c.opposite, _transpose(sq))


def _transpose(sq: CommutativeSquare, kind: str = "plain") -> CommutativeSquare:
    return CommutativeSquare(top=sq.bottom, left=sq.right, right=sq.left, bottom=sq.top, kind=kind)


def pullback(c: FinCategory, f: int, g: int) -> CommutativeSquare | None:
    """Pullback of ``f: A→C`` and ``g: B→C``; least apex id, then least legs."""
    if c.cod[f] != c.cod[g]:
        raise ValueError("pullback needs a common codomain")
    return _pullbacks(c)(f, g)


def pushout(c: FinCategory, f: int, g: int) -> CommutativeSquare | None:
    """Pushout of ``f: P→A`` and ``g: P→B``; returned with top=f, left=g."""
    if c.dom[f] != c.dom[g]:
        raise ValueError("pushout needs a common domain")
    sq = _pullbacks(c.opposite)(f, g)
    return None if sq is None else _transpose(sq, "pushout")


def _pullbacks(c: FinCategory):
    cache = c.__dict__.setdefault("_pullback_cache", {})

    def compute(f: int, g: int) -> CommutativeSquare | None:
        key = (f, g)
        if key in cache:
            return cache[key]
        cones = [_cones(c, f, g, q) for q in range(c.k)]
        sizes = [len(s) for s in cones]
        found = None
        for p in range(c.k):
            if any(len(c.hom(q, p)) != sizes[q] for q in range(c.k)):
                continue
            for p1, p2 in sorted(cones[p]):
                if _mediates(c, p1, p2, cones):
                    found = CommutativeSquare(top=p2, left=p1, right=g, bottom=f, kind="pullback")
                    break
            if found:
                break
        cache[key] = found
        return found

    return compute


# -- factorization systems -------------------------------------------------------


def _closed_under_composition(c: FinCategory, cls: frozenset[int]) -> list:
    return [(int(g), int(f)) for f in cls for g in c.out_of[c.cod[f]] if g in cls and int(c.table[g, f]) not in cls]


def diagonal_failures(c: FinCategory, e: int, m: int) -> list[tuple[int, int, int]]:
    """Commutative squares v∘e = m∘u without exactly one diagonal d (d∘e = u, m∘d = v)."""
    a, b = c.dom[e], c.cod[e]
    x, y = c.dom[m], c.cod[m]
    us, vs = c.hom(a, x), c.hom(b, y)
    if not len(us) or not len(vs):
        return []
    ds = c.hom(b, x)
    diag: dict[tuple[int, int], int] = {}
    for d in ds:
        key = (int(c.table[d, e]), int(c.table[m, d]))
        diag[key] = diag.get(key, 0) + 1
    bad = []
    ve = c.table[vs, e]
    mu = c.table[m, us]
    for i, j in zip(*np.nonzero(ve[:, None] == mu[None, :])):
        u, v = int(us[j]), int(vs[i])
        if diag.get((u, v), 0) != 1:
            bad.append((u, v, diag.get((u, v), 0)))
    return bad


def factorization_system_report(c: FinCategory, E: Iterable[int], M: Iterable[int]) -> CheckReport:
    """(E, M) is a proper factorization system: classes of epis/monos containing the
    isos, closed under composition, every morphism factors, unique diagonals."""
    E, M = frozenset(int(e) for e in E), frozenset(int(m) for m in M)
    rep = CheckReport("factorization-system")
    isos = frozenset(f for f in range(c.n) if c.is_iso(f))
    rep.record("E-epis", sorted(f for f in E if not c.is_epi(f)))
    rep.record("M-monos", sorted(f for f in M if not c.is_mono(f)))
    rep.record("isos-in-both", sorted(isos - (E & M)))
    rep.record("E-and-M-are-isos", sorted((E & M) - isos))
    rep.record("E-composition", _closed_under_composition(c, E))
    rep.record("M-composition", _closed_under_composition(c, M))
    no_fact = []
    for f in range(c.n):
        if not any(c.table[m, e] == f for e in E if c.dom[e] == c.dom[f] for m in M if c.dom[m] == c.cod[e] and c.cod[m] == c.cod[f]):
            no_fact.append(c.names[f])
    rep.record("factorizes", no_fact)
    diag = []
    for e in sorted(E):
        for m in sorted(M):
            for u, v, k in diagonal_failures(c, e, m):
                diag.append({"e": c.names[e], "m": c.names[m], "u": c.names[u], "v": c.names[v], "diagonals": k})
    rep.record("unique-diagonal", diag)
    return rep
