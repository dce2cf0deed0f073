"""Deterministic generators for the small categories and forms used as examples.

Concrete categories carry ``carriers`` (object sizes, carrier ``{0..k-1}``)
and ``maps`` (each morphism as a tuple of images) so that forms can be built
from semantic clusters.  Base points of pointed sets are element 0.
"""

from __future__ import annotations

import itertools
import json
import os
import warnings
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import numpy as np

from .fincat import FinCategory
from .formcore import Form, Operator, form_from_relation

CACHE_ENV = "CLUSTERFORMS_CACHE"
SIZE_GUARD = 4


# -- categories ---------------------------------------------------------------


def _concrete(objects: Sequence[str], carriers: Sequence[int], homs: dict, kind: str) -> FinCategory:
    """Category of the given functions; ``homs[(a, b)]`` lists tuples of images."""
    dom, cod, maps, names = [], [], [], []
    index = {}
    for a in range(len(objects)):
        for b in range(len(objects)):
            for t in homs.get((a, b), ()):
                index[a, b, t] = len(maps)
                dom.append(a)
                cod.append(b)
                maps.append(t)
                names.append(f"{objects[a]}->{objects[b]}:{''.join(map(str, t)) or '-'}")
    n = len(maps)
    table = np.full((n, n), -1, dtype=np.int64)
    for f in range(n):
        for g in range(n):
            if dom[g] == cod[f]:
                table[g, f] = index[dom[f], cod[g], tuple(maps[g][i] for i in maps[f])]
    identity = [index[a, a, tuple(range(carriers[a]))] for a in range(len(objects))]
    c = FinCategory(objects, dom, cod, identity, table, names)
    c.carriers = tuple(carriers)
    c.maps = tuple(maps)
    c.kind = kind
    return c


def _guard(n: int, name: str):
    if n > SIZE_GUARD:
        warnings.warn(f"{name}({n}) exceeds the advisory size {SIZE_GUARD}", stacklevel=3)


@lru_cache(maxsize=None)
def finset_skeleton(n: int) -> FinCategory:
    """Sets {0..k-1} for k = 0..n with all functions."""
    _guard(n, "finset_skeleton")
    sizes = list(range(n + 1))
    homs = {(a, b): list(itertools.product(range(b), repeat=a)) for a in sizes for b in sizes}
    return _concrete([f"S{k}" for k in sizes], sizes, homs, "sets")


@lru_cache(maxsize=None)
def pointed_finset_skeleton(n: int) -> FinCategory:
    """Pointed sets {0..k-1} (base point 0) for k = 1..n with base-point-preserving maps."""
    _guard(n, "pointed_finset_skeleton")
    sizes = list(range(1, n + 1))
    homs = {}
    for i, a in enumerate(sizes):
        for j, b in enumerate(sizes):
            homs[i, j] = [(0,) + rest for rest in itertools.product(range(b), repeat=a - 1)]
    c = _concrete([f"P{k}" for k in sizes], sizes, homs, "pointed sets")
    return c


@lru_cache(maxsize=None)
def chain_category(k: int) -> FinCategory:
    """The poset 0 < 1 < ... < k as a category."""
    dom, cod, names = [], [], []
    index = {}
    for a in range(k + 1):
        for b in range(a, k + 1):
            index[a, b] = len(dom)
            dom.append(a)
            cod.append(b)
            names.append(f"{a}->{b}" if a != b else f"id{a}")
    compose = {(index[b, c], index[a, b]): index[a, c] for a, b in index for (b2, c) in index if b2 == b}
    return FinCategory([str(i) for i in range(k + 1)], dom, cod, [index[a, a] for a in range(k + 1)], compose, names)


def _cyclic(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def _klein() -> list[list[int]]:
    return [[a ^ b for b in range(4)] for a in range(4)]


def _symmetric3() -> list[list[int]]:
    perms = list(itertools.permutations(range(3)))
    return [[perms.index(tuple(p[q[i]] for i in range(3))) for q in perms] for p in perms]


GROUPS = {
    1: [("1", _cyclic(1))],
    2: [("Z2", _cyclic(2))],
    3: [("Z3", _cyclic(3))],
    4: [("Z4", _cyclic(4)), ("V4", _klein())],
    5: [("Z5", _cyclic(5))],
    6: [("Z6", _cyclic(6)), ("S3", _symmetric3())],
    7: [("Z7", _cyclic(7))],
}


def _homomorphisms(g: list[list[int]], h: list[list[int]]) -> list[tuple[int, ...]]:
    out = []
    for t in itertools.product(range(len(h)), repeat=len(g)):
        if t[0] != 0:
            continue
        if all(t[g[a][b]] == h[t[a]][t[b]] for a in range(len(g)) for b in range(len(g))):
            out.append(t)
    return out


def _cache_dir(cache_dir: str | os.PathLike | None) -> Path | None:
    chosen = cache_dir or os.environ.get(CACHE_ENV)
    return Path(chosen) if chosen else None


def groups_category(max_order: int = 4, cache_dir: str | os.PathLike | None = None) -> FinCategory:
    """One group per isomorphism class of order ≤ max_order (≤ 7), all homomorphisms.

    Element 0 is the identity of every group.  Homomorphism lists are cached
    as JSON under ``cache_dir``, falling back to the directory named by ``CLUSTERFORMS_CACHE``.
    """
    if max_order > 7:
        raise ValueError("groups_category supports max_order <= 7")
    return _groups_category(max_order, str(_cache_dir(cache_dir) or ""))


@lru_cache(maxsize=None)
def _groups_category(max_order: int, cache: str) -> FinCategory:
    groups = [grp for order in range(1, max_order + 1) for grp in GROUPS[order]]
    names = [name for name, _ in groups]
    tables = [t for _, t in groups]
    path = Path(cache) / f"groups-{max_order}.json" if cache else None
    if path is not None and path.exists():
        raw = json.loads(path.read_text())
        homs = {(a, b): [tuple(t) for t in raw[f"{a},{b}"]] for a in range(len(groups)) for b in range(len(groups))}
    else:
        homs = {(a, b): _homomorphisms(tables[a], tables[b]) for a in range(len(groups)) for b in range(len(groups))}
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps({f"{a},{b}": [list(t) for t in v] for (a, b), v in homs.items()}))
    c = _concrete(names, [len(t) for t in tables], homs, "groups")
    c.tables = tuple(tables)
    return c


# -- semantic payloads ----------------------------------------------------------


def subsets_of(n: int) -> list[frozenset]:
    return [frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)]


def set_partitions(n: int) -> list[tuple[int, ...]]:
    """Restricted growth strings: element i lies in block rgs[i]."""
    out = []

    def grow(prefix: list[int], blocks: int):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for b in range(blocks + 1):
            grow(prefix + [b], max(blocks, b + 1))

    grow([], 0)
    return out


def blocks(rgs: tuple[int, ...]) -> list[frozenset]:
    k = max(rgs) + 1 if rgs else 0
    return [frozenset(i for i, b in enumerate(rgs) if b == j) for j in range(k)]


def show_set(s) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


def show_partition(rgs: tuple[int, ...]) -> str:
    return "|".join("".join(map(str, sorted(b))) for b in blocks(rgs)) or "-"


def _image(t: tuple[int, ...], s) -> frozenset:
    return frozenset(t[i] for i in s)


def _maps(c: FinCategory) -> tuple:
    maps = getattr(c, "maps", None)
    if maps is None:
        raise ValueError("this form needs a concrete category (functions between finite sets)")
    return maps


def _respects(t: tuple[int, ...], r: tuple[int, ...], s: tuple[int, ...]) -> bool:
    """xRy ⇒ t(x) S t(y)."""
    return all(s[t[x]] == s[t[y]] for x in range(len(r)) for y in range(x + 1, len(r)) if r[x] == r[y])


def subsets_form(c: FinCategory) -> Form:
    maps = _maps(c)
    payloads = [subsets_of(n) for n in c.carriers]
    return form_from_relation(c, payloads, lambda f, b, a: _image(maps[f], a) <= b, "subsets", show_set)


def equivrel_form(c: FinCategory) -> Form:
    maps = _maps(c)
    payloads = [set_partitions(n) for n in c.carriers]
    return form_from_relation(c, payloads, lambda f, s, r: _respects(maps[f], r, s), "equivrel", show_partition)


def quotients_form(c: FinCategory) -> Form:
    """Equivalence relations on pointed sets (the class of the base point is an ordinary class)."""
    F = equivrel_form(c)
    F.label = "quotients"
    return F


def exaq_pairs(n: int) -> list[tuple[frozenset, tuple[int, ...]]]:
    out = []
    for r in set_partitions(n):
        out.append((frozenset(), r))
        out.extend((b, r) for b in blocks(r))
    return out


def exaq_form(c: FinCategory) -> Form:
    """Pairs (A, R): R an equivalence relation, A empty or one class of R."""
    maps = _maps(c)
    payloads = [exaq_pairs(n) for n in c.carriers]

    def related(f, bs, ar):
        return _image(maps[f], ar[0]) <= bs[0] and _respects(maps[f], ar[1], bs[1])

    return form_from_relation(
        c, payloads, related, "exaq", lambda p: f"({show_set(p[0])},{show_partition(p[1])})"
    )


def antichain_palettes(n: int) -> list[tuple[frozenset, ...]]:
    """Nonempty antichains of subsets of {0..n-1}, each as a sorted tuple."""
    subs = subsets_of(n)
    out = []
    for mask in range(1, 1 << len(subs)):
        chosen = [subs[i] for i in range(len(subs)) if mask >> i & 1]
        if all(not (a < b) for a in chosen for b in chosen):
            out.append(tuple(sorted(chosen, key=lambda s: (len(s), sorted(s)))))
    out.sort(key=lambda p: (len(p), [(len(s), sorted(s)) for s in p]))
    return out


def maximal_sets(family) -> tuple[frozenset, ...]:
    fam = set(family)
    keep = [a for a in fam if not any(a < b for b in fam)]
    return tuple(sorted(keep, key=lambda s: (len(s), sorted(s))))


def show_palette(p) -> str:
    return "[" + ",".join(show_set(s) for s in p) + "]"


def palettes_form(c: FinCategory) -> Form:
    maps = _maps(c)
    payloads = [antichain_palettes(n) for n in c.carriers]

    def related(f, q, p):
        return all(any(_image(maps[f], a) <= b for b in q) for a in p)

    return form_from_relation(c, payloads, related, "palettes", show_palette)


def _subgroups(table: list[list[int]]) -> list[frozenset]:
    n = len(table)
    out = []
    for mask in range(1 << n):
        s = frozenset(i for i in range(n) if mask >> i & 1)
        if 0 in s and all(table[a][b] in s for a in s for b in s):
            out.append(s)
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def subgroup_form(c: FinCategory) -> Form:
    """Subgroups with B ≥_f A iff f(A) ⊆ B."""
    maps = _maps(c)
    tables = getattr(c, "tables", None)
    if tables is None:
        raise ValueError("subgroup_form needs groups_category")
    payloads = [_subgroups(t) for t in tables]
    return form_from_relation(c, payloads, lambda f, b, a: _image(maps[f], a) <= b, "subgroups", show_set)


def constant_lattice_form(c: FinCategory, leq: np.ndarray, label: str = "constant") -> Form:
    """Every fiber is the same poset; y ≥_f x iff x ≤ y."""
    leq = np.asarray(leq, dtype=bool)
    k = len(leq)
    rel = [leq.T.copy() for _ in range(c.n)]
    return Form(c, [[str(i) for i in range(k)] for _ in range(c.k)], rel, label)


# -- operators on palettes -------------------------------------------------------


def palette_operators(P: Form, G: Form) -> dict[str, Operator]:
    """The union, intersection, singleton and block-merging operators."""
    c = P.base
    sub_index = [{s: i for i, s in enumerate(G.payload[x])} for x in range(c.k)]
    pal_index = [{p: i for i, p in enumerate(P.payload[x])} for x in range(c.k)]

    def union(x, i):
        return sub_index[x][frozenset().union(*P.payload[x][i])]

    def inter(x, i):
        pal = P.payload[x][i]
        return sub_index[x][frozenset.intersection(*pal)]

    def single(x, i):
        return pal_index[x][(G.payload[x][i],)]

    def merge(x, i):
        groups = [set(a) for a in P.payload[x][i]]
        changed = True
        while changed:
            changed = False
            for a, b in itertools.combinations(range(len(groups)), 2):
                if groups[a] & groups[b]:
                    groups[a] |= groups.pop(b)
                    changed = True
                    break
        return pal_index[x][maximal_sets(frozenset(g) for g in groups)]

    return {
        "union": Operator.from_function(P, G, union, "union"),
        "intersection": Operator.from_function(P, G, inter, "intersection"),
        "singleton": Operator.from_function(G, P, single, "singleton"),
        "merge": Operator.from_function(P, P, merge, "merge"),
    }


def collapse_operator(S: Form, E: Form) -> Operator:
    """Subsets → equivalence relations: the subset becomes one class, the rest singletons."""
    c = S.base
    index = [{r: i for i, r in enumerate(E.payload[x])} for x in range(c.k)]

    def collapse(x, i):
        a = S.payload[x][i]
        n = c.carriers[x]
        label, rgs, nxt = {}, [], 0
        for v in range(n):
            key = "A" if v in a else v
            if key not in label:
                label[key] = nxt
                nxt += 1
            rgs.append(label[key])
        return index[x][tuple(rgs)]

    return Operator.from_function(S, E, collapse, "collapse")


def constant_operator(src: Form, dst: Form, pick) -> Operator:
    """Send every cluster over x to ``pick(x)``."""
    return Operator.from_function(src, dst, lambda x, i: pick(x), "constant")


# -- forms from morphism classes ---------------------------------------------------


def _classes_by_factorization(c: FinCategory, items: list, equivalent) -> list[list]:
    reps: list[list] = []
    for it in items:
        for cls in reps:
            if equivalent(cls[0], it):
                cls.append(it)
                break
        else:
            reps.append([it])
    return reps


def _factor_through(c: FinCategory, t: int, target: int) -> int | None:
    """Some u with t∘u == target, or None."""
    for u in c.hom(c.dom[target], c.dom[t]):
        if c.table[t, u] == target:
            return int(u)
    return None


def m_subobjects_form(c: FinCategory, M: Sequence[int], label: str = "M-subobjects") -> Form:
    """Classes of M-morphisms into each object; [t] ≥_f [s] iff t∘u = f∘s for some u."""
    M = sorted(set(M))
    payloads = []
    for x in range(c.k):
        into = [m for m in M if c.cod[m] == x]
        cls = _classes_by_factorization(
            c, into, lambda a, b: _factor_through(c, a, b) is not None and _factor_through(c, b, a) is not None
        )
        payloads.append([cl[0] for cl in cls])

    def related(f, t, s):
        return _factor_through(c, t, int(c.table[f, s])) is not None

    return form_from_relation(c, payloads, related, label, lambda m: c.names[m])


def _cofactor(c: FinCategory, e: int, target: int) -> int | None:
    """Some v with v∘e == target, or None."""
    for v in c.hom(c.cod[e], c.cod[target]):
        if c.table[v, e] == target:
            return int(v)
    return None


def e_quotients_form(c: FinCategory, E: Sequence[int], label: str = "E-quotients") -> Form:
    """Classes of E-morphisms out of each object; [e'] ≥_f [e] iff v∘e = e'∘f for some v."""
    E = sorted(set(E))
    payloads = []
    for x in range(c.k):
        out = [e for e in E if c.dom[e] == x]
        cls = _classes_by_factorization(
            c, out, lambda a, b: _cofactor(c, a, b) is not None and _cofactor(c, b, a) is not None
        )
        payloads.append([cl[0] for cl in cls])

    def related(f, e2, e1):
        return _cofactor(c, e1, int(c.table[e2, f])) is not None

    return form_from_relation(c, payloads, related, label, lambda m: c.names[m])


def _subquotient_related(c: FinCategory, f: int, big: tuple[int, int], small: tuple[int, int]) -> bool:
    """[e',m'] ≥_f [e,m]: m'u = f m and e'u = s e for some u, s."""
    e2, m2 = big
    e1, m1 = small
    u = _factor_through(c, m2, int(c.table[f, m1]))
    if u is None:
        return False
    return _cofactor(c, e1, int(c.table[e2, u])) is not None


def subquotient_pairs(c: FinCategory, E: Sequence[int], M: Sequence[int], x: int) -> list[tuple[int, int]]:
    """Class representatives (least ids) of pairs (e, m) with dom e = dom m, cod m = x."""
    E, M = sorted(set(E)), sorted(set(M))
    pairs = [(e, m) for m in M if c.cod[m] == x for e in E if c.dom[e] == c.dom[m]]
    ident = c.identity[x]
    cls = _classes_by_factorization(
        c,
        pairs,
        lambda a, b: _subquotient_related(c, ident, a, b) and _subquotient_related(c, ident, b, a),
    )
    return [min(cl, key=lambda p: (p[1], p[0])) for cl in cls]


def subquotients_form(c: FinCategory, E: Sequence[int], M: Sequence[int], label: str = "subquotients") -> Form:
    payloads = [subquotient_pairs(c, E, M, x) for x in range(c.k)]
    return form_from_relation(
        c,
        payloads,
        lambda f, big, small: _subquotient_related(c, f, big, small),
        label,
        lambda p: f"[{c.names[p[0]]};{c.names[p[1]]}]",
    )


def epis(c: FinCategory) -> list[int]:
    return [f for f in range(c.n) if c.is_epi(f)]


def monos(c: FinCategory) -> list[int]:
    return [f for f in range(c.n) if c.is_mono(f)]


# -- the 2-chain ------------------------------------------------------------------


def _form_from_images(c: FinCategory, orders: list[np.ndarray], images: dict[int, list[int]], label: str, names) -> Form:
    """Orean form given by fiber orders (``ge``) and direct-image maps: B ≥_f A iff B ≥ f·A."""
    rel = []
    for f in range(c.n):
        ge = orders[c.cod[f]]
        img = images[f]
        rel.append(np.array([[ge[b, img[a]] for a in range(len(img))] for b in range(len(ge))], dtype=bool))
    return Form(c, names, rel, label)


def _chain_ge(k: int) -> np.ndarray:
    return np.array([[b >= a for a in range(k)] for b in range(k)], dtype=bool)


def two_chain_example():
    """The two noetherian forms over 0 → 1 → 2 and their factorization structures.

    Returns ``[(c, E, M, form), (c, E, M, form)]``; the first structure has only
    identities in E, the second has g in E and f, g∘f in M.
    """
    c = chain_category(2)
    f, g, gf = c.hom(0, 1)[0], c.hom(1, 2)[0], c.hom(0, 2)[0]
    ids = list(c.identity)
    ident = {m: list(range(k)) for m, k in zip(ids, (1, 2, 3))}
    first = _form_from_images(
        c,
        [_chain_ge(1), _chain_ge(2), _chain_ge(3)],
        {**ident, int(f): [0], int(g): [0, 1], int(gf): [0]},
        "two-chain-1",
        [["bot0"], ["bot1", "top1"], ["bot2", "mid2", "top2"]],
    )
    ident2 = {m: list(range(k)) for m, k in zip(ids, (1, 3, 2))}
    second = _form_from_images(
        c,
        [_chain_ge(1), _chain_ge(3), _chain_ge(2)],
        {**ident2, int(f): [0], int(g): [0, 0, 1], int(gf): [0]},
        "two-chain-2",
        [["bot0"], ["bot1", "mid1", "top1"], ["bot2", "top2"]],
    )
    every = list(range(c.n))
    return [
        (c, ids, every, first),
        (c, ids + [int(g)], ids + [int(f), int(gf)], second),
    ]


# -- catalog ------------------------------------------------------------------------

CATEGORIES = {
    "finset": (finset_skeleton, 3),
    "pointed": (pointed_finset_skeleton, 3),
    "chain": (chain_category, 2),
    "groups": (groups_category, 4),
}


FORMS = {
    "subsets": ("finset", subsets_form),
    "equivrel": ("finset", equivrel_form),
    "exaq": ("finset", exaq_form),
    "palettes": ("finset", palettes_form),
    "quotients": ("pointed", quotients_form),
    "subgroups": ("groups", subgroup_form),
    "m-subobjects": ("finset", lambda c: m_subobjects_form(c, monos(c))),
    "e-quotients": ("finset", lambda c: e_quotients_form(c, epis(c))),
    "subquotients": ("finset", lambda c: subquotients_form(c, epis(c), monos(c))),
}


def zoo_category(name: str, size: int | None = None) -> FinCategory:
    if name not in CATEGORIES:
        raise KeyError(f"unknown category {name!r}; choose from {sorted(CATEGORIES)}")
    build, default = CATEGORIES[name]
    return build(default if size is None else size)


def zoo_form(name: str, size: int | None = None) -> Form:
    if name in ("two-chain-1", "two-chain-2"):
        return two_chain_example()[int(name[-1]) - 1][3]
    if name not in FORMS:
        raise KeyError(f"unknown form {name!r}; choose from {sorted(FORMS) + ['two-chain-1', 'two-chain-2']}")
    cat, build = FORMS[name]
    return build(zoo_category(cat, size))


def zoo_names() -> list[str]:
    return sorted(CATEGORIES) + sorted(FORMS) + ["two-chain-1", "two-chain-2"]
