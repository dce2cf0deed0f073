"""Forms as cluster systems over a finite category, plus operators between them.

A form stores, for every object ``x``, a list of cluster labels, and for every
morphism ``f`` a boolean matrix ``rel[f]`` of shape
``(#clusters(cod f), #clusters(dom f))`` with ``rel[f][B, A]`` meaning B ≥_f A.
Relations are kept for composites too, so every axiom check is a table lookup.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .fincat import FinCategory
from .report import CheckReport

SCHEMA = "form/1"


class FormError(ValueError):
    """A construction produced tables that are not a form."""


class Form:
    def __init__(
        self,
        base: FinCategory,
        clusters: Sequence[Sequence[str]],
        rel: Sequence[np.ndarray],
        label: str = "",
        payload: Sequence[Sequence[Any]] | None = None,
    ):
        self.base = base
        self.clusters = tuple(tuple(str(c) for c in cs) for cs in clusters)
        self.rel = tuple(np.asarray(r, dtype=bool) for r in rel)
        self.label = label
        self.payload = tuple(tuple(p) for p in payload) if payload is not None else None
        self._cache: dict = {}

    def size(self, x: int) -> int:
        return len(self.clusters[x])

    @property
    def fiber_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.clusters)

    def ge(self, x: int) -> np.ndarray:
        """``ge(x)[B, A]`` iff B ≥ A in the fiber over ``x``."""
        return self.rel[self.base.identity[x]]

    def decode(self, x: int, i: int) -> Any:
        if self.payload is not None:
            return self.payload[x][i]
        return self.clusters[x][i]

    def describe(self, x: int, i: int) -> str:
        return f"{self.base.objects[x]}:{self.clusters[x][i]}"

    def same_tables(self, other: Form) -> bool:
        return (
            self.clusters == other.clusters
            and len(self.rel) == len(other.rel)
            and all(a.shape == b.shape and (a == b).all() for a, b in zip(self.rel, other.rel))
        )

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        objs = self.base.objects
        return {
            "schema": SCHEMA,
            "label": self.label,
            "base": self.base.to_dict(),
            "clusters": {objs[x]: list(cs) for x, cs in enumerate(self.clusters)},
            "rel": {str(f): ["".join("1" if v else "0" for v in row) for row in r] for f, r in enumerate(self.rel)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> Form:
        if doc.get("schema") != SCHEMA:
            raise ValueError(f"expected schema {SCHEMA}, got {doc.get('schema')}")
        base = FinCategory.from_dict(doc["base"])
        clusters = [doc["clusters"][o] for o in base.objects]
        rel = []
        for f in range(base.n):
            rows = doc["rel"][str(f)]
            mat = np.array([[ch == "1" for ch in row] for row in rows], dtype=bool)
            if not rows:
                mat = np.zeros((0, len(clusters[base.dom[f]])), dtype=bool)
            rel.append(mat)
        return cls(base, clusters, rel, doc.get("label", ""))

    @classmethod
    def from_json(cls, text: str) -> Form:
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"Form({self.label!r}, fibers={self.fiber_sizes})"


def form_from_relation(
    base: FinCategory,
    payloads: Sequence[Sequence[Any]],
    related: Callable[[int, Any, Any], bool],
    label: str,
    show: Callable[[Any], str] = str,
) -> Form:
    """Build a form from semantic clusters and a predicate ``related(f, B, A)`` for B ≥_f A."""
    rel = []
    for f in range(base.n):
        src, dst = payloads[base.dom[f]], payloads[base.cod[f]]
        rel.append(np.array([[related(f, b, a) for a in src] for b in dst], dtype=bool).reshape(len(dst), len(src)))
    clusters = [[show(p) for p in ps] for ps in payloads]
    return Form(base, clusters, rel, label, payloads)


# -- axioms -------------------------------------------------------------------


def shape_errors(F: Form) -> list:
    c = F.base
    bad = []
    if len(F.clusters) != c.k:
        bad.append(("objects", len(F.clusters), c.k))
    if len(F.rel) != c.n:
        bad.append(("morphisms", len(F.rel), c.n))
        return bad
    for f, r in enumerate(F.rel):
        want = (F.size(c.cod[f]), F.size(c.dom[f]))
        if r.shape != want:
            bad.append(("matrix", f, r.shape, want))
    return bad


def _composite_ok(F: Form, g: int, f: int) -> np.ndarray:
    """Instances C, A with C ≥_g B ≥_f A for some B but not C ≥_gf A."""
    via = (F.rel[g].astype(np.int32) @ F.rel[f].astype(np.int32)) > 0
    return via & ~F.rel[F.base.table[g, f]]


def validate_form(F: Form) -> CheckReport:
    rep = CheckReport(f"form {F.label}")
    shape = shape_errors(F)
    if shape:
        rep.reason = "shape-error"
        rep.record("shape", shape)
        return rep
    c = F.base
    f1, f3 = [], []
    for x in range(c.k):
        ge = F.ge(x)
        f1 += [(c.objects[x], int(a)) for a in np.nonzero(~np.diag(ge))[0]]
        anti = ge & ge.T & ~np.eye(len(ge), dtype=bool)
        f3 += [(c.objects[x], int(a), int(b)) for a, b in zip(*np.nonzero(anti)) if a < b]
    rep.record("F1-reflexive", f1)
    rep.record("F3-antisymmetric", f3)
    f2, total = [], 0
    for g, f in c.composable_pairs():
        bad = _composite_ok(F, g, f)
        if bad.any():
            total += int(bad.sum())
            if len(f2) < 5:
                cc, a = (int(v) for v in np.argwhere(bad)[0])
                b = int(np.nonzero(F.rel[g][cc] & F.rel[f][:, a])[0][0])
                f2.append({"g": g, "f": f, "C": cc, "B": b, "A": a})
    rep.record("F2-composition", f2, total)
    return rep


def is_valid_form(F: Form) -> bool:
    if "valid" not in F._cache:
        F._cache["valid"] = validate_form(F).ok
    return F._cache["valid"]


# -- constructions ------------------------------------------------------------


def dual_form(F: Form) -> Form:
    """Same clusters over the opposite base with every relation transposed (cached, involutive)."""
    if "dual" not in F._cache:
        label = F.label[5:-1] if F.label.startswith("dual(") else f"dual({F.label})"
        D = Form(F.base.opposite, F.clusters, [r.T.copy() for r in F.rel], label, F.payload)
        D._cache["dual"] = F
        F._cache["dual"] = D
    return F._cache["dual"]


def subform(F: Form, selection: Sequence[Sequence[int]], label: str | None = None, check: bool = True) -> Form:
    """Restrict to the chosen clusters per object; raises FormError if F2 breaks."""
    sel = [np.asarray(sorted(s), dtype=np.int64) for s in selection]
    c = F.base
    rel = [F.rel[f][np.ix_(sel[c.cod[f]], sel[c.dom[f]])] for f in range(c.n)]
    clusters = [[F.clusters[x][i] for i in sel[x]] for x in range(c.k)]
    payload = None if F.payload is None else [[F.payload[x][i] for i in sel[x]] for x in range(c.k)]
    G = Form(c, clusters, rel, label or f"sub({F.label})", payload)
    G._cache["selection"] = tuple(tuple(int(i) for i in s) for s in sel)
    if check:
        rep = validate_form(G)
        if not rep.ok:
            raise FormError(f"F2-broken-selection: {rep.witnesses}")
        G._cache["valid"] = True
    return G


def product(F1: Form, F2: Form, label: str | None = None) -> Form:
    if F1.base is not F2.base:
        raise FormError("base mismatch")
    c = F1.base
    clusters, payload = [], []
    for x in range(c.k):
        clusters.append([f"({a},{b})" for a in F1.clusters[x] for b in F2.clusters[x]])
        payload.append([(F1.decode(x, i), F2.decode(x, j)) for i in range(F1.size(x)) for j in range(F2.size(x))])
    rel = [np.kron(F1.rel[f].astype(np.int8), F2.rel[f].astype(np.int8)).astype(bool) for f in range(c.n)]
    G = Form(c, clusters, rel, label or f"{F1.label}x{F2.label}", payload)
    G._cache["factors"] = (F1, F2)
    return G


def pair_index(F2: Form, x: int, i: int, j: int) -> int:
    """Index of cluster (i, j) in the fiber of ``product(F1, F2)`` over ``x``."""
    return i * F2.size(x) + j


# -- operators ----------------------------------------------------------------


@dataclass(eq=False)
class Operator:
    """Per-object maps from clusters of ``src`` to clusters of ``dst`` (same base)."""

    src: Form
    dst: Form
    assign: list = field(default_factory=list)
    label: str = ""

    def __post_init__(self):
        self.assign = [np.asarray(a, dtype=np.int64) for a in self.assign]
        if self.src.base is not self.dst.base:
            raise FormError("operator between forms over different bases")
        for x, a in enumerate(self.assign):
            if a.shape != (self.src.size(x),) or (a.size and (a.min() < 0 or a.max() >= self.dst.size(x))):
                raise FormError(f"assignment leaves the fiber over {self.src.base.objects[x]}")

    @classmethod
    def from_function(cls, src: Form, dst: Form, fn: Callable[[int, int], int], label: str = "") -> Operator:
        return cls(src, dst, [[fn(x, i) for i in range(src.size(x))] for x in range(src.base.k)], label)

    @classmethod
    def identity(cls, F: Form) -> Operator:
        return cls(F, F, [np.arange(F.size(x)) for x in range(F.base.k)], "id")

    def __call__(self, x: int, i: int) -> int:
        return int(self.assign[x][i])

    def then(self, other: Operator) -> Operator:
        """``other ∘ self``."""
        if other.src is not self.dst:
            raise FormError("operators do not compose")
        return Operator(self.src, other.dst, [other.assign[x][a] for x, a in enumerate(self.assign)])

    def same_as(self, other: Operator) -> bool:
        return all((a == b).all() for a, b in zip(self.assign, other.assign))

    def image_selection(self) -> list[list[int]]:
        return [sorted(set(a.tolist())) for a in self.assign]


def operator_relation_gap(t: Operator) -> tuple[list, list]:
    """Monotonicity failures and reflection failures, one witness per morphism."""
    c = t.src.base
    mono, refl = [], []
    for f in range(c.n):
        moved = t.dst.rel[f][np.ix_(t.assign[c.cod[f]], t.assign[c.dom[f]])]
        src = t.src.rel[f]
        if (src & ~moved).any():
            b, a = np.argwhere(src & ~moved)[0]
            mono.append({"f": f, "B": int(b), "A": int(a)})
        if (moved & ~src).any():
            b, a = np.argwhere(moved & ~src)[0]
            refl.append({"f": f, "B": int(b), "A": int(a)})
    return mono, refl


def validate_operator(t: Operator) -> frozenset[str]:
    mono, refl = operator_relation_gap(t)
    flags = set()
    if not mono:
        flags.add("valid")
        if not refl:
            flags.add("full")
    if all(len(set(a.tolist())) == len(a) for a in t.assign):
        flags.add("injective")
    if t.src is t.dst and all((a[a] == a).all() for a in t.assign):
        flags.add("idempotent")
    if "full" in flags and "injective" not in flags:
        raise AssertionError("full operator that is not injective")
    return frozenset(flags)


# -- isomorphism / embedding search -------------------------------------------


@dataclass
class SearchResult:
    """Outcome of a structure search: ``found``, ``refuted`` or ``budget-exhausted``."""

    status: str
    mapping: list | None = None
    nodes: int = 0
    certificate: str = ""

    @property
    def found(self) -> bool:
        return self.status == "found"

    def as_operator(self, F: Form, G: Form) -> Operator:
        return Operator(F, G, self.mapping)


DEFAULT_BUDGET = 10**7


def _signature(F: Form, x: int, i: int) -> tuple:
    c = F.base
    outs = tuple(int(F.rel[f][:, i].sum()) for f in c.out_of[x])
    ins = tuple(int(F.rel[f][i, :].sum()) for f in c.into[x])
    return outs + ins


def _stacks(F: Form) -> dict:
    c = F.base
    out = {}
    for x in range(c.k):
        for y in range(c.k):
            ms = c.hom(x, y)
            if len(ms):
                out[x, y] = np.stack([F.rel[m] for m in ms])
    return out


def fiber_order_invariant(F: Form, x: int) -> tuple:
    ge = F.ge(x)
    return tuple(sorted(zip(ge.sum(axis=0).tolist(), ge.sum(axis=1).tolist())))


def _match(F: Form, G: Form, bijective: bool, budget: int) -> SearchResult:
    c = F.base
    if G.base is not c:
        raise FormError("base mismatch")
    if bijective:
        if F.fiber_sizes != G.fiber_sizes:
            return SearchResult("refuted", certificate=f"fiber sizes {F.fiber_sizes} vs {G.fiber_sizes}")
        for x in range(c.k):
            if fiber_order_invariant(F, x) != fiber_order_invariant(G, x):
                return SearchResult("refuted", certificate=f"order type differs over {c.objects[x]}")
        sigF = [[_signature(F, x, i) for i in range(F.size(x))] for x in range(c.k)]
        sigG = [[_signature(G, x, i) for i in range(G.size(x))] for x in range(c.k)]
        for x in range(c.k):
            if sorted(sigF[x]) != sorted(sigG[x]):
                return SearchResult("refuted", certificate=f"cluster signatures differ over {c.objects[x]}")
    elif any(a > b for a, b in zip(F.fiber_sizes, G.fiber_sizes)):
        return SearchResult("refuted", certificate=f"fiber sizes {F.fiber_sizes} exceed {G.fiber_sizes}")
    SF, SG = _stacks(F), _stacks(G)
    order = [(x, i) for x in range(c.k) for i in range(F.size(x))]
    cands = []
    for x, i in order:
        if bijective:
            cands.append([j for j in range(G.size(x)) if sigG[x][j] == sigF[x][i]])
        else:
            cands.append(list(range(G.size(x))))
    assigned: list[list[int]] = [[-1] * F.size(x) for x in range(c.k)]
    used = [set() for _ in range(c.k)]
    done_by_obj: list[list[int]] = [[] for _ in range(c.k)]
    nodes = 0

    def consistent(x: int, i: int, j: int) -> bool:
        for y in range(c.k):
            prev = done_by_obj[y]
            if (x, y) in SF and prev:
                img = [assigned[y][b] for b in prev]
                if not (SF[x, y][:, prev, i] == SG[x, y][:, img, j]).all():
                    return False
            if (y, x) in SF and prev:
                img = [assigned[y][b] for b in prev]
                if not (SF[y, x][:, i, prev] == SG[y, x][:, j, img]).all():
                    return False
        return bool((SF[x, x][:, i, i] == SG[x, x][:, j, j]).all())

    def search(pos: int) -> bool | None:
        nonlocal nodes
        if pos == len(order):
            return True
        x, i = order[pos]
        for j in cands[pos]:
            if j in used[x]:
                continue
            nodes += 1
            if nodes > budget:
                return None
            if not consistent(x, i, j):
                continue
            assigned[x][i] = j
            used[x].add(j)
            done_by_obj[x].append(i)
            res = search(pos + 1)
            if res is None or res:
                return res
            done_by_obj[x].pop()
            used[x].discard(j)
            assigned[x][i] = -1
        return False

    res = search(0)
    if res is None:
        return SearchResult("budget-exhausted", nodes=nodes, certificate=f"node budget {budget} exhausted")
    if not res:
        return SearchResult("refuted", nodes=nodes, certificate="exhaustive backtracking found no assignment")
    return SearchResult("found", [list(a) for a in assigned], nodes)


def find_isomorphism(F: Form, G: Form, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Per-object bijections with B ≥_f A ⇔ ζB ≥_f ζA for every morphism."""
    return _match(F, G, True, budget)


def find_full_embedding(F: Form, G: Form, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """A full injective operator F → G (F is then isomorphic to a subform of G)."""
    return _match(F, G, False, budget)


def relabel(F: Form, perms: Sequence[Sequence[int]], label: str | None = None) -> Form:
    """An isomorphic copy whose cluster ``k`` over ``x`` is cluster ``perms[x][k]`` of F."""
    c = F.base
    p = [np.asarray(q, dtype=np.int64) for q in perms]
    rel = [F.rel[f][np.ix_(p[c.cod[f]], p[c.dom[f]])] for f in range(c.n)]
    clusters = [[F.clusters[x][i] for i in p[x]] for x in range(c.k)]
    payload = None if F.payload is None else [[F.payload[x][i] for i in p[x]] for x in range(c.k)]
    return Form(c, clusters, rel, label or F.label, payload)
