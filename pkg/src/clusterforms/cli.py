"""Command line front end: ``clusterforms <verb> ...``.

Exit codes: 0 when every requested check passes, 1 when one fails (the
report carries witnesses, or a ``reason`` such as budget exhaustion), 2 for
unreadable input or bad usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import zoo
from .bicat import AXIOMS, Bicategory, check_axiom, left_exact_bicat_check, synthesize_ejd_form, synthesize_emd_form, trivial_objects
from .decomp import decomposition_report, exact_join_identities
from .factor import check_orean_factorization, check_synthesis_conditions, construct_join_noetherian, wyler_laws
from .fincat import FinCategory, validate_category
from .formcore import DEFAULT_BUDGET, Form, FormError, find_isomorphism, validate_form
from .orean import (
    check_noetherian,
    check_orean,
    classify,
    noetherian_verdicts,
    special_predicates_report,
    strongly_orean,
)
from .report import CheckReport

FORM_AXIOMS = ("form", "orean", "noetherian", "strong", "special", "identities")


class UsageError(Exception):
    pass


# -- loading ------------------------------------------------------------------------


class Loader:
    """Reads JSON documents; forms with identical base categories share one base object."""

    def __init__(self):
        self._bases: dict[str, FinCategory] = {}

    def _base(self, doc: dict) -> FinCategory:
        key = json.dumps(doc, sort_keys=True)
        if key not in self._bases:
            self._bases[key] = FinCategory.from_dict(doc)
        return self._bases[key]

    def read(self, path: str) -> dict:
        try:
            with open(path) as fh:
                return json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {path}: {exc}") from exc

    def load(self, path: str):
        doc = self.read(path)
        schema = doc.get("schema") if isinstance(doc, dict) else None
        try:
            if schema == "fincat/1":
                return FinCategory.from_dict(doc)
            if schema == "form/1":
                F = Form.from_dict(doc)
                F.base = self._base(doc["base"])
                return F
            if schema == "bicat/1":
                b = Bicategory.from_dict(doc)
                b.cat = self._base(doc["category"])
                return b
        except (KeyError, ValueError, TypeError, IndexError) as exc:
            raise UsageError(f"malformed {schema} document {path}: {exc}") from exc
        raise UsageError(f"{path}: unsupported schema {schema!r}")

    def form(self, path: str) -> Form:
        obj = self.load(path)
        if not isinstance(obj, Form):
            raise UsageError(f"{path}: expected a form/1 document")
        return obj


# -- verbs --------------------------------------------------------------------------


def cmd_validate(args, loader: Loader) -> CheckReport:
    obj = loader.load(args.input)
    if isinstance(obj, FinCategory):
        return validate_category(obj)
    if isinstance(obj, Form):
        return validate_form(obj)
    rep = CheckReport(f"validate {obj.label}")
    rep.merge(validate_category(obj.cat), "category:")
    bad = sorted(i for i in obj.E | obj.M if not 0 <= i < obj.cat.n)
    rep.record("class-ids", bad)
    return rep


def _check_form(F: Form, axioms: list[str]) -> CheckReport:
    rep = CheckReport(f"check {F.label}")
    vrep = validate_form(F)
    rep.merge(vrep, "form:")
    if not vrep.ok:
        return rep
    orep, O = check_orean(F)
    if "form" not in axioms or len(axioms) > 1:
        rep.merge(orep, "orean:")
    if O is None:
        return rep
    if "noetherian" in axioms:
        nrep = check_noetherian(O)
        rep.merge(nrep)
        rep.data["noetherian"] = noetherian_verdicts(nrep)
    if "strong" in axioms:
        rep.merge(strongly_orean(O), "strong:")
    if "special" in axioms:
        sp = special_predicates_report(O)
        rep.merge(sp, "special:")
        rep.data["special"] = sp.data
    if "identities" in axioms:
        rep.merge(exact_join_identities(O), "identities:")
    return rep


def cmd_check(args, loader: Loader) -> CheckReport:
    obj = loader.load(args.input)
    raw = [a.strip() for a in (args.axioms or "").split(",") if a.strip()]
    if isinstance(obj, Bicategory):
        names = raw or ["all"]
        rep = CheckReport(f"check {obj.label}{' (dual)' if args.dual else ''}")
        for name in names:
            if name == "left-exact":
                sub = left_exact_bicat_check(obj.dual if args.dual else obj)
                rep.merge(sub, "left-exact:")
                rep.check("left-exact", bool(sub.data.get("left_exact")), sub.data)
                continue
            if name == "trivial":
                rep.merge(trivial_objects(obj.dual if args.dual else obj)[2], "trivial:")
                continue
            if name != "all" and name.replace("′", "'") not in AXIOMS:
                raise UsageError(f"unknown bicategory axiom {name!r}")
            sub = check_axiom(obj, name, dual=args.dual)
            rep.merge(sub)
            rep.data.update(sub.data)
        return rep
    if isinstance(obj, Form):
        names = raw or ["orean"]
        if "all" in names:
            names = list(FORM_AXIOMS)
        for n in names:
            if n not in FORM_AXIOMS:
                raise UsageError(f"unknown form axiom set {n!r}; choose from {', '.join(FORM_AXIOMS)} or all")
        return _check_form(obj, names)
    return validate_category(obj)


def _orean_or_fail(F: Form, verb: str) -> tuple[CheckReport, object]:
    vrep = validate_form(F)
    if not vrep.ok:
        rep = CheckReport(f"{verb} {F.label}")
        rep.merge(vrep, "form:")
        return rep, None
    orep, O = check_orean(F)
    if O is None:
        rep = CheckReport(f"{verb} {F.label}")
        rep.merge(orep, "orean:")
        return rep, None
    return orep, O


def cmd_classify(args, loader: Loader) -> CheckReport:
    F = loader.form(args.input)
    rep, O = _orean_or_fail(F, "classify")
    if O is None:
        return rep
    cl = classify(O)
    out = CheckReport(f"classify {F.label}")
    c = F.base

    def names(x, ids):
        return [F.clusters[x][i] for i in sorted(ids)]

    def opt(x, v):
        return None if v is None else F.clusters[x][v]

    out.data["objects"] = {
        c.objects[x]: {
            "conormal": names(x, cl.conormal[x]),
            "normal": names(x, cl.normal[x]),
            "conormal_interior": {F.clusters[x][s]: opt(x, cl.c_interior[x][s]) for s in range(F.size(x))},
            "normal_interior": {F.clusters[x][s]: opt(x, cl.n_interior[x][s]) for s in range(F.size(x))},
            "conormal_exterior": {F.clusters[x][s]: opt(x, cl.c_exterior[x][s]) for s in range(F.size(x))},
            "normal_exterior": {F.clusters[x][s]: opt(x, cl.n_exterior[x][s]) for s in range(F.size(x))},
        }
        for x in range(c.k)
    }
    sp = special_predicates_report(O)
    out.merge(sp)
    out.data["special"] = sp.data
    return out


def cmd_decompose(args, loader: Loader) -> CheckReport:
    F = loader.form(args.input)
    rep, O = _orean_or_fail(F, "decompose")
    if O is None:
        return rep
    return decomposition_report(O)


def cmd_synthesize(args, loader: Loader):
    objs = [loader.load(p) for p in args.inputs]
    if len(objs) == 1 and isinstance(objs[0], Bicategory):
        b = objs[0]
        try:
            G, rep = (synthesize_ejd_form if args.side == "join" else synthesize_emd_form)(b)
        except FormError as exc:
            rep = CheckReport(f"synthesize {b.label}")
            rep.reason = str(exc)
            return rep, None
        return rep, G
    if len(objs) == 2 and all(isinstance(o, Form) for o in objs):
        Fs, Fe = objs
        if Fs.base is not Fe.base:
            raise UsageError("the two forms have different base categories")
        frep, fac = check_orean_factorization(Fs, Fe)
        if fac is None:
            frep.subject = "synthesize: not an orean factorization"
            return frep, None
        sc = check_synthesis_conditions(fac)
        if not sc.ok:
            return sc, None
        if args.wyler:
            w = wyler_laws(fac)
            if not w.ok:
                return w, None
        G, rep = construct_join_noetherian(fac, sc)
        return rep, G
    raise UsageError("synthesize takes one bicat/1 file or two form/1 files (conormal, normal)")


def cmd_compare(args, loader: Loader) -> CheckReport:
    F, G = loader.form(args.a), loader.form(args.b)
    rep = CheckReport(f"compare {F.label} {G.label}")
    if F.base is not G.base:
        rep.check("same-base", False, "base categories differ")
        return rep
    res = find_isomorphism(F, G, budget=args.budget or DEFAULT_BUDGET)
    rep.data.update(status=res.status, certificate=res.certificate, nodes=res.nodes)
    if res.found:
        rep.data["mapping"] = {
            F.base.objects[x]: {F.clusters[x][i]: G.clusters[x][j] for i, j in enumerate(row)} for x, row in enumerate(res.mapping)
        }
    if res.status == "budget-exhausted":
        rep.reason = "budget-exhausted"
    else:
        rep.check("isomorphic", res.found, res.certificate or "not isomorphic")
    return rep


def cmd_zoo_emit(args, loader: Loader) -> str:
    try:
        if args.name.endswith("-bicat"):
            base = args.name[: -len("-bicat")]
            c = zoo.zoo_category(base, args.size)
            b = Bicategory(c, zoo.epis(c), zoo.monos(c), base)
            return json.dumps(b.to_dict(), indent=1, sort_keys=True) + "\n"
        if args.name in zoo.CATEGORIES:
            return json.dumps(zoo.zoo_category(args.name, args.size).to_dict(), indent=1, sort_keys=True) + "\n"
        return zoo.zoo_form(args.name, args.size).to_json()
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc


def cmd_battery(args, loader: Loader) -> CheckReport:
    from .acceptance import battery_report, run_battery

    which = None
    if args.criteria:
        try:
            which = sorted({int(k) for k in args.criteria.split(",")})
        except ValueError as exc:
            raise UsageError("--criteria takes comma-separated numbers 1..11") from exc
        if any(k < 1 or k > 11 for k in which):
            raise UsageError("--criteria takes numbers 1..11")
    return battery_report(run_battery(which))


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "pretty"), default="json")
    common.add_argument("--budget", type=int, default=None, help="node budget for searches")
    common.add_argument("--seed-cache", metavar="DIR", help="cache directory for generated categories")
    p = argparse.ArgumentParser(prog="clusterforms", description="Check and synthesize forms over finite categories.")
    sub = p.add_subparsers(dest="verb", required=True)
    s = sub.add_parser("validate", parents=[common], help="validate a fincat/1, form/1 or bicat/1 document")
    s.add_argument("input")
    s = sub.add_parser("check", parents=[common], help="run axiom batteries on a form or bicategory")
    s.add_argument("input")
    s.add_argument("--axioms", help="comma list: form, orean, noetherian, strong, special, identities, all; or B0..B5', left-exact, trivial")
    s.add_argument("--dual", action="store_true", help="bicategories: evaluate the dual axioms")
    s = sub.add_parser("classify", parents=[common], help="conormal/normal clusters, interiors and exteriors")
    s.add_argument("input")
    s = sub.add_parser("decompose", parents=[common], help="search for exact decompositions")
    s.add_argument("input")
    s = sub.add_parser("synthesize", parents=[common], help="build a noetherian form from a factorization or a bicategory")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--side", choices=("join", "meet"), default="join", help="bicategory input: exact join or exact meet form")
    s.add_argument("--wyler", action="store_true", help="also require the Wyler law suite")
    s.add_argument("--out", help="write the form here instead of stdout")
    s = sub.add_parser("compare", parents=[common], help="isomorphism test between two forms")
    s.add_argument("a")
    s.add_argument("b")
    s = sub.add_parser("zoo-emit", parents=[common], help="write a zoo category, form or <category>-bicat as JSON")
    s.add_argument("name", help=", ".join(zoo.zoo_names() + [f"{c}-bicat" for c in sorted(zoo.CATEGORIES)]))
    s.add_argument("--size", type=int, default=None)
    s = sub.add_parser("battery", parents=[common], help="run the acceptance battery")
    s.add_argument("--criteria", help="comma list of criterion numbers (default all)")
    return p


def _emit(rep: CheckReport, fmt: str, stream) -> None:
    stream.write(rep.pretty() + "\n" if fmt == "pretty" else rep.to_json() + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.seed_cache:
        os.environ[zoo.CACHE_ENV] = args.seed_cache
    loader = Loader()
    try:
        if args.verb == "zoo-emit":
            sys.stdout.write(cmd_zoo_emit(args, loader))
            return 0
        if args.verb == "synthesize":
            rep, G = cmd_synthesize(args, loader)
            if G is None:
                _emit(rep, args.format, sys.stdout)
                return 1
            text = G.to_json()
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
                _emit(rep, args.format, sys.stdout)
            else:
                sys.stdout.write(text)
                if args.format == "pretty":
                    sys.stderr.write(rep.pretty() + "\n")
            return 0 if rep.ok else 1
        handler = {
            "validate": cmd_validate,
            "check": cmd_check,
            "classify": cmd_classify,
            "decompose": cmd_decompose,
            "compare": cmd_compare,
            "battery": cmd_battery,
        }[args.verb]
        rep = handler(args, loader)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    _emit(rep, args.format, sys.stdout)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
