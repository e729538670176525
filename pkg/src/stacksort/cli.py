"""``stacksort`` command line.

Exit codes: 0 success, 1 input error (including bad flags), 2 resource cap
refusal, 3 failed verification or certification.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

from stacksort import bounds, enumeration, hooks, verify
from stacksort.config import override_caps
from stacksort.fertility import DEFAULT_VALLEY_CONVENTION, ValleyConvention, profile
from stacksort.errors import ConfigurationError, InputError, ResourceCapError, StackSortError
from stacksort.perm import (
    Permutation,
    brute_force_preimages,
    descent_count,
    sorting_depth,
    stack_sort_iterated,
    valley_count,
)
from stacksort.render import render_svg

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags, which would collide with the cap code
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    return str(obj)


def _dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, default=_json_default)


def _perm(text: str) -> Permutation:
    return Permutation.parse(text)


def _int_tuple(text: str) -> tuple[int, ...]:
    parts = text.replace(",", " ").split()
    try:
        return tuple(int(x) for x in parts)
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


# -- subcommands ---------------------------------------------------------------


def cmd_sort(args, out):
    p = _perm(args.permutation)
    if args.times < 0:
        raise InputError(f"--times must be nonnegative, got {args.times}")
    image = stack_sort_iterated(p, args.times)
    if args.format == "json":
        out.write(_dumps({
            "permutation": str(p),
            "times": args.times,
            "result": str(image),
            "depth": sorting_depth(p),
        }) + "\n")
    else:
        out.write(f"{image}\n")
    return EXIT_OK


def cmd_preimages(args, out):
    p = _perm(args.permutation)
    pre = brute_force_preimages(p)
    if args.format == "json":
        out.write(_dumps({"permutation": str(p), "count": len(pre), "preimages": [str(x) for x in pre]}) + "\n")
    else:
        out.writelines(f"{x}\n" for x in pre)
    return EXIT_OK


def cmd_fertility(args, out):
    p = _perm(args.permutation)
    prof = profile(p, args.convention, strict=not args.allow_unvalidated)
    data = prof.to_dict()
    status = EXIT_OK
    if args.oracle:
        pre = brute_force_preimages(p)
        by_d = Counter(descent_count(x) for x in pre)
        by_v = Counter(valley_count(x, padded=True) for x in pre)
        agrees = (
            prof.total == len(pre)
            and all(prof.by_descents.get(m, 0) == by_d.get(m, 0) for m in set(by_d) | set(prof.by_descents))
            and all(prof.by_valleys.get(m, 0) == by_v.get(m, 0) for m in set(by_v) | set(prof.by_valleys))
        )
        data["oracle"] = {
            "total": str(len(pre)),
            "by_descents": {str(m): str(c) for m, c in sorted(by_d.items())},
            "by_valleys": {str(m): str(c) for m, c in sorted(by_v.items())},
            "agrees": agrees,
        }
        if not agrees:
            status = EXIT_VERIFY
    if args.format == "json":
        out.write(_dumps(data) + "\n")
    else:
        out.write(f"F({p}) = {prof.total}\n")
        for m, c in sorted(prof.by_descents.items()):
            out.write(f"descents {m}: {c}\n")
        for m, c in sorted(prof.by_valleys.items()):
            out.write(f"valleys {m}: {c}\n")
        if args.oracle:
            out.write(f"oracle agrees: {data['oracle']['agrees']}\n")
    return status


def cmd_vhc(args, out):
    p = _perm(args.permutation)
    selected = None
    extra = {}
    if args.canonical:
        canon = hooks.canonical_vhc(p)
        if canon is None:
            raise InputError(f"{p} has no valid hook configuration")
        selected, data = canon
        extra["canonical"] = data.to_dict()
    elif args.b is not None or args.b_entries is not None:
        if args.b is not None:
            b = _int_tuple(args.b)
        else:
            b = tuple(p.position(v) for v in _int_tuple(args.b_entries))
        selected = hooks.build_vhc(p, b)
        extra["valid"] = hooks.is_vhc_02(p, selected.hooks)

    if args.format == "svg":
        if selected is None:
            raise InputError("--format svg needs --canonical, --b or --b-entries")
        out.write(render_svg(selected, title=str(p)))
        return EXIT_OK

    if selected is None:
        configs = hooks.enumerate_vhc_02(p)
        payload = {"permutation": str(p), "count": len(configs), "configurations": [H.to_dict() for H in configs]}
    else:
        payload = {"permutation": str(p), "configuration": selected.to_dict(), **extra}
    if args.format == "json":
        out.write(_dumps(payload) + "\n")
    else:
        for H in [selected] if selected is not None else hooks.enumerate_vhc_02(p):
            positions = ",".join(map(str, H.b_tuple))
            entries = ",".join(str(p[b - 1]) for b in H.b_tuple)
            q = ",".join(map(str, H.hat_q))
            out.write(f"positions=({positions}) entries=({entries}) q=({q})\n")
    return EXIT_OK


def cmd_compositions(args, out):
    p = _perm(args.permutation)
    V = hooks.valid_compositions(p)
    payload = {
        "permutation": str(p),
        "n": len(p),
        "k": descent_count(p),
        "count": len(V),
        "valid_compositions": [list(q) for q in V],
    }
    status = EXIT_OK
    if args.check is not None:
        q = hooks.check_composition(p, _int_tuple(args.check))
        member = q in V
        conditions = hooks.check_composition_conditions(p, q) if V else False
        payload["check"] = {"q": list(q), "valid": member, "conditions": conditions, "agree": member == conditions}
        if member != conditions:
            status = EXIT_VERIFY
    if args.format == "json":
        out.write(_dumps(payload) + "\n")
    else:
        out.writelines(" ".join(map(str, q)) + "\n" for q in V)
        if args.check is not None:
            out.write(f"check {payload['check']['q']}: {'valid' if payload['check']['valid'] else 'invalid'}\n")
    return status


def _count_table(args) -> enumeration.CountTable:
    if args.t < 1 or args.n < 1:
        raise InputError("--t and --n must be positive")
    cached = None
    if args.table and Path(args.table).exists():
        cached = enumeration.load_table(args.table)
    keys = [(t, n) for t in range(1, args.t + 1) for n in range(1, args.n + 1)] if args.upto else [(args.t, args.n)]
    method = "direct" if args.method == "direct" else "fertility-sum"
    table = enumeration.CountTable(method=method)
    for t, n in keys:
        if cached is not None and (t, n) in cached.entries and (t, n, 0) in cached.entries:
            table.entries[(t, n)] = cached.entries[(t, n)]
            table.entries.update({key: v for key, v in cached.entries.items() if key[:2] == (t, n)})
            continue
        if method == "direct":
            total, by_k = enumeration.count_direct(t, n, workers=args.workers)
        else:
            total = enumeration.count_via_fertility(t, n)
            by_k = enumeration.count_via_fertility_by_descents(t, n)
        table.entries[(t, n)] = total
        table.entries.update({(t, n, k): v for k, v in by_k.items()})
    if not args.by_descents:
        table.entries = {key: v for key, v in table.entries.items() if len(key) == 2}
    return table


def cmd_count(args, out):
    table = _count_table(args)
    for path in filter(None, (args.table, args.save)):
        merged = table
        if Path(path).exists():
            merged = enumeration.merge_tables(enumeration.load_table(path), table)
        enumeration.save_table(merged, path)
    if args.format == "json":
        out.write(_dumps(table.to_dict()) + "\n")
    elif args.format == "csv":
        out.write(enumeration.table_to_csv(table))
    elif not args.upto:
        out.write(f"{table.w(args.t, args.n)}\n")
        for k, v in table.row(args.t, args.n).items():
            out.write(f"k={k}: {v}\n")
    else:
        for key in sorted(table.entries):
            out.write(" ".join(map(str, key)) + f" {table.entries[key]}\n")
    return EXIT_OK


def cmd_mstat(args, out):
    if (args.q is None) == (args.n is None):
        raise InputError("mstat needs exactly one of --q or --n")
    if args.q is not None:
        q = _int_tuple(args.q)
        count = enumeration.m_t_of_q(args.t, q)
        payload = {"t": args.t, "q": list(q), "n": enumeration.implied_length(q), "count": str(count)}
        text = f"{count}\n"
        status = EXIT_OK
    else:
        stats = enumeration.composition_stats(args.t, args.n)
        expansion = enumeration.composition_expansion(args.t, args.n)
        direct, _ = enumeration.count_direct(args.t + 1, args.n)
        payload = {
            "t": args.t,
            "n": args.n,
            "stats": [{"q": list(q), "count": str(c)} for q, c in stats.items()],
            "expansion": str(expansion),
            "direct": str(direct),
            "agree": expansion == direct,
        }
        text = "".join(f"{' '.join(map(str, q))}: {c}\n" for q, c in stats.items())
        text += f"expansion {expansion}\ndirect {direct}\n"
        status = EXIT_OK if expansion == direct else EXIT_VERIFY
    out.write(_dumps(payload) + "\n" if args.format == "json" else text)
    return status


def cmd_bounds(args, out):
    which = args.which
    if which == "theorem5":
        if args.t is None or args.n is None:
            raise InputError("--which theorem5 needs --t (the level t+1) and --n")
        report = bounds.theorem5_report(args.t, args.n)
    elif which == "theorem6":
        report = bounds.theorem6_constant()
    elif which == "lemma13":
        report = bounds.h_scan(args.resolution)
    elif which == "theorem7":
        report = bounds.theorem7_constant(args.resolution)
    else:
        report = bounds.lemma12_report(args.n or 9)
    if args.format == "json":
        out.write(_dumps(report.to_dict()) + "\n")
    else:
        out.write(f"{report.name}: value={report.value!r} certified={report.certified}\n")
    return EXIT_OK if report.certified else EXIT_VERIFY


def cmd_verify(args, out):
    checks = verify.run(args.target, args.max_n)
    if args.format == "json":
        out.write(_dumps({
            "target": args.target,
            "passed": all(c.passed for c in checks),
            "checks": [c.to_dict() for c in checks],
        }) + "\n")
    else:
        for c in checks:
            detail = f" ({c.detail})" if c.detail else ""
            out.write(f"{'PASS' if c.passed else 'FAIL'} {c.name}{detail}\n")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    caps = _Parser(add_help=False)
    group = caps.add_argument_group("resource caps")
    group.add_argument("--oracle-cap", type=int, metavar="N", help="max length for the preimage oracle")
    group.add_argument("--direct-cap", type=int, metavar="N", help="max n for direct iteration over S_n")
    group.add_argument("--paths-cap", type=int, metavar="N", help="max lattice path length")

    parser = _Parser(prog="stacksort", description="Exact enumeration for the stack-sorting map.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, formats=("text", "json"), default="text"):
        sp = sub.add_parser(name, help=help, parents=[caps])
        sp.add_argument("--format", choices=formats, default=default)
        sp.set_defaults(func=func)
        return sp

    sp = add("sort", cmd_sort, "apply the stack-sorting map")
    sp.add_argument("permutation")
    sp.add_argument("--times", type=int, default=1)

    sp = add("preimages", cmd_preimages, "list preimages by brute force")
    sp.add_argument("permutation")

    sp = add("fertility", cmd_fertility, "preimage counts from valid compositions", default="json")
    sp.add_argument("permutation")
    sp.add_argument("--oracle", action="store_true", help="compare against brute force; exit 3 on mismatch")
    sp.add_argument("--convention", choices=[c.value for c in ValleyConvention],
                    default=DEFAULT_VALLEY_CONVENTION.value)
    sp.add_argument("--allow-unvalidated", action="store_true",
                    help="evaluate an unvalidated valley convention (output marked provisional)")

    sp = add("vhc", cmd_vhc, "valid hook configurations", formats=("json", "svg", "text"), default="json")
    sp.add_argument("permutation")
    pick = sp.add_mutually_exclusive_group()
    pick.add_argument("--canonical", action="store_true")
    pick.add_argument("--b", metavar="POSITIONS", help="northeast endpoints as positions, e.g. 5,13,12")
    pick.add_argument("--b-entries", metavar="VALUES", help="northeast endpoints as entries, e.g. 9,13,12")

    sp = add("compositions", cmd_compositions, "valid compositions", default="json")
    sp.add_argument("permutation")
    sp.add_argument("--check", metavar="Q", help="test a composition against the canonical-data conditions")

    sp = add("count", cmd_count, "exact W_t(n) counts", formats=("text", "json", "csv"))
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--by-descents", action="store_true", help="include W_t(n, k)")
    sp.add_argument("--upto", action="store_true", help="every t' <= t and n' <= n")
    sp.add_argument("--method", choices=("direct", "fertility"), default="direct")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--table", metavar="PATH", help="cache file: reuse stored counts and add new ones")
    sp.add_argument("--save", metavar="PATH", help="write (merge) the computed counts to a table file")

    sp = add("mstat", cmd_mstat, "M_t(q) composition statistics", default="json")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--q", metavar="Q")
    sp.add_argument("--n", type=int)

    sp = add("bounds", cmd_bounds, "bounds and certified constants", default="json")
    sp.add_argument("--which", choices=("theorem5", "theorem6", "lemma12", "lemma13", "theorem7"), required=True)
    sp.add_argument("--t", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--resolution", type=int, default=10**4)

    sp = add("verify", cmd_verify, "identity and property matrix")
    sp.add_argument("target", nargs="?", choices=("identities", "properties", "bounds", "all"), default="all")
    sp.add_argument("--max-n", type=int)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        with override_caps(oracle=args.oracle_cap, direct=args.direct_cap, paths=args.paths_cap):
            return args.func(args, out)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_INPUT
    except ResourceCapError as exc:
        err.write(f"resource cap: {exc}\n")
        return EXIT_CAP
    except ConfigurationError as exc:
        err.write(f"configuration error: {exc}\n")
        return EXIT_INPUT
    except InputError as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except StackSortError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
