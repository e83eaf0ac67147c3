"""Command-line interface.

Exit codes: 0 success or pass, 1 domain failure (verification failed,
construction precondition), 2 usage or parse error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import setfile
from .constructions import (
    base_digits,
    golomb_set,
    modular_reduce,
    moment_curve,
    moment_curve_vectorized,
    translate_union,
)
from .errors import BudgetExceeded
from .finite_field import (
    FieldSpec,
    find_primitive,
    format_element,
    format_modulus,
    parse_element,
    prime_factors,
    primitive_elements,
)
from .groups import BhgSet, GroupSpec
from .search import DEFAULT_NODE_BUDGET, bound_gap_report, exhaustive_max, greedy_bhg
from .verifier import CONVENTION, DEFAULT_BUDGET, format_representation, multiset_count, rep_profile

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _field_element(spec: FieldSpec, text: str):
    text = text.strip()
    try:
        if "," in text:
            return spec.element(tuple(int(v) for v in text.split(",")))
        if "t" in text:
            return parse_element(spec, text)
        return spec.element(int(text))
    except ValueError as exc:
        raise UsageError(f"bad field element {text!r}: {exc}") from None


def _emit(data: dict, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(data, indent=2) + "\n")
        return
    for k, v in data.items():
        if isinstance(v, bool):
            v = "true" if v else "false"
        elif isinstance(v, list):
            v = " ".join(map(str, v))
        out.write(f"{k}={v}\n")


def _write_set(bset: BhgSet, output: Optional[str], out) -> None:
    if output:
        setfile.write(bset, output)
    else:
        out.write(setfile.render(bset))


def _read_set(args) -> BhgSet:
    if getattr(args, "elements", None) is not None:
        return BhgSet.integers(args.elements, h=args.h or 2, g=getattr(args, "g", None))
    text = sys.stdin.read() if args.input in (None, "-") else open(args.input, encoding="utf-8").read()
    return setfile.parse(text)


# -- construct --------------------------------------------------------------

def cmd_construct(args, out) -> int:
    kind = args.construction
    if kind == "moment":
        if args.vectorize:
            bset = moment_curve_vectorized(args.p, args.n, args.h, tuple(args.modulus or ()))
        else:
            bset = moment_curve(FieldSpec(args.p, args.n, tuple(args.modulus or ())), args.h)
    elif kind == "golomb":
        spec = FieldSpec.of_order(args.q, tuple(args.modulus or ()))
        alpha = _field_element(spec, args.alpha) if args.alpha else find_primitive(spec)
        beta = _field_element(spec, args.beta) if args.beta else alpha
        bset = golomb_set(spec, alpha, beta, _field_element(spec, args.a))
    else:
        src = _read_set(args)
        if kind == "digits":
            bset = base_digits(src, args.base, args.dim)
        elif kind == "union":
            bset = translate_union(src, args.m, args.coeffs)
        else:
            bset = modular_reduce(src, args.divisors)
    _write_set(bset, args.output, out)
    return EXIT_OK


# -- verify -------------------------------------------------------------------

def cmd_verify(args, out) -> int:
    bset = _read_set(args)
    h = args.h or bset.h
    g = args.g if args.g is not None else bset.g
    prof = rep_profile(bset, h, args.budget, args.threads)
    data = {
        "group": str(bset.spec),
        "h": h,
        "convention": CONVENTION,
        "size": len(bset),
        "multisets": multiset_count(len(bset), h),
        "distinct_sums": len(prof.counts),
        "min_g": prof.max_count,
    }
    fmt = lambda x: setfile.format_compact(bset.spec, x)
    if prof.witness is not None:
        target, reps = prof.witness
        data["witness"] = " = ".join([fmt(target)] + [format_representation(r, fmt) for r in reps])
    status = EXIT_OK
    if g is not None:
        data["g"] = g
        data["result"] = "pass" if prof.max_count <= g else "fail"
        if prof.max_count > g:
            target, reps = prof.witness
            data["violation"] = " = ".join([fmt(target)] + [format_representation(r, fmt) for r in reps[: g + 1]])
            status = EXIT_FAIL
    _emit(data, args.json, out)
    return status


# -- search -------------------------------------------------------------------

def cmd_search(args, out) -> int:
    if args.mode == "greedy":
        bset = greedy_bhg(args.h, args.g, args.count)
        _emit({"h": args.h, "g": args.g, "count": args.count, "terms": list(bset.ints())}, args.json, out)
        if args.output:
            setfile.write(bset, args.output)
        return EXIT_OK
    if args.mode == "gap":
        rep = bound_gap_report(args.N, args.d, args.h, args.g, args.budget, args.threads)
        data = rep.summary()
        data["witness_1d"] = [str(x[0]) for x in rep.one_dim.witness]
        data["witness_lifted"] = [setfile.format_compact(rep.lifted.spec, x) for x in rep.lifted]
        data["witness_dd"] = [setfile.format_compact(rep.multi_dim.spec, x) for x in rep.multi_dim.witness]
        _emit(data, args.json, out)
        print(f"elapsed={rep.one_dim.elapsed + rep.multi_dim.elapsed:.3f}s", file=sys.stderr)
        return EXIT_OK if data["exhaustive"] else EXIT_BUDGET
    try:
        spec = GroupSpec.parse(args.group)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = exhaustive_max(spec, args.h, args.g, args.budget, args.threads)
    data = res.summary()
    data["witness"] = [setfile.format_compact(spec, x) for x in res.witness]
    _emit(data, args.json, out)
    print(f"elapsed={res.elapsed:.3f}s", file=sys.stderr)
    if args.output:
        setfile.write(res.witness, args.output)
    return EXIT_OK if res.exhaustive else EXIT_BUDGET


# -- field --------------------------------------------------------------------

def cmd_field(args, out) -> int:
    if args.q is not None:
        spec = FieldSpec.of_order(args.q, tuple(args.modulus or ()))
    else:
        spec = FieldSpec(args.p, args.n, tuple(args.modulus or ()))
    prim = find_primitive(spec)
    data = {
        "p": spec.p,
        "n": spec.n,
        "q": spec.q,
        "modulus": format_modulus(spec.modulus),
        "modulus_tail": list(spec.modulus),
        "primitive": format_element(prim),
        "primitive_count": len(primitive_elements(spec)),
        "order_factors": prime_factors(spec.q - 1),
    }
    _emit(data, args.json, out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bhgsets", description="Construct, verify and search B_h[g] sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="build a set with one of the constructions")
    csub = con.add_subparsers(dest="construction", required=True)

    def io(p, with_input=True):
        if with_input:
            p.add_argument("--input", help="set file (default: stdin)")
            p.add_argument("--elements", type=_int_list, help="inline integer set instead of --input")
            p.add_argument("--h", type=int, default=None, help="summand count for --elements")
            p.add_argument("--g", type=int, default=None, help="claimed g for --elements")
        p.add_argument("--output", help="write the set file here instead of stdout")

    m = csub.add_parser("moment", help="moment curve {(x, x^2, ..., x^h)}")
    m.add_argument("--p", type=int, required=True)
    m.add_argument("--n", type=int, default=1)
    m.add_argument("--h", type=int, required=True)
    m.add_argument("--modulus", type=_int_list, help="modulus tail c_{n-1},...,c_0")
    m.add_argument("--vectorize", action="store_true", help="expand field coordinates into Z_p^n")
    io(m, with_input=False)

    d = csub.add_parser("digits", help="base-N digit lifting into [0,N-1]^d")
    d.add_argument("--base", type=int, required=True)
    d.add_argument("--dim", type=int, required=True)
    io(d)

    u = csub.add_parser("union", help="translate union A u (A + c m) u ...")
    u.add_argument("--m", type=int, required=True)
    u.add_argument("--coeffs", type=_int_list, required=True)
    io(u)

    r = csub.add_parser("reduce", help="coordinatewise reduction mod m_i/g_i")
    r.add_argument("--divisors", type=_int_list, required=True)
    io(r)

    gl = csub.add_parser("golomb", help="{(i, log_beta(a - alpha^i))} in Z_{q-1}^2")
    gl.add_argument("--q", type=int, required=True)
    gl.add_argument("--alpha", help="primitive element (default: smallest)")
    gl.add_argument("--beta", help="primitive element (default: alpha)")
    gl.add_argument("--a", default="1")
    gl.add_argument("--modulus", type=_int_list)
    io(gl, with_input=False)

    v = sub.add_parser("verify", help="count representations and decide B_h[g]")
    v.add_argument("--input", help="set file (default: stdin)")
    v.add_argument("--elements", type=_int_list, help="inline integer set instead of --input")
    v.add_argument("--h", type=int, default=None)
    v.add_argument("--g", type=int, default=None)
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--json", action="store_true")

    s = sub.add_parser("search", help="extremal search")
    ssub = s.add_subparsers(dest="mode", required=True)
    mx = ssub.add_parser("max", help="exact maximum B_h[g] set in a group or box")
    mx.add_argument("--group", required=True, help="product:m1,...,md or box:d,N")
    gr = ssub.add_parser("greedy", help="greedy B_h[g] integer sequence from 1")
    gr.add_argument("--count", type=int, required=True)
    gp = ssub.add_parser("gap", help="compare F_h(N^d, g) with F_h^d(N, g)")
    gp.add_argument("--N", type=int, required=True)
    gp.add_argument("--d", type=int, required=True)
    for p in (mx, gr, gp):
        p.add_argument("--h", type=int, default=2)
        p.add_argument("--g", type=int, default=1)
        p.add_argument("--json", action="store_true")
    for p in (mx, gp):
        p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
        p.add_argument("--threads", type=int, default=1)
    for p in (mx, gr):
        p.add_argument("--output", help="write the witness set file here")

    f = sub.add_parser("field", help="finite field utilities")
    fsub = f.add_subparsers(dest="field_cmd", required=True)
    fi = fsub.add_parser("info", help="modulus and primitive element of GF(p^n)")
    fi.add_argument("--p", type=int)
    fi.add_argument("--n", type=int, default=1)
    fi.add_argument("--q", type=int, help="field order instead of --p/--n")
    fi.add_argument("--modulus", type=_int_list)
    fi.add_argument("--json", action="store_true")
    return parser


COMMANDS = {"construct": cmd_construct, "verify": cmd_verify, "search": cmd_search, "field": cmd_field}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "field" and args.q is None and args.p is None:
        print("error: field info needs --p or --q", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, setfile.SetFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
