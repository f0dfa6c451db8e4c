"""Command-line interface: classify, rep, verify, census, params, reduce.

All payloads are JSON (stdin by default, --input FILE otherwise); output is
canonical sorted-key JSON on stdout, byte-identical for identical requests
and seeds.  Exit codes: 0 success, 1 malformed input, 2 mathematical
rejection (the structured error object carries code/message/offending_path).
"""

import argparse
import json
import sys
from fractions import Fraction

from .errors import AlgebraError, InputError
from .exact_algebra import Rationals, etale_make
from .hermitian_pairs import (
    form_of_pair,
    format_splitting_type,
    invariant_p,
    splitting_type_of_form,
)
from .quaternion import QuaternionAlgebra
from . import census as census_mod
from . import norm_params
from . import serialize as ser
from . import verify as verify_mod
from .representatives import rep_cubic, rep_mixed, rep_split


def _read_payload(args):
    if getattr(args, "input", None):
        with open(args.input) as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"payload is not valid JSON: {exc}")


def _emit(obj):
    sys.stdout.write(ser.dumps(obj))


def cmd_classify(args):
    payload = _read_payload(args)
    field = ser.parse_field(payload.get("field", {"base": "Q"}))
    alg = ser.parse_algebra(field, payload.get("B", {"a": 1, "b": 1}))
    pair = ser.parse_pair(alg, field, payload.get("pair"), "pair")
    form = form_of_pair(pair)
    p_val = invariant_p(pair)
    semistable = not p_val.is_zero()
    out = {
        "semistable": semistable,
        "P": ser.ser_scalar(p_val),
        "F": [ser.ser_scalar(c) for c in form.coeffs],
        "splitting_type": format_splitting_type(splitting_type_of_form(form)) if semistable else None,
    }
    _emit(out)
    return 0


def cmd_rep(args):
    payload = json.loads(args.params) if args.params else _read_payload(args)
    field = ser.parse_field(payload.get("field", {"base": "Q"}))
    alg = QuaternionAlgebra(field, 1, 1)
    if args.type == "split":
        ps = payload.get("p")
        if not isinstance(ps, list) or len(ps) != 3:
            raise InputError("split parameters need p = [p1,p2,p3]", "p")
        pair = rep_split(alg, *[ser.parse_scalar(field, p, f"p[{i}]") for i, p in enumerate(ps)])
    elif args.type == "mixed":
        modulus = payload.get("F_modulus")
        if not isinstance(modulus, list):
            raise InputError("mixed parameters need F_modulus", "F_modulus")
        F = etale_make(field, [ser.parse_scalar(field, c, f"F_modulus[{i}]")
                               for i, c in enumerate(modulus)])
        p = ser.parse_scalar(field, payload.get("p", 1), "p")
        lam = ser.parse_scalar(F, payload.get("lambda", 1), "lambda")
        pair = rep_mixed(alg, p, lam, F)
    elif args.type == "cubic":
        modulus = payload.get("L_modulus")
        if not isinstance(modulus, list):
            raise InputError("cubic parameters need L_modulus", "L_modulus")
        L = etale_make(field, [ser.parse_scalar(field, c, f"L_modulus[{i}]")
                               for i, c in enumerate(modulus)])
        delta = ser.parse_scalar(L, payload.get("delta", 1), "delta")
        pair = rep_cubic(alg, delta, L)
    else:
        raise InputError(f"unknown representative type {args.type!r}", "type")
    out = {
        "field": ser.ser_field(field),
        "pair": ser.ser_pair(pair),
        "splitting_type": format_splitting_type(splitting_type_of_form(form_of_pair(pair))),
    }
    _emit(out)
    return 0


def cmd_verify(args):
    report = verify_mod.run_suite(args.suite, args.field, samples=args.samples, seed=args.seed)
    _emit(report)
    return 0 if report["all_passed"] else 2


def cmd_census(args):
    if args.n == 2:
        limits = {}
        if args.limits:
            try:
                limits.update(json.loads(args.limits))
            except json.JSONDecodeError as exc:
                raise InputError(f"--limits must be JSON: {exc}", "limits")
        if args.max_states:
            limits["max_states"] = args.max_states
        report = census_mod.enumerate_census(args.q, n=2, backend=args.backend, limits=limits or None)
        if args.emit_orbit_sizes:
            report["orbit_sizes"] = [o["orbit_size"] for o in report["orbits"]]
    elif args.n == 3:
        report = census_mod.sample_census_e7(args.q, args.samples, seed=args.seed,
                                             backend=args.backend)
    else:
        raise InputError("census supports n=2 (full) and n=3 (sampled)", "n")
    _emit(report)
    return 0


def cmd_params(args):
    field = verify_mod.parse_field_flag(args.field)
    coeffs = [Fraction(c) for c in args.L.split(",")]
    if isinstance(field, Rationals):
        a_str, b_str = args.B.split(",")
        alg = QuaternionAlgebra(field, Fraction(a_str), Fraction(b_str))
        L = etale_make(field, coeffs)
        report = norm_params.param_set_definite(L, alg)
    else:
        report = norm_params.param_set_finite(field, [field.coerce(int(c)) for c in coeffs])
    _emit(report)
    return 0


def cmd_reduce(args):
    from .reducible import ReducibleContext

    payload = _read_payload(args)
    field = ser.parse_field(payload.get("field", {"base": "Q"}))
    case = payload.get("case", args.case)
    if case != args.case:
        raise InputError("payload case tag disagrees with --case", "case")
    if case == "a":
        ctx = ReducibleContext("a", field)
    elif case == "b":
        modulus = payload.get("F_modulus")
        if not isinstance(modulus, list):
            raise InputError("case (b) needs F_modulus", "F_modulus")
        F = etale_make(field, [ser.parse_scalar(field, c, f"F_modulus[{i}]")
                               for i, c in enumerate(modulus)])
        ctx = ReducibleContext("b", field, F=F)
    elif case == "c":
        alg = ser.parse_algebra(field, payload.get("B", {"a": 1, "b": 1}))
        ctx = ReducibleContext("c", field, alg=alg)
    else:
        raise InputError(f"unknown case {case!r}", "case")
    x = ser.parse_case_pair(ctx, payload, "")
    if args.target == "W":
        g, w = ctx.reduce_to_W(x, seed=args.seed, budget=args.budget)
        _emit({"g": ser.ser_case_group(g), "w": ser.ser_case_pair(w), "seed": args.seed})
    else:
        p, u, eta = ctx.reduce_W_to_U(x, seed=args.seed, budget=args.budget)
        _emit({"p": ser.ser_case_group(p), "u": ser.ser_case_pair(u),
               "eta_applied": eta, "seed": args.seed})
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="quatpairs",
                                 description="exact computation with pairs of Hermitian "
                                             "forms over quaternion algebras")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="splitting type and invariants of a pair")
    p.add_argument("--input", help="JSON payload path (default stdin)")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("rep", help="explicit orbit representative")
    p.add_argument("--type", required=True, choices=["split", "mixed", "cubic"])
    p.add_argument("--params", help="inline JSON parameters")
    p.add_argument("--input", help="JSON payload path (default stdin)")
    p.set_defaults(fn=cmd_rep)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("--suite", default="identities",
                   choices=["identities", "representatives", "reducible", "all"])
    p.add_argument("--field", default="Q", help="Q or Fp:<odd prime>")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("census", help="finite-field orbit census")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--samples", type=int, default=100000, help="sample count for n=3")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--emit-orbit-sizes", action="store_true")
    p.add_argument("--backend", default=None, choices=[None, "numba", "numpy"], nargs="?")
    p.add_argument("--limits", default=None,
                   help='JSON resource caps for enumeration, e.g. {"max_states": 531441}')
    p.add_argument("--max-states", type=int, default=None, help="shorthand for max_states")
    p.set_defaults(fn=cmd_census)

    p = sub.add_parser("params", help="fiber parameter set of a cubic etale algebra")
    p.add_argument("--field", default="Q", help="Q or Fp:<odd prime>")
    p.add_argument("--L", required=True, help="comma list c0,c1,c2,c3 of the monic cubic")
    p.add_argument("--B", default="-1,-1", help="a,b of the quaternion algebra (Q only)")
    p.set_defaults(fn=cmd_params)

    p = sub.add_parser("reduce", help="constructive reduction to W or U")
    p.add_argument("--case", required=True, choices=["a", "b", "c"])
    p.add_argument("--target", required=True, choices=["W", "U"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=64)
    p.add_argument("--input", help="JSON payload path (default stdin)")
    p.set_defaults(fn=cmd_reduce)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        _emit({"code": exc.code, "message": str(exc), "offending_path": exc.offending_path})
        return 1
    except AlgebraError as exc:
        _emit({"code": exc.code, "message": str(exc), "offending_path": exc.offending_path})
        return 2
    except (ValueError, KeyError, TypeError) as exc:
        _emit({"code": "InputError", "message": str(exc), "offending_path": None})
        return 1


if __name__ == "__main__":
    sys.exit(main())
