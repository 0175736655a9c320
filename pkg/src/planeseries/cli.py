"""Command-line front end.

Subcommands mirror the library layers: curve construction, section
spaces of twisted divisor classes, the stability verdict of a rank-2
series, the kernel-bundle syzygy certificate, and the end-to-end
reproduce/verify pair.  Exit status 0 means success or a passing
verdict, 1 a mathematical rejection or failed verification, 2 unusable
input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .exactalg.gf import ExactAlgError, Field
from .exactalg.forms import Form, n_monomials
from .exactalg.towers import canonical_field
from .curve import PlaneCurve
from .riemann_roch import Divisor, rr_space_twisted
from .linstab import LinearSeries, make_series, linear_stability_verdict
from .syzygy import destabilizer_certificate
from .pipeline import (PipelineConfig, CounterexampleCertificate,
                       reproduce, verify, curve_from_data, fermat_septic)

__all__ = ["main"]


class _InputError(Exception):
    """A file that could not be read or parsed at all."""


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as err:
        raise _InputError("cannot read %s: %s" % (path, err))
    except json.JSONDecodeError as err:
        raise _InputError("cannot parse %s: %s" % (path, err))
    if not isinstance(data, dict):
        raise _InputError("%s: expected a JSON object" % path)
    return data


def _field(args) -> Field:
    return canonical_field(args.prime, args.ext)


def _curve(args) -> PlaneCurve:
    K = _field(args)
    if args.curve == "fermat7":
        return fermat_septic(K)
    return curve_from_data(K, _load_json(args.curve))


def _form_from_table(K: Field, d: int, rows, where: str) -> Form:
    if not isinstance(rows, list) or len(rows) != n_monomials(d):
        raise _InputError("%s must list %d graded-lex coefficients"
                          % (where, n_monomials(d)))
    coeffs = []
    for v in rows:
        if isinstance(v, list):
            coeffs.append(K.elem(v))
        elif isinstance(v, int):
            coeffs.append(K.from_int(v))
        else:
            raise _InputError("%s entries must be residues or residue "
                              "vectors" % where)
    return Form(K, d, tuple(coeffs))


def _load_series(C: PlaneCurve, path: str) -> LinearSeries:
    data = _load_json(path)
    if "twist" not in data or "divisor" not in data:
        raise _InputError('%s needs "twist" and "divisor" entries' % path)
    t = data["twist"]
    if not isinstance(t, int) or isinstance(t, bool):
        raise _InputError("%s: twist must be an integer" % path)
    D = Divisor.from_data(C, data["divisor"])
    S = rr_space_twisted(C, t, D)
    sub = data.get("subspace")
    if sub is None:
        return make_series(C, S)
    if not isinstance(sub, list):
        raise _InputError("%s: subspace must be a list of coefficient "
                          "tables" % path)
    forms = [_form_from_table(S.K, S.m, rows, "%s subspace[%d]"
                              % (path, i)) for i, rows in enumerate(sub)]
    return make_series(C, S, subspace=forms)


def _add_curve_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--prime", type=int, default=31,
                     help="field characteristic (default 31)")
    sub.add_argument("--ext", type=int, default=1,
                     help="extension degree over the prime field")
    sub.add_argument("--curve", default="fermat7",
                     help='"fermat7" or a curve JSON file')


def _cmd_curve(args) -> int:
    if args.action != "check":
        raise _InputError("unknown curve action %r" % args.action)
    C = _curve(args)
    print("smooth plane curve of degree %d over %s: genus %d, "
          "gonality %d, canonical twist %d"
          % (C.d, C.K.tag(), C.genus, C.gonality, C.canonical_twist))
    return 0


def _cmd_rr(args) -> int:
    C = _curve(args)
    D = Divisor.from_data(C, _load_json(args.divisor))
    S = rr_space_twisted(C, args.twist, D)
    deg = args.twist * C.d + D.degree()
    print("class degree %d (twist %d plus divisor degree %d)"
          % (deg, args.twist, D.degree()))
    print("h0 = %d" % S.h0)
    if S.h0:
        print("presented by %d forms of degree %d over a degree-%d "
              "anchor" % (len(S.basis), S.m, S.m0))
    return 0


def _cmd_stability(args) -> int:
    C = _curve(args)
    series = _load_series(C, args.series)
    verdict = linear_stability_verdict(C, series)
    print("verdict: %s" % verdict.verdict)
    print("max image multiplicity %d against threshold %s"
          % (verdict.max_mult, verdict.threshold))
    if verdict.witness is not None:
        P, m = verdict.witness
        print("witness: multiplicity-%d point over %s"
              % (m, P.K.tag()))
    return 0


def _cmd_syzygy(args) -> int:
    C = _curve(args)
    series = _load_series(C, args.series)
    cert = destabilizer_certificate(C, series)
    print("verdict: %s" % cert.verdict)
    print("sub-line-bundle slope %s exceeds kernel bundle slope %s"
          % (cert.sub_slope, cert.kernel_slope))
    mults = ", ".join(repr(a) for a in cert.linear_forms)
    print("multipliers: %s" % mults)
    return 0


def _cmd_reproduce(args) -> int:
    config = PipelineConfig(prime=args.prime, ext=args.ext,
                            curve=(args.curve if args.curve == "fermat7"
                                   else _load_json(args.curve)),
                            seed=args.seed, max_tries=args.max_tries)
    cert = reproduce(config,
                     log=lambda s: print(s, file=sys.stderr))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(cert.to_json())
    print("certificate written to %s" % args.out)
    print("linear stability: %s (max multiplicity %s against "
          "threshold %s/%s)"
          % (cert.data["stability"]["verdict"],
             cert.data["stability"]["max_multiplicity"],
             cert.data["stability"]["threshold"]["num"],
             cert.data["stability"]["threshold"]["den"]))
    sl = cert.data["slopes"]
    print("kernel bundle: %s (slope %s/%s > %s/%s)"
          % (cert.data["syzygy"]["verdict"],
             sl["sub"]["num"], sl["sub"]["den"],
             sl["kernel"]["num"], sl["kernel"]["den"]))
    return 0


def _cmd_verify(args) -> int:
    try:
        with open(args.certificate, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise _InputError("cannot read %s: %s" % (args.certificate, err))
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise _InputError("cannot parse %s: %s" % (args.certificate, err))
    report = verify(data)
    for line in report.lines():
        print(line)
    return 0 if report.passed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planeseries",
        description="exact linear series computations on smooth plane "
                    "curves")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("curve", help="construct and certify a curve")
    p.add_argument("action", choices=["check"])
    _add_curve_args(p)
    p.set_defaults(func=_cmd_curve)

    p = subs.add_parser("rr", help="section space of a twisted divisor "
                                   "class")
    p.add_argument("--divisor", required=True,
                   help="divisor JSON file")
    p.add_argument("--twist", type=int, default=0,
                   help="hyperplane twist of the class (default 0)")
    _add_curve_args(p)
    p.set_defaults(func=_cmd_rr)

    p = subs.add_parser("stability",
                        help="multiplicity-criterion verdict of a "
                             "rank-2 series")
    p.add_argument("--series", required=True, help="series JSON file")
    _add_curve_args(p)
    p.set_defaults(func=_cmd_stability)

    p = subs.add_parser("syzygy",
                        help="kernel-bundle destabilization certificate")
    p.add_argument("--series", required=True, help="series JSON file")
    _add_curve_args(p)
    p.set_defaults(func=_cmd_syzygy)

    p = subs.add_parser("reproduce",
                        help="search, certify, and write a certificate")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-tries", type=int, default=10 ** 6)
    p.add_argument("--out", default="certificate.json",
                   help="output path (default certificate.json)")
    _add_curve_args(p)
    p.set_defaults(func=_cmd_reproduce)

    p = subs.add_parser("verify",
                        help="recompute a certificate's claims")
    p.add_argument("certificate", help="certificate JSON file")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    except ExactAlgError as err:
        print("rejected: %s" % err, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
