"""Command-line front end: ``daggeralg <verb> [flags] [files]``.

Every verb prints one canonical JSON document (sorted keys, exact rational
strings).  Failures print ``{"error": {...}}`` and exit nonzero: 2 for
usage and parse problems, 1 for errors raised by the computation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from fractions import Fraction

from .errors import DaggerError, SchemaError
from .scalar import format_rational, format_valuation, to_rational, to_slope

CUTOFF_ENV = "DAGGERALG_CUTOFF"
DEFAULT_CUTOFF = "40"


class UsageError(Exception):
    kind = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _slope(text):
    try:
        return to_slope(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _rational(text):
    try:
        return to_rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _default_cutoff():
    return _rational(os.environ.get(CUTOFF_ENV, DEFAULT_CUTOFF))


class _Inputs:
    """Loads input files and remembers the last one for error reports."""

    def __init__(self):
        self.current = None
        self.loaded = []

    def load(self, path):
        self.current = path
        try:
            if path == "-":
                return json.load(sys.stdin)
            with open(path, encoding="utf-8") as fh:
                return json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path} is not valid JSON: {exc.msg}") from exc

    def series(self, path):
        from .series import OSeries

        value = OSeries.from_json(self.load(path))
        self.loaded.append({"path": path, "certificate": value.cert.to_json()})
        return value

    def presentation(self, path):
        from .algebra import presentation_from_json

        return presentation_from_json(self.load(path))


def _var_index(spec, vars):
    if spec is None:
        return len(vars) - 1
    if spec in vars:
        return vars.index(spec)
    try:
        i = int(spec)
    except ValueError:
        raise UsageError(f"--var {spec!r} is neither a variable name nor a 1-based index") from None
    if not 1 <= i <= len(vars):
        raise UsageError(f"--var {i} out of range 1..{len(vars)}")
    return i - 1


# verbs -------------------------------------------------------------------------------

def cmd_gaussnorm(args, io):
    f = io.series(args.series)
    t = f.cert.t if args.t is None else args.t
    return {"w": format_valuation(f.gauss_valuation(t))}


def cmd_wdiv(args, io):
    from .weierstrass import weierstrass_divide

    f, g = io.series(args.f), io.series(args.g)
    var = _var_index(args.var, g.vars)
    return weierstrass_divide(f, g, var, args.t, args.cutoff, args.schedule).to_json()


def cmd_wprep(args, io):
    from .weierstrass import weierstrass_prepare

    g = io.series(args.g)
    return weierstrass_prepare(g, _var_index(args.var, g.vars), args.t, args.cutoff).to_json()


def cmd_wdist(args, io):
    from .weierstrass import is_distinguished

    g = io.series(args.g)
    return is_distinguished(g, _var_index(args.var, g.vars), args.t).to_json()


def cmd_wsigma(args, io):
    from .weierstrass import distinguishing_automorphism

    f = io.series(args.f)
    shifts, image, report = distinguishing_automorphism(f, args.t)
    return {"shifts": shifts, "image": image.to_json(), "report": report.to_json()}


def cmd_reduce(args, io):
    from .algebra import quotient_norm, reduce

    P = io.presentation(args.presentation)
    x = io.series(args.x)
    a = reduce(x, P, args.cutoff)
    out = a.to_json()
    if args.t is not None:
        out["quotient_norm"] = format_valuation(quotient_norm(a, args.t))
    return out


def cmd_cech(args, io):
    from .cech import DiscCover, cech_cohomology
    from .laurent import LaurentSeries

    cover = DiscCover(args.p, args.split, args.mode)
    samples = []
    for path in args.samples:
        data = io.load(path)
        for item in data if isinstance(data, list) else [data]:
            samples.append(LaurentSeries.from_json(item))
    return cech_cohomology(cover, samples, args.cutoff)


def cmd_hdr(args, io):
    from .derham import cohomology

    return cohomology(io.presentation(args.presentation), args.cutoff).to_json()


def cmd_kunneth(args, io):
    from .derham import kunneth

    return kunneth(io.presentation(args.a), io.presentation(args.b), args.cutoff)


def cmd_contrast(args, io):
    from .derham import completed_contrast

    return completed_contrast(args.p, args.depth, args.t if args.t is not None else 1)


def cmd_residue(args, io):
    from .duality import LaurentTail, residue_pair

    b = io.series(args.b)
    a = LaurentTail.from_json(io.load(args.a))
    return residue_pair(b, a).to_json()


def cmd_gram(args, io):
    from .duality import pairing_gram

    return pairing_gram(args.K, args.m).to_json()


def cmd_poincare(args, io):
    from .duality import poincare_check

    return poincare_check(io.presentation(args.presentation), args.cutoff)


def cmd_selftest(args, io):
    from .acceptance import run_acceptance

    results = run_acceptance(args.criterion or None)
    for r in results:
        print(r.line(), file=sys.stderr)
    return {"criteria": [r.to_json() for r in results], "passed": all(r.passed for r in results)}


def build_parser():
    parser = _Parser(prog="daggeralg", description="Certified computations in dagger algebras.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, fn, help_text, *, t=False, cutoff=False, var=False):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        if t:
            p.add_argument("--t", type=_slope, default=None, help="slope t (radius p**t)")
        if cutoff:
            p.add_argument("--cutoff", type=_rational, default=None, help=f"precision target (env {CUTOFF_ENV})")
        if var:
            p.add_argument("--var", default=None, help="variable name or 1-based index (default: last)")
        return p

    p = verb("gaussnorm", cmd_gaussnorm, "t-Gauss valuation of a series", t=True)
    p.add_argument("series")
    p = verb("wdiv", cmd_wdiv, "Weierstrass division f = g*q + r", t=True, cutoff=True, var=True)
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--schedule", choices=("euclid", "step"), default="euclid")
    p = verb("wprep", cmd_wprep, "Weierstrass preparation g = e*omega", t=True, cutoff=True, var=True)
    p.add_argument("g")
    p = verb("wdist", cmd_wdist, "distinguishedness report", t=True, var=True)
    p.add_argument("g")
    p = verb("wsigma", cmd_wsigma, "distinguishing automorphism", t=True)
    p.add_argument("f")
    p = verb("reduce", cmd_reduce, "normal form in a presentation", t=True, cutoff=True)
    p.add_argument("--presentation", required=True)
    p.add_argument("x")
    p = verb("cech", cmd_cech, "two-chart Cech complex of the disc", cutoff=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--split", type=_rational, required=True)
    p.add_argument("--mode", choices=("dagger", "completed"), default="dagger")
    p.add_argument("samples", nargs="*")
    p = verb("hdr", cmd_hdr, "de Rham cohomology report", cutoff=True)
    p.add_argument("--presentation", required=True)
    p = verb("kunneth", cmd_kunneth, "Künneth dimension check", cutoff=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p = verb("contrast", cmd_contrast, "dagger vs completed disc", t=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p = verb("residue", cmd_residue, "residue pairing of a function and a tail")
    p.add_argument("b")
    p.add_argument("a")
    p = verb("gram", cmd_gram, "monomial Gram matrix of the residue pairing")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p = verb("poincare", cmd_poincare, "Poincaré duality check on the torus", cutoff=True)
    p.add_argument("--presentation", required=True)
    p = verb("selftest", cmd_selftest, "run the acceptance suite")
    p.add_argument("--criterion", type=int, action="append", choices=range(1, 12))
    return parser


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, default=_json_default)


def _json_default(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    raise TypeError(f"not serializable: {type(value).__name__}")


def _error(kind, message, io, verb):
    body = {"kind": kind, "message": message, "verb": verb}
    if io.current is not None:
        body["input"] = io.current
    if io.loaded:
        body["inputs"] = io.loaded
    return {"error": body}


def main(argv=None):
    io = _Inputs()
    verb = None
    try:
        args = build_parser().parse_args(argv)
        verb = args.verb
        if getattr(args, "cutoff", "absent") is None:
            args.cutoff = _default_cutoff()
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            result = args.fn(args, io)
        if caught and isinstance(result, dict):
            result["warnings"] = sorted({str(w.message) for w in caught})
    except UsageError as exc:
        print(dumps(_error("usage", str(exc), io, verb)))
        return 2
    except argparse.ArgumentTypeError as exc:
        print(dumps(_error("usage", str(exc), io, verb)))
        return 2
    except SchemaError as exc:
        print(dumps(_error(exc.kind, str(exc), io, verb)))
        return 2
    except DaggerError as exc:
        print(dumps(_error(exc.kind, str(exc), io, verb)))
        return 1
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        print(dumps(_error("invalid-input", str(exc), io, verb)))
        return 1
    print(dumps(result))
    if verb == "selftest" and not result["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
