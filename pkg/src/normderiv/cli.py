"""Command-line front end.

    normderiv gamma --space regular:4
    normderiv derivative --space linf:3 --x 1,1,1 --y 0,0,1
    normderiv classify --space l1:4 --x 1/2,0,0,-1/2
    normderiv verify --trials 500 --seed 42
    normderiv sweep --format csv

Space specifications: ``lp:<n>:<p>``, ``l1:<n>``, ``linf:<n>``,
``regular:<n>`` (the regular 2n-gon), ``polygon:<path>`` and
``mix:<pos>-<neg>`` with pieces ``l1``, ``linf`` or ``lp(<p>)``.

Reports are JSON (default) or CSV. Every numeric result is an object with
``value``, ``method``, ``bound`` (exact, lower, upper or bracket) and
``tolerance``. Wall time is left out unless ``--timing`` is given, so two
runs with the same arguments print identical bytes.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 unsupported
space family, 4 domain precondition failure.
"""

import argparse
import csv
import io
import json
import math
import re
import sys
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import __version__
from .cones2d import ortho_cone
from .derivatives import NumericDerivativeError, derivative
from .gamma import (GammaMethod, check_uns_relation, e_constant, gamma,
                    gamma_closed_form_2ngon, gamma_polyhedral_2d,
                    modulus_of_convexity_estimate)
from .kernels import BACKEND
from .spaces import (Lp, OrthantMixed2D, RegularPolygon, SpaceError, UnsupportedSpace,
                     load_polygon)
from .symmetry import classify_l1, classify_linf, parse_rational_vector, probe_space_symmetry
from .verify import run_all

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_DOMAIN = 0, 1, 2, 3, 4

# floating-point evaluation of an exact or closed-form expression
EXACT_TOL = 1e-12
# accuracy the grid estimators are checked at in the acceptance suite
GRID_TOL = 1e-3

# Gamma routes collapsed onto the three report method tags
_METHOD_TAG = {
    GammaMethod.EXACT_POLYHEDRAL_2D: "Exact",
    GammaMethod.ATTAINED_BOUND: "Exact",
    GammaMethod.SMOOTH: "Exact",
    GammaMethod.CLOSED_FORM_2NGON: "ClosedForm",
    GammaMethod.GRID_ESTIMATE: "GridEstimate",
}


class SpecError(ValueError):
    """A space specification or vector that does not parse."""


class CLIError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


_PIECE = re.compile(r"^(l1|linf|lp\((?P<p>[^()]+)\))$")
_FAMILIES = ("lp", "l1", "linf", "regular", "polygon", "mix")


def _parse_p(text):
    t = text.strip().lower()
    if t in ("inf", "infinity"):
        return math.inf
    try:
        p = float(t)
    except ValueError:
        raise SpecError(f"bad exponent {text!r}") from None
    if not p >= 1 or math.isnan(p):
        raise SpecError(f"exponent must lie in [1, inf], got {text!r}")
    return p


def _parse_dim(text):
    if not re.fullmatch(r"[1-9][0-9]*", text.strip()):
        raise SpecError(f"bad dimension {text!r}")
    return int(text)


def _fmt_p(p):
    # shortest text that parses back to the same float
    if math.isinf(p):
        return "inf"
    return str(int(p)) if p.is_integer() else repr(p)


def _parse_piece(text):
    m = _PIECE.match(text.strip())
    if not m:
        raise SpecError(f"bad mixed-norm piece {text!r}; use l1, linf or lp(<p>)")
    if text.strip() == "l1":
        return 1.0
    if text.strip() == "linf":
        return math.inf
    return _parse_p(m.group("p"))


def _render_piece(p):
    if p == 1:
        return "l1"
    return "linf" if math.isinf(p) else f"lp({_fmt_p(p)})"


@dataclass(frozen=True)
class SpaceSpec:
    """A parsed space specification; ``render`` gives the canonical text."""

    family: str
    n: Optional[int] = None
    p: Optional[float] = None
    path: Optional[str] = None
    pos: Optional[float] = None
    neg: Optional[float] = None

    @classmethod
    def parse(cls, text):
        text = str(text).strip()
        family, _, rest = text.partition(":")
        family = family.lower()
        if family not in _FAMILIES:
            raise CLIError(EXIT_UNSUPPORTED, f"unsupported space family {family!r}; "
                           f"expected one of {', '.join(_FAMILIES)}")
        if not rest:
            raise SpecError(f"space {text!r} is missing its parameters")
        if family == "lp":
            n, sep, p = rest.partition(":")
            if not sep:
                raise SpecError(f"expected lp:<n>:<p>, got {text!r}")
            return cls("lp", n=_parse_dim(n), p=_parse_p(p))
        if family in ("l1", "linf", "regular"):
            n = _parse_dim(rest)
            if family == "regular" and n < 2:
                raise SpecError("regular:<n> needs n >= 2")
            return cls(family, n=n)
        if family == "polygon":
            return cls("polygon", path=rest)
        # mix: split at the dash that separates the two pieces
        m = re.fullmatch(r"(l1|linf|lp\([^()]+\))-(l1|linf|lp\([^()]+\))", rest.strip())
        if not m:
            raise SpecError(f"expected mix:<pos>-<neg>, got {text!r}")
        return cls("mix", pos=_parse_piece(m.group(1)), neg=_parse_piece(m.group(2)))

    def render(self):
        if self.family == "lp":
            return f"lp:{self.n}:{_fmt_p(self.p)}"
        if self.family in ("l1", "linf", "regular"):
            return f"{self.family}:{self.n}"
        if self.family == "polygon":
            return f"polygon:{self.path}"
        return f"mix:{_render_piece(self.pos)}-{_render_piece(self.neg)}"

    def build(self):
        if self.family == "lp":
            return Lp(self.p, self.n)
        if self.family == "l1":
            return Lp(1, self.n)
        if self.family == "linf":
            return Lp(math.inf, self.n)
        if self.family == "regular":
            return RegularPolygon(self.n)
        if self.family == "polygon":
            try:
                return load_polygon(self.path)
            except OSError as exc:
                raise SpecError(f"cannot read polygon file: {exc}") from None
            except json.JSONDecodeError as exc:
                raise SpecError(f"{self.path}: not valid JSON ({exc})") from None
        return OrthantMixed2D(self.pos, self.neg)


def _plain(v):
    """Convert numpy scalars and arrays (recursively) to JSON-ready values."""
    if isinstance(v, dict):
        return {str(k): _plain(w) for k, w in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(w) for w in v]
    if isinstance(v, np.ndarray):
        return _plain(v.tolist())
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating, float)):
        f = float(v)
        if math.isinf(f):
            return "inf" if f > 0 else "-inf"
        return None if math.isnan(f) else f
    return v


def _num(value, method, bound="exact", tolerance=EXACT_TOL, **extra):
    out = {"value": float(value), "method": method, "bound": bound, "tolerance": tolerance}
    out.update(extra)
    return out


def _vector(text, dim=None):
    try:
        v = np.array([float(f) for f in parse_rational_vector(text)])
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    if dim is not None and len(v) != dim:
        raise CLIError(EXIT_DOMAIN, f"vector {text!r} has {len(v)} coordinates, "
                       f"the space has dimension {dim}")
    return v


def _space(args):
    if not args.space:
        raise SpecError("--space is required")
    spec = SpaceSpec.parse(args.space)
    return spec, spec.build()


def _gamma_entry(res):
    tag = _METHOD_TAG[res.method]
    if res.method is GammaMethod.GRID_ESTIMATE:
        bound, tol = "lower", GRID_TOL
    else:
        bound, tol = "exact", EXACT_TOL
    return _num(res.value, tag, bound, tol, route=res.method.value,
                witness_x=res.witness_x, witness_y=res.witness_y)


def cmd_gamma(args):
    spec, space = _space(args)
    res = gamma(space, args.coarse, args.refine)
    results = {"gamma": _gamma_entry(res)}
    if isinstance(space, RegularPolygon):
        cf = gamma_closed_form_2ngon(space.n)
        results["gamma_closed_form"] = _num(cf, "ClosedForm")
        results["cross_check_abs_diff"] = _num(abs(cf - res.value), "Exact")
    rows = [{"quantity": k, "value": v["value"], "method": v["method"], "bound": v["bound"],
             "tolerance": v["tolerance"]} for k, v in results.items()]
    return spec, results, rows, EXIT_OK


def cmd_derivative(args):
    spec, space = _space(args)
    if args.x is None or args.y is None:
        raise SpecError("derivative needs --x and --y")
    x, y = _vector(args.x, space.dim), _vector(args.y, space.dim)
    d = derivative(space, x, y, args.method)
    if d.method.value == "exact":
        tag, bound, tol = "Exact", "exact", EXACT_TOL
    else:
        tag, bound, tol = "Numeric", "bracket", d.bracket_width
    results = {k: _num(getattr(d, k), tag, bound, tol)
               for k in ("rho_plus", "rho_minus", "rho")}
    rows = [{"quantity": k, "value": v["value"], "method": tag, "bound": bound,
             "tolerance": tol} for k, v in results.items()]
    return spec, results, rows, EXIT_OK


def cmd_classify(args):
    spec, space = _space(args)
    if args.x is None:
        raise SpecError("classify needs --x")
    if not isinstance(space, Lp) or space.p not in (1, math.inf):
        raise CLIError(EXIT_UNSUPPORTED, "classify supports l1:<n> and linf:<n> only")
    try:
        x = parse_rational_vector(args.x)
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    if len(x) != space.n:
        raise CLIError(EXIT_DOMAIN, f"x has {len(x)} coordinates, expected {space.n}")
    fn = classify_l1 if space.p == 1 else classify_linf
    c = fn(x, normalize=args.normalize)
    results = {"x": [str(v) for v in x], "left": c.left, "right": c.right,
               "class": c.label, "method": "Exact"}
    rows = [{"x": args.x, "left": c.left, "right": c.right, "class": c.label}]
    return spec, results, rows, EXIT_OK


def cmd_cone(args):
    spec, space = _space(args)
    if args.x is None:
        raise SpecError("cone needs --x")
    x = _vector(args.x, space.dim)
    method = None if args.method in (None, "exact") else "bisect"
    c = ortho_cone(space, x, method)
    tag = "Exact" if method is None else "Bisection"
    results = {"w1": c.w1, "w2": c.w2, "method": tag, "degenerate": c.degenerate,
               "tolerance": EXACT_TOL if method is None else 1e-12}
    rows = [{"boundary": "w1", "x": c.w1[0], "y": c.w1[1]},
            {"boundary": "w2", "x": c.w2[0], "y": c.w2[1]}]
    return spec, results, rows, EXIT_OK


def cmd_constants(args):
    spec, space = _space(args)
    results = {}
    try:
        results["E"] = _num(e_constant(space), "Exact")
    except UnsupportedSpace:
        pass
    uns = check_uns_relation(space, args.coarse, args.refine)
    g = gamma(space, args.coarse, args.refine)
    results["gamma"] = _gamma_entry(g)
    results["james"] = _num(uns.james, "GridEstimate", "lower", GRID_TOL)
    results["modulus_of_convexity"] = _num(
        modulus_of_convexity_estimate(space, args.eps, args.coarse, args.refine),
        "GridEstimate", "upper", GRID_TOL, eps=args.eps)
    results["uniformly_non_square"] = uns.uniformly_non_square
    results["uns_relation_violated"] = uns.violation
    rows = [{"quantity": k, "value": v["value"], "method": v["method"], "bound": v["bound"],
             "tolerance": v["tolerance"]} for k, v in results.items() if isinstance(v, dict)]
    code = EXIT_FAIL if uns.violation else EXIT_OK
    return spec, results, rows, code


def cmd_probe(args):
    spec, space = _space(args)
    r = probe_space_symmetry(space, trials=args.samples, seed=args.seed,
                             per_point=args.trials)
    results = {"samples": r.samples, "symmetric_samples": r.symmetric_samples,
               "symmetric": r.symmetric, "witness_checked": r.witness_checked,
               "counterexample": None if r.counterexample is None else list(r.counterexample),
               "notes": r.notes, "method": "Oracle"}
    rows = [{"samples": r.samples, "symmetric_samples": r.symmetric_samples,
             "symmetric": r.symmetric}]
    return spec, results, rows, EXIT_OK


def cmd_sweep(args):
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        ex = gamma_polyhedral_2d(RegularPolygon(n))
        cf = gamma_closed_form_2ngon(n)
        rows.append({"n": n, "vertices": 2 * n, "gamma_exact": ex.value,
                     "gamma_closed_form": cf, "abs_diff": abs(ex.value - cf),
                     "method": "Exact+ClosedForm", "tolerance": EXACT_TOL})
    return None, {"table": rows}, rows, EXIT_OK


def cmd_verify(args):
    only = set(args.only) if args.only else None
    res = run_all(trials=args.trials, seed=args.seed, only=only)
    crit = []
    for r in res:
        entry = {"id": r.id, "name": r.name, "passed": r.passed, "details": r.details}
        if args.timing:
            entry["seconds"] = r.seconds
        crit.append(entry)
    rows = [{"criterion": r.id, "name": r.name, "passed": r.passed} for r in res]
    ok = all(r.passed for r in res)
    if args.format == "json" and not args.quiet:
        for r in res:
            print(r.line(), file=sys.stderr)
    return None, {"criteria": crit, "all_passed": ok}, rows, EXIT_OK if ok else EXIT_FAIL


def _emit(doc, rows, fmt, out):
    if fmt == "json":
        out.write(json.dumps(_plain(doc), indent=2, sort_keys=False) + "\n")
        return
    rows = _plain(rows)
    cols = []
    for r in rows:
        cols += [k for k in r if k not in cols]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                    for k, v in r.items()})
    out.write(buf.getvalue())


def build_parser():
    ap = argparse.ArgumentParser(prog="normderiv", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, space=True):
        if space:
            p.add_argument("--space", help="space specification, e.g. lp:3:2 or regular:4")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--timing", action="store_true", help="include wall time")
        return p

    def grid(p):
        p.add_argument("--coarse", type=int, default=720, help="grid points per half-turn")
        p.add_argument("--refine", type=int, default=60, help="golden-section iterations")
        return p

    p = grid(common(sub.add_parser("gamma", help="the constant Gamma of a space")))
    p.set_defaults(func=cmd_gamma)

    p = common(sub.add_parser("derivative", help="norm derivatives rho'_+, rho'_-, rho'"))
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--method", choices=("exact", "numeric"))
    p.set_defaults(func=cmd_derivative)

    p = common(sub.add_parser("classify", help="rho-left/right symmetry in l1^n or linf^n"))
    p.add_argument("--x", help="rational coordinates, e.g. 1/2,0,0,-1/2")
    p.add_argument("--normalize", action="store_true",
                   help="scale x to a unit vector instead of rejecting it")
    p.set_defaults(func=cmd_classify)

    p = common(sub.add_parser("cone", help="BJ orthogonality cone of x in a plane"))
    p.add_argument("--x")
    p.add_argument("--method", choices=("exact", "bisect"))
    p.set_defaults(func=cmd_cone)

    p = grid(common(sub.add_parser("constants", help="E, Gamma, James constant, modulus")))
    p.add_argument("--eps", type=float, default=1.0, help="modulus of convexity argument")
    p.set_defaults(func=cmd_constants)

    p = common(sub.add_parser("probe", help="random search for asymmetric rho pairs"))
    p.add_argument("--samples", type=int, default=50, help="random points x")
    p.add_argument("--trials", type=int, default=100, help="oracle trials per point")
    p.set_defaults(func=cmd_probe)

    p = common(sub.add_parser("sweep", help="Gamma of regular 2n-gons, exact vs closed form"),
               space=False)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=12)
    p.set_defaults(func=cmd_sweep)

    p = common(sub.add_parser("verify", help="run the acceptance suite"), space=False)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--only", type=int, nargs="+", metavar="K")
    p.add_argument("--quiet", action="store_true", help="no per-criterion lines on stderr")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    t = time.perf_counter()
    try:
        if getattr(args, "n_min", 2) < 2 or getattr(args, "n_min", 2) > getattr(args, "n_max", 12):
            raise SpecError("need 2 <= n-min <= n-max")
        spec, results, rows, code = args.func(args)
    except CLIError as exc:
        return _fail(exc.code, str(exc))
    except SpecError as exc:
        return _fail(EXIT_PARSE, str(exc))
    except UnsupportedSpace as exc:
        return _fail(EXIT_UNSUPPORTED, str(exc))
    except (SpaceError, NumericDerivativeError) as exc:
        return _fail(EXIT_DOMAIN, f"{type(exc).__name__}: {exc}")
    doc = {"command": ["normderiv", *argv], "subcommand": args.command,
           "space": spec.render() if spec else None, "seed": args.seed,
           "backend": BACKEND, "results": results}
    if args.timing:
        doc["wall_time_s"] = time.perf_counter() - t
    _emit(doc, rows, args.format, out)
    return code


def _fail(code, message):
    print(f"normderiv: error: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
