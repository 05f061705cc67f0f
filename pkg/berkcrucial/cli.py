"""
Command-line front end: parse a map, run one query, emit JSON, DOT or CSV.
Exit status 0 on success, 2 when a residual extension is required, 1 on input errors.
"""

import argparse
import json
import logging
import sys
from fractions import Fraction
from tokenize import TokenError
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd
import sympy
from marshmallow import ValidationError
from sympy.parsing.sympy_parser import convert_xor, implicit_multiplication_application, parse_expr, standard_transformations

from berkcrucial import schemas
from berkcrucial.crucial import (
    build_report,
    crucial_at,
    crucial_measure,
    crucial_tree,
    is_potentially_good,
    minresloc,
    ordres_closed_form,
    ordres_direct,
    ordres_via_formula,
)
from berkcrucial.degrees import degree_data
from berkcrucial.equidist import default_test_functions, default_test_tree, equidist_grid
from berkcrucial.errors import BerkCrucialError, UnsupportedExtension
from berkcrucial.maps import PrecisionPolicy, RationalMapRep
from berkcrucial.points import PROFILE_KINDS, BerkPoint, path_profile, profile_frame
from berkcrucial.selftest import run_suite
from berkcrucial.tower import TowerElem
from config.settings import CrucialConfig, get_config

logger = logging.getLogger(__name__)

_Z, _P = sympy.symbols("z p")
_TRANSFORMS = standard_transformations + (convert_xor, implicit_multiplication_application)


class Job:
    """Parsed arguments plus the objects every subcommand needs."""

    def __init__(self, args: argparse.Namespace, config: CrucialConfig) -> None:
        self.args = args
        self.config = config
        self.policy: PrecisionPolicy = config.precision_policy()
        self.f: RationalMapRep = parse_map(args.map, args.p)
        self.at: BerkPoint = parse_point(args.at, args.p, args.e)


# ----------------------------------------------------------------------
# Parsing
# ----------------------------------------------------------------------

def _expression(text: str, p: int) -> sympy.Expr:
    try:
        expr = parse_expr(text, local_dict={"z": _Z, "p": _P}, transformations=_TRANSFORMS)
    except (sympy.SympifyError, SyntaxError, TypeError, TokenError) as exc:
        raise ValueError(f"cannot parse {text!r}: {exc}")
    return sympy.sympify(expr).subs(_P, p)


def _rational(c: sympy.Expr) -> Fraction:
    if not c.is_Rational:
        raise ValueError(f"coefficient {c} is not rational")
    return Fraction(int(c.p), int(c.q))


def parse_map(text: str, p: int) -> RationalMapRep:
    """A rational map in z; the symbol p stands for the prime."""
    expr = sympy.together(_expression(text, p))
    if expr.free_symbols - {_Z}:
        raise ValueError(f"map {text!r} may only involve z and p")
    num, den = sympy.fraction(expr)
    try:
        num_poly = sympy.Poly(num, _Z, domain=sympy.QQ)
        den_poly = sympy.Poly(den, _Z, domain=sympy.QQ)
    except sympy.polys.polyerrors.PolynomialError as exc:
        raise ValueError(f"map {text!r} is not rational in z: {exc}")
    numerator = [_rational(c) for c in reversed(num_poly.all_coeffs())]
    denominator = [_rational(c) for c in reversed(den_poly.all_coeffs())]
    return RationalMapRep.from_coefficients(numerator, denominator, p)


def parse_point(text: Optional[str], p: int, e: int = 1) -> BerkPoint:
    """"center;t" for zeta(center; t), "inf" for infinity; empty means S_can."""
    if not text:
        return BerkPoint.canonical(p)
    if text.strip() == "inf":
        return BerkPoint.infinity(p)
    parts = text.split(";")
    if len(parts) != 2:
        raise ValueError(f"point {text!r} is not of the form 'center;t'")
    center = _rational(_expression(parts[0], p))
    t = _rational(_expression(parts[1], p))
    return BerkPoint.type_ii(TowerElem.rational(center, p, e), t, p)


# ----------------------------------------------------------------------
# Subcommands; each returns (kind, payload) where kind is a schema name, "dot" or "csv"
# ----------------------------------------------------------------------

Result = Tuple[str, object]


def cmd_ordres(job: Job) -> Result:
    f, s = job.f, job.at
    direct, formula, closed = ordres_direct(f, s), ordres_via_formula(f, s), ordres_closed_form(f, s)
    equal = direct == formula == closed
    if not equal:
        logger.error(f"ordRes routes disagree at {s.label()}: {direct}, {formula}, {closed}")
    return "crucial-v1", {"at": s.as_dict(), "direct": direct, "formula": formula, "closed_form": closed, "equal": equal}


def cmd_crucial(job: Job) -> Result:
    return "crucial-v1", {"at": job.at.as_dict(), "crucial": crucial_at(job.f, job.at)}


def cmd_minresloc(job: Job) -> Result:
    f = job.f
    tree = crucial_tree(f, job.policy)
    nu, _ = crucial_measure(f, tree)
    locus = minresloc(f, tree.refine(nu.support()), nu)
    doc = locus.as_dict()
    doc["potentially_good"] = is_potentially_good(f, locus)
    return "crucial-v1", doc


def cmd_goodred(job: Job) -> Result:
    _, doc = cmd_minresloc(job)
    return "crucial-v1", {"potentially_good": doc["potentially_good"], "min": doc["min"]}


def cmd_crucialtree(job: Job) -> Result:
    report = build_report(job.f, job.policy)
    if job.args.format == "json":
        doc = report.tree.as_dict()
        doc["annotations"] = {str(i): label for i, label in report.weight_annotations().items()}
        return "tree-v1", doc
    return "dot", report.to_dot()


def cmd_weights(job: Job) -> Result:
    f = job.f
    _, weights = crucial_measure(f, crucial_tree(f, job.policy))
    if job.args.format == "csv":
        return "csv", pd.DataFrame([(s.label(), w) for s, w in weights], columns=["point", "w"])
    rows = [{"point": s.as_dict(), "w": w} for s, w in weights]
    return "crucial-v1", {"weights": rows, "total": sum(w for _, w in weights)}


def cmd_degrees(job: Job) -> Result:
    return "degrees-v1", degree_data(job.f, job.at).as_dict()


def cmd_profile(job: Job) -> Result:
    end = parse_point(job.args.to, job.args.p, job.args.e)
    return "csv", profile_frame(path_profile(job.args.kind, job.f, job.at, end))


def cmd_equidist(job: Job) -> Result:
    f, args = job.f, job.args
    tree = default_test_tree(f, job.policy)
    frame = equidist_grid(
        f,
        list(range(1, args.n + 1)),
        default_test_functions(tree),
        workers=job.config.WORKERS,
        tail=job.config.TAIL_N,
        cap=args.cap,
        policy=job.policy,
    )
    if args.format == "csv":
        return "csv", frame
    return "equidist-v1", {"p": f.p, "d": f.d, "rows": frame.to_dict(orient="records")}


def cmd_selftest(job: Job) -> Result:
    summary = run_suite(job.args.seed, job.args.samples, job.policy)
    return "summary", summary


COMMANDS: Dict[str, Callable[[Job], Result]] = {
    "ordres": cmd_ordres,
    "crucial": cmd_crucial,
    "minresloc": cmd_minresloc,
    "crucialtree": cmd_crucialtree,
    "weights": cmd_weights,
    "goodred": cmd_goodred,
    "degrees": cmd_degrees,
    "profile": cmd_profile,
    "equidist": cmd_equidist,
    "selftest": cmd_selftest,
}


# ----------------------------------------------------------------------
# Entry point
# ----------------------------------------------------------------------

def build_parser(config: CrucialConfig) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="berkcrucial", description="Crucial functions and minimal resultant loci")
    parser.add_argument("command", choices=sorted(COMMANDS), help="Query to run")
    parser.add_argument("--p", type=int, default=5, help="Residue characteristic")
    parser.add_argument("--e", type=int, default=1, help="Initial ramification index for point centers")
    parser.add_argument("--map", default="z^2", help="Rational map in z; 'p' denotes the prime")
    parser.add_argument("--at", default="", help="Point 'center;t' (default S_can)")
    parser.add_argument("--to", default="0;1", help="Path end for the profile command")
    parser.add_argument("--kind", default="crucial", choices=PROFILE_KINDS, help="Profile kind")
    parser.add_argument("--n", type=int, default=3, help="Largest iterate for equidist")
    parser.add_argument("--seed", type=int, default=config.SEED, help="Seed for randomized suites")
    parser.add_argument("--samples", type=int, default=20, help="Instances per selftest check")
    parser.add_argument("--cap", type=int, default=config.DEGREE_CAP, help="Iterate degree cap")
    parser.add_argument("--format", choices=["json", "dot", "csv"], default=None, help="Output format")
    parser.add_argument("--out", default=None, help="Output file (default stdout)")
    return parser


def setup_logging(config: CrucialConfig) -> None:
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if config.LOG_FILE:
        handlers.append(logging.FileHandler(config.LOG_FILE))
    logging.basicConfig(level=config.LOG_LEVEL.upper(), format=config.LOG_FORMAT, handlers=handlers)


def render(kind: str, payload: object) -> str:
    if kind == "dot":
        return str(payload) + "\n"
    if kind == "csv":
        return payload.to_csv(index=False)
    if kind == "summary":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return schemas.dumps(kind, payload) + "\n"


def _fail(status: int, exc: Exception) -> int:
    if isinstance(exc, BerkCrucialError):
        body = exc.as_dict()
    elif isinstance(exc, ValidationError):
        body = {"error": "ValidationError", "message": "invalid document", "payload": exc.messages}
    else:
        body = {"error": type(exc).__name__, "message": str(exc), "payload": {}}
    sys.stderr.write(json.dumps(body, sort_keys=True, default=str) + "\n")
    return status


def run(argv: Sequence[str]) -> int:
    config = get_config()
    setup_logging(config)
    problems = config.validate()
    if problems:
        for problem in problems:
            logger.error(f"configuration: {problem}")
        return 1
    args = build_parser(config).parse_args(list(argv))
    if args.command == "selftest":
        logger.info(f"selftest seed {args.seed}")
    try:
        job = Job(args, config)
        kind, payload = COMMANDS[args.command](job)
        text = render(kind, payload)
    except UnsupportedExtension as exc:
        logger.warning(f"unsupported field extension: {exc}")
        return _fail(2, exc)
    except (BerkCrucialError, ValueError, ValidationError) as exc:
        logger.error(f"{args.command} failed: {exc}")
        return _fail(1, exc)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
        logger.info(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    if kind == "summary" and not payload.get("passed", False):
        return 1
    return 0


__all__ = ["COMMANDS", "build_parser", "parse_map", "parse_point", "render", "run", "setup_logging"]
