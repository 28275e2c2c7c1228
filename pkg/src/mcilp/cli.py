"""Command-line surface: problem files in, text answers out.

Every command prints deterministically (byte-identical across runs) and
exits 0 on success, 2 on unparseable input, 3 when the requested set is
empty or the problem infeasible, 4 when input breaks a stated contract
(unbounded region, asymmetric ball, wrong dimensions, oversized scans).
Rationals print as p/q; integers print bare.
"""

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .errors import (
    DimensionMismatch,
    EmptyPolyhedron,
    EmptySet,
    NegativeMoment,
    ParseError,
    TooLarge,
    UnboundedPolyhedron,
)
from .enumeration import TermOrder, enumerate_support
from .genfunc import format_srf, specialize_count
from .pareto import (
    Problem,
    count_pareto,
    dominated_gf,
    ideal_point,
    outcome_window,
    pareto_gf,
    parse_problem,
    strategies_gf,
)
from .select import (
    OddLp,
    PolyhedralNorm,
    PseudoNorm,
    enumerate_by_distance,
    fptas_nearest_pseudonorm,
    nearest_odd_lp,
    nearest_polyhedral,
    parse_norm,
)
from . import oracle


def fmt_rational(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _load_problem(path):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    return parse_problem(text)


def _parse_point(text, k):
    try:
        point = tuple(int(x) for x in text.split())
    except ValueError:
        raise ParseError(f"bad point {text!r}") from None
    if len(point) != k:
        raise DimensionMismatch(
            f"point has {len(point)} coordinates, problem has {k} objectives")
    return point


def _parse_eps(text):
    try:
        if "/" in text:
            a, b = text.split("/")
            eps = Fraction(int(a), int(b))
        else:
            eps = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {text!r}") from None
    if not 0 < eps < 1:
        raise DimensionMismatch("eps must be in (0, 1)")
    return eps


def _load_order(path, p):
    if path is None:
        return TermOrder.lex(p)
    try:
        rows = [
            tuple(int(x) for x in line.split())
            for line in Path(path).read_text().splitlines()
            if line.strip()
        ]
    except (OSError, ValueError) as e:
        raise ParseError(f"cannot read order matrix {path}: {e}") from None
    try:
        order = TermOrder(rows)
    except (ValueError, DimensionMismatch) as e:
        raise ParseError(f"bad order matrix: {e}") from None
    if order.p != p:
        raise DimensionMismatch(
            f"order matrix is {order.p}x{order.p}, need {p}x{p}")
    return order


def _radius(problem, vhat=()):
    box = outcome_window(problem)
    m = max(max(abs(x) for x in box.lower), max(abs(x) for x in box.upper))
    return max([m] + [abs(x) for x in vhat])


# ---------------------------------------------------------------------------
# subcommands


def cmd_count(args):
    problem = _load_problem(args.problem)
    print(f"pareto: {count_pareto(problem)}")
    _, g_st = strategies_gf(problem)
    print(f"strategies: {specialize_count(g_st)}")
    return 0


def cmd_gf(args):
    problem = _load_problem(args.problem)
    if args.which == "pareto":
        g = pareto_gf(problem)
    elif args.which == "strategies":
        _, g = strategies_gf(problem)
    else:
        g = dominated_gf(problem)
    sys.stdout.write(format_srf(g))
    return 0


def cmd_enumerate(args):
    problem = _load_problem(args.problem)
    p = args.project if args.project is not None else problem.k
    if not 1 <= p <= problem.k:
        raise DimensionMismatch(
            f"projection width must be between 1 and {problem.k}")
    order = _load_order(args.order, p)
    g = pareto_gf(problem)
    M = _radius(problem)
    n = 0
    for w in enumerate_support(g, order, M):
        print(" ".join(str(x) for x in w))
        n += 1
        if args.limit is not None and n >= args.limit:
            break
    if n == 0:
        raise EmptySet("no points to enumerate")
    return 0


def _selection_setup(args, problem):
    vhat = _parse_point(args.point, problem.k)
    g = pareto_gf(problem)
    M = _radius(problem, vhat)
    return g, vhat, M


def cmd_nearest(args):
    problem = _load_problem(args.problem)
    g, vhat, M = _selection_setup(args, problem)
    norm = parse_norm(args.norm, problem.k)
    if not isinstance(norm, PolyhedralNorm):
        raise DimensionMismatch(
            "nearest needs a polyhedral norm; use fptas for pseudo-norms")
    order = _load_order(args.order, problem.k)
    point, d = nearest_polyhedral(g, norm, vhat, M, order)
    print("point: " + " ".join(str(x) for x in point))
    print(f"distance: {fmt_rational(d)}")
    return 0


def cmd_rank(args):
    problem = _load_problem(args.problem)
    g, vhat, M = _selection_setup(args, problem)
    norm = parse_norm(args.norm, problem.k)
    if not isinstance(norm, PolyhedralNorm):
        raise DimensionMismatch(
            "rank needs a polyhedral norm; use fptas for pseudo-norms")
    order = _load_order(args.order, problem.k)
    n = 0
    for point, d in enumerate_by_distance(g, norm, vhat, M, order):
        print(" ".join(str(x) for x in point) + f" : {fmt_rational(d)}")
        n += 1
        if args.limit is not None and n >= args.limit:
            break
    if n == 0:
        raise EmptySet("no points to rank")
    return 0


def cmd_fptas(args):
    problem = _load_problem(args.problem)
    g, vhat, M = _selection_setup(args, problem)
    eps = _parse_eps(args.eps)
    norm = parse_norm(args.pseudo, problem.k)
    if isinstance(norm, PseudoNorm):
        res = fptas_nearest_pseudonorm(g, norm, vhat, eps, M)
    elif isinstance(norm, OddLp):
        res = nearest_odd_lp(g, norm.p, vhat, eps, M)
    else:
        raise DimensionMismatch(
            "fptas needs a pseudo-norm; use nearest for polyhedral norms")
    c = res.certificate
    print("point: " + " ".join(str(x) for x in res.point))
    print(f"qvalue: {fmt_rational(res.qvalue)}")
    print(f"distance_low: {res.bracket[0]}")
    print(f"distance_high: {res.bracket[1]}")
    print(
        "certificate: "
        f"gamma={c['gamma']} delta={fmt_rational(c['delta'])} s={c['s']} "
        f"eps_prime={fmt_rational(c['eps_prime'])} "
        f"moment={fmt_rational(c['moment'])} count={c['count']}"
    )
    return 0


def cmd_ideal(args):
    problem = _load_problem(args.problem)
    print("ideal: " + " ".join(str(x) for x in ideal_point(problem)))
    return 0


def cmd_serve(args):
    from .service import run_server
    if args.ui is not None and not Path(args.ui).is_dir():
        raise ParseError(f"no such directory: {args.ui}")
    run_server(args.port, ui_root=args.ui)
    return 0


# ---------------------------------------------------------------------------
# oracle mirrors


def _oracle_instance(args):
    return oracle.Instance("cli", _load_problem(args.problem))


def cmd_oracle_count(args):
    inst = _oracle_instance(args)
    print(f"pareto: {len(inst.pareto_set())}")
    print(f"strategies: {len(inst.strategy_set())}")
    return 0


def cmd_oracle_enumerate(args):
    inst = _oracle_instance(args)
    front = inst.pareto_set()
    p = args.project if args.project is not None else inst.problem.k
    pts = sorted({o[inst.problem.k - p:] for o in front})
    order = _load_order(args.order, p)
    n = 0
    for w in order.sort(pts):
        print(" ".join(str(x) for x in w))
        n += 1
        if args.limit is not None and n >= args.limit:
            break
    if n == 0:
        raise EmptySet("no points to enumerate")
    return 0


def cmd_oracle_nearest(args):
    inst = _oracle_instance(args)
    vhat = _parse_point(args.point, inst.problem.k)
    norm = parse_norm(args.norm, inst.problem.k)
    point, d = oracle.oracle_nearest(inst.pareto_set(), norm, vhat)
    print("point: " + " ".join(str(x) for x in point))
    print(f"distance: {fmt_rational(d)}")
    return 0


def cmd_oracle_rank(args):
    inst = _oracle_instance(args)
    vhat = _parse_point(args.point, inst.problem.k)
    norm = parse_norm(args.norm, inst.problem.k)
    measure = norm.distance if hasattr(norm, "distance") else norm.value
    front = inst.pareto_set()
    if not front:
        raise EmptySet("no points to rank")
    ranked = sorted(
        (Fraction(measure(tuple(a - b for a, b in zip(p, vhat)))), p)
        for p in front
    )
    n = 0
    for d, point in ranked:
        print(" ".join(str(x) for x in point) + f" : {fmt_rational(d)}")
        n += 1
        if args.limit is not None and n >= args.limit:
            break
    return 0


def cmd_oracle_fptas(args):
    inst = _oracle_instance(args)
    vhat = _parse_point(args.point, inst.problem.k)
    norm = parse_norm(args.pseudo, inst.problem.k)
    if not hasattr(norm, "value"):
        raise DimensionMismatch("oracle fptas needs a pseudo-norm")
    point, q = oracle.oracle_nearest(inst.pareto_set(), norm, vhat)
    print("point: " + " ".join(str(x) for x in point))
    print(f"qvalue: {fmt_rational(q)}")
    return 0


def cmd_oracle_ideal(args):
    inst = _oracle_instance(args)
    print("ideal: " + " ".join(str(x) for x in inst.ideal_point()))
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_selection_args(p, pseudo=False):
    p.add_argument("problem")
    p.add_argument("--point", required=True, help='reference, e.g. "0 0"')
    if pseudo:
        p.add_argument("--pseudo", required=True, help="pseudo-norm spec")
        p.add_argument("--eps", required=True, help="rational accuracy in (0,1)")
    else:
        p.add_argument("--norm", required=True, help="norm spec")
        p.add_argument("--order", default=None, help="term-order matrix file")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mcilp",
        description="Exact counting, ordered streaming, and nearest-point "
                    "selection over Pareto optima of bounded integer programs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count Pareto optima and strategies")
    p.add_argument("problem")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("gf", help="print a generating-function encoding")
    p.add_argument("problem")
    p.add_argument("--which", choices=("pareto", "strategies", "dominated"),
                   default="pareto")
    p.set_defaults(func=cmd_gf)

    p = sub.add_parser("enumerate", help="stream Pareto optima in term order")
    p.add_argument("problem")
    p.add_argument("--order", default=None, help="term-order matrix file")
    p.add_argument("--project", type=int, default=None,
                   help="stream only the last p outcome coordinates")
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("nearest", help="exact nearest Pareto optimum")
    _add_selection_args(p)
    p.set_defaults(func=cmd_nearest)

    p = sub.add_parser("rank", help="stream Pareto optima by distance")
    _add_selection_args(p)
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("fptas", help="guaranteed approximate nearest point")
    _add_selection_args(p, pseudo=True)
    p.set_defaults(func=cmd_fptas)

    p = sub.add_parser("ideal", help="componentwise outcome minima")
    p.add_argument("problem")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("serve", help="start the local HTTP service")
    p.add_argument("--port", type=int, default=8437)
    p.add_argument("--ui", metavar="DIR", default=None,
                   help="also serve the explorer's static files from DIR")
    p.set_defaults(func=cmd_serve)

    po = sub.add_parser("oracle", help="brute-force cross-checks")
    osub = po.add_subparsers(dest="oracle_command", required=True)

    p = osub.add_parser("count")
    p.add_argument("problem")
    p.set_defaults(func=cmd_oracle_count)

    p = osub.add_parser("enumerate")
    p.add_argument("problem")
    p.add_argument("--order", default=None)
    p.add_argument("--project", type=int, default=None)
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_oracle_enumerate)

    p = osub.add_parser("nearest")
    _add_selection_args(p)
    p.set_defaults(func=cmd_oracle_nearest)

    p = osub.add_parser("rank")
    _add_selection_args(p)
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_oracle_rank)

    p = osub.add_parser("fptas")
    _add_selection_args(p, pseudo=True)
    p.set_defaults(func=cmd_oracle_fptas)

    p = osub.add_parser("ideal")
    p.add_argument("problem")
    p.set_defaults(func=cmd_oracle_ideal)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (EmptyPolyhedron, EmptySet) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (UnboundedPolyhedron, DimensionMismatch, NegativeMoment,
            TooLarge, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
