"""Command-line front end.

One invocation, one JSON document on stdout. Verdict-style subcommands
exit 0 when the inequality holds, 1 when violated, 3 when inconclusive;
malformed input and infeasibility exit 2 with a diagnostic on stderr.
Reports are deterministic for a fixed seed and inputs.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from dataclasses import dataclass

from . import jsonio
from .checkers import (
    InequalitySpec,
    check_cardinality,
    check_entropy,
    check_projection_theorem,
    check_shearer,
    empirical_lemma1,
    lemma2_witness,
)
from .covers import CoverSpec, is_fractional_cover, is_uniform_k_cover, min_fractional_cover
from .dist import (
    FiniteMap,
    RationalDist,
    entropy,
    is_suitable,
    minimal_suitable_k,
    pushforward,
    rationalize,
)
from .errors import EntrosetError
from .projections import (
    IndexSet,
    PointSet,
    conditional_avg_size,
    conditional_entropy,
    project_rv,
    project_set,
)
from .ruzsa import (
    DEFAULT_ENUM_LIMIT,
    RuzsaSpec,
    convergence_profile,
    preimage_lift,
    ruzsa_enumerate,
    ruzsa_size,
    type_bound_check,
    verify_commutation,
)


@dataclass
class RunConfig:
    """Global evaluation parameters shared by every subcommand."""

    tolerance: float = 1e-9
    log_base: float = 2
    enum_limit: int = DEFAULT_ENUM_LIMIT
    seed: int = 0
    format: str = "json"

    def __post_init__(self):
        if self.tolerance <= 0:
            raise EntrosetError("tolerance must be positive")
        if self.enum_limit < 1:
            raise EntrosetError("enum limit must be >= 1")


def _parse_base(text: str) -> float:
    if text == "2":
        return 2
    if text == "e":
        return math.e
    raise argparse.ArgumentTypeError("base must be 2 or e")


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip() != ""]


def _float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip() != ""]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entroset",
        description="entropy and set-projection inequality toolbox",
    )
    parser.add_argument("--tolerance", type=float, default=1e-9)
    parser.add_argument("--base", type=_parse_base, default=2)
    parser.add_argument("--limit", type=int, default=DEFAULT_ENUM_LIMIT)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=("json", "table"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="Shannon entropy of a distribution")
    p.add_argument("--dist", required=True)

    p = sub.add_parser("pushforward", help="distribution of f(X)")
    p.add_argument("--map", required=True)
    p.add_argument("--dist", required=True)

    p = sub.add_parser("suitable", help="minimal suitable k, optional divisibility test")
    p.add_argument("--dist", required=True)
    p.add_argument("--k", type=int)

    p = sub.add_parser("rationalize", help="best bounded-denominator approximation")
    p.add_argument("--weights", type=_float_list, required=True)
    p.add_argument("--max-denominator", type=int, required=True)

    ruzsa = sub.add_parser("ruzsa", help="type-class set operations").add_subparsers(
        dest="ruzsa_command", required=True
    )
    for name in ("size", "enum", "commute", "lift", "bound"):
        p = ruzsa.add_parser(name)
        p.add_argument("--dist", required=True)
        p.add_argument("--k", type=int, required=True)
        if name in ("commute", "lift"):
            p.add_argument("--map", required=True)
        if name == "lift":
            p.add_argument("--y", required=True, help="JSON array of elements")
    p = ruzsa.add_parser("converge")
    p.add_argument("--dist", required=True)
    p.add_argument("--ks", type=_int_list, required=True)

    p = sub.add_parser("project", help="project a point set or distribution")
    p.add_argument("--pointset")
    p.add_argument("--dist")
    p.add_argument("--indices", type=_int_list, required=True)

    p = sub.add_parser("condsize", help="conditional average projection size")
    p.add_argument("--pointset", required=True)
    p.add_argument("--t", type=_int_list, required=True)
    p.add_argument("--s", type=_int_list, default=[])

    p = sub.add_parser("condentropy", help="conditional entropy of a marginal")
    p.add_argument("--dist", required=True)
    p.add_argument("--s", type=_int_list, required=True)
    p.add_argument("--c", type=_int_list, default=[])

    cover = sub.add_parser("cover", help="cover feasibility and optimization").add_subparsers(
        dest="cover_command", required=True
    )
    p = cover.add_parser("check")
    p.add_argument("--cover", required=True)
    p.add_argument("--k", type=int)
    p = cover.add_parser("min")
    p.add_argument("--cover", required=True)

    check = sub.add_parser("check", help="inequality checks").add_subparsers(
        dest="check_command", required=True
    )
    for name in ("entropy", "cardinality"):
        p = check.add_parser(name)
        p.add_argument("--spec", required=True)
        p.add_argument("--input", required=True)
    for name in ("shearer", "projection"):
        p = check.add_parser(name)
        p.add_argument("--cover", required=True)
        p.add_argument("--input", required=True)
        p.add_argument("--side", choices=("sets", "entropy"), required=True)
        if name == "shearer":
            p.add_argument("--k", type=int, required=True)
    p = check.add_parser("lemma1")
    p.add_argument("--spec", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--cross-validate", action="store_true")

    witness = sub.add_parser("witness", help="witness constructions").add_subparsers(
        dest="witness_command", required=True
    )
    p = witness.add_parser("lemma2")
    p.add_argument("--map", required=True)
    p.add_argument("--points", required=True)

    sub.add_parser("demo", help="scripted projection-inequality walkthrough")
    return parser


def _load_dist(path: str) -> RationalDist:
    return jsonio.dist_from_json(jsonio.load_json(path))


def _load_map(path: str) -> FiniteMap:
    return jsonio.map_from_json(jsonio.load_json(path))


def _load_pointset(path: str) -> PointSet:
    return jsonio.pointset_from_json(jsonio.load_json(path))


def _load_cover(path: str) -> CoverSpec:
    return jsonio.cover_from_json(jsonio.load_json(path))


def _run_command(args, config: RunConfig) -> tuple[dict, int]:
    if args.command == "entropy":
        value = entropy(_load_dist(args.dist), base=config.log_base)
        return {"entropy": value}, 0

    if args.command == "pushforward":
        out = pushforward(_load_map(args.map), _load_dist(args.dist))
        return jsonio.dist_to_json(out), 0

    if args.command == "suitable":
        dist = _load_dist(args.dist)
        doc = {"minimal_suitable_k": minimal_suitable_k(dist)}
        if args.k is not None:
            doc["k"] = args.k
            doc["is_suitable"] = is_suitable(dist, args.k)
        return doc, 0

    if args.command == "rationalize":
        out = rationalize(args.weights, args.max_denominator)
        return jsonio.dist_to_json(out), 0

    if args.command == "ruzsa":
        return _run_ruzsa(args, config)

    if args.command == "project":
        S = IndexSet(args.indices)
        if (args.pointset is None) == (args.dist is None):
            raise EntrosetError("project needs exactly one of --pointset / --dist")
        if args.pointset:
            return jsonio.pointset_to_json(project_set(_load_pointset(args.pointset), S)), 0
        return jsonio.dist_to_json(project_rv(_load_dist(args.dist), S)), 0

    if args.command == "condsize":
        A = _load_pointset(args.pointset)
        value = conditional_avg_size(A, IndexSet(args.t), IndexSet(args.s))
        return {"size": value}, 0

    if args.command == "condentropy":
        X = _load_dist(args.dist)
        value = conditional_entropy(
            X, IndexSet(args.s), IndexSet(args.c), base=config.log_base
        )
        return {"entropy": value}, 0

    if args.command == "cover":
        return _run_cover(args)

    if args.command == "check":
        return _run_check(args, config)

    if args.command == "witness":
        witness = lemma2_witness(_load_pointset(args.points), _load_map(args.map))
        return jsonio.dist_to_json(witness), 0

    if args.command == "demo":
        return run_demo(config)

    raise EntrosetError(f"unknown command {args.command!r}")  # pragma: no cover


def _run_ruzsa(args, config: RunConfig) -> tuple[dict, int]:
    dist = _load_dist(args.dist)
    if args.ruzsa_command == "converge":
        rows = convergence_profile(dist, args.ks, base=config.log_base)
        return {"rows": rows}, 0
    spec = RuzsaSpec(dist, args.k)
    if args.ruzsa_command == "size":
        return {"size": str(ruzsa_size(spec))}, 0
    if args.ruzsa_command == "enum":
        vectors = [
            [list(x) for x in vec] for vec in ruzsa_enumerate(spec, config.enum_limit)
        ]
        return {"count": len(vectors), "vectors": vectors}, 0
    if args.ruzsa_command == "commute":
        report = verify_commutation(_load_map(args.map), spec, config.enum_limit)
        return report.to_json(), report.exit_code()
    if args.ruzsa_command == "lift":
        try:
            y = [tuple(v) for v in json.loads(args.y)]
        except (ValueError, TypeError) as exc:
            raise EntrosetError(f"--y must be a JSON array of elements: {exc}") from exc
        lifted = preimage_lift(_load_map(args.map), spec, y)
        return {"vector": [list(x) for x in lifted]}, 0
    if args.ruzsa_command == "bound":
        report = type_bound_check(spec)
        return report.to_json(), report.exit_code()
    raise EntrosetError(f"unknown ruzsa command {args.ruzsa_command!r}")  # pragma: no cover


def _run_cover(args) -> tuple[dict, int]:
    cover = _load_cover(args.cover)
    if args.cover_command == "check":
        if args.k is not None:
            report = is_uniform_k_cover(cover, args.k)
            code = 0 if report.verdict in ("uniform", "k-cover") else 1
            return report.to_json(), code
        report = is_fractional_cover(cover)
        return report.to_json(), report.exit_code()
    if args.cover_command == "min":
        solution = min_fractional_cover(cover.n, cover.members)
        doc = {
            "objective": jsonio.format_rational(solution.objective),
            "weights": [jsonio.format_rational(w) for w in solution.weights],
            "coverage": [jsonio.format_rational(s) for s in solution.certificate],
        }
        return doc, 0
    raise EntrosetError(f"unknown cover command {args.cover_command!r}")  # pragma: no cover


def _run_check(args, config: RunConfig) -> tuple[dict, int]:
    name = args.check_command
    if name in ("entropy", "cardinality"):
        spec = jsonio.ineq_spec_from_json(jsonio.load_json(args.spec))
        if name == "entropy":
            report = check_entropy(
                spec,
                _load_dist(args.input),
                tolerance=config.tolerance,
                base=config.log_base,
            )
        else:
            report = check_cardinality(
                spec, _load_pointset(args.input), tolerance=config.tolerance
            )
        return report.to_json(), report.exit_code()
    if name == "shearer":
        cover = _load_cover(args.cover)
        data = (
            _load_pointset(args.input)
            if args.side == "sets"
            else _load_dist(args.input)
        )
        report = check_shearer(
            data, cover, args.k, args.side,
            tolerance=config.tolerance, base=config.log_base,
        )
        return report.to_json(), report.exit_code()
    if name == "projection":
        cover = _load_cover(args.cover)
        data = (
            _load_pointset(args.input)
            if args.side == "sets"
            else _load_dist(args.input)
        )
        report = check_projection_theorem(
            data, cover, args.side,
            tolerance=config.tolerance, base=config.log_base,
        )
        return report.to_json(), report.exit_code()
    if name == "lemma1":
        spec = jsonio.ineq_spec_from_json(jsonio.load_json(args.spec))
        report = empirical_lemma1(
            spec,
            _load_dist(args.input),
            k_max=args.kmax,
            limit=config.enum_limit,
            tolerance=config.tolerance,
            base=config.log_base,
            cross_validate=args.cross_validate,
        )
        return report.to_json(), report.exit_code()
    raise EntrosetError(f"unknown check command {name!r}")  # pragma: no cover


def run_demo(config: RunConfig) -> tuple[dict, int]:
    """Projection-inequality walkthrough on a random subset of {0,1,2}^3.

    Checks the three-coordinate projection (Loomis-Whitney style) bound by
    counting, the matching entropy bound for the uniform variable, then the
    finite-k counting experiment whose rates approach the entropy values,
    and tabulates the convergence of log|set|/k.
    """
    rng = random.Random(config.seed)
    grid = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]
    points = sorted(rng.sample(grid, rng.randint(3, 6)))
    A = PointSet(3, points)
    pair_projections = [IndexSet((1, 2)), IndexSet((1, 3)), IndexSet((2, 3))]
    spec = InequalitySpec(
        lhs_map=FiniteMap.identity(grid),
        rhs_maps=[
            FiniteMap({x: tuple(x[i - 1] for i in S) for x in grid})
            for S in pair_projections
        ],
        coefficients=["1/2", "1/2", "1/2"],
    )
    counting = check_cardinality(spec, A, tolerance=config.tolerance)
    X = RationalDist.uniform(A)
    entropy_side = check_entropy(
        spec, X, tolerance=config.tolerance, base=config.log_base
    )
    finite_k = empirical_lemma1(
        spec, X, k_max=12,
        limit=config.enum_limit, tolerance=config.tolerance, base=config.log_base,
    )
    k_min = minimal_suitable_k(X)
    rows = convergence_profile(
        X, list(range(k_min, 13, k_min)), base=config.log_base
    )
    envelope_ok = all(-1e-12 <= row["gap"] <= row["envelope"] + 1e-9 for row in rows)
    all_hold = (
        counting.holds and entropy_side.holds and finite_k.holds and envelope_ok
    )
    doc = {
        "seed": config.seed,
        "points": [list(p) for p in points],
        "loomis_whitney": counting.to_json(),
        "han": entropy_side.to_json(),
        "finite_k": finite_k.to_json(),
        "convergence": rows,
        "envelope_ok": envelope_ok,
        "all_hold": all_hold,
    }
    return doc, 0 if all_hold else 1


def _format_table(doc: dict) -> str:
    lines = []
    for key, value in doc.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def run(argv=None) -> int:
    """Parse argv, execute, print one document; returns the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            tolerance=args.tolerance,
            log_base=args.base,
            enum_limit=args.limit,
            seed=args.seed,
            format=args.format,
        )
        doc, code = _run_command(args, config)
    except (EntrosetError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if config.format == "table":
        print(_format_table(doc))
    else:
        print(jsonio.dump_json(doc))
    return code


def main() -> None:  # pragma: no cover
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
