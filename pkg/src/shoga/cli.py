"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or input error. Reports go to
standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .axioms import AXIOMS, check_axiom, random_suite
from .gamefile import GameFileError, dumps_game, game_to_dict, load_game
from .games import GameError, TuGame, format_coalition, parse_coalition
from .hodge import ConvergenceError, LatticeGraph, component_games, poisson_solve
from .maps import MAP_NAMES, get_map
from .values import VALUE_NAMES, probabilistic_value, shoga_generalized, value_weights
from .verify import run_all


def fmt_number(x: float) -> str:
    return f"{float(x) + 0.0:.12g}"


def fmt_coalition(mask: int) -> str:
    return "{" + format_coalition(int(mask)) + "}"


@dataclass
class Report:
    command: str
    config: dict
    seed: int
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    footer: dict = field(default_factory=dict)

    def render(self, style: str) -> str:
        header = {"tool": f"shoga {__version__}", "command": self.command, "config": self.config, "seed": self.seed}
        rows = [[fmt_number(v) if isinstance(v, (float, np.floating)) else v for v in row] for row in self.rows]
        footer = {k: fmt_number(v) if isinstance(v, (float, np.floating)) else v for k, v in self.footer.items()}
        if style == "json":
            doc = {"header": header, "columns": self.columns, "rows": rows, "footer": footer}
            return json.dumps(doc, indent=2, sort_keys=True) + "\n"
        lines = [
            f"# {header['tool']}",
            f"# command: {self.command}",
            "# config: " + json.dumps(self.config, sort_keys=True),
            f"# seed: {self.seed}",
        ]
        if style == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(self.columns)
            writer.writerows(rows)
            body = buf.getvalue().splitlines()
        else:
            cells = [self.columns] + [[str(c) for c in row] for row in rows]
            widths = [max(len(r[j]) for r in cells) for j in range(len(self.columns))]
            body = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
        tail = [f"# {k}: {v}" for k, v in footer.items()]
        return "\n".join(lines + body + tail) + "\n"


class UsageError(Exception):
    pass


def _threads() -> int:
    raw = os.environ.get("SHOGA_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise UsageError(f"SHOGA_THREADS must be a positive integer, got {raw!r}")
    return value


def _config(args: argparse.Namespace) -> dict:
    skip = {"func", "format", "seed", "command", "hodge_command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _witness_cell(witness: dict | None) -> str:
    if witness is None:
        return ""
    out = {}
    for key, value in witness.items():
        if isinstance(value, TuGame):
            out[key] = game_to_dict(value)
        elif key == "coalition":
            out[key] = format_coalition(value)
        else:
            out[key] = value
    return json.dumps(out, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_map(args) -> tuple[Report | str, int]:
    u = load_game(args.game)
    image = get_map(args.name)(u)
    if args.format == "game":
        return dumps_game(image), 0
    report = Report("map", _config(args), args.seed, ["coalition", "worth"])
    report.rows = [[fmt_coalition(S), float(w)] for S, w in enumerate(image.worth)]
    return report, 0


def cmd_value(args) -> tuple[Report, int]:
    u = load_game(args.game)
    if args.name == "generalized:shoga":
        psi = shoga_generalized(u)
        report = Report("value", _config(args), args.seed, ["coalition", "value"])
        report.rows = [[fmt_coalition(S), float(w)] for S, w in enumerate(psi.worth) if S]
    else:
        if args.name not in VALUE_NAMES:
            raise UsageError(f"unknown value {args.name!r}; known: {', '.join(VALUE_NAMES)}")
        psi = probabilistic_value(value_weights(args.name, u.n), u)
        report = Report("value", _config(args), args.seed, ["player", "value"])
        report.rows = [[i + 1, float(x)] for i, x in enumerate(psi)]
        report.footer = {"sum": float(psi.sum()), "grand_coalition_worth": float(u.worth[u.grand])}
    return report, 0


def cmd_axioms(args) -> tuple[Report, int]:
    game_map = get_map(args.map)
    if args.game:
        suite = [load_game(g) for g in args.game]
    else:
        suite = random_suite(args.n, args.count, args.seed)
    axioms = args.axiom or ["AvEFF", "NLL", "BLT", "CS", "LIN"]
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        reports = list(pool.map(lambda ax: check_axiom(game_map, ax, suite, seed=args.seed, tol=args.tol), axioms))
    report = Report("axioms", _config(args), args.seed, ["axiom", "verdict", "max_residual", "games", "witness"])
    for r in reports:
        report.rows.append([r.axiom, "PASS" if r.passed else "FAIL", float(r.max_residual), r.games_checked, _witness_cell(r.witness)])
    failed = sum(not r.passed for r in reports)
    report.footer = {"pass": len(reports) - failed, "fail": failed}
    return report, 1 if failed else 0


def cmd_hodge_solve(args) -> tuple[Report, int]:
    u = load_game(args.game)
    S = parse_coalition(args.S)
    k = u.n if args.k is None else args.k
    if S == 0 or S >= 1 << u.n:
        raise UsageError(f"--S must name a nonempty coalition of the {u.n} players")
    G = LatticeGraph.full(u.n) if k == u.n else LatticeGraph.up_to(u.n, k)
    sol = poisson_solve(G, LatticeGraph.single_step(u.n, S), u.worth, tol=args.tol, method=args.method)
    report = Report("hodge solve", _config(args), args.seed, ["quantity", "value"])
    report.rows = [
        ["x(N)", float(sol.x[u.grand])],
        ["residual_norm", float(sol.residual_norm)],
        ["iterations", sol.iterations],
        ["method", sol.method],
    ]
    return report, 0


def cmd_hodge_decompose_all(args) -> tuple[Report, int]:
    u = load_game(args.game)
    parts = component_games(u, args.k, method=args.method, tol=args.tol)
    report = Report("hodge decompose-all", _config(args), args.seed, ["coalition", "component_at_N"])
    total = np.zeros(1 << u.n)
    for S in sorted(parts):
        report.rows.append([fmt_coalition(S), float(parts[S].worth[u.grand])])
        total += parts[S].worth
    residual = float(np.abs(total - u.worth).max())
    report.rows.append(["sum", float(total[u.grand])])
    report.footer = {"grand_coalition_worth": float(u.worth[u.grand]), "decomposition_residual": residual}
    return report, 0 if residual < 1e-7 else 1


def cmd_verify(args) -> tuple[Report, int]:
    claims = run_all(max_n=args.max_n, seed=args.seed)
    report = Report("verify-paper", _config(args), args.seed, ["claim", "verdict", "max_residual", "detail"])
    for c in claims:
        report.rows.append([c.group, "PASS" if c.passed else "FAIL", float(c.max_residual), c.detail])
    failed = sum(not c.passed for c in claims)
    report.footer = {"pass": len(claims) - failed, "fail": failed}
    return report, 1 if failed else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shoga", description="TU-game maps, values and Hodge/Poisson checks")
    parser.add_argument("--version", action="version", version=f"shoga {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("table", "csv", "json")):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("map", help="apply a game map")
    p.add_argument("--name", required=True, help=f"one of {', '.join(MAP_NAMES)}")
    p.add_argument("--game", required=True, help="game file or builtin:NAME?params")
    common(p, ("table", "csv", "json", "game"))
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("value", help="compute a value")
    p.add_argument("--name", required=True, choices=VALUE_NAMES)
    p.add_argument("--game", required=True)
    common(p)
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("axioms", help="falsification check of game-map axioms")
    p.add_argument("--map", required=True)
    p.add_argument("--axiom", action="append", choices=AXIOMS)
    p.add_argument("--game", action="append", help="games to check (default: a random suite)")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-9)
    common(p)
    p.set_defaults(func=cmd_axioms)

    hodge = sub.add_parser("hodge", help="Poisson solves on the coalition lattice")
    hsub = hodge.add_subparsers(dest="hodge_command", required=True)
    p = hsub.add_parser("solve", help="solve for one component game")
    p.add_argument("--game", required=True)
    p.add_argument("--S", required=True, help="coalition, e.g. 1,3")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--method", choices=("cg", "dense"), default="cg")
    p.add_argument("--tol", type=float, default=1e-12)
    common(p)
    p.set_defaults(func=cmd_hodge_solve)
    p = hsub.add_parser("decompose-all", help="all component games for a step bound k")
    p.add_argument("--game", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("cg", "dense"), default="cg")
    p.add_argument("--tol", type=float, default=1e-12)
    common(p, ("csv", "table", "json"))
    p.set_defaults(func=cmd_hodge_decompose_all)

    p = sub.add_parser("verify-paper", help="run the full golden suite")
    p.add_argument("--max-n", type=int, default=6)
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        result, code = args.func(args)
    except (UsageError, GameFileError, GameError) as e:
        print(f"shoga: error: {e}", file=sys.stderr)
        return 2
    except ConvergenceError as e:
        print(f"shoga: error: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(result if isinstance(result, str) else result.render(args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
