"""
Command-line front end.

Subcommands::

    koornwinder-lr emu --weight 1            # E_mu
    koornwinder-lr lr --lambda 1,0 --mu 1,1 --verify
    koornwinder-lr verify --suite hecke --rank 2

Exit codes: 0 success, 2 usage error, 3 verification failure.  All
randomness comes from one ``random.Random(seed)``; the seed is printed in
every report, and exact-mode output is byte-identical across runs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass, field

from .alcove import WalkSpec, enumerate_walks, walk_to_json
from .coeff_field import EvalBackend, EvalPoint
from .hecke import representation
from .koornwinder import (
    LRExpansion,
    NonDominantWeightError,
    e_poly_ramyip,
    lr_expand,
    lr_oracle,
)
from .laurent import LaurentPoly, _coeff_text
from .suites import SUITES, run_suite
from .weyl import identity, is_dominant, length_and_word, min_coset_rep

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    rank: int
    mode: str = "exact"
    seed: int | None = None
    weights: list = field(default_factory=list)
    output: str = "pretty"
    dump_walks: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.rank < 1:
            raise UsageError("rank must be at least 1")
        if self.mode == "eval" and self.seed is None:
            raise UsageError("--mode eval needs --seed")
        if self.dump_walks and self.output == "csv":
            raise UsageError("--dump-walks needs --output json or pretty")

    def representation(self):
        """The exact representation, or one at the seeded evaluation point."""
        if self.mode == "exact":
            return representation(self.rank), None
        point = EvalPoint.random(random.Random(self.seed))
        return representation(self.rank, EvalBackend(point)), point


def parse_weight(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad weight {text!r}: expected comma-separated integers") from None


def _resolve_rank(rank, weights) -> int:
    lengths = {len(w) for w in weights}
    if len(lengths) > 1:
        raise UsageError(f"weights of different ranks: {sorted(lengths)}")
    inferred = lengths.pop() if lengths else None
    if rank is None:
        if inferred is None:
            raise UsageError("--rank is required")
        return inferred
    if inferred is not None and inferred != rank:
        raise UsageError(f"weight has {inferred} coordinates but --rank is {rank}")
    return rank


def _point_json(point) -> dict | None:
    if point is None:
        return None
    return {k: str(v) for k, v in point.as_dict().items()}


def _eval_banner(header: dict) -> list:
    """Comment line naming the seed and point of an eval-mode run."""
    point = header.get("point")
    if point is None:
        return []
    vals = " ".join(f"{k}={v}" for k, v in point.items())
    return [f"# seed={header['seed']} point: {vals}"]


def _weight_text(nu: tuple) -> str:
    return str(nu[0]) if len(nu) == 1 else "(" + ", ".join(map(str, nu)) + ")"


# ---------------------------------------------------------------------------
# rendering


def render_poly(poly: LaurentPoly, cfg: RunConfig, header: dict, walks=()) -> str:
    if cfg.output == "json":
        out = dict(header)
        out.update(poly.to_json())
        if cfg.dump_walks:
            out["walks"] = [walk_to_json(p) for p in walks]
        return json.dumps(out, sort_keys=True)
    if cfg.output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["wt", "coeff"])
        for wt in sorted(poly.terms):
            w.writerow([",".join(map(str, wt)), _coeff_text(poly.terms[wt])])
        return "\n".join(_eval_banner(header) + [buf.getvalue().rstrip("\n")])
    lines = _eval_banner(header) + [poly.pretty()]
    lines.extend(json.dumps(walk_to_json(p), sort_keys=True) for p in walks)
    return "\n".join(lines)


def render_lr(exp: LRExpansion, cfg: RunConfig, header: dict) -> str:
    if cfg.output == "json":
        out = dict(header)
        out.update(exp.to_json())
        if cfg.dump_walks:
            out["walks"] = [t.to_json() for t in exp.terms]
        return json.dumps(out, sort_keys=True)
    if cfg.output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["nu", "coeff"])
        for nu in exp.support():
            w.writerow([",".join(map(str, nu)), _coeff_text(exp.pairs[nu])])
        return "\n".join(_eval_banner(header) + [buf.getvalue().rstrip("\n")])
    body = ", ".join(f"{_weight_text(nu)}: {_coeff_text(exp.pairs[nu])}" for nu in exp.support())
    lines = _eval_banner(header) + ["{" + body + "}"]
    if cfg.dump_walks:
        lines.extend(json.dumps(t.to_json(), sort_keys=True) for t in exp.terms)
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def cmd_emu(cfg: RunConfig, mu: tuple) -> tuple:
    """``E_mu`` from the Ram-Yip sum."""
    rep, point = cfg.representation()
    E = e_poly_ramyip(mu, rep)
    header = {"mu": list(mu), "mode": cfg.mode, "seed": cfg.seed, "point": _point_json(point)}
    walks = ()
    if cfg.dump_walks:
        word = length_and_word(min_coset_rep(mu))[1]
        walks = list(enumerate_walks(WalkSpec(word, identity(cfg.rank))))
    return EXIT_OK, render_poly(E, cfg, header, walks)


def cmd_lr(cfg: RunConfig, lam: tuple, mu: tuple, verify: bool = False) -> tuple:
    """LR coefficients of ``P_lam P_mu``; with ``verify`` compare with the oracle."""
    for w in (lam, mu):
        if not is_dominant(w):
            raise UsageError(f"{w} is not a dominant weight")
    rep, point = cfg.representation()
    exp = lr_expand(lam, mu, rep, trace=cfg.dump_walks, jobs=cfg.jobs)
    header = {"seed": cfg.seed, "point": _point_json(point)}
    text = render_lr(exp, cfg, header)
    if not verify:
        return EXIT_OK, text
    oracle = lr_oracle(lam, mu, rep)
    if exp == oracle:
        return EXIT_OK, text
    msg = ["verification failed: walk sum and oracle differ", "walk sum: " + text]
    msg.append("oracle:   " + render_lr(oracle, RunConfig(cfg.rank, cfg.mode, cfg.seed, output=cfg.output), header))
    return EXIT_VERIFY, "\n".join(msg)


def render_report(report, cfg: RunConfig) -> str:
    if cfg.output == "json":
        return json.dumps(report.to_json(), sort_keys=True)
    if cfg.output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "rank", "seed", "invariant", "instances", "failures", "status"])
        for c in report.checks:
            w.writerow([report.suite, report.rank, report.seed, c.invariant, c.instances, c.failures, c.status])
        return buf.getvalue().rstrip("\n")
    lines = [f"suite={report.suite} rank={report.rank} seed={report.seed} mode={report.mode}"]
    for c in report.checks:
        note = f"  ({c.note})" if c.note else ""
        lines.append(f"{c.status.upper():5} {c.instances:5d} {c.failures:5d}  {c.invariant}{note}")
    lines.append("PASSED" if report.passed else "FAILED")
    return "\n".join(lines)


def cmd_verify(cfg: RunConfig, suite: str) -> tuple:
    seed = 0 if cfg.seed is None else cfg.seed
    report = run_suite(suite, cfg.rank, seed, cfg.mode)
    code = EXIT_OK if report.passed else EXIT_VERIFY
    return code, render_report(report, cfg)


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--rank", type=int, help="rank n (inferred from the weights if omitted)")
    common.add_argument("--mode", choices=("exact", "eval"), default="exact")
    common.add_argument("--seed", type=int, help="seed of the evaluation point / random inputs")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for walk sums")
    common.add_argument("--output", choices=("pretty", "json", "csv"), default="pretty")
    common.add_argument("--dump-walks", action="store_true", help="also print the walks summed over")

    parser = _Parser(prog="koornwinder-lr", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("emu", parents=[common], help="non-symmetric polynomial E_mu")
    p.add_argument("--weight", required=True)
    p = sub.add_parser("lr", parents=[common], help="LR coefficients of P_lambda P_mu")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--verify", action="store_true", help="compare with the peeling oracle")
    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    return parser


def run(argv=None) -> tuple:
    """``(exit code, text)`` for a command line; never raises on bad input."""
    try:
        args = build_parser().parse_args(argv)
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        if args.command == "emu":
            mu = parse_weight(args.weight)
            cfg = _config(args, [mu])
            return cmd_emu(cfg, mu)
        if args.command == "lr":
            lam, mu = parse_weight(args.lam), parse_weight(args.mu)
            cfg = _config(args, [lam, mu])
            return cmd_lr(cfg, lam, mu, args.verify)
        cfg = _config(args, [], default_rank=2)
        return cmd_verify(cfg, args.suite)
    except (UsageError, NonDominantWeightError) as exc:
        return EXIT_USAGE, f"error: {exc}"


def _config(args, weights, default_rank=None) -> RunConfig:
    rank = args.rank if args.rank is not None or weights else default_rank
    return RunConfig(
        rank=_resolve_rank(rank, weights),
        mode=args.mode,
        seed=args.seed,
        weights=weights,
        output=args.output,
        dump_walks=args.dump_walks,
        jobs=args.jobs,
    )


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stderr if code == EXIT_USAGE else sys.stdout
    if text:
        print(text, file=stream)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
