"""
The 'anneal' command line: schedule, estimate, lowerbound, plapprox and verify.
Exit codes: 0 success, 1 failed verification, 2 usage or invalid input, 3 assumption violation,
4 run failure.
"""
from __future__ import annotations

# IMPORTs
import io
import csv
import sys
import json
import math
import logging
import argparse

# IMPORTs alias
import numpy as np

# IMPORTs sub
from pathlib import Path

# IMPORTs local
from .instances import load_instance
from ..errors import (
    AnnealError, AssumptionViolation, ContractViolation, EnumerationCapExceeded,
    InvalidConfiguration, MalformedSchedule, RunFailure,
)
from ..estimator import amplify, end_to_end, product_estimate
from ..models.enumeration import DEFAULT_CAP, enumerate_coefficients
from ..models.schedule import CoolingSchedule
from ..models.systems import Anchor, Explicit, GibbsSystem
from ..partfn.partition_function import PartitionFunction
from ..partfn.verification import verify_reversible, verify_schedule
from ..samplers import ChainConfig, ExactSampler, HamiltonianSampler, MCMCSampler
from ..schedules import (
    AdaptiveConfig, ConvexCurve, adaptive_length_bound, augment_reversible, bezakova_schedule,
    check_lb_inequality, existence_schedule, greedy_schedule, lower_bound_greedy, pl_approx,
    print_cooling_schedule, uniform_schedule, unit_level,
)
from ..schedules.adaptive.transcript import RunTranscript
from ..utils import as_beta

# TYPE ANNOTATIONs
from typing import Any, Sequence

# API public
__all__ = ["build_parser", "main", "EXIT_OK", "EXIT_VERIFY", "EXIT_USAGE", "EXIT_ASSUMPTION",
           "EXIT_RUN_FAILURE"]

# EXIT codes
EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_ASSUMPTION = 3
EXIT_RUN_FAILURE = 4

logger = logging.getLogger(__name__)



def parse_bound(text: str) -> float:
    """
    A Chebyshev bound B from the command line: a float, or 'e2' / 'e^2' for e².
    """

    value = text.strip().lower().replace('^', '')
    if value == 'e': return math.e
    if value.startswith('e') and value[1:].replace('.', '', 1).isdigit():
        return math.e ** float(value[1:])
    try:
        bound = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid bound {text!r}") from None
    if not bound > 1: raise argparse.ArgumentTypeError(f"B must be > 1, got {text!r}")
    return bound


def _write(text: str, out: str | None) -> None:
    if out is None or out == '-':
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding='utf-8')


def _dumps(document: dict[str, Any]) -> str:
    return json.dumps(document, indent=2) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\r\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _rng(args: argparse.Namespace) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(args.seed))


def _exact(system: GibbsSystem, args: argparse.Namespace) -> PartitionFunction:
    if isinstance(system, Explicit): return system.partition_function
    return enumerate_coefficients(system, args.cap, args.workers)


def _exact_or_none(system: GibbsSystem, args: argparse.Namespace) -> PartitionFunction | None:
    try:
        return _exact(system, args)
    except EnumerationCapExceeded:
        return None


def _sampler(
        system: GibbsSystem,
        args: argparse.Namespace,
        z: PartitionFunction | None,
    ) -> HamiltonianSampler:
    choice = args.sampler
    if choice == 'auto': choice = 'exact' if z is not None else 'mcmc'
    if choice == 'exact':
        if z is None: raise InvalidConfiguration("the exact sampler needs an enumerable instance.")
        return ExactSampler(z)
    config = ChainConfig(
        steps_per_sample=args.tau2, seed=args.seed,
        mode='warm_start' if args.start == 'warm' else 'cold_start',
    )
    return MCMCSampler(system, config)


def _adaptive_config(args: argparse.Namespace) -> AdaptiveConfig:
    return AdaptiveConfig(
        delta_prime=args.delta_prime, mode=args.mode, desk_samples=args.samples,
        workers=args.workers,
    )


def _verification_document(verification) -> dict[str, Any]:
    return {
        "passed": verification.passed,
        "worst_log_ratio": verification.worst_log_ratio,
        "failures": verification.failures,
        "rows": verification.rows(),
    }


def cmd_schedule(args: argparse.Namespace) -> int:
    """
    Builds a schedule of the instance and writes it as JSON (with the verification table when
    --verify is given).
    """

    system = load_instance(args.instance)
    kind = args.kind
    transcript: RunTranscript | None = None
    if kind == 'uniform':
        schedule = uniform_schedule(system.degree, system.ln_a)
    elif kind == 'bezakova':
        schedule = bezakova_schedule(system.degree, system.ln_a)
    elif kind == 'greedy':
        schedule = greedy_schedule(_exact(system, args), args.bound)
    elif kind == 'existence':
        schedule = existence_schedule(_exact(system, args), strict=args.mode == 'faithful')
    else:
        z = _exact_or_none(system, args)
        try:
            schedule, transcript = print_cooling_schedule(
                system, _sampler(system, args, z), _adaptive_config(args), _rng(args),
                seed=args.seed,
            )
        except RunFailure as error:
            if args.transcript and error.transcript is not None:
                error.transcript.write_jsonl(args.transcript)
            raise
    if args.reversible: schedule = augment_reversible(schedule, max(system.degree, 1))
    if transcript is not None and args.transcript: transcript.write_jsonl(args.transcript)

    document = schedule.to_json()
    document["length"] = schedule.length
    exit_code = EXIT_OK
    if args.verify:
        z = _exact(system, args)
        bound = args.bound if kind == 'greedy' else args.verify_bound
        verify = verify_reversible if args.reversible else verify_schedule
        verification = verify(z, schedule, bound)
        document["verification"] = {"B": bound, **_verification_document(verification)}
        if not verification.passed: exit_code = EXIT_VERIFY
    _write(_dumps(document), args.out)
    logger.info("%s schedule with %d steps", kind, schedule.length)
    return exit_code


def cmd_estimate(args: argparse.Namespace) -> int:
    """
    Estimates the count of the instance, along a given schedule or with the whole pipeline.
    """

    system = load_instance(args.instance)
    z = _exact_or_none(system, args)
    sampler = _sampler(system, args, z)
    target = None if args.target_beta is None else as_beta(args.target_beta)
    rng = _rng(args)

    if args.schedule is None:
        estimate = end_to_end(
            system, _adaptive_config(args), args.eps, rng, seed=args.seed, sampler=sampler,
            target_beta=target, runs=args.runs, max_samples_per_ratio=args.max_samples,
            cap=args.cap,
        )
        if args.transcript and estimate.transcript is not None:
            estimate.transcript.write_jsonl(args.transcript)
    else:
        schedule = CoolingSchedule.loads(Path(args.schedule).read_text(encoding='utf-8'))
        if args.bound is not None:
            bound = args.bound
        elif z is not None:
            bound = max(1., verify_schedule(z, schedule, 3e6).worst_ratio)
        else:
            bound = 3e6
        estimate = amplify([
            product_estimate(
                schedule, sampler, bound, args.eps, stream, known_log_z=system.known_log_z,
                anchor=system.anchor, target_beta=target, max_samples_per_ratio=args.max_samples,
                workers=args.workers,
            )
            for stream in rng.spawn(args.runs)
        ])

    document = estimate.to_json()
    document["estimate"] = None if estimate.zero else estimate.estimate
    if z is not None:
        exact = (
            z.log_z(estimate.target_beta) if system.anchor is Anchor.ZERO_KNOWN else z.log_z(0.)
        )
        document["exact_log_z"] = exact
    _write(_dumps(document), args.out)
    return EXIT_OK


def cmd_lowerbound(args: argparse.Namespace) -> int:
    """
    Lower-bound data for Z(β) = (1 + e^{-β})^n: the greedy non-adaptive schedule and its bound,
    the length-optimal adaptive schedule against √(n/(20 ln B)) and the numeric inequality check.
    """

    n, bound = args.n, args.bound
    ln_a = args.ln_a if args.ln_a is not None else n * math.log(2.)
    document: dict[str, Any] = {"n": n, "ln_a": ln_a, "B": bound}

    try:
        greedy = lower_bound_greedy(n, ln_a, bound)
        document["non_adaptive"] = {
            "length": greedy.length, "bound": greedy.bound, "satisfied": greedy.satisfied,
        }
    except AssumptionViolation as error:
        document["non_adaptive"] = {"skipped": str(error)}

    optimal = greedy_schedule(PartitionFunction.binomial_power(n), bound)
    document["adaptive"] = {
        "length": optimal.length, "bound": adaptive_length_bound(n, bound),
        "satisfied": optimal.length >= adaptive_length_bound(n, bound),
    }
    inequality = check_lb_inequality(n)
    document["inequality"] = {
        "min_slack": inequality.min_slack, "argmin": inequality.argmin,
        "holds": inequality.holds(),
    }
    _write(_dumps(document), args.out)
    return EXIT_OK


def cmd_plapprox(args: argparse.Namespace) -> int:
    """
    CSV of x, f(x), g(x) for f = ln (1 + e^{-x})^n and its piecewise-linear approximation on
    [0, γ], ln Z(γ) = 1 (or the breakpoints with --breakpoints).
    """

    z = PartitionFunction.binomial_power(args.n)
    gamma = args.gamma if args.gamma is not None else unit_level(z)
    approximation = pl_approx(ConvexCurve.log_binomial(args.n), gamma)
    logger.info(
        "%d pieces on [0, %.6g], bound %.6g", approximation.pieces, gamma, approximation.bound,
    )
    if args.breakpoints:
        rows = zip(approximation.breakpoints.tolist(), approximation.values.tolist())
        _write(_csv(["x", "f"], list(rows)), args.out)
    else:
        _write(_csv(["x", "f", "g"], approximation.rows(args.points)), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """
    Checks a schedule file against B with the exact oracle; writes the per-step CSV table.
    """

    system = load_instance(args.instance)
    schedule = CoolingSchedule.loads(Path(args.schedule).read_text(encoding='utf-8'))
    z = _exact(system, args)
    verify = verify_reversible if args.reversible else verify_schedule
    verification = verify(z, schedule, args.bound)
    rows = verification.rows()
    header = list(rows[0].keys()) if rows else ["index", "beta", "beta_next", "log_ratio", "ok"]
    _write(_csv(header, [list(row.values()) for row in rows]), args.out)
    logger.info(
        "verification against B = %.6g: %s (worst log ratio %.6g)",
        args.bound, "passed" if verification.passed else "failed", verification.worst_log_ratio,
    )
    return EXIT_OK if verification.passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    """
    The argument parser of the command line.
    """

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=0, help="seed of every random stream")
    common.add_argument('--workers', type=int, default=1, help="threads used for the draws")
    common.add_argument('--mode', choices=('faithful', 'desk'), default='desk')
    common.add_argument('--out', default=None, help="output file (stdout by default)")
    common.add_argument(
        '--log-level', default='WARNING', choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'),
    )
    common.add_argument('--cap', type=int, default=DEFAULT_CAP, help="enumeration cap")

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument('--sampler', choices=('auto', 'exact', 'mcmc'), default='auto')
    sampling.add_argument('--tau2', '--chain-steps', dest='tau2', type=int, default=None)
    sampling.add_argument('--start', choices=('cold', 'warm'), default='cold')
    sampling.add_argument('--delta-prime', type=float, default=.1)
    sampling.add_argument('--samples', type=int, default=2000, help="desk draws per oracle call")
    sampling.add_argument('--transcript', default=None, help="JSON Lines transcript file")

    parser = argparse.ArgumentParser(prog='anneal', description=__doc__)
    commands = parser.add_subparsers(dest='command', required=True)

    schedule = commands.add_parser('schedule', parents=[common, sampling])
    schedule.add_argument('--instance', required=True)
    schedule.add_argument(
        '--kind', choices=('uniform', 'bezakova', 'greedy', 'existence', 'adaptive'),
        default='adaptive',
    )
    schedule.add_argument('--B', dest='bound', type=parse_bound, default=math.e ** 2)
    schedule.add_argument('--verify', action='store_true')
    schedule.add_argument('--verify-bound', type=parse_bound, default=3e6)
    schedule.add_argument('--reversible', action='store_true')
    schedule.set_defaults(handler=cmd_schedule)

    estimate = commands.add_parser('estimate', parents=[common, sampling])
    estimate.add_argument('--instance', required=True)
    estimate.add_argument('--schedule', default=None)
    estimate.add_argument('--eps', type=float, default=.2)
    estimate.add_argument('--runs', type=int, default=1)
    estimate.add_argument('--B', dest='bound', type=parse_bound, default=None)
    estimate.add_argument('--max-samples', type=int, default=None)
    estimate.add_argument('--target-beta', default=None)
    estimate.set_defaults(handler=cmd_estimate)

    lowerbound = commands.add_parser('lowerbound', parents=[common])
    lowerbound.add_argument('--n', type=int, required=True)
    lowerbound.add_argument('--ln-a', type=float, default=None)
    lowerbound.add_argument('--B', dest='bound', type=parse_bound, default=math.e ** 2)
    lowerbound.set_defaults(handler=cmd_lowerbound)

    plapprox = commands.add_parser('plapprox', parents=[common])
    plapprox.add_argument('--n', type=int, default=20)
    plapprox.add_argument('--gamma', type=float, default=None)
    plapprox.add_argument('--points', type=int, default=201)
    plapprox.add_argument('--breakpoints', action='store_true')
    plapprox.set_defaults(handler=cmd_plapprox)

    verify = commands.add_parser('verify', parents=[common])
    verify.add_argument('--instance', required=True)
    verify.add_argument('--schedule', required=True)
    verify.add_argument('--B', dest='bound', type=parse_bound, default=3e6)
    verify.add_argument('--reversible', action='store_true')
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """
    Runs the command line and returns its exit code.
    """

    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format='%(asctime)s %(name)s %(levelname)s: %(message)s',
    )

    try:
        return args.handler(args)
    except AssumptionViolation as error:
        print(f"anneal: {error}", file=sys.stderr)
        return EXIT_ASSUMPTION
    except RunFailure as error:
        print(f"anneal: run failed: {error}", file=sys.stderr)
        return EXIT_RUN_FAILURE
    except (InvalidConfiguration, MalformedSchedule, EnumerationCapExceeded) as error:
        print(f"anneal: {error}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as error:
        print(f"anneal: {error}", file=sys.stderr)
        return EXIT_USAGE
    except ContractViolation as error:
        print(f"anneal: internal contract violated: {error}", file=sys.stderr)
        return EXIT_VERIFY
    except AnnealError as error:
        print(f"anneal: {error}", file=sys.stderr)
        return EXIT_VERIFY
