"""Command-line workflows: train, simulate, sample, analyze.

Every command is a deterministic function of its flags and input files.
Exit codes: 0 on success, 1 on usage/validation/IO errors (with a one-line
``error: ...`` diagnostic on stderr), 2 when training ran out of iterations
without converging (artifacts are still written).
"""

from __future__ import annotations

import argparse
import sys

from . import fileio
from .analysis import chi_square_test, entropy_report, quantize_schedule
from .sampling import build_sampler, counts_by_position, draw, empirical_distribution
from .targets import target_from_spec
from .training import TrainConfig, fidelity, train
from .walk import NAMED_COIN_VECTORS, initial_state, measure, run_walk

#: Coin state used for training and schedule-level analysis.  For real
#: (ratio-parameterized) schedules the two circular states produce the same
#: output distribution, so one trained schedule serves both.
DEFAULT_TRAIN_STATE = "circ-left"


class _Parser(argparse.ArgumentParser):
    """argparse with the project's exit-code and diagnostic contract."""

    def error(self, message: str) -> None:  # type: ignore[override]
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_coin_vector(text: str) -> tuple[complex, complex]:
    if text in NAMED_COIN_VECTORS:
        return NAMED_COIN_VECTORS[text]
    if text.startswith("custom:"):
        parts = text[len("custom:"):].split(",")
        if len(parts) != 4:
            raise ValueError(
                f"custom state needs four numbers aL_re,aL_im,aR_re,aR_im, got {text!r}"
            )
        try:
            a, b, c, d = (float(p) for p in parts)
        except ValueError:
            raise ValueError(f"non-numeric component in {text!r}") from None
        return complex(a, b), complex(c, d)
    names = ", ".join(NAMED_COIN_VECTORS)
    raise ValueError(f"unknown initial state {text!r} (use {names} or custom:...)")


def _parse_init(text: str) -> tuple[float | None, int | None]:
    """Decode const:R0 / rand:SEED into (init_ratio, init_seed)."""
    if text.startswith("const:"):
        try:
            return float(text[len("const:"):]), None
        except ValueError:
            raise ValueError(f"expected const:<ratio>, got {text!r}") from None
    if text.startswith("rand:"):
        try:
            return None, int(text[len("rand:"):])
        except ValueError:
            raise ValueError(f"expected rand:<seed>, got {text!r}") from None
    raise ValueError(f"unknown init spec {text!r} (use const:R0 or rand:SEED)")


def cmd_train(args: argparse.Namespace) -> int:
    target = target_from_spec(args.target, args.steps)
    init_ratio, init_seed = _parse_init(args.init)
    config = TrainConfig(
        eta=args.eta,
        max_iters=args.max_iters,
        fidelity_goal=args.fidelity_goal,
        init_ratio=0.5 if init_ratio is None else init_ratio,
        init_seed=init_seed,
    )
    state = initial_state(NAMED_COIN_VECTORS[DEFAULT_TRAIN_STATE])
    report = train(state, target, config)
    fileio.write_schedule(report.final_schedule, args.out)
    fileio.write_trace(report.iterations, args.log)
    return 0 if report.converged else 2


def cmd_simulate(args: argparse.Namespace) -> int:
    schedule = fileio.read_schedule(args.schedule)
    state = initial_state(_parse_coin_vector(args.initial))
    dist = measure(run_walk(state, schedule))
    fileio.write_distribution(dist, args.out)
    return 0


def cmd_sample(args: argparse.Namespace) -> int:
    schedule = fileio.read_schedule(args.schedule)
    state = initial_state(_parse_coin_vector(args.initial))
    dist = measure(run_walk(state, schedule))
    sampler = build_sampler(dist, args.seed)
    stream = draw(sampler, args.count)
    if args.format == "indices":
        fileio.write_indices(stream, args.out)
    else:
        fileio.write_bits(stream, args.out)
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    if args.quantize_deg is not None and args.schedule is None:
        raise ValueError("--quantize-deg needs --schedule")

    schedule = fileio.read_schedule(args.schedule) if args.schedule else None
    if schedule is not None:
        steps = schedule.steps
    elif args.steps is not None:
        steps = args.steps
    elif args.target.startswith("file:"):
        steps = None  # inferred from the file rows
    else:
        raise ValueError("need --steps (or --schedule) to size this target")

    target = target_from_spec(args.target, steps)
    steps = target.steps

    outcomes = fileio.read_indices(args.samples)
    if outcomes.max() > steps:
        raise ValueError(
            f"sample index {outcomes.max()} does not fit a {steps}-step walk"
        )
    counts = counts_by_position(outcomes, steps)
    empirical = empirical_distribution(outcomes, steps)
    chi2 = chi_square_test(counts, target)
    shannon, min_entropy = entropy_report(empirical)

    rows: list[tuple[str, object]] = [
        ("samples", int(outcomes.size)),
        ("chi_square_statistic", chi2.statistic),
        ("chi_square_dof", chi2.dof),
        ("chi_square_p_value", chi2.p_value),
        ("shannon_entropy_bits", shannon),
        ("min_entropy_bits", min_entropy),
        ("empirical_fidelity", fidelity(empirical, target)),
    ]
    if args.quantize_deg is not None:
        state = initial_state(NAMED_COIN_VECTORS[DEFAULT_TRAIN_STATE])
        exact = fidelity(measure(run_walk(state, schedule)), target)
        quantized = fidelity(
            measure(run_walk(state, quantize_schedule(schedule, args.quantize_deg))), target
        )
        rows += [
            ("schedule_fidelity", exact),
            ("quantized_fidelity", quantized),
            ("quantized_fidelity_delta", exact - quantized),
        ]
    fileio.write_report(rows, args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="qwrng",
        description="Train biased quantum walks and generate distribution-shaped random numbers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser(
        "train", help="fit a coin schedule to a target distribution"
    )
    p_train.add_argument("--steps", type=int, required=True, help="walk length n")
    p_train.add_argument(
        "--target", required=True, help="uniform | gaussian:MU,SIGMA | file:PATH"
    )
    p_train.add_argument("--eta", type=float, default=0.1, help="learning rate in (0,1]")
    p_train.add_argument("--max-iters", type=int, default=500)
    p_train.add_argument("--fidelity-goal", type=float, default=0.999)
    p_train.add_argument(
        "--init", default="const:0.5", help="const:R0 | rand:SEED (schedule initialization)"
    )
    p_train.add_argument("--out", required=True, help="schedule file to write")
    p_train.add_argument("--log", required=True, help="per-iteration trace CSV to write")
    p_train.set_defaults(func=cmd_train)

    p_sim = sub.add_parser("simulate", help="run a schedule and write its distribution")
    p_sim.add_argument("--schedule", required=True)
    p_sim.add_argument(
        "--initial",
        default=DEFAULT_TRAIN_STATE,
        help="L | R | circ-left | circ-right | custom:aL_re,aL_im,aR_re,aR_im",
    )
    p_sim.add_argument("--out", required=True, help="distribution CSV to write")
    p_sim.set_defaults(func=cmd_simulate)

    p_sample = sub.add_parser("sample", help="draw seeded outcomes from a schedule's walk")
    p_sample.add_argument("--schedule", required=True)
    p_sample.add_argument("--initial", default=DEFAULT_TRAIN_STATE)
    p_sample.add_argument("--count", type=int, required=True)
    p_sample.add_argument("--seed", type=int, required=True)
    p_sample.add_argument("--format", choices=("indices", "bits"), default="indices")
    p_sample.add_argument("--out", required=True)
    p_sample.set_defaults(func=cmd_sample)

    p_an = sub.add_parser("analyze", help="statistical report for a sample file")
    p_an.add_argument("--samples", required=True, help="indices file written by sample")
    p_an.add_argument("--target", required=True, help="uniform | gaussian:MU,SIGMA | file:PATH")
    p_an.add_argument("--steps", type=int, help="walk length (when no --schedule is given)")
    p_an.add_argument("--schedule", help="schedule file for fidelity/quantization checks")
    p_an.add_argument("--quantize-deg", type=float, help="wave-plate resolution to test")
    p_an.add_argument("--out", required=True, help="report CSV to write")
    p_an.set_defaults(func=cmd_analyze)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 1
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
