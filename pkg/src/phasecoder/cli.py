"""Command-line surface.

Subcommands:
    encode  angle -> code values on stdout
    decode  code values -> angle (plus branch details with --dual)
    verify  run the property suite; exit 0 only if every check passes
    bench   train and score the synthetic benchmark heads, writing CSV/JSON
"""

import argparse
import math
import sys

from . import verify
from .coder import RECT_SYMMETRY, angle_to_phase, decode, encode, phase_to_angle
from .dual import decode_dual, encode_dual
from .bench.runner import resolve_config, run_bench


def _fmt(value):
    return f"{value:.12g}"


def cmd_encode(args):
    if args.dual:
        values = encode_dual(args.theta, args.n_step)
    else:
        values = encode(angle_to_phase(args.theta, RECT_SYMMETRY), args.n_step)
    print(" ".join(_fmt(v) for v in values))
    return 0


def cmd_decode(args):
    if args.dual:
        result = decode_dual(args.values)
        theta = phase_to_angle(result.phi, RECT_SYMMETRY)
        print(f"theta_rad = {_fmt(theta)}")
        print(f"theta_deg = {_fmt(math.degrees(theta))}")
        print(f"delta = {_fmt(result.delta)}")
        print(f"branch = {result.branch}")
    else:
        theta = phase_to_angle(decode(args.values), RECT_SYMMETRY)
        print(f"theta_rad = {_fmt(theta)}")
        print(f"theta_deg = {_fmt(math.degrees(theta))}")
    return 0


def cmd_verify(args):
    results = verify.run_all(seed=args.seed, fault=args.inject_fault)
    width = max(len(r.name) for r in results)
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        failures += not r.passed
        print(f"{status}  {r.name:<{width}}  {r.detail}  ({r.seconds:.2f}s)")
    total = len(results)
    print(f"{total - failures}/{total} properties passed")
    return 0 if failures == 0 else 1


def cmd_bench(args):
    cli_values = {
        "heads": tuple(args.heads.split(",")) if args.heads else None,
        "n_step": args.n_step,
        "sweep_n_step": tuple(int(v) for v in args.sweep_n_step.split(","))
        if args.sweep_n_step
        else None,
        "seed": args.seed,
        "train_size": args.train_size,
        "test_size": args.test_size,
        "square_fraction": args.square_fraction,
        "noise_sigma": args.noise_sigma,
        "epochs": args.epochs,
        "batch_size": args.batch_size,
        "learning_rate": args.learning_rate,
        "out_dir": args.out,
    }
    config = resolve_config(cli_values, args.config)
    rows, out_dir = run_bench(config)
    diverged = [r for r in rows if r["status"] != "ok"]
    for row in rows:
        if row["status"] == "ok":
            print(
                f"{row['head']:<6} n_step={row['n_step']}  "
                f"median_err={float(row['median_err']):.6f}  "
                f"mean_err={float(row['mean_err']):.6f}  "
                f"boundary_median={float(row['boundary_median_err']):.6f}"
            )
        else:
            print(f"{row['head']:<6} n_step={row['n_step']}  {row['status']}")
    print(f"wrote report.csv, errors.csv, losscurve.csv, report.json, config.json to {out_dir}")
    return 0 if not diverged else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="phasecoder",
        description="Phase-shifting angle coder utilities and synthetic benchmark",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="encode an orientation angle into code values")
    p.add_argument("--theta", type=float, required=True, help="angle in radians, in [-pi/2, pi/2)")
    p.add_argument("--n-step", type=int, default=3, help="code length per frequency (default 3)")
    p.add_argument("--dual", action="store_true", help="emit the two-frequency code")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode code values back to an angle")
    p.add_argument("values", type=float, nargs="+", help="code values (prefix with -- for negatives)")
    p.add_argument("--dual", action="store_true", help="treat input as a two-frequency code")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("verify", help="run the coder property suite")
    p.add_argument("--seed", type=int, default=0, help="seed for the randomized checks")
    p.add_argument(
        "--inject-fault",
        choices=verify.FAULTS,
        default=None,
        help="self-test hook: corrupt one operation and confirm the suite fails",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run the synthetic benchmark")
    p.add_argument("--heads", help="comma-separated subset of naive,psc,pscd")
    p.add_argument("--n-step", dest="n_step", type=int, help="code length per frequency")
    p.add_argument(
        "--sweep-nstep",
        "--sweep-n-step",
        dest="sweep_n_step",
        help="comma-separated n_step values; runs the whole benchmark per value",
    )
    p.add_argument("--seed", type=int, help="dataset and training seed")
    p.add_argument("--train-size", type=int, help="training samples")
    p.add_argument("--test-size", type=int, help="evaluation samples")
    p.add_argument("--square-fraction", type=float, help="fraction of exact squares")
    p.add_argument("--noise-sigma", type=float, help="feature noise stddev")
    p.add_argument("--epochs", type=int)
    p.add_argument("--batch-size", type=int)
    p.add_argument("--learning-rate", type=float)
    p.add_argument("--out", help="output directory (PHASECODER_OUTDIR overrides the default)")
    p.add_argument("--config", help="JSON file with config values; flags win over it")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
