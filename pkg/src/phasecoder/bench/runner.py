"""Benchmark orchestration: resolve a config, train the requested heads,
emit report/errors/losscurve files plus the resolved config itself."""

import dataclasses
import json
import os
from dataclasses import dataclass
from pathlib import Path

from .. import backend
from .dataset import generate_dataset
from .evaluate import evaluate, oracle_roundtrip_error
from .reports import write_csv, write_json
from .train import HEADS, TrainConfig, TrainingDiverged, train

#: Environment variable that overrides the default output directory.
OUT_DIR_ENV = "PHASECODER_OUTDIR"

REPORT_FIELDS = [
    "head",
    "n_step",
    "status",
    "seed",
    "train_size",
    "test_size",
    "square_fraction",
    "noise_sigma",
    "epochs",
    "final_train_loss",
    "count",
    "mean_err",
    "median_err",
    "max_err",
    "frac_within_2deg",
    "frac_within_5deg",
    "frac_within_10deg",
    "boundary_count",
    "boundary_mean_err",
    "boundary_median_err",
    "n_indeterminate",
    "oracle_roundtrip_max_err",
]

ERROR_FIELDS = [
    "head",
    "n_step",
    "index",
    "target_theta",
    "is_square",
    "is_boundary",
    "pred_theta",
    "error",
    "indeterminate",
]

CURVE_FIELDS = ["head", "n_step", "epoch", "angle_loss"]


@dataclass(frozen=True)
class RunConfig:
    """Resolved benchmark parameters; serialized next to the outputs."""

    heads: tuple = HEADS
    n_step: int = 3
    sweep_n_step: tuple = ()
    seed: int = 42
    train_size: int = 5000
    test_size: int = 1000
    square_fraction: float = 0.0
    noise_sigma: float = 0.01
    epochs: int = 200
    batch_size: int = 64
    learning_rate: float = 1e-3
    out_dir: str = "bench_out"

    def n_steps(self):
        return tuple(self.sweep_n_step) or (self.n_step,)


def resolve_config(cli_values=None, config_file=None):
    """Merge defaults, an optional JSON config file, and CLI overrides.

    Precedence, lowest to highest: dataclass defaults, config file values,
    CLI values that are not None.  The output directory additionally honors
    the PHASECODER_OUTDIR environment variable, which sits between the
    config file and an explicit --out flag.
    """
    values = {}
    if config_file is not None:
        with open(config_file) as fh:
            loaded = json.load(fh)
        known = {f.name for f in dataclasses.fields(RunConfig)}
        unknown = set(loaded) - known
        if unknown:
            raise ValueError(f"unknown config keys in {config_file}: {sorted(unknown)}")
        values.update(loaded)
    env_out = os.environ.get(OUT_DIR_ENV)
    if env_out:
        values["out_dir"] = env_out
    if cli_values:
        values.update({k: v for k, v in cli_values.items() if v is not None})
    for key in ("heads", "sweep_n_step"):
        if key in values:
            values[key] = tuple(values[key])
    return RunConfig(**values)


def _report_row(config, head, n_step, status, curve=None, report=None, oracle_err=None):
    row = {
        "head": head,
        "n_step": n_step,
        "status": status,
        "seed": config.seed,
        "train_size": config.train_size,
        "test_size": config.test_size,
        "square_fraction": config.square_fraction,
        "noise_sigma": config.noise_sigma,
        "epochs": config.epochs,
        "final_train_loss": curve[-1] if curve else "",
        "oracle_roundtrip_max_err": oracle_err if oracle_err is not None else "",
    }
    if report is not None:
        row.update(report.summary())
    else:
        for field in REPORT_FIELDS:
            row.setdefault(field, "")
    return row


def run_bench(config):
    """Run the configured benchmark and write all output files.

    A head whose training diverges gets a status row naming the epoch and
    is skipped in the per-sample files; everything else is still written.

    Returns (report_rows, out_dir).
    """
    unknown = set(config.heads) - set(HEADS)
    if unknown:
        raise ValueError(f"unknown heads: {sorted(unknown)}")
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    train_set = generate_dataset(
        config.train_size, config.square_fraction, config.noise_sigma, config.seed
    )
    test_set = generate_dataset(
        config.test_size, config.square_fraction, config.noise_sigma, config.seed + 1
    )

    report_rows = []
    error_rows = []
    curve_rows = []
    for n_step in config.n_steps():
        for head in config.heads:
            train_cfg = TrainConfig(
                epochs=config.epochs,
                batch_size=config.batch_size,
                learning_rate=config.learning_rate,
                n_step=n_step,
                seed=config.seed,
            )
            try:
                model, curve = train(head, train_cfg, train_set)
            except TrainingDiverged as exc:
                report_rows.append(
                    _report_row(config, head, n_step, f"diverged@epoch{exc.epoch}")
                )
                continue
            report = evaluate(model, head, test_set, n_step)
            oracle_err = oracle_roundtrip_error(test_set, head, n_step)
            report_rows.append(
                _report_row(config, head, n_step, "ok", curve, report, oracle_err)
            )
            for epoch, loss in enumerate(curve):
                curve_rows.append(
                    {"head": head, "n_step": n_step, "epoch": epoch, "angle_loss": loss}
                )
            for i in range(report.count):
                error_rows.append(
                    {
                        "head": head,
                        "n_step": n_step,
                        "index": i,
                        "target_theta": report.target_theta[i],
                        "is_square": int(report.is_square[i]),
                        "is_boundary": int(report.is_boundary[i]),
                        "pred_theta": report.pred_theta[i],
                        "error": report.errors[i],
                        "indeterminate": int(report.indeterminate[i]),
                    }
                )

    write_csv(out_dir / "report.csv", "report", REPORT_FIELDS, report_rows)
    write_csv(out_dir / "errors.csv", "errors", ERROR_FIELDS, error_rows)
    write_csv(out_dir / "losscurve.csv", "losscurve", CURVE_FIELDS, curve_rows)
    write_json(
        out_dir / "report.json",
        "report",
        {"rows": _json_safe(report_rows)},
    )
    write_json(
        out_dir / "config.json",
        "config",
        {"config": dataclasses.asdict(config), "backend": backend.name},
    )
    return report_rows, out_dir


def _json_safe(rows):
    out = []
    for row in rows:
        clean = {}
        for key, value in row.items():
            if hasattr(value, "item"):
                value = value.item()
            clean[key] = value
        out.append(clean)
    return out
