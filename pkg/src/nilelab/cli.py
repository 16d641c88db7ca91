"""Command-line front end.

Subcommands:

* ``run <config>``  -- execute one experiment described by a flat
  ``key = value`` config file; writes ``<name>.report.json`` and
  ``<name>.table.csv`` into the output directory.
* ``list``          -- catalog of experiment kinds with their claims and
  default configs.
* ``selftest``      -- the RNG-free quadrature and constraint suites.

Exit codes: 0 all verdicts pass, 2 any verdict failed, 3 any verdict
inconclusive, 1 execution error (bad config, unwritable output, ...).
"""

from __future__ import annotations

import argparse
import csv
import datetime
import io
import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import selftest, verify

EXIT_PASS = 0
EXIT_ERROR = 1
EXIT_FAIL = 2
EXIT_INCONCLUSIVE = 3

EXPERIMENT_KINDS = (
    "ancillarity", "first-order", "independence", "rao", "cond-moment",
    "fisher-info", "variance-table", "quadrature-selftest", "constraints",
)


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    kind: str
    name: str = ""
    family: str = ""
    statistic: str = ""
    stat_a: str = ""
    stat_b: str = ""
    estimator: str = ""
    estimators: tuple = ()
    transform: str = "log"
    grid: tuple = ()
    theta: float = 1.0
    c: float = 1.0
    n: int = 5
    replicates: int = 100_000
    power: int = 1
    seed: int = 0
    workers: int = 1
    out: str = "."

    def validate(self):
        if self.kind not in EXPERIMENT_KINDS:
            raise ConfigError(f"field 'kind': unknown experiment kind {self.kind!r}")
        if self.replicates < 1:
            raise ConfigError(f"field 'replicates': must be >= 1, got {self.replicates}")
        if self.n < 1:
            raise ConfigError(f"field 'n': must be >= 1, got {self.n}")
        if self.workers < 1:
            raise ConfigError(f"field 'workers': must be >= 1, got {self.workers}")
        if not 1 <= self.power <= 6:
            raise ConfigError(f"field 'power': must be in [1, 6], got {self.power}")
        if self.family and self.family not in verify.FAMILY_TOKENS:
            raise ConfigError(f"field 'family': unknown family {self.family!r}")


_INT_FIELDS = {"n", "replicates", "power", "seed", "workers"}
_FLOAT_FIELDS = {"theta", "c"}
_LIST_FLOAT_FIELDS = {"grid"}
_LIST_STR_FIELDS = {"estimators"}
_ALL_FIELDS = {f.name for f in fields(ExperimentConfig)}


def parse_config(text: str) -> ExperimentConfig:
    """Parse the flat ``key = value`` format; reject unknown keys."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in _ALL_FIELDS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            if key in _INT_FIELDS:
                values[key] = int(val)
            elif key in _FLOAT_FIELDS:
                values[key] = float(val)
            elif key in _LIST_FLOAT_FIELDS:
                values[key] = tuple(float(v) for v in val.split(",")) if val else ()
            elif key in _LIST_STR_FIELDS:
                values[key] = tuple(v.strip() for v in val.split(",")) if val else ()
            else:
                values[key] = val
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: field {key!r}: {exc}") from None
    if "kind" not in values:
        raise ConfigError("missing required key 'kind'")
    cfg = ExperimentConfig(**values)
    cfg.validate()
    return cfg


def format_config(cfg: ExperimentConfig) -> str:
    """Inverse of ``parse_config``; parse(format(cfg)) == cfg."""
    lines = []
    for f in fields(ExperimentConfig):
        v = getattr(cfg, f.name)
        if f.name in _LIST_FLOAT_FIELDS:
            v = ",".join(f"{x:.17g}" for x in v)
        elif f.name in _LIST_STR_FIELDS:
            v = ",".join(v)
        elif f.name in _FLOAT_FIELDS:
            v = f"{v:.17g}"
        lines.append(f"{f.name} = {v}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Experiment dispatch
# --------------------------------------------------------------------------

_DEFAULT_STAT = {"nile": "nile_product", "normal_cv": "normal_cv_ratio",
                 "uniform_location": "uniform_range"}

_TRANSFORMS = {
    "log": np.log,
    "identity": verify.identity,
    "indicator": None,  # 1{w <= calibration median}; built at run time
}


def _mc_config(cfg: ExperimentConfig, grid) -> verify.MCConfig:
    return verify.MCConfig(master_seed=cfg.seed, replicates=cfg.replicates,
                           theta_grid=tuple(grid), n=cfg.n, workers=cfg.workers)


def _run_experiment(cfg: ExperimentConfig) -> verify.VerificationReport:
    kind = cfg.kind
    if kind == "quadrature-selftest":
        return selftest.quadrature_selftest()
    if kind == "constraints":
        return selftest.constraint_selftest()
    if kind == "ancillarity":
        family = cfg.family or "nile"
        stat = cfg.statistic or _DEFAULT_STAT.get(family)
        if stat is None:
            raise ConfigError(f"field 'statistic': required for family {family!r}")
        grid = cfg.grid or (0.5, 1.0, 2.0, 4.0)
        return verify.verify_ancillarity(family, stat, _mc_config(cfg, grid), c=cfg.c)
    if kind == "first-order":
        family = cfg.family or "bivariate_gaussian_corr"
        stat = cfg.statistic or ("first_order_h" if family == "bivariate_gaussian_corr"
                                 else "positive_indicator")
        grid = cfg.grid or ((-0.9, 0.0, 0.9) if family == "bivariate_gaussian_corr"
                            else (0.5, 1.0, 2.0))
        mc = verify.MCConfig(master_seed=cfg.seed, replicates=cfg.replicates,
                             theta_grid=tuple(grid), n=1, workers=cfg.workers)
        return verify.verify_first_order(family, stat, mc, c=cfg.c)
    if kind == "independence":
        family = cfg.family or "normal_cv"
        stat_a = cfg.stat_a or "sample_mean"
        stat_b = cfg.stat_b or "sample_sd"
        grid = cfg.grid or (1.0,)
        return verify.verify_independence(stat_a, stat_b, family,
                                          _mc_config(cfg, grid), c=cfg.c)
    if kind == "rao":
        family = cfg.family or "nile"
        estimator = cfg.estimator or "nile_mle"
        grid = cfg.grid or (0.5, 1.0, 2.0)
        if family == "normal_unit":
            u = verify.ZeroMeanSpec(id="first-contrast", source="diff12",
                                    transform=verify.identity,
                                    center=0.0, center_se=0.0)
        else:
            source = _DEFAULT_STAT[family]
            if cfg.transform not in _TRANSFORMS:
                raise ConfigError(f"field 'transform': unknown transform {cfg.transform!r}")
            transform = _TRANSFORMS[cfg.transform]
            if transform is None:
                transform = _make_indicator(family, cfg)
            u = verify.zero_mean_from_ancillary(
                f"{cfg.transform}-of-ancillary", source, transform, family,
                n=cfg.n, seed=cfg.seed + 1, c=cfg.c)
        return verify.rao_zero_cov(estimator, u, family, _mc_config(cfg, grid),
                                   power=cfg.power, c=cfg.c)
    if kind == "cond-moment":
        family = cfg.family or "nile"
        estimator = cfg.estimator or "nile_star"
        overlay = family == "nile" and estimator == "nile_star"
        w_stat = cfg.statistic or ("diff12" if family == "normal_unit" else "ancillary")
        return verify.cond_moment_dependence(
            estimator, family, cfg.theta, _mc_config(cfg, (cfg.theta,)),
            w_stat=w_stat, c=cfg.c, overlay=overlay)
    if kind == "fisher-info":
        return verify.fisher_info(cfg.theta, cfg.c, _mc_config(cfg, (cfg.theta,)))
    if kind == "variance-table":
        family = cfg.family or "nile"
        estimators = cfg.estimators or ("nile_mle", "nile_star")
        grid = cfg.grid or (1.0,)
        return verify.variance_table(list(estimators), family,
                                     _mc_config(cfg, grid), c=cfg.c)
    raise ConfigError(f"unknown experiment kind {kind!r}")


def _make_indicator(family: str, cfg: ExperimentConfig):
    """1{w <= median} with the median frozen from a calibration run at theta=1."""
    mc = verify.MCConfig(master_seed=cfg.seed + 2, replicates=100_000,
                         theta_grid=(1.0,), n=cfg.n, workers=1)
    per_point, _ = verify.run_grid(family, (1.0,), cfg.n, cfg.c, mc,
                                   [_DEFAULT_STAT[family]])
    median = float(np.median(per_point[0][_DEFAULT_STAT[family]]))

    def indicator(w):
        return (np.asarray(w) <= median).astype(float)

    return indicator


# --------------------------------------------------------------------------
# Report output
# --------------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_report(report: verify.VerificationReport, out_dir: Path, name: str,
                 timestamp: bool = True) -> list[Path]:
    """Write ``<name>.report.json`` and ``<name>.table.csv``; return the paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / f"{name}.report.json"
    csv_path = out_dir / f"{name}.table.csv"
    json_path.write_text(json.dumps(report.to_json_dict(), indent=2,
                                    default=_fmt) + "\n")
    header, rows = report.table_rows()
    buf = io.StringIO()
    if timestamp:
        now = datetime.datetime.now(datetime.timezone.utc).isoformat()
        buf.write(f"# generated: {now}\n")
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    csv_path.write_text(buf.getvalue())
    return [json_path, csv_path]


def _exit_code(report: verify.VerificationReport) -> int:
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL,
            "inconclusive": EXIT_INCONCLUSIVE}[report.verdict]


# --------------------------------------------------------------------------
# Catalog
# --------------------------------------------------------------------------

_CATALOG = {
    "ancillarity": ("sampling distribution of the designated ancillary statistic "
                    "is invariant across the parameter grid (pairwise KS test)",
                    "family = nile, grid = 0.5,1,2,4, n = 5, replicates = 200000"),
    "first-order": ("mean of a first-order ancillary statistic is constant in the "
                    "parameter (vs its closed-form normal-CDF value)",
                    "family = bivariate_gaussian_corr, grid = -0.9,0,0.9, replicates = 100000"),
    "independence": ("two statistics are independent at each grid point "
                     "(chi-square on a decile contingency table)",
                     "family = normal_cv, stat_a = sample_mean, stat_b = sample_sd, n = 10"),
    "rao": ("a UMVUE must have zero covariance with every zero-mean statistic; "
            "estimates E(g^k U) for U built from the ancillary",
            "family = nile, estimator = nile_mle, transform = log, grid = 0.5,1,2, n = 1"),
    "cond-moment": ("a UMVUE's conditional second moment given the ancillary must "
                    "be constant; bins the ancillary and compares bin means",
                    "family = nile, estimator = nile_star, theta = 1, n = 1"),
    "fisher-info": ("variance of the score equals (2 + 1/c^2)/theta^2, exceeding "
                    "the location-only information 1/(c^2 theta^2)",
                    "theta = 1, c = 1, replicates = 1000000"),
    "variance-table": ("Monte Carlo bias/variance/MSE comparison across estimators",
                       "family = nile, estimators = nile_mle,nile_star, grid = 1, n = 5"),
    "quadrature-selftest": ("the adaptive-quadrature and Bessel-representation "
                            "evaluations of the conditional-moment integrals agree "
                            "to 1e-8",
                            "no configuration"),
    "constraints": ("natural-parameter constraint polynomials vanish along each "
                    "family's parameter curve (|residual| < 1e-12)",
                    "no configuration"),
}


def list_experiments() -> str:
    lines = ["Available experiment kinds:", ""]
    for kind in EXPERIMENT_KINDS:
        claim, default = _CATALOG[kind]
        lines.append(f"{kind}")
        lines.append(f"    claim:   {claim}")
        lines.append(f"    default: {default}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Entry points
# --------------------------------------------------------------------------

def cmd_run(args) -> int:
    written = []
    try:
        path = Path(args.config)
        try:
            text = path.read_text()
        except OSError as exc:
            print(f"error: cannot read config {path}: {exc}", file=sys.stderr)
            return EXIT_ERROR
        cfg = parse_config(text)
        if args.seed is not None:
            cfg.seed = args.seed
        if args.out is not None:
            cfg.out = args.out
        if args.workers is not None:
            cfg.workers = args.workers
        cfg.validate()
        name = cfg.name or path.stem
        report = _run_experiment(cfg)
        written = write_report(report, Path(cfg.out), name)
        for sub, verdict in report.verdicts.items():
            print(f"{name}: {sub}: {verdict}")
        return _exit_code(report)
    except (ConfigError, verify.VerificationError, ValueError) as exc:
        for p in written:
            p.unlink(missing_ok=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def cmd_list(_args) -> int:
    print(list_experiments(), end="")
    return EXIT_PASS


def cmd_selftest(args) -> int:
    reports = [selftest.quadrature_selftest(), selftest.constraint_selftest()]
    code = EXIT_PASS
    for report in reports:
        if args.out is not None:
            name = report.claim.split()[0]
            write_report(report, Path(args.out), f"selftest-{name}")
        for sub, verdict in report.verdicts.items():
            print(f"{sub}: {verdict}")
        code = max(code, _exit_code(report))
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilelab",
        description="Monte Carlo and quadrature checks for incomplete-sufficiency "
                    "families (ancillarity, UMVUE necessary conditions, Fisher "
                    "information, natural-parameter constraints).")
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run one experiment from a config file")
    p_run.add_argument("config", help="path to a key = value config file")
    p_run.add_argument("--seed", type=int, default=None, help="override config seed")
    p_run.add_argument("--out", default=None, help="output directory")
    p_run.add_argument("--workers", type=int, default=None, help="worker threads")
    p_run.set_defaults(func=cmd_run)
    p_list = sub.add_parser("list", help="list experiment kinds")
    p_list.set_defaults(func=cmd_list)
    p_self = sub.add_parser("selftest", help="run the RNG-free verification suites")
    p_self.add_argument("--out", default=None, help="also write reports here")
    p_self.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
