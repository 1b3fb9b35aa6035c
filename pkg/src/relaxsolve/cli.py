"""Command-line front end: run / sweep / compare.

Every command reads a sectioned key-value config (see config.py), writes
CSV files atomically (temp file + rename, LF endings, 17 significant
digits so values round-trip bit-exactly) and returns a conventional exit
code: 0 on success, 2 on configuration errors, 1 on runtime aborts.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

import numpy as np

from .config import ConfigError, RunConfig, load_config
from .driver import AdmissibilityError, ConfigurationError, SchemeKind, TimeControls
from .harness import (
    SweepCase,
    burgers_smooth_exact,
    distance_table,
    epsilon_sweep,
    exact_oracle,
    refinement_sweep,
    run_timed,
    splitting_oracle,
)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv(rows: list[list], header: list[str]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def _out_path(cfg: RunConfig, out_dir, filename: str) -> str:
    directory = out_dir if out_dir else cfg.output_dir
    return os.path.join(directory, cfg.prefix + filename)


def cmd_run(cfg: RunConfig, out_dir=None) -> int:
    model, field = cfg.setup()
    controls = TimeControls(cfg.cfl, cfg.t_final, cfg.scheme_kind)
    out, _ = run_timed(model, field, controls, cfg.epsilon)
    prim = model.to_primitive(out.data)
    x = out.grid.centers()
    rows = [[x[j]] + list(prim[j]) for j in range(out.grid.n_cells)]
    path = _out_path(cfg, out_dir, f"{cfg.model_kind}_{cfg.scheme_kind.value}_profile.csv")
    _write_atomic(path, _csv(rows, ["x", *model.variable_names]))
    print(f"wrote {path}")
    return 0


def _gnuplot_script(csv_name: str, axis: str, png_name: str) -> str:
    xlabel = "epsilon" if axis == "eps" else "dx"
    return "\n".join(
        [
            f"set terminal pngcairo size 900,600",
            f"set output '{png_name}'",
            "set datafile separator ','",
            "set logscale xy",
            f"set xlabel '{xlabel}'",
            "set ylabel 'L2 error'",
            "set grid",
            "set key left top",
            f"plot '{csv_name}' using 1:2 skip 1 with linespoints title 'L2', \\",
            f"     '{csv_name}' using 1:3 skip 1 with linespoints title 'Linf'",
            "",
        ]
    )


def cmd_sweep(cfg: RunConfig, axis: str, values: list[float], reference_cells: int,
              component: int, threads: int, out_dir=None) -> int:
    if cfg.initial_kind == "named" and cfg.initial_name == "burgers-smooth":
        oracle = exact_oracle(cfg.setup, cfg.t_final, burgers_smooth_exact)
    else:
        oracle = splitting_oracle(cfg.setup, cfg.t_final, cfg.cfl, reference_cells, component)
    case = SweepCase(
        setup=cfg.setup,
        scheme=cfg.scheme_kind,
        cfl=cfg.cfl,
        t_final=cfg.t_final,
        n_cells=cfg.n_cells,
        oracle=oracle,
        component=component,
    )
    if axis == "eps":
        result = epsilon_sweep(case, values, threads=threads)
    else:
        length = cfg.x_max - cfg.x_min
        counts = []
        for dx in values:
            n = round(length / dx)
            if n < 1 or abs(length / n - dx) > 1e-8 * dx:
                raise ConfigurationError(f"dx={dx} does not tile the domain of length {length}")
            counts.append(n)
        result = refinement_sweep(case, cfg.epsilon, counts, threads=threads)

    rows = [
        [r.value, r.l2, r.linf, r.rate, r.runtime_s, r.error] for r in result.rows
    ]
    csv_name = f"sweep_{axis}.csv"
    csv_path = _out_path(cfg, out_dir, csv_name)
    _write_atomic(csv_path, _csv(rows, [result.parameter, "l2", "linf", "rate",
                                        "runtime_s", "error"]))
    gp_path = _out_path(cfg, out_dir, f"sweep_{axis}.gp")
    _write_atomic(gp_path, _gnuplot_script(cfg.prefix + csv_name, axis,
                                           cfg.prefix + f"sweep_{axis}.png"))
    print(f"wrote {csv_path}")
    print(f"wrote {gp_path}")
    return 0


def _require_matching(a: RunConfig, b: RunConfig, what: str) -> None:
    same = (
        a.model_kind == b.model_kind
        and a.model_args == b.model_args
        and a.initial_kind == b.initial_kind
        and a.initial_name == b.initial_name
        and a.riemann_left == b.riemann_left
        and a.riemann_right == b.riemann_right
        and a.riemann_x0 == b.riemann_x0
        and (a.x_min, a.x_max) == (b.x_min, b.x_max)
        and a.t_final == b.t_final
        and a.epsilon == b.epsilon
    )
    if not same:
        raise ConfigurationError(
            f"{what} must share model, initial data, domain, t_final and epsilon"
        )


def cmd_compare(cfg_a: RunConfig, cfg_b: RunConfig, cfg_ref: RunConfig, out_dir=None) -> int:
    _require_matching(cfg_a, cfg_b, "compared configs")
    _require_matching(cfg_a, cfg_ref, "run and reference configs")
    if cfg_ref.scheme_kind is not SchemeKind.SPLITTING:
        raise ConfigurationError("the reference config must use the splitting scheme")
    for cfg in (cfg_a, cfg_b):
        if cfg_ref.n_cells % cfg.n_cells:
            raise ConfigurationError(
                f"reference cells {cfg_ref.n_cells} do not divide onto {cfg.n_cells}"
            )

    model, ref_ic = cfg_ref.setup()
    reference, _ = run_timed(model, ref_ic,
                             TimeControls(cfg_ref.cfl, cfg_ref.t_final, cfg_ref.scheme_kind),
                             cfg_ref.epsilon)
    fields = {}
    runtimes = {}
    for label, cfg in (("a", cfg_a), ("b", cfg_b)):
        m, ic = cfg.setup()
        out, secs = run_timed(m, ic, TimeControls(cfg.cfl, cfg.t_final, cfg.scheme_kind),
                              cfg.epsilon)
        key = f"{label}:{cfg.scheme_kind.value}"
        fields[key] = out
        runtimes[key] = secs
    table = distance_table(fields, model, reference)
    rows = [[r["label"], r["variable"], r["l2"], r["linf"], runtimes[r["label"]]]
            for r in table]
    path = _out_path(cfg_a, out_dir, "compare.csv")
    _write_atomic(path, _csv(rows, ["scheme", "variable", "l2", "linf", "runtime_s"]))
    print(f"wrote {path}")
    return 0


def _threads_from(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("RELAXSOLVE_THREADS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relaxsolve",
        description="Finite-volume schemes for 1-D hyperbolic systems with stiff relaxation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="path to the run configuration")
        p.add_argument("--output", default=None, help="output directory (overrides config)")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads for sweeps (default: RELAXSOLVE_THREADS or 1)")

    p_run = sub.add_parser("run", help="run one simulation and write the profile CSV")
    common(p_run)

    p_sweep = sub.add_parser("sweep", help="epsilon or mesh sweep with error table")
    common(p_sweep)
    p_sweep.add_argument("--axis", choices=("eps", "dx"), required=True)
    p_sweep.add_argument("--values", required=True,
                         help="comma-separated parameter values")
    p_sweep.add_argument("--reference-cells", type=int, default=None,
                         help="fine-mesh cells for the splitting reference "
                              "(default: 20x the run grid)")
    p_sweep.add_argument("--component", type=int, default=0,
                         help="state component used for the error norms")

    p_cmp = sub.add_parser("compare", help="two schemes against a fine-mesh reference")
    common(p_cmp)
    p_cmp.add_argument("--config-b", required=True, help="second run configuration")
    p_cmp.add_argument("--reference", required=True, help="splitting reference configuration")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.command == "run":
            return cmd_run(cfg, args.output)
        if args.command == "sweep":
            try:
                values = [float(v) for v in args.values.split(",") if v.strip()]
            except ValueError:
                print(f"config error: --values must be numeric, got {args.values!r}",
                      file=sys.stderr)
                return 2
            if not values:
                print("config error: --values is empty", file=sys.stderr)
                return 2
            reference_cells = args.reference_cells or 20 * cfg.n_cells
            return cmd_sweep(cfg, args.axis, values, reference_cells, args.component,
                             _threads_from(args), args.output)
        cfg_b = load_config(args.config_b)
        cfg_ref = load_config(args.reference)
        return cmd_compare(cfg, cfg_b, cfg_ref, args.output)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ConfigurationError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except AdmissibilityError as exc:
        print(f"runtime abort: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
