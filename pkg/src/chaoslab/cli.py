"""Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 numerical blow-up,
4 estimator refusal.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import chaos, config, formats, graphs, integrators, powerlaw
from .errors import ConfigError, DomainError, EstimatorRefusal, StepSizeUnderflow

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BLOWUP = 3
EXIT_REFUSED = 4

DEFAULT_DEGREE_XMIN = 6


def _write(path, lines):
    text = "\n".join(lines) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_simulate(cfg, args):
    traj = integrators.integrate(cfg.initial, cfg.model, cfg.integrator)
    lines = config.echo_lines(cfg) + [formats.TRAJECTORY_HEADER]
    lines += formats.trajectory_rows(traj)
    if traj.blew_up:
        lines.append(f"# BLOWUP t={formats.num(traj.t_blowup)}")
    _write(args.output, lines)
    return EXIT_BLOWUP if traj.blew_up else EXIT_OK


def cmd_sweep(cfg, args):
    records = chaos.sweep_alpha(cfg.model, cfg.alphas, cfg.initial, cfg.integrator,
                                jobs=args.jobs, renorm_interval=cfg.lyapunov.renorm_interval,
                                eps0=cfg.lyapunov.eps0)
    lines = config.echo_lines(cfg) + [formats.SWEEP_HEADER]
    lines += [formats.sweep_row(r) for r in records]
    _write(args.output, lines)
    return EXIT_OK


def cmd_lyapunov(cfg, args):
    ly = cfg.lyapunov
    est = chaos.largest_lyapunov(cfg.initial, cfg.model, dt=cfg.integrator.dt,
                                 t_end=cfg.integrator.t_end, renorm_interval=ly.renorm_interval,
                                 eps0=ly.eps0, transient=ly.transient)
    head = config.echo_lines(cfg)
    lines = head + [formats.LYAPUNOV_HEADER, formats.lyapunov_row(est)]
    if est.truncated:
        lines.append(f"# BLOWUP t={formats.num(est.t_truncated)}")
    _write(args.output, lines)
    if args.series:
        series = head + ["t,log_stretch"]
        series += [f"{formats.num(t)},{formats.num(s)}"
                   for t, s in zip(est.event_times.tolist(), est.log_stretches.tolist())]
        _write(args.series, series)
    return EXIT_BLOWUP if est.truncated else EXIT_OK


def cmd_network(cfg, args):
    nw = cfg.network
    if nw.kind == "ba":
        g = graphs.generate_ba(nw.n, nw.m, cfg.seed)
    else:
        g = graphs.generate_er(nw.n, nw.p, cfg.seed)
    head = config.echo_lines(cfg)
    _write(args.output, [f"# nodes={g.n}"] + head + list(formats.edge_list_lines(g))[1:])
    stats = graphs.degree_stats(g)
    stats_path = args.stats
    if stats_path is None and args.output not in (None, "-"):
        stats_path = str(Path(args.output).with_suffix("")) + ".degrees.csv"
    if stats_path:
        lines = head + [f"# mean_degree={formats.num(stats.mean_degree)}", formats.DEGREE_HEADER]
        lines += formats.degree_rows(stats)
        _write(stats_path, lines)
    return EXIT_OK


def fit_file(path, x_min=None):
    """Fit the file at ``path``; returns ``(fit, kind, x_min_used)``.

    Edge lists are fitted on their degree sequence with the half-unit shift,
    anything else is read as one sample per line.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError("fit.input", f"cannot read {path}: {exc.strerror}") from None
    if formats.is_edge_list(text):
        g = formats.parse_edge_list(text, str(path))
        k_min = DEFAULT_DEGREE_XMIN if x_min is None else x_min
        if k_min != int(k_min):
            raise ConfigError("fit.x_min", "degree threshold must be an integer")
        return powerlaw.fit_degree_mle(g.degrees(), int(k_min)), "degrees", float(k_min)
    if x_min is None:
        raise ConfigError("fit.x_min", "required for sample files")
    samples = formats.parse_samples(text, str(path))
    return powerlaw.fit_powerlaw_mle(samples, x_min), "samples", x_min


def cmd_fit(cfg, args):
    fit, kind, x_min = fit_file(cfg.fit.input, cfg.fit.x_min)
    cfg.fit.x_min = x_min
    lines = config.echo_lines(cfg) + [f"# data={kind}", formats.FIT_HEADER, formats.fit_row(fit)]
    _write(args.output, lines)
    return EXIT_OK


def cmd_sample(cfg, args):
    sm = cfg.sample
    x = powerlaw.sample_pareto(sm.alpha, sm.x_min, sm.count, cfg.seed)
    _write(args.output, config.echo_lines(cfg) + list(formats.sample_lines(x)))
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "lyapunov": cmd_lyapunov,
    "network": cmd_network,
    "fit": cmd_fit,
    "sample": cmd_sample,
}


def build_argparser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI config, or an output file to reproduce")
    common.add_argument("--output", "-o", default="-", help="output path (default stdout)")
    common.add_argument("--seed", type=int, help="unsigned 64-bit seed")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--preset", choices=config.PRESETS)
    common.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE",
                        help="override a config value (repeatable)")

    ap = argparse.ArgumentParser(prog="chaoslab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="integrate the model to CSV")
    p.add_argument("--t-end", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--method", choices=integrators.METHODS)
    p.add_argument("--qd0", type=float, help="initial labour demand q_d(0)")

    p = sub.add_parser("sweep", parents=[common], help="sweep the price-adjustment rate")
    p.add_argument("--alphas", help="comma-separated list")
    p.add_argument("--t-end", type=float)
    p.add_argument("--qd0", type=float)

    p = sub.add_parser("lyapunov", parents=[common], help="largest Lyapunov exponent")
    p.add_argument("--t-end", type=float)
    p.add_argument("--renorm-interval", type=float)
    p.add_argument("--eps0", type=float)
    p.add_argument("--qd0", type=float)
    p.add_argument("--series", help="also write the per-event log-stretch series here")

    p = sub.add_parser("network", parents=[common], help="generate a BA or ER graph")
    p.add_argument("--kind", choices=("ba", "er"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--stats", help="degree-stats CSV path (default <output>.degrees.csv)")

    p = sub.add_parser("fit", parents=[common], help="power-law MLE on samples or an edge list")
    p.add_argument("--input")
    p.add_argument("--x-min", type=float)

    p = sub.add_parser("sample", parents=[common], help="draw Pareto samples")
    p.add_argument("--alpha", type=float)
    p.add_argument("--x-min", type=float)
    p.add_argument("--count", type=int)
    return ap


FLAG_KEYS = {
    "t_end": "integrator.t_end",
    "dt": "integrator.dt",
    "method": "integrator.method",
    "qd0": "initial.q_d",
    "alphas": "sweep.alphas",
    "renorm_interval": "lyapunov.renorm_interval",
    "eps0": "lyapunov.eps0",
    "kind": "network.kind",
    "n": "network.n",
    "m": "network.m",
    "p": "network.p",
    "input": "fit.input",
    "alpha": "sample.alpha",
    "count": "sample.count",
    "seed": "run.seed",
}


def _overrides(args):
    out = []
    for attr, key in FLAG_KEYS.items():
        value = getattr(args, attr, None)
        if value is not None:
            out.append(f"{key}={value!r}" if isinstance(value, float) else f"{key}={value}")
    x_min = getattr(args, "x_min", None)
    if x_min is not None:
        out.append(f"{'fit' if args.command == 'fit' else 'sample'}.x_min={x_min!r}")
    return out + list(args.set)


def main(argv=None):
    args = build_argparser().parse_args(argv)
    try:
        parser = config.build_parser(args.command, args.preset, args.config, _overrides(args))
        cfg = config.resolve(args.command, parser)
        return COMMANDS[args.command](cfg, args)
    except EstimatorRefusal as exc:
        print(f"chaoslab: estimator refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except StepSizeUnderflow as exc:
        print(f"chaoslab: {exc}", file=sys.stderr)
        return EXIT_BLOWUP
    except (ConfigError, DomainError) as exc:
        print(f"chaoslab: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
