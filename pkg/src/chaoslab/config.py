"""Run configuration: INI parsing, presets and the echoed header block.

Precedence, lowest first: built-in defaults, ``--preset``, ``--config``,
command-line overrides.  Output files start with the effective configuration
as ``# ``-prefixed INI lines, and such a file is itself accepted by
``--config``, which is how runs are reproduced.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path

from .dynamics import ModelParams, SimState
from .errors import ConfigError, DomainError
from .integrators import IntegratorConfig
from .rng import PRNG_NAME

PRESETS = ("fig1a", "fig1b")

SECTIONS = {
    "simulate": ("model", "initial", "integrator"),
    "lyapunov": ("model", "initial", "integrator", "lyapunov"),
    "sweep": ("model", "initial", "integrator", "lyapunov", "sweep"),
    "network": ("network",),
    "sample": ("sample",),
    "fit": ("fit",),
}
SEEDED = ("network", "sample")

MODEL_KEYS = ("alpha", "delta", "gamma", "beta", "c0", "p0")
INITIAL_KEYS = ("t", "q_s", "q_d", "c", "v", "p")
INTEGRATOR_KEYS = tuple(f.name for f in fields(IntegratorConfig))


@dataclass
class LyapunovSettings:
    renorm_interval: float = 1.0
    eps0: float = 1e-8
    transient: float | None = None


@dataclass
class NetworkSettings:
    kind: str = "ba"
    n: int = 1000
    m: int = 2
    p: float = 0.01


@dataclass
class SampleSettings:
    alpha: float = 2.5
    x_min: float = 1.0
    count: int = 1000


@dataclass
class FitSettings:
    input: str = ""
    x_min: float | None = None


@dataclass
class RunConfig:
    command: str
    model: ModelParams | None = None
    initial: SimState | None = None
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    lyapunov: LyapunovSettings = field(default_factory=LyapunovSettings)
    alphas: list = field(default_factory=list)
    network: NetworkSettings = field(default_factory=NetworkSettings)
    sample: SampleSettings = field(default_factory=SampleSettings)
    fit: FitSettings = field(default_factory=FitSettings)
    seed: int = 0


def _new_parser():
    return configparser.ConfigParser(interpolation=None)


def preset_text(name: str) -> str:
    if name not in PRESETS:
        raise ConfigError("preset", f"unknown preset {name!r}; choose from {PRESETS}")
    return resources.files("chaoslab").joinpath("presets", f"{name}.ini").read_text()


def extract_echo(text: str) -> str:
    """INI text of the echoed block at the top of an output file.

    Lines from the first ``# [section]`` up to the first line that does not
    start with ``#`` are kept, minus their ``# `` prefix.
    """
    out = []
    started = False
    for line in text.splitlines():
        if not line.startswith("#"):
            break
        body = line[1:].lstrip(" ") if line.startswith("# ") or line == "#" else line[1:]
        if body.startswith("["):
            started = True
        if started:
            out.append(body)
    return "\n".join(out)


def _strip_hash_comments(text: str) -> str:
    return "\n".join(l for l in text.splitlines() if not l.lstrip().startswith("#"))


def read_config_text(text: str) -> str:
    """Normalise a user config or an echoed output file to plain INI."""
    stripped = text.lstrip()
    if stripped.startswith("#") and "# [" in text:
        return extract_echo(text)
    return _strip_hash_comments(text)


def _parse_into(parser, text, origin):
    try:
        parser.read_string(text, source=origin)
    except configparser.Error as exc:
        raise ConfigError(origin, f"unreadable config ({exc.__class__.__name__}: {exc})") from exc


def _float(parser, section, key, default=None):
    if not parser.has_option(section, key):
        if default is None:
            raise ConfigError(f"{section}.{key}", "missing")
        return default
    raw = parser.get(section, key)
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{section}.{key}", f"not a number: {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{section}.{key}", f"not finite: {raw!r}")
    return value


def _int(parser, section, key, default=None):
    if not parser.has_option(section, key):
        if default is None:
            raise ConfigError(f"{section}.{key}", "missing")
        return default
    raw = parser.get(section, key)
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{section}.{key}", f"not an integer: {raw!r}") from None


def build_parser(command, preset=None, config_path=None, overrides=()):
    """Layer preset, config file and ``section.key=value`` overrides."""
    parser = _new_parser()
    if preset:
        _parse_into(parser, read_config_text(preset_text(preset)), f"preset {preset}")
    if config_path:
        try:
            text = Path(config_path).read_text()
        except OSError as exc:
            raise ConfigError("config", f"cannot read {config_path}: {exc.strerror}") from None
        user = _new_parser()
        _parse_into(user, read_config_text(text), str(config_path))
        if user.has_section("initial") and not user.has_option("initial", "q_d"):
            raise ConfigError("initial.q_d", "must be given explicitly whenever [initial] is set")
        for section in user.sections():
            if not parser.has_section(section):
                parser.add_section(section)
            for key, value in user.items(section):
                parser.set(section, key, value)
    for item in overrides:
        key, sep, value = item.partition("=")
        section, dot, option = key.strip().partition(".")
        if not sep or not dot:
            raise ConfigError(key or item, "override must look like section.key=value")
        if not parser.has_section(section):
            parser.add_section(section)
        parser.set(section, option, value.strip())
    return parser


def resolve(command, parser) -> RunConfig:
    """Typed, fully defaulted :class:`RunConfig` for ``command``."""
    if command not in SECTIONS:
        raise ConfigError("run.command", f"unknown command {command!r}")
    cfg = RunConfig(command=command)
    cfg.seed = _int(parser, "run", "seed", 0)
    if not 0 <= cfg.seed < 2 ** 64:
        raise ConfigError("run.seed", "must be an unsigned 64-bit integer")
    wanted = SECTIONS[command]

    if "model" in wanted:
        if not parser.has_section("model") or not parser.has_section("initial"):
            raise ConfigError("model", "no model parameters; pass --preset or --config")
        try:
            cfg.model = ModelParams(**{k: _float(parser, "model", k) for k in MODEL_KEYS})
            cfg.initial = SimState(**{k: _float(parser, "initial", k, 0.0 if k == "t" else None)
                                      for k in INITIAL_KEYS})
        except DomainError as exc:
            raise ConfigError("model", str(exc)) from None
        defaults = IntegratorConfig()
        kw = {}
        for f in fields(IntegratorConfig):
            d = getattr(defaults, f.name)
            if f.name == "method":
                kw[f.name] = parser.get("integrator", "method", fallback=d).strip()
            elif isinstance(d, int):
                kw[f.name] = _int(parser, "integrator", f.name, d)
            else:
                kw[f.name] = _float(parser, "integrator", f.name, d)
        cfg.integrator = IntegratorConfig(**kw)
        if cfg.integrator.t_end < cfg.initial.t:
            raise ConfigError("integrator.t_end", "must not precede initial.t")

    if "lyapunov" in wanted:
        ly = LyapunovSettings()
        ly.renorm_interval = _float(parser, "lyapunov", "renorm_interval", ly.renorm_interval)
        ly.eps0 = _float(parser, "lyapunov", "eps0", ly.eps0)
        raw = parser.get("lyapunov", "transient", fallback="auto").strip()
        if raw == "auto":
            ly.transient = (cfg.integrator.t_end - cfg.initial.t) / 10.0
        else:
            ly.transient = _float(parser, "lyapunov", "transient")
        if not ly.renorm_interval >= cfg.integrator.dt:
            raise ConfigError("lyapunov.renorm_interval", "must be >= integrator.dt")
        if not ly.eps0 > 0:
            raise ConfigError("lyapunov.eps0", "must be positive")
        cfg.lyapunov = ly

    if "sweep" in wanted:
        raw = parser.get("sweep", "alphas", fallback="").strip()
        if not raw:
            raise ConfigError("sweep.alphas", "missing; pass --alphas or set [sweep] alphas")
        try:
            cfg.alphas = [float(a) for a in raw.replace(",", " ").split()]
        except ValueError:
            raise ConfigError("sweep.alphas", f"not a list of numbers: {raw!r}") from None
        if any(not (math.isfinite(a) and a > 0) for a in cfg.alphas):
            raise ConfigError("sweep.alphas", "every alpha must be positive")

    if "network" in wanted:
        nw = NetworkSettings()
        nw.kind = parser.get("network", "kind", fallback=nw.kind).strip()
        if nw.kind not in ("ba", "er"):
            raise ConfigError("network.kind", f"must be 'ba' or 'er', got {nw.kind!r}")
        nw.n = _int(parser, "network", "n", nw.n)
        nw.m = _int(parser, "network", "m", nw.m)
        nw.p = _float(parser, "network", "p", nw.p)
        if nw.kind == "ba" and not nw.n > nw.m >= 1:
            raise ConfigError("network.m", "need n > m >= 1")
        if nw.kind == "er" and not (nw.n >= 1 and 0.0 <= nw.p <= 1.0):
            raise ConfigError("network.p", "need n >= 1 and 0 <= p <= 1")
        cfg.network = nw

    if "sample" in wanted:
        sm = SampleSettings()
        sm.alpha = _float(parser, "sample", "alpha", sm.alpha)
        sm.x_min = _float(parser, "sample", "x_min", sm.x_min)
        sm.count = _int(parser, "sample", "count", sm.count)
        if not sm.alpha > 1:
            raise ConfigError("sample.alpha", "must exceed 1")
        if not sm.x_min > 0:
            raise ConfigError("sample.x_min", "must be positive")
        if sm.count < 0:
            raise ConfigError("sample.count", "must be >= 0")
        cfg.sample = sm

    if "fit" in wanted:
        ft = FitSettings()
        ft.input = parser.get("fit", "input", fallback="").strip()
        if not ft.input:
            raise ConfigError("fit.input", "missing; pass --input")
        if parser.has_option("fit", "x_min"):
            ft.x_min = _float(parser, "fit", "x_min")
            if not ft.x_min > 0:
                raise ConfigError("fit.x_min", "must be positive")
        cfg.fit = ft
    return cfg


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def echo_lines(cfg: RunConfig) -> list[str]:
    """Effective configuration as ``# ``-prefixed INI lines."""
    lines = [f"# chaoslab {cfg.command}", "# [run]", f"# command = {cfg.command}"]
    if cfg.command in SEEDED:
        lines += [f"# seed = {cfg.seed}", f"# prng = {PRNG_NAME}"]
    for section in SECTIONS[cfg.command]:
        lines.append(f"# [{section}]")
        if section == "model":
            items = [(k, getattr(cfg.model, k)) for k in MODEL_KEYS]
        elif section == "initial":
            items = [(k, getattr(cfg.initial, k)) for k in INITIAL_KEYS]
        elif section == "integrator":
            items = [(k, getattr(cfg.integrator, k)) for k in INTEGRATOR_KEYS]
        elif section == "lyapunov":
            items = list(cfg.lyapunov.__dict__.items())
        elif section == "sweep":
            items = [("alphas", ", ".join(repr(a) for a in cfg.alphas))]
        elif section == "network":
            nw = cfg.network
            items = [("kind", nw.kind), ("n", nw.n)]
            items.append(("m", nw.m) if nw.kind == "ba" else ("p", nw.p))
        elif section == "sample":
            items = list(cfg.sample.__dict__.items())
        else:
            items = [("input", cfg.fit.input)]
            if cfg.fit.x_min is not None:
                items.append(("x_min", cfg.fit.x_min))
        lines += [f"# {k} = {_fmt(v)}" for k, v in items]
    return lines
