"""Run configuration: sectioned key-value files with strict validation.

Format: ``[section]`` headers, ``key = value`` lines, ``#``/``;`` comments.
Unknown sections or keys are errors (a silent typo in epsilon or the CFL
number would invalidate an experiment), and every diagnostic carries the
file and line it came from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .driver import SchemeKind
from .grid import FieldState, Grid1D
from .models import MODEL_KINDS, ChaplyginModel, JinXinModel, TwoPhaseModel
from .problems import INITIAL_DATA, riemann_data


class ConfigError(ValueError):
    def __init__(self, path: str, line: int, message: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


_SCHEMA = {
    "model": {"kind", "lambda", "k_min", "k_max", "a", "gamma", "gamma1", "gamma2"},
    "scheme": {"kind", "epsilon", "cfl"},
    "grid": {"n_cells", "x_min", "x_max", "t_final"},
    "initial": {"kind", "name", "left", "right", "x0"},
    "output": {"directory", "prefix"},
}

_MODEL_KEYS = {
    "jinxin": {"kind", "lambda", "k_min", "k_max"},
    "chaplygin": {"kind", "a", "gamma"},
    "twophase": {"kind", "gamma1", "gamma2"},
}


@dataclass
class RawConfig:
    path: str
    # section -> key -> (value string, line number)
    items: dict[str, dict[str, tuple[str, int]]] = field(default_factory=dict)
    section_lines: dict[str, int] = field(default_factory=dict)


def parse_file(path: str) -> RawConfig:
    raw = RawConfig(str(path))
    section = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith(("#", ";")):
                continue
            if stripped.startswith("["):
                if not stripped.endswith("]"):
                    raise ConfigError(raw.path, lineno, f"malformed section header {stripped!r}")
                section = stripped[1:-1].strip()
                if section not in _SCHEMA:
                    raise ConfigError(raw.path, lineno, f"unknown section [{section}]")
                if section in raw.items:
                    raise ConfigError(raw.path, lineno, f"duplicate section [{section}]")
                raw.items[section] = {}
                raw.section_lines[section] = lineno
                continue
            if section is None:
                raise ConfigError(raw.path, lineno, "key before any [section] header")
            if "=" not in stripped:
                raise ConfigError(raw.path, lineno, f"expected 'key = value', got {stripped!r}")
            key, _, value = stripped.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in _SCHEMA[section]:
                raise ConfigError(raw.path, lineno, f"unknown key '{key}' in section [{section}]")
            if key in raw.items[section]:
                raise ConfigError(raw.path, lineno, f"duplicate key '{key}' in [{section}]")
            raw.items[section][key] = (value, lineno)
    return raw


class _Section:
    def __init__(self, raw: RawConfig, name: str):
        self.raw = raw
        self.name = name
        self.data = raw.items.get(name, {})

    def require(self, key: str) -> tuple[str, int]:
        if key not in self.data:
            line = self.raw.section_lines.get(self.name, 0)
            raise ConfigError(self.raw.path, line, f"missing required key '{key}' in [{self.name}]")
        return self.data[key]

    def require_float(self, key: str) -> float:
        value, line = self.require(key)
        try:
            return float(value)
        except ValueError:
            raise ConfigError(self.raw.path, line, f"'{key}' must be a number, got {value!r}")

    def require_int(self, key: str) -> int:
        value, line = self.require(key)
        try:
            return int(value)
        except ValueError:
            raise ConfigError(self.raw.path, line, f"'{key}' must be an integer, got {value!r}")

    def get_str(self, key: str, default=None) -> Optional[str]:
        if key not in self.data:
            return default
        return self.data[key][0]

    def line_of(self, key: str) -> int:
        return self.data[key][1] if key in self.data else self.raw.section_lines.get(self.name, 0)


@dataclass
class RunConfig:
    """Fully validated configuration for one run."""

    path: str
    model_kind: str
    model_args: dict
    scheme_kind: SchemeKind
    epsilon: float
    cfl: float
    n_cells: int
    x_min: float
    x_max: float
    t_final: float
    initial_kind: str          # "named" or "riemann"
    initial_name: Optional[str]
    riemann_left: Optional[tuple]
    riemann_right: Optional[tuple]
    riemann_x0: float
    output_dir: str
    prefix: str

    def build_model(self):
        cls = MODEL_KINDS[self.model_kind]
        return cls(**self.model_args)

    def build_grid(self) -> Grid1D:
        return Grid1D(self.x_min, self.x_max, self.n_cells)

    def build_field(self, model, grid: Grid1D) -> FieldState:
        if self.initial_kind == "named":
            data = INITIAL_DATA[self.initial_name](model, grid)
        else:
            data = riemann_data(model, grid, self.riemann_left, self.riemann_right,
                                self.riemann_x0)
        return FieldState(grid, data)

    def setup(self, n_cells: Optional[int] = None):
        """(model, initial field), optionally on an overridden cell count."""
        model = self.build_model()
        grid = self.build_grid() if n_cells is None else Grid1D(self.x_min, self.x_max, n_cells)
        return model, self.build_field(model, grid)


def _parse_state(section: _Section, key: str, n_vars: int) -> tuple:
    value, line = section.require(key)
    parts = value.split()
    if len(parts) != n_vars:
        raise ConfigError(section.raw.path, line,
                          f"'{key}' needs {n_vars} primitive values, got {len(parts)}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise ConfigError(section.raw.path, line, f"'{key}' has non-numeric entries: {value!r}")


def load_config(path: str) -> RunConfig:
    """Parse and validate a run configuration, before any large allocation."""
    raw = parse_file(path)
    model = _Section(raw, "model")
    scheme = _Section(raw, "scheme")
    grid = _Section(raw, "grid")
    initial = _Section(raw, "initial")
    output = _Section(raw, "output")

    kind, kind_line = model.require("kind")
    if kind not in MODEL_KINDS:
        raise ConfigError(raw.path, kind_line,
                          f"unknown model kind {kind!r}; expected one of {sorted(MODEL_KINDS)}")
    allowed = _MODEL_KEYS[kind]
    for key in model.data:
        if key not in allowed:
            raise ConfigError(raw.path, model.line_of(key),
                              f"key '{key}' does not apply to model '{kind}'")
    if kind == "jinxin":
        model_args = {
            "lam": model.require_float("lambda"),
            "bounds": (model.require_float("k_min"), model.require_float("k_max")),
        }
    elif kind == "chaplygin":
        model_args = {"a": model.require_float("a"), "gamma": model.require_float("gamma")}
    else:
        model_args = {
            "gamma1": model.require_float("gamma1"),
            "gamma2": model.require_float("gamma2"),
        }
    try:
        probe = MODEL_KINDS[kind](**model_args)
    except ValueError as exc:
        raise ConfigError(raw.path, raw.section_lines["model"], str(exc))

    scheme_name, scheme_line = scheme.require("kind")
    try:
        scheme_kind = SchemeKind(scheme_name)
    except ValueError:
        raise ConfigError(raw.path, scheme_line,
                          f"unknown scheme {scheme_name!r}; expected staggered|ars|splitting")
    epsilon = scheme.require_float("epsilon")
    if epsilon <= 0:
        raise ConfigError(raw.path, scheme.line_of("epsilon"),
                          f"epsilon must be positive, got {epsilon}")
    cfl = scheme.require_float("cfl")
    if not 0 < cfl <= 1:
        raise ConfigError(raw.path, scheme.line_of("cfl"), f"cfl must lie in (0, 1], got {cfl}")

    n_cells = grid.require_int("n_cells")
    if n_cells < 1:
        raise ConfigError(raw.path, grid.line_of("n_cells"),
                          f"n_cells must be positive, got {n_cells}")
    x_min = grid.require_float("x_min")
    x_max = grid.require_float("x_max")
    if not x_max > x_min:
        raise ConfigError(raw.path, grid.line_of("x_max"),
                          f"empty domain [{x_min}, {x_max}]")
    t_final = grid.require_float("t_final")
    if t_final < 0:
        raise ConfigError(raw.path, grid.line_of("t_final"),
                          f"t_final must be non-negative, got {t_final}")

    initial_kind, init_line = initial.require("kind")
    name = None
    left = right = None
    x0 = 0.0
    if initial_kind == "named":
        name, name_line = initial.require("name")
        if name not in INITIAL_DATA:
            raise ConfigError(raw.path, name_line,
                              f"unknown initial condition {name!r}; "
                              f"expected one of {sorted(INITIAL_DATA)}")
    elif initial_kind == "riemann":
        n_vars = len(probe.variable_names)
        left = _parse_state(initial, "left", n_vars)
        right = _parse_state(initial, "right", n_vars)
        x0 = initial.require_float("x0")
    else:
        raise ConfigError(raw.path, init_line,
                          f"initial kind must be 'named' or 'riemann', got {initial_kind!r}")

    return RunConfig(
        path=raw.path,
        model_kind=kind,
        model_args=model_args,
        scheme_kind=scheme_kind,
        epsilon=epsilon,
        cfl=cfl,
        n_cells=n_cells,
        x_min=x_min,
        x_max=x_max,
        t_final=t_final,
        initial_kind=initial_kind,
        initial_name=name,
        riemann_left=left,
        riemann_right=right,
        riemann_x0=x0,
        output_dir=output.get_str("directory", "."),
        prefix=output.get_str("prefix", ""),
    )
