"""Experiment configuration: strict JSON parsing and round-trip serialization.

The config is a JSON document with four sections.  Unknown keys anywhere are
rejected with the offending key named, so experiment files cannot silently
drift.  ``serialize_config(parse_config(text))`` is semantically identical to
the input (numeric normalization aside).

Schema (see README for the full key table)::

    {
      "problem": {
        "operator": {"kind": ..., ...params},
        "set": {"kind": ..., ...params},
        "lipschitz": number?,           # default: operator's declared constant
        "known_solutions": [[...], ...]?
      },
      "algorithm": {
        "method": "extragradient|tseng|popov|frb|ogda",
        "stepsize": number | "relative_stepsize": number,   # exactly one
        "u0": [...],
        "v0": [...]?,                   # popov/ogda extrapolation seed, frb's u1
        "max_iter": int?,               # default 1000
        "residual_tol": number|null?,   # default 1e-8; null disables
        "stall_window": int|null?       # default 5; null disables
      },
      "analysis": {"lyapunov": "standard"|"alternative"|null?, "spectral": bool?},
      "output": {"csv": path?, "json": path?},
      "seed": int?
    }
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .analysis import LYAPUNOV_VARIANTS
from .operators import OPERATOR_KINDS, operator_from_params
from .problem import ProblemInstance
from .sets import SET_KINDS, set_from_params
from .solvers import SOLVER_KINDS, _BaseSolver, make_solver

__all__ = ["ConfigError", "ExperimentConfig", "parse_config", "load_config",
           "serialize_config"]

DEFAULT_SEED = 42


class ConfigError(ValueError):
    """A config file failed validation; the message names the offending key."""


@dataclass
class ExperimentConfig:
    problem: ProblemInstance
    solver: _BaseSolver
    lyapunov: str | None
    spectral: bool
    csv_path: str | None
    json_path: str | None
    seed: int


def _require_keys(section: dict, allowed: set[str], required: set[str], where: str):
    for key in section:
        if key not in allowed:
            raise ConfigError(f"unknown key {key!r} in {where}")
    for key in required:
        if key not in section:
            raise ConfigError(f"missing required key {key!r} in {where}")


def _number(value, where: str, positive: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{where} must be finite")
    if positive and value <= 0.0:
        raise ConfigError(f"{where} must be positive, got {value}")
    return value


def _integer(value, where: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{where} must be >= {minimum}, got {value}")
    return value


def _vector(value, where: str):
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{where} must be a nonempty array of numbers")
    return [_number(entry, f"{where} entry") for entry in value]


def _bound_vector(value, where: str, sign: float):
    # box bounds: null entries mean unbounded on that side
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{where} must be a nonempty array of numbers or nulls")
    out = []
    for entry in value:
        if entry is None:
            out.append(sign * math.inf)
        else:
            out.append(_number(entry, f"{where} entry"))
    return out


_OPERATOR_SCHEMAS = {
    "rotation": (set(), set()),
    "negation": ({"dimension"}, {"dimension"}),
    "scaled_identity_plus_rotation": ({"eta"}, {"eta"}),
    "affine": ({"matrix", "offset", "lipschitz"}, {"matrix"}),
}

_SET_SCHEMAS = {
    "whole_space": ({"dimension"}, {"dimension"}),
    "halfspace": ({"normal", "offset"}, {"normal"}),
    "box": ({"lower", "upper"}, {"lower", "upper"}),
    "ball": ({"center", "radius"}, {"center", "radius"}),
    "simplex": ({"dimension", "scale"}, {"dimension"}),
}


def _parse_operator(section, where: str):
    if not isinstance(section, dict):
        raise ConfigError(f"{where} must be an object")
    kind = section.get("kind")
    if kind not in OPERATOR_KINDS:
        raise ConfigError(
            f"unknown operator kind {kind!r} in {where}, "
            f"expected one of {sorted(OPERATOR_KINDS)}")
    allowed, required = _OPERATOR_SCHEMAS[kind]
    _require_keys(section, allowed | {"kind"}, required, f"{where} ({kind})")
    params = {}
    if kind == "negation":
        params["dimension"] = _integer(section["dimension"], f"{where}.dimension", 1)
    elif kind == "scaled_identity_plus_rotation":
        params["eta"] = _number(section["eta"], f"{where}.eta", positive=True)
    elif kind == "affine":
        matrix = section["matrix"]
        if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
            raise ConfigError(f"{where}.matrix must be an array of arrays")
        params["matrix"] = [[_number(x, f"{where}.matrix entry") for x in row]
                            for row in matrix]
        if "offset" in section:
            params["offset"] = _vector(section["offset"], f"{where}.offset")
        if "lipschitz" in section:
            params["lipschitz"] = _number(section["lipschitz"], f"{where}.lipschitz",
                                          positive=True)
    try:
        return operator_from_params(kind, params)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"invalid {where}: {exc}") from exc


def _parse_set(section, where: str):
    if not isinstance(section, dict):
        raise ConfigError(f"{where} must be an object")
    kind = section.get("kind")
    if kind not in SET_KINDS:
        raise ConfigError(f"unknown set kind {kind!r} in {where}, "
                          f"expected one of {sorted(SET_KINDS)}")
    allowed, required = _SET_SCHEMAS[kind]
    _require_keys(section, allowed | {"kind"}, required, f"{where} ({kind})")
    params = {}
    if kind == "whole_space":
        params["dimension"] = _integer(section["dimension"], f"{where}.dimension", 1)
    elif kind == "halfspace":
        params["normal"] = _vector(section["normal"], f"{where}.normal")
        if "offset" in section:
            params["offset"] = _number(section["offset"], f"{where}.offset")
    elif kind == "box":
        params["lower"] = _bound_vector(section["lower"], f"{where}.lower", -1.0)
        params["upper"] = _bound_vector(section["upper"], f"{where}.upper", +1.0)
    elif kind == "ball":
        params["center"] = _vector(section["center"], f"{where}.center")
        params["radius"] = _number(section["radius"], f"{where}.radius", positive=True)
    elif kind == "simplex":
        params["dimension"] = _integer(section["dimension"], f"{where}.dimension", 1)
        if "scale" in section:
            params["scale"] = _number(section["scale"], f"{where}.scale", positive=True)
    try:
        return set_from_params(kind, params)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"invalid {where}: {exc}") from exc


def parse_config(text: str, source: str = "<config>") -> ExperimentConfig:
    """Parse and validate a config document."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}: invalid JSON at line {exc.lineno}, "
                          f"column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{source}: top level must be an object")
    _require_keys(data, {"problem", "algorithm", "analysis", "output", "seed"},
                  {"problem", "algorithm"}, "config")

    prob = data["problem"]
    if not isinstance(prob, dict):
        raise ConfigError("'problem' must be an object")
    _require_keys(prob, {"operator", "set", "lipschitz", "known_solutions"},
                  {"operator", "set"}, "'problem'")
    operator = _parse_operator(prob["operator"], "problem.operator")
    feasible_set = _parse_set(prob["set"], "problem.set")
    lipschitz = None
    if "lipschitz" in prob:
        lipschitz = _number(prob["lipschitz"], "problem.lipschitz", positive=True)
    known = None
    if "known_solutions" in prob:
        sols = prob["known_solutions"]
        if not isinstance(sols, list):
            raise ConfigError("problem.known_solutions must be an array of points")
        known = [_vector(s, "problem.known_solutions entry") for s in sols]
    try:
        problem = ProblemInstance(operator, feasible_set, lipschitz=lipschitz,
                                  known_solutions=known)
    except ValueError as exc:
        raise ConfigError(f"invalid problem: {exc}") from exc

    algo = data["algorithm"]
    if not isinstance(algo, dict):
        raise ConfigError("'algorithm' must be an object")
    _require_keys(algo, {"method", "stepsize", "relative_stepsize", "u0", "v0",
                         "max_iter", "residual_tol", "stall_window"},
                  {"method", "u0"}, "'algorithm'")
    method = algo["method"]
    if method not in SOLVER_KINDS:
        raise ConfigError(f"unknown method {method!r}, "
                          f"expected one of {sorted(SOLVER_KINDS)}")
    has_abs = "stepsize" in algo
    has_rel = "relative_stepsize" in algo
    if has_abs == has_rel:
        raise ConfigError("'algorithm' needs exactly one of 'stepsize' "
                          "or 'relative_stepsize'")
    if has_abs:
        stepsize = _number(algo["stepsize"], "algorithm.stepsize", positive=True)
    else:
        stepsize = _number(algo["relative_stepsize"], "algorithm.relative_stepsize",
                           positive=True)
    u0 = _vector(algo["u0"], "algorithm.u0")
    if len(u0) != problem.dimension:
        raise ConfigError(f"algorithm.u0 has dimension {len(u0)}, "
                          f"the problem has dimension {problem.dimension}")
    params = {
        "stepsize": stepsize,
        "relative": has_rel,
        "u0": u0,
        "max_iter": (_integer(algo["max_iter"], "algorithm.max_iter", 1)
                     if "max_iter" in algo else 1000),
    }
    if "v0" in algo and algo["v0"] is not None:
        if method in ("extragradient", "tseng"):
            raise ConfigError(f"algorithm.v0 is not used by {method}")
        v0 = _vector(algo["v0"], "algorithm.v0")
        if len(v0) != problem.dimension:
            raise ConfigError(f"algorithm.v0 has dimension {len(v0)}, "
                              f"the problem has dimension {problem.dimension}")
        params["v0"] = v0
    if "residual_tol" in algo:
        tol = algo["residual_tol"]
        params["residual_tol"] = (None if tol is None else
                                  _number(tol, "algorithm.residual_tol", positive=True))
    if "stall_window" in algo:
        window = algo["stall_window"]
        params["stall_window"] = (None if window is None else
                                  _integer(window, "algorithm.stall_window", 1))
    solver = make_solver(method, **params)
    if method == "ogda" and feasible_set.kind != "whole_space":
        raise ConfigError("method 'ogda' requires a whole_space feasible set")

    lyapunov = None
    spectral = True
    if "analysis" in data:
        ana = data["analysis"]
        if not isinstance(ana, dict):
            raise ConfigError("'analysis' must be an object")
        _require_keys(ana, {"lyapunov", "spectral"}, set(), "'analysis'")
        if "lyapunov" in ana and ana["lyapunov"] is not None:
            lyapunov = ana["lyapunov"]
            if lyapunov not in LYAPUNOV_VARIANTS:
                raise ConfigError(f"analysis.lyapunov must be one of "
                                  f"{LYAPUNOV_VARIANTS} or null, got {lyapunov!r}")
            if method not in ("popov", "ogda") or feasible_set.kind != "whole_space":
                raise ConfigError("analysis.lyapunov requires an unconstrained "
                                  "popov or ogda run")
            if not problem.known_solutions:
                raise ConfigError("analysis.lyapunov requires known_solutions")
        if "spectral" in ana:
            if not isinstance(ana["spectral"], bool):
                raise ConfigError("analysis.spectral must be a boolean")
            spectral = ana["spectral"]

    csv_path = json_path = None
    if "output" in data:
        out = data["output"]
        if not isinstance(out, dict):
            raise ConfigError("'output' must be an object")
        _require_keys(out, {"csv", "json"}, set(), "'output'")
        if "csv" in out and out["csv"] is not None:
            if not isinstance(out["csv"], str):
                raise ConfigError("output.csv must be a path string")
            csv_path = out["csv"]
        if "json" in out and out["json"] is not None:
            if not isinstance(out["json"], str):
                raise ConfigError("output.json must be a path string")
            json_path = out["json"]

    seed = DEFAULT_SEED
    if "seed" in data:
        seed = _integer(data["seed"], "'seed'")

    return ExperimentConfig(problem=problem, solver=solver, lyapunov=lyapunov,
                            spectral=spectral, csv_path=csv_path,
                            json_path=json_path, seed=seed)


def load_config(path) -> ExperimentConfig:
    with open(path) as fh:
        text = fh.read()
    return parse_config(text, source=str(path))


def _clean_bound(values, sign: float):
    return [None if (math.isinf(v) and (v > 0) == (sign > 0)) else v for v in values]


def serialize_config(config: ExperimentConfig) -> dict:
    """Render a config back to its JSON data model."""
    operator = config.problem.operator
    feasible_set = config.problem.feasible_set
    op_section = {"kind": operator.kind, **operator.params()}
    set_params = feasible_set.params()
    if feasible_set.kind == "box":
        set_params["lower"] = _clean_bound(set_params["lower"], -1.0)
        set_params["upper"] = _clean_bound(set_params["upper"], +1.0)
    set_section = {"kind": feasible_set.kind, **set_params}
    problem = {
        "operator": op_section,
        "set": set_section,
        "lipschitz": config.problem.lipschitz,
    }
    if config.problem.known_solutions:
        problem["known_solutions"] = [s.tolist() for s in config.problem.known_solutions]

    solver = config.solver
    algorithm = {
        "method": solver.method,
        ("relative_stepsize" if solver.relative else "stepsize"): solver.stepsize,
        "u0": np.asarray(solver.u0, dtype=float).tolist(),
        "max_iter": solver.max_iter,
        "residual_tol": solver.residual_tol,
        "stall_window": solver.stall_window,
    }
    if solver.v0 is not None:
        algorithm["v0"] = np.asarray(solver.v0, dtype=float).tolist()

    return {
        "problem": problem,
        "algorithm": algorithm,
        "analysis": {"lyapunov": config.lyapunov, "spectral": config.spectral},
        "output": {"csv": config.csv_path, "json": config.json_path},
        "seed": config.seed,
    }
