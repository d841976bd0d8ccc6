"""Seeded experiment runs behind the CLI: dispatch, bound checks, reports.

A run is described by a flat configuration (kind plus kind-specific keys),
executes deterministically from its seed, and produces a RunRecord: the
config echo, per-trial rows, and an aggregate with a pass flag computed
from the same bounds and tolerances the test suite uses.  Records
serialize to line-delimited JSON (header / trial* / aggregate) or to a CSV
trial table; the JSON form embeds a hash of the deterministic payload,
excluding wall-clock fields, and is itself re-runnable as a config file.
"""

from __future__ import annotations

import configparser
import csv
import hashlib
import json
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .epr import (
    BipartiteRep,
    EprTarget,
    apply_bipartite,
    epr_condition_residual,
    find_epr_violation,
    make_gns_sum_difference_state,
)
from .errors import ConfigError, InvalidStrategyError
from .games import (
    ChainStrategy,
    FiniteStrategy,
    NonSeparableStrategy,
    chain_decode,
    chain_encode,
    discrete_metric,
    dyadic_metric,
    grid_strategy,
    orthogonal_encoding_strategy,
    play_epsilon,
    play_finite,
    play_nonseparable,
    seesaw_once,
    standard_metric,
    validate_strategy,
)
from .hilbert import Ket, inner_product
from .weyl import (
    WeylParams,
    apply_weyl,
    cis,
    eigenvector_residual_sq,
    find_momentum_eigenvector_violation,
    momentum_rep,
    orthogonal_overlap,
    position_rep,
    pythagorean_rep,
)

REPORT_SCHEMA = 1

AMP_TOL = 1e-12
BOUND_TOL = 1e-9

KINDS = (
    "ccr-check",
    "lemma-witness",
    "epr-witness",
    "gns-demo",
    "game-nonseparable",
    "game-finite",
    "game-optimize",
    "game-epsilon",
    "chain-roundtrip",
)

# per-kind configuration schema: name -> (coercion, default); the tolerance
# defaults are the same ones the test suite pins (amplitude exactness 1e-12,
# probability bounds 1e-9), surfaced here so reports are self-documenting
_COMMON_FIELDS: Dict[str, Tuple[Callable, object]] = {"seed": (int, 0)}
_KIND_FIELDS: Dict[str, Dict[str, Tuple[Callable, object]]] = {
    "ccr-check": {"trials": (int, 1000), "tolerance": (float, AMP_TOL)},
    "lemma-witness": {
        "trials": (int, 100),
        "support_max": (int, 12),
        "gammas": (int, 10),
        "tolerance": (float, AMP_TOL),
    },
    "epr-witness": {
        "trials": (int, 100),
        "theta": (str, "0"),
        "x": (str, "0"),
        "p": (str, "0"),
        "tolerance": (float, AMP_TOL),
    },
    "gns-demo": {
        "trials": (int, 100),
        "x": (str, "0"),
        "p": (str, "0"),
        "tolerance": (float, AMP_TOL),
    },
    "game-nonseparable": {"trials": (int, 100)},
    "game-finite": {
        "dim": (int, 2),
        "num_inputs": (int, 3),
        "strategy": (str, ""),
        "tolerance": (float, BOUND_TOL),
    },
    "game-optimize": {
        "dim": (int, 2),
        "num_inputs": (int, 3),
        "restarts": (int, 20),
        "iterations": (int, 500),
        "tolerance": (float, BOUND_TOL),
    },
    "game-epsilon": {
        "metric": (str, "standard-on-interval"),
        "epsilon": (str, "1/10"),
        "trials": (int, 100),
        "dim": (int, 2),
        "num_inputs": (int, 3),
        "sites": (int, 8),
        "tolerance": (float, BOUND_TOL),
    },
    "chain-roundtrip": {"trials": (int, 1000), "sites": (str, "4,16,64")},
}

_THETA_REPS = {
    "0": position_rep,
    "pi/2": momentum_rep,
    "pythagorean": pythagorean_rep,
}

_METRIC_ALIASES = {
    "standard": "standard-on-interval",
    "standard-on-interval": "standard-on-interval",
    "discrete": "discrete",
    "dyadic": "dyadic",
}


@dataclass
class RunRecord:
    """Self-contained result of one experiment run."""

    kind: str
    config: dict
    trials: List[dict]
    aggregate: dict
    duration_ms: float
    payload_sha256: str

    @property
    def passed(self) -> bool:
        return bool(self.aggregate.get("pass", False))


def normalize_config(raw: dict) -> dict:
    """Validate a raw config mapping and fill in per-kind defaults."""
    if "kind" not in raw:
        raise ConfigError("config needs a 'kind' key")
    kind = str(raw["kind"])
    if kind not in KINDS:
        raise ConfigError(f"unknown experiment kind {kind!r}; expected one of {KINDS}")
    schema = dict(_COMMON_FIELDS)
    schema.update(_KIND_FIELDS[kind])
    config = {"kind": kind}
    for key, value in raw.items():
        if key == "kind":
            continue
        if key not in schema:
            raise ConfigError(f"unknown config key {key!r} for kind {kind!r}")
        coerce, _ = schema[key]
        try:
            config[key] = coerce(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {key!r}: {value!r} ({exc})") from exc
    for key, (_, default) in schema.items():
        config.setdefault(key, default)
    _validate_values(config)
    return config


def _validate_values(config: dict) -> None:
    kind = config["kind"]
    for key in ("trials", "dim", "num_inputs", "restarts", "iterations", "support_max", "gammas"):
        if key in config and config[key] < 1:
            raise ConfigError(f"{key} must be >= 1, got {config[key]}")
    if "tolerance" in config and not config["tolerance"] > 0:
        raise ConfigError(f"tolerance must be positive, got {config['tolerance']}")
    if kind == "epr-witness" and config["theta"] not in _THETA_REPS:
        raise ConfigError(f"theta must be one of {sorted(_THETA_REPS)}, got {config['theta']!r}")
    if kind == "game-epsilon":
        if config["metric"] not in _METRIC_ALIASES:
            raise ConfigError(f"metric must be one of {sorted(set(_METRIC_ALIASES))}")
        try:
            if Fraction(config["epsilon"]) <= 0:
                raise ConfigError("epsilon must be positive")
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad epsilon {config['epsilon']!r}") from exc
    if kind == "chain-roundtrip":
        try:
            sites = [int(s) for s in str(config["sites"]).split(",") if s.strip()]
        except ValueError as exc:
            raise ConfigError(f"bad sites list {config['sites']!r}") from exc
        if not sites or any(s < 1 for s in sites):
            raise ConfigError("sites must be a comma-separated list of positive integers")


def run(raw_config: dict) -> RunRecord:
    """Execute one experiment and assemble its record."""
    config = normalize_config(raw_config)
    kind = config["kind"]
    rng = np.random.default_rng(config["seed"])
    runner = _RUNNERS[kind]
    started = time.perf_counter()
    trials, aggregate = runner(config, rng)
    duration_ms = (time.perf_counter() - started) * 1000.0
    payload = _payload_hash(kind, config, trials, aggregate)
    return RunRecord(
        kind=kind,
        config=config,
        trials=trials,
        aggregate=aggregate,
        duration_ms=duration_ms,
        payload_sha256=payload,
    )


def _payload_hash(kind: str, config: dict, trials: List[dict], aggregate: dict) -> str:
    body = {
        "schema": REPORT_SCHEMA,
        "version": __version__,
        "kind": kind,
        "config": config,
        "trials": trials,
        "aggregate": aggregate,
    }
    blob = json.dumps(body, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


# -- random exact data -------------------------------------------------------


def random_fraction(
    rng: np.random.Generator, max_num: int = 20, max_den: int = 12, nonzero: bool = False
) -> Fraction:
    """Uniformly seeded small rational; exact by construction."""
    num = int(rng.integers(-max_num, max_num + 1))
    den = int(rng.integers(1, max_den + 1))
    value = Fraction(num, den)
    if nonzero and value == 0:
        value = Fraction(1, den)
    return value


def random_unit_fraction(rng: np.random.Generator, max_den: int = 1000) -> Fraction:
    """Random rational in [0, 1]."""
    den = int(rng.integers(1, max_den + 1))
    num = int(rng.integers(0, den + 1))
    return Fraction(num, den)


def random_ket(rng: np.random.Generator, size: int, max_num: int = 20, max_den: int = 12) -> Ket:
    """Unit-norm sparse vector on ``size`` distinct random rational labels."""
    labels: list = []
    seen = set()
    while len(labels) < size:
        lab = random_fraction(rng, max_num, max_den)
        if lab not in seen:
            seen.add(lab)
            labels.append(lab)
    amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return Ket(zip(labels, amps)).normalized()


def random_biket(rng: np.random.Generator, size: int, max_num: int = 12, max_den: int = 8) -> Ket:
    """Unit-norm bipartite vector on ``size`` distinct random key pairs."""
    keys: list = []
    seen = set()
    while len(keys) < size:
        pair = (random_fraction(rng, max_num, max_den), random_fraction(rng, max_num, max_den))
        if pair not in seen:
            seen.add(pair)
            keys.append(pair)
    amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return Ket(zip(keys, amps)).normalized()


def diagonal_sum_biket(rng: np.random.Generator, size: int, x: Fraction) -> Ket:
    """Bipartite vector supported on pairs with left + right = x exactly.

    Such a vector satisfies EPR condition (i) with target x when both
    parties use position-type representations.
    """
    lefts: list = []
    seen = set()
    while len(lefts) < size:
        lam = random_fraction(rng, 12, 8)
        if lam not in seen:
            seen.add(lam)
            lefts.append(lam)
    amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return Ket(((lam, x - lam), amp) for lam, amp in zip(lefts, amps)).normalized()


# -- strategy files ----------------------------------------------------------


def _complex_pairs(matrix: np.ndarray) -> list:
    return [
        [[float(entry.real), float(entry.imag)] for entry in row] for row in np.atleast_2d(matrix)
    ]


def dump_strategy_json(strategy: FiniteStrategy, path) -> None:
    """Write the documented strategy file: dim, states and effects as
    [re, im] pairs."""
    payload = {
        "dim": strategy.dim,
        "states": _complex_pairs(strategy.states),
        "effects": [_complex_pairs(effect) for effect in strategy.effects],
    }
    Path(path).write_text(json.dumps(payload, indent=2), encoding="utf-8")


def _from_pairs(data, shape_hint: str) -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=np.float64)
        return arr[..., 0] + 1j * arr[..., 1]
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"malformed {shape_hint} in strategy file: {exc}") from exc


def load_strategy_json(path) -> FiniteStrategy:
    """Read a strategy file written by :func:`dump_strategy_json`."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read strategy file {path}: {exc}") from exc
    for key in ("dim", "states", "effects"):
        if key not in payload:
            raise ConfigError(f"strategy file {path} lacks key {key!r}")
    states = _from_pairs(payload["states"], "states")
    effects = np.stack([_from_pairs(effect, "effects") for effect in payload["effects"]])
    return FiniteStrategy(dim=int(payload["dim"]), states=states, effects=effects)


# -- runners ------------------------------------------------------------------


def _run_ccr_check(config: dict, rng: np.random.Generator):
    reps = [("theta=0", position_rep()), ("pythagorean", pythagorean_rep())]
    trials = []
    worst = 0.0
    keys_ok = True
    for index in range(config["trials"]):
        p1 = WeylParams(random_fraction(rng, 8), random_fraction(rng, 8))
        p2 = WeylParams(random_fraction(rng, 8), random_fraction(rng, 8))
        psi = random_ket(rng, int(rng.integers(1, 7)))
        row = {"index": index, "p1": str((str(p1.a), str(p1.b))), "p2": str((str(p2.a), str(p2.b)))}
        trial_err = 0.0
        trial_keys = True
        for name, rep in reps:
            lhs = apply_weyl(rep, p1, apply_weyl(rep, p2, psi))
            rhs = cis(p1.symplectic(p2) / 2) * apply_weyl(rep, p1 + p2, psi)
            diff = lhs - rhs
            err = max((abs(a) for _, a in diff.items()), default=0.0)
            same_keys = lhs.support == rhs.support
            row[f"err_{name}"] = err
            trial_err = max(trial_err, err)
            trial_keys = trial_keys and same_keys
        row["keys_equal"] = trial_keys
        trials.append(row)
        worst = max(worst, trial_err)
        keys_ok = keys_ok and trial_keys
    tol = config["tolerance"]
    aggregate = {
        "max_amp_error": worst,
        "all_support_keys_equal": keys_ok,
        "bound": tol,
        "pass": keys_ok and worst <= tol,
    }
    return trials, aggregate


def _run_lemma_witness(config: dict, rng: np.random.Generator):
    rep = position_rep()
    trials = []
    max_overlap = 0.0
    max_residual_dev = 0.0
    for index in range(config["trials"]):
        size = int(rng.integers(1, config["support_max"] + 1))
        psi = random_ket(rng, size)
        b, claimed = find_momentum_eigenvector_violation(rep, psi)
        overlap = orthogonal_overlap(rep, b, psi)
        dev = 0.0
        for _ in range(config["gammas"]):
            gamma = float(rng.uniform(0.0, 2.0 * np.pi))
            dev = max(dev, abs(eigenvector_residual_sq(rep, b, gamma, psi) - claimed))
        trials.append(
            {
                "index": index,
                "support": size,
                "b": str(b),
                "overlap_abs": abs(overlap),
                "residual_dev": dev,
            }
        )
        max_overlap = max(max_overlap, abs(overlap))
        max_residual_dev = max(max_residual_dev, dev)
    tol = config["tolerance"]
    aggregate = {
        "max_overlap_abs": max_overlap,
        "max_residual_dev": max_residual_dev,
        "bound": tol,
        "pass": max_overlap == 0.0 and max_residual_dev <= tol,
    }
    return trials, aggregate


def _run_epr_witness(config: dict, rng: np.random.Generator):
    rep = BipartiteRep(_THETA_REPS[config["theta"]](), position_rep())
    target = EprTarget(Fraction(config["x"]), Fraction(config["p"]))
    trials = []
    max_dev = 0.0
    max_overlap = 0.0
    for index in range(config["trials"]):
        engineered = index % 4 == 0
        size = int(rng.integers(1, 9))
        psi = (
            diagonal_sum_biket(rng, size, target.x)
            if engineered
            else random_biket(rng, size)
        )
        a, b, claimed = find_epr_violation(rep, target, psi)
        direct = epr_condition_residual(rep, target, a, b, psi)
        moved = apply_bipartite(rep, WeylParams(0, b), WeylParams(0, -b), psi)
        moved = apply_bipartite(rep, WeylParams(a, 0), WeylParams(a, 0), moved)
        overlap = abs(inner_product(psi, moved))
        trials.append(
            {
                "index": index,
                "engineered": engineered,
                "support": size,
                "a": str(a),
                "b": str(b),
                "residual_sq": direct,
                "residual_dev": abs(direct - claimed),
                "overlap_abs": overlap,
            }
        )
        max_dev = max(max_dev, abs(direct - claimed))
        max_overlap = max(max_overlap, overlap)
    tol = config["tolerance"]
    aggregate = {
        "max_residual_dev": max_dev,
        "max_overlap_abs": max_overlap,
        "bound": tol,
        "pass": max_overlap == 0.0 and max_dev <= tol,
    }
    return trials, aggregate


def _run_gns_demo(config: dict, rng: np.random.Generator):
    state, rep = make_gns_sum_difference_state(Fraction(config["x"]), Fraction(config["p"]))
    target = EprTarget(Fraction(config["x"]), Fraction(config["p"]))
    trials = []
    max_residual = 0.0
    for index in range(config["trials"]):
        a = random_fraction(rng, 8)
        b = random_fraction(rng, 8)
        res_one, res_two = rep.condition_residuals(target, a, b, state)
        trials.append(
            {"index": index, "a": str(a), "b": str(b), "res_one": res_one, "res_two": res_two}
        )
        max_residual = max(max_residual, res_one, res_two)
    tol = config["tolerance"]
    aggregate = {
        "max_residual": max_residual,
        "bipartite": rep.bipartite,
        "bound": tol,
        "pass": max_residual <= tol and not rep.bipartite,
    }
    return trials, aggregate


def _run_game_nonseparable(config: dict, rng: np.random.Generator):
    labels: list = []
    seen = set()
    while len(labels) < config["trials"]:
        lab = random_fraction(rng, 10**6, 10**3)
        if lab not in seen:
            seen.add(lab)
            labels.append(lab)
    report = play_nonseparable(labels)
    trials = [
        {"index": k, "x": str(x), "g": g}
        for k, (x, g) in enumerate(zip(report.inputs, report.guess_probs))
    ]
    strategy = NonSeparableStrategy()
    max_cross = 0.0
    for k in range(len(labels) - 1):
        max_cross = max(max_cross, strategy.cross_probability(labels[k], labels[k + 1]))
    all_exact = all(g == 1.0 for g in report.guess_probs)
    aggregate = {
        "average_g": report.average,
        "all_g_exactly_one": all_exact,
        "max_cross_probability": max_cross,
        "pass": all_exact and max_cross == 0.0,
    }
    return trials, aggregate


def _finite_bounds(report, dim: int, tol: float) -> dict:
    bound = dim / report.num_inputs
    mass = report.guessing_mass()
    return {
        "average_g": report.average,
        "bound": bound,
        "guessing_mass": mass,
        "mass_bound": float(dim),
        "within_bound": report.average <= bound + tol,
        "within_mass_bound": mass <= dim + tol,
    }


def _run_game_finite(config: dict, rng: np.random.Generator):
    if config["strategy"]:
        strategy = load_strategy_json(config["strategy"])
    else:
        strategy = orthogonal_encoding_strategy(config["dim"], config["num_inputs"])
    try:
        validate_strategy(strategy)
    except InvalidStrategyError as exc:
        aggregate = {"valid": False, "error": str(exc), "pass": False}
        return [], aggregate
    report = play_finite(strategy)
    trials = [
        {"index": int(i), "g": g} for i, g in zip(report.inputs, report.guess_probs)
    ]
    checks = _finite_bounds(report, strategy.dim, config["tolerance"])
    aggregate = {
        "valid": True,
        **checks,
        "pass": checks["within_bound"] and checks["within_mass_bound"],
    }
    return trials, aggregate


def _run_game_optimize(config: dict, rng: np.random.Generator):
    dim, num_inputs = config["dim"], config["num_inputs"]
    trials = []
    finals = []
    monotone_all = True
    for k in range(config["restarts"]):
        restart_rng = np.random.default_rng([config["seed"], k])
        _, history = seesaw_once(dim, num_inputs, restart_rng, config["iterations"])
        monotone = bool(np.all(np.diff(history) >= 0.0))
        final = float(history[-1])
        trials.append(
            {"restart": k, "g": final, "iterations": len(history) - 1, "monotone": monotone}
        )
        finals.append(final)
        monotone_all = monotone_all and monotone
    best_g = max(finals)
    bound = dim / num_inputs
    aggregate = {
        "best_g": best_g,
        "min_g": min(finals),
        "mean_g": float(sum(finals) / len(finals)),
        "bound": bound,
        "gap_to_bound": bound - best_g,
        "monotone_all": monotone_all,
        "pass": monotone_all and best_g <= bound + config["tolerance"],
    }
    return trials, aggregate


def _run_game_epsilon(config: dict, rng: np.random.Generator):
    metric_kind = _METRIC_ALIASES[config["metric"]]
    if metric_kind == "standard-on-interval":
        metric = standard_metric(0, 1)
        eps = Fraction(config["epsilon"])
        grid = grid_strategy((0, 1), eps)
        inputs = [random_unit_fraction(rng) for _ in range(config["trials"])]
        report = play_epsilon(metric, grid, eps, inputs)
        trials = [
            {"index": k, "x": str(x), "g": g}
            for k, (x, g) in enumerate(zip(report.inputs, report.guess_probs))
        ]
        min_g = min(report.guess_probs)
        aggregate = {
            "metric": metric_kind,
            "epsilon": str(eps),
            "cells": grid.num_cells,
            "min_g": min_g,
            "pass": min_g == 1.0,
        }
        return trials, aggregate
    if metric_kind == "discrete":
        metric = discrete_metric()
        eps = Fraction(config["epsilon"])
        strategy = orthogonal_encoding_strategy(config["dim"], config["num_inputs"])
        sharp = play_finite(strategy)
        relaxed = play_epsilon(metric, strategy, eps, range(strategy.num_inputs))
        identical = (
            relaxed.guess_probs == sharp.guess_probs and relaxed.average == sharp.average
        )
        trials = [
            {"index": k, "g_sharp": gs, "g_relaxed": gr}
            for k, (gs, gr) in enumerate(zip(sharp.guess_probs, relaxed.guess_probs))
        ]
        checks = _finite_bounds(sharp, strategy.dim, config["tolerance"])
        aggregate = {
            "metric": metric_kind,
            "epsilon": str(eps),
            "reduces_to_sharp": identical,
            "average_g": sharp.average,
            "pass": identical and checks["within_bound"],
        }
        return trials, aggregate
    metric = dyadic_metric()
    sites = config["sites"]
    eps = Fraction(1, 2**sites)
    strategy = ChainStrategy(num_sites=sites)
    inputs = []
    for _ in range(config["trials"]):
        value = random_unit_fraction(rng)
        inputs.append(value if value < 1 else Fraction(0))
    report = play_epsilon(metric, strategy, eps, inputs)
    trials = [
        {"index": k, "x": str(x), "g": g}
        for k, (x, g) in enumerate(zip(report.inputs, report.guess_probs))
    ]
    min_g = min(report.guess_probs)
    aggregate = {
        "metric": metric_kind,
        "epsilon": str(eps),
        "sites": sites,
        "min_g": min_g,
        "pass": min_g == 1.0,
    }
    return trials, aggregate


def _run_chain_roundtrip(config: dict, rng: np.random.Generator):
    sites = [int(s) for s in str(config["sites"]).split(",") if s.strip()]
    trials = []
    all_ok = True
    dyadic_ok = True
    for index in range(config["trials"]):
        value = random_unit_fraction(rng)
        x = value if value < 1 else Fraction(0)
        row = {"index": index, "x": str(x)}
        for n in sites:
            back = chain_decode(chain_encode(x, n))
            ok = abs(x - back) < Fraction(1, 2**n)
            row[f"ok_n{n}"] = ok
            all_ok = all_ok and ok
        # dyadic fixed point at the smallest width
        n0 = min(sites)
        k = int(rng.integers(0, 2**n0))
        dyadic = Fraction(k, 2**n0)
        exact = chain_decode(chain_encode(dyadic, n0)) == dyadic
        row["dyadic_exact"] = exact
        dyadic_ok = dyadic_ok and exact
        trials.append(row)
    aggregate = {
        "all_within_bound": all_ok,
        "dyadic_roundtrip_exact": dyadic_ok,
        "pass": all_ok and dyadic_ok,
    }
    return trials, aggregate


_RUNNERS = {
    "ccr-check": _run_ccr_check,
    "lemma-witness": _run_lemma_witness,
    "epr-witness": _run_epr_witness,
    "gns-demo": _run_gns_demo,
    "game-nonseparable": _run_game_nonseparable,
    "game-finite": _run_game_finite,
    "game-optimize": _run_game_optimize,
    "game-epsilon": _run_game_epsilon,
    "chain-roundtrip": _run_chain_roundtrip,
}


# -- report I/O ----------------------------------------------------------------


def record_lines(record: RunRecord) -> List[dict]:
    """The JSONL representation: header, trial rows, aggregate."""
    header = {
        "record": "header",
        "schema": REPORT_SCHEMA,
        "version": __version__,
        "kind": record.kind,
        "config": record.config,
    }
    rows = [dict(record="trial", **trial) for trial in record.trials]
    aggregate = {
        "record": "aggregate",
        **record.aggregate,
        "payload_sha256": record.payload_sha256,
        "duration_ms": record.duration_ms,
    }
    return [header, *rows, aggregate]


def write_jsonl(record: RunRecord, path) -> None:
    lines = [json.dumps(line, sort_keys=True) for line in record_lines(record)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_csv(record: RunRecord, path) -> None:
    """Trial table as CSV (aggregate statistics stay in the JSONL/stdout)."""
    columns: list = []
    for trial in record.trials:
        for key in trial:
            if key not in columns:
                columns.append(key)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=columns)
        writer.writeheader()
        for trial in record.trials:
            writer.writerow(trial)


def read_record_lines(path) -> List[dict]:
    lines = []
    with open(path, "r", encoding="utf-8") as handle:
        for raw in handle:
            raw = raw.strip()
            if raw:
                lines.append(json.loads(raw))
    return lines


def load_config_file(path) -> dict:
    """Read a config from an INI file or from a previous JSONL record."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        for line in read_record_lines(path):
            if line.get("record") == "header":
                config = dict(line.get("config", {}))
                config.setdefault("kind", line.get("kind"))
                return config
        raise ConfigError(f"no header record found in {path}")
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    if "experiment" not in parser:
        raise ConfigError(f"config {path} lacks an [experiment] section")
    return dict(parser["experiment"])


# -- summaries -----------------------------------------------------------------

_SUMMARY_STATS = {
    "ccr-check": ("max amp error", "max_amp_error", "bound"),
    "lemma-witness": ("max residual dev", "max_residual_dev", "bound"),
    "epr-witness": ("max residual dev", "max_residual_dev", "bound"),
    "gns-demo": ("max residual", "max_residual", "bound"),
    "game-nonseparable": ("average g", "average_g", None),
    "game-finite": ("average g", "average_g", "bound"),
    "game-optimize": ("best g", "best_g", "bound"),
    "game-epsilon": ("min g / avg g", None, None),
    "chain-roundtrip": ("roundtrip ok", "all_within_bound", None),
}


def _parameter_summary(config: dict) -> str:
    parts = [
        f"{key}={value}"
        for key, value in sorted(config.items())
        if key not in ("kind", "seed") and value != ""
    ]
    parts.append(f"seed={config.get('seed', 0)}")
    return " ".join(parts)


def summarize(records: Sequence[RunRecord]) -> str:
    """Fixed-width table per experiment kind, in deterministic kind order."""
    if not records:
        return ""
    sections = []
    for kind in KINDS:
        group = [r for r in records if r.kind == kind]
        if not group:
            continue
        stat_name, stat_key, bound_key = _SUMMARY_STATS[kind]
        width = max(40, max(len(_parameter_summary(r.config)) for r in group))
        lines = [
            f"== {kind} ==",
            f"{'parameters':<{width}}  {stat_name:>18}  {'bound':>12}  verdict",
        ]
        for record in group:
            agg = record.aggregate
            if stat_key is not None:
                stat = agg.get(stat_key, "-")
            else:
                stat = agg.get("min_g", agg.get("average_g", "-"))
            bound = agg.get(bound_key, "-") if bound_key else "-"
            stat_text = f"{stat:.6g}" if isinstance(stat, float) else str(stat)
            bound_text = f"{bound:.6g}" if isinstance(bound, float) else str(bound)
            verdict = "PASS" if record.passed else "FAIL"
            lines.append(
                f"{_parameter_summary(record.config):<{width}}  {stat_text:>18}  "
                f"{bound_text:>12}  {verdict}"
            )
        sections.append("\n".join(lines))
    return "\n\n".join(sections) + "\n"


def records_from_file(path) -> List[RunRecord]:
    """Rehydrate records (trials plus aggregate) from a JSONL report file."""
    lines = read_record_lines(path)
    records: List[RunRecord] = []
    header: Optional[dict] = None
    trials: List[dict] = []
    for line in lines:
        tag = line.get("record")
        if tag == "header":
            header = line
            trials = []
        elif tag == "trial":
            row = {k: v for k, v in line.items() if k != "record"}
            trials.append(row)
        elif tag == "aggregate":
            if header is None:
                raise ConfigError(f"aggregate before header in {path}")
            aggregate = {
                k: v
                for k, v in line.items()
                if k not in ("record", "payload_sha256", "duration_ms")
            }
            records.append(
                RunRecord(
                    kind=header["kind"],
                    config=dict(header["config"]),
                    trials=trials,
                    aggregate=aggregate,
                    duration_ms=float(line.get("duration_ms", 0.0)),
                    payload_sha256=str(line.get("payload_sha256", "")),
                )
            )
            header = None
            trials = []
    return records
