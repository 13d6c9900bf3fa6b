"""Finite-statistics simulation of the three-party correlation experiment.

Shots are allocated equally across the eight setting choices.  Each setting
choice draws from its own counter-based Philox stream keyed by
(seed, setting-choice index), so sampling is reproducible regardless of the
order in which setting blocks are evaluated.  Standard errors of the
functionals combine the per-setting binomial errors in quadrature, treating
setting blocks as independent.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .inequalities import (
    BOUND,
    CorrelationTensor,
    Functional,
    InequalityReport,
    classify,
    correlation_tensor,
    functional_value,
)
from .polarimetry import outcome_distribution, outcome_sign
from .qstate import DensityMatrix, PureState, as_density, mix_with_white_noise

_SETTING_CHOICES = tuple(itertools.product((0, 1), repeat=3))

#: Product of the three outcome signs for each outcome index triple.
_OUTCOME_SIGNS = np.array(
    [
        [[outcome_sign(oa) * outcome_sign(ob) * outcome_sign(oc) for oc in (0, 1)]
         for ob in (0, 1)]
        for oa in (0, 1)
    ],
    dtype=float,
)

#: Tensor entries whose per-setting errors enter each functional's error budget.
FUNCTIONAL_TERMS = {
    Functional.MERMIN: ((0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)),
    Functional.SVETLICHNY: _SETTING_CHOICES,
}


def _outcome_label(oa: int, ob: int, oc: int) -> str:
    return "".join("+-"[bit] for bit in (oa, ob, oc))


@dataclass(frozen=True, eq=False)
class CountTable:
    """Outcome counts per setting choice: counts[i, j, k, outcome_index]."""

    counts: np.ndarray
    n_shots_per_setting: int

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64).reshape(2, 2, 2, 8)
        if counts.min() < 0:
            raise ValueError("outcome counts must be nonnegative")
        n = int(self.n_shots_per_setting)
        if n < 1:
            raise ValueError(f"n_shots_per_setting must be at least 1, got {n}")
        sums = counts.sum(axis=-1)
        if not (sums == n).all():
            raise ValueError("each setting choice must hold exactly n_shots counts")
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "n_shots_per_setting", n)

    def to_jsonable(self) -> dict:
        table = {}
        for i, j, k in _SETTING_CHOICES:
            key = f"{i}{j}{k}"
            table[key] = {
                _outcome_label(oa, ob, oc): int(self.counts[i, j, k, 4 * oa + 2 * ob + oc])
                for oa, ob, oc in itertools.product((0, 1), repeat=3)
            }
        return {"n_shots_per_setting": self.n_shots_per_setting, "counts": table}

    def to_csv_rows(self) -> list[list]:
        rows = [["i", "j", "k", "outcome", "count"]]
        for i, j, k in _SETTING_CHOICES:
            for oa, ob, oc in itertools.product((0, 1), repeat=3):
                rows.append(
                    [i, j, k, _outcome_label(oa, ob, oc),
                     int(self.counts[i, j, k, 4 * oa + 2 * ob + oc])]
                )
        return rows


def _setting_stream(seed: int, choice_index: int) -> np.random.Generator:
    key = np.array([seed % 2**64, choice_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_counts(
    state: PureState | DensityMatrix, pairs, n_shots: int, seed: int
) -> CountTable:
    """Draw n_shots outcome triples per setting choice from the Born rule."""
    n_shots = int(n_shots)
    if n_shots < 1:
        raise ValueError(f"n_shots must be at least 1, got {n_shots}")
    rho = as_density(state)
    pairs = tuple(pairs)
    counts = np.zeros((2, 2, 2, 8), dtype=np.int64)
    for i, j, k in _SETTING_CHOICES:
        phis = (pairs[0].setting(i), pairs[1].setting(j), pairs[2].setting(k))
        probs = np.clip(outcome_distribution(rho, phis).probs.reshape(8), 0.0, None)
        cdf = np.cumsum(probs)
        cdf /= cdf[-1]
        rng = _setting_stream(seed, 4 * i + 2 * j + k)
        outcomes = np.searchsorted(cdf, rng.random(n_shots), side="right")
        counts[i, j, k] = np.bincount(np.minimum(outcomes, 7), minlength=8)
    return CountTable(counts, n_shots)


def estimate_tensor(table: CountTable) -> tuple[CorrelationTensor, np.ndarray]:
    """Per-entry correlation estimates and their binomial standard errors."""
    n = table.n_shots_per_setting
    estimates = (table.counts * _OUTCOME_SIGNS.reshape(1, 1, 1, 8)).sum(axis=-1) / n
    std_errors = np.sqrt(np.maximum(0.0, 1.0 - estimates**2) / n)
    return CorrelationTensor(estimates), std_errors


@dataclass(frozen=True)
class EstimatedReport(InequalityReport):
    """Inequality report with finite-statistics error and significance."""

    std_error: float = 0.0
    z_score: float = 0.0

    def to_jsonable(self) -> dict:
        out = super().to_jsonable()
        out["std_error"] = float(self.std_error)
        out["z_score"] = float(self.z_score)
        return out


def _z_score(value: float, bound: float, std_error: float) -> float:
    excess = abs(value) - bound
    if std_error > 0.0:
        return excess / std_error
    if excess == 0.0:
        return 0.0
    return math.copysign(math.inf, excess)


def report_from_tensor(
    tensor: CorrelationTensor,
    functional: Functional,
    std_error: float = 0.0,
    degenerate: bool = False,
) -> EstimatedReport:
    """Build a statistical report from a tensor; std_error 0 is the exact path."""
    functional = Functional(functional)
    value = functional_value(tensor, functional)
    base = classify(value, functional, degenerate=degenerate)
    return EstimatedReport(
        functional=base.functional,
        value=base.value,
        bound=base.bound,
        algebraic_max=base.algebraic_max,
        violated=base.violated,
        classification=base.classification,
        degenerate=base.degenerate,
        std_error=float(std_error),
        z_score=_z_score(base.value, base.bound, float(std_error)),
    )


def estimate_inequality(table: CountTable, functional: Functional) -> EstimatedReport:
    """Point estimate, quadrature-combined error, and significance from counts."""
    functional = Functional(functional)
    tensor, entry_errors = estimate_tensor(table)
    std_error = math.sqrt(
        sum(float(entry_errors[idx]) ** 2 for idx in FUNCTIONAL_TERMS[functional])
    )
    return report_from_tensor(tensor, functional, std_error=std_error)


def critical_visibility(
    state: PureState | DensityMatrix,
    pairs,
    functional: Functional,
    v_tol: float = 1e-6,
) -> float:
    """Smallest visibility at which |functional| crosses its bound, by bisection.

    White noise contributes nothing to any correlation (the observables are
    traceless), so the functional is linear in v and the crossing is unique.
    """
    functional = Functional(functional)
    rho = as_density(state)
    pairs = tuple(pairs)

    def excess(v: float) -> float:
        tensor = correlation_tensor(mix_with_white_noise(rho, v), pairs)
        return abs(functional_value(tensor, functional)) - BOUND[functional]

    if excess(1.0) <= 0.0:
        raise ValueError(
            "no violation at full visibility; critical visibility undefined"
        )
    lo, hi = 0.0, 1.0
    while hi - lo > v_tol:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
