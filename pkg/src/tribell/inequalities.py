"""Mermin and Svetlichny functionals over two-settings-per-party correlation tensors.

Tensor indices (i, j, k) pick the setting of parties a, b, c with
0 = unprimed and 1 = primed.  Violation is judged on |value|, since
relabeling +-1 outcomes flips the sign of every functional freely.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .polarimetry import correlation, wrap_phase
from .qstate import DensityMatrix, PureState

ENTRY_ATOL = 1e-10


class Functional(str, Enum):
    MERMIN = "mermin"
    SVETLICHNY = "svetlichny"


class Classification(str, Enum):
    CONSISTENT_WITH_LOCAL = "consistent_with_local"
    RULES_OUT_LOCAL_ONLY = "rules_out_local_only"
    RULES_OUT_HYBRID = "rules_out_hybrid"


#: Hidden-variable bound the functional tests: 2 for fully local models under
#: Mermin, 4 for hybrid local-nonlocal models under Svetlichny.
BOUND = {Functional.MERMIN: 2.0, Functional.SVETLICHNY: 4.0}

#: Largest value attainable by any tensor with entries in [-1, 1].
ALGEBRAIC_MAX = {Functional.MERMIN: 4.0, Functional.SVETLICHNY: 8.0}


@dataclass(frozen=True)
class SettingsPair:
    """Unprimed/primed analyzer phase pair for one party (radians)."""

    phi: float
    phi_prime: float

    def __post_init__(self):
        for name in ("phi", "phi_prime"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    def setting(self, index: int) -> float:
        return self.phi if index == 0 else self.phi_prime

    @property
    def is_degenerate(self) -> bool:
        return wrap_phase(self.phi) == wrap_phase(self.phi_prime)


def symmetric_pairs(phi: float, phi_prime: float) -> tuple[SettingsPair, ...]:
    """The same (phi, phi') pair for all three parties."""
    pair = SettingsPair(phi, phi_prime)
    return (pair, pair, pair)


@dataclass(frozen=True, eq=False)
class CorrelationTensor:
    """Eight correlation values E[i, j, k] indexed by setting choice per party."""

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float).reshape(2, 2, 2)
        largest = float(np.abs(values).max())
        if largest > 1.0 + ENTRY_ATOL:
            raise ValueError(f"correlation entry out of range: |E| = {largest}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __getitem__(self, index) -> float:
        return float(self.values[index])

    def swapped(self) -> "CorrelationTensor":
        """Tensor with primed and unprimed roles exchanged for every party."""
        return CorrelationTensor(self.values[::-1, ::-1, ::-1])

    def to_jsonable(self) -> dict:
        return {
            "".join(str(b) for b in idx): float(self.values[idx])
            for idx in itertools.product((0, 1), repeat=3)
        }

    @classmethod
    def from_jsonable(cls, data: dict) -> "CorrelationTensor":
        values = np.empty((2, 2, 2))
        for idx in itertools.product((0, 1), repeat=3):
            values[idx] = float(data["".join(str(b) for b in idx)])
        return cls(values)

    def to_csv_rows(self) -> list[list]:
        rows = [["i", "j", "k", "E"]]
        for idx in itertools.product((0, 1), repeat=3):
            rows.append([idx[0], idx[1], idx[2], float(self.values[idx])])
        return rows


def correlation_tensor(
    state: PureState | DensityMatrix, pairs
) -> CorrelationTensor:
    """Evaluate all eight correlations for a two-settings-per-party scenario."""
    pairs = tuple(pairs)
    if len(pairs) != 3:
        raise ValueError(f"expected one SettingsPair per party, got {len(pairs)}")
    values = np.empty((2, 2, 2))
    for i, j, k in itertools.product((0, 1), repeat=3):
        phis = (pairs[0].setting(i), pairs[1].setting(j), pairs[2].setting(k))
        values[i, j, k] = correlation(state, phis)
    return CorrelationTensor(values)


def mermin_value(tensor: CorrelationTensor) -> float:
    """E[0,0,1] + E[0,1,0] + E[1,0,0] - E[1,1,1]."""
    e = tensor.values
    return float(e[0, 0, 1] + e[0, 1, 0] + e[1, 0, 0] - e[1, 1, 1])


def mermin_partner_value(tensor: CorrelationTensor) -> float:
    """The complementary Mermin combination, -M applied to the prime-swapped tensor."""
    return -mermin_value(tensor.swapped())


def svetlichny_value(tensor: CorrelationTensor) -> float:
    """Sum of all eight correlations, signed + for at most one primed setting.

    Equals mermin_value + mermin_partner_value; the identity is exercised in
    the test suite.
    """
    e = tensor.values
    return float(
        e[0, 0, 0] + e[0, 0, 1] + e[0, 1, 0] + e[1, 0, 0]
        - e[0, 1, 1] - e[1, 0, 1] - e[1, 1, 0] - e[1, 1, 1]
    )


def functional_value(tensor: CorrelationTensor, functional: Functional) -> float:
    functional = Functional(functional)
    if functional is Functional.MERMIN:
        return mermin_value(tensor)
    return svetlichny_value(tensor)


@dataclass(frozen=True)
class InequalityReport:
    """Functional value with its bound and hidden-variable classification."""

    functional: Functional
    value: float
    bound: float
    algebraic_max: float
    violated: bool
    classification: Classification
    degenerate: bool = False

    def to_jsonable(self) -> dict:
        return {
            "functional": self.functional.value,
            "value": float(self.value),
            "bound": float(self.bound),
            "algebraic_max": float(self.algebraic_max),
            "abs_value": abs(float(self.value)),
            "violated": bool(self.violated),
            "classification": self.classification.value,
            "degenerate": bool(self.degenerate),
        }


def classify(
    value: float, functional: Functional, degenerate: bool = False
) -> InequalityReport:
    """Judge a functional value against its hidden-variable bound.

    A Mermin violation only rules out fully local models: hybrid models with
    one nonlocally correlated pair reach the Mermin algebraic maximum 4, so
    Mermin never certifies genuine tripartite nonlocality.  Only a Svetlichny
    value beyond 4 rules out every hybrid model.
    """
    functional = Functional(functional)
    value = float(value)
    bound = BOUND[functional]
    violated = abs(value) > bound
    if not violated:
        classification = Classification.CONSISTENT_WITH_LOCAL
    elif functional is Functional.MERMIN:
        classification = Classification.RULES_OUT_LOCAL_ONLY
    else:
        classification = Classification.RULES_OUT_HYBRID
    return InequalityReport(
        functional=functional,
        value=value,
        bound=bound,
        algebraic_max=ALGEBRAIC_MAX[functional],
        violated=violated,
        classification=classification,
        degenerate=bool(degenerate),
    )
