"""Probability distributions over non-negative integer keys.

Degree distributions and their estimates are all instances of one shape:
a finite probability mass function whose support is a set of non-negative
integers (degree values, ratio buckets, and so on).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_MASS_TOL = 1e-9


@dataclass(frozen=True)
class Distribution:
    """Probability mass function over non-negative integer keys.

    Attributes:
        masses: mapping from integer key to probability mass. Only keys
            with non-zero mass are stored.
        support_max: largest key carrying non-zero mass.
    """

    masses: dict[int, float]
    support_max: int = field(init=False)

    def __post_init__(self):
        if not self.masses:
            raise ValueError("distribution needs at least one key with mass")
        cleaned = {}
        for key, mass in self.masses.items():
            k = int(key)
            if k < 0:
                raise ValueError(f"negative key {k} in distribution")
            if mass < 0:
                raise ValueError(f"negative mass {mass} at key {k}")
            if mass > 0:
                cleaned[k] = float(mass)
        if not cleaned:
            raise ValueError("distribution has zero total mass")
        total = float(np.sum(np.fromiter(cleaned.values(), dtype=float)))
        if abs(total - 1.0) > _MASS_TOL:
            raise ValueError(f"masses sum to {total}, expected 1 within {_MASS_TOL}")
        object.__setattr__(self, "masses", cleaned)
        object.__setattr__(self, "support_max", max(cleaned))

    @classmethod
    def from_counts(cls, counts) -> "Distribution":
        """Normalize an array or mapping of non-negative counts into masses."""
        if isinstance(counts, dict):
            items = {int(k): float(v) for k, v in counts.items()}
        else:
            arr = np.asarray(counts, dtype=float)
            items = {k: arr[k] for k in range(arr.size)}
        total = sum(items.values())
        if total <= 0:
            raise ValueError("counts must have positive total")
        return cls({k: v / total for k, v in items.items() if v > 0})

    @classmethod
    def from_weights(cls, keys, weights) -> "Distribution":
        """Normalize per-observation weights grouped by integer key."""
        keys = np.asarray(keys, dtype=np.int64)
        weights = np.asarray(weights, dtype=float)
        if keys.size == 0:
            raise ValueError("no observations")
        sums = np.bincount(keys, weights=weights)
        return cls.from_counts(sums)

    def mass(self, key: int) -> float:
        """Mass at ``key``; zero for keys outside the support."""
        return self.masses.get(int(key), 0.0)

    def support(self) -> np.ndarray:
        """Sorted array of keys with non-zero mass."""
        return np.array(sorted(self.masses), dtype=np.int64)

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Return (keys, masses) sorted by key."""
        keys = self.support()
        vals = np.array([self.masses[int(k)] for k in keys], dtype=float)
        return keys, vals

    def cdf_rows(self) -> list[tuple[int, float, float]]:
        """Rows of (key, mass, cumulative mass) sorted by key."""
        keys, vals = self.as_arrays()
        cum = np.cumsum(vals)
        return [(int(k), float(m), float(c)) for k, m, c in zip(keys, vals, cum)]

    def total_variation(self, other: "Distribution") -> float:
        """Total variation distance: half the L1 gap over the union support."""
        keys = set(self.masses) | set(other.masses)
        gap = sum(abs(self.mass(k) - other.mass(k)) for k in keys)
        return 0.5 * gap
