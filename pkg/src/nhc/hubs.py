"""Hub selection: fixed degree threshold, top-n, or power-law fraction rule."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


class HubPolicyError(ValueError):
    pass


@dataclass(frozen=True)
class PowerLawFit:
    gamma: float
    k_min: int
    sample_size: int


@dataclass(frozen=True)
class HubPolicy:
    """Exactly one of ``min_degree``, ``top_n`` or ``fraction`` is set."""

    min_degree: Optional[int] = None
    top_n: Optional[int] = None
    fraction: Optional[float] = None
    k_min: int = 1
    fitted_pmf: bool = False

    def __post_init__(self):
        given = [x is not None for x in (self.min_degree, self.top_n, self.fraction)]
        if sum(given) != 1:
            raise HubPolicyError("exactly one of min_degree, top_n, fraction must be set")
        if self.min_degree is not None and self.min_degree < 1:
            raise HubPolicyError("min_degree must be >= 1")
        if self.top_n is not None and self.top_n < 1:
            raise HubPolicyError("top_n must be >= 1")
        if self.fraction is not None and not 0 < self.fraction <= 1:
            raise HubPolicyError("fraction must lie in (0, 1]")
        if self.k_min < 1:
            raise HubPolicyError("k_min must be >= 1")

    @classmethod
    def fixed(cls, d_min: int) -> "HubPolicy":
        return cls(min_degree=d_min)

    @property
    def mode(self) -> str:
        if self.min_degree is not None:
            return "fixed_threshold"
        return "top_n" if self.top_n is not None else "fraction"

    def threshold(self, degrees: Optional[Sequence[int]] = None) -> int:
        """Resolve the policy to a minimum hub degree for this degree sequence."""
        if self.min_degree is not None:
            return self.min_degree
        if not degrees:
            raise HubPolicyError(f"{self.mode} policy needs the degree sequence")
        if self.top_n is not None:
            ranked = sorted(degrees, reverse=True)
            # ties at the n-th place are all included
            return max(ranked[min(self.top_n, len(ranked)) - 1], 1)
        fit = estimate_gamma(degrees, self.k_min) if self.fitted_pmf else None
        return max(dmin_from_fraction(degrees, self.fraction, fit), 1)


def is_hub(degree: int, policy: HubPolicy, degrees: Optional[Sequence[int]] = None) -> bool:
    if degree < 0:
        raise HubPolicyError("degree must be non-negative")
    return degree >= policy.threshold(degrees)


def estimate_gamma(degrees: Sequence[int], k_min: int = 1) -> PowerLawFit:
    """Discrete power-law exponent by the approximate MLE with a half-unit offset."""
    if k_min < 1:
        raise HubPolicyError("k_min must be >= 1")
    tail = np.asarray([k for k in degrees if k >= k_min], dtype=np.float64)
    if len(tail) < 2:
        raise HubPolicyError(f"need at least 2 degrees >= {k_min}, got {len(tail)}")
    log_sum = float(np.sum(np.log(tail / (k_min - 0.5))))
    if np.all(tail == tail[0]) and tail[0] == k_min:
        raise HubPolicyError("degenerate tail: every degree equals k_min")
    gamma = 1.0 + len(tail) / log_sum
    if not math.isfinite(gamma):
        raise HubPolicyError("degenerate tail")
    if not 2.0 <= gamma <= 3.0:
        warnings.warn(f"fitted exponent {gamma:.3f} outside the usual [2, 3] range", stacklevel=2)
    return PowerLawFit(gamma=gamma, k_min=k_min, sample_size=len(tail))


def fitted_tail_mass(fit: PowerLawFit, upper: int) -> np.ndarray:
    """``mass[x - k_min]`` is the normalized pmf summed over ``k = x..upper``."""
    ks = np.arange(fit.k_min, upper + 1, dtype=np.float64)
    pmf = ks ** -fit.gamma
    pmf /= pmf.sum()
    return np.cumsum(pmf[::-1])[::-1]


def dmin_from_fraction(
    degrees: Sequence[int], h: float, fit: Optional[PowerLawFit] = None
) -> int:
    """Largest degree threshold whose tail mass is still at least ``h``.

    Without ``fit`` the tail mass is the empirical complementary CDF of
    ``degrees``. With ``fit`` it is the fitted pmf normalized over
    ``k_min..n`` where ``n`` is the node count.
    """
    if not 0 < h <= 1:
        raise HubPolicyError("h must lie in (0, 1]")
    if not degrees:
        raise HubPolicyError("empty degree sequence")
    lo = min(degrees)
    if fit is None:
        values, counts = np.unique(np.asarray(degrees), return_counts=True)
        ccdf = np.cumsum(counts[::-1])[::-1] / len(degrees)
        ok = np.nonzero(ccdf >= h)[0]
        return int(values[ok[-1]])
    n = len(degrees)
    if n < fit.k_min:
        raise HubPolicyError("node count below k_min of the fit")
    mass = fitted_tail_mass(fit, n)
    ok = np.nonzero(mass >= h)[0]
    if len(ok) == 0:
        warnings.warn("h exceeds total fitted mass; every node becomes a hub", stacklevel=2)
        return lo
    return int(fit.k_min + ok[-1])
