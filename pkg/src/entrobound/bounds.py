"""Closed-form finite-size uncertainty bounds and their inversion.

Two routes to a certified min-entropy rate per qubit are implemented for
two-basis (BB84) measurements, plus the analogous new route for three-basis
(six-state) measurements:

* the legacy route fixes a rate of 1/2 - delta and pays an error
  ``exp(-delta^2 n / (128 (2 + log2(2/delta))^2))`` that shrinks only
  slowly with the block length ``n``;
* the new route maximises, over a Renyi parameter ``s`` in (0, 1], the
  state-independent per-qubit Renyi floor minus a smoothing correction
  ``log2(2/eps^2) / (s n)``.

Note the legacy error formula mixes logarithm bases on purpose: the outer
exponential is natural while the inner log is base 2. The choice reproduces
the reference block lengths (n ~ 2.4e8 at delta = 0.0106, eps = 0.1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .families import MeasurementFamily

# Coarse scan grid for the inner maximisation over s. Log-spaced so the
# small-s region (optimal for large n) is well resolved; the s -> 0 endpoint
# itself is excluded because its diverging correction term is never optimal
# for finite n.
_S_GRID = np.logspace(-6.0, 0.0, 256)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class InfeasibleRateError(ValueError):
    """Requested rate is at or above the asymptotic ceiling of the bound."""


@dataclass(frozen=True)
class RateResult:
    """A certified rate in bits per qubit and the ``s`` that attained it."""

    rate: float
    s_opt: float


def _require_block_length(n) -> int:
    if isinstance(n, float):
        if not n.is_integer():
            raise ValueError(f"block length must be an integer, got {n!r}")
        n = int(n)
    n = int(n)
    if n < 1:
        raise ValueError(f"block length must be >= 1, got {n!r}")
    return n


def _require_epsilon(epsilon: float) -> float:
    epsilon = float(epsilon)
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"smoothing error epsilon must lie in (0, 1), got {epsilon!r}")
    return epsilon


def _require_delta(delta: float) -> float:
    delta = float(delta)
    if not 0.0 < delta <= 0.5:
        raise ValueError(f"delta must lie in (0, 1/2], got {delta!r}")
    return delta


def _floor_bb84(s: float) -> float:
    return (1.0 + s - math.log2(1.0 + 2.0**s)) / s


def _floor_six(s: float) -> float:
    return -math.log2((1.0 + 2.0 ** (1.0 - s)) / 3.0) / s


def renyi_floor(alpha: float, family: MeasurementFamily) -> float:
    """State-independent minimum of the conditional Renyi entropy per qubit.

    For the two-basis family this is ``(alpha - log2(1 + 2^(alpha-1))) / (alpha - 1)``,
    for the three-basis family ``(log2 3 - log2(1 + 2^(2-alpha))) / (alpha - 1)``.
    Both are attained by basis eigenstates and decrease in alpha. Shares its
    evaluation with the rate objectives so fixed-s rates decompose exactly
    into floor minus correction term.
    """
    alpha = float(alpha)
    if not 1.0 < alpha <= 2.0:
        raise ValueError(f"Renyi order alpha must lie in (1, 2], got {alpha!r}")
    s = alpha - 1.0
    return _floor_bb84(s) if family is MeasurementFamily.BB84 else _floor_six(s)


def _golden_max(f, lo: float, hi: float, tol: float = 1e-12):
    """Golden-section maximisation of a smooth unimodal function on [lo, hi]."""
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc < fd:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = f(d)
        else:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = f(c)
    x = 0.5 * (lo + hi)
    return x, f(x)


def _maximize_rate(n: int, eps_term: float, family: MeasurementFamily) -> RateResult:
    # Coarse scan guards against multi-modality, golden section refines.
    s = _S_GRID
    if family is MeasurementFamily.BB84:
        floors = (1.0 + s - np.log2(1.0 + 2.0**s)) / s
        scalar_floor = _floor_bb84
    else:
        floors = -np.log2((1.0 + 2.0 ** (1.0 - s)) / 3.0) / s
        scalar_floor = _floor_six
    values = floors - eps_term / (s * n)
    i = int(np.argmax(values))

    def objective(x: float) -> float:
        return scalar_floor(x) - eps_term / (x * n)

    lo = float(s[max(i - 1, 0)])
    hi = float(s[min(i + 1, len(s) - 1)])
    x_ref, f_ref = _golden_max(objective, lo, hi)
    candidates = [(f_ref, x_ref), (float(values[i]), float(s[i]))]
    best_val, best_s = max(candidates)
    return RateResult(rate=best_val, s_opt=min(best_s, 1.0))


def _rate(n, epsilon, s, family: MeasurementFamily) -> RateResult:
    n = _require_block_length(n)
    epsilon = _require_epsilon(epsilon)
    eps_term = math.log2(2.0 / epsilon**2)
    if s is not None:
        s = float(s)
        if not 0.0 < s <= 1.0:
            raise ValueError(f"Renyi parameter s must lie in (0, 1], got {s!r}")
        floor = _floor_bb84(s) if family is MeasurementFamily.BB84 else _floor_six(s)
        return RateResult(rate=floor - eps_term / (s * n), s_opt=s)
    return _maximize_rate(n, eps_term, family)


def rate_bb84(n, epsilon: float, s: float | None = None) -> RateResult:
    """Certified min-entropy rate per qubit for two-basis measurements.

    Maximises over the Renyi parameter unless ``s`` is fixed. The result can
    be negative for small ``n`` (a vacuous bound); it is reported as-is so
    feasibility checks can see the sign. Bounded above by 1/2.
    """
    return _rate(n, epsilon, s, MeasurementFamily.BB84)


def rate_six(n, epsilon: float, s: float | None = None) -> RateResult:
    """Certified min-entropy rate per qubit for three-basis measurements.

    Same contract as :func:`rate_bb84`, with asymptotic ceiling 2/3.
    """
    return _rate(n, epsilon, s, MeasurementFamily.SIX_STATE)


def legacy_epsilon(n, delta: float) -> float:
    """Smoothing error of the legacy two-basis bound at rate ``1/2 - delta``."""
    n = _require_block_length(n)
    delta = _require_delta(delta)
    return math.exp(-(delta**2) * n / (128.0 * (2.0 + math.log2(2.0 / delta)) ** 2))


def legacy_min_n(delta: float, epsilon: float) -> int:
    """Least block length for which the legacy error is at most ``epsilon``."""
    delta = _require_delta(delta)
    epsilon = _require_epsilon(epsilon)
    n = math.ceil(128.0 * (2.0 + math.log2(2.0 / delta)) ** 2 * math.log(1.0 / epsilon) / delta**2)
    n = max(n, 1)
    # Guard against float edges of the ceiling: enforce minimality exactly.
    while legacy_epsilon(n, delta) > epsilon:
        n += 1
    while n > 1 and legacy_epsilon(n - 1, delta) <= epsilon:
        n -= 1
    return n


def renyi_to_smooth_min_entropy(h_alpha: float, alpha: float, epsilon: float) -> float:
    """Lower bound on smooth min-entropy from a Renyi entropy of order alpha.

    Returns ``h_alpha - log2(2/eps^2) / (alpha - 1)``; may be negative.
    """
    alpha = float(alpha)
    if not 1.0 < alpha <= 2.0:
        raise ValueError(f"Renyi order alpha must lie in (1, 2], got {alpha!r}")
    epsilon = float(epsilon)
    if not 0.0 < epsilon <= 1.0:
        raise ValueError(f"smoothing error epsilon must lie in (0, 1], got {epsilon!r}")
    return float(h_alpha) - math.log2(2.0 / epsilon**2) / (alpha - 1.0)


def plain_minentropy_rate_bb84() -> float:
    """Non-smooth min-entropy rate per qubit for two-basis measurements.

    The constant ``-log2(1/2 + 1/(2 sqrt 2))``, about 0.2284; it is attained,
    so no smoothing-free improvement is possible.
    """
    return -math.log2(0.5 + 0.5 / math.sqrt(2.0))


def min_n_for_rate(
    target_rate: float,
    epsilon: float,
    family: MeasurementFamily = MeasurementFamily.BB84,
    method: str = "new",
) -> int:
    """Least block length whose certified rate reaches ``target_rate``.

    ``method="new"`` inverts the maximised Renyi-route bound by monotone
    binary search with a geometrically grown bracket; ``method="legacy"``
    (two-basis only) uses the closed-form inversion at ``delta = 1/2 - rate``.
    Raises :class:`InfeasibleRateError` when the target is at or above the
    reachable ceiling.
    """
    target_rate = float(target_rate)
    epsilon = _require_epsilon(epsilon)
    if method == "legacy":
        if family is not MeasurementFamily.BB84:
            raise ValueError("the legacy bound is only available for the bb84 family")
        if target_rate <= 0.0:
            raise ValueError(f"target rate must be positive, got {target_rate!r}")
        if target_rate >= 0.5:
            raise InfeasibleRateError(
                f"target rate {target_rate!r} is not below the legacy ceiling 0.5"
            )
        return legacy_min_n(0.5 - target_rate, epsilon)
    if method != "new":
        raise ValueError(f"method must be 'new' or 'legacy', got {method!r}")
    ceiling = family.rate_ceiling
    if target_rate <= 0.0:
        raise ValueError(f"target rate must be positive, got {target_rate!r}")
    if target_rate >= ceiling:
        raise InfeasibleRateError(
            f"target rate {target_rate!r} is not below the asymptotic ceiling {ceiling!r}"
        )

    def rate_at(n: int) -> float:
        return _rate(n, epsilon, None, family).rate

    if rate_at(1) >= target_rate:
        return 1
    lo, hi = 1, 2
    while rate_at(hi) < target_rate:
        lo, hi = hi, hi * 2
        if hi > 2**62:
            raise InfeasibleRateError(
                f"no block length up to 2^62 certifies rate {target_rate!r}"
            )
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if rate_at(mid) >= target_rate:
            hi = mid
        else:
            lo = mid
    return hi
