"""Shared test utilities: table generators and independent oracles.

The oracles here deliberately avoid the code paths they are used to check:
the dense rate scan never calls the golden-section optimiser, and the nested
power sum goes through conditional states instead of the full outcome table.
"""

import itertools

import numpy as np

from entrobound import (
    ConditionalTable,
    Context,
    MeasurementFamily,
    measurement_operator,
    post_measurement_state,
)


def eigenstate_table() -> ConditionalTable:
    """Outcome table of a computational-basis eigenstate under two bases."""
    return ConditionalTable(
        [
            Context("k", "0", 0.5, (1.0, 0.0)),
            Context("k", "1", 0.5, (0.5, 0.5)),
        ]
    )


def deterministic_table(num_bases: int = 2) -> ConditionalTable:
    return ConditionalTable(
        Context("k", str(t), 1.0 / num_bases, (1.0, 0.0)) for t in range(num_bases)
    )


def random_table(rng: np.random.Generator, max_contexts: int = 6, max_outcomes: int = 5) -> ConditionalTable:
    """Random valid table with a shared outcome alphabet."""
    num_contexts = int(rng.integers(1, max_contexts + 1))
    num_outcomes = int(rng.integers(2, max_outcomes + 1))
    weights = rng.random(num_contexts) + 1e-3
    weights /= weights.sum()
    contexts = []
    for i in range(num_contexts):
        row = rng.random(num_outcomes) + 1e-4
        row /= row.sum()
        contexts.append(Context(f"k{i % 2}", str(i), float(weights[i]), tuple(row)))
    return ConditionalTable(contexts)


def rate_scan(n: int, epsilon: float, family: MeasurementFamily, step: float = 1e-5) -> float:
    """Dense-scan maximisation of the certified rate over s, no refinement."""
    s = np.arange(step, 1.0 + step / 2, step)
    eps_term = np.log2(2.0 / epsilon**2)
    if family is MeasurementFamily.BB84:
        floors = (1.0 + s - np.log2(1.0 + 2.0**s)) / s
    else:
        floors = -np.log2((1.0 + 2.0 ** (1.0 - s)) / 3.0) / s
    return float(np.max(floors - eps_term / (s * n)))


def nested_power_sum(rho, family: MeasurementFamily, alpha: float) -> float:
    """Two-qubit power sum computed through conditional single-qubit states.

    Chains the measured-first-qubit marginal with the power sum of the
    post-measurement state of the second qubit, instead of enumerating the
    full two-qubit outcome table.
    """
    bases = family.bases_per_qubit
    eye2 = np.eye(2, dtype=complex)
    total = 0.0
    for theta_a, x_a in itertools.product(range(bases), range(2)):
        proj = np.kron(measurement_operator(family, (theta_a,), (x_a,)), eye2)
        p_a = float((proj @ rho.matrix).trace().real)
        if p_a <= 1e-14:
            continue
        sigma_b = post_measurement_state(rho, family, (theta_a,), (x_a,))
        inner = 0.0
        for theta_b, x_b in itertools.product(range(bases), range(2)):
            proj_b = measurement_operator(family, (theta_b,), (x_b,))
            p_b = float((proj_b @ sigma_b.matrix).trace().real)
            inner += max(p_b, 0.0) ** alpha
        total += p_a**alpha * inner / bases
    return total / bases
