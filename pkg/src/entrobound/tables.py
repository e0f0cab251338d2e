"""Classical conditional probability tables over (side-information, basis) contexts.

A table holds one row of outcome probabilities per context, where a context
is a pair of a preparation label ``k`` and a basis-string label ``theta``.
The context weight is the joint probability of that pair, so the weights sum
to one across the whole table and each outcome row sums to one on its own.

The on-disk format consumed by the command line interface is a JSON document

    {"contexts": [{"k": str, "theta": str, "weight": num, "p_x": [num, ...]}, ...]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

# Probabilities below this are treated as exact zeros: measurement simulation
# produces exact zeros up to rounding, and log-of-zero noise must not leak in.
ZERO_PROB = 1e-15

# Normalisation drift up to this is silently corrected by rescaling; larger
# deviations indicate a construction bug and raise.
NORM_TOL = 1e-9

_ENTRY_TOL = 1e-12


@dataclass(frozen=True)
class Context:
    """One (k, theta) conditioning context and its outcome distribution."""

    k: str
    theta: str
    weight: float
    outcome_probs: tuple[float, ...]


def _clean_probs(values: np.ndarray, where: str) -> np.ndarray:
    if np.any(values < -_ENTRY_TOL) or np.any(values > 1.0 + _ENTRY_TOL):
        bad = int(np.argmax((values < -_ENTRY_TOL) | (values > 1.0 + _ENTRY_TOL)))
        raise ValueError(f"{where}[{bad}] = {values[bad]!r} is not a probability")
    cleaned = values.copy()
    cleaned[cleaned < ZERO_PROB] = 0.0
    cleaned[cleaned > 1.0] = 1.0
    total = float(cleaned.sum())
    if abs(total - 1.0) > NORM_TOL:
        raise ValueError(f"{where} sums to {total!r}, expected 1 within {NORM_TOL}")
    return cleaned / total


class ConditionalTable:
    """Validated, immutable collection of outcome distributions per context.

    All contexts must share one outcome alphabet size. Weights and rows are
    renormalised when they drift from 1 by no more than ``NORM_TOL`` and
    rejected beyond that.
    """

    def __init__(self, contexts: Iterable[Context]):
        ctx = list(contexts)
        if not ctx:
            raise ValueError("conditional table must contain at least one context")
        sizes = {len(c.outcome_probs) for c in ctx}
        if len(sizes) != 1:
            raise ValueError(f"contexts disagree on outcome alphabet size: {sorted(sizes)}")
        (self._num_outcomes,) = sizes
        if self._num_outcomes == 0:
            raise ValueError("contexts must have a nonempty outcome alphabet")

        weights = np.array([c.weight for c in ctx], dtype=float)
        if np.any(weights < -_ENTRY_TOL):
            bad = int(np.argmax(weights < -_ENTRY_TOL))
            raise ValueError(f"contexts[{bad}].weight = {weights[bad]!r} is negative")
        weights[weights < ZERO_PROB] = 0.0
        total = float(weights.sum())
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"context weights sum to {total!r}, expected 1 within {NORM_TOL}")
        weights /= total

        probs = np.empty((len(ctx), self._num_outcomes), dtype=float)
        for i, c in enumerate(ctx):
            probs[i] = _clean_probs(np.asarray(c.outcome_probs, dtype=float), f"contexts[{i}].p_x")

        weights.setflags(write=False)
        probs.setflags(write=False)
        self._weights = weights
        self._probs = probs
        self._contexts = tuple(
            Context(c.k, c.theta, float(weights[i]), tuple(float(p) for p in probs[i]))
            for i, c in enumerate(ctx)
        )

    @property
    def contexts(self) -> tuple[Context, ...]:
        return self._contexts

    @property
    def num_outcomes(self) -> int:
        return self._num_outcomes

    @property
    def weight_vector(self) -> np.ndarray:
        """Read-only context weights, aligned with ``contexts``."""
        return self._weights

    @property
    def prob_matrix(self) -> np.ndarray:
        """Read-only (contexts x outcomes) probability matrix."""
        return self._probs

    def __len__(self) -> int:
        return len(self._contexts)

    def subtables_by_k(self) -> dict[str, "ConditionalTable"]:
        """Split into per-k tables, renormalising weights within each group."""
        groups: dict[str, list[Context]] = {}
        for c in self._contexts:
            groups.setdefault(c.k, []).append(c)
        out = {}
        for k, members in groups.items():
            total = sum(c.weight for c in members)
            if total <= 0.0:
                continue
            out[k] = ConditionalTable(
                Context(c.k, c.theta, c.weight / total, c.outcome_probs) for c in members
            )
        return out

    def to_json_dict(self) -> dict:
        return {
            "contexts": [
                {"k": c.k, "theta": c.theta, "weight": c.weight, "p_x": list(c.outcome_probs)}
                for c in self._contexts
            ]
        }


def table_from_json_dict(doc: object) -> ConditionalTable:
    """Build a table from a parsed JSON document, naming any offending field."""
    if not isinstance(doc, dict):
        raise ValueError("table document must be a JSON object")
    if "contexts" not in doc:
        raise ValueError('table document is missing the "contexts" field')
    raw = doc["contexts"]
    if not isinstance(raw, list):
        raise ValueError('"contexts" must be a JSON array')
    contexts = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise ValueError(f"contexts[{i}] must be a JSON object")
        for field in ("k", "theta", "weight", "p_x"):
            if field not in entry:
                raise ValueError(f"contexts[{i}] is missing the {field!r} field")
        if not isinstance(entry["k"], str):
            raise ValueError(f"contexts[{i}].k must be a string")
        if not isinstance(entry["theta"], str):
            raise ValueError(f"contexts[{i}].theta must be a string")
        if not isinstance(entry["weight"], (int, float)) or isinstance(entry["weight"], bool):
            raise ValueError(f"contexts[{i}].weight must be a number")
        p_x = entry["p_x"]
        if not isinstance(p_x, list) or not all(
            isinstance(p, (int, float)) and not isinstance(p, bool) for p in p_x
        ):
            raise ValueError(f"contexts[{i}].p_x must be an array of numbers")
        contexts.append(
            Context(entry["k"], entry["theta"], float(entry["weight"]), tuple(map(float, p_x)))
        )
    return ConditionalTable(contexts)


def load_table(path: str) -> ConditionalTable:
    """Load a table from a JSON file, with diagnostics naming bad fields."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"table file {path!r} is not valid JSON: {exc}") from exc
    return table_from_json_dict(doc)


def uniform_table(num_bases: int, num_outcomes: int, k: str = "0") -> ConditionalTable:
    """Table with uniform outcomes in every one of ``num_bases`` contexts."""
    row = tuple(1.0 / num_outcomes for _ in range(num_outcomes))
    return ConditionalTable(
        Context(k, str(theta), 1.0 / num_bases, row) for theta in range(num_bases)
    )
