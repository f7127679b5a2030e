"""Shared scalar unit types, seeded randomness, and a fixed-point iterator.

The random generator is numpy's PCG64 (O'Neill's permuted congruential
generator, 128-bit state).  PCG64 has a published state-transition function
and reference implementations in most languages, so streams are reproducible
bit-for-bit across platforms from the same 64-bit seed.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "Joules",
    "Seconds",
    "Bits",
    "Watts",
    "Probability",
    "Seed",
    "as_vector",
    "make_rng",
    "child_rng",
    "next_uniform",
    "fixed_point",
    "NonConvergence",
]


class _NonNegative(float):
    """Float subclass enforcing value >= 0 at construction."""

    def __new__(cls, value):
        value = float(value)
        if not np.isfinite(value) or value < 0.0:
            raise ValueError(f"{cls.__name__} must be finite and >= 0, got {value}")
        return super().__new__(cls, value)


class Joules(_NonNegative):
    pass


class Seconds(_NonNegative):
    pass


class Bits(_NonNegative):
    pass


class Watts(_NonNegative):
    pass


class Probability(float):
    def __new__(cls, value):
        value = float(value)
        if not (0.0 <= value <= 1.0):
            raise ValueError(f"Probability must be in [0, 1], got {value}")
        return super().__new__(cls, value)


class Seed(int):
    """64-bit unsigned seed; identical seeds give bit-identical streams."""

    def __new__(cls, value):
        value = int(value)
        if not (0 <= value < 2**64):
            raise ValueError(f"Seed must fit in an unsigned 64-bit int, got {value}")
        return super().__new__(cls, value)


def as_vector(x) -> np.ndarray:
    """Validate and return a 1-D float vector with finite entries."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        v = v.reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite (no NaN/Inf)")
    return v


def make_rng(seed: Seed | int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def child_rng(seed: Seed | int, *keys: int) -> np.random.Generator:
    """Derive an independent stream from (seed, keys).

    Used wherever a sub-step (e.g. a re-chaining event at iteration k) must be
    deterministic in the parent seed and the step index alone.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.PCG64(ss))


def next_uniform(rng: np.random.Generator) -> float:
    """One draw in [0, 1); advancing the stream is the only side effect."""
    return float(rng.random())


class NonConvergence(RuntimeError):
    def __init__(self, max_iter: int, last_value: float):
        super().__init__(f"no fixed point after {max_iter} iterations (last x={last_value})")
        self.max_iter = max_iter
        self.last_value = last_value


def fixed_point(f, x0: float, tol: float = 1e-9, max_iter: int = 100_000) -> float:
    """Iterate x <- f(x) until |f(x) - x| <= tol.

    Raises NonConvergence when max_iter is exhausted; the caller decides
    whether that is fatal.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    x = float(x0)
    for _ in range(max_iter):
        fx = float(f(x))
        if abs(fx - x) <= tol:
            return fx
        x = fx
    raise NonConvergence(max_iter, x)
