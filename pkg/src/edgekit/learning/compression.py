"""Stochastic uniform quantization and censoring of model updates.

A quantized message carries b bits per coordinate plus one 32-bit side value
(the quantization range R), so the payload is b*d + 32 bits versus 32*d for a
full-precision model.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class QuantizerConfig:
    bits: int = 2  # per coordinate

    def __post_init__(self):
        if not 1 <= self.bits <= 32:
            raise ValueError("bits per coordinate must be in 1..32")

    def payload_bits(self, d: int) -> int:
        return self.bits * d + 32


@dataclass(frozen=True)
class QuantizedMessage:
    levels: np.ndarray  # integer level indices, one per coordinate
    radius: float  # R, the 32-bit side value; 0 for the all-zero sentinel
    bits: int

    @property
    def payload_bits(self) -> int:
        return self.bits * len(self.levels) + 32


@dataclass(frozen=True)
class CensorSchedule:
    """Threshold sequence xi_k = xi0 * alpha^k, non-increasing and non-negative."""

    xi0: float = 0.1
    alpha: float = 0.99

    def __post_init__(self):
        if self.xi0 < 0:
            raise ValueError("xi0 must be >= 0")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("alpha must be in (0, 1]")

    def threshold(self, k: int) -> float:
        return self.xi0 * self.alpha**k


def quantize(delta: np.ndarray, config: QuantizerConfig, rng: np.random.Generator) -> QuantizedMessage:
    """Unbiased stochastic quantization of `delta` onto 2^b levels over [-R, R].

    R is the l-inf norm of delta.  Each coordinate is rounded to one of the
    two bracketing levels with probabilities making the rounding unbiased.
    """
    delta = np.asarray(delta, dtype=float)
    R = float(np.max(np.abs(delta))) if delta.size else 0.0
    n_levels = 2**config.bits
    if R == 0.0:
        return QuantizedMessage(levels=np.zeros(delta.shape, dtype=np.int64), radius=0.0, bits=config.bits)
    step = 2.0 * R / (n_levels - 1)
    scaled = (delta + R) / step  # in [0, n_levels - 1]
    lo = np.floor(scaled)
    frac = scaled - lo
    up = rng.random(delta.shape) < frac
    levels = (lo + up).astype(np.int64)
    levels = np.clip(levels, 0, n_levels - 1)
    return QuantizedMessage(levels=levels, radius=R, bits=config.bits)


def dequantize(msg: QuantizedMessage) -> np.ndarray:
    if msg.radius == 0.0:
        return np.zeros(len(msg.levels))
    n_levels = 2**msg.bits
    step = 2.0 * msg.radius / (n_levels - 1)
    return msg.levels * step - msg.radius


def censor_decision(current: np.ndarray, last_sent: np.ndarray, threshold: float) -> bool:
    """True (transmit) iff ||current - last_sent||_2 strictly exceeds threshold."""
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    return bool(np.linalg.norm(np.asarray(current) - np.asarray(last_sent)) > threshold)
