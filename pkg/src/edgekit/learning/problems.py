"""Local quadratic objectives and the centralized consensus oracle.

Each worker n holds f_n(theta) = ||A_n theta - b_n||^2 + mu ||theta||^2.
A scalar quadratic (theta - a)^2 is the special case A = [[1]], b = [a].
Restricting to quadratics keeps every primal update an exact linear solve.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


class SingularSystem(RuntimeError):
    pass


@dataclass(frozen=True)
class LocalProblem:
    """One worker's least-squares objective."""

    A: np.ndarray  # (samples, d)
    b: np.ndarray  # (samples,)
    reg: float = 0.0

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if A.shape[0] != b.shape[0]:
            raise ValueError("A and b row counts differ")
        if A.shape[0] < 1:
            raise ValueError("need at least one sample per worker")
        if self.reg < 0:
            raise ValueError("regularization weight must be >= 0")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def dim(self) -> int:
        return self.A.shape[1]

    @classmethod
    def scalar_quadratic(cls, a: float, reg: float = 0.0) -> "LocalProblem":
        """f(theta) = (theta - a)^2."""
        return cls(A=np.array([[1.0]]), b=np.array([float(a)]), reg=reg)

    def value(self, theta: np.ndarray) -> float:
        r = self.A @ theta - self.b
        return float(r @ r + self.reg * (theta @ theta))

    @cached_property
    def _gram(self) -> tuple[np.ndarray, np.ndarray]:
        H = self.A.T @ self.A + self.reg * np.eye(self.dim)
        g = self.A.T @ self.b
        return H, g

    def gram(self) -> tuple[np.ndarray, np.ndarray]:
        """(H, g) with grad f = 2 H theta - 2 g; H = A^T A + reg I, g = A^T b."""
        return self._gram


def total_objective(problems: list[LocalProblem], thetas: list[np.ndarray]) -> float:
    return sum(p.value(t) for p, t in zip(problems, thetas, strict=True))


def centralized_solution(problems: list[LocalProblem]) -> np.ndarray:
    """Exact minimizer of sum_n f_n(theta) over a single shared theta."""
    d = problems[0].dim
    if any(p.dim != d for p in problems):
        raise ValueError("all workers must share one model dimension")
    H = np.zeros((d, d))
    g = np.zeros(d)
    for p in problems:
        Hn, gn = p.gram()
        H += Hn
        g += gn
    if np.linalg.matrix_rank(H) < d:
        raise SingularSystem("aggregate least-squares system is rank-deficient")
    return np.linalg.solve(H, g)
