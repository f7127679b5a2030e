"""Alternating head/tail ADMM variants with per-message energy accounting.

Supported variants:

  ps-admm    parameter-server consensus ADMM baseline (star topology; all N
             workers transmit a full-precision model each iteration, server
             broadcast is free)
  gadmm      chain topology, alternating head/tail updates
  d-gadmm    gadmm with periodic re-chaining every tau_coh iterations
  ggadmm     bipartite (or chain) topology, same schedule
  c-ggadmm   ggadmm with censored transmissions
  cq-ggadmm  ggadmm with censoring applied to the quantized model update

Workers exchange *transmitted* models: when a transmission is censored, the
receivers keep using the last value that actually went over the air, and the
dual updates are computed from transmitted values on both endpoints so the
two mirrored copies of each dual stay bit-identical.

Bandwidth is split among the workers scheduled to transmit in the same phase
(N for the parameter server, the head or tail group size otherwise), which is
what makes the sparse schedules cheaper per message.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..core import Seed, child_rng
from .compression import CensorSchedule, QuantizerConfig, censor_decision, dequantize, quantize
from .energy import CommEnergyModel, message_energy
from .problems import LocalProblem, centralized_solution, total_objective
from .topology import Topology, rechain

VARIANTS = ("ps-admm", "gadmm", "d-gadmm", "ggadmm", "c-ggadmm", "cq-ggadmm")

FULL_PRECISION_BITS = 32  # bits per coordinate without quantization


class ConfigMismatch(ValueError):
    pass


@dataclass
class WorkerState:
    id: int
    theta: np.ndarray
    theta_hat: np.ndarray  # last transmitted model
    role: str  # "head" | "tail"
    neighbor_ids: tuple[int, ...]


@dataclass(frozen=True)
class LearningRunConfig:
    variant: str
    rho: float = 1.0
    iters: int = 1000
    quantizer: QuantizerConfig | None = None
    censor: CensorSchedule | None = None
    energy_model: CommEnergyModel = field(default_factory=CommEnergyModel)
    seed: int = 0


@dataclass
class TrainingTrace:
    """Per-iteration record of the run (cumulative bits/Joules/censored)."""

    objective: list[float] = field(default_factory=list)
    objective_error: list[float] = field(default_factory=list)
    bits_cum: list[float] = field(default_factory=list)
    joules_cum: list[float] = field(default_factory=list)
    censored_cum: list[int] = field(default_factory=list)
    residual: list[float] = field(default_factory=list)

    def append(self, objective, error, bits, joules, censored, residual):
        self.objective.append(float(objective))
        self.objective_error.append(float(error))
        self.bits_cum.append(float(bits))
        self.joules_cum.append(float(joules))
        self.censored_cum.append(int(censored))
        self.residual.append(float(residual))

    def __len__(self) -> int:
        return len(self.objective)

    def iterations_to(self, error_target: float) -> int | None:
        for k, e in enumerate(self.objective_error):
            if e < error_target:
                return k + 1
        return None

    def joules_to(self, error_target: float) -> float | None:
        k = self.iterations_to(error_target)
        return None if k is None else self.joules_cum[k - 1]


def primal_update(
    problem: LocalProblem | None,
    neighbor_models: list[np.ndarray],
    duals: list[np.ndarray],
    signs: list[int],
    rho: float,
    dim: int | None = None,
) -> np.ndarray:
    """Closed-form block update.

    Minimizes f(theta) + sum_j s_j lambda_j . theta + (rho/2) sum_j
    ||theta - theta_j||^2 by a direct linear solve (f is quadratic); sign s_j
    is +1 when this worker is the left endpoint of constraint edge j.
    """
    if rho <= 0:
        raise ValueError("rho must be > 0")
    if dim is None:
        dim = problem.dim if problem is not None else len(neighbor_models[0])
    H = np.zeros((dim, dim))
    g = np.zeros(dim)
    if problem is not None:
        H, g = problem.gram()
    lhs = 2.0 * H + rho * len(neighbor_models) * np.eye(dim)
    rhs = 2.0 * g
    for lam, s in zip(duals, signs, strict=True):
        rhs -= s * lam
    for m in neighbor_models:
        rhs += rho * m
    return np.linalg.solve(lhs, rhs)


def dual_update(lam: np.ndarray, theta_left: np.ndarray, theta_right: np.ndarray, rho: float) -> np.ndarray:
    if rho <= 0:
        raise ValueError("rho must be > 0")
    return lam + rho * (np.asarray(theta_left) - np.asarray(theta_right))


def _check_variant(variant, topology, quantizer, censor):
    if variant not in VARIANTS:
        raise ConfigMismatch(f"unknown variant {variant!r}")
    if variant == "ps-admm":
        return
    if topology is None:
        raise ConfigMismatch(f"{variant} requires a topology")
    if variant in ("gadmm", "d-gadmm") and topology.kind != "chain":
        raise ConfigMismatch(f"{variant} requires a chain topology")
    if variant == "d-gadmm" and math.isinf(topology.tau_coh):
        raise ConfigMismatch("d-gadmm requires a finite tau_coh")
    if quantizer is not None and variant != "cq-ggadmm":
        raise ConfigMismatch("quantizer is only valid for cq-ggadmm")
    if censor is not None and variant not in ("c-ggadmm", "cq-ggadmm"):
        raise ConfigMismatch("censoring is only valid for c-/cq-ggadmm")
    if variant == "cq-ggadmm" and quantizer is None:
        raise ConfigMismatch("cq-ggadmm requires a quantizer")


def run(
    variant: str,
    problems: list[LocalProblem],
    topology: Topology | None,
    rho: float = 1.0,
    quantizer: QuantizerConfig | None = None,
    censor: CensorSchedule | None = None,
    energy_model: CommEnergyModel | None = None,
    iters: int = 1000,
    seed: Seed | int = 0,
    gains: np.ndarray | None = None,
    optimum: np.ndarray | None = None,
    stop_error: float | None = None,
) -> TrainingTrace:
    """Run one variant and return its per-iteration trace.

    `optimum` overrides the centralized oracle used for the objective-error
    column (it is recomputed via direct solve when omitted).  `stop_error`
    ends the run early once the objective error drops below it.
    """
    _check_variant(variant, topology, quantizer, censor)
    if energy_model is None:
        energy_model = CommEnergyModel()
    N = len(problems)
    d = problems[0].dim
    if gains is None:
        gains = np.ones(N)
    if optimum is None:
        optimum = centralized_solution(problems)
    f_star = total_objective(problems, [optimum] * N)

    if variant == "ps-admm":
        return _run_ps(problems, rho, energy_model, iters, gains, f_star, stop_error)
    return _run_decentralized(
        variant, problems, topology, rho, quantizer, censor, energy_model, iters, seed, gains, f_star, stop_error
    )


def _run_ps(problems, rho, energy_model, iters, gains, f_star, stop_error=None):
    N = len(problems)
    d = problems[0].dim
    thetas = [np.zeros(d) for _ in range(N)]
    lams = [np.zeros(d) for _ in range(N)]
    z = np.zeros(d)
    trace = TrainingTrace()
    shared = energy_model.share(N)
    bits = joules = 0.0
    payload = FULL_PRECISION_BITS * d
    grams = [p.gram() for p in problems]
    invs = [np.linalg.inv(2.0 * H + rho * np.eye(d)) for H, _ in grams]
    energy_per_iter = sum(message_energy(payload, shared, gains[n]) for n in range(N))
    for _ in range(iters):
        for n, (_, g) in enumerate(grams):
            thetas[n] = invs[n] @ (2.0 * g - lams[n] + rho * z)
        z = np.mean([t + l / rho for t, l in zip(thetas, lams)], axis=0)
        for n in range(N):
            lams[n] = dual_update(lams[n], thetas[n], z, rho)
        bits += N * payload
        joules += energy_per_iter
        obj = total_objective(problems, thetas)
        residual = sum(float(np.linalg.norm(t - z)) for t in thetas)
        trace.append(obj, abs(obj - f_star), bits, joules, 0, residual)
        if stop_error is not None and trace.objective_error[-1] < stop_error:
            break
    return trace


def _run_decentralized(
    variant, problems, topology, rho, quantizer, censor, energy_model, iters, seed, gains, f_star,
    stop_error=None,
):
    N = len(problems)
    d = problems[0].dim
    theta = {n: np.zeros(d) for n in range(1, N + 1)}
    theta_hat = {n: np.zeros(d) for n in range(1, N + 1)}
    # Duals: chains key them by the left-endpoint worker (each worker owns the
    # dual of its right constraint and hands it to its new right neighbor on
    # re-chaining); bipartite graphs key them by (head, tail) edge.
    if topology.kind == "chain":
        duals = {("left", w): np.zeros(d) for w in range(1, N + 1)}
    else:
        duals = {e: np.zeros(d) for e in topology.edges}
    q_rng = child_rng(seed, 1)

    trace = TrainingTrace()
    bits = joules = 0.0
    censored = 0
    payload_full = FULL_PRECISION_BITS * d

    grams = [p.gram() for p in problems]
    solver_cache: dict[tuple[int, int], np.ndarray] = {}

    def solver(n: int, n_neighbors: int) -> np.ndarray:
        key = (n, n_neighbors)
        if key not in solver_cache:
            H, _ = grams[n - 1]
            solver_cache[key] = np.linalg.inv(2.0 * H + rho * n_neighbors * np.eye(d))
        return solver_cache[key]

    def edge_key(idx, edge):
        return ("left", edge[0]) if topology.kind == "chain" else edge

    edges: list = []
    incident: dict[int, list] = {}

    def rebuild_incidence():
        nonlocal edges, incident
        edges = list(topology.edges)
        incident = {n: [] for n in range(1, N + 1)}
        for i, (u, v) in enumerate(edges):
            incident[u].append((i, (u, v), +1, v))
            incident[v].append((i, (u, v), -1, u))

    rebuild_incidence()

    for k in range(iters):
        if variant == "d-gadmm" and k > 0 and k % topology.tau_coh == 0:
            topology = rechain(topology, k, seed)
            rebuild_incidence()
            # Re-initialize duals as prefix sums of current local gradients
            # along the new chain.  At the consensus optimum this reproduces
            # the exact optimal duals of the new ordering, so re-chaining
            # introduces no transient once the run is near convergence.
            acc = np.zeros(d)
            for i in range(N - 1):
                w = topology.order[i]
                H, g = grams[w - 1]
                acc = acc - 2.0 * (H @ theta[w] - g)
                duals[("left", w)] = acc.copy()

        def update_group(group):
            nonlocal bits, joules, censored
            competitors = len(group)
            shared = energy_model.share(competitors)
            new_models = {}
            for n in sorted(group):
                inc = incident[n]
                _, g = grams[n - 1]
                rhs = 2.0 * g
                for i, e, s, other in inc:
                    rhs = rhs - s * duals[edge_key(i, e)] + rho * theta_hat[other]
                new_models[n] = solver(n, len(inc)) @ rhs
            # transmissions happen after the whole group updated (parallel phase)
            for n in sorted(group):
                theta[n] = new_models[n]
                if variant == "cq-ggadmm":
                    msg = quantize(theta[n] - theta_hat[n], quantizer, q_rng)
                    candidate = theta_hat[n] + dequantize(msg)
                    payload = msg.payload_bits
                else:
                    candidate = theta[n]
                    payload = payload_full
                if censor is not None:
                    transmit = censor_decision(candidate, theta_hat[n], censor.threshold(k))
                else:
                    transmit = not np.array_equal(candidate, theta_hat[n]) or k == 0
                if transmit:
                    theta_hat[n] = candidate
                    bits += payload
                    joules += message_energy(payload, shared, gains[n - 1])
                else:
                    censored += 1

        update_group(topology.heads)
        update_group(topology.tails)

        for i, (u, v) in enumerate(edges):
            key = edge_key(i, (u, v))
            duals[key] = dual_update(duals[key], theta_hat[u], theta_hat[v], rho)

        obj = total_objective(problems, [theta[n] for n in range(1, N + 1)])
        residual = sum(float(np.linalg.norm(theta[u] - theta[v])) for u, v in edges)
        trace.append(obj, abs(obj - f_star), bits, joules, censored, residual)
        if stop_error is not None and trace.objective_error[-1] < stop_error:
            break
    return trace
