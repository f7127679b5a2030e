"""Exact, heuristic, and brute-force placement solvers.

The exact solver is a combinatorial branch-and-bound over the quadratic
objective: components are assigned in decreasing resource-demand order and a
branch is cut when (cost so far) + (sum of cheapest remaining device costs)
reaches the incumbent; the network term of unassigned components is bounded
below by zero.  Ties break toward the smallest node id through the visit
order.

The heuristic replaces the pairwise network term with each node's mean
incident link energy, which makes the objective separable per component; the
resulting generalized assignment problem is solved exactly by the same
branch-and-bound machinery, and the returned energies are re-computed with
the true quadratic objective.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import replace

import numpy as np

from .model import AppGraph, Assignment, Infeasible, NetGraph, TimeBudgetExceeded, TooLarge, evaluate_assignment

BRUTE_FORCE_LIMIT = 10**7


def _feasibility_precheck(app: AppGraph, net: NetGraph) -> None:
    total_demand = sum(c.resources for c in app.components)
    total_supply = sum(n.resources for n in net.nodes)
    if total_demand > total_supply:
        raise Infeasible(
            f"total component demand {total_demand} exceeds total node resources {total_supply}"
        )


def _device_cost(comp, node) -> float:
    return node.compute_energy * (comp.compute / node.speed)


def brute_force_optimal(app: AppGraph, net: NetGraph) -> Assignment:
    """Exhaustive enumeration oracle; exact minimum E_t among feasible maps."""
    _feasibility_precheck(app, net)
    comp_ids = [c.id for c in app.components]
    node_ids = [n.id for n in net.nodes]
    if len(node_ids) ** len(comp_ids) > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"{len(node_ids)}^{len(comp_ids)} assignments exceed the enumeration limit")
    best = None
    for combo in itertools.product(node_ids, repeat=len(comp_ids)):
        mapping = dict(zip(comp_ids, combo))
        a = evaluate_assignment(app, net, mapping)
        if a.feasible and (best is None or a.total_energy < best.total_energy):
            best = a
    if best is None:
        raise Infeasible("no feasible assignment exists")
    return replace(best, status="optimal")


class _BranchAndBound:
    """Depth-first B&B over component-to-node maps with pluggable edge costs."""

    def __init__(self, app: AppGraph, net: NetGraph, deadline: float | None):
        self.app = app
        self.net = net
        self.deadline = deadline
        # decreasing demand first; id tie-break keeps the search deterministic
        self.comps = sorted(app.components, key=lambda c: (-c.resources, c.id))
        self.nodes = sorted(net.nodes, key=lambda n: n.id)
        self.best_cost = math.inf
        self.best_map: dict[int, int] | None = None
        self.timed_out = False
        # predecessors/successors among already-assigned components
        idx = {c.id: i for i, c in enumerate(self.comps)}
        self.adj: list[list[tuple[int, float]]] = [[] for _ in self.comps]
        for t1, t2 in app.edges:
            o = app.component(t1).output
            i1, i2 = idx[t1], idx[t2]
            # store the edge on the later-assigned endpoint
            if i1 < i2:
                self.adj[i2].append((i1, o))
            else:
                self.adj[i1].append((i2, o))
        self.min_device = [min(_device_cost(c, n) for n in self.nodes) for c in self.comps]
        self.tail_bound = [0.0] * (len(self.comps) + 1)
        for i in range(len(self.comps) - 1, -1, -1):
            self.tail_bound[i] = self.tail_bound[i + 1] + self.min_device[i]

    def edge_cost(self, output: float, n1: int, n2: int) -> float:
        return output * self.net.D(n1, n2)

    def step_cost(self, i: int, comp, node, chosen: list[int]) -> float:
        cost = _device_cost(comp, node)
        for j, output in self.adj[i]:
            cost += self.edge_cost(output, chosen[j], node.id)
        return cost

    def _greedy_incumbent(self) -> None:
        """Cheapest-feasible-node greedy, used only to seed the pruning bound."""
        free = {n.id: n.resources for n in self.nodes}
        chosen: list[int] = []
        cost = 0.0
        for i, comp in enumerate(self.comps):
            options = [n for n in self.nodes if free[n.id] >= comp.resources]
            if not options:
                return
            node = min(options, key=lambda n: (self.step_cost(i, comp, n, chosen), n.id))
            cost += self.step_cost(i, comp, node, chosen)
            free[node.id] -= comp.resources
            chosen.append(node.id)
        self.best_cost = cost
        self.best_map = {c.id: n for c, n in zip(self.comps, chosen)}

    def solve(self) -> tuple[dict[int, int], bool]:
        self._greedy_incumbent()
        free = {n.id: n.resources for n in self.nodes}
        self._dfs(0, 0.0, [], free)
        if self.best_map is None and not self.timed_out:
            raise Infeasible("no feasible assignment exists")
        return self.best_map, self.timed_out

    def _dfs(self, i: int, cost: float, chosen: list[int], free: dict[int, float]):
        if self.timed_out:
            return
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.timed_out = True
            return
        if i == len(self.comps):
            if cost < self.best_cost:
                self.best_cost = cost
                self.best_map = {c.id: n for c, n in zip(self.comps, chosen)}
            return
        comp = self.comps[i]
        for node in self.nodes:
            if free[node.id] < comp.resources:
                continue
            c = cost + self.step_cost(i, comp, node, chosen)
            if c + self.tail_bound[i + 1] >= self.best_cost:
                continue
            free[node.id] -= comp.resources
            chosen.append(node.id)
            self._dfs(i + 1, c, chosen, free)
            chosen.pop()
            free[node.id] += comp.resources


class _SeparableBnB(_BranchAndBound):
    """Same search over the per-node separable (heuristic) objective."""

    def __init__(self, app, net, deadline, unit_cost):
        self.unit_cost = unit_cost  # (comp, node) -> cost
        super().__init__(app, net, deadline)
        self.min_device = [min(unit_cost(c, n) for n in self.nodes) for c in self.comps]
        self.tail_bound = [0.0] * (len(self.comps) + 1)
        for i in range(len(self.comps) - 1, -1, -1):
            self.tail_bound[i] = self.tail_bound[i + 1] + self.min_device[i]

    def step_cost(self, i, comp, node, chosen):
        return self.unit_cost(comp, node)


def solve_optimal(app: AppGraph, net: NetGraph, time_budget: float | None = None) -> Assignment:
    """Minimum-E_t assignment via branch-and-bound.

    With a `time_budget` (seconds) the incumbent is returned when time runs
    out, with `status` = "time_budget_exceeded" and `gap` = incumbent cost
    minus the weak lower bound; raises TimeBudgetExceeded if no incumbent
    exists yet.
    """
    _feasibility_precheck(app, net)
    deadline = None if time_budget is None else time.monotonic() + time_budget
    bnb = _BranchAndBound(app, net, deadline)
    mapping, timed_out = bnb.solve()
    if timed_out and mapping is None:
        raise TimeBudgetExceeded("time budget exhausted before any feasible incumbent")
    status = "time_budget_exceeded" if timed_out else "optimal"
    gap = max(0.0, bnb.best_cost - bnb.tail_bound[0]) if timed_out else 0.0
    return evaluate_assignment(app, net, mapping, status=status, gap=gap)


def solve_heuristic(app: AppGraph, net: NetGraph) -> Assignment:
    """Linear heuristic: per-node mean link energy replaces the pairwise term."""
    _feasibility_precheck(app, net)
    t_hat = {n.id: net.mean_link_energy(n.id) for n in net.nodes}

    def unit_cost(comp, node):
        return _device_cost(comp, node) + comp.output * t_hat[node.id]

    bnb = _SeparableBnB(app, net, None, unit_cost)
    mapping, _ = bnb.solve()
    return evaluate_assignment(app, net, mapping, status="heuristic")
