from .model import (
    AppComponent,
    AppGraph,
    Assignment,
    Infeasible,
    NetGraph,
    NetNode,
    TimeBudgetExceeded,
    TooLarge,
    evaluate_assignment,
)
from .generators import InvalidShape, generate_application, generate_network
from .solvers import brute_force_optimal, solve_heuristic, solve_optimal
from .io import instance_from_dict, instance_to_dict, load_instance, save_instance

__all__ = [
    "AppComponent",
    "AppGraph",
    "Assignment",
    "Infeasible",
    "NetGraph",
    "NetNode",
    "TimeBudgetExceeded",
    "TooLarge",
    "evaluate_assignment",
    "InvalidShape",
    "generate_application",
    "generate_network",
    "brute_force_optimal",
    "solve_heuristic",
    "solve_optimal",
    "instance_from_dict",
    "instance_to_dict",
    "load_instance",
    "save_instance",
]
