"""Feasible flows in strongly connected networks by in-tree/out-tree routing."""

from .errors import (
    CapacityTooSmall,
    Disagreement,
    DuplicateImport,
    FeasFlowError,
    ImportImbalance,
    LengthMismatch,
    NegativeDemandAtProcessing,
    NetworkSyntaxError,
    NotStronglyConnected,
    ParseError,
    RangeError,
    SpecInvalid,
)
from .formats import format_network, parse_flow, parse_network, serialize_flow
from .generate import GenSpec, generate, tight_fixtures
from .network import Flow, Network, is_strongly_connected, reverse, total_supply
from .routing import (
    DemandSums,
    RootedTree,
    RoutingTrace,
    build_trees,
    compute_demand_sums,
    feasible_flow,
    feasible_flow_double_cap,
    route_demands_cancel,
    route_demands_original,
    route_original,
    route_supplies_capped,
    route_supplies_original,
)
from .verify import CrossCheck, VerifyReport, cross_check, oracle_feasible, verify_flow

__version__ = "0.1.0"
