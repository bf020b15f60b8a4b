import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import as_list, five_vertex_cancel, strongly_connected, three_cycle, two_cycle

from feasflow import (
    CapacityTooSmall,
    DemandSums,
    ImportImbalance,
    NegativeDemandAtProcessing,
    Network,
    NotStronglyConnected,
    RoutingTrace,
    build_trees,
    compute_demand_sums,
    feasible_flow,
    feasible_flow_double_cap,
    kernels,
    oracle_feasible,
    route_demands_cancel,
    route_demands_original,
    route_original,
    route_supplies_capped,
    route_supplies_original,
    total_supply,
    verify_flow,
)
from feasflow.generate import deep_chain, shared_arc_tight
from feasflow.network import MAX_MAGNITUDE


def test_original_supply_pass_three_cycle(backend):
    net = three_cycle()
    T, _ = build_trees(net)
    flow, s = route_supplies_original(net, T)
    assert as_list(flow) == [0, 1, 1]
    assert as_list(s) == [1, 0, 0]


def test_original_supply_pass_two_cycle(backend):
    net = two_cycle()
    T, _ = build_trees(net)
    flow, s = route_supplies_original(net, T)
    assert as_list(flow) == [0, 0]
    assert as_list(s) == [1, 0]


def test_original_demand_pass_three_cycle(backend):
    net = three_cycle()
    _, U = build_trees(net)
    # vertex 3 pulls across (2,3), then vertex 2 passes the same unit up across (1,2)
    assert as_list(route_demands_original(net, U)) == [1, 1, 0]


def test_original_routing_doubles_shared_arc(backend):
    assert as_list(route_original(three_cycle())) == [1, 2, 1]


def test_capped_supply_pass_three_cycle(backend):
    net = three_cycle()
    T, U = build_trees(net)
    sums = compute_demand_sums(net, U)
    assert as_list(sums.values) == [1, 1, 1]
    flow, residual = route_supplies_capped(net, T, sums)
    assert as_list(flow) == [0, 0, 0]
    assert as_list(residual) == [0, 1, 0]
    flow = route_demands_cancel(net, U, residual, flow)
    assert as_list(flow) == [0, 1, 0]


def test_capped_without_demand_below_equals_original(backend):
    net = three_cycle()
    T, _ = build_trees(net)
    zero = DemandSums(np.zeros(3, np.int64))
    capped = route_supplies_capped(net, T, zero)
    original = route_supplies_original(net, T)
    assert as_list(capped[0]) == as_list(original[0])
    assert as_list(capped[1]) == as_list(original[1])


def test_no_supply_means_no_flow(backend):
    net = Network.from_arcs(3, [(1, 2, 0), (2, 3, 0), (3, 1, 0)])
    T, U = build_trees(net)
    flow, s = route_supplies_capped(net, T, compute_demand_sums(net, U))
    assert as_list(flow) == [0, 0, 0] and as_list(s) == [0, 0, 0]
    assert as_list(feasible_flow(net).values) == [0, 0, 0]


def test_feasible_flow_examples(backend):
    assert as_list(feasible_flow(two_cycle()).values) == [1, 0]
    assert as_list(feasible_flow(three_cycle()).values) == [0, 1, 0]
    assert as_list(feasible_flow_double_cap(three_cycle(cap=2)).values) == [1, 2, 1]


def test_cancellation_stays_below_common_ancestor(backend):
    net = five_vertex_cancel()
    trace = RoutingTrace(snapshots=True)
    flow = feasible_flow(net, trace=trace)
    # 3 -> 2 -> 4 -> 5; both arcs at the root stay idle
    assert as_list(flow.values) == [0, 0, 1, 1, 1, 0, 0, 0]
    assert as_list(trace.supply_increase) == [0, 0, 0, 0, 1, 0, 0, 0]
    assert as_list(trace.demand_increase) == [0, 0, 1, 1, 0, 0, 0, 0]
    assert verify_flow(net, flow).feasible
    assert oracle_feasible(net)[0]


def test_trace_history_three_cycle():
    trace = RoutingTrace(snapshots=True)
    feasible_flow(three_cycle(), trace=trace)
    assert trace.total_supply == 1
    # vertex 2 (index 1) keeps its unit because D(2) = B
    assert trace.supply_history == [(1, 1, 0, 1), (2, 0, 0, 0)]
    assert trace.demand_history == [(2, 1), (1, 0)]
    assert as_list(trace.residual_snapshots[0]) == [1, 1, 0]


def test_large_magnitudes(backend):
    B = MAX_MAGNITUDE
    net = three_cycle(cap=B)
    net = Network(3, net.tail, net.head, net.cap, [0, B, -B])
    assert as_list(feasible_flow(net).values) == [0, B, 0]


def test_precondition_errors(backend):
    with pytest.raises(CapacityTooSmall) as info:
        feasible_flow(three_cycle(cap=0))
    assert (info.value.arc, info.value.capacity, info.value.required) == (0, 0, 1)
    with pytest.raises(CapacityTooSmall) as info:
        feasible_flow_double_cap(three_cycle(cap=1))
    assert info.value.required == 2
    with pytest.raises(ImportImbalance):
        feasible_flow(Network.from_arcs(2, [(1, 2, 5), (2, 1, 5)], {1: 1}))
    with pytest.raises(NotStronglyConnected):
        feasible_flow(Network.from_arcs(2, [(1, 2, 1)], {1: 1, 2: -1}))


def test_negative_net_demand_is_detected(backend):
    net = three_cycle()
    _, U = build_trees(net)
    for trace in (None, RoutingTrace()):
        with pytest.raises(NegativeDemandAtProcessing) as info:
            route_demands_cancel(net, U, [0, 0, 2], np.zeros(3, np.int64), trace=trace)
        assert info.value.vertex == 2


def run_traced(net, root=0):
    trace = RoutingTrace(snapshots=True)
    flow = feasible_flow(net, root, trace=trace)
    return flow, trace


@given(strongly_connected(), st.data())
def test_capped_routing_invariants(net, data):
    root = data.draw(st.integers(0, net.n - 1))
    flow, trace = run_traced(net, root)
    B = total_supply(net)
    D = trace.demand_sums.values
    f = flow.values

    assert verify_flow(net, flow).feasible
    # every snapshot of residual supply below x stays within the demand below x
    for snap in trace.residual_snapshots:
        assert np.all(snap <= D)
    # net demand is never negative when processed
    assert all(d >= 0 for _, d in trace.demand_history)
    # both passes only ever add flow
    assert all(moved >= 0 for _, _, moved, _ in trace.supply_history)
    assert np.all(trace.supply_increase >= 0) and np.all(trace.demand_increase >= 0)
    assert np.array_equal(trace.supply_increase + trace.demand_increase, f)
    # per-arc split: the two passes together use at most B, and the supply
    # pass leaves room for the demand below the arc's tail
    assert np.all(f <= B)
    T = trace.in_tree
    for v in T.order.tolist():
        a = int(T.parent_arc[v])
        assert trace.supply_increase[a] <= B - D[v]
    # residual supply is bounded by the demand beneath it
    for v, _, _, after in trace.supply_history:
        assert after <= D[v]


@given(strongly_connected(capacity="atleast"), st.data())
def test_traced_and_kernel_paths_agree(net, data):
    root = data.draw(st.integers(0, net.n - 1))
    traced, _ = run_traced(net, root)
    for name in kernels.BACKENDS:
        with kernels.using(name):
            assert feasible_flow(net, root) == traced
            assert np.array_equal(route_original(net, root), route_original(net, root, trace=RoutingTrace()))


@given(strongly_connected(capacity="double"))
def test_original_routing_with_double_capacity(net):
    trace = RoutingTrace()
    flow = feasible_flow_double_cap(net, trace=trace)
    assert verify_flow(net, flow).feasible
    assert np.all(flow.values <= 2 * total_supply(net))
    assert np.array_equal(trace.supply_increase + trace.demand_increase, flow.values)


@pytest.mark.parametrize("net", [shared_arc_tight(), shared_arc_tight(7), deep_chain(3), deep_chain(5, 4)])
def test_original_needs_double_capacity_on_tight_fixtures(net, backend):
    B = total_supply(net)
    assert verify_flow(net, feasible_flow(net)).feasible
    trace = RoutingTrace()
    route_original(net, trace=trace)
    T, U = build_trees(net)
    shared = set(as_list(T.tree_arcs())) & set(as_list(U.tree_arcs()))
    total = trace.supply_increase + trace.demand_increase
    assert max(int(total[a]) for a in shared) == 2 * B
    assert not verify_flow(net, route_original(net)).feasible
