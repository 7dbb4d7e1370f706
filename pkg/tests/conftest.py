import pytest

from hyperrank import DirectedHypergraph


@pytest.fixture
def hg3() -> DirectedHypergraph:
    """Three vertices, one 2-head hyper-arc; stationary vector (0.4, 0.2, 0.4)."""
    return DirectedHypergraph.from_named_arcs([
        ("e1", ["v1"], ["v2", "v3"], 1.0),
        ("e2", ["v2"], ["v3"], 2.0),
        ("e3", ["v3"], ["v1"], 1.0),
    ])


@pytest.fixture
def two_cycle() -> DirectedHypergraph:
    return DirectedHypergraph.from_named_arcs([
        ("f", ["a"], ["b"], 1.0),
        ("g", ["b"], ["a"], 1.0),
    ])


@pytest.fixture
def three_cycle() -> DirectedHypergraph:
    return DirectedHypergraph.from_named_arcs([
        ("e1", ["a"], ["b"], 1.0),
        ("e2", ["b"], ["c"], 1.0),
        ("e3", ["c"], ["a"], 1.0),
    ])


@pytest.fixture
def chain() -> DirectedHypergraph:
    """a -> b -> c; prunes away completely (a has no head, c no tail)."""
    return DirectedHypergraph.from_named_arcs([
        ("e1", ["a"], ["b"], 1.0),
        ("e2", ["b"], ["c"], 1.0),
    ])


@pytest.fixture
def periodic3() -> DirectedHypergraph:
    """Period-2 chain whose stationary vector is not uniform, so power
    iteration from the uniform start oscillates forever at damping 1."""
    return DirectedHypergraph.from_named_arcs([
        ("e1", ["a"], ["b", "c"], 1.0),
        ("e2", ["b"], ["a"], 1.0),
        ("e3", ["c"], ["a"], 1.0),
    ])


@pytest.fixture
def two_disjoint_two_cycles() -> DirectedHypergraph:
    return DirectedHypergraph.from_named_arcs([
        ("e1", ["a"], ["b"], 1.0),
        ("e2", ["b"], ["a"], 1.0),
        ("e3", ["c"], ["d"], 1.0),
        ("e4", ["d"], ["c"], 1.0),
    ])
