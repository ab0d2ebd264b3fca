import itertools

from hypothesis import given
from hypothesis import strategies as st

from detkit import graph
from detkit.flow import INF, FlowNetwork


@st.composite
def digraphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n))
    succ = [[] for _ in range(n)]
    for u, v in edges:
        succ[u].append(v)
    return succ


def closure(succ):
    n = len(succ)
    r = [[u == v for v in range(n)] for u in range(n)]
    for u, vs in enumerate(succ):
        for v in vs:
            r[u][v] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                r[i][j] = r[i][j] or (r[i][k] and r[k][j])
    return r


@given(digraphs())
def test_scc_matches_mutual_reachability(succ):
    r = closure(succ)
    comps = graph.tarjan_scc(succ)
    assert sorted(v for c in comps for v in c) == list(range(len(succ)))
    comp_of = graph.component_map(comps, len(succ))
    for u in range(len(succ)):
        for v in range(len(succ)):
            assert (comp_of[u] == comp_of[v]) == (r[u][v] and r[v][u])


@given(digraphs())
def test_scc_order_is_reverse_topological(succ):
    comps = graph.tarjan_scc(succ)
    comp_of = graph.component_map(comps, len(succ))
    for u, vs in enumerate(succ):
        for v in vs:
            assert comp_of[v] <= comp_of[u]


def test_scc_handles_long_chains():
    n = 5000
    succ = [[i + 1] for i in range(n - 1)] + [[0]]
    assert len(graph.tarjan_scc(succ)) == 1


@given(digraphs(), st.data())
def test_reach_matches_closure(succ, data):
    start = data.draw(st.integers(0, len(succ) - 1))
    r = closure(succ)
    assert graph.reach([start], succ) == {v for v in range(len(succ)) if r[start][v]}


def test_bfs_path_shortest():
    succ = {0: [("a", 1), ("b", 2)], 1: [("c", 3)], 2: [("d", 4)], 4: [("e", 3)], 3: []}
    path = graph.bfs_path([0], lambda u: succ[u], lambda v: v == 3)
    assert path == [(0, "a", 1), (1, "c", 3)]
    assert graph.bfs_path([0], lambda u: succ[u], lambda v: v == 0) == []
    assert graph.bfs_path([3], lambda u: succ[u], lambda v: v == 0) is None


@st.composite
def networks(draw):
    n = draw(st.integers(2, 7))
    edges = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.sampled_from([1, 1, 2, 3, INF])),
            max_size=14,
        )
    )
    return n, edges


def brute_min_cut(n, edges):
    cap = {}
    for u, v, c in edges:
        if u != v:
            cap[(u, v)] = min(INF, cap.get((u, v), 0) + c)
    best = None
    inner = range(1, n - 1)
    for r in range(len(inner) + 1):
        for side in itertools.combinations(inner, r):
            s_side = {0, *side}
            val = min(INF, sum(c for (u, v), c in cap.items() if u in s_side and v not in s_side))
            best = val if best is None else min(best, val)
    return best


@given(networks())
def test_max_flow_equals_brute_force_min_cut(net_spec):
    n, edges = net_spec
    net = FlowNetwork()
    for i in range(n):
        net.node(i)
    for u, v, c in edges:
        net.add_edge(u, v, c)
    flow = net.max_flow(0, n - 1)
    expected = brute_min_cut(n, edges)
    assert min(flow, INF) == expected
    if flow < INF:
        cut = net.cut_edges(n - 1)
        assert sum(net.original[u][v] for u, v in cut) == flow
