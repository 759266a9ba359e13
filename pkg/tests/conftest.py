import numpy as np
import pytest

from kernelbench import build_graph, generate, uniform_spec


@pytest.fixture
def p3():
    return build_graph(np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0.0]]))


@pytest.fixture
def k2():
    return build_graph(np.array([[0, 1], [1, 0.0]]))


@pytest.fixture
def k3():
    return build_graph(1.0 - np.eye(3))


@pytest.fixture
def k5():
    return build_graph(1.0 - np.eye(5))


@pytest.fixture
def c4():
    a = np.zeros((4, 4))
    for i in range(4):
        a[i, (i + 1) % 4] = a[(i + 1) % 4, i] = 1.0
    return build_graph(a)


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


def random_connected_graph(rng, n, p=0.4, weighted=False, classes=None):
    """Rejection-sample a connected graph; optionally weighted and labeled."""
    from kernelbench import is_connected

    while True:
        a = np.zeros((n, n))
        iu, ju = np.triu_indices(n, 1)
        edges = rng.random(iu.shape[0]) < p
        if weighted:
            weights = rng.uniform(0.5, 3.0, size=iu.shape[0])
        else:
            weights = np.ones(iu.shape[0])
        a[iu[edges], ju[edges]] = weights[edges]
        a[ju[edges], iu[edges]] = weights[edges]
        labels = None
        if classes is not None:
            labels = np.sort(rng.integers(0, classes, size=n))
            labels[: classes] = np.arange(classes)  # every class occurs
            labels = np.sort(labels)
        g = build_graph(a, labels)
        if is_connected(g):
            return g


@pytest.fixture
def connected_graph_factory(rng):
    def factory(n, p=0.4, weighted=False, classes=None):
        return random_connected_graph(rng, n, p, weighted, classes)

    return factory


@pytest.fixture
def sbm_graph():
    return generate(uniform_spec(40, 2, 0.7, 0.1, seed=99), 0)


def write_zachary_gml(path):
    """Karate club GML with faction-split labels (node 8 with the officers)."""
    import networkx as nx

    graph = nx.karate_club_graph()
    labels = {i: (0 if graph.nodes[i]["club"] == "Mr. Hi" else 1) for i in graph.nodes}
    labels[8] = 1
    lines = ["graph [", "  directed 0"]
    for i in sorted(graph.nodes):
        lines += ["  node [", f"    id {i}", f'    label "{i}"',
                  f"    value {labels[i]}", "  ]"]
    for u, v in sorted(graph.edges):
        lines += ["  edge [", f"    source {u}", f"    target {v}", "  ]"]
    lines.append("]")
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture(scope="session")
def zachary_root(tmp_path_factory):
    pytest.importorskip("networkx")
    root = tmp_path_factory.mktemp("data")
    write_zachary_gml(root / "zachary.gml")
    return root
