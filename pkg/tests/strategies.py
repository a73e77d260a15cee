"""Hypothesis strategies for small simple graphs."""

from hypothesis import strategies as st

from izeta.graphs import Graph


@st.composite
def graphs(draw, min_n=1, max_n=9, max_m=None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_m) if pairs else st.just([]))
    return Graph(n, tuple(edges))


@st.composite
def two_core_graphs(draw, max_n=8, max_m=16):
    """Connected graphs with min degree >= 2 (a cycle plus random chords)."""
    n = draw(st.integers(3, max_n))
    edges = {(i, (i + 1) % n) if i < (i + 1) % n else ((i + 1) % n, i) for i in range(n)}
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
    extra = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max(0, max_m - n)) if pairs else st.just([]))
    perm = draw(st.permutations(range(n)))
    es = tuple(tuple(sorted((perm[a], perm[b]))) for a, b in sorted(edges) + list(extra))
    return Graph(n, es)
