"""Independent oracles and shared test data.

Everything in here is deliberately naive: simple-path enumeration for the
longest path, permutation search for isometry, edge-subset filtering for
tree enumeration, and a literal transcription of the witness condition.
The point is that none of it shares code with the implementations under
test, so agreement is evidence rather than tautology.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations, permutations, product
from pathlib import Path

from hypothesis import strategies as st

from ultratree import (
    FiniteUltrametricSpace,
    LabeledTree,
    Tree,
    validate_tree,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name):
    with open(FIXTURES / name, encoding="utf-8") as fh:
        return json.load(fh)


# Figure-of-merit example: path on five vertices labeled 2,2,3,2,2.
# Expected distances worked out by hand from the path-max rule.
FIG1_POINTS = ("v1", "v2", "v3", "v4", "v5")
FIG1_MATRIX = tuple(
    tuple(Fraction(x) for x in row)
    for row in (
        (0, 2, 3, 3, 3),
        (2, 0, 3, 3, 3),
        (3, 3, 0, 3, 3),
        (3, 3, 3, 0, 2),
        (3, 3, 3, 2, 0),
    )
)


def space_of(points, rows):
    return FiniteUltrametricSpace(
        tuple(points), tuple(tuple(Fraction(x) for x in r) for r in rows)
    )


def path_tree(n):
    names = [f"v{i}" for i in range(1, n + 1)]
    return validate_tree(names, [(names[i], names[i + 1]) for i in range(n - 1)])


def star_tree(n):
    names = [f"v{i}" for i in range(1, n + 1)]
    return validate_tree(names, [(names[0], v) for v in names[1:]])


def labeled(tree, values):
    return LabeledTree(tree, {v: Fraction(x) for v, x in zip(tree.vertices, values)})


def adjacency(tree):
    adj = {v: [] for v in tree.vertices}
    for a, b in tree.edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


def brute_longest_path(tree):
    """Longest path length by enumerating every simple path."""
    adj = adjacency(tree)
    best = 0

    def extend(v, seen, length):
        nonlocal best
        if length > best:
            best = length
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                extend(u, seen, length + 1)
                seen.remove(u)

    for v in tree.vertices:
        extend(v, {v}, 0)
    return best


def brute_trees(n):
    """All labeled trees on n vertices as frozensets of index pairs.

    Filters every (n-1)-subset of the complete graph's edges for
    connectivity. Only usable for small n.
    """
    if n == 1:
        return {frozenset()}
    all_edges = list(combinations(range(n), 2))
    found = set()
    for subset in combinations(all_edges, n - 1):
        adj = {i: [] for i in range(n)}
        for a, b in subset:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) == n:
            found.add(frozenset(subset))
    return found


def edge_index_set(tree):
    pos = {v: i for i, v in enumerate(tree.vertices)}
    return frozenset((min(pos[a], pos[b]), max(pos[a], pos[b])) for a, b in tree.edges)


def brute_witness(space):
    """First point x0 with d(x0, x) <= d(y, x) for all x != y, else None."""
    n = space.size
    d = space.dist
    for i in range(n):
        if all(
            d[i][x] <= d[y][x]
            for x in range(n)
            for y in range(n)
            if x != y
        ):
            return space.points[i]
    return None


def brute_isometric(a, b):
    if a.size != b.size:
        return False
    n = a.size
    da, db = a.dist, b.dist
    for perm in permutations(range(n)):
        if all(
            da[i][j] == db[perm[i]][perm[j]]
            for i in range(n)
            for j in range(i + 1, n)
        ):
            return True
    return False


def high_degree_count(tree):
    deg = {v: 0 for v in tree.vertices}
    for a, b in tree.edges:
        deg[a] += 1
        deg[b] += 1
    return sum(1 for d in deg.values() if d >= 2)


# Analytic counts, rederived here rather than imported:
#   trees(n) = n^(n-2) labeled trees (Cayley), stars have n choices of
#   center for n >= 3, double stars pick the center pair and a proper
#   bipartition of the remaining leaves.
def cayley(n):
    return 1 if n <= 2 else n ** (n - 2)


def star_count(n):
    return n if n >= 3 else 1


def double_star_count(n):
    if n < 4:
        return 0
    return (n * (n - 1) // 2) * (2 ** (n - 2) - 2)


def qualifying_count(n):
    return star_count(n) + double_star_count(n)


def expected_cases(theorem, n_max, k):
    orders = range(1, n_max + 1)
    if theorem == "nondeg":
        return sum(cayley(n) * k**n for n in orders)
    if theorem == "lemmas":
        return sum(cayley(n) for n in orders)
    if theorem == "classify":
        return sum(cayley(n) + qualifying_count(n) * k**n for n in orders)
    if theorem == "main":
        return sum(
            cayley(n) + qualifying_count(n) * k**n + (cayley(n) - qualifying_count(n))
            for n in orders
        )
    raise ValueError(theorem)


def all_labelings(tree, values):
    vals = [Fraction(v) for v in values]
    for combo in product(vals, repeat=tree.order):
        yield labeled(tree, combo)


@st.composite
def random_trees(draw, min_order=1, max_order=7):
    """Uniform-ish random tree: attach vertex i to a random earlier one."""
    n = draw(st.integers(min_value=min_order, max_value=max_order))
    names = [f"v{i}" for i in range(1, n + 1)]
    edges = []
    for i in range(1, n):
        parent = draw(st.integers(min_value=0, max_value=i - 1))
        edges.append((names[parent], names[i]))
    return validate_tree(names, edges)


LABEL_POOL = tuple(Fraction(x) for x in (0, 1, 2, 3, Fraction(1, 2), Fraction(5, 2)))


@st.composite
def random_labeled_trees(draw, min_order=1, max_order=7, pool=LABEL_POOL):
    tree = draw(random_trees(min_order=min_order, max_order=max_order))
    labels = {v: draw(st.sampled_from(pool)) for v in tree.vertices}
    return LabeledTree(tree, labels)
