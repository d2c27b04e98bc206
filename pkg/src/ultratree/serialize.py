"""JSON wire formats for trees, labeled trees, and spaces.

Trees: {"vertices": ["a", ...], "edges": [["a", "b"], ...]}. Edge order and
endpoint order are free on read; writes emit lexicographically sorted pairs.
Labeled trees add {"labels": {"a": "3", "b": "5/2", ...}}. Spaces are
{"points": [...], "dist": [["0", "2", ...], ...]} with row-major entries.
All numeric content travels as exact decimal-integer or p/q strings
(integers are tolerated on read).
"""

from __future__ import annotations

from .errors import ParseError
from .labelings import LabeledTree
from .rationals import format_rational, parse_rational
from .spaces import FiniteUltrametricSpace, validate_ultrametric
from .trees import Tree, validate_tree


def tree_to_dict(tree: Tree) -> dict:
    return {
        "vertices": list(tree.vertices),
        "edges": [list(edge) for edge in tree.edges],
    }


def tree_from_dict(obj) -> Tree:
    """Parse and validate a tree; extra keys (such as labels) are ignored."""
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object for a tree")
    vertices = obj.get("vertices")
    edges = obj.get("edges")
    if not isinstance(vertices, list) or not all(
        isinstance(v, str) and v for v in vertices
    ):
        raise ParseError('"vertices" must be a list of non-empty strings')
    if len(set(vertices)) != len(vertices):
        raise ParseError("duplicate vertex names")
    if not isinstance(edges, list):
        raise ParseError('"edges" must be a list of two-element lists')
    for e in edges:
        if not isinstance(e, list) or len(e) != 2 or not all(isinstance(x, str) for x in e):
            raise ParseError(f"bad edge entry {e!r}")
    return validate_tree(vertices, edges)


def labeled_tree_to_dict(lt: LabeledTree) -> dict:
    out = tree_to_dict(lt.tree)
    out["labels"] = {v: format_rational(lt.labels[v]) for v in lt.tree.vertices}
    return out


def labeled_tree_from_dict(obj) -> LabeledTree:
    tree = tree_from_dict(obj)
    labels_obj = obj.get("labels")
    if not isinstance(labels_obj, dict):
        raise ParseError('"labels" must map vertex names to rational strings')
    labels = {v: parse_rational(raw) for v, raw in labels_obj.items()}
    return LabeledTree(tree, labels)


def space_to_dict(space: FiniteUltrametricSpace) -> dict:
    return {
        "points": list(space.points),
        "dist": [[format_rational(x) for x in row] for row in space.dist],
    }


def space_from_dict(obj) -> FiniteUltrametricSpace:
    """Parse and fully validate an ultrametric space."""
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object for a space")
    points = obj.get("points")
    dist = obj.get("dist")
    if not isinstance(points, list) or not all(
        isinstance(p, str) and p for p in points
    ):
        raise ParseError('"points" must be a list of non-empty strings')
    if len(set(points)) != len(points):
        raise ParseError("duplicate point names")
    if not isinstance(dist, list) or len(dist) != len(points):
        raise ParseError('"dist" must be a square matrix of rational strings')
    rows = []
    for row in dist:
        if not isinstance(row, list) or len(row) != len(points):
            raise ParseError('"dist" must be a square matrix of rational strings')
        rows.append([parse_rational(x) for x in row])
    return validate_ultrametric(points, rows)
