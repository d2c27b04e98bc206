"""Finite ultrametric spaces: validation, witness points, star realization,
canonical dendrogram forms, and isometry testing.

A space is star generated when some point x0 satisfies
d(x0, x) <= d(y, x) for every pair of distinct points x, y. Such an x0 is
called a witness here; it can serve as the center of a labeled star whose
path-maximum metric reproduces the space exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    EmptySubset,
    NotUS,
    PositivityViolation,
    StrongTriangleViolation,
    SymmetryViolation,
    UnknownPoint,
)
from .rationals import coerce_nonnegative, format_rational


@dataclass(frozen=True)
class FiniteUltrametricSpace:
    """Ordered points with an exact symmetric distance matrix.

    Construction coerces entries to Fraction but does not check the axioms;
    validate_ultrametric is the checked entry point for untrusted data.
    """

    points: tuple[str, ...]
    dist: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(
            self,
            "dist",
            tuple(tuple(coerce_nonnegative(x) for x in row) for row in self.dist),
        )

    @property
    def size(self) -> int:
        return len(self.points)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    def distance(self, x: str, y: str) -> Fraction:
        try:
            return self.dist[self._index[x]][self._index[y]]
        except KeyError as exc:
            raise UnknownPoint(f"point {exc.args[0]!r} is not in the space") from None


def validate_ultrametric(points: Sequence[str], dist: Sequence[Sequence]) -> FiniteUltrametricSpace:
    """Check the three ultrametric axioms exhaustively and return the space.

    Symmetry, positivity (zero exactly on the diagonal, nothing negative),
    and the strong triangle inequality d(x,y) <= max(d(x,z), d(z,y)) over
    all ordered triples. Raises SymmetryViolation, PositivityViolation, or
    StrongTriangleViolation naming the offending points.
    """
    pts = tuple(points)
    if not pts:
        raise ValueError("a space needs at least one point")
    if len(set(pts)) != len(pts):
        raise ValueError("point names must be unique")
    if len(dist) != len(pts) or any(len(row) != len(pts) for row in dist):
        raise ValueError(f"distance matrix must be {len(pts)}x{len(pts)}")

    n = len(pts)
    rows = []
    for i, row in enumerate(dist):
        coerced = []
        for j, x in enumerate(row):
            try:
                coerced.append(coerce_nonnegative(x))
            except ValueError:
                raise PositivityViolation(
                    f"negative distance at ({pts[i]!r}, {pts[j]!r})", (pts[i], pts[j])
                ) from None
        rows.append(tuple(coerced))

    for i in range(n):
        if rows[i][i] != 0:
            raise PositivityViolation(f"d({pts[i]!r}, {pts[i]!r}) must be 0", (pts[i],))
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise SymmetryViolation(
                    f"d({pts[i]!r}, {pts[j]!r}) != d({pts[j]!r}, {pts[i]!r})",
                    (pts[i], pts[j]),
                )
            if rows[i][j] == 0:
                raise PositivityViolation(
                    f"distinct points {pts[i]!r}, {pts[j]!r} at distance 0",
                    (pts[i], pts[j]),
                )
    for i in range(n):
        for j in range(n):
            dij = rows[i][j]
            for k in range(n):
                if dij > rows[i][k] and dij > rows[k][j]:
                    raise StrongTriangleViolation(
                        f"d({pts[i]!r}, {pts[j]!r}) > max over {pts[k]!r}",
                        (pts[i], pts[j], pts[k]),
                    )
    return FiniteUltrametricSpace(pts, tuple(rows))


def us_witness(space: FiniteUltrametricSpace) -> str | None:
    """The first point (in point order) witnessing star generation, if any.

    A witness x0 satisfies d(x0, x) <= d(y, x) for all points x != x0 and
    y != x. The scan is the plain cubic check of that condition.
    """
    d = space.dist
    n = space.size
    for i in range(n):
        row = d[i]
        good = True
        for x in range(n):
            if x == i:
                continue
            dix = row[x]
            for y in range(n):
                if y != x and d[y][x] < dix:
                    good = False
                    break
            if not good:
                break
        if good:
            return space.points[i]
    return None


def restrict(space: FiniteUltrametricSpace, subset: Iterable[str]) -> FiniteUltrametricSpace:
    """The induced subspace on a non-empty subset, in original point order."""
    wanted = set(subset)
    if not wanted:
        raise EmptySubset("subset must contain at least one point")
    for p in wanted:
        if p not in space._index:
            raise UnknownPoint(f"point {p!r} is not in the space", (p,))
    keep = [i for i, p in enumerate(space.points) if p in wanted]
    pts = tuple(space.points[i] for i in keep)
    rows = tuple(tuple(space.dist[i][j] for j in keep) for i in keep)
    return FiniteUltrametricSpace(pts, rows)


def realize_as_star(space: FiniteUltrametricSpace):
    """A labeled star whose generated metric equals the space exactly.

    The witness becomes the center with label 0 and every other point
    becomes a leaf labeled with its distance to the center. Point order is
    preserved, so building the ultrametric of the result reproduces the
    input matrix entry for entry. Raises NotUS when no witness exists. The
    one-point space realizes as the one-vertex tree with label 0.
    """
    from .labelings import LabeledTree
    from .trees import validate_tree

    center = us_witness(space)
    if center is None:
        raise NotUS("the space has no witness point, so no star generates it")
    edges = [(center, p) for p in space.points if p != center]
    tree = validate_tree(space.points, edges)
    zero = Fraction(0)
    labels = {
        p: zero if p == center else space.distance(center, p) for p in space.points
    }
    return LabeledTree(tree, labels)


@dataclass(frozen=True)
class CanonicalForm:
    """Recursive dendrogram form: diameter plus canonically sorted children.

    Leaves are (0, ()). A multi-point space at diameter D splits into the
    equivalence classes of d(x, y) < D; there are always at least two.
    Children are sorted by their serialized text, so equal forms serialize
    identically and vice versa.
    """

    diameter: Fraction
    children: tuple["CanonicalForm", ...]

    @cached_property
    def serialized(self) -> str:
        inner = "".join(c.serialized for c in self.children)
        return f"({format_rational(self.diameter)}{inner})"


def canonical_form(space: FiniteUltrametricSpace) -> CanonicalForm:
    """Canonical form of a valid space; equal forms mean isometric spaces."""
    return _form(space.dist, tuple(range(space.size)))


def _form(dist, idxs: tuple[int, ...]) -> CanonicalForm:
    if len(idxs) == 1:
        return CanonicalForm(Fraction(0), ())
    diameter = max(dist[i][j] for i, j in combinations(idxs, 2))
    groups: list[list[int]] = []
    for i in idxs:
        # one representative per class suffices: d(., .) < diameter is an
        # equivalence relation on a valid ultrametric space
        for g in groups:
            if dist[i][g[0]] < diameter:
                g.append(i)
                break
        else:
            groups.append([i])
    children = sorted(
        (_form(dist, tuple(g)) for g in groups), key=lambda f: f.serialized
    )
    return CanonicalForm(diameter, tuple(children))


def check_isometric(a: FiniteUltrametricSpace, b: FiniteUltrametricSpace) -> bool:
    """Whether a distance-preserving bijection exists between two spaces.

    Mismatched sizes or distance multisets short-circuit to False; otherwise
    the canonical forms decide.
    """
    if a.size != b.size:
        return False
    if _distance_multiset(a) != _distance_multiset(b):
        return False
    return canonical_form(a) == canonical_form(b)


def _distance_multiset(space: FiniteUltrametricSpace) -> list[Fraction]:
    n = space.size
    return sorted(space.dist[i][j] for i in range(n) for j in range(i + 1, n))
