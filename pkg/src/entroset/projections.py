"""Point sets in product spaces: projections, slices, conditional sizes.

Coordinates are 1-based throughout, matching the JSON interchange format.
The conditional average size of a projection is a geometric mean: slice
the ambient set A by its S-coordinates, project each slice to T, and
weight slice sizes by the exact probability that a uniformly random point
of A lands in the slice. Conditioning on the empty index set is defined
to be no conditioning at all.

Exponents stay exact rationals; only the final log-space accumulation is
floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .dist import (
    Element,
    FiniteMap,
    RationalDist,
    as_element,
    check_base,
    entropy,
    pushforward,
)
from .errors import EmptySliceError, SchemaError


@dataclass(frozen=True)
class IndexSet:
    """Sorted duplicate-free subset of {1, ..., n}.

    Empty instances are allowed; they arise as conditioning sets (the
    prefix below a set whose minimum is 1). Operations that need a
    nonempty set say so.
    """

    indices: tuple[int, ...]

    def __init__(self, indices: Iterable[int]):
        raw = [int(i) for i in indices]
        idx = tuple(sorted(raw))
        if len(set(idx)) != len(idx):
            raise SchemaError(f"duplicate indices: {raw}")
        if any(i < 1 for i in idx):
            raise SchemaError(f"indices must be >= 1: {idx}")
        object.__setattr__(self, "indices", idx)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, i) -> bool:
        return i in self.indices

    def __bool__(self) -> bool:
        return bool(self.indices)

    def intersection(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(set(self.indices) & set(other.indices))

    def union(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(set(self.indices) | set(other.indices))


EMPTY_INDEX_SET = IndexSet(())


@dataclass(frozen=True)
class PointSet:
    """Finite set of distinct points of a common dimension."""

    dimension: int
    points: frozenset[Element]

    def __init__(self, dimension: int, points: Iterable):
        pts = frozenset(as_element(p) for p in points)
        if not pts:
            raise SchemaError("point set must be nonempty")
        if any(len(p) != dimension for p in pts):
            raise SchemaError(f"all points must have dimension {dimension}")
        if dimension < 1:
            raise SchemaError("dimension must be >= 1")
        object.__setattr__(self, "dimension", int(dimension))
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(cls, points: Iterable) -> "PointSet":
        pts = [as_element(p) for p in points]
        if not pts:
            raise SchemaError("point set must be nonempty")
        return cls(len(pts[0]), pts)

    def sorted_points(self) -> list[Element]:
        return sorted(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def _check_indices(S: IndexSet, dimension: int) -> None:
    if S and max(S.indices) > dimension:
        raise IndexError(f"index set {S.indices} exceeds dimension {dimension}")


def _restrict(point: Element, S: IndexSet) -> Element:
    return tuple(point[i - 1] for i in S.indices)


def project_set(A: PointSet, S: IndexSet) -> PointSet:
    """Coordinate projection {x_S : x in A}, duplicates collapsed."""
    if not S:
        raise SchemaError("cannot project onto the empty index set")
    _check_indices(S, A.dimension)
    return PointSet(len(S), {_restrict(x, S) for x in A})


def project_rv(X: RationalDist, S: IndexSet) -> RationalDist:
    """Marginal of X on the coordinates in S (pushforward of a projection)."""
    if not S:
        raise SchemaError("cannot project onto the empty index set")
    _check_indices(S, X.dimension)
    proj = FiniteMap({x: _restrict(x, S) for x in X.support})
    return pushforward(proj, X)


def s_star(S: IndexSet) -> IndexSet:
    """The prefix {1, ..., min(S)-1}; empty when min(S) = 1."""
    if not S:
        raise SchemaError("s_star of the empty index set is undefined")
    return IndexSet(range(1, min(S.indices)))


def conditional_slice(A: PointSet, S: IndexSet, y) -> PointSet:
    """Subset of A whose S-coordinates equal y."""
    if not S:
        raise SchemaError("conditioning on the empty index set selects all of A")
    _check_indices(S, A.dimension)
    y = as_element(y)
    pts = {x for x in A if _restrict(x, S) == y}
    if not pts:
        raise EmptySliceError(f"no point of A has coordinates {y} on {S.indices}")
    return PointSet(A.dimension, pts)


def slice_weights(A: PointSet, S: IndexSet) -> dict[Element, Fraction]:
    """Exact probability that a uniform point of A projects to each y in A_S."""
    counts: dict[Element, int] = {}
    for x in A:
        y = _restrict(x, S)
        counts[y] = counts.get(y, 0) + 1
    total = len(A)
    return {y: Fraction(c, total) for y, c in sorted(counts.items())}


def log_conditional_avg_size(
    A: PointSet, T: IndexSet, S: IndexSet, base: float = 2
) -> float:
    """log of the conditional average size, the form used by the checkers."""
    check_base(base)
    if not T:
        raise SchemaError("conditioned projection needs a nonempty target T")
    _check_indices(T, A.dimension)
    _check_indices(S, A.dimension)
    log = math.log2 if base == 2 else math.log
    if not S:
        return log(len(project_set(A, T)))
    acc = 0.0
    for y, weight in slice_weights(A, S).items():
        slice_pts = {_restrict(x, T) for x in A if _restrict(x, S) == y}
        acc += float(weight) * log(len(slice_pts))
    return acc


def conditional_avg_size(A: PointSet, T: IndexSet, S: IndexSet) -> float:
    """Geometric mean of |slice of A at A_S = y, projected to T| over y.

    Weights are the exact uniform-point probabilities p(y) = |A : x_S=y|/|A|;
    with S empty this is plainly |A_T|. Computed in log-space to avoid
    under/overflow, with exact rational exponents and float logs.
    """
    return 2.0 ** log_conditional_avg_size(A, T, S, base=2)


def conditional_entropy(
    X: RationalDist, S: IndexSet, C: IndexSet = EMPTY_INDEX_SET, base: float = 2
) -> float:
    """H(X_S | X_C) = H(X_{S u C}) - H(X_C); plain H(X_S) when C is empty."""
    if not S:
        raise SchemaError("conditional entropy needs a nonempty target S")
    _check_indices(S, X.dimension)
    _check_indices(C, X.dimension)
    if not C:
        return entropy(project_rv(X, S), base=base)
    joint = entropy(project_rv(X, S.union(C)), base=base)
    given = entropy(project_rv(X, C), base=base)
    return joint - given
