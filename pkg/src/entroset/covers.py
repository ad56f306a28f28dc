"""Fractional and uniform covers of {1..n}, and an exact cover LP.

A cover is a multiset of index sets with optional nonnegative rational
weights. Feasibility checks are exact rational sums. The minimum-weight
fractional cover is solved by a dense two-phase simplex over Fractions
with Bland's anti-cycling rule: instances here are tiny (n around 12,
a few dozen members), so exactness is worth far more than speed. For a
fixed input order the returned vertex is deterministic; between
degenerate optima only the objective value is contractual.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dist import as_fraction
from .errors import InfeasibleError, SchemaError
from .projections import IndexSet
from .report import HOLDS, VIOLATED, CheckReport


@dataclass(frozen=True)
class CoverSpec:
    """Multiset of subsets of {1..n} with optional rational weights."""

    n: int
    members: tuple[IndexSet, ...]
    weights: tuple[Fraction, ...] | None = None

    def __init__(self, n: int, members: Sequence, weights: Sequence | None = None):
        n = int(n)
        if n < 1:
            raise SchemaError("n must be >= 1")
        mems = tuple(m if isinstance(m, IndexSet) else IndexSet(m) for m in members)
        if not mems:
            raise SchemaError("cover needs at least one member")
        for m in mems:
            if not m:
                raise SchemaError("cover members must be nonempty")
            if max(m.indices) > n:
                raise SchemaError(f"member {m.indices} exceeds n={n}")
        ws = None
        if weights is not None:
            ws = tuple(as_fraction(w) for w in weights)
            if len(ws) != len(mems):
                raise SchemaError("weights must be parallel to members")
            if any(w < 0 for w in ws):
                raise SchemaError("weights must be nonnegative")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "members", mems)
        object.__setattr__(self, "weights", ws)

    def coverage(self) -> list[Fraction]:
        """Exact total weight covering each element 1..n (weights required)."""
        if self.weights is None:
            raise SchemaError("cover has no weights")
        sums = [Fraction(0)] * self.n
        for member, w in zip(self.members, self.weights):
            for i in member:
                sums[i - 1] += w
        return sums

    def multiplicities(self) -> list[int]:
        """How many members contain each element 1..n."""
        counts = [0] * self.n
        for member in self.members:
            for i in member:
                counts[i - 1] += 1
        return counts


@dataclass(frozen=True)
class LPSolution:
    """Exact optimum of the cover LP, with its coverage certificate."""

    weights: tuple[Fraction, ...]
    objective: Fraction
    certificate: tuple[Fraction, ...]


def is_fractional_cover(cover: CoverSpec) -> CheckReport:
    """Exact check that every element is covered with total weight >= 1."""
    sums = cover.coverage()
    uncovered = [i + 1 for i, s in enumerate(sums) if s < 1]
    worst = min(sums)
    return CheckReport(
        verdict=HOLDS if not uncovered else VIOLATED,
        lhs=1.0,
        rhs=float(worst),
        slack=float(worst - 1),
        witnesses=tuple({"element": i} for i in uncovered),
        provenance="exact",
        details={"coverage": [str(s) for s in sums]},
    )


def is_uniform_k_cover(cover: CoverSpec, k: int) -> CheckReport:
    """Multiplicity check: 'uniform' if every count equals k, 'k-cover' if >= k."""
    counts = cover.multiplicities()
    uniform = all(c == k for c in counts)
    at_least = all(c >= k for c in counts)
    verdict = "uniform" if uniform else ("k-cover" if at_least else VIOLATED)
    bad = [i + 1 for i, c in enumerate(counts) if c < k]
    return CheckReport(
        verdict=verdict,
        lhs=float(k),
        rhs=float(min(counts)),
        slack=float(min(counts) - k),
        witnesses=tuple({"element": i} for i in bad),
        provenance="exact",
        details={"counts": counts, "k": k, "uniform": uniform, "k_cover": at_least},
    )


def uniform_cover_as_fractional(cover: CoverSpec, k: int) -> CoverSpec:
    """Scale a uniform k-cover by 1/k; every coverage sum becomes exactly 1."""
    report = is_uniform_k_cover(cover, k)
    if report.verdict != "uniform":
        raise SchemaError(f"not a uniform {k}-cover")
    w = Fraction(1, k)
    return CoverSpec(cover.n, cover.members, [w] * len(cover.members))


def min_fractional_cover(n: int, members: Sequence) -> LPSolution:
    """Minimum total weight making the multiset a fractional cover.

    Solves min sum(a) s.t. coverage >= 1, a >= 0 exactly. Raises
    InfeasibleError when some element appears in no member.
    """
    cover = CoverSpec(n, members)
    missing = [i + 1 for i, c in enumerate(cover.multiplicities()) if c == 0]
    if missing:
        raise InfeasibleError(f"elements {missing} appear in no member")
    nvar = len(cover.members)
    rows = [
        [Fraction(1) if (i + 1) in m else Fraction(0) for m in cover.members]
        for i in range(n)
    ]
    x = _simplex_min_geq(
        c=[Fraction(1)] * nvar, a=rows, b=[Fraction(1)] * n
    )
    weights = tuple(x)
    objective = sum(weights, Fraction(0))
    certificate = tuple(
        sum((w for m, w in zip(cover.members, weights) if (i + 1) in m), Fraction(0))
        for i in range(n)
    )
    return LPSolution(weights=weights, objective=objective, certificate=certificate)


def _simplex_min_geq(
    c: list[Fraction], a: list[list[Fraction]], b: list[Fraction]
) -> list[Fraction]:
    """Exact two-phase simplex for min c.x s.t. a x >= b, x >= 0, b >= 0.

    Dense Fraction tableau, Bland's rule for entering and leaving
    variables. Columns are [x | surplus | artificial].
    """
    m = len(a)
    nvar = len(c)
    width = nvar + 2 * m
    tab = []
    for i in range(m):
        row = list(a[i])
        row += [Fraction(-1) if j == i else Fraction(0) for j in range(m)]  # surplus
        row += [Fraction(1) if j == i else Fraction(0) for j in range(m)]  # artificial
        row.append(b[i])
        tab.append(row)
    basis = [nvar + m + i for i in range(m)]

    def reduced_costs(cost: list[Fraction]) -> list[Fraction]:
        red = list(cost)
        for i, bi in enumerate(basis):
            cb = cost[bi]
            if cb != 0:
                for j in range(width):
                    red[j] -= cb * tab[i][j]
        return red

    def pivot(row: int, col: int) -> None:
        inv = 1 / tab[row][col]
        tab[row] = [v * inv for v in tab[row]]
        for i in range(len(tab)):
            if i != row and tab[i][col] != 0:
                factor = tab[i][col]
                tab[i] = [v - factor * p for v, p in zip(tab[i], tab[row])]
        basis[row] = col

    def optimize(cost: list[Fraction], allowed: int) -> None:
        while True:
            red = reduced_costs(cost)
            enter = next((j for j in range(allowed) if red[j] < 0), None)
            if enter is None:
                return
            best_ratio = None
            leave = None
            for i in range(len(tab)):
                coef = tab[i][enter]
                if coef > 0:
                    ratio = tab[i][-1] / coef
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[leave])
                    ):
                        best_ratio = ratio
                        leave = i
            if leave is None:
                raise InfeasibleError("LP is unbounded")  # pragma: no cover
            pivot(leave, enter)

    phase1 = [Fraction(0)] * (nvar + m) + [Fraction(1)] * m
    optimize(phase1, width)
    infeas = sum((tab[i][-1] for i in range(m) if basis[i] >= nvar + m), Fraction(0))
    if infeas > 0:
        raise InfeasibleError("no fractional cover exists")  # pragma: no cover
    # drive degenerate artificials out of the basis; drop redundant rows
    for i in reversed(range(len(tab))):
        if basis[i] >= nvar + m:
            col = next((j for j in range(nvar + m) if tab[i][j] != 0), None)
            if col is None:
                del tab[i]
                del basis[i]
            else:
                pivot(i, col)
    phase2 = list(c) + [Fraction(0)] * (2 * m)
    optimize(phase2, nvar + m)
    x = [Fraction(0)] * nvar
    for i, bi in enumerate(basis):
        if bi < nvar:
            x[bi] = tab[i][-1]
    return x
