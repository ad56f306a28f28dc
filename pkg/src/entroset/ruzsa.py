"""Type-class vector sets built from exact rational distributions.

For a distribution X with probabilities p_i = q_i/r_i and a suitable k
(common multiple of the r_i), the k-set of X is the set of length-k
vectors over the support in which element x_i occurs exactly k*p_i times.
Its cardinality is the multinomial coefficient k!/prod((k*p_i)!), and
log|set|/k converges to H(X) inside an exactly-checkable envelope: with
n support elements,

    |set|  <=  prod_i p_i^(-k*p_i)  <=  (k+1)^(n-1) * |set|,

all three quantities exact big integers/rationals. Applying a map f
coordinatewise commutes with the construction: the image of the k-set of
X under f^k equals the k-set of f(X). Both directions are implemented:
`verify_commutation` checks the identity by double enumeration, and
`preimage_lift` constructs an explicit preimage vector witnessing the
hard inclusion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .dist import (
    Element,
    FiniteMap,
    RationalDist,
    as_element,
    entropy,
    is_suitable,
    pushforward,
)
from .errors import MembershipError, SizeGuardError, SuitabilityError
from .report import HOLDS, VIOLATED, CheckReport

DEFAULT_ENUM_LIMIT = 10**6

RuzsaVector = tuple[Element, ...]


@dataclass(frozen=True)
class RuzsaSpec:
    """A distribution together with a suitable vector length k."""

    dist: RationalDist
    k: int

    def __init__(self, dist: RationalDist, k: int):
        if not is_suitable(dist, k):
            raise SuitabilityError(
                f"k={k} is not a multiple of the probability denominators"
            )
        object.__setattr__(self, "dist", dist)
        object.__setattr__(self, "k", k)

    @property
    def counts(self) -> tuple[int, ...]:
        """Exact occurrence counts k*p_i, parallel to the support."""
        return tuple(int(p * self.k) for p in self.dist.probs)

    def contains(self, vec) -> bool:
        """Exact membership test: every support element occurs k*p_i times."""
        vec = tuple(vec)
        if len(vec) != self.k:
            return False
        support = self.dist.support
        allowed = set(support)
        if any(x not in allowed for x in vec):
            return False
        return all(vec.count(x) == c for x, c in zip(support, self.counts))


def ruzsa_size(spec: RuzsaSpec) -> int:
    """Closed-form cardinality: the multinomial (k choose k*p_1, ..., k*p_n)."""
    size = math.factorial(spec.k)
    for c in spec.counts:
        size //= math.factorial(c)
    return size


def ruzsa_enumerate(
    spec: RuzsaSpec, limit: int = DEFAULT_ENUM_LIMIT
) -> Iterator[RuzsaVector]:
    """Yield every member exactly once, lexicographic in support indices.

    Raises SizeGuardError up front when the closed-form count exceeds
    `limit`; counting never needs enumeration.
    """
    total = ruzsa_size(spec)
    if total > limit:
        raise SizeGuardError(f"enumeration of {total} vectors exceeds limit {limit}")
    support = spec.dist.support
    idx: list[int] = []
    for i, c in enumerate(spec.counts):
        idx.extend([i] * c)
    k = len(idx)
    while True:
        yield tuple(support[i] for i in idx)
        # next lexicographic multiset permutation
        j = k - 2
        while j >= 0 and idx[j] >= idx[j + 1]:
            j -= 1
        if j < 0:
            return
        m = k - 1
        while idx[m] <= idx[j]:
            m -= 1
        idx[j], idx[m] = idx[m], idx[j]
        idx[j + 1 :] = reversed(idx[j + 1 :])


def verify_commutation(
    f: FiniteMap,
    spec: RuzsaSpec,
    limit: int = DEFAULT_ENUM_LIMIT,
    max_witnesses: int = 5,
) -> CheckReport:
    """Check that mapping coordinatewise commutes with the construction.

    Enumerates the f^k-image of the k-set of X (deduplicated) and,
    independently, the k-set of the pushforward f(X); reports exact set
    equality with discrepancy witnesses.
    """
    image_spec = RuzsaSpec(pushforward(f, spec.dist), spec.k)
    for s in (spec, image_spec):
        total = ruzsa_size(s)
        if total > limit:
            raise SizeGuardError(f"|set| = {total} exceeds limit {limit}")
    images = [f(x) for x in spec.dist.support]
    support = spec.dist.support
    lookup = dict(zip(support, images))
    mapped = {tuple(lookup[x] for x in vec) for vec in ruzsa_enumerate(spec, limit)}
    direct = set(ruzsa_enumerate(image_spec, limit))
    only_mapped = sorted(mapped - direct)[:max_witnesses]
    only_direct = sorted(direct - mapped)[:max_witnesses]
    equal = not only_mapped and not only_direct and len(mapped) == len(direct)
    return CheckReport(
        verdict=HOLDS if equal else VIOLATED,
        lhs=float(len(mapped)),
        rhs=float(len(direct)),
        slack=float(len(direct) - len(mapped)),
        witnesses=tuple(
            {"side": side, "vector": list(v)}
            for side, vs in (("mapped_only", only_mapped), ("direct_only", only_direct))
            for v in vs
        ),
        provenance="exact",
        details={
            "source_size": str(ruzsa_size(spec)),
            "mapped_size": str(len(mapped)),
            "direct_size": str(len(direct)),
            "k": spec.k,
        },
    )


def preimage_lift(f: FiniteMap, spec: RuzsaSpec, y) -> RuzsaVector:
    """Deterministic preimage of y in the k-set of X under f^k.

    Within the index set of each image value (positions in increasing
    order), preimage elements are assigned in contiguous blocks of size
    k*Pr(X=x), blocks ordered by the support ordering of X.
    """
    y = tuple(as_element(v) for v in y)
    image_spec = RuzsaSpec(pushforward(f, spec.dist), spec.k)
    if not image_spec.contains(y):
        raise MembershipError("vector is not in the image k-set")
    positions: dict[Element, list[int]] = {}
    for j, v in enumerate(y):
        positions.setdefault(v, []).append(j)
    result: list[Element | None] = [None] * spec.k
    for x, c in zip(spec.dist.support, spec.counts):
        slots = positions[f(x)]
        for j in slots[:c]:
            result[j] = x
        del slots[:c]
    lifted = tuple(result)  # type: ignore[arg-type]
    if f.map_vector(lifted) != y or not spec.contains(lifted):
        raise MembershipError("lift postcondition failed")  # pragma: no cover
    return lifted


def _log_fraction(value: Fraction, base: float) -> float:
    if base == 2:
        return math.log2(value.numerator) - math.log2(value.denominator)
    return math.log(value.numerator) - math.log(value.denominator)


def type_bound_check(spec: RuzsaSpec) -> CheckReport:
    """Exact sandwich |set| <= prod p_i^(-k p_i) <= (k+1)^(n-1) |set|.

    All comparisons are big-rational; the report carries both ratios so the
    finite-k distance to 2^(kH) is visible.
    """
    size = ruzsa_size(spec)
    t_value = Fraction(1)
    for p, c in zip(spec.dist.probs, spec.counts):
        t_value *= Fraction(p.denominator, p.numerator) ** c
    n = len(spec.dist)
    factor = (spec.k + 1) ** (n - 1)
    lower_ok = size <= t_value
    upper_ok = t_value <= factor * size
    lhs = _log_fraction(Fraction(size), 2)
    rhs = _log_fraction(t_value, 2)
    return CheckReport(
        verdict=HOLDS if (lower_ok and upper_ok) else VIOLATED,
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        provenance="exact",
        details={
            "size": str(size),
            "type_mass_inverse": str(t_value),
            "upper_factor": str(factor),
            "lower_ratio": str(Fraction(t_value, size)),
            "upper_ratio": str(Fraction(factor * size) / t_value),
            "lower_ok": lower_ok,
            "upper_ok": upper_ok,
        },
    )


def convergence_profile(
    dist: RationalDist, k_list, base: float = 2
) -> list[dict]:
    """Per-k rate log|set|/k against H(X), with the (n-1)log(k+1)/k envelope."""
    h = entropy(dist, base=base)
    n = len(dist)
    rows = []
    for k in k_list:
        spec = RuzsaSpec(dist, k)
        size = ruzsa_size(spec)
        log_size = _log_fraction(Fraction(size), base)
        rate = log_size / k
        gap = h - rate
        envelope = (n - 1) * (math.log2(k + 1) if base == 2 else math.log(k + 1)) / k
        rows.append(
            {
                "k": k,
                "rate": rate,
                "entropy": h,
                "gap": gap,
                "envelope": envelope,
                "size": str(size),
            }
        )
    return rows
