"""JSON interchange for every value the CLI reads or writes.

Rationals travel as decimal-free strings ("1/6", "2"); big integers as
strings; elements as arrays of integer coordinates; index sets as
1-based sorted arrays. Parsing then re-serializing a canonical document
reproduces it modulo whitespace.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .covers import CoverSpec
from .checkers import InequalitySpec
from .dist import FiniteMap, RationalDist, as_element, as_fraction
from .errors import SchemaError
from .projections import IndexSet, PointSet


def _expect(doc: dict, key: str, kind: str):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"{kind} document needs field {key!r}")
    return doc[key]


def parse_rational(text) -> Fraction:
    if isinstance(text, str) and ("." in text or "e" in text or "E" in text):
        raise SchemaError(f"rationals must be decimal-free 'p/q' strings: {text!r}")
    return as_fraction(text)


def format_rational(value: Fraction) -> str:
    return str(value)


def dist_from_json(doc: dict) -> RationalDist:
    support = _expect(doc, "support", "distribution")
    probs = _expect(doc, "probs", "distribution")
    return RationalDist(
        [as_element(x) for x in support], [parse_rational(p) for p in probs]
    )


def dist_to_json(dist: RationalDist) -> dict:
    return {
        "support": [list(x) for x in dist.support],
        "probs": [format_rational(p) for p in dist.probs],
    }


def map_from_json(doc: dict) -> FiniteMap:
    table = _expect(doc, "table", "map")
    pairs = []
    for entry in table:
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise SchemaError(f"map table entries are [key, value] pairs: {entry!r}")
        pairs.append((as_element(entry[0]), as_element(entry[1])))
    return FiniteMap(pairs)


def map_to_json(f: FiniteMap) -> dict:
    return {
        "table": [[list(k), list(v)] for k, v in sorted(f.table.items())]
    }


def pointset_from_json(doc: dict) -> PointSet:
    dimension = _expect(doc, "dimension", "point set")
    points = _expect(doc, "points", "point set")
    return PointSet(dimension, [as_element(p) for p in points])


def pointset_to_json(A: PointSet) -> dict:
    return {
        "dimension": A.dimension,
        "points": [list(p) for p in A.sorted_points()],
    }


def indexset_from_json(doc) -> IndexSet:
    if not isinstance(doc, (list, tuple)):
        raise SchemaError(f"index sets are 1-based arrays: {doc!r}")
    return IndexSet(doc)


def cover_from_json(doc: dict) -> CoverSpec:
    n = _expect(doc, "n", "cover")
    members = [indexset_from_json(m) for m in _expect(doc, "members", "cover")]
    weights = doc.get("weights")
    if weights is not None:
        weights = [parse_rational(w) for w in weights]
    return CoverSpec(n, members, weights)


def cover_to_json(cover: CoverSpec) -> dict:
    doc = {
        "n": cover.n,
        "members": [list(m.indices) for m in cover.members],
    }
    if cover.weights is not None:
        doc["weights"] = [format_rational(w) for w in cover.weights]
    return doc


def ineq_spec_from_json(doc: dict) -> InequalitySpec:
    lhs = map_from_json(_expect(doc, "lhs_map", "inequality spec"))
    rhs = [map_from_json(m) for m in _expect(doc, "rhs_maps", "inequality spec")]
    coeffs = [parse_rational(c) for c in _expect(doc, "coefficients", "inequality spec")]
    return InequalitySpec(lhs, rhs, coeffs)


def ineq_spec_to_json(spec: InequalitySpec) -> dict:
    return {
        "lhs_map": map_to_json(spec.lhs_map),
        "rhs_maps": [map_to_json(m) for m in spec.rhs_maps],
        "coefficients": [format_rational(c) for c in spec.coefficients],
    }


def load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError as exc:
        raise SchemaError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)
