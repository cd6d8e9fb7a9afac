"""Exact tau-function oracles and the integer sequences of doubly periodic tau functions.

Thin wrappers over the C++ core: sequence terms come back as Python ints
(or Fractions when a run leaves the integers), everything else as plain dicts.
"""

import json
from fractions import Fraction

from ._core import (
    DegreeError,
    Error,
    LatticeError,
    ParseError,
    QueryTooShort,
    RankError,
    TorsionError,
    UnsolvableError,
    WindowError,
    kp_residual_of_schur,
    schur,
)
from . import _core

__all__ = [
    "DegreeError", "Error", "LatticeError", "ParseError", "QueryTooShort", "RankError", "TorsionError",
    "UnsolvableError", "WindowError", "derive", "derive_polygon", "generate", "kp_residual_of_schur", "match",
    "maya_from_young", "scan", "schur", "verify", "young_from_maya",
]


def _number(text):
    q = Fraction(text)
    return q.numerator if q.denominator == 1 else q


def derive(rows):
    """Recurrence of the sublattice spanned by two rows of A_3, e.g. [[5,-2,-2,-1],[1,1,-1,-1]]."""
    return json.loads(_core.derive_json([list(r) for r in rows]))


def derive_polygon(vertices):
    """Recurrence of a strictly convex counterclockwise lattice quadrilateral."""
    return json.loads(_core.derive_polygon_json([tuple(v) for v in vertices]))


def generate(recurrence, terms, init=None):
    """Iterate a recurrence dict ({"pairs", "signs"}) or a derive() result."""
    rec = recurrence.get("recurrence", recurrence)
    seed = None if init is None else [str(Fraction(x)) for x in init]
    run = json.loads(_core.generate_json(json.dumps(rec), terms, seed))
    run["terms"] = [_number(t) for t in run["terms"]]
    return run


def maya_from_young(parts, charge=0):
    return json.loads(_core.maya_from_young_json(list(parts), charge))


def young_from_maya(maya):
    parts, charge = _core.young_from_maya_json(json.dumps(maya))
    return list(parts), charge


def verify(check, seed=0, trials=-1, cutoff=-1, max_weight=6, dim=-1):
    """Run one identity oracle; negative arguments take the per-check default."""
    return json.loads(_core.verify_json(check, seed, trials, cutoff, max_weight, dim))


def match(terms, db_path, min_match=10, trim_leading_ones=True, allow_offset=True):
    """[(A-number, position), ...] in a local OEIS stripped file."""
    return _core.match([str(int(t)) for t in terms], str(db_path), min_match, trim_leading_ones, allow_offset)


def scan(bound=5, terms=24, oeis_path="", workers=0):
    """(records, summary) of a polygon scan."""
    lines, summary = _core.scan_json(bound, terms, str(oeis_path), workers)
    return [json.loads(line) for line in lines.splitlines()], json.loads(summary)
