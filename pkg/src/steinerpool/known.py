"""Explicit designs copied from the literature, checked every time they load.

Relabelling to points 0..v-1:

* ``example1`` / ``example2``: the BIBD(9,3,1) on points 1..9; point i -> i - 1.
* ``table1``: the CRBIBD(21,3,1) is printed over Z_21 already; kept as is,
  rows R_0..R_6 then R'_0..R'_2 form resolution classes 0..9.
* ``kts15``: a Kirkman schoolgirl arrangement on girls A..O, one line per
  day; letter A -> 0, ..., O -> 14. This is the classical solution reproduced
  in standard references (e.g. the Wikipedia article on Kirkman's problem).
"""

from __future__ import annotations

from functools import lru_cache

from .design import Design, Resolution, resolution_class_orbits, resolution_defect, verify_t_design
from .errors import DesignError

EXAMPLE1 = [
    (1, 2, 3), (4, 5, 6), (7, 8, 9), (1, 4, 7), (2, 5, 8), (3, 6, 9),
    (1, 5, 9), (2, 6, 7), (3, 4, 8), (1, 6, 8), (2, 4, 9), (3, 5, 7),
]

EXAMPLE2_ROWS = [
    [(1, 2, 3), (4, 5, 6), (7, 8, 9)],
    [(1, 4, 7), (2, 5, 8), (3, 6, 9)],
    [(1, 5, 9), (2, 6, 7), (3, 4, 8)],
    [(1, 6, 8), (2, 4, 9), (3, 5, 7)],
]

TABLE1_ROWS = [
    [(1, 4, 16), (8, 11, 2), (15, 18, 9), (19, 20, 3), (5, 6, 10), (12, 13, 17), (0, 7, 14)],
    [(2, 5, 17), (9, 12, 3), (16, 19, 10), (20, 0, 4), (6, 7, 11), (13, 14, 18), (1, 8, 15)],
    [(3, 6, 18), (10, 13, 4), (17, 20, 11), (0, 1, 5), (7, 8, 12), (14, 15, 19), (2, 9, 16)],
    [(4, 7, 19), (11, 14, 5), (18, 0, 12), (1, 2, 6), (8, 9, 13), (15, 16, 20), (3, 10, 17)],
    [(5, 8, 20), (12, 15, 6), (19, 1, 13), (2, 3, 7), (9, 10, 14), (16, 17, 0), (4, 11, 18)],
    [(6, 9, 0), (13, 16, 7), (20, 2, 14), (3, 4, 8), (10, 11, 15), (17, 18, 1), (5, 12, 19)],
    [(7, 10, 1), (14, 17, 8), (0, 3, 15), (4, 5, 9), (11, 12, 16), (18, 19, 2), (6, 13, 20)],
    [(1, 11, 9), (4, 14, 12), (7, 17, 15), (10, 20, 18), (13, 2, 0), (16, 5, 3), (19, 8, 6)],
    [(2, 12, 10), (5, 15, 13), (8, 18, 16), (11, 0, 19), (14, 3, 1), (17, 6, 4), (20, 9, 7)],
    [(3, 13, 11), (6, 16, 14), (9, 19, 17), (12, 1, 20), (15, 4, 2), (18, 7, 5), (0, 10, 8)],
]

# base blocks as they appear in the rows of TABLE1_ROWS (R_0 and R'_0)
TABLE1_BASE_BLOCKS = [(1, 4, 16), (19, 20, 3), (1, 11, 9)]

KTS15_DAYS = [
    "ABJ CEM FKL HIN DGO",
    "ACH DEI FGM JLN BKO",
    "ADL BHM GIK CFN EJO",
    "AEG BIL CJK DMN FHO",
    "AFI BCD GHJ EKN LMO",
    "AKM DFJ EHL BGN CIO",
    "BEF CGL DHK IJM ANO",
]


def _from_rows(v: int, rows, offset: int) -> tuple[Design, Resolution]:
    blocks = [tuple(x - offset for x in blk) for row in rows for blk in row]
    design = Design.normalize(v, blocks)
    classes = [sorted(design.index([x - offset for x in blk]) for blk in row) for row in rows]
    return design, Resolution.of(classes)


def _kts15_rows():
    return [[tuple(ord(c) - ord("A") for c in trip) for trip in day.split()] for day in KTS15_DAYS]


@lru_cache(maxsize=None)
def known_design(name: str) -> tuple[Design, Resolution | None]:
    """One of ``example1``, ``example2``, ``table1``, ``kts15``, validated."""
    if name == "example1":
        design, res = Design.normalize(9, [tuple(x - 1 for x in b) for b in EXAMPLE1]), None
    elif name == "example2":
        design, res = _from_rows(9, EXAMPLE2_ROWS, 1)
    elif name == "table1":
        design, res = _from_rows(21, TABLE1_ROWS, 0)
    elif name == "kts15":
        design, res = _from_rows(15, _kts15_rows(), 0)
    else:
        raise KeyError(f"unknown design {name!r}; choose from {', '.join(KNOWN)}")
    prof = verify_t_design(design, 2)
    if prof.lam != 1:
        raise DesignError(f"embedded design {name} has lambda {prof.lam}")
    if res is not None:
        defect = resolution_defect(design, res)
        if defect:
            raise DesignError(f"embedded resolution of {name} is broken: {defect}")
    if name == "table1" and resolution_class_orbits(design, res) is None:
        raise DesignError("embedded table1 is not cyclically resolvable")
    return design, res


KNOWN = ("example1", "example2", "table1", "kts15")
