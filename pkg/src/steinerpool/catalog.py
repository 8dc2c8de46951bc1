"""Shipped existence tables: radical difference family primes and RBIBD gaps."""

from __future__ import annotations

import hashlib
from functools import lru_cache
from importlib import resources

from .errors import FormatError

CATALOG_FILE = "catalog.txt"


def catalog_text() -> str:
    return resources.files("steinerpool").joinpath("data", CATALOG_FILE).read_text(encoding="ascii")


def catalog_sha256() -> str:
    return hashlib.sha256(catalog_text().encode("ascii")).hexdigest()


def parse_catalog(text: str) -> dict[tuple[str, int], list[int]]:
    lines = text.split("\n")
    if lines[-1] != "":
        raise FormatError("catalog must end with a newline")
    lines = lines[:-1]
    if len(lines) % 2:
        raise FormatError("catalog sections come in header/values pairs")
    out = {}
    for head, body in zip(lines[::2], lines[1::2]):
        parts = head.split()
        if len(parts) != 3 or parts[0] != "catalog" or not parts[2].startswith("k="):
            raise FormatError(f"bad catalog header {head!r}")
        try:
            out[(parts[1], int(parts[2][2:]))] = [int(x) for x in body.split()]
        except ValueError:
            raise FormatError(f"non-integer entry under {head!r}") from None
    return out


@lru_cache(maxsize=None)
def _catalog() -> dict[tuple[str, int], list[int]]:
    return parse_catalog(catalog_text())


def catalog_rdf_primes(k: int) -> list[int]:
    try:
        return list(_catalog()[("rdf", k)])
    except KeyError:
        raise KeyError(f"no RDF table for k={k}; tables exist for k = 5, 7, 9") from None


def catalog_rbibd_exceptions(k: int) -> list[int]:
    try:
        return list(_catalog()[("rbibd-exceptions", k)])
    except KeyError:
        raise KeyError(f"no RBIBD exception table for k={k}; tables exist for k = 5, 8") from None


def rbibd_claimed(v: int, k: int) -> bool:
    """Whether the tabulated existence series claims an RBIBD(v,k,1) (k in 5, 8)."""
    if v % (k * (k - 1)) != k % (k * (k - 1)):
        return False
    return v not in catalog_rbibd_exceptions(k)
