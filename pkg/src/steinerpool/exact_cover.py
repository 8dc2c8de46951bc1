"""Algorithm X over a dict-of-sets incidence structure.

Columns are primary (each must be covered exactly once). Branching picks the
column with the fewest remaining candidate rows, ties broken by the column's
position in the order it was first seen, and candidate rows are tried in the
order they were given. Together this makes every search reproducible.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import SearchBudgetExceeded

DEFAULT_BUDGET = 10**7


class ExactCover:
    """An exact cover instance: ``rows`` maps a row key to the columns it covers."""

    def __init__(
        self,
        columns: Iterable[Hashable],
        rows: Mapping[Hashable, Sequence[Hashable]],
        budget: int | None = DEFAULT_BUDGET,
    ):
        self.budget = budget
        self.nodes = 0
        self._col_index: dict[Hashable, int] = {}
        for c in columns:
            self._col_index.setdefault(c, len(self._col_index))
        self._row_keys = list(rows)
        self._rows: list[tuple[int, ...]] = []
        ncols = len(self._col_index)
        self._cols: list[set[int]] = [set() for _ in range(ncols)]
        for ri, key in enumerate(self._row_keys):
            cols = []
            for c in rows[key]:
                if c not in self._col_index:
                    raise KeyError(f"row {key!r} covers unknown column {c!r}")
                cols.append(self._col_index[c])
            self._rows.append(tuple(cols))
            for ci in cols:
                self._cols[ci].add(ri)
        self._live = set(range(ncols))

    def _select(self, ri: int) -> list[tuple[int, set[int]]]:
        saved = []
        for ci in self._rows[ri]:
            for rj in self._cols[ci]:
                for ck in self._rows[rj]:
                    if ck != ci:
                        self._cols[ck].discard(rj)
            self._live.discard(ci)
            saved.append((ci, self._cols[ci]))
        return saved

    def _deselect(self, ri: int, saved: list[tuple[int, set[int]]]) -> None:
        for ci, rows in reversed(saved):
            self._live.add(ci)
            for rj in rows:
                for ck in self._rows[rj]:
                    if ck != ci:
                        self._cols[ck].add(rj)

    def solutions(self) -> Iterator[list[Hashable]]:
        """Yield solutions as lists of row keys, in deterministic order.

        Raises SearchBudgetExceeded once more than ``budget`` nodes are visited.
        """
        partial: list[int] = []
        yield from self._search(partial)

    def _search(self, partial: list[int]) -> Iterator[list[Hashable]]:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise SearchBudgetExceeded(self.budget)
        if not self._live:
            yield [self._row_keys[ri] for ri in partial]
            return
        col = min(self._live, key=lambda ci: (len(self._cols[ci]), ci))
        for ri in sorted(self._cols[col]):
            saved = self._select(ri)
            partial.append(ri)
            yield from self._search(partial)
            partial.pop()
            self._deselect(ri, saved)

    def first(self) -> list[Hashable] | None:
        """Return the first solution, or None when the search space is exhausted."""
        for sol in self.solutions():
            return sol
        return None


def exact_cover(
    columns: Iterable[Hashable],
    rows: Mapping[Hashable, Sequence[Hashable]],
    budget: int | None = DEFAULT_BUDGET,
) -> list[Hashable] | None:
    return ExactCover(columns, rows, budget).first()
