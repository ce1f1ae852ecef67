"""Knuth's dancing links for exact cover."""

from __future__ import annotations

from typing import Iterator, Sequence


class ResourceBoundExceeded(RuntimeError):
    pass


class DancingLinks:
    """Exact cover of columns 0..m-1 by a subset of ``rows``.

    Column choice uses the minimum remaining count, ties broken by index, so
    the search order is deterministic.
    """

    def __init__(self, n_columns: int, rows: Sequence[Sequence[int]]):
        self.n_columns = n_columns
        self.rows = [tuple(sorted(set(r))) for r in rows]
        root = 0
        size = n_columns + 1
        L = list(range(-1, n_columns)) ; L[0] = n_columns
        R = list(range(1, n_columns + 2)); R[n_columns] = 0
        U = list(range(size))
        D = list(range(size))
        C = list(range(size))
        row_of = [-1] * size
        count = [0] * size
        for r, cols in enumerate(self.rows):
            first = -1
            for c in cols:
                if not 0 <= c < n_columns:
                    raise ValueError(f"column {c} out of range")
                col = c + 1
                node = len(U)
                U.append(U[col]); D.append(col); C.append(col); row_of.append(r)
                D[U[col]] = node
                U[col] = node
                count[col] += 1
                if first < 0:
                    L.append(node); R.append(node)
                    first = node
                else:
                    L.append(L[first]); R.append(first)
                    R[L[first]] = node
                    L[first] = node
        self._root = root
        self.L, self.R, self.U, self.D, self.C = L, R, U, D, C
        self.row_of, self.count = row_of, count
        self.nodes_visited = 0
        self._used = False

    def _cover(self, col: int) -> None:
        L, R, U, D, C, count = self.L, self.R, self.U, self.D, self.C, self.count
        R[L[col]] = R[col]
        L[R[col]] = L[col]
        i = D[col]
        while i != col:
            j = R[i]
            while j != i:
                D[U[j]] = D[j]
                U[D[j]] = U[j]
                count[C[j]] -= 1
                j = R[j]
            i = D[i]

    def _uncover(self, col: int) -> None:
        L, R, U, D, C, count = self.L, self.R, self.U, self.D, self.C, self.count
        i = U[col]
        while i != col:
            j = L[i]
            while j != i:
                count[C[j]] += 1
                D[U[j]] = j
                U[D[j]] = j
                j = L[j]
            i = U[i]
        R[L[col]] = col
        L[R[col]] = col

    def solutions(self, limit: int | None = None, max_nodes: int | None = None,
                  first_rows: Sequence[int] | None = None) -> Iterator[list[int]]:
        """Yield each exact cover as a sorted list of row indices.

        ``first_rows`` restricts the branch taken at the top level, which is
        how the search is split among workers. Each instance runs one search.
        """
        if self._used:
            raise RuntimeError("a DancingLinks instance runs a single search")
        self._used = True
        found = 0
        partial: list[int] = []
        L, R, D, C, count, row_of = self.L, self.R, self.D, self.C, self.count, self.row_of
        root = self._root
        allowed_first = set(first_rows) if first_rows is not None else None

        def choose() -> int:
            best, best_count = -1, None
            c = R[root]
            while c != root:
                if best_count is None or count[c] < best_count:
                    best, best_count = c, count[c]
                    if best_count == 0:
                        break
                c = R[c]
            return best

        def search(depth: int) -> Iterator[list[int]]:
            nonlocal found
            if R[root] == root:
                yield sorted(partial)
                return
            col = choose()
            if count[col] == 0:
                return
            self._cover(col)
            r = D[col]
            while r != col:
                if depth == 0 and allowed_first is not None and row_of[r] not in allowed_first:
                    r = D[r]
                    continue
                self.nodes_visited += 1
                if max_nodes is not None and self.nodes_visited > max_nodes:
                    self._uncover(col)
                    raise ResourceBoundExceeded(f"search exceeded {max_nodes} nodes")
                partial.append(row_of[r])
                j = R[r]
                while j != r:
                    self._cover(C[j])
                    j = R[j]
                yield from search(depth + 1)
                j = L[r]
                while j != r:
                    self._uncover(C[j])
                    j = L[j]
                partial.pop()
                if limit is not None and found >= limit:
                    break
                r = D[r]
            self._uncover(col)

        for sol in search(0):
            found += 1
            yield sol
            if limit is not None and found >= limit:
                return

    def top_level_rows(self) -> list[int]:
        """Rows containing the column that the search branches on first."""
        c = None
        best = None
        col = self.R[self._root]
        while col != self._root:
            if best is None or self.count[col] < best:
                c, best = col, self.count[col]
            col = self.R[col]
        if c is None:
            return []
        out = []
        i = self.D[c]
        while i != c:
            out.append(self.row_of[i])
            i = self.D[i]
        return out
