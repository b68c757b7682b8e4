"""Dense exact linear algebra over any field-like scalar type.

Matrices are lists of lists whose entries support +, -, *, /, bool and
==; both Rat and FieldScalar qualify.  Sizes here are desk scale, so
plain fraction-free-less Gaussian elimination is fine.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

__all__ = ["rank", "kernel_basis", "solve", "row_reduce", "SpanBasis"]


def row_reduce(mat: List[list]):
    """In-place reduced row echelon form; returns the pivot column list."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if mat[i][c]:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = mat[r][c]
        mat[r] = [x / inv for x in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def rank(mat: Sequence[Sequence]) -> int:
    work = [list(row) for row in mat]
    if not work:
        return 0
    return len(row_reduce(work))


def kernel_basis(mat: Sequence[Sequence], ncols: int, one, zero) -> List[list]:
    """Basis of {x : mat @ x = 0}; mat given as rows of length ncols."""
    work = [list(row) for row in mat]
    if not work:
        return [[one if j == i else zero for j in range(ncols)] for i in range(ncols)]
    pivots = row_reduce(work)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][fc]
        basis.append(vec)
    return basis


def solve(mat: Sequence[Sequence], rhs: Sequence) -> Optional[list]:
    """One solution of mat @ x = rhs, or None if inconsistent."""
    rows = len(mat)
    if rows == 0:
        return []
    cols = len(mat[0])
    work = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    pivots = row_reduce(work)
    if cols in pivots:
        return None  # pivot in the augmented column
    zero = rhs[0] - rhs[0] if rows else 0
    x = [zero] * cols
    for r, pc in enumerate(pivots):
        x[pc] = work[r][cols]
    return x


class SpanBasis:
    """Incrementally row-reduced span of sparse vectors (dict key -> scalar).

    Used for exact subspace arithmetic: feeding a vector reduces it
    against the current basis; a nonzero remainder is normalised and
    kept.  Membership testing is reduction to zero.
    """

    def __init__(self):
        self.rows = {}  # pivot key -> dict vector with that pivot scaled to 1
        self.order = []  # insertion order of pivot keys

    def __len__(self):
        return len(self.rows)

    def _reduce(self, vec: dict) -> dict:
        vec = dict(vec)
        for key in list(vec):
            if not vec[key]:
                del vec[key]
        changed = True
        while changed:
            changed = False
            for key in list(vec):
                row = self.rows.get(key)
                if row is not None and vec.get(key):
                    f = vec[key]
                    for k2, v2 in row.items():
                        new = vec.get(k2, 0) - f * v2
                        if new:
                            vec[k2] = new
                        else:
                            vec.pop(k2, None)
                    changed = True
        return vec

    def add(self, vec: dict) -> bool:
        """Add a vector to the span; True if it enlarged the space."""
        rem = self._reduce(vec)
        if not rem:
            return False
        pivot = min(rem)  # deterministic pivot choice
        inv = rem[pivot]
        row = {k: v / inv for k, v in rem.items()}
        # back-substitute into existing rows to keep reduction canonical
        for pk in self.order:
            prow = self.rows[pk]
            if pivot in prow:
                f = prow[pivot]
                for k2, v2 in row.items():
                    new = prow.get(k2, 0) - f * v2
                    if new:
                        prow[k2] = new
                    else:
                        prow.pop(k2, None)
        self.rows[pivot] = row
        self.order.append(pivot)
        return True

    def contains(self, vec: dict) -> bool:
        return not self._reduce(vec)
