"""Exact Gaussian elimination over any field with Python operators.

Entries may be :class:`~ncline.field_tower.FieldElement` values or rationals.
Sparse vectors are ``dict`` objects mapping a column index to a nonzero
entry.  Pivots are always chosen as the lowest-index nonzero column.
"""

from __future__ import annotations

from flint import fmpq


def _inverse(x):
    return fmpq(1, x) if isinstance(x, int) else 1 / x


class EchelonBasis:
    """Incrementally maintained reduced row echelon form of a span.

    Every stored row has entry 1 at its pivot and zero at every other pivot,
    so reducing a vector needs a single pass over its pivot columns.
    """

    def __init__(self):
        self.rows = {}
        self._column_rows = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def reduce(self, vector):
        """Residual of ``vector`` modulo the span; supported off the pivots."""
        v = dict(vector)
        for col in [c for c in v if c in self.rows]:
            coeff = v.get(col)
            if not coeff:
                continue
            for c, x in self.rows[col].items():
                y = v.get(c)
                y = -(coeff * x) if y is None else y - coeff * x
                if y:
                    v[c] = y
                else:
                    v.pop(c, None)
        return v

    def contains(self, vector):
        return not self.reduce(vector)

    def add(self, vector):
        """Insert a vector; returns ``True`` when the rank grows."""
        v = self.reduce(vector)
        if not v:
            return False
        pivot = min(v)
        inv = _inverse(v[pivot])
        row = {c: x * inv for c, x in v.items()}
        for p in list(self._column_rows.get(pivot, ())):
            other = self.rows[p]
            coeff = other.pop(pivot)
            self._column_rows[pivot].discard(p)
            for c, x in row.items():
                if c == pivot:
                    continue
                y = other.get(c)
                y = -(coeff * x) if y is None else y - coeff * x
                if y:
                    if c not in other:
                        self._column_rows.setdefault(c, set()).add(p)
                    other[c] = y
                elif c in other:
                    del other[c]
                    self._column_rows[c].discard(p)
        self._column_rows.pop(pivot, None)
        self.rows[pivot] = row
        for c in row:
            if c != pivot:
                self._column_rows.setdefault(c, set()).add(pivot)
        return True

    def extend(self, vectors):
        for v in vectors:
            self.add(v)
        return self


def span_rank(vectors):
    basis = EchelonBasis()
    basis.extend(vectors)
    return basis.rank


def dense_to_sparse(values):
    return {k: x for k, x in enumerate(values) if x}


def solve(columns, target):
    """Coefficients ``c`` with ``sum(c[k] * columns[k]) == target``, or ``None``.

    ``columns`` and ``target`` are sparse vectors.  When the columns are
    dependent the free coefficients are set to zero.
    """
    tag_offset = 1 + max([max(v) for v in columns if v] + [max(target) if target else 0] + [0])
    basis = EchelonBasis()
    for k, col in enumerate(columns):
        aug = dict(col)
        aug[tag_offset + k] = 1
        basis.add(aug)
    residual = basis.reduce(target)
    if any(c < tag_offset for c in residual):
        return None
    # residual = target - sum(coeff_k * col_k) restricted to tags with sign flip
    coeffs = [0] * len(columns)
    for c, x in residual.items():
        coeffs[c - tag_offset] = -x
    return coeffs


class SquareSolver:
    """Precomputed inverse of a square nonsingular matrix given by columns."""

    def __init__(self, columns, size):
        basis = EchelonBasis()
        for k, col in enumerate(columns):
            aug = dict(col)
            aug[size + k] = 1
            basis.add(aug)
        if basis.rank != size or any(p >= size for p in basis.rows):
            raise ArithmeticError("matrix is singular")
        self.size = size
        self._rows = {p: {c - size: x for c, x in row.items() if c >= size} for p, row in basis.rows.items()}

    def solve(self, target):
        """Coefficients as a dense list (zeros as integer 0)."""
        out = [0] * self.size
        for p, x in target.items():
            for k, y in self._rows[p].items():
                out[k] = out[k] + x * y
        return out
