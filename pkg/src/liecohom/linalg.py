"""Sparse exact linear algebra: rank, kernel bases and linear solves.

Matrices are row-major: one ``{column: value}`` dict per row, values raw
field scalars (see :mod:`liecohom.fields`).  Over Q each row is scaled to
a primitive integer vector and eliminated fraction-free; over F_p rows are
made monic and eliminated modulo p.  Pivots are always the leading
(smallest) column of a reduced row, so the reduced row echelon form, and
with it every kernel basis and solve result, is independent of row order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import FieldError
from .fields import Field

Row = dict  # column index -> raw scalar


@dataclass
class SparseMatrix:
    field: Field
    nrows: int
    ncols: int
    rows: list = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.rows:
            self.rows = [{} for _ in range(self.nrows)]
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")

    @classmethod
    def from_dense(cls, field: Field, dense: Sequence[Sequence], ncols: int | None = None):
        nrows = len(dense)
        if ncols is None:
            ncols = len(dense[0]) if nrows else 0
        rows = []
        for r in dense:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            vals = {j: field(v) for j, v in enumerate(r)}
            rows.append({j: v for j, v in vals.items() if v != 0})
        return cls(field, nrows, ncols, rows)

    @classmethod
    def identity(cls, field: Field, n: int):
        return cls(field, n, n, [{i: 1} for i in range(n)])

    def to_dense(self) -> list[list]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def columns(self) -> list[dict]:
        """Per-column coordinate lists, row indices increasing."""
        cols = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.field, self.ncols, self.nrows, self.columns())

    def matvec(self, x: Sequence) -> list:
        if len(x) != self.ncols:
            raise ValueError("vector length mismatch")
        F = self.field
        return [F(sum(v * x[j] for j, v in r.items())) for r in self.rows]

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        F = self.field
        rows = []
        for r in self.rows:
            acc: dict = {}
            for k, a in r.items():
                for j, b in other.rows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            rows.append({j: F(v) for j, v in acc.items() if F(v) != 0})
        return SparseMatrix(F, self.nrows, other.ncols, rows)

    def submatrix(self, row_idx: Sequence[int] | None, col_idx: Sequence[int] | None):
        rsel = range(self.nrows) if row_idx is None else row_idx
        if col_idx is None:
            return SparseMatrix(self.field, len(rsel), self.ncols, [dict(self.rows[i]) for i in rsel])
        cmap = {c: k for k, c in enumerate(col_idx)}
        rows = []
        for i in rsel:
            rows.append({cmap[j]: v for j, v in self.rows[i].items() if j in cmap})
        return SparseMatrix(self.field, len(rsel), len(col_idx), rows)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.field, self.nrows, self.ncols, self.rows) == (
            other.field, other.nrows, other.ncols, other.rows)


def hstack(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    if a.nrows != b.nrows:
        raise ValueError("row count mismatch")
    rows = []
    for ra, rb in zip(a.rows, b.rows):
        r = dict(ra)
        r.update({a.ncols + j: v for j, v in rb.items()})
        rows.append(r)
    return SparseMatrix(a.field, a.nrows, a.ncols + b.ncols, rows)


# -- elimination engines ------------------------------------------------


def _content_normalize(row: dict) -> dict:
    g = reduce(math.gcd, row.values(), 0)
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {j: v // g for j, v in row.items()}
    return row


class _IntegerEchelon:
    """Fraction-free elimination of primitive integer rows (used for Q)."""

    def __init__(self):
        self.pivots: dict[int, dict] = {}

    @staticmethod
    def prepare(row: dict) -> dict:
        den = reduce(math.lcm, (Fraction(v).denominator for v in row.values()), 1)
        if den == 1:
            out = {j: int(v) for j, v in row.items() if v != 0}
        else:
            out = {j: int(v * den) for j, v in row.items() if v != 0}
        return _content_normalize(out) if out else out

    def reduce(self, row: dict) -> dict:
        pivots = self.pivots
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                return row
            a, b = row[c], piv[c]
            g = math.gcd(a, b)
            ma, mb = b // g, a // g
            new = {j: ma * v for j, v in row.items()}
            for j, v in piv.items():
                w = new.get(j, 0) - mb * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            row = _content_normalize(new) if new else new
        return row

    def add(self, row: dict) -> int | None:
        row = self.reduce(self.prepare(row))
        if not row:
            return None
        c = min(row)
        self.pivots[c] = row
        return c

    def back_substitute(self) -> None:
        cols = sorted(self.pivots)
        for c in reversed(cols):
            piv = self.pivots[c]
            d = piv[c]
            for c2 in cols:
                if c2 >= c:
                    break
                other = self.pivots[c2]
                a = other.get(c)
                if not a:
                    continue
                g = math.gcd(a, d)
                ma, mb = d // g, a // g
                new = {j: ma * v for j, v in other.items()}
                for j, v in piv.items():
                    w = new.get(j, 0) - mb * v
                    if w:
                        new[j] = w
                    else:
                        new.pop(j, None)
                self.pivots[c2] = _content_normalize(new)

    def value(self, c: int, j: int) -> Fraction:
        """Entry (c, j) of the reduced row echelon form, pivot row ``c``."""
        piv = self.pivots[c]
        v = piv.get(j, 0)
        if v == 0:
            return 0
        q = Fraction(v, piv[c])
        return q.numerator if q.denominator == 1 else q


class _ModularEchelon:
    def __init__(self, p: int):
        self.p = p
        self.pivots: dict[int, dict] = {}

    def prepare(self, row: dict) -> dict:
        p = self.p
        out = {j: v % p for j, v in row.items()}
        return {j: v for j, v in out.items() if v}

    def _monic(self, row: dict) -> dict:
        p = self.p
        inv = pow(row[min(row)], -1, p)
        if inv == 1:
            return row
        return {j: v * inv % p for j, v in row.items()}

    def reduce(self, row: dict) -> dict:
        p, pivots = self.p, self.pivots
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                return row
            a = row[c]
            for j, v in piv.items():
                w = (row.get(j, 0) - a * v) % p
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
        return row

    def add(self, row: dict) -> int | None:
        row = self.reduce(self.prepare(row))
        if not row:
            return None
        row = self._monic(row)
        c = min(row)
        self.pivots[c] = row
        return c

    def back_substitute(self) -> None:
        p = self.p
        cols = sorted(self.pivots)
        for c in reversed(cols):
            piv = self.pivots[c]
            for c2 in cols:
                if c2 >= c:
                    break
                other = self.pivots[c2]
                a = other.get(c)
                if not a:
                    continue
                for j, v in piv.items():
                    w = (other.get(j, 0) - a * v) % p
                    if w:
                        other[j] = w
                    else:
                        other.pop(j, None)

    def value(self, c: int, j: int) -> int:
        return self.pivots[c].get(j, 0)


def _engine(field: Field):
    return _IntegerEchelon() if field.p == 0 else _ModularEchelon(field.p)


def _echelon(m: SparseMatrix, extra: Iterable[dict] | None = None):
    eng = _engine(m.field)
    rows = list(m.rows) if extra is None else list(extra)
    # short rows first keeps fill-in low
    for r in sorted(rows, key=len):
        if r:
            eng.add(dict(r))
    return eng


# -- public operations ----------------------------------------------------


def rank(m: SparseMatrix) -> int:
    """Exact rank."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    # eliminate along the shorter side
    if m.ncols < m.nrows:
        return len(_echelon(m, m.columns()).pivots)
    return len(_echelon(m).pivots)


def kernel_basis(m: SparseMatrix) -> list[list]:
    """Basis of the right null space, one vector per free column.

    Vector ``k`` has a 1 in the ``k``-th free column, zeros in the other
    free columns, and pivot entries read off the reduced echelon form.
    """
    eng = _echelon(m)
    eng.back_substitute()
    F = m.field
    pivots = sorted(eng.pivots)
    pivset = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [0] * m.ncols
        v[f] = 1
        for c in pivots:
            if c > f:
                break
            val = eng.value(c, f)
            if val:
                v[c] = F(-val)
        basis.append(v)
    return basis


INCONSISTENT = None


def solve(m: SparseMatrix, rhs: Sequence) -> list | None:
    """One exact solution of ``m x = rhs`` with free variables zero, or ``None``."""
    if len(rhs) != m.nrows:
        raise ValueError("rhs length mismatch")
    F = m.field
    aug = m.ncols
    rows = []
    for r, b in zip(m.rows, rhs):
        b = F(b)
        row = dict(r)
        if b != 0:
            row[aug] = b
        rows.append(row)
    eng = _echelon(m, rows)
    if aug in eng.pivots:
        return INCONSISTENT
    eng.back_substitute()
    x = [0] * m.ncols
    for c in eng.pivots:
        val = eng.value(c, aug)
        if val:
            x[c] = F(val)
    return x


def in_span(vectors: Sequence[Sequence], target: Sequence, field: Field) -> bool:
    """Whether ``target`` is a linear combination of ``vectors``."""
    n = len(target)
    if not vectors:
        return all(field(t) == 0 for t in target)
    cols = SparseMatrix.from_dense(field, [list(v) for v in vectors], n).transpose()
    return solve(cols, target) is not INCONSISTENT


class IncrementalBasis:
    """Grows a linearly independent set one vector at a time."""

    def __init__(self, field: Field):
        self.field = field
        self._eng = _engine(field)

    def add(self, vector: Sequence | dict) -> bool:
        row = vector if isinstance(vector, dict) else {j: v for j, v in enumerate(vector) if v}
        return self._eng.add(dict(row)) is not None

    @property
    def rank(self) -> int:
        return len(self._eng.pivots)


# -- dense helpers ---------------------------------------------------------


def dense_matmul(a: Sequence[Sequence], b: Sequence[Sequence], field: Field) -> list[list]:
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    return [[field(sum(a[i][t] * b[t][j] for t in range(k))) for j in range(m)] for i in range(n)]


def charpoly(a: Sequence[Sequence], field: Field) -> list:
    """Characteristic polynomial det(xI - a), coefficients low-to-high.

    Berkowitz's division-free recursion, valid in every characteristic.
    """
    def rec(mat):
        n = len(mat)
        if n == 0:
            return [1]
        a11 = mat[0][0]
        row = mat[0][1:]
        col = [mat[i][0] for i in range(1, n)]
        sub = [r[1:] for r in mat[1:]]
        q = rec(sub)
        t = [1, -a11]
        v = col
        for _ in range(2, n + 1):
            t.append(field(-sum(x * y for x, y in zip(row, v))))
            v = [field(sum(sub[i][j] * v[j] for j in range(n - 1))) for i in range(n - 1)]
        return [field(sum(t[i - j] * q[j] for j in range(n) if 0 <= i - j < len(t)))
                for i in range(n + 1)]

    high_to_low = rec([[field(x) for x in r] for r in a])
    return list(reversed(high_to_low))


def determinant(a: Sequence[Sequence], field: Field):
    """Determinant by Gaussian elimination in the field."""
    m = [[field(x) for x in r] for r in a]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        d = m[c][c]
        det = det * d
        inv = field.inv(d)
        for r in range(c + 1, n):
            f = m[r][c]
            if f:
                f = field(f * inv)
                m[r] = [field(x - f * y) for x, y in zip(m[r], m[c])]
    return field(det)


def product_is_zero(a: SparseMatrix, b: SparseMatrix) -> bool:
    """Exact test of ``a @ b == 0``.

    Integer-valued operands whose products cannot overflow go through
    scipy's int64 sparse product; anything else uses exact Python
    arithmetic row by row.
    """
    if a.ncols != b.nrows:
        raise ValueError("shape mismatch")
    F = a.field
    if a.nnz == 0 or b.nnz == 0:
        return True
    fast = _int64_product_is_zero(a, b)
    if fast is not None:
        return fast
    for r in a.rows:
        acc: dict = {}
        for k, x in r.items():
            for j, y in b.rows[k].items():
                acc[j] = acc.get(j, 0) + x * y
        if any(F(v) != 0 for v in acc.values()):
            return False
    return True


def _scaled_ints(m: SparseMatrix):
    den = 1
    for r in m.rows:
        for v in r.values():
            if isinstance(v, Fraction):
                den = math.lcm(den, v.denominator)
    return den


def _int64_product_is_zero(a: SparseMatrix, b: SparseMatrix):
    import numpy as np
    import scipy.sparse as sp

    da, db = _scaled_ints(a), _scaled_ints(b)

    def to_csr(m, den):
        indptr = [0]
        indices, data = [], []
        biggest = 0
        for r in m.rows:
            for j, v in r.items():
                w = int(v * den)
                indices.append(j)
                data.append(w)
                biggest = max(biggest, abs(w))
            indptr.append(len(indices))
        return indptr, indices, data, biggest

    pa, ia, xa, ba = to_csr(a, da)
    pb, ib, xb, bb = to_csr(b, db)
    # worst-case accumulated magnitude of one product entry
    if ba * bb * max(a.ncols, 1) >= 2**62:
        return None
    A = sp.csr_matrix((np.array(xa, dtype=np.int64), np.array(ia, dtype=np.int64),
                       np.array(pa, dtype=np.int64)), shape=(a.nrows, a.ncols))
    B = sp.csr_matrix((np.array(xb, dtype=np.int64), np.array(ib, dtype=np.int64),
                       np.array(pb, dtype=np.int64)), shape=(b.nrows, b.ncols))
    C = (A @ B).tocoo()
    data = C.data
    if a.field.p:
        data = data % a.field.p
    return not np.any(data)
