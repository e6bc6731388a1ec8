"""Dense exact matrices and the elimination primitives built on them."""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import FieldMismatch, ShapeMismatch, Singular
from .field import Field, Scalar


class Matrix:
    """Immutable dense matrix over a single exact field.

    Entries are raw field values (``Fraction`` over ``QQ``, ``int`` residues
    over ``GF(p)``); indexing with ``M[i, j]`` returns the raw value and
    :meth:`scalar` returns a :class:`~gdinverse.field.Scalar`.
    """

    __slots__ = ("field", "nrows", "ncols", "_rows", "_hash")

    def __init__(self, field: Field, rows: Iterable[Iterable], ncols: int | None = None):
        conv = field.convert
        data = tuple(tuple(conv(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ShapeMismatch("ragged rows")
        self.field = field
        self.nrows = len(data)
        self.ncols = ncols
        self._rows = data
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, rows, ncols: int) -> Matrix:
        # Trusted constructor: rows are already tuples of canonical raw values.
        m = object.__new__(cls)
        m.field = field
        m.nrows = len(rows)
        m.ncols = ncols
        m._rows = rows
        m._hash = None
        return m

    # -- constructors ---------------------------------------------------
    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int | None = None) -> Matrix:
        ncols = nrows if ncols is None else ncols
        z = field.zero
        return cls._raw(field, tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls._raw(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Matrix], nrows: int | None = None) -> Matrix:
        """Concatenate column vectors (n x 1 matrices) side by side."""
        if not columns:
            if nrows is None:
                raise ShapeMismatch("empty column list needs an explicit row count")
            return cls._raw(field, tuple(() for _ in range(nrows)), 0)
        return hstack(columns)

    @classmethod
    def column(cls, field: Field, values: Sequence) -> Matrix:
        return cls(field, [[v] for v in values], 1)

    # -- access ---------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def scalar(self, i: int, j: int) -> Scalar:
        return Scalar(self.field, self._rows[i][j])

    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> Matrix:
        return Matrix._raw(self.field, tuple((r[j],) for r in self._rows), 1)

    def columns(self) -> list[Matrix]:
        return [self.col(j) for j in range(self.ncols)]

    def entries(self) -> tuple:
        """Row-major flat tuple of raw values."""
        return tuple(x for r in self._rows for x in r)

    def submatrix(self, rows: Sequence[int] | range, cols: Sequence[int] | range) -> Matrix:
        cols = list(cols)
        return Matrix._raw(self.field, tuple(tuple(self._rows[i][j] for j in cols) for i in rows), len(cols))

    def is_zero(self) -> bool:
        return not any(x for r in self._rows for x in r)

    # -- arithmetic -----------------------------------------------------
    def _check_field(self, other: Matrix):
        if other.field is not self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __matmul__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        dot = self.field.dot
        cols = list(zip(*other._rows)) if other.nrows else [()] * other.ncols
        rows = tuple(tuple(dot(r, c) for c in cols) for r in self._rows)
        return Matrix._raw(self.field, rows, other.ncols)

    def _elementwise(self, other: Matrix, op) -> Matrix:
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        rows = tuple(tuple(map(op, a, b)) for a, b in zip(self._rows, other._rows))
        return Matrix._raw(self.field, rows, self.ncols)

    def __add__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._elementwise(other, self.field.add)

    def __sub__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._elementwise(other, self.field.sub)

    def __neg__(self) -> Matrix:
        neg = self.field.neg
        return Matrix._raw(self.field, tuple(tuple(map(neg, r)) for r in self._rows), self.ncols)

    def scaled(self, c) -> Matrix:
        c = self.field.convert(c)
        return Matrix._raw(self.field, tuple(tuple(self.field.scale(c, r)) for r in self._rows), self.ncols)

    def __pow__(self, k: int) -> Matrix:
        if not self.is_square:
            raise ShapeMismatch("power of a non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    @property
    def T(self) -> Matrix:
        return Matrix._raw(self.field, tuple(zip(*self._rows)) if self.nrows else tuple(() for _ in range(self.ncols)), self.nrows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field is other.field and self.ncols == other.ncols and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((repr(self.field), self.ncols, self._rows))
        return self._hash

    def __repr__(self):
        fmt = self.field.format
        body = "; ".join(" ".join(fmt(x) for x in r) for r in self._rows)
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols}, [{body}])"


def hstack(mats: Sequence[Matrix]) -> Matrix:
    field = mats[0].field
    n = mats[0].nrows
    for m in mats:
        if m.field is not field:
            raise FieldMismatch("hstack over mixed fields")
        if m.nrows != n:
            raise ShapeMismatch("hstack row counts differ")
    rows = tuple(tuple(x for m in mats for x in m._rows[i]) for i in range(n))
    return Matrix._raw(field, rows, sum(m.ncols for m in mats))


def block_diag(field: Field, *blocks: Matrix) -> Matrix:
    n = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    z = field.zero
    rows = []
    col0 = 0
    for b in blocks:
        if b.field is not field:
            raise FieldMismatch("block_diag over mixed fields")
        for r in b._rows:
            rows.append((z,) * col0 + r + (z,) * (ncols - col0 - b.ncols))
        col0 += b.ncols
    assert len(rows) == n
    return Matrix._raw(field, tuple(rows), ncols)


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------


def _reduce(field: Field, rows: list[list], track: list[list] | None = None) -> list[int]:
    """In-place Gauss-Jordan reduction to RREF; returns pivot columns.

    Pivot choice is the first nonzero entry scanning downward.  When ``track``
    is given the same row operations are applied to it.
    """
    inv = field.inv
    combine = field.combine
    scale = field.scale
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
            if track is not None:
                track[p], track[r] = track[r], track[p]
        f = inv(rows[r][c])
        rows[r] = scale(f, rows[r])
        if track is not None:
            track[r] = scale(f, track[r])
        for i in range(nrows):
            if i != r and rows[i][c]:
                g = rows[i][c]
                rows[i] = combine(rows[i], g, rows[r])
                if track is not None:
                    track[i] = combine(track[i], g, track[r])
        pivots.append(c)
        r += 1
    return pivots


def rref(M: Matrix) -> tuple[Matrix, tuple[int, ...], Matrix]:
    """Reduced row echelon form ``R``, pivot columns and ``T`` with ``T @ M == R``."""
    f = M.field
    rows = [list(r) for r in M.rows()]
    track = [list(r) for r in Matrix.identity(f, M.nrows).rows()]
    pivots = _reduce(f, rows, track)
    R = Matrix._raw(f, tuple(map(tuple, rows)), M.ncols)
    T = Matrix._raw(f, tuple(map(tuple, track)), M.nrows)
    return R, tuple(pivots), T


def _pivots(M: Matrix) -> tuple[list[list], list[int]]:
    rows = [list(r) for r in M.rows()]
    return rows, _reduce(M.field, rows)


def rank(M: Matrix) -> int:
    return len(_pivots(M)[1])


def kernel_basis(M: Matrix) -> list[Matrix]:
    """Basis of ``{v : M v = 0}`` from the free columns of the RREF.

    Vector ``k`` has a 1 in the ``k``-th free column, zeros in the other free
    columns; ordered by free-column index.
    """
    f = M.field
    rows, pivots = _pivots(M)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivot_set:
            continue
        v = [f.zero] * M.ncols
        v[free] = f.one
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(rows[i][free])
        basis.append(Matrix._raw(f, tuple((x,) for x in v), 1))
    return basis


def image_basis(M: Matrix) -> list[Matrix]:
    """The columns of ``M`` at the RREF pivot positions."""
    _, pivots = _pivots(M)
    return [M.col(c) for c in pivots]


def inverse(M: Matrix) -> Matrix:
    if not M.is_square:
        raise ShapeMismatch(f"inverse of non-square {M.shape} matrix")
    R, pivots, T = rref(M)
    if len(pivots) != M.nrows:
        raise Singular(f"matrix has rank {len(pivots)} < {M.nrows}")
    return T


def solve(B: Matrix, Y: Matrix) -> Matrix:
    """Unique ``X`` with ``B @ X == Y`` for ``B`` of full column rank.

    Raises :class:`Singular` if ``B`` has dependent columns and
    :class:`ShapeMismatch` if some column of ``Y`` is outside the span of ``B``.
    """
    if B.nrows != Y.nrows:
        raise ShapeMismatch(f"{B.shape} vs {Y.shape}")
    f = B.field
    k = B.ncols
    aug = [list(a) + list(b) for a, b in zip(B.rows(), Y.rows())]
    pivots = _reduce(f, aug) if aug else []
    if pivots[:k] != list(range(k)):
        raise Singular("columns are linearly dependent")
    if len(pivots) > k:
        raise ShapeMismatch("right-hand side is not in the column span")
    rows = tuple(tuple(aug[i][k:]) for i in range(k))
    return Matrix._raw(f, rows, Y.ncols)


class EchelonSpan:
    """Incrementally tracks the span of added vectors."""

    def __init__(self, field: Field, dim: int):
        self.field = field
        self.dim = dim
        self._rows: list[tuple[int, list]] = []  # (pivot column, normalized row)

    def _residual(self, v) -> list:
        f = self.field
        v = list(v)
        for pc, row in self._rows:
            if v[pc]:
                v = f.combine(v, v[pc], row)
        return v

    def contains(self, vec: Matrix) -> bool:
        return not any(self._residual(vec.entries()))

    def add(self, vec: Matrix) -> bool:
        """Add ``vec``; return ``True`` iff it enlarged the span."""
        v = self._residual(vec.entries())
        pc = next((i for i, x in enumerate(v) if x), None)
        if pc is None:
            return False
        v = self.field.scale(self.field.inv(v[pc]), v)
        self._rows.append((pc, v))
        return True

    @property
    def rank(self) -> int:
        return len(self._rows)
