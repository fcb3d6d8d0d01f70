"""Exact linear algebra over the rationals and prime fields.

Every computation in this package bottoms out in ranks, kernels and linear
solves over an exact coefficient field.  Scalars are ``fractions.Fraction``
over Q and plain ints in ``[0, p)`` over F_p; matrices are immutable, dense
and carry their field descriptor.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Union

Scalar = Union[Fraction, int]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """Descriptor of an exact field: the rationals (char 0) or F_p, p prime."""

    __slots__ = ("char",)

    def __init__(self, char: int = 0) -> None:
        if char != 0 and not _is_prime(char):
            raise ValueError(f"characteristic must be 0 or a prime, got {char}")
        self.char = char

    def of(self, x) -> Scalar:
        """Coerce an int, Fraction or 'p/q' string into a field element."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.char == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            den = x.denominator % self.char
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.char}")
            return x.numerator * pow(den, -1, self.char) % self.char
        return int(x) % self.char

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.char == 0 else 1

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b if self.char == 0 else (a + b) % self.char

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b if self.char == 0 else (a - b) % self.char

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b if self.char == 0 else (a * b) % self.char

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.char == 0 else (-a) % self.char

    def inv(self, a: Scalar) -> Scalar:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.char == 0 else pow(a, -1, self.char)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def to_str(self, a: Scalar) -> str:
        return str(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self) -> int:
        return hash(("Field", self.char))

    def __repr__(self) -> str:
        return "QQ" if self.char == 0 else f"GF({self.char})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


class Matrix:
    """Immutable dense matrix over a :class:`Field`.

    Zero rows or columns are fine; the shape is always carried explicitly.
    Entries are trusted to already be field elements; use :meth:`build` to
    coerce raw data.
    """

    __slots__ = ("field", "rows", "cols", "_e")

    def __init__(self, field: Field, rows: int, cols: int,
                 entries: Sequence[Sequence[Scalar]]) -> None:
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        e = tuple(tuple(r) for r in entries)
        if len(e) != rows or any(len(r) != cols for r in e):
            raise ValueError(f"entries do not match shape {rows}x{cols}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self._e = e

    @classmethod
    def build(cls, field: Field, entries: Sequence[Sequence]) -> "Matrix":
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        return cls(field, rows, cols,
                   [[field.of(x) for x in r] for r in entries])

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n,
                   [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field: Field, rows: int,
                     columns: Sequence[Sequence[Scalar]]) -> "Matrix":
        cols = len(columns)
        return cls(field, rows, cols,
                   [[columns[j][i] for j in range(cols)] for i in range(rows)])

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple:
        return self._e[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._e)

    def to_lists(self) -> list:
        return [list(r) for r in self._e]

    def is_zero(self) -> bool:
        return all(not x for r in self._e for x in r)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and other.field == self.field
                and other.rows == self.rows and other.cols == self.cols
                and other._e == self._e)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self._e))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._e)
        return f"Matrix({self.rows}x{self.cols} over {self.field}: [{body}])"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      [[f.add(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self._e, other._e)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      [[f.sub(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self._e, other._e)])

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      [[f.neg(a) for a in r] for r in self._e])

    def scale(self, c: Scalar) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      [[f.mul(c, a) for a in r] for r in self._e])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        f = self.field
        ocols = tuple(other.column(j) for j in range(other.cols))
        out = []
        for r in self._e:
            out.append([f.of(sum(a * b for a, b in zip(r, c))) for c in ocols])
        return Matrix(f, self.rows, other.cols, out)

    def apply(self, vec: Sequence[Scalar]) -> tuple:
        """Matrix times column vector (returned as a tuple)."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        f = self.field
        return tuple(f.of(sum(a * b for a, b in zip(r, vec))) for r in self._e)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      [self.column(j) for j in range(self.cols)])

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("matrix shape mismatch")


def hstack(field: Field, mats: Sequence[Matrix]) -> Matrix:
    mats = [m for m in mats]
    if not mats:
        return Matrix.zero(field, 0, 0)
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("hstack: row counts differ")
    ents = [sum((list(m.row(i)) for m in mats), []) for i in range(rows)]
    return Matrix(field, rows, sum(m.cols for m in mats), ents)


def vstack(field: Field, mats: Sequence[Matrix]) -> Matrix:
    mats = [m for m in mats]
    if not mats:
        return Matrix.zero(field, 0, 0)
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("vstack: column counts differ")
    ents = [list(r) for m in mats for r in m._e]
    return Matrix(field, sum(m.rows for m in mats), cols, ents)


def block_diagonal(field: Field, mats: Sequence[Matrix]) -> Matrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = Matrix.zero(field, rows, cols).to_lists()
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            row = out[r0 + i]
            mr = m.row(i)
            for j in range(m.cols):
                row[c0 + j] = mr[j]
        r0 += m.rows
        c0 += m.cols
    return Matrix(field, rows, cols, out)


def _rref_rows(field: Field, rows: list, ncols: int) -> tuple:
    """In-place reduced row echelon form; returns (rank, pivot column list)."""
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        if inv != field.one:
            rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [field.sub(a, field.mul(f, b))
                           for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return r, pivots


def row_reduce(m: Matrix) -> tuple:
    """Reduced row echelon form.

    Returns ``(rank, pivot_columns, reduced)`` where ``reduced`` has the same
    shape as ``m``, its row space, and ``rank`` nonzero rows.
    """
    rows = [list(r) for r in m._e]
    rank, pivots = _rref_rows(m.field, rows, m.cols)
    return rank, tuple(pivots), Matrix(m.field, m.rows, m.cols, rows)


def rank(m: Matrix) -> int:
    return row_reduce(m)[0]


def kernel_basis(m: Matrix) -> Matrix:
    """Basis of ``{x : m @ x = 0}`` as matrix columns (cols = nullity).

    Each free column contributes the vector with 1 there, the back-substituted
    pivot values elsewhere and 0 at the other free columns.
    """
    f = m.field
    r, pivots, red = row_reduce(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    columns = []
    for fc in free:
        v = [f.zero] * m.cols
        v[fc] = f.one
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(red[i, fc])
        columns.append(v)
    return Matrix.from_columns(f, m.cols, columns)


def solve(m: Matrix, b: Sequence[Scalar]) -> Optional[tuple]:
    """One solution of ``m @ x = b`` with free variables set to 0, or None."""
    if len(b) != m.rows:
        raise ValueError(f"rhs length {len(b)} != rows {m.rows}")
    x = solve_matrix(m, Matrix.from_columns(m.field, m.rows, [list(b)]))
    return None if x is None else x.column(0)


def solve_matrix(m: Matrix, rhs: Matrix) -> Optional[Matrix]:
    """Solve ``m @ X = rhs`` columnwise (free variables 0), or None."""
    if rhs.rows != m.rows:
        raise ValueError("rhs row count mismatch")
    f = m.field
    aug = [list(mr) + list(rr) for mr, rr in zip(m._e, rhs._e)]
    if not aug:
        # 0-row system: any X works; pick zero.
        return Matrix.zero(f, m.cols, rhs.cols)
    rank_, pivots = _rref_rows(f, aug, m.cols + rhs.cols)
    if any(p >= m.cols for p in pivots):
        return None
    out = [[f.zero] * rhs.cols for _ in range(m.cols)]
    for i, pc in enumerate(pivots):
        for j in range(rhs.cols):
            out[pc][j] = aug[i][m.cols + j]
    return Matrix(f, m.cols, rhs.cols, out)


def inverse(m: Matrix) -> Optional[Matrix]:
    if m.rows != m.cols:
        return None
    x = solve_matrix(m, Matrix.identity(m.field, m.rows))
    if x is None:
        return None
    # solve_matrix returns a right inverse; for square full-rank m it is two-sided.
    if rank(m) != m.rows:
        return None
    return x


def column_space_basis(m: Matrix) -> Matrix:
    """Columns of ``m`` at the pivot positions of its column space."""
    _, pivots, _ = row_reduce(m)
    return Matrix.from_columns(m.field, m.rows, [m.column(c) for c in pivots])


class SparseSpan:
    """Incrementally reduced row space over sparse integer-indexed vectors.

    Rows are kept fully inter-reduced: each row's support meets the pivot set
    only at its own pivot, so reducing a vector is a single ascending pass.
    """

    def __init__(self, field: Field) -> None:
        self.field = field
        self.rows: dict = {}  # pivot index -> {index: coeff}, pivot coeff 1

    def reduce(self, vec: dict) -> dict:
        f = self.field
        vec = {k: c for k, c in vec.items() if c}
        for p in sorted(vec):
            row = self.rows.get(p)
            if row is None or not vec.get(p):
                continue
            c = vec[p]
            for k, rc in row.items():
                s = f.sub(vec.get(k, f.zero), f.mul(c, rc))
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
        return vec

    def add(self, vec: dict) -> Optional[dict]:
        """Insert a vector; returns the new normalized row or None if absorbed."""
        f = self.field
        vec = self.reduce(vec)
        if not vec:
            return None
        pivot = min(vec)
        inv = f.inv(vec[pivot])
        if inv != f.one:
            vec = {k: f.mul(inv, c) for k, c in vec.items()}
        for piv, row in self.rows.items():
            c = row.get(pivot)
            if c:
                for k, rc in vec.items():
                    s = f.sub(row.get(k, f.zero), f.mul(c, rc))
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
        self.rows[pivot] = vec
        return dict(vec)

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)
