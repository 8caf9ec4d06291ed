"""Exact rational linear algebra.

Scalars are ``gmpy2.mpq`` values (always in lowest terms). A :class:`Mat`
keeps one sparse ``{col: value}`` dict per row; vectors are plain tuples of
scalars.

Tensor index convention, used throughout the package: basis vector (i, j) of
V (x) W has flat index ``i * dim(W) + j``. With this convention
``kron(a, b)`` is the matrix of ``a (x) b``, and the row-major flattening of
an operator T: X -> Y is its coordinate vector in Y (x) X*.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


class NoSolution(ArithmeticError):
    pass


class NotUnique(ArithmeticError):
    pass


def Q(x) -> mpq:
    """Coerce an int, Fraction, mpq or ``"num/den"`` string to a scalar."""
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def qstr(x) -> str:
    x = Q(x)
    return f"{x.numerator}/{x.denominator}"


def vec(xs: Iterable) -> tuple:
    return tuple(Q(x) for x in xs)


def _axpy(r: dict, f, p: dict) -> None:
    # r -= f * p, in place, dropping zeros
    for k, v in p.items():
        nv = r.get(k, ZERO) - f * v
        if nv:
            r[k] = nv
        else:
            r.pop(k, None)


class Mat:
    """Immutable rational matrix with sparse rows."""

    __slots__ = ("rows", "cols", "_r", "_hash")

    def __init__(self, rows: int, cols: int, sparse_rows: Sequence[dict] | None = None):
        self.rows = rows
        self.cols = cols
        if sparse_rows is None:
            sparse_rows = [{} for _ in range(rows)]
        if len(sparse_rows) != rows:
            raise ValueError("row count mismatch")
        self._r = tuple(sparse_rows)
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, data: Sequence[Sequence], cols: int | None = None) -> "Mat":
        data = list(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        out = []
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged matrix")
            d = {}
            for j, x in enumerate(row):
                x = Q(x)
                if x:
                    d[j] = x
            out.append(d)
        return cls(len(out), cols, out)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Mat":
        columns = list(columns)
        if rows is None:
            if not columns:
                raise ValueError("row count needed for an empty column list")
            rows = len(columns[0])
        out = [{} for _ in range(rows)]
        for j, c in enumerate(columns):
            if len(c) != rows:
                raise ValueError("ragged columns")
            for i, x in enumerate(c):
                if x:
                    out[i][j] = Q(x)
        return cls(rows, len(columns), out)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, [{i: ONE} for i in range(n)])

    @classmethod
    def column(cls, v: Sequence) -> "Mat":
        return cls.from_columns([v], len(v))

    @classmethod
    def row(cls, v: Sequence) -> "Mat":
        return cls.from_rows([v], len(v))

    # access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._r[i].get(j, ZERO)

    def sparse_row(self, i: int) -> dict:
        return self._r[i]

    def row_vec(self, i: int) -> tuple:
        r = self._r[i]
        return tuple(r.get(j, ZERO) for j in range(self.cols))

    def col(self, j: int) -> tuple:
        return tuple(r.get(j, ZERO) for r in self._r)

    def columns(self) -> list[tuple]:
        t = self.T
        return [t.row_vec(j) for j in range(t.rows)]

    @property
    def entries(self) -> tuple:
        return tuple(x for i in range(self.rows) for x in self.row_vec(i))

    def tolist(self) -> list[list]:
        return [list(self.row_vec(i)) for i in range(self.rows)]

    def nnz(self) -> int:
        return sum(len(r) for r in self._r)

    def is_zero(self) -> bool:
        return not any(self._r)

    # algebra ------------------------------------------------------------
    @property
    def T(self) -> "Mat":
        out = [{} for _ in range(self.cols)]
        for i, r in enumerate(self._r):
            for j, x in r.items():
                out[j][i] = x
        return Mat(self.cols, self.rows, out)

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            br = other._r
            out = []
            for r in self._r:
                acc: dict = {}
                for k, a in r.items():
                    for j, b in br[k].items():
                        acc[j] = acc.get(j, ZERO) + a * b
                out.append({j: v for j, v in acc.items() if v})
            return Mat(self.rows, other.cols, out)
        v = other
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((x * v[j] for j, x in r.items()), ZERO) for r in self._r)

    def _combine(self, other: "Mat", sign) -> "Mat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = []
        for ra, rb in zip(self._r, other._r):
            d = dict(ra)
            _axpy(d, -sign, rb)
            out.append(d)
        return Mat(self.rows, self.cols, out)

    def __add__(self, other: "Mat") -> "Mat":
        return self._combine(other, ONE)

    def __sub__(self, other: "Mat") -> "Mat":
        return self._combine(other, -ONE)

    def __neg__(self) -> "Mat":
        return self.scale(-1)

    def scale(self, c) -> "Mat":
        c = Q(c)
        if not c:
            return Mat.zeros(self.rows, self.cols)
        return Mat(self.rows, self.cols, [{j: c * x for j, x in r.items()} for r in self._r])

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._r == other._r

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._r)))
        return self._hash

    def __repr__(self) -> str:
        if self.rows * self.cols > 64:
            return f"Mat({self.rows}x{self.cols}, nnz={self.nnz()})"
        body = "; ".join(" ".join(str(x) for x in self.row_vec(i)) for i in range(self.rows))
        return f"Mat([{body}])"

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        cmap = {c: k for k, c in enumerate(cols)}
        out = []
        for i in rows:
            out.append({cmap[j]: x for j, x in self._r[i].items() if j in cmap})
        return Mat(len(rows), len(cols), out)

    def rank(self) -> int:
        return rank(self)


def hstack(mats: Sequence[Mat]) -> Mat:
    mats = list(mats)
    rows = mats[0].rows
    out = [{} for _ in range(rows)]
    off = 0
    for m in mats:
        if m.rows != rows:
            raise ValueError("hstack row mismatch")
        for i in range(rows):
            for j, x in m.sparse_row(i).items():
                out[i][off + j] = x
        off += m.cols
    return Mat(rows, off, out)


def vstack(mats: Sequence[Mat]) -> Mat:
    mats = list(mats)
    cols = mats[0].cols
    out = []
    for m in mats:
        if m.cols != cols:
            raise ValueError("vstack column mismatch")
        out.extend(m.sparse_row(i) for i in range(m.rows))
    return Mat(len(out), cols, out)


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product; row (i, k) is ``i * b.rows + k``, column (j, l) is ``j * b.cols + l``."""
    bc = b.cols
    out = []
    for i in range(a.rows):
        ra = a.sparse_row(i)
        for k in range(b.rows):
            rb = b.sparse_row(k)
            out.append({j * bc + l: x * y for j, x in ra.items() for l, y in rb.items()})
    return Mat(a.rows * b.rows, a.cols * bc, out)


def direct_sum(a: Mat, b: Mat) -> Mat:
    out = [dict(a.sparse_row(i)) for i in range(a.rows)]
    out += [{a.cols + j: x for j, x in b.sparse_row(i).items()} for i in range(b.rows)]
    return Mat(a.rows + b.rows, a.cols + b.cols, out)


def op_to_vec(t: Mat) -> tuple:
    """Row-major flattening: the coordinates of T: X -> Y in Y (x) X*."""
    return t.entries


def vec_to_op(v: Sequence, rows: int, cols: int) -> Mat:
    if len(v) != rows * cols:
        raise ValueError("length mismatch")
    return Mat.from_rows([v[i * cols:(i + 1) * cols] for i in range(rows)], cols)


# --------------------------------------------------------------------------
# elimination


class Echelon:
    """Incremental reduced row echelon form over sparse rows.

    Pivot rows are kept fully reduced (zero in every other pivot column) and
    each pivot is the leftmost nonzero of its row, so the final state is the
    canonical RREF of everything added, regardless of insertion order.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.piv: dict[int, dict] = {}

    def reduce(self, row: dict) -> dict:
        r = dict(row)
        for c in [c for c in r if c in self.piv]:
            f = r.get(c)
            if f:
                _axpy(r, f, self.piv[c])
        return r

    def add(self, row: dict) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        inv = ONE / r[c]
        r = {k: v * inv for k, v in r.items()}
        for prow in self.piv.values():
            f = prow.get(c)
            if f:
                _axpy(prow, f, r)
        self.piv[c] = r
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    @property
    def rank(self) -> int:
        return len(self.piv)

    def pivot_cols(self) -> list[int]:
        return sorted(self.piv)

    def rows(self) -> list[dict]:
        return [self.piv[c] for c in sorted(self.piv)]

    def kernel(self) -> list[tuple]:
        out = []
        for f in range(self.ncols):
            if f in self.piv:
                continue
            v = [ZERO] * self.ncols
            v[f] = ONE
            for c, p in self.piv.items():
                x = p.get(f)
                if x:
                    v[c] = -x
            out.append(tuple(v))
        return out


def _sparse(v: Sequence) -> dict:
    return {j: Q(x) for j, x in enumerate(v) if x}


def echelon_of_rows(rows: Iterable[dict], ncols: int) -> Echelon:
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    return ech


def kernel_basis(m: Mat) -> list[tuple]:
    """Basis of the right null space, one vector per free column (in column order)."""
    return echelon_of_rows((m.sparse_row(i) for i in range(m.rows)), m.cols).kernel()


def kernel_of_rows(rows: Iterable[dict], ncols: int) -> list[tuple]:
    return echelon_of_rows(rows, ncols).kernel()


def rank(m: Mat) -> int:
    return echelon_of_rows((m.sparse_row(i) for i in range(m.rows)), m.cols).rank


def rref(m: Mat) -> tuple[Mat, list[int]]:
    ech = echelon_of_rows((m.sparse_row(i) for i in range(m.rows)), m.cols)
    return Mat(ech.rank, m.cols, [dict(r) for r in ech.rows()]), ech.pivot_cols()


def span_basis(vectors: Sequence[Sequence], dim: int | None = None) -> list[tuple]:
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    vectors = list(vectors)
    if dim is None:
        if not vectors:
            return []
        dim = len(vectors[0])
    ech = echelon_of_rows((_sparse(v) for v in vectors), dim)
    return [tuple(r.get(j, ZERO) for j in range(dim)) for r in ech.rows()]


def vectors_rank(vectors: Sequence[Sequence]) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    return echelon_of_rows((_sparse(v) for v in vectors), len(vectors[0])).rank


def subspace_equal(b1: Sequence[Sequence], b2: Sequence[Sequence]) -> bool:
    r1, r2 = vectors_rank(b1), vectors_rank(b2)
    return r1 == r2 == vectors_rank(list(b1) + list(b2))


def subspace_contains(big: Sequence[Sequence], small: Sequence[Sequence]) -> bool:
    return vectors_rank(big) == vectors_rank(list(big) + list(small))


def solve_unique(a: Mat, b: Mat) -> Mat:
    """The unique X with ``a @ X == b``.

    Raises NoSolution if the system is inconsistent and NotUnique if ``a``
    has a nonzero kernel.
    """
    if a.rows != b.rows:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    n = a.cols
    ech = Echelon(n + b.cols)
    for i in range(a.rows):
        r = dict(a.sparse_row(i))
        for j, x in b.sparse_row(i).items():
            r[n + j] = x
        ech.add(r)
    pivots = ech.pivot_cols()
    if pivots and pivots[-1] >= n:
        raise NoSolution("inconsistent linear system")
    if len(pivots) < n:
        raise NotUnique(f"coefficient matrix has a {n - len(pivots)}-dimensional kernel")
    out = []
    for c in range(n):
        p = ech.piv[c]
        out.append({j - n: x for j, x in p.items() if j >= n})
    return Mat(n, b.cols, out)


def inverse(a: Mat) -> Mat:
    if a.rows != a.cols:
        raise ValueError("not square")
    return solve_unique(a, Mat.identity(a.rows))


def coordinates(basis: Mat, vectors: Mat) -> Mat:
    """Coordinates of the columns of ``vectors`` in the column basis ``basis``."""
    return solve_unique(basis, vectors)
