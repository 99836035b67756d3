"""Dense exact matrices and subspaces.

Entries are raw field scalars (see :mod:`bicomm.field`), stored row-major as
a tuple of row tuples.  Elimination uses the first nonzero entry as pivot;
arithmetic is exact, so there is no stability concern.

Operator spaces are vectorized by stacking columns: an ``m x k`` matrix ``x``
becomes the length ``m*k`` vector with ``vec(x)[j*m + i] = x[i, j]``.  Under
this convention ``vec(c @ x @ e) = kron(e.T, c) @ vec(x)``.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .errors import (AmbientMismatch, FieldMismatch, Inconsistent, InputError,
                     NotSquare, Singular, SizeMismatch)
from .field import FieldSpec

__all__ = ["Mat", "Subspace", "mat_rref", "mat_rank", "mat_nullspace",
           "mat_solve", "mat_inverse", "column_space", "subspace_contains",
           "kron", "block_diag", "jordan_block", "sylvester_operator",
           "nullspace_of_blocks"]


class Mat:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("spec", "rows", "cols", "data", "_hash")

    def __init__(self, entries: Sequence[Sequence], spec: FieldSpec, cols: int = None):
        conv = spec.convert
        data = tuple(tuple(conv(x) for x in row) for row in entries)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(row) != cols for row in data):
            raise InputError("ragged matrix rows")
        self._set(spec, len(data), cols, data)

    def _set(self, spec, rows, cols, data):
        self.spec = spec
        self.rows = rows
        self.cols = cols
        self.data = data
        self._hash = None

    @classmethod
    def _raw(cls, spec: FieldSpec, rows: int, cols: int, data) -> "Mat":
        m = cls.__new__(cls)
        m._set(spec, rows, cols, tuple(tuple(r) for r in data))
        return m

    # -- constructors ----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int, spec: FieldSpec) -> "Mat":
        z = spec.zero
        return cls._raw(spec, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int, spec: FieldSpec) -> "Mat":
        z, o = spec.zero, spec.one
        return cls._raw(spec, n, n, [[o if i == j else z for j in range(n)]
                                     for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence, spec: FieldSpec) -> "Mat":
        vals = [spec.convert(v) for v in values]
        n = len(vals)
        z = spec.zero
        return cls._raw(spec, n, n, [[vals[i] if i == j else z for j in range(n)]
                                     for i in range(n)])

    @classmethod
    def column(cls, values: Sequence, spec: FieldSpec) -> "Mat":
        return cls([[v] for v in values], spec, cols=1)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], spec: FieldSpec,
                     rows: int = None) -> "Mat":
        columns = [[spec.convert(x) for x in c] for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        if any(len(c) != rows for c in columns):
            raise InputError("columns of unequal length")
        return cls._raw(spec, rows, len(columns),
                        [[c[i] for c in columns] for i in range(rows)])

    @classmethod
    def unit(cls, i: int, j: int, n: int, spec: FieldSpec, m: int = None) -> "Mat":
        """Matrix unit E_ij (0-based) of shape ``n x m``."""
        m = n if m is None else m
        z, o = spec.zero, spec.one
        return cls._raw(spec, n, m, [[o if (r, c) == (i, j) else z for c in range(m)]
                                     for r in range(n)])

    @classmethod
    def unvec(cls, v: Sequence, rows: int, cols: int, spec: FieldSpec) -> "Mat":
        return cls._raw(spec, rows, cols, [[v[j * rows + i] for j in range(cols)]
                                           for i in range(rows)])

    # -- basic protocol --------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def element(self, i, j):
        return self.spec.element(self.data[i][j])

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.spec == other.spec and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec, self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        body = [[self.spec.to_str(x) for x in row] for row in self.data]
        return f"Mat({body}, {self.spec})"

    def tolist(self) -> List[List[str]]:
        return [[self.spec.to_str(x) for x in row] for row in self.data]

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": self.tolist()}

    @classmethod
    def from_json(cls, obj, spec: FieldSpec) -> "Mat":
        if not isinstance(obj, dict) or not {"rows", "cols", "entries"} <= obj.keys():
            raise InputError("matrix object needs rows, cols and entries")
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        if not isinstance(rows, int) or not isinstance(cols, int) or rows < 0 or cols < 0:
            raise InputError("rows and cols must be natural numbers")
        if not isinstance(entries, list) or len(entries) != rows:
            raise InputError(f"expected {rows} rows of entries")
        for row in entries:
            if not isinstance(row, list) or len(row) != cols:
                raise InputError(f"expected {cols} entries per row")
        return cls(entries, spec, cols=cols)

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "Mat"):
        if not isinstance(other, Mat):
            raise TypeError(f"expected Mat, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise SizeMismatch(f"{self.shape} + {other.shape}")
        red = self.spec.reduce
        return Mat._raw(self.spec, self.rows, self.cols,
                        [[red(x + y) for x, y in zip(r, s)]
                         for r, s in zip(self.data, other.data)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise SizeMismatch(f"{self.shape} - {other.shape}")
        red = self.spec.reduce
        return Mat._raw(self.spec, self.rows, self.cols,
                        [[red(x - y) for x, y in zip(r, s)]
                         for r, s in zip(self.data, other.data)])

    def __neg__(self) -> "Mat":
        neg = self.spec.neg
        return Mat._raw(self.spec, self.rows, self.cols,
                        [[neg(x) for x in r] for r in self.data])

    def scale(self, c) -> "Mat":
        c = self.spec.convert(c)
        red = self.spec.reduce
        return Mat._raw(self.spec, self.rows, self.cols,
                        [[red(c * x) for x in r] for r in self.data])

    def __mul__(self, c) -> "Mat":
        if isinstance(c, Mat):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise SizeMismatch(f"{self.shape} @ {other.shape}")
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        mul = operator.mul
        p = self.spec.p
        if p is None:
            data = [[sum(map(mul, r, c), self.spec.zero) for c in cols] for r in self.data]
        else:
            data = [[sum(map(mul, r, c)) % p for c in cols] for r in self.data]
        return Mat._raw(self.spec, self.rows, other.cols, data)

    def __pow__(self, k: int) -> "Mat":
        if not self.is_square:
            raise NotSquare("power of a non-square matrix")
        if k < 0:
            return mat_inverse(self) ** (-k)
        result = Mat.identity(self.rows, self.spec)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    @property
    def T(self) -> "Mat":
        return Mat._raw(self.spec, self.cols, self.rows,
                        list(zip(*self.data)) if self.rows else [[]] * self.cols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def vec(self) -> list:
        return [self.data[i][j] for j in range(self.cols) for i in range(self.rows)]

    def column_list(self, j: int) -> list:
        return [r[j] for r in self.data]

    def columns(self) -> List[list]:
        return [list(c) for c in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        return Mat._raw(self.spec, r1 - r0, c1 - c0, [r[c0:c1] for r in self.data[r0:r1]])

    def hstack(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.rows != other.rows:
            raise SizeMismatch("hstack needs equal row counts")
        return Mat._raw(self.spec, self.rows, self.cols + other.cols,
                        [r + s for r, s in zip(self.data, other.data)])

    def vstack(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.cols:
            raise SizeMismatch("vstack needs equal column counts")
        return Mat._raw(self.spec, self.rows + other.rows, self.cols,
                        self.data + other.data)

    def trace(self):
        if not self.is_square:
            raise NotSquare("trace of a non-square matrix")
        return self.spec.reduce(sum((self.data[i][i] for i in range(self.rows)),
                                    self.spec.zero))


# -- elimination kernels ---------------------------------------------------

def _rref_rows(rows: List[list], ncols: int, spec: FieldSpec, start_rank: int = 0):
    """In-place Gauss-Jordan elimination on a list of mutable rows.

    Rows ``[0, start_rank)`` must already be a reduced echelon block whose
    pivots are given implicitly; this lets callers append rows to a reduced
    basis cheaply.  Returns the pivot columns; the first ``len(pivots)`` rows
    are the reduced nonzero rows.
    """
    p = spec.p
    pivots = []
    if start_rank:
        for r in rows[:start_rank]:
            pivots.append(next(j for j, x in enumerate(r) if x))
        # clear the known pivot columns from the appended rows
        for i in range(start_rank, len(rows)):
            row = rows[i]
            for k, pc in enumerate(pivots):
                f = row[pc]
                if f:
                    prow = rows[k]
                    if p is None:
                        row[pc:] = [a - f * b for a, b in zip(row[pc:], prow[pc:])]
                    else:
                        row[pc:] = [(a - f * b) % p for a, b in zip(row[pc:], prow[pc:])]
    rank = start_rank
    nrows = len(rows)
    for col in range(ncols):
        if rank == nrows:
            break
        if start_rank and col in pivots[:start_rank]:
            continue
        piv = None
        for i in range(rank, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        lead = prow[col]
        if p is None:
            if lead != 1:
                inv = 1 / lead
                prow[col:] = [x * inv for x in prow[col:]]
        else:
            if lead != 1:
                inv = pow(lead, -1, p)
                prow[col:] = [x * inv % p for x in prow[col:]]
        tail = prow[col:]
        for i in range(nrows):
            if i != rank:
                row = rows[i]
                f = row[col]
                if f:
                    if p is None:
                        row[col:] = [a - f * b for a, b in zip(row[col:], tail)]
                    else:
                        row[col:] = [(a - f * b) % p for a, b in zip(row[col:], tail)]
        if start_rank:
            # keep the pivot list ordered by row position
            pivots.insert(rank, col)
        else:
            pivots.append(col)
        rank += 1
    if start_rank:
        # restore row order so that pivots increase down the rows
        order = sorted(range(rank), key=lambda k: pivots[k])
        rows[:rank] = [rows[k] for k in order]
        pivots = [pivots[k] for k in order]
    return pivots


def mat_rref(m: Mat) -> Tuple[Mat, int, Tuple[int, ...]]:
    """Reduced row echelon form, rank and pivot columns."""
    rows = [list(r) for r in m.data]
    pivots = _rref_rows(rows, m.cols, m.spec)
    return Mat._raw(m.spec, m.rows, m.cols, rows), len(pivots), tuple(pivots)


def mat_rank(m: Mat) -> int:
    return mat_rref(m)[1]


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n, stored by a canonical basis.

    ``basis`` has the basis vectors as columns and its transpose is in
    reduced row echelon form, so two equal subspaces have equal bases.
    """

    ambient_dim: int
    basis: Mat

    @classmethod
    def span(cls, vectors: Mat) -> "Subspace":
        """Canonical subspace spanned by the columns of ``vectors``."""
        rows = [list(c) for c in zip(*vectors.data)] if vectors.rows else []
        pivots = _rref_rows(rows, vectors.rows, vectors.spec)
        rows = rows[:len(pivots)]
        basis = Mat._raw(vectors.spec, len(rows), vectors.rows, rows).T
        return cls(vectors.rows, basis)

    @classmethod
    def from_reduced_rows(cls, rows: List[list], ambient: int, spec: FieldSpec) -> "Subspace":
        return cls(ambient, Mat._raw(spec, len(rows), ambient, rows).T)

    @classmethod
    def zero(cls, n: int, spec: FieldSpec) -> "Subspace":
        return cls(n, Mat.zeros(n, 0, spec))

    @classmethod
    def full(cls, n: int, spec: FieldSpec) -> "Subspace":
        return cls(n, Mat.identity(n, spec))

    @property
    def spec(self) -> FieldSpec:
        return self.basis.spec

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> List[list]:
        return self.basis.columns()

    def contains_vector(self, v: Sequence) -> bool:
        col = Mat._raw(self.spec, self.ambient_dim, 1, [[x] for x in v])
        return subspace_contains(self, Subspace.span(col))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.spec})"


def nullspace_of_blocks(blocks: Iterable[Mat], ncols: int, spec: FieldSpec,
                        max_rank: int = None, reduced: List[list] = None) -> Subspace:
    """Common null space of a stream of equation blocks sharing ``ncols``.

    The accumulated equations are kept in reduced form, so memory stays at
    most ``ncols`` rows regardless of how many blocks are fed in.  Callers
    that know an upper bound on the rank (for instance from vectors known to
    satisfy every equation) may pass ``max_rank`` to stop once it is reached.
    ``reduced`` seeds the system with rows already in reduced echelon form.
    """
    if max_rank is None:
        max_rank = ncols
    reduced = [list(r) for r in reduced] if reduced else []
    for block in blocks:
        if len(reduced) >= max_rank:
            break
        if block.cols != ncols:
            raise SizeMismatch("equation blocks of different widths")
        rows = reduced + [list(r) for r in block.data if any(r)]
        if len(rows) == len(reduced):
            continue
        pivots = _rref_rows(rows, ncols, spec, start_rank=len(reduced))
        reduced = rows[:len(pivots)]
        if len(reduced) >= max_rank:
            break
    return _nullspace_from_rref(reduced, ncols, spec)


def _nullspace_from_rref(reduced: List[list], ncols: int, spec: FieldSpec) -> Subspace:
    pivots = [next(j for j, x in enumerate(r) if x) for r in reduced]
    pivset = set(pivots)
    neg = spec.neg
    z, o = spec.zero, spec.one
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [z] * ncols
        v[f] = o
        for row, pc in zip(reduced, pivots):
            if row[f]:
                v[pc] = neg(row[f])
        vecs.append(v)
    if not vecs:
        return Subspace.zero(ncols, spec)
    _rref_rows(vecs, ncols, spec)
    return Subspace.from_reduced_rows(vecs, ncols, spec)


def reduced_rows(m: Mat) -> List[list]:
    """Nonzero rows of the reduced row echelon form of ``m``."""
    rows = [list(r) for r in m.data]
    pivots = _rref_rows(rows, m.cols, m.spec)
    return rows[:len(pivots)]


def mat_nullspace(m: Mat) -> Subspace:
    return _nullspace_from_rref(reduced_rows(m), m.cols, m.spec)


def column_space(m: Mat) -> Subspace:
    return Subspace.span(m)


def mat_solve(m: Mat, rhs: Mat) -> Mat:
    """Particular solution of ``m @ x = rhs`` with free variables set to zero.

    ``rhs`` may carry several columns; each is solved independently.
    """
    m._check(rhs)
    if rhs.rows != m.rows:
        raise SizeMismatch(f"rhs has {rhs.rows} rows, matrix has {m.rows}")
    n = m.cols
    rows = [list(r) + list(s) for r, s in zip(m.data, rhs.data)]
    pivots = _rref_rows(rows, n + rhs.cols, m.spec)
    z = m.spec.zero
    x = [[z] * rhs.cols for _ in range(n)]
    for i, pc in enumerate(pivots):
        if pc >= n:
            raise Inconsistent("right-hand side is not in the column space")
        x[pc] = rows[i][n:]
    return Mat._raw(m.spec, n, rhs.cols, x)


def mat_inverse(m: Mat) -> Mat:
    if not m.is_square:
        raise NotSquare(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    ident = Mat.identity(n, m.spec)
    rows = [list(r) + list(s) for r, s in zip(m.data, ident.data)]
    pivots = _rref_rows(rows, 2 * n, m.spec)
    if len(pivots) < n or pivots[n - 1] >= n:
        raise Singular("matrix is singular")
    return Mat._raw(m.spec, n, n, [r[n:] for r in rows])


def subspace_contains(outer: Subspace, inner: Subspace) -> bool:
    """True iff ``inner`` is a subspace of ``outer`` (rank comparison)."""
    if outer.ambient_dim != inner.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {outer.ambient_dim} and {inner.ambient_dim}")
    if inner.dim == 0:
        return True
    if inner.dim > outer.dim:
        return False
    rows = outer.basis.T.data + inner.basis.T.data
    rows = [list(r) for r in rows]
    pivots = _rref_rows(rows, outer.ambient_dim, outer.spec, start_rank=outer.dim)
    return len(pivots) == outer.dim


def kron(a: Mat, b: Mat) -> Mat:
    a._check(b)
    p = a.spec.p
    data = []
    for ar in a.data:
        for br in b.data:
            if p is None:
                data.append([x * y for x in ar for y in br])
            else:
                data.append([x * y % p for x in ar for y in br])
    return Mat._raw(a.spec, a.rows * b.rows, a.cols * b.cols, data)


def block_diag(*blocks: Mat) -> Mat:
    if not blocks:
        raise InputError("block_diag needs at least one block")
    spec = blocks[0].spec
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    z = spec.zero
    data = []
    c0 = 0
    for b in blocks:
        if b.spec != spec:
            raise FieldMismatch("blocks over different fields")
        for r in b.data:
            data.append([z] * c0 + list(r) + [z] * (cols - c0 - b.cols))
        c0 += b.cols
    return Mat._raw(spec, rows, cols, data)


def jordan_block(eigenvalue, size: int, spec: FieldSpec) -> Mat:
    """``eigenvalue`` on the diagonal, ones on the superdiagonal."""
    lam = spec.convert(eigenvalue)
    z, o = spec.zero, spec.one
    return Mat._raw(spec, size, size,
                    [[lam if i == j else (o if j == i + 1 else z) for j in range(size)]
                     for i in range(size)])


def sylvester_operator(c: Mat, e: Mat) -> Mat:
    """Matrix of ``x -> c x - x e`` acting on ``vec(x)``.

    ``c`` is ``m x m``, ``e`` is ``k x k`` and ``x`` is ``m x k``; the result is
    ``kron(I_k, c) - kron(e.T, I_m)``.
    """
    if not c.is_square or not e.is_square:
        raise NotSquare("sylvester operator needs square c and e")
    c._check(e)
    spec = c.spec
    m, k = c.rows, e.rows
    return kron(Mat.identity(k, spec), c) - kron(e.T, Mat.identity(m, spec))
