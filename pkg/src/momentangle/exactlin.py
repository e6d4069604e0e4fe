"""Exact scalars over Q and GF(p), and exact linear algebra.

Matrices are stored as tuples of sparse columns (``{row: value}`` dicts with
no explicit zeros).  Rationals are ``gmpy2.mpq`` values, residues are plain
ints in ``[0, p)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

_mpq = gmpy2.mpq
_mpq_type = type(_mpq(0))


def _smallest_factor(n):
    if n < 2:
        return None
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


@dataclass(frozen=True)
class Field:
    """Q when ``p`` is None, otherwise GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            f = _smallest_factor(self.p)
            if f != self.p:
                if f is None:
                    raise ValueError(f"{self.p} is not a prime")
                raise ValueError(f"{self.p} = {f}·{self.p // f} is not a prime")

    @property
    def is_rational(self):
        return self.p is None

    @property
    def characteristic(self):
        return 0 if self.p is None else self.p

    def __call__(self, x):
        """Coerce an int, Fraction, mpq or residue into this field."""
        p = self.p
        if p is None:
            return _mpq(x)
        if isinstance(x, int):
            return x % p
        if isinstance(x, (Fraction, _mpq_type)):
            num, den = int(x.numerator), int(x.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({p})")
            return num * pow(den, -1, p) % p
        raise TypeError(f"cannot coerce {x!r} into {self}")

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def norm(self, x):
        """Reduce the result of a native ``+``/``*`` back into canonical form."""
        return x if self.p is None else x % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / x
        return pow(x, -1, self.p)

    def neg(self, x):
        return -x if self.p is None else (-x) % self.p

    def to_json(self):
        return {"type": "rational"} if self.p is None else {"type": "prime", "p": self.p}

    def __str__(self):
        return "Q" if self.p is None else f"GF({self.p})"


QQ = Field()


def make_field(desc) -> Field:
    """Build a field from ``"rationals"``, ``"prime 7"``, ``"GF(7)"``, ``7`` or a JSON dict."""
    if isinstance(desc, Field):
        return desc
    if isinstance(desc, int):
        return Field(desc)
    if isinstance(desc, dict):
        kind = desc.get("type")
        if kind in ("rational", "rationals"):
            return QQ
        if kind == "prime":
            p = desc.get("p")
            if not isinstance(p, int) or isinstance(p, bool):
                raise ValueError("prime field needs an integer 'p'")
            return Field(p)
        raise ValueError(f"unknown field type {kind!r}")
    s = str(desc).strip().lower()
    if s in ("rationals", "rational", "q", "qq"):
        return QQ
    m = re.fullmatch(r"(?:prime\s+|gf\(|gf|f)?(\d+)\)?", s)
    if m:
        return Field(int(m.group(1)))
    raise ValueError(f"unrecognised field descriptor {desc!r}")


# ---------------------------------------------------------------------------
# sparse vectors

def vec_axpy(F, y, a, x):
    """In place ``y += a*x`` for sparse vectors; returns y."""
    if not a:
        return y
    p = F.p
    if p is None:
        for i, v in x.items():
            w = y.get(i)
            if w is None:
                y[i] = a * v
            else:
                w = w + a * v
                if w:
                    y[i] = w
                else:
                    del y[i]
    else:
        for i, v in x.items():
            w = (y.get(i, 0) + a * v) % p
            if w:
                y[i] = w
            else:
                y.pop(i, None)
    return y


def vec_scale(F, a, x):
    if not a:
        return {}
    return {i: F.norm(a * v) for i, v in x.items()}


def vec_dot(F, x, y):
    if len(x) > len(y):
        x, y = y, x
    s = F.zero
    for i, v in x.items():
        w = y.get(i)
        if w is not None:
            s = s + v * w
    return F.norm(s)


# ---------------------------------------------------------------------------

class Matrix:
    """Immutable matrix over a Field, stored column-wise and sparse."""

    __slots__ = ("field", "rows", "cols", "columns")

    def __init__(self, field, rows, cols, columns=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = tuple({} for _ in range(cols))
        else:
            columns = tuple(columns)
            if len(columns) != cols:
                raise ValueError("column count mismatch")
            for c in columns:
                for i in c:
                    if not 0 <= i < rows:
                        raise IndexError(f"row index {i} out of range")
        self.columns = columns

    @classmethod
    def zeros(cls, F, rows, cols):
        return cls(F, rows, cols)

    @classmethod
    def identity(cls, F, n):
        return cls(F, n, n, [{j: F.one} for j in range(n)])

    @classmethod
    def from_rows(cls, F, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(r):
                v = F(v)
                if v:
                    cols[j][i] = v
        return cls(F, len(rows), ncols, cols)

    @classmethod
    def from_columns(cls, F, nrows, columns):
        """Columns may be dense sequences or sparse dicts."""
        out = []
        for c in columns:
            if isinstance(c, dict):
                out.append({i: F(v) for i, v in c.items() if F(v)})
            else:
                if len(c) != nrows:
                    raise ValueError("column length mismatch")
                out.append({i: F(v) for i, v in enumerate(c) if F(v)})
        return cls(F, nrows, len(out), out)

    def entry(self, i, j):
        return self.columns[j].get(i, self.field.zero)

    def to_rows(self):
        z = self.field.zero
        out = [[z] * self.cols for _ in range(self.rows)]
        for j, c in enumerate(self.columns):
            for i, v in c.items():
                out[i][j] = v
        return out

    def transpose(self):
        cols = [{} for _ in range(self.rows)]
        for j, c in enumerate(self.columns):
            for i, v in c.items():
                cols[i][j] = v
        return Matrix(self.field, self.cols, self.rows, cols)

    def apply(self, x):
        """Matrix times sparse vector."""
        F = self.field
        y = {}
        for j, a in x.items():
            vec_axpy(F, y, a, self.columns[j])
        return y

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            return Matrix(self.field, self.rows, other.cols,
                          [self.apply(c) for c in other.columns])
        return NotImplemented

    def __sub__(self, other):
        F = self.field
        cols = []
        for a, b in zip(self.columns, other.columns):
            c = dict(a)
            vec_axpy(F, c, F.neg(F.one), b)
            cols.append(c)
        return Matrix(F, self.rows, self.cols, cols)

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      self.columns + other.columns)

    def is_zero(self):
        return not any(self.columns)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self.columns == other.columns)

    def __hash__(self):
        return hash((self.field, self.shape))

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols}, {self.to_rows()})"


# ---------------------------------------------------------------------------
# column-span elimination; this is the workhorse behind rank/nullspace/solve.

class SpanSolver:
    """Incremental basis of a column span with coordinate tracking.

    Columns are offered in order; each one is reduced against the stored basis
    (pivot = largest row index, which keeps fill-in low on boundary
    matrices).  Independent columns are stored together with
    their expression in terms of the *original* columns, so any vector of the
    span can be written in the independent columns with dependent ("free")
    columns carrying coefficient zero.
    """

    def __init__(self, F, columns=()):
        self.field = F
        self._basis = {}     # pivot row -> (reduced vector, combination)
        self.ncols = 0
        self.independent = []
        self.null_combos = []   # for each dependent column j: combo with x_j = 1
        for c in columns:
            self.add(c)

    def _reduce(self, v, combo):
        F = self.field
        basis = self._basis
        while v:
            lead = max(v)
            entry = basis.get(lead)
            if entry is None:
                return lead
            b, bc = entry
            a = F.neg(v[lead])
            vec_axpy(F, v, a, b)
            vec_axpy(F, combo, a, bc)
        return None

    def add(self, column):
        """Offer a column; returns True when it enlarges the span."""
        F = self.field
        j = self.ncols
        self.ncols += 1
        v = dict(column)
        combo = {j: F.one}
        lead = self._reduce(v, combo)
        if lead is None:
            self.null_combos.append(combo)
            return False
        inv = F.inv(v[lead])
        self._basis[lead] = (vec_scale(F, inv, v), vec_scale(F, inv, combo))
        self.independent.append(j)
        return True

    @property
    def rank(self):
        return len(self._basis)

    def solve(self, b):
        """Coordinates x (sparse) with sum x_j col_j = b, or None if b is not in the span."""
        F = self.field
        v = dict(b)
        x = {}
        basis = self._basis
        while v:
            lead = max(v)
            entry = basis.get(lead)
            if entry is None:
                return None
            bv, bc = entry
            a = v[lead]
            vec_axpy(F, v, F.neg(a), bv)
            vec_axpy(F, x, a, bc)
        return x

    def contains(self, b):
        return self.solve(b) is not None


@dataclass(frozen=True)
class Echelon:
    rank: int
    pivots: tuple
    transform: Matrix
    nullspace: Matrix
    rref: Matrix


def echelon(M: Matrix) -> Echelon:
    """Reduced row echelon form with transform and null space basis.

    Pivot = leftmost nonzero column, topmost candidate row.  ``transform @ M``
    is the RREF; the null space columns are the standard free-variable basis.
    """
    F = M.field
    nr = M.rows
    rowsd = [{} for _ in range(nr)]
    for j, c in enumerate(M.columns):
        for i, v in c.items():
            rowsd[i][j] = v
    T = [{i: F.one} for i in range(nr)]
    pivots = []
    r = 0
    for col in range(M.cols):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if col in rowsd[i]), None)
        if piv is None:
            continue
        rowsd[r], rowsd[piv] = rowsd[piv], rowsd[r]
        T[r], T[piv] = T[piv], T[r]
        inv = F.inv(rowsd[r][col])
        rowsd[r] = vec_scale(F, inv, rowsd[r])
        T[r] = vec_scale(F, inv, T[r])
        for i in range(nr):
            if i != r and col in rowsd[i]:
                a = F.neg(rowsd[i][col])
                vec_axpy(F, rowsd[i], a, rowsd[r])
                vec_axpy(F, T[i], a, T[r])
        pivots.append(col)
        r += 1
    rank = len(pivots)
    tcols = [{} for _ in range(nr)]
    for i, row in enumerate(T):
        for j, v in row.items():
            tcols[j][i] = v
    transform = Matrix(F, nr, nr, tcols)
    rcols = [{} for _ in range(M.cols)]
    for i, row in enumerate(rowsd):
        for j, v in row.items():
            rcols[j][i] = v
    rref = Matrix(F, nr, M.cols, rcols)
    pivset = set(pivots)
    null = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v = {f: F.one}
        for i, pc in enumerate(pivots):
            a = rowsd[i].get(f)
            if a:
                v[pc] = F.neg(a)
        null.append(v)
    return Echelon(rank, tuple(pivots), transform, Matrix(F, M.cols, len(null), null), rref)


def rank(M: Matrix) -> int:
    if M.rows < M.cols:
        M = M.transpose()
    return SpanSolver(M.field, M.columns).rank


def nullspace(M: Matrix) -> Matrix:
    """Null space basis, identical to the RREF free-variable basis."""
    s = SpanSolver(M.field, M.columns)
    return Matrix(M.field, M.cols, len(s.null_combos), s.null_combos)


def solve_in_span(A: Matrix, b):
    """Solve ``A x = b`` with free variables zero; ``None`` means "not in span".

    ``b`` may be a dense sequence or a sparse dict; the result is a dense list.
    """
    F = A.field
    if not isinstance(b, dict):
        if len(b) != A.rows:
            raise ValueError("right-hand side has the wrong length")
        b = {i: F(v) for i, v in enumerate(b) if F(v)}
    x = SpanSolver(F, A.columns).solve(b)
    if x is None:
        return None
    z = F.zero
    return [x.get(j, z) for j in range(A.cols)]
