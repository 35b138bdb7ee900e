"""Exact scalars (rationals and cyclotomic numbers) and dense exact linear algebra.

Rational scalars are plain ``int`` or ``fractions.Fraction`` values; integral
fractions are folded back to ``int`` so the common path stays on machine-fast
Python integers.  Cyclotomic numbers live in Q(zeta_N) and are stored as a
coefficient vector in the power basis 1, z, ..., z^(phi(N)-1).  Any cyclotomic
result that turns out to be rational is returned as a rational.

Matrices act on column vectors and are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

__all__ = [
    "Cyclotomic",
    "Matrix",
    "Scalar",
    "canon",
    "field_arith",
    "field_div",
    "image_basis",
    "inverse",
    "is_scalar",
    "kernel_basis",
    "parse_scalar",
    "rank",
    "rref",
    "scalar_to_str",
    "solve",
    "zeta",
]


# ---------------------------------------------------------------------------
# cyclotomic numbers


@lru_cache(maxsize=None)
def _cyclotomic_poly(order: int) -> tuple[int, ...]:
    """Coefficients of the order-th cyclotomic polynomial, lowest degree first."""
    from sympy import Poly, cyclotomic_poly, symbols

    x = symbols("x")
    coeffs = Poly(cyclotomic_poly(order, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def _phi(order: int) -> int:
    return len(_cyclotomic_poly(order)) - 1


def _reduce_poly(coeffs: list, order: int) -> list:
    """Reduce a coefficient list (lowest first) modulo the monic cyclotomic polynomial."""
    poly = _cyclotomic_poly(order)
    deg = len(poly) - 1
    coeffs = list(coeffs)
    for top in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[top]
        if c == 0:
            continue
        shift = top - deg
        for k in range(deg + 1):
            if poly[k]:
                coeffs[shift + k] -= c * poly[k]
    coeffs = coeffs[:deg] + [0] * max(0, deg - len(coeffs))
    return [canon(c) for c in coeffs]


class Cyclotomic:
    """An element of Q(zeta_N) that is not rational.

    Use :func:`zeta` or arithmetic on existing values rather than calling the
    constructor directly; the constructor does not canonicalize.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence):
        self.order = order
        self.coeffs = tuple(coeffs)

    @staticmethod
    def make(order: int, coeffs: Sequence) -> "Scalar":
        """Reduce ``coeffs`` mod the cyclotomic polynomial and canonicalize."""
        if order < 1:
            raise ValueError(f"cyclotomic order must be positive, got {order}")
        red = _reduce_poly(list(coeffs), order)
        if all(c == 0 for c in red[1:]):
            return red[0] if red else 0
        return Cyclotomic(order, red)

    # promotion helpers -----------------------------------------------------
    def _coerce(self, other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError(
                    f"incompatible cyclotomic orders {self.order} and {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, (other,) + (0,) * (len(self.coeffs) - 1))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic.make(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic.make(self.order, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return 0
            return Cyclotomic(self.order, [canon(a * other) for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = [0] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    prod[i + j] += a * b
        return Cyclotomic.make(self.order, prod)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        # solve (multiplication by self) * v = 1 in the power basis
        phi = len(self.coeffs)
        cols = []
        for k in range(phi):
            basis = [0] * phi
            basis[k] = 1
            e = Cyclotomic(self.order, basis)
            prod = self * e
            cols.append(_as_coeffs(prod, self.order, phi))
        mat = Matrix([[cols[c][r] for c in range(phi)] for r in range(phi)])
        rhs = Matrix([[1]] + [[0]] * (phi - 1))
        sol = solve(mat, rhs)
        if sol is None:  # pragma: no cover - field
            raise ZeroDivisionError("cyclotomic element is not invertible")
        return Cyclotomic.make(self.order, [sol[r, 0] for r in range(phi)])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(self.order, [canon(Fraction(a) / other) for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return field_pow(self.inverse(), -k)
        return field_pow(self, k)

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return False  # canonical cyclotomics are never rational
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return True

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else (f"z{self.order}" if k == 1 else f"z{self.order}^{k}")
            if mono == "":
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"({c})*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _as_coeffs(x: "Scalar", order: int, phi: int) -> list:
    if isinstance(x, Cyclotomic):
        return list(x.coeffs)
    return [x] + [0] * (phi - 1)


Scalar = Union[int, Fraction, Cyclotomic]


def canon(x):
    """Fold integral fractions to ``int``."""
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, Cyclotomic)) and not isinstance(x, bool)


def zeta(order: int, k: int = 1) -> Scalar:
    """The root of unity zeta_order^k, canonicalized (orders 1 and 2 give rationals)."""
    if order < 1:
        raise ValueError(f"root of unity order must be positive, got {order}")
    k %= order
    if order == 1:
        return 1
    if order == 2:
        return 1 if k == 0 else -1
    coeffs = [0] * (k + 1)
    coeffs[k] = 1
    return Cyclotomic.make(order, coeffs)


def field_div(a, b):
    if isinstance(b, Cyclotomic) or isinstance(a, Cyclotomic):
        if not isinstance(b, Cyclotomic) and b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b
    if b == 0:
        raise ZeroDivisionError("division by zero")
    if type(a) is int and type(b) is int:
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    return canon(Fraction(a) / b)


def field_pow(a, k: int):
    result = 1
    base = a
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def field_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Exact ``a op b`` for op in {add, sub, mul, div}, canonically reduced."""
    if op == "add":
        return canon(a + b)
    if op == "sub":
        return canon(a - b)
    if op == "mul":
        return canon(a * b)
    if op == "div":
        return field_div(a, b)
    raise ValueError(f"unknown operation {op!r}")


def parse_scalar(s) -> Scalar:
    """Parse ``int``, ``"p/q"`` strings or ``{"cyclotomic": N, "coeffs": [...]}``."""
    if isinstance(s, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(s, (int, Fraction, Cyclotomic)):
        return canon(s)
    if isinstance(s, str):
        return canon(Fraction(s.strip()))
    if isinstance(s, dict) and "cyclotomic" in s:
        return Cyclotomic.make(int(s["cyclotomic"]), [parse_scalar(c) for c in s["coeffs"]])
    if isinstance(s, float) and s.is_integer():
        return int(s)
    raise TypeError(f"cannot parse scalar from {s!r}")


def scalar_to_str(x: Scalar):
    if isinstance(x, Cyclotomic):
        return {"cyclotomic": x.order, "coeffs": [scalar_to_str(c) for c in x.coeffs]}
    return str(canon(x))


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Dense immutable matrix of exact scalars (row-major)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable] = (), rows: int | None = None, cols: int | None = None):
        data = tuple(tuple(canon(x) for x in row) for row in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"ragged or mis-sized matrix data for shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def _raw(cls, data: tuple, rows: int, cols: int) -> "Matrix":
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m.data = data
        return m

    # constructors ----------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(tuple((0,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(
            tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n, n
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = len(columns)
        return cls._raw(
            tuple(tuple(canon(columns[c][r]) for c in range(cols)) for r in range(rows)),
            rows,
            cols,
        )

    @classmethod
    def scalar(cls, x) -> "Matrix":
        return cls._raw(((canon(x),),), 1, 1)

    # access ----------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        r, c = idx
        return self.data[r][c]

    def column(self, c: int) -> tuple:
        return tuple(row[c] for row in self.data)

    def columns(self) -> list[tuple]:
        return [self.column(c) for c in range(self.cols)]

    def entries(self) -> list:
        return [x for row in self.data for x in row]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        if self.rows == 0 or self.cols == 0:
            return f"Matrix(<{self.rows}x{self.cols}>)"
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"Matrix([{body}])"

    # arithmetic ------------------------------------------------------------
    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)), self.cols, self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix._raw(
            tuple(tuple(canon(a + b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
            self.rows,
            self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Matrix._raw(
            tuple(tuple(canon(a - b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
            self.rows,
            self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.data), self.rows, self.cols)

    def scale(self, c) -> "Matrix":
        if c == 1:
            return self
        return Matrix._raw(
            tuple(tuple(canon(c * a) if a else 0 for a in r) for r in self.data), self.rows, self.cols
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.cols
        odata = other.data
        out = []
        for row in self.data:
            acc = [0] * ocols
            for k, a in enumerate(row):
                if a == 0:
                    continue
                orow = odata[k]
                for j in range(ocols):
                    b = orow[j]
                    if b:
                        acc[j] += a * b
            out.append(tuple(canon(x) for x in acc))
        return Matrix._raw(tuple(out), self.rows, ocols)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times a column vector given as a sequence."""
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} does not match {self.cols} columns")
        out = []
        for row in self.data:
            acc = 0
            for a, b in zip(row, vec):
                if a and b:
                    acc += a * b
            out.append(canon(acc))
        return tuple(out)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(
            tuple(tuple(self.data[r][c] for c in cols) for r in rows), len(rows), len(cols)
        )

    def select_columns(self, cols: Sequence[int]) -> "Matrix":
        return self.submatrix(range(self.rows), cols)

    # block assembly --------------------------------------------------------
    @staticmethod
    def hstack(mats: Sequence["Matrix"], rows: int | None = None) -> "Matrix":
        if not mats:
            return Matrix.zeros(rows or 0, 0)
        r = mats[0].rows
        if any(m.rows != r for m in mats):
            raise ValueError("hstack row mismatch")
        return Matrix._raw(
            tuple(sum((m.data[i] for m in mats), ()) for i in range(r)), r, sum(m.cols for m in mats)
        )

    @staticmethod
    def vstack(mats: Sequence["Matrix"], cols: int | None = None) -> "Matrix":
        if not mats:
            return Matrix.zeros(0, cols or 0)
        c = mats[0].cols
        if any(m.cols != c for m in mats):
            raise ValueError("vstack column mismatch")
        return Matrix._raw(sum((m.data for m in mats), ()), sum(m.rows for m in mats), c)

    @staticmethod
    def block(blocks: Sequence[Sequence["Matrix"]]) -> "Matrix":
        return Matrix.vstack([Matrix.hstack(row) for row in blocks])

    @staticmethod
    def block_diag(mats: Sequence["Matrix"]) -> "Matrix":
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        out = []
        offset = 0
        for m in mats:
            left = (0,) * offset
            right = (0,) * (cols - offset - m.cols)
            out.extend(left + row + right for row in m.data)
            offset += m.cols
        return Matrix._raw(tuple(out), rows, cols)

    def kron(self, other: "Matrix") -> "Matrix":
        out = []
        for ra in self.data:
            for rb in other.data:
                out.append(tuple(canon(a * b) if a and b else 0 for a in ra for b in rb))
        return Matrix._raw(tuple(out), self.rows * other.rows, self.cols * other.cols)


# ---------------------------------------------------------------------------
# elimination


def _rref_rows(rows: list[list], ncols: int, limit: int | None = None):
    """In-place Gauss-Jordan on a list of row lists; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    last = ncols if limit is None else limit
    for c in range(last):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            prow = [field_div(x, lead) if x else 0 for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j] != 0]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f == 0:
                continue
            for j in nz:
                row[j] = canon(row[j] - f * prow[j])
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    rows = [list(r) for r in m.data]
    pivots = _rref_rows(rows, m.cols)
    return Matrix._raw(tuple(tuple(r) for r in rows), m.rows, m.cols), len(pivots), pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    rows = [list(r) for r in m.data]
    return len(_rref_rows(rows, m.cols))


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the null space; shape (cols, nullity)."""
    n = m.cols
    if m.rows == 0:
        return Matrix.identity(n)
    rows = [list(r) for r in m.data]
    pivots = _rref_rows(rows, n)
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, p in enumerate(pivots):
            x = rows[r][f]
            if x:
                v[p] = -x
        basis.append(v)
    return Matrix.from_columns(basis, n)


def image_basis(m: Matrix) -> Matrix:
    """Pivot columns of ``m``: a basis of its column space."""
    if m.rows == 0 or m.cols == 0:
        return Matrix.zeros(m.rows, 0)
    _, _, pivots = rref(m)
    return m.select_columns(pivots)


def solve(m: Matrix, rhs: Matrix) -> Matrix | None:
    """Some X with m @ X == rhs, or None when the system is inconsistent."""
    if m.rows != rhs.rows:
        raise ValueError(f"dimension mismatch: {m.rows} rows vs rhs {rhs.rows} rows")
    n = m.cols
    if m.rows == 0:
        return Matrix.zeros(n, rhs.cols)
    rows = [list(a) + list(b) for a, b in zip(m.data, rhs.data)]
    pivots = _rref_rows(rows, n + rhs.cols, limit=n)
    r = len(pivots)
    for i in range(r, m.rows):
        if any(x != 0 for x in rows[i][n:]):
            return None
    out = [[0] * rhs.cols for _ in range(n)]
    for i, p in enumerate(pivots):
        out[p] = rows[i][n:]
    return Matrix(out, n, rhs.cols)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("only square matrices are invertible")
    sol = solve(m, Matrix.identity(m.rows))
    if sol is None or rank(m) != m.rows:
        raise ZeroDivisionError("matrix is singular")
    return sol


def extend_basis(span: Matrix, candidates: Matrix) -> list[int]:
    """Indices of candidate columns that extend the column span of ``span`` independently."""
    if candidates.cols == 0:
        return []
    both = Matrix.hstack([span, candidates]) if span.cols else candidates
    if both.rows == 0:
        return []
    rows = [list(r) for r in both.data]
    pivots = _rref_rows(rows, both.cols)
    return [p - span.cols for p in pivots if p >= span.cols]
