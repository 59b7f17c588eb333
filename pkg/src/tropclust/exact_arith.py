"""Exact Laurent polynomials in one variable t and small matrices over them.

Evaluating a subtraction-free rational map at chi = t**v and reading off the
top (or bottom) exponent of the result is the same as evaluating its max-plus
(or min-plus) tropicalisation at v.  Everything here is exact: coefficients are
Python ints, so nothing overflows however large the orbit computations get.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import ShapeMismatch, ZeroPolynomial


class LaurentPoly:
    """Immutable Laurent polynomial sum c_e t**e with integer coefficients.

    ``coeffs`` never stores a zero coefficient; the zero polynomial is the
    empty mapping.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c: Dict[int, int] = {}
        if coeffs:
            for e, a in coeffs.items():
                if a:
                    c[int(e)] = int(a)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: Dict[int, int]) -> "LaurentPoly":
        # trusted constructor: c already has no zero entries
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def const(cls, a: int) -> "LaurentPoly":
        return cls._raw({0: a} if a else {})

    @classmethod
    def monomial(cls, e: int, a: int = 1) -> "LaurentPoly":
        return cls._raw({e: a} if a else {})

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            a = self._c[e]
            if e == 0:
                parts.append(str(a))
            else:
                mono = "t" if e == 1 else f"t^{e}"
                if a == 1:
                    parts.append(mono)
                elif a == -1:
                    parts.append("-" + mono)
                else:
                    parts.append(f"{a}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -a for e, a in self._c.items()})

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        c = dict(self._c)
        for e, a in other._c.items():
            s = c.get(e, 0) + a
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "LaurentPoly":
        return LaurentPoly.const(other) - self

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: a * other for e, a in self._c.items()})
        a_items = list(self._c.items())
        b_items = list(other._c.items())
        if len(a_items) < len(b_items):
            a_items, b_items = b_items, a_items
        c: Dict[int, int] = {}
        get = c.get
        for eb, cb in b_items:
            for ea, ca in a_items:
                e = ea + eb
                c[e] = get(e, 0) + ca * cb
        return LaurentPoly._raw({e: a for e, a in c.items() if a})

    __rmul__ = __mul__

    def shift(self, m: int) -> "LaurentPoly":
        """Multiply by t**m."""
        return LaurentPoly._raw({e + m: a for e, a in self._c.items()})

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, a), = self._c.items()
            if a not in (1, -1):
                raise ValueError("monomial inverse needs a unit coefficient")
            return LaurentPoly._raw({e * k: a ** (-k)})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def deg(self) -> int:
        if not self._c:
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(self._c)

    def val(self) -> int:
        if not self._c:
            raise ZeroPolynomial("valuation of the zero polynomial")
        return min(self._c)

    def evaluate(self, x):
        """Evaluate at a number; x may be a Fraction for exact results."""
        return sum(a * x ** e for e, a in self._c.items())


ZERO = LaurentPoly.const(0)
ONE = LaurentPoly.const(1)


def lp_arith(op: str, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Ring operation by name: ``add``, ``sub`` or ``mul``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def lp_deg_val(p: LaurentPoly) -> Tuple[int, int]:
    """(max exponent, min exponent); raises ZeroPolynomial on 0."""
    return p.deg(), p.val()


class LMatrix:
    """Dense rows x cols matrix of LaurentPoly, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[LaurentPoly]):
        if len(entries) != rows * cols:
            raise ShapeMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.entries = list(entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[LaurentPoly | int]]) -> "LMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ShapeMismatch("ragged rows")
            flat.extend(x if isinstance(x, LaurentPoly) else LaurentPoly.const(x) for x in row)
        return cls(r, c, flat)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[LaurentPoly]]) -> "LMatrix":
        c = len(columns)
        r = len(columns[0]) if c else 0
        flat = [columns[j][i] for i in range(r) for j in range(c)]
        return cls(r, c, flat)

    def __getitem__(self, ij: Tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self.entries[i * self.cols + j]

    def column(self, j: int) -> List[LaurentPoly]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def columns(self) -> List[List[LaurentPoly]]:
        return [self.column(j) for j in range(self.cols)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self) -> str:
        body = "; ".join(
            ", ".join(str(self[i, j]) for j in range(self.cols)) for i in range(self.rows)
        )
        return f"LMatrix[{body}]"


def det_columns(cols: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Determinant of the square matrix whose columns are given.

    Laplace expansion along rows, memoised on the set of columns still free,
    so a k x k determinant costs about k * 2**k products instead of k!.
    """
    k = len(cols)
    if k == 0:
        return ONE
    if any(len(c) != k for c in cols):
        raise ShapeMismatch("determinant of a non-square block")
    # minor[S] = det of rows (k-|S|..k-1) restricted to column subset S
    prev: Dict[Tuple[int, ...], LaurentPoly] = {(j,): cols[j][k - 1] for j in range(k)}
    for size in range(2, k + 1):
        row = k - size
        cur: Dict[Tuple[int, ...], LaurentPoly] = {}
        for S in combinations(range(k), size):
            acc = ZERO
            for pos, j in enumerate(S):
                a = cols[j][row]
                if not a:
                    continue
                rest = S[:pos] + S[pos + 1:]
                m = prev[rest]
                if not m:
                    continue
                term = a * m
                acc = acc - term if pos & 1 else acc + term
            cur[S] = acc
        prev = cur
    return prev[tuple(range(k))]


def lmat_det(m: LMatrix, row_set: Sequence[int], col_set: Sequence[int]) -> LaurentPoly:
    """Exact determinant of the square submatrix on the given rows and columns."""
    if len(row_set) != len(col_set):
        raise ShapeMismatch("row and column index sets differ in size")
    if any(not 0 <= i < m.rows for i in row_set) or any(not 0 <= j < m.cols for j in col_set):
        raise ShapeMismatch("index out of range")
    cols = [[m[i, j] for i in row_set] for j in col_set]
    return det_columns(cols)


def poly_product(factors: Iterable[LaurentPoly]) -> LaurentPoly:
    out = ONE
    for f in factors:
        out = out * f
    return out
