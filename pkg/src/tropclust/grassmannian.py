"""Gr(k,n): initial seed, web matrix, quasi-automorphisms and their tropicalisation.

A point v of the active lattice is turned into the web matrix W(t**v), the
inverse of a quasi-automorphism f is applied to W as a matrix map, and the
initial-seed y-hat ratios are read off as Laurent polynomials in t.  The
top (bottom) exponent of each ratio is Q^+_f(v) (Q^-_f(v)).

Coordinates follow the node order (a-1)(k-1)+b for a in [n-k-1], b in [k-1].
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, gcd
from typing import Callable, Dict, List, Sequence, Tuple

from .errors import SingularPivot
from .exact_arith import ONE, ZERO, LaurentPoly, LMatrix, det_columns

__all__ = [
    "GrContext",
    "QuasiAuto",
    "web_matrix",
    "apply_quasi_auto",
    "yhat_value",
    "yhat_degrees",
    "trop_Q",
    "trop_Q_word",
]

Node = Tuple[int, int]
Column = List[LaurentPoly]


@dataclass(frozen=True)
class GrContext:
    k: int
    n: int

    def __post_init__(self):
        if not 2 <= self.k < self.n - 1:
            raise ValueError("need 2 <= k <= n-2")

    @property
    def d(self) -> int:
        return gcd(self.k, self.n)

    @property
    def m(self) -> int:
        return (self.k - 1) * (self.n - self.k - 1)

    @property
    def rows(self) -> int:
        """Number of active rows a."""
        return self.n - self.k - 1

    def index(self, node: Node) -> int:
        """0-based coordinate of an active node."""
        a, b = node
        return (a - 1) * (self.k - 1) + b - 1

    def active_nodes(self) -> List[Node]:
        return [(a, b) for a in range(1, self.rows + 1) for b in range(1, self.k)]

    def is_active(self, node: Node) -> bool:
        a, b = node
        return 1 <= a <= self.rows and 1 <= b <= self.k - 1

    def all_nodes(self) -> List[Node]:
        out = [(0, 0)]
        out += [(a, b) for a in range(1, self.n - self.k + 1) for b in range(1, self.k + 1)]
        return out

    def plucker_set(self, node: Node) -> Tuple[int, ...]:
        """1-based column set of the Plücker coordinate sitting at node."""
        a, b = node
        k = self.k
        return tuple(range(1, k - b + 1)) + tuple(range(k - b + a + 1, k + a + 1))

    def arrows_in(self, node: Node) -> List[Node]:
        a, b = node
        out = []
        if node == (1, 1):
            out.append((0, 0))
        if a >= 2:
            out.append((a - 1, b))
        if b >= 2:
            out.append((a, b - 1))
        if a + 1 <= self.n - self.k and b + 1 <= self.k:
            out.append((a + 1, b + 1))
        return out

    def arrows_out(self, node: Node) -> List[Node]:
        a, b = node
        out = []
        if a + 1 <= self.n - self.k:
            out.append((a + 1, b))
        if b + 1 <= self.k:
            out.append((a, b + 1))
        if a >= 2 and b >= 2:
            out.append((a - 1, b - 1))
        return out

    def plucker_label(self, node: Node) -> str:
        return "P" + "".join(str(x) for x in self.plucker_set(node))


# ---------------------------------------------------------------- quasi-automorphisms

_KINDS = ("rho", "rho_inv", "theta", "tau", "tau_inv", "sigma", "sigma_inv")
_INVERSE = {
    "rho": "rho_inv",
    "rho_inv": "rho",
    "theta": "theta",
    "tau": "tau_inv",
    "tau_inv": "tau",
    "sigma": "sigma_inv",
    "sigma_inv": "sigma",
}


@dataclass(frozen=True)
class QuasiAuto:
    """One generator: rho, rho_inv, theta, tau, tau_inv, sigma(i), sigma_inv(i)."""

    kind: str
    i: int | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown quasi-automorphism {self.kind!r}")
        if self.kind.startswith("sigma"):
            if self.i is None or self.i < 1:
                raise ValueError("braid generator needs an index i >= 1")
        elif self.i is not None:
            raise ValueError(f"{self.kind} takes no index")

    def inverse(self) -> "QuasiAuto":
        return QuasiAuto(_INVERSE[self.kind], self.i)

    @property
    def signature(self) -> int:
        return -1 if self.kind == "theta" else 1

    @classmethod
    def parse(cls, text: str) -> "QuasiAuto":
        """Accepts rho, rho-inv, theta, tau, tau-inv, sigma:<i>, sigma-inv:<i>."""
        name, _, idx = text.strip().partition(":")
        kind = name.replace("-", "_")
        return cls(kind, int(idx) if idx else None)

    def __str__(self) -> str:
        base = self.kind.replace("_", "-")
        return f"{base}:{self.i}" if self.i is not None else base


# ---------------------------------------------------------------- web matrix


def _chi(ctx: GrContext, v: Sequence[int]) -> Dict[Node, LaurentPoly]:
    return {node: LaurentPoly.monomial(int(v[ctx.index(node)])) for node in ctx.active_nodes()}


def web_matrix(ctx: GrContext, v: Sequence[int]) -> LMatrix:
    """W = (1_k | M) at chi_{a,b} = t**v_{(a,b)}.

    M_ij = (-1)**(k+i) * sum over chains 0 <= lam_{k-i} <= ... <= lam_1 <= j-1
    of prod_b prod_{a <= lam_b} chi_{a,b}, summed by a small dynamic program.
    """
    k, n = ctx.k, ctx.n
    if len(v) != ctx.m:
        raise ValueError(f"expected {ctx.m} coordinates, got {len(v)}")
    chi = _chi(ctx, v)
    width = n - k
    # prefix[b][x] = prod_{a=1..x} chi_{a,b}
    prefix: Dict[int, List[LaurentPoly]] = {}
    for b in range(1, k):
        acc = [ONE]
        for a in range(1, width):
            acc.append(acc[-1] * chi[(a, b)])
        prefix[b] = acc
    rows: List[List[LaurentPoly]] = []
    for i in range(1, k + 1):
        length = k - i
        sign = -1 if (k + i) % 2 else 1
        row = [ONE if r == i - 1 else ZERO for r in range(k)]
        for j in range(1, width + 1):
            if length == 0:
                total = ONE
            else:
                # dp over x = lam_b, chains lam_b <= lam_{b-1}
                dp = [prefix[1][x] for x in range(j)]
                for b in range(2, length + 1):
                    tail = ZERO
                    new = [ZERO] * j
                    for x in range(j - 1, -1, -1):
                        tail = tail + dp[x]
                        new[x] = prefix[b][x] * tail
                    dp = new
                total = ZERO
                for x in range(j):
                    total = total + dp[x]
            row.append(total * sign)
        rows.append(row)
    return LMatrix.from_rows(rows)


# ---------------------------------------------------------------- matrix maps


def _cross(vectors: Sequence[Column]) -> Column:
    """c with c^T z = det(vectors..., z)."""
    k = len(vectors) + 1
    out = []
    for r in range(k):
        e = [ONE if s == r else ZERO for s in range(k)]
        out.append(det_columns(list(vectors) + [e]))
    return out


def _scale(col: Column, c: LaurentPoly | int) -> Column:
    return [x * c for x in col]


def _lincomb(a: LaurentPoly, x: Column, b: LaurentPoly, y: Column) -> Column:
    return [a * p - b * q for p, q in zip(x, y)]


def _det_checked(cols: Sequence[Column]) -> LaurentPoly:
    d = det_columns(cols)
    if not d:
        raise SingularPivot("determinant vanished in a matrix map")
    return d


def _beta(i: int, k: int) -> int:
    if i <= k - 1:
        return -1 if (i * (k - i)) % 2 else 1
    return 1


def _map_columns(z: List[Column], f: QuasiAuto, k: int, n: int) -> List[Column]:
    """Image of the column list z (index 0 is z_1) under the matrix map f."""
    Z = lambda l: z[(l - 1) % n]  # noqa: E731  1-based, cyclic
    kind = f.kind
    if kind == "rho":
        s = (-1) ** (k - 1)
        return z[1:] + [_scale(z[0], s)]
    if kind == "rho_inv":
        s = (-1) ** (k - 1)
        return [_scale(z[-1], s)] + z[:-1]
    if kind == "theta":
        s = (-1) ** comb(k, 2)
        return [_scale(c, s) for c in reversed(z)]
    if kind == "tau":
        return [_scale(_cross([Z(l) for l in range(i - k + 1, i)]), _beta(i, k)) for i in range(1, n + 1)]
    if kind == "tau_inv":
        return [_cross([Z(l) for l in range(i + 1, i + k)]) for i in range(1, n + 1)]
    d = gcd(k, n)
    i = f.i
    out = list(z)
    if kind == "sigma":
        for l in range(1, n + 1):
            r = (l - i) % d
            if r == 0:
                out[l - 1] = Z(l + 1)
            elif r == 1 % d:
                a = l - 1
                top = _det_checked([Z(a)] + [Z(a + s) for s in range(2, k + 1)])
                low = _det_checked([Z(a + s) for s in range(1, k + 1)])
                out[l - 1] = _lincomb(top, Z(a + 1), low, Z(a))
        return out
    if kind == "sigma_inv":
        for l in range(1, n + 1):
            r = (l - i) % d
            if r == 0:
                a = l
                top = _det_checked([Z(a + s) for s in range(-k + 1, 0)] + [Z(a + 1)])
                low = _det_checked([Z(a + s) for s in range(-k + 1, 1)])
                out[l - 1] = _lincomb(top, Z(a), low, Z(a + 1))
            elif r == 1 % d:
                out[l - 1] = Z(l - 1)
        return out
    raise ValueError(kind)


def _reduce_sigma(f: QuasiAuto, ctx: GrContext) -> List[QuasiAuto]:
    """Rewrite sigma_i with i >= d as a conjugate of a base generator.

    The returned list is applied left to right as matrix maps.  Conjugation
    by rho shifts the index: applying rho, then sigma_i, then rho_inv acts
    on W as sigma_{i+1} does (checked numerically in the test suite).
    """
    d = ctx.d
    if d < 2:
        raise ValueError(f"Gr({ctx.k},{ctx.n}) has no braid generators (gcd 1)")
    if f.i <= d - 1:
        return [f]
    shift = f.i - (d - 1)
    base = QuasiAuto(f.kind, d - 1)
    return [QuasiAuto("rho")] * shift + [base] + [QuasiAuto("rho_inv")] * shift


def apply_quasi_auto(m: LMatrix, f: QuasiAuto, ctx: GrContext) -> LMatrix:
    """Apply the matrix map of f to a k x n matrix.

    Braid maps use the denominator-cleared form: only the replaced column
    carries the cleared determinant, which leaves every y-hat unchanged.
    """
    if m.rows != ctx.k or m.cols != ctx.n:
        raise ValueError("matrix shape does not match the context")
    z = m.columns()
    steps = _reduce_sigma(f, ctx) if f.kind.startswith("sigma") else [f]
    for g in steps:
        z = _map_columns(z, g, ctx.k, ctx.n)
    return LMatrix.from_columns(z)


# ---------------------------------------------------------------- y-hat and Q


class _Minors:
    """Memoised Plücker minors of one matrix."""

    def __init__(self, m: LMatrix):
        self.cols = m.columns()
        self.cache: Dict[Tuple[int, ...], LaurentPoly] = {}

    def __call__(self, cset: Tuple[int, ...]) -> LaurentPoly:
        p = self.cache.get(cset)
        if p is None:
            p = det_columns([self.cols[c - 1] for c in cset])
            if not p:
                raise SingularPivot(f"Plücker minor {cset} vanished")
            self.cache[cset] = p
        return p


def yhat_value(m: LMatrix, ctx: GrContext, node: Node) -> Tuple[LaurentPoly, LaurentPoly]:
    """(numerator, denominator) of the initial-seed y-hat at node, evaluated on m."""
    minors = _Minors(m)
    num = ONE
    for src in ctx.arrows_in(node):
        num = num * minors(ctx.plucker_set(src))
    den = ONE
    for dst in ctx.arrows_out(node):
        den = den * minors(ctx.plucker_set(dst))
    return num, den


def yhat_degrees(m: LMatrix, ctx: GrContext, convention: str = "max") -> List[int]:
    """Trop^+ (max) or Trop^- (min) of every active y-hat, in node order.

    Degree and valuation are additive over products, so each minor is
    computed once and only its extreme exponent is kept.
    """
    if convention not in ("max", "min"):
        raise ValueError("convention must be 'max' or 'min'")
    minors = _Minors(m)
    ext: Dict[Node, int] = {}

    def e(node: Node) -> int:
        if node not in ext:
            p = minors(ctx.plucker_set(node))
            ext[node] = p.deg() if convention == "max" else p.val()
        return ext[node]

    out = []
    for node in ctx.active_nodes():
        out.append(sum(e(s) for s in ctx.arrows_in(node)) - sum(e(s) for s in ctx.arrows_out(node)))
    return out


def trop_Q(ctx: GrContext, f: QuasiAuto, v: Sequence[int], convention: str = "max") -> List[int]:
    """Q^+_f(v) or Q^-_f(v): apply f^{-1} to W(t**v) and tropicalise each y-hat."""
    w = web_matrix(ctx, v)
    return yhat_degrees(apply_quasi_auto(w, f.inverse(), ctx), ctx, convention)


def trop_Q_word(ctx: GrContext, word: Sequence[QuasiAuto], v: Sequence[int], convention: str = "max") -> List[int]:
    """Q of the composite f_1 f_2 ... f_r, i.e. Q_{f_1} after ... after Q_{f_r}."""
    out = list(v)
    for f in reversed(list(word)):
        out = trop_Q(ctx, f, out, convention)
    return out


def trop_map(ctx: GrContext, f: QuasiAuto, convention: str = "max") -> Callable[[Sequence[int]], List[int]]:
    return lambda v: trop_Q(ctx, f, v, convention)
