"""Rectangular semistandard tableaux, dominant monomials and the g-vector dictionary.

A tableau with k rows is stored column-wise; each column is a strictly
increasing tuple of length k and the rows read left to right are weakly
increasing.  Products of tableaux are row-wise multiset unions.

A one-column tableau with content [a, a+k] minus an interior r is the
fundamental tableau of the variable Y_{i,s} with i = k - r + a and
s = k - r - a.  Every column decomposes into fundamental ones, which gives
the dominant monomial M_T and from it the truncated g-vector.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from .errors import HasFrozenFactor, NotAFactor, NotSemistandard
from .grassmannian import GrContext

__all__ = [
    "Tableau",
    "DominantMonomial",
    "union",
    "quotient",
    "reduce",
    "small_gap_form",
    "tableau_to_monomial",
    "monomial_to_tableau",
    "initial_cluster_monomials",
    "gvector_to_tableau",
    "tableau_to_gvector",
    "degree",
    "has_frozen_factor",
    "strip_frozen",
    "frozen_columns",
    "bender_knuth",
    "promotion",
    "evacuation",
    "enumerate_ssyt",
]

Column = Tuple[int, ...]


@dataclass(frozen=True)
class Tableau:
    k: int
    n: int
    cols: Tuple[Column, ...]

    def __post_init__(self):
        cols = tuple(tuple(int(x) for x in c) for c in self.cols)
        for c in cols:
            if len(c) != self.k:
                raise NotSemistandard(f"column {c} does not have {self.k} entries")
            if any(a >= b for a, b in zip(c, c[1:])):
                raise NotSemistandard(f"column {c} is not strictly increasing")
            if c and not (1 <= c[0] and c[-1] <= self.n):
                raise NotSemistandard(f"column {c} leaves [1,{self.n}]")
        for left, right in zip(cols, cols[1:]):
            if any(a > b for a, b in zip(left, right)):
                raise NotSemistandard("rows are not weakly increasing")
        object.__setattr__(self, "cols", cols)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n: int) -> "Tableau":
        return _from_row_multisets([sorted(r) for r in rows], len(rows), n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], k: int, n: int) -> "Tableau":
        """Any collection of columns; they are merged row-wise and re-sorted."""
        return union_all((cls(k, n, (tuple(c),)) for c in cols), k, n)

    @classmethod
    def empty(cls, k: int, n: int) -> "Tableau":
        return cls(k, n, ())

    def rows(self) -> List[List[int]]:
        return [[c[r] for c in self.cols] for r in range(self.k)]

    @property
    def width(self) -> int:
        return len(self.cols)

    def is_empty(self) -> bool:
        return not self.cols

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "cols": [list(c) for c in self.cols]}

    @classmethod
    def from_json(cls, data: dict | str) -> "Tableau":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_columns(data["cols"], data["k"], data["n"])

    def __str__(self) -> str:
        return str([list(c) for c in self.cols])


def _from_row_multisets(rows: Sequence[Sequence[int]], k: int, n: int) -> Tableau:
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise NotSemistandard("rows of different lengths")
    w = widths.pop() if widths else 0
    rows = [sorted(r) for r in rows]
    return Tableau(k, n, tuple(tuple(rows[r][j] for r in range(k)) for j in range(w)))


def union(s: Tableau, t: Tableau) -> Tableau:
    """Row-wise multiset union."""
    if (s.k, s.n) != (t.k, t.n):
        raise ValueError("tableaux live in different SSYT(k,[n])")
    return _from_row_multisets([a + b for a, b in zip(s.rows(), t.rows())], s.k, s.n)


def union_all(ts: Iterable[Tableau], k: int, n: int) -> Tableau:
    rows: List[List[int]] = [[] for _ in range(k)]
    for t in ts:
        for r, c in zip(rows, t.rows()):
            r.extend(c)
    return _from_row_multisets(rows, k, n)


def _row_counters(t: Tableau) -> List[Counter]:
    return [Counter(r) for r in t.rows()]


def is_factor(s: Tableau, t: Tableau) -> bool:
    return all(not (a - b) for a, b in zip(_row_counters(s), _row_counters(t)))


def quotient(t: Tableau, s: Tableau) -> Tableau:
    """Remove the rows of s from the rows of t (multiset difference)."""
    if not is_factor(s, t):
        raise NotAFactor("not a row-wise factor")
    rows = []
    for a, b in zip(_row_counters(t), _row_counters(s)):
        rows.append(sorted((a - b).elements()))
    return _from_row_multisets(rows, t.k, t.n)


# ---------------------------------------------------------------- frozen / trivial factors


def frozen_columns(k: int, n: int) -> List[Column]:
    """All n frozen Plücker columns: cyclic intervals of length k."""
    out = []
    for start in range(n):
        out.append(tuple(sorted(((start + j) % n) + 1 for j in range(k))))
    return out


def _consecutive_columns(k: int, n: int) -> List[Column]:
    return [tuple(range(a + 1, a + k + 1)) for a in range(n - k + 1)]


def _remainder(rows: List[Counter], col: Column, k: int) -> List[Counter] | None:
    """Rows with col removed, if col is a factor leaving a semistandard tableau."""
    if not all(rows[r][col[r]] > 0 for r in range(k)):
        return None
    out = [c.copy() for c in rows]
    for r in range(k):
        out[r][col[r]] -= 1
    lists = [sorted(c.elements()) for c in out]
    for r in range(k - 1):
        if any(a >= b for a, b in zip(lists[r], lists[r + 1])):
            return None
    return out


def _strip(t: Tableau, candidates: Sequence[Column]) -> Tableau:
    rows = _row_counters(t)
    changed = True
    while changed:
        changed = False
        for col in candidates:
            nxt = _remainder(rows, col, t.k)
            while nxt is not None:
                rows = nxt
                changed = True
                nxt = _remainder(rows, col, t.k)
    return _from_row_multisets([sorted(c.elements()) for c in rows], t.k, t.n)


def reduce(t: Tableau) -> Tableau:
    """Remove a maximal trivial factor (columns of consecutive entries)."""
    return _strip(t, _consecutive_columns(t.k, t.n))


def strip_frozen(t: Tableau) -> Tableau:
    """Remove every frozen one-column factor, consecutive or cyclic."""
    cand = _consecutive_columns(t.k, t.n)
    cand += [c for c in frozen_columns(t.k, t.n) if c not in cand]
    return _strip(t, cand)


def has_frozen_factor(t: Tableau) -> bool:
    rows = _row_counters(t)
    return any(_remainder(rows, c, t.k) is not None for c in frozen_columns(t.k, t.n))


# ---------------------------------------------------------------- monomials


@dataclass(frozen=True)
class DominantMonomial:
    """Laurent monomial in the Y_{i,s}; exps maps (i, s) to a nonzero integer."""

    exps: Tuple[Tuple[Tuple[int, int], int], ...]

    @classmethod
    def from_dict(cls, d: Dict[Tuple[int, int], int]) -> "DominantMonomial":
        for (i, s) in d:
            if (i - s) % 2:
                raise ValueError(f"Y_({i},{s}) violates the parity rule")
        return cls(tuple(sorted((key, e) for key, e in d.items() if e)))

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return dict(self.exps)

    def is_dominant(self) -> bool:
        return all(e >= 0 for _, e in self.exps)

    def __mul__(self, other: "DominantMonomial") -> "DominantMonomial":
        d = Counter(self.as_dict())
        for key, e in other.exps:
            d[key] += e
        return DominantMonomial.from_dict(dict(d))

    def __pow__(self, p: int) -> "DominantMonomial":
        return DominantMonomial.from_dict({key: e * p for key, e in self.exps})

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        parts = []
        for (i, s), e in self.exps:
            parts.append(f"Y_{{{i},{s}}}" + (f"^{e}" if e != 1 else ""))
        return "".join(parts)


ONE_MONOMIAL = DominantMonomial(())


def fundamental_column(i: int, s: int, k: int) -> Column:
    """Column of Y_{i,s}: [a, a+k] minus r with a = (i-s)/2, r = k-(i+s)/2."""
    if (i - s) % 2:
        raise ValueError("parity")
    a = (i - s) // 2
    r = k - (i + s) // 2
    if not a < r < a + k:
        raise ValueError(f"Y_({i},{s}) has no fundamental tableau for k={k}")
    return tuple(x for x in range(a, a + k + 1) if x != r)


def column_monomial(col: Column, k: int) -> Dict[Tuple[int, int], int]:
    """Fundamental decomposition of one column: each interior gap r gives Y_{k-p, k-2r+p}."""
    out: Counter = Counter()
    present = set(col)
    p = 0
    for r in range(col[0], col[-1] + 1):
        if r in present:
            p += 1
        else:
            out[(k - p, k - 2 * r + p)] += 1
    return dict(out)


def tableau_to_monomial(t: Tableau, ctx: GrContext | None = None) -> DominantMonomial:
    total: Counter = Counter()
    for c in t.cols:
        total.update(column_monomial(c, t.k))
    return DominantMonomial.from_dict(dict(total))


def monomial_to_tableau(m: DominantMonomial, k: int, n: int) -> Tableau:
    """Union of the fundamental columns of a dominant monomial (small-gap form)."""
    if not m.is_dominant():
        raise ValueError("monomial is not dominant")
    rows: List[List[int]] = [[] for _ in range(k)]
    for (i, s), e in m.exps:
        col = fundamental_column(i, s, k)
        for r in range(k):
            rows[r].extend([col[r]] * e)
    return _from_row_multisets(rows, k, n)


def small_gap_form(t: Tableau) -> Tableau:
    return monomial_to_tableau(tableau_to_monomial(t), t.k, t.n)


def initial_cluster_monomials(ctx: GrContext, include_frozen: bool = False) -> List[DominantMonomial]:
    """Node (a,b) carries prod_{j=1..a} Y_{b, b-2j}; active nodes in node order.

    With include_frozen the rows a = n-k follow (b = 1..k-1); the remaining
    frozen Plücker coordinates have the empty monomial.
    """
    nodes = ctx.active_nodes()
    if include_frozen:
        nodes = nodes + [(ctx.n - ctx.k, b) for b in range(1, ctx.k)]
    return [
        DominantMonomial.from_dict({(b, b - 2 * j): 1 for j in range(1, a + 1)})
        for a, b in nodes
    ]


# ---------------------------------------------------------------- g-vectors


def _exponent_table(m: DominantMonomial, ctx: GrContext) -> Dict[Tuple[int, int], int]:
    """e[(b, j)] = exponent of Y_{b, b-2j}, j in [1, n-k]."""
    e = {(b, j): 0 for b in range(1, ctx.k) for j in range(1, ctx.n - ctx.k + 1)}
    for (i, s), x in m.exps:
        j = (i - s) // 2
        if (i, j) not in e:
            raise ValueError(f"Y_({i},{s}) lies outside the window of Gr({ctx.k},{ctx.n})")
        e[(i, j)] = x
    return e


def tableau_to_gvector(t: Tableau, ctx: GrContext) -> List[int]:
    """Truncated g-vector; g_(a,b) = e_{b,a} - e_{b,a+1}."""
    if (t.k, t.n) != (ctx.k, ctx.n):
        raise ValueError("tableau and context disagree on (k, n)")
    if has_frozen_factor(t):
        raise HasFrozenFactor(f"{t} has a frozen factor")
    e = _exponent_table(tableau_to_monomial(t), ctx)
    return [e[(b, a)] - e[(b, a + 1)] for a, b in ctx.active_nodes()]


def gvector_to_tableau(g: Sequence[int], ctx: GrContext) -> Tableau:
    """The unique tableau without frozen factors whose truncated g-vector is g."""
    if len(g) != ctx.m:
        raise ValueError(f"expected {ctx.m} entries, got {len(g)}")
    k, n = ctx.k, ctx.n
    top = n - k
    exps: Dict[Tuple[int, int], int] = {}
    for b in range(1, k):
        # e_{b,j} = sum_{a >= j} g_(a,b) over active a
        acc = 0
        col = {}
        for j in range(top, 0, -1):
            if j <= top - 1:
                acc += int(g[ctx.index((j, b))])
            col[j] = acc
        shift = max(0, -min(col.values()))
        for j, x in col.items():
            if x + shift:
                exps[(b, b - 2 * j)] = x + shift
    t = monomial_to_tableau(DominantMonomial.from_dict(exps), k, n)
    return strip_frozen(t)


def degree(g: Sequence[int], ctx: GrContext) -> int:
    """Number of columns of the frozen-free tableau of g."""
    return gvector_to_tableau(g, ctx).width


# ---------------------------------------------------------------- Bender-Knuth and friends


def bender_knuth(t: Tableau, i: int) -> Tableau:
    """Swap the free i's and (i+1)'s in every row; letters sharing a column stay."""
    if not 1 <= i <= t.n - 1:
        raise ValueError(f"BK index {i} outside 1..{t.n - 1}")
    rows = t.rows()
    width = t.width
    locked = [[False] * width for _ in range(t.k)]
    for j, c in enumerate(t.cols):
        for r in range(t.k - 1):
            if c[r] == i and c[r + 1] == i + 1:
                locked[r][j] = locked[r + 1][j] = True
    new_rows = []
    for r, row in enumerate(rows):
        free_i = sum(1 for j, x in enumerate(row) if x == i and not locked[r][j])
        free_j = sum(1 for j, x in enumerate(row) if x == i + 1 and not locked[r][j])
        if free_i == free_j:
            new_rows.append(row)
            continue
        out = [x for j, x in enumerate(row) if x not in (i, i + 1) or locked[r][j]]
        out += [i] * free_j + [i + 1] * free_i
        new_rows.append(sorted(out))
    return _from_row_multisets(new_rows, t.k, t.n)


def promotion(t: Tableau) -> Tableau:
    """BK_1 o BK_2 o ... o BK_{n-1}; BK_{n-1} acts first."""
    for i in range(t.n - 1, 0, -1):
        t = bender_knuth(t, i)
    return t


def evacuation(t: Tableau) -> Tableau:
    """BK_1 (BK_2 BK_1) ... (BK_{n-1} ... BK_1), rightmost block first."""
    for top in range(t.n - 1, 0, -1):
        for i in range(1, top + 1):
            t = bender_knuth(t, i)
    return t


# ---------------------------------------------------------------- enumeration


def _columns(k: int, n: int) -> List[Column]:
    from itertools import combinations

    return [tuple(c) for c in combinations(range(1, n + 1), k)]


def enumerate_ssyt(k: int, n: int, width: int, frozen_free: bool = True) -> Iterator[Tableau]:
    """All SSYT(k,[n]) with exactly `width` columns, optionally without frozen factors.

    Columns are chosen as a weakly increasing (componentwise) chain, which
    is exactly the semistandard condition.
    """
    cols = _columns(k, n)
    frozen = set(frozen_columns(k, n))
    if frozen_free:
        cols = [c for c in cols if c not in frozen]
    cols.sort()
    idx = {c: p for p, c in enumerate(cols)}

    def dominated(a: Column, b: Column) -> bool:
        return all(x <= y for x, y in zip(a, b))

    succ = {c: [d for d in cols[idx[c]:] if dominated(c, d)] for c in cols}

    def rec(prefix: List[Column]):
        if len(prefix) == width:
            t = Tableau(k, n, tuple(prefix))
            if not frozen_free or not has_frozen_factor(t):
                yield t
            return
        options = succ[prefix[-1]] if prefix else cols
        for c in options:
            prefix.append(c)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])
