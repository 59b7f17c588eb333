"""Labelled seeds, their C- and G-matrices, and tropical y-hat mutation.

The engine is purely integer: exchange matrices, c-vectors and g-vectors are
tracked along a mutation word, and the piecewise-linear change-of-coordinates
maps Q are evaluated pointwise.  Node indices in the public API are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import NodeOutOfRange

Matrix = np.ndarray


def _pos(x):
    return np.maximum(x, 0)


def _sgn(x: int) -> int:
    return int(x > 0) - int(x < 0)


def skew_symmetrizer(b: Matrix, bound: int = 6) -> Tuple[int, ...] | None:
    """Positive diagonal D (entries <= bound) with D.b skew-symmetric, or None."""
    b = np.asarray(b, dtype=np.int64)
    key = (b.shape, b.tobytes(), bound)
    if key not in _SYMMETRIZERS:
        _SYMMETRIZERS[key] = _search_symmetrizer(b, bound)
    return _SYMMETRIZERS[key]


_SYMMETRIZERS: Dict[tuple, Tuple[int, ...] | None] = {}


def _search_symmetrizer(b: Matrix, bound: int) -> Tuple[int, ...] | None:
    n = b.shape[0]
    if np.any(np.diag(b) != 0):
        return None
    for d in product(range(1, bound + 1), repeat=n):
        db = np.diag(d) @ b
        if np.array_equal(db, -db.T):
            return d
    return None


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetrizable n x n integer matrix."""

    b: Matrix

    def __post_init__(self):
        arr = np.array(self.b, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("exchange matrix must be square")
        if skew_symmetrizer(arr) is None:
            raise ValueError("exchange matrix is not skew-symmetrizable (D entries <= 6)")
        arr.setflags(write=False)
        object.__setattr__(self, "b", arr)

    @property
    def n(self) -> int:
        return self.b.shape[0]

    def op(self) -> "ExchangeMatrix":
        return ExchangeMatrix(-self.b)

    def dual(self) -> "ExchangeMatrix":
        return ExchangeMatrix(-self.b.T)

    def mutate(self, k: int) -> "ExchangeMatrix":
        return ExchangeMatrix(mutate_matrix(self.b, k))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExchangeMatrix) and np.array_equal(self.b, other.b)

    def __hash__(self) -> int:
        return hash(self.b.tobytes())

    def tolist(self) -> List[List[int]]:
        return self.b.tolist()


def mutate_matrix(b: Matrix, k: int) -> Matrix:
    """Matrix mutation at 1-based k; b may be an extended m x n matrix."""
    b = np.asarray(b, dtype=np.int64)
    m, n = b.shape
    if not 1 <= k <= n:
        raise NodeOutOfRange(f"node {k} outside 1..{n}")
    k -= 1
    out = b.copy()
    col = b[:, k]
    row = b[k, :]
    for i in range(m):
        for j in range(n):
            if i == k or j == k:
                out[i, j] = -b[i, j]
            else:
                out[i, j] = b[i, j] + _sgn(col[i]) * max(col[i] * row[j], 0)
    return out


@dataclass(frozen=True)
class Seed:
    """Exchange matrix at vertex t with C_{t,t0}, G_{t,t0} and the word t0 -> t."""

    b: ExchangeMatrix
    c: Matrix
    g: Matrix
    label: Tuple[int, ...] = field(default=())

    @classmethod
    def initial(cls, b) -> "Seed":
        b = b if isinstance(b, ExchangeMatrix) else ExchangeMatrix(b)
        eye = np.eye(b.n, dtype=np.int64)
        return cls(b, eye, eye.copy(), ())

    @property
    def n(self) -> int:
        return self.b.n

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Seed)
            and self.b == other.b
            and np.array_equal(self.c, other.c)
            and np.array_equal(self.g, other.g)
        )

    def __hash__(self) -> int:
        return hash((self.b, self.c.tobytes(), self.g.tobytes()))


def _g_column(b: Matrix, c: Matrix, g: Matrix, b0: Matrix, k: int, sign: int) -> np.ndarray:
    # sign=+1 uses [b]_+ and [c]_+, sign=-1 the equivalent [-b]_+ and [-c]_+ form
    col = -g[:, k].copy()
    col += g @ _pos(sign * b[:, k])
    col -= b0 @ _pos(sign * c[:, k])
    return col


def mutate_seed(s: Seed, k: int, reference_b0: ExchangeMatrix | Matrix, form: int = 1) -> Seed:
    """Mutate at 1-based k, updating B, C_{t,t0} and G_{t,t0}.

    C is read off rows n+1..2n of the principal-coefficient extended matrix;
    the g-vector of the exchanged variable follows the standard rule with
    column j of B_{t0} subtracted [c_jk]_+ times.  ``form=-1`` evaluates the
    second (sign-flipped) version of that rule; both agree.
    """
    n = s.n
    if not 1 <= k <= n:
        raise NodeOutOfRange(f"node {k} outside 1..{n}")
    b0 = reference_b0.b if isinstance(reference_b0, ExchangeMatrix) else np.asarray(reference_b0)
    ext = np.vstack([s.b.b, s.c])
    ext2 = mutate_matrix(ext, k)
    g2 = s.g.copy()
    g2[:, k - 1] = _g_column(s.b.b, s.c, s.g, b0, k - 1, form)
    return Seed(ExchangeMatrix(ext2[:n]), ext2[n:], g2, s.label + (k,))


def mutate_word(s: Seed, word: Sequence[int], reference_b0=None) -> Seed:
    ref = reference_b0 if reference_b0 is not None else s.b
    for k in word:
        s = mutate_seed(s, k, ref)
    return s


def trop_step(v: Sequence[int], b: ExchangeMatrix | Matrix, k: int, convention: str = "max") -> List[int]:
    """Tropical change of initial vertex in direction k (1-based).

    max: v'_k = -v_k, v'_j = v_j + [b_jk]_+ v_k - b_jk min(v_k, 0).
    min: the same rational map tropicalised with min, which equals the
    max rule for -b.
    """
    bm = b.b if isinstance(b, ExchangeMatrix) else np.asarray(b)
    n = bm.shape[0]
    if not 1 <= k <= n:
        raise NodeOutOfRange(f"node {k} outside 1..{n}")
    if convention == "min":
        bm = -bm
    elif convention != "max":
        raise ValueError("convention must be 'max' or 'min'")
    k -= 1
    vk = int(v[k])
    out = [int(x) for x in v]
    out[k] = -vk
    low = min(vk, 0)
    for j in range(n):
        if j != k:
            bjk = int(bm[j, k])
            out[j] = int(v[j]) + max(bjk, 0) * vk - bjk * low
    return out


def trop_compose(v: Sequence[int], b0: ExchangeMatrix | Matrix, word: Sequence[int], convention: str = "max") -> List[int]:
    """Apply trop_step along ``word``, mutating the carried matrix as it goes."""
    b = b0 if isinstance(b0, ExchangeMatrix) else ExchangeMatrix(b0)
    out = [int(x) for x in v]
    for k in word:
        out = trop_step(out, b, k, convention)
        b = b.mutate(k)
    return out


def transport_g_matrix(g: Matrix, b0: ExchangeMatrix, word: Sequence[int], convention: str = "max") -> Matrix:
    """Columns of G_{t,t0} pushed through Q_{t',t0}, where t' = word(t0)."""
    g = np.asarray(g)
    cols = [trop_compose(g[:, j], b0, word, convention) for j in range(g.shape[1])]
    return np.array(cols, dtype=np.int64).T


# ---------------------------------------------------------------- dualities


def _is_identity(m: Matrix) -> bool:
    return np.array_equal(m, np.eye(m.shape[0], dtype=m.dtype))


def reverse_seed(s: Seed, b_at_t: ExchangeMatrix) -> Seed:
    """Seed at t0 computed with t as the reference vertex (reverse the word)."""
    out = Seed.initial(b_at_t)
    return mutate_word(out, tuple(reversed(s.label)), b_at_t)


def check_tropical_duality(s: Seed, s_dual: Seed, s_op: Seed, s_opdual: Seed) -> Dict[str, dict]:
    """Check the four tropical dualities between matched seeds at the same vertex.

    Returns {identity name: {"ok": bool, ...matrices on failure}}.
    """
    report: Dict[str, dict] = {}

    def record(name, lhs, rhs):
        ok = _is_identity(lhs @ rhs)
        entry = {"ok": ok}
        if not ok:
            entry.update(lhs=lhs.tolist(), rhs=rhs.tolist())
        report[name] = entry

    record("G^T = (C^dual)^-1", s.g.T, s_dual.c)
    record("(G^dual)^T = C^-1", s_dual.g.T, s.c)
    back_op = reverse_seed(s_op, s_op.b)
    record("C = (C^op reversed)^-1", s.c, back_op.c)
    back_opdual = reverse_seed(s_opdual, s_opdual.b)
    record("C^dual = (C^op,dual reversed)^-1", s_dual.c, back_opdual.c)
    return report


# ---------------------------------------------------------------- rank two families

RANK2_FAMILIES: Dict[str, List[List[int]]] = {
    "C2": [[0, 2], [-1, 0]],
    "B2": [[0, 1], [-2, 0]],
    "A2": [[0, 1], [-1, 0]],
}


def family_matrix(name: str) -> ExchangeMatrix:
    """C2, B2, A2 or any of them with the suffix ``-op``."""
    base, _, suffix = name.partition("-")
    b = ExchangeMatrix(RANK2_FAMILIES[base])
    return b.op() if suffix == "op" else b


def alternating_table(b_t0: ExchangeMatrix, steps: int = 5) -> List[Dict[str, list]]:
    """Rows t0..t_steps of B, C_{t,t0}, G_{t,t0}, C_{t,t1}, G_{t,t1}.

    Vertices follow the alternating path t0 -1- t1 -2- t2 -1- t3 ...
    """
    word = [1 if i % 2 == 0 else 2 for i in range(steps)]
    from_t0 = [Seed.initial(b_t0)]
    for k in word:
        from_t0.append(mutate_seed(from_t0[-1], k, b_t0))
    b_t1 = from_t0[1].b
    s1 = Seed.initial(b_t1)
    from_t1 = {1: s1, 0: mutate_seed(s1, 1, b_t1)}
    cur = s1
    for t in range(2, steps + 1):
        cur = mutate_seed(cur, word[t - 1], b_t1)
        from_t1[t] = cur
    rows = []
    for t in range(steps + 1):
        rows.append(
            {
                "B": from_t0[t].b.tolist(),
                "C_t0": from_t0[t].c.tolist(),
                "G_t0": from_t0[t].g.tolist(),
                "C_t1": from_t1[t].c.tolist(),
                "G_t1": from_t1[t].g.tolist(),
            }
        )
    return rows
