"""Quasi-automorphism dynamics on g-vectors and tableaux.

Fixed points of a braid generator, their stable/unstable classification,
braid-group orbits pruned by degree, and the count of orbit points per degree.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import CapTooSmall, Inconclusive, SingularPivot
from .grassmannian import GrContext, QuasiAuto, trop_Q
from .tableaux import (
    Tableau,
    column_monomial,
    degree,
    enumerate_ssyt,
    gvector_to_tableau,
    tableau_to_gvector,
)

__all__ = [
    "FixedPointReport",
    "OrbitEntry",
    "StabilityVerdict",
    "act_on_tableau",
    "theta_tilde",
    "find_fixed_points",
    "classify_stability",
    "braid_orbit",
    "totient_profile",
    "totient_closed_form",
    "braid_generators",
]

Vec = Tuple[int, ...]


def act_on_tableau(f: QuasiAuto, t: Tableau, ctx: GrContext, convention: str = "max") -> Tableau:
    """f(T) = T_{Q_f(g_T)}."""
    return gvector_to_tableau(trop_Q(ctx, f, tableau_to_gvector(t, ctx), convention), ctx)


def theta_tilde(t: Tableau, ctx: GrContext) -> Tableau:
    """T_{-g^pi}: negate and reverse the g-vector of T."""
    g = tableau_to_gvector(t, ctx)
    return gvector_to_tableau([-x for x in reversed(g)], ctx)


# ---------------------------------------------------------------- stability


@dataclass
class StabilityVerdict:
    stable: bool
    trials: List[dict] = field(default_factory=list)

    @property
    def label(self) -> str:
        return "stable" if self.stable else "unstable"


def _unit(v: Sequence[float]) -> List[float]:
    norm = math.sqrt(sum(x * x for x in v))
    return [x / norm for x in v] if norm else [0.0] * len(v)


def _dist(a: Sequence[float], b: Sequence[float]) -> float:
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


def _positive_multiple(d: Sequence[int], g: Sequence[int]) -> bool:
    """d = c * g for some rational c > 0, decided exactly."""
    if not any(g) or not any(d):
        return False
    j = next(i for i, x in enumerate(g) if x)
    if d[j] * g[j] <= 0:
        return False
    return all(d[i] * g[j] == g[i] * d[j] for i in range(len(g)))


def _eventual_drift(orbit: List[Vec], max_period: int, repeats: int) -> Optional[Vec]:
    """Increment D with orbit[j+p] - orbit[j] = D for the last repeats*p steps.

    Returns the per-period drift of the smallest such period, or None when
    the tail of the orbit is not yet eventually linear.
    """
    L = len(orbit)
    for p in range(1, max_period + 1):
        need = repeats * p + p
        if L < need:
            break
        tail = orbit[L - need:]
        d = tuple(a - b for a, b in zip(tail[p], tail[0]))
        ok = True
        for j in range(1, len(tail) - p):
            if tuple(a - b for a, b in zip(tail[j + p], tail[j])) != d:
                ok = False
                break
        if ok:
            return d
    return None


def _random_start(m: int, rng: random.Random, bound: int = 20) -> List[int]:
    return [rng.randint(-bound, bound) for _ in range(m)]


def classify_stability(
    ctx: GrContext,
    generator: QuasiAuto,
    g: Sequence[int],
    trials: int = 8,
    max_iter: int = 60,
    tol: float = 1e-9,
    seed: int = 0,
    max_period: int = 6,
    repeats: int = 3,
) -> StabilityVerdict:
    """Decide whether generic orbits of the generator line up with the ray of g.

    Each trial iterates the tropical map from a random integer start.  Orbits
    of these piecewise-linear maps become eventually linear: from some point
    on, orbit[j+p] - orbit[j] is a constant drift D.  The limiting direction
    is then D itself, so its distance to the unit direction of g is measured
    on an exact integer vector.  D = 0 means the orbit is eventually periodic
    and has no directional limit.  If no drift is detected within max_iter,
    the distance of the last iterate is used; a value below tol counts as
    convergence, anything else raises Inconclusive.
    """
    rng = random.Random(seed)
    ug = _unit(g)
    verdict = StabilityVerdict(stable=True)
    for trial in range(trials):
        while True:
            v = tuple(_random_start(ctx.m, rng))
            try:
                orbit = [v]
                drift = None
                for _ in range(max_iter):
                    orbit.append(tuple(trop_Q(ctx, generator, orbit[-1])))
                    drift = _eventual_drift(orbit, max_period, repeats)
                    if drift is not None:
                        break
                break
            except SingularPivot:
                continue
        record = {"start": list(v), "iterations": len(orbit) - 1}
        if drift is not None:
            if not any(drift):
                record.update(outcome="periodic", distance=None)
                converged = False
            else:
                dist = _dist(_unit(drift), ug)
                exact = _positive_multiple(drift, g)
                record.update(outcome="drift", drift=list(drift), distance=0.0 if exact else dist)
                converged = exact or dist < tol
        else:
            dist = _dist(_unit(orbit[-1]), ug)
            record.update(outcome="no drift", distance=dist)
            if dist >= tol:
                raise Inconclusive(
                    f"trial {trial}: no eventual drift after {max_iter} steps, distance {dist:.3g}"
                )
            converged = True
        record["converged"] = converged
        verdict.trials.append(record)
        if not converged:
            verdict.stable = False
            break
    return verdict


# ---------------------------------------------------------------- fixed points


@dataclass
class FixedPointReport:
    g: List[int]
    tableau: Tableau
    rank: int
    stability: Optional[str] = None
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "tableau": self.tableau.to_json(),
            "rank": self.rank,
            "stability": self.stability,
            "witness": self.witness,
        }


def _column_gvectors(ctx: GrContext) -> Dict[Tuple[int, ...], List[int]]:
    """Truncated g-vector contribution of every column (frozen ones included)."""
    from itertools import combinations

    out = {}
    for col in combinations(range(1, ctx.n + 1), ctx.k):
        mono = column_monomial(col, ctx.k)
        e = {(i, (i - s) // 2): x for (i, s), x in mono.items()}
        out[col] = [e.get((b, a), 0) - e.get((b, a + 1), 0) for a, b in ctx.active_nodes()]
    return out


def find_fixed_points(
    ctx: GrContext,
    generator: QuasiAuto,
    rank: int,
    classify: bool = True,
    **stability_kwargs,
) -> List[FixedPointReport]:
    """Frozen-free tableaux with `rank` columns whose g-vector the generator fixes."""
    colg = _column_gvectors(ctx)
    out = []
    for t in enumerate_ssyt(ctx.k, ctx.n, rank):
        g = [sum(x) for x in zip(*(colg[c] for c in t.cols))]
        try:
            image = trop_Q(ctx, generator, g)
        except SingularPivot:
            image = None
        if image == g:
            out.append(FixedPointReport(g=g, tableau=t, rank=rank))
    if classify:
        for rep in out:
            verdict = classify_stability(ctx, generator, rep.g, **stability_kwargs)
            rep.stability = verdict.label
            rep.witness = verdict.trials[-1]
    return out


# ---------------------------------------------------------------- orbits


@dataclass(frozen=True)
class OrbitEntry:
    g: Vec
    degree: int
    word: Tuple[str, ...]

    def to_json(self) -> dict:
        return {"g": list(self.g), "degree": self.degree, "word": list(self.word)}


def braid_generators(ctx: GrContext) -> List[QuasiAuto]:
    """sigma_i and sigma_i^{-1} for i in [d]."""
    out = []
    for i in range(1, ctx.d + 1):
        out += [QuasiAuto("sigma", i), QuasiAuto("sigma_inv", i)]
    return out


def braid_orbit(
    ctx: GrContext,
    seeds: Iterable[Sequence[int]],
    degree_cap: int,
    generators: Optional[Sequence[QuasiAuto]] = None,
    max_word: int = 64,
) -> List[OrbitEntry]:
    """Breadth-first closure of seeds under the braid generators, pruned by degree.

    Points of degree above degree_cap are discarded and not expanded.  A word
    longer than max_word raises RuntimeError rather than truncating silently.
    The result is sorted by (degree, g) so it is independent of the schedule.
    """
    gens = list(generators) if generators is not None else braid_generators(ctx)
    seen: Dict[Vec, OrbitEntry] = {}
    queue: deque = deque()
    for s in seeds:
        s = tuple(int(x) for x in s)
        dg = degree(s, ctx)
        if dg <= degree_cap and s not in seen:
            seen[s] = OrbitEntry(s, dg, ())
            queue.append(s)
    while queue:
        g = queue.popleft()
        entry = seen[g]
        for f in gens:
            h = tuple(trop_Q(ctx, f, g))
            if h in seen:
                continue
            dh = degree(h, ctx)
            if dh > degree_cap:
                continue
            word = entry.word + (str(f),)
            if len(word) > max_word:
                raise RuntimeError(f"orbit word exceeded {max_word} letters at {h}")
            seen[h] = OrbitEntry(h, dh, word)
            queue.append(h)
    return sorted(seen.values(), key=lambda e: (e.degree, e.g))


def totient_profile(orbit: Sequence[OrbitEntry], r_max: int, degree_cap: Optional[int] = None) -> List[int]:
    """N_r = number of orbit points of degree r, for r = 1..r_max."""
    if degree_cap is not None and degree_cap < r_max:
        raise CapTooSmall(f"orbit built with cap {degree_cap} < {r_max}")
    counts = [0] * (r_max + 1)
    for e in orbit:
        if 1 <= e.degree <= r_max:
            counts[e.degree] += 1
    return counts[1:]


def _phi(m: int) -> int:
    out = m
    p = 2
    x = m
    while p * p <= x:
        if x % p == 0:
            while x % p == 0:
                x //= p
            out -= out // p
        p += 1
    if x > 1:
        out -= out // x
    return out


def totient_closed_form(step: int, mult: int, r_max: int) -> List[int]:
    """mult * phi(r/step) when step divides r, else 0."""
    return [mult * _phi(r // step) if r % step == 0 else 0 for r in range(1, r_max + 1)]
