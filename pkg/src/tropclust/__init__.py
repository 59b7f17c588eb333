"""Tropicalised quasi-automorphisms of cluster algebras.

Seeds and their C/G-matrices, the Gr(k,n) quasi-automorphisms evaluated as
piecewise-linear maps on g-vectors, the g-vector/tableau dictionary, and
fixed points and braid orbits of the tropical braid action.
"""

from __future__ import annotations

from .cluster_core import ExchangeMatrix, Seed, mutate_seed, trop_compose, trop_step
from .dynamics import act_on_tableau, braid_orbit, classify_stability, find_fixed_points, totient_profile
from .grassmannian import GrContext, QuasiAuto, trop_Q
from .tableaux import Tableau, degree, gvector_to_tableau, tableau_to_gvector
from .tropexpr import parse_sfexpr, trop_eval

__version__ = "0.1.0"

__all__ = [
    "ExchangeMatrix",
    "Seed",
    "mutate_seed",
    "trop_step",
    "trop_compose",
    "GrContext",
    "QuasiAuto",
    "trop_Q",
    "Tableau",
    "degree",
    "gvector_to_tableau",
    "tableau_to_gvector",
    "parse_sfexpr",
    "trop_eval",
    "act_on_tableau",
    "find_fixed_points",
    "classify_stability",
    "braid_orbit",
    "totient_profile",
]
