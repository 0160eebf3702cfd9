"""Exact lattice-point tools for symmetric convex bodies.

Successive minima, lattice points in general position, hyperplane covers,
hyperplane censuses of balls, and brute-force oracles for small instances.
"""

from .census import claim_stats, decomposition_replay, scaling_fit
from .cover import build_cover, choose_alpha, polar_minima
from .errors import LatticeCoverError, VerificationFailed
from .exact import GaugeValue
from .genpos import build_general_position, lemma_lift, lower_bound, verify_general_position
from .geometry import Body, gauge, load_body, support
from .lattice import Hyperplane, enumerate_points, orthogonal_lattice, successive_minima
from .oracle import check_sandwich, exact_g, exact_h

__version__ = "0.1.0"

__all__ = [
    "Body",
    "GaugeValue",
    "Hyperplane",
    "LatticeCoverError",
    "VerificationFailed",
    "build_cover",
    "build_general_position",
    "check_sandwich",
    "choose_alpha",
    "claim_stats",
    "decomposition_replay",
    "enumerate_points",
    "exact_g",
    "exact_h",
    "gauge",
    "lemma_lift",
    "load_body",
    "lower_bound",
    "orthogonal_lattice",
    "polar_minima",
    "scaling_fit",
    "successive_minima",
    "support",
    "verify_general_position",
]
