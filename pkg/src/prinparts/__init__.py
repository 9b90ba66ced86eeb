"""Exact computations with the sheaves of principal parts Pr^k(O(n)) on the projective line."""

__version__ = "0.1.0"

from .exact import GF, QQ, Ring, binom, series_coeff
from .jets import Side, oracle_transition
from .transition import TransitionMatrix, check_cocycle, transition, transition_left, transition_right
from .splitting import (
    SplittingCertificate,
    SplittingOutcome,
    build_systems,
    splitting_search,
    splitting_type_char0,
    verify_certificate,
)
from .birkhoff import birkhoff_factor, splitting_type_birkhoff
