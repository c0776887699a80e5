"""Random generation probabilities for finite power-associative loops."""

__version__ = "0.1.0"

from .automorphisms import (
    Automorphism,
    OrbitPartition,
    automorphism_generators,
    automorphism_group,
    find_generating_tuple,
    orbit_partition,
)
from .constructors import ZornMatrix, make_cyclic, make_paige_2, make_s3
from .errors import *  # noqa: F401,F403
from .jumps import JumpTable, compute_jump_table, orbit_index, verify_hasse_relation
from .loop import LoopTable, OrderProfile, check_power_associative, order_profile, parse_table, validate_loop
from .oracle import exhaustive_count, monte_carlo
from .pipeline import Analysis
from .probability import GenerationReport, gen_count, gen_count_typed
from .subloops import Subloop, SubloopLattice, closure, enumerate_lattice, extend
