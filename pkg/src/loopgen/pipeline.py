"""Lazily computed, per-process cache of every analysis stage for one loop."""
from __future__ import annotations

from functools import cached_property

from .automorphisms import AutomorphismGroup, OrbitPartition, automorphism_group, orbit_partition
from .jumps import JumpTable, compute_jump_table
from .loop import LoopTable, OrderProfile, order_profile
from .subloops import DEFAULT_MAX_SUBLOOPS, SubloopLattice, enumerate_lattice
from .automorphisms import DEFAULT_NODE_BUDGET


class Analysis:
    def __init__(
        self,
        loop: LoopTable,
        max_subloops: int = DEFAULT_MAX_SUBLOOPS,
        node_budget: int = DEFAULT_NODE_BUDGET,
        workers: int = 1,
    ):
        self.loop = loop
        self.max_subloops = max_subloops
        self.node_budget = node_budget
        self.workers = workers

    @cached_property
    def profile(self) -> OrderProfile:
        return order_profile(self.loop)

    @cached_property
    def lattice(self) -> SubloopLattice:
        return enumerate_lattice(self.loop, self.max_subloops)

    @cached_property
    def automorphisms(self) -> AutomorphismGroup:
        return automorphism_group(self.loop, self.lattice, node_budget=self.node_budget)

    @cached_property
    def orbits(self) -> OrbitPartition:
        return orbit_partition(self.lattice, self.automorphisms.generators)

    @cached_property
    def jumps(self) -> JumpTable:
        self.profile  # raises NotPowerAssociative first
        return compute_jump_table(self.loop, self.lattice, self.orbits, self.profile, self.workers)
