"""Graphviz exports of the subloop lattice and of the orbit digraph."""
from __future__ import annotations

from .automorphisms import OrbitPartition
from .jumps import JumpTable
from .subloops import SubloopLattice


def _q(s: str) -> str:
    return '"' + s.replace('"', r"\"") + '"'


def orbit_dot(lattice: SubloopLattice, orbits: OrbitPartition, jt: JumpTable) -> str:
    """One node per orbit, one edge per nonzero ``nu(A, B)`` with ``A != B``.

    Edge labels list ``nu_i`` for the nontrivial realized orders, joined by ``:``
    (for M*(2): ``nu_2:nu_3``). Bold edges join orbits related by covering;
    dashed edges are jumps that skip a level.
    """
    orders = [i for i in jt.orders if i != 1]
    covering = {(orbits.orbit_of[a], orbits.orbit_of[b]) for a, b in lattice.covers}
    lines = ["digraph orbits {", "  rankdir=BT;", "  node [shape=box];"]
    for o, label in enumerate(orbits.labels):
        size = lattice[orbits.reps[o]].size
        lines.append(f"  {_q(label)} [label={_q(f'{label} |{size}| x{orbits.size(o)}')}];")
    for (s, d), v in sorted(jt.nu.items()):
        if s == d or not v:
            continue
        text = ":".join(str(jt.nu_i.get((s, i, d), 0)) for i in orders)
        style = "bold" if (s, d) in covering else "dashed"
        lines.append(f"  {_q(jt.labels[s])} -> {_q(jt.labels[d])} [label={_q(text)}, style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_dot(lattice: SubloopLattice, orbits: OrbitPartition | None = None) -> str:
    """Hasse diagram of every subloop (the covering relation)."""
    lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=point];"]
    for A in lattice:
        tag = orbits.labels[orbits.orbit_of[A.id]] if orbits else str(A.size)
        lines.append(f"  s{A.id} [xlabel={_q(tag)}];")
    for a, b in lattice.covers:
        lines.append(f"  s{a} -> s{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
