"""Reference loops: cyclic groups, S3 and the 120-element Paige loop M*(2).

M*(2) is realised as the unit-determinant Zorn vector matrices over GF(2)::

    (a  b)     a, d in GF(2)
    (c  d)     b, c in GF(2)^3

Over GF(2) the quotient by {1, -1} is trivial and every sign in the Zorn product
is irrelevant. Elements are numbered in increasing order of the 8-bit code
``a b0 b1 b2 c0 c1 c2 d`` (``a`` is the most significant bit).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import ConstructionInvariantViolated, LoopError
from .loop import (
    LoopTable,
    find_nonassociative_triple,
    satisfies_moufang,
    validate_loop,
)

Vec3 = tuple[int, int, int]


def _dot(u: Vec3, v: Vec3) -> int:
    return (u[0] & v[0]) ^ (u[1] & v[1]) ^ (u[2] & v[2])


def _cross(u: Vec3, v: Vec3) -> Vec3:
    return (
        (u[1] & v[2]) ^ (u[2] & v[1]),
        (u[2] & v[0]) ^ (u[0] & v[2]),
        (u[0] & v[1]) ^ (u[1] & v[0]),
    )


def _axpy(*terms: Vec3) -> Vec3:
    x = y = z = 0
    for t in terms:
        x ^= t[0]
        y ^= t[1]
        z ^= t[2]
    return (x, y, z)


def _scale(s: int, v: Vec3) -> Vec3:
    return (s & v[0], s & v[1], s & v[2])


@dataclass(frozen=True)
class ZornMatrix:
    a: int
    b: Vec3
    c: Vec3
    d: int

    @property
    def det(self) -> int:
        return (self.a & self.d) ^ _dot(self.b, self.c)

    def __mul__(self, other: ZornMatrix) -> ZornMatrix:
        a, b, c, d = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return ZornMatrix(
            (a & a2) ^ _dot(b, c2),
            _axpy(_scale(a, b2), _scale(d2, b), _cross(c, c2)),
            _axpy(_scale(a2, c), _scale(d, c2), _cross(b, b2)),
            _dot(c, b2) ^ (d & d2),
        )

    def encode(self) -> int:
        bits = (self.a, *self.b, *self.c, self.d)
        code = 0
        for bit in bits:
            code = (code << 1) | bit
        return code

    @classmethod
    def decode(cls, code: int) -> ZornMatrix:
        bits = [(code >> (7 - k)) & 1 for k in range(8)]
        return cls(bits[0], tuple(bits[1:4]), tuple(bits[4:7]), bits[7])


def make_cyclic(k: int) -> LoopTable:
    if k < 1:
        raise ValueError("cyclic group order must be positive")
    idx = np.arange(k)
    return validate_loop((idx[:, None] + idx[None, :]) % k)


def make_s3() -> LoopTable:
    """Symmetric group on three letters; elements are the permutations of
    ``(0, 1, 2)`` in lexicographic order and ``(p*q)(i) = p(q(i))``."""
    perms = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    grid = [[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    return validate_loop(grid)


def paige_elements() -> list[ZornMatrix]:
    elems = [ZornMatrix.decode(code) for code in range(256)]
    return [z for z in elems if z.det == 1]


def make_paige_2() -> LoopTable:
    elems = paige_elements()
    index = {z: i for i, z in enumerate(elems)}
    grid = []
    for x in elems:
        row = []
        for y in elems:
            xy = x * y
            if xy.det != 1:
                raise ConstructionInvariantViolated("Zorn product left the unit-determinant set")
            row.append(index[xy])
        grid.append(row)
    try:
        loop = validate_loop(grid)
    except LoopError as exc:
        raise ConstructionInvariantViolated(f"Zorn table is not a loop: {exc}") from exc
    if loop.n != 120:
        raise ConstructionInvariantViolated(f"expected 120 elements, got {loop.n}")
    if not satisfies_moufang(loop):
        raise ConstructionInvariantViolated("Moufang identity fails")
    if find_nonassociative_triple(loop) is None:
        raise ConstructionInvariantViolated("table is associative")
    return loop


BUILTINS = {
    "s3": make_s3,
    "paige2": make_paige_2,
}


def builtin(name: str) -> LoopTable:
    """Resolve ``s3``, ``paige2`` or ``cyclic:k``."""
    if name.startswith("cyclic:"):
        try:
            k = int(name.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad cyclic order in {name!r}") from None
        return make_cyclic(k)
    try:
        return BUILTINS[name]()
    except KeyError:
        raise ValueError(f"unknown builtin loop {name!r}") from None
