"""Crystallographic root data from a Cartan matrix, in integer coordinates.

Points of V are written in the coordinates ``x_j = <x, coroot_j>`` (pairing
with the simple coroots). In these coordinates a positive root is stored twice:
``root`` in the simple-root basis and ``coroot`` in the simple-coroot basis, so
that ``<x, coroot> = dot(coroot, x)`` and the root itself, as a vector of V,
has coordinates ``C @ root``. Everything stays integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import UnsupportedType

Vec = tuple[int, ...]


def cartan_matrix(family: str, rank: int, flip: bool = False) -> list[list[int]]:
    """Cartan matrix ``C[i][j] = <alpha_j, coroot_i>`` with our node numbering.

    Node 0 is the end carrying the multiple bond for B/C/G so that the finite
    generators s1..sr read left to right from that end. ``flip`` transposes,
    i.e. swaps long and short roots.
    """
    C = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def bond(i: int, j: int, a: int = 1, b: int = 1) -> None:
        C[i][j] = -a
        C[j][i] = -b

    if family == "A":
        for i in range(rank - 1):
            bond(i, i + 1)
    elif family in ("B", "C"):
        if rank < 2:
            raise UnsupportedType(f"{family}~{rank}: rank must be >= 2")
        bond(0, 1, 1, 2)
        for i in range(1, rank - 1):
            bond(i, i + 1)
    elif family == "D":
        if rank < 4:
            raise UnsupportedType(f"D~{rank}: rank must be >= 4")
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 3, rank - 1)
    elif family == "G":
        if rank != 2:
            raise UnsupportedType("G2 has rank 2")
        bond(0, 1, 1, 3)
    else:
        raise UnsupportedType(f"unknown family {family!r}")
    if flip:
        C = [list(row) for row in zip(*C)]
    return C


@dataclass(frozen=True)
class RootSystem:
    """Positive roots paired with their coroots."""

    cartan: tuple[tuple[int, ...], ...]
    roots: tuple[Vec, ...]
    coroots: tuple[Vec, ...]

    @classmethod
    def from_cartan(cls, C: list[list[int]]) -> RootSystem:
        r = len(C)

        def reflect_root(a: Vec, i: int) -> Vec:
            # s_i(alpha) = alpha - <alpha, coroot_i> alpha_i
            p = sum(C[i][j] * a[j] for j in range(r))
            return tuple(a[j] - (p if j == i else 0) for j in range(r))

        def reflect_coroot(c: Vec, i: int) -> Vec:
            # s_i(coroot) = coroot - <alpha_i, coroot> coroot_i
            p = sum(c[j] * C[j][i] for j in range(r))
            return tuple(c[j] - (p if j == i else 0) for j in range(r))

        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        pairs = {(a, a) for a in simple}
        frontier = list(pairs)
        while frontier:
            new = []
            for a, c in frontier:
                for i in range(r):
                    b, d = reflect_root(a, i), reflect_coroot(c, i)
                    if all(x >= 0 for x in b) and (b, d) not in pairs:
                        pairs.add((b, d))
                        new.append((b, d))
            frontier = new
        ordered = sorted(pairs, key=lambda p: (sum(p[0]), tuple(-x for x in p[0])))
        return cls(
            cartan=tuple(tuple(row) for row in C),
            roots=tuple(p[0] for p in ordered),
            coroots=tuple(p[1] for p in ordered),
        )

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def root_vectors(self) -> tuple[Vec, ...]:
        """Each positive root in the ``x`` coordinates of V."""
        C, r = self.cartan, self.rank
        return tuple(
            tuple(sum(C[j][i] * a[i] for i in range(r)) for j in range(r)) for a in self.roots
        )

    @cached_property
    def coroot_index(self) -> dict[Vec, int]:
        return {c: k for k, c in enumerate(self.coroots)}

    @cached_property
    def highest_coroot_index(self) -> int:
        return max(range(len(self.coroots)), key=lambda k: sum(self.coroots[k]))

    def pairing(self, root_index: int, coroot_index: int) -> int:
        """<alpha, beta-check> for two positive roots given by index."""
        a, c = self.roots[root_index], self.coroots[coroot_index]
        r = self.rank
        return sum(c[i] * self.cartan[i][j] * a[j] for i in range(r) for j in range(r))

    def reflect_direction(self, alpha: int, beta: int) -> tuple[int, int]:
        """Image of the direction ``alpha`` under the reflection in ``beta``.

        Returns ``(index, sign)`` where ``sign`` is -1 when the reflected coroot
        is negative and had to be flipped.
        """
        p = self.pairing(beta, alpha)  # <beta, alpha-check>
        c = tuple(x - p * y for x, y in zip(self.coroots[alpha], self.coroots[beta]))
        if c in self.coroot_index:
            return self.coroot_index[c], 1
        return self.coroot_index[tuple(-x for x in c)], -1
