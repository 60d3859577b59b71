"""Irreducible affine Weyl groups realized on alcoves.

An element ``w`` is identified with the alcove ``wA0`` and stored by its
alcove coordinates ``k_alpha`` (one integer per positive root, the unique
``k`` with ``k < <x, coroot> < k + 1`` on ``wA0``). Alongside the key each
element keeps the integer affine map of V sending ``A0`` onto ``wA0``; this
map is determined by the key and is what makes products cheap.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    BallTooLarge,
    InfiniteParabolic,
    InvalidWeights,
    UnknownGenerator,
    UnsupportedType,
)
from .roots import RootSystem, Vec, cartan_matrix

__all__ = [
    "GroupDescriptor",
    "Element",
    "CoxeterSystem",
    "build_system",
    "parse_type",
    "parse_weights",
    "parse_word",
]

INF = math.inf

FAMILIES = {
    "A": "A-affine",
    "B": "B-affine",
    "C": "C-affine",
    "D": "D-affine",
    "G": "G2-affine",
}

# finite Weyl group orders, used for the parabolic closure cap and reports
def weyl_group_order(family: str, rank: int) -> int:
    if family == "A":
        return math.factorial(rank + 1)
    if family in ("B", "C"):
        return 2**rank * math.factorial(rank)
    if family == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    if family == "G":
        return 12
    raise UnsupportedType(family)


@dataclass(frozen=True)
class GroupDescriptor:
    """Family letter (A, B, C, D, G), rank of the finite root system, weights.

    ``weights`` maps generator names ``s1 .. s{rank+1}`` to positive integers;
    ``s{rank+1}`` is the affine generator. Missing names default to 1.
    """

    family: str
    rank: int
    weights: tuple[tuple[str, int], ...] = ()

    @classmethod
    def make(cls, family: str, rank: int, weights: dict[str, int] | Sequence[int] | None = None) -> GroupDescriptor:
        family = family.upper().rstrip("~")[:1]
        if family not in FAMILIES:
            raise UnsupportedType(f"unsupported family {family!r}")
        if rank < 1:
            raise UnsupportedType("rank must be >= 1")
        names = [f"s{i}" for i in range(1, rank + 2)]
        if weights is None:
            w = {n: 1 for n in names}
        elif isinstance(weights, dict):
            unknown = set(weights) - set(names)
            if unknown:
                raise UnknownGenerator(f"unknown generators in weights: {sorted(unknown)}")
            w = {n: int(weights.get(n, 1)) for n in names}
        else:
            if len(weights) != len(names):
                raise InvalidWeights(f"expected {len(names)} weights, got {len(weights)}")
            w = dict(zip(names, (int(x) for x in weights)))
        return cls(family, rank, tuple(w.items()))

    @property
    def weight_map(self) -> dict[str, int]:
        return dict(self.weights)

    @property
    def label(self) -> str:
        return f"{self.family}~{self.rank}"


def parse_type(text: str) -> tuple[str, int]:
    """``"C~2"`` -> ``("C", 2)``; also accepts ``"C2"`` and ``"G~2"``."""
    m = re.fullmatch(r"\s*([ABCDGabcdg])\s*~?\s*(\d+)\s*", text)
    if not m:
        raise UnsupportedType(f"cannot parse type {text!r}")
    return m.group(1).upper(), int(m.group(2))


def parse_weights(text: str) -> dict[str, int]:
    """``"s1=2,s2=1"`` -> ``{"s1": 2, "s2": 1}``."""
    out: dict[str, int] = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        m = re.fullmatch(r"(s\d+)\s*=\s*(-?\d+)", part)
        if not m:
            raise InvalidWeights(f"cannot parse weight {part!r}")
        out[m.group(1)] = int(m.group(2))
    return out


def parse_word(text: str) -> list[str]:
    """Split ``"s1 s2 s1"``, ``"s1,s2"`` or ``"s1s2s1"`` into generator names."""
    s = re.sub(r"[\s,.*]+", "", text)
    if s in ("", "e", "1"):
        return []
    if not re.fullmatch(r"(s\d+)+", s):
        raise UnknownGenerator(f"cannot parse word {text!r}")
    return re.findall(r"s\d+", s)


@dataclass(frozen=True, eq=False)
class Element:
    key: Vec
    length: int
    matrix: tuple[Vec, ...] = field(repr=False)
    shift: Vec = field(repr=False)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Element) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def sort_key(self) -> tuple[int, Vec]:
        return (self.length, self.key)

    def __lt__(self, other: Element) -> bool:
        return self.sort_key() < other.sort_key()


class CoxeterSystem:
    """The affine Weyl group attached to a :class:`GroupDescriptor`."""

    def __init__(self, descriptor: GroupDescriptor, max_elements: int = 500_000):
        self.max_elements = max_elements
        family, rank = descriptor.family, descriptor.rank
        if family == "A" and rank < 1:
            raise UnsupportedType("A~n needs n >= 1")
        self.family, self.rank = family, rank
        self.generators: tuple[str, ...] = tuple(f"s{i}" for i in range(1, rank + 2))
        self.finite_part: frozenset[int] = frozenset(range(rank))
        self.affine_index = rank

        self.roots = self._choose_root_system()
        r = rank
        R = self.roots
        theta = R.highest_coroot_index
        self._theta = theta
        # walls of A0: s_i <-> H_{alpha_i, 0}, s_{r+1} <-> H_{theta, 1}
        self.wall_hyperplanes: tuple[tuple[int, int], ...] = tuple(
            [(R.coroot_index[tuple(int(i == j) for j in range(r))], 0) for i in range(r)] + [(theta, 1)]
        )
        self._reflections = tuple(self._reflection_map(a, n) for a, n in self.wall_hyperplanes)
        # centroid of A0, scaled to integers: vertices 0 and e_j / theta_j
        th = R.coroots[theta]
        den = (r + 1) * math.lcm(*th)
        self._centroid_num = tuple(den // ((r + 1) * th[j]) for j in range(r))
        self._centroid_den = den

        self.identity = self._from_affine(self._id_matrix(), (0,) * r)
        self._gen_elements = tuple(self._from_affine(M, b) for M, b in self._reflections)
        self.coxeter_matrix = self._compute_coxeter_matrix()
        self._check_diagram()

        self.descriptor = self._normalize(descriptor)
        self.weights: tuple[int, ...] = tuple(self.descriptor.weight_map[s] for s in self.generators)
        self._validate_weights()

        self._parabolic_cache: dict[frozenset[int], Element] = {}
        self._bruhat_cache: dict[tuple[Vec, Vec], bool] = {}
        self._ball_cache: dict[int, list[Element]] = {}
        self.nu = self.length(self.longest_parabolic(self.finite_part))
        self.big_S, self.nu_tilde = self._compute_big_S()

    # -- construction -------------------------------------------------------

    def _choose_root_system(self) -> RootSystem:
        fam, r = self.family, self.rank
        if fam in ("B", "C") and r >= 2:
            # the two orientations give B~ and C~; keep the one matching the family
            for flip in (False, True):
                R = RootSystem.from_cartan(cartan_matrix(fam, r, flip))
                if self._affine_shape(R) == ("C" if fam == "C" or r == 2 else "B"):
                    return R
            raise UnsupportedType(f"{fam}~{r}: could not realize diagram")
        if fam == "B":
            raise UnsupportedType("B~ needs rank >= 2")
        return RootSystem.from_cartan(cartan_matrix(fam, r, flip=(fam == "G")))

    @staticmethod
    def _affine_shape(R: RootSystem) -> str:
        # the affine node meets node 0 (C~) or node 1 (B~, rank >= 3)
        th = R.coroots[R.highest_coroot_index]
        r = R.rank
        # <alpha_j, theta-check> != 0 means the walls are not orthogonal
        links = [j for j in range(r) if sum(th[i] * R.cartan[i][j] for i in range(r)) != 0]
        if links == [r - 1]:
            return "C"
        if links == [1] and r >= 3:
            return "B"
        return "?"

    @staticmethod
    def _id_matrix_r(r: int) -> tuple[Vec, ...]:
        return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))

    def _id_matrix(self) -> tuple[Vec, ...]:
        return self._id_matrix_r(self.rank)

    def _reflection_map(self, alpha: int, level: int) -> tuple[tuple[Vec, ...], Vec]:
        """Affine map x -> x - (<x, alpha-check> - level) alpha."""
        R, r = self.roots, self.rank
        c, a = R.coroots[alpha], R.root_vectors[alpha]
        M = tuple(tuple(int(i == j) - a[i] * c[j] for j in range(r)) for i in range(r))
        b = tuple(level * a[i] for i in range(r))
        return M, b

    def reflection(self, alpha: int, level: int) -> tuple[tuple[Vec, ...], Vec]:
        return self._reflection_map(alpha, level)

    @staticmethod
    def _compose(f: tuple[tuple[Vec, ...], Vec], g: tuple[tuple[Vec, ...], Vec]) -> tuple[tuple[Vec, ...], Vec]:
        """f o g."""
        Mf, bf = f
        Mg, bg = g
        r = len(bf)
        M = tuple(tuple(sum(Mf[i][k] * Mg[k][j] for k in range(r)) for j in range(r)) for i in range(r))
        b = tuple(sum(Mf[i][k] * bg[k] for k in range(r)) + bf[i] for i in range(r))
        return M, b

    def _from_affine(self, M: tuple[Vec, ...], b: Vec) -> Element:
        r = self.rank
        q, D = self._centroid_num, self._centroid_den
        p = [sum(M[i][k] * q[k] for k in range(r)) + D * b[i] for i in range(r)]
        key = tuple(sum(c[j] * p[j] for j in range(r)) // D for c in self.roots.coroots)
        return Element(key, sum(abs(k) for k in key), M, b)

    def _compute_coxeter_matrix(self) -> tuple[tuple[float, ...], ...]:
        n = len(self.generators)
        m = [[1] * n for _ in range(n)]
        for i, j in itertools.combinations(range(n), 2):
            st = self.multiply(self._gen_elements[i], self._gen_elements[j])
            w, k = st, 1
            while w != self.identity and k <= 12:
                w, k = self.multiply(w, st), k + 1
            m[i][j] = m[j][i] = k if w == self.identity else INF
        return tuple(tuple(row) for row in m)

    def _check_diagram(self) -> None:
        n = len(self.generators)
        if self.family == "C" or (self.family == "B" and self.rank == 2):
            # s1 =4= s2 - ... - s_r =4= s_{r+1}
            ok = self.coxeter_matrix[0][1] == 4 and self.coxeter_matrix[n - 2][n - 1] == 4
            if self.rank == 1:
                ok = True
            if not ok:
                raise UnsupportedType("C~ realization does not match the expected diagram")

    def _normalize(self, d: GroupDescriptor) -> GroupDescriptor:
        """For A~1 and C~r put the heavier end at s1 (diagram automorphism)."""
        w = d.weight_map
        n = len(self.generators)
        if (self.family == "A" and self.rank == 1) or self.family == "C" or (self.family == "B" and self.rank == 2):
            if w[self.generators[0]] < w[self.generators[-1]]:
                rev = {self.generators[i]: w[self.generators[n - 1 - i]] for i in range(n)}
                return GroupDescriptor(d.family, d.rank, tuple(rev.items()))
        return d

    def conjugacy_classes(self) -> list[frozenset[int]]:
        """Generators joined by odd-order bonds are conjugate."""
        n = len(self.generators)
        parent = list(range(n))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, j in itertools.combinations(range(n), 2):
            m = self.coxeter_matrix[i][j]
            if m != INF and m % 2 == 1:
                parent[find(i)] = find(j)
        classes: dict[int, set[int]] = {}
        for i in range(n):
            classes.setdefault(find(i), set()).add(i)
        return sorted((frozenset(c) for c in classes.values()), key=min)

    def _validate_weights(self) -> None:
        for s, w in zip(self.generators, self.weights):
            if w < 1:
                raise InvalidWeights(f"weight of {s} must be positive, got {w}")
        for cls in self.conjugacy_classes():
            vals = {self.weights[i] for i in cls}
            if len(vals) > 1:
                names = ",".join(self.generators[i] for i in sorted(cls))
                raise InvalidWeights(f"conjugate generators {names} have unequal weights {sorted(vals)}")

    def _compute_big_S(self) -> tuple[list[frozenset[int]], int]:
        r = self.rank
        target = self._coxeter_type_signature(self.finite_part)
        candidates = []
        for J in itertools.combinations(range(r + 1), r):
            J = frozenset(J)
            if self._coxeter_type_signature(J) == target:
                candidates.append((self.L(self.longest_parabolic(J)), J))
        nu_tilde = max(c for c, _ in candidates)
        big = sorted((J for c, J in candidates if c == nu_tilde), key=sorted)
        return big, nu_tilde

    def _coxeter_type_signature(self, J: frozenset[int]) -> tuple | None:
        """Canonical form of the Coxeter matrix on J (None when W_J is infinite)."""
        idx = sorted(J)
        sub = [[self.coxeter_matrix[i][j] for j in idx] for i in idx]
        if any(INF in row for row in sub):
            return None
        best = None
        for perm in itertools.permutations(range(len(idx))):
            t = tuple(tuple(sub[perm[i]][perm[j]] for j in range(len(idx))) for i in range(len(idx)))
            if best is None or t < best:
                best = t
        return best

    # -- element basics -----------------------------------------------------

    def generator_index(self, name: str | int) -> int:
        if isinstance(name, int):
            if 0 <= name < len(self.generators):
                return name
            raise UnknownGenerator(str(name))
        try:
            return self.generators.index(name)
        except ValueError:
            raise UnknownGenerator(f"unknown generator {name!r}; expected one of {self.generators}") from None

    def gen(self, s: str | int) -> Element:
        return self._gen_elements[self.generator_index(s)]

    def weight(self, s: str | int) -> int:
        return self.weights[self.generator_index(s)]

    def multiply(self, a: Element, b: Element) -> Element:
        # (ab)A0 = f_b(f_a(A0))
        M, t = self._compose((b.matrix, b.shift), (a.matrix, a.shift))
        return self._from_affine(M, t)

    def left(self, s: int, w: Element) -> Element:
        """s * w for a generator index."""
        g = self._reflections[s]
        M, t = self._compose((w.matrix, w.shift), g)
        return self._from_affine(M, t)

    def right(self, w: Element, s: int) -> Element:
        """w * s for a generator index."""
        g = self._reflections[s]
        M, t = self._compose(g, (w.matrix, w.shift))
        return self._from_affine(M, t)

    def word_to_element(self, word: Iterable[str | int] | str) -> Element:
        if isinstance(word, str):
            word = parse_word(word)
        w = self.identity
        for s in reversed(list(word)):
            w = self.left(self.generator_index(s), w)
        return w

    def inverse(self, a: Element) -> Element:
        w = self.identity
        for s in self.reduced_word_indices(a):
            w = self.left(s, w)
        return w

    @staticmethod
    def length(a: Element) -> int:
        return a.length

    def L(self, a: Element) -> int:
        """Weight of an element: sum of generator weights over a reduced word."""
        return sum(self.weights[s] for s in self.reduced_word_indices(a))

    def descents(self, a: Element, side: str = "left") -> frozenset[int]:
        if side == "left":
            return frozenset(s for s in range(len(self.generators)) if self.left(s, a).length < a.length)
        if side == "right":
            return frozenset(s for s in range(len(self.generators)) if self.right(a, s).length < a.length)
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def reduced_word_indices(self, a: Element) -> list[int]:
        """Lexicographically least reduced word, as generator indices."""
        word = []
        w = a
        while w.length:
            for s in range(len(self.generators)):
                sw = self.left(s, w)
                if sw.length < w.length:
                    word.append(s)
                    w = sw
                    break
        return word

    def reduced_word(self, a: Element) -> list[str]:
        return [self.generators[s] for s in self.reduced_word_indices(a)]

    def word_string(self, a: Element) -> str:
        return " ".join(self.reduced_word(a)) or "e"

    # -- Bruhat order -------------------------------------------------------

    def bruhat_leq(self, x: Element, w: Element) -> bool:
        if x.length > w.length:
            return False
        if x.length == w.length:
            return x == w
        if x.length == 0:
            return True
        memo = self._bruhat_cache
        k = (x.key, w.key)
        hit = memo.get(k)
        if hit is not None:
            return hit
        s = min(self.descents(w, "left"))
        sw = self.left(s, w)
        sx = self.left(s, x)
        res = self.bruhat_leq(sx if sx.length < x.length else x, sw)
        memo[k] = res
        return res

    def bruhat_leq_subword(self, x: Element, w: Element) -> bool:
        """Subword criterion over one fixed reduced word of w (test oracle)."""
        word = self.reduced_word_indices(w)
        target = x.length
        for sub in itertools.combinations(range(len(word)), target):
            if self.word_to_element([word[i] for i in sub]) == x:
                return True
        return False

    # -- balls and parabolics -----------------------------------------------

    def ball(self, N: int) -> list[Element]:
        """All elements of length <= N, sorted by (length, key)."""
        if N < 0:
            raise ValueError("N must be >= 0")
        if N in self._ball_cache:
            return list(self._ball_cache[N])
        seen = {self.identity.key: self.identity}
        layer = [self.identity]
        for _ in range(N):
            nxt = []
            for w in layer:
                for s in range(len(self.generators)):
                    sw = self.left(s, w)
                    if sw.length > w.length and sw.key not in seen:
                        seen[sw.key] = sw
                        nxt.append(sw)
                        if len(seen) > self.max_elements:
                            raise BallTooLarge(f"ball({N}) exceeds {self.max_elements} elements")
            layer = nxt
        out = sorted(seen.values(), key=Element.sort_key)
        self._ball_cache[N] = out
        return list(out)

    def _names_to_indices(self, J: Iterable[str | int]) -> frozenset[int]:
        return frozenset(self.generator_index(s) for s in J)

    def parabolic_elements(self, J: Iterable[str | int]) -> list[Element]:
        J = self._names_to_indices(J)
        cap = 10 * math.factorial(self.rank + 1)
        seen = {self.identity.key: self.identity}
        layer = [self.identity]
        while layer:
            nxt = []
            for w in layer:
                for s in J:
                    sw = self.left(s, w)
                    if sw.key not in seen:
                        seen[sw.key] = sw
                        nxt.append(sw)
            if len(seen) > cap:
                raise InfiniteParabolic(f"W_J for J={sorted(self.generators[s] for s in J)} is infinite")
            layer = nxt
        return sorted(seen.values(), key=Element.sort_key)

    def longest_parabolic(self, J: Iterable[str | int]) -> Element:
        J = self._names_to_indices(J)
        if J not in self._parabolic_cache:
            self._parabolic_cache[J] = self.parabolic_elements(J)[-1]
        return self._parabolic_cache[J]

    def coset_factorize(self, w: Element, J: Iterable[str | int], mode: str = "left") -> tuple[Element, Element]:
        """Split w along the finite parabolic W_J.

        ``mode="left"``: returns ``(u, x)`` with ``w = u.x``, ``u`` in W_J and
        ``x`` without left descents in J. ``mode="right"``: returns ``(x, u)``
        with ``w = x.u``, ``u`` in W_J and ``x`` without right descents in J.
        """
        J = self._names_to_indices(J)
        self.longest_parabolic(J)  # raises for infinite W_J
        u = self.identity
        x = w
        changed = True
        while changed:
            changed = False
            for s in sorted(J):
                if mode == "left":
                    sx = self.left(s, x)
                    if sx.length < x.length:
                        x, u = sx, self.right(u, s)
                        changed = True
                elif mode == "right":
                    xs = self.right(x, s)
                    if xs.length < x.length:
                        x, u = xs, self.left(s, u)
                        changed = True
                else:
                    raise ValueError(f"mode must be 'left' or 'right', got {mode!r}")
        return (u, x) if mode == "left" else (x, u)

    def is_min_coset_rep(self, w: Element, J: Iterable[str | int], side: str = "right") -> bool:
        """True iff w has no descent in J on ``side``.

        ``side="right"`` is the set X_J of minimal left coset representatives
        (``w s > w`` for s in J); ``side="left"`` is its inverse.
        """
        J = self._names_to_indices(J)
        return not (self.descents(w, side) & J)

    def __repr__(self) -> str:
        ws = ",".join(f"{s}={w}" for s, w in zip(self.generators, self.weights))
        return f"CoxeterSystem({self.family}~{self.rank}; {ws})"


def build_system(descriptor: GroupDescriptor | str, weights: dict[str, int] | Sequence[int] | None = None) -> CoxeterSystem:
    """Build from a descriptor or from a type string like ``"C~2"``."""
    if isinstance(descriptor, str):
        fam, rank = parse_type(descriptor)
        descriptor = GroupDescriptor.make(fam, rank, weights)
    return CoxeterSystem(descriptor)
