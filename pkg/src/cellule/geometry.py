"""Exact alcove geometry: hyperplanes, weights, strips, special points and
the local degree bound c_{x,y}.

A hyperplane ``H_{alpha,n}`` is the pair ``(alpha, n)`` with ``alpha`` an
index into the positive roots; its direction is ``alpha`` alone.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .coxeter import CoxeterSystem, Element
from .errors import PreconditionViolated, RadiusTooSmall

Hyperplane = tuple[int, int]
Point = tuple[Fraction, ...]

__all__ = [
    "Alcove",
    "Strip",
    "BoundContext",
    "SpecialPoint",
    "Quarter",
    "AlcoveGeometry",
]


@dataclass(frozen=True)
class Alcove:
    coords: tuple[int, ...]
    vertices: tuple[Point, ...]

    @property
    def point(self) -> Point:
        """Average of the vertices; an interior point."""
        n = len(self.vertices)
        return tuple(sum(v[j] for v in self.vertices) / n for j in range(len(self.vertices[0])))


@dataclass(frozen=True)
class Strip:
    direction: int
    lower: int  # strip between H_{alpha,lower} and H_{alpha,lower+1}


@dataclass(frozen=True)
class BoundContext:
    x: Element
    y: Element
    H: frozenset[Hyperplane]
    I: frozenset[int]
    c: dict[int, int]
    total: int


@dataclass(frozen=True)
class SpecialPoint:
    coords: Point
    m: int
    vertex_type: int  # the generator whose face avoids this vertex
    S_lambda: frozenset[int]
    w_lambda: Element

    @property
    def name(self) -> str:
        """Coordinates against the simple coroots, e.g. ``(1/2,0)``."""
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Quarter:
    vertex: Point
    signs: tuple[tuple[int, int], ...]  # (direction, +-1) for each wall through the vertex

    def contains(self, p: Point, system: CoxeterSystem) -> bool:
        R = system.roots
        for a, sign in self.signs:
            val = sum(c * x for c, x in zip(R.coroots[a], p)) - sum(c * x for c, x in zip(R.coroots[a], self.vertex))
            if val * sign <= 0:
                return False
        return True


def _interval(k1: int, k2: int) -> tuple[int, int]:
    """Levels n of H_{alpha,n} separating alcoves with coordinates k1, k2: lo < n <= hi."""
    return (k1, k2) if k1 <= k2 else (k2, k1)


class AlcoveGeometry:
    def __init__(self, system: CoxeterSystem):
        self.W = system
        self.R = system.roots
        self.nroots = len(self.R.roots)
        self._weights = self._probe_weights()
        self.max_weight = tuple(max(self._weights[(a, 0)], self._weights[(a, 1)]) for a in range(self.nroots))
        r = system.rank
        th = self.R.coroots[self.R.highest_coroot_index]
        # vertex of A0 opposite the face of type s_j
        self.a0_vertices: tuple[Point, ...] = tuple(
            [tuple(Fraction(int(i == j), th[j]) for i in range(r)) for j in range(r)]
            + [tuple(Fraction(0) for _ in range(r))]
        )
        self._special_cache: dict[int, tuple[list[SpecialPoint], list[SpecialPoint]]] = {}

    # -- alcoves ------------------------------------------------------------

    @staticmethod
    def _apply(M, b, p: Point) -> Point:
        r = len(b)
        return tuple(sum(M[i][k] * p[k] for k in range(r)) + b[i] for i in range(r))

    def pair(self, alpha: int, p: Point) -> Fraction:
        return sum(c * x for c, x in zip(self.R.coroots[alpha], p))

    def alcove_of(self, w: Element) -> Alcove:
        verts = tuple(self._apply(w.matrix, w.shift, v) for v in self.a0_vertices)
        return Alcove(w.key, verts)

    def alcove_vertices_from_coords(self, coords: tuple[int, ...]) -> tuple[Point, ...]:
        """Solve the bounding inequalities for the vertices of an alcove."""
        r = self.W.rank
        R = self.R
        bounds = [(a, n) for a in range(self.nroots) for n in (coords[a], coords[a] + 1)]
        verts = set()
        for combo in itertools.combinations(bounds, r):
            rows = [[Fraction(x) for x in R.coroots[a]] + [Fraction(n)] for a, n in combo]
            p = _solve(rows, r)
            if p is None:
                continue
            if all(coords[a] <= self.pair(a, p) <= coords[a] + 1 for a in range(self.nroots)):
                verts.add(p)
        if len(verts) != r + 1:
            raise ValueError(f"{coords} is not the coordinate vector of an alcove")
        return tuple(sorted(verts))

    def element_of(self, a: Alcove | tuple[int, ...]) -> Element:
        """Inverse of :meth:`alcove_of`: walk back to A0 across separating walls."""
        W = self.W
        coords = a.coords if isinstance(a, Alcove) else tuple(a)
        verts = list(self.alcove_vertices_from_coords(coords))
        f = (W._id_matrix(), (0,) * W.rank)
        k = list(coords)
        while any(k):
            for alpha in range(self.nroots):
                if k[alpha] == 0:
                    continue
                n = k[alpha] if k[alpha] > 0 else k[alpha] + 1
                on = [v for v in verts if self.pair(alpha, v) == n]
                if len(on) == W.rank:  # supports a face
                    sig = W.reflection(alpha, n)
                    verts = [self._apply(*sig, v) for v in verts]
                    f = W._compose(f, sig)
                    k = [math.floor(self.pair(b, _mean(verts))) for b in range(self.nroots)]
                    break
            else:
                raise ValueError("no separating wall found")
        w = W._from_affine(*f)
        if w.key != coords:
            raise ValueError("alcove walk did not close up")
        return w

    def face_hyperplane(self, s: int, w: Element) -> Hyperplane:
        """Hyperplane supporting the type-s face of wA0."""
        verts = [v for j, v in enumerate(self.alcove_of(w).vertices) if j != s]
        for alpha in range(self.nroots):
            vals = {self.pair(alpha, v) for v in verts}
            if len(vals) == 1:
                return (alpha, int(vals.pop()))
        raise AssertionError("face not contained in a hyperplane")

    def act_generator(self, s: int, a: Alcove | Element) -> Alcove:
        """Reflect an alcove across its face of type s."""
        w = a if isinstance(a, Element) else self.element_of(a)
        alpha, n = self.face_hyperplane(s, w)
        M, b = self.W.reflection(alpha, n)
        verts = tuple(self._apply(M, b, p) for p in self.alcove_of(w).vertices)
        coords = tuple(math.floor(self.pair(x, _mean(verts))) for x in range(self.nroots))
        return Alcove(coords, verts)

    # -- hyperplanes --------------------------------------------------------

    @staticmethod
    def separating_hyperplanes(A: Alcove | Element, B: Alcove | Element) -> frozenset[Hyperplane]:
        ka = A.coords if isinstance(A, Alcove) else A.key
        kb = B.coords if isinstance(B, Alcove) else B.key
        out = set()
        for alpha, (k1, k2) in enumerate(zip(ka, kb)):
            lo, hi = _interval(k1, k2)
            out.update((alpha, n) for n in range(lo + 1, hi + 1))
        return frozenset(out)

    def _probe_weights(self) -> dict[tuple[int, int], int]:
        W = self.W
        need = {(a, p) for a in range(len(W.roots.roots)) for p in (0, 1)}
        table: dict[tuple[int, int], int] = {}
        N = 0
        while need - set(table):
            N += 1
            for w in W.ball(N - 1):
                for s in range(len(W.generators)):
                    sw = W.left(s, w)
                    diff = [i for i, (p, q) in enumerate(zip(w.key, sw.key)) if p != q]
                    (alpha,) = diff
                    level = max(w.key[alpha], sw.key[alpha])
                    kk = (alpha, level % 2)
                    if table.setdefault(kk, W.weights[s]) != W.weights[s]:
                        raise AssertionError(f"hyperplane {alpha},{level} carries two weights")
        return table

    def hyperplane_weight(self, H: Hyperplane) -> int:
        alpha, n = H
        return self._weights[(alpha, n % 2)]

    def reflect_hyperplane(self, H: Hyperplane, mirror: Hyperplane) -> Hyperplane:
        """(H)sigma for sigma the reflection in ``mirror``."""
        (alpha, n), (beta, m) = H, mirror
        c = self.R.pairing(beta, alpha)  # <beta, alpha-check>
        gamma, sign = self.R.reflect_direction(alpha, beta)
        return (gamma, sign * (n - m * c))

    def wall_between(self, w: Element, s: int) -> Hyperplane:
        """The unique hyperplane separating wA0 and swA0."""
        (H,) = self.separating_hyperplanes(w, self.W.left(s, w))
        return H

    # -- strips -------------------------------------------------------------

    @staticmethod
    def strip_of(direction: int, A: Alcove | Element) -> Strip:
        k = A.coords if isinstance(A, Alcove) else A.key
        return Strip(direction, k[direction])

    def maximal_strip_region(self, A: Alcove | Element) -> tuple[tuple[int, int], ...]:
        """Per direction, the open interval (lo, hi) of <., coroot> bounding the
        maximal strip that contains A; only maximal-weight hyperplanes cut."""
        k = A.coords if isinstance(A, Alcove) else A.key
        out = []
        for alpha in range(self.nroots):
            top = self.max_weight[alpha]
            parities = [p for p in (0, 1) if self._weights[(alpha, p)] == top]
            ka = k[alpha]
            if len(parities) == 2:
                out.append((ka, ka + 1))
                continue
            (p,) = parities
            lo = ka if ka % 2 == p else ka - 1
            hi = ka + 1 if (ka + 1) % 2 == p else ka + 2
            out.append((lo, hi))
        return tuple(out)

    def strip_c0_test(self, w: Element) -> bool:
        """True iff wA0 lies in no maximal strip that contains A0."""
        region = self.maximal_strip_region(self.W.identity)
        return all(not (lo <= k and k + 1 <= hi) for k, (lo, hi) in zip(w.key, region))

    # -- the bound c_{x,y} --------------------------------------------------

    def bound_context(self, x: Element, y: Element, xy: Element | None = None) -> BoundContext:
        if xy is None:
            xy = self.W.multiply(x, y)
        H = set()
        c: dict[int, int] = {}
        for alpha in range(self.nroots):
            lo1, hi1 = _interval(0, y.key[alpha])
            lo2, hi2 = _interval(y.key[alpha], xy.key[alpha])
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if lo >= hi:
                continue
            levels = range(lo + 1, hi + 1)
            H.update((alpha, n) for n in levels)
            c[alpha] = max(self.hyperplane_weight((alpha, n)) for n in levels[:2])
        return BoundContext(x, y, frozenset(H), frozenset(c), c, sum(c.values()))

    def c_total(self, y: Element, xy: Element) -> int:
        """c_{x,y} from the keys of y and xy alone."""
        total = 0
        wt = self._weights
        for alpha, (ky, kxy) in enumerate(zip(y.key, xy.key)):
            lo1, hi1 = (0, ky) if ky >= 0 else (ky, 0)
            lo2, hi2 = (ky, kxy) if ky <= kxy else (kxy, ky)
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if lo < hi:
                if hi - lo >= 2:
                    total += self.max_weight[alpha]
                else:
                    total += wt[(alpha, hi % 2)]
        return total

    # -- s-types --------------------------------------------------------------

    @staticmethod
    def side(k: tuple[int, ...], H: Hyperplane) -> int:
        alpha, n = H
        return 1 if k[alpha] >= n else -1

    def mirror_meets(self, H: Hyperplane, Hs: Hyperplane, region: tuple[int, int]) -> bool:
        """Does (H)sigma_s meet the open quadrant of V - {H, H_s} with the given
        sides? On the mirror image the two defining functionals are
        proportional with ratio <beta, alpha-check>."""
        c = self.R.pairing(Hs[0], H[0])
        if c == 0:
            return False
        e1, e2 = region
        return e1 * e2 * (1 if c > 0 else -1) > 0

    def s_type_classify(self, H: Hyperplane, x: Element, y: Element, s: int) -> str:
        W = self.W
        xs, sy = W.right(x, s), W.left(s, y)
        if not (xs.length < x.length and sy.length < y.length):
            raise PreconditionViolated("need xs < x and sy < y")
        xsy = W.multiply(xs, y)
        if H not in self.bound_context(xs, y, xsy).H:
            raise PreconditionViolated(f"{H} is not in H_(xs,y)")
        Hs = self.wall_between(y, s)
        if H[0] == Hs[0]:
            raise PreconditionViolated("H is parallel to H_s")
        if self.reflect_hyperplane(H, Hs) == H:
            return "fixed"
        ky, kxsy = y.key, xsy.key
        e_y = (self.side(ky, H), self.side(ky, Hs))
        e_xsy = (self.side(kxsy, H), self.side(kxsy, Hs))
        t1 = self.mirror_meets(H, Hs, e_y)
        t2 = self.mirror_meets(H, Hs, e_xsy)
        if t1 == t2:
            raise PreconditionViolated("mirror meets neither or both of E_y, E_xsy")
        return "type1" if t1 else "type2"

    def phi_map(self, x: Element, y: Element, s: int) -> dict[int, int]:
        """The injection I_{xs,y} -> I_{x,y} - {direction of H_s}."""
        W = self.W
        xs = W.right(x, s)
        ctx = self.bound_context(xs, y)
        Hs = self.wall_between(y, s)
        H0y = self.separating_hyperplanes(W.identity, y)
        out = {}
        for i in ctx.I:
            k = y.key[i]
            (Hi,) = [h for h in ((i, k), (i, k + 1)) if h in ctx.H]
            img = self.reflect_hyperplane(Hi, Hs)
            out[i] = img[0] if img in H0y else i
        return out

    # -- special points -----------------------------------------------------

    def m_value(self, p: Point) -> int:
        total = 0
        for alpha in range(self.nroots):
            val = self.pair(alpha, p)
            if val.denominator == 1:
                total += self.hyperplane_weight((alpha, int(val)))
        return total

    def is_vertex(self, p: Point) -> bool:
        through = [self.R.coroots[a] for a in range(self.nroots) if self.pair(a, p).denominator == 1]
        return _rank([[Fraction(x) for x in row] for row in through]) == self.W.rank

    @property
    def max_m(self) -> int:
        return max(self.m_value(p) for p in self.a0_vertices)

    def special_point_of_type(self, t: int) -> SpecialPoint:
        W = self.W
        p = self.a0_vertices[t]
        S_lam = frozenset(range(len(W.generators))) - {t}
        return SpecialPoint(p, self.m_value(p), t, S_lam, W.longest_parabolic(S_lam))

    def _box_points(self, radius: int) -> list[Point]:
        r = self.W.rank
        th = self.R.coroots[self.R.highest_coroot_index]
        den = math.lcm(*th)
        rng = range(-radius * den, radius * den + 1)
        pts = []
        for nums in itertools.product(rng, repeat=r):
            p = tuple(Fraction(n, den) for n in nums)
            if self.is_vertex(p):
                pts.append(p)
        return pts

    def _orbits(self, radius: int) -> tuple[list[SpecialPoint], list[SpecialPoint]]:
        if radius in self._special_cache:
            return self._special_cache[radius]
        W = self.W
        top = self.max_m
        pts = [p for p in self._box_points(radius) if self.m_value(p) == top]
        inbox = set(pts)
        bound = max((abs(self.pair(a, p)) for p in pts for a in range(self.nroots)), default=0)
        mirrors = [W.reflection(a, n) for a in range(self.nroots) for n in range(-int(bound), int(bound) + 1)]
        label: dict[Point, int] = {}
        reps: list[SpecialPoint] = []
        # seed orbits from A0's vertices so representatives are vertices of A0
        seeds = [(t, p) for t, p in enumerate(self.a0_vertices) if p in inbox]
        for t, seed in seeds:
            if seed in label:
                continue
            reps.append(self.special_point_of_type(t))
            label[seed] = t
            stack = [seed]
            while stack:
                p = stack.pop()
                for M, b in mirrors:
                    q = self._apply(M, b, p)
                    if q in inbox and q not in label:
                        label[q] = t
                        stack.append(q)
        allpts = []
        by_type = {sp.vertex_type: sp for sp in reps}
        for p in sorted(pts):
            if p not in label:
                raise RadiusTooSmall(f"special point {p} not connected to a vertex of A0 within radius {radius}")
            sp = by_type[label[p]]
            allpts.append(SpecialPoint(p, top, sp.vertex_type, sp.S_lambda, sp.w_lambda))
        self._special_cache[radius] = (allpts, reps)
        return allpts, reps

    def special_points(self, radius: int = 2) -> list[SpecialPoint]:
        return self._orbits(radius)[0]

    def omega_orbit_reps(self, radius: int = 2) -> list[SpecialPoint]:
        """One special point per Omega-orbit, chosen among the vertices of A0.

        The orbit count must agree at ``radius`` and ``radius + 1``.
        """
        reps = self._orbits(radius)[1]
        bigger = self._orbits(radius + 1)[1]
        if len(reps) != len(bigger):
            raise RadiusTooSmall(f"orbit count changed between radius {radius} and {radius + 1}")
        return reps

    def quarter(self, vertex: Point, A: Alcove | Element) -> Quarter:
        """The quarter with the given vertex containing alcove A."""
        if isinstance(A, Element):
            A = self.alcove_of(A)
        p = A.point
        signs = []
        for alpha in range(self.nroots):
            val = self.pair(alpha, vertex)
            if val.denominator == 1:
                signs.append((alpha, 1 if self.pair(alpha, p) > val else -1))
        return Quarter(vertex, tuple(signs))


def _mean(points: Iterable[Point]) -> Point:
    pts = list(points)
    return tuple(sum(p[j] for p in pts) / len(pts) for j in range(len(pts[0])))


def _solve(rows: list[list[Fraction]], r: int) -> Point | None:
    """Solve a square augmented system; None when singular."""
    a = [row[:] for row in rows]
    for col in range(r):
        piv = next((i for i in range(col, r) if a[i][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        for i in range(r):
            if i != col and a[i][col] != 0:
                f = a[i][col] / a[col][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return tuple(a[i][r] / a[i][i] for i in range(r))


def _rank(rows: list[list[Fraction]]) -> int:
    a = [row[:] for row in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][col] != 0:
                f = a[i][col] / a[rank][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank
