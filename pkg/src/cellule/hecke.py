"""Iwahori-Hecke algebra with unequal parameters: standard basis products,
bar involution, Kazhdan-Lusztig basis and change of basis.

Coefficients are :class:`~cellule.laurent.LaurentPoly`. All tables are
memoized per :class:`HeckeAlgebra` instance and keyed by element keys; fills
are idempotent so concurrent readers see consistent values.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .coxeter import CoxeterSystem, Element
from .errors import BasisMismatch
from .laurent import ONE, ZERO, LaurentPoly, solve_negative_part, xi

__all__ = ["HeckeElement", "HeckeAlgebra"]


class HeckeElement:
    """Finitely supported map Element -> LaurentPoly, tagged "T" or "C"."""

    __slots__ = ("terms", "basis")

    def __init__(self, terms: Mapping[Element, LaurentPoly] | None = None, basis: str = "T"):
        self.terms: dict[Element, LaurentPoly] = {w: p for w, p in (terms or {}).items() if p}
        self.basis = basis

    @classmethod
    def basis_element(cls, w: Element, basis: str = "T") -> HeckeElement:
        return cls({w: ONE}, basis)

    def _check(self, other: HeckeElement) -> None:
        if self.basis != other.basis:
            raise BasisMismatch(f"cannot combine {self.basis}-basis and {other.basis}-basis elements")

    def __add__(self, other: HeckeElement) -> HeckeElement:
        self._check(other)
        out = dict(self.terms)
        for w, p in other.terms.items():
            q = out.get(w, ZERO) + p
            if q:
                out[w] = q
            else:
                out.pop(w, None)
        return HeckeElement(out, self.basis)

    def __neg__(self) -> HeckeElement:
        return HeckeElement({w: -p for w, p in self.terms.items()}, self.basis)

    def __sub__(self, other: HeckeElement) -> HeckeElement:
        return self + (-other)

    def scale(self, a: LaurentPoly | int) -> HeckeElement:
        return HeckeElement({w: p * a for w, p in self.terms.items()}, self.basis)

    def coeff(self, w: Element) -> LaurentPoly:
        return self.terms.get(w, ZERO)

    def __getitem__(self, w: Element) -> LaurentPoly:
        return self.coeff(w)

    def __iter__(self) -> Iterator[tuple[Element, LaurentPoly]]:
        return iter(sorted(self.terms.items(), key=lambda t: t[0].sort_key()))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def support(self) -> list[Element]:
        return sorted(self.terms, key=Element.sort_key)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.basis == other.basis and self.terms == other.terms

    def max_degree(self) -> float:
        return max((p.deg for p in self.terms.values()), default=float("-inf"))

    def __repr__(self) -> str:
        body = " + ".join(f"({p})*{self.basis}{list(w.key)}" for w, p in self) or "0"
        return f"HeckeElement[{self.basis}]({body})"


def _acc(d: dict[Element, LaurentPoly], w: Element, p: LaurentPoly) -> None:
    q = d.get(w)
    q = p if q is None else q + p
    if q:
        d[w] = q
    else:
        d.pop(w, None)


class HeckeAlgebra:
    def __init__(self, system: CoxeterSystem):
        self.W = system
        self.xi = tuple(xi(L) for L in system.weights)
        self._tinv: dict[Element, HeckeElement] = {}
        self._P: dict[Element, dict[Element, LaurentPoly]] = {}
        self._C: dict[Element, HeckeElement] = {}

    # -- standard basis -----------------------------------------------------

    def T(self, w: Element | str) -> HeckeElement:
        if isinstance(w, str):
            w = self.W.word_to_element(w)
        return HeckeElement.basis_element(w)

    def t_mult_generator_left(self, s: int | str, h: HeckeElement) -> HeckeElement:
        """T_s * h in the standard basis."""
        if h.basis != "T":
            raise BasisMismatch("t_mult_generator_left needs a T-basis element")
        W = self.W
        s = W.generator_index(s)
        out: dict[Element, LaurentPoly] = {}
        xs = self.xi[s]
        for w, a in h.terms.items():
            sw = W.left(s, w)
            _acc(out, sw, a)
            if sw.length < w.length:
                _acc(out, w, a * xs)
        return HeckeElement(out)

    def t_mult_generator_right(self, h: HeckeElement, s: int | str) -> HeckeElement:
        """h * T_s in the standard basis."""
        if h.basis != "T":
            raise BasisMismatch("t_mult_generator_right needs a T-basis element")
        W = self.W
        s = W.generator_index(s)
        out: dict[Element, LaurentPoly] = {}
        xs = self.xi[s]
        for w, a in h.terms.items():
            ws = W.right(w, s)
            _acc(out, ws, a)
            if ws.length < w.length:
                _acc(out, w, a * xs)
        return HeckeElement(out)

    def left_multiply_by(self, x: Element, h: HeckeElement) -> HeckeElement:
        """T_x * h, folding T_s over a reduced word of x from the right."""
        for s in reversed(self.W.reduced_word_indices(x)):
            h = self.t_mult_generator_left(s, h)
        return h

    def t_multiply(self, x: Element, y: Element) -> HeckeElement:
        """T_x T_y = sum_z f_{x,y,z} T_z."""
        return self.left_multiply_by(x, self.T(y))

    def multiply(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        """General product of two T-basis elements."""
        if a.basis != "T" or b.basis != "T":
            raise BasisMismatch("multiply works in the T-basis")
        out = HeckeElement()
        for x, p in a.terms.items():
            out = out + self.left_multiply_by(x, b).scale(p)
        return out

    # -- inverses and bar ---------------------------------------------------

    def t_inverse(self, w: Element) -> HeckeElement:
        """T_{w^-1}^{-1}, i.e. the image of T_w under the bar involution."""
        hit = self._tinv.get(w)
        if hit is not None:
            return hit
        W = self.W
        if w.length == 0:
            res = self.T(W.identity)
        else:
            s = min(W.descents(w, "left"))
            rest = self.t_inverse(W.left(s, w))
            # T_s^{-1} = T_s - xi_s
            res = self.t_mult_generator_left(s, rest) - rest.scale(self.xi[s])
        self._tinv[w] = res
        return res

    def R_bar(self, x: Element, y: Element) -> LaurentPoly:
        """Coefficient of T_x in T_{y^-1}^{-1}."""
        return self.t_inverse(y).coeff(x)

    def bar_hecke(self, h: HeckeElement) -> HeckeElement:
        if h.basis != "T":
            raise BasisMismatch("bar_hecke works in the T-basis")
        out: dict[Element, LaurentPoly] = {}
        for w, a in h.terms.items():
            ab = a.bar()
            for z, c in self.t_inverse(w).terms.items():
                _acc(out, z, ab * c)
        return HeckeElement(out)

    def bar_hecke_multiplicative(self, h: HeckeElement) -> HeckeElement:
        """Bar computed as a ring map, T_w -> prod (T_s - xi_s). Test oracle."""
        out = HeckeElement()
        W = self.W
        for w, a in h.terms.items():
            img = self.T(W.identity)
            for s in W.reduced_word_indices(w):
                inv = self.T(W.gen(s)) - self.T(W.identity).scale(self.xi[s])
                img = self.multiply(img, inv)
            out = out + img.scale(a.bar())
        return out

    # -- Kazhdan-Lusztig basis ----------------------------------------------

    def kl_polys(self, w: Element) -> dict[Element, LaurentPoly]:
        """All nonzero P_{y,w}, including P_{w,w} = 1."""
        hit = self._P.get(w)
        if hit is not None:
            return hit
        # P_{x,w} solves  bar(P) - P = sum_{x<y<=w} R_{x,y} P_{y,w}, with
        # R_{x,y} the bar of the T_x coefficient of T_{y^-1}^{-1}. Finalize by
        # descending length and push each finished P_{y,w} down to all x < y.
        P: dict[Element, LaurentPoly] = {}
        rhs: dict[Element, LaurentPoly] = {}
        layers: dict[int, list[Element]] = {}
        for x in self.t_inverse(w).terms:
            layers.setdefault(x.length, []).append(x)
        for ell in sorted(layers, reverse=True):
            for x in layers[ell]:
                if x == w:
                    p = ONE
                else:
                    p = solve_negative_part(rhs.pop(x, ZERO))
                if not p:
                    continue
                P[x] = p
                for u, c in self.t_inverse(x).terms.items():
                    if u != x:
                        _acc(rhs, u, c.bar() * p)
        self._P[w] = P
        return P

    def kl_poly(self, y: Element, w: Element) -> LaurentPoly:
        return self.kl_polys(w).get(y, ZERO)

    def kl_basis_element(self, w: Element) -> HeckeElement:
        """C_w written in the standard basis."""
        hit = self._C.get(w)
        if hit is None:
            hit = HeckeElement(self.kl_polys(w))
            self._C[w] = hit
        return hit

    C = kl_basis_element

    def expand_in_c_basis(self, h: HeckeElement) -> HeckeElement:
        """Rewrite a T-basis element in the C-basis by peeling off the longest term."""
        if h.basis == "C":
            return h
        rest = dict(h.terms)
        out: dict[Element, LaurentPoly] = {}
        while rest:
            w = max(rest, key=Element.sort_key)
            a = rest[w]
            out[w] = a
            for y, p in self.kl_basis_element(w).terms.items():
                _acc(rest, y, -(p * a))
        return HeckeElement(out, "C")

    def from_c_basis(self, h: HeckeElement) -> HeckeElement:
        if h.basis == "T":
            return h
        out: dict[Element, LaurentPoly] = {}
        for w, a in h.terms.items():
            for y, p in self.kl_basis_element(w).terms.items():
                _acc(out, y, p * a)
        return HeckeElement(out)

    def ts_times_c(self, s: int | str, w: Element) -> HeckeElement:
        """T_s C_w in the C-basis."""
        return self.expand_in_c_basis(self.t_mult_generator_left(s, self.kl_basis_element(w)))

    def is_bar_invariant(self, h: HeckeElement) -> bool:
        return self.bar_hecke(h) == h

    def clear(self) -> None:
        self._tinv.clear()
        self._P.clear()
        self._C.clear()

    def elements_by_length(self, elems: Iterable[Element]) -> list[Element]:
        return sorted(elems, key=Element.sort_key)
