"""The left ideal spanned by T_x C_v (x a minimal coset representative of
W_lambda, v = w_lambda z) and its bar-invariant basis.

``r``-polynomials come from rewriting T_{y^-1}^{-1} C_v in the T_x C_v basis;
``p*``-polynomials solve the resulting triangular bar-invariance system.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coxeter import Element
from .errors import ContextInvalid
from .geometry import SpecialPoint
from .hecke import HeckeAlgebra, HeckeElement, _acc
from .laurent import ONE, ZERO, LaurentPoly, solve_negative_part

__all__ = ["ParabolicModuleContext"]


@dataclass
class ParabolicModuleContext:
    hecke: HeckeAlgebra
    lam: SpecialPoint
    z: Element
    _r: dict[Element, dict[Element, LaurentPoly]] = field(default_factory=dict, repr=False)
    _pstar: dict[Element, dict[Element, LaurentPoly]] = field(default_factory=dict, repr=False)
    _tc: dict[Element, HeckeElement] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        W = self.hecke.W
        if W.descents(self.z, "left") & self.lam.S_lambda:
            raise ContextInvalid("z must satisfy w_lambda z = w_lambda . z")
        self.v = W.multiply(self.lam.w_lambda, self.z)
        self.J = self.lam.S_lambda

    @property
    def W(self):
        return self.hecke.W

    def in_X(self, x: Element) -> bool:
        return self.W.is_min_coset_rep(x, self.J, "right")

    def _require_X(self, y: Element) -> None:
        if not self.in_X(y):
            raise ContextInvalid(f"{self.W.word_string(y)} is not a minimal coset representative")

    def T_times_Cv(self, x: Element) -> HeckeElement:
        """T_x C_v in the standard basis, built up along a reduced word of x."""
        hit = self._tc.get(x)
        if hit is not None:
            return hit
        W = self.W
        if x.length == 0:
            res = self.hecke.kl_basis_element(self.v)
        else:
            s = min(W.descents(x, "left"))
            res = self.hecke.t_mult_generator_left(s, self.T_times_Cv(W.left(s, x)))
        self._tc[x] = res
        return res

    @property
    def Cv(self) -> HeckeElement:
        return self.hecke.kl_basis_element(self.v)

    # -- r-polynomials ------------------------------------------------------

    def r_bar_row(self, y: Element) -> dict[Element, LaurentPoly]:
        """Coefficients bar(r_{x,y}) of T_{y^-1}^{-1} C_v on the T_x C_v."""
        self._require_X(y)
        W = self.W
        out: dict[Element, LaurentPoly] = {}
        for u, c in self.hecke.t_inverse(y).terms.items():
            x, w = W.coset_factorize(u, self.J, "right")
            # T_w C_v = v^{L(w)} C_v for w in W_lambda
            _acc(out, x, c.shift(W.L(w)))
        return out

    def r_row(self, y: Element) -> dict[Element, LaurentPoly]:
        hit = self._r.get(y)
        if hit is None:
            hit = {x: p.bar() for x, p in self.r_bar_row(y).items()}
            self._r[y] = hit
        return hit

    def r(self, x: Element, y: Element) -> LaurentPoly:
        return self.r_row(y).get(x, ZERO)

    def delta_defect(self, x: Element, y: Element) -> LaurentPoly:
        """sum_z bar(r_{x,z}) r_{z,y} - delta_{x,y}; zero when the identity holds."""
        total = ZERO
        for z, p in self.r_row(y).items():
            q = self.r(x, z)
            if q:
                total = total + q.bar() * p
        return total - (ONE if x == y else ZERO)

    # -- p*-polynomials -----------------------------------------------------

    def p_star_row(self, y: Element) -> dict[Element, LaurentPoly]:
        """Nonzero p*_{x,y}, solved by descending length."""
        hit = self._pstar.get(y)
        if hit is not None:
            return hit
        self._require_X(y)
        pstar: dict[Element, LaurentPoly] = {}
        rhs: dict[Element, LaurentPoly] = {}
        pending = {y}
        while pending:
            z = max(pending, key=Element.sort_key)
            pending.discard(z)
            p = ONE if z == y else solve_negative_part(rhs.pop(z, ZERO))
            if not p:
                continue
            pstar[z] = p
            for x, c in self.r_row(z).items():
                if x != z:
                    _acc(rhs, x, c * p)
                    pending.add(x)
        self._pstar[y] = pstar
        return pstar

    def p_star(self, x: Element, y: Element) -> LaurentPoly:
        return self.p_star_row(y).get(x, ZERO)

    def c_for_product(self, y: Element) -> HeckeElement:
        """sum_x p*_{x,y} T_x C_v in the standard basis (equals C_{yv})."""
        out = HeckeElement()
        for x, p in self.p_star_row(y).items():
            out = out + self.T_times_Cv(x).scale(p)
        return out

    # -- checks used by the verification suites -----------------------------

    def endpoint_degree_check(self, y: Element, v1: Element) -> bool:
        """Is P_{v1,v} T_y T_{v1} an A_{<0}-combination of the T_z?"""
        self._require_X(y)
        W = self.W
        if not (v1.length < self.v.length and W.bruhat_leq(v1, self.v)):
            raise ContextInvalid("need v1 < v")
        P = self.hecke.kl_poly(v1, self.v)
        if not P:
            return True
        prod = self.hecke.t_multiply(y, v1)
        return all((P * c).is_strictly_negative() for c in prod.terms.values())

    def ts_on_module(self, s: int, x: Element) -> tuple[str, dict[Element, LaurentPoly]]:
        """T_s T_x C_v in the basis {T_x' C_v}, by the three coset cases."""
        self._require_X(x)
        W = self.W
        sx = W.left(s, x)
        if self.in_X(sx):
            if sx.length > x.length:
                return "up", {sx: ONE}
            return "down", {sx: ONE, x: self.hecke.xi[s]}
        # sx = x t with t in S_lambda
        t = W.multiply(W.inverse(x), sx)
        (ti,) = [i for i in self.J if W.gen(i) == t]
        return "fixed", {x: LaurentPoly.monomial(W.weights[ti])}

    def combine(self, coeffs: dict[Element, LaurentPoly]) -> HeckeElement:
        out = HeckeElement()
        for x, p in coeffs.items():
            out = out + self.T_times_Cv(x).scale(p)
        return out

    def module_basis_change(self, y: Element) -> HeckeElement:
        """T_y C_v in the C-basis; supported on C_{xv}, x in X_lambda."""
        return self.hecke.expand_in_c_basis(self.T_times_Cv(y))
