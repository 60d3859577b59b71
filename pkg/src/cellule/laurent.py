"""Integer Laurent polynomials in one variable ``v``.

Every Hecke-algebra coefficient lives here. Polynomials are immutable and
hashable; zero coefficients are never stored.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

from .errors import NotAntisymmetric

__all__ = ["LaurentPoly", "ZERO", "ONE", "v", "solve_negative_part", "xi"]


class LaurentPoly:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, a in items:
            if a:
                c[int(e)] = c.get(int(e), 0) + int(a)
        self._c = {e: a for e, a in c.items() if a}
        self._hash = None

    @classmethod
    def _raw(cls, c: dict[int, int]) -> LaurentPoly:
        # caller guarantees no zero entries
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPoly:
        return cls._raw({exponent: coeff} if coeff else {})

    @classmethod
    def const(cls, a: int) -> LaurentPoly:
        return cls.monomial(0, a)

    # -- inspection ---------------------------------------------------------

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def coeff(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def terms(self) -> dict[int, int]:
        return dict(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    @property
    def deg(self) -> float | int:
        """Largest exponent; ``-inf`` for the zero polynomial."""
        return max(self._c) if self._c else float("-inf")

    @property
    def low(self) -> float | int:
        return min(self._c) if self._c else float("inf")

    def is_strictly_negative(self) -> bool:
        """Membership in v^-1 Z[v^-1]. Zero counts as a member."""
        return all(e < 0 for e in self._c)

    def is_antisymmetric(self) -> bool:
        return all(self._c.get(-e, 0) == -a for e, a in self._c.items())

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for e, a in other._c.items():
            s = c.get(e, 0) + a
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other: int) -> LaurentPoly:
        return LaurentPoly.const(other) - self

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: a * other for e, a in self._c.items()})
        if not self._c or not other._c:
            return ZERO
        c: dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + a1 * a2
        return LaurentPoly._raw({e: a for e, a in c.items() if a})

    __rmul__ = __mul__

    def shift(self, n: int) -> LaurentPoly:
        """Multiply by v^n."""
        if not n:
            return self
        return LaurentPoly._raw({e + n: a for e, a in self._c.items()})

    def bar(self) -> LaurentPoly:
        """The ring involution v -> v^-1."""
        return LaurentPoly._raw({-e: a for e, a in self._c.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict[str, int]:
        return {str(e): a for e, a in sorted(self._c.items(), reverse=True)}

    def __str__(self) -> str:
        if not self._c:
            return "0"
        out = []
        for e, a in sorted(self._c.items(), reverse=True):
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if e == 0:
                body = str(mag)
            else:
                mono = "v" if e == 1 else f"v^{e}"
                body = mono if mag == 1 else f"{mag}{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    _TERM = re.compile(r"([+-]?)\s*(\d*)\s*(?:\*\s*)?(v(?:\^\(?(-?\d+)\)?)?)?")

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Inverse of ``str``; accepts forms like ``"v^2 - 3v^-1 + 1"``."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return ZERO
        c: dict[int, int] = {}
        pos = 0
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse Laurent polynomial {text!r}")
            sign, digits, mono, exp = m.groups()
            if not digits and not mono:
                raise ValueError(f"cannot parse Laurent polynomial {text!r}")
            a = int(digits) if digits else 1
            if sign == "-":
                a = -a
            e = 0 if not mono else (int(exp) if exp is not None else 1)
            c[e] = c.get(e, 0) + a
            pos = m.end()
        return cls(c)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
v = LaurentPoly.monomial(1)


def solve_negative_part(a: LaurentPoly) -> LaurentPoly:
    """Return the unique p in v^-1 Z[v^-1] with bar(p) - p == a.

    ``a`` must satisfy bar(a) == -a.
    """
    if not a.is_antisymmetric():
        raise NotAntisymmetric(f"{a} is not antisymmetric under v -> v^-1")
    return LaurentPoly._raw({-e: c for e, c in a.terms().items() if e > 0})


def xi(weight: int) -> LaurentPoly:
    """v^L - v^-L."""
    return LaurentPoly._raw({weight: 1, -weight: -1})
