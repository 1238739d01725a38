"""Exact Laurent polynomials with integer coefficients in one variable."""

from __future__ import annotations

from typing import Mapping


class LaurentPoly:
    """Sparse integer Laurent polynomial ``sum c_k x^k``.

    ``var`` names the variable. For ``var == "t"`` the stored exponent ``k``
    means ``t^(k/2)``, so half-integer powers of ``t`` are exact integers here.
    Bracket values use ``var == "A"`` with ordinary integer exponents.
    Zero coefficients are never stored.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Mapping[int, int] | None = None, var: str = "A"):
        self.coeffs = {int(k): int(c) for k, c in (coeffs or {}).items() if c}
        self.var = var

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1, var: str = "A") -> "LaurentPoly":
        return cls({exp: coeff}, var)

    @classmethod
    def one(cls, var: str = "A") -> "LaurentPoly":
        return cls({0: 1}, var)

    def _check(self, other: "LaurentPoly") -> None:
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({0: other}, self.var)
        self._check(other)
        return other

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self.coeffs.items()}, self.var)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out: dict[int, int] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((k, c),) = self.coeffs.items()
            if c not in (1, -1):
                raise ValueError("monomial inverse needs a unit coefficient")
            return LaurentPoly({-k * -n: c ** -n}, self.var)
        out = LaurentPoly.one(self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.var, frozenset(self.coeffs.items())))

    def invert(self) -> "LaurentPoly":
        """Substitute the variable by its inverse."""
        return LaurentPoly({-k: c for k, c in self.coeffs.items()}, self.var)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()}, self.var)

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_text(self) -> str:
        """``coeff*var^p`` terms sorted by exponent; ``t`` powers as ``(p/2)``."""
        if not self.coeffs:
            return "0"
        terms = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            power = f"({k}/2)" if self.var == "t" else str(k)
            terms.append(f"{c}*{self.var}^{power}")
        return " + ".join(terms).replace("+ -", "- ")

    @classmethod
    def from_text(cls, text: str, var: str = "A") -> "LaurentPoly":
        text = text.strip()
        if text == "0":
            return cls({}, var)
        out: dict[int, int] = {}
        for term in text.replace("- ", "+ -").split("+"):
            term = term.strip()
            coeff, power = term.split("*")
            v, p = power.split("^")
            var = v
            p = p.strip("()")
            k = int(p.split("/")[0]) if v == "t" else int(p)
            out[k] = out.get(k, 0) + int(coeff)
        return cls(out, var)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"

    __str__ = to_text
