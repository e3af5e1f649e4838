"""Exact scalars: Gaussian integers and Laurent polynomials in q."""

from __future__ import annotations

import re


class GaussInt:
    """a + b*i with arbitrary precision integer parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0):
        self.re = int(re)
        self.im = int(im)

    @classmethod
    def coerce(cls, x) -> GaussInt:
        if isinstance(x, GaussInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {x!r} to GaussInt")

    def __add__(self, other):
        try:
            o = GaussInt.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussInt.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = GaussInt.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussInt(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = GaussInt(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> GaussInt:
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_unit(self) -> bool:
        return self.norm() == 1

    def inverse(self) -> GaussInt:
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit in Z[i]")
        return self.conj()

    def __bool__(self):
        return bool(self.re or self.im)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussInt):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussInt({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"{self.re}{sign}{'' if mag == 1 else mag}i"


I = GaussInt(0, 1)


def ipow(k: int) -> GaussInt:
    """i**k for any integer k."""
    return [GaussInt(1), GaussInt(0, 1), GaussInt(-1), GaussInt(0, -1)][k % 4]


class LaurentPoly:
    """Finitely supported map exponent -> integer coefficient, read as a
    polynomial in q and q^-1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        c = {}
        for e, v in dict(coeffs or {}).items():
            if v:
                c[int(e)] = int(v)
        self.coeffs = c

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> LaurentPoly:
        return cls({e: c})

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        out = dict(self.coeffs)
        for e, v in other.coeffs.items():
            out[e] = out.get(e, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: v * other for e, v in self.coeffs.items()})
        out: dict[int, int] = {}
        for e1, v1 in self.coeffs.items():
            for e2, v2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def at_one(self) -> int:
        """Value at q = 1 (sum of coefficients)."""
        return sum(self.coeffs.values())

    def __repr__(self):
        return f"LaurentPoly({self.coeffs!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            v = self.coeffs[e]
            if e == 0:
                mono = str(abs(v))
            else:
                qe = "q" if e == 1 else f"q^{e}"
                mono = qe if abs(v) == 1 else f"{abs(v)}{qe}"
            if not parts:
                parts.append(mono if v > 0 else "-" + mono)
            else:
                parts.append(("+ " if v > 0 else "- ") + mono)
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Inverse of str(): accepts e.g. "0", "q^8", "3 + 2q^2", "-q^-1"."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        if s[0] not in "+-":
            s = "+" + s
        out: dict[int, int] = {}
        pos = 0
        term = re.compile(r"([+-])(\d*)(q(?:\^(-?\d+))?)?")
        while pos < len(s):
            mt = term.match(s, pos)
            if not mt or mt.end() == pos or (not mt.group(2) and not mt.group(3)):
                raise ValueError(f"cannot parse Laurent polynomial {text!r}")
            sign = -1 if mt.group(1) == "-" else 1
            coef = int(mt.group(2)) if mt.group(2) else 1
            if mt.group(3):
                e = int(mt.group(4)) if mt.group(4) is not None else 1
            else:
                e = 0
            out[e] = out.get(e, 0) + sign * coef
            pos = mt.end()
        return cls(out)
