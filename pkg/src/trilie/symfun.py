"""Exponential polynomials in x, y, z with rational coefficients.

Elements are finite sums of terms ``c * x^a y^b z^c e^{k z}`` with
natural powers a, b, c and integer frequency k.  This ring is closed
under products, partial derivatives and the Jacobian determinant
bracket, which covers every function that the function-space examples
actually touch.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exactq import Q, qnorm, qparse, qstr

# term key: (a, b, c, k) standing for x^a y^b z^c e^{kz}
Key = tuple[int, int, int, int]


class ExpPoly:
    """Immutable finite sum of monomials x^a y^b z^c e^{kz}."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Key, Q] | None = None):
        clean: dict[Key, Q] = {}
        if terms:
            for key, coeff in terms.items():
                a, b, c, k = key
                if a < 0 or b < 0 or c < 0:
                    raise ValueError(f"negative power in term key {key}")
                coeff = qnorm(coeff)
                if coeff != 0:
                    clean[(int(a), int(b), int(c), int(k))] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ExpPoly is immutable")

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero() -> "ExpPoly":
        return ExpPoly({})

    @staticmethod
    def const(value) -> "ExpPoly":
        return ExpPoly({(0, 0, 0, 0): qparse(value)})

    @staticmethod
    def monomial(a: int, b: int, c: int, k: int, coeff=1) -> "ExpPoly":
        return ExpPoly({(a, b, c, k): qparse(coeff)})

    @staticmethod
    def var(name: str) -> "ExpPoly":
        try:
            pos = "xyz".index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r}") from None
        key = [0, 0, 0, 0]
        key[pos] = 1
        return ExpPoly({tuple(key): 1})

    @staticmethod
    def exp(k: int) -> "ExpPoly":
        """e^{kz}."""
        return ExpPoly({(0, 0, 0, int(k)): 1})

    # -- ring structure ----------------------------------------------

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            return NotImplemented
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = qnorm(out.get(key, 0) + coeff)
            if acc == 0:
                out.pop(key, None)
            else:
                out[key] = acc
        return ExpPoly(out)

    def __sub__(self, other: "ExpPoly") -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "ExpPoly":
        return ExpPoly({key: -coeff for key, coeff in self.terms.items()})

    def scale(self, scalar) -> "ExpPoly":
        scalar = qparse(scalar)
        if scalar == 0:
            return ExpPoly.zero()
        return ExpPoly({key: coeff * scalar for key, coeff in self.terms.items()})

    def __mul__(self, other: "ExpPoly") -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            return NotImplemented
        out: dict[Key, Q] = {}
        for (a1, b1, c1, k1), q1 in self.terms.items():
            for (a2, b2, c2, k2), q2 in other.terms.items():
                key = (a1 + a2, b1 + b2, c1 + c2, k1 + k2)
                acc = qnorm(out.get(key, 0) + q1 * q2)
                if acc == 0:
                    out.pop(key, None)
                else:
                    out[key] = acc
        return ExpPoly(out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, ExpPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"ExpPoly({self.to_text()})"

    # -- calculus ----------------------------------------------------

    def partial(self, var: str) -> "ExpPoly":
        """Exact partial derivative with respect to x, y or z.

        d/dz hits both the z power and the exponential:
        d/dz (z^c e^{kz}) = c z^{c-1} e^{kz} + k z^c e^{kz}.
        """
        out: dict[Key, Q] = {}

        def bump(key: Key, coeff) -> None:
            acc = qnorm(out.get(key, 0) + coeff)
            if acc == 0:
                out.pop(key, None)
            else:
                out[key] = acc

        if var == "x":
            for (a, b, c, k), q in self.terms.items():
                if a:
                    bump((a - 1, b, c, k), a * q)
        elif var == "y":
            for (a, b, c, k), q in self.terms.items():
                if b:
                    bump((a, b - 1, c, k), b * q)
        elif var == "z":
            for (a, b, c, k), q in self.terms.items():
                if c:
                    bump((a, b, c - 1, k), c * q)
                if k:
                    bump((a, b, c, k), k * q)
        else:
            raise ValueError(f"unknown variable {var!r}")
        return ExpPoly(out)

    # -- shape queries ------------------------------------------------

    def degree(self) -> int:
        """Maximal total degree a+b+c, -1 for the zero element."""
        if not self.terms:
            return -1
        return max(a + b + c for (a, b, c, _k) in self.terms)

    def max_freq(self) -> int:
        """Maximal |k| over all terms, 0 for the zero element."""
        if not self.terms:
            return 0
        return max(abs(k) for (_a, _b, _c, k) in self.terms)

    def eval_at(self, xv, yv, zv, ev=1) -> Q:
        """Evaluate with e^{z} treated as the independent value ev.

        A ring homomorphism to Q (for ev != 0), handy as a second
        opinion in tests.  It does not commute with d/dz, so it is never
        used to certify derivative identities.
        """
        xv, yv, zv, ev = qparse(xv), qparse(yv), qparse(zv), qparse(ev)
        total: Q = 0
        for (a, b, c, k), q in self.terms.items():
            factor = q * xv**a * yv**b * zv**c
            if k >= 0:
                factor *= ev**k
            else:
                factor *= Fraction(1, 1) / ev ** (-k)
            total = qnorm(total + factor)
        return total

    # -- text form ----------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c, k) in sorted(self.terms):
            coeff = self.terms[(a, b, c, k)]
            factors = []
            for power, letter in ((a, "x"), (b, "y"), (c, "z")):
                if power == 1:
                    factors.append(letter)
                elif power:
                    factors.append(f"{letter}^{power}")
            if k:
                factors.append(f"e^{{{k} z}}")
            if factors:
                parts.append(f"{qstr(coeff)} * " + " ".join(factors))
            else:
                parts.append(qstr(coeff))
        return " + ".join(parts)


_FACTOR_RE = re.compile(
    r"([xyz])(?:\^(-?\d+))?|e\^\{\s*(-?\d+)\s*z\s*\}"
)


def from_text(text: str) -> ExpPoly:
    """Parse the canonical term syntax produced by ``to_text``.

    Accepts "0", sums joined by "+", optional leading "-", and terms of
    the form "coeff * x^a y^b z^c e^{k z}" where each factor is
    optional and coeff may be an integer or "p/q".
    """
    text = text.strip()
    if text == "0":
        return ExpPoly.zero()
    total = ExpPoly.zero()
    for raw in text.split("+"):
        piece = raw.strip()
        if not piece:
            raise ValueError("empty term in polynomial text")
        sign = 1
        if piece.startswith("-"):
            sign = -1
            piece = piece[1:].strip()
        if "*" in piece:
            coeff_text, _, factor_text = piece.partition("*")
            coeff = qparse(coeff_text.strip())
        elif piece[0].isdigit():
            coeff, factor_text = qparse(piece), ""
        else:
            coeff, factor_text = 1, piece
        a = b = c = k = 0
        consumed = 0
        for match in _FACTOR_RE.finditer(factor_text):
            consumed += 1
            letter, power, freq = match.groups()
            if letter is not None:
                power = 1 if power is None else int(power)
                if letter == "x":
                    a += power
                elif letter == "y":
                    b += power
                else:
                    c += power
            else:
                k += int(freq)
        leftovers = _FACTOR_RE.sub("", factor_text).strip()
        if leftovers:
            raise ValueError(f"cannot parse polynomial factor {leftovers!r}")
        if factor_text.strip() and consumed == 0:
            raise ValueError(f"cannot parse term {raw.strip()!r}")
        term = ExpPoly.monomial(a, b, c, k, qnorm(sign * coeff))
        total = total + term
    return total


# -- the Jacobian bracket ---------------------------------------------


def jacobian_bracket(f: ExpPoly, g: ExpPoly, h: ExpPoly) -> ExpPoly:
    """det d(f,g,h)/d(x,y,z), the ternary bracket of the function examples."""
    fx, fy, fz = f.partial("x"), f.partial("y"), f.partial("z")
    gx, gy, gz = g.partial("x"), g.partial("y"), g.partial("z")
    hx, hy, hz = h.partial("x"), h.partial("y"), h.partial("z")
    return (
        fx * (gy * hz - gz * hy)
        - fy * (gx * hz - gz * hx)
        + fz * (gx * hy - gy * hx)
    )


def rho_ad(f: ExpPoly, g: ExpPoly, a: ExpPoly) -> ExpPoly:
    """The adjoint pair action on functions: rho(f,g)(a) = [f,g,a]."""
    return jacobian_bracket(f, g, a)


# handy generators
X = ExpPoly.var("x")
Y = ExpPoly.var("y")
Z = ExpPoly.var("z")
ONE = ExpPoly.const(1)
