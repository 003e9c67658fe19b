# twolayer/algebra/exppoly.py
"""
Exponential polynomials sum_j p_j(t) exp(sigma_j t) with rational exponents.

Coefficients are sympy numbers. They are rational for everything the algebra builds from
rational data; shifting the argument by a rational amount introduces exact exp(rational)
factors, and shifting by a float gives floats, both of which stay in the ring.
"""
import re

import numpy as np
import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    rationalize,
    standard_transformations,
)

from ..errors import ExpPolyParseError

t = sympy.Symbol("t", real=True)

TRANSFORMATIONS = standard_transformations + (convert_xor, rationalize)

# "2t", "(1+t)exp(t)", "1/2 t", "t exp(t)" -> explicit products; leaves "1e-3" and "Dt" alone
_IMPLICIT_MUL = re.compile(
    r"(?<=[\d)])\s*(?=(?![eE][-+]?\d)[A-Za-z(])"
    r"|(?<![A-Za-z_]t)(?<=t)\s*(?=[A-Za-z(])"
)


def to_number(value):
    """Exact sympy number: ints, Fractions and numeric strings become Rationals, floats stay floats."""
    if isinstance(value, sympy.Basic):
        return value
    if isinstance(value, float):
        return sympy.Float(value)
    return sympy.sympify(value, rational=True)


def _clean(coeff):
    coeff = sympy.expand(coeff)
    return sympy.S.Zero if coeff == 0 else coeff


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class ExpPoly:
    """Canonical form: a tuple of (sigma, coefficients by ascending degree), sorted by sigma."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        collected = {}
        for sigma, coeffs in (terms.items() if isinstance(terms, dict) else (terms or ())):
            sigma = sympy.Rational(sigma)
            current = list(collected.get(sigma, ()))
            for k, c in enumerate(coeffs):
                if k >= len(current):
                    current.append(sympy.S.Zero)
                current[k] = current[k] + to_number(c)
            collected[sigma] = current
        canonical = []
        for sigma in sorted(collected):
            coeffs = _trim(_clean(c) for c in collected[sigma])
            if coeffs:
                canonical.append((sigma, coeffs))
        object.__setattr__(self, "terms", tuple(canonical))

    def __setattr__(self, name, value):
        raise AttributeError("ExpPoly is immutable")

    # constructors

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, c):
        return cls([(0, (c,))])

    @classmethod
    def monomial(cls, degree=1, sigma=0, coeff=1):
        coeffs = [0] * degree + [coeff]
        return cls([(sigma, coeffs)])

    @classmethod
    def exponential(cls, sigma, coeff=1):
        return cls([(sigma, (coeff,))])

    @classmethod
    def from_expr(cls, expr):
        """Decompose a sympy expression in ``t`` into canonical form."""
        expr = sympy.expand(sympy.powsimp(sympy.sympify(expr), combine="exp"))
        terms = {}
        for term in sympy.Add.make_args(expr):
            term = sympy.powsimp(term, combine="exp")
            sigma, degree, coeff = sympy.S.Zero, 0, sympy.S.One
            for factor in sympy.Mul.make_args(term):
                if isinstance(factor, sympy.exp) and factor.has(t):
                    arg = sympy.expand(factor.args[0])
                    rate = arg.coeff(t, 1)
                    rest = sympy.expand(arg - rate * t)
                    if rest.has(t) or not rate.is_Rational:
                        raise ExpPolyParseError(f"exponent {arg} is not (rational)*t + constant")
                    sigma += rate
                    coeff *= sympy.exp(rest)
                elif factor == t:
                    degree += 1
                elif factor.is_Pow and factor.base == t:
                    if not (factor.exp.is_Integer and factor.exp >= 0):
                        raise ExpPolyParseError(f"power {factor} is not a nonnegative integer power of t")
                    degree += int(factor.exp)
                elif factor.has(t):
                    raise ExpPolyParseError(f"factor {factor} is not an exponential polynomial in t")
                else:
                    coeff *= factor
            coeffs = terms.setdefault(sigma, [])
            coeffs.extend([sympy.S.Zero] * (degree + 1 - len(coeffs)))
            coeffs[degree] += coeff
        return cls(terms)

    # sympy bridge

    def to_expr(self):
        return sympy.Add(*[
            c * t**k * sympy.exp(sigma * t)
            for sigma, coeffs in self.terms
            for k, c in enumerate(coeffs)
        ])

    # structure

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0 and len(self.terms[0][1]) == 1)

    def constant_value(self):
        if self.is_zero():
            return sympy.S.Zero
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms[0][1][0]

    def coordinates(self) -> dict:
        """Map (sigma, degree) -> nonzero coefficient."""
        return {
            (sigma, k): c
            for sigma, coeffs in self.terms
            for k, c in enumerate(coeffs)
            if c != 0
        }

    def degree(self) -> int:
        return max((len(coeffs) - 1 for _, coeffs in self.terms), default=-1)

    # ring operations

    def _lift(self, other):
        if isinstance(other, ExpPoly):
            return other
        return ExpPoly.constant(other)

    def __add__(self, other):
        other = self._lift(other)
        return ExpPoly(list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly([(s, tuple(-c for c in coeffs)) for s, coeffs in self.terms])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, ExpPoly):
            c = to_number(other)
            return ExpPoly([(s, tuple(c * a for a in coeffs)) for s, coeffs in self.terms])
        products = []
        for s1, p1 in self.terms:
            for s2, p2 in other.terms:
                conv = [sympy.S.Zero] * (len(p1) + len(p2) - 1)
                for i, a in enumerate(p1):
                    for j, b in enumerate(p2):
                        conv[i + j] += a * b
                products.append((s1 + s2, conv))
        return ExpPoly(products)

    __rmul__ = __mul__

    def diff(self):
        out = []
        for sigma, coeffs in self.terms:
            n = len(coeffs)
            out.append((sigma, [
                sigma * coeffs[k] + ((k + 1) * coeffs[k + 1] if k + 1 < n else 0)
                for k in range(n)
            ]))
        return ExpPoly(out)

    def antiderivative(self):
        """Antiderivative with zero constant of integration in the sigma=0 part."""
        out = []
        for sigma, coeffs in self.terms:
            if sigma == 0:
                out.append((0, [0] + [c / (k + 1) for k, c in enumerate(coeffs)]))
                continue
            # int p e^{st} = e^{st} sum_j (-1)^j p^(j) / s^(j+1)
            result = [sympy.S.Zero] * len(coeffs)
            p = list(coeffs)
            j = 0
            while p:
                factor = (-1) ** j / sigma ** (j + 1)
                for k, c in enumerate(p):
                    result[k] += factor * c
                p = [(k + 1) * p[k + 1] for k in range(len(p) - 1)]
                j += 1
            out.append((sigma, result))
        return ExpPoly(out)

    def compose_affine(self, scale, offset):
        """The function t -> self(scale*t + offset); scale must be rational."""
        scale, offset = sympy.Rational(scale), to_number(offset)
        if offset.is_Float and offset == int(offset):
            offset = sympy.Integer(int(offset))
        if scale == 1 and offset == 0:
            return self
        return ExpPoly.from_expr(self.to_expr().subs(t, scale * t + offset))

    def shift(self, epsilon):
        """The function t -> self(t - epsilon)."""
        return self.compose_affine(1, -to_number(epsilon))

    # numerics

    def __call__(self, tv):
        tv = np.asarray(tv, dtype=float)
        out = np.zeros_like(tv)
        for sigma, coeffs in self.terms:
            poly = np.zeros_like(tv)
            for c in reversed(coeffs):
                poly = poly * tv + float(c)
            out = out + poly * np.exp(float(sigma) * tv)
        return out if out.ndim else float(out)

    def value_at(self, point):
        """Exact value at a sympy-representable point."""
        return self.to_expr().subs(t, to_number(point))

    def derivative(self, tv, order=1):
        f = self
        for _ in range(order):
            f = f.diff()
        return f(tv)

    # comparison and display

    def __eq__(self, other):
        if not isinstance(other, ExpPoly):
            try:
                other = ExpPoly.constant(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        return f"ExpPoly({format_exppoly(self)!r})"

    def __str__(self):
        return format_exppoly(self)


def _format_number(c) -> str:
    s = str(c).replace("**", "^").replace(" ", "")
    return f"({s})" if isinstance(c, sympy.Add) else s


def _format_poly(coeffs) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        if k == 0:
            parts.append(_format_number(c))
            continue
        power = "t" if k == 1 else f"t^{k}"
        if c == 1:
            parts.append(power)
        elif c == -1:
            parts.append(f"-{power}")
        else:
            parts.append(f"{_format_number(c)}*{power}")
    return "+".join(parts).replace("+-", "-")


def format_exppoly(f: ExpPoly) -> str:
    if f.is_zero():
        return "0"
    pieces = []
    for sigma, coeffs in f.terms:
        poly = _format_poly(coeffs)
        if sigma == 0:
            pieces.append(poly)
            continue
        rate = "t" if sigma == 1 else "-t" if sigma == -1 else f"{sigma}*t"
        if poly == "1":
            pieces.append(f"exp({rate})")
        elif poly == "-1":
            pieces.append(f"-exp({rate})")
        elif all(c == 0 for c in coeffs[1:]):
            pieces.append(f"{poly}*exp({rate})")
        else:
            pieces.append(f"({poly})exp({rate})")
    return " + ".join(pieces).replace("+ -", "- ")


def prepare_text(text: str) -> str:
    return _IMPLICIT_MUL.sub("*", text.strip())


def parse_exppoly(text: str) -> ExpPoly:
    """Parse the textual form, e.g. ``(3+2t^2)exp(1/2 t)``, ``t``, ``exp(-2*t)``."""
    if text is None or not str(text).strip():
        return ExpPoly.zero()
    try:
        expr = parse_expr(prepare_text(str(text)), local_dict={"t": t, "exp": sympy.exp, "E": sympy.E},
                          transformations=TRANSFORMATIONS)
    except (SyntaxError, TypeError, sympy.SympifyError) as e:
        raise ExpPolyParseError(f"cannot parse exponential polynomial {text!r}: {e}") from e
    free = expr.free_symbols - {t}
    if free:
        raise ExpPolyParseError(f"{text!r} mentions unknown symbols {sorted(map(str, free))}")
    return ExpPoly.from_expr(expr)
