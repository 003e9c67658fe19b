# twolayer/algebra/models.py
from dataclasses import dataclass, field

import sympy

from .exppoly import ExpPoly, to_number


def _coerce(value):
    return value if isinstance(value, ExpPoly) else ExpPoly.constant(value)


@dataclass(frozen=True)
class AlgebraElement:
    """a*Dt + b*Dy + X(f) + c*F + Z(g), with X(f) = f Dx - f' y (Dpsi1 + Dpsi2), F = Dpsi1 - Dpsi2,
    Z(g) = g (Dpsi1 + Dpsi2)."""

    a: sympy.Expr = sympy.S.Zero
    b: sympy.Expr = sympy.S.Zero
    f: ExpPoly = field(default_factory=ExpPoly.zero)
    c: sympy.Expr = sympy.S.Zero
    g: ExpPoly = field(default_factory=ExpPoly.zero)

    def __post_init__(self):
        object.__setattr__(self, "a", sympy.expand(to_number(self.a)))
        object.__setattr__(self, "b", sympy.expand(to_number(self.b)))
        object.__setattr__(self, "c", sympy.expand(to_number(self.c)))
        object.__setattr__(self, "f", _coerce(self.f))
        object.__setattr__(self, "g", _coerce(self.g))

    # basis elements

    @classmethod
    def Dt(cls, a=1):
        return cls(a=a)

    @classmethod
    def Dy(cls, b=1):
        return cls(b=b)

    @classmethod
    def X(cls, f):
        return cls(f=f)

    @classmethod
    def F(cls, c=1):
        return cls(c=c)

    @classmethod
    def Z(cls, g):
        return cls(g=g)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.f.is_zero() and self.g.is_zero()

    def __add__(self, other):
        return AlgebraElement(self.a + other.a, self.b + other.b, self.f + other.f,
                              self.c + other.c, self.g + other.g)

    def __neg__(self):
        return AlgebraElement(-self.a, -self.b, -self.f, -self.c, -self.g)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        s = to_number(scalar)
        return AlgebraElement(s * self.a, s * self.b, self.f * s, s * self.c, self.g * s)

    __rmul__ = __mul__

    def coordinates(self) -> dict:
        """Flat coordinates over the constants, keyed ('a',), ('b',), ('c',), ('f', sigma, k), ('g', sigma, k)."""
        coords = {(name,): value for name, value in (("a", self.a), ("b", self.b), ("c", self.c)) if value != 0}
        coords.update({("f",) + key: value for key, value in self.f.coordinates().items()})
        coords.update({("g",) + key: value for key, value in self.g.coordinates().items()})
        return coords

    def __str__(self):
        from .notation import format_element
        return format_element(self)


@dataclass(frozen=True)
class SubalgebraSpec:
    name: str
    generators: tuple[AlgebraElement, ...]
    params: dict = field(default_factory=dict, compare=False, hash=False)
    provenance: str = ""

    @property
    def dimension(self) -> int:
        return len(self.generators)
