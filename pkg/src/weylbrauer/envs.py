"""Evaluation environments for parsed expressions.

* :class:`WeylEnv` evaluates ``x1..x2n`` in A_n(F_p).
* :class:`TensorSquare` evaluates ``x_i`` and ``y_i`` in the tensor square
  of A_n(F_p) over its center, each copy optionally pushed forward along
  omega(c) resp. omega(c').  It computes in A_2n(F_p) (the tensor square
  over F_p) and compares after identifying both copies of the center,
  which is exact because the tensor square over the center is free on
  x^e (x) y^f with 0 <= e, f < p.
* :class:`AlgebraEnv` evaluates named generators inside a FreeAlgebra.
* :class:`NumberFieldEnv` evaluates scalars in Q(sqrt d).
"""

from __future__ import annotations

from typing import Mapping

from weylbrauer.azalg import AlgElement, FreeAlgebra
from weylbrauer.expr import ExprError, evaluate
from weylbrauer.ring.fields import QuadraticField, QuadraticFieldElement
from weylbrauer.ring.poly import MultiPoly
from weylbrauer.weyl import WeylContext, WeylElement, central_coordinates


class _PrimeScalars:
    p: int

    def sqrt(self, d: int):
        raise ExprError("sqrt() is only available in number-field contexts")

    def invert(self, raw: int) -> int:
        if raw % self.p == 0:
            raise ExprError(f"inv() of a scalar that is 0 mod {self.p}")
        return pow(raw, -1, self.p)


class WeylEnv(_PrimeScalars):
    def __init__(self, ctx: WeylContext):
        self.ctx = ctx
        self.p = ctx.p

    def scalar(self, value: int) -> WeylElement:
        return self.ctx.scalar(value)

    def from_field(self, raw: int) -> WeylElement:
        return self.ctx.scalar(raw)

    def generator(self, kind: str, index: int) -> WeylElement:
        if kind != "x":
            raise ExprError(f"{kind}{index} is not in scope (single Weyl algebra)")
        if not 1 <= index <= self.ctx.ngens:
            raise ExprError(f"x{index} is out of range 1..{self.ctx.ngens}")
        return self.ctx.gen(index)

    def as_scalar(self, value: WeylElement):
        if not value.terms:
            return 0
        if set(value.terms) == {self.ctx._zero}:
            return value.terms[self.ctx._zero]
        return None

    def parse(self, text: str) -> WeylElement:
        return evaluate(text, self)


class TensorSquare(_PrimeScalars):
    """omega(c)_*A_n (x)_Z omega(c')_*A_n through A_2n(F_p).

    In the result x_i^p = c^omega_i z_i and y_i^p = c'^omega_i z_i.
    """

    def __init__(self, p: int, n: int, c: int = 1, cprime: int = 1):
        self.base = WeylContext(p, n)
        self.big = WeylContext(p, 2 * n)
        self.p, self.n = p, n
        c %= p
        cprime %= p
        if c == 0 or cprime == 0:
            raise ValueError("omega(c) needs c to be a unit")
        self.c, self.cprime = c, cprime
        # positions of x_i and y_i among the 4n generators of A_2n
        self.xpos = [i if i <= n else n + i for i in range(1, 2 * n + 1)]
        self.ypos = [n + i if i <= n else 2 * n + i for i in range(1, 2 * n + 1)]
        Z = self.base.center
        images = [None] * (4 * n)
        for i in range(1, 2 * n + 1):
            w = self.base.omega(i)
            images[self.xpos[i - 1] - 1] = Z.gen(i - 1).scale(pow(c, w, p))
            images[self.ypos[i - 1] - 1] = Z.gen(i - 1).scale(pow(cprime, w, p))
        self._z_images = images

    def __repr__(self):
        return f"TensorSquare(p={self.p}, n={self.n}, c={self.c}, c'={self.cprime})"

    # generators
    def x(self, i: int) -> WeylElement:
        return self.big.gen(self.xpos[i - 1])

    def y(self, i: int) -> WeylElement:
        return self.big.gen(self.ypos[i - 1])

    # environment protocol
    def scalar(self, value: int) -> WeylElement:
        return self.big.scalar(value)

    def from_field(self, raw: int) -> WeylElement:
        return self.big.scalar(raw)

    def generator(self, kind: str, index: int) -> WeylElement:
        if not 1 <= index <= 2 * self.n:
            raise ExprError(f"{kind}{index} is out of range 1..{2 * self.n}")
        return self.x(index) if kind == "x" else self.y(index)

    def as_scalar(self, value: WeylElement):
        coords = self.reduce(value)
        if not coords:
            return 0
        zero = ((0,) * (2 * self.n), (0,) * (2 * self.n))
        if set(coords) == {zero} and coords[zero].is_constant():
            return coords[zero].constant_coefficient()
        return None

    def parse(self, text: str) -> WeylElement:
        return evaluate(text, self)

    # the quotient to the tensor product over the center
    def reduce(self, f: WeylElement) -> dict[tuple, MultiPoly]:
        """Coordinates over Z_n(F_p) in the basis x^e (x) y^f, 0 <= e, f < p."""
        out: dict[tuple, MultiPoly] = {}
        for e, poly in central_coordinates(f).items():
            ex = tuple(e[j - 1] for j in self.xpos)
            ey = tuple(e[j - 1] for j in self.ypos)
            img = poly.substitute(self._z_images)
            key = (ex, ey)
            if key in out:
                img = img + out[key]
            if img.is_zero():
                out.pop(key, None)
            else:
                out[key] = img
        return out

    def equal(self, f: WeylElement, g: WeylElement) -> bool:
        return not self.reduce(f - g)

    def central(self, poly: MultiPoly) -> dict[tuple, MultiPoly]:
        """Reduced coordinates of a central element given by a polynomial in z."""
        if poly.is_zero():
            return {}
        zero = (0,) * (2 * self.n)
        return {(zero, zero): poly}

    def is_central_value(self, f: WeylElement, poly: MultiPoly) -> bool:
        return self.reduce(f) == self.central(poly)


class AlgebraEnv(_PrimeScalars):
    """Named generators inside a FreeAlgebra over F_p[z]."""

    def __init__(self, algebra: FreeAlgebra, generators: Mapping[tuple[str, int], AlgElement]):
        self.algebra = algebra
        self.p = algebra.field.p
        self.generators = dict(generators)

    def scalar(self, value: int) -> AlgElement:
        return self.algebra.scalar(value)

    def from_field(self, raw: int) -> AlgElement:
        return self.algebra.scalar(raw)

    def generator(self, kind: str, index: int) -> AlgElement:
        try:
            return self.generators[(kind, index)]
        except KeyError:
            raise ExprError(f"{kind}{index} is not a generator of {self.algebra.name}") from None

    def as_scalar(self, value: AlgElement):
        if value.is_zero():
            return 0
        one = self.algebra.one()
        # a scalar multiple of 1 agrees with c*1 for c read off any unit coordinate
        key, u = next(iter(one.data.items()))
        c = value.data.get(key)
        if c is None:
            return None
        c = c * pow(u, -1, self.p) % self.p
        return c if value == self.algebra.scalar(c) else None

    def parse(self, text: str) -> AlgElement:
        return evaluate(text, self)


class NumberFieldEnv:
    """Scalars of Q(sqrt d); no generators."""

    def __init__(self, K: QuadraticField):
        self.K = K

    def scalar(self, value: int) -> QuadraticFieldElement:
        return self.K.coerce(value)

    def from_field(self, raw) -> QuadraticFieldElement:
        return self.K.coerce(raw)

    def sqrt(self, d: int) -> QuadraticFieldElement:
        if d != self.K.d:
            raise ExprError(f"sqrt({d}) is not in Q(sqrt({self.K.d}))")
        return self.K.sqrt

    def generator(self, kind: str, index: int):
        raise ExprError(f"{kind}{index}: no generators in a number-field context")

    def as_scalar(self, value):
        return value

    def invert(self, raw):
        if self.K.is_zero(raw):
            raise ExprError("inv() of zero")
        return self.K.inv(raw)

    def parse(self, text: str) -> QuadraticFieldElement:
        return evaluate(text, self)

