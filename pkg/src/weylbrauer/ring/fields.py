"""Exact coefficient fields.

Polynomials and algebras store *raw* coefficients for speed: plain ``int``
residues for prime fields, :class:`fractions.Fraction` for the rationals and
:class:`QuadraticFieldElement` for real/imaginary quadratic fields.  A field
object knows how to do arithmetic on its raw values; the element classes
(:class:`PrimeFieldElement`, ``Fraction``, :class:`QuadraticFieldElement`)
are the user-facing scalars.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def is_squarefree(d: int) -> bool:
    m = abs(d)
    if m == 0:
        return False
    f = 2
    while f * f <= m:
        if m % (f * f) == 0:
            return False
        f += 1
    return True


class Field:
    """Arithmetic on raw coefficient values."""

    characteristic: int = 0
    is_finite: bool = False

    zero = 0
    one = 1

    def coerce(self, x):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def format(self, a) -> str:
        return str(a)

    def element(self, x):
        """Wrap a raw value as a user-facing scalar."""
        return self.coerce(x)


class PrimeField(Field):
    """The prime field F_p; raw values are ints in ``range(p)``."""

    is_finite = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def coerce(self, x):
        if isinstance(x, PrimeFieldElement):
            if x.p != self.p:
                raise ValueError(f"element of F_{x.p} used in F_{self.p}")
            return x.residue
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        if isinstance(x, int):
            return x % self.p
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return pow(a, -1, self.p)

    def pow(self, a, e: int):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def element(self, x):
        return PrimeFieldElement(self.coerce(x), self.p)


class RationalField(Field):
    """The rationals; raw values are ``Fraction`` (always in lowest terms)."""

    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in Q")
        return 1 / a


class QuadraticField(Field):
    """Q(sqrt(d)) for a squarefree integer d != 1."""

    def __init__(self, d: int):
        if d == 1 or not is_squarefree(d):
            raise ValueError(f"d = {d} must be squarefree and different from 1")
        self.d = d
        self.zero = QuadraticFieldElement(0, 0, d)
        self.one = QuadraticFieldElement(1, 0, d)

    def __repr__(self):
        return f"QuadraticField({self.d})"

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.d == self.d

    def __hash__(self):
        return hash(("Q(sqrt)", self.d))

    @property
    def sqrt(self) -> QuadraticFieldElement:
        return QuadraticFieldElement(0, 1, self.d)

    def coerce(self, x):
        if isinstance(x, QuadraticFieldElement):
            if x.d != self.d:
                raise ValueError(f"element of Q(sqrt({x.d})) used in Q(sqrt({self.d}))")
            return x
        if isinstance(x, (int, Fraction)):
            return QuadraticFieldElement(x, 0, self.d)
        raise TypeError(f"cannot coerce {x!r} into Q(sqrt({self.d}))")

    def inv(self, a):
        return a.inverse()

    def is_zero(self, a) -> bool:
        return a.a == 0 and a.b == 0

    def conjugate(self, a):
        return a.conjugate()


class PrimeFieldElement:
    """A residue modulo a prime, always reduced."""

    __slots__ = ("residue", "p")

    def __init__(self, residue: int, p: int):
        self.p = p
        self.residue = residue % p

    def _other(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise ValueError("characteristic mismatch")
            return other.residue
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.residue + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.residue - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(o - self.residue, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.residue * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.p)

    def inverse(self) -> PrimeFieldElement:
        if self.residue == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return PrimeFieldElement(pow(self.residue, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * PrimeFieldElement(o, self.p).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PrimeFieldElement(pow(self.residue, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} (mod {self.p})"


@total_ordering
class QuadraticFieldElement:
    """a + b*sqrt(d) with rational a, b.

    Ordering compares the images under the embedding sqrt(d) -> +sqrt(d) and
    is only defined for real fields.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def _other(self, other):
        if isinstance(other, QuadraticFieldElement):
            if other.d != self.d:
                raise ValueError("quadratic fields differ")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticFieldElement(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return QuadraticFieldElement(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return QuadraticFieldElement(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return QuadraticFieldElement(
            self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def __neg__(self):
        return QuadraticFieldElement(-self.a, -self.b, self.d)

    def conjugate(self) -> QuadraticFieldElement:
        return QuadraticFieldElement(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> QuadraticFieldElement:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("0 has no inverse")
        return QuadraticFieldElement(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadraticFieldElement(1, 0, self.d)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.a == o.a and self.b == o.b

    def __lt__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return real_embedding_signs(o - self)[0] > 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        rad = f"sqrt({self.d})"
        scaled = rad if abs(self.b) == 1 else f"{abs(self.b)}*{rad}"
        if self.a == 0:
            return scaled if self.b > 0 else f"-{scaled}"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {scaled}"


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_of_sum(a: Fraction, b: Fraction, d: int) -> int:
    # sign of a + b*sqrt(d), d > 0, without floating point
    sa, sb = _sign(a), _sign(b)
    if sb == 0:
        return sa
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # opposite signs: compare a^2 with b^2 d
    return sa * _sign(a * a - b * b * d)


def real_embedding_signs(x: QuadraticFieldElement) -> tuple[int, int]:
    """Signs of ``x`` under sqrt(d) -> +sqrt(d) and sqrt(d) -> -sqrt(d).

    Each sign is +1, -1, or 0 (zero reported distinctly).  Exact: only
    rational comparisons are made.
    """
    if x.d < 0:
        raise ValueError("imaginary quadratic field has no real embeddings")
    return _sign_of_sum(x.a, x.b, x.d), _sign_of_sum(x.a, -x.b, x.d)


def isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None
