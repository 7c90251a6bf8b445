"""Finite products of polynomial rings and their canonical idempotents."""

from __future__ import annotations

from typing import Sequence

from weylbrauer.ring.poly import MultiPoly, PolyRing


class ProductRing:
    """R = R_1 x ... x R_m with each R_i a polynomial ring over a field."""

    def __init__(self, components: Sequence[PolyRing]):
        if not components:
            raise ValueError("a product ring needs at least one component")
        self.components = tuple(components)

    def __repr__(self):
        return f"ProductRing({list(self.components)})"

    def __eq__(self, other):
        return isinstance(other, ProductRing) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __len__(self):
        return len(self.components)

    def element(self, parts: Sequence) -> ProductElement:
        if len(parts) != len(self.components):
            raise ValueError("one entry per component required")
        return ProductElement(self, tuple(R(x) for R, x in zip(self.components, parts)))

    def zero(self) -> ProductElement:
        return ProductElement(self, tuple(R.zero() for R in self.components))

    def one(self) -> ProductElement:
        return ProductElement(self, tuple(R.one() for R in self.components))

    def gen(self, component: int, var: int) -> ProductElement:
        """The variable ``var`` of one component, zero elsewhere."""
        parts = [R.zero() for R in self.components]
        parts[component] = self.components[component].gen(var)
        return ProductElement(self, tuple(parts))

    def generators(self) -> list[ProductElement]:
        out = []
        for lam, R in enumerate(self.components):
            out.extend(self.gen(lam, v) for v in range(R.nvars))
        return out


class ProductElement:
    __slots__ = ("ring", "parts")

    def __init__(self, ring: ProductRing, parts: tuple[MultiPoly, ...]):
        self.ring = ring
        self.parts = parts

    def _check(self, other):
        if not isinstance(other, ProductElement) or other.ring != self.ring:
            raise ValueError("elements of different product rings")

    def __add__(self, other):
        self._check(other)
        return ProductElement(self.ring, tuple(a + b for a, b in zip(self.parts, other.parts)))

    def __sub__(self, other):
        self._check(other)
        return ProductElement(self.ring, tuple(a - b for a, b in zip(self.parts, other.parts)))

    def __mul__(self, other):
        self._check(other)
        return ProductElement(self.ring, tuple(a * b for a, b in zip(self.parts, other.parts)))

    def __neg__(self):
        return ProductElement(self.ring, tuple(-a for a in self.parts))

    def __eq__(self, other):
        return (
            isinstance(other, ProductElement)
            and self.ring == other.ring
            and self.parts == other.parts
        )

    def __hash__(self):
        return hash(self.parts)

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.parts)

    def __repr__(self):
        return "(" + ", ".join(str(a) for a in self.parts) + ")"


def component_idempotents(R: ProductRing) -> list[ProductElement]:
    """The idempotents e_i = (0, ..., 1, ..., 0), checked orthogonal and summing to 1."""
    m = len(R.components)
    idem = []
    for lam in range(m):
        parts = [C.zero() for C in R.components]
        parts[lam] = R.components[lam].one()
        idem.append(ProductElement(R, tuple(parts)))
    total = R.zero()
    for i, e in enumerate(idem):
        if e * e != e:
            raise AssertionError(f"e_{i} is not idempotent")
        for j in range(i + 1, m):
            if not (e * idem[j]).is_zero():
                raise AssertionError(f"e_{i} e_{j} != 0")
        total = total + e
    if total != R.one():
        raise AssertionError("idempotents do not sum to 1")
    return idem
