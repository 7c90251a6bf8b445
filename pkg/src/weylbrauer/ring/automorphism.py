"""Verified automorphisms of product rings given by explicit coordinates."""

from __future__ import annotations

from typing import Sequence

from weylbrauer.ring.poly import MultiPoly, PolyRing
from weylbrauer.ring.product import ProductElement, ProductRing


class AutomorphismError(ValueError):
    pass


def _substitute(f: MultiPoly, images: Sequence[MultiPoly], target: PolyRing) -> MultiPoly:
    if f.ring.nvars == 0:
        return target.constant(f.constant_coefficient())
    return f.substitute(images)


class RingAutomorphism:
    """A ring automorphism of ``ring`` with an explicit, checked inverse.

    ``perm[i] = j`` sends component ``i`` onto component ``j``;
    ``images[i][v]`` is the image of variable ``v`` of component ``i``, a
    polynomial in component ``j``.  ``inverse_images`` describes the claimed
    inverse the same way.  Construction fails unless both composites fix
    every generator.
    """

    def __init__(
        self,
        ring: ProductRing,
        perm: Sequence[int],
        images: Sequence[Sequence[MultiPoly]],
        inverse_images: Sequence[Sequence[MultiPoly]],
        name: str = "",
    ):
        m = len(ring.components)
        if sorted(perm) != list(range(m)):
            raise AutomorphismError(f"{list(perm)} is not a permutation of {m} components")
        self.ring = ring
        self.perm = tuple(perm)
        self.inverse_perm = tuple(perm.index(j) for j in range(m))
        self.images = tuple(tuple(v) for v in images)
        self.inverse_images = tuple(tuple(v) for v in inverse_images)
        self.name = name
        self._check_shapes()
        self._verify()

    def _check_shapes(self):
        comps = self.ring.components
        for lam, R in enumerate(comps):
            target = comps[self.perm[lam]]
            if len(self.images[lam]) != R.nvars:
                raise AutomorphismError(f"component {lam}: need {R.nvars} images")
            if target.nvars != R.nvars or target.field != R.field:
                raise AutomorphismError(f"component {lam} cannot map onto {self.perm[lam]}")
            for f in self.images[lam]:
                if f.ring != target:
                    raise AutomorphismError("forward image lives in the wrong component")
        for mu, R in enumerate(comps):
            lam = self.inverse_perm[mu]
            if len(self.inverse_images[mu]) != R.nvars:
                raise AutomorphismError(f"component {mu}: need {R.nvars} inverse images")
            for f in self.inverse_images[mu]:
                if f.ring != comps[lam]:
                    raise AutomorphismError("inverse image lives in the wrong component")

    def _verify(self):
        comps = self.ring.components
        for mu, R in enumerate(comps):
            lam = self.inverse_perm[mu]
            for v in range(R.nvars):
                # forward(inverse(z_v in mu)) must be z_v in mu
                back = _substitute(self.inverse_images[mu][v], self.images[lam], comps[mu])
                if back != R.gen(v):
                    raise AutomorphismError(
                        f"forward o inverse moves {R.names[v]} of component {mu} to {back}"
                    )
        for lam, R in enumerate(comps):
            mu = self.perm[lam]
            for v in range(R.nvars):
                back = _substitute(self.images[lam][v], self.inverse_images[mu], comps[lam])
                if back != R.gen(v):
                    raise AutomorphismError(
                        f"inverse o forward moves {R.names[v]} of component {lam} to {back}"
                    )

    # --- application ---------------------------------------------------
    def apply_component(self, lam: int, f: MultiPoly) -> MultiPoly:
        """Image of a polynomial of component ``lam`` (lands in component perm[lam])."""
        return _substitute(f, self.images[lam], self.ring.components[self.perm[lam]])

    def apply_inverse_component(self, mu: int, f: MultiPoly) -> MultiPoly:
        lam = self.inverse_perm[mu]
        return _substitute(f, self.inverse_images[mu], self.ring.components[lam])

    def __call__(self, x: ProductElement) -> ProductElement:
        parts = [None] * len(self.ring.components)
        for lam, f in enumerate(x.parts):
            parts[self.perm[lam]] = self.apply_component(lam, f)
        return ProductElement(self.ring, tuple(parts))

    # --- group structure -------------------------------------------------
    def inverse(self) -> RingAutomorphism:
        return RingAutomorphism(
            self.ring,
            self.inverse_perm,
            self.inverse_images,
            self.images,
            name=f"({self.name})^-1" if self.name else "",
        )

    def compose(self, other: RingAutomorphism) -> RingAutomorphism:
        """``self o other`` (apply ``other`` first)."""
        if other.ring != self.ring:
            raise AutomorphismError("automorphisms of different rings")
        comps = self.ring.components
        perm = [self.perm[other.perm[lam]] for lam in range(len(comps))]
        images = [
            [self.apply_component(other.perm[lam], f) for f in other.images[lam]]
            for lam in range(len(comps))
        ]
        inv_images = [
            [other.apply_inverse_component(self.inverse_perm[mu], f) for f in self.inverse_images[mu]]
            for mu in range(len(comps))
        ]
        name = f"{self.name}*{other.name}" if self.name and other.name else ""
        return RingAutomorphism(self.ring, perm, images, inv_images, name=name)

    def __mul__(self, other):
        return self.compose(other)

    def key(self):
        """Hashable description of the forward map."""
        return (
            self.perm,
            tuple(tuple(frozenset(f.terms.items()) for f in imgs) for imgs in self.images),
        )

    def __eq__(self, other):
        return isinstance(other, RingAutomorphism) and self.ring == other.ring and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_identity(self) -> bool:
        return self == identity_automorphism(self.ring)

    def __repr__(self):
        label = self.name or "phi"
        return f"RingAutomorphism({label}, perm={list(self.perm)})"


def identity_automorphism(ring: ProductRing) -> RingAutomorphism:
    gens = [list(R.gens()) for R in ring.components]
    return RingAutomorphism(ring, list(range(len(ring.components))), gens, gens, name="id")


def permutation_automorphism(ring: ProductRing, perm: Sequence[int], name: str = "") -> RingAutomorphism:
    """Permute components, identifying variables of equal-shaped components in order."""
    comps = ring.components
    perm = list(perm)
    images = [[comps[perm[lam]].gen(v) for v in range(R.nvars)] for lam, R in enumerate(comps)]
    inv_perm = [perm.index(j) for j in range(len(comps))]
    inv_images = [[comps[inv_perm[mu]].gen(v) for v in range(R.nvars)] for mu, R in enumerate(comps)]
    return RingAutomorphism(ring, perm, images, inv_images, name=name or f"perm{perm}")


def scaling_automorphism(ring: ProductRing, scales: Sequence, name: str = "") -> RingAutomorphism:
    """Single-component diagonal map z_v -> scales[v] * z_v."""
    if len(ring.components) != 1:
        raise AutomorphismError("scaling automorphisms are defined on connected bases")
    R = ring.components[0]
    F = R.field
    raw = [F.coerce(s) for s in scales]
    images = [R.gen(v).scale(raw[v]) for v in range(R.nvars)]
    inv = [R.gen(v).scale(F.inv(raw[v])) for v in range(R.nvars)]
    return RingAutomorphism(ring, [0], [images], [inv], name=name)
