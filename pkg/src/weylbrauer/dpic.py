"""Derived Picard groups as data.

An element is a triple (n, L, phi): a locally constant integer n (one value
per connected component), a Picard class L and an automorphism phi of
X = Spec R.  ``phi`` is stored through its ring map phi^#, a
:class:`RingAutomorphism`; scheme composition reverses ring composition,
(phi1 phi2)^# = phi2^# o phi1^#.

Conventions: phi^# sends component lam onto component perm[lam], so the
scheme map phi sends X_mu onto X_perm^-1(mu) and the pushed section
n o phi^-1 takes the value n[perm[mu]] on X_mu.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from weylbrauer.brauer import OmegaFamily, br_compose, br_inverse, nontriviality_chain, omega_automorphism
from weylbrauer.ring.automorphism import RingAutomorphism, identity_automorphism, permutation_automorphism
from weylbrauer.ring.product import ProductRing


class BaseMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ConstantSheafSection:
    base: ProductRing
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.base.components):
            raise BaseMismatch("one integer per connected component required")
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @classmethod
    def zero(cls, base: ProductRing) -> ConstantSheafSection:
        return cls(base, (0,) * len(base.components))

    def _check(self, other: ConstantSheafSection):
        if other.base != self.base:
            raise BaseMismatch("sections over different bases")

    def __add__(self, other: ConstantSheafSection) -> ConstantSheafSection:
        self._check(other)
        return ConstantSheafSection(self.base, tuple(a + b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> ConstantSheafSection:
        return ConstantSheafSection(self.base, tuple(-a for a in self.values))

    def __sub__(self, other):
        return self + (-other)

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True)
class PicClass:
    """Only the trivial class is constructible: every base in scope has Pic = 0."""

    base: ProductRing
    kind: str = "trivial"

    def __post_init__(self):
        if self.kind != "trivial":
            raise NotImplementedError("only the trivial Picard class is available")

    def tensor(self, other: PicClass) -> PicClass:
        if other.base != self.base:
            raise BaseMismatch("Picard classes over different bases")
        return self

    def pushforward(self, phi: RingAutomorphism) -> PicClass:
        if phi.ring != self.base:
            raise BaseMismatch("automorphism of a different base")
        return self

    def __str__(self):
        return "O"


@dataclass(frozen=True)
class Cocycle:
    """A Pic-valued 2-cocycle on automorphisms; ``trivial`` is the only instance shipped."""

    name: str
    evaluate: Callable[[RingAutomorphism, RingAutomorphism, ProductRing], PicClass] = field(compare=False)

    def __call__(self, phi1, phi2, base) -> PicClass:
        return self.evaluate(phi1, phi2, base)


TRIVIAL_COCYCLE = Cocycle("trivial", lambda phi1, phi2, base: PicClass(base))


@dataclass(frozen=True)
class DPicElement:
    section: ConstantSheafSection
    pic: PicClass
    phi: RingAutomorphism
    cocycle: Cocycle = TRIVIAL_COCYCLE

    def __post_init__(self):
        if not (self.section.base == self.pic.base == self.phi.ring):
            raise BaseMismatch("section, Picard class and automorphism must share the base")

    @property
    def base(self) -> ProductRing:
        return self.section.base

    def key(self):
        return (self.section.values, self.pic.kind, self.phi.key(), self.cocycle.name)

    def __eq__(self, other):
        return isinstance(other, DPicElement) and self.base == other.base and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        return f"({self.section}, {self.pic}, {self.phi.name or 'phi'})"


def identity_element(base: ProductRing) -> DPicElement:
    return DPicElement(ConstantSheafSection.zero(base), PicClass(base), identity_automorphism(base))


def act(phi: RingAutomorphism, n: ConstantSheafSection, L: PicClass | None = None):
    """phi . (n, L) = (n o phi^-1, phi_* L)."""
    if phi.ring != n.base:
        raise BaseMismatch("automorphism of a different base")
    moved = ConstantSheafSection(n.base, tuple(n.values[phi.perm[mu]] for mu in range(len(n.values))))
    if L is None:
        return moved
    return moved, L.pushforward(phi)


def scheme_compose(phi1: RingAutomorphism, phi2: RingAutomorphism) -> RingAutomorphism:
    """Ring map of the scheme composite phi1 phi2."""
    return phi2.compose(phi1)


def dpic_compose(g1: DPicElement, g2: DPicElement) -> DPicElement:
    """(n1 + phi1.n2, L1 (x) phi1_*L2 (x) alpha(phi1, phi2), phi1 phi2)."""
    if g1.base != g2.base:
        raise BaseMismatch("elements over different bases")
    if g1.cocycle != g2.cocycle:
        raise ValueError("elements carry different cocycles")
    moved, pushed = act(g1.phi, g2.section, g2.pic)
    pic = g1.pic.tensor(pushed).tensor(g1.cocycle(g1.phi, g2.phi, g1.base))
    return DPicElement(g1.section + moved, pic, scheme_compose(g1.phi, g2.phi), g1.cocycle)


def dpic_inverse(g: DPicElement) -> DPicElement:
    """(-(phi^-1 . n), trivial, phi^-1); both composites are checked."""
    phi_inv = g.phi.inverse()
    inv = DPicElement(-act(phi_inv, g.section), PicClass(g.base), phi_inv, g.cocycle)
    e = identity_element(g.base)
    e = DPicElement(e.section, e.pic, e.phi, g.cocycle)
    if dpic_compose(g, inv) != e or dpic_compose(inv, g) != e:
        raise ArithmeticError("inverse failed verification")
    return inv


# ---------------------------------------------------------------------------
# shifts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecomposedGradedModule:
    """Per component, the single degree in which e_lam M is concentrated and its rank."""

    base: ProductRing
    degrees: tuple
    ranks: tuple

    def __post_init__(self):
        m = len(self.base.components)
        if len(self.degrees) != m or len(self.ranks) != m:
            raise BaseMismatch("one degree and one rank per component required")
        if any(r <= 0 for r in self.ranks):
            raise ValueError("ranks must be positive")
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))


def shift(M: DecomposedGradedModule, n: ConstantSheafSection) -> DecomposedGradedModule:
    """Sigma^n M: (Sigma M)^i = M^(i+1), so degree d moves to d - n(lam)."""
    if M.base != n.base:
        raise BaseMismatch("module and section over different bases")
    return DecomposedGradedModule(M.base, tuple(d - k for d, k in zip(M.degrees, n.values)), M.ranks)


# ---------------------------------------------------------------------------
# group descriptions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupDescription:
    """Z^free_rank x S with S given by a multiplication table over ``labels``."""

    free_rank: int
    labels: tuple
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "table", tuple(tuple(r) for r in self.table))
        self.verify()

    def verify(self) -> None:
        labels = self.labels
        k = len(labels)
        if k == 0:
            raise ValueError("the finite part needs at least the identity")
        if len(self.table) != k or any(len(r) != k for r in self.table):
            raise ValueError("table must be square over the labels")
        idx = {lbl: i for i, lbl in enumerate(labels)}
        if any(x not in idx for r in self.table for x in r):
            raise ValueError("table is not closed")
        T = [[idx[x] for x in r] for r in self.table]
        ident = [e for e in range(k) if all(T[e][a] == a and T[a][e] == a for a in range(k))]
        if not ident:
            raise ValueError("no identity element")
        e = ident[0]
        for a in range(k):
            if not any(T[a][b] == e and T[b][a] == e for b in range(k)):
                raise ValueError(f"{labels[a]} has no inverse")
        for a in range(k):
            for b in range(k):
                for c in range(k):
                    if T[T[a][b]][c] != T[a][T[b][c]]:
                        raise ValueError("table is not associative")

    @property
    def order_of_finite_part(self) -> int:
        return len(self.labels)

    def describe(self) -> str:
        parts = ["Z" if self.free_rank == 1 else f"Z^{self.free_rank}"] if self.free_rank else []
        if len(self.labels) > 1:
            parts.append(f"S({len(self.labels)})" if not _is_cyclic(self) else f"Z/{len(self.labels)}")
        return " x ".join(parts) if parts else "1"

    def as_json(self) -> dict:
        return {"free_rank": self.free_rank, "labels": list(self.labels), "table": [list(r) for r in self.table], "describe": self.describe()}


def _is_cyclic(G: GroupDescription) -> bool:
    k = len(G.labels)
    idx = {lbl: i for i, lbl in enumerate(G.labels)}
    T = [[idx[x] for x in r] for r in G.table]
    e = next(a for a in range(k) if all(T[a][b] == b for b in range(k)))
    for g in range(k):
        x, order = g, 1
        while x != e:
            x = T[x][g]
            order += 1
        if order == k:
            return True
    return False


def trivial_group() -> GroupDescription:
    return GroupDescription(0, ("1",), (("1",),))


def cyclic_group(k: int, names: Sequence[str] | None = None) -> GroupDescription:
    labels = list(names) if names else [f"g^{i}" if i else "1" for i in range(k)]
    return GroupDescription(0, labels, [[labels[(i + j) % k] for j in range(k)] for i in range(k)])


def assemble_dpic_local(outer: GroupDescription) -> GroupDescription:
    """DPic of a local (or simple) algebra: Z x Out(A)."""
    return GroupDescription(1, outer.labels, outer.table)


def torsion_part(G: GroupDescription) -> GroupDescription:
    return GroupDescription(0, G.labels, G.table)


# ---------------------------------------------------------------------------
# random elements and the non-surjectivity witness
# ---------------------------------------------------------------------------


def random_element(base: ProductRing, rng: random.Random, perms: Sequence[RingAutomorphism], bound: int = 5) -> DPicElement:
    n = ConstantSheafSection(base, tuple(rng.randint(-bound, bound) for _ in base.components))
    return DPicElement(n, PicClass(base), rng.choice(list(perms)))


def all_permutation_automorphisms(base: ProductRing) -> list[RingAutomorphism]:
    import itertools

    m = len(base.components)
    out = []
    for perm in itertools.permutations(range(m)):
        if all(base.components[i] == base.components[perm[i]] for i in range(m)):
            out.append(permutation_automorphism(base, list(perm), name=f"perm{list(perm)}"))
    return out


def non_surjectivity_witnesses(p: int, n: int, trials: int = 1000, seed: int = 0) -> list[dict]:
    """For c in F_p minus {1}: omega(c) does not stabilise [A_n], so no (m, omega(c)) comes from DPic(A_n).

    c = 0 names no automorphism; its record is the formal class
    [omega(0)_*A_n] = [M_{p^n}(Z_n)] and is marked as such.
    """
    A_class = OmegaFamily(p, n, 1)
    chains = {}
    out = []
    for c in range(p):
        if c == 1:
            continue
        cls = OmegaFamily(p, n, c)
        quotient = br_compose(cls, br_inverse(A_class))  # [omega(c)_*A] [A]^-1 = [omega(c-1)_*A]
        if quotient.c not in chains:
            chains[quotient.c] = nontriviality_chain(p, n, quotient.c, trials=trials, seed=seed)
        automorphism = None
        if c != 0:
            phi = omega_automorphism(p, n, c)
            automorphism = {"name": phi.name, "images": [str(f) for f in phi.images[0]], "verified_inverse": True}
        out.append(
            {
                "label": f"omega({c}).Stab",
                "c": c,
                "kind": "automorphism-coset" if c != 0 else "formal-class",
                "automorphism": automorphism,
                "class": cls.label(),
                "differs_from": A_class.label(),
                "quotient_class": quotient.label(),
                "justification": chains[quotient.c],
                "claim": f"no (m, omega({c})) in Z x Aut lies in the image of DPic(A_{n}(F_{p}))",
            }
        )
    return out
