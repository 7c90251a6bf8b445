"""The Weyl algebra A_n(F_p) in PBW normal form.

Generators x_1..x_2n satisfy [x_i, x_j] = delta(i, j+n) - delta(i+n, j), so
the only non-commuting pairs are (x_i, x_{i+n}) with x_{i+n} x_i = x_i x_{i+n} + 1.
Elements are F_p-combinations of ordered monomials x_1^e_1 ... x_2n^e_2n.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Mapping

from weylbrauer.ring.fields import is_prime
from weylbrauer.ring.poly import MultiPoly, grlex_key, poly_ring_fp


class WeylContext:
    """Fixes the characteristic p (odd prime) and the number n of variable pairs."""

    def __init__(self, p: int, n: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 is excluded")
        if n < 1:
            raise ValueError("n must be positive")
        self.p = p
        self.n = n
        self.ngens = 2 * n
        self._zero = (0,) * self.ngens
        self.center = poly_ring_fp(p, self.ngens, [f"z{i + 1}" for i in range(self.ngens)])

    def __repr__(self):
        return f"WeylContext(p={self.p}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, WeylContext) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self):
        return hash(("weyl", self.p, self.n))

    # index bookkeeping: eps_i = 1 iff i <= n, omega_i = 1 iff i > n (1-based)
    def eps(self, i: int) -> int:
        return 1 if i <= self.n else 0

    def omega(self, i: int) -> int:
        return 1 if i > self.n else 0

    def bracket(self, i: int, j: int) -> int:
        """[x_i, x_j] as an integer (1-based indices)."""
        n = self.n
        return int(i == j + n) - int(i + n == j)

    # constructors
    def zero(self) -> WeylElement:
        return WeylElement(self, {})

    def one(self) -> WeylElement:
        return WeylElement(self, {self._zero: 1})

    def scalar(self, c: int) -> WeylElement:
        c %= self.p
        return WeylElement(self, {self._zero: c} if c else {})

    def gen(self, i: int) -> WeylElement:
        """x_i, 1-based."""
        if not 1 <= i <= self.ngens:
            raise IndexError(f"generator x{i} out of range 1..{self.ngens}")
        e = [0] * self.ngens
        e[i - 1] = 1
        return WeylElement(self, {tuple(e): 1})

    def gens(self) -> list[WeylElement]:
        return [self.gen(i) for i in range(1, self.ngens + 1)]

    def monomial(self, exps, coeff: int = 1) -> WeylElement:
        exps = tuple(exps)
        if len(exps) != self.ngens:
            raise ValueError("exponent length mismatch")
        return WeylElement(self, {exps: coeff})

    def z(self, i: int) -> WeylElement:
        """The central element x_i^p."""
        e = [0] * self.ngens
        e[i - 1] = self.p
        return WeylElement(self, {tuple(e): 1})

    def random_element(self, rng: random.Random, max_degree: int = 3, max_terms: int = 4) -> WeylElement:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            e = [0] * self.ngens
            for _ in range(rng.randint(0, max_degree)):
                e[rng.randrange(self.ngens)] += 1
            terms[tuple(e)] = rng.randrange(self.p)
        return WeylElement(self, terms)

    def reduced_exponents(self):
        """All e with 0 <= e_i < p, in lexicographic order (the Z_n-basis)."""
        out = [()]
        for _ in range(self.ngens):
            out = [e + (k,) for e in out for k in range(self.p)]
        return out


@lru_cache(maxsize=None)
def swap_table(p: int, a: int, b: int) -> tuple[tuple[int, int], ...]:
    """Rewrite d^a t^b (with d t = t d + 1) as sum_k c_k t^(b-k) d^(a-k).

    Built one transposition at a time:
    d^a t^b = d^(a-1) (t^b d + b t^(b-1)).  Returns ((k, c_k), ...) mod p.
    """
    if a == 0 or b == 0:
        return ((0, 1),)
    out: dict[int, int] = {}
    for k, c in swap_table(p, a - 1, b):
        out[k] = (out.get(k, 0) + c) % p
    if b % p:
        for k, c in swap_table(p, a - 1, b - 1):
            out[k + 1] = (out.get(k + 1, 0) + b * c) % p
    return tuple((k, c) for k, c in sorted(out.items()) if c)


@lru_cache(maxsize=500_000)
def _monomial_product(p: int, n: int, e: tuple, f: tuple) -> tuple:
    """x^e x^f in normal form, as a tuple of (exponent, coeff)."""
    partial = [((), 1)]
    # per pair i: lower exponents e_i + f_i - k, upper e_{i+n} + f_{i+n} - k
    lows = []
    for i in range(n):
        opts = []
        for k, c in swap_table(p, e[i + n], f[i]):
            opts.append((e[i] + f[i] - k, e[i + n] + f[i + n] - k, c))
        lows.append(opts)
    for opts in lows:
        nxt = []
        for pre, c0 in partial:
            for lo, up, c in opts:
                nxt.append((pre + ((lo, up),), c0 * c % p))
        partial = nxt
    out: dict = {}
    for pairs, c in partial:
        if not c:
            continue
        exps = tuple(lo for lo, _ in pairs) + tuple(up for _, up in pairs)
        out[exps] = (out.get(exps, 0) + c) % p
    return tuple((k, v) for k, v in out.items() if v)


class WeylElement:
    """Immutable element of A_n(F_p); ``terms`` maps exponent tuples to residues."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: WeylContext, terms: Mapping[tuple, int]):
        self.ctx = ctx
        p = ctx.p
        clean = {}
        for e, c in terms.items():
            c %= p
            if c:
                clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    def _check(self, other) -> WeylElement:
        if isinstance(other, int):
            return self.ctx.scalar(other)
        if not isinstance(other, WeylElement):
            raise TypeError(f"cannot combine WeylElement with {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.ctx.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = (out.get(e, 0) + c) % p
        return WeylElement(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return WeylElement(self.ctx, {e: c * other for e, c in self.terms.items()})
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, m: int):
        return power(self, m)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.scalar(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def leading_term(self):
        """(exponent, coeff) largest in graded-lex order."""
        if not self.terms:
            raise ValueError("zero element has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"WeylElement({self})"


def format_monomial(exps, prefix: str = "x") -> str:
    return "*".join(f"{prefix}{i + 1}^{k}" if k > 1 else f"{prefix}{i + 1}" for i, k in enumerate(exps) if k)


def format_element(f: WeylElement) -> str:
    """Canonical text: graded-lex descending, ``c*x1^a1*...``, coefficient 1 omitted."""
    if not f.terms:
        return "0"
    parts = []
    for e, c in f.sorted_terms():
        mono = format_monomial(e)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


def multiply(f: WeylElement, g: WeylElement) -> WeylElement:
    g = f._check(g)
    ctx = f.ctx
    p, n = ctx.p, ctx.n
    out: dict = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            c12 = c1 * c2
            for e, c in _monomial_product(p, n, e1, e2):
                out[e] = (out.get(e, 0) + c12 * c) % p
    return WeylElement(ctx, out)


def commutator(f: WeylElement, g: WeylElement) -> WeylElement:
    g = f._check(g)
    return multiply(f, g) - multiply(g, f)


def power(f: WeylElement, m: int) -> WeylElement:
    if m < 0:
        raise ValueError("negative exponent")
    result = f.ctx.one()
    base = f
    while m:
        if m & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        m >>= 1
    return result


def is_central(f: WeylElement) -> bool:
    return all(commutator(f, x).is_zero() for x in f.ctx.gens())


def central_coordinates(f: WeylElement) -> dict[tuple, MultiPoly]:
    """Write f = sum_r c_r(z) x^r with 0 <= r_i < p, c_r in F_p[z_1..z_2n].

    Uses x_i^(p q + r) = z_i^q x_i^r, valid because x_i^p is central.
    """
    ctx = f.ctx
    p = ctx.p
    Z = ctx.center
    buckets: dict[tuple, dict] = {}
    for e, c in f.terms.items():
        r = tuple(x % p for x in e)
        q = tuple(x // p for x in e)
        bucket = buckets.setdefault(r, {})
        bucket[q] = (bucket.get(q, 0) + c) % p
    return {r: MultiPoly(Z, t) for r, t in buckets.items() if any(t.values())}


def from_central_coordinates(ctx: WeylContext, coords: Mapping[tuple, MultiPoly]) -> WeylElement:
    """Inverse of :func:`central_coordinates`."""
    p = ctx.p
    out: dict = {}
    for r, poly in coords.items():
        if any(not 0 <= x < p for x in r):
            raise ValueError(f"{r} is not a reduced exponent")
        for q, c in poly.terms.items():
            e = tuple(p * qi + ri for qi, ri in zip(q, r))
            out[e] = (out.get(e, 0) + c) % p
    return WeylElement(ctx, out)


class DomainCertificateError(AssertionError):
    pass


def leading_term_certificate(f: WeylElement, g: WeylElement) -> bool:
    """Check LT(fg) = LT(f) LT(g) in graded-lex order.

    The associated graded ring is a commutative polynomial ring, so this
    always holds; a failure means the rewriting is broken and is raised.
    """
    g = f._check(g)
    if f.is_zero() or g.is_zero():
        raise ValueError("leading-term certificate needs nonzero factors")
    ef, cf = f.leading_term()
    eg, cg = g.leading_term()
    prod = multiply(f, g)
    if prod.is_zero():
        raise DomainCertificateError(f"zero divisor found: ({f}) * ({g}) = 0")
    e, c = prod.leading_term()
    expected = tuple(a + b for a, b in zip(ef, eg))
    if e != expected or c != (cf * cg) % f.ctx.p:
        raise DomainCertificateError(f"LT({f} * {g}) = {c}*x^{e}, expected x^{expected}")
    return True


def domain_certificate(ctx: WeylContext, trials: int = 1000, seed: int = 0, max_degree: int = 4) -> dict:
    """Run the leading-term check on random nonzero pairs; returns a summary."""
    rng = random.Random(seed)
    done = 0
    while done < trials:
        f = ctx.random_element(rng, max_degree=max_degree)
        g = ctx.random_element(rng, max_degree=max_degree)
        if f.is_zero() or g.is_zero():
            continue
        leading_term_certificate(f, g)
        done += 1
    return {"p": ctx.p, "n": ctx.n, "pairs_checked": done, "seed": seed, "max_degree": max_degree}
