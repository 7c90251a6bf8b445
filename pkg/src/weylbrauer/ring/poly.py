"""Sparse commutative multivariate polynomials over an exact field.

Exponent tuples are stored sparsely in a dict; the canonical term order is
graded lexicographic (total degree first, then lex with z1 > z2 > ...).
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from weylbrauer.ring.fields import Field, PrimeField


def grlex_key(e: tuple[int, ...]):
    return (sum(e), e)


class PolyRing:
    """F[z1, ..., zm]; ``nvars == 0`` is the field itself."""

    def __init__(self, field: Field, nvars: int, names: Sequence[str] | None = None):
        if nvars < 0:
            raise ValueError("variable count must be non-negative")
        self.field = field
        self.nvars = nvars
        if names is None:
            names = [f"z{i + 1}" for i in range(nvars)]
        if len(names) != nvars:
            raise ValueError("wrong number of variable names")
        self.names = tuple(names)
        self._zero_exp = (0,) * nvars

    def __repr__(self):
        return f"PolyRing({self.field!r}, {self.nvars}, {list(self.names)})"

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.field, self.nvars, self.names))

    @property
    def is_field(self) -> bool:
        return self.nvars == 0

    def zero(self) -> MultiPoly:
        return MultiPoly(self, {}, _trusted=True)

    def one(self) -> MultiPoly:
        return self.constant(1)

    def constant(self, c) -> MultiPoly:
        c = self.field.coerce(c)
        if self.field.is_zero(c):
            return self.zero()
        return MultiPoly(self, {self._zero_exp: c}, _trusted=True)

    def gen(self, i: int) -> MultiPoly:
        e = [0] * self.nvars
        e[i] = 1
        return MultiPoly(self, {tuple(e): self.field.one}, _trusted=True)

    def gens(self) -> list[MultiPoly]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff=1) -> MultiPoly:
        return MultiPoly(self, {tuple(exps): self.field.coerce(coeff)})

    def __call__(self, x) -> MultiPoly:
        if isinstance(x, MultiPoly):
            if x.ring != self:
                raise ValueError("polynomial belongs to a different ring")
            return x
        return self.constant(x)


class MultiPoly:
    """An immutable polynomial; ``terms`` maps exponent tuples to raw coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], object], _trusted=False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            F = ring.field
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != ring.nvars or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent {e} for {ring.nvars} variables")
                c = F.coerce(c)
                if not F.is_zero(c):
                    clean[e] = c
            self.terms = clean
        self._hash = None

    # construction helpers ------------------------------------------------
    def _new(self, terms) -> MultiPoly:
        return MultiPoly(self.ring, terms, _trusted=True)

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("polynomials over different rings")
            return other
        return self.ring.constant(other)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = F.add(out[e], c)
                if F.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return self._new({e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(self.ring.field.coerce(other))
        other = self._coerce(other)
        F = self.ring.field
        out: dict = {}
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = F.mul(c1, c2)
                if e in out:
                    out[e] = F.add(out[e], c)
                else:
                    out[e] = c
        return self._new({e: c for e, c in out.items() if not F.is_zero(c)})

    __rmul__ = __mul__

    def scale(self, c) -> MultiPoly:
        F = self.ring.field
        if F.is_zero(c):
            return self.ring.zero()
        return self._new({e: F.mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, e: int) -> MultiPoly:
        if e < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, divisor: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
        """Multivariate division by a single polynomial (grlex leading terms)."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.ring.field
        lt_e, lt_c = divisor.leading_term()
        lt_inv = F.inv(lt_c)
        quotient: dict = {}
        remainder: dict = {}
        rest = dict(self.terms)
        while rest:
            e = max(rest, key=grlex_key)
            c = rest[e]
            if all(x >= y for x, y in zip(e, lt_e)):
                qe = tuple(x - y for x, y in zip(e, lt_e))
                qc = F.mul(c, lt_inv)
                quotient[qe] = F.add(quotient.get(qe, F.zero), qc)
                for de, dc in divisor.terms.items():
                    te = tuple(x + y for x, y in zip(qe, de))
                    v = F.sub(rest.get(te, F.zero), F.mul(qc, dc))
                    if F.is_zero(v):
                        rest.pop(te, None)
                    else:
                        rest[te] = v
            else:
                remainder[e] = c
                del rest[e]
        q = self._new({e: c for e, c in quotient.items() if not F.is_zero(c)})
        return q, self._new(remainder)

    def exact_div(self, divisor: MultiPoly) -> MultiPoly:
        if isinstance(divisor, MultiPoly) and divisor.is_constant():
            return self.scale(self.ring.field.inv(divisor.constant_coefficient()))
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    # queries ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def constant_coefficient(self):
        return self.terms.get(self.ring._zero_exp, self.ring.field.zero)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    # evaluation and substitution --------------------------------------------
    def substitute(self, images: Sequence[MultiPoly]) -> MultiPoly:
        """Replace z_i by ``images[i]`` (all in one target ring)."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        if not images:
            raise ValueError("nothing to substitute")
        target = images[0].ring
        out = target.zero()
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        for e, c in self.terms.items():
            term = target.constant(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def evaluate(self, point: Sequence, field=None):
        """Evaluate at ``point`` using ``field``'s raw arithmetic (default: own field)."""
        F = field if field is not None else self.ring.field
        total = F.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = F.mul(v, F.pow(x, k))
            total = F.add(total, v)
        return total

    # comparison -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            other = self.ring.constant(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.ring.field
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{n}^{k}" if k > 1 else n for n, k in zip(self.ring.names, e) if k
            )
            cs = F.format(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)


def poly_ring_fp(p: int, nvars: int, names: Iterable[str] | None = None) -> PolyRing:
    return PolyRing(PrimeField(p), nvars, list(names) if names is not None else None)


def is_unit(f: MultiPoly) -> bool:
    """True iff ``f`` is a nonzero constant (units of a polynomial ring over a field)."""
    return f.is_constant() and not f.is_zero()
