"""Finite fields GF(p^k), used only as evaluation grids for determinants.

Elements are encoded as integers ``0 <= a < p**k`` whose base-p digits are
the coefficients of a polynomial in the generator (lowest digit = constant
term), so the prime subfield is exactly ``range(p)``.  Multiplication goes
through discrete-log tables and addition in log form through a Zech table,
which is what the numeric kernels consume.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from weylbrauer.ring.fields import is_prime

MAX_ORDER = 3**8

# Monic primitive polynomials, coefficients from the constant term upward.
# Found by exhaustive search (lexicographically first); tests re-verify them.
PRIMITIVE_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 0, 1, 1),
    (2, 4): (1, 0, 0, 1, 1),
    (2, 5): (1, 0, 0, 1, 0, 1),
    (2, 6): (1, 0, 0, 0, 0, 1, 1),
    (2, 7): (1, 0, 0, 0, 0, 0, 1, 1),
    (2, 8): (1, 0, 0, 0, 1, 1, 1, 0, 1),
    (2, 9): (1, 0, 0, 0, 0, 1, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1),
    (2, 11): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1),
    (2, 12): (1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 1),
    (3, 2): (2, 1, 1),
    (3, 3): (1, 0, 2, 1),
    (3, 4): (2, 0, 0, 1, 1),
    (3, 5): (1, 0, 0, 0, 2, 1),
    (3, 6): (2, 0, 0, 0, 0, 1, 1),
    (3, 7): (1, 0, 0, 0, 0, 1, 2, 1),
    (3, 8): (2, 0, 0, 0, 0, 1, 0, 0, 1),
    (5, 2): (2, 1, 1),
    (5, 3): (2, 0, 1, 1),
    (5, 4): (2, 0, 2, 1, 1),
    (5, 5): (2, 0, 0, 0, 3, 1),
    (7, 2): (3, 1, 1),
    (7, 3): (2, 1, 1, 1),
    (7, 4): (3, 0, 1, 1, 1),
    (11, 2): (2, 4, 1),
    (11, 3): (3, 0, 1, 1),
    (13, 2): (2, 1, 1),
    (13, 3): (2, 0, 1, 1),
    (17, 2): (3, 1, 1),
    (17, 3): (3, 0, 2, 1),
    (19, 2): (2, 1, 1),
    (23, 2): (5, 2, 1),
    (29, 2): (2, 5, 1),
    (31, 2): (3, 2, 1),
    (37, 2): (2, 4, 1),
    (41, 2): (6, 3, 1),
    (43, 2): (3, 1, 1),
    (47, 2): (5, 2, 1),
    (53, 2): (2, 4, 1),
    (59, 2): (2, 1, 1),
    (61, 2): (2, 1, 1),
    (67, 2): (2, 4, 1),
    (71, 2): (7, 2, 1),
    (73, 2): (5, 3, 1),
    (79, 2): (3, 1, 1),
}

ZERO_LOG = -1


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = []
    m, f = p - 1, 2
    while f * f <= m:
        if m % f == 0:
            factors.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        factors.append(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise AssertionError("no primitive root")


class GaloisField:
    """GF(p^k) with log/antilog/Zech tables."""

    zero = 0
    one = 1

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1 or p**k > MAX_ORDER:
            raise ValueError(f"GF({p}^{k}) outside the supported range (order <= {MAX_ORDER})")
        if k > 1 and (p, k) not in PRIMITIVE_POLYNOMIALS:
            raise ValueError(f"no primitive polynomial tabulated for GF({p}^{k})")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = PRIMITIVE_POLYNOMIALS.get((p, k))
        self._build_tables()

    def __repr__(self):
        return f"GaloisField({self.p}, {self.k})"

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits) -> int:
        a = 0
        for d in reversed(digits):
            a = a * self.p + d
        return a

    def _times_generator(self, a: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return (a * self._root) % p
        digits = [0] + self._digits(a)
        top = digits.pop()
        if top:
            for i in range(k):
                digits[i] = (digits[i] - top * self.modulus[i]) % p
        return self._encode(digits)

    def _build_tables(self):
        q = self.q
        self._root = _primitive_root(self.p) if self.k == 1 else None
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, ZERO_LOG, dtype=np.int64)
        a = 1
        for i in range(q - 1):
            if log[a] != ZERO_LOG:
                raise AssertionError(f"generator of GF({self.p}^{self.k}) is not primitive")
            exp[i] = a
            log[a] = i
            a = self._times_generator(a)
        if a != 1:
            raise AssertionError("generator order mismatch")
        self.exp_table = exp
        self.log_table = log
        zech = np.empty(q - 1, dtype=np.int64)
        for n in range(q - 1):
            zech[n] = log[self.add(1, int(exp[n]))]
        self.zech_table = zech
        # log of -1
        self.neg_one_log = 0 if self.p == 2 else (q - 1) // 2

    # encoded arithmetic -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out, place = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._encode([(-d) % self.p for d in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        la, lb = self.log_table[a], self.log_table[b]
        return int(self.exp_table[(la + lb) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.exp_table[(-self.log_table[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return int(self.exp_table[(self.log_table[a] * e) % (self.q - 1)])

    def from_prime(self, c: int) -> int:
        """Embed a residue of F_p."""
        return c % self.p

    def in_prime_field(self, a: int) -> bool:
        return 0 <= a < self.p

    def element_from_log(self, l: int) -> int:
        return 0 if l == ZERO_LOG else int(self.exp_table[l % (self.q - 1)])

    def log(self, a: int) -> int:
        return int(self.log_table[a])


@lru_cache(maxsize=None)
def galois_field(p: int, k: int) -> GaloisField:
    return GaloisField(p, k)


def smallest_extension(p: int, size: int) -> GaloisField:
    """Smallest GF(p^k) with at least ``size`` nonzero elements."""
    k = 1
    while p**k - 1 < size:
        k += 1
        if p**k > MAX_ORDER:
            raise ValueError(
                f"evaluation grid of {size} points needs GF({p}^{k}), beyond order {MAX_ORDER}"
            )
    return galois_field(p, k)
