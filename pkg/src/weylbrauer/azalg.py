"""Free algebras of finite rank over F[z1..zm] given by structure constants.

An element is stored flat: a dict from ``zcode * rank + k`` to a raw field
coefficient, meaning coeff * z^zcode * b_k.  ``zcode`` packs an exponent
vector into an int (16 bits per variable) so that adding codes multiplies
monomials.  Structure constants are stored the same way, sparsely, one
tuple of ``(key, coeff)`` per basis pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from weylbrauer import kernels
from weylbrauer.ring.automorphism import RingAutomorphism
from weylbrauer.ring.fields import PrimeField
from weylbrauer.ring.matrix import DetReport, PolyMatrix, det_report, rank_over_field
from weylbrauer.ring.poly import MultiPoly, PolyRing, is_unit
from weylbrauer.weyl import WeylContext, central_coordinates, format_monomial, multiply

BITS = 16
MASK = (1 << BITS) - 1


class AlgebraError(ValueError):
    pass


def encode_exps(e: Sequence[int]) -> int:
    code = 0
    for v, x in enumerate(e):
        if x > MASK:
            raise OverflowError("exponent too large for packed encoding")
        code |= x << (BITS * v)
    return code


def decode_exps(code: int, m: int) -> tuple[int, ...]:
    return tuple((code >> (BITS * v)) & MASK for v in range(m))


class FreeAlgebra:
    """A free R-module with basis b_0..b_{r-1} and a bilinear product.

    ``constants[(i, j)]`` maps k to the polynomial coefficient of b_k in
    b_i b_j; ``unit`` maps k to the unit's coordinates.  Construction does
    not verify the algebra axioms; call :meth:`verify`.
    """

    def __init__(
        self,
        base: PolyRing,
        rank: int,
        constants: Mapping[tuple[int, int], Mapping[int, MultiPoly]] | None = None,
        unit: Mapping[int, MultiPoly] | None = None,
        labels: Sequence[str] | None = None,
        name: str = "",
        _table=None,
        _unit=None,
    ):
        self.base = base
        self.field = base.field
        self.rank = rank
        self.m = base.nvars
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(f"b{k}" for k in range(rank))
        if len(self.labels) != rank:
            raise AlgebraError("one label per basis element required")
        self._fast = isinstance(self.field, PrimeField)
        self._p = self.field.p if self._fast else None
        if _table is not None:
            self._table = _table
            self._unit = _unit
        else:
            table = [()] * (rank * rank)
            for (i, j), coeffs in (constants or {}).items():
                table[i * rank + j] = self._encode_coords(coeffs)
            self._table = table
            self._unit = dict(self._encode_coords(unit or {}))
        self._verified = None
        self._key = None

    # --- encoding ---------------------------------------------------------
    def _encode_coords(self, coords: Mapping[int, MultiPoly]):
        F = self.field
        out = []
        for k, poly in coords.items():
            if not 0 <= k < self.rank:
                raise AlgebraError(f"basis index {k} out of range")
            poly = self.base(poly)
            for e, c in poly.terms.items():
                if not F.is_zero(c):
                    out.append((encode_exps(e) * self.rank + k, c))
        return tuple(out)

    def _decode(self, data: Mapping[int, object]) -> dict[int, MultiPoly]:
        per: dict[int, dict] = {}
        for key, c in data.items():
            zc, k = divmod(key, self.rank)
            per.setdefault(k, {})[decode_exps(zc, self.m)] = c
        return {k: MultiPoly(self.base, t) for k, t in sorted(per.items())}

    # --- structure --------------------------------------------------------
    def structure_constants(self, i: int, j: int) -> dict[int, MultiPoly]:
        return self._decode(dict(self._table[i * self.rank + j]))

    def constants_dict(self) -> dict[tuple[int, int], dict[int, MultiPoly]]:
        r = self.rank
        return {(i, j): self.structure_constants(i, j) for i in range(r) for j in range(r) if self._table[i * r + j]}

    def _fingerprint(self):
        if self._key is None:
            self._key = (
                self.base,
                self.rank,
                tuple(tuple(sorted(t)) for t in self._table),
                tuple(sorted(self._unit.items())),
            )
        return self._key

    def same_structure(self, other: FreeAlgebra) -> bool:
        if other is self:
            return True
        return self._fingerprint() == other._fingerprint()

    def __eq__(self, other):
        return isinstance(other, FreeAlgebra) and self.same_structure(other)

    def __hash__(self):
        return hash(self._fingerprint())

    def __repr__(self):
        label = self.name or "FreeAlgebra"
        return f"<{label}: rank {self.rank} over {self.base.field!r}[{', '.join(self.base.names)}]>"

    # --- elements -----------------------------------------------------------
    def element(self, coords: Mapping[int, object]) -> AlgElement:
        enc = {}
        F = self.field
        for key, c in self._encode_coords({k: self.base(v) for k, v in coords.items()}):
            enc[key] = F.add(enc.get(key, F.zero), c)
        return AlgElement(self, {k: v for k, v in enc.items() if not F.is_zero(v)})

    def basis(self, k: int) -> AlgElement:
        if not 0 <= k < self.rank:
            raise IndexError(k)
        return AlgElement(self, {k: self.field.one})

    def zero(self) -> AlgElement:
        return AlgElement(self, {})

    def one(self) -> AlgElement:
        return AlgElement(self, dict(self._unit))

    def scalar(self, c) -> AlgElement:
        """The base-ring element ``c`` (int or MultiPoly) times the unit."""
        return self.one().scale(self.base(c))

    def central(self, poly: MultiPoly) -> AlgElement:
        return self.scalar(poly)

    def z(self, v: int) -> AlgElement:
        """The base-ring variable z_v (1-based) acting on the unit."""
        return self.scalar(self.base.gen(v - 1))

    # --- multiplication -------------------------------------------------
    def _mul(self, x: dict, y: dict) -> dict:
        r = self.rank
        table = self._table
        out: dict = {}
        if self._fast:
            p = self._p
            ys = [(divmod(ky, r), cy) for ky, cy in y.items()]
            for kx, cx in x.items():
                zx, i = divmod(kx, r)
                ir = i * r
                for (zy, j), cy in ys:
                    terms = table[ir + j]
                    if not terms:
                        continue
                    base = (zx + zy) * r
                    c = cx * cy
                    for kk, c3 in terms:
                        key = base + kk
                        out[key] = (out.get(key, 0) + c * c3) % p
            return {k: v for k, v in out.items() if v}
        F = self.field
        for kx, cx in x.items():
            zx, i = divmod(kx, r)
            for ky, cy in y.items():
                zy, j = divmod(ky, r)
                base = (zx + zy) * r
                c = F.mul(cx, cy)
                for kk, c3 in table[i * r + j]:
                    key = base + kk
                    out[key] = F.add(out.get(key, F.zero), F.mul(c, c3))
        return {k: v for k, v in out.items() if not F.is_zero(v)}

    def multiply(self, x: AlgElement, y: AlgElement) -> AlgElement:
        return AlgElement(self, self._mul(x.data, y.data))

    # --- verification -----------------------------------------------------
    def _csr(self):
        """Structure constants as CSR arrays with a compact carry-free z-encoding."""
        r, m = self.rank, self.m
        maxdeg = 0
        for terms in self._table:
            for kk, _ in terms:
                e = decode_exps(kk // r, m)
                if e:
                    maxdeg = max(maxdeg, max(e))
        radix = 2 * maxdeg + 1
        ptr = [0]
        out_idx, codes, coef = [], [], []
        for terms in self._table:
            for kk, c in terms:
                zc, k = divmod(kk, r)
                e = decode_exps(zc, m)
                code = 0
                for v in reversed(range(m)):
                    code = code * radix + e[v]
                out_idx.append(k)
                codes.append(code)
                coef.append(c)
            ptr.append(len(out_idx))
        return (
            np.array(ptr, dtype=np.int64),
            np.array(out_idx, dtype=np.int64),
            np.array(codes, dtype=np.int64),
            np.array(coef, dtype=np.int64),
            radix**m,
        )

    def associativity_defects(self, rows: Sequence[int] | None = None, limit: int = 8, backend=None):
        """(count, sample) of triples with (b_i b_j) b_k != b_i (b_j b_k), i in ``rows``."""
        r = self.rank
        rows = list(range(r)) if rows is None else list(rows)
        if self._fast:
            ptr, out_idx, codes, coef, zout = self._csr()
            return kernels.associativity_defects(
                rows, r, self._p, ptr, out_idx, codes, coef, zout, limit=limit, backend=backend
            )
        bad = []
        count = 0
        for i in rows:
            bi = {i: self.field.one}
            for j in range(r):
                bij = self._mul(bi, {j: self.field.one})
                for k in range(r):
                    bk = {k: self.field.one}
                    lhs = self._mul(bij, bk)
                    rhs = self._mul(bi, self._mul({j: self.field.one}, bk))
                    if lhs != rhs:
                        count += 1
                        if len(bad) < limit:
                            bad.append((i, j, k))
        return count, bad

    def unit_defects(self) -> list[int]:
        one = self._unit
        bad = []
        for j in range(self.rank):
            bj = {j: self.field.one}
            if self._mul(one, bj) != bj or self._mul(bj, one) != bj:
                bad.append(j)
        return bad

    def verify(self, associativity: str = "full", generators: Sequence[int] | None = None) -> dict:
        """Check the unit law and associativity; raises :class:`AlgebraError` on failure.

        ``associativity="generators"`` checks only triples whose first entry
        is one of ``generators`` (basis indices); this is sufficient when
        every basis element is a right-nested product of those generators,
        which the caller must certify.  ``"skip"`` checks the unit only.
        """
        unit_bad = self.unit_defects()
        if unit_bad:
            raise AlgebraError(f"{self.name or 'algebra'}: unit law fails on basis {unit_bad[:5]}")
        if associativity == "skip":
            checked = 0
        else:
            rows = None if associativity == "full" else generators
            count, bad = self.associativity_defects(rows)
            if count:
                raise AlgebraError(f"{self.name or 'algebra'}: {count} non-associative triples, e.g. {bad}")
            checked = self.rank * self.rank * (self.rank if rows is None else len(rows))
        self._verified = {"unit": True, "associativity": associativity, "triples_checked": checked}
        return self._verified

    # --- base-ring operations ---------------------------------------------
    def map_coefficients(self, fn: Callable[[MultiPoly], MultiPoly], base: PolyRing | None = None, name: str = "") -> FreeAlgebra:
        """Apply a ring map to every structure constant and unit coordinate."""
        base = base or self.base
        consts = {ij: {k: fn(v) for k, v in c.items()} for ij, c in self.constants_dict().items()}
        unit = {k: fn(v) for k, v in self._decode(self._unit).items()}
        return FreeAlgebra(base, self.rank, consts, unit, self.labels, name=name or self.name)

    def specialize(self, point: Sequence[int], name: str = "") -> FreeAlgebra:
        """Base change along F[z] -> F, z -> point."""
        target = PolyRing(self.field, 0)
        return self.map_coefficients(lambda f: target.constant(f.evaluate([self.field.coerce(x) for x in point])), target, name)


class AlgElement:
    __slots__ = ("algebra", "data")

    def __init__(self, algebra: FreeAlgebra, data: dict):
        self.algebra = algebra
        self.data = data

    def _coerce(self, other) -> AlgElement:
        if isinstance(other, AlgElement):
            if other.algebra is not self.algebra and not other.algebra.same_structure(self.algebra):
                raise AlgebraError("elements of different algebras")
            return other
        if isinstance(other, (int, MultiPoly)):
            return self.algebra.scalar(other)
        raise TypeError(f"cannot combine algebra element with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        F = self.algebra.field
        out = dict(self.data)
        for k, c in other.data.items():
            s = F.add(out.get(k, F.zero), c)
            if F.is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
        return AlgElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.algebra.field
        return AlgElement(self.algebra, {k: F.neg(c) for k, c in self.data.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.algebra.base.constant(other))
        other = self._coerce(other)
        return AlgElement(self.algebra, self.algebra._mul(self.data, other.data))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(self.algebra.base.constant(other))
        other = self._coerce(other)
        return AlgElement(self.algebra, self.algebra._mul(other.data, self.data))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.algebra.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, poly: MultiPoly) -> AlgElement:
        """Multiply by a base-ring element."""
        A = self.algebra
        F = A.field
        poly = A.base(poly)
        r = A.rank
        out: dict = {}
        for e, c in poly.terms.items():
            shift = encode_exps(e) * r
            for k, v in self.data.items():
                key = k + shift
                out[key] = F.add(out.get(key, F.zero), F.mul(c, v))
        return AlgElement(A, {k: v for k, v in out.items() if not F.is_zero(v)})

    def coordinates(self) -> dict[int, MultiPoly]:
        return self.algebra._decode(self.data)

    def coordinate(self, k: int) -> MultiPoly:
        return self.coordinates().get(k, self.algebra.base.zero())

    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other):
        if isinstance(other, (int, MultiPoly)):
            other = self.algebra.scalar(other)
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.data == other.data and (other.algebra is self.algebra or self.algebra.same_structure(other.algebra))

    def __hash__(self):
        return hash(frozenset(self.data.items()))

    def __str__(self):
        coords = self.coordinates()
        if not coords:
            return "0"
        parts = []
        for k, poly in coords.items():
            label = self.algebra.labels[k]
            cs = str(poly)
            if len(poly.terms) > 1:
                cs = f"({cs})"
            parts.append(label if cs == "1" else f"{cs}*{label}")
        return " + ".join(parts)

    def __repr__(self):
        return f"AlgElement({self})"


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def weyl_structure_constants(p: int, n: int) -> FreeAlgebra:
    """A_n(F_p) as a free module of rank p^(2n) over F_p[z_1..z_2n], z_i = x_i^p."""
    ctx = WeylContext(p, n)
    basis = ctx.reduced_exponents()
    index = {e: k for k, e in enumerate(basis)}
    mons = [ctx.monomial(e) for e in basis]
    consts = {}
    for i, ei in enumerate(basis):
        for j, ej in enumerate(basis):
            prod = multiply(mons[i], mons[j])
            consts[(i, j)] = {index[r]: poly for r, poly in central_coordinates(prod).items()}
    unit = {index[(0,) * ctx.ngens]: ctx.center.one()}
    labels = [format_monomial(e) or "1" for e in basis]
    A = FreeAlgebra(ctx.center, len(basis), consts, unit, labels, name=f"A_{n}(F_{p})")
    A.weyl = ctx
    A.exponents = basis
    return A


def matrix_algebra(m: int, R: PolyRing) -> FreeAlgebra:
    """M_m(R) on the elementary matrices E_ab (index a*m + b)."""
    if m < 1:
        raise AlgebraError("matrix size must be positive")
    one = R.one()
    consts = {}
    for a in range(m):
        for b in range(m):
            for d in range(m):
                consts[(a * m + b, b * m + d)] = {a * m + d: one}
    unit = {a * m + a: one for a in range(m)}
    labels = [f"E{a + 1}{b + 1}" if m < 10 else f"E{a + 1}_{b + 1}" for a in range(m) for b in range(m)]
    A = FreeAlgebra(R, m * m, consts, unit, labels, name=f"M_{m}")
    A.matrix_size = m
    return A


def tensor_over_R(A: FreeAlgebra, B: FreeAlgebra, name: str = "") -> FreeAlgebra:
    """A (x)_R B with basis b_i (x) b'_k at index i * rank(B) + k."""
    if A.base != B.base:
        raise AlgebraError("tensor factors over different base rings")
    rA, rB = A.rank, B.rank
    r = rA * rB
    F = A.field
    fast = A._fast
    p = A._p
    table = [()] * (r * r)
    for i in range(rA):
        for j in range(rA):
            ta = A._table[i * rA + j]
            if not ta:
                continue
            for k in range(rB):
                for l in range(rB):
                    tb = B._table[k * rB + l]
                    if not tb:
                        continue
                    out: dict = {}
                    for ka, ca in ta:
                        za, ma = divmod(ka, rA)
                        for kb, cb in tb:
                            zb, mb = divmod(kb, rB)
                            key = (za + zb) * r + ma * rB + mb
                            if fast:
                                out[key] = (out.get(key, 0) + ca * cb) % p
                            else:
                                out[key] = F.add(out.get(key, F.zero), F.mul(ca, cb))
                    table[(i * rB + k) * r + (j * rB + l)] = tuple(
                        (kk, c) for kk, c in out.items() if not F.is_zero(c)
                    )
    unit: dict = {}
    for ka, ca in A._unit.items():
        za, ma = divmod(ka, rA)
        for kb, cb in B._unit.items():
            zb, mb = divmod(kb, rB)
            key = (za + zb) * r + ma * rB + mb
            unit[key] = F.add(unit.get(key, F.zero), F.mul(ca, cb))
    unit = {k: v for k, v in unit.items() if not F.is_zero(v)}
    labels = [f"{a}(x){b}" for a in A.labels for b in B.labels]
    T = FreeAlgebra(A.base, r, labels=labels, name=name or f"({A.name or 'A'})(x)({B.name or 'B'})", _table=table, _unit=unit)
    T.factors = (A, B)
    return T


def pure_tensor(T: FreeAlgebra, a: AlgElement, b: AlgElement) -> AlgElement:
    """a (x) b inside T = tensor_over_R(A, B)."""
    A, B = T.factors
    F = T.field
    r, rA, rB = T.rank, A.rank, B.rank
    out: dict = {}
    for ka, ca in a.data.items():
        za, ia = divmod(ka, rA)
        for kb, cb in b.data.items():
            zb, ib = divmod(kb, rB)
            key = (za + zb) * r + ia * rB + ib
            out[key] = F.add(out.get(key, F.zero), F.mul(ca, cb))
    return AlgElement(T, {k: v for k, v in out.items() if not F.is_zero(v)})


def opposite(A: FreeAlgebra) -> FreeAlgebra:
    r = A.rank
    table = [A._table[j * r + i] for i in range(r) for j in range(r)]
    name = A.name[:-3] if A.name.endswith("^op") else f"{A.name or 'A'}^op"
    return FreeAlgebra(A.base, r, labels=A.labels, name=name, _table=table, _unit=dict(A._unit))


def pushforward(A: FreeAlgebra, phi: RingAutomorphism, name: str = "") -> FreeAlgebra:
    """phi_* A: every coefficient is replaced by its image under phi^{-1}."""
    if len(phi.ring.components) != 1 or phi.ring.components[0] != A.base:
        raise AlgebraError("automorphism is not an automorphism of the algebra's base ring")
    B = A.map_coefficients(lambda f: phi.apply_inverse_component(0, f), name=name or f"{phi.name or 'phi'}_*{A.name}")
    for attr in ("weyl", "exponents"):
        if hasattr(A, attr):
            setattr(B, attr, getattr(A, attr))
    return B


def action_map_matrix(A: FreeAlgebra) -> PolyMatrix:
    """Matrix of A (x) A^op -> End_R(A), b_i (x) b_j -> (a -> b_i a b_j).

    Column (i, j) at index i*r + j; row (l, k) at index l*r + k holds the
    coefficient of b_l in b_i b_k b_j.
    """
    r = A.rank
    R = A.base
    cols = []
    for i in range(r):
        bi = A.basis(i)
        for j in range(r):
            bj = A.basis(j)
            col = [R.zero()] * (r * r)
            for k in range(r):
                prod = (bi * A.basis(k)) * bj
                for l, poly in prod.coordinates().items():
                    col[l * r + k] = poly
            cols.append(col)
    return PolyMatrix(R, [list(row) for row in zip(*cols)])


@dataclass
class AzumayaCertificate:
    algebra: str
    is_azumaya: bool
    determinant: MultiPoly
    det_report: DetReport

    def as_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "is_azumaya": self.is_azumaya,
            "determinant": str(self.determinant),
            "det": self.det_report.as_json(),
            "strategies_run": self.det_report.ran(),
        }


def azumaya_check(A: FreeAlgebra, **det_kwargs) -> AzumayaCertificate:
    """True iff the action map has unit determinant."""
    M = action_map_matrix(A)
    rep = det_report(M, **det_kwargs)
    return AzumayaCertificate(A.name or repr(A), is_unit(rep.value), rep.value, rep)


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------


class AlgebraHom:
    """An R-linear map given by the images of the source basis."""

    def __init__(self, source: FreeAlgebra, target: FreeAlgebra, images: Sequence[AlgElement], name: str = ""):
        if source.base != target.base:
            raise AlgebraError("source and target have different base rings")
        if len(images) != source.rank:
            raise AlgebraError("one image per source basis element required")
        for im in images:
            if im.algebra is not target and not im.algebra.same_structure(target):
                raise AlgebraError("image outside the target algebra")
        self.source = source
        self.target = target
        self.images = list(images)
        self.name = name

    def apply(self, x: AlgElement) -> AlgElement:
        """Extend R-linearly."""
        S, T = self.source, self.target
        r = S.rank
        out = T.zero()
        per: dict[int, dict] = {}
        for key, c in x.data.items():
            zc, k = divmod(key, r)
            per.setdefault(k, {})[decode_exps(zc, S.m)] = c
        for k, terms in per.items():
            out = out + self.images[k].scale(MultiPoly(S.base, terms, _trusted=True))
        return out

    __call__ = apply

    def coordinate_matrix(self) -> PolyMatrix:
        """Rows indexed by source basis, columns by target basis."""
        R = self.source.base
        rows = []
        for im in self.images:
            coords = im.coordinates()
            rows.append([coords.get(k, R.zero()) for k in range(self.target.rank)])
        return PolyMatrix(R, rows)

    def compose(self, other: AlgebraHom) -> AlgebraHom:
        """self o other."""
        return AlgebraHom(other.source, self.target, [self.apply(im) for im in other.images])


@dataclass
class GeneratingSet:
    """Algebra generators plus, for every basis element, a certificate that
    it is an R-combination of right-nested products of generators.

    ``words[k]`` is a list of (coefficient, word) pairs, a word being a
    tuple of generator indices; the product is evaluated right to left
    starting from 1.
    """

    elements: list
    words: dict

    def verify(self, algebra: FreeAlgebra) -> None:
        cache: dict = {(): algebra.one()}

        def word_value(w):
            if w not in cache:
                cache[w] = self.elements[w[0]] * word_value(w[1:])
            return cache[w]

        for k in range(algebra.rank):
            if k not in self.words:
                raise AlgebraError(f"no generator expression for basis element {algebra.labels[k]}")
            total = algebra.zero()
            for coeff, w in self.words[k]:
                total = total + word_value(tuple(w)) * coeff
            if total != algebra.basis(k):
                raise AlgebraError(f"generator expression for {algebra.labels[k]} evaluates to {total}")


def _unit_basis_index(A: FreeAlgebra) -> int | None:
    """Index k when the unit is exactly b_k, else None."""
    if len(A._unit) == 1:
        ((key, c),) = A._unit.items()
        if key < A.rank and c == A.field.one:
            return key
    return None


def basis_generators(A: FreeAlgebra) -> tuple[list[int], GeneratingSet]:
    """Basis elements generating A, with a right-nested word for every basis element.

    Weyl-type algebras use the x_i; tensor products combine the factors'
    generators (through the diagonal matrix units when the right factor is
    a matrix algebra); anything else falls back to the whole basis.
    """
    factors = getattr(A, "factors", None)
    if factors is not None:
        L, R = factors
        rowsL, gl = basis_generators(L)
        rowsR, gr = basis_generators(R)
        uL, uR = _unit_basis_index(L), _unit_basis_index(R)
        rB = R.rank
        words: dict = {}
        if uL is not None and uR is not None:
            rows = [g * rB + uR for g in rowsL] + [uL * rB + g for g in rowsR]
            off = len(rowsL)
            for ka, wa in gl.words.items():
                for kb, wb in gr.words.items():
                    words[ka * rB + kb] = [
                        (ca * cb, tuple(wl) + tuple(off + x for x in wr)) for ca, wl in wa for cb, wr in wb
                    ]
            return rows, GeneratingSet([A.basis(k) for k in rows], words)
        if uL is not None and hasattr(R, "matrix_size"):
            # (g_1 (x) E_aa) ... (g_k (x) E_aa) (1 (x) E_ab) = g_1...g_k (x) E_ab
            m = R.matrix_size
            rows = [g * rB + a * m + a for g in rowsL for a in range(m)] + [uL * rB + K for K in range(rB)]
            off = len(rowsL) * m
            for ka, wa in gl.words.items():
                for K in range(rB):
                    a = K // m
                    words[ka * rB + K] = [(ca, tuple(x * m + a for x in wl) + (off + K,)) for ca, wl in wa]
            return rows, GeneratingSet([A.basis(k) for k in rows], words)
    exps = getattr(A, "exponents", None)
    if exps is not None:
        m = len(exps[0])
        rows = [exps.index(tuple(int(i == j) for j in range(m))) for i in range(m)]
        words = {k: [(1, tuple(i for i in range(m) for _ in range(e[i])))] for k, e in enumerate(exps)}
        return rows, GeneratingSet([A.basis(k) for k in rows], words)
    rows = list(range(A.rank))
    return rows, GeneratingSet([A.basis(k) for k in rows], {k: [(1, (k,))] for k in rows})


def verify_by_generators(A: FreeAlgebra) -> dict:
    """Unit law and associativity via :func:`basis_generators`.

    If (g b) c = g (b c) for every generator g and all basis b, c, and every
    basis element is a right-nested product of generators, A is associative.
    """
    rows, gset = basis_generators(A)
    gset.verify(A)
    return dict(A.verify("generators", rows), generator_rows=len(rows))


@dataclass
class HomVerdict:
    is_hom: bool
    is_iso: bool | None
    failures: list = field(default_factory=list)
    pairs_checked: int = 0
    mode: str = "basis-pairs"
    iso_witness: dict = field(default_factory=dict)

    def as_json(self) -> dict:
        return {
            "is_hom": self.is_hom,
            "is_iso": self.is_iso,
            "mode": self.mode,
            "pairs_checked": self.pairs_checked,
            "failures": [str(f) for f in self.failures[:5]],
            "iso_witness": self.iso_witness,
        }


def check_hom(
    h: AlgebraHom,
    generators: GeneratingSet | None = None,
    inverse: AlgebraHom | None = None,
    det_kwargs: dict | None = None,
    max_failures: int = 5,
) -> HomVerdict:
    """Decide whether ``h`` is an algebra homomorphism and an isomorphism.

    Multiplicativity is checked on all basis pairs unless ``generators`` is
    given, in which case pairs (g, b_j) suffice once the generating set's
    certificate verifies.  Isomorphism needs equal ranks and a unit
    determinant of the coordinate matrix; with ``inverse`` supplied the
    unit is witnessed by both composites being the identity
    (det(H) det(G) = 1), otherwise the determinant is computed.
    """
    S, T = h.source, h.target
    verdict = HomVerdict(is_hom=True, is_iso=None)
    if h.apply(S.one()) != T.one():
        verdict.is_hom = False
        verdict.failures.append("h(1) != 1")
    if generators is not None:
        generators.verify(S)
        verdict.mode = "generators"
        lefts = list(generators.elements)
    else:
        lefts = [S.basis(i) for i in range(S.rank)]
    for gi, g in enumerate(lefts):
        hg = h.apply(g)
        for j in range(S.rank):
            bj = S.basis(j)
            verdict.pairs_checked += 1
            lhs = h.apply(g * bj)
            rhs = hg * h.images[j]
            if lhs != rhs:
                verdict.is_hom = False
                verdict.failures.append((gi, j))
                if len(verdict.failures) >= max_failures:
                    return verdict
    if not verdict.is_hom:
        return verdict
    if S.rank != T.rank:
        verdict.is_iso = False
        verdict.iso_witness = {"reason": "ranks differ"}
        return verdict
    if inverse is not None:
        left = all(inverse.apply(h.images[k]) == S.basis(k) for k in range(S.rank))
        right = all(h.apply(inverse.images[k]) == T.basis(k) for k in range(T.rank))
        verdict.is_iso = left and right
        verdict.iso_witness = {
            "method": "explicit inverse: G.H = I and H.G = I, so det(H) det(G) = 1",
            "left_inverse": left,
            "right_inverse": right,
        }
        return verdict
    rep = det_report(h.coordinate_matrix(), **(det_kwargs or {}))
    verdict.is_iso = is_unit(rep.value)
    verdict.iso_witness = {"method": "determinant", "determinant": str(rep.value), "det": rep.as_json()}
    return verdict


# ---------------------------------------------------------------------------
# the differential-operator representation of k<a, b>/([a, b] = -1, a^p = b^p = 0)
# ---------------------------------------------------------------------------


def restricted_weyl_algebra(p: int) -> FreeAlgebra:
    """F_p<t, d>/(d t - t d = 1, t^p = d^p = 0): A_1(F_p) specialised at z = 0.

    Basis t^a d^b (index a*p + b), i.e. alpha_lower^a alpha_upper^b.
    """
    A = weyl_structure_constants(p, 1)
    B = A.specialize([0, 0], name=f"A_1(F_{p})/(z)")
    B.exponents = A.exponents
    return B


def multiplication_by_t(p: int) -> list[list[int]]:
    """Matrix of f -> t f on F_p[t]/(t^p) in the basis 1, t, ..., t^(p-1) (column = input)."""
    return [[1 if row == col + 1 else 0 for col in range(p)] for row in range(p)]


def derivative_matrix(p: int) -> list[list[int]]:
    """Matrix of d/dt: column j (= t^j) has entry j at row j-1."""
    return [[(col % p) if row == col - 1 else 0 for col in range(p)] for row in range(p)]


def matrix_to_element(M: FreeAlgebra, rows: Sequence[Sequence[int]]) -> AlgElement:
    m = M.matrix_size
    return M.element({a * m + b: rows[a][b] for a in range(m) for b in range(m) if rows[a][b] % M.field.p})


@dataclass
class DiffopRepresentation:
    hom: AlgebraHom
    verdict: HomVerdict
    rank_of_image: int
    nilpotency_t: int
    nilpotency_d: int
    preimages: dict  # elementary matrix index -> coordinates in the t^a d^b basis

    def as_json(self) -> dict:
        return {
            "verdict": self.verdict.as_json(),
            "rank_of_image": self.rank_of_image,
            "surjective": self.rank_of_image == self.hom.target.rank,
            "injective": self.rank_of_image == self.hom.source.rank,
            "nilpotency_t": self.nilpotency_t,
            "nilpotency_d": self.nilpotency_d,
        }


def _nilpotency_index(M: FreeAlgebra, x: AlgElement, bound: int) -> int:
    y = x
    for k in range(1, bound + 2):
        if y.is_zero():
            return k
        y = y * x
    return -1


def diffop_representation(p: int) -> DiffopRepresentation:
    """t^a d^b -> (multiplication by t)^a (d/dt)^b on F_p[t]/(t^p)."""
    src = restricted_weyl_algebra(p)
    R = src.base
    M = matrix_algebra(p, R)
    T = matrix_to_element(M, multiplication_by_t(p))
    D = matrix_to_element(M, derivative_matrix(p))
    images = []
    for a, b in src.exponents:
        images.append((T**a) * (D**b))
    h = AlgebraHom(src, M, images, name="diffop")
    F = R.field
    coord_rows = [[im.coordinate(k).constant_coefficient() for k in range(M.rank)] for im in images]
    rank = rank_over_field(F, coord_rows)
    verdict = check_hom(h)
    # preimages of the elementary matrices: solve X * H = I over F_p
    preimages = _invert_over_field(F, coord_rows)
    return DiffopRepresentation(
        hom=h,
        verdict=verdict,
        rank_of_image=rank,
        nilpotency_t=_nilpotency_index(M, T, p),
        nilpotency_d=_nilpotency_index(M, D, p),
        preimages={k: {i: c for i, c in enumerate(row) if c} for k, row in enumerate(preimages)},
    )


def _invert_over_field(F, rows: Sequence[Sequence]) -> list[list]:
    n = len(rows)
    A = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not F.is_zero(A[r][c])), None)
        if piv is None:
            raise AlgebraError("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        inv = F.inv(A[c][c])
        A[c] = [F.mul(x, inv) for x in A[c]]
        for r in range(n):
            if r != c and not F.is_zero(A[r][c]):
                f = A[r][c]
                A[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[r], A[c])]
    inv = [row[n:] for row in A]
    # rows of `rows` are images of source basis; inverse maps target basis back:
    # target basis k = sum_i inv[k][i] * image_i
    return inv
