"""Brauer classes of the omega-family and of quaternion algebras.

omega(c) is the automorphism of the affine space Spec Z_n(F_p) whose ring
map sends z_i to c^(-omega_i) z_i.  The classes [omega(c)_* A_n] add like
the parameters c, so they are handled symbolically; concrete algebras and
isomorphism certificates are built on demand.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from weylbrauer import templates
from weylbrauer.azalg import (
    AlgebraHom,
    AlgElement,
    FreeAlgebra,
    GeneratingSet,
    HomVerdict,
    azumaya_check,
    check_hom,
    diffop_representation,
    matrix_algebra,
    opposite,
    pure_tensor,
    pushforward,
    tensor_over_R,
    weyl_structure_constants,
)
from weylbrauer.envs import AlgebraEnv, TensorSquare
from weylbrauer.ring.automorphism import RingAutomorphism, scaling_automorphism
from weylbrauer.ring.fields import (
    QuadraticField,
    QuadraticFieldElement,
    RationalField,
    is_prime,
    isqrt_exact,
    real_embedding_signs,
)
from weylbrauer.ring.poly import PolyRing
from weylbrauer.ring.product import ProductRing
from weylbrauer.weyl import WeylContext, domain_certificate

MAX_CONCRETE_RANK = 625


class PreconditionError(ValueError):
    pass


class InfeasibleError(ValueError):
    pass


class UnsupportedComposition(ValueError):
    pass


# ---------------------------------------------------------------------------
# classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OmegaFamily:
    """[omega(c)_* A_n(F_p)]; c = 0 is the trivial class of M_{p^n}(Z_n)."""

    p: int
    n: int
    c: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise ValueError(f"p = {self.p} must be an odd prime")
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "c", self.c % self.p)

    @property
    def is_trivial(self) -> bool:
        return self.c == 0

    def label(self) -> str:
        if self.c == 0:
            return f"[M_{self.p}^{self.n}(Z)]"
        if self.c == 1:
            return f"[A_{self.n}(F_{self.p})]"
        return f"[omega({self.c})_*A_{self.n}(F_{self.p})]"


@dataclass(frozen=True)
class QuaternionClass:
    """[(a, b)_K] for K = Q (d = None) or Q(sqrt d)."""

    d: int | None
    a: object
    b: object

    @property
    def field(self):
        return RationalField() if self.d is None else QuadraticField(self.d)

    @property
    def is_trivial(self) -> bool:
        return evidently_split(self.field, self.a, self.b)

    def label(self) -> str:
        K = "Q" if self.d is None else f"Q(sqrt({self.d}))"
        return f"[({_fmt(self.a)}, {_fmt(self.b)})_{K}]"


BrauerClass = Union[OmegaFamily, QuaternionClass]


def _fmt(x) -> str:
    return repr(x) if isinstance(x, QuadraticFieldElement) else str(x)


def omega_class(p: int, n: int, c: int) -> OmegaFamily:
    return OmegaFamily(p, n, c)


def br_compose(b1: BrauerClass, b2: BrauerClass) -> BrauerClass:
    if isinstance(b1, OmegaFamily) and isinstance(b2, OmegaFamily):
        if (b1.p, b1.n) != (b2.p, b2.n):
            raise ValueError("classes over different bases")
        return OmegaFamily(b1.p, b1.n, b1.c + b2.c)
    if isinstance(b1, QuaternionClass) and isinstance(b2, QuaternionClass):
        if b1.d != b2.d:
            raise ValueError("quaternion classes over different fields")
        if b1.is_trivial:
            return b2
        if b2.is_trivial:
            return b1
        if (b1.a, b1.b) == (b2.a, b2.b):
            # a quaternion algebra is its own opposite (via conjugation)
            return trivial_quaternion(b1.d)
        raise UnsupportedComposition(f"{b1.label()} * {b2.label()} needs class-field arithmetic")
    raise ValueError("cannot compose classes of different families")


def br_inverse(b: BrauerClass) -> BrauerClass:
    if isinstance(b, OmegaFamily):
        return OmegaFamily(b.p, b.n, -b.c)
    return b


def class_order(b: BrauerClass) -> int:
    if not isinstance(b, OmegaFamily):
        raise TypeError("class_order is defined for the omega-family; use csa_conjugate_test for quaternions")
    return 1 if b.c == 0 else b.p


def trivial_quaternion(d: int | None) -> QuaternionClass:
    return QuaternionClass(d, 1, 1) if d is None else QuaternionClass(d, QuadraticField(d).one, QuadraticField(d).one)


# ---------------------------------------------------------------------------
# concrete algebras
# ---------------------------------------------------------------------------


def omega_automorphism(p: int, n: int, c: int) -> RingAutomorphism:
    """Ring map z_i -> c^(-omega_i) z_i of Z_n(F_p)."""
    ctx = WeylContext(p, n)
    c %= p
    if c == 0:
        raise PreconditionError("omega(0) is not an automorphism")
    cinv = pow(c, -1, p)
    scales = [pow(cinv, ctx.omega(i), p) for i in range(1, 2 * n + 1)]
    return scaling_automorphism(ProductRing([ctx.center]), scales, name=f"omega({c})")


def omega_algebra(p: int, n: int, c: int, A: FreeAlgebra | None = None) -> FreeAlgebra:
    """omega(c)_* A_n(F_p), or M_{p^n}(Z_n) for c = 0."""
    c %= p
    A = A if A is not None else weyl_structure_constants(p, n)
    if c == 0:
        return matrix_algebra(p**n, A.base)
    if c == 1:
        return A
    return pushforward(A, omega_automorphism(p, n, c), name=f"omega({c})_*A_{n}(F_{p})")


def _generator_index(A: FreeAlgebra, i: int) -> int:
    e = [0] * (2 * A.weyl.n)
    e[i - 1] = 1
    return A.exponents.index(tuple(e))


def embed_left(T: FreeAlgebra, k: int) -> AlgElement:
    """b_k (x) 1."""
    A, B = T.factors
    return pure_tensor(T, A.basis(k), B.one())


def embed_right(T: FreeAlgebra, k: int) -> AlgElement:
    """1 (x) b_k."""
    A, B = T.factors
    return pure_tensor(T, A.one(), B.basis(k))


def _ordered_power_products(gens, exps_list, one):
    """For each exponent tuple e, gens[0]^e_0 * gens[1]^e_1 * ..., with shared prefixes."""
    cache = {(): one}

    def prefix(e):
        if e not in cache:
            head = prefix(e[:-1])
            cache[e] = head * (gens[len(e) - 1] ** e[-1]) if e[-1] else head
        return cache[e]

    return [prefix(tuple(e)) for e in exps_list]


def _slot_matrix(p: int, n: int, slot: int, small) -> list[list[int]]:
    """I (x) ... (x) small (x) ... (x) I with ``small`` at tensor position ``slot`` (0-based)."""
    M = np.array([[1]], dtype=np.int64)
    for s in range(n):
        factor = np.array(small, dtype=np.int64) if s == slot else np.eye(p, dtype=np.int64)
        M = np.kron(M, factor)
    return (M % p).tolist()


def _matrix_element(Mat: FreeAlgebra, rows) -> AlgElement:
    m = Mat.matrix_size
    p = Mat.field.p
    return Mat.element({a * m + b: rows[a][b] % p for a in range(m) for b in range(m) if rows[a][b] % p})


@dataclass
class IsoCertificate:
    claim: str
    source: FreeAlgebra
    target: FreeAlgebra
    hom: AlgebraHom
    relations: list
    verdict: HomVerdict
    templates: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return (
            self.verdict.is_hom
            and bool(self.verdict.is_iso)
            and all(r["holds"] for r in self.relations)
            and all(v.get("passed", True) for v in self.extras.values() if isinstance(v, dict))
        )

    def as_json(self) -> dict:
        return {
            "claim": self.claim,
            "source": self.source.name,
            "target": self.target.name,
            "rank": self.source.rank,
            "relations_checked": len(self.relations),
            "relation_failures": [r for r in self.relations if not r["holds"]][:5],
            "verdict": self.verdict.as_json(),
            "templates": self.templates,
            "extras": self.extras,
            "passed": self.passed,
        }


def tensor_relations(T: FreeAlgebra, zeta, alpha, p: int, n: int, c: int, cp: int) -> list[dict]:
    """Relations (a)-(e) for the zeta/alpha generators inside T."""
    ctx = WeylContext(p, n)
    Z = T.base
    out = []
    for i in range(1, 2 * n + 1):
        for j in range(1, 2 * n + 1):
            d = ctx.bracket(i, j)
            zi, zj, ai, aj = zeta[i - 1], zeta[j - 1], alpha[i - 1], alpha[j - 1]
            out.append({"rel": "a", "i": i, "j": j, "holds": zi * zj - zj * zi == T.scalar(d)})
            out.append({"rel": "b", "i": i, "j": j, "holds": (zi * aj - aj * zi).is_zero()})
            out.append({"rel": "c", "i": i, "j": j, "holds": ai * aj - aj * ai == T.scalar(d)})
        w = ctx.omega(i)
        rhs = T.scalar(Z.gen(i - 1).scale(pow(c + cp, w, p)))
        out.append({"rel": "d", "i": i, "holds": zeta[i - 1] ** p == rhs})
        out.append({"rel": "e", "i": i, "holds": (alpha[i - 1] ** p).is_zero()})
    return out


def tensor_square_relations(
    p: int,
    n: int,
    c: int = 1,
    cprime: int = 1,
    zeta_template: str = templates.ZETA,
    alpha_template: str = templates.ALPHA,
) -> list[dict]:
    """Relations (a)-(e) evaluated through the A_2n(F_p) model of the tensor square.

    Works at any (p, n) since nothing of rank p^(4n) is materialised.
    """
    ts = TensorSquare(p, n, c, cprime)
    c, cprime = ts.c, ts.cprime
    if (c + cprime) % p == 0:
        raise PreconditionError("c + c' = 0: zeta is undefined")
    ngen = 2 * n
    zeta = [ts.parse(templates.render(zeta_template, i, n, c, cprime)) for i in range(1, ngen + 1)]
    alpha = [ts.parse(templates.render(alpha_template, i, n, c, cprime)) for i in range(1, ngen + 1)]
    ctx = ts.base
    out = []
    for i in range(1, ngen + 1):
        for j in range(1, ngen + 1):
            d = ts.scalar(ctx.bracket(i, j))
            zi, zj, ai, aj = zeta[i - 1], zeta[j - 1], alpha[i - 1], alpha[j - 1]
            out.append({"rel": "a", "i": i, "j": j, "holds": ts.equal(zi * zj - zj * zi, d)})
            out.append({"rel": "b", "i": i, "j": j, "holds": ts.equal(zi * aj - aj * zi, ts.scalar(0))})
            out.append({"rel": "c", "i": i, "j": j, "holds": ts.equal(ai * aj - aj * ai, d)})
        rhs = ctx.center.gen(i - 1).scale(pow(c + cprime, ctx.omega(i), p))
        out.append({"rel": "d", "i": i, "holds": ts.is_central_value(zeta[i - 1] ** p, rhs)})
        out.append({"rel": "e", "i": i, "holds": not ts.reduce(alpha[i - 1] ** p)})
    return out


def verify_group_law_concretely(
    p: int,
    n: int,
    c: int,
    cprime: int,
    iso_method: str = "auto",
    hom_method: str = "auto",
    zeta_template: str = templates.ZETA,
    alpha_template: str = templates.ALPHA,
) -> IsoCertificate:
    """Certificate for omega(c)_*A (x) omega(c')_*A = omega(c+c')_*A (x) M_{p^n}(Z).

    ``iso_method``: "determinant", "inverse" or "auto" (determinant when the
    rank is at most 81, else the explicit inverse).  ``hom_method``: "pairs"
    or "generators" or "auto" (pairs up to rank 81).
    """
    t0 = time.monotonic()
    if p == 2 or not is_prime(p):
        raise ValueError(f"p = {p} must be an odd prime")
    c %= p
    cprime %= p
    if c == 0 or cprime == 0:
        raise PreconditionError("c and c' must be nonzero; omega(0) is only the formal identity class")
    if (c + cprime) % p == 0:
        raise PreconditionError("c + c' = 0: use verify_opposite_iso (omega(-1)_*A is the opposite algebra)")
    rank = p ** (4 * n)
    if rank > MAX_CONCRETE_RANK:
        raise InfeasibleError(f"rank p^(4n) = {rank} exceeds the concrete limit {MAX_CONCRETE_RANK}")
    s = (c + cprime) % p
    A = weyl_structure_constants(p, n)
    A.verify()
    Ac, Acp, As = (omega_algebra(p, n, t, A) for t in (c, cprime, s))
    m = p**n
    Mat = matrix_algebra(m, A.base)
    T = tensor_over_R(Ac, Acp, name=f"omega({c})_*A (x) omega({cprime})_*A")
    S = tensor_over_R(As, Mat, name=f"omega({s})_*A (x) M_{m}")
    ngen = 2 * n

    # zeta and alpha from the templates, evaluated in T
    tgens = {}
    for i in range(1, ngen + 1):
        gi = _generator_index(A, i)
        tgens[("x", i)] = embed_left(T, gi)
        tgens[("y", i)] = embed_right(T, gi)
    env_t = AlgebraEnv(T, tgens)
    rendered = {
        "zeta": [templates.render(zeta_template, i, n, c, cprime) for i in range(1, ngen + 1)],
        "alpha": [templates.render(alpha_template, i, n, c, cprime) for i in range(1, ngen + 1)],
    }
    zeta = [env_t.parse(s_) for s_ in rendered["zeta"]]
    alpha = [env_t.parse(s_) for s_ in rendered["alpha"]]
    relations = tensor_relations(T, zeta, alpha, p, n, c, cprime)

    # matrix units in terms of alpha, via the differential-operator representation
    diffop = diffop_representation(p)
    restricted_exps = diffop.hom.source.exponents  # (a, b) = t^a d^b
    zeta_powers = _ordered_power_products(zeta, A.exponents, T.one())

    def alpha_word(i, a, b):
        return (alpha[i - 1] ** a) * (alpha[i + n - 1] ** b)

    slot_units = []  # slot_units[i][k] = image of E_k (k = a*p + b) of the i-th M_p factor
    for i in range(1, n + 1):
        words = {(a, b): alpha_word(i, a, b) for (a, b) in restricted_exps}
        units = []
        for k in range(p * p):
            total = T.zero()
            for idx, coeff in diffop.preimages[k].items():
                total = total + words[restricted_exps[idx]] * coeff
            units.append(total)
        slot_units.append(units)

    def matrix_unit_image(K: int):
        # K = row * m + col, row/col written in base p with slot 0 most significant
        row, col = divmod(K, m)
        rdig = _digits(row, p, n)
        cdig = _digits(col, p, n)
        img = T.one()
        for i in range(n):
            img = img * slot_units[i][rdig[i] * p + cdig[i]]
        return img

    unit_images = [matrix_unit_image(K) for K in range(m * m)]
    images = []
    for kA in range(As.rank):
        for K in range(Mat.rank):
            images.append(zeta_powers[kA] * unit_images[K])
    h = AlgebraHom(S, T, images, name="zeta-alpha")

    # generating set of S: x_i (x) 1 and the slot matrices for t and d/dt
    from weylbrauer.azalg import derivative_matrix, multiplication_by_t

    sgens = []
    for i in range(1, ngen + 1):
        sgens.append(embed_left(S, _generator_index(A, i)))
    tmat = multiplication_by_t(p)
    dmat = derivative_matrix(p)
    for i in range(n):
        sgens.append(_right_matrix(S, Mat, _slot_matrix(p, n, i, tmat)))
    for i in range(n):
        sgens.append(_right_matrix(S, Mat, _slot_matrix(p, n, i, dmat)))
    gen_words = _generator_words(A, Mat, diffop, p, n)
    gset = GeneratingSet(sgens, gen_words)

    if hom_method == "auto":
        hom_method = "pairs" if S.rank <= 81 else "generators"
    if iso_method == "auto":
        iso_method = "determinant" if S.rank <= 81 else "inverse"
    inverse = None
    if iso_method == "inverse":
        inverse = _inverse_hom(S, T, sgens, A, p, n, c, cprime)
    verdict = check_hom(
        h,
        generators=gset if hom_method == "generators" else None,
        inverse=inverse,
    )
    extras = {
        "diffop": dict(diffop.as_json(), passed=bool(diffop.verdict.is_iso) and diffop.rank_of_image == p * p),
        "relations_summary": _relation_summary(relations),
        "methods": {"hom": hom_method, "iso": iso_method},
    }
    return IsoCertificate(
        claim=f"omega({c})_*A_{n} (x) omega({cprime})_*A_{n} = omega({s})_*A_{n} (x) M_{m}(Z) over Z_{n}(F_{p})",
        source=S,
        target=T,
        hom=h,
        relations=relations,
        verdict=verdict,
        templates={"zeta": zeta_template, "alpha": alpha_template, "rendered": rendered},
        extras=extras,
        seconds=time.monotonic() - t0,
    )


def _relation_summary(relations: list[dict]) -> dict:
    out: dict = {}
    for r in relations:
        entry = out.setdefault(r["rel"], {"checked": 0, "failed": 0})
        entry["checked"] += 1
        entry["failed"] += 0 if r["holds"] else 1
    return out


def _digits(x: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        x, r = divmod(x, p)
        out.append(r)
    return out[::-1]


def _right_matrix(S: FreeAlgebra, Mat: FreeAlgebra, rows) -> AlgElement:
    """1 (x) (matrix) inside S = X (x) Mat."""
    out = S.zero()
    for K, coeff in _matrix_element(Mat, rows).coordinates().items():
        out = out + embed_right(S, K).scale(coeff)
    return out


def _generator_words(A: FreeAlgebra, Mat: FreeAlgebra, diffop, p: int, n: int) -> dict:
    """Each basis element x^e (x) E_RC as a combination of right-nested generator words.

    Generator numbering: 0..2n-1 are x_i (x) 1, then n slot matrices for t,
    then n slot matrices for d/dt.
    """
    ngen = 2 * n
    m = Mat.matrix_size
    restricted_exps = diffop.hom.source.exponents
    words = {}
    for kA, e in enumerate(A.exponents):
        xword = tuple(g for g in range(ngen) for _ in range(e[g]))
        for K in range(Mat.rank):
            row, col = divmod(K, m)
            rdig, cdig = _digits(row, p, n), _digits(col, p, n)
            per_slot = []
            for i in range(n):
                terms = []
                for idx, coeff in diffop.preimages[rdig[i] * p + cdig[i]].items():
                    a, b = restricted_exps[idx]
                    terms.append((coeff, (ngen + i,) * a + (ngen + n + i,) * b))
                per_slot.append(terms)
            combo = []
            for choice in itertools.product(*per_slot):
                coeff = 1
                word = xword
                for cf, w in choice:
                    coeff = coeff * cf % p
                    word = word + w
                combo.append((coeff, word))
            words[kA * Mat.rank + K] = combo
    return words


def _inverse_hom(S: FreeAlgebra, T: FreeAlgebra, sgens, A: FreeAlgebra, p: int, n: int, c: int, cp: int) -> AlgebraHom:
    """The map T -> S sending x_i, y_i to the inverse-template expressions."""
    ngen = 2 * n
    # alpha_i corresponds to t in slot i (i <= n) and to d/dt in slot i - n
    env = AlgebraEnv(S, {**{("x", i): sgens[i - 1] for i in range(1, ngen + 1)},
                         **{("y", i): sgens[ngen + i - 1] for i in range(1, ngen + 1)}})
    X = [env.parse(templates.render(templates.X_FROM_ZETA_ALPHA, i, n, c, cp)) for i in range(1, ngen + 1)]
    Y = [env.parse(templates.render(templates.Y_FROM_ZETA_ALPHA, i, n, c, cp)) for i in range(1, ngen + 1)]
    xs = _ordered_power_products(X, A.exponents, S.one())
    ys = _ordered_power_products(Y, A.exponents, S.one())
    images = [xs[i] * ys[j] for i in range(A.rank) for j in range(A.rank)]
    return AlgebraHom(T, S, images, name="inverse")


def verify_opposite_iso(p: int, n: int, template: str = templates.OPPOSITE_IMAGE) -> IsoCertificate:
    """omega(-1)_*A_n(F_p) -> A_n(F_p)^op, x_i -> (-1)^omega_i x_i."""
    t0 = time.monotonic()
    A = weyl_structure_constants(p, n)
    src = omega_algebra(p, n, -1, A)
    tgt = opposite(A)
    ngen = 2 * n
    env = AlgebraEnv(tgt, {("x", i): tgt.basis(_generator_index(A, i)) for i in range(1, ngen + 1)})
    rendered = [templates.render(template, i, n) for i in range(1, ngen + 1)]
    gens = [env.parse(s) for s in rendered]
    images = _ordered_power_products(gens, A.exponents, tgt.one())
    h = AlgebraHom(src, tgt, images, name="sign")
    verdict = check_hom(h)
    if not verdict.is_hom:
        verdict.is_iso = None
    relations = []
    ctx = WeylContext(p, n)
    for i in range(1, ngen + 1):
        for j in range(1, ngen + 1):
            gi, gj = gens[i - 1], gens[j - 1]
            relations.append({"rel": "bracket", "i": i, "j": j, "holds": gi * gj - gj * gi == tgt.scalar(ctx.bracket(i, j))})
        src_power = src.basis(_generator_index(A, i)) ** p
        relations.append({"rel": "pth-power", "i": i, "holds": h.apply(src_power) == gens[i - 1] ** p})
    return IsoCertificate(
        claim=f"omega(-1)_*A_{n}(F_{p}) = A_{n}(F_{p})^op",
        source=src,
        target=tgt,
        hom=h,
        relations=relations,
        verdict=verdict,
        templates={"image": template, "rendered": rendered},
        seconds=time.monotonic() - t0,
    )


# ---------------------------------------------------------------------------
# nontriviality
# ---------------------------------------------------------------------------


def nontriviality_chain(p: int, n: int, c: int, trials: int = 1000, seed: int = 0) -> dict:
    """Why [omega(c)_*A_n] != 1 for c != 0: a checked premise plus a recorded argument."""
    c %= p
    if c == 0:
        raise PreconditionError("c = 0 is the trivial class")
    ctx = WeylContext(p, n)
    premise = domain_certificate(ctx, trials=trials, seed=seed)
    return {
        "class": OmegaFamily(p, n, c).label(),
        "premise": {
            "statement": "A_n(F_p) is a domain: LT(fg) = LT(f)LT(g) on random nonzero pairs",
            "machine_checked": True,
            **premise,
        },
        "deduction": [
            "pushforward along omega(c) changes only the central action, so omega(c)_*A_n is the same ring and still a domain",
            "if the class were trivial, Morita theory would give omega(c)_*A_n = End(V) for a vector bundle V over Z_n",
            "after localising, End(V) is a matrix algebra of size p^n > 1 and has nonzero nilpotents",
            "a domain has no nonzero nilpotents, contradiction",
        ],
        "deduction_recomputed": False,
        "conclusion": f"[omega({c})_*A_{n}(F_{p})] is not the trivial class",
    }


# ---------------------------------------------------------------------------
# quaternion algebras over Q and Q(sqrt d)
# ---------------------------------------------------------------------------


def _coerce_field(K):
    if K is None or isinstance(K, RationalField):
        return RationalField()
    if isinstance(K, int):
        return QuadraticField(K)
    return K


def quaternion(a, b, K=None) -> FreeAlgebra:
    """(a, b)_K = K<i, j>/(i^2 = a, j^2 = b, ij = -ji) on the basis 1, i, j, ij."""
    K = _coerce_field(K)
    a, b = K.coerce(a), K.coerce(b)
    if K.is_zero(a) or K.is_zero(b):
        raise ValueError("quaternion parameters must be nonzero")
    R = PolyRing(K, 0)
    one = K.one
    neg = K.neg
    ab = K.mul(a, b)
    # basis 0 = 1, 1 = i, 2 = j, 3 = ij
    table = {
        (1, 1): {0: a},
        (1, 2): {3: one},
        (1, 3): {2: a},
        (2, 1): {3: neg(one)},
        (2, 2): {0: b},
        (2, 3): {1: neg(b)},
        (3, 1): {2: neg(a)},
        (3, 2): {1: b},
        (3, 3): {0: neg(ab)},
    }
    consts = {}
    for k in range(4):
        consts[(0, k)] = {k: R.one()}
        consts[(k, 0)] = {k: R.one()}
    for ij, v in table.items():
        consts[ij] = {k: R.constant(x) for k, x in v.items()}
    name = f"({_fmt(a)}, {_fmt(b)})"
    return FreeAlgebra(R, 4, consts, {0: R.one()}, ["1", "i", "j", "ij"], name=name)


def rational_sqrt(x: Fraction) -> Fraction | None:
    x = Fraction(x)
    if x < 0:
        return None
    num, den = isqrt_exact(x.numerator), isqrt_exact(x.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def field_sqrt(K, x):
    """A square root of x in K, or None."""
    if isinstance(K, RationalField):
        return rational_sqrt(x)
    x = K.coerce(x)
    if x.b == 0:
        r = rational_sqrt(x.a)
        if r is not None:
            return K.coerce(r)
        r = rational_sqrt(Fraction(x.a) / K.d)
        return QuadraticFieldElement(0, r, K.d) if r is not None else None
    # (s + t sqrt d)^2 = s^2 + d t^2 + 2 s t sqrt d
    norm = rational_sqrt(x.norm())
    if norm is None:
        return None
    for cand in ((x.a + norm) / 2, (x.a - norm) / 2):
        s = rational_sqrt(cand)
        if s:
            t = Fraction(x.b) / (2 * s)
            root = QuadraticFieldElement(s, t, K.d)
            if root * root == x:
                return root
    return None


def evidently_split(K, a, b) -> bool:
    """Sufficient conditions for (a, b)_K to be split: a or b a square, a + b = 1, or a = -b."""
    K = _coerce_field(K)
    a, b = K.coerce(a), K.coerce(b)
    if field_sqrt(K, a) is not None or field_sqrt(K, b) is not None:
        return True
    if K.add(a, b) == K.one or K.is_zero(K.add(a, b)):
        return True
    return False


def is_sum_of_two_squares_witness(K: QuadraticField, x):
    """Search small (u, v) with u^2 + v^2 = x among integers and integer multiples of sqrt d."""
    x = K.coerce(x)
    ints = [K.coerce(k) for k in (0, 1, -1, 2, -2, 3, -3)]
    roots = [QuadraticFieldElement(0, k, K.d) for k in (1, -1)]
    # integer pairs first, so 2 = 1^2 + 1^2 is reported rather than 0^2 + sqrt(2)^2
    for us, vs in ((ints, ints), (ints + roots, ints + roots)):
        for u in us:
            for v in vs:
                if u * u + v * v == x:
                    return (u, v)
    return None


def sum_of_squares_signs_refute(K: QuadraticField, x) -> dict:
    """-1-type refutation: a sum of squares is >= 0 under every real embedding."""
    signs = real_embedding_signs(K.coerce(x))
    negative = [k for k, s in enumerate(signs) if s < 0]
    return {"value": repr(K.coerce(x)), "embedding_signs": list(signs), "refuted": bool(negative)}


def field_automorphisms_qsqrt(d: int) -> dict:
    """Aut(Q(sqrt d)) = {id, sigma}, with each map checked on the generator."""
    K = QuadraticField(d)
    r = K.sqrt
    maps = {"id": lambda x: x, "sigma": lambda x: x.conjugate()}
    checks = {}
    for name, f in maps.items():
        img = f(r)
        checks[name] = {"sqrt_image": repr(img), "respects_relation": img * img == K.coerce(d)}
    # composition table by evaluating on sqrt(d)
    labels = list(maps)
    table = []
    for g in labels:
        row = []
        for h in labels:
            img = maps[g](maps[h](r))
            row.append(next(lbl for lbl in labels if maps[lbl](r) == img))
        table.append(row)
    return {"labels": labels, "table": table, "checks": checks}


def csa_conjugate_test(d: int = 2) -> dict:
    """Is sigma_*A = A for A = (-1, -sqrt d) and the nontrivial sigma of Q(sqrt d)?

    sigma_*A = (-1, sqrt d) and A (x) sigma_*A ~ (-1, -d) = (-1, -1), as d
    is a square in K.  That class splits iff -1 is a sum of two squares in
    K.  The real embedding signs of -1 refute that, so sigma_*A is not A and
    Out(A) = 1.
    """
    K = QuadraticField(d)
    r = K.sqrt
    A = quaternion(-1, -r, K)
    sA = quaternion(-1, r, K)
    azA = azumaya_check(A)
    azS = azumaya_check(sA)
    d_is_square = field_sqrt(K, K.coerce(d))
    minus_one = sum_of_squares_signs_refute(K, -1)
    two = is_sum_of_two_squares_witness(K, 2)
    isomorphic = not minus_one["refuted"]
    return {
        "algebra": A.name,
        "conjugate": sA.name,
        "azumaya": {"A": azA.is_azumaya, "sigma_A": azS.is_azumaya},
        "product_class": f"(-1, -{d}) = (-1, -1) since {d} = ({d_is_square!r})^2",
        "minus_one_sum_of_two_squares": not minus_one["refuted"],
        "minus_one_refutation": minus_one,
        "two_as_sum_of_squares": [repr(x) for x in two] if two else None,
        "sigma_A_isomorphic_to_A": isomorphic,
        "out_A_trivial": not isomorphic,
    }
