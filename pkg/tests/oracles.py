"""Independent oracles shared by several test modules."""

from collections import defaultdict

from weylbrauer import templates
from weylbrauer.azalg import tensor_over_R, weyl_structure_constants
from weylbrauer.brauer import _generator_index, embed_left, embed_right, omega_algebra, tensor_relations
from weylbrauer.envs import AlgebraEnv


def rewrite_words(p, n, words):
    """Naive oracle: words over generator indices -> PBW normal form.

    Repeatedly finds an adjacent out-of-order pair (b > a) and applies
    x_b x_a = x_a x_b + [x_b, x_a].  No use of the production multiplication.
    """
    todo = defaultdict(int)
    for w, c in words.items():
        todo[tuple(w)] += c
    done = defaultdict(int)
    while todo:
        w, c = todo.popitem()
        c %= p
        if not c:
            continue
        for k in range(len(w) - 1):
            b, a = w[k], w[k + 1]
            if b > a:
                todo[w[:k] + (a, b) + w[k + 2:]] += c
                # [x_b, x_a] = delta(b, a+n) - delta(b+n, a) with 1-based indices
                br = (1 if b == a + n else 0) - (1 if b + n == a else 0)
                if br:
                    todo[w[:k] + w[k + 2:]] += c * br
                break
        else:
            exps = [0] * (2 * n)
            for g in w:
                exps[g - 1] += 1
            done[tuple(exps)] = (done[tuple(exps)] + c) % p
    return {e: c for e, c in done.items() if c}


def expand_power(gens_sum, m):
    """All ordered words of (sum of generators)^m."""
    words = {(): 1}
    for _ in range(m):
        nxt = defaultdict(int)
        for w, c in words.items():
            for g in gens_sum:
                nxt[w + (g,)] += c
        words = nxt
    return words


def free_algebra_relations(p, n, c, cp, zt=templates.ZETA, at=templates.ALPHA):
    """Relations (a)-(e) evaluated in the structure-constant tensor product,
    independently of the A_2n bridge used in production."""
    A = weyl_structure_constants(p, n)
    T = tensor_over_R(omega_algebra(p, n, c, A), omega_algebra(p, n, cp, A))
    gens = {}
    for i in range(1, 2 * n + 1):
        gens[("x", i)] = embed_left(T, _generator_index(A, i))
        gens[("y", i)] = embed_right(T, _generator_index(A, i))
    env = AlgebraEnv(T, gens)
    zeta = [env.parse(templates.render(zt, i, n, c, cp)) for i in range(1, 2 * n + 1)]
    alpha = [env.parse(templates.render(at, i, n, c, cp)) for i in range(1, 2 * n + 1)]
    return tensor_relations(T, zeta, alpha, p, n, c, cp)
