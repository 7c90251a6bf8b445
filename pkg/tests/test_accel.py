import os
import random
import subprocess
import sys

import pytest

from weylbrauer._accel import HAVE_NUMBA
from weylbrauer.azalg import tensor_over_R, weyl_structure_constants
from weylbrauer.ring.matrix import PolyMatrix, det_bareiss, det_grid
from weylbrauer.ring.poly import MultiPoly, poly_ring_fp

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not importable or disabled")


def random_matrix(size, seed):
    R = poly_ring_fp(3, 2)
    rng = random.Random(seed)
    monos = [(0, 0), (1, 0), (0, 1), (1, 1)]
    return PolyMatrix(R, [[MultiPoly(R, {e: rng.randrange(3) for e in monos}) for _ in range(size)] for _ in range(size)])


@pytest.mark.parametrize("seed", range(4))
def test_det_backends_agree(seed):
    M = random_matrix(8, seed)
    expected = det_bareiss(M)
    assert det_grid(M, backend="numpy") == expected
    if HAVE_NUMBA:
        assert det_grid(M, backend="numba") == expected


@needs_numba
def test_associativity_backends_agree():
    A = weyl_structure_constants(3, 1)
    T = tensor_over_R(A, A)
    rows = list(range(0, 81, 7))
    assert T.associativity_defects(rows, backend="numba") == T.associativity_defects(rows, backend="numpy") == (0, [])


def test_associativity_backends_find_the_same_defects():
    from weylbrauer.azalg import FreeAlgebra
    from weylbrauer.ring.fields import PrimeField
    from weylbrauer.ring.poly import PolyRing

    F = PolyRing(PrimeField(3), 0)
    one = F.one()
    consts = {(0, k): {k: one} for k in range(3)} | {(k, 0): {k: one} for k in range(3)}
    bad = FreeAlgebra(F, 3, consts | {(1, 1): {2: one}, (2, 1): {0: one}}, {0: one}, ["1", "u", "v"])
    np_result = bad.associativity_defects(backend="numpy")
    assert np_result[0] > 0
    if HAVE_NUMBA:
        assert bad.associativity_defects(backend="numba") == np_result


def test_disable_flag_selects_numpy():
    env = dict(os.environ, WEYLBRAUER_DISABLE_NUMBA="1")
    code = "from weylbrauer._accel import use_numba; print(use_numba())"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "False"
