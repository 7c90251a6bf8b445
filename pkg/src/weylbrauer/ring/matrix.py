"""Matrices over F[z1, ..., zm] and their exact determinants.

Two independent determinant routes are provided:

* ``bareiss``: fraction-free elimination over the polynomial ring, with
  full pivoting that prefers constant (unit) pivots so entry degrees grow
  additively rather than multiplicatively;
* ``grid``: evaluation on a tensor grid of points in GF(p^k) (or in the
  field itself for characteristic 0) whose side exceeds an a-priori degree
  bound, followed by either a constancy assertion or tensor interpolation.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from weylbrauer import kernels
from weylbrauer.ring.fields import PrimeField
from weylbrauer.ring.gf import GaloisField, galois_field, smallest_extension
from weylbrauer.ring.poly import MultiPoly, PolyRing, is_unit

__all__ = [
    "PolyMatrix",
    "DetReport",
    "GridTooSmallError",
    "BudgetExceeded",
    "poly_det",
    "det_report",
    "is_unit",
    "rank_over_field",
]

# grids larger than this many points are a configuration error
MAX_GRID_POINTS = 3_000_000


class GridTooSmallError(ValueError):
    """The evaluation grid cannot cover the degree bound."""


class BudgetExceeded(RuntimeError):
    pass


class PolyMatrix:
    def __init__(self, ring: PolyRing, rows: Sequence[Sequence]):
        self.ring = ring
        self.entries = tuple(tuple(ring(x) for x in row) for row in rows)
        self.nrows = len(self.entries)
        self.ncols = len(self.entries[0]) if self.entries else 0
        if any(len(row) != self.ncols for row in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> PolyMatrix:
        return cls(ring, [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring: PolyRing, nrows: int, ncols: int) -> PolyMatrix:
        return cls(ring, [[ring.zero()] * ncols for _ in range(nrows)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def transpose(self) -> PolyMatrix:
        return PolyMatrix(self.ring, list(zip(*self.entries)))

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        R = self.ring
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            new_row = []
            for col in cols:
                acc = R.zero()
                for a, b in zip(row, col):
                    if a.terms and b.terms:
                        acc = acc + a * b
                new_row.append(acc)
            out.append(new_row)
        return PolyMatrix(R, out)

    def max_entry_degree(self) -> int:
        return max((f.total_degree() for row in self.entries for f in row), default=-1)

    def nonzero_count(self) -> int:
        return sum(1 for row in self.entries for f in row if f.terms)

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols} over {self.ring.names})"


@dataclass
class DetReport:
    value: MultiPoly | None
    strategies: dict = field(default_factory=dict)
    degree_bound: int | None = None
    grid_field: str | None = None
    grid_points: int = 0
    agree: bool | None = None
    seconds: dict = field(default_factory=dict)

    def ran(self) -> list[str]:
        return [k for k, v in self.strategies.items() if isinstance(v, MultiPoly)]

    def as_json(self) -> dict:
        return {
            "value": None if self.value is None else str(self.value),
            "strategies": {k: str(v) for k, v in self.strategies.items()},
            "degree_bound": self.degree_bound,
            "grid_field": self.grid_field,
            "grid_points": self.grid_points,
            "agree": self.agree,
        }


# ---------------------------------------------------------------------------
# strategy (i): fraction-free elimination
# ---------------------------------------------------------------------------


def _pivot_cost(f: MultiPoly):
    return (0 if f.is_constant() else 1, f.total_degree(), len(f.terms))


def det_bareiss(M: PolyMatrix, deadline: float | None = None) -> MultiPoly:
    if not M.is_square:
        raise ValueError("determinant of a non-square matrix")
    R = M.ring
    n = M.nrows
    if n == 0:
        return R.one()
    A = [list(row) for row in M.entries]
    sign = 1
    prev = R.one()
    for k in range(n):
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded(f"fraction-free elimination stopped at step {k}/{n}")
        best = None
        for i in range(k, n):
            row = A[i]
            for j in range(k, n):
                f = row[j]
                if f.terms:
                    cost = _pivot_cost(f)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                        if cost[0] == 0:
                            break
            if best is not None and best[0][0] == 0:
                break
        if best is None:
            return R.zero()
        _, pi, pj = best
        if pi != k:
            A[k], A[pi] = A[pi], A[k]
            sign = -sign
        if pj != k:
            for row in A:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        piv = A[k][k]
        pivot_row = A[k]
        const_prev = prev.is_constant()
        prev_inv = R.field.inv(prev.constant_coefficient()) if const_prev else None
        for i in range(k + 1, n):
            row = A[i]
            lead = row[k]
            for j in range(k + 1, n):
                if lead.terms and pivot_row[j].terms:
                    num = piv * row[j] - lead * pivot_row[j]
                elif row[j].terms:
                    num = piv * row[j]
                else:
                    continue
                row[j] = num.scale(prev_inv) if const_prev else num.exact_div(prev)
            row[k] = R.zero()
        prev = piv
    det = A[n - 1][n - 1]
    return det if sign == 1 else -det


# ---------------------------------------------------------------------------
# strategy (ii): evaluation grid
# ---------------------------------------------------------------------------


def degree_bound(M: PolyMatrix, mode: str = "conservative") -> int:
    """A-priori bound on the total degree of det(M).

    ``conservative``: dimension times the largest entry total degree.
    ``column``: sum over columns of the largest total degree in the column.
    """
    if mode == "conservative":
        return M.nrows * max(0, M.max_entry_degree())
    if mode == "column":
        return sum(
            max(0, max(M.entries[i][j].total_degree() for i in range(M.nrows)))
            for j in range(M.ncols)
        )
    raise ValueError(f"unknown degree-bound mode {mode!r}")


def _field_det(F, rows: list[list]):
    """Gaussian elimination with division over an exact field (raw values)."""
    n = len(rows)
    A = [list(r) for r in rows]
    det = F.one
    for c in range(n):
        piv = next((r for r in range(c, n) if not F.is_zero(A[r][c])), None)
        if piv is None:
            return F.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = F.neg(det)
        p = A[c][c]
        det = F.mul(det, p)
        pinv = F.inv(p)
        for r in range(c + 1, n):
            a = A[r][c]
            if F.is_zero(a):
                continue
            f = F.mul(a, pinv)
            rowc, rowr = A[c], A[r]
            for j in range(c + 1, n):
                if not F.is_zero(rowc[j]):
                    rowr[j] = F.sub(rowr[j], F.mul(f, rowc[j]))
    return det


def _newton_coefficients(F, xs, ys):
    """Monomial coefficients of the interpolating polynomial through (xs, ys)."""
    n = len(xs)
    dd = list(ys)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dd[i] = F.div(F.sub(dd[i], dd[i - 1]), F.sub(xs[i], xs[i - level]))
    coeffs = [F.zero] * n
    # Horner expansion of the Newton form
    for i in range(n - 1, -1, -1):
        new = [F.zero] * n
        for d in range(n - 1):
            if not F.is_zero(coeffs[d]):
                new[d + 1] = F.add(new[d + 1], coeffs[d])
                new[d] = F.sub(new[d], F.mul(coeffs[d], xs[i]))
        new[0] = F.add(new[0], dd[i])
        coeffs = new
    return coeffs


def _interpolate_tensor(F, axis_points: Sequence, values: dict, m: int) -> dict:
    """Interpolate values on ``axis_points``^m; returns {exponent tuple: coeff}."""
    if m == 0:
        return {(): values[()]}
    side = len(axis_points)
    # interpolate along the last variable for every prefix
    partial: dict = {}
    for prefix in itertools.product(range(side), repeat=m - 1):
        ys = [values[prefix + (i,)] for i in range(side)]
        cs = _newton_coefficients(F, axis_points, ys)
        for d, c in enumerate(cs):
            partial.setdefault(d, {})[prefix] = c
    out = {}
    for d, sub in partial.items():
        inner = _interpolate_tensor(F, axis_points, sub, m - 1)
        for e, c in inner.items():
            if not F.is_zero(c):
                out[e + (d,)] = c
    return out


def _entry_terms(M: PolyMatrix, gf: GaloisField):
    m = M.ring.nvars
    ptr = [0]
    clog, exps = [], []
    for row in M.entries:
        for f in row:
            for e, c in f.terms.items():
                clog.append(gf.log(gf.from_prime(c)))
                exps.append(e)
            ptr.append(len(clog))
    exps_arr = np.array(exps, dtype=np.int64).reshape(len(clog), m)
    return np.array(ptr), np.array(clog, dtype=np.int64), exps_arr


def det_grid(
    M: PolyMatrix,
    bound_mode: str = "conservative",
    extension_degree: int | None = None,
    backend: str | None = None,
    report: DetReport | None = None,
) -> MultiPoly:
    if not M.is_square:
        raise ValueError("determinant of a non-square matrix")
    R = M.ring
    F = R.field
    n, m = M.nrows, R.nvars
    if n == 0:
        return R.one()
    D = degree_bound(M, bound_mode)
    side = D + 1 if m else 1
    npoints = side**m
    if report is not None:
        report.degree_bound = D
        report.grid_points = npoints
    if npoints > MAX_GRID_POINTS:
        raise GridTooSmallError(
            f"degree bound {D} in {m} variables needs {npoints} grid points (limit {MAX_GRID_POINTS})"
        )
    if isinstance(F, PrimeField):
        if extension_degree is not None:
            gf = galois_field(F.p, extension_degree)
            if gf.q - 1 < side:
                raise GridTooSmallError(
                    f"GF({F.p}^{extension_degree}) has {gf.q - 1} nonzero points, need {side}"
                )
        else:
            try:
                gf = smallest_extension(F.p, side)
            except ValueError as exc:
                raise GridTooSmallError(str(exc)) from exc
        if report is not None:
            report.grid_field = f"GF({F.p}^{gf.k})"
        ptr, clog, exps = _entry_terms(M, gf)
        axis_logs = np.arange(side, dtype=np.int64)
        if m:
            grid = np.array(list(itertools.product(range(side), repeat=m)), dtype=np.int64)
        else:
            grid = np.zeros((1, 0), dtype=np.int64)
        logs = kernels.det_grid(ptr, clog, exps, grid, n, gf.zech_table, gf.q - 1, gf.neg_one_log, backend)
        values_enc = [gf.element_from_log(int(l)) for l in logs]
        if all(v == values_enc[0] for v in values_enc):
            c = values_enc[0]
            if not gf.in_prime_field(c):
                raise ArithmeticError("constant determinant outside the prime field")
            return R.constant(c)
        axis_points = [gf.element_from_log(int(l)) for l in axis_logs]
        vals = {tuple(int(x) for x in pt): v for pt, v in zip(grid, values_enc)}
        gf_ops = _GFOps(gf)
        coeffs = _interpolate_tensor(gf_ops, axis_points, vals, m)
        terms = {}
        for e, c in coeffs.items():
            if not gf.in_prime_field(c):
                raise ArithmeticError("interpolated coefficient outside the prime field")
            terms[e] = c
        return MultiPoly(R, terms)
    # characteristic 0: the field is infinite, evaluate at small integers
    if report is not None:
        report.grid_field = repr(F)
    axis_points = [F.coerce(i) for i in range(side)]
    vals = {}
    for idx in itertools.product(range(side), repeat=m):
        pt = [axis_points[i] for i in idx]
        rows = [[f.evaluate(pt) for f in row] for row in M.entries]
        vals[idx] = _field_det(F, rows)
    if all(v == vals[next(iter(vals))] for v in vals.values()):
        return R.constant(next(iter(vals.values())))
    return MultiPoly(R, _interpolate_tensor(F, axis_points, vals, m))


class _GFOps:
    """Field-protocol adapter for GaloisField in interpolation code."""

    def __init__(self, gf: GaloisField):
        self.gf = gf
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return self.gf.add(a, b)

    def sub(self, a, b):
        return self.gf.sub(a, b)

    def mul(self, a, b):
        return self.gf.mul(a, b)

    def div(self, a, b):
        return self.gf.div(a, b)

    def is_zero(self, a):
        return a == 0


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------


def det_report(
    M: PolyMatrix,
    strategies: Sequence[str] = ("bareiss", "grid"),
    budget_seconds: float | None = None,
    bound_mode: str = "conservative",
    extension_degree: int | None = None,
    backend: str | None = None,
) -> DetReport:
    """Run the requested strategies, record which ran, and cross-check them.

    A strategy that exceeds ``budget_seconds`` is recorded as skipped; at
    least one strategy must complete.
    """
    if not M.is_square:
        raise ValueError("determinant of a non-square matrix")
    rep = DetReport(value=None)
    for name in strategies:
        t0 = time.monotonic()
        try:
            if name == "bareiss":
                deadline = None if budget_seconds is None else t0 + budget_seconds
                val = det_bareiss(M, deadline=deadline)
            elif name == "grid":
                val = det_grid(M, bound_mode, extension_degree, backend, report=rep)
            else:
                raise ValueError(f"unknown determinant strategy {name!r}")
        except BudgetExceeded as exc:
            rep.strategies[name] = f"skipped: {exc}"
            continue
        finally:
            rep.seconds[name] = time.monotonic() - t0
        rep.strategies[name] = val
    values = [v for v in rep.strategies.values() if isinstance(v, MultiPoly)]
    if not values:
        raise BudgetExceeded("no determinant strategy completed")
    rep.value = values[0]
    rep.agree = all(v == values[0] for v in values)
    if not rep.agree:
        raise ArithmeticError(f"determinant strategies disagree: {rep.strategies}")
    return rep


def poly_det(M: PolyMatrix, **kwargs) -> MultiPoly:
    """Exact determinant, cross-checked by both strategies unless told otherwise."""
    return det_report(M, **kwargs).value


def rank_over_field(F, rows: Sequence[Sequence]) -> int:
    """Rank of a matrix of raw field values."""
    A = [list(r) for r in rows]
    if not A:
        return 0
    nrows, ncols = len(A), len(A[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if not F.is_zero(A[r][c])), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = F.inv(A[rank][c])
        for r in range(nrows):
            if r != rank and not F.is_zero(A[r][c]):
                f = F.mul(A[r][c], inv)
                A[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank
