"""Truncated power series: Taylor maps, solution matrices, pairings.

All infinite objects appear only as truncations to a finite order N;
windowed Hadamard estimates carry an explicit spread and never claim an
exact radius.  Divided factorials 1/i! are computed exactly in Q, which
keeps everything valid over both residue characteristics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AllZero
from .diffmod import DiffModule, RadiusEstimate
from .scalarfield import Scalar
from . import linalg as la


@dataclass(frozen=True)
class TruncSeries:
    """Coefficients a_0..a_N of a power series, exact up to order N."""

    coeffs: tuple
    order: int

    @staticmethod
    def from_list(entries, order: int | None = None) -> "TruncSeries":
        entries = list(entries)
        if order is None:
            order = len(entries) - 1
        return TruncSeries(tuple(entries[:order + 1]), order)

    def coeff(self, i: int):
        return self.coeffs[i]

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        return TruncSeries(tuple(a + b for a, b in
                                 zip(self.coeffs[:n + 1], other.coeffs[:n + 1])), n)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(tuple(-a for a in self.coeffs), self.order)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        out = []
        for i in range(n + 1):
            acc = self.coeffs[0] * other.coeffs[i]
            for k in range(1, i + 1):
                acc = acc + self.coeffs[k] * other.coeffs[i - k]
            out.append(acc)
        return TruncSeries(tuple(out), n)

    def derive_x(self) -> "TruncSeries":
        """Formal d/dX: order drops by one."""
        return TruncSeries(tuple(self.coeffs[i + 1] * (i + 1)
                                 for i in range(self.order)), self.order - 1)

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.coeffs[:order + 1], min(self.order, order))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def to_jsonable(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs], "N": self.order}

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all((a - b).is_zero() for a, b in
                   zip(self.coeffs[:n + 1], other.coeffs[:n + 1]))

    __hash__ = None


def taylor_map(c: Scalar, j: int, n: int) -> TruncSeries:
    """Truncated image of the embedding c |-> (d^i(c)/i!)_i.

    A ring homomorphism up to order n, and an isometry onto series valued
    at the maximal radius: lv of coefficient i is at least lv(c) - i*lv_rK
    with equality at i = 0.
    """
    out = [c]
    cur = c
    for i in range(1, n + 1):
        cur = cur.derive(j) / i
        out.append(cur)
    return TruncSeries(tuple(out), n)


def solution_matrix(m: DiffModule, j: int, n: int) -> list:
    """Fundamental solution Y = sum_k (G_k/k!) X^k, truncated at order n.

    Satisfies the horizontal-section equation d/dX(Y) = Y * taylor(G_1)
    up to order n-1 (the Taylor image acts from the right with the
    column-action convention used throughout).
    """
    dom = m.domain
    g1 = m.mat(j)
    acc = la.identity(dom, m.dim)
    entries = [[[acc[a][b]] for b in range(m.dim)] for a in range(m.dim)]
    fact = Fraction(1)
    for k in range(1, n + 1):
        acc = la.mat_add(la.mat_derive(acc, j), la.mat_mul(g1, acc))
        fact *= k
        inv = Fraction(1, 1) / fact
        for a in range(m.dim):
            for b in range(m.dim):
                entries[a][b].append(acc[a][b] * inv)
    return [[TruncSeries(tuple(entries[a][b]), n) for b in range(m.dim)]
            for a in range(m.dim)]


def series_mat_mul(a: list, b: list) -> list:
    n, k = len(a), len(b)
    m = len(b[0])
    out = []
    for i in range(n):
        row = []
        for jj in range(m):
            acc = a[i][0] * b[0][jj]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][jj]
            row.append(acc)
        out.append(row)
    return out


def hadamard_radius(s: TruncSeries, window: tuple[int, int]) -> RadiusEstimate:
    """Windowed estimate of lv(1/limsup |a_i|^{1/i}).

    Zero coefficients are skipped (|0|^{1/i} = 0 contributes nothing to the
    limsup); a window with no nonzero coefficient raises AllZero, the
    radius being +infinity at this precision.
    """
    lo, hi = window
    if not 1 <= lo <= hi <= s.order:
        raise ValueError("window must lie within [1, N]")
    samples = []
    for i in range(lo, hi + 1):
        a = s.coeff(i)
        if a.is_zero():
            continue
        samples.append(-(a.val() / i))
    if not samples:
        raise AllZero("all coefficients vanish in the window")
    est = max(samples)
    vals = [e.value for e in samples]
    return RadiusEstimate(est, max(vals) - min(vals), window)


@dataclass(frozen=True)
class PairingVector:
    """Coefficients of a pairing between a module vector and a functional."""

    coeffs: tuple

    def coeff(self, i: int):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, PairingVector):
            return NotImplemented
        n = min(len(self.coeffs), len(other.coeffs))
        return all((a - b).is_zero() for a, b in
                   zip(self.coeffs[:n], other.coeffs[:n]))

    __hash__ = None


def dual_pairing(m: DiffModule, x: list, s: list, n: int,
                 j: int | None = None) -> PairingVector:
    """Coefficients <s, x>_i = s(T^i x / i!) for i = 0..n, exactly."""
    if j is None:
        (j,) = m.derivations
    out = []
    w = list(x)
    fact = Fraction(1)
    for i in range(n + 1):
        if i:
            w = m.apply_T(j, w)
            fact *= i
        acc = s[0] * w[0]
        for t in range(1, m.dim):
            acc = acc + s[t] * w[t]
        out.append(acc / fact)
    return PairingVector(tuple(out))


def biduality_transform(v: PairingVector, j: int, n: int) -> PairingVector:
    """Alternating Taylor transform w_i = sum_{a+k=i} (-1)^a d^k(v_a)/k!.

    An exact involution on coefficients 0..n: applying it twice returns
    the original coefficients (binomial cancellation).
    """
    if len(v) < n + 1:
        raise ValueError("pairing vector too short for the requested order")
    # towers[a][k] = d^k(v_a) / k!
    towers = []
    for a in range(n + 1):
        tower = [v.coeff(a)]
        for k in range(1, n + 1 - a):
            tower.append(tower[-1].derive(j) / k)
        towers.append(tower)
    out = []
    for i in range(n + 1):
        acc = None
        for a in range(i + 1):
            term = towers[a][i - a]
            if a % 2 == 1:
                term = -term
            acc = term if acc is None else acc + term
        out.append(acc)
    return PairingVector(tuple(out))
