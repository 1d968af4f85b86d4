"""Symmetric-function families attached to Hamiltonian parameters.

The generalized h/e/sigma functions are polynomials in the parameters
s_k (one family per row); specializing s_k = (x^k + (-1)^{k-1} y^k)/k
turns sigma into supersymmetric Schur polynomials, which this module
also evaluates by three independent routes (Fock pairing, Jacobi-Trudi
determinant, supertableau enumeration) plus a bialternant oracle for
straight shapes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .exactpoly import LaurentPoly, Registry, divexact, poly_det
from . import partitions as pt
from . import fockspace as fk


@dataclass
class SymParams:
    """Coefficients s_k, k>=1, of one Hamiltonian family; p_k = k s_k."""

    registry: Registry
    s_list: List[LaurentPoly]  # s_list[k-1] = s_k
    _h_cache: dict = field(default_factory=dict, repr=False)
    _e_cache: dict = field(default_factory=dict, repr=False)

    def s(self, k: int) -> LaurentPoly:
        if k < 1 or k > len(self.s_list):
            raise ValueError(f"s_{k} not available (have 1..{len(self.s_list)})")
        return self.s_list[k - 1]

    def p(self, k: int) -> LaurentPoly:
        return self.s(k) * k

    @property
    def degree_bound(self) -> int:
        return len(self.s_list)

    @staticmethod
    def from_hamiltonian(H: fk.HamiltonianParams) -> "SymParams":
        return SymParams(H.registry, [H.s_total(k) for k in range(1, H.degree_bound + 1)])

    def to_hamiltonian(self, sign: str = "plus") -> fk.HamiltonianParams:
        coeffs = {(1, k): self.s(k) for k in range(1, self.degree_bound + 1)}
        return fk.HamiltonianParams(self.registry, 1, coeffs, sign, self.degree_bound)


def omega(params: SymParams) -> SymParams:
    """The involution s_k -> (-1)^{k-1} s_k (sends h_k to e_k)."""
    flipped = [s if k % 2 == 1 else -s for k, s in enumerate(params.s_list, start=1)]
    return SymParams(params.registry, flipped)


def _weighted_partition_sum(params: SymParams, k: int, signed: bool) -> LaurentPoly:
    reg = params.registry
    if k < 0:
        return reg.zero()
    if k == 0:
        return reg.one()
    total = reg.zero()
    for lam in pt.partitions_of(k):
        mult: Dict[int, int] = {}
        for part in lam:
            mult[part] = mult.get(part, 0) + 1
        coeff = Fraction(1)
        for m in mult.values():
            coeff /= factorial(m)
        if signed and (k - len(lam)) % 2 == 1:
            coeff = -coeff
        term = reg.scalar(coeff)
        for part in lam:
            term = term * params.s(part)
        total = total + term
    return total


def gen_h(params: SymParams, k: int) -> LaurentPoly:
    """h_k = sum_{lambda |- k} z_lambda^{-1} p_lambda (h_0 = 1, h_{<0} = 0)."""
    got = params._h_cache.get(k)
    if got is None:
        got = _weighted_partition_sum(params, k, signed=False)
        params._h_cache[k] = got
    return got


def gen_e(params: SymParams, k: int) -> LaurentPoly:
    """e_k, the signed variant: sum (-1)^{|lambda| - l(lambda)} z^{-1} p_lambda."""
    got = params._e_cache.get(k)
    if got is None:
        got = _weighted_partition_sum(params, k, signed=True)
        params._e_cache[k] = got
    return got


def sigma_skew(lam: Sequence[int], mu: Sequence[int], params: SymParams) -> LaurentPoly:
    """sigma_{lambda/mu} = det h_{lambda_i - mu_j - i + j} (Jacobi-Trudi)."""
    n = max(len(lam), len(mu))
    lam = pt.pad(pt.check_partition(lam), n)
    mu = pt.pad(pt.check_partition(mu), n)
    if n == 0:
        return params.registry.one()
    matrix = [
        [gen_h(params, lam[i] - mu[j] - (i - j)) for j in range(n)]
        for i in range(n)
    ]
    return poly_det(matrix)


def sigma_skew_dual(lam: Sequence[int], mu: Sequence[int], params: SymParams) -> LaurentPoly:
    """Von Naegelsbach-Kostka form: det e_{lam'_i - mu'_j - i + j}."""
    n = max(len(lam), len(mu))
    lam = pt.pad(pt.check_partition(lam), n)
    mu = pt.pad(pt.check_partition(mu), n)
    width = max(lam[0] if lam else 0, mu[0] if mu else 0, 1)
    lam_c = pt.conjugate(lam, width)
    mu_c = pt.conjugate(mu, width)
    matrix = [
        [gen_e(params, lam_c[i] - mu_c[j] - (i - j)) for j in range(width)]
        for i in range(width)
    ]
    return poly_det(matrix)


# ---------------------------------------------------------------------------
# Supersymmetric specialization.
# ---------------------------------------------------------------------------


@dataclass
class SuperAlphabet:
    """Two equal-length lists of variables (or polynomials) x_i, y_i."""

    registry: Registry
    xs: List[LaurentPoly]
    ys: List[LaurentPoly]

    def __post_init__(self):
        if len(self.xs) != len(self.ys):
            raise ValueError("alphabet halves must have equal length")

    @property
    def n(self) -> int:
        return len(self.xs)

    @staticmethod
    def standard(registry: Registry, n: int, xname="x", yname="y") -> "SuperAlphabet":
        xs = [registry.var(f"{xname}{i}") for i in range(1, n + 1)]
        ys = [registry.var(f"{yname}{i}") for i in range(1, n + 1)]
        return SuperAlphabet(registry, xs, ys)


def supersym_params(alpha: SuperAlphabet, degree_bound: int) -> SymParams:
    """s_k = (1/k) Sum_j (x_j^k + (-1)^{k-1} y_j^k)."""
    reg = alpha.registry
    s_list = []
    for k in range(1, degree_bound + 1):
        total = reg.zero()
        for x, y in zip(alpha.xs, alpha.ys):
            yk = y ** k
            total = total + x ** k + (yk if k % 2 == 1 else -yk)
        s_list.append(total * Fraction(1, k))
    return SymParams(reg, s_list)


def supersym_hamiltonian(alpha: SuperAlphabet, degree_bound: int,
                         sign: str = "plus") -> fk.HamiltonianParams:
    """Row-resolved Hamiltonian with s_{+-k}^{(j)} from the alphabet.

    For sign=minus the parameters follow the dual convention
    s_{-k}^{(j)} = (y_j^k + (-1)^{k-1} x_j^k)/k.
    """
    reg = alpha.registry
    coeffs = {}
    for j, (x, y) in enumerate(zip(alpha.xs, alpha.ys), start=1):
        for k in range(1, degree_bound + 1):
            if sign == "plus":
                a, b = x ** k, y ** k
            else:
                a, b = y ** k, x ** k
            coeffs[(j, k)] = (a + (b if k % 2 == 1 else -b)) * Fraction(1, k)
    return fk.HamiltonianParams(reg, alpha.n, coeffs, sign, degree_bound)


def _supertableau_weight_sum(lam, mu, alpha: SuperAlphabet) -> LaurentPoly:
    """Sum over supertableaux of shape lambda/mu in 1<..<N<1'<..<N'.

    Entries weakly increase along rows and columns; unprimed letters occur
    at most once per column, primed at most once per row.  Letters are
    encoded 0..N-1 (unprimed) and N..2N-1 (primed).
    """
    reg = alpha.registry
    n = alpha.n
    rows = len(lam)
    cells = [(r, c) for r in range(rows) for c in range(mu[r], lam[r])]
    if not cells:
        return reg.one()
    total = reg.zero()
    grid: Dict[Tuple[int, int], int] = {}

    def cell_ok(r, c, val) -> bool:
        left = grid.get((r, c - 1))
        if left is not None:
            if val < left:
                return False
            if val == left and val >= n:  # primed: strict along rows
                return False
        up = grid.get((r - 1, c))
        if up is not None:
            if val < up:
                return False
            if val == up and val < n:  # unprimed: strict down columns
                return False
        return True

    def fill(i: int, weight: LaurentPoly):
        nonlocal total
        if i == len(cells):
            total = total + weight
            return
        r, c = cells[i]
        for val in range(2 * n):
            if cell_ok(r, c, val):
                grid[(r, c)] = val
                letter = alpha.xs[val] if val < n else alpha.ys[val - n]
                fill(i + 1, weight * letter)
                del grid[(r, c)]

    fill(0, reg.one())
    return total


def supersym_schur(lam: Sequence[int], mu: Sequence[int], alpha: SuperAlphabet,
                   route: str = "jacobi_trudi") -> LaurentPoly:
    """Skew supersymmetric Schur polynomial s_{lambda/mu}[x|y].

    Routes: 'hamiltonian' (Fock pairing of e^{H_+}), 'jacobi_trudi'
    (determinant in h_r[x|y]), 'tableaux' (supertableau sum).  All three
    agree exactly; they are separate code paths on purpose.
    """
    n = max(len(lam), len(mu), 1)
    lam = pt.pad(pt.check_partition(lam), n)
    mu = pt.pad(pt.check_partition(mu), n)
    reg = alpha.registry
    if not pt.contains(lam, mu):
        return reg.zero()
    if route == "jacobi_trudi":
        # Determinant entries reach h_{lam_i - mu_j + j - i}.
        params = supersym_params(alpha, max((lam[0] if lam else 0) + n, 1))
        return sigma_skew(lam, mu, params)
    if route == "hamiltonian":
        H = supersym_hamiltonian(alpha, max(sum(lam) - sum(mu), 1))
        return fk.tau_function(pt.rho_shift(mu, "plus"), pt.rho_shift(lam, "plus"), H)
    if route == "tableaux":
        return _supertableau_weight_sum(lam, mu, alpha)
    raise ValueError(f"unknown route {route!r}")


def supersym_schur_bialternant(lam: Sequence[int], alpha: SuperAlphabet) -> LaurentPoly:
    """Straight-shape oracle A_{lambda+rho} / A_rho with [x|y]^r factorials.

    [x|y]^r = (x+y_1)...(x+y_r) with y_t = 0 past the alphabet; the
    quotient of determinants must divide exactly, anything else signals an
    implementation bug.

    This alternant is the factorial Schur polynomial.  It coincides with
    the supersymmetric Schur function on single-row shapes (which is how
    h_r[x|y] is defined), but NOT on shapes with two or more rows: for
    lambda = (1,1) and two variable pairs it returns the non-y-symmetric
    product (x1+y1)(x2+y1), whereas the supersymmetric value is symmetric
    in y.  No choice of bracket sequence can repair this (the quotient is
    structurally a product), so the oracle duty is scoped to single rows.
    """
    reg = alpha.registry
    n = alpha.n
    lam = pt.pad(pt.check_partition(lam), n)
    if len(lam) > n:
        raise ValueError(f"need l(lambda) <= {n}")

    def bracket(x: LaurentPoly, r: int) -> LaurentPoly:
        # [x|y]^r = (x+y_1)...(x+y_r), with y_t = 0 past the alphabet.
        out = reg.one()
        for t in range(r):
            out = out * (x + alpha.ys[t] if t < n else x)
        return out

    shifted = [lam[i] + (n - 1 - i) for i in range(n)]
    a_num = poly_det([[bracket(alpha.xs[i], shifted[j]) for j in range(n)] for i in range(n)])
    a_den = poly_det([[bracket(alpha.xs[i], n - 1 - j) for j in range(n)] for i in range(n)])
    return divexact(a_num, a_den)


# ---------------------------------------------------------------------------
# Supersymmetric LLT polynomials via metaplectic Fock pairings.
# ---------------------------------------------------------------------------


def llt_polynomial(lam: Sequence[int], mu: Sequence[int], alpha: SuperAlphabet,
                   n: int, g) -> LaurentPoly:
    """G_{lambda/mu}[x|y] = <mu+rho| e^{L_+(x^n) - L_+(y^n)} |lambda+rho>.

    The pairing happens in the metaplectic Fock space attached to g; the
    result is a polynomial in the alphabet and q^2.  Vanishes unless the
    shifted displacement is a multiple of n.
    """
    from . import qfock

    reg = alpha.registry
    length = max(len(lam), len(mu), 1)
    lam = pt.pad(pt.check_partition(lam), length)
    mu = pt.pad(pt.check_partition(mu), length)
    d = sum(lam) - sum(mu)
    if d < 0 or d % n != 0:
        return reg.zero()
    bound = max(d // n, 1)
    s_list = []
    for k in range(1, bound + 1):
        total = reg.zero()
        for x, y in zip(alpha.xs, alpha.ys):
            total = total + x ** (n * k) - y ** (n * k)
        s_list.append(total * Fraction(1, k))
    coeffs = {(1, k): s_list[k - 1] for k in range(1, bound + 1)}
    H = fk.HamiltonianParams(reg, 1, coeffs, "plus", bound)
    return qfock.q_tau(pt.rho_shift(mu, "plus"), pt.rho_shift(lam, "plus"), H, g)
