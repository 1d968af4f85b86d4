"""R-vertex weight synthesis and Yang-Baxter verification for charged models.

The R-vertices live on a crossing of rows i and j: writing the four edges
as (BL, TL, TR, BR), row i owns BL/TR and row j owns TL/BR.  Decorated
spins are encoded as in latticemodel (None = plus, charge int = minus).

The Yang-Baxter equation compared here is, for external decorated spins
alpha, beta (left), delta, epsilon (right) and plain spins gamma (top),
eta (bottom):

  sum_{u,v,c} R(alpha,beta,u,v) T_i(u,gamma,delta,c) T_j(v,c,epsilon,eta)
   = sum_{u,v,c} T_j(beta,gamma,u,c) T_i(alpha,c,v,eta) R(v,u,delta,epsilon)

Both sides are exact polynomials; the report lists every failing boundary
with its residual.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .exactpoly import LaurentPoly, Registry, divexact
from .latticemodel import RowWeights, VertexWeights, _vertex_weight, free_fermion_check

Spin = Optional[int]


@dataclass
class RWeightTable:
    """Boltzmann weights of the seven R-vertex kinds.

    Charge keys: A2/A2x use (k, m) with residues in [0, n); B1/B2 use
    residues; C1/C2 use representatives 1..n (a charge-0 edge reads as n).
    """

    registry: Registry
    n: int
    A1: LaurentPoly
    A2: Dict[Tuple[int, int], LaurentPoly]
    A2x: Dict[Tuple[int, int], LaurentPoly]
    B1: Dict[int, LaurentPoly]
    B2: Dict[int, LaurentPoly]
    C1: Dict[int, LaurentPoly]
    C2: Dict[int, LaurentPoly]
    meta: dict = field(default_factory=dict)

    def c_index(self, charge: int) -> int:
        r = charge % self.n
        return self.n if r == 0 else r

    def value(self, bl: Spin, tl: Spin, tr: Spin, br: Spin) -> LaurentPoly:
        zero = self.registry.zero()
        minus = [s is not None for s in (bl, tl, tr, br)]
        count = sum(minus)
        if count == 0:
            return self.A1
        if count == 4:
            k_t, k_b = tl % self.n, bl % self.n
            if tl % self.n == tr % self.n and bl % self.n == br % self.n:
                if k_t == k_b:
                    return self.A2[(k_t, k_t)]
                return self.A2[(k_t, k_b)]
            if bl % self.n == tr % self.n and tl % self.n == br % self.n:
                return self.A2x[(bl % self.n, tl % self.n)]
            return zero
        if count == 2:
            if tl is not None and br is not None:
                if tl % self.n == br % self.n:
                    return self.B1[tl % self.n]
                return zero
            if bl is not None and tr is not None:
                if bl % self.n == tr % self.n:
                    return self.B2[bl % self.n]
                return zero
            if bl is not None and br is not None:
                if bl % self.n == br % self.n:
                    return self.C1[self.c_index(bl)]
                return zero
            if tl is not None and tr is not None:
                if tl % self.n == tr % self.n:
                    return self.C2[self.c_index(tl)]
                return zero
        return zero


def _prod(reg: Registry, factors) -> LaurentPoly:
    out = reg.one()
    for f in factors:
        out = out * f
    return out


def r_weights_free_fermion(w: VertexWeights, i: int, j: int,
                           require_condition: bool = True) -> RWeightTable:
    """Table of R-weights for the generalized free fermion case.

    i, j are 1-based row labels.  Ratio-shaped entries are produced with
    exact division (the divisors are monomials for the standard families
    and scalars in random-rational mode).
    """
    if require_condition:
        rep = free_fermion_check(w)
        if not (rep["zero_charge"] and rep["charge_condition"] and rep["independence"]):
            raise ValueError("weights do not satisfy the generalized free fermion condition")
    reg = w.registry
    n = w.n
    wi, wj = w.rows[i - 1], w.rows[j - 1]

    def ab(x: RowWeights, y: RowWeights, p: int) -> LaurentPoly:
        return x.a1 * y.b2[p % n]

    A1 = (
        wi.a1 * wj.a2[0] * _prod(reg, (ab(wi, wj, p) for p in range(1, n)))
        + wj.b1 * wi.b2[0] * _prod(reg, (ab(wj, wi, p) for p in range(1, n)))
    )
    A2kk = (
        wj.a1 * wi.a2[0] * _prod(reg, (ab(wj, wi, p) for p in range(1, n)))
        + wi.b1 * wj.b2[0] * _prod(reg, (ab(wi, wj, p) for p in range(1, n)))
    )

    A2: Dict[Tuple[int, int], LaurentPoly] = {}
    A2x: Dict[Tuple[int, int], LaurentPoly] = {}
    for k in range(n):
        for m in range(n):
            if k == m:
                A2[(k, m)] = A2kk
                continue
            if k < m:
                num = (
                    wj.c1 * wj.c2 * wi.a2[0]
                    * _prod(reg, (ab(wj, wi, p) for p in range(1, m)))
                    * _prod(reg, (ab(wi, wj, p) for p in range(m, n)))
                    * _prod(reg, (ab(wi, wj, p) for p in range(k)))
                )
                den = wj.a2[0] * _prod(reg, (ab(wj, wi, p) for p in range(k)))
            else:
                num = (
                    wj.c1 * wj.c2 * wi.b1
                    * _prod(reg, (ab(wi, wj, p) for p in range(1, k)))
                    * _prod(reg, (ab(wj, wi, p) for p in range(k, n)))
                    * _prod(reg, (ab(wj, wi, p) for p in range(m)))
                )
                den = wj.b1 * _prod(reg, (ab(wi, wj, p) for p in range(m)))
            A2[(k, m)] = divexact(num, den)
            diff = (
                _prod(reg, (ab(wj, wi, p) for p in range(n)))
                - _prod(reg, (ab(wi, wj, p) for p in range(n)))
            )
            A2x[(k, m)] = divexact(wi.a2[(k - m) % n] * diff, wi.b2[(k - m) % n])

    B1val = (
        wj.a2[0] * wi.b1 * _prod(reg, (ab(wi, wj, p) for p in range(1, n)))
        - wi.a2[0] * wj.b1 * _prod(reg, (ab(wj, wi, p) for p in range(1, n)))
    )
    B2val = (
        _prod(reg, (ab(wj, wi, p) for p in range(n)))
        - _prod(reg, (ab(wi, wj, p) for p in range(n)))
    )
    C1 = {
        k: wi.c1 * wj.c2
        * _prod(reg, (ab(wj, wi, p) for p in range(1, k)))
        * _prod(reg, (ab(wi, wj, p) for p in range(k, n)))
        for k in range(1, n + 1)
    }
    C2 = {
        k: wj.c1 * wi.c2
        * _prod(reg, (ab(wi, wj, p) for p in range(1, k)))
        * _prod(reg, (ab(wj, wi, p) for p in range(k, n)))
        for k in range(1, n + 1)
    }
    return RWeightTable(
        reg, n, A1, A2, A2x,
        {k: B1val for k in range(n)}, {k: B2val for k in range(n)},
        C1, C2, meta={"table": "free-fermion", "rows": (i, j)},
    )


def a2x_second_expression(w: VertexWeights, i: int, j: int, k: int, m: int) -> LaurentPoly:
    """The alternative A2x(k, m) listed in the free-fermion table."""
    reg = w.registry
    n = w.n
    wi, wj = w.rows[i - 1], w.rows[j - 1]
    diff = (
        wj.a2[0] * wi.b1 * _prod(reg, (wi.a1 * wj.b2[p] for p in range(1, n)))
        - wi.a2[0] * wj.b1 * _prod(reg, (wj.a1 * wi.b2[p] for p in range(1, n)))
    )
    return divexact(wj.b2[(m - k) % n] * diff, wj.a1)


def r_weights_nonff(w: VertexWeights, i: int, j: int,
                    require_condition: bool = True) -> RWeightTable:
    """Table of R-weights for the non-free-fermion solvable case."""
    reg = w.registry
    n = w.n
    wi, wj = w.rows[i - 1], w.rows[j - 1]
    if require_condition:
        rep = free_fermion_check(w)
        prod_ij = _prod(reg, (wi.a1 * wj.b2[p] for p in range(n)))
        prod_ji = _prod(reg, (wj.a1 * wi.b2[p] for p in range(n)))
        if not rep["independence"] or prod_ij != prod_ji:
            raise ValueError("weights do not satisfy the non-free-fermion conditions")

    ff = r_weights_free_fermion(w, i, j, require_condition=False)
    zero = reg.zero()
    prod_i_bj = _prod(reg, (wi.a1 * wj.b2[p] for p in range(n)))
    A1 = divexact((wj.a1 * wj.a2[0] + wj.b1 * wj.b2[0]) * prod_i_bj, wj.a1 * wj.b2[0])
    A2kk = divexact((wi.a1 * wi.a2[0] + wi.b1 * wi.b2[0]) * prod_i_bj, wi.a1 * wi.b2[0])
    A2 = dict(ff.A2)
    for k in range(n):
        A2[(k, k)] = A2kk
    return RWeightTable(
        reg, n, A1, A2,
        {key: zero for key in ff.A2x},
        {k: zero for k in range(n)}, {k: zero for k in range(n)},
        dict(ff.C1), dict(ff.C2), meta={"table": "non-free-fermion", "rows": (i, j)},
    )


# ---------------------------------------------------------------------------
# The Yang-Baxter check.
# ---------------------------------------------------------------------------


def _t_value(w: VertexWeights, row: RowWeights,
             left: Spin, top: bool, right: Spin, bottom: bool) -> LaurentPoly:
    val = _vertex_weight(w, row, left, top, right, bottom)
    return w.registry.zero() if val is None else val


def check_ybe(w: VertexWeights, r: RWeightTable, i: int, j: int,
              max_failures: int = 16) -> dict:
    """Compare both sides of the YBE for every boundary assignment.

    alpha/beta/delta/epsilon run over decorated spins, gamma/eta over plain
    spins.  Returns a report with failing witnesses and residuals.
    """
    reg = w.registry
    n = w.n
    wi, wj = w.rows[i - 1], w.rows[j - 1]
    decorated: List[Spin] = [None] + list(range(n))
    plain = [False, True]
    failures = []
    cases = 0
    balanced = 0

    for alpha in decorated:
        for beta in decorated:
            for gamma in plain:
                for delta in decorated:
                    for epsilon in decorated:
                        for eta in plain:
                            cases += 1
                            n_in = sum(s is not None for s in (alpha, beta)) + (1 if gamma else 0)
                            n_out = sum(s is not None for s in (delta, epsilon)) + (1 if eta else 0)
                            if n_in == n_out:
                                balanced += 1
                            lhs = reg.zero()
                            for u in decorated:
                                for v in decorated:
                                    rw = r.value(alpha, beta, u, v)
                                    if rw.is_zero():
                                        continue
                                    for c in plain:
                                        ti = _t_value(w, wi, u, gamma, delta, c)
                                        if ti.is_zero():
                                            continue
                                        tj = _t_value(w, wj, v, c, epsilon, eta)
                                        if tj.is_zero():
                                            continue
                                        lhs = lhs + rw * ti * tj
                            rhs = reg.zero()
                            for u in decorated:
                                for v in decorated:
                                    rw = r.value(v, u, delta, epsilon)
                                    if rw.is_zero():
                                        continue
                                    for c in plain:
                                        tj = _t_value(w, wj, beta, gamma, u, c)
                                        if tj.is_zero():
                                            continue
                                        ti = _t_value(w, wi, alpha, c, v, eta)
                                        if ti.is_zero():
                                            continue
                                        rhs = rhs + tj * ti * rw
                            if lhs != rhs:
                                if len(failures) < max_failures:
                                    failures.append({
                                        "boundary": repr((alpha, beta, gamma, delta, epsilon, eta)),
                                        "residual": str(lhs - rhs),
                                    })
                                else:
                                    failures.append({"boundary": "...", "residual": "..."})
                                    return {
                                        "cases": cases, "balanced": balanced,
                                        "failures": failures, "ok": False,
                                    }
    return {"cases": cases, "balanced": balanced, "failures": failures,
            "ok": not failures}


# ---------------------------------------------------------------------------
# The appendix equation suite.
# ---------------------------------------------------------------------------


def check_appendix_suite(w: VertexWeights, r: RWeightTable, i: int, j: int) -> dict:
    """Evaluate each listed YBE-derived equation exactly (denominators
    cleared); returns per-equation status with symbolic residuals."""
    reg = w.registry
    n = w.n
    wi, wj = w.rows[i - 1], w.rows[j - 1]

    def C1(k):
        return r.C1[r.c_index(k)]

    def C2(k):
        return r.C2[r.c_index(k)]

    def A2(k, m):
        return r.A2[(k % n, m % n)]

    def A2x(k, m):
        if (k - m) % n == 0:
            return r.A2[(k % n, k % n)]
        return r.A2x[(k % n, m % n)]

    B1 = r.B1[0]
    B2 = r.B2[0]
    A1 = r.A1
    A2d = A2(0, 0)

    checks: List[Tuple[str, LaurentPoly, LaurentPoly]] = []

    for k in range(n):
        checks.append((f"B1({k})=B1({k + 1})", r.B1[k], r.B1[(k + 1) % n]))
        checks.append((f"B2({k})=B2({k + 1})", r.B2[k], r.B2[(k + 1) % n]))
    for k in range(1, n):
        checks.append((
            f"C1-ratio-b({k})",
            C1(k + 1) * (wi.a1 * wj.b2[k]), C1(k) * (wj.a1 * wi.b2[k])))
        checks.append((
            f"C1-ratio-a({k})",
            C1(k + 1) * (wj.a2[k] * wi.b1), C1(k) * (wi.a2[k] * wj.b1)))
        checks.append((
            f"C2-ratio-b({k})",
            C2(k + 1) * (wj.a1 * wi.b2[k]), C2(k) * (wi.a1 * wj.b2[k])))
        checks.append((
            f"C2-ratio-a({k})",
            C2(k + 1) * (wi.a2[k] * wj.b1), C2(k) * (wj.a2[k] * wi.b1)))
    for k in range(n):
        for m in range(n):
            if (k - m) % n != 0:
                checks.append((
                    f"A2x-shift({k},{m})", A2x(k + 1, m + 1), A2x(k, m)))
    for m in range(1, n):
        checks.append((
            f"A2x(0,{m})/B1", A2x(0, m) * wj.a2[m], B1 * wj.b2[m]))
    for k in range(1, n):
        checks.append((
            f"A2x({k},0)/B2", A2x(k, 0) * wi.b2[k], B2 * wi.a2[k]))
    for k in range(n):
        for m in range(n):
            checks.append((
                f"A2-shift-b({k},{m})",
                A2(k + 1, m + 1) * (wi.b2[k] * wj.b2[m]),
                A2(k, m) * (wj.b2[k] * wi.b2[m])))
            checks.append((
                f"A2-shift-a({k},{m})",
                A2(k + 1, m + 1) * (wi.a2[k] * wj.a2[m]),
                A2(k, m) * (wj.a2[k] * wi.a2[m])))
    for k in range(1, n):
        checks.append((
            f"A2({k},0)/C2({k + 1})",
            A2(k, 0) * wj.a2[k] * wi.c2, C2(k + 1) * wi.a2[k] * wj.c2))
        checks.append((
            f"A2({k + 1},1)/C2({k})",
            A2(k + 1, 1) * wi.b2[k] * wj.c1, C2(k) * wj.b2[k] * wi.c1))
        checks.append((
            f"A2(0,{k})/C1({k + 1})",
            A2(0, k) * wi.b2[k] * wj.c2, C1(k + 1) * wj.b2[k] * wi.c2))
        checks.append((
            f"A2(1,{k + 1})/C1({k})",
            A2(1, k + 1) * wj.a2[k] * wi.c1, C1(k) * wi.a2[k] * wj.c1))
    checks.append(("C2(1)/C1(0)", C2(1) * wi.c1 * wj.c2, C1(0) * wj.c1 * wi.c2))
    checks.append(("C1(1)/C2(0)", C1(1) * wj.c1 * wi.c2, C2(0) * wi.c1 * wj.c2))
    checks.append((
        "c-linear-1",
        C2(1) * wi.b2[0] * wj.a1, wj.b2[0] * wi.a1 * C2(0) + wj.c1 * wi.c2 * B2))
    checks.append((
        "c-linear-2",
        C1(1) * wi.a1 * wj.b2[0] + B2 * wi.c1 * wj.c2, wj.a1 * wi.b2[0] * C1(0)))
    checks.append((
        "c-linear-3",
        C1(1) * wi.b1 * wj.a2[0], wj.b1 * wi.a2[0] * C1(0) + wj.c2 * wi.c1 * B1))
    checks.append((
        "c-linear-4",
        C2(1) * wi.a2[0] * wj.b1 + B1 * wi.c2 * wj.c1, wj.a2[0] * wi.b1 * C2(0)))
    checks.append((
        "A1-mix-1", A1 * wi.c2 * wj.a1, wj.c2 * wi.a1 * C2(0) + wj.b1 * wi.c2 * B2))
    checks.append((
        "A1-mix-2", C1(1) * wi.a1 * wj.c1 + B2 * wi.c1 * wj.b1, wj.a1 * wi.c1 * A1))
    checks.append((
        "A1-mix-3", A1 * wi.b1 * wj.c2, wj.c2 * wi.a1 * B2 + wj.b1 * wi.c2 * C1(0)))
    checks.append((
        "A1-mix-4", B1 * wi.a1 * wj.c1 + C2(1) * wi.c1 * wj.b1, wj.c1 * wi.b1 * A1))
    checks.append((
        "A2-mix-1", A2d * wi.c1 * wj.a2[0],
        wj.c1 * wi.a2[0] * C1(0) + wj.b2[0] * wi.c1 * B1))
    checks.append((
        "A2-mix-2", C2(1) * wi.a2[0] * wj.c2 + B1 * wi.c2 * wj.b2[0],
        wj.a2[0] * wi.c2 * A2d))
    checks.append((
        "A2-mix-3", A2d * wi.b2[0] * wj.c1,
        wj.b2[0] * wi.c1 * C2(0) + wj.c1 * wi.a2[0] * B2))
    checks.append((
        "A2-mix-4", C1(1) * wi.c2 * wj.b2[0] + B2 * wi.a2[0] * wj.c2,
        wj.c2 * wi.b2[0] * A2d))

    results = []
    ok = True
    for name, lhs, rhs in checks:
        good = lhs == rhs
        entry = {"equation": name, "ok": good}
        if not good:
            entry["residual"] = str(lhs - rhs)
            ok = False
        results.append(entry)
    return {"ok": ok, "equations": results, "count": len(results)}
