"""Classical fermionic Fock space on strict-partition (Maya) diagrams.

A basis state is stored as ``(parts, tail)``:

* ``parts`` is a strictly decreasing tuple of integers, all > ``tail``;
* ``tail``  is the top of the filled sea: positions tail, tail-1, ... are
  all occupied.  Canonical states have ``tail = -1``; operators that dig
  into the sea (boundary operators, J_{-k} promotions) produce states
  with deeper tails, which pair to zero against ordinary bra vectors.

In wedge terms ``(parts, tail)`` is u_{p1} ^ u_{p2} ^ ... ^ u_{tail} ^
u_{tail-1} ^ ...; the particle at integer coordinate m sits at Clifford
position m - 1/2, so psi*_{m-1/2} creates the particle "m".  A strict
partition lambda (trailing zero significant) is the state (lambda, -1).

Straightening is pure anticommutation: moving one particle across r
others contributes (-1)^r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, Optional, Sequence, Tuple

from .exactpoly import LaurentPoly, Registry
from . import partitions as pt

State = Tuple[Tuple[int, ...], int]


def canonical_state(parts: Sequence[int], tail: int) -> State:
    """Absorb head entries contiguous with the sea; keep tail <= -1."""
    parts = list(parts)
    while parts and parts[-1] == tail + 1 and parts[-1] <= -1:
        parts.pop()
        tail += 1
    if tail > -1:
        raise ValueError(f"sea top {tail} above -1")
    for i in range(len(parts) - 1):
        if parts[i] <= parts[i + 1]:
            raise ValueError(f"head not strictly decreasing: {parts}")
    if parts and parts[-1] <= tail:
        raise ValueError(f"head dips into the sea: {parts}, tail={tail}")
    return tuple(parts), tail


def normal_state(parts: Sequence[int]) -> State:
    return canonical_state(pt.check_strict(parts), -1)


def is_normal(state: State) -> bool:
    return state[1] == -1


def materialize(state: State, depth: int) -> State:
    """Move `depth` sea particles into the explicit head (no canonicalizing)."""
    parts, tail = state
    extra = tuple(range(tail, tail - depth, -1))
    return parts + extra, tail - depth


def state_weight(state: State) -> int:
    """Particle-position sum relative to the ordinary sea level."""
    parts, tail = state
    return sum(parts) - sum(range(tail + 1, 0))


def min_weight(state: State) -> int:
    """Least weight reachable by moving head particles down (sea is full)."""
    parts, tail = state
    l = len(parts)
    return sum(range(tail + 1, tail + 1 + l)) - sum(range(tail + 1, 0))


class FockVector:
    """Finite formal linear combination of basis states."""

    __slots__ = ("registry", "coeffs")

    def __init__(self, registry: Registry, coeffs: Optional[Dict[State, LaurentPoly]] = None):
        self.registry = registry
        self.coeffs: Dict[State, LaurentPoly] = {}
        if coeffs:
            for st, c in coeffs.items():
                if not c.is_zero():
                    self.coeffs[st] = c

    @staticmethod
    def basis(registry: Registry, parts: Sequence[int]) -> "FockVector":
        return FockVector(registry, {normal_state(parts): registry.one()})

    def add_term(self, state: State, c: LaurentPoly) -> None:
        cur = self.coeffs.get(state)
        s = c if cur is None else cur + c
        if s.is_zero():
            self.coeffs.pop(state, None)
        else:
            self.coeffs[state] = s

    def __add__(self, other: "FockVector") -> "FockVector":
        out = FockVector(self.registry, dict(self.coeffs))
        for st, c in other.coeffs.items():
            out.add_term(st, c)
        return out

    def __sub__(self, other: "FockVector") -> "FockVector":
        out = FockVector(self.registry, dict(self.coeffs))
        for st, c in other.coeffs.items():
            out.add_term(st, -c)
        return out

    def scale(self, c) -> "FockVector":
        if isinstance(c, (int, Fraction)):
            c = self.registry.scalar(c)
        return FockVector(self.registry, {st: v * c for st, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, FockVector) and self.coeffs == other.coeffs

    def has_sea_holes(self) -> bool:
        return any(not is_normal(st) for st in self.coeffs)

    def coefficient(self, parts: Sequence[int]) -> LaurentPoly:
        return self.coeffs.get(normal_state(parts), self.registry.zero())

    def to_json_dict(self) -> dict:
        from .exactpoly import render

        out = {}
        for (parts, tail), c in sorted(self.coeffs.items()):
            key = ",".join(map(str, parts))
            if tail != -1:
                key += f";tail={tail}"
            out[key] = render(c)
        return out

    def __repr__(self) -> str:
        items = ", ".join(f"{st}: {c}" for st, c in sorted(self.coeffs.items()))
        return f"FockVector({{{items}}})"


# ---------------------------------------------------------------------------
# Clifford generators.
# ---------------------------------------------------------------------------


def _as_site(k) -> int:
    """Convert a half-integer Clifford index k to the particle coordinate k + 1/2."""
    f = Fraction(k).limit_denominator(2) if isinstance(k, float) else Fraction(k)
    if f.denominator != 2:
        raise ValueError(f"psi index must be a half-integer, got {k}")
    return int(f + Fraction(1, 2))


def create_site(m: int, state: State):
    """psi*_{m-1/2} on a basis state: (sign, new_state) or None."""
    parts, tail = state
    if m <= tail or m in parts:
        return None
    idx = sum(1 for p in parts if p > m)
    new = parts[:idx] + (m,) + parts[idx:]
    return (-1) ** idx, canonical_state(new, tail)


def annihilate_site(m: int, state: State):
    """psi_{m-1/2} on a basis state: (sign, new_state) or None."""
    parts, tail = state
    if m <= tail:
        parts, tail = materialize(state, tail - m + 1)
    if m not in parts:
        return None
    idx = parts.index(m)
    new = parts[:idx] + parts[idx + 1:]
    return (-1) ** idx, canonical_state(new, tail)


def apply_psi_star(k, v: FockVector) -> FockVector:
    m = _as_site(k)
    out = FockVector(v.registry)
    for st, c in v.coeffs.items():
        hit = create_site(m, st)
        if hit is not None:
            sign, new = hit
            out.add_term(new, c if sign > 0 else -c)
    return out


def apply_psi(k, v: FockVector) -> FockVector:
    m = _as_site(k)
    out = FockVector(v.registry)
    for st, c in v.coeffs.items():
        hit = annihilate_site(m, st)
        if hit is not None:
            sign, new = hit
            out.add_term(new, c if sign > 0 else -c)
    return out


def vacuum_pairing(bra: Sequence[int], v: FockVector) -> LaurentPoly:
    """Coefficient of the basis vector |bra> in v."""
    return v.coefficient(bra)


# ---------------------------------------------------------------------------
# Current operators and Hamiltonians.
# ---------------------------------------------------------------------------


def _move_terms(state: State, shift: int):
    """All single-particle moves m -> m + shift with anticommutation signs."""
    parts, tail = state
    if shift > 0:
        # Particles can climb out of the sea: expose just enough of it.
        parts, tail = materialize(state, shift)
    pset = set(parts)
    for i, p in enumerate(parts):
        t = p + shift
        if t <= tail or t in pset:
            continue
        passed = sum(1 for q in parts if (p < q < t) or (t < q < p))
        new = [q for q in parts if q != p]
        idx = sum(1 for q in new if q > t)
        new.insert(idx, t)
        yield (-1) ** passed, canonical_state(new, tail)


def apply_Jk(k: int, v: FockVector) -> FockVector:
    """Current operator J_k: move one particle k spots to the left."""
    if k == 0:
        raise ValueError("J_0 is not defined here")
    out = FockVector(v.registry)
    for st, c in v.coeffs.items():
        for sign, new in _move_terms(st, -k):
            out.add_term(new, c if sign > 0 else -c)
    return out


def apply_J_partition(mu: Sequence[int], v: FockVector, sign: int = 1) -> FockVector:
    """J_mu = J_{mu_1} ... J_{mu_l} (sign=-1 gives J_{-mu})."""
    for part in reversed(tuple(mu)):
        v = apply_Jk(sign * part, v)
    return v


def apply_Uk_Dk(which: str, k: int, v: FockVector) -> FockVector:
    """U_k = sum_{mu |- k} z_mu^{-1} J_{-mu}; D_k likewise with J_mu."""
    if which not in ("U", "D"):
        raise ValueError("which must be 'U' or 'D'")
    sign = -1 if which == "U" else 1
    out = FockVector(v.registry)
    for mu in pt.partitions_of(k):
        term = apply_J_partition(mu, v, sign=sign)
        out = out + term.scale(1 / pt.z_lambda(mu))
    return out


@dataclass
class HamiltonianParams:
    """Coefficients s_k^(j) of H = sum_j sum_k s_k^(j) J_{+-k}.

    `sign` chooses H_+ (J_k) or H_- (J_{-k}); `degree_bound` is the largest
    k for which coefficients may be requested.
    """

    registry: Registry
    n_rows: int
    coeffs: Dict[Tuple[int, int], LaurentPoly]  # (row j, k) -> s_k^(j)
    sign: str = "plus"
    degree_bound: int = 0
    _s_total: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.sign not in ("plus", "minus"):
            raise ValueError("sign must be 'plus' or 'minus'")

    def s(self, j: int, k: int) -> LaurentPoly:
        if k > self.degree_bound:
            raise ValueError(f"degree bound {self.degree_bound} exceeded at k={k}")
        return self.coeffs[(j, k)]

    def s_total(self, k: int) -> LaurentPoly:
        got = self._s_total.get(k)
        if got is None:
            if k > self.degree_bound:
                raise ValueError(f"degree bound {self.degree_bound} exceeded at k={k}")
            got = self.registry.zero()
            for j in range(1, self.n_rows + 1):
                got = got + self.coeffs[(j, k)]
            self._s_total[k] = got
        return got

    def row(self, j: int) -> "HamiltonianParams":
        sub = {(1, k): p for (jj, k), p in self.coeffs.items() if jj == j}
        return HamiltonianParams(self.registry, 1, sub, self.sign, self.degree_bound)

    def rows(self, js: Sequence[int]) -> "HamiltonianParams":
        sub = {}
        for new_j, j in enumerate(js, start=1):
            for k in range(1, self.degree_bound + 1):
                sub[(new_j, k)] = self.coeffs[(j, k)]
        return HamiltonianParams(self.registry, len(js), sub, self.sign, self.degree_bound)


def abstract_hamiltonian(
    registry: Registry, n_rows: int, degree_bound: int, sign: str = "plus",
    name: Callable[[int, int], str] = lambda j, k: f"s{k}_{j}",
) -> HamiltonianParams:
    """Hamiltonian whose s_k^(j) are themselves registry variables."""
    coeffs = {
        (j, k): registry.var(name(j, k))
        for j in range(1, n_rows + 1)
        for k in range(1, degree_bound + 1)
    }
    return HamiltonianParams(registry, n_rows, coeffs, sign, degree_bound)


def _graded_displacement_sum(
    target: State, source: FockVector, d: int, s_of_k, step: int
) -> LaurentPoly:
    """Coefficient of `target` in the degree-d slice of e^{sum s_k J_{step*k}}."""
    reg = source.registry
    total = reg.zero()
    if d == 0:
        c = source.coeffs.get(target)
        return c if c is not None else reg.zero()
    for piece in pt.partitions_of(d):
        vec = source
        for k in reversed(piece):
            vec = apply_Jk(step * k, vec)
            if vec.is_zero():
                break
        if vec.is_zero():
            continue
        c = vec.coeffs.get(target)
        if c is None:
            continue
        mult: Dict[int, int] = {}
        for k in piece:
            mult[k] = mult.get(k, 0) + 1
        scale = Fraction(1)
        for m in mult.values():
            scale /= factorial(m)
        s_pi = reg.one()
        for k in piece:
            s_pi = s_pi * s_of_k(k)
        total = total + c * s_pi * scale
    return total


def tau_function(mu: Sequence[int], lam: Sequence[int], H: HamiltonianParams) -> LaurentPoly:
    """<mu| e^H |lambda> by displacement-graded expansion (exact, finite)."""
    reg = H.registry
    mu = pt.check_strict(mu)
    lam = pt.check_strict(lam)
    if len(mu) != len(lam):
        return reg.zero()
    if H.sign == "plus":
        d = sum(lam) - sum(mu)
    else:
        d = sum(mu) - sum(lam)
    if d < 0:
        return reg.zero()
    if d > H.degree_bound:
        raise ValueError(f"degree bound {H.degree_bound} < displacement {d}")
    step = 1 if H.sign == "plus" else -1
    return _graded_displacement_sum(
        normal_state(mu), FockVector.basis(reg, lam), d, H.s_total, step
    )


def tau_by_branching(mu: Sequence[int], lam: Sequence[int], H: HamiltonianParams,
                     row_order: Optional[Sequence[int]] = None) -> LaurentPoly:
    """<mu| e^{phi_N} ... e^{phi_1} |lambda>, summing over intermediate states.

    The row factors commute, so any `row_order` gives the same value; the
    default applies row 1 first.
    """
    reg = H.registry
    mu = pt.check_strict(mu)
    lam = pt.check_strict(lam)
    if len(mu) != len(lam):
        return reg.zero()
    order = list(row_order) if row_order is not None else list(range(1, H.n_rows + 1))
    if sorted(order) != list(range(1, H.n_rows + 1)):
        raise ValueError(f"row_order must be a permutation of 1..{H.n_rows}")
    lo, hi = (mu, lam) if H.sign == "plus" else (lam, mu)
    max_part = max(list(hi) + list(lo) + [0])
    frontier = {lam: reg.one()}
    for j in order:
        Hrow = H.row(j)
        new: Dict[Tuple[int, ...], LaurentPoly] = {}
        for nu in pt.enumerate_strict(max_part, length=len(lam)):
            acc = reg.zero()
            for prev, c in frontier.items():
                term = tau_function(nu, prev, Hrow)
                if not term.is_zero():
                    acc = acc + c * term
            if not acc.is_zero():
                new[tuple(nu)] = acc
        frontier = new
    return frontier.get(mu, reg.zero())


def apply_exp_H(v: FockVector, H: HamiltonianParams) -> FockVector:
    """e^H applied to a vector (finite: weights are bounded below per state)."""
    if H.sign != "plus":
        raise ValueError("apply_exp_H implements the lowering exponential e^{H_+}")
    reg = v.registry
    out = FockVector(reg)
    for st, c in v.coeffs.items():
        d_max = state_weight(st) - min_weight(st)
        if d_max > H.degree_bound:
            raise ValueError(f"degree bound {H.degree_bound} < reachable displacement {d_max}")
        src = FockVector(reg, {st: c})
        for d in range(0, d_max + 1):
            for piece in pt.partitions_of(d):
                vec = src
                for k in reversed(piece):
                    vec = apply_Jk(k, vec)
                    if vec.is_zero():
                        break
                if vec.is_zero():
                    continue
                mult: Dict[int, int] = {}
                for k in piece:
                    mult[k] = mult.get(k, 0) + 1
                scale = Fraction(1)
                for m in mult.values():
                    scale /= factorial(m)
                s_pi = reg.one()
                for k in piece:
                    s_pi = s_pi * H.s_total(k)
                for st2, c2 in vec.coeffs.items():
                    out.add_term(st2, c2 * s_pi * scale)
    return out


def wick_tau(mu: Sequence[int], lam: Sequence[int], H: HamiltonianParams) -> LaurentPoly:
    """Wick's theorem: det h_{lam_i - mu_j} over the strict parts.

    The strict parts carry the staircase already, so the determinant needs
    no extra index shift (sigma_{lam/mu} = det h_{lam_i - mu_j - i + j} is
    the same matrix after rho-shifting both partitions).
    """
    from .exactpoly import poly_det
    from . import symmfunc

    reg = H.registry
    mu = pt.check_strict(mu)
    lam = pt.check_strict(lam)
    if len(mu) != len(lam):
        return reg.zero()
    l = len(lam)
    if l == 0:
        return reg.one()
    params = symmfunc.SymParams.from_hamiltonian(H)
    matrix = [
        [symmfunc.gen_h(params, lam[i] - mu[j]) for j in range(l)]
        for i in range(l)
    ]
    return poly_det(matrix)


# ---------------------------------------------------------------------------
# Boundary operators (ghost-vertex constructions for side boundary spins).
# ---------------------------------------------------------------------------


@dataclass
class BoundaryRow:
    """One row's data for the boundary operators.

    `hamiltonian` must be single-row; `c_scale` is the ghost-vertex scale
    (x_i + y_i for the standard weights).
    """

    hamiltonian: HamiltonianParams
    c_scale: LaurentPoly


def boundary_operator(case: str, row: BoundaryRow, M: int, v: FockVector) -> FockVector:
    """Apply e^{Phi_i} for one row, by case:

    A: e^{phi};                    B: (x+y)^{-1} e^{phi} psi*_{M+1/2};
    C: psi*_{-3/2} psi_{-3/2} e^{phi} psi_{-3/2};
    D: (x+y)^{-1} psi*_{-3/2} psi_{-3/2} e^{phi} psi*_{M+1/2} psi_{-3/2}.
    """
    from .exactpoly import divexact

    if case not in "ABCD":
        raise ValueError(f"case must be one of A-D, got {case!r}")
    half = Fraction(1, 2)
    w = v
    if case in ("C", "D"):
        w = apply_psi(-3 * half, w)
    if case in ("B", "D"):
        w = apply_psi_star(M + half, w)
    w = apply_exp_H(w, row.hamiltonian)
    if case in ("C", "D"):
        w = apply_psi(-3 * half, w)
        w = apply_psi_star(-3 * half, w)
    if case in ("B", "D"):
        if row.c_scale.is_zero():
            raise ZeroDivisionError("ghost-vertex scale specializes to zero")
        w = FockVector(w.registry, {st: divexact(c, row.c_scale) for st, c in w.coeffs.items()})
    return w
