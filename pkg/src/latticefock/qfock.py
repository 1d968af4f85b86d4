"""Metaplectic (Drinfeld-twisted q-) Fock spaces.

States are wedge words sharing the (parts, tail) representation of the
classical module; what changes is the straightening rule.  For an
adjacent out-of-order pair u_l ^ u_m (l < m):

* l = m               : the word is zero;
* l = m (mod n), l < m: swap with coefficient -1;
* otherwise           : g(l-m) * swap  +  (v-1) * sum of corrections
                        u_{m-d} ^ u_{l+d} at depths d = i, n, n+i, 2n, ...
                        with coefficients 1, g(l-m), v, v*g(l-m), v^2, ...
                        where 0 < i < n, m - i = l (mod n), v = q^2,
                        while the corrected pair stays normally ordered.

The two displayed versions of this relation in the source literature
disagree in the higher corrections; the pattern above is gated by the
Heisenberg-commutator and lattice-matching tests rather than trusted.

Termination of repeated rewriting: every rewrite preserves word length
and the index multiset sum, keeps all entries inside [min, max] of the
original word, and strictly decreases sum_t t * w_t, which is bounded
on that finite set of words.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .exactpoly import LaurentPoly, Registry, parse
from . import partitions as pt
from .fockspace import (
    FockVector,
    HamiltonianParams,
    State,
    canonical_state,
    materialize,
    min_weight,
    normal_state,
    state_weight,
)

QFockVector = FockVector


@dataclass
class GFunction:
    """Twist data: g on residues mod n, with g(0) playing the role of -q^2.

    For tables loaded from JSON, q is a registry variable and g(0) = -q^2
    literally; tables derived from lattice weights may have g(0) equal to
    -(monomial)^2 instead, which is why v is read off the table."""

    registry: Registry
    n: int
    table: List[LaurentPoly]
    qname: str = "q"

    def value(self, a: int) -> LaurentPoly:
        return self.table[a % self.n]

    def q(self) -> LaurentPoly:
        return self.registry.var(self.qname)

    def v(self) -> LaurentPoly:
        return -self.table[0]

    @staticmethod
    def standard(registry: Registry, n: int, qname: str = "q") -> "GFunction":
        """The untwisted table: g(0) = -q^2 and g(a) = q otherwise."""
        q = registry.var(qname)
        table = [-(q * q)] + [q] * (n - 1)
        return GFunction(registry, n, table, qname)

    @staticmethod
    def from_json(registry: Registry, text: str, qname: str = "q") -> "GFunction":
        data = json.loads(text)
        n = int(data["n"])
        entries = data["g"]
        if len(entries) != n:
            raise ValueError(f"expected {n} table entries, got {len(entries)}")
        table = [parse(registry, s) for s in entries]
        return GFunction(registry, n, table, qname)

    def star(self) -> "GFunction":
        """The dual twist g_*(a) = g(-a)^{-1} (sends q to q^{-1})."""
        table = [self.table[(-a) % self.n].inverse() for a in range(self.n)]
        return GFunction(self.registry, self.n, table, self.qname)


def validate_g(g: GFunction) -> bool:
    """g(0) = -q^2 and g(a) g(-a) = -g(0) for every nonzero residue."""
    q = g.q()
    if g.table[0] != -(q * q):
        return False
    return g_products_consistent(g)


def g_products_consistent(g: GFunction) -> bool:
    """Just the twist relation g(a) g(-a) = -g(0) (g(0) may be any unit)."""
    target = -g.table[0]
    for a in range(1, g.n):
        if g.value(a) * g.value(-a) != target:
            return False
    return True


def g_from_vertex_weights(w) -> GFunction:
    """The metaplectic table attached to charged weights: g(a) is the
    ratio a1 a2(a) / (b1 b2(a)), required to agree across rows and to
    satisfy the twist relation."""
    from .exactpoly import divexact

    tables = []
    for rw in w.rows:
        tables.append([divexact(rw.a1 * rw.a2[a], rw.b1 * rw.b2[a]) for a in range(w.n)])
    for t in tables[1:]:
        if t != tables[0]:
            raise ValueError("rows derive different twist tables")
    g = GFunction(w.registry, w.n, tables[0])
    if not g_products_consistent(g):
        raise ValueError("derived table violates g(a) g(-a) = -g(0)")
    return g


@dataclass
class WedgeWord:
    """Finite head over the implicit full tail starting at tail_top."""

    head: Tuple[int, ...]
    tail_top: int = -1


def _rewrite_pair(head, t, g: GFunction, v: LaurentPoly, one: LaurentPoly):
    """Terms replacing positions (t, t+1) = (l, m), l < m.  Yields (head, factor)."""
    l, m = head[t], head[t + 1]
    swapped = head[:t] + (m, l) + head[t + 2:]
    if (l - m) % g.n == 0:
        yield swapped, -one
        return
    glm = g.value(l - m)
    yield swapped, glm
    i = (m - l) % g.n
    vm1 = v - one
    vpow = one
    j = 0
    while True:
        grew = False
        for d, factor in ((j * g.n + i, vpow), ((j + 1) * g.n, vpow * glm)):
            if 2 * d >= m - l:
                continue
            grew = True
            corrected = head[:t] + (m - d, l + d) + head[t + 2:]
            yield corrected, vm1 * factor
        if not grew:
            return
        vpow = vpow * v
        j += 1


def normal_order(words, g: GFunction, strategy: str = "leftmost") -> QFockVector:
    """Straighten a wedge word (or combination) into canonical basis form.

    `words` may be a WedgeWord, a (head, tail) pair, or an iterable of
    (head, tail, coefficient) triples.  `strategy` picks which
    out-of-order adjacent pair each step fixes; the result is the same
    for any strategy (confluence), which the tests exercise.
    """
    reg = g.registry
    one = reg.one()
    v = g.v()
    if isinstance(words, WedgeWord):
        items = [(tuple(words.head), words.tail_top, one)]
    elif isinstance(words, tuple) and len(words) == 2 and isinstance(words[1], int):
        items = [(tuple(words[0]), words[1], one)]
    else:
        items = [(tuple(h), t, c) for (h, t, c) in words]
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")

    out = FockVector(reg)
    stack = list(items)
    while stack:
        head, tail, coeff = stack.pop()
        if coeff.is_zero():
            continue
        if any(head[a] == head[a + 1] for a in range(len(head) - 1)):
            continue
        positions = range(len(head) - 1)
        if strategy == "rightmost":
            positions = reversed(positions)
        bad = None
        for a in positions:
            if head[a] < head[a + 1]:
                bad = a
                break
        if bad is None:
            out.add_term(canonical_state(head, tail), coeff)
            continue
        for new_head, factor in _rewrite_pair(head, bad, g, v, one):
            stack.append((new_head, tail, coeff * factor))
    return out


# ---------------------------------------------------------------------------
# Operators.
# ---------------------------------------------------------------------------


def q_apply_psi_star(index: int, vec: QFockVector, g: GFunction) -> QFockVector:
    """Creation: prepend u_index and straighten."""
    reg = vec.registry
    out = FockVector(reg)
    for (head, tail), coeff in vec.coeffs.items():
        if index <= tail:
            head, tail = materialize((head, tail), tail - index + 1)
        out = out + normal_order([((index,) + head, tail, coeff)], g)
    return out


def q_apply_Jk(k: int, vec: QFockVector, g: GFunction) -> QFockVector:
    """Current operator: displace one index by -k*n, then straighten.

    Every displaced head index is kept and straightened honestly, with the
    tail materialized far enough to expose the landing zone: a move into
    the sea usually dies on a repeated index, but its correction terms can
    resurrect at shallower depths.  Moves of true tail indices land below
    a fully occupied run and always straighten to zero, so they are
    skipped; for k < 0 the top |k|*n tail entries are materialized first
    because they can climb out.
    """
    if k == 0:
        raise ValueError("J_0 is not defined here")
    reg = vec.registry
    shift = -k * g.n
    out = FockVector(reg)
    for state, coeff in vec.coeffs.items():
        if shift > 0:
            state = materialize(state, shift)
        head, tail = state
        for i, s in enumerate(head):
            t = s + shift
            word_head, word_tail = head, tail
            if t <= word_tail:
                word_head, word_tail = materialize((head, tail), tail - t + 1)
            word = word_head[:i] + (t,) + word_head[i + 1:]
            out = out + normal_order([(word, word_tail, coeff)], g)
    return out


def q_apply_J_partition(piece: Sequence[int], vec: QFockVector, g: GFunction,
                        sign: int = 1) -> QFockVector:
    for part in reversed(tuple(piece)):
        vec = q_apply_Jk(sign * part, vec, g)
        if vec.is_zero():
            break
    return vec


def q_exp_pairing(target: State, source: QFockVector, H: HamiltonianParams,
                  g: GFunction) -> LaurentPoly:
    """<target| e^H |source> with e^H graded by displacement / n."""
    reg = H.registry
    step = 1 if H.sign == "plus" else -1
    w_t = state_weight(target)
    total = reg.zero()
    by_disp: Dict[int, QFockVector] = {}
    for state, coeff in source.coeffs.items():
        d = step * (state_weight(state) - w_t)
        if d < 0 or d % g.n != 0:
            continue
        by_disp.setdefault(d // g.n, FockVector(reg)).add_term(state, coeff)
    for slices, vec in sorted(by_disp.items()):
        if slices > H.degree_bound:
            raise ValueError(f"degree bound {H.degree_bound} < {slices} current steps")
        if slices == 0:
            c = vec.coeffs.get(target)
            if c is not None:
                total = total + c
            continue
        for piece in pt.partitions_of(slices):
            moved = q_apply_J_partition(piece, vec, g, sign=step)
            c = moved.coeffs.get(target)
            if c is None:
                continue
            mult: Dict[int, int] = {}
            for part in piece:
                mult[part] = mult.get(part, 0) + 1
            scale = Fraction(1)
            for m in mult.values():
                scale /= factorial(m)
            s_pi = reg.one()
            for part in piece:
                s_pi = s_pi * H.s_total(part)
            total = total + c * s_pi * scale
    return total


def q_tau(mu: Sequence[int], lam: Sequence[int], H: HamiltonianParams,
          g: GFunction) -> LaurentPoly:
    """<mu| e^H |lambda> on the metaplectic Fock space of g.

    Zero unless the lengths agree and n divides the displacement.
    """
    reg = H.registry
    mu = pt.check_strict(mu)
    lam = pt.check_strict(lam)
    if len(mu) != len(lam):
        return reg.zero()
    return q_exp_pairing(normal_state(mu), FockVector.basis(reg, lam), H, g)


def rho_star_apply(k: int, t: LaurentPoly, vec: QFockVector, g: GFunction) -> QFockVector:
    """rho*_k(t) = psi*_k - t psi*_{k-n}."""
    return q_apply_psi_star(k, vec, g) - q_apply_psi_star(k - g.n, vec, g).scale(t)


def rho_star_conjugation_check(
    k: int,
    zeta: LaurentPoly,
    tau: LaurentPoly,
    H: HamiltonianParams,
    g: GFunction,
    max_part: int = 4,
    max_len: int = 2,
) -> bool:
    """Verify e^{H_+} rho*_k(zeta) e^{-H_+} = rho*_k(tau) on matrix elements.

    Compares <mu| e^H rho*_k(zeta) |lambda> with <mu| rho*_k(tau) e^H |lambda>
    for all strict lambda with parts <= max_part, length <= max_len, and all
    reachable mu.
    """
    reg = H.registry
    if H.sign != "plus":
        raise ValueError("the conjugation lemma concerns e^{H_+}")
    mu_max = max(max_part, k)
    for lam in pt.enumerate_strict(max_part, max_length=max_len):
        lhs_vec = rho_star_apply(k, zeta, FockVector.basis(reg, lam), g)
        nus = [nu for nu in pt.enumerate_strict(max(list(lam) + [0]), length=len(lam))]
        nu_taus = {}
        for nu in nus:
            val = q_tau(nu, lam, H, g)
            if not val.is_zero():
                nu_taus[nu] = val
        for mu in pt.enumerate_strict(mu_max, length=len(lam) + 1):
            lhs = q_exp_pairing(normal_state(mu), lhs_vec, H, g)
            rhs = reg.zero()
            for nu, tval in nu_taus.items():
                created = rho_star_apply(k, tau, FockVector.basis(reg, nu), g)
                c = created.coeffs.get(normal_state(mu))
                if c is not None:
                    rhs = rhs + tval * c
            if lhs != rhs:
                return False
    return True
