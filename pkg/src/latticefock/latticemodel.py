"""Six-vertex models, charged (2n+4)-vertex models, and their partition
functions by brute-force state enumeration and by transfer matrices.

Edge encoding
-------------
Vertical edges carry a plain spin: True = minus (particle), False = plus.
Horizontal edges carry a decorated spin: None = plus, or an integer charge
in [0, n) for a minus edge.  For n = 1 every charge is 0 and the models
reduce to the ordinary six-vertex pair.

Grid layout: physical rows r = 0..N-1 top to bottom, columns c = 0..M
left to right.  `vertical[r][c]` is the edge above row r (so row 0 of the
array is the top boundary and row N the bottom); `horizontal[r][c]` is the
edge left of column c in row r, with c = M+1 the right boundary stub.

Path conventions (how the admissibility tables below arise):

* delta kind: rows are labelled 1..N bottom to top, the bottom boundary
  carries lambda, paths travel up and left, and a traveling particle's
  charge increases by one per column (c1 emits at charge 1, c2 absorbs
  at charge 0 mod n).
* gamma kind: rows are labelled 1..N top to bottom, the top boundary
  carries lambda, paths travel down and left, charges decrease leftward.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from .exactpoly import LaurentPoly, Registry
from . import partitions as pt

Spin = Optional[int]  # horizontal decorated spin


class EnumerationLimit(RuntimeError):
    pass


@dataclass
class RowWeights:
    a1: LaurentPoly
    a2: List[LaurentPoly]  # indexed by charge, length n
    b1: LaurentPoly
    b2: List[LaurentPoly]
    c1: LaurentPoly
    c2: LaurentPoly

    def table(self) -> Dict[str, object]:
        return {"a1": self.a1, "a2": self.a2, "b1": self.b1,
                "b2": self.b2, "c1": self.c1, "c2": self.c2}


@dataclass
class VertexWeights:
    """Per-row Boltzmann weights plus the orientation tag."""

    registry: Registry
    n: int
    kind: str  # "delta" | "gamma"
    rows: List[RowWeights]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("delta", "gamma"):
            raise ValueError(f"kind must be delta or gamma, got {self.kind!r}")
        for rw in self.rows:
            if len(rw.a2) != self.n or len(rw.b2) != self.n:
                raise ValueError("a2/b2 tables must have n entries")

    @property
    def n_rows(self) -> int:
        return len(self.rows)


def _vertex_weight(w: VertexWeights, row: RowWeights,
                   left: Spin, top: bool, right: Spin, bottom: bool):
    """Weight of one vertex, or None if inadmissible."""
    n = w.n
    if w.kind == "delta":
        if left is None and right is None:
            if not top and not bottom:
                return row.a1
            if top and bottom:
                return row.b1
            return None
        if left is not None and right is not None:
            if (left - right) % n != 1:
                return None
            if top and bottom:
                return row.a2[right % n]
            if not top and not bottom:
                return row.b2[right % n]
            return None
        if left is not None:  # minus enters the vertex from the left only
            if (not top) and bottom and left % n == 1 % n:
                return row.c1
            return None
        # right minus only
        if top and (not bottom) and right % n == 0:
            return row.c2
        return None
    # gamma
    if left is None and right is None:
        if not top and not bottom:
            return row.a1
        if top and bottom:
            return row.b1
        return None
    if left is not None and right is not None:
        if (right - left) % n != 1:
            return None
        if top and bottom:
            return row.a2[left % n]
        if not top and not bottom:
            return row.b2[left % n]
        return None
    if right is not None:
        if (not top) and bottom and right % n == 1 % n:
            return row.c1
        return None
    if top and (not bottom) and left % n == 0:
        return row.c2
    return None


def _solve_right(w: VertexWeights, row: RowWeights,
                 left: Spin, top: bool, bottom: bool):
    """Unique (right, weight) given the other three edges, or None."""
    n = w.n
    if w.kind == "delta":
        if left is None:
            if top == bottom:
                return None, (row.a1 if not top else row.b1)
            if top and not bottom:
                return 0, row.c2
            return None  # bottom minus cannot exit
        if top == bottom:
            r = (left - 1) % n
            return r, (row.a2[r] if top else row.b2[r])
        if (not top) and bottom and left % n == 1 % n:
            return None, row.c1
        return None
    # gamma
    if left is None:
        if top == bottom:
            return None, (row.a1 if not top else row.b1)
        if (not top) and bottom:
            return 1 % n, row.c1
        return None
    if top == bottom:
        r = (left + 1) % n
        return r, (row.a2[left % n] if top else row.b2[left % n])
    if top and (not bottom) and left % n == 0:
        return None, row.c2
    return None


@dataclass
class ModelSpec:
    """Weights + grid + boundary data; top/bottom are strict partitions of
    column indices, left/right are strict partitions of row labels."""

    weights: VertexWeights
    m_cols: int  # columns 0..M
    top: Tuple[int, ...]
    bottom: Tuple[int, ...]
    left: Tuple[int, ...] = ()
    right: Tuple[int, ...] = ()
    safety_limit: int = 10 ** 7

    def __post_init__(self):
        self.top = pt.check_strict(self.top)
        self.bottom = pt.check_strict(self.bottom)
        for p in (self.top, self.bottom):
            if p and p[0] > self.m_cols:
                raise ValueError(f"M={self.m_cols} smaller than boundary part {p[0]}")
        for side in (self.left, self.right):
            if any(x < 1 or x > self.weights.n_rows for x in side):
                raise ValueError("side boundary parts must be row labels in 1..N")

    @property
    def n_rows(self) -> int:
        return self.weights.n_rows

    def row_label(self, r: int) -> int:
        """Weight-row label of physical row r (0 = top)."""
        if self.weights.kind == "delta":
            return self.n_rows - r
        return r + 1

    def row_weights(self, r: int) -> RowWeights:
        return self.weights.rows[self.row_label(r) - 1]


def model_spec(weights: VertexWeights, lam, mu, M: int,
               alpha=(), beta=(), safety_limit: int = 10 ** 7) -> ModelSpec:
    """Boundary placement by kind: delta puts lambda on the bottom boundary
    and mu on top; gamma the reverse.  alpha/beta are the right/left rows."""
    lam = pt.check_strict(lam)
    mu = pt.check_strict(mu)
    if weights.kind == "delta":
        top, bottom = mu, lam
    else:
        top, bottom = lam, mu
    return ModelSpec(weights, M, top, bottom, tuple(beta), tuple(alpha), safety_limit)


@dataclass
class LatticeState:
    vertical: Tuple[Tuple[bool, ...], ...]    # (N+1) x (M+1)
    horizontal: Tuple[Tuple[Spin, ...], ...]  # N x (M+2)

    def weight(self, spec: ModelSpec) -> LaurentPoly:
        w = spec.weights.registry.one()
        for r in range(spec.n_rows):
            row = spec.row_weights(r)
            for c in range(spec.m_cols + 1):
                val = _vertex_weight(
                    spec.weights, row,
                    self.horizontal[r][c], self.vertical[r][c],
                    self.horizontal[r][c + 1], self.vertical[r + 1][c],
                )
                if val is None:
                    raise ValueError("inadmissible vertex in state")
                w = w * val
        return w


def _boundary_rows(spec: ModelSpec):
    top = tuple(c in spec.top for c in range(spec.m_cols + 1))
    bottom = tuple(c in spec.bottom for c in range(spec.m_cols + 1))
    left = tuple(spec.row_label(r) in spec.left for r in range(spec.n_rows))
    right = tuple(spec.row_label(r) in spec.right for r in range(spec.n_rows))
    return top, bottom, left, right


def _enumerate_weighted(spec: ModelSpec):
    """DFS column by column; yields (state, weight) in deterministic order.

    Columns are processed left to right; in each column the free internal
    vertical edges are enumerated and the right-going horizontal spins are
    forced vertex by vertex.
    """
    N, M = spec.n_rows, spec.m_cols
    top, bottom, left_stub, right_stub = _boundary_rows(spec)
    reg = spec.weights.registry
    rows = [spec.row_weights(r) for r in range(N)]
    n = spec.weights.n
    budget = [spec.safety_limit]

    # Left boundary stubs: minus stubs need a charge; enumerate all values.
    def stub_choices(is_minus: bool):
        return [None] if not is_minus else list(range(n))

    def column_options(frontier, c):
        """All (new_frontier, column_weight, verticals) for column c."""
        opts = []
        free = 1 << max(N - 1, 0)
        for mask in range(free if N > 1 else 1):
            budget[0] -= 1
            if budget[0] < 0:
                raise EnumerationLimit(
                    f"enumeration exceeded safety limit {spec.safety_limit}")
            verts = [top[c]]
            for r in range(1, N):
                verts.append(bool(mask >> (r - 1) & 1))
            verts.append(bottom[c])
            wgt = reg.one()
            out = []
            ok = True
            for r in range(N):
                solved = _solve_right(spec.weights, rows[r],
                                      frontier[r], verts[r], verts[r + 1])
                if solved is None:
                    ok = False
                    break
                rspin, val = solved
                out.append(rspin)
                wgt = wgt * val
            if ok:
                opts.append((tuple(out), wgt, tuple(verts)))
        return opts

    def dfs(c, frontier, weight, h_cols, v_cols):
        if c > M:
            for r in range(N):
                want = right_stub[r]
                have = frontier[r] is not None
                if want != have:
                    return
            yield frontier, weight, h_cols, v_cols
            return
        for new_frontier, wgt, verts in column_options(frontier, c):
            yield from dfs(c + 1, new_frontier, weight * wgt,
                           h_cols + [frontier], v_cols + [verts])

    for stubs in _product_of_choices([stub_choices(s) for s in left_stub]):
        for last, weight, h_cols, v_cols in dfs(0, tuple(stubs), reg.one(), [], []):
            h_cols = h_cols + [last]
            horizontal = tuple(
                tuple(h_cols[c][r] for c in range(M + 2)) for r in range(N)
            )
            vertical = tuple(
                tuple(v_cols[c][r] for c in range(M + 1)) for r in range(N + 1)
            )
            yield LatticeState(vertical, horizontal), weight


def _product_of_choices(choices):
    if not choices:
        yield ()
        return
    for first in choices[0]:
        for rest in _product_of_choices(choices[1:]):
            yield (first,) + rest


def enumerate_states(spec: ModelSpec) -> List[LatticeState]:
    return [st for st, _ in _enumerate_weighted(spec)]


def partition_function(spec: ModelSpec, method: str = "brute") -> LaurentPoly:
    reg = spec.weights.registry
    if method == "brute":
        total = reg.zero()
        for _, w in _enumerate_weighted(spec):
            total = total + w
        return total
    if method == "transfer":
        if spec.left or spec.right:
            raise ValueError("transfer method needs empty side boundaries")
        return _transfer_Z(spec)
    raise ValueError(f"unknown method {method!r}")


def one_row_Z(weights: VertexWeights, label: int, bottom, top, M: int) -> LaurentPoly:
    """Single-row partition function by the left-to-right forced sweep."""
    reg = weights.registry
    row = weights.rows[label - 1]
    left: Spin = None
    total = reg.one()
    for c in range(M + 1):
        solved = _solve_right(weights, row, left, c in top, c in bottom)
        if solved is None:
            return reg.zero()
        left, val = solved
        total = total * val
    if left is not None:
        return reg.zero()
    return total


def _transfer_Z(spec: ModelSpec) -> LaurentPoly:
    """Compose row transfer matrices over the fixed-particle-number basis."""
    reg = spec.weights.registry
    N, M = spec.n_rows, spec.m_cols
    ell = len(spec.bottom)
    if len(spec.top) != ell:
        return reg.zero()
    basis = pt.enumerate_strict(M, length=ell)
    frontier = {spec.bottom: reg.one()}
    for r in range(N - 1, -1, -1):  # bottom physical row first
        label = spec.row_label(r)
        new: Dict[tuple, LaurentPoly] = {}
        for nu in basis:
            acc = reg.zero()
            for kappa, c in frontier.items():
                z = one_row_Z(spec.weights, label, kappa, nu, M)
                if not z.is_zero():
                    acc = acc + c * z
            if not acc.is_zero():
                new[nu] = acc
        frontier = new
    return frontier.get(spec.top, reg.zero())


def transfer_matrix(weights: VertexWeights, label: int, M: int, ell: int):
    """Row transfer matrix over strict partitions with `ell` parts <= M."""
    basis = pt.enumerate_strict(M, length=ell)
    return {
        (mu, lam): one_row_Z(weights, label, lam, mu, M)
        for mu in basis
        for lam in basis
    }


# ---------------------------------------------------------------------------
# Standard weight families.
# ---------------------------------------------------------------------------


def standard_registry(N: int, n: int = 1, charged: bool = False,
                      extra: Sequence[str] = ()) -> Registry:
    names = []
    for base in ("x", "y", "A", "B"):
        names += [f"{base}{i}" for i in range(1, N + 1)]
    if charged:
        names += ["q", "w"] + [f"f{a}" for a in range(n)]
    names += list(extra)
    return Registry(names)


def standard_weights(kind: str, registry: Registry, N: int, n: int = 1,
                     f: Optional[List[LaurentPoly]] = None,
                     h: Optional[List[LaurentPoly]] = None,
                     xs: Optional[List[LaurentPoly]] = None,
                     ys: Optional[List[LaurentPoly]] = None,
                     As: Optional[List[LaurentPoly]] = None,
                     Bs: Optional[List[LaurentPoly]] = None) -> VertexWeights:
    """The six-vertex weight families.

    kind delta:  a1=A, a2(a)=h(a) y A B, b1=A B, b2(a)=f(a) x A,
                 c1=(f(0)x+h(0)y) A B, c2=A.
    kind gamma:  a1=1/A, a2(a)=f(a) x/(A B), b1=1/(A B), b2(a)=h(a) y/A,
                 c1=(f(0)x+h(0)y)/A, c2=1/(A B).
    Uncharged (n=1, f=h=1) these are the classical delta/gamma tables.
    The row parameters default to the registry variables x_i, y_i, A_i, B_i.
    """
    reg = registry
    one = reg.one()
    if f is None:
        f = [one] * n
    if h is None:
        h = [one] * n
    if len(f) != n or len(h) != n:
        raise ValueError("f/h tables must have n entries")
    if xs is None:
        xs = [reg.var(f"x{i}") for i in range(1, N + 1)]
    if ys is None:
        ys = [reg.var(f"y{i}") for i in range(1, N + 1)]
    if As is None:
        As = [reg.var(f"A{i}") for i in range(1, N + 1)]
    if Bs is None:
        Bs = [reg.var(f"B{i}") for i in range(1, N + 1)]
    rows = []
    for i in range(N):
        x, y, A, B = xs[i], ys[i], As[i], Bs[i]
        Ainv, Binv = A.inverse(), B.inverse()
        if kind == "delta":
            rows.append(RowWeights(
                a1=A,
                a2=[h[a] * y * A * B for a in range(n)],
                b1=A * B,
                b2=[f[a] * x * A for a in range(n)],
                c1=(f[0] * x + h[0] * y) * A * B,
                c2=A,
            ))
        elif kind == "gamma":
            rows.append(RowWeights(
                a1=Ainv,
                a2=[f[a] * x * Ainv * Binv for a in range(n)],
                b1=Ainv * Binv,
                b2=[h[a] * y * Ainv for a in range(n)],
                c1=(f[0] * x + h[0] * y) * Ainv,
                c2=Ainv * Binv,
            ))
        else:
            raise ValueError(f"unknown kind {kind!r}")
    meta = {"family": "standard", "f": list(f), "h": list(h),
            "xs": list(xs), "ys": list(ys), "As": list(As), "Bs": list(Bs)}
    return VertexWeights(reg, n, kind, rows, meta)


def standard_charged_ff(kind: str, registry: Registry, N: int, n: int):
    """Generalized free fermionic family.

    The charge condition forces y_i / x_i to be a global square, so the
    family is parametrized by x_i, A_i, B_i and one extra unit w with
    y_i = w^2 x_i; the f(a) are free and h(0) = -q^2 f(0),
    h(a) = q f(a) / w for a != 0.  The attached metaplectic table is then
    g(a) = q w, g(0) = -(q w)^2.
    """
    q = registry.var("q")
    w = registry.var("w")
    f = [registry.var(f"f{a}") for a in range(n)]
    h = [-(q * q) * f[0]] + [q * f[a] * w.inverse() for a in range(1, n)]
    xs = [registry.var(f"x{i}") for i in range(1, N + 1)]
    ys = [w * w * x for x in xs]
    return standard_weights(kind, registry, N, n, f, h, xs=xs, ys=ys)


def generic_weights(registry: Registry, N: int, n: int, prefix: str = "") -> VertexWeights:
    """Fully generic delta-orientation tables: every weight its own variable.

    The registry must contain {prefix}a1_i, {prefix}a2_i_c, ... names.
    """
    rows = []
    for i in range(1, N + 1):
        rows.append(RowWeights(
            a1=registry.var(f"{prefix}a1_{i}"),
            a2=[registry.var(f"{prefix}a2_{i}_{c}") for c in range(n)],
            b1=registry.var(f"{prefix}b1_{i}"),
            b2=[registry.var(f"{prefix}b2_{i}_{c}") for c in range(n)],
            c1=registry.var(f"{prefix}c1_{i}"),
            c2=registry.var(f"{prefix}c2_{i}"),
        ))
    return VertexWeights(registry, n, "delta", rows)


def generic_registry(N: int, n: int, prefix: str = "", extra: Sequence[str] = ()) -> Registry:
    names = []
    for i in range(1, N + 1):
        names += [f"{prefix}a1_{i}", f"{prefix}b1_{i}", f"{prefix}c1_{i}", f"{prefix}c2_{i}"]
        names += [f"{prefix}a2_{i}_{c}" for c in range(n)]
        names += [f"{prefix}b2_{i}_{c}" for c in range(n)]
    return Registry(names + list(extra))


# ---------------------------------------------------------------------------
# Free fermion conditions.
# ---------------------------------------------------------------------------


def free_fermion_check(w: VertexWeights) -> dict:
    """Zero-charge condition, charge condition, row-independence, Delta=0.

    Ratio conditions are checked after clearing denominators; Delta = 0 is
    reported as vanishing of a1 a2(0) + b1 b2(0) - c1 c2 (no square roots).
    """
    zero = w.registry.zero()
    numerators = []
    zero_charge = True
    for rw in w.rows:
        num = rw.a1 * rw.a2[0] + rw.b1 * rw.b2[0] - rw.c1 * rw.c2
        numerators.append(num)
        if num != zero:
            zero_charge = False

    charge_condition = True
    for rw in w.rows:
        for a in range(1, w.n):
            lhs = rw.a1 * rw.a2[a] * rw.a2[(-a) % w.n] * rw.b2[0]
            rhs = -(rw.a2[0] * rw.b1 * rw.b2[a] * rw.b2[(-a) % w.n])
            if lhs != rhs:
                charge_condition = False

    independence = True
    for i in range(len(w.rows)):
        for j in range(i + 1, len(w.rows)):
            wi, wj = w.rows[i], w.rows[j]
            for a in range(w.n):
                if wi.a1 * wi.a2[a] * wj.b1 * wj.b2[a] != wj.a1 * wj.a2[a] * wi.b1 * wi.b2[a]:
                    independence = False
            if wi.a1 * wi.a2[0] * wj.c1 * wj.c2 != wj.a1 * wj.a2[0] * wi.c1 * wi.c2:
                independence = False
            if wi.b1 * wi.b2[0] * wj.c1 * wj.c2 != wj.b1 * wj.b2[0] * wi.c1 * wi.c2:
                independence = False

    # Delta constancy without square roots: num_i^2 den_j == num_j^2 den_i.
    delta_constant = True
    dens = [rw.a1 * rw.a2[0] * rw.b1 * rw.b2[0] for rw in w.rows]
    for i in range(len(w.rows)):
        for j in range(i + 1, len(w.rows)):
            if numerators[i] * numerators[i] * dens[j] != numerators[j] * numerators[j] * dens[i]:
                delta_constant = False

    return {
        "zero_charge": zero_charge,
        "charge_condition": charge_condition,
        "independence": independence,
        "delta_zero": zero_charge,
        "delta_constant": delta_constant,
        "delta_numerators": numerators,
    }


def g_from_weights(w: VertexWeights):
    """Recover the twist table g(a) = a1 a2(a) / (b1 b2(a)) per row (divexact)."""
    from .exactpoly import divexact

    tables = []
    for rw in w.rows:
        tables.append([
            divexact(rw.a1 * rw.a2[a], rw.b1 * rw.b2[a]) for a in range(w.n)
        ])
    for t in tables[1:]:
        if t != tables[0]:
            raise ValueError("rows disagree on g; weights aren't uniformly twisted")
    return tables[0]


# ---------------------------------------------------------------------------
# Model transformations.
# ---------------------------------------------------------------------------


def _flip_rows(kind_to: str, w: VertexWeights) -> VertexWeights:
    """Vertical flip: c1/c2 swap, charge labels reflected a -> -a."""
    rows = []
    for rw in w.rows:
        rows.append(RowWeights(
            a1=rw.a1,
            a2=[rw.a2[(-a) % w.n] for a in range(w.n)],
            b1=rw.b1,
            b2=[rw.b2[(-a) % w.n] for a in range(w.n)],
            c1=rw.c2,
            c2=rw.c1,
        ))
    return VertexWeights(w.registry, w.n, kind_to, rows, dict(w.meta))


def _rotate_rows(kind_to: str, w: VertexWeights) -> VertexWeights:
    """180-degree rotation with vertical-spin flip: a and b types swap."""
    rows = []
    for rw in w.rows:
        rows.append(RowWeights(
            a1=rw.b1,
            a2=list(rw.b2),
            b1=rw.a1,
            b2=list(rw.a2),
            c1=rw.c1,
            c2=rw.c2,
        ))
    return VertexWeights(w.registry, w.n, kind_to, rows, dict(w.meta))


def transform_model(spec: ModelSpec, which: str) -> ModelSpec:
    """Geometric transformations; both preserve the partition function
    exactly (they are weight-preserving bijections on admissible states).

    * vertical_flip: reflect over a horizontal axis (top/bottom boundaries
      swap, c-vertices swap, charges reflect).
    * rotate180: rotate the grid and flip vertical spins (boundary
      partitions are complement-reversed, a/b types swap, sides swap).
    """
    other = "gamma" if spec.weights.kind == "delta" else "delta"
    if which == "vertical_flip":
        return ModelSpec(
            _flip_rows(other, spec.weights), spec.m_cols,
            top=spec.bottom, bottom=spec.top,
            left=spec.left, right=spec.right,
            safety_limit=spec.safety_limit,
        )
    if which == "rotate180":
        return ModelSpec(
            _rotate_rows(other, spec.weights), spec.m_cols,
            top=pt.complement_reverse(spec.bottom, spec.m_cols),
            bottom=pt.complement_reverse(spec.top, spec.m_cols),
            left=spec.right, right=spec.left,
            safety_limit=spec.safety_limit,
        )
    raise ValueError(f"unknown transformation {which!r}")


def extended_boundary_Z(lam, mu, alpha, beta, weights: VertexWeights, M: int,
                        safety_limit: int = 10 ** 7) -> LaurentPoly:
    """Brute-force Z with side boundaries: right minus on rows of alpha,
    left minus on rows of beta."""
    alpha = pt.check_strict(alpha)
    beta = pt.check_strict(beta)
    if any(x < 1 for x in alpha + beta):
        raise ValueError("side boundary parts must be positive row labels")
    spec = model_spec(weights, lam, mu, M, alpha=alpha, beta=beta,
                      safety_limit=safety_limit)
    return partition_function(spec, "brute")


# ---------------------------------------------------------------------------
# Column-restricted transfer matrix (proof machinery for charged models).
# ---------------------------------------------------------------------------


def t_hat_element(weights: VertexWeights, k: int, lam, mu, label: int = 1):
    """<mu| T_hat_k |lambda>: window of columns k-n..k, right edge +,
    leftmost spin forced by a right-to-left sweep.

    Returns (weight, left_spin); weight is zero when the window is
    inadmissible or when lambda and mu disagree outside the window.
    """
    reg = weights.registry
    n = weights.n
    lam = pt.check_strict(lam)
    mu = pt.check_strict(mu)
    window = range(k - n, k + 1)
    if set(lam) - set(window) != set(mu) - set(window):
        return reg.zero(), None
    row = weights.rows[label - 1]
    right: Spin = None
    total = reg.one()
    for c in range(k, k - n - 1, -1):
        solved = _solve_left(weights, row, right, c in mu, c in lam)
        if solved is None:
            return reg.zero(), None
        left, val = solved
        total = total * val
        right = left
    return total, right


def _solve_left(w: VertexWeights, row: RowWeights,
                right: Spin, top: bool, bottom: bool):
    """Unique (left, weight) given top/bottom/right edges, or None."""
    n = w.n
    if w.kind == "delta":
        if right is None:
            if top == bottom:
                return None, (row.a1 if not top else row.b1)
            if (not top) and bottom:
                return 1 % n, row.c1
            return None
        if top == bottom:
            ch = (right + 1) % n
            return ch, (row.a2[right % n] if top else row.b2[right % n])
        if top and (not bottom) and right % n == 0:
            return None, row.c2
        return None
    raise ValueError("T_hat is defined for the delta orientation")


def column_restricted_transfer(weights: VertexWeights, k: int, max_part: int,
                               length: int, label: int = 1) -> Dict[tuple, LaurentPoly]:
    """Matrix of T_hat_k over strict partitions with `length` parts <= max_part."""
    basis = pt.enumerate_strict(max_part, length=length)
    out = {}
    for mu in basis:
        for lam in basis:
            val, _ = t_hat_element(weights, k, lam, mu, label)
            if not val.is_zero():
                out[(mu, lam)] = val
    return out


def column_transfer_Z(weights: VertexWeights, label: int, bottom, top, M: int) -> LaurentPoly:
    """One-row Z as a sliding product of single-column transfer steps.

    This is the window factorization behind T_hat: each column c maps the
    incoming left spin to the forced right spin; chaining columns 0..M with
    plus outer boundaries reproduces the row partition function.
    """
    reg = weights.registry
    row = weights.rows[label - 1]
    states: Dict[Spin, LaurentPoly] = {None: reg.one()}
    for c in range(M + 1):
        new: Dict[Spin, LaurentPoly] = {}
        for left, acc in states.items():
            solved = _solve_right(weights, row, left, c in top, c in bottom)
            if solved is None:
                continue
            right, val = solved
            cur = new.get(right)
            term = acc * val
            new[right] = term if cur is None else cur + term
        states = new
    return states.get(None, reg.zero())
