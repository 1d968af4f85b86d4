"""Exact sparse Laurent-polynomial arithmetic over the rationals.

A polynomial is a dictionary mapping exponent vectors (one integer per
registry variable, negatives allowed) to nonzero Fraction coefficients.
The zero polynomial is the empty dict.  Two polynomials are equal iff
their registries and term dicts are equal, so canonical form is just
"no zero coefficients stored".

All arithmetic is exact; there is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

# Arbitrary-precision rational scalar: always lowest terms, denominator >= 1.
ExactScalar = Fraction

ScalarLike = Union[int, Fraction]


class RegistryMismatch(ValueError):
    pass


class InexactDivision(ArithmeticError):
    pass


class Registry:
    """Ordered list of named indeterminates.

    Index assignment is fixed at construction and never changes, so
    exponent vectors from the same registry are directly comparable.
    """

    __slots__ = ("names", "index", "_zero_exp")

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names!r}")
        self.names = names
        self.index = {name: i for i, name in enumerate(names)}
        self._zero_exp = (0,) * len(names)

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Registry) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Registry({list(self.names)!r})"

    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, {})

    def one(self) -> "LaurentPoly":
        return self.scalar(1)

    def scalar(self, c: ScalarLike) -> "LaurentPoly":
        c = Fraction(c)
        if c == 0:
            return LaurentPoly(self, {})
        return LaurentPoly(self, {self._zero_exp: c})

    def var(self, name: str, power: int = 1) -> "LaurentPoly":
        exp = [0] * len(self.names)
        exp[self.index[name]] = power
        return LaurentPoly(self, {tuple(exp): Fraction(1)})

    def monomial(self, coeff: ScalarLike, exps: Mapping[str, int]) -> "LaurentPoly":
        c = Fraction(coeff)
        if c == 0:
            return self.zero()
        exp = [0] * len(self.names)
        for name, e in exps.items():
            exp[self.index[name]] = e
        return LaurentPoly(self, {tuple(exp): c})


class LaurentPoly:
    """Sparse multivariate Laurent polynomial with Fraction coefficients."""

    __slots__ = ("registry", "terms", "_hash")

    def __init__(self, registry: Registry, terms: Mapping[tuple, Fraction]):
        self.registry = registry
        # Assume the caller passes canonical terms (no zeros); internal
        # constructors go through _make which filters.
        self.terms = dict(terms)
        self._hash = None

    @staticmethod
    def _make(registry: Registry, terms: dict) -> "LaurentPoly":
        return LaurentPoly(registry, {e: c for e, c in terms.items() if c != 0})

    # -- basic structure ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(e == self.registry._zero_exp for e in self.terms)

    def as_scalar(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_scalar():
            raise ValueError(f"not a scalar: {self}")
        return self.terms[self.registry._zero_exp]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> Fraction:
        return self.terms.get(self.registry._zero_exp, Fraction(0))

    def _check(self, other: "LaurentPoly") -> None:
        if self.registry != other.registry:
            raise RegistryMismatch(
                f"registry mismatch: {self.registry} vs {other.registry}"
            )

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.registry.scalar(other)
        return NotImplemented

    # -- ring operations -------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentPoly(self.registry, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.registry, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return self.registry.zero()
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return LaurentPoly(self.registry, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        result = self.registry.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_monomial():
            return self * other.inverse()
        return divexact(self, other)

    def inverse(self) -> "LaurentPoly":
        """Inverse of a single scaled monomial (Laurent units only)."""
        if len(self.terms) != 1:
            raise InexactDivision(f"not an invertible monomial: {self}")
        (e, c), = self.terms.items()
        return LaurentPoly(self.registry, {tuple(-x for x in e): Fraction(1) / c})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.registry.scalar(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.registry == other.registry and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.registry, frozenset(self.terms.items())))
        return self._hash

    # -- queries -----------------------------------------------------------

    def degree_in(self, names: Iterable[str]) -> int:
        """Max total degree over the given variables (0 for the zero poly)."""
        idx = [self.registry.index[n] for n in names]
        if not self.terms:
            return 0
        return max(sum(e[i] for i in idx) for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    # -- substitution, truncation ------------------------------------------

    def substitute(self, bindings: Mapping[str, object]) -> "LaurentPoly":
        """Substitute polynomials or scalars for variables.

        A variable occurring with negative exponents may only be bound to
        an invertible monomial or a nonzero scalar.
        """
        reg = self.registry
        idx_bind: dict = {}
        for name, val in bindings.items():
            i = reg.index[name]
            if isinstance(val, LaurentPoly):
                self._check(val)
                idx_bind[i] = val
            else:
                idx_bind[i] = reg.scalar(val)
        out = reg.zero()
        for e, c in self.terms.items():
            rest = list(e)
            factor = reg.one()
            ok = True
            for i, val in idx_bind.items():
                k = e[i]
                rest[i] = 0
                if k == 0:
                    continue
                if k < 0:
                    if val.is_zero():
                        raise ZeroDivisionError(
                            f"zero bound to negatively-exponentiated "
                            f"variable {reg.names[i]!r}"
                        )
                    val_k = val.inverse() ** (-k)
                else:
                    val_k = val ** k
                if val_k.is_zero():
                    ok = False
                    break
                factor = factor * val_k
            if not ok:
                continue
            out = out + factor * LaurentPoly(reg, {tuple(rest): c})
        return out

    def truncate(self, names: Iterable[str], max_total_degree) -> "LaurentPoly":
        """Drop monomials of total degree > max_total_degree in `names`.

        `max_total_degree=None` is the "infinity" sentinel (identity).
        All exponents of the truncation variables must be nonnegative.
        """
        if max_total_degree is None:
            return self
        idx = [self.registry.index[n] for n in names]
        out = {}
        for e, c in self.terms.items():
            d = 0
            for i in idx:
                if e[i] < 0:
                    raise ValueError(
                        f"negative exponent of {self.registry.names[i]!r} "
                        f"in truncation"
                    )
                d += e[i]
            if d <= max_total_degree:
                out[e] = c
        return LaurentPoly(self.registry, out)

    # -- rendering ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"LaurentPoly({render(self)!r})"

    def __str__(self) -> str:
        return render(self)


# ---------------------------------------------------------------------------
# Free functions (the operation surface used throughout the package).
# ---------------------------------------------------------------------------


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def poly_sub(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a - b


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def poly_neg(a: LaurentPoly) -> LaurentPoly:
    return -a


def poly_substitute(p: LaurentPoly, bindings: Mapping[str, object]) -> LaurentPoly:
    return p.substitute(bindings)


def poly_truncate(p: LaurentPoly, names: Iterable[str], max_total_degree) -> LaurentPoly:
    return p.truncate(names, max_total_degree)


def poly_det(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Determinant by cofactor expansion, memoized on column subsets.

    Never divides, so it is safe for arbitrary ring elements.  All uses in
    this package have size <= ~12.
    """
    m = len(matrix)
    if m == 0:
        raise ValueError("empty matrix has no registry; use registry.one()")
    for row in matrix:
        if len(row) != m:
            raise ValueError("matrix is not square")
    reg = matrix[0][0].registry
    cache: dict = {}

    def minor(cols: frozenset) -> LaurentPoly:
        if not cols:
            return reg.one()
        got = cache.get(cols)
        if got is not None:
            return got
        row = m - len(cols)
        total = reg.zero()
        sign = 1
        for col in sorted(cols):
            entry = matrix[row][col]
            if not entry.is_zero():
                sub = minor(cols - {col})
                total = total + (entry * sub if sign > 0 else -(entry * sub))
            sign = -sign
        cache[cols] = total
        return total

    return minor(frozenset(range(m)))


def poly_det_permsum(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Reference oracle: determinant straight from the permutation sum."""
    from itertools import permutations

    m = len(matrix)
    reg = matrix[0][0].registry
    total = reg.zero()
    for perm in permutations(range(m)):
        inv = sum(
            1 for i in range(m) for j in range(i + 1, m) if perm[i] > perm[j]
        )
        prod = reg.one()
        for i in range(m):
            prod = prod * matrix[i][perm[i]]
        total = total + (prod if inv % 2 == 0 else -prod)
    return total


def exp_truncated(p: LaurentPoly, names: Iterable[str], max_total_degree: int) -> LaurentPoly:
    """exp(p) truncated to total degree D in `names`.

    Requires every monomial of p to have positive degree in `names`, so the
    series Sum p^k / k! terminates at k = D.
    """
    names = list(names)
    idx = [p.registry.index[n] for n in names]
    for e in p.terms:
        d = sum(e[i] for i in idx)
        if d <= 0:
            raise ValueError("exp argument must have zero constant term")
    p = p.truncate(names, max_total_degree)
    result = p.registry.one()
    power = p.registry.one()
    fact = Fraction(1)
    for k in range(1, max_total_degree + 1):
        power = (power * p).truncate(names, max_total_degree)
        if power.is_zero():
            break
        fact *= k
        result = result + power * Fraction(1, fact)
    return result


def log_truncated(p: LaurentPoly, names: Iterable[str], max_total_degree: int) -> LaurentPoly:
    """log(p) truncated to total degree D in `names`; needs p = 1 + (positive degree)."""
    reg = p.registry
    u = p - reg.one()
    names = list(names)
    idx = [reg.index[n] for n in names]
    for e in u.terms:
        if sum(e[i] for i in idx) <= 0:
            raise ValueError("log argument must be 1 + higher-order terms")
    u = u.truncate(names, max_total_degree)
    result = reg.zero()
    power = reg.one()
    for k in range(1, max_total_degree + 1):
        power = (power * u).truncate(names, max_total_degree)
        if power.is_zero():
            break
        term = power * Fraction((-1) ** (k - 1), k)
        result = result + term
    return result


def _grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


def divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact division a / b; raises InexactDivision if b does not divide a.

    Single-divisor division in graded-lex order.  When the division is
    exact it terminates in exactly len(quotient) steps; a step cap turns
    non-terminating inexact inputs into an error.
    """
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return a.registry.zero()
    lead_b = max(b.terms, key=_grlex_key)
    cb = b.terms[lead_b]
    quotient = a.registry.zero()
    rem = a
    max_steps = 8 * (len(a.terms) + 2) * (len(b.terms) + 2) + 64
    for _ in range(max_steps):
        if rem.is_zero():
            return quotient
        lead_r = max(rem.terms, key=_grlex_key)
        e = tuple(x - y for x, y in zip(lead_r, lead_b))
        t = LaurentPoly(a.registry, {e: rem.terms[lead_r] / cb})
        quotient = quotient + t
        rem = rem - t * b
    raise InexactDivision("division did not terminate; inexact quotient")


# ---------------------------------------------------------------------------
# Canonical text rendering and parsing.
# ---------------------------------------------------------------------------


def render(p: LaurentPoly) -> str:
    """Canonical rendering: graded-lex descending, rationals as p/q."""
    if not p.terms:
        return "0"
    names = p.registry.names
    parts = []
    for e in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[e]
        factors = []
        for name, k in zip(names, e):
            if k == 0:
                continue
            factors.append(name if k == 1 else f"{name}^{k}")
        mono = "*".join(factors)
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        parts.append(("-" if c < 0 else "+", body))
    sign0, body0 = parts[0]
    out = body0 if sign0 == "+" else "-" + body0
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def parse(registry: Registry, text: str) -> LaurentPoly:
    """Parse the canonical rendering (and close variants) back to a poly.

    Grammar: terms joined by +/-, each term a '*'-separated product of
    rationals `p/q` and powers `name^k` (k may be negative).
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial string")
    if s == "0":
        return registry.zero()
    # Split on top-level + and - (no parentheses in the canonical form).
    terms = []
    cur = ""
    sign = 1
    i = 0
    if s[0] == "-":
        sign = -1
        i = 1
    elif s[0] == "+":
        i = 1
    while i < len(s):
        ch = s[i]
        if ch in "+-":
            terms.append((sign, cur))
            cur = ""
            sign = 1 if ch == "+" else -1
        else:
            cur += ch
        i += 1
    terms.append((sign, cur))

    total = registry.zero()
    for sgn, term in terms:
        if not term:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = Fraction(sgn)
        exps: dict = {}
        for factor in term.split("*"):
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            name, _, power = factor.partition("^")
            if name in registry.index:
                k = int(power) if power else 1
                exps[name] = exps.get(name, 0) + k
            else:
                if power:
                    base = Fraction(name)
                    coeff *= base ** int(power)
                else:
                    coeff *= Fraction(factor)
        total = total + registry.monomial(coeff, exps)
    return total
