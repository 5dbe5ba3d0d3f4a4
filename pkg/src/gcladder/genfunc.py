"""f-polynomials, truncated exponential generating functions, and the
differential operators acting on them.

The f-polynomial of a composition counts faces of its ladder diagram by
dimension.  It satisfies a recursion over assignment words, which is what
``f_polynomial`` evaluates (memoized on reduced compositions, with the
empty composition as base case F = 1).

``fpolynomial_egf`` assembles the exponential generating function of the
f-polynomials, truncated at a total degree, with exact rational
coefficients: the coefficient of x^k is F_k(t)/k!.  ``DiffOperator``
implements exact constant-coefficient operators built from first-order
partial derivatives and multiplication by t; applying an operator of order
m to a truncation of degree N leaves coefficients that are trustworthy
only up to N - m, and the series tracks that bound explicitly.

The verification entry points check, coefficient by coefficient, that the
truncated generating functions are annihilated by the expected operators.
All arithmetic is exact; a nonzero residual is a failure report, never an
approximation artifact.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .words import (
    all_words,
    d_transform,
    interleave,
    r_transform,
    reduce_composition,
    word_tilde,
    word_transforms,  # noqa: F401  (part of this module's public surface)
    word_weight,
)


class TPoly:
    """Dense univariate polynomial in t with exact coefficients.

    Coefficients are ints or Fractions; index = power of t.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other):
        if not isinstance(other, TPoly):
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        return TPoly(
            self.coefficient(i) + other.coefficient(i) for i in range(size)
        )

    def __sub__(self, other):
        if not isinstance(other, TPoly):
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        return TPoly(
            self.coefficient(i) - other.coefficient(i) for i in range(size)
        )

    def __neg__(self):
        return TPoly(-c for c in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, TPoly):
            if self.is_zero or other.is_zero:
                return TPoly()
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return TPoly(out)
        return TPoly(c * other for c in self.coeffs)

    def __rmul__(self, other):
        return self.__mul__(other)

    def shift(self, j):
        """Multiply by t^j."""
        if self.is_zero or j == 0:
            return self if j == 0 else TPoly()
        return TPoly((0,) * j + self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TPoly({self.coeffs!r})"

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficient(i)
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("t" if c == 1 else f"{c} t")
            else:
                parts.append(f"t^{i}" if c == 1 else f"{c} t^{i}")
        return " + ".join(parts)


TPoly.ZERO = TPoly()
TPoly.ONE = TPoly((1,))


@functools.lru_cache(maxsize=None)
def _f_polynomial_reduced(comp):
    if not comp:
        return TPoly.ONE
    acc = TPoly.ZERO
    for w in all_words(len(comp) - 1):
        child = reduce_composition(interleave(r_transform(comp, w), word_tilde(w)))
        acc = acc + _f_polynomial_reduced(child).shift(word_weight(w))
    return acc


def f_polynomial(k):
    """Face-count polynomial of the diagram of k (exact, memoized)."""
    return _f_polynomial_reduced(reduce_composition(k))


def f_vector(k):
    """Face counts by dimension, lowest first."""
    return tuple(f_polynomial(k).coeffs)


def _factorial_product(exps):
    out = 1
    for e in exps:
        for i in range(2, e + 1):
            out *= i
    return out


def bounded_exponents(num_vars, max_total):
    """All exponent vectors of the given length with total degree bound."""
    if num_vars == 0:
        return [()] if max_total >= 0 else []
    out = []
    for exps in product(range(max_total + 1), repeat=num_vars):
        if sum(exps) <= max_total:
            out.append(exps)
    return out


class TruncatedSeries:
    """Multivariate series with polynomial-in-t coefficients, truncated by
    total degree.

    ``validity_degree`` bounds the total degree up to which stored
    coefficients are exact; arithmetic preserves it and differential
    operators lower it by their order.  Terms beyond it are never stored.
    """

    __slots__ = ("num_vars", "validity_degree", "terms")

    def __init__(self, num_vars, validity_degree, terms=None):
        self.num_vars = num_vars
        self.validity_degree = validity_degree
        clean = {}
        for exps, poly in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != num_vars:
                raise ValueError(f"exponent vector {exps} has wrong length")
            if sum(exps) > validity_degree:
                raise ValueError(
                    f"term {exps} exceeds validity degree {validity_degree}"
                )
            if not isinstance(poly, TPoly):
                poly = TPoly(poly)
            if poly:
                clean[exps] = poly
        self.terms = clean

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), TPoly.ZERO)

    @property
    def is_zero(self):
        return not self.terms

    def _binop(self, other, op):
        if self.num_vars != other.num_vars:
            raise ValueError("series variable counts differ")
        validity = min(self.validity_degree, other.validity_degree)
        keys = set(self.terms) | set(other.terms)
        terms = {}
        for k in keys:
            if sum(k) > validity:
                continue
            terms[k] = op(self.coefficient(k), other.coefficient(k))
        return TruncatedSeries(self.num_vars, validity, terms)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def scale(self, c):
        return TruncatedSeries(
            self.num_vars,
            self.validity_degree,
            {k: p * c for k, p in self.terms.items()},
        )

    def at_t_zero(self):
        """Specialize every coefficient polynomial at t = 0."""
        return TruncatedSeries(
            self.num_vars,
            self.validity_degree,
            {k: TPoly((p.coefficient(0),)) for k, p in self.terms.items()},
        )

    def truncated(self, validity_degree):
        if validity_degree > self.validity_degree:
            raise ValueError("cannot raise a truncation's validity degree")
        terms = {k: p for k, p in self.terms.items() if sum(k) <= validity_degree}
        return TruncatedSeries(self.num_vars, validity_degree, terms)

    def nonzero_terms(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.validity_degree == other.validity_degree
            and self.terms == other.terms
        )

    def __repr__(self):
        return (
            f"TruncatedSeries(vars={self.num_vars}, "
            f"valid<={self.validity_degree}, terms={len(self.terms)})"
        )


def restrict_to_zero(series, zero_vars):
    """Set the listed variables to zero and project them out.

    Implemented through explicit index maps: terms touching a zeroed
    variable are dropped, surviving exponent vectors are re-indexed onto
    the remaining positions.
    """
    zero = sorted(set(zero_vars))
    for z in zero:
        if not 0 <= z < series.num_vars:
            raise ValueError(f"variable index {z} out of range")
    keep = [i for i in range(series.num_vars) if i not in set(zero)]
    terms = {}
    for exps, poly in series.terms.items():
        if any(exps[z] for z in zero):
            continue
        terms[tuple(exps[i] for i in keep)] = poly
    return TruncatedSeries(len(keep), series.validity_degree, terms)


def fpolynomial_egf(num_vars, degree):
    """Truncated EGF of f-polynomials: coefficient of x^k is F_k(t)/k!."""
    if num_vars < 1:
        raise ValueError("need at least one variable")
    if degree < 0:
        raise ValueError("degree bound must be non-negative")
    terms = {}
    for exps in bounded_exponents(num_vars, degree):
        poly = f_polynomial(exps) * Fraction(1, _factorial_product(exps))
        terms[exps] = poly
    return TruncatedSeries(num_vars, degree, terms)


def vertex_count_egf(num_vars, degree):
    """Truncated EGF of vertex counts (the t = 0 specialization)."""
    return fpolynomial_egf(num_vars, degree).at_t_zero()


class DiffOperator:
    """Exact constant-coefficient operator on truncated series.

    A finite rational combination of monomials t^p * (mixed partial
    derivative); the generators all commute, so this expanded form is a
    normal form for any sum/product expression in them.
    """

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars, terms=None):
        self.num_vars = num_vars
        clean = {}
        for (t_pow, orders), coeff in (terms or {}).items():
            orders = tuple(orders)
            if len(orders) != num_vars:
                raise ValueError(f"derivative orders {orders} have wrong length")
            coeff = Fraction(coeff)
            if coeff:
                clean[(t_pow, orders)] = coeff
        self.terms = clean

    @classmethod
    def identity(cls, num_vars):
        return cls(num_vars, {(0, (0,) * num_vars): 1})

    @classmethod
    def partial(cls, num_vars, var):
        orders = [0] * num_vars
        orders[var] = 1
        return cls(num_vars, {(0, tuple(orders)): 1})

    @classmethod
    def t_times(cls, num_vars):
        return cls(num_vars, {(1, (0,) * num_vars): 1})

    @property
    def order(self):
        """Largest total derivative order among the monomials."""
        if not self.terms:
            return 0
        return max(sum(orders) for _, orders in self.terms)

    def _coerce(self, other):
        if isinstance(other, DiffOperator):
            if other.num_vars != self.num_vars:
                raise ValueError("operator variable counts differ")
            return other
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms = dict(self.terms)
        for key, c in rhs.terms.items():
            terms[key] = terms.get(key, Fraction(0)) + c
        return DiffOperator(self.num_vars, terms)

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __neg__(self):
        return DiffOperator(
            self.num_vars, {key: -c for key, c in self.terms.items()}
        )

    def __mul__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            if isinstance(other, (int, Fraction)):
                return DiffOperator(
                    self.num_vars,
                    {key: c * other for key, c in self.terms.items()},
                )
            return NotImplemented
        terms = {}
        for (tp1, o1), c1 in self.terms.items():
            for (tp2, o2), c2 in rhs.terms.items():
                key = (tp1 + tp2, tuple(a + b for a, b in zip(o1, o2)))
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return DiffOperator(self.num_vars, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __repr__(self):
        return f"DiffOperator(vars={self.num_vars}, terms={len(self.terms)})"

    def apply(self, series):
        """Act termwise; the result's validity degree drops by the order."""
        if series.num_vars != self.num_vars:
            raise ValueError("operator and series variable counts differ")
        m = self.order
        if m > series.validity_degree:
            raise ValueError(
                f"operator order {m} exceeds series validity degree "
                f"{series.validity_degree}"
            )
        validity = series.validity_degree - m
        acc = {}
        for (t_pow, orders), coeff in self.terms.items():
            for exps, poly in series.terms.items():
                if any(o > e for o, e in zip(orders, exps)):
                    continue
                new_exps = tuple(e - o for e, o in zip(exps, orders))
                if sum(new_exps) > validity:
                    continue
                factor = 1
                for e, o in zip(exps, orders):
                    for i in range(e - o + 1, e + 1):
                        factor *= i
                contrib = (poly * (coeff * factor)).shift(t_pow)
                prev = acc.get(new_exps)
                acc[new_exps] = contrib if prev is None else prev + contrib
        return TruncatedSeries(self.num_vars, validity, acc)


# Interleaved variable layout for a 2s-1 variable series:
# (x_1, y_1, x_2, y_2, ..., y_{s-1}, x_s).


def interleaved_x_vars(s):
    return tuple(2 * i for i in range(s))


def interleaved_y_vars(s):
    return tuple(2 * i + 1 for i in range(s - 1))


def word_operator(s, w):
    """The operator monomial attached to an assignment word, acting on a
    series in 2s-1 interleaved variables."""
    m = 2 * s - 1
    xv = interleaved_x_vars(s)
    yv = interleaved_y_vars(s)
    op = DiffOperator.identity(m)
    for i, (alpha, beta) in enumerate(w, start=1):
        if alpha == 0:
            op = op * DiffOperator.partial(m, xv[i - 1])
        if beta == 0:
            op = op * DiffOperator.partial(m, xv[i])
        if alpha and beta:
            op = op * DiffOperator.t_times(m) * DiffOperator.partial(m, yv[i - 1])
    return op


def interaction_product(s):
    """Product over i of (d/dx_i + d/dx_{i+1} + t d/dy_i), interleaved layout."""
    m = 2 * s - 1
    xv = interleaved_x_vars(s)
    yv = interleaved_y_vars(s)
    op = DiffOperator.identity(m)
    for i in range(s - 1):
        factor = (
            DiffOperator.partial(m, xv[i])
            + DiffOperator.partial(m, xv[i + 1])
            + DiffOperator.t_times(m) * DiffOperator.partial(m, yv[i])
        )
        op = op * factor
    return op


def pde_operator(s):
    """Mixed derivative in the x block minus the interaction product."""
    m = 2 * s - 1
    lead = DiffOperator.identity(m)
    for v in interleaved_x_vars(s):
        lead = lead * DiffOperator.partial(m, v)
    return lead - interaction_product(s)


def vertex_pde_operator(s):
    """The t = 0 shadow of the operator, acting on s plain variables."""
    lead = DiffOperator.identity(s)
    for v in range(s):
        lead = lead * DiffOperator.partial(s, v)
    prod = DiffOperator.identity(s)
    for i in range(s - 1):
        prod = prod * (DiffOperator.partial(s, i) + DiffOperator.partial(s, i + 1))
    return lead - prod


@dataclass(frozen=True)
class PdeReport:
    """Outcome of one truncated PDE check; exact, so residual means failure."""

    identity: str
    s: int
    degree: int
    validity_degree: int
    residual: tuple = field(default_factory=tuple)

    @property
    def passed(self):
        return not self.residual

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.identity} s={self.s} truncation={self.degree} "
            f"checked-degree<={self.validity_degree} "
            f"residual-terms={len(self.residual)}"
        )


def _residual_tuple(series):
    return tuple((exps, str(poly)) for exps, poly in series.nonzero_terms())


def verify_generating_pde(s, degree):
    """Check that the interleaved EGF truncation is annihilated by the
    mixed-derivative-minus-product operator, restricted to y = 0."""
    if s < 1:
        raise ValueError("s must be positive")
    if degree < s:
        raise ValueError("truncation degree must be at least s")
    series = fpolynomial_egf(2 * s - 1, degree)
    result = pde_operator(s).apply(series)
    result = restrict_to_zero(result, interleaved_y_vars(s))
    return PdeReport(
        "fpolynomial-egf", s, degree, result.validity_degree, _residual_tuple(result)
    )


def verify_vertex_pde(s, degree):
    """Same check for the vertex-count EGF and its t-free operator."""
    if s < 1:
        raise ValueError("s must be positive")
    if degree < s:
        raise ValueError("truncation degree must be at least s")
    series = vertex_count_egf(s, degree)
    result = vertex_pde_operator(s).apply(series)
    return PdeReport(
        "vertex-egf", s, degree, result.validity_degree, _residual_tuple(result)
    )


def monomial_series(s, k, e):
    """The single scaled monomial (x*y)^(k*e)/(k*e)! in interleaved layout."""
    exps = interleave(tuple(k), tuple(e))
    poly = TPoly.ONE * Fraction(1, _factorial_product(exps))
    return TruncatedSeries(2 * s - 1, sum(exps), {exps: poly})


def expected_word_action(s, k, e, w):
    """Closed form for a word operator acting on one monomial, after y = 0:
    t^|w| x^(d)/d! when e marks the BOTH positions and d = d_transform(k, w)
    is non-negative; zero otherwise."""
    d = d_transform(tuple(k), w)
    validity = sum(k) + sum(e) - word_operator(s, w).order
    if tuple(e) == word_tilde(w) and all(x >= 0 for x in d):
        poly = TPoly.ONE.shift(word_weight(w)) * Fraction(1, _factorial_product(d))
        return TruncatedSeries(s, validity, {tuple(d): poly})
    return TruncatedSeries(s, validity, {})


def check_word_action(s, max_degree):
    """Exhaustively compare word-operator action on monomials of total
    degree <= max_degree against the closed form.  Returns mismatches."""
    bad = []
    yv = interleaved_y_vars(s)
    for w in all_words(s - 1):
        op = word_operator(s, w)
        for k in bounded_exponents(s, max_degree):
            for e in bounded_exponents(s - 1, max_degree - sum(k)):
                if op.order > sum(k) + sum(e):
                    continue
                got = restrict_to_zero(op.apply(monomial_series(s, k, e)), yv)
                want = expected_word_action(s, k, e, w)
                if got != want:
                    bad.append((w, k, e))
    return bad


def check_operator_expansion(s):
    """The sum of all word operators equals the expanded interaction product."""
    total = DiffOperator(2 * s - 1)
    for w in all_words(s - 1):
        total = total + word_operator(s, w)
    return total == interaction_product(s)


def check_transform_round_trip(max_s, max_part):
    """r_w(d_w(k) + 1) == k for every word and every k with bounded parts."""
    bad = []
    for s in range(1, max_s + 1):
        for w in all_words(s - 1):
            for k in product(range(max_part + 1), repeat=s):
                d = d_transform(k, w)
                back = r_transform(tuple(x + 1 for x in d), w)
                if back != k:
                    bad.append((s, w, k))
    return bad
