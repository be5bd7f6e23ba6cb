"""Planar polynomial vector fields over Q.

Bivariate polynomials are sparse maps (deg_first, deg_second) -> Fraction.
The two variables are positional: a field (p, q) read in the finite chart
uses (x, y), a field about to be pushed through the infinity chart uses
(z1, z2).  Names only matter when parsing or printing.

This module carries the chart change that moves the line at infinity to
y = 0, invariant-curve verification, the extraction of the variational
coefficients along a curve y = phi(x), and the Darboux-type first-integral
check X(R) + R*X(S) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import Poly, RatFunc, _as_fraction


class DegenerateCurveError(ValueError):
    """The graph parametrisation y = phi(x) degenerates: P(x, phi(x)) = 0."""


class BivarPoly:
    """Sparse bivariate polynomial over Q."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        out: dict[tuple[int, int], Fraction] = {}
        if terms:
            for (i, j), c in terms.items():
                c = _as_fraction(c)
                if c != 0:
                    out[(int(i), int(j))] = c
        self.terms = out

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "BivarPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "BivarPoly":
        return cls({(0, 0): c})

    @classmethod
    def var(cls, index: int) -> "BivarPoly":
        if index == 0:
            return cls({(1, 0): 1})
        if index == 1:
            return cls({(0, 1): 1})
        raise ValueError("variable index must be 0 or 1")

    @classmethod
    def from_univar(cls, p: Poly, index: int) -> "BivarPoly":
        if index == 0:
            return cls({(i, 0): c for i, c in enumerate(p.coeffs)})
        return cls({(0, i): c for i, c in enumerate(p.coeffs)})

    # -- queries -------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return -1
        return max(key[index] for key in self.terms)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other) -> "BivarPoly":
        other = _bivar(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "BivarPoly":
        return BivarPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "BivarPoly":
        return self + (-_bivar(other))

    def __rsub__(self, other) -> "BivarPoly":
        return _bivar(other) + (-self)

    def __mul__(self, other) -> "BivarPoly":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return BivarPoly({k: c * v for k, v in self.terms.items()})
        other = _bivar(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return BivarPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BivarPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = BivarPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus and substitution -------------------------------------------

    def diff(self, index: int) -> "BivarPoly":
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            if index == 0 and i > 0:
                out[(i - 1, j)] = out.get((i - 1, j), Fraction(0)) + c * i
            elif index == 1 and j > 0:
                out[(i, j - 1)] = out.get((i, j - 1), Fraction(0)) + c * j
        return BivarPoly(out)

    def eval(self, a, b) -> Fraction:
        a, b = _as_fraction(a), _as_fraction(b)
        total = Fraction(0)
        for (i, j), c in self.terms.items():
            total += c * a**i * b**j
        return total

    def rows_by_second(self) -> dict[int, Poly]:
        """Coefficients in the second variable: {j: poly in the first var}."""
        rows: dict[int, dict[int, Fraction]] = {}
        for (i, j), c in self.terms.items():
            rows.setdefault(j, {})[i] = c
        out: dict[int, Poly] = {}
        for j, cs in rows.items():
            coeffs = [Fraction(0)] * (max(cs) + 1)
            for i, c in cs.items():
                coeffs[i] = c
            out[j] = Poly(coeffs)
        return out

    def subst_second(self, phi: RatFunc) -> RatFunc:
        """p(x, phi(x)) as a univariate rational function."""
        rows = self.rows_by_second()
        if not rows:
            return RatFunc.zero()
        acc = RatFunc.zero()
        for j in range(max(rows), -1, -1):
            acc = acc * phi + RatFunc(rows.get(j, Poly.zero()))
        return acc

    def at_first_one(self) -> Poly:
        """p(1, t) as a univariate polynomial in the second variable."""
        out: dict[int, Fraction] = {}
        for (_, j), c in self.terms.items():
            out[j] = out.get(j, Fraction(0)) + c
        if not out:
            return Poly.zero()
        coeffs = [Fraction(0)] * (max(out) + 1)
        for j, c in out.items():
            coeffs[j] = c
        return Poly(coeffs)

    def swap_vars(self) -> "BivarPoly":
        return BivarPoly({(j, i): c for (i, j), c in self.terms.items()})

    def divexact_first(self) -> "BivarPoly":
        """Exact division by the first variable."""
        out = {}
        for (i, j), c in self.terms.items():
            if i == 0:
                raise ValueError("polynomial is not divisible by the first variable")
            out[(i - 1, j)] = c
        return BivarPoly(out)

    def projective_clear(self, n: int) -> "BivarPoly":
        """z1**n * p(z2/z1, 1/z1) as a polynomial in (z1, z2).

        Requires n >= total degree; term x**i y**j maps to z1**(n-i-j) z2**i.
        """
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            e = n - i - j
            if e < 0:
                raise ValueError("clearing exponent below total degree")
            key = (e, i)
            out[key] = out.get(key, Fraction(0)) + c
        return BivarPoly(out)

    def is_homogeneous(self, degree: int) -> bool:
        return all(i + j == degree for i, j in self.terms)

    def to_str(self, variables: tuple[str, str] = ("x", "y")) -> str:
        if not self.terms:
            return "0"
        vx, vy = variables
        keys = sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0], -k[1]))
        parts: list[str] = []
        for i, j in keys:
            c = self.terms[(i, j)]
            mag = abs(c)
            factors = []
            if i:
                factors.append(vx if i == 1 else f"{vx}^{i}")
            if j:
                factors.append(vy if j == 1 else f"{vy}^{j}")
            if not factors:
                body = str(mag)
            else:
                body = "*".join(factors)
                if mag != 1:
                    body = f"{mag}*{body}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BivarPoly.const(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"BivarPoly({self.to_str()})"


def _bivar(value) -> BivarPoly:
    if isinstance(value, BivarPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return BivarPoly.const(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to BivarPoly")


class BivarRatFunc:
    """Bivariate rational function, lightly normalised.

    Full bivariate gcd reduction is deliberately avoided: common monomial
    factors are stripped and the denominator is scaled to a unit leading
    coefficient, while equality testing goes through cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _bivar(num)
        den = _bivar(den)
        if den.is_zero:
            raise ZeroDivisionError("bivariate rational function with zero denominator")
        if num.is_zero:
            self.num, self.den = BivarPoly.zero(), BivarPoly.const(1)
            return
        i_min = min(
            min(i for i, _ in num.terms), min(i for i, _ in den.terms)
        )
        j_min = min(
            min(j for _, j in num.terms), min(j for _, j in den.terms)
        )
        if i_min or j_min:
            num = BivarPoly({(i - i_min, j - j_min): c for (i, j), c in num.terms.items()})
            den = BivarPoly({(i - i_min, j - j_min): c for (i, j), c in den.terms.items()})
        lead = den.terms[max(den.terms)]
        if lead != 1:
            inv = 1 / lead
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other) -> "BivarRatFunc":
        other = _bivar_rf(other)
        return BivarRatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "BivarRatFunc":
        return BivarRatFunc(-self.num, self.den)

    def __sub__(self, other) -> "BivarRatFunc":
        return self + (-_bivar_rf(other))

    def __mul__(self, other) -> "BivarRatFunc":
        other = _bivar_rf(other)
        return BivarRatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "BivarRatFunc":
        other = _bivar_rf(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero function")
        return BivarRatFunc(self.num * other.den, self.den * other.num)

    def diff(self, index: int) -> "BivarRatFunc":
        return BivarRatFunc(
            self.num.diff(index) * self.den - self.num * self.den.diff(index),
            self.den * self.den,
        )

    def subst_second(self, phi: RatFunc) -> RatFunc:
        den = self.den.subst_second(phi)
        if den.is_zero:
            raise ZeroDivisionError("denominator vanishes identically on the curve")
        return self.num.subst_second(phi) / den

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, BivarPoly)):
            other = BivarRatFunc(other)
        if not isinstance(other, BivarRatFunc):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero

    def __hash__(self):
        raise TypeError("BivarRatFunc is not hashable (equality is projective)")

    def __repr__(self):
        return f"BivarRatFunc(({self.num.to_str()})/({self.den.to_str()}))"


def _bivar_rf(value) -> BivarRatFunc:
    if isinstance(value, BivarRatFunc):
        return value
    if isinstance(value, (int, Fraction, BivarPoly)):
        return BivarRatFunc(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to BivarRatFunc")


@dataclass(frozen=True)
class PlanarField:
    """Polynomial vector field p * d/dx + q * d/dy."""

    p: BivarPoly
    q: BivarPoly

    def __post_init__(self):
        if self.p.is_zero and self.q.is_zero:
            raise ValueError("vector field must not be identically zero")

    @property
    def degree(self) -> int:
        return max(self.p.total_degree, self.q.total_degree)

    def apply_to(self, f: BivarPoly) -> BivarPoly:
        return self.p * f.diff(0) + self.q * f.diff(1)

    def apply_to_rational(self, f: BivarRatFunc) -> BivarRatFunc:
        return BivarRatFunc(
            self.apply_to(f.num) * f.den - f.num * self.apply_to(f.den),
            f.den * f.den,
        )

    def foliation(self) -> BivarRatFunc:
        return BivarRatFunc(self.q, self.p)

    def swap_roles(self) -> "PlanarField":
        """Interchange the two variables and the two components."""
        return PlanarField(self.q.swap_vars(), self.p.swap_vars())


@dataclass(frozen=True)
class InvariantCurve:
    """Graph curve y = phi(x) with rational phi."""

    phi: RatFunc

    def holds_for(self, field: PlanarField) -> bool:
        return is_invariant_curve(field, self.phi)


def homogeneous_parts(p: BivarPoly) -> list[BivarPoly]:
    """Split into homogeneous parts, indexed by degree; empty for zero."""
    if p.is_zero:
        return []
    parts: list[dict[tuple[int, int], Fraction]] = [{} for _ in range(p.total_degree + 1)]
    for (i, j), c in p.terms.items():
        parts[i + j][(i, j)] = c
    return [BivarPoly(d) for d in parts]


def _padded_parts(p: BivarPoly, n: int) -> list[BivarPoly]:
    parts = homogeneous_parts(p)
    parts.extend(BivarPoly.zero() for _ in range(n + 1 - len(parts)))
    return parts


def infinity_transform(field: PlanarField) -> PlanarField:
    """Push a polynomial field through y = 1/z1, x = z2/z1.

    The line at infinity of the input becomes y = 0 in the output chart.
    Output components, with parts P_i, Q_i of the input and N its degree:

        p(x, y) = sum_i y**(N-i) * (x*P_i(1, x) - Q_i(1, x))
        q(x, y) = y * sum_i y**(N-i) * P_i(1, x)
    """
    n = field.degree
    parts_p = _padded_parts(field.p, n)
    parts_q = _padded_parts(field.q, n)
    x = BivarPoly.var(0)
    y = BivarPoly.var(1)
    p_out = BivarPoly.zero()
    q_inner = BivarPoly.zero()
    for i in range(n + 1):
        pi = BivarPoly.from_univar(parts_p[i].at_first_one(), 0)
        qi = BivarPoly.from_univar(parts_q[i].at_first_one(), 0)
        p_out = p_out + y ** (n - i) * (x * pi - qi)
        q_inner = q_inner + y ** (n - i) * pi
    return PlanarField(p_out, y * q_inner)


def family_from_P(parts: Sequence[BivarPoly], n: int, k: int) -> PlanarField:
    """Field (p, q) in the pre-transform chart whose image under
    infinity_transform has foliation
    dy/dx = y*(P_1(x)*y**(n-1) + ... + P_n(x)) / (x**k - y).

    parts[i] must be homogeneous of degree i, parts[0] = 0, and every part
    divisible by the first variable.
    """
    if n < 2:
        raise ValueError("family requires degree n >= 2")
    if not 2 <= k <= n:
        raise ValueError("family requires 2 <= k <= n")
    if len(parts) != n + 1:
        raise ValueError(f"expected {n + 1} homogeneous parts, got {len(parts)}")
    for i, part in enumerate(parts):
        if not part.is_homogeneous(i) or (not part.is_zero and part.total_degree != i):
            raise ValueError(f"part {i} is not homogeneous of degree {i}")
    if not parts[0].is_zero:
        raise ValueError("part 0 must vanish")
    for i in range(1, n + 1):
        if any(key[0] == 0 for key in parts[i].terms):
            raise ValueError(f"part {i} must vanish on the line z1 = 0")
    z1 = BivarPoly.var(0)
    z2 = BivarPoly.var(1)
    q_parts: list[BivarPoly] = [BivarPoly.zero()]
    for ell in range(1, n + 1):
        q = z2 * parts[ell].divexact_first()
        if ell == n - 1:
            q = q + z1 ** (n - 1)
        if ell == n:
            q = q - z1 ** (n - k) * z2**k
        q_parts.append(q)
    p_total = BivarPoly.zero()
    q_total = BivarPoly.zero()
    for part in parts:
        p_total = p_total + part
    for part in q_parts:
        q_total = q_total + part
    return PlanarField(p_total, q_total)


def is_invariant_curve(field: PlanarField, phi: RatFunc) -> bool:
    """Exact identity Q(x, phi) - phi' * P(x, phi) = 0."""
    p_on = field.p.subst_second(phi)
    if p_on.is_zero:
        raise DegenerateCurveError("P vanishes identically on the curve y = phi(x)")
    return (field.q.subst_second(phi) - phi.derivative() * p_on).is_zero


def foliation_derivatives(field: PlanarField, phi: RatFunc, count: int) -> list[RatFunc]:
    """[beta_1, ..., beta_count] with beta_j the j-th y-derivative of the
    foliation slope Q/P restricted to the curve y = phi(x)."""
    if count < 1:
        raise ValueError("need at least one derivative")
    if not is_invariant_curve(field, phi):
        raise ValueError("curve y = phi(x) is not invariant for the field")
    den = field.p
    den_on = den.subst_second(phi)
    num = field.q
    betas: list[RatFunc] = []
    current = num
    power = 1
    den_on_pows = den_on
    for _ in range(count):
        current = current.diff(1) * den - power * current * den.diff(1)
        power += 1
        den_on_pows = den_on_pows * den_on
        betas.append(current.subst_second(phi) / den_on_pows)
    return betas


def lve2_coefficients_from_parts(field: PlanarField) -> tuple[RatFunc, RatFunc]:
    """Second-order variational coefficients read from the homogeneous parts
    of a pre-transform field:

        alpha = P_N(1,x) / (x*P_N(1,x) - Q_N(1,x))
        beta  = 2*(P_N*Q_{N-1} - P_{N-1}*Q_N)(1,x) / (x*P_N(1,x) - Q_N(1,x))**2
    """
    n = field.degree
    parts_p = _padded_parts(field.p, n)
    parts_q = _padded_parts(field.q, n)
    pn = parts_p[n].at_first_one()
    qn = parts_q[n].at_first_one()
    pn1 = parts_p[n - 1].at_first_one() if n >= 1 else Poly.zero()
    qn1 = parts_q[n - 1].at_first_one() if n >= 1 else Poly.zero()
    den = Poly.x() * pn - qn
    if den.is_zero:
        raise ValueError("x*P_N(1,x) - Q_N(1,x) vanishes identically")
    alpha = RatFunc(pn, den)
    beta = RatFunc(2 * (pn * qn1 - pn1 * qn), den * den)
    return alpha, beta


def fields_equivalent(a: PlanarField, b: PlanarField) -> bool:
    """Same foliation: Q_a * P_b - Q_b * P_a = 0."""
    return (a.q * b.p - b.q * a.p).is_zero


def verify_darboux_integral(field: PlanarField, r: BivarRatFunc, s: BivarRatFunc) -> bool:
    """True iff X(R) + R*X(S) = 0, i.e. R*exp(S) is a first integral."""
    if r.is_zero:
        raise ValueError("R must be nonzero")
    total = field.apply_to_rational(r) + r * field.apply_to_rational(s)
    return total.is_zero
