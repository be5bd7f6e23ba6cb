"""Rational-solution decision for the first-order equation y' + a*y = b over Q(x).

Two independent deciders are provided:

  * ``solve_general``: bounds the pole order of any rational solution at each
    finite place, bounds the numerator degree by matching leading behaviour
    at infinity, then settles existence by an exact linear system in the
    unknown numerator coefficients (Rouche-Frobenius rank comparison).

  * ``solve_xk_specialized``: the ad-hoc case analysis for coefficients of
    the shape a = A(x)/x**k, b = (2*A + 2*x**k*B)/x**(2*k) with k > 1 and
    deg A < k.  Clearing denominators with y = Y/x**k pins the constant
    coefficient of Y to 2 and caps deg Y, leaving a small linear system.
    Outcomes carry the matched case label (1, 2a, 2b, 2c, 2d).

Any returned solution is substitution-verified before being released, so a
``RationalSolution`` outcome is unconditionally sound; absence relies on the
bounds and is cross-checked between the two deciders in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    Poly,
    RatFunc,
    ResidueReport,
    coprime_refinement,
    multiplicity,
    poly_gcd,
    residues,
    squarefree_decompose,
)


class NonIntegerResidueError(ValueError):
    """Residue normalisation requires every residue to be an integer."""

    def __init__(self, message: str, residue: Fraction | None = None):
        super().__init__(message)
        self.residue = residue


REASON_DEGREE_MISMATCH = "degree-mismatch"
REASON_INCONSISTENT = "inconsistent-linear-system"
REASON_POLE_BOUND = "pole-bound-exclusion"


@dataclass(frozen=True)
class RischEquation:
    """y' + a*y = b with reduced rational coefficients."""

    a: RatFunc
    b: RatFunc
    provenance: tuple[int, str] | None = None

    def to_str(self, var: str = "x") -> str:
        return f"y' + ({self.a.to_str(var)})*y = {self.b.to_str(var)}"


@dataclass(frozen=True)
class RischOutcome:
    """Decision result.  ``solution`` is None exactly when no rational
    solution exists; ``case`` is the specialized-path label when that solver
    produced the outcome; ``reason`` explains an absence."""

    solution: RatFunc | None
    solver: str
    case: str | None = None
    reason: str | None = None

    @property
    def has_rational_solution(self) -> bool:
        return self.solution is not None


def build_risch(alpha: RatFunc, beta_k: RatFunc, k: int) -> RischEquation:
    """Equation deciding the order-k obstruction: y' + (k-1)*alpha*y = beta_k."""
    if k < 2:
        raise ValueError("variational order must be >= 2")
    return RischEquation(
        (k - 1) * alpha, beta_k, (k, f"coefficient (k-1)*alpha at order k={k}")
    )


def verify_solution(eq: RischEquation, h: RatFunc) -> bool:
    return h.derivative() + eq.a * h == eq.b


# ---------------------------------------------------------------------------
# linear algebra over Q
# ---------------------------------------------------------------------------


def solve_linear_system(
    rows: list[list[Fraction]], rhs: list[Fraction], ncols: int
) -> list[Fraction] | None:
    """Particular solution (free unknowns set to 0) or None when inconsistent."""
    aug = [row[:] + [val] for row, val in zip(rows, rhs)]
    pivots: list[tuple[int, int]] = []
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(aug)):
            if aug[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = 1 / aug[rank][col]
        aug[rank] = [v * inv for v in aug[rank]]
        for r in range(len(aug)):
            if r != rank and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * p for v, p in zip(aug[r], aug[rank])]
        pivots.append((rank, col))
        rank += 1
    for r in range(rank, len(aug)):
        if aug[r][ncols] != 0:
            return None
    solution = [Fraction(0)] * ncols
    for r, col in pivots:
        solution[col] = aug[r][ncols]
    return solution


def _poly_rows(columns: list[Poly], rhs: Poly) -> tuple[list[list[Fraction]], list[Fraction]]:
    maxdeg = rhs.degree
    for c in columns:
        maxdeg = max(maxdeg, c.degree)
    rows = []
    vec = []
    for d in range(maxdeg + 1):
        rows.append([c.coeff(d) for c in columns])
        vec.append(rhs.coeff(d))
    return rows, vec


# ---------------------------------------------------------------------------
# general solver
# ---------------------------------------------------------------------------


def _candidate_denominator(a: RatFunc, b: RatFunc, rep: ResidueReport, slack: int = 0) -> Poly:
    base: list[Poly] = []
    for r in (a, b):
        if r.den.degree > 0:
            base.extend(q for q, _ in squarefree_decompose(r.den))
    base.extend(q for q, c in rep.per_factor if c.denominator == 1 and c > 0)
    den = Poly.one()
    for e in coprime_refinement(base):
        ma = multiplicity(e, a.den)
        mb = multiplicity(e, b.den)
        if ma >= 2:
            bound = max(0, mb - ma)
        elif ma == 1:
            rho = 0
            for q, c in rep.per_factor:
                if c > 0 and c.denominator == 1 and poly_gcd(e, q).degree > 0:
                    rho = int(c)
                    break
            bound = max(0, mb - 1, rho)
        else:
            bound = max(0, mb - 1)
        if slack and (ma or mb):
            bound += slack
        den = den * e**bound
    return den


def _numerator_degree_bound(a: RatFunc, b: RatFunc, den: Poly) -> int:
    candidates = [0, b.degree_at_infinity() + 1]
    if not a.is_zero:
        delta_a = a.degree_at_infinity()
        if delta_a >= 0:
            candidates.append(b.degree_at_infinity() - delta_a)
        if delta_a == -1:
            lam = a.num.lc / a.den.lc
            if lam.denominator == 1 and lam < 0:
                candidates.append(int(-lam))
    return den.degree + max(candidates)


def solve_undetermined(a: RatFunc, b: RatFunc, den: Poly, num_degree: int) -> RatFunc | None:
    """Solve y' + a*y = b for y = N/den with deg N <= num_degree, exactly."""
    if num_degree < 0:
        return None
    qa, pa = a.den, a.num
    qb, pb = b.den, b.num
    dden = den.derivative()
    columns = []
    for i in range(num_degree + 1):
        xi = Poly.monomial(i)
        dxi = xi.derivative()
        columns.append((dxi * den - xi * dden) * qa * qb + pa * xi * den * qb)
    rhs = pb * qa * den * den
    rows, vec = _poly_rows(columns, rhs)
    sol = solve_linear_system(rows, vec, num_degree + 1)
    if sol is None:
        return None
    return RatFunc(Poly(sol), den)


def solve_general(eq: RischEquation, pole_slack: int = 0, degree_slack: int = 0) -> RischOutcome:
    """Decide existence of a rational solution by pole/degree bounding plus
    undetermined coefficients.

    ``pole_slack`` and ``degree_slack`` widen the bounds; they exist so that
    an absence verdict can be re-checked under strictly larger search spaces.
    """
    a, b = eq.a, eq.b
    if b.is_zero:
        return RischOutcome(RatFunc.zero(), "general")
    rep = residues(a) if not a.is_zero else ResidueReport(RatFunc.zero(), Poly.one(), (), True)
    den = _candidate_denominator(a, b, rep, pole_slack)
    bound = _numerator_degree_bound(a, b, den) + degree_slack
    if bound < 0:
        return RischOutcome(None, "general", reason=REASON_POLE_BOUND)
    solution = solve_undetermined(a, b, den, bound)
    if solution is None:
        return RischOutcome(None, "general", reason=REASON_INCONSISTENT)
    if not verify_solution(eq, solution):
        raise RuntimeError("internal error: candidate solution failed substitution check")
    return RischOutcome(solution, "general")


# ---------------------------------------------------------------------------
# residue normalisation
# ---------------------------------------------------------------------------


def residue_normalize(eq: RischEquation) -> tuple[RischEquation, RatFunc]:
    """Strip the integer-residue simple poles of the coefficient a.

    Returns the transformed equation and the multiplier u = prod q**residue;
    h solves the original equation iff h*u solves the normalised one.
    """
    rep = residues(eq.a)
    if not rep.all_integer:
        for _, c in rep.per_factor:
            if c.denominator != 1:
                raise NonIntegerResidueError(
                    f"residue {c} is not an integer", residue=c
                )
        raise NonIntegerResidueError(
            "residue polynomial does not split over Q with integer roots"
        )
    a_new = eq.a
    u = RatFunc.one()
    for q, c in rep.per_factor:
        ell = int(c)
        a_new = a_new - ell * RatFunc(q.derivative(), q)
        u = u * RatFunc(q) ** ell
    return RischEquation(a_new, eq.b * u, eq.provenance), u


# ---------------------------------------------------------------------------
# specialized x**k solver
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KaltofenInstance:
    """Equation data for the pure power-pole shape.

    alpha = alpha_num/x**pole_order and
    beta = (2*alpha_num + 2*x**pole_order*beta_shift)/x**(2*pole_order),
    with pole_order > 1, deg alpha_num < pole_order, alpha_num(0) != 0, and
    beta_shift either None (identically zero) or with nonzero constant term.
    """

    alpha_num: Poly
    beta_shift: Poly | None
    pole_order: int

    def __post_init__(self):
        k = self.pole_order
        a = self.alpha_num
        if k <= 1:
            raise ValueError("pole order must exceed 1")
        if a.is_zero or a.degree >= k:
            raise ValueError("numerator degree must be smaller than the pole order")
        if a.coeff(0) == 0:
            raise ValueError("constant coefficient of the numerator must be nonzero")
        if self.beta_shift is not None:
            if self.beta_shift.is_zero:
                raise ValueError("encode an identically zero shift as None")
            if self.beta_shift.coeff(0) == 0:
                raise ValueError("shift polynomial must have nonzero constant term")

    # derived data -----------------------------------------------------------

    @property
    def alpha(self) -> RatFunc:
        return RatFunc(self.alpha_num, Poly.monomial(self.pole_order))

    @property
    def beta(self) -> RatFunc:
        k = self.pole_order
        w = 2 * self.alpha_num
        if self.beta_shift is not None:
            w = w + 2 * self.beta_shift.shift(k)
        return RatFunc(w, Poly.monomial(2 * k))

    def equation(self) -> RischEquation:
        return RischEquation(self.alpha, self.beta, (2, "power-pole shape"))

    def cleared(self) -> tuple[Poly, Poly, Poly]:
        """(u, v, w) of the cleared equation u*Y' + v*Y = w for y = Y/x**k."""
        k = self.pole_order
        u = Poly.monomial(k)
        v = self.alpha_num - Poly.monomial(k - 1, k)
        w = 2 * self.alpha_num
        if self.beta_shift is not None:
            w = w + 2 * self.beta_shift.shift(k)
        return u, v, w

    @property
    def v_leading(self) -> Fraction:
        """Coefficient of x**(k-1) in v = alpha_num - k*x**(k-1)."""
        k = self.pole_order
        n = self.alpha_num.degree
        if n < k - 1:
            return Fraction(-k)
        return self.alpha_num.lc - k

    @property
    def rho(self) -> int:
        v = self.v_leading
        if v.denominator == 1 and v < 0:
            return int(-v)
        return 0

    @property
    def degree_cap(self) -> int:
        """Sound cap on deg Y for the cleared equation u*Y' + v*Y = w.

        Leading-coefficient matching at degree deg(Y) + k - 1 forces
        deg Y in {deg w - k + 1, rho}, so the cap is max(deg w - k + 1, rho):
        max(m + 1, rho) with a shift present and rho without one.
        """
        if self.beta_shift is not None:
            m = self.beta_shift.degree
            cap = max(m + 1, self.rho)
            assert cap >= max(min(m, m + 1), self.rho)
            return cap
        cap = self.rho
        n = self.alpha_num.degree
        assert cap >= max(n - self.pole_order - 1, self.rho)
        return cap

    @property
    def case(self) -> str:
        """Dispatch label; total and exclusive over valid instances."""
        k = self.pole_order
        n = self.alpha_num.degree
        if n < k - 1:
            return "1"
        a_n = self.alpha_num.lc
        gap_positive = a_n.denominator == 1 and (k - a_n) >= 1
        m = self.beta_shift.degree if self.beta_shift is not None else None
        if not gap_positive:
            return "2a" if (m is None or m == 0) else "2b"
        if m is not None and m >= int(k - a_n):
            return "2c"
        return "2d"


def match_kaltofen(eq: RischEquation) -> KaltofenInstance | None:
    """Recognise the power-pole shape; None when the equation does not fit."""
    k = eq.a.den.is_power_of_x()
    if k is None or k < 2:
        return None
    a_num = eq.a.num
    if a_num.degree >= k:
        return None
    jb = eq.b.den.is_power_of_x()
    if jb is None or jb > 2 * k:
        return None
    w = eq.b.num.shift(2 * k - jb)
    rem_poly = w - 2 * a_num
    if rem_poly.is_zero:
        return KaltofenInstance(a_num, None, k)
    if any(rem_poly.coeff(i) != 0 for i in range(k)):
        return None
    shift = Poly(tuple(c / 2 for c in rem_poly.coeffs[k:]))
    if shift.coeff(0) == 0:
        return None
    return KaltofenInstance(a_num, shift, k)


def _specialized_system(inst: KaltofenInstance) -> tuple[list[Poly], Poly]:
    """Column polynomials for y_1..y_cap and right-hand side of the cleared
    equation with the forced constant coefficient Y(0) = 2 moved across:

        sum_i y_i * ((i-k)*x**(i+k-1) + alpha_num*x**i)
            = 2*x**k*beta_shift + 2*k*x**(k-1).
    """
    k = inst.pole_order
    cap = inst.degree_cap
    columns = []
    for i in range(1, cap + 1):
        columns.append(Poly.monomial(i + k - 1, i - k) + inst.alpha_num.shift(i))
    rhs = Poly.monomial(k - 1, 2 * k)
    if inst.beta_shift is not None:
        rhs = rhs + 2 * inst.beta_shift.shift(k)
    return columns, rhs


def solve_xk_specialized(inst: KaltofenInstance) -> RischOutcome:
    """Decide the power-pole instance through its case analysis."""
    case = inst.case
    columns, rhs = _specialized_system(inst)
    rows, vec = _poly_rows(columns, rhs)
    sol = solve_linear_system(rows, vec, len(columns))
    if sol is None:
        reason = REASON_INCONSISTENT
        keep_rows = [r for d, r in enumerate(rows) if d <= rhs.degree]
        keep_vec = [v for d, v in enumerate(vec) if d <= rhs.degree]
        if solve_linear_system(keep_rows, keep_vec, len(columns)) is not None:
            # solvable once the forced coefficients above deg(rhs) are
            # ignored: the obstruction is purely a degree mismatch
            reason = REASON_DEGREE_MISMATCH
        return RischOutcome(None, "specialized", case=case, reason=reason)
    y_poly = Poly([Fraction(2)] + sol)
    solution = RatFunc(y_poly, Poly.monomial(inst.pole_order))
    if not verify_solution(inst.equation(), solution):
        raise RuntimeError("internal error: candidate solution failed substitution check")
    return RischOutcome(solution, "specialized", case=case)
