"""Variational equations along an invariant curve and their linearisations.

The order-k variational system is triangular: row j expresses the derivative
of the j-th transverse Taylor coefficient in terms of the lower ones, with
coefficients beta_i (the i-th y-derivatives of the foliation slope on the
curve).  Row j is a sum of partial Bell polynomials:

    row_j = sum over i of beta_i * B_{j,i}(c_1, ..., c_{j-i+1})

Full linearised matrices are built only for orders 2 and 3; higher orders
are consumed through the two-row subsystem that carries the obstruction.

The module also provides a small formal differential ring in the symbols
(w, t1, t2) with the rewrite rules w' = alpha*w, t1' = beta2*w,
t2' = beta3*w**2, used to verify the closed-form fundamental matrices by
pure differentiation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .algebra import RatFunc


# ---------------------------------------------------------------------------
# variational right-hand sides
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VETerm:
    """One monomial contribution: coeff * beta_{beta_index} * prod c_r."""

    coeff: int
    beta_index: int
    monomial: tuple[int, ...]  # sorted indices; (1, 1, 2) encodes c1*c1*c2


@dataclass(frozen=True)
class VEStructure:
    """Rows of the variational system up to a given order.

    rows[j-1] lists the terms of the equation for c_j'.
    """

    order: int
    rows: tuple[tuple[VETerm, ...], ...]


def partial_bell(j: int, i: int) -> dict[tuple[int, ...], int]:
    """Partial Bell polynomial B_{j,i} as {monomial: coefficient}.

    Recurrence: B_{j,i} = sum_r C(j-1, r-1) * x_r * B_{j-r, i-1}.
    """
    if j == 0 and i == 0:
        return {(): 1}
    if j <= 0 or i <= 0 or i > j:
        return {}
    out: dict[tuple[int, ...], int] = {}
    for r in range(1, j - i + 2):
        sub = partial_bell(j - r, i - 1)
        c = comb(j - 1, r - 1)
        for mono, coeff in sub.items():
            key = tuple(sorted(mono + (r,)))
            out[key] = out.get(key, 0) + c * coeff
    return out


def ve_rhs(k: int) -> VEStructure:
    """Variational rows for orders 1..k."""
    if k < 1:
        raise ValueError("order must be >= 1")
    rows: list[tuple[VETerm, ...]] = []
    for j in range(1, k + 1):
        terms: list[VETerm] = []
        for i in range(1, j + 1):
            for mono, coeff in sorted(partial_bell(j, i).items()):
                terms.append(VETerm(coeff, i, mono))
        terms.sort(key=lambda t: (t.beta_index, t.monomial))
        rows.append(tuple(terms))
    return VEStructure(k, tuple(rows))


def bell_number(j: int) -> int:
    """Sum over i of B_{j,i} at all arguments equal to 1."""
    total = 0
    for i in range(1, j + 1):
        total += sum(partial_bell(j, i).values())
    return total if j else 1


# ---------------------------------------------------------------------------
# linearised systems
# ---------------------------------------------------------------------------


def lve_matrix(k: int, betas: Sequence[RatFunc]) -> tuple[tuple[RatFunc, ...], ...]:
    """Exact lower-triangular linearised matrix for k in {2, 3}."""
    if k not in (2, 3):
        raise ValueError("full linearised matrices are only built for orders 2 and 3")
    if len(betas) != k:
        raise ValueError(f"need {k} coefficient functions, got {len(betas)}")
    zero = RatFunc.zero()
    b = list(betas)
    if k == 2:
        return (
            (2 * b[0], zero),
            (b[1], b[0]),
        )
    return (
        (3 * b[0], zero, zero),
        (b[1], 2 * b[0], zero),
        (b[2], 3 * b[1], b[0]),
    )


@dataclass(frozen=True)
class LVESubsystem:
    """Two-row subsystem u1' = k*alpha*u1, uk' = alpha*uk + beta_k*u1."""

    alpha: RatFunc
    beta_k: RatFunc
    order: int

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("subsystem order must be >= 2")

    def matrix(self) -> tuple[tuple[RatFunc, RatFunc], tuple[RatFunc, RatFunc]]:
        zero = RatFunc.zero()
        return (
            (self.order * self.alpha, zero),
            (self.beta_k, self.alpha),
        )


def lve_subsystem(alpha: RatFunc, beta_k: RatFunc, k: int) -> LVESubsystem:
    return LVESubsystem(alpha, beta_k, k)


# ---------------------------------------------------------------------------
# formal words and fundamental matrices
# ---------------------------------------------------------------------------


class FormalWord:
    """Polynomial in (w, t1, t2) with rational-function coefficients.

    Keys are exponent triples (e_w, e_t1, e_t2).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out: dict[tuple[int, int, int], RatFunc] = {}
        if terms:
            for key, c in terms.items():
                if isinstance(c, (int, Fraction)):
                    c = RatFunc(c)
                if not c.is_zero:
                    out[tuple(key)] = c
        self.terms = out

    @classmethod
    def scalar(cls, c) -> "FormalWord":
        return cls({(0, 0, 0): c})

    @classmethod
    def symbol(cls, name: str) -> "FormalWord":
        idx = {"w": 0, "t1": 1, "t2": 2}[name]
        key = [0, 0, 0]
        key[idx] = 1
        return cls({tuple(key): RatFunc.one()})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other) -> "FormalWord":
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, RatFunc.zero()) + c
            if s.is_zero:
                out.pop(key, None)
            else:
                out[key] = s
        return FormalWord(out)

    def __neg__(self) -> "FormalWord":
        return FormalWord({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "FormalWord":
        return self + (-other)

    def __mul__(self, other) -> "FormalWord":
        if isinstance(other, (int, Fraction, RatFunc)):
            c = other if isinstance(other, RatFunc) else RatFunc(other)
            return FormalWord({k: v * c for k, v in self.terms.items()})
        out: dict[tuple[int, int, int], RatFunc] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                s = out.get(key, RatFunc.zero()) + c1 * c2
                if s.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = s
        return FormalWord(out)

    __rmul__ = __mul__

    def differentiate(self, alpha: RatFunc, beta2: RatFunc, beta3: RatFunc) -> "FormalWord":
        """d/dx under w' = alpha*w, t1' = beta2*w, t2' = beta3*w**2."""
        out = FormalWord()
        for (ew, e1, e2), c in self.terms.items():
            base = {(ew, e1, e2): c.derivative()}
            out = out + FormalWord(base)
            if ew:
                out = out + FormalWord({(ew, e1, e2): c * alpha * ew})
            if e1:
                out = out + FormalWord({(ew + 1, e1 - 1, e2): c * beta2 * e1})
            if e2:
                out = out + FormalWord({(ew + 2, e1, e2 - 1): c * beta3 * e2})
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalWord):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "FormalWord(0)"
        names = ("w", "t1", "t2")
        parts = []
        for key in sorted(self.terms):
            factors = [f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(key) if e]
            mono = "*".join(factors) if factors else "1"
            parts.append(f"({self.terms[key].to_str()})*{mono}")
        return "FormalWord(" + " + ".join(parts) + ")"


def fundamental_matrix(k: int) -> tuple[tuple[FormalWord, ...], ...]:
    """Closed-form fundamental matrix of the linearised system, k in {2, 3}."""
    if k not in (2, 3):
        raise ValueError("fundamental matrices are only built for orders 2 and 3")
    w = FormalWord.symbol("w")
    t1 = FormalWord.symbol("t1")
    t2 = FormalWord.symbol("t2")
    zero = FormalWord()
    if k == 2:
        return (
            (w * w, zero),
            (w * t1, w),
        )
    return (
        (w * w * w, zero, zero),
        (w * w * t1, w * w, zero),
        (w * t1 * t1 * Fraction(3, 2) + w * t2, w * t1 * 3, w),
    )


def matrix_satisfies_lve(
    phi: Sequence[Sequence[FormalWord]],
    system: Sequence[Sequence[RatFunc]],
    alpha: RatFunc,
    beta2: RatFunc,
    beta3: RatFunc,
) -> bool:
    """Check phi' = system * phi entrywise under the rewrite rules."""
    size = len(phi)
    for i in range(size):
        for j in range(size):
            lhs = phi[i][j].differentiate(alpha, beta2, beta3)
            rhs = FormalWord()
            for ell in range(size):
                rhs = rhs + phi[ell][j] * system[i][ell]
            if lhs != rhs:
                return False
    return True


def verify_fundamental_matrix(
    k: int, alpha: RatFunc, beta2: RatFunc, beta3: RatFunc | None = None
) -> bool:
    """True iff the closed-form fundamental matrix solves the order-k system
    for the given coefficient functions; the identity is formal, so this
    holds for every rational choice."""
    if k == 2:
        betas = [alpha, beta2]
        b3 = RatFunc.zero()
    elif k == 3:
        if beta3 is None:
            raise ValueError("order 3 needs beta3")
        betas = [alpha, beta2, beta3]
        b3 = beta3
    else:
        raise ValueError("only orders 2 and 3 are supported")
    phi = fundamental_matrix(k)
    system = lve_matrix(k, betas)
    return matrix_satisfies_lve(phi, system, alpha, beta2, b3)
