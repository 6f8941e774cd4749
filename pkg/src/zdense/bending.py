"""Bending pi1(O_3333) = <g1, g2> *_<g1 g2> <g3, g4> along the class g1 g2.

The right half is conjugated by M_t = t * rho(g1 g2) + I. The unimodular
conjugator det(M_t)^(-1/n) M_t gives the same representation because scalars
cancel under conjugation, and M_t stays rational when rho and t are.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    HypothesisFailure,
    InvalidParameter,
    IrrationalNormalization,
    NotLoxodromic,
    SingularConjugator,
)
from .exact import QSqrt2, canonical, rational_root, sign, sqrt
from .groups import GAMMA, RIGHT, Representation, check_relations
from .linalg import Matrix, charpoly, poly_from_roots


def bend_parameter(t) -> Fraction:
    """Parse and validate t >= 0 (rational)."""
    try:
        t = Fraction(t)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidParameter(f"bad bending parameter {t!r}") from exc
    if t < 0:
        raise InvalidParameter(f"bending parameter must be >= 0, got {t}")
    return t


def _nth_root_sqrt2(x, n: int):
    """Exact n-th root in Q(sqrt2) of x, or None. Float-guided, checked exactly."""
    x = canonical(x)
    if isinstance(x, Fraction):
        return rational_root(x, n)
    # x = r^n with r = p + q sqrt2: r and conj(r) are the real n-th roots of x, conj(x)
    def real_root(v):
        return math.copysign(abs(v) ** (1.0 / n), v)

    r1, r2 = real_root(float(x)), real_root(float(x.conj()))
    p = Fraction((r1 + r2) / 2).limit_denominator(10**6)
    q = Fraction((r1 - r2) / (2 * math.sqrt(2.0))).limit_denominator(10**6)
    cand = QSqrt2(p, q)
    return cand if cand**n == x else None


def conjugator(rho_gamma: Matrix, t, normalized: bool = False) -> Matrix:
    """M_t = t * rho_gamma + I, or its unimodular rescaling when ``normalized``."""
    t = bend_parameter(t)
    n = rho_gamma.n
    m = rho_gamma * t + Matrix.identity(n)
    det = m.det()
    if det == 0:
        raise SingularConjugator(f"det(t*rho(gamma) + I) = 0 at t = {t}")
    if not normalized:
        return m
    root = _nth_root_sqrt2(det, n)
    if root is None:
        raise IrrationalNormalization(
            f"det(M_t) = {det} has no exact {n}-th root; use the unnormalized conjugator"
        )
    return m * (Fraction(1) / root)


@dataclass
class LoxodromyCertificate:
    n: int
    trace: object  # trace of the lift with positive trace
    lift_sign: int
    discriminant: object
    lam: object
    eigenvalues: list
    positive: bool
    distinct: bool

    @property
    def passed(self) -> bool:
        return self.positive and self.distinct

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "trace_normalized": str(self.trace),
            "lift_sign": self.lift_sign,
            "trace_squared_minus_4": str(self.discriminant),
            "trace_squared_minus_4_sign": sign(self.discriminant),
            "lambda": str(self.lam),
            "eigenvalues": [str(e) for e in self.eigenvalues],
            "all_positive": self.positive,
            "pairwise_distinct": self.distinct,
            "passed": self.passed,
        }


def loxodromy_certificate(rho_gamma_2x2: Matrix, n: int) -> LoxodromyCertificate:
    """Eigenvalues lambda^(n-1-2j) of the n-dimensional image of a hyperbolic
    2x2 element, in the tower field, with exact positivity and distinctness."""
    if rho_gamma_2x2.det() != 1:
        raise HypothesisFailure("loxodromy certificate expects an SL(2) element")
    tau = rho_gamma_2x2.trace()
    disc = canonical(tau * tau - 4)
    if sign(disc) <= 0:
        raise NotLoxodromic(f"trace^2 - 4 = {disc} is not positive")
    lift = 1
    if sign(tau) < 0:
        tau, lift = -tau, -1
    lam = (tau + sqrt(disc)) / 2
    eig = [canonical(lam ** (n - 1 - 2 * j)) for j in range(n)]
    positive = all(sign(e) > 0 for e in eig)
    distinct = all(eig[i] != eig[j] for i in range(n) for j in range(i + 1, n))
    return LoxodromyCertificate(n, tau, lift, disc, canonical(lam), eig, positive, distinct)


def eigenvalues_match_charpoly(m: Matrix, eigenvalues) -> bool:
    """True when charpoly(m) equals prod (t - e) over the given eigenvalues."""
    expected = poly_from_roots(eigenvalues)
    return [canonical(c) for c in charpoly(m)] == expected


@dataclass
class BentRepresentation:
    base: Representation
    t: Fraction
    conjugator: Matrix
    rep: Representation

    def to_json(self) -> dict:
        return {
            "t": str(self.t),
            "bending_class": str(GAMMA),
            "conjugator": self.conjugator.to_json(),
            "conjugator_commutes": commutes(self.conjugator, self.base.evaluate(GAMMA)),
            "representation": self.rep.to_json(),
        }


def commutes(a: Matrix, b: Matrix) -> bool:
    return a @ b == b @ a


def bend(rho: Representation, t, lox: LoxodromyCertificate | None = None) -> BentRepresentation:
    """g1, g2 -> rho(g_i); g3, g4 -> M_t rho(g_i) M_t^-1.

    ``lox`` is the loxodromy certificate for rho(g1 g2); when supplied it must
    pass and its eigenvalues must match rho(g1 g2).
    """
    t = bend_parameter(t)
    if not check_relations(rho).passed:
        raise HypothesisFailure("base representation violates the orbifold relations")
    rho_gamma = rho.evaluate(GAMMA)
    if lox is not None:
        if not lox.passed:
            raise HypothesisFailure("loxodromy certificate failed")
        if not eigenvalues_match_charpoly(rho_gamma, lox.eigenvalues):
            raise HypothesisFailure("rho(gamma) does not have the certified eigenvalues")
    m = conjugator(rho_gamma, t)
    if t == 0:
        return BentRepresentation(rho, t, m, rho)
    mi = m.inv()
    images = dict(rho.images)
    for g in RIGHT:
        images[g] = m @ rho[g] @ mi
    return BentRepresentation(rho, t, m, Representation(rho.presentation, images))

