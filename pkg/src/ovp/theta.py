"""Classical theta series as truncated q-expansions.

Four kinds are provided:

    phi(q)        = 1 + 2*sum(q^(k^2), k >= 1)          coefficient 2 at squares
    phi(-q)       = 1 + 2*sum((-1)^k q^(k^2), k >= 1)   alternating signs
    psi(q)        = sum(q^(t(t+1)/2), t >= 0)           1 at triangular numbers
    theta_+(q)    = sum(q^(k^2), k >= 1)                1 at positive squares

together with a self-check of the 2-dissection
phi(q) = phi(q^4) + 2q psi(q^8) and its -q variant.
"""

from __future__ import annotations

from enum import Enum

from .qseries import CoefficientRing, IdentityCheck, Series, compare, series_from_terms


class ThetaKind(Enum):
    PHI_PLUS = "phi"
    PHI_MINUS = "phi-minus"
    PSI = "psi"
    POSITIVE_SQUARES = "positive-squares"


def theta_terms(kind: ThetaKind, order: int) -> list[tuple[int, int]]:
    """Sparse (exponent, coefficient) support of a theta series below order."""
    if not isinstance(order, int) or order < 1:
        raise ValueError(f"order must be a positive int, got {order!r}")
    terms: list[tuple[int, int]] = []
    if kind is ThetaKind.PHI_PLUS:
        terms.append((0, 1))
        k = 1
        while k * k < order:
            terms.append((k * k, 2))
            k += 1
    elif kind is ThetaKind.PHI_MINUS:
        terms.append((0, 1))
        k = 1
        while k * k < order:
            terms.append((k * k, 2 * (-1) ** k))
            k += 1
    elif kind is ThetaKind.PSI:
        t = 0
        while t * (t + 1) // 2 < order:
            terms.append((t * (t + 1) // 2, 1))
            t += 1
    elif kind is ThetaKind.POSITIVE_SQUARES:
        k = 1
        while k * k < order:
            terms.append((k * k, 1))
            k += 1
    else:
        raise ValueError(f"unknown theta kind {kind!r}")
    return terms


def theta_series(kind: ThetaKind, ring: CoefficientRing, order: int) -> Series:
    return series_from_terms(ring, order, theta_terms(kind, order))


def check_two_dissection(
    order: int,
    phi_plus: Series | None = None,
    phi_minus: Series | None = None,
) -> list[IdentityCheck]:
    """Verify phi(+/-q) = phi(q^4) +/- 2q psi(q^8) through the given order.

    The right-hand sides are always rebuilt from scratch; the left-hand
    series may be injected (e.g. deliberately corrupted) so callers can
    confirm the check actually detects a wrong coefficient.  A failed
    identity is reported via ``first_difference``, not raised.
    """
    if phi_plus is None:
        phi_plus = theta_series(ThetaKind.PHI_PLUS, CoefficientRing(), order)
    if phi_minus is None:
        phi_minus = theta_series(ThetaKind.PHI_MINUS, CoefficientRing(), order)
    ring = phi_plus.ring
    phi_q4 = theta_series(ThetaKind.PHI_PLUS, ring, order).substitute_power(4)
    # 2q psi(q^8) = sum(2 q^(4t(t+1)+1)) built directly on its sparse support
    support = []
    t = 0
    while 4 * t * (t + 1) + 1 < order:
        support.append((4 * t * (t + 1) + 1, 2))
        t += 1
    shifted = series_from_terms(ring, order, support)
    return [
        compare("phi(q) = phi(q^4) + 2q psi(q^8)", phi_plus, phi_q4 + shifted),
        compare("phi(-q) = phi(q^4) - 2q psi(q^8)", phi_minus, phi_q4 - shifted),
    ]
