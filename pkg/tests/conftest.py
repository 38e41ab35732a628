"""Shared fixtures: the expensive tables are built once per session.

The big residue table uses modulus 1920 = lcm(8, 40, 5, 12, 3, 64, 128),
which covers every congruence-family modulus in the registry and both
density moduli, so one inversion serves the whole suite.
"""

from __future__ import annotations

import pytest

from ovp import ZZ, Method, ThetaKind, mod_ring, overpartition_table, theta_series

BIG_LENGTH = 10**6 + 1
BIG_MODULUS = 1920


@pytest.fixture(scope="session")
def pbar_big():
    """pbar(n) mod 1920 for n <= 10**6."""
    return overpartition_table(mod_ring(BIG_MODULUS), BIG_LENGTH, Method.THETA_INVERSION)


@pytest.fixture(scope="session")
def pbar_exact():
    """pbar(n) as exact integers for n < 5000, via series inversion."""
    return overpartition_table(ZZ, 5000, Method.THETA_INVERSION)


@pytest.fixture(scope="session")
def phi_cubed():
    """phi(q)^3 with exact integer coefficients through order 10**4."""
    return theta_series(ThetaKind.PHI_PLUS, ZZ, 10**4) ** 3


@pytest.fixture(scope="session")
def phi_minus_cubed():
    """phi(-q)^3 with exact integer coefficients through order 10**4."""
    return theta_series(ThetaKind.PHI_MINUS, ZZ, 10**4) ** 3
