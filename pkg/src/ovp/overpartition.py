"""Overpartition numbers pbar(n) by several independent methods.

An overpartition is a partition in which the first occurrence of each
distinct part may be overlined, so pbar(0..5) = 1, 2, 4, 8, 14, 24.  The
generating function is

    sum(pbar(n) q^n) = prod((1 + q^k) / (1 - q^k)) = 1 / phi(-q),

which yields two production routes (series inversion of phi(-q), and
incremental Euler-factor multiplication), a direct combinatorial count for
small n, and the exact 2-adic expansion

    sum(pbar(n) q^n) = 1 + sum(2^k * sum((-1)^(n+k) c_k(n) q^n), k >= 1)

where c_k(n) counts ordered representations of n as a sum of k positive
squares.  Truncating at k = 2 gives pbar(n) mod 8 for n >= 1.
"""

from __future__ import annotations

import csv
import hashlib
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import IO

import numpy as np

from .qseries import CoefficientRing, Series, ZZ
from .squares import SquaresTable, c1_array, c2_array
from .theta import ThetaKind, theta_series


class Method:
    """Canonical names of the table construction methods."""

    THETA_INVERSION = "theta-inversion"
    EULER_PRODUCT = "euler-product"
    ENUMERATION = "enumeration"
    TWO_ADIC = "two-adic"
    ALL = (THETA_INVERSION, EULER_PRODUCT, ENUMERATION, TWO_ADIC)


_METHOD_ALIASES = {
    "theta": Method.THETA_INVERSION,
    "euler": Method.EULER_PRODUCT,
    "enum": Method.ENUMERATION,
    "2adic": Method.TWO_ADIC,
}

ENUMERATION_LIMIT = 64


def canonical_method(method: str) -> str:
    name = _METHOD_ALIASES.get(method, method)
    if name not in Method.ALL:
        raise ValueError(
            f"unknown method {method!r}; expected one of {', '.join(Method.ALL)}"
        )
    return name


@dataclass(frozen=True, eq=False)
class CoeffTable:
    """A named coefficient table with provenance metadata.

    ``values[n]`` is the n-th coefficient; ``value(n)`` additionally maps
    negative arguments to 0 (the standard convention for pbar).
    """

    name: str
    method: str
    ring: CoefficientRing
    values: tuple[int, ...] | np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.values)

    def value(self, n: int) -> int:
        if n < 0:
            return 0
        if n >= self.length:
            raise ValueError(
                f"table '{self.name}' holds {self.length} values; "
                f"index {n} requires length >= {n + 1}"
            )
        return int(self.values[n])

    def __getitem__(self, n: int) -> int:
        return self.value(n)

    def as_series(self) -> Series:
        return Series(self.ring, self.values)

    def payload_bytes(self) -> bytes:
        series = self.as_series()
        if self.ring.is_exact:
            return series.to_json().encode()
        return series.to_bytes()

    def content_hash(self) -> str:
        return hashlib.sha256(self.payload_bytes()).hexdigest()

    def write_csv(self, fp: IO[str]) -> None:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(["n", "value"])
        for n in range(self.length):
            writer.writerow([n, int(self.values[n])])


def overpartition_table(
    ring: CoefficientRing, length: int, method: str = Method.THETA_INVERSION
) -> CoeffTable:
    """Table of pbar(0), ..., pbar(length - 1) in the given ring.

    theta-inversion is the production route (O(length * sqrt(length)));
    euler-product is quadratic and meant for cross-validation; enumeration
    is capped at length 64; two-adic evaluates the exact 2-adic expansion
    with big integers and is also quadratic.
    """
    if not isinstance(length, (int, np.integer)) or length < 1:
        raise ValueError(f"length must be a positive int, got {length!r}")
    length = int(length)
    method = canonical_method(method)
    if method == Method.THETA_INVERSION:
        inv = theta_series(ThetaKind.PHI_MINUS, ring, length).invert()
        values = inv.coeffs
    elif method == Method.EULER_PRODUCT:
        if ring.is_exact:
            values = tuple(_euler_values_exact(length))
        else:
            values = _euler_values_mod(length, ring.modulus)
    elif method == Method.ENUMERATION:
        if length > ENUMERATION_LIMIT:
            raise ValueError(
                f"enumeration is limited to length <= {ENUMERATION_LIMIT}, "
                f"got {length}"
            )
        exact = _enumeration_values(length)
        values = _coerce(exact, ring)
    else:  # two-adic
        exact = _two_adic_values(length)
        values = _coerce(exact, ring)
    return CoeffTable(
        name="pbar",
        method=method,
        ring=ring,
        values=values,
        meta={"ring": str(ring), "length": length},
    )


def _coerce(exact_values: list[int], ring: CoefficientRing):
    if ring.is_exact:
        return tuple(exact_values)
    m = ring.modulus
    return np.array([v % m for v in exact_values], dtype=np.int64)


# -- euler product -----------------------------------------------------------


def _euler_values_exact(length: int) -> list[int]:
    # Multiply factor by factor: *(1 + q^k), then /(1 - q^k) in place.
    c = [0] * length
    c[0] = 1
    for k in range(1, length):
        c[k:] = [a + b for a, b in zip(c[k:], c)]
        for i in range(k, length):
            c[i] += c[i - k]
    return c


def _euler_values_mod(length: int, m: int) -> np.ndarray:
    c = np.zeros(length, dtype=np.int64)
    c[0] = 1
    for k in range(1, length):
        c[k:] = (c[k:] + c[: length - k]) % m
        # division by (1 - q^k) is a cumulative sum with stride k
        rows = -(-length // k)
        buf = np.zeros(rows * k, dtype=np.int64)
        buf[:length] = c
        mat = buf.reshape(rows, k)
        np.cumsum(mat, axis=0, out=mat)
        c = buf[:length] % m
    return c


# -- direct enumeration ------------------------------------------------------


def _enumeration_values(length: int) -> list[int]:
    # count(n, k): overpartitions of n with parts <= k; a part used j >= 1
    # times contributes a factor 2 for the optional overline on its first
    # occurrence.
    @lru_cache(maxsize=None)
    def count(n: int, largest: int) -> int:
        if n == 0:
            return 1
        if largest == 0:
            return 0
        total = count(n, largest - 1)
        rem = n - largest
        while rem >= 0:
            total += 2 * count(rem, largest - 1)
            rem -= largest
        return total

    values = [count(n, n) for n in range(length)]
    count.cache_clear()
    return values


# -- exact 2-adic expansion --------------------------------------------------


def _two_adic_values(length: int) -> list[int]:
    # acc[n] = 1[n == 0] + sum over k of (-1)^(n+k) 2^k c_k(n); row k of the
    # c table is streamed by convolving with theta_+ and never stored whole.
    squares = [a * a for a in range(1, math.isqrt(max(length - 1, 0)) + 1)]
    acc = [0] * length
    acc[0] = 1
    row = [0] * length
    for s in squares:
        row[s] = 1
    k = 1
    while k < length:
        # sign (-1)^(n+k) is + when n has the parity of k
        for start, sign in ((k, 1), (k + 1, -1)):
            if start >= length:
                continue
            seg = row[start::2]
            if sign > 0:
                acc[start::2] = [a + (b << k) for a, b in zip(acc[start::2], seg)]
            else:
                acc[start::2] = [a - (b << k) for a, b in zip(acc[start::2], seg)]
        k += 1
        if k >= length:
            break
        # next row: c_(k)(n) = sum(c_(k-1)(n - s)); support starts at k
        lo = k - 1
        out = [0] * length
        for s in squares:
            hi = length - s
            if hi <= lo:
                break
            seg = row[lo:hi]
            out[lo + s :] = [r + v for r, v in zip(out[lo + s :], seg)]
        row = out
    return acc


def two_adic_value(n: int, table: SquaresTable) -> int:
    """Evaluate sum(2^k (-1)^(n+k) c_k(n), k = 1..n) from an exact table.

    For n >= 1 this equals pbar(n) exactly; terms with k > n vanish since
    n cannot be a sum of more than n positive squares.  Rejects n = 0,
    where the expansion contributes only the constant term 1.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    n = int(n)
    if table.k_max < n:
        raise ValueError(f"table k_max {table.k_max} < n; need k_max >= {n}")
    if table.order <= n:
        raise ValueError(f"table order {table.order} <= n; need order >= {n + 1}")
    total = 0
    for k in range(1, n + 1):
        c = table.value(k, n)
        if c:
            term = c << k
            total += term if (n + k) % 2 == 0 else -term
    return total


# -- mod 8 truncation --------------------------------------------------------


def mod8_truncation(n: int) -> int:
    """pbar(n) mod 8 for n >= 1 from the k <= 2 terms of the expansion:

        pbar(n) == (-1)^n (-2 c_1(n) + 4 c_2(n))  (mod 8).
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    n = int(n)
    r = math.isqrt(n)
    r1 = 1 if r * r == n else 0
    r2 = 0
    a = 1
    while a * a < n:
        b2 = n - a * a
        b = math.isqrt(b2)
        if b * b == b2:
            r2 += 1
        a += 1
    return ((-1) ** n * (-2 * r1 + 4 * r2)) % 8


def mod8_residues(length: int) -> np.ndarray:
    """Vector of the mod-8 truncation for all n < length (entry 0 is 1)."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    r1 = c1_array(length)
    r2 = c2_array(length)
    base = -2 * r1 + 4 * r2
    sign = np.where(np.arange(length) % 2 == 0, 1, -1)
    out = (base * sign) % 8
    out[0] = 1
    return out
