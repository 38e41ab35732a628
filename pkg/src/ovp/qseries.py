"""Truncated formal power series over ZZ or Z/m.

A series is a dense coefficient vector of a fixed truncation order T,
representing sum(c[n] * q^n for n < T).  Exact-integer series store Python
ints (arbitrary precision); residue-ring series store canonical residues in
a read-only numpy int64 vector.  All operations truncate silently at the
minimum order of their operands.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

_MAGIC = b"QS01"
_RING_TAG_MOD = 1
_MAX_MODULUS = 1 << 31
_SERIAL_CUTOFF = 4096
_LEAF = 256
_BLOCK = 8192


@dataclass(frozen=True)
class CoefficientRing:
    """Either ZZ (modulus None) or Z/m for 2 <= m < 2**31."""

    modulus: int | None = None

    def __post_init__(self) -> None:
        m = self.modulus
        if m is None:
            return
        if not isinstance(m, int) or isinstance(m, bool):
            raise TypeError(f"modulus must be an int, got {m!r}")
        if m < 2:
            raise ValueError(f"modulus must be >= 2, got {m}")
        if m >= _MAX_MODULUS:
            raise ValueError(f"modulus must be < 2**31, got {m}")

    @property
    def is_exact(self) -> bool:
        return self.modulus is None

    def reduce(self, value: int) -> int:
        return int(value) if self.modulus is None else int(value) % self.modulus

    def __str__(self) -> str:
        return "ZZ" if self.modulus is None else f"Z/{self.modulus}"


ZZ = CoefficientRing()


def mod_ring(m: int) -> CoefficientRing:
    return CoefficientRing(m)


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of comparing two series (or coefficient sequences).

    ``first_difference`` is the smallest exponent where the two sides
    disagree, or None when they agree through ``order``.
    """

    name: str
    order: int
    first_difference: int | None

    @property
    def ok(self) -> bool:
        return self.first_difference is None

    def to_dict(self) -> dict:
        out = {"name": self.name, "order": self.order, "pass": self.ok}
        if self.first_difference is not None:
            out["first_difference"] = self.first_difference
        return out


def _normalize_exact(coeffs: Iterable[int]) -> tuple[int, ...]:
    return tuple(int(c) for c in coeffs)


def _normalize_mod(coeffs, m: int) -> np.ndarray:
    arr = np.asarray(coeffs)
    if arr.dtype == object or arr.dtype.kind not in "iu":
        arr = np.array([int(c) % m for c in coeffs], dtype=np.int64)
    else:
        arr = arr.astype(np.int64) % m
    arr.flags.writeable = False
    return arr


class Series:
    """Truncated power series with ring-aware arithmetic.

    Equality compares coefficients up to the minimum of the two orders and
    requires identical rings; ``first_difference`` gives the exponent of the
    earliest mismatch for diagnostic reporting.
    """

    __slots__ = ("ring", "_coeffs")

    def __init__(self, ring: CoefficientRing, coeffs) -> None:
        if not isinstance(ring, CoefficientRing):
            raise TypeError(f"ring must be a CoefficientRing, got {ring!r}")
        object.__setattr__(self, "ring", ring)
        if ring.is_exact:
            data = _normalize_exact(coeffs)
        else:
            data = _normalize_mod(coeffs, ring.modulus)
        object.__setattr__(self, "_coeffs", data)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # -- basic accessors -------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._coeffs)

    @property
    def coeffs(self):
        """Coefficient vector: tuple of ints (ZZ) or read-only int64 array."""
        return self._coeffs

    def coefficient(self, n: int) -> int:
        if not 0 <= n < self.order:
            raise IndexError(f"exponent {n} outside [0, {self.order})")
        return int(self._coeffs[n])

    def nonzero_terms(self) -> list[tuple[int, int]]:
        if self.ring.is_exact:
            return [(e, c) for e, c in enumerate(self._coeffs) if c]
        idx = np.nonzero(self._coeffs)[0]
        return [(int(e), int(self._coeffs[e])) for e in idx]

    @property
    def nnz(self) -> int:
        if self.ring.is_exact:
            return sum(1 for c in self._coeffs if c)
        return int(np.count_nonzero(self._coeffs))

    def __repr__(self) -> str:
        head = ", ".join(str(int(c)) for c in self._coeffs[:8])
        tail = ", ..." if self.order > 8 else ""
        return f"Series({self.ring}, order={self.order}, [{head}{tail}])"

    # -- comparison ------------------------------------------------------

    def first_difference(self, other: "Series") -> int | None:
        """Smallest exponent where self and other differ, None if equal.

        Comparison runs through min(self.order, other.order); rings must
        match exactly.
        """
        if not isinstance(other, Series):
            raise TypeError("can only compare against another Series")
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        n = min(self.order, other.order)
        if self.ring.is_exact:
            for i in range(n):
                if self._coeffs[i] != other._coeffs[i]:
                    return i
            return None
        a = self._coeffs[:n]
        b = other._coeffs[:n]
        bad = np.nonzero(a != b)[0]
        return int(bad[0]) if bad.size else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return self.first_difference(other) is None

    __hash__ = None  # prefix equality is not hashable-consistent

    # -- ring arithmetic -------------------------------------------------

    def _binary_check(self, other: "Series") -> int:
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        return min(self.order, other.order)

    def __add__(self, other: "Series") -> "Series":
        n = self._binary_check(other)
        if self.ring.is_exact:
            data = [a + b for a, b in zip(self._coeffs, other._coeffs)]
        else:
            data = (self._coeffs[:n] + other._coeffs[:n]) % self.ring.modulus
        return Series(self.ring, data)

    def __sub__(self, other: "Series") -> "Series":
        n = self._binary_check(other)
        if self.ring.is_exact:
            data = [a - b for a, b in zip(self._coeffs, other._coeffs)]
        else:
            data = (self._coeffs[:n] - other._coeffs[:n]) % self.ring.modulus
        return Series(self.ring, data)

    def __neg__(self) -> "Series":
        if self.ring.is_exact:
            return Series(self.ring, [-c for c in self._coeffs])
        return Series(self.ring, (-self._coeffs) % self.ring.modulus)

    def scalar_mul(self, c: int) -> "Series":
        c = int(c)
        if self.ring.is_exact:
            return Series(self.ring, [c * a for a in self._coeffs])
        cm = c % self.ring.modulus
        return Series(self.ring, (self._coeffs * cm) % self.ring.modulus)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scalar_mul(int(other))
        n = self._binary_check(other)
        if n == 0:
            return Series(self.ring, [])
        if self.ring.is_exact:
            return Series(self.ring, _mul_exact(self._coeffs, other._coeffs, n))
        data = _mul_mod(self._coeffs, other._coeffs, n, self.ring.modulus)
        return Series(self.ring, data)

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scalar_mul(int(other))
        return NotImplemented

    def __pow__(self, e: int) -> "Series":
        if not isinstance(e, (int, np.integer)) or e < 0:
            raise ValueError(f"exponent must be a nonnegative int, got {e!r}")
        result = one(self.ring, self.order)
        base = self
        e = int(e)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- inversion -------------------------------------------------------

    def invert(self) -> "Series":
        """Multiplicative inverse to the same truncation order.

        The constant term must be a unit: +/-1 over ZZ, coprime to m over
        Z/m.  Cost is O(T * nnz) in the number of nonzero terms of self.
        """
        if self.order == 0:
            raise ValueError("cannot invert a series of order 0")
        a0 = int(self._coeffs[0])
        T = self.order
        if self.ring.is_exact:
            if a0 not in (1, -1):
                raise ValueError(
                    f"constant term {a0} is not a unit in ZZ (need +1 or -1)"
                )
            kernel = [(e, a0 * c) for e, c in self.nonzero_terms() if e > 0]
            rhs = [a0] + [0] * (T - 1)
            vals = _solve_unit_toeplitz_exact(kernel, rhs)
            return Series(self.ring, vals)
        m = self.ring.modulus
        g = math.gcd(a0, m)
        if g != 1:
            raise ValueError(
                f"constant term {a0} is not invertible modulo {m}: "
                f"gcd({a0}, {m}) = {g}"
            )
        u = pow(a0, -1, m)
        monic = (self._coeffs * u) % m
        offsets = np.nonzero(monic[1:])[0] + 1
        kvals = monic[offsets]
        rhs = np.zeros(T, dtype=np.int64)
        rhs[0] = u
        out = _solve_unit_toeplitz_mod(offsets, kvals, rhs, m)
        return Series(self.ring, out)

    # -- reindexing ------------------------------------------------------

    def substitute_power(self, d: int) -> "Series":
        """Return f(q^d) truncated to the same order."""
        if not isinstance(d, (int, np.integer)) or d < 1:
            raise ValueError(f"power must be a positive int, got {d!r}")
        d = int(d)
        T = self.order
        if self.ring.is_exact:
            data = [0] * T
            for e, c in enumerate(self._coeffs):
                de = d * e
                if de >= T:
                    break
                data[de] = c
        else:
            data = np.zeros(T, dtype=np.int64)
            nsrc = (T - 1) // d + 1 if T else 0
            data[: d * nsrc : d] = self._coeffs[:nsrc]
        return Series(self.ring, data)

    def extract_progression(self, d: int, r: int) -> "Series":
        """Series of coefficients on the progression d*n + r.

        Result order is ceil((order - r) / d); coefficient n of the result
        is coefficient d*n + r of self.
        """
        if not isinstance(d, (int, np.integer)) or d < 1:
            raise ValueError(f"step must be a positive int, got {d!r}")
        if not isinstance(r, (int, np.integer)) or not 0 <= r < d:
            raise ValueError(f"residue must satisfy 0 <= r < {d}, got {r!r}")
        d, r = int(d), int(r)
        n_out = max(0, -((self.order - r) // -d))
        if self.ring.is_exact:
            data = self._coeffs[r::d][:n_out]
        else:
            data = self._coeffs[r::d][:n_out]
        return Series(self.ring, data)

    def truncate(self, order: int) -> "Series":
        if not 0 <= order <= self.order:
            raise ValueError(f"truncation order {order} outside [0, {self.order}]")
        return Series(self.ring, self._coeffs[:order])

    def reduce_mod(self, m: int) -> "Series":
        """Map coefficients into Z/m.

        Defined for exact series and for residue series whose modulus is a
        multiple of m (the reduction is then a well-defined ring map).
        """
        target = CoefficientRing(m)
        if self.ring.is_exact:
            return Series(target, [c % m for c in self._coeffs])
        if self.ring.modulus % m != 0:
            raise ValueError(
                f"cannot reduce Z/{self.ring.modulus} series mod {m}: "
                f"{m} does not divide {self.ring.modulus}"
            )
        return Series(target, self._coeffs % m)

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        if self.ring.is_exact:
            return {
                "ring": "exact",
                "order": self.order,
                "coeffs": [str(c) for c in self._coeffs],
            }
        return {
            "ring": "mod",
            "modulus": self.ring.modulus,
            "order": self.order,
            "coeffs": [int(c) for c in self._coeffs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Series":
        kind = obj.get("ring")
        order = int(obj["order"])
        coeffs = obj["coeffs"]
        if len(coeffs) != order:
            raise ValueError(
                f"order field {order} does not match {len(coeffs)} coefficients"
            )
        if kind == "exact":
            return cls(ZZ, [int(c) for c in coeffs])
        if kind == "mod":
            return cls(CoefficientRing(int(obj["modulus"])), [int(c) for c in coeffs])
        raise ValueError(f"unknown ring tag {kind!r}")

    @classmethod
    def from_json(cls, text: str) -> "Series":
        return cls.from_json_dict(json.loads(text))

    def to_bytes(self) -> bytes:
        """Binary form: magic, ring tag, modulus, order, little-endian words.

        Only residue-ring series have a binary form; exact series serialize
        through JSON (decimal strings) since coefficients may exceed 64 bits.
        """
        if self.ring.is_exact:
            raise ValueError("exact series have no binary form; use to_json")
        header = _MAGIC + struct.pack(
            "<BQQ", _RING_TAG_MOD, self.ring.modulus, self.order
        )
        return header + np.ascontiguousarray(self._coeffs, dtype="<i8").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "Series":
        if data[:4] != _MAGIC:
            raise ValueError(f"bad magic {data[:4]!r}, expected {_MAGIC!r}")
        tag, modulus, order = struct.unpack("<BQQ", data[4:21])
        if tag != _RING_TAG_MOD:
            raise ValueError(f"unknown ring tag {tag}")
        body = data[21:]
        if len(body) != 8 * order:
            raise ValueError(
                f"payload holds {len(body) // 8} words, header promises {order}"
            )
        coeffs = np.frombuffer(body, dtype="<i8").astype(np.int64)
        return cls(CoefficientRing(int(modulus)), coeffs)


# -- construction ----------------------------------------------------------


def series_from_terms(
    ring: CoefficientRing, order: int, terms: Iterable[tuple[int, int]]
) -> Series:
    """Build a series of the given order from sparse (exponent, value) terms.

    Exponents must be distinct and lie in [0, order).
    """
    if not isinstance(order, (int, np.integer)) or order < 1:
        raise ValueError(f"order must be a positive int, got {order!r}")
    data = [0] * int(order)
    seen = set()
    for e, c in terms:
        e = int(e)
        if not 0 <= e < order:
            raise ValueError(f"exponent {e} outside [0, {order})")
        if e in seen:
            raise ValueError(f"duplicate exponent {e}")
        seen.add(e)
        data[e] = int(c)
    return Series(ring, data)


def zero(ring: CoefficientRing, order: int) -> Series:
    return Series(ring, [0] * order)


def one(ring: CoefficientRing, order: int) -> Series:
    return Series(ring, [1] + [0] * (order - 1)) if order else Series(ring, [])


# -- operation aliases (functional spelling of the method API) -------------


def add(a: Series, b: Series) -> Series:
    return a + b


def mul(a: Series, b: Series) -> Series:
    return a * b


def neg(a: Series) -> Series:
    return -a


def scalar_mul(c: int, a: Series) -> Series:
    return a.scalar_mul(c)


def invert(a: Series) -> Series:
    return a.invert()


def substitute_power(a: Series, d: int) -> Series:
    return a.substitute_power(d)


def extract_progression(a: Series, d: int, r: int) -> Series:
    return a.extract_progression(d, r)


def power(a: Series, e: int) -> Series:
    return a**e


def reduce_mod(a: Series, m: int) -> Series:
    return a.reduce_mod(m)


def first_difference(a: Series, b: Series) -> int | None:
    return a.first_difference(b)


def compare(name: str, a: Series, b: Series) -> IdentityCheck:
    """Package a prefix comparison of two series as an IdentityCheck."""
    return IdentityCheck(
        name=name,
        order=min(a.order, b.order),
        first_difference=a.first_difference(b),
    )


# -- multiplication kernels -------------------------------------------------


def _sparse_terms(coeffs, exact: bool) -> list[tuple[int, int]]:
    if exact:
        return [(e, c) for e, c in enumerate(coeffs) if c]
    idx = np.nonzero(coeffs)[0]
    return [(int(e), int(coeffs[e])) for e in idx]


def _mul_exact(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    # Shift-and-add over the sparser operand: O(n * nnz) int operations.
    na = sum(1 for c in a[:n] if c)
    nb = sum(1 for c in b[:n] if c)
    if nb < na:
        a, b = b, a
    out = [0] * n
    for e, c in enumerate(a[:n]):
        if not c:
            continue
        seg = b[: n - e]
        out[e:] = [r + c * v for r, v in zip(out[e:], seg)]
    return out


def _mul_mod(a: np.ndarray, b: np.ndarray, n: int, m: int) -> np.ndarray:
    a = a[:n]
    b = b[:n]
    nnz_a = int(np.count_nonzero(a))
    nnz_b = int(np.count_nonzero(b))
    sparse_bound = 4 * math.isqrt(n)
    if min(nnz_a, nnz_b) <= sparse_bound or n * (m - 1) * (m - 1) >= 1 << 62:
        if nnz_b < nnz_a:
            a, b = b, a
        out = np.zeros(n, dtype=np.int64)
        stride = max(1, ((1 << 62) - m) // (m * m))
        applied = 0
        for e in np.nonzero(a)[0]:
            c = int(a[e])
            out[e:] += c * b[: n - e]
            applied += 1
            if applied >= stride:
                out %= m
                applied = 0
        return out % m
    return np.convolve(a, b)[:n] % m


# -- unit lower-triangular Toeplitz solvers ---------------------------------
#
# Both solvers compute r with  r[n] = rhs[n] - sum(vals[j] * r[n - off[j]])
# over offsets off[j] <= n, i.e. r * k = rhs for the monic kernel
# k = 1 + sum(vals[j] * q^off[j]).  Series inversion calls these with
# rhs = u * e_0.


def _solve_unit_toeplitz_exact(
    kernel: list[tuple[int, int]], rhs: Sequence[int]
) -> list[int]:
    T = len(rhs)
    r = [0] * T
    for n in range(T):
        s = rhs[n]
        for off, c in kernel:
            if off > n:
                break
            s -= c * r[n - off]
        r[n] = s
    return r


def _serial_solve_mod(
    offsets: Sequence[int], vals: Sequence[int], rhs: Sequence[int], m: int
) -> np.ndarray:
    T = len(rhs)
    kernel = [(int(o), int(c)) for o, c in zip(offsets, vals)]
    r = [0] * T
    for n in range(T):
        s = int(rhs[n])
        for off, c in kernel:
            if off > n:
                break
            s -= c * r[n - off]
        r[n] = s % m
    return np.array(r, dtype=np.int64)


def _inverse_head_mod(
    offsets: Sequence[int], vals: Sequence[int], m: int, length: int
) -> np.ndarray:
    e0 = [0] * length
    e0[0] = 1
    return _serial_solve_mod(offsets, vals, e0, m)


def _solve_unit_toeplitz_mod(
    offsets: np.ndarray, vals: np.ndarray, rhs: np.ndarray, m: int
) -> np.ndarray:
    """Blocked solve of a unit lower-triangular Toeplitz system mod m.

    Large blocks subtract contributions of the solved prefix with one numpy
    slice per kernel offset; inside a block, leaf chunks are solved densely
    by multiplying with the Toeplitz matrix of the kernel-inverse head.
    Falls back to a serial scan when the size or modulus makes the int64
    accumulation bounds unprovable.
    """
    T = len(rhs)
    offsets = np.asarray(offsets, dtype=np.int64)
    vals = np.asarray(vals, dtype=np.int64)
    if T <= _SERIAL_CUTOFF:
        return _serial_solve_mod(offsets, vals, rhs, m)
    leaf = min(_LEAF, max(8, int((1 << 62) // max(1, m * m)) or 8))
    if leaf * (m - 1) * (m - 1) >= 1 << 62 or ((1 << 62) - m) // (m * m) < 1:
        return _serial_solve_mod(offsets, vals, rhs, m)
    stride = max(1, ((1 << 62) - m) // (m * m))

    kern = list(zip(offsets.tolist(), vals.tolist()))
    block = max(_BLOCK, 2 * leaf)
    kern_small = [(o, c) for o, c in kern if o < block]

    inv_head = _inverse_head_mod(offsets, vals, m, leaf)
    ii = np.arange(leaf)
    diff = ii[:, None] - ii[None, :]
    toep = np.where(diff >= 0, inv_head[np.clip(diff, 0, leaf - 1)], 0)

    r = np.zeros(T, dtype=np.int64)
    for s in range(0, T, block):
        e = min(s + block, T)
        acc = rhs[s:e].astype(np.int64)
        applied = 0
        for off, c in kern:
            if off >= e:
                break
            x0 = max(0, s - off)
            x1 = min(s, e - off)
            if x0 < x1:
                t0 = x0 + off - s
                acc[t0 : t0 + (x1 - x0)] -= c * r[x0:x1]
                applied += 1
                if applied >= stride:
                    acc %= m
                    applied = 0
        acc %= m
        for cs in range(s, e, leaf):
            ce = min(cs + leaf, e)
            w = ce - cs
            applied = 0
            for off, c in kern_small:
                if off >= ce - s:
                    break
                x0 = max(s, cs - off)
                x1 = min(cs, ce - off)
                if x0 < x1:
                    t0 = x0 + off - cs + (cs - s)
                    acc[t0 : t0 + (x1 - x0)] -= c * r[x0:x1]
                    applied += 1
                    if applied >= stride:
                        acc[cs - s : ce - s] %= m
                        applied = 0
            local = acc[cs - s : ce - s] % m
            r[cs:ce] = (toep[:w, :w] @ local) % m
    return r
