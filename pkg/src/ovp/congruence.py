"""Registry of overpartition congruences and machinery to verify them.

Each family states a relation between pbar values along arithmetic
progressions, for example

    pbar(40n + 35) == 0                        (mod 40)
    pbar(5n)       == (-1)^n pbar(20n)         (mod 5)
    pbar(4^k 5 l^2 n) == 0                     (mod 5)   for primes
                         l == 3 (mod 5) and legendre(-n, l) = -1.

A family is pure data: a left argument map A(n) = base * factors * (step*n
+ offset), an optional right map with a sign/scale rule, parameter axes
(power exponents, primes filtered by congruence conditions, finite residue
choices), and an optional side condition on n.  verify() sweeps every
parameter assignment and every n keeping all referenced arguments within a
budget, and reports counterexamples instead of raising.

Also here: the two-level dissection chain relating pbar(5n) mod 5 to theta
products, and zero-density reports for pbar modulo powers of 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .hecke import is_odd_prime, legendre
from .overpartition import CoeffTable, Method, overpartition_table
from .qseries import IdentityCheck, Series, compare, mod_ring
from .theta import ThetaKind, theta_series

_CHUNK = 1 << 18


# -- family description ------------------------------------------------------


@dataclass(frozen=True)
class AxisFactor:
    """One multiplicative factor of an argument map, driven by an axis.

    With ``base`` set the factor is base**value; otherwise it is
    value**power (used for prime axes, e.g. l^2).
    """

    axis: str
    base: int | None = None
    power: int = 1

    def evaluate(self, params: dict[str, int]) -> int:
        v = params[self.axis]
        return self.base**v if self.base is not None else v**self.power


@dataclass(frozen=True)
class ArgMap:
    """Argument map A(n) = base * (axis factors) * (step * n + offset)."""

    base: int = 1
    step: int = 1
    offset: int = 0
    offset_axis: str | None = None
    factors: tuple[AxisFactor, ...] = ()

    def scale(self, params: dict[str, int]) -> int:
        s = self.base
        for f in self.factors:
            s *= f.evaluate(params)
        return s

    def offset_value(self, params: dict[str, int]) -> int:
        return params[self.offset_axis] if self.offset_axis else self.offset

    def evaluate(self, n, params: dict[str, int]):
        return self.scale(params) * (self.step * n + self.offset_value(params))


@dataclass(frozen=True)
class PowerAxis:
    """Nonnegative integer exponent, enumerated 0, 1, ... within budget."""

    name: str


@dataclass(frozen=True)
class PrimeAxis:
    """Odd primes p with p % mod in residues, ascending within budget."""

    name: str
    mod: int
    residues: tuple[int, ...]


@dataclass(frozen=True)
class ChoiceAxis:
    """A fixed finite set of values."""

    name: str
    values: tuple[int, ...]


@dataclass(frozen=True)
class SideCondition:
    """Restriction on the swept n, relative to a prime-valued axis.

    kind "legendre-minus-n": keep n with legendre(-n, p) == value;
    kind "coprime":          keep n with p not dividing n.
    """

    kind: str
    axis: str
    value: int = -1


@dataclass(frozen=True)
class Relation:
    """Right-hand side of a family.

    kind "zero":            pbar(A(n)) == 0
    kind "equal":           pbar(A(n)) == sign * pbar(B(n))
    kind "alternating":     pbar(A(n)) == (-1)^n * pbar(B(n))
    kind "scaled":          pbar(A(n)) == scalar * pbar(B(n))
    kind "legendre-split":  pbar(A(n)) == pbar(B(n)) + legendre(n, prime) * pbar(A(n))
    """

    kind: str = "zero"
    rhs: ArgMap | None = None
    sign: int = 1
    scalar: int = 1
    prime: int | None = None


@dataclass(frozen=True)
class CongruenceFamily:
    id: str
    statement: str
    modulus: int
    lhs: ArgMap
    relation: Relation = Relation()
    axes: tuple = ()
    side: SideCondition | None = None
    n_start: int = 0

    def arg_maps(self) -> list[ArgMap]:
        maps = [self.lhs]
        if self.relation.rhs is not None:
            maps.append(self.relation.rhs)
        return maps


# -- verification report -----------------------------------------------------


@dataclass
class VerifyReport:
    family_id: str
    statement: str
    modulus: int
    budget: int
    n_max: int
    max_argument: int
    cases: int
    violations: int
    counterexamples: list[tuple[int, int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_json_dict(self) -> dict:
        return {
            "family": self.family_id,
            "anchor": self.statement,
            "range": {
                "n_min": 0,
                "n_max": self.n_max,
                "max_argument": self.max_argument,
            },
            "cases": self.cases,
            "pass": self.ok,
            "violations": self.violations,
            "counterexamples": [
                {"n": n, "arg": arg, "lhs": lhs, "rhs": rhs}
                for (n, arg, lhs, rhs) in self.counterexamples
            ],
        }


# -- parameter sweeps --------------------------------------------------------


def _primes_where(mod: int, residues: tuple[int, ...]) -> Iterator[int]:
    p = 3
    while True:
        if is_odd_prime(p) and p % mod in residues:
            yield p
        p += 2


def _min_arg(family: CongruenceFamily, params: dict[str, int]) -> int:
    """Smallest nontrivially checked argument under this assignment.

    Uses n = 0 when the lhs offset is positive (the n = 0 case already
    reads a nontrivial pbar value) and n = 1 otherwise, and takes the
    largest argument over all referenced maps since every map must stay
    within budget for an n to be checkable.
    """
    n0 = 0 if family.lhs.offset_value(params) > 0 else 1
    return max(m.evaluate(n0, params) for m in family.arg_maps())


def _axis_assignments(
    family: CongruenceFamily, axes: tuple, partial: dict[str, int], budget: int
) -> Iterator[dict[str, int]]:
    if not axes:
        if _min_arg(family, partial) <= budget:
            yield dict(partial)
        return
    axis, rest = axes[0], axes[1:]
    if isinstance(axis, PowerAxis):
        v = 0
        while True:
            partial[axis.name] = v
            if not _fits_with_minimal_rest(family, rest, partial, budget):
                del partial[axis.name]
                return
            yield from _axis_assignments(family, rest, partial, budget)
            v += 1
    elif isinstance(axis, PrimeAxis):
        for p in _primes_where(axis.mod, axis.residues):
            partial[axis.name] = p
            if not _fits_with_minimal_rest(family, rest, partial, budget):
                del partial[axis.name]
                return
            yield from _axis_assignments(family, rest, partial, budget)
    else:
        for v in sorted(axis.values):
            partial[axis.name] = v
            if _fits_with_minimal_rest(family, rest, partial, budget):
                yield from _axis_assignments(family, rest, partial, budget)
        del partial[axis.name]


def _fits_with_minimal_rest(
    family: CongruenceFamily, rest: tuple, partial: dict[str, int], budget: int
) -> bool:
    filled = dict(partial)
    for axis in rest:
        if isinstance(axis, PowerAxis):
            filled[axis.name] = 0
        elif isinstance(axis, PrimeAxis):
            filled[axis.name] = next(_primes_where(axis.mod, axis.residues))
        else:
            filled[axis.name] = min(axis.values)
    return _min_arg(family, filled) <= budget


# -- verification ------------------------------------------------------------


def _table_residue_reader(table: CoeffTable, modulus: int):
    if table.ring.is_exact:
        values = table.values

        def read(args: np.ndarray) -> np.ndarray:
            return np.array([values[a] % modulus for a in args.tolist()], dtype=np.int64)

        return read
    if table.ring.modulus % modulus != 0:
        raise ValueError(
            f"table modulus {table.ring.modulus} does not cover family "
            f"modulus {modulus}"
        )
    arr = np.asarray(table.values)

    def read(args: np.ndarray) -> np.ndarray:
        return arr[args] % modulus

    return read


def _legendre_table(p: int, negate: bool) -> np.ndarray:
    tab = np.zeros(p, dtype=np.int64)
    for r in range(p):
        tab[r] = legendre(-r if negate else r, p)
    return tab


def verify(
    family: CongruenceFamily,
    table: CoeffTable,
    budget: int | None = None,
    max_counterexamples: int = 16,
) -> VerifyReport:
    """Sweep all parameters and n of a family with arguments <= budget.

    The table must cover every index up to the budget; its ring must be
    exact or a residue ring whose modulus the family modulus divides.
    """
    if budget is None:
        budget = table.length - 1
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    if table.length <= budget:
        raise ValueError(
            f"budget {budget} requires table length >= {budget + 1}, "
            f"table has {table.length}"
        )
    M = family.modulus
    read = _table_residue_reader(table, M)
    rel = family.relation
    side = family.side

    cases = 0
    violations = 0
    n_max_seen = 0
    arg_max_seen = 0
    counterexamples: list[tuple[int, int, int, int]] = []

    for params in _axis_assignments(family, tuple(family.axes), {}, budget):
        bound = budget
        n_hi = None
        for amap in family.arg_maps():
            s = amap.scale(params)
            off = amap.offset_value(params)
            cap = (bound // s - off) // amap.step
            n_hi = cap if n_hi is None else min(n_hi, cap)
        if n_hi is None or n_hi < family.n_start:
            continue
        side_tab = None
        side_p = None
        if side is not None:
            side_p = params[side.axis]
            if side.kind == "legendre-minus-n":
                side_tab = _legendre_table(side_p, negate=True)
        split_tab = None
        if rel.kind == "legendre-split":
            split_tab = _legendre_table(rel.prime, negate=False)

        for lo in range(family.n_start, n_hi + 1, _CHUNK):
            hi = min(lo + _CHUNK, n_hi + 1)
            n = np.arange(lo, hi, dtype=np.int64)
            if side is not None:
                if side.kind == "legendre-minus-n":
                    n = n[side_tab[n % side_p] == side.value]
                elif side.kind == "coprime":
                    n = n[n % side_p != 0]
                else:
                    raise ValueError(f"unknown side condition {side.kind!r}")
                if n.size == 0:
                    continue
            lhs_args = family.lhs.evaluate(n, params)
            lhs = read(lhs_args)
            if rel.kind == "zero":
                rhs = np.zeros_like(lhs)
            else:
                rhs_args = rel.rhs.evaluate(n, params)
                rhs_raw = read(rhs_args)
                if rel.kind == "equal":
                    rhs = (rel.sign * rhs_raw) % M
                elif rel.kind == "alternating":
                    rhs = np.where(n % 2 == 0, rhs_raw, (-rhs_raw) % M)
                elif rel.kind == "scaled":
                    rhs = (rel.scalar * rhs_raw) % M
                elif rel.kind == "legendre-split":
                    chi = split_tab[n % rel.prime]
                    rhs = (rhs_raw + chi * lhs) % M
                else:
                    raise ValueError(f"unknown relation kind {rel.kind!r}")
            bad = np.nonzero(lhs != rhs)[0]
            cases += int(n.size)
            n_max_seen = max(n_max_seen, int(n[-1]))
            arg_max_seen = max(arg_max_seen, int(lhs_args[-1]))
            if rel.kind != "zero":
                arg_max_seen = max(arg_max_seen, int(rhs_args[-1]))
            if bad.size:
                violations += int(bad.size)
                for i in bad[: max(0, max_counterexamples - len(counterexamples))]:
                    counterexamples.append(
                        (int(n[i]), int(lhs_args[i]), int(lhs[i]), int(rhs[i]))
                    )
    return VerifyReport(
        family_id=family.id,
        statement=family.statement,
        modulus=M,
        budget=budget,
        n_max=n_max_seen,
        max_argument=arg_max_seen,
        cases=cases,
        violations=violations,
        counterexamples=counterexamples,
    )


# -- the registry ------------------------------------------------------------


def _nonresidues(p: int) -> tuple[int, ...]:
    return tuple(r for r in range(1, p) if legendre(r, p) == -1)


def registry() -> list[CongruenceFamily]:
    """All congruence families this package verifies mechanically."""
    fams: list[CongruenceFamily] = [
        CongruenceFamily(
            id="pbar-4n3-mod8",
            statement="pbar(4n + 3) == 0 (mod 8)",
            modulus=8,
            lhs=ArgMap(step=4, offset=3),
        ),
        CongruenceFamily(
            id="pbar-40n35-mod40",
            statement="pbar(40n + 35) == 0 (mod 40)",
            modulus=40,
            lhs=ArgMap(step=40, offset=35),
        ),
        CongruenceFamily(
            id="pbar-40n35-mod5",
            statement="pbar(40n + 35) == 0 (mod 5)",
            modulus=5,
            lhs=ArgMap(step=40, offset=35),
        ),
        CongruenceFamily(
            id="pbar-9a-27n18-mod12",
            statement="pbar(9^a (27n + 18)) == 0 (mod 12)",
            modulus=12,
            lhs=ArgMap(step=27, offset=18, factors=(AxisFactor("a", base=9),)),
            axes=(PowerAxis("a"),),
        ),
    ]
    for ell in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        m = 8 if ell % 8 in (1, 7) else 4
        fams.append(
            CongruenceFamily(
                id=f"nonresidue-{ell}",
                statement=(
                    f"pbar({ell}n + r) == 0 (mod {m}) "
                    f"for every quadratic nonresidue r mod {ell}"
                ),
                modulus=m,
                lhs=ArgMap(step=ell, offset_axis="r"),
                axes=(ChoiceAxis("r", _nonresidues(ell)),),
            )
        )
    fams += [
        CongruenceFamily(
            id="pbar-5n-vs-20n-mod5",
            statement="pbar(5n) == (-1)^n pbar(20n) (mod 5)",
            modulus=5,
            lhs=ArgMap(step=5),
            relation=Relation(kind="alternating", rhs=ArgMap(step=20)),
        ),
        CongruenceFamily(
            id="pbar-n-vs-4n-mod8",
            statement="pbar(n) == (-1)^n pbar(4n) (mod 8)",
            modulus=8,
            lhs=ArgMap(step=1),
            relation=Relation(kind="alternating", rhs=ArgMap(step=4)),
        ),
        CongruenceFamily(
            id="pbar-4k-40n35-mod40",
            statement="pbar(4^k (40n + 35)) == 0 (mod 40)",
            modulus=40,
            lhs=ArgMap(step=40, offset=35, factors=(AxisFactor("k", base=4),)),
            axes=(PowerAxis("k"),),
        ),
        CongruenceFamily(
            id="pbar-4k-5l2-mod5",
            statement=(
                "pbar(4^k 5 l^2 n) == 0 (mod 5) for primes l == 3 (mod 5) "
                "and n with legendre(-n, l) = -1"
            ),
            modulus=5,
            lhs=ArgMap(
                base=5,
                factors=(AxisFactor("k", base=4), AxisFactor("l", power=2)),
            ),
            axes=(PrimeAxis("l", mod=5, residues=(3,)), PowerAxis("k")),
            side=SideCondition(kind="legendre-minus-n", axis="l", value=-1),
        ),
        CongruenceFamily(
            id="pbar-25n-vs-625n-mod5",
            statement="pbar(25n) == pbar(625n) (mod 5)",
            modulus=5,
            lhs=ArgMap(step=25),
            relation=Relation(kind="equal", rhs=ArgMap(step=625)),
        ),
        CongruenceFamily(
            id="pbar-4k-5odd-5n1-mod5",
            statement="pbar(4^k 5^(2i+3) (5n +/- 1)) == 0 (mod 5)",
            modulus=5,
            lhs=ArgMap(
                base=125,
                step=5,
                offset_axis="r",
                factors=(AxisFactor("k", base=4), AxisFactor("i", base=25)),
            ),
            axes=(PowerAxis("k"), PowerAxis("i"), ChoiceAxis("r", (1, 4))),
        ),
        CongruenceFamily(
            id="pbar-125-5n1-mod5",
            statement="pbar(125 (5n +/- 1)) == 0 (mod 5)",
            modulus=5,
            lhs=ArgMap(base=125, step=5, offset_axis="r"),
            axes=(ChoiceAxis("r", (1, 4)),),
        ),
        CongruenceFamily(
            id="pbar-500-5n1-mod5",
            statement="pbar(500 (5n +/- 1)) == 0 (mod 5)",
            modulus=5,
            lhs=ArgMap(base=500, step=5, offset_axis="r"),
            axes=(ChoiceAxis("r", (1, 4)),),
        ),
        CongruenceFamily(
            id="pbar-45-3n1-mod5",
            statement="pbar(45 (3n + 1)) == 0 (mod 5)",
            modulus=5,
            lhs=ArgMap(base=45, step=3, offset=1),
        ),
        CongruenceFamily(
            id="pbar-180-3n1-mod5",
            statement="pbar(180 (3n + 1)) == 0 (mod 5)",
            modulus=5,
            lhs=ArgMap(base=180, step=3, offset=1),
        ),
        CongruenceFamily(
            id="pbar-845-13n-mod5",
            statement=(
                "pbar(845 (13n + r)) == 0 (mod 5) "
                "for r in {2, 5, 6, 7, 8, 11} (nonresidues of 13)"
            ),
            modulus=5,
            lhs=ArgMap(base=845, step=13, offset_axis="r"),
            axes=(ChoiceAxis("r", (2, 5, 6, 7, 8, 11)),),
        ),
        CongruenceFamily(
            id="treneer-5l3-mod5",
            statement=(
                "pbar(5 l^3 n) == 0 (mod 5) for primes l == 4 (mod 5) "
                "and n coprime to l"
            ),
            modulus=5,
            lhs=ArgMap(base=5, factors=(AxisFactor("l", power=3),)),
            axes=(PrimeAxis("l", mod=5, residues=(4,)),),
            side=SideCondition(kind="coprime", axis="l"),
        ),
        CongruenceFamily(
            id="lovejoy-osburn-3l3-mod3",
            statement=(
                "pbar(3 l^3 n) == 0 (mod 3) for odd primes l == 2 (mod 3) "
                "and n coprime to l"
            ),
            modulus=3,
            lhs=ArgMap(base=3, factors=(AxisFactor("l", power=3),)),
            axes=(PrimeAxis("l", mod=3, residues=(2,)),),
            side=SideCondition(kind="coprime", axis="l"),
        ),
        CongruenceFamily(
            id="pbar-5-5n2-scaled-mod5",
            statement="pbar(5 (5n +/- 2)) == 3 pbar(5^(2i+3) (5n +/- 2)) (mod 5)",
            modulus=5,
            lhs=ArgMap(base=5, step=5, offset_axis="r"),
            relation=Relation(
                kind="scaled",
                rhs=ArgMap(
                    base=125, step=5, offset_axis="r", factors=(AxisFactor("i", base=25),)
                ),
                scalar=3,
            ),
            axes=(PowerAxis("i"), ChoiceAxis("r", (2, 3))),
        ),
        CongruenceFamily(
            id="pbar-5n-hecke-split-mod5",
            statement="pbar(5n) == pbar(125n) + legendre(n, 5) pbar(5n) (mod 5)",
            modulus=5,
            lhs=ArgMap(step=5),
            relation=Relation(kind="legendre-split", rhs=ArgMap(step=125), prime=5),
        ),
    ]
    return fams


def planted_false_family() -> CongruenceFamily:
    """Deliberately false control: pbar(5n) == 0 (mod 5) fails at n = 1."""
    return CongruenceFamily(
        id="planted-false",
        statement="pbar(5n) == 0 (mod 5) [false control]",
        modulus=5,
        lhs=ArgMap(step=5),
        n_start=1,
    )


def family_by_id(fid: str) -> CongruenceFamily:
    if fid == "planted-false":
        return planted_false_family()
    for fam in registry():
        if fam.id == fid:
            return fam
    valid = ", ".join([f.id for f in registry()] + ["planted-false"])
    raise KeyError(f"unknown family id {fid!r}; valid ids: {valid}")


# -- dissection chain --------------------------------------------------------


def verify_dissection_chain(
    order: int, table: CoeffTable | None = None
) -> list[IdentityCheck]:
    """Check the two-level mod-5 dissection of pbar(5n) against theta sides.

    Nine identities: pbar(5n) == phi(-q)^3 (mod 5) as series; the four
    progressions pbar(20n + 5i) against (phi^3, -phi^2 psi2, 2 phi psi2^2,
    -3 psi2^3); and the four progressions pbar(4(20n + 5i)) against
    (phi^3, +phi^2 psi2, 2 phi psi2^2, +3 psi2^3), where psi2 = psi(q^2).
    Needs pbar values through argument 80 * order - 1.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    need = 80 * order
    if table is None:
        table = overpartition_table(mod_ring(5), need, Method.THETA_INVERSION)
    reader = _table_residue_reader(table, 5)
    if table.length < need:
        raise ValueError(
            f"chain at order {order} needs pbar through argument {need - 1}; "
            f"table has length {table.length}"
        )
    ring = mod_ring(5)
    idx5 = np.arange(16 * order, dtype=np.int64) * 5
    p5 = Series(ring, reader(idx5))  # pbar(5n) for n < 16 * order

    checks = [
        compare(
            "pbar(5n) == phi(-q)^3 (mod 5)",
            p5,
            theta_series(ThetaKind.PHI_MINUS, ring, 16 * order) ** 3,
        )
    ]

    t1 = 4 * order
    phi = theta_series(ThetaKind.PHI_PLUS, ring, t1)
    psi2 = theta_series(ThetaKind.PSI, ring, t1).substitute_power(2)
    phi2 = phi * phi
    psi2sq = psi2 * psi2
    base = [phi2 * phi, phi2 * psi2, phi * psi2sq, psi2sq * psi2]
    side_names = ["phi^3", "phi^2 psi(q^2)", "phi psi(q^2)^2", "psi(q^2)^3"]

    first_signs = (1, -1, 2, -3)
    second_signs = (1, 1, 2, 3)
    for i in range(4):
        checks.append(
            compare(
                f"pbar(20n + {5 * i}) == {first_signs[i]} {side_names[i]} (mod 5)",
                p5.extract_progression(4, i),
                base[i].scalar_mul(first_signs[i]),
            )
        )
    p20 = p5.extract_progression(4, 0)
    for i in range(4):
        checks.append(
            compare(
                f"pbar(80n + {20 * i}) == {second_signs[i]} {side_names[i]} (mod 5)",
                p20.extract_progression(4, i),
                base[i].scalar_mul(second_signs[i]),
            )
        )
    return checks


# -- density -----------------------------------------------------------------


def density_report(
    modulus: int, limit: int, table: CoeffTable | None = None
) -> float:
    """Fraction of 1 <= n <= limit with pbar(n) == 0 (mod modulus)."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if table is None:
        table = overpartition_table(mod_ring(modulus), limit + 1, Method.THETA_INVERSION)
    if table.length < limit + 1:
        raise ValueError(
            f"limit {limit} requires table length >= {limit + 1}, "
            f"table has {table.length}"
        )
    read = _table_residue_reader(table, modulus)
    args = np.arange(1, limit + 1, dtype=np.int64)
    residues = read(args)
    return float(np.count_nonzero(residues == 0) / limit)
