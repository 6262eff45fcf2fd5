"""
Finite Field Arithmetic for mubgeo
Builds fully materialized lookup tables for GF(p^k)
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import (DivisionByZero, IndexOutOfRange, MubGeoError, NonPrimeCharacteristic,
                    OrderNotPrimePower, OrderTooLarge)

logger = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 2 ** 16

# Triple loops (associativity, distributivity) are only run up to this order
EXHAUSTIVE_CHECK_LIMIT = 64

# Element-order and trace-linearity sweeps are O(N^2)
QUADRATIC_CHECK_LIMIT = 4096


def is_prime(p: int) -> bool:
    """Trial-division primality test"""
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_power(n: int) -> Optional[Tuple[int, int]]:
    """
    Decompose n as p^k

    Args:
        n: Candidate order

    Returns:
        (p, k) if n is a prime power, otherwise None
    """
    if n < 2:
        return None

    p = 2
    while p * p <= n and n % p != 0:
        p += 1
    if n % p != 0:
        p = n

    k = 0
    rest = n
    while rest % p == 0:
        rest //= p
        k += 1

    return (p, k) if rest == 1 else None


def _poly_rem(num: Sequence[int], den: Sequence[int], p: int) -> List[int]:
    """Remainder of num / den over GF(p); coefficients low degree first, den monic-able"""
    rem = list(num)
    inv_lead = pow(den[-1], -1, p)
    deg = len(den) - 1

    while True:
        while len(rem) > 1 and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < deg:
            return rem
        factor = rem[-1] * inv_lead % p
        shift = len(rem) - 1 - deg
        for i, c in enumerate(den):
            rem[shift + i] = (rem[shift + i] - factor * c) % p


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """
    Irreducibility by trial division with every monic polynomial of degree <= k/2

    Args:
        modulus: Monic polynomial coefficients, low degree first
        p: Prime characteristic

    Returns:
        True if the polynomial has no non-trivial factor over GF(p)
    """
    k = len(modulus) - 1
    if k <= 1:
        return True

    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not any(_poly_rem(modulus, divisor, p)):
                return False
    return True


def find_modulus(p: int, k: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree k (low degree compared first)"""
    for tail in itertools.product(range(p), repeat=k):
        candidate = tuple(tail) + (1,)
        if is_irreducible(candidate, p):
            return candidate
    raise MubGeoError(f"No irreducible polynomial of degree {k} over GF({p})")


def _table_dtype(order: int):
    if order <= 2 ** 8:
        return np.uint8
    if order <= 2 ** 16:
        return np.uint16
    return np.int64


def _build_tables(p: int, k: int, modulus: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    """Addition and multiplication tables for GF(p)[x]/(modulus), elements encoded in base p"""
    order = p ** k
    dtype = _table_dtype(order)
    weights = p ** np.arange(k, dtype=np.int64)
    elements = np.arange(order, dtype=np.int64)
    digits = (elements[:, None] // weights[None, :]) % p

    add_table = np.empty((order, order), dtype=dtype)
    for a in range(order):
        add_table[a] = ((digits[a][None, :] + digits) % p) @ weights

    # powers[i] holds the digit vectors of a * x^i for every element a
    low = np.array(modulus[:k], dtype=np.int64)
    powers = np.empty((k, order, k), dtype=np.int64)
    powers[0] = digits
    for i in range(1, k):
        prev = powers[i - 1]
        shifted = np.zeros_like(prev)
        shifted[:, 1:] = prev[:, :-1]
        powers[i] = (shifted - prev[:, k - 1][:, None] * low[None, :]) % p

    mul_table = np.empty((order, order), dtype=dtype)
    for b in range(order):
        combined = np.tensordot(digits[b], powers, axes=(0, 0)) % p
        mul_table[:, b] = combined @ weights

    return add_table, mul_table


@dataclass(frozen=True, eq=False)
class FieldTable:
    """Complete arithmetic tables for GF(p^k); immutable after construction"""

    p: int
    k: int
    order: int
    modulus: Tuple[int, ...]
    add_table: np.ndarray
    mul_table: np.ndarray
    neg_table: np.ndarray
    inv_table: np.ndarray
    trace_table: np.ndarray

    @classmethod
    def from_tables(cls, p: int, k: int, modulus: Sequence[int],
                    add_table: np.ndarray, mul_table: np.ndarray) -> "FieldTable":
        """
        Derive negation, inverse and trace tables from add/mul tables

        Args:
            p: Prime characteristic
            k: Extension degree
            modulus: Defining polynomial, low degree first
            add_table: N x N addition table
            mul_table: N x N multiplication table

        Returns:
            FieldTable with every table read-only
        """
        order = p ** k
        add_table = np.asarray(add_table, dtype=_table_dtype(order))
        mul_table = np.asarray(mul_table, dtype=_table_dtype(order))
        if add_table.shape != (order, order) or mul_table.shape != (order, order):
            raise MubGeoError(f"Tables for GF({p}^{k}) must be {order}x{order}")

        elements = np.arange(order, dtype=np.int64)
        neg_table = np.argmax(add_table == 0, axis=1).astype(np.int64)

        inv_table = np.full(order, -1, dtype=np.int64)
        if order > 1:
            inv_table[1:] = np.argmax(mul_table[1:] == 1, axis=1)

        frobenius = np.ones(order, dtype=np.int64)
        for _ in range(p):
            frobenius = mul_table[frobenius, elements].astype(np.int64)

        trace_table = elements.copy()
        conjugate = elements.copy()
        for _ in range(1, k):
            conjugate = frobenius[conjugate]
            trace_table = add_table[trace_table, conjugate].astype(np.int64)

        if np.any(trace_table >= p):
            raise MubGeoError(f"Trace for GF({p}^{k}) left the prime subfield; tables are inconsistent")

        for table in (add_table, mul_table, neg_table, inv_table, trace_table):
            table.flags.writeable = False

        return cls(
            p=p,
            k=k,
            order=order,
            modulus=tuple(int(c) for c in modulus),
            add_table=add_table,
            mul_table=mul_table,
            neg_table=neg_table,
            inv_table=inv_table,
            trace_table=trace_table,
        )

    @property
    def elements(self) -> range:
        return range(self.order)

    def _check(self, *values: int):
        for a in values:
            if not 0 <= a < self.order:
                raise IndexOutOfRange(f"Element {a} outside GF({self.order})")

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.add_table[a, b])

    def neg(self, a: int) -> int:
        self._check(a)
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.order})")
        return int(self.inv_table[a])

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        for _ in range(e):
            result = int(self.mul_table[result, a])
        return result

    def trace(self, a: int) -> int:
        self._check(a)
        return int(self.trace_table[a])

    def primitive_element(self) -> int:
        """Smallest element generating the multiplicative group"""
        for g in range(1, self.order):
            x, steps = g, 1
            while x != 1:
                x = int(self.mul_table[x, g])
                steps += 1
            if steps == self.order - 1:
                return g
        raise MubGeoError(f"GF({self.order}) has no primitive element; tables are inconsistent")

    def to_dict(self) -> Dict[str, Any]:
        """JSON dump used for cross-implementation comparison and the table cache"""
        return {
            "p": self.p,
            "k": self.k,
            "modulus": list(self.modulus),
            "add": self.add_table.tolist(),
            "mul": self.mul_table.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FieldTable":
        return cls.from_tables(data["p"], data["k"], data["modulus"],
                               np.array(data["add"]), np.array(data["mul"]))

    def __repr__(self) -> str:
        return f"FieldTable(GF({self.p}^{self.k}), modulus={list(self.modulus)})"


def field_create(p: int, k: int = 1, max_order: int = DEFAULT_MAX_ORDER) -> FieldTable:
    """
    Build GF(p^k) from the lexicographically smallest monic irreducible modulus

    Args:
        p: Prime characteristic
        k: Extension degree (>= 1)
        max_order: Largest permitted p^k

    Returns:
        FieldTable
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"Characteristic {p} is not prime")
    if k < 1:
        raise MubGeoError(f"Extension degree must be >= 1, got {k}")
    if p ** k > max_order:
        raise OrderTooLarge(f"GF({p}^{k}) has order {p ** k} > cap {max_order}")

    modulus = find_modulus(p, k)
    add_table, mul_table = _build_tables(p, k, modulus)
    field = FieldTable.from_tables(p, k, modulus, add_table, mul_table)
    logger.info(f"Built GF({p}^{k}) with modulus {list(modulus)}")
    return field


def field_for_order(n: int, max_order: int = DEFAULT_MAX_ORDER,
                    build: Optional[Callable[..., FieldTable]] = None) -> FieldTable:
    """
    Field of order n; OrderNotPrimePower when n is not p^k

    build(p, k, max_order=...) replaces field_create, e.g. a cache lookup.
    """
    decomposition = prime_power(n)
    if decomposition is None:
        raise OrderNotPrimePower(f"{n} is not a prime power; no field of that order exists")
    return (build or field_create)(*decomposition, max_order=max_order)


def field_add(field: FieldTable, a: int, b: int) -> int:
    return field.add(a, b)


def field_neg(field: FieldTable, a: int) -> int:
    return field.neg(a)


def field_sub(field: FieldTable, a: int, b: int) -> int:
    return field.sub(a, b)


def field_mul(field: FieldTable, a: int, b: int) -> int:
    return field.mul(a, b)


def field_inv(field: FieldTable, a: int) -> int:
    return field.inv(a)


def field_pow(field: FieldTable, a: int, e: int) -> int:
    return field.pow(a, e)


def field_trace(field: FieldTable, a: int) -> int:
    """Absolute trace a + a^p + ... + a^(p^(k-1)), a value in the prime subfield"""
    return field.trace(a)


def verify_field(field: FieldTable) -> Dict[str, Any]:
    """
    Check the field axioms against the tables

    Associativity and distributivity are exhaustive up to EXHAUSTIVE_CHECK_LIMIT,
    element orders and trace linearity up to QUADRATIC_CHECK_LIMIT.

    Args:
        field: FieldTable to check

    Returns:
        Dictionary with per-check booleans and an overall 'passed' flag
    """
    n = field.order
    e = np.arange(n, dtype=np.int64)
    add = field.add_table.astype(np.int64)
    mul = field.mul_table.astype(np.int64)
    checks: Dict[str, bool] = {}

    checks["add_commutative"] = np.array_equal(add, add.T)
    checks["add_identity"] = np.array_equal(add[0], e)
    checks["add_inverses"] = bool(np.all((add == 0).sum(axis=1) == 1))
    checks["add_latin"] = all(len(set(row)) == n for row in add.tolist())
    checks["mul_commutative"] = np.array_equal(mul, mul.T)
    checks["mul_identity"] = n > 1 and np.array_equal(mul[1], e)
    checks["mul_annihilator"] = bool(np.all(mul[0] == 0))
    checks["mul_inverses"] = bool(np.all(mul[e[1:], field.inv_table[1:]] == 1))

    exhaustive = n <= EXHAUSTIVE_CHECK_LIMIT
    if exhaustive:
        checks["add_associative"] = np.array_equal(
            add[add[:, :, None], e[None, None, :]], add[e[:, None, None], add[None, :, :]])
        checks["mul_associative"] = np.array_equal(
            mul[mul[:, :, None], e[None, None, :]], mul[e[:, None, None], mul[None, :, :]])
        checks["distributive"] = np.array_equal(
            mul[e[:, None, None], add[None, :, :]], add[mul[:, :, None], mul[:, None, :]])

    if n <= QUADRATIC_CHECK_LIMIT:
        units = e[1:]
        orders = np.zeros(n - 1, dtype=np.int64)
        current = units.copy()
        for t in range(1, n):
            orders[(current == 1) & (orders == 0)] = t
            current = mul[current, units]
        checks["multiplicative_group_cyclic"] = bool(np.any(orders == n - 1))

        trace = field.trace_table
        checks["trace_additive"] = np.array_equal(trace[add], (trace[:, None] + trace[None, :]) % field.p)
        checks["trace_homogeneous"] = all(
            np.array_equal(trace[mul[c]], (c * trace) % field.p) for c in range(field.p))

    fibres = np.bincount(field.trace_table, minlength=field.p)
    checks["trace_fibres"] = bool(np.all(fibres == field.p ** (field.k - 1)))
    checks["trace_nonzero"] = bool(np.any(field.trace_table != 0))

    checks = {name: bool(ok) for name, ok in checks.items()}
    return {
        "order": n,
        "exhaustive": exhaustive,
        "checks": checks,
        "passed": all(checks.values()),
    }
