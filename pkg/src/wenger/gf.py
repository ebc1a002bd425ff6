"""Exact arithmetic in GF(p^e).

Elements are polynomials over GF(p) of degree < e reduced modulo a fixed monic
irreducible ``modulus``.  Coefficient lists are constant-term first, and every
element has a canonical integer ``sum(c[i] * p**i)`` in ``range(q)``; that
integer doubles as the digit used for vertex indexing elsewhere in the package.

Scalar operations work on :class:`FieldElement`; the lookup tables on
:class:`FieldSpec` (``add_table``, ``mul_table``, ...) are what the vectorized
graph and census code consume.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

MAX_EXTENSION_DEGREE = 6


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise :class:`FieldError` otherwise."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, e


# -- polynomials over GF(p), coefficient lists constant term first ----------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` divided by ``b`` over GF(p); ``b`` must be nonzero."""
    r = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        coef = r[-1] * inv_lead % p
        shift = len(r) - 1 - db
        for i, c in enumerate(b):
            r[shift + i] = (r[shift + i] - coef * c) % p
        _trim(r)
    return r


def _monic_polys(p: int, degree: int) -> Iterator[list[int]]:
    # lex order on the canonical integer of the non-leading coefficients
    for code in range(p**degree):
        coeffs = []
        for _ in range(degree):
            code, c = divmod(code, p)
            coeffs.append(c)
        yield coeffs + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim([c % p for c in poly])
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for divisor in _monic_polys(p, d):
            if not poly_mod(poly, divisor, p):
                return False
    return True


def find_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``e`` over GF(p).

    >>> find_irreducible(2, 2)
    (1, 1, 1)
    >>> find_irreducible(3, 2)
    (1, 0, 1)
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if not 1 <= e <= MAX_EXTENSION_DEGREE:
        raise FieldError(f"extension degree must be in 1..{MAX_EXTENSION_DEGREE}, got {e}")
    for cand in _monic_polys(p, e):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("unreachable: irreducibles exist in every degree")


def irreducible_polys(p: int, e: int) -> Iterator[tuple[int, ...]]:
    """All monic irreducibles of degree ``e`` in the same order ``find_irreducible`` scans."""
    for cand in _monic_polys(p, e):
        if is_irreducible(cand, p):
            yield tuple(cand)


# -- the field --------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^e) realised as GF(p)[X] / (modulus)."""

    p: int
    e: int
    modulus: tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.e < 1:
            raise FieldError(f"extension degree must be >= 1, got {self.e}")
        mod = tuple(int(c) for c in self.modulus)
        if len(mod) != self.e + 1 or mod[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {self.e}: {mod}")
        if any(not 0 <= c < self.p for c in mod):
            raise FieldError(f"modulus coefficients must lie in 0..{self.p - 1}")
        if not is_irreducible(mod, self.p):
            raise FieldError(f"modulus {mod} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "q", self.p**self.e)

    @classmethod
    def create(cls, q: int, modulus: Sequence[int] | None = None) -> "FieldSpec":
        p, e = factor_prime_power(q)
        if modulus is None:
            modulus = find_irreducible(p, e)
        return cls(p, e, tuple(modulus))

    def __repr__(self):
        return f"FieldSpec(q={self.q}, p={self.p}, e={self.e}, modulus={list(self.modulus)})"

    def to_dict(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    # canonical-integer arithmetic; these back both FieldElement and the tables

    def digits(self, n: int) -> list[int]:
        out = []
        for _ in range(self.e):
            n, c = divmod(n, self.p)
            out.append(c)
        return out

    def from_digits(self, digits: Sequence[int]) -> int:
        n = 0
        for c in reversed(digits):
            n = n * self.p + c
        return n

    def add_int(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return self.from_digits([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg_int(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        return self.from_digits([-x % self.p for x in self.digits(a)])

    def mul_int(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        rem = poly_mod(prod, self.modulus, self.p)
        return self.from_digits(rem + [0] * (self.e - len(rem)))

    def pow_int(self, a: int, n: int) -> int:
        if n < 0:
            raise ValueError("negative exponent; use inv")
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul_int(result, base)
            base = self.mul_int(base, base)
            n >>= 1
        return result

    def inv_int(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return self.pow_int(a, self.q - 2)

    def trace_int(self, a: int) -> int:
        total, x = 0, a
        for _ in range(self.e):
            total = self.add_int(total, x)
            x = self.pow_int(x, self.p)
        # the trace lands in the prime subfield, whose canonical ints are 0..p-1
        assert total < self.p, "trace left the prime subfield"
        return total

    # lookup tables, int64 arrays indexed by canonical integers

    @cached_property
    def add_table(self) -> np.ndarray:
        if self.e == 1:
            r = np.arange(self.q)
            return (r[:, None] + r[None, :]) % self.p
        d = np.array([self.digits(a) for a in range(self.q)])
        s = (d[:, None, :] + d[None, :, :]) % self.p
        return s @ (self.p ** np.arange(self.e))

    @cached_property
    def mul_table(self) -> np.ndarray:
        return np.array(
            [[self.mul_int(a, b) for b in range(self.q)] for a in range(self.q)], dtype=np.int64
        )

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg_int(a) for a in range(self.q)], dtype=np.int64)

    @cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self.neg_table]

    @cached_property
    def trace_table(self) -> np.ndarray:
        return np.array([self.trace_int(a) for a in range(self.q)], dtype=np.int64)

    def element(self, value: int | Sequence[int]) -> "FieldElement":
        if isinstance(value, (int, np.integer)):
            if not 0 <= value < self.q:
                raise FieldError(f"{value} is not a canonical element of GF({self.q})")
            return FieldElement(self, tuple(self.digits(int(value))))
        return FieldElement(self, tuple(int(c) % self.p for c in value))

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec = field(repr=False)
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.spec.e:
            raise FieldError(f"expected {self.spec.e} coefficients, got {len(self.coeffs)}")
        if any(not 0 <= c < self.spec.p for c in self.coeffs):
            raise FieldError(f"coefficients must be reduced mod {self.spec.p}")

    @property
    def value(self) -> int:
        return self.spec.from_digits(self.coeffs)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.q, self.coeffs))

    def __repr__(self):
        return f"GF({self.spec.q})({self.value})"

    def _check(self, other: "FieldElement"):
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldError(f"field mismatch: {self.spec} vs {other.spec}")

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        return mul(self, other)

    def __pow__(self, n: int):
        return power(self, n)

    def __truediv__(self, other):
        return mul(self, inv(other))

    def __bool__(self):
        return any(self.coeffs)


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return a.spec.element(a.spec.add_int(a.value, b.value))


def neg(a: FieldElement) -> FieldElement:
    return a.spec.element(a.spec.neg_int(a.value))


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return add(a, neg(b))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return a.spec.element(a.spec.mul_int(a.value, b.value))


def inv(a: FieldElement) -> FieldElement:
    return a.spec.element(a.spec.inv_int(a.value))


def power(a: FieldElement, n: int) -> FieldElement:
    """``a ** n`` by square-and-multiply; ``n`` must be non-negative."""
    return a.spec.element(a.spec.pow_int(a.value, n))


def trace(a: FieldElement) -> FieldElement:
    """Absolute trace ``a + a^p + ... + a^(p^(e-1))``, an element of the prime subfield."""
    return a.spec.element(a.spec.trace_int(a.value))


def elements(spec: FieldSpec) -> list[FieldElement]:
    """All ``q`` elements in canonical-integer order (0 first, then 1)."""
    return [spec.element(v) for v in range(spec.q)]


def multiplicative_order(a: FieldElement) -> int:
    if not a:
        raise ZeroDivisionError("zero has no multiplicative order")
    n, x = 1, a.value
    while x != 1:
        x = a.spec.mul_int(x, a.value)
        n += 1
    return n
