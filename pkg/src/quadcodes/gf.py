"""Arithmetic in F_{p^s} over the polynomial basis of a monic irreducible modulus.

Field elements are coefficient tuples (c_0, ..., c_{s-1}), constant term
first, entries reduced to [0, p).  Under the polynomial basis the element
*is* its own coordinate vector, so coords/uncoords are length-checked
identities.  All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import DimensionMismatch, EvenCharacteristic, NonPrime, ReducibleModulus

Elem = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def legendre(a: int, p: int) -> int:
    """Quadratic character of F_p by Euler's criterion, extended by 0 at 0."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def upsilon(z: int, p: int) -> int:
    """p - 1 at zero and -1 on every nonzero residue."""
    return p - 1 if z % p == 0 else -1


def pstar(p: int) -> int:
    """(-1)^((p-1)/2) * p."""
    return p if p % 4 == 1 else -p


# -- dense little-endian polynomial helpers over F_p --------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    # m monic
    a = list(a)
    d = len(m) - 1
    while len(a) > d:
        c = a[-1]
        if c:
            shift = len(a) - 1 - d
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return _trim(a)


def _is_irreducible(m: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    deg = len(m) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    if m[0] == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            if not _poly_mod(m, g, p):
                return False
    return True


def _default_modulus(p: int, s: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree s (on (c_0..c_{s-1}))."""
    for low in itertools.product(range(p), repeat=s):
        m = list(low) + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class ExtField:
    """F_{p^s} with the polynomial basis {1, alpha, ..., alpha^(s-1)}."""

    def __init__(self, p: int, s: int, modulus: tuple[int, ...] | None = None):
        if p == 2:
            raise EvenCharacteristic(f"p = {p}: odd characteristic required")
        if not is_prime(p):
            raise NonPrime(f"p = {p} is not prime")
        if s < 1:
            raise DimensionMismatch(f"extension degree must be >= 1, got {s}")
        if modulus is None:
            modulus = _default_modulus(p, s)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != s + 1 or modulus[-1] != 1:
                raise DimensionMismatch(
                    f"modulus must be monic of degree {s}, got {modulus}")
            if not _is_irreducible(list(modulus), p):
                raise ReducibleModulus(f"{modulus} is reducible over F_{p}")
        self.p = p
        self.s = s
        self.modulus = modulus
        self.order = p**s
        # alpha^k reduced, for k up to 2s-2 (enough to reduce any product)
        red = []
        cur = [1]
        for _ in range(2 * s - 1):
            red.append(tuple(cur + [0] * (s - len(cur))))
            cur = _poly_mod(_poly_mul(cur, [0, 1], p), list(modulus), p)
        self._alpha_pow = red
        self.zero: Elem = (0,) * s
        self.one: Elem = tuple([1] + [0] * (s - 1))
        self._trace_vec = tuple(self._trace_slow(v) for v in self._basis_vectors())
        self.trace_gram = tuple(
            tuple(self.trace(self.mul(u, v)) for v in self._basis_vectors())
            for u in self._basis_vectors())

    def _basis_vectors(self) -> list[Elem]:
        return [tuple(1 if j == i else 0 for j in range(self.s))
                for i in range(self.s)]

    # -- construction ---------------------------------------------------------

    def element(self, coeffs) -> Elem:
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) != self.s:
            raise DimensionMismatch(
                f"expected {self.s} coefficients, got {len(coeffs)}")
        return coeffs

    def scalar(self, c: int) -> Elem:
        return tuple([c % self.p] + [0] * (self.s - 1))

    def elements(self):
        """All p^s elements in lexicographic coefficient order."""
        for t in itertools.product(range(self.p), repeat=self.s):
            yield t

    # -- arithmetic -----------------------------------------------------------

    def add(self, x: Elem, y: Elem) -> Elem:
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def sub(self, x: Elem, y: Elem) -> Elem:
        return tuple((a - b) % self.p for a, b in zip(x, y))

    def neg(self, x: Elem) -> Elem:
        return tuple(-a % self.p for a in x)

    def smul(self, c: int, x: Elem) -> Elem:
        return tuple(c * a % self.p for a in x)

    def mul(self, x: Elem, y: Elem) -> Elem:
        p, s = self.p, self.s
        acc = [0] * s
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                c = a * b % p
                for k, rk in enumerate(self._alpha_pow[i + j]):
                    acc[k] = (acc[k] + c * rk) % p
        return tuple(acc)

    def pow(self, x: Elem, e: int) -> Elem:
        result = self.one
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, x: Elem) -> Elem:
        return self.pow(x, self.p)

    def _trace_slow(self, x: Elem) -> int:
        acc = self.zero
        cur = x
        for _ in range(self.s):
            acc = self.add(acc, cur)
            cur = self.frobenius(cur)
        assert all(c == 0 for c in acc[1:]), "trace left the prime field"
        return acc[0]

    def trace(self, x: Elem) -> int:
        """Absolute trace to F_p, as an integer in [0, p)."""
        return sum(c * t for c, t in zip(x, self._trace_vec)) % self.p

    # -- coordinate isomorphism (identity in the polynomial basis) -------------

    def coords(self, x: Elem) -> Elem:
        if len(x) != self.s:
            raise DimensionMismatch(f"expected length {self.s}, got {len(x)}")
        return tuple(c % self.p for c in x)

    def uncoords(self, v) -> Elem:
        return self.element(v)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExtField)
                and (self.p, self.s, self.modulus) == (other.p, other.s, other.modulus))

    def __hash__(self) -> int:
        return hash((self.p, self.s, self.modulus))

    def __repr__(self) -> str:
        return f"ExtField(p={self.p}, s={self.s}, modulus={list(self.modulus)})"


@lru_cache(maxsize=None)
def _cached_field(p: int, s: int, modulus: tuple[int, ...] | None) -> ExtField:
    return ExtField(p, s, modulus)


def make_field(p: int, s: int, modulus=None) -> ExtField:
    """Construct (and cache) F_{p^s}; picks the least irreducible modulus if omitted."""
    return _cached_field(p, s, tuple(modulus) if modulus is not None else None)
