"""Exact integer arithmetic in Z[zeta_p] and the character sums built on it.

A value is a coefficient vector over the reduced basis {1, z, ..., z^(p-2)}
with z^(p-1) rewritten via 1 + z + ... + z^(p-1) = 0, so equality of values
is equality of vectors.  Coefficients stay within Python ints (the sums here
have at most p^s <= 2187 unit terms, so even 64-bit would be ample); no
floating point appears anywhere.

Every closed-form evaluator in this module recomputes its value by direct
summation and raises OracleMismatch on disagreement, so a returned value is
always a verified one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BadResidue, OracleMismatch
from .gf import legendre, pstar, upsilon
from .quadform import QuadForm
from .subspace import Subspace


@dataclass(frozen=True)
class CycInt:
    """An element of Z[zeta_p] in canonical reduced form."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        assert len(self.coeffs) == self.p - 1

    @classmethod
    def from_int(cls, p: int, n: int) -> "CycInt":
        return cls(p, (n,) + (0,) * (p - 2))

    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls.from_int(p, 0)

    @classmethod
    def from_exponent_counts(cls, p: int, counts) -> "CycInt":
        """sum_k counts[k] * zeta^k from a length-p (or shorter) count vector."""
        raw = [0] * p
        for k, c in enumerate(counts):
            raw[k % p] += c
        top = raw[p - 1]
        return cls(p, tuple(raw[k] - top for k in range(p - 1)))

    def _require_same(self, other: "CycInt"):
        if self.p != other.p:
            raise ValueError("mixed cyclotomic orders")

    def __add__(self, other: "CycInt") -> "CycInt":
        self._require_same(other)
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycInt") -> "CycInt":
        self._require_same(other)
        return CycInt(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycInt":
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, tuple(a * other for a in self.coeffs))
        self._require_same(other)
        raw = [0] * self.p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        raw[(i + j) % self.p] += a * b
        return CycInt.from_exponent_counts(self.p, raw)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycInt":
        result = CycInt.from_int(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_rational_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def as_integer(self) -> int:
        if not self.is_rational_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def to_json(self):
        return {"p": self.p, "coeffs": list(self.coeffs)}


def zeta_pow(p: int, k: int) -> CycInt:
    """zeta^k in canonical form (exponent taken mod p)."""
    raw = [0] * p
    raw[k % p] = 1
    return CycInt.from_exponent_counts(p, raw)


def galois(z: int, xi: CycInt) -> CycInt:
    """The automorphism sigma_z: zeta -> zeta^z (z coprime to p)."""
    if z % xi.p == 0:
        raise BadResidue(f"{z} is not invertible mod {xi.p}")
    raw = [0] * xi.p
    for k, c in enumerate(xi.coeffs):
        raw[k * z % xi.p] += c
    return CycInt.from_exponent_counts(xi.p, raw)


@lru_cache(maxsize=None)
def gauss_sqrt(p: int) -> CycInt:
    """g = sum_x zeta^(x^2), satisfying g*g = pstar(p) exactly."""
    raw = [0] * p
    for x in range(p):
        raw[x * x % p] += 1
    g = CycInt.from_exponent_counts(p, raw)
    assert (g * g).as_integer() == pstar(p)
    return g


def pstar_half_power(p: int, m: int) -> CycInt:
    """(pstar)^(m/2) as an exact element, m >= 0 (odd m uses the Gauss element)."""
    if m % 2 == 0:
        return CycInt.from_int(p, pstar(p)**(m // 2))
    return pstar(p)**((m - 1) // 2) * gauss_sqrt(p)


def _pstar_frac(p: int, k: int) -> Fraction:
    """(pstar)^k as an exact rational, k of either sign."""
    return Fraction(pstar(p))**k


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise OracleMismatch(f"expected an integer, got {x}")
    return x.numerator


def sigma_orbit_sum(p: int, r: int, z: int) -> int:
    """sum over y in F_p^* of sigma_y((pstar)^(r/2) * zeta^z), exactly.

    The Galois-orbit sum is computed term by term in Z[zeta_p] and checked
    against its closed form, which is always a rational integer:
    eta(-z) p^r (pstar)^(-(r-1)/2) for odd r, v(z) p^r (pstar)^(-r/2) for even.
    """
    xi = pstar_half_power(p, r) * zeta_pow(p, z)
    total = CycInt.zero(p)
    for y in range(1, p):
        total = total + galois(y, xi)
    if r % 2 == 1:
        closed = _as_int(legendre(-z, p) * Fraction(p)**r * _pstar_frac(p, -(r - 1) // 2))
    else:
        closed = _as_int(upsilon(z, p) * Fraction(p)**r * _pstar_frac(p, -(r // 2)))
    if total != CycInt.from_int(p, closed):
        raise OracleMismatch(
            f"orbit sum p={p} r={r} z={z}: direct {total} != closed {closed}")
    return closed


def weil_sum(f: QuadForm, b) -> CycInt:
    """sum over x in F_q of zeta^(f(x) - Tr(b x)), by both routes.

    Direct exact summation over the whole field is compared with the
    closed form 0 (b outside S_f) or sign(f) (pstar)^(R/2) p^(s-R) zeta^(-f(x_b)).
    """
    field = f.field
    p = f.p
    b = field.element(b)
    counts = [0] * p
    for x in field.elements():
        e = (f.evaluate(x) - field.trace(field.mul(b, x))) % p
        counts[e] += 1
    direct = CycInt.from_exponent_counts(p, counts)
    xb = f.solve_xb(b)
    if xb is None:
        closed = CycInt.zero(p)
    else:
        closed = (f.sign * p**(f.s - f.rank)) * pstar_half_power(p, f.rank) \
            * zeta_pow(p, -f.evaluate(xb))
    if direct != closed:
        raise OracleMismatch(f"Weil sum mismatch at b={b}: {direct} != {closed}")
    return direct


def subspace_char_sum(f: QuadForm, H: Subspace) -> CycInt:
    """sum over x in H of zeta^(f(x)): direct versus sign*(pstar)^(R_H/2)*p^(r-R_H)."""
    p = f.p
    counts = [0] * p
    for x in H.elements():
        counts[f.evaluate(x)] += 1
    direct = CycInt.from_exponent_counts(p, counts)
    res = f.restrict(H)
    closed = (res.sign * p**(H.dim - res.rank)) * pstar_half_power(p, res.rank)
    if direct != closed:
        raise OracleMismatch(
            f"subspace character sum mismatch on {H.basis}: {direct} != {closed}")
    return direct


def weil_sum_check_all(f: QuadForm) -> int:
    """Check the Weil-sum identity for every b in F_q; returns the number checked.

    Same dual-route check as weil_sum, but the direct exponent histograms for
    all b are produced in one vectorized pass so that exhaustive form grids
    stay fast.  The closed-form side still goes through solve_xb per b.
    """
    import numpy as np

    field = f.field
    p, q = f.p, field.order
    elems = list(field.elements())
    emat = np.array(elems, dtype=np.int64)
    tg = np.array(field.trace_gram, dtype=np.int64)
    gram = np.array(f.gram, dtype=np.int64)
    fvals = ((emat @ gram) * emat).sum(axis=1) % p
    pairings = (emat @ tg @ emat.T) % p  # pairings[i, j] = Tr(b_i * x_j)
    exps = (fvals[None, :] - pairings) % p
    counts = np.zeros((q, p), dtype=np.int64)
    for e in range(p):
        counts[:, e] = (exps == e).sum(axis=1)
    for i, b in enumerate(elems):
        direct = CycInt.from_exponent_counts(p, [int(c) for c in counts[i]])
        xb = f.solve_xb(b)
        if xb is None:
            closed = CycInt.zero(p)
        else:
            closed = (f.sign * p**(f.s - f.rank)) * pstar_half_power(p, f.rank) \
                * zeta_pow(p, -f.evaluate(xb))
        if direct != closed:
            raise OracleMismatch(f"Weil sum mismatch at b={b}")
    return q


def check_form_on_subspace(f: QuadForm, H: Subspace) -> None:
    """Exhaustive oracle for one subspace: level-set counts and character sum.

    Counts |H ∩ D_beta| directly for every beta, compares with
    level_set_count, and folds the same histogram into the character sum,
    comparing with subspace_char_sum's closed form.
    """
    p = f.p
    counts = [0] * p
    for x in H.elements():
        counts[f.evaluate(x)] += 1
    for beta in range(p):
        if H.dim > 0 and counts[beta] != level_set_count(f, H, beta):
            raise OracleMismatch(
                f"level-set count mismatch at beta={beta} on {H.basis}")
    subspace_char_sum(f, H)  # raises on mismatch


def level_set_count(f: QuadForm, H: Subspace, beta: int) -> int:
    """|{x in H : f(x) = beta}| by the rank/sign closed form (exact integers)."""
    p = f.p
    beta %= p
    if H.dim == 0:
        return 1 if beta == 0 else 0
    res = f.restrict(H)
    lead = Fraction(p)**(H.dim - 1)
    if res.rank % 2 == 0:
        val = lead * (1 + upsilon(beta, p) * res.sign * _pstar_frac(p, -(res.rank // 2)))
    else:
        val = lead * (1 + legendre(beta, p) * res.sign
                      * _pstar_frac(p, -((res.rank - 1) // 2)))
    return _as_int(val)
