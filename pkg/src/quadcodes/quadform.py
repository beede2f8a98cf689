"""Quadratic forms F_{p^s} -> F_p as symmetric Gram matrices over F_p.

Covers congruence diagonalization, rank/sign/radical, restriction to
subspaces, the solver for the shifted-center element x_b, and the
constructive isotropic and rank-one subspaces used by the hierarchy
theorems.  Everything is exact arithmetic on coordinate vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import DimensionMismatch, NotQuadratic, RankTooSmall
from .gf import ExtField, legendre
from .subspace import (Mat, Subspace, Vec, matmul, matrix_inverse, matvec,
                       identity, nullspace, solve_linear)


def _symmetric_diagonalize(gram: Mat, p: int) -> tuple[Mat, tuple[int, ...]]:
    """Congruence M A M^T = diag(lambda_1..lambda_R, 0..0), deterministic pivots."""
    s = len(gram)
    b = [list(row) for row in gram]
    m = [list(row) for row in identity(s)]

    def add_into(i, j, c):  # row/col i += c * row/col j, as a congruence
        b[i] = [(a + c * x) % p for a, x in zip(b[i], b[j])]
        for r in range(s):
            b[r][i] = (b[r][i] + c * b[r][j]) % p
        m[i] = [(a + c * x) % p for a, x in zip(m[i], m[j])]

    def swap(i, j):
        b[i], b[j] = b[j], b[i]
        for r in range(s):
            b[r][i], b[r][j] = b[r][j], b[r][i]
        m[i], m[j] = m[j], m[i]

    for k in range(s):
        pivot = next((i for i in range(k, s) if b[i][i] % p), None)
        if pivot is None:
            off = next(((i, j) for i in range(k, s) for j in range(i + 1, s)
                        if b[i][j] % p), None)
            if off is None:
                break  # remaining block is zero
            # char != 2: adding col/row j into i makes b[i][i] = 2*b[i][j] != 0
            add_into(off[0], off[1], 1)
            pivot = off[0]
        if pivot != k:
            swap(k, pivot)
        inv = pow(b[k][k], -1, p)
        for r in range(k + 1, s):
            if b[r][k] % p:
                add_into(r, k, -b[r][k] * inv % p)
    lambdas = tuple(b[i][i] % p for i in range(s) if b[i][i] % p)
    # permute nonzero diagonal entries to the front
    order = ([i for i in range(s) if b[i][i] % p]
             + [i for i in range(s) if not b[i][i] % p])
    mat = tuple(tuple(m[i]) for i in order)
    return mat, lambdas


@dataclass(frozen=True)
class RestrictedForm:
    """Rank and sign of a form restricted to a subspace of its coordinate space."""

    subspace: Subspace
    gram: Mat
    rank: int
    sign: int


class QuadForm:
    """f(x) = X A X^T with A symmetric over F_p; caches rank, sign, radical."""

    def __init__(self, field: ExtField, gram):
        s = field.s
        gram = tuple(tuple(c % field.p for c in row) for row in gram)
        if len(gram) != s or any(len(row) != s for row in gram):
            raise DimensionMismatch(f"Gram matrix must be {s}x{s}")
        if any(gram[i][j] != gram[j][i] for i in range(s) for j in range(s)):
            raise NotQuadratic("Gram matrix must be symmetric")
        self.field = field
        self.p = field.p
        self.s = s
        self.gram = gram
        diag_m, lambdas = _symmetric_diagonalize(gram, self.p)
        self._diag = (diag_m, lambdas)
        self.rank = len(lambdas)
        prod = 1
        for lam in lambdas:
            prod = prod * lam % self.p
        self.sign = legendre(prod, self.p) if self.rank else 1

    # -- constructors ----------------------------------------------------------

    @classmethod
    def from_gram(cls, field: ExtField, rows) -> "QuadForm":
        return cls(field, rows)

    @classmethod
    def from_trace_poly(cls, field: ExtField, coeffs) -> "QuadForm":
        """f(x) = sum_i Tr(a_i * x^(p^i + 1)) given the a_i as field elements."""
        coeffs = [field.element(a) for a in coeffs]
        if len(coeffs) > field.s:
            raise DimensionMismatch("at most s trace-polynomial coefficients")

        def f(x):
            total = 0
            for i, a in enumerate(coeffs):
                total += field.trace(field.mul(a, field.pow(x, field.p**i + 1)))
            return total % field.p

        return cls.from_function(field, f, check=False)

    @classmethod
    def from_function(cls, field: ExtField, func, check: bool = True) -> "QuadForm":
        """Gram matrix A[i][j] = (f(v_i+v_j) - f(v_i) - f(v_j)) / 2 on basis pairs.

        With check=True the whole evaluation table is verified against
        X A X^T (desk scale), rejecting non-quadratic tables.
        """
        p, s = field.p, field.s
        half = pow(2, -1, p)
        basis = [tuple(1 if j == i else 0 for j in range(s)) for i in range(s)]
        gram = [[0] * s for _ in range(s)]
        for i in range(s):
            for j in range(s):
                val = (func(field.add(basis[i], basis[j]))
                       - func(basis[i]) - func(basis[j])) * half % p
                gram[i][j] = val
        form = cls(field, gram)
        if check:
            for x in field.elements():
                if form.evaluate(x) != func(x) % p:
                    raise NotQuadratic(f"table disagrees with X A X^T at {x}")
        return form

    # -- evaluation -------------------------------------------------------------

    def evaluate(self, x: Vec) -> int:
        ax = matvec(self.gram, x, self.p)
        return sum(a * b for a, b in zip(x, ax)) % self.p

    def bilinear(self, x: Vec, y: Vec) -> int:
        """F(x,y) = (f(x+y) - f(x) - f(y)) / 2 = X A Y^T."""
        ay = matvec(self.gram, y, self.p)
        return sum(a * b for a, b in zip(x, ay)) % self.p

    # -- invariants -------------------------------------------------------------

    def diagonalize(self) -> tuple[Mat, tuple[int, ...]]:
        """(M, lambdas) with M invertible and M A M^T = diag(lambdas, 0..0)."""
        return self._diag

    def rank_sign(self) -> tuple[int, int]:
        return self.rank, self.sign

    @cached_property
    def radical(self) -> Subspace:
        """Null space of A: the vectors orthogonal to everything, where f vanishes."""
        return Subspace(self.p, self.s, nullspace(self.gram, self.s, self.p))

    @cached_property
    def _trace_gram_inv(self) -> Mat:
        return matrix_inverse(self.field.trace_gram, self.p)

    @cached_property
    def lf_matrix(self) -> Mat:
        """Coordinate matrix of the linearized map L_f (f(x) = Tr(x L_f(x))).

        Tr(x L_f(y)) = X A Y^T forces coords(L_f(y)) = Y A T^{-1}, with T the
        trace-form Gram of the basis.  Only this matrix action is ever used.
        """
        return matmul(self.gram, self._trace_gram_inv, self.p)

    @cached_property
    def image(self) -> Subspace:
        """S_f = Im(L_f) as a coordinate subspace (dimension = rank)."""
        return Subspace.from_vectors(self.p, self.s, self.lf_matrix)

    def lf_apply(self, x: Vec) -> Vec:
        """The bilinear image X A (pairs with Y by the plain dot product)."""
        return matvec(self.gram, x, self.p)

    def solve_xb(self, b: Vec):
        """Some x_b with L_f(x_b) = -b/2, or None when b is outside S_f.

        In coordinates: X A = -(B T) / 2.  Solutions differ by the radical,
        where f vanishes, so f(x_b) is independent of the choice.
        """
        half = pow(2, -1, self.p)
        bt = matvec(self.field.trace_gram, tuple(b), self.p)
        target = tuple(-half * c % self.p for c in bt)
        return solve_linear(self.gram, target, self.p)

    # -- restriction and constructive subspaces ---------------------------------

    def restrict(self, H: Subspace) -> RestrictedForm:
        """Rank and sign of f on H, from the Gram matrix on H's basis."""
        if H.m != self.s or H.p != self.p:
            raise DimensionMismatch("subspace not in this form's space")
        gram_r = tuple(tuple(self.bilinear(hi, hj) for hj in H.basis)
                       for hi in H.basis)
        _, lambdas = _symmetric_diagonalize(gram_r, self.p)
        prod = 1
        for lam in lambdas:
            prod = prod * lam % self.p
        sign = legendre(prod, self.p) if lambdas else 1
        return RestrictedForm(H, gram_r, len(lambdas), sign)

    def _diag_value(self, z: Vec) -> int:
        _, lambdas = self._diag
        return sum(lam * c * c for lam, c in zip(lambdas, z)) % self.p

    def _diag_bilinear(self, z: Vec, w: Vec) -> int:
        _, lambdas = self._diag
        return sum(lam * a * b for lam, a, b in zip(lambdas, z, w)) % self.p

    def _witt_isotropic(self, span_rows: list[Vec]) -> list[Vec]:
        """Maximal pairwise-orthogonal isotropic vectors inside a nondegenerate
        diagonal-coordinate subspace, by greedy hyperbolic-pair extraction."""
        p = self.p
        k = len(span_rows)
        if k == 0:
            return []
        # first nonzero isotropic vector of the span, in deterministic scan order
        v = None
        for coeffs in itertools.product(range(p), repeat=k):
            if not any(coeffs):
                continue
            cand = tuple(sum(c * row[i] for c, row in zip(coeffs, span_rows)) % p
                         for i in range(self.rank))
            if self._diag_value(cand) == 0:
                v = cand
                break
        if v is None:
            return []  # anisotropic part
        u = next(row for row in span_rows if self._diag_bilinear(v, row))
        # orthogonal complement of <v, u> within the span
        constraints = [tuple(self._diag_bilinear(w, row) for row in span_rows)
                       for w in (v, u)]
        coeff_null = nullspace(constraints, k, p)
        rest = [tuple(sum(c * row[i] for c, row in zip(cs, span_rows)) % p
                      for i in range(self.rank)) for cs in coeff_null]
        return [v] + self._witt_isotropic(rest)

    def _from_diag_coords(self, z: Vec) -> Vec:
        """Map a diagonal-coordinate vector (length R, nondegenerate block) back."""
        diag_m, _ = self._diag
        full = tuple(z) + (0,) * (self.s - len(z))
        return tuple(sum(c * diag_m[i][j] for i, c in enumerate(full)) % self.p
                     for j in range(self.s))

    def max_isotropic_dim(self) -> int:
        """Largest dimension of a totally isotropic subspace containing the radical."""
        s, r, eps, p = self.s, self.rank, self.sign, self.p
        if r % 2 == 1:
            return s - (r + 1) // 2
        if r == 0 or eps == legendre(-1, p)**(r // 2):
            return s - r // 2
        return s - (r + 2) // 2

    def isotropic_subspace(self) -> Subspace:
        """A maximal subspace containing the radical on which f vanishes."""
        block = [tuple(1 if j == i else 0 for j in range(self.rank))
                 for i in range(self.rank)]
        iso = [self._from_diag_coords(z) for z in self._witt_isotropic(block)]
        out = Subspace.from_vectors(self.p, self.s,
                                    list(self.radical.basis) + iso)
        assert out.dim == self.max_isotropic_dim()
        return out

    def rank_one_subspace(self, a: int, extended: bool = False) -> Subspace:
        """A subspace meeting the radical trivially with restricted rank 1.

        Standard form: dimension (R-1)/2 (odd R) or R/2 (even R), restricted
        sign the quadratic character of a.  With extended=True and odd R, a
        is ignored and the (R+1)/2-dimensional variant is built, whose sign
        is forced to eta(-1)^((R-1)/2) * sign(f).
        """
        p, r = self.p, self.rank
        a %= p
        if not extended and a == 0:
            raise ValueError("a must be nonzero")
        block = [tuple(1 if j == i else 0 for j in range(r))
                 for i in range(r)]
        if extended:
            if r % 2 == 0:
                raise RankTooSmall("extended variant needs odd rank")
            iso = self._witt_isotropic(block)
            constraints = [tuple(self._diag_bilinear(w, row) for row in block)
                           for w in iso]
            comp = nullspace(constraints, r, p) if constraints else identity(r)
            # any anisotropic vector orthogonal to all of iso; its value class
            # is forced to the rank-1 residual of the form, so the sign is fixed
            z = next(self._combine(comp, cs)
                     for cs in itertools.product(range(p), repeat=len(comp))
                     if any(cs) and self._diag_value(self._combine(comp, cs)))
            vectors = list(iso) + [z]
            out = Subspace.from_vectors(
                p, self.s, [self._from_diag_coords(v) for v in vectors])
            assert out.dim == (r + 1) // 2
            return out
        l0 = (r - 1) // 2 if r % 2 else r // 2
        if l0 == 0:
            raise RankTooSmall(f"rank {r} admits no such nonzero subspace")
        # deterministic scan (first coordinate fastest) for a vector representing a
        w0 = next(v for v in (tuple(reversed(t))
                              for t in itertools.product(range(p), repeat=r))
                  if self._diag_value(v) == a % p)
        constraints = [tuple(self._diag_bilinear(w0, row) for row in block)]
        comp = nullspace(constraints, r, p)
        iso = self._witt_isotropic([tuple(row) for row in comp])
        assert len(iso) >= l0 - 1
        vectors = [w0] + iso[:l0 - 1]
        out = Subspace.from_vectors(
            p, self.s, [self._from_diag_coords(v) for v in vectors])
        assert out.dim == l0
        return out

    def _combine(self, rows, coeffs) -> Vec:
        n = len(rows[0]) if rows else 0
        return tuple(sum(c * row[i] for c, row in zip(coeffs, rows)) % self.p
                     for i in range(n))

    def __repr__(self) -> str:
        return (f"QuadForm(p={self.p}, s={self.s}, rank={self.rank}, "
                f"sign={self.sign:+d})")
