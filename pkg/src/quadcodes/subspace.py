"""Canonical RREF subspaces of F_p^m, enumeration, and trace-pairing complements.

Subspaces are stored as reduced-row-echelon bases with strictly increasing
pivot columns, so two equal subspaces always compare equal.  Enumeration
walks pivot-column sets in colexicographic order and free entries in
lexicographic (row-major) order, which is deterministic and resumable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import BadDims, DimensionMismatch
from .gf import ExtField

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


# -- dense row-vector linear algebra mod p ------------------------------------

def rref(rows, p: int) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, len(m)) if m[r][col] % p), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = pow(m[row][col], -1, p)
        m[row] = [x * inv % p for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col] % p:
                c = m[r][col] % p
                m[r] = [(a - c * b) % p for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return tuple(tuple(r) for r in m[:row]), tuple(pivots)


def nullspace(rows, ncols: int, p: int) -> Mat:
    """RREF basis of {v : M v^T = 0} for the matrix with the given rows."""
    red, pivots = rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in zip(red, pivots):
            v[pc] = -r[fc] % p
        basis.append(tuple(v))
    return rref(basis, p)[0]


def solve_linear(matrix, target, p: int):
    """One solution x of x . M = target (row convention), or None."""
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    if nrows == 0:
        return () if not any(t % p for t in target) else None
    ncols = len(rows[0])
    # transpose to solve M^T x^T = target^T by Gaussian elimination
    aug = [[rows[r][c] % p for r in range(nrows)] + [target[c] % p]
           for c in range(ncols)]
    red, pivots = rref(aug, p)
    x = [0] * nrows
    for r, pc in zip(red, pivots):
        if pc == nrows:  # inconsistent: pivot in the augmented column
            return None
        x[pc] = r[-1]
    return tuple(x)


def matmul(a, b, p: int) -> Mat:
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt)
                 for row in a)


def matvec(a, v, p: int) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matrix_inverse(m, p: int) -> Mat:
    n = len(m)
    aug = [list(m[i]) + list(identity(n)[i]) for i in range(n)]
    red, pivots = rref(aug, p)
    if pivots != tuple(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(r[n:]) for r in red)


def matrix_rank(rows, p: int) -> int:
    return len(rref(rows, p)[0])


def block_diag(a, b) -> Mat:
    na, nb = len(a), len(b)
    wa = len(a[0]) if na else 0
    wb = len(b[0]) if nb else 0
    top = [tuple(row) + (0,) * wb for row in a]
    bot = [(0,) * wa + tuple(row) for row in b]
    return tuple(top + bot)


def gaussian_binomial(p: int, m: int, r: int) -> int:
    """Number of r-dimensional subspaces of F_p^m."""
    if r < 0 or r > m:
        return 0
    num = den = 1
    for i in range(r):
        num *= p**(m - i) - 1
        den *= p**(i + 1) - 1
    assert num % den == 0
    return num // den


# -- canonical subspaces -------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """An r-dimensional subspace of F_p^m with a canonical RREF basis."""

    p: int
    m: int
    basis: Mat

    @classmethod
    def from_vectors(cls, p: int, m: int, vectors) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != m:
                raise DimensionMismatch(f"vector length {len(v)} != {m}")
        return cls(p, m, rref(vectors, p)[0])

    @classmethod
    def zero(cls, p: int, m: int) -> "Subspace":
        return cls(p, m, ())

    @classmethod
    def full(cls, p: int, m: int) -> "Subspace":
        return cls(p, m, identity(m))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _pivots(self) -> tuple[int, ...]:
        return rref(self.basis, self.p)[1]

    def contains(self, v) -> bool:
        v = [x % self.p for x in v]
        for row, pc in zip(self.basis, self._pivots):
            c = v[pc]
            if c:
                v = [(a - c * b) % self.p for a, b in zip(v, row)]
        return not any(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def elements(self):
        """All p^dim member vectors (includes the zero vector)."""
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            v = [0] * self.m
            for c, row in zip(coeffs, self.basis):
                if c:
                    v = [(a + c * b) % self.p for a, b in zip(v, row)]
            yield tuple(v)

    def annihilator(self) -> "Subspace":
        """{v : b . v = 0 for every basis row b} under the plain dot product."""
        return Subspace(self.p, self.m, nullspace(self.basis, self.m, self.p))

    def to_json(self):
        return [list(row) for row in self.basis]


def enumerate_subspaces(p: int, m: int, r: int):
    """All r-dimensional subspaces of F_p^m, canonically ordered.

    Pivot-column sets run in colex order; the free entries of each RREF
    shape run lexicographically, row-major.
    """
    if r < 0 or r > m or m < 0:
        raise BadDims(f"no {r}-dimensional subspaces of F_{p}^{m}")
    if r == 0:
        yield Subspace.zero(p, m)
        return
    pivot_sets = sorted(itertools.combinations(range(m), r),
                        key=lambda c: tuple(reversed(c)))
    for pivots in pivot_sets:
        pivot_set = set(pivots)
        free_cells = [(i, j) for i in range(r)
                      for j in range(pivots[i] + 1, m) if j not in pivot_set]
        for values in itertools.product(range(p), repeat=len(free_cells)):
            rows = [[0] * m for _ in range(r)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), v in zip(free_cells, values):
                rows[i][j] = v
            yield Subspace(p, m, tuple(tuple(row) for row in rows))


def complement_under(H: Subspace, gram, p: int) -> Subspace:
    """Annihilator of H under the symmetric pairing with the given Gram matrix."""
    rows = matmul(H.basis, gram, p) if H.dim else ()
    return Subspace(p, H.m, nullspace(rows, H.m, p))


def intersect_count(points, H: Subspace) -> int:
    """|{v in points : v in H}| by RREF membership reduction."""
    return sum(1 for v in points if H.contains(v))


def product_subspace(U: Subspace, V: Subspace) -> Subspace:
    """U x V inside F_p^(m_U + m_V), re-canonicalized."""
    if U.p != V.p:
        raise DimensionMismatch("mismatched characteristics")
    m = U.m + V.m
    rows = [tuple(row) + (0,) * V.m for row in U.basis]
    rows += [(0,) * U.m + tuple(row) for row in V.basis]
    return Subspace.from_vectors(U.p, m, rows)


# -- the paired ambient space F_{q1} x F_{q2} ----------------------------------

class PairSpaceCtx:
    """F = F_{q1} x F_{q2} identified with F_p^(s1+s2) by concatenated coordinates.

    Carries the nondegenerate trace pairing
    <(u,v),(x,y)> = Tr^{s1}(u x) + Tr^{s2}(v y), whose Gram matrix is the
    block diagonal of the two trace-form Grams.
    """

    def __init__(self, field1: ExtField, field2: ExtField):
        if field1.p != field2.p:
            raise DimensionMismatch("the two fields must share p")
        self.field1 = field1
        self.field2 = field2
        self.p = field1.p
        self.s1 = field1.s
        self.s2 = field2.s
        self.s = self.s1 + self.s2
        self.pairing_gram = block_diag(field1.trace_gram, field2.trace_gram)

    def join(self, x, y) -> Vec:
        return tuple(x) + tuple(y)

    def split(self, w) -> tuple[Vec, Vec]:
        return tuple(w[:self.s1]), tuple(w[self.s1:])

    def points(self):
        """All of F, zero included, in coordinate-lexicographic order."""
        for x in self.field1.elements():
            for y in self.field2.elements():
                yield self.join(x, y)

    def pair(self, w1, w2) -> int:
        return sum(a * b for a, b in
                   zip(matvec(self.pairing_gram, w2, self.p), w1)) % self.p

    def orthogonal_complement(self, H: Subspace) -> Subspace:
        return complement_under(H, self.pairing_gram, self.p)
