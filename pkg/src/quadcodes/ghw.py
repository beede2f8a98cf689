"""Generalized Hamming weights: exhaustive maximization versus closed forms.

The exact side maximizes |D ∩ H| over (s-r)-dimensional subspaces, or
equivalently |H_r^perp ∩ D| over r-dimensional ones, choosing whichever
enumeration is smaller.  The predicted side evaluates the three hierarchy
theorems (even rank with either sign pairing, and odd rank).  The counting
identities for N(H_r) and the product-subspace level sets are checked
against direct enumeration every time they are evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .codes import CodeCD, build_defining_set
from .errors import (BadSubspace, DimensionDeficient, NoApplicableTheorem,
                     OracleMismatch, TooLarge)
from .gf import legendre, pstar, upsilon
from .quadform import QuadForm
from .subspace import (PairSpaceCtx, Subspace, enumerate_subspaces,
                       gaussian_binomial, matvec, nullspace, matmul)

DEFAULT_SUBSPACE_LIMIT = 200_000


def lemma_isotropic_dim(s: int, R: int, eps: int, p: int) -> int:
    """Largest totally isotropic dimension over the radical, by rank parity and sign."""
    if R % 2 == 1:
        return s - (R + 1) // 2
    if R == 0 or eps == legendre(-1, p)**(R // 2):
        return s - R // 2
    return s - (R + 2) // 2


@dataclass(frozen=True)
class TheoremParams:
    p: int
    s1: int
    s2: int
    R_f: int
    R_g: int
    eps_f: int
    eps_g: int

    @classmethod
    def from_forms(cls, f: QuadForm, g: QuadForm) -> "TheoremParams":
        return cls(f.p, f.s, g.s, f.rank, g.rank, f.sign, g.sign)

    @property
    def s(self) -> int:
        return self.s1 + self.s2

    @property
    def R(self) -> int:
        return self.R_f + self.R_g

    @property
    def eps(self) -> int:
        return self.eps_f * self.eps_g

    @property
    def e_f(self) -> int:
        return lemma_isotropic_dim(self.s1, self.R_f, self.eps_f, self.p)

    @property
    def e_g(self) -> int:
        return lemma_isotropic_dim(self.s2, self.R_g, self.eps_g, self.p)

    @property
    def theorem_tag(self) -> str | None:
        """'even-a', 'even-b', 'odd', or None when R = 0."""
        if self.R == 0:
            return None
        if self.R % 2 == 1:
            return "odd"
        if self.eps == legendre(-1, self.p)**(self.R // 2):
            return "even-a"
        return "even-b"


# -- counting identities --------------------------------------------------------

def count_N(f: QuadForm, g: QuadForm, H: Subspace,
            ctx: PairSpaceCtx | None = None, defining_set=None) -> int:
    """|{(x,y) in F : f(x)+g(y)=0, orthogonal to H under the trace pairing}|.

    Computed as |H^perp ∩ D| + 1 and, when R >= 1, re-derived from the
    character-sum closed form over H ∩ (S_f x S_g); any disagreement raises.
    """
    if ctx is None:
        ctx = PairSpaceCtx(f.field, g.field)
    if defining_set is None:
        defining_set = build_defining_set(ctx, f, g)
    p, s, r = ctx.p, ctx.s, H.dim
    perp = ctx.orthogonal_complement(H)
    direct = sum(1 for v in defining_set.points if perp.contains(v)) + 1
    R = f.rank + g.rank
    if R >= 1:
        acc = 0
        for w in H.elements():
            u, v = ctx.split(w)
            xu = f.solve_xb(u)
            yv = g.solve_xb(v)
            if xu is None or yv is None:
                continue
            val = (f.evaluate(xu) + g.evaluate(yv)) % p
            acc += upsilon(val, p) if R % 2 == 0 else legendre(val, p)
        half = R // 2 if R % 2 == 0 else (R - 1) // 2
        closed = Fraction(p)**(s - r - 1) * (
            1 + f.sign * g.sign * Fraction(pstar(p))**(-half) * acc)
        if closed.denominator != 1 or closed.numerator != direct:
            raise OracleMismatch(
                f"N(H) mismatch on {H.basis}: direct {direct} != closed {closed}")
    return direct


def _preimage_under(form: QuadForm, U: Subspace) -> Subspace:
    """{x : L_f(x) in U} in coordinates (contains the radical)."""
    lmat = form.lf_matrix
    ann = nullspace(U.basis, U.m, form.p)
    constraints = [matvec(lmat, z, form.p) for z in ann]
    return Subspace(form.p, form.s, nullspace(constraints, form.s, form.p))


def count_Sfg(f: QuadForm, g: QuadForm, U: Subspace, V: Subspace, t: int) -> int:
    """#{(u,v) in U x V : f(x_u) + g(y_v) = t}, oracle-checked.

    U and V must lie inside the images of the respective linearized maps.
    The closed form uses the restricted ranks and signs of f, g on the
    preimage subspaces; direct enumeration over U x V is authoritative.
    """
    p = f.p
    t %= p
    if not f.image.contains_subspace(U):
        raise BadSubspace("U is not inside Im(L_f)")
    if not g.image.contains_subspace(V):
        raise BadSubspace("V is not inside Im(L_g)")
    direct = 0
    for u in U.elements():
        xu = f.solve_xb(u)
        fu = f.evaluate(xu)
        for v in V.elements():
            yv = g.solve_xb(v)
            if (fu + g.evaluate(yv)) % p == t:
                direct += 1
    rf = f.restrict(_preimage_under(f, U))
    rg = g.restrict(_preimage_under(g, V))
    r = U.dim + V.dim
    RH = rf.rank + rg.rank
    eps12 = rf.sign * rg.sign
    if RH % 2 == 1:
        closed = Fraction(p)**(r - 1) * (
            1 + eps12 * Fraction(pstar(p))**(-((RH - 1) // 2)) * legendre(t, p))
    else:
        closed = Fraction(p)**(r - 1) * (
            1 + eps12 * Fraction(pstar(p))**(-(RH // 2)) * upsilon(t, p))
    if closed.denominator != 1 or closed.numerator != direct:
        raise OracleMismatch(
            f"S_fg mismatch at t={t}: direct {direct} != closed {closed}")
    return direct


# -- exhaustive maximization ------------------------------------------------------

class _Workspace:
    """Shared enumeration state for one (f, g) pair."""

    def __init__(self, f: QuadForm, g: QuadForm):
        import numpy as np

        self.f = f
        self.g = g
        self.ctx = PairSpaceCtx(f.field, g.field)
        self.code = CodeCD(self.ctx, f, g)
        self.p = self.ctx.p
        self.s = self.ctx.s
        self.n = self.code.n
        self._np = np
        self._dmat = np.array(self.code.D.points, dtype=np.int64) \
            if self.n else np.zeros((0, self.s), dtype=np.int64)
        self._gram = np.array(self.ctx.pairing_gram, dtype=np.int64)

    def count_in(self, H: Subspace) -> int:
        """|D ∩ H| via H's dot-product annihilator."""
        np = self._np
        ann = nullspace(H.basis, self.s, self.p)
        if not ann:
            return self.n
        a = np.array(ann, dtype=np.int64).T
        return int(((self._dmat @ a) % self.p == 0).all(axis=1).sum())

    def count_in_complement(self, H: Subspace) -> int:
        """|D ∩ H^perp| under the trace pairing."""
        np = self._np
        if H.dim == 0:
            return self.n
        rows = np.array(matmul(H.basis, self.ctx.pairing_gram, self.p),
                        dtype=np.int64).T
        return int(((self._dmat @ rows) % self.p == 0).all(axis=1).sum())

    def max_intersection(self, r: int, side: str) -> tuple[int, Subspace]:
        """(max count, first witness) over the chosen enumeration side."""
        best = -1
        witness = None
        if side == "points":  # |D ∩ H| over (s-r)-dimensional H
            for H in enumerate_subspaces(self.p, self.s, self.s - r):
                c = self.count_in(H)
                if c > best:
                    best, witness = c, H
        else:  # |D ∩ H^perp| over r-dimensional H
            for H in enumerate_subspaces(self.p, self.s, r):
                c = self.count_in_complement(H)
                if c > best:
                    best, witness = c, H
        return best, witness


def ghw_exact(f: QuadForm, g: QuadForm, r: int, method: str = "auto",
              workspace: _Workspace | None = None,
              max_subspaces: int = DEFAULT_SUBSPACE_LIMIT) -> int:
    """d_r by exhaustive subspace maximization (dimension must equal s)."""
    ws = workspace if workspace is not None else _Workspace(f, g)
    if not 1 <= r <= ws.s:
        raise ValueError(f"r must be in [1, {ws.s}]")
    if not ws.code.full_dimensional:
        raise DimensionDeficient(
            f"code dimension {ws.code.dimension} < s = {ws.s}")
    count8 = gaussian_binomial(ws.p, ws.s, ws.s - r)
    count9 = gaussian_binomial(ws.p, ws.s, r)
    if method == "auto":
        method = "points" if count8 <= count9 else "dual"
    work = count8 if method == "points" else count9
    if work > max_subspaces:
        raise TooLarge(f"{work} subspaces exceed the limit {max_subspaces}")
    best, _ = ws.max_intersection(r, method)
    return ws.n - best


def ghw_support_oracle(code: CodeCD, r: int) -> int:
    """Definition-level d_r: minimum support over r-dimensional message spaces."""
    if not code.full_dimensional:
        raise DimensionDeficient("support oracle needs dimension = s")
    gen = code.generator_matrix
    p, s, n = code.p, code.s, code.n
    best = None
    for B in enumerate_subspaces(p, s, r):
        rows = matmul(B.basis, gen, p)
        support = sum(1 for i in range(n) if any(row[i] for row in rows))
        if best is None or support < best:
            best = support
    return best


def ghw_predicted(params: TheoremParams, r: int) -> int:
    """The applicable theorem's d_r (raises when R = 0)."""
    tag = params.theorem_tag
    if tag is None:
        raise NoApplicableTheorem("R = 0 is outside every hierarchy theorem")
    p, s, R = params.p, params.s, params.R
    if not 1 <= r <= s:
        raise ValueError(f"r must be in [1, {s}]")
    if tag == "odd":
        if r <= (R - 1) // 2:
            return p**(s - 1) - p**(s - 1 - r) - (p - 1) * p**(s - 2 - (R - 1) // 2)
        return p**(s - 1) - p**(s - r)
    if tag == "even-a":
        if r <= R // 2 - 1:
            return p**(s - 1) - p**(s - 1 - r)
        return p**(s - 1) - p**(s - r) + (p - 1) * p**(s - 1 - R // 2)
    # even-b
    if r == 1:
        val = Fraction(p)**(s - 2) * (p - 1) * (1 - Fraction(p)**(1 - R // 2))
        assert val.denominator == 1
        return val.numerator
    if r <= R // 2:
        return p**(s - 1) - p**(s - 1 - r) - (p**2 - 1) * p**(s - 2 - R // 2)
    return p**(s - 1) - p**(s - r) - (p - 1) * p**(s - 1 - R // 2)


def griesmer_sum(d1: int, r: int, p: int) -> int:
    """Sum of ceil(d1 / p^i) for i < r (the Griesmer-like lower bound)."""
    return sum(-(-d1 // p**i) for i in range(r))


# -- the aggregated report --------------------------------------------------------

@dataclass
class HierarchyRow:
    r: int
    exact: int
    predicted: int | None
    griesmer_bound: int
    match: bool | None
    griesmer_equal: bool
    product_attains: bool | None = None

    def to_json(self):
        return {"r": self.r, "exact": self.exact, "predicted": self.predicted,
                "griesmer": self.griesmer_bound, "match": self.match,
                "griesmer_equal": self.griesmer_equal,
                "product_attains": self.product_attains}


@dataclass
class HierarchyReport:
    params: TheoremParams
    theorem: str | None
    n: int
    dimension: int
    rows: list[HierarchyRow] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(row.match for row in self.rows)

    @property
    def exact(self) -> tuple[int, ...]:
        return tuple(row.exact for row in self.rows)

    def to_json(self):
        return {
            "params": {
                "p": self.params.p, "s1": self.params.s1, "s2": self.params.s2,
                "R_f": self.params.R_f, "R_g": self.params.R_g,
                "eps_f": self.params.eps_f, "eps_g": self.params.eps_g,
            },
            "theorem": self.theorem,
            "n": self.n,
            "dimension": self.dimension,
            "rows": [row.to_json() for row in self.rows],
            "verdict": self.verdict,
        }


def _product_max(ws: _Workspace, r: int) -> int:
    """max |D ∩ (U x V)^perp| over product subspaces with dim U + dim V = r."""
    from .subspace import product_subspace

    best = -1
    for r1 in range(max(0, r - ws.ctx.s2), min(r, ws.ctx.s1) + 1):
        for U in enumerate_subspaces(ws.p, ws.ctx.s1, r1):
            for V in enumerate_subspaces(ws.p, ws.ctx.s2, r - r1):
                c = ws.count_in_complement(product_subspace(U, V))
                if c > best:
                    best = c
    return best


def hierarchy_report(f: QuadForm, g: QuadForm, r_range=None,
                     check_product_witness: bool = True,
                     max_subspaces: int = DEFAULT_SUBSPACE_LIMIT) -> HierarchyReport:
    """Exact-versus-predicted hierarchy table with Griesmer and witness flags."""
    ws = _Workspace(f, g)
    params = TheoremParams.from_forms(f, g)
    report = HierarchyReport(params, params.theorem_tag, ws.n, ws.code.dimension)
    if not ws.code.full_dimensional:
        raise DimensionDeficient(
            f"code dimension {ws.code.dimension} < s = {ws.s}")
    rs = list(r_range) if r_range is not None else list(range(1, ws.s + 1))
    d1 = ghw_exact(f, g, 1, workspace=ws, max_subspaces=max_subspaces)
    for r in rs:
        exact = d1 if r == 1 else ghw_exact(f, g, r, workspace=ws,
                                            max_subspaces=max_subspaces)
        try:
            predicted = ghw_predicted(params, r)
        except NoApplicableTheorem:
            predicted = None
        bound = griesmer_sum(d1, r, ws.p)
        row = HierarchyRow(
            r=r, exact=exact, predicted=predicted,
            griesmer_bound=bound,
            match=(exact == predicted) if predicted is not None else None,
            griesmer_equal=(exact == bound))
        if check_product_witness:
            row.product_attains = (ws.n - _product_max(ws, r) == exact)
        report.rows.append(row)
    return report
