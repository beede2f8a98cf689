"""The defining set D = {(x,y) != 0 : f(x) + g(y) = 0} and its trace code.

Codewords are (Tr(x x_i) + Tr(y y_i)) over the points of D, messages run
over all of F = F_{q1} x F_{q2}.  Brute-force weight distributions are the
oracle; the closed-form length and three-weight tables are the predictions
under test.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import DimensionMismatch, EmptyCode, NonIntegerWeight, TooLarge
from .gf import pstar
from .quadform import QuadForm
from .subspace import PairSpaceCtx, Vec, matmul, matrix_rank

DEFAULT_MESSAGE_LIMIT = 10**6


@dataclass(frozen=True)
class DefiningSet:
    ctx: PairSpaceCtx
    points: tuple[Vec, ...]

    @property
    def n(self) -> int:
        return len(self.points)


def build_defining_set(ctx: PairSpaceCtx, f: QuadForm, g: QuadForm) -> DefiningSet:
    """Enumerate F*, keep f(x) + g(y) = 0, in coordinate-lexicographic order."""
    if f.field != ctx.field1 or g.field != ctx.field2:
        raise DimensionMismatch("forms do not live on the context's fields")
    p = ctx.p
    points = []
    for x in ctx.field1.elements():
        fx = f.evaluate(x)
        for y in ctx.field2.elements():
            if any(x) or any(y):
                if (fx + g.evaluate(y)) % p == 0:
                    points.append(x + y)
    return DefiningSet(ctx, tuple(points))


class CodeCD:
    """The p-ary linear code cut out by a defining set."""

    def __init__(self, ctx: PairSpaceCtx, f: QuadForm, g: QuadForm,
                 defining_set: DefiningSet | None = None):
        self.ctx = ctx
        self.f = f
        self.g = g
        self.D = defining_set if defining_set is not None \
            else build_defining_set(ctx, f, g)
        self.p = ctx.p
        self.s = ctx.s
        self.n = self.D.n

    @cached_property
    def generator_matrix(self) -> tuple[tuple[int, ...], ...]:
        """s x n matrix; rows are the codewords of the basis messages."""
        if self.n == 0:
            return tuple(() for _ in range(self.s))
        pts_t = tuple(zip(*self.D.points))  # s x n
        return matmul(self.ctx.pairing_gram, pts_t, self.p)

    def codeword(self, message: Vec) -> Vec:
        """Image of a message (concatenated coordinates of (x, y))."""
        if len(message) != self.s:
            raise DimensionMismatch(f"message must have length {self.s}")
        gen = self.generator_matrix
        return tuple(sum(m * gen[k][i] for k, m in enumerate(message)) % self.p
                     for i in range(self.n))

    @cached_property
    def dimension(self) -> int:
        """Rank of the message-to-codeword map; the tables presuppose s."""
        if self.n == 0:
            return 0
        return matrix_rank(self.generator_matrix, self.p)

    @property
    def full_dimensional(self) -> bool:
        return self.dimension == self.s


def code_dimension(code: CodeCD) -> int:
    return code.dimension


def predicted_length(p: int, s: int, R: int, eps: int) -> int:
    """Closed-form |D|: p^(s-1) - 1 for odd R, with an eps correction for even R."""
    if R % 2 == 1:
        return p**(s - 1) - 1
    val = Fraction(p)**(s - 1) - 1 \
        + (p - 1) * Fraction(p)**(s - 1) * eps * Fraction(pstar(p))**(-(R // 2))
    if val.denominator != 1:
        raise NonIntegerWeight(f"length {val} is not an integer")
    return val.numerator


def weight_distribution_bruteforce(code: CodeCD, threads: int = 1,
                                   limit: int = DEFAULT_MESSAGE_LIMIT) -> dict[int, int]:
    """Exact weight histogram over all p^s messages (chunked, optionally threaded)."""
    import numpy as np

    p, s, n = code.p, code.s, code.n
    total = p**s
    if total > limit:
        raise TooLarge(f"p^s = {total} exceeds the message limit {limit}")
    if n == 0:
        return {0: total}
    gen = np.array(code.generator_matrix, dtype=np.int64)

    def chunk_hist(start: int, stop: int) -> "np.ndarray":
        idx = np.arange(start, stop, dtype=np.int64)
        msgs = np.empty((stop - start, s), dtype=np.int64)
        rem = idx
        for k in range(s - 1, -1, -1):
            msgs[:, k] = rem % p
            rem = rem // p
        words = (msgs @ gen) % p
        weights = (words != 0).sum(axis=1)
        return np.bincount(weights, minlength=n + 1)

    chunk = 1 << 14
    bounds = [(a, min(a + chunk, total)) for a in range(0, total, chunk)]
    if threads > 1 and len(bounds) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            hists = list(pool.map(lambda ab: chunk_hist(*ab), bounds))
    else:
        hists = [chunk_hist(a, b) for a, b in bounds]
    hist = sum(hists)
    return {w: int(c) for w, c in enumerate(hist) if c}


def weight_distribution_predicted(p: int, s: int, R: int, eps: int) -> dict[int, int]:
    """The three-weight tables, evaluated as exact rationals.

    Rows with zero multiplicity are dropped; a fractional weight on a
    surviving row (or any fractional multiplicity) is out of regime and
    raises rather than being rounded.
    """
    if R < 1:
        raise NonIntegerWeight("tables require R >= 1")
    lead = (p - 1) * Fraction(p)**(s - 2)
    if R % 2 == 1:
        t = eps * Fraction(pstar(p))**(-((R - 1) // 2))
        rows = [
            (lead, Fraction(p)**s - Fraction(p)**R + Fraction(p)**(R - 1) - 1),
            (lead * (1 - t), Fraction(1, 2) * (p - 1) * Fraction(p)**(R - 1) * (1 + t)),
            (lead * (1 + t), Fraction(1, 2) * (p - 1) * Fraction(p)**(R - 1) * (1 - t)),
        ]
    else:
        t = Fraction(pstar(p))**(-(R // 2))
        rows = [
            (lead, Fraction(p)**(R - 1) - 1
             + eps * (1 - Fraction(1, p)) * Fraction(pstar(p))**(R // 2)),
            (lead * (1 + eps * (p - 1) * t), Fraction(p)**s - Fraction(p)**R),
            (lead * (1 + eps * p * t),
             (1 - Fraction(1, p)) * Fraction(p)**R * (1 - eps * t)),
        ]
    dist: dict[int, int] = {0: 1}
    for w, a in rows:
        if a.denominator != 1 or a.numerator < 0:
            raise NonIntegerWeight(f"multiplicity {a} is not a nonnegative integer")
        mult = a.numerator
        if mult == 0:
            continue
        if w.denominator != 1 or w.numerator < 0:
            raise NonIntegerWeight(f"weight {w} is not a nonnegative integer")
        dist[w.numerator] = dist.get(w.numerator, 0) + mult
    return dist


def minimality_check(wd: dict[int, int], p: int) -> tuple[bool, int, int]:
    """Whether p*w_min > (p-1)*w_max over the nonzero weights (pure integers)."""
    nonzero = [w for w, a in wd.items() if w > 0 and a > 0]
    if not nonzero:
        raise EmptyCode("no nonzero weight present")
    w_min, w_max = min(nonzero), max(nonzero)
    return p * w_min > (p - 1) * w_max, w_min, w_max


def export_generator_csv(code: CodeCD, path) -> None:
    """s rows, n columns, entries 0..p-1, no header."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in code.generator_matrix:
            writer.writerow(row)
