"""The exact correspondence between skew polynomials and rational matrices.

A skew polynomial acts on Q(beta) as the linear map sum a_i sigma^i; writing
that map in the normal basis {v_1, ..., v_(p-1)} gives a (p-1) x (p-1)
rational matrix, and the assignment is a bijection onto the full matrix
algebra.  Both directions are implemented here:

  matrix -> polynomial   scaled application of the inverse basis matrix W
                         (the basis matrix V of normal-basis translates and
                         W of their reciprocals satisfy V W = p I);
  polynomial -> matrix   row i is the normal-coordinate vector of the image
                         of v_i, which in the power-basis representation is
                         a permutation away.

Whether the bijection is a homomorphism or an anti-homomorphism depends on
a composition-order convention that is easy to get wrong by symbol pushing,
so it is settled empirically once per context by `phi_orientation` and
cached; the multiplication algorithms consult the probe instead of trusting
a derivation.
"""

from __future__ import annotations

import enum

from .cyclotomic import (CycCtx, cyc_scale, from_normal_coords, mul_beta_power,
                         normal_coords, shared_ctx)
from .multiply import cubic_multiply
from .rational import Rat, as_rat
from .skewpoly import SkewPoly, sp_mul

_ZERO = Rat(0)
_ONE = Rat(1)


class RatMatrix:
    """Dense (p-1) x (p-1) matrix of exact rationals, row-major, canonical."""

    __slots__ = ("p", "rows")

    def __init__(self, p: int, rows):
        if not isinstance(p, int) or p < 3:
            raise ValueError(f"matrix dimension parameter must be a prime >= 3, got {p!r}")
        n = p - 1
        frozen = tuple(tuple(as_rat(x) for x in row) for row in rows)
        if len(frozen) != n or any(len(row) != n for row in frozen):
            raise ValueError(f"expected a {n} x {n} matrix for p={p}")
        self.p = p
        self.rows = frozen

    @classmethod
    def zeros(cls, p: int) -> RatMatrix:
        n = p - 1
        return cls(p, [[_ZERO] * n for _ in range(n)])

    @classmethod
    def identity(cls, p: int) -> RatMatrix:
        n = p - 1
        return cls(p, [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return self.p - 1

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.p == other.p and self.rows == other.rows

    def __add__(self, other):
        self._check_pair(other)
        return RatMatrix(self.p, [tuple(a + b for a, b in zip(r1, r2))
                                  for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check_pair(other)
        return RatMatrix(self.p, [tuple(a - b for a, b in zip(r1, r2))
                                  for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return RatMatrix(self.p, [tuple(-a for a in r) for r in self.rows])

    def __matmul__(self, other):
        """Plain exact product (uncounted); the benchmarked paths use matmul."""
        self._check_pair(other)
        return RatMatrix(self.p, cubic_multiply(self.rows, other.rows))

    def scale(self, c) -> RatMatrix:
        c = as_rat(c)
        return RatMatrix(self.p, [tuple(a * c for a in r) for r in self.rows])

    def transpose(self) -> RatMatrix:
        return RatMatrix(self.p, list(zip(*self.rows)))

    def _check_pair(self, other):
        if not isinstance(other, RatMatrix):
            raise TypeError("expected a RatMatrix")
        if self.p != other.p:
            raise ValueError(f"dimension mismatch: p={self.p} vs p={other.p}")

    def __repr__(self):
        return f"RatMatrix(p={self.p})"


def build_V(ctx: CycCtx):
    """Matrix of normal-basis translates: entry (i, j) is v_(i+j-1).

    Returned as rows of field elements; cached per context together with W.
    """
    return _basis_matrices(ctx)[0]


def build_W(ctx: CycCtx):
    """Companion matrix with entries 1/v_(i+j-1) - 1; satisfies V W = p I."""
    return _basis_matrices(ctx)[1]


def _basis_matrices(ctx: CycCtx):
    cached = ctx._vw
    if cached is not None:
        return cached
    p = ctx.p
    n = p - 1
    one = ctx.one
    v_rows = []
    w_rows = []
    for i in range(n):
        v_rows.append(tuple(ctx.beta_power(ctx.pow_r[(i + j) % n]) for j in range(n)))
        w_rows.append(tuple(ctx.beta_power(p - ctx.pow_r[(i + j) % n]) - one for j in range(n)))
    cached = (tuple(v_rows), tuple(w_rows))
    ctx._vw = cached
    return cached


def mat_to_skew(C: RatMatrix, ctx: CycCtx | None = None) -> SkewPoly:
    """The polynomial whose linear map has matrix C.

    Row i of C is already the normal-coordinate vector of the image b_i of
    v_i, so reading the rows back as field elements costs nothing; the
    coefficient vector is then (1/p) * W * (b_1, ..., b_(p-1)), applied
    entrywise.  W's entries are reciprocal-translates minus one, so each
    product is an O(p) exponent shift rather than a full field product.
    """
    if ctx is None:
        ctx = shared_ctx(C.p)
    elif ctx.p != C.p:
        raise ValueError(f"dimension mismatch: matrix p={C.p}, context p={ctx.p}")
    p = ctx.p
    n = p - 1
    b = [from_normal_coords(ctx, row) for row in C.rows]
    inv_p = _ONE / Rat(p)
    terms = {}
    for i in range(1, p):  # coefficient of x^(i-1)
        acc = ctx.zero
        for k in range(n):
            bk = b[k]
            if not bk:
                continue
            u = ctx.pow_r[(i - 1 + k) % n]
            acc = acc + (mul_beta_power(bk, p - u) - bk)
        if acc:
            terms[i - 1] = cyc_scale(acc, inv_p)
    return SkewPoly(ctx, terms)


def skew_to_mat(f: SkewPoly) -> RatMatrix:
    """The matrix of the linear map of f in the normal basis.

    The image of v_i is sum over terms (e, c) of v_(i+e) * c, assembled with
    exponent shifts; expressing it in normal coordinates is the permutation
    normal_coords, so no system is solved.
    """
    ctx = f.ctx
    n = ctx.p - 1
    terms = f.sorted_terms()
    rows = []
    for i in range(1, ctx.p):
        beta_i = ctx.zero
        for e, c in terms:
            beta_i = beta_i + mul_beta_power(c, ctx.pow_r[(i - 1 + e) % n])
        rows.append(normal_coords(beta_i))
    return RatMatrix(ctx.p, rows)


class Orientation(enum.Enum):
    """Composition-order convention of the polynomial/matrix bijection."""

    DIRECT = "direct"      # matrix of f*g equals (matrix of f)(matrix of g)
    REVERSED = "reversed"  # matrix of f*g equals (matrix of g)(matrix of f)


def phi_orientation(ctx: CycCtx) -> Orientation:
    """Settle the composition order once per context with a fixed probe.

    The probe multiplies the non-commuting pair f = x, g = beta x^2 and
    compares the matrix of f*g against both matrix-product orders.  Exactly
    one matches; the answer is cached on the context.
    """
    cached = ctx._orientation
    if cached is not None:
        return cached
    f = SkewPoly.monomial(ctx, 1)
    g = SkewPoly.monomial(ctx, 2, ctx.beta_power(1))
    mf = skew_to_mat(f)
    mg = skew_to_mat(g)
    mh = skew_to_mat(sp_mul(f, g))
    if mh == RatMatrix(ctx.p, cubic_multiply(mf.rows, mg.rows)):
        result = Orientation.DIRECT
    elif mh == RatMatrix(ctx.p, cubic_multiply(mg.rows, mf.rows)):
        result = Orientation.REVERSED
    else:
        raise RuntimeError(
            "orientation probe failed: the product matrix matches neither "
            "operand order -- the transform is internally inconsistent")
    ctx._orientation = result
    return result
