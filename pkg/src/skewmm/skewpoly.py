"""The twisted polynomial ring Q(beta)[x; sigma] modulo x^(p-1) - 1.

Multiplication follows x * c = sigma(c) * x, and exponents reduce by
x^(p-1) = 1.  Polynomials are stored sparsely (exponent -> nonzero
coefficient), because the whole point of this representation is that the
number of stored terms -- the sparsity -- drives the cost of multiplying
the matrices these polynomials encode.

Evaluation treats a polynomial as the linear map sum a_i sigma^(e_i) on
Q(beta); interpolation recovers the polynomial from values of that map at
the points 1, v_1, v_1^2, ...  Both directions are exact.
"""

from __future__ import annotations

from . import linalg
from .cyclotomic import (CycElem, cyc_mul, cyc_sigma, from_normal_coords,
                         power_of_v1)
from .multiply import rect_multiply


class InterpolationError(RuntimeError):
    """Internal inconsistency during interpolation (index bug or a sparsity
    bound below the true sparsity)."""


class SupportSet:
    """Sorted set of exponents in Z_(p-1)."""

    __slots__ = ("elems",)

    def __init__(self, elems=(), modulus=None):
        if modulus is not None:
            elems = (e % modulus for e in elems)
        elems = tuple(sorted(set(elems)))
        for e in elems:
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"exponents must be nonnegative integers, got {e!r}")
        self.elems = elems

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __contains__(self, e):
        return e in self.elems

    def __eq__(self, other):
        if isinstance(other, SupportSet):
            return self.elems == other.elems
        if isinstance(other, (set, frozenset, tuple, list)):
            return self.elems == tuple(sorted(set(other)))
        return NotImplemented

    def __repr__(self):
        return "{" + ", ".join(str(e) for e in self.elems) + "}"


class SkewPoly:
    """Sparse skew polynomial over a fixed context.

    `terms` maps exponents in {0..p-2} to nonzero coefficients; the
    constructor reduces exponents, merges collisions and drops zeros, so
    sparsity() always equals the number of genuinely nonzero terms.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        n = ctx.p - 1
        clean = {}
        for e, c in terms.items():
            if not c:
                continue
            e %= n
            prev = clean.get(e)
            merged = c if prev is None else prev + c
            if merged:
                clean[e] = merged
            else:
                clean.pop(e, None)
        self.ctx = ctx
        self.terms = clean

    @classmethod
    def zero(cls, ctx) -> SkewPoly:
        return cls(ctx, {})

    @classmethod
    def one(cls, ctx) -> SkewPoly:
        return cls(ctx, {0: ctx.one})

    @classmethod
    def monomial(cls, ctx, exponent: int, coeff: CycElem | None = None) -> SkewPoly:
        """coeff * x^exponent (coeff defaults to 1)."""
        return cls(ctx, {exponent: ctx.one if coeff is None else coeff})

    def support(self) -> SupportSet:
        return SupportSet(self.terms)

    @property
    def sparsity(self) -> int:
        return len(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.ctx.p == other.ctx.p and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "SkewPoly(0)"
        return "SkewPoly(" + " + ".join(f"({c!r})*x^{e}" for e, c in self.sorted_terms()) + ")"


def _check_same_ctx(f: SkewPoly, g: SkewPoly):
    if f.ctx.p != g.ctx.p:
        raise ValueError(f"context mismatch: p={f.ctx.p} vs p={g.ctx.p}")


def sp_add(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Coefficientwise sum; terms cancelling to zero are dropped."""
    _check_same_ctx(f, g)
    terms = dict(f.terms)
    for e, c in g.terms.items():
        prev = terms.get(e)
        terms[e] = c if prev is None else prev + c
    return SkewPoly(f.ctx, terms)


def sp_neg(f: SkewPoly) -> SkewPoly:
    return SkewPoly(f.ctx, {e: -c for e, c in f.terms.items()})


def sp_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Exact twisted product in the quotient ring.

    Termwise: (a x^s) * (b x^k) = a sigma^s(b) x^(s+k), exponents mod p-1.
    """
    _check_same_ctx(f, g)
    n = f.ctx.p - 1
    acc = {}
    for ef, af in f.terms.items():
        for eg, bg in g.terms.items():
            e = (ef + eg) % n
            term = cyc_mul(af, cyc_sigma(bg, ef))
            prev = acc.get(e)
            acc[e] = term if prev is None else prev + term
    return SkewPoly(f.ctx, acc)


def sumset(f: SkewPoly, g: SkewPoly) -> SupportSet:
    """All pairwise exponent sums mod p-1: a superset of supp(f * g)."""
    n = f.ctx.p - 1
    return SupportSet((ef + eg for ef in f.terms for eg in g.terms), modulus=n)


def sp_evaluate(f: SkewPoly, b: CycElem) -> CycElem:
    """Apply the linear map sum a_e sigma^e to b."""
    acc = f.ctx.zero
    for e, c in f.sorted_terms():
        acc = acc + cyc_mul(c, cyc_sigma(b, e))
    return acc


def power_points(ctx, count: int):
    """The standard evaluation points v_1^0, v_1^1, ..., v_1^(count-1)."""
    return [power_of_v1(ctx, i) for i in range(count)]


def batch_evaluate_via_matrices(ctx, points, inner, outer, counter=None):
    """Evaluate the product map at many points from the factor matrices alone.

    `points` holds t rows of normal coordinates; `inner` and `outer` are the
    matrices of the first-applied and second-applied maps (RatMatrix or raw
    rows).  Row i of points * inner * outer is exactly the normal-coordinate
    vector of the i-th evaluation, so the product polynomial is never formed
    termwise.  Multiplications run through the pluggable kernel and are
    charged to `counter`.
    """
    inner_rows = getattr(inner, "rows", inner)
    outer_rows = getattr(outer, "rows", outer)
    n = ctx.p - 1
    if len(inner_rows) != n or len(outer_rows) != n:
        raise ValueError("matrix dimension does not match the context")
    if any(len(row) != n for row in points):
        raise ValueError("point rows must have p-1 coordinates")
    mid = rect_multiply(list(points), inner_rows, counter)
    rows = rect_multiply(mid, outer_rows, counter)
    return [from_normal_coords(ctx, row) for row in rows]


def interpolate_known_support(points_values, support: SupportSet, ctx=None):
    """Recover the unique polynomial with supp(f) inside `support` from its
    values at v_1^0 .. v_1^(t-1), where t = len(support).

    `points_values` is a list of (index, value) pairs with indices exactly
    0..t-1 in any order.  Solves the t x t node-power system exactly; the
    nodes v_(e+1) are pairwise distinct, so a singular system signals an
    index bug, not a data condition.
    """
    pairs = sorted(points_values, key=lambda pv: pv[0])
    t = len(support)
    if len(pairs) != t:
        raise ValueError(f"need {t} evaluations for a support of size {t}, got {len(pairs)}")
    if ctx is None:
        if not pairs:
            raise ValueError("cannot infer the context from an empty input")
        ctx = pairs[0][1].ctx
    if t == 0:
        return SkewPoly.zero(ctx)
    if [i for i, _ in pairs] != list(range(t)):
        raise ValueError("evaluation indices must be exactly 0..t-1")
    exps = list(support)
    if exps[-1] > ctx.p - 2:
        raise ValueError("support exponents must lie in {0..p-2}")

    nodes = [ctx.beta_power(ctx.v_exponent(e + 1)) for e in exps]
    rows = []
    cur = [ctx.one] * t
    for i in range(t):
        rows.append(cur)
        if i + 1 < t:
            cur = [cyc_mul(cur[j], nodes[j]) for j in range(t)]
    rhs = [value for _, value in pairs]
    try:
        coeffs = linalg.solve_square(rows, rhs)
    except linalg.SingularMatrixError as exc:
        raise InterpolationError("node-power system is singular; support indexing is broken") from exc
    return SkewPoly(ctx, dict(zip(exps, coeffs)))


def sparse_interpolate(values, bound: int, ctx=None) -> SkewPoly:
    """Recover f from 2*bound evaluations a_l = f(v_1^l), given #f <= bound.

    Steps: (1) the bound x bound Hankel-ordered window of the value sequence
    has exact rank t = #f, computed by elimination over Q(beta); (2) the
    t x t window solves for the monic locator polynomial whose roots are the
    support nodes; (3) roots are found by evaluating the locator at every
    candidate v_1 .. v_(p-1); (4) the coefficients come from the known-support
    solve on the first t values.  With the bound below the true sparsity the
    root hunt usually falls short and InterpolationError is raised; callers
    that guess bounds must treat that as a failed guess.
    """
    values = list(values)
    if ctx is None:
        if not values:
            raise ValueError("cannot infer the context from an empty input")
        ctx = values[0].ctx
    p = ctx.p
    if not 1 <= bound <= p - 1:
        raise ValueError(f"sparsity bound must be in 1..{p - 1}, got {bound}")
    if len(values) < 2 * bound:
        raise ValueError(f"need {2 * bound} evaluations, got {len(values)}")
    a = values[: 2 * bound]

    window = [[a[bound - 1 - i + j] for j in range(bound)] for i in range(bound)]
    t = linalg.matrix_rank(window)
    if t == 0:
        return SkewPoly.zero(ctx)

    system = [[a[t - 1 - i + j] for j in range(t)] for i in range(t)]
    rhs = [-a[2 * t - 1 - i] for i in range(t)]
    try:
        lam = linalg.solve_square(system, rhs)
    except linalg.SingularMatrixError as exc:
        raise InterpolationError("locator system is singular; sparsity bound too small?") from exc

    roots = []
    for m in range(1, p):
        vm = ctx.beta_power(ctx.pow_r[m - 1])  # v_m
        acc = ctx.one
        for k in range(t - 1, -1, -1):
            acc = cyc_mul(acc, vm) + lam[k]
        if not acc:
            roots.append(m)
    if len(roots) != t:
        raise InterpolationError(
            f"locator has {len(roots)} roots among the v_i but rank is {t}; "
            "sparsity bound below the true sparsity or an arithmetic bug")

    support = SupportSet(m - 1 for m in roots)
    return interpolate_known_support(list(enumerate(a[:t])), support, ctx=ctx)
