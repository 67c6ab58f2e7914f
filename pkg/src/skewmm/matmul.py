"""Matrix multiplication through sparse skew polynomials.

Three routes to the same exact product of (p-1) x (p-1) rational matrices:

  naive_mul  schoolbook ground truth (never routed through the pluggable
             kernel, so it stays independent of whatever is benchmarked);
  det_mul    deterministic: pull both factors back to polynomials, bound the
             product's support by the exponent sumset of size t, evaluate
             the product map at t points straight from the input matrices,
             interpolate on the known support, push forward;
  mc_mul     Monte Carlo: guess the product's sparsity by doubling a bound,
             interpolate with the locator-based routine, and accept the
             first candidate that passes randomized verification.

Randomness is pinned to Python's Mersenne Twister (random.Random) seeded
with an explicit 64-bit unsigned seed; verification vectors consume the
bits of one getrandbits(p-1) word most-significant-bit first.  Identical
(inputs, seed) give bit-identical outputs, reports and counters.
"""

from __future__ import annotations

import enum
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import point_coords, shared_ctx
from .multiply import OpCounter, cubic_multiply
from .skewpoly import (InterpolationError, batch_evaluate_via_matrices,
                       interpolate_known_support, sparse_interpolate, sumset)
from .transform import Orientation, RatMatrix, mat_to_skew, phi_orientation, skew_to_mat

MAX_SEED = 2 ** 64


class Algorithm(enum.Enum):
    NAIVE = "naive"
    DETERMINISTIC = "det"
    MONTE_CARLO = "mc"


class FreivaldsResult(enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not equal"


@dataclass
class MulReport:
    """Instrumentation attached to every multiplication.

    rational_mul_count is the nominal multiplication count charged by the
    rectangular kernel during the evaluation stage (for naive_mul: the whole
    product).  final_T is the last sparsity bound tried by mc_mul; fallback
    flags the cap-and-verify-failed escape hatch, which indicates a bug
    rather than an input condition.  wall_time is measured, never asserted.
    """

    algorithm: Algorithm
    t_used: int = 0
    iterations: int = 0
    rational_mul_count: int = 0
    wall_time: float = 0.0
    final_T: int = 0
    fallback: bool = False


def _check_pair(a: RatMatrix, b: RatMatrix):
    if not isinstance(a, RatMatrix) or not isinstance(b, RatMatrix):
        raise TypeError("expected RatMatrix operands")
    if a.p != b.p:
        raise ValueError(f"dimension mismatch: p={a.p} vs p={b.p}")


def _check_seed(seed):
    if not isinstance(seed, int) or not 0 <= seed < MAX_SEED:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")


def _check_probability(value, name):
    prob = Fraction(value)
    if not 0 < prob < 1:
        raise ValueError(f"{name} must lie strictly between 0 and 1, got {value!r}")
    return prob


def rounds_for(mu) -> int:
    """Number of verification rounds: the least k with 2^k >= 1/mu, exactly."""
    prob = _check_probability(mu, "mu")
    num, den = prob.numerator, prob.denominator  # 1/mu = den/num
    k = 0
    while (num << k) < den:
        k += 1
    return k


def _mat_vec(rows, vec):
    return [sum(a * b for a, b in zip(row, vec) if b) for row in rows]


def naive_mul(A: RatMatrix, B: RatMatrix, counter: OpCounter | None = None) -> RatMatrix:
    """Exact schoolbook product; the oracle every other route is checked against."""
    _check_pair(A, B)
    return RatMatrix(A.p, cubic_multiply(A.rows, B.rows, counter))


def _ordered_factors(ctx, A, B):
    # the product map applies one factor's map first; which one is fixed by
    # the orientation probe, so the evaluation rows come out as those of A*B
    if phi_orientation(ctx) is Orientation.REVERSED:
        return A, B
    return B, A


def det_mul(A: RatMatrix, B: RatMatrix) -> tuple[RatMatrix, MulReport]:
    """Deterministic skew-sparse product: always exactly equals naive_mul.

    The product polynomial's support is covered by the exponent sumset of
    the two pullbacks; with t its size, t evaluations of the product map are
    read off t x (p-1) times (p-1) x (p-1) rectangular products of the input
    matrices themselves, and one known-support interpolation reconstructs
    the polynomial, which maps back to the answer.
    """
    _check_pair(A, B)
    start = time.perf_counter()
    ctx = shared_ctx(A.p)
    f_a = mat_to_skew(A, ctx)
    f_b = mat_to_skew(B, ctx)
    support = sumset(f_a, f_b)
    t = len(support)
    counter = OpCounter()
    if t == 0:
        report = MulReport(Algorithm.DETERMINISTIC, t_used=0,
                           wall_time=time.perf_counter() - start)
        return RatMatrix.zeros(A.p), report
    inner, outer = _ordered_factors(ctx, A, B)
    points = [point_coords(ctx, i) for i in range(t)]
    values = batch_evaluate_via_matrices(ctx, points, inner, outer, counter)
    product_poly = interpolate_known_support(list(enumerate(values)), support, ctx=ctx)
    result = skew_to_mat(product_poly)
    report = MulReport(Algorithm.DETERMINISTIC, t_used=t,
                       rational_mul_count=counter.muls,
                       wall_time=time.perf_counter() - start)
    return result, report


def freivalds(M: RatMatrix, A: RatMatrix, B: RatMatrix, mu, seed: int) -> FreivaldsResult:
    """Randomized check of M = A*B with one-sided error at most mu.

    Runs ceil(log2(1/mu)) independent rounds; each draws y uniformly from
    {0,1}^(p-1) and compares M y with A (B y) exactly.  A true product is
    always accepted; a wrong one survives each round with probability at
    most 1/2.
    """
    _check_pair(A, B)
    _check_pair(M, A)
    _check_seed(seed)
    k = rounds_for(mu)
    rng = random.Random(seed)
    n = A.p - 1
    for _ in range(k):
        word = rng.getrandbits(n)
        y = [(word >> (n - 1 - j)) & 1 for j in range(n)]
        my = _mat_vec(M.rows, y)
        aby = _mat_vec(A.rows, _mat_vec(B.rows, y))
        if my != aby:
            return FreivaldsResult.NOT_EQUAL
    return FreivaldsResult.EQUAL


def _ceil_log2(m: int) -> int:
    return (m - 1).bit_length() if m > 1 else 1


def mc_mul(A: RatMatrix, B: RatMatrix, nu, seed: int) -> tuple[RatMatrix, MulReport]:
    """Monte Carlo product: correct with probability at least 1 - nu.

    Doubles a sparsity bound T = 1, 2, 4, ... (capped at p-1): each round
    evaluates the product map at v_1^0 .. v_1^(2T-1) (reusing earlier
    values; only the new ones are computed), interpolates under the bound,
    and verifies the candidate with the randomized check at error budget
    nu / ceil(log2(p-1)).  An undersized bound either trips the
    interpolation's internal consistency errors or produces a candidate the
    verifier rejects; both double T.  If verification still fails at the cap
    -- where interpolation is unconditionally exact -- the schoolbook
    product is returned with the report flagged, surfacing the bug loudly
    while keeping the function total.
    """
    _check_pair(A, B)
    nu_frac = _check_probability(nu, "nu")
    _check_seed(seed)
    start = time.perf_counter()
    ctx = shared_ctx(A.p)
    n = A.p - 1
    # the doubling loop evaluates the product map straight from the input
    # matrices, so the polynomial pullbacks themselves are never needed
    inner, outer = _ordered_factors(ctx, A, B)
    mu = nu_frac / _ceil_log2(n)
    master = random.Random(seed)
    counter = OpCounter()
    values = []
    T = 1
    iterations = 0
    while True:
        iterations += 1
        if len(values) < 2 * T:
            points = [point_coords(ctx, i) for i in range(len(values), 2 * T)]
            values.extend(batch_evaluate_via_matrices(ctx, points, inner, outer, counter))
        try:
            candidate_poly = sparse_interpolate(values[: 2 * T], T, ctx=ctx)
            candidate = skew_to_mat(candidate_poly)
        except InterpolationError:
            candidate_poly = None
            candidate = None
        round_seed = master.getrandbits(64)
        if candidate is not None and freivalds(candidate, A, B, mu, round_seed) is FreivaldsResult.EQUAL:
            report = MulReport(Algorithm.MONTE_CARLO, t_used=candidate_poly.sparsity,
                               iterations=iterations, rational_mul_count=counter.muls,
                               wall_time=time.perf_counter() - start, final_T=T)
            return candidate, report
        if T == n:
            result = naive_mul(A, B)
            report = MulReport(Algorithm.MONTE_CARLO, t_used=0, iterations=iterations,
                               rational_mul_count=counter.muls,
                               wall_time=time.perf_counter() - start,
                               final_T=T, fallback=True)
            return result, report
        T = min(2 * T, n)
