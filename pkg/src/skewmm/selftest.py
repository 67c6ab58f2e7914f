"""Built-in invariant suite behind `skewmm selftest`.

Runs the library's structural identities at p in {3, 5, 7, 11, 13} with
fixed seeds, prints one line per property plus the empirically resolved
conventions (composition orientation of the transform, conjugation side of
the layer-0 closed form), and reports the first failure by name.  Exact
arithmetic means every check is a strict equality.
"""

from __future__ import annotations

import random

from . import matmul
from .cyclotomic import cyc_mul, cyc_scale, shared_ctx
from .skewpoly import SkewPoly, sp_mul, sparse_interpolate, sp_evaluate, power_points
from .skewstructure import (antidiag_perm, build_AB_perm, build_P, build_Q,
                            build_X, build_Y, l0_characterization_check,
                            random_layered, skew_sparsity, y_power_row)
from .transform import (Orientation, RatMatrix, build_V, build_W, mat_to_skew,
                        phi_orientation, skew_to_mat)

DEFAULT_PRIMES = (3, 5, 7, 11, 13)


def _rand_matrix(p, rng, bound=9):
    n = p - 1
    return RatMatrix(p, [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])


def _rand_elem(ctx, rng, bound=9):
    coords = [rng.randint(-bound, bound) for _ in range(ctx.p - 1)]
    if not any(coords):
        coords[0] = 1
    return ctx.elem(coords)


def _rand_poly(ctx, rng, sparsity):
    exps = rng.sample(range(ctx.p - 1), sparsity)
    return SkewPoly(ctx, {e: _rand_elem(ctx, rng) for e in exps})


def check_vw_identity(primes=DEFAULT_PRIMES) -> bool:
    """V W = p I over the field, entry by entry."""
    for p in primes:
        ctx = shared_ctx(p)
        V, W = build_V(ctx), build_W(ctx)
        n = p - 1
        for i in range(n):
            for j in range(n):
                acc = ctx.zero
                for k in range(n):
                    acc = acc + cyc_mul(V[i][k], W[k][j])
                want = cyc_scale(ctx.one, p) if i == j else ctx.zero
                if acc != want:
                    return False
    return True


def check_transform_bijection(primes=DEFAULT_PRIMES, cases=8) -> bool:
    """Roundtrips in both directions plus multiplicativity in the probed order."""
    rng = random.Random(2024)
    for p in primes:
        ctx = shared_ctx(p)
        ori = phi_orientation(ctx)
        for _ in range(cases):
            C = _rand_matrix(p, rng)
            if skew_to_mat(mat_to_skew(C, ctx)) != C:
                return False
            f = _rand_poly(ctx, rng, rng.randint(1, p - 1))
            g = _rand_poly(ctx, rng, rng.randint(1, p - 1))
            if mat_to_skew(skew_to_mat(f), ctx) != f:
                return False
            mf, mg = skew_to_mat(f), skew_to_mat(g)
            prod = mg @ mf if ori is Orientation.REVERSED else mf @ mg
            if skew_to_mat(sp_mul(f, g)) != prod:
                return False
    return True


def check_generator_identities(primes=(3, 5, 7, 11)) -> bool:
    """Power sum of Y, the permutation-pair product, and the closed row form."""
    for p in primes:
        ctx = shared_ctx(p)
        Y = build_Y(ctx)
        acc = RatMatrix.zeros(p)
        powers = [RatMatrix.identity(p)]
        for _ in range(p - 1):
            powers.append(powers[-1] @ Y)
            acc = acc + powers[-1]
        if acc != RatMatrix.identity(p).scale(-1):
            return False
        A, B = build_AB_perm(ctx)
        if A @ B != antidiag_perm(p):
            return False
        for j in range(p):
            for i in range(1, p):
                if y_power_row(ctx, j, i) != powers[j].rows[ctx.s(i) - 1]:
                    return False
    return True


def resolve_conjugation_side(p=7, seed=99) -> str:
    """Which conjugation by the permutation A produces layer-0 matrices.

    Returns "A^-1 (P - Q) A" or "A (P - Q) A^-1"; raises if neither form
    matches, which would mean the closed form itself is broken.
    """
    ctx = shared_ctx(p)
    rng = random.Random(seed)
    c = [rng.randint(-9, 9) for _ in range(p - 1)]
    A, _ = build_AB_perm(ctx)
    At = A.transpose()
    if A @ At != RatMatrix.identity(p):
        raise RuntimeError("permutation matrix A is not orthogonal")
    M = skew_to_mat(SkewPoly(ctx, {0: ctx.elem(c)}))
    PQ = build_P(c) - build_Q(c)
    if At @ PQ @ A == M:
        return "A^-1 (P - Q) A"
    if A @ PQ @ At == M:
        return "A (P - Q) A^-1"
    raise RuntimeError("neither conjugation side matches the layer-0 element")


def check_l0_characterization(primes=(3, 5, 7), cases=6) -> bool:
    rng = random.Random(7)
    for p in primes:
        ctx = shared_ctx(p)
        for _ in range(cases):
            c = [rng.randint(-9, 9) for _ in range(p - 1)]
            lhs, rhs = l0_characterization_check(ctx, c)
            if lhs != rhs:
                return False
    return True


def check_multiplication(primes=DEFAULT_PRIMES, cases=4) -> bool:
    """det_mul and mc_mul against the schoolbook oracle, dense and layered."""
    rng = random.Random(505)
    for p in primes:
        ctx = shared_ctx(p)
        for _ in range(cases):
            A = _rand_matrix(p, rng)
            B = _rand_matrix(p, rng)
            want = matmul.naive_mul(A, B)
            got, _ = matmul.det_mul(A, B)
            if got != want:
                return False
            layers_a = set(rng.sample(range(p - 1), rng.randint(1, p - 1)))
            layers_b = set(rng.sample(range(p - 1), rng.randint(1, p - 1)))
            La = random_layered(ctx, layers_a, rng.getrandbits(32))
            Lb = random_layered(ctx, layers_b, rng.getrandbits(32))
            got, _ = matmul.det_mul(La, Lb)
            if got != matmul.naive_mul(La, Lb):
                return False
        A = _rand_matrix(p, rng)
        B = _rand_matrix(p, rng)
        got, report = matmul.mc_mul(A, B, "1/20", rng.getrandbits(32))
        if report.fallback or got != matmul.naive_mul(A, B):
            return False
    return True


def check_sparse_interpolation(p=13, cases=6) -> bool:
    rng = random.Random(31337)
    ctx = shared_ctx(p)
    for _ in range(cases):
        t = rng.randint(0, 6)
        f = _rand_poly(ctx, rng, t) if t else SkewPoly.zero(ctx)
        bound = rng.randint(max(t, 1), 8)
        values = [sp_evaluate(f, pt) for pt in power_points(ctx, 2 * bound)]
        if sparse_interpolate(values, bound, ctx=ctx) != f:
            return False
    return True


def check_sparsity_reporting(p=7) -> bool:
    ctx = shared_ctx(p)
    if skew_sparsity(RatMatrix.identity(p)) != (1, {0}):
        return False
    if skew_sparsity(RatMatrix.zeros(p)) != (0, set()):
        return False
    X = build_X(ctx)
    return skew_sparsity(X @ X @ X) == (1, {3})


def run_selftest(stream=None, primes=DEFAULT_PRIMES):
    """Run every property; returns (all_ok, first_failure_name)."""

    def emit(line):
        if stream is not None:
            print(line, file=stream)

    prime_list = "{" + ", ".join(str(p) for p in primes) + "}"
    checks = [
        (f"VW = pI verified for p in {prime_list}", lambda: check_vw_identity(primes)),
        ("transform bijection, linearity partner checks and multiplicativity",
         lambda: check_transform_bijection(primes)),
        ("generator identities: sum of Y powers, permutation pair, row closed form",
         lambda: check_generator_identities()),
        ("layer-0 closed-form identity", check_l0_characterization),
        ("sparse interpolation roundtrip", check_sparse_interpolation),
        ("skew-sparsity reporting", check_sparsity_reporting),
        ("det/mc multiplication vs schoolbook oracle", check_multiplication),
    ]
    for name, fn in checks:
        if not fn():
            emit(f"FAIL: {name}")
            return False, name
        emit(f"ok: {name}")

    orientations = {phi_orientation(shared_ctx(p)).value for p in primes}
    if len(orientations) != 1:
        emit("FAIL: transform orientation differs across primes")
        return False, "transform orientation consistency"
    emit(f"phi orientation: {orientations.pop()} "
         "(matrix of f*g equals matrix(g) @ matrix(f) when 'reversed')")
    try:
        side = resolve_conjugation_side()
    except RuntimeError as exc:
        emit(f"FAIL: layer-0 conjugation side ({exc})")
        return False, "layer-0 conjugation side"
    emit(f"layer-0 conjugation side: {side}")
    return True, None
