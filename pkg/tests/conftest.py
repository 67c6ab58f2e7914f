"""Shared helpers: seeded random field elements, polynomials and matrices."""

import random

from skewmm import RatMatrix, SkewPoly


def rand_elem(ctx, rng, bound=9):
    """Random element with integer coordinates, never the zero element."""
    coords = [rng.randint(-bound, bound) for _ in range(ctx.p - 1)]
    if not any(coords):
        coords[rng.randrange(ctx.p - 1)] = rng.choice([-1, 1])
    return ctx.elem(coords)


def rand_poly(ctx, rng, sparsity, bound=9):
    """Random polynomial with exactly the given sparsity."""
    if sparsity == 0:
        return SkewPoly.zero(ctx)
    exps = rng.sample(range(ctx.p - 1), sparsity)
    return SkewPoly(ctx, {e: rand_elem(ctx, rng, bound) for e in exps})


def rand_matrix(p, rng, bound=9):
    """Dense random integer matrix."""
    n = p - 1
    return RatMatrix(p, [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])


def rand_rational_matrix(p, rng, bound=9, den_bound=7):
    """Dense random matrix with non-trivial denominators."""
    from skewmm.rational import Rat

    n = p - 1
    return RatMatrix(p, [[Rat(rng.randint(-bound, bound), rng.randint(1, den_bound))
                          for _ in range(n)] for _ in range(n)])


def seeded(seed):
    return random.Random(seed)
