"""Rectangular exact matrix kernel and the pluggable multiply hook.

The evaluation stage of the structured multiplication algorithms funnels
through `rect_multiply`, so a faster inner kernel can be swapped in without
touching any algorithm.  The shipped kernel is the schoolbook one; any
replacement must be exact and must report the same nominal m*n*k
multiplication count (that count is the asserted cost model).
"""


class OpCounter:
    """Accumulates the nominal rational-multiplication count of the hook."""

    __slots__ = ("muls",)

    def __init__(self):
        self.muls = 0

    def __repr__(self):
        return f"OpCounter(muls={self.muls})"


def cubic_multiply(x_rows, y_rows, counter=None):
    """Schoolbook product of row-major matrices: (m x n) * (n x k).

    Returns a list of tuples.  Charges m*n*k multiplications to `counter`.
    """
    n = len(y_rows)
    if any(len(row) != n for row in x_rows):
        raise ValueError("inner dimensions do not match")
    y_cols = list(zip(*y_rows))
    out = [tuple(sum(a * b for a, b in zip(xrow, col)) for col in y_cols)
           for xrow in x_rows]
    if counter is not None:
        counter.muls += len(x_rows) * n * len(y_cols)
    return out


_multiply_hook = cubic_multiply


def get_multiply_hook():
    return _multiply_hook


def set_multiply_hook(hook):
    """Install a replacement rectangular kernel; returns the previous one."""
    global _multiply_hook
    previous = _multiply_hook
    _multiply_hook = hook
    return previous


def rect_multiply(x_rows, y_rows, counter=None):
    """Multiply through whichever kernel is currently installed."""
    return _multiply_hook(x_rows, y_rows, counter)
