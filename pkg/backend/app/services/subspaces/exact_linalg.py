"""
Exact arithmetic for integer-amplitude vectors
Gaussian-integer inner products and rational row reduction
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

GaussianInt = Tuple[int, int]


def as_gaussian_integers(vector) -> Optional[List[GaussianInt]]:
    """(re, im) integer pairs, or None if some amplitude is not a Gaussian integer"""
    arr = np.asarray(vector, dtype=complex).reshape(-1)
    re = np.round(arr.real)
    im = np.round(arr.imag)
    if not (np.array_equal(re, arr.real) and np.array_equal(im, arr.imag)):
        return None
    return [(int(a), int(b)) for a, b in zip(re, im)]


def inner(x: Sequence[GaussianInt], y: Sequence[GaussianInt]) -> GaussianInt:
    """<x|y> with conjugation on x"""
    re = im = 0
    for (a, b), (c, d) in zip(x, y):
        re += a * c + b * d
        im += a * d - b * c
    return re, im


def squared_norm(x: Sequence[GaussianInt]) -> int:
    return sum(a * a + b * b for a, b in x)


def rank_rational(rows: Sequence[Sequence]) -> int:
    """Rank by fraction-exact Gaussian elimination (complex entries as pairs of Fractions)"""
    m = [[_to_pair(v) for v in row] for row in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    piv_r = 0
    for piv_c in range(n_cols):
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c] != (0, 0):
                break
        else:
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
        fp = m[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = m[r][piv_c]
            if fr == (0, 0):
                continue
            frp = _div(fr, fp)
            for c in range(piv_c, n_cols):
                m[r][c] = _sub(m[r][c], _mul(m[piv_r][c], frp))
        piv_r += 1
        if piv_r == n_rows:
            break
    return piv_r


def gram_rank_exact(kets: Sequence) -> int:
    """Rank of the Gram matrix of Gaussian-integer kets"""
    gaussian = [as_gaussian_integers(k) for k in kets]
    if any(g is None for g in gaussian):
        raise ValueError("gram_rank_exact needs Gaussian-integer amplitudes")
    gram = [[inner(x, y) for y in gaussian] for x in gaussian]
    return rank_rational(gram)


def _to_pair(v) -> Tuple[Fraction, Fraction]:
    if isinstance(v, tuple):
        return Fraction(v[0]), Fraction(v[1])
    z = complex(v)
    return Fraction(z.real), Fraction(z.imag)


def _mul(x, y):
    return x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0]


def _sub(x, y):
    return x[0] - y[0], x[1] - y[1]


def _div(x, y):
    den = y[0] * y[0] + y[1] * y[1]
    return (x[0] * y[0] + x[1] * y[1]) / den, (x[1] * y[0] - x[0] * y[1]) / den
