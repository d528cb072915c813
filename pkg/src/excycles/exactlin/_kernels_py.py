"""Pure-Python row-reduction kernels, used when the compiled module is absent.

Same contract and pivot order as ``_kernels.pyx``.
"""

from fractions import Fraction
from math import gcd, lcm

import numpy as np


def rref_modp(a, p):
    m, n = a.shape
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if len(others):
            a[others, c:] = (a[others, c:] - np.outer(a[others, c], a[r, c:]) % p) % p
        pivots.append(c)
        r += 1
    return pivots


def _norm(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def _integral(row):
    den = 1
    for x in row:
        if type(x) is Fraction:
            den = lcm(den, x.denominator)
    out = [int(x * den) for x in row]
    g = gcd(*out)
    if g > 1:
        out = [x // g for x in out]
    return out


def _unscale(row, pv):
    out = []
    for x in row:
        if x == 0:
            out.append(0)
        elif x % pv == 0:
            out.append(x // pv)
        else:
            out.append(Fraction(x, pv))
    return out


def rref_obj(rows, ncols):
    """Fraction-free Gauss-Jordan on integer-scaled rows, normalised at the end.

    The reduced form is unique, so this matches elimination over Fraction
    while keeping every intermediate an int with its content divided out.
    """
    m = len(rows)
    work = [_integral(row) for row in rows]
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if work[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            work[piv], work[r] = work[r], work[piv]
        prow = work[r]
        pv = prow[c]
        nz = [j for j in range(ncols) if prow[j] != 0]
        for i in range(m):
            if i == r:
                continue
            row = work[i]
            f = row[c]
            if f == 0:
                continue
            g = gcd(pv, f)
            a, b = pv // g, f // g
            if a != 1:
                row = [a * x for x in row]
            for j in nz:
                row[j] -= b * prow[j]
            h = gcd(*row)
            if h > 1:
                row = [x // h for x in row]
            work[i] = row
        pivots.append(c)
        r += 1
    for i, c in enumerate(pivots):
        rows[i] = _unscale(work[i], work[i][c])
    for i in range(len(pivots), m):
        rows[i] = [0] * ncols
    return pivots
