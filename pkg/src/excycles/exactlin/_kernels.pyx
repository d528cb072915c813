# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled row-reduction kernels.

Both routines reduce in place to reduced row echelon form using the
first-nonzero-row pivot rule and return the list of pivot columns.
The pure-Python twins in ``_kernels_py`` follow the same pivot order, so
results agree entry for entry.
"""

from fractions import Fraction
from math import gcd, lcm


cdef long long _inv_mod(long long a, long long p):
    cdef long long t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_modp(long long[:, ::1] a, long long p):
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, f, v, tmp
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = a[piv, j]
                a[piv, j] = a[r, j]
                a[r, j] = tmp
        inv = _inv_mod(a[r, c], p)
        if inv != 1:
            for j in range(c, n):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(m):
            if i == r:
                continue
            f = a[i, c]
            if f == 0:
                continue
            for j in range(c, n):
                if a[r, j] != 0:
                    v = a[i, j] - (f * a[r, j]) % p
                    if v < 0:
                        v += p
                    a[i, j] = v
        pivots.append(c)
        r += 1
    return pivots


cdef list _integral(list row):
    cdef object den = 1, g
    for x in row:
        if type(x) is Fraction:
            den = lcm(den, (<object>x).denominator)
    cdef list out = [int(x * den) for x in row]
    g = gcd(*out)
    if g > 1:
        out = [x // g for x in out]
    return out


cdef list _unscale(list row, object pv):
    cdef list out = []
    for x in row:
        if x == 0:
            out.append(0)
        elif x % pv == 0:
            out.append(x // pv)
        else:
            out.append(Fraction(x, pv))
    return out


def rref_obj(list rows, Py_ssize_t ncols):
    """Fraction-free Gauss-Jordan; see the pure-Python twin."""
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef list work = [_integral(<list>row) for row in rows]
    cdef list prow, row, nz
    cdef object pv, f, g, a, b, h
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if (<list>work[i])[c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            work[piv], work[r] = work[r], work[piv]
        prow = <list>work[r]
        pv = prow[c]
        nz = [j for j in range(ncols) if prow[j] != 0]
        for i in range(m):
            if i == r:
                continue
            row = <list>work[i]
            f = row[c]
            if f == 0:
                continue
            g = gcd(pv, f)
            a = pv // g
            b = f // g
            if a != 1:
                row = [a * x for x in row]
            for j in nz:
                row[j] = row[j] - b * prow[j]
            h = gcd(*row)
            if h > 1:
                row = [x // h for x in row]
            work[i] = row
        pivots.append(c)
        r += 1
    for i in range(len(pivots)):
        row = <list>work[i]
        rows[i] = _unscale(row, row[pivots[i]])
    for i in range(len(pivots), m):
        rows[i] = [0] * ncols
    return pivots
