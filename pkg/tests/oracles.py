"""Brute-force reference computations for the test suite.

Nothing here calls the library's linear algebra: matrices are pulled out
entry by entry and reduced with a plain elimination, either mod p or over
Fraction. The point is independence, not speed, so keep inputs tiny.
"""

from fractions import Fraction
from itertools import product as cartesian

import numpy as np


def _entry(x, p):
    x = Fraction(x) if not isinstance(x, (int, np.integer)) else int(x)
    if p is None:
        return Fraction(x)
    if isinstance(x, Fraction):
        return x.numerator * pow(x.denominator, -1, p) % p
    return x % p


def plain(m, p):
    """Matrix as nested lists of ints mod p (or Fractions when p is None)."""
    return [[_entry(x, p) for x in row] for row in np.asarray(m)]


def rank(rows, p):
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p) if p else 1 / rows[r][c]
        rows[r] = [(x * inv) % p if p else x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                if p:
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
                else:
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def field_p(F):
    return F.p if F.is_prime else None


# -- algebras ------------------------------------------------------------------------------


def count_paths(vertices, arrows, relations, bound=40):
    """Number of relation-free paths (trivial ones included) in a monomial bound quiver."""
    rels = [tuple(r) for r in relations]

    def ok(path):
        return not any(path[i:i + len(r)] == r for r in rels for i in range(len(path) - len(r) + 1))

    total = len(vertices)
    level = [(lab,) for _, _, lab in arrows]
    ends = {lab: (s, t) for s, t, lab in arrows}
    length = 1
    while level:
        assert length <= bound, "path count did not terminate"
        total += len(level)
        level = [p + (lab,) for p in level for _, _, lab in arrows
                 if ends[lab][0] == ends[p[-1]][1] and ok(p + (lab,))]
        length += 1
    return total


def paths_between(vertices, arrows, relations, start, end):
    """Relation-free paths from ``start`` to ``end`` (trivial path when equal)."""
    rels = [tuple(r) for r in relations]
    ends = {lab: (s, t) for s, t, lab in arrows}
    n = 1 if start == end else 0
    level = [(lab,) for s, _, lab in arrows if s == start]
    while level:
        n += sum(1 for p in level if ends[p[-1]][1] == end)
        level = [p + (lab,) for p in level for _, _, lab in arrows
                 if ends[lab][0] == ends[p[-1]][1]
                 and not any((p + (lab,))[-len(r):] == r for r in rels if len(r) <= len(p) + 1)]
    return n


def associative(A):
    p = field_p(A.field)
    s = A.structure
    d = A.dim
    for i, j, k in cartesian(range(d), repeat=3):
        for out in range(d):
            lhs = sum(_entry(s[i, j, r], p) * _entry(s[r, k, out], p) for r in range(d))
            rhs = sum(_entry(s[j, k, r], p) * _entry(s[i, r, out], p) for r in range(d))
            if (lhs - rhs) % p if p else lhs != rhs:
                return False
    return True


# -- modules -------------------------------------------------------------------------------


def _basis_actions(m, p):
    return [plain(m.action(i), p) for i in range(m.algebra.dim)]


def hom_dim(m, n):
    """dim Hom_A(m, n): unknown f (dn x dm) with rho_n(b) f = f rho_m(b) for every basis b."""
    p = field_p(m.field)
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return 0
    am, an = _basis_actions(m, p), _basis_actions(n, p)
    rows = []
    for rm, rn in zip(am, an):
        for i in range(dn):
            for j in range(dm):
                row = [0] * (dn * dm)
                for k in range(dn):
                    row[k * dm + j] += rn[i][k]
                for k in range(dm):
                    row[i * dm + k] -= rm[k][j]
                rows.append([x % p for x in row] if p else row)
    return dn * dm - rank(rows, p)


def tensor_dim(mright, y):
    """dim mright (x)_B y from all balancing relations on all pure tensors."""
    p = field_p(y.field)
    dm, dy = mright.dim, y.dim
    am, ay = _basis_actions(mright, p), _basis_actions(y, p)
    rows = []
    for rm, ry in zip(am, ay):
        for i in range(dm):
            for j in range(dy):
                row = [0] * (dm * dy)
                for k in range(dm):
                    row[k * dy + j] += rm[k][i]
                for k in range(dy):
                    row[i * dy + k] -= ry[k][j]
                rows.append([x % p for x in row] if p else row)
    return dm * dy - rank(rows, p)


def ext1_dim(m, n):
    """dim Ext^1_A(m, n) as derivations A -> Hom_k(m, n) modulo inner ones."""
    A = m.algebra
    p = field_p(A.field)
    d, dm, dn = A.dim, m.dim, n.dim
    if dm == 0 or dn == 0:
        return 0
    s = [[[_entry(A.structure[i, j, r], p) for r in range(d)] for j in range(d)] for i in range(d)]
    am, an = _basis_actions(m, p), _basis_actions(n, p)
    size = dn * dm

    def var(b, i, j):
        return b * size + i * dm + j

    rows = []
    # delta(b_i b_j) = rho_n(b_i) delta(b_j) + delta(b_i) rho_m(b_j)
    for bi in range(d):
        for bj in range(d):
            for i in range(dn):
                for j in range(dm):
                    row = [0] * (d * size)
                    for r in range(d):
                        if s[bi][bj][r]:
                            row[var(r, i, j)] += s[bi][bj][r]
                    for k in range(dn):
                        if an[bi][i][k]:
                            row[var(bj, k, j)] -= an[bi][i][k]
                    for k in range(dm):
                        if am[bj][k][j]:
                            row[var(bi, i, k)] -= am[bj][k][j]
                    if any(row):
                        rows.append([x % p for x in row] if p else row)
    cocycles = d * size - rank(rows, p)
    inner = size - hom_dim(m, n)
    return cocycles - inner


def nakayama_dims(vertices, arrows, relations, v):
    """Dimension vector of the injective envelope of the simple at ``v``."""
    return [paths_between(vertices, arrows, relations, u, v) for u in vertices]
