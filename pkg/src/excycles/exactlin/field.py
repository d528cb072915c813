"""Exact dense linear algebra over Q or a prime field F_p.

Matrices are plain numpy arrays. Over Q the dtype is ``object`` and entries
are Python ``int`` (when integral) or ``fractions.Fraction``; over F_p the
dtype is ``int64`` holding residues in ``[0, p)``. Nothing here touches
floating point.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import NoSolution
from . import backend

_MAX_P = 2**31 - 1
_norm_vec = np.frompyfunc(backend._kernels_py._norm, 1, 1)


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: ``FieldSpec()`` is Q, ``FieldSpec("prime", 101)`` is F_101."""

    kind: str = "rational"
    p: int = 0

    def __post_init__(self):
        if self.kind == "rational":
            if self.p:
                raise ValueError("rational field takes no characteristic")
        elif self.kind == "prime":
            if not _is_prime(self.p) or self.p > _MAX_P:
                raise ValueError(f"p={self.p} must be a prime below 2**31")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text):
        text = text.strip().lower()
        if text in ("rational", "q", "qq"):
            return cls()
        for prefix in ("fp:", "f", "gf"):
            if text.startswith(prefix) and text[len(prefix):].isdigit():
                return cls("prime", int(text[len(prefix):]))
        raise ValueError(f"cannot parse field {text!r}; use 'rational' or 'fp:<p>'")

    def __str__(self):
        return "rational" if self.kind == "rational" else f"fp:{self.p}"

    @property
    def is_prime(self):
        return self.kind == "prime"

    @property
    def characteristic(self):
        return self.p

    @property
    def dtype(self):
        return np.int64 if self.is_prime else object

    # -- scalars ---------------------------------------------------------

    def scalar(self, x):
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, (np.integer,)):
            x = int(x)
        if self.is_prime:
            if isinstance(x, Fraction):
                den = x.denominator % self.p
                if den == 0:
                    raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
                return (x.numerator * pow(den, -1, self.p)) % self.p
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, int):
            return x
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def to_str(self, x):
        return str(self.scalar(x))

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_prime:
            return pow(int(x), -1, self.p)
        return backend._kernels_py._norm(Fraction(1) / x)

    def random_scalar(self, rng, bound=4):
        if self.is_prime:
            return rng.randrange(self.p)
        return rng.randint(-bound, bound)

    # -- construction ----------------------------------------------------

    def array(self, data):
        """Coerce nested sequences (ints, Fractions, 'p/q' strings) into a matrix."""
        arr = np.array(data, dtype=object)
        flat = [self.scalar(x) for x in arr.ravel()]
        out = np.empty(arr.shape, dtype=object)
        out.ravel()[:] = flat if flat else []
        if self.is_prime:
            return out.astype(np.int64)
        return out

    def zeros(self, *shape):
        if self.is_prime:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(0)
        return out

    def eye(self, n):
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = 1
        return out

    def reduce(self, a):
        """Bring an array produced by raw numpy arithmetic back into canonical form."""
        if self.is_prime:
            return np.asarray(a, dtype=np.int64) % self.p
        return a

    def normalize(self, a):
        if self.is_prime:
            return a % self.p
        if a.size == 0:
            return a
        return _norm_vec(a).astype(object)

    # -- arithmetic ------------------------------------------------------

    def matmul(self, a, b):
        if self.is_prime:
            inner = a.shape[-1] if a.ndim else 1
            if inner * (self.p - 1) ** 2 < 2**62:
                return (a @ b) % self.p
            return (a.astype(object) @ b.astype(object) % self.p).astype(np.int64)
        if a.shape[-1] == 0:
            return self.zeros(a.shape[0], b.shape[-1]) if b.ndim == 2 else self.zeros(a.shape[0])
        return a.dot(b)

    def chain(self, *mats):
        out = mats[0]
        for m in mats[1:]:
            out = self.matmul(out, m)
        return out

    def add(self, a, b):
        return (a + b) % self.p if self.is_prime else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.is_prime else a - b

    def neg(self, a):
        return (-a) % self.p if self.is_prime else -a

    def scale(self, c, a):
        if self.is_prime:
            return (int(c) * a) % self.p
        return c * a

    def kron(self, a, b):
        return self.reduce(np.kron(a, b)) if self.is_prime else np.kron(a, b)

    def is_zero(self, a):
        return not np.any(a != 0)

    def equal(self, a, b):
        return a.shape == b.shape and not np.any(a != b)

    # -- elimination -----------------------------------------------------

    def rref(self, a):
        """Reduced row echelon form and pivot columns (first-nonzero pivot rule)."""
        m, n = a.shape
        if self.is_prime:
            r = np.ascontiguousarray(a % self.p, dtype=np.int64)
            piv = backend.rref_modp(r, self.p)
            return r, list(piv)
        rows = [list(row) for row in a]
        piv = backend.rref_obj(rows, n)
        out = self.zeros(m, n)
        for i, row in enumerate(rows):
            out[i, :] = row
        return out, list(piv)

    def rank(self, a):
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def kernel_basis(self, a):
        """Columns spanning the null space; one per free column of the rref."""
        m, n = a.shape
        if m == 0:
            return self.eye(n)
        r, piv = self.rref(a)
        free = [j for j in range(n) if j not in set(piv)]
        k = self.zeros(n, len(free))
        for col, f in enumerate(free):
            k[f, col] = 1
            for row, pc in enumerate(piv):
                if r[row, f] != 0:
                    k[pc, col] = self.neg(r[row, f]) if self.is_prime else -r[row, f]
        return k

    def image_basis(self, a):
        """Column-space basis ``V`` in reduced column echelon form.

        Returns ``(V, rows)`` with ``V[rows] == I``; the coordinates of any
        vector ``w`` in the span are ``w[rows]``.
        """
        m = a.shape[0]
        if a.size == 0:
            return self.zeros(m, 0), []
        r, piv = self.rref(np.ascontiguousarray(a.T))
        return np.ascontiguousarray(r[: len(piv)].T), piv

    def solve(self, a, b):
        """A particular solution of ``a @ x == b``; raises ``NoSolution``."""
        vector = b.ndim == 1
        if vector:
            b = b.reshape(-1, 1)
        if a.shape[0] != b.shape[0]:
            raise ValueError("row count mismatch")
        n = a.shape[1]
        aug = np.concatenate([a, b], axis=1) if a.shape[0] else self.zeros(0, n + b.shape[1])
        r, piv = self.rref(aug)
        if piv and piv[-1] >= n:
            raise NoSolution("inconsistent linear system")
        x = self.zeros(n, b.shape[1])
        for row, pc in enumerate(piv):
            x[pc, :] = r[row, n:]
        return x[:, 0] if vector else x

    def inverse(self, a):
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("inverse of a non-square matrix")
        r, piv = self.rref(np.concatenate([a, self.eye(n)], axis=1))
        if len([p for p in piv if p < n]) < n:
            raise NoSolution("singular matrix")
        return np.ascontiguousarray(r[:, n:])

    def is_invertible(self, a):
        return a.shape[0] == a.shape[1] and self.rank(a) == a.shape[0]

    def in_span(self, basis, vecs):
        """True when every column of ``vecs`` lies in the column span of ``basis``."""
        if vecs.shape[1] == 0:
            return True
        if basis.shape[1] == 0:
            return self.is_zero(vecs)
        return self.rank(np.concatenate([basis, vecs], axis=1)) == self.rank(basis)


QQ = FieldSpec()


def rank(m, field=QQ):
    return field.rank(m)


def kernel_basis(m, field=QQ):
    return field.kernel_basis(m)


def solve(a, b, field=QQ):
    return field.solve(a, b)
