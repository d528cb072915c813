"""Minimal projective resolutions and what is computed from them.

Index conventions: a resolution ``P_k -> ... -> P_0 -> M`` stores ``P_k`` at
position ``k``; the differential ``d_k: P_k -> P_{k-1}`` is recorded both as
a matrix and as components ``x_ij`` in ``e_u A e_v`` (the map ``P(u) -> P(v)``
is right multiplication by ``x_ij``). The Serre image degree is the position
at which the homology of the Nakayama-transformed resolution sits.
"""

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import CutoffExceeded, NotProjective
from .modrep import (
    LeftModule, _hstack, direct_sum, dual, hom_basis, indec_injectives, indec_projectives,
    is_isomorphic, quotient, regular_module, submodule, zero_module,
)

DEFAULT_CUTOFF = 32


class ChainComplex:
    """``modules[k]`` at position k; ``diffs[k]: modules[k] -> modules[k-1]`` (``diffs[0]`` is None)."""

    def __init__(self, modules, diffs):
        self.modules = list(modules)
        self.diffs = list(diffs)
        if self.diffs and self.diffs[0] is not None:
            raise ValueError("diffs[0] must be None")

    @property
    def field(self):
        return self.modules[0].field

    def __len__(self):
        return len(self.modules)

    def _d(self, k):
        if 1 <= k < len(self.modules):
            return self.diffs[k]
        return None

    def d_squared_zero(self):
        F = self.field
        for k in range(2, len(self.modules)):
            if not F.is_zero(F.matmul(self.diffs[k - 1], self.diffs[k])):
                return False
        return True

    def homology_dim(self, k):
        F = self.field
        d_out, d_in = self._d(k), self._d(k + 1)
        z = self.modules[k].dim - (F.rank(d_out) if d_out is not None and d_out.size else 0)
        b = F.rank(d_in) if d_in is not None and d_in.size else 0
        return z - b

    def homology_dims(self):
        return [self.homology_dim(k) for k in range(len(self.modules))]

    def homology(self, k):
        F = self.field
        C = self.modules[k]
        d_out, d_in = self._d(k), self._d(k + 1)
        if d_out is None or d_out.shape[0] == 0:
            Z, zrows = F.eye(C.dim), list(range(C.dim))
        else:
            Z, zrows = F.image_basis(F.kernel_basis(d_out))
        zmod = submodule(C, Z, zrows)
        if d_in is None:
            return zmod
        Bv, brows = F.image_basis(np.ascontiguousarray(d_in[zrows, :]))
        return quotient(zmod, Bv, brows)[0]


@dataclass
class ResolutionReport:
    complex: ChainComplex
    augmentation: np.ndarray
    vertices: list
    length: int = None  # None when the cutoff was hit
    exceeded: bool = False
    minimal: bool = True


class Resolution:
    """Lazily extended minimal projective resolution of one module."""

    def __init__(self, module):
        self.module = module
        A = module.algebra
        self.algebra = A
        self.projectives = indec_projectives(A)
        self.vertices = []  # vertex list of each P_k
        self.terms = []
        self.diffs = [None]  # diffs[k]: P_k -> P_{k-1}
        self.augmentation = None
        self.components = [None]  # components[k]: {(i, j): x_ij}
        self.syzygies = [module]  # syzygies[k] = image of d_k (syzygies[0] = M)
        self._incl = module.field.eye(module.dim)  # current syzygy -> P_{k-1} (or M)
        self.complete = module.dim == 0

    @property
    def length(self):
        """Index of the last nonzero term once complete (-1 for the zero module)."""
        return len(self.terms) - 1 if self.complete else None

    def extend_to(self, k):
        while not self.complete and len(self.terms) <= k:
            self._step()
        return self

    def _step(self):
        F = self.module.field
        omega = self.syzygies[-1]
        verts, cover = projective_cover(omega)
        P = direct_sum([self.projectives[v] for v in verts], self.algebra)
        d = F.matmul(self._incl, cover)
        pos = len(self.terms)
        self.terms.append(P)
        self.vertices.append(verts)
        if pos == 0:
            self.augmentation = d
        else:
            self.diffs.append(d)
            self.components.append(self._components(pos, d))
        K = F.kernel_basis(cover)
        if K.shape[1] == 0:
            self.complete = True
            return
        V, rows = F.image_basis(K)
        self.syzygies.append(submodule(P, V, rows))
        self._incl = V

    def _offsets(self, k):
        offs = [0]
        for v in self.vertices[k]:
            offs.append(offs[-1] + self.projectives[v].dim)
        return offs

    def _components(self, k, d):
        F = self.module.field
        src, tgt = self._offsets(k), self._offsets(k - 1)
        out = {}
        for j, u in enumerate(self.vertices[k]):
            pu = self.projectives[u]
            col = F.matmul(d[:, src[j]:src[j + 1]], pu.top_gen)
            for i, v in enumerate(self.vertices[k - 1]):
                c = col[tgt[i]:tgt[i + 1]]
                if not F.is_zero(c):
                    out[(i, j)] = F.matmul(self.projectives[v].ambient, c)
        return out

    def report(self, cutoff=DEFAULT_CUTOFF):
        self.extend_to(cutoff)
        n = len(self.terms)
        A = self.algebra
        mods = self.terms if n else [zero_module(A)]
        diffs = self.diffs[:max(n, 1)]
        cx = ChainComplex(mods, diffs)
        exceeded = not self.complete
        return ResolutionReport(
            cx, self.augmentation, [list(v) for v in self.vertices],
            length=None if exceeded else self.length, exceeded=exceeded,
            minimal=self.is_minimal())

    def is_minimal(self):
        """Every differential lands in the radical of its target."""
        for k in range(1, len(self.terms)):
            rad = radical_and_top(self.terms[k - 1])
            F = self.module.field
            if not F.in_span(rad.inclusion, self.diffs[k]):
                return False
        return True


def resolution(m):
    if "resolution" not in m._cache:
        m._cache["resolution"] = Resolution(m)
    return m._cache["resolution"]


def min_proj_resolution(m, cutoff=DEFAULT_CUTOFF):
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    return resolution(m).report(cutoff)


@dataclass
class RadicalTop:
    radical: LeftModule
    inclusion: np.ndarray
    top: LeftModule
    projection: np.ndarray


def radical_and_top(m):
    F, A = m.field, m.algebra
    if not A.has_vertex_data:
        from .errors import UnsupportedAlgebra
        raise UnsupportedAlgebra("radical needs vertex idempotents and radical generators")
    cols = [m.act(r) for r in A.radical]
    R, rows = F.image_basis(_hstack(F, cols, m.dim)) if cols else (F.zeros(m.dim, 0), [])
    top, proj = quotient(m, R, rows)
    return RadicalTop(submodule(m, R, rows), R, top, proj)


def projective_cover(m):
    """``(vertices, matrix)`` of a projective cover ``(+)_j P(v_j) -> m``."""
    F, A = m.field, m.algebra
    rt = radical_and_top(m)
    projs = indec_projectives(A)
    verts, blocks = [], []
    for v, (Vv, _) in enumerate(m.blocks):
        if Vv.shape[1] == 0:
            continue
        _, piv = F.rref(F.matmul(rt.projection, Vv))
        for c in piv:
            gen = Vv[:, c]
            P = projs[v]
            blk = F.zeros(m.dim, P.dim)
            for col in range(P.dim):
                blk[:, col] = m.apply(P.ambient[:, col], gen)
            verts.append(v)
            blocks.append(blk)
    return verts, _hstack(F, blocks, m.dim)


# -- Ext and Tor -----------------------------------------------------------------------


def _within(res, cutoff):
    """Complete with length at most ``cutoff``, whatever is already cached."""
    return res.complete and res.length <= cutoff


def _need(res, k, cutoff):
    """Make position ``k`` available, or prove everything from ``k`` on vanishes."""
    res.extend_to(min(k, cutoff))
    if k <= cutoff or _within(res, cutoff):
        return
    raise CutoffExceeded(f"resolution cut at {cutoff} before position {k}", cutoff)


def _hom_cochain(res, n, k):
    """Matrix of ``Hom(d_k, n): Hom(P_{k-1}, n) -> Hom(P_k, n)``; ``Hom(P(v), n) = e_v n``."""
    F = n.field
    blocks = n.blocks
    rows = [blocks[u][0].shape[1] for u in res.vertices[k]] if k < len(res.terms) else []
    cols = [blocks[v][0].shape[1] for v in res.vertices[k - 1]] if 0 < k <= len(res.terms) else []
    out = F.zeros(sum(rows), sum(cols))
    if not rows or not cols:
        return out
    ro, co = np.cumsum([0] + rows), np.cumsum([0] + cols)
    for (i, j), x in res.components[k].items():
        u, v = res.vertices[k][j], res.vertices[k - 1][i]
        out[ro[j]:ro[j + 1], co[i]:co[i + 1]] = F.chain(blocks[u][1], n.act(x), blocks[v][0])
    return out


def _hom_dims(res, n, k):
    if k >= len(res.terms):
        return 0
    return sum(n.blocks[u][0].shape[1] for u in res.vertices[k])


def _rank(F, a):
    return F.rank(a) if a.size else 0


def ext_dim(m, n, t, cutoff=DEFAULT_CUTOFF):
    from .modrep import same_algebra
    same_algebra(m, n)
    if t < 0:
        return 0
    res = resolution(m)
    _need(res, t + 1, cutoff)
    F = m.field
    if res.complete and t > res.length:
        return 0
    c_t = _hom_dims(res, n, t)
    r_out = _rank(F, _hom_cochain(res, n, t + 1))
    r_in = _rank(F, _hom_cochain(res, n, t)) if t >= 1 else 0
    return c_t - r_out - r_in


def ext_basis(m, n, t, cutoff=DEFAULT_CUTOFF):
    """Cocycles in ``Hom(P_t, n)`` (coordinates over ``(+)_j e_{v_j} n``) spanning Ext^t."""
    from .modrep import same_algebra
    same_algebra(m, n)
    F = m.field
    res = resolution(m)
    _need(res, t + 1, cutoff)
    c_t = _hom_dims(res, n, t)
    if c_t == 0:
        return []
    out = _hom_cochain(res, n, t + 1)
    Z = F.kernel_basis(out) if out.shape[0] else F.eye(c_t)
    B = _hom_cochain(res, n, t) if t >= 1 else F.zeros(c_t, 0)
    _, piv = F.rref(np.concatenate([B, Z], axis=1))
    nb = B.shape[1]
    return [Z[:, p - nb] for p in piv if p >= nb]


def ext_table(m, n, tmax, cutoff=DEFAULT_CUTOFF):
    return [ext_dim(m, n, t, cutoff) for t in range(tmax + 1)]


def _tor_chain(res, mright, k):
    """``mright (x)_B d_k``; ``mright (x)_B P(v) = mright e_v``."""
    F = mright.field
    blocks = mright.blocks
    cols = [blocks[u][0].shape[1] for u in res.vertices[k]] if k < len(res.terms) else []
    rows = [blocks[v][0].shape[1] for v in res.vertices[k - 1]] if 0 < k <= len(res.terms) else []
    out = F.zeros(sum(rows), sum(cols))
    if not rows or not cols:
        return out
    ro, co = np.cumsum([0] + rows), np.cumsum([0] + cols)
    for (i, j), x in res.components[k].items():
        u, v = res.vertices[k][j], res.vertices[k - 1][i]
        out[ro[i]:ro[i + 1], co[j]:co[j + 1]] = F.chain(blocks[v][1], mright.act(x), blocks[u][0])
    return out


def _check_tor_args(mright, y):
    from .errors import AlgebraMismatch
    if not mright.algebra.same_as(y.algebra.opposite()):
        raise AlgebraMismatch("Tor needs a right module over the algebra of y")


def tor_dim(mright, y, t, cutoff=DEFAULT_CUTOFF):
    _check_tor_args(mright, y)
    if t < 0:
        return 0
    res = resolution(y)
    _need(res, t + 1, cutoff)
    if res.complete and t > res.length:
        return 0
    F = y.field
    c_t = _hom_dims(res, mright, t)
    r_in = _rank(F, _tor_chain(res, mright, t + 1))
    r_out = _rank(F, _tor_chain(res, mright, t)) if t >= 1 else 0
    return c_t - r_in - r_out


def tor_module(n, y, t, cutoff=DEFAULT_CUTOFF):
    """``Tor_t^B(N, y)`` as a left A-module for a bimodule ``n``."""
    _check_tor_args(n.right, y)
    F = y.field
    res = resolution(y)
    _need(res, t + 1, cutoff)
    A = n.left.algebra

    def term(k):
        if k < 0 or k >= len(res.terms):
            return zero_module(A)
        parts = []
        for u in res.vertices[k]:
            V, _ = n.right.blocks[u]
            rows = F.image_basis(V)[1]
            parts.append(submodule(n.left, V, rows))
        return direct_sum(parts, A)

    mods = [term(k) for k in range(t + 2)]
    diffs = [None] + [_tor_chain(res, n.right, k) for k in range(1, t + 2)]
    return ChainComplex(mods, diffs).homology(t)


# -- Nakayama functor -----------------------------------------------------------------------


def is_projective(p):
    verts, _ = projective_cover(p)
    projs = indec_projectives(p.algebra)
    return sum(projs[v].dim for v in verts) == p.dim


def nakayama(p, must_be_projective=True):
    """``D Hom_A(p, A)`` as a left A-module."""
    F, A = p.field, p.algebra
    if must_be_projective and A.has_vertex_data and not is_projective(p):
        raise NotProjective("module is not projective")
    reg = regular_module(A)
    basis = hom_basis(p, reg)
    Aop = A.opposite()
    r = len(basis)
    if r == 0:
        return dual(zero_module(Aop))
    H = F.zeros(A.dim * p.dim, r)
    for k, h in enumerate(basis):
        H[:, k] = h.matrix.reshape(-1)
    gens = F.zeros(len(A.gens), r, r)
    for g, vec in enumerate(A.gens):
        R = A.right_mult(vec)
        moved = F.zeros(A.dim * p.dim, r)
        for k, h in enumerate(basis):
            moved[:, k] = F.matmul(R, h.matrix).reshape(-1)
        gens[g] = F.solve(H, moved)
    return dual(LeftModule(Aop, gens))


def nakayama_complex(res, upto=None):
    """Termwise Nakayama image of the stored resolution: ``I(v)`` for ``P(v)``."""
    F = res.module.field
    A = res.algebra
    injs = indec_injectives(A)
    n = len(res.terms) if upto is None else min(upto + 1, len(res.terms))
    mods = [direct_sum([injs[v] for v in res.vertices[k]], A) for k in range(n)]
    diffs = [None]
    for k in range(1, n):
        src = np.cumsum([0] + [injs[u].dim for u in res.vertices[k]])
        tgt = np.cumsum([0] + [injs[v].dim for v in res.vertices[k - 1]])
        d = F.zeros(int(tgt[-1]), int(src[-1]))
        for (i, j), x in res.components[k].items():
            u, v = res.vertices[k][j], res.vertices[k - 1][i]
            Iu, Iv = injs[u], injs[v]
            blk = F.matmul(A.left_mult(x), Iv.ambient)[Iu.ambient_rows, :]
            d[tgt[i]:tgt[i + 1], src[j]:src[j + 1]] = np.ascontiguousarray(blk.T)
        diffs.append(d)
    return ChainComplex(mods, diffs)


@dataclass
class SerreImage:
    source: LeftModule
    image: LeftModule
    degree: int
    complex: ChainComplex = dc_field(repr=False, default=None)


@dataclass
class NotAShiftedModule:
    source: LeftModule
    homology_dims: list

    def __str__(self):
        return f"homology of the Nakayama complex not concentrated: {self.homology_dims}"


def serre_image(x, cutoff=DEFAULT_CUTOFF):
    if x.dim == 0:
        raise ValueError("Serre image of the zero module")
    res = resolution(x)
    res.extend_to(cutoff)
    if not _within(res, cutoff):
        raise CutoffExceeded(f"projective resolution longer than cutoff {cutoff}", cutoff)
    cx = nakayama_complex(res)
    dims = cx.homology_dims()
    nz = [k for k, d in enumerate(dims) if d]
    if len(nz) != 1:
        return NotAShiftedModule(x, dims)
    return SerreImage(x, cx.homology(nz[0]), nz[0], cx)


# -- dimensions -------------------------------------------------------------------------------


def _semisimple(m):
    A = m.algebra
    return all(m.field.is_zero(m.act(r)) for r in A.radical)


def proj_dim(m, cutoff=DEFAULT_CUTOFF, seed=0, trials=8):
    """Projective dimension; ``math.inf`` when provably infinite.

    Infinite is proven when a syzygy is isomorphic to an earlier one, or
    when a semisimple syzygy leads back to a simple already being resolved.
    Raises ``CutoffExceeded`` when neither shortcut fires within ``cutoff``.
    """
    if m.dim == 0:
        return -1
    return _proj_dim(m, cutoff, seed, trials, set())


def _proj_dim(m, cutoff, seed, trials, active):
    res = resolution(m)
    for k in range(cutoff + 1):
        res.extend_to(k)
        if res.complete:
            if res.length > cutoff:
                break
            return res.length
        if len(res.syzygies) <= k + 1:
            continue
        omega = res.syzygies[k + 1]
        dv = omega.dim_vector()
        for j in range(1, k + 1):
            prev = res.syzygies[j]
            if prev.dim_vector() == dv and is_isomorphic(omega, prev, seed, trials).isomorphic:
                return math.inf
        if _semisimple(omega):
            worst = 0
            for v, mult in enumerate(dv):
                if mult == 0:
                    continue
                if v in active:
                    return math.inf
                worst = max(worst, _simple_pd(m.algebra, v, cutoff, seed, trials, active))
            if worst == math.inf or k + 1 + worst <= cutoff:
                return k + 1 + worst
            break
    raise CutoffExceeded(f"projective dimension undetermined within cutoff {cutoff}", cutoff)


def _simple_pd(A, v, cutoff, seed, trials, active):
    memo = A._cache.setdefault("simple_pd", {})
    if (v, cutoff) in memo:
        return memo[(v, cutoff)]
    from .modrep import simples
    active = active | {v}
    val = _proj_dim(simples(A)[v], cutoff, seed, trials, active)
    memo[(v, cutoff)] = val
    return val


def inj_dim(m, cutoff=DEFAULT_CUTOFF, seed=0, trials=8):
    return proj_dim(dual(m), cutoff, seed, trials)


@dataclass
class GorensteinDims:
    left: object  # int, math.inf, or None when the cutoff was hit
    right: object
    status: str  # "gorenstein" | "not-gorenstein" | "exceeded-cutoff"

    @property
    def is_gorenstein(self):
        return self.status == "gorenstein"

    def pair(self):
        return (self.left, self.right)


def _max_dim(mods, cutoff, seed, trials, fn):
    worst = -1
    for m in mods:
        try:
            d = fn(m, cutoff, seed, trials)
        except CutoffExceeded:
            return None
        worst = max(worst, d)
    return worst


def gorenstein(A, cutoff=DEFAULT_CUTOFF, seed=0, trials=8):
    """Injective dimensions of ``_A A`` and ``A_A``."""
    left = _max_dim(indec_projectives(A), cutoff, seed, trials, inj_dim)
    right = _max_dim(indec_injectives(A), cutoff, seed, trials, proj_dim)
    if left == math.inf or right == math.inf:
        status = "not-gorenstein"
    elif left is None or right is None:
        status = "exceeded-cutoff"
    else:
        status = "gorenstein"
    return GorensteinDims(left, right, status)
