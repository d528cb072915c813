"""Modules over structure-constant algebras.

A module stores one action matrix per algebra *generator*; the action of a
basis element is the product along its word (see ``Algebra.words``). Right
modules are left modules over ``opposite(A)`` and a bimodule is a pair of
those on one space.
"""

import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .algcore import opposite
from .errors import AlgebraMismatch, FieldMismatch, UnsupportedAlgebra


class LeftModule:
    def __init__(self, algebra, gens, name=None):
        self.algebra = algebra
        self.field = algebra.field
        self.gens = gens
        self.dim = gens.shape[1] if gens.ndim == 3 else 0
        if len(gens) != len(algebra.gens):
            raise ValueError(f"need {len(algebra.gens)} generator matrices, got {len(gens)}")
        self.name = name
        self._words = {}
        self._cache = {}

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<LeftModule{tag} dim={self.dim} over {self.algebra!r}>"

    @classmethod
    def from_actions(cls, algebra, actions, name=None):
        """Build from one matrix per basis element (as stored in module files)."""
        F = algebra.field
        d = actions.shape[1]
        gens = F.zeros(len(algebra.gens), d, d)
        for g, vec in enumerate(algebra.gens):
            gens[g] = _combine(F, vec, actions)
        mod = cls(algebra, gens, name=name)
        for i in range(algebra.dim):
            if not F.equal(mod.action(i), actions[i]):
                raise ValueError(
                    f"action of {algebra.labels[i]} disagrees with the product of its generators")
        mod.check()
        return mod

    # -- actions -------------------------------------------------------------

    def _word(self, w):
        if w not in self._words:
            if len(w) == 1:
                self._words[w] = self.gens[w[0]]
            else:
                self._words[w] = self.field.matmul(self.gens[w[0]], self._word(w[1:]))
        return self._words[w]

    def action(self, i):
        return self._word(self.algebra.words[i])

    def actions(self):
        F = self.field
        out = F.zeros(self.algebra.dim, self.dim, self.dim)
        for i in range(self.algebra.dim):
            out[i] = self.action(i)
        return out

    def act(self, x):
        """Matrix of the algebra element ``x`` (coordinate vector)."""
        return _combine(self.field, x, None, self)

    def apply(self, x, v):
        """``x . v`` for an algebra element ``x`` and a vector ``v``."""
        F = self.field
        out = F.zeros(self.dim)
        for i in np.nonzero(x)[0]:
            out = F.add(out, F.scale(x[i], F.matmul(self.action(int(i)), v)))
        return out

    # -- checks ----------------------------------------------------------------

    def violation(self):
        """Describe the first failed module axiom, or return None."""
        F, A = self.field, self.algebra
        if not F.equal(self.act(A.unit), F.eye(self.dim)):
            return "unit does not act as the identity"
        for g, vec in enumerate(A.gens):
            if not F.equal(_combine(F, vec, None, self), self.gens[g]):
                return f"generator {A.gen_labels[g]} disagrees with its basis expansion"
        for g, vec in enumerate(A.gens):
            left = A.left_mult(vec)
            for j in range(A.dim):
                lhs = F.matmul(self.gens[g], self.action(j))
                rhs = _combine(F, left[:, j], None, self)
                if not F.equal(lhs, rhs):
                    return f"structure constants violated at ({A.gen_labels[g]}, {A.labels[j]})"
        return None

    def check(self):
        bad = self.violation()
        if bad:
            raise ValueError(bad)
        return True

    # -- vertex decomposition -----------------------------------------------------

    @cached_property
    def blocks(self):
        """Per vertex ``v``: ``(V, P)`` with ``V`` a basis of ``e_v M`` and ``P = V^+ e_v``.

        Without vertex data there is one block covering the whole space.
        """
        F, A = self.field, self.algebra
        if not A.has_vertex_data:
            eye = F.eye(self.dim)
            return [(eye, eye)]
        out = []
        for e in A.idempotents:
            proj = self.act(e)
            V, rows = F.image_basis(proj)
            out.append((V, np.ascontiguousarray(proj[rows, :])))
        return out

    def dim_vector(self):
        return tuple(b[0].shape[1] for b in self.blocks)

    def gen_blocks(self, g):
        """Generator action in the vertex-adapted basis."""
        key = ("gb", g)
        if key not in self._cache:
            F = self.field
            P = _vstack(F, [b[1] for b in self.blocks], self.dim)
            V = _hstack(F, [b[0] for b in self.blocks], self.dim)
            self._cache[key] = F.chain(P, self.gens[g], V)
        return self._cache[key]


def _combine(F, x, actions=None, module=None):
    d = module.dim if module is not None else actions.shape[1]
    out = F.zeros(d, d)
    for i in np.nonzero(x)[0]:
        a = module.action(int(i)) if module is not None else actions[i]
        out = F.add(out, F.scale(x[i], a))
    return out


def _vstack(F, mats, ncols):
    return np.concatenate(mats, axis=0) if mats else F.zeros(0, ncols)


def _hstack(F, mats, nrows):
    return np.concatenate(mats, axis=1) if mats else F.zeros(nrows, 0)


def block_diag(F, mats):
    r = sum(m.shape[0] for m in mats)
    c = sum(m.shape[1] for m in mats)
    out = F.zeros(r, c)
    i = j = 0
    for m in mats:
        out[i:i + m.shape[0], j:j + m.shape[1]] = m
        i += m.shape[0]
        j += m.shape[1]
    return out


def same_algebra(m, n):
    if not m.algebra.same_as(n.algebra):
        raise AlgebraMismatch("modules live over different algebras")


@dataclass
class ModuleHom:
    source: LeftModule
    target: LeftModule
    matrix: np.ndarray

    def check(self):
        F = self.source.field
        for g in range(len(self.source.gens)):
            lhs = F.matmul(self.matrix, self.source.gens[g])
            rhs = F.matmul(self.target.gens[g], self.matrix)
            if not F.equal(lhs, rhs):
                return False
        return True

    def rank(self):
        return self.source.field.rank(self.matrix)

    def is_iso(self):
        return self.source.field.is_invertible(self.matrix)


@dataclass
class Bimodule:
    """``left`` over A and ``right`` over ``opposite(B)`` on one space."""

    left: LeftModule
    right: LeftModule

    def __post_init__(self):
        if self.left.dim != self.right.dim:
            raise ValueError("left and right structures on spaces of different dimension")
        if self.left.field != self.right.field:
            raise FieldMismatch("bimodule sides over different fields")

    @property
    def dim(self):
        return self.left.dim

    @property
    def field(self):
        return self.left.field

    def commutes(self):
        F = self.field
        for a in self.left.gens:
            for b in self.right.gens:
                if not F.equal(F.matmul(a, b), F.matmul(b, a)):
                    return False
        return True


# -- standard modules ----------------------------------------------------------------


def _require_vertices(A):
    if not A.has_vertex_data:
        raise UnsupportedAlgebra("needs a quiver presentation or vertex idempotents")


def regular_module(A):
    if "regular" not in A._cache:
        F = A.field
        gens = F.zeros(len(A.gens), A.dim, A.dim)
        for g, vec in enumerate(A.gens):
            gens[g] = A.left_mult(vec)
        A._cache["regular"] = LeftModule(A, gens, name="A")
    return A._cache["regular"]


def simple(A, v):
    return simples(A)[v]


def simples(A):
    """One 1-dimensional simple per vertex, in vertex order."""
    _require_vertices(A)
    if "simples" not in A._cache:
        F = A.field
        chi = F.matmul(A.gens, np.ascontiguousarray(A.characters.T))  # (ngens, nverts)
        out = []
        for v in range(A.n_vertices):
            gens = F.zeros(len(A.gens), 1, 1)
            gens[:, 0, 0] = chi[:, v]
            out.append(LeftModule(A, gens, name=f"S({A.vertices[v]})"))
        A._cache["simples"] = out
    return A._cache["simples"]


def indec_projectives(A):
    """``P(v) = A e_v`` for each vertex, tops matching ``simples(A)``.

    Each module carries ``ambient`` (its basis as columns in A) and
    ``top_gen`` (coordinates of ``e_v``).
    """
    _require_vertices(A)
    if "projectives" not in A._cache:
        F = A.field
        out = []
        for v, e in enumerate(A.idempotents):
            W, rows = F.image_basis(A.right_mult(e))
            gens = F.zeros(len(A.gens), W.shape[1], W.shape[1])
            for g, vec in enumerate(A.gens):
                gens[g] = F.matmul(A.left_mult(vec), W)[rows, :]
            p = LeftModule(A, gens, name=f"P({A.vertices[v]})")
            p.ambient, p.ambient_rows = W, rows
            p.top_gen = e[rows]
            p.vertex = v
            out.append(p)
        A._cache["projectives"] = out
    return A._cache["projectives"]


def indec_projective(A, v):
    return indec_projectives(A)[v]


def indec_injectives(A):
    """``I(v) = D(e_v A)``, the injective envelope of ``S(v)``."""
    _require_vertices(A)
    if "injectives" not in A._cache:
        F = A.field
        out = []
        for v, e in enumerate(A.idempotents):
            W, rows = F.image_basis(A.left_mult(e))
            gens = F.zeros(len(A.gens), W.shape[1], W.shape[1])
            for g, vec in enumerate(A.gens):
                gens[g] = np.ascontiguousarray(F.matmul(A.right_mult(vec), W)[rows, :].T)
            inj = LeftModule(A, gens, name=f"I({A.vertices[v]})")
            inj.ambient, inj.ambient_rows = W, rows
            inj.vertex = v
            out.append(inj)
        A._cache["injectives"] = out
    return A._cache["injectives"]


def indec_injective(A, v):
    return indec_injectives(A)[v]


def zero_module(A):
    return LeftModule(A, A.field.zeros(len(A.gens), 0, 0), name="0")


def direct_sum(mods, algebra=None):
    if not mods:
        return zero_module(algebra)
    A, F = mods[0].algebra, mods[0].field
    gens = F.zeros(len(A.gens), sum(m.dim for m in mods), sum(m.dim for m in mods))
    for g in range(len(A.gens)):
        gens[g] = block_diag(F, [m.gens[g] for m in mods])
    return LeftModule(A, gens, name=" + ".join(m.name or "?" for m in mods))


def submodule(M, V, rows):
    """Restriction to the invariant subspace spanned by the column-echelon ``V``."""
    F = M.field
    gens = F.zeros(len(M.gens), V.shape[1], V.shape[1])
    for g in range(len(M.gens)):
        gens[g] = F.matmul(M.gens[g], V)[rows, :]
    return LeftModule(M.algebra, gens)


def quotient_maps(F, V, rows, dim):
    """Projection onto and section from ``F^dim / span(V)`` (V column-echelon)."""
    rest = [i for i in range(dim) if i not in set(rows)]
    proj = F.zeros(len(rest), dim)
    for k, i in enumerate(rest):
        proj[k, i] = 1
    if len(rows):
        proj[:, rows] = F.neg(V[rest, :])
    sect = F.zeros(dim, len(rest))
    for k, i in enumerate(rest):
        sect[i, k] = 1
    return proj, sect


def quotient(M, V, rows):
    """``M / span(V)``; returns ``(module, projection)``."""
    F = M.field
    proj, sect = quotient_maps(F, V, rows, M.dim)
    gens = F.zeros(len(M.gens), proj.shape[0], proj.shape[0])
    for g in range(len(M.gens)):
        gens[g] = F.chain(proj, M.gens[g], sect)
    return LeftModule(M.algebra, gens), proj


# -- Hom spaces --------------------------------------------------------------------------


def hom_basis(m, n):
    """Basis of ``Hom_A(m, n)`` as a list of ``ModuleHom``.

    Unknowns are the vertex blocks ``e_v m -> e_v n``; only generators that
    are not sums of idempotents contribute equations.
    """
    same_algebra(m, n)
    F, A = m.field, m.algebra
    bm, bn = m.blocks, n.blocks
    nb = len(bm)
    shapes = [(bn[v][0].shape[1], bm[v][0].shape[1]) for v in range(nb)]
    offs = [0]
    for r, c in shapes:
        offs.append(offs[-1] + r * c)
    total = offs[-1]
    if total == 0:
        return []
    mo = np.cumsum([0] + [s[1] for s in shapes])
    no = np.cumsum([0] + [s[0] for s in shapes])
    skip = A.semisimple_gens()
    eqs = []
    for g in range(len(A.gens)):
        if g in skip:
            continue
        Ag, Bg = m.gen_blocks(g), n.gen_blocks(g)
        for u in range(nb):
            nu, mu = shapes[u]
            for v in range(nb):
                nv, mv = shapes[v]
                if nu == 0 or mv == 0:
                    continue
                Auv = Ag[mo[u]:mo[u + 1], mo[v]:mo[v + 1]]
                Buv = Bg[no[u]:no[u + 1], no[v]:no[v + 1]]
                za, zb = F.is_zero(Auv), F.is_zero(Buv)
                if za and zb:
                    continue
                rows = F.zeros(nu * mv, total)
                if not za:  # X_u A_uv
                    rows[:, offs[u]:offs[u + 1]] = F.kron(F.eye(nu), np.ascontiguousarray(Auv.T))
                if not zb:  # - B_uv X_v
                    blk = F.neg(F.kron(Buv, F.eye(mv)))
                    rows[:, offs[v]:offs[v + 1]] = F.add(rows[:, offs[v]:offs[v + 1]], blk)
                eqs.append(rows)
    system = np.concatenate(eqs, axis=0) if eqs else F.zeros(0, total)
    K = F.kernel_basis(system)
    out = []
    for c in range(K.shape[1]):
        X = F.zeros(n.dim, m.dim)
        for v in range(nb):
            r, cc = shapes[v]
            if r == 0 or cc == 0:
                continue
            Xv = K[offs[v]:offs[v + 1], c].reshape(r, cc)
            X = F.add(X, F.chain(bn[v][0], Xv, bm[v][1]))
        out.append(ModuleHom(m, n, X))
    return out


def hom_dim(m, n):
    return len(hom_basis(m, n))


@dataclass
class IsoResult:
    verdict: str  # "isomorphic" | "not-isomorphic" | "undecided"
    witness: ModuleHom = None
    reason: str = ""

    @property
    def isomorphic(self):
        return self.verdict == "isomorphic"


def is_isomorphic(m, n, seed=0, trials=8):
    """Search for an invertible intertwiner; cheap invariants rule out negatives first."""
    same_algebra(m, n)
    F = m.field
    if m is n:
        return IsoResult("isomorphic", ModuleHom(m, n, F.eye(m.dim)), "same object")
    if m.dim != n.dim:
        return IsoResult("not-isomorphic", reason=f"dimension {m.dim} != {n.dim}")
    if m.algebra.has_vertex_data and m.dim_vector() != n.dim_vector():
        return IsoResult("not-isomorphic", reason="dimension vectors differ")
    if m.dim == 0:
        return IsoResult("isomorphic", ModuleHom(m, n, F.zeros(0, 0)), "zero modules")
    hmn = hom_basis(m, n)
    hnm = hom_basis(n, m)
    if len(hmn) != len(hnm):
        return IsoResult("not-isomorphic", reason=f"dim Hom(m,n)={len(hmn)} != dim Hom(n,m)={len(hnm)}")
    if not hmn:
        return IsoResult("not-isomorphic", reason="Hom(m, n) = 0")
    emm, enn = hom_dim(m, m), hom_dim(n, n)
    if emm != enn:
        return IsoResult("not-isomorphic", reason=f"dim End differ ({emm} != {enn})")
    rng = random.Random(seed)
    for _ in range(trials):
        X = F.zeros(n.dim, m.dim)
        for h in hmn:
            c = F.random_scalar(rng)
            while c == 0 and len(hmn) == 1:
                c = F.random_scalar(rng)
            X = F.add(X, F.scale(c, h.matrix))
        if F.is_invertible(X):
            return IsoResult("isomorphic", ModuleHom(m, n, X))
    return IsoResult("undecided", reason=f"no invertible map in {trials} random trials")


# -- duality and tensor products ------------------------------------------------------------


def dual(m):
    """``D(m) = Hom_k(m, k)``: a left module over ``opposite(m.algebra)``."""
    F = m.field
    gens = F.zeros(len(m.gens), m.dim, m.dim)
    for g in range(len(m.gens)):
        gens[g] = np.ascontiguousarray(m.gens[g].T)
    return LeftModule(opposite(m.algebra), gens, name=f"D({m.name})" if m.name else None)


@dataclass
class TensorProduct:
    """``m (x)_B y`` computed on the nose.

    ``projection`` maps coordinates of ``m (x)_k y`` (index ``i*dim(y)+j``)
    onto the quotient; ``section`` is a right inverse. ``module`` carries the
    residual left action when ``m`` came with one.
    """

    dim: int
    projection: np.ndarray
    section: np.ndarray
    module: LeftModule = None


def tensor_over(m, y, left=None):
    """``m (x)_B y`` for a right B-module ``m`` (over ``opposite(B)``) and a left B-module ``y``.

    ``left`` optionally gives a left A-action on the space of ``m`` commuting
    with the right one; the result then carries it.
    """
    B = y.algebra
    if not m.algebra.same_as(opposite(B)):
        raise AlgebraMismatch("tensor_over needs a right module over the algebra of y")
    F = y.field
    dm, dy = m.dim, y.dim
    full = dm * dy
    if B.has_vertex_data:
        # first quotient by the idempotent relations: (+)_v m e_v (x) e_v y
        embs, reds = [], []
        for (Vm, Pm), (Vy, Py) in zip(m.blocks, y.blocks):
            embs.append(F.kron(Vm, Vy))
            reds.append(F.kron(Pm, Py))
        emb = _hstack(F, embs, full)
        red = _vstack(F, reds, full)
        gens = [g for g in range(len(B.gens)) if g not in B.semisimple_gens()]
    else:
        emb = red = F.eye(full)
        gens = range(len(B.gens))
    small = emb.shape[1]
    rels = []
    for g in gens:
        op = F.sub(F.kron(m.gens[g], F.eye(dy)), F.kron(F.eye(dm), y.gens[g]))
        rels.append(F.matmul(red, op))
    rel = _hstack(F, rels, small)
    V, rows = F.image_basis(rel)
    proj, sect = quotient_maps(F, V, rows, small)
    projection = F.matmul(proj, red)
    section = F.matmul(emb, sect)
    mod = None
    if left is not None:
        A = left.algebra
        lg = F.zeros(len(A.gens), proj.shape[0], proj.shape[0])
        for g in range(len(A.gens)):
            lg[g] = F.chain(projection, F.kron(left.gens[g], F.eye(dy)), section)
        mod = LeftModule(A, lg)
    return TensorProduct(proj.shape[0], projection, section, mod)


def external_tensor(e, f_dual):
    """``e (x)_k f_dual`` as an A-B-bimodule (``f_dual`` is a right B-module)."""
    if e.field != f_dual.field:
        raise FieldMismatch("external tensor over different fields")
    F = e.field
    lg = F.zeros(len(e.gens), e.dim * f_dual.dim, e.dim * f_dual.dim)
    for g in range(len(e.gens)):
        lg[g] = F.kron(e.gens[g], F.eye(f_dual.dim))
    rg = F.zeros(len(f_dual.gens), e.dim * f_dual.dim, e.dim * f_dual.dim)
    for g in range(len(f_dual.gens)):
        rg[g] = F.kron(F.eye(e.dim), f_dual.gens[g])
    return Bimodule(LeftModule(e.algebra, lg), LeftModule(f_dual.algebra, rg))


# -- triangular algebras ---------------------------------------------------------------------


@dataclass
class TripleModule:
    """``(X, Y)_phi`` with ``phi: N (x)_B Y -> X`` A-linear."""

    x: LeftModule
    y: LeftModule
    phi: np.ndarray
    bimodule: Bimodule = dc_field(repr=False)

    @cached_property
    def tensor(self):
        return tensor_over(self.bimodule.right, self.y, left=self.bimodule.left)

    def check(self):
        T = self.tensor
        return ModuleHom(T.module, self.x, self.phi).check()


def identity_triple(n, q):
    """``(N (x)_B Q, Q)_Id``."""
    T = tensor_over(n.right, q, left=n.left)
    t = TripleModule(T.module, q, q.field.eye(T.dim), n)
    t.__dict__["tensor"] = T
    return t


def a_triple(n, x):
    """``(X, 0)``."""
    B = n.right.algebra.opposite()
    y = zero_module(B)
    return TripleModule(x, y, x.field.zeros(x.dim, 0), n)


def b_triple(n, y):
    """``(0, Y)``."""
    A = n.left.algebra
    x = zero_module(A)
    T = tensor_over(n.right, y, left=n.left)
    t = TripleModule(x, y, y.field.zeros(0, T.dim), n)
    t.__dict__["tensor"] = T
    return t


def triple_to_module(t, lam, emb=None):
    emb = emb or lam.triangular
    F = lam.field
    if t.x.dim and not t.x.algebra.same_as(emb.alg_a):
        raise AlgebraMismatch("X is not over the A-block")
    if not t.y.algebra.same_as(emb.alg_b):
        raise AlgebraMismatch("Y is not over the B-block")
    dx, dy = t.x.dim, t.y.dim
    d = dx + dy
    T = t.tensor
    if t.phi.shape != (dx, T.dim):
        raise ValueError(f"phi has shape {t.phi.shape}, expected {(dx, T.dim)}")
    gens = F.zeros(len(lam.gens), d, d)
    for k, g in enumerate(emb.gens_a):
        gens[g, :dx, :dx] = t.x.gens[k]
    for k, g in enumerate(emb.gens_b):
        gens[g, dx:, dx:] = t.y.gens[k]
    for k, g in enumerate(emb.gens_n):
        gens[g, :dx, dx:] = F.matmul(t.phi, T.projection[:, k * dy:(k + 1) * dy])
    gens[emb.gen_unit_a, :dx, :dx] = F.eye(dx)
    return LeftModule(lam, gens)


def module_to_triple(M, emb=None):
    """Inverse of ``triple_to_module``: ``(1_A M, 1_B M, n (x) y -> n.y)``."""
    lam = M.algebra
    emb = emb or lam.triangular
    F = M.field
    ea = M.gens[emb.gen_unit_a]
    Va, ra = F.image_basis(ea)
    Vb, rb = F.image_basis(F.sub(F.eye(M.dim), ea))
    xg = F.zeros(len(emb.gens_a), Va.shape[1], Va.shape[1])
    for k, g in enumerate(emb.gens_a):
        xg[k] = F.matmul(M.gens[g], Va)[ra, :]
    yg = F.zeros(len(emb.gens_b), Vb.shape[1], Vb.shape[1])
    for k, g in enumerate(emb.gens_b):
        yg[k] = F.matmul(M.gens[g], Vb)[rb, :]
    x = LeftModule(emb.alg_a, xg)
    y = LeftModule(emb.alg_b, yg)
    n = emb.bimodule
    dy = y.dim
    full = F.zeros(x.dim, n.dim * dy)
    for k, g in enumerate(emb.gens_n):
        full[:, k * dy:(k + 1) * dy] = F.matmul(M.gens[g], Vb)[ra, :]
    t = TripleModule(x, y, None, n)
    t.phi = F.matmul(full, t.tensor.section)
    if not F.equal(F.matmul(t.phi, t.tensor.projection), full):
        raise ValueError("N-action does not factor through N (x)_B Y")
    return t


def psi_map(e, f, bimodule=None):
    """``Psi: (e (x) D f) (x)_B f -> e``, ``a (x) phi (x) b -> phi(b) a``."""
    F = e.field
    n = bimodule or external_tensor(e, dual(f))
    T = tensor_over(n.right, f, left=n.left)
    de, df = e.dim, f.dim
    full = F.zeros(de, de * df * df)
    for i in range(de):
        for j in range(df):
            full[i, (i * df + j) * df + j] = 1
    psi = F.matmul(full, T.section)
    if not F.equal(F.matmul(psi, T.projection), full):
        raise ValueError("Psi does not kill the balancing relations")
    return ModuleHom(T.module, e, psi)


def hom_from_bimodule(n, y):
    """``Hom_A(N, Y)`` as a left B-module, ``(b.f)(n) = f(n.b)``.

    Returns ``(module, basis)`` where ``basis`` lists the A-maps N -> Y.
    """
    F = y.field
    basis = hom_basis(n.left, y)
    B = n.right.algebra.opposite()
    r = len(basis)
    if r == 0:
        return zero_module(B), basis
    H = F.zeros(y.dim * n.dim, r)
    for k, h in enumerate(basis):
        H[:, k] = h.matrix.reshape(-1)
    gens = F.zeros(len(B.gens), r, r)
    for g in range(len(B.gens)):
        moved = F.zeros(y.dim * n.dim, r)
        for k, h in enumerate(basis):
            moved[:, k] = F.matmul(h.matrix, n.right.gens[g]).reshape(-1)
        gens[g] = F.solve(H, moved)
    return LeftModule(B, gens), basis


def theta_map(n, y):
    """``Theta: N (x)_B Hom_A(N, Y) -> Y``, ``n (x) f -> f(n)``.

    Returns ``(hom_module, ModuleHom)`` so that ``(Y, hom_module)_Theta`` is a triple.
    """
    F = y.field
    hmod, basis = hom_from_bimodule(n, y)
    T = tensor_over(n.right, hmod, left=n.left)
    r = len(basis)
    full = F.zeros(y.dim, n.dim * r)
    for i in range(n.dim):
        for k, h in enumerate(basis):
            full[:, i * r + k] = h.matrix[:, i]
    theta = F.matmul(full, T.section)
    if not F.equal(F.matmul(theta, T.projection), full):
        raise ValueError("Theta does not kill the balancing relations")
    return hmod, ModuleHom(T.module, y, theta)
