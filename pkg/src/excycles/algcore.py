"""Finite-dimensional algebras given by structure constants.

Conventions
-----------
Paths compose like functions: for arrows ``a: i -> j`` and ``b: j -> l`` the
product ``b*a`` is the path "a then b". Left modules are therefore ordinary
quiver representations, ``P(i) = A e_i`` is spanned by the paths starting at
``i``, and in a triangular algebra ``[[A, N], [0, B]]`` the corner ``N`` is
spanned by paths running from B-vertices into A-vertices.

Besides structure constants an algebra may carry *vertex data*: a complete
set of primitive orthogonal idempotents, the matching characters
``chi_v`` (``e_v x e_v = chi_v(x) e_v`` modulo the radical) and a list of
radical elements with ``J M = sum_r r M``. Simples, projective covers and
everything homological need it; quiver algebras, their opposites and
triangular algebras built from them always have it.
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import FieldMismatch, InfiniteDimensional, MalformedQuiver
from .exactlin import QQ

DEFAULT_PATH_BOUND = 64


@dataclass(frozen=True)
class QuiverPresentation:
    vertices: tuple
    arrows: tuple  # (source, target, label)
    relations: tuple = ()  # arrow labels in traversal order

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(
            self, "arrows", tuple((str(s), str(t), str(lab)) for s, t, lab in self.arrows)
        )
        object.__setattr__(self, "relations", tuple(tuple(str(a) for a in r) for r in self.relations))

    def validate(self):
        verts = set(self.vertices)
        if len(verts) != len(self.vertices):
            raise MalformedQuiver("duplicate vertex ids")
        labels = [lab for _, _, lab in self.arrows]
        if len(set(labels)) != len(labels):
            raise MalformedQuiver("duplicate arrow labels")
        ends = {}
        for s, t, lab in self.arrows:
            if s not in verts or t not in verts:
                raise MalformedQuiver(f"arrow {lab!r} has a dangling endpoint ({s} -> {t})")
            ends[lab] = (s, t)
        for rel in self.relations:
            if len(rel) < 2:
                raise MalformedQuiver(f"relation {rel} has length < 2")
            for a in rel:
                if a not in ends:
                    raise MalformedQuiver(f"relation {rel} uses unknown arrow {a!r}")
            for a, b in zip(rel, rel[1:]):
                if ends[a][1] != ends[b][0]:
                    raise MalformedQuiver(f"relation {rel} is not composable at {a!r}, {b!r}")


@dataclass
class EmbeddingData:
    """Where A, N and B sit inside the basis of a triangular algebra."""

    a_range: range
    n_range: range
    b_range: range
    alg_a: "Algebra" = dc_field(repr=False)
    alg_b: "Algebra" = dc_field(repr=False)
    bimodule: object = dc_field(repr=False)
    gens_a: range = None
    gens_b: range = None
    gens_n: range = None
    gen_unit_a: int = None

    def check(self):
        covered = list(self.a_range) + list(self.n_range) + list(self.b_range)
        return covered == list(range(len(covered)))


class Algebra:
    """An associative unital algebra with basis ``b_0..b_{dim-1}``.

    ``structure[i, j]`` holds the coordinates of ``b_i * b_j``.
    ``gens`` are algebra elements generating it as a unital algebra and
    ``words[i]`` writes ``b_i`` as a product of generators (left to right).
    Modules store one matrix per generator; basis actions are rebuilt from
    the words on demand.
    """

    def __init__(self, field, structure, unit, labels=None, *, gens=None, gen_labels=None,
                 words=None, vertices=None, idempotents=None, characters=None, radical=None,
                 presentation=None, triangular=None, name=None):
        self.field = field
        self.structure = structure
        self.dim = structure.shape[0]
        self.unit = unit
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(self.dim))
        if gens is None:
            gens = field.eye(self.dim)
            words = tuple((i,) for i in range(self.dim))
            gen_labels = self.labels
        self.gens = gens
        self.gen_labels = tuple(gen_labels) if gen_labels is not None else tuple(
            f"g{i}" for i in range(len(gens)))
        self.words = tuple(tuple(w) for w in words)
        self.vertices = tuple(vertices) if vertices is not None else None
        self.idempotents = idempotents
        self.characters = characters
        self.radical = radical
        self.presentation = presentation
        self.triangular = triangular
        self.name = name
        self._op = None
        self._cache = {}

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<Algebra{tag} dim={self.dim} over {self.field}>"

    @property
    def has_vertex_data(self):
        return self.idempotents is not None and self.characters is not None and self.radical is not None

    @property
    def n_vertices(self):
        return len(self.vertices) if self.vertices is not None else 0

    def index(self, label):
        return self.labels.index(label)

    def vertex_index(self, v):
        if self.vertices is None:
            raise KeyError("algebra has no vertices")
        return self.vertices.index(str(v))

    def same_as(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Algebra)
            and self.field == other.field
            and self.dim == other.dim
            and self.field.equal(self.structure, other.structure)
            and self.field.equal(self.unit, other.unit)
            and self.field.equal(self.gens, other.gens)
        )

    # -- multiplication ----------------------------------------------------

    def basis_vector(self, i):
        v = self.field.zeros(self.dim)
        v[i] = 1
        return v

    def element(self, coeffs):
        """Element from ``{label: scalar}``."""
        v = self.field.zeros(self.dim)
        for lab, c in coeffs.items():
            v[self.index(lab)] = self.field.scalar(c)
        return v

    def mult(self, x, y):
        return self.field.matmul(y, self.field.matmul(x, self._flat()).reshape(self.dim, self.dim))

    def _flat(self):
        if "flat" not in self._cache:
            self._cache["flat"] = np.ascontiguousarray(self.structure.reshape(self.dim, -1))
        return self._cache["flat"]

    def left_mult(self, x):
        """Matrix of ``y -> x*y``."""
        m = self.field.matmul(x, self._flat()).reshape(self.dim, self.dim)
        return np.ascontiguousarray(m.T)

    def right_mult(self, x):
        """Matrix of ``y -> y*x``."""
        t = np.ascontiguousarray(self.structure.transpose(1, 0, 2)).reshape(self.dim, -1)
        m = self.field.matmul(x, t).reshape(self.dim, self.dim)
        return np.ascontiguousarray(m.T)

    def left_basis_mult(self, i):
        key = ("L", i)
        if key not in self._cache:
            self._cache[key] = np.ascontiguousarray(self.structure[i].T)
        return self._cache[key]

    def right_basis_mult(self, i):
        key = ("R", i)
        if key not in self._cache:
            self._cache[key] = np.ascontiguousarray(self.structure[:, i, :].T)
        return self._cache[key]

    # -- validation ----------------------------------------------------------

    def associativity_violation(self):
        """First basis triple ``(i, j, l)`` with ``(b_i b_j) b_l != b_i (b_j b_l)``, or None."""
        c = _small_int_view(self.structure, self.field)
        lhs = np.tensordot(c, c, axes=([2], [0]))  # (i, j, l, m)
        rhs = np.tensordot(c, c, axes=([1], [2])).transpose(0, 2, 3, 1)  # (i, j, l, m)
        if self.field.is_prime:
            lhs, rhs = lhs % self.field.p, rhs % self.field.p
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            i, j, l, _ = (int(x) for x in bad[0])
            return (i, j, l)
        return None

    def unit_violation(self):
        """First basis index ``i`` with ``1*b_i != b_i`` or ``b_i*1 != b_i``, or None."""
        eye = self.field.eye(self.dim)
        lu, ru = self.left_mult(self.unit), self.right_mult(self.unit)
        for i in range(self.dim):
            if np.any(lu[:, i] != eye[:, i]) or np.any(ru[:, i] != eye[:, i]):
                return i
        return None

    def check(self):
        """Raise ``ValueError`` naming the first failed algebra axiom."""
        bad = self.associativity_violation()
        if bad is not None:
            i, j, l = bad
            raise ValueError(
                f"not associative at ({self.labels[i]}, {self.labels[j]}, {self.labels[l]})")
        bad = self.unit_violation()
        if bad is not None:
            raise ValueError(f"unit law fails at {self.labels[bad]}")
        for w, i in zip(self.words, range(self.dim)):
            prod = self.gens[w[0]]
            for g in w[1:]:
                prod = self.mult(prod, self.gens[g])
            if np.any(prod != self.basis_vector(i)):
                raise ValueError(f"word for {self.labels[i]} does not evaluate to it")
        return True

    # -- derived data --------------------------------------------------------

    def semisimple_gens(self):
        """Indices of generators that are sums of vertex idempotents."""
        if "ss_gens" not in self._cache:
            out = set()
            if self.has_vertex_data:
                coeffs = self.field.matmul(self.gens, np.ascontiguousarray(self.characters.T))
                for g, row in enumerate(coeffs):
                    if all(c == 0 or c == 1 for c in row):
                        comb = self.field.matmul(row, self.idempotents)
                        if self.field.equal(comb, self.gens[g]):
                            out.add(g)
            self._cache["ss_gens"] = frozenset(out)
        return self._cache["ss_gens"]

    def opposite(self):
        return opposite(self)


def _small_int_view(arr, field):
    """int64 copy when exact arithmetic on it cannot overflow, else the array itself."""
    if field.is_prime:
        return arr.astype(np.int64) if field.p < (1 << 20) else arr.astype(object)
    flat = arr.ravel()
    if all(type(x) is int and -(1 << 15) < x < (1 << 15) for x in flat):
        return arr.astype(np.int64)
    return arr


# -- constructors -------------------------------------------------------------------


def ground_algebra(field=QQ):
    """The field k as a one-vertex quiver algebra."""
    return build_from_quiver(QuiverPresentation(("k",), ()), field, name="k")


def semisimple_algebra(n, field=QQ):
    """k x ... x k (n vertices, no arrows)."""
    return build_from_quiver(QuiverPresentation(tuple(str(i + 1) for i in range(n)), ()), field,
                             name=f"k^{n}")


def build_from_quiver(q, field=QQ, max_length=DEFAULT_PATH_BOUND, name=None):
    """Bound quiver algebra ``kQ/I`` for monomial ``I``; basis = relation-free paths."""
    q.validate()
    nv = len(q.vertices)
    vindex = {v: i for i, v in enumerate(q.vertices)}
    aindex = {lab: i for i, (_, _, lab) in enumerate(q.arrows)}
    src = [vindex[s] for s, _, _ in q.arrows]
    tgt = [vindex[t] for _, t, _ in q.arrows]
    out = [[] for _ in range(nv)]
    for a in range(len(q.arrows)):
        out[src[a]].append(a)
    rel_by_last = {}
    for rel in q.relations:
        r = tuple(aindex[a] for a in rel)
        rel_by_last.setdefault(r[-1], []).append(r)

    paths = []
    level = [(a,) for a in range(len(q.arrows))]
    length = 1
    while level:
        if length > max_length:
            raise InfiniteDimensional(
                f"relation-free paths of length {length} exist; bound is {max_length}")
        paths.extend(level)
        nxt = []
        for p in level:
            for a in out[tgt[p[-1]]]:
                cand = p + (a,)
                if any(len(r) <= len(cand) and cand[-len(r):] == r for r in rel_by_last.get(a, ())):
                    continue
                nxt.append(cand)
        level = nxt
        length += 1

    # basis: trivial paths then nontrivial paths by length
    basis = [("e", v) for v in range(nv)] + [("p", p) for p in paths]
    dim = len(basis)
    ends = []
    for kind, x in basis:
        ends.append((x, x) if kind == "e" else (src[x[0]], tgt[x[-1]]))
    lookup = {x if kind == "p" else ("e", x): i for i, (kind, x) in enumerate(basis)}

    structure = field.zeros(dim, dim, dim)
    for i, (ki, xi) in enumerate(basis):  # left factor: traversed second
        for j, (kj, xj) in enumerate(basis):
            if ends[j][1] != ends[i][0]:
                continue
            if kj == "e":
                r = i
            elif ki == "e":
                r = j
            else:
                r = lookup.get(xj + xi)
                if r is None:
                    continue
            structure[i, j, r] = 1

    unit = field.zeros(dim)
    unit[:nv] = 1
    arrow_labels = [lab for _, _, lab in q.arrows]
    labels = [f"e{q.vertices[v]}" for v in range(nv)]
    labels += ["*".join(arrow_labels[a] for a in reversed(p)) for p in paths]
    ngens = nv + len(q.arrows)
    gens = field.zeros(ngens, dim)
    for v in range(nv):
        gens[v, v] = 1
    for a in range(len(q.arrows)):
        gens[nv + a, lookup[(a,)]] = 1
    words = [(v,) for v in range(nv)] + [tuple(nv + a for a in reversed(p)) for p in paths]
    idem = np.ascontiguousarray(gens[:nv])
    radical = np.ascontiguousarray(gens[nv:]) if len(q.arrows) else field.zeros(0, dim)
    return Algebra(
        field, structure, unit, labels,
        gens=gens, gen_labels=[f"e{v}" for v in q.vertices] + arrow_labels, words=words,
        vertices=q.vertices, idempotents=idem, characters=idem.copy(), radical=radical,
        presentation=q, name=name,
    )


def opposite(a):
    """Same basis, ``b_i *op b_j = b_j * b_i``; ``opposite(opposite(a)) is a``."""
    if a._op is None:
        op = Algebra(
            a.field, np.ascontiguousarray(a.structure.transpose(1, 0, 2)), a.unit, a.labels,
            gens=a.gens, gen_labels=a.gen_labels, words=[tuple(reversed(w)) for w in a.words],
            vertices=a.vertices, idempotents=a.idempotents, characters=a.characters,
            radical=a.radical, name=f"{a.name}^op" if a.name else None,
        )
        op._op = a
        a._op = op
    return a._op


def _disambiguate(left, right, tags=("A:", "B:")):
    clash = set(left) & set(right)
    if not clash:
        return list(left), list(right)
    return [tags[0] + x for x in left], [tags[1] + x for x in right]


def triangular(a, b, n, name=None):
    """``[[A, N], [0, B]]`` with basis order A-block, N-block, B-block.

    ``n`` is an A-B-bimodule (``n.left`` over ``a``, ``n.right`` over
    ``opposite(b)``). Returns ``(algebra, EmbeddingData)``.
    """
    field = a.field
    if b.field != field or n.left.algebra.field != field:
        raise FieldMismatch("A, B and N must share one field")
    da, dn, db = a.dim, n.dim, b.dim
    dim = da + dn + db
    oa, on, ob = 0, da, da + dn
    structure = field.zeros(dim, dim, dim)
    structure[oa:on, oa:on, oa:on] = a.structure
    structure[ob:, ob:, ob:] = b.structure
    for i in range(da):
        act = n.left.action(i)
        structure[oa + i, on:ob, on:ob] = act.T  # a_i * n_j
    for l in range(db):
        act = n.right.action(l)
        structure[on:ob, ob + l, on:ob] = act.T  # n_j * b_l
    unit = field.zeros(dim)
    unit[oa:on] = a.unit
    unit[ob:] = b.unit

    nga, ngb = len(a.gens), len(b.gens)
    ngens = nga + ngb + dn + 1
    gens = field.zeros(ngens, dim)
    gens[:nga, oa:on] = a.gens
    gens[nga:nga + ngb, ob:] = b.gens
    for j in range(dn):
        gens[nga + ngb + j, on + j] = 1
    gens[-1, oa:on] = a.unit
    words = list(a.words) + [(nga + ngb + j,) for j in range(dn)]
    words += [tuple(nga + g for g in w) for w in b.words]
    la, lb = _disambiguate(a.labels, b.labels)
    labels = la + [f"n{j}" for j in range(dn)] + lb
    gla, glb = _disambiguate(a.gen_labels, b.gen_labels)
    gen_labels = gla + glb + [f"n{j}" for j in range(dn)] + ["1_A"]

    vertices = idem = chars = radical = None
    if a.has_vertex_data and b.has_vertex_data:
        va, vb = _disambiguate(a.vertices, b.vertices)
        vertices = va + vb
        idem = field.zeros(len(vertices), dim)
        idem[:len(va), oa:on] = a.idempotents
        idem[len(va):, ob:] = b.idempotents
        chars = field.zeros(len(vertices), dim)
        chars[:len(va), oa:on] = a.characters
        chars[len(va):, ob:] = b.characters
        radical = field.zeros(len(a.radical) + dn + len(b.radical), dim)
        radical[:len(a.radical), oa:on] = a.radical
        for j in range(dn):
            radical[len(a.radical) + j, on + j] = 1
        radical[len(a.radical) + dn:, ob:] = b.radical

    emb = EmbeddingData(
        range(oa, on), range(on, ob), range(ob, dim), a, b, n,
        gens_a=range(0, nga), gens_b=range(nga, nga + ngb),
        gens_n=range(nga + ngb, nga + ngb + dn), gen_unit_a=ngens - 1,
    )
    lam = Algebra(
        field, structure, unit, labels, gens=gens, gen_labels=gen_labels, words=words,
        vertices=vertices, idempotents=idem, characters=chars, radical=radical,
        triangular=emb, name=name,
    )
    return lam, emb
