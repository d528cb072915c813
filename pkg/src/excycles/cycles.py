"""Perfect exceptional cycles: verification, products and (co)extensions.

A cycle ``(E_1, ..., E_n)`` of modules is certified by chaining Serre images
``S(E_i) = E_{i+1}[d_i]`` (indices mod n) and by checking the Ext table:
``Ext^t(E_i, E_j)`` is one-dimensional at ``(j=i, t=0)`` and
``(j=i+1, t=d_i)`` and zero elsewhere. For n = 1 the two entries may
coincide (d = 0), giving a 2-dimensional End that must split as ``k x k``.
"""

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algcore import ground_algebra, triangular
from .errors import AlgebraMismatch, CutoffExceeded, UndecidedIsomorphism
from .homolog import (
    DEFAULT_CUTOFF, NotAShiftedModule, ext_dim, gorenstein, proj_dim, serre_image, tor_dim,
    tor_module, is_projective,
)
from .modrep import (
    TripleModule, a_triple, b_triple, direct_sum, dual, external_tensor, hom_basis, identity_triple,
    is_isomorphic, psi_map, regular_module, theta_map, triple_to_module,
)


@dataclass
class PerfectCycle:
    algebra: object
    modules: list
    names: list = None

    def __post_init__(self):
        if not self.modules:
            raise ValueError("a cycle needs at least one module")
        for i, m in enumerate(self.modules):
            if not m.algebra.same_as(self.algebra):
                raise AlgebraMismatch(f"module {i + 1} is not over the cycle's algebra")
        if self.names is None:
            self.names = [m.name or f"E{i + 1}" for i, m in enumerate(self.modules)]

    def __len__(self):
        return len(self.modules)


@dataclass
class CycleCertificate:
    degrees: tuple
    serre_witnesses: list  # matrices: Serre image of E_i -> E_{i+1}
    ext_table: list  # ext_table[i][j][t]; only row 0 in fast mode
    tmax: int
    gorenstein: tuple
    mode: str = "full"
    ok: bool = True


@dataclass
class CycleFailure:
    kind: str  # non-gorenstein | serre-image-not-stalk | wrong-isomorphism-class | ext-pattern-violation | end-not-split
    detail: str
    position: tuple = None
    degrees: tuple = ()
    ok: bool = False

    def __str__(self):
        return f"{self.kind}: {self.detail}"


def expected_ext(n, degrees, i, j, t):
    want = 0
    if j == i and t == 0:
        want += 1
    if j == (i + 1) % n and t == degrees[i]:
        want += 1
    return want


def verify_cycle(c, cutoff=DEFAULT_CUTOFF, seed=0, trials=8, fast=False, gor=None):
    """Certificate or the first violated condition.

    Raises ``CutoffExceeded`` / ``UndecidedIsomorphism`` when the answer is
    out of reach rather than negative.
    """
    A = c.algebra
    n = len(c)
    gor = gor or gorenstein(A, cutoff, seed, trials)
    if gor.status == "exceeded-cutoff":
        raise CutoffExceeded("Gorenstein test did not finish", cutoff)
    if not gor.is_gorenstein:
        return CycleFailure("non-gorenstein", f"injective dimensions {gor.pair()}")

    degrees, witnesses = [], []
    for i, E in enumerate(c.modules):
        nxt = c.modules[(i + 1) % n]
        si = serre_image(E, cutoff)
        if isinstance(si, NotAShiftedModule):
            return CycleFailure("serre-image-not-stalk",
                                f"S({c.names[i]}) has homology {si.homology_dims}", (i,), tuple(degrees))
        iso = is_isomorphic(si.image, nxt, seed, trials)
        if iso.verdict == "undecided":
            raise UndecidedIsomorphism(f"S({c.names[i]}) vs {c.names[(i + 1) % n]}: {iso.reason}")
        if not iso.isomorphic:
            return CycleFailure(
                "wrong-isomorphism-class",
                f"S({c.names[i]}) = H[{si.degree}] with H not isomorphic to "
                f"{c.names[(i + 1) % n]} ({iso.reason})", (i,), tuple(degrees))
        degrees.append(si.degree)
        witnesses.append(iso.witness.matrix)

    degrees = tuple(degrees)
    tmax = max(degrees) + 2
    rows = [0] if fast else range(n)
    table = []
    for i in rows:
        row = []
        for j in range(n):
            row.append([ext_dim(c.modules[i], c.modules[j], t, cutoff) for t in range(tmax + 1)])
        table.append(row)
    for r, i in enumerate(rows):
        for j in range(n):
            for t in range(tmax + 1):
                got, want = table[r][j][t], expected_ext(n, degrees, i, j, t)
                if got != want:
                    return CycleFailure(
                        "ext-pattern-violation",
                        f"dim Ext^{t}({c.names[i]}, {c.names[j]}) = {got}, expected {want}",
                        (i, j, t), degrees)
    if n == 1 and degrees[0] == 0 and not end_splits(c.modules[0]):
        return CycleFailure("end-not-split", "End is 2-dimensional without a non-scalar idempotent",
                            (0,), degrees)
    return CycleCertificate(degrees, witnesses, table, tmax, gor.pair(), "fast" if fast else "full")


def end_splits(m):
    """True when End(m) is 2-dimensional and contains a non-scalar idempotent."""
    F = m.field
    basis = [h.matrix for h in hom_basis(m, m)]
    if len(basis) != 2:
        return False
    eye = F.eye(m.dim)
    u = next((b for b in basis if F.rank(_stack_cols(F, [b, eye])) == 2), None)
    if u is None:
        return False
    # u^2 = alpha*u + beta*1
    coef = F.solve(_stack_cols(F, [u, eye]), F.matmul(u, u).reshape(-1))
    alpha, beta = coef[0], coef[1]
    disc = alpha * alpha + 4 * beta
    if F.is_prime:
        p = F.p
        if p == 2:
            return any(
                F.equal(F.matmul(x, x), x) and not F.is_zero(x) and not F.equal(x, eye)
                for x in (F.add(F.scale(a, u), F.scale(b, eye)) for a in range(2) for b in range(2)))
        disc %= p
        return disc != 0 and pow(int(disc), (p - 1) // 2, p) == 1
    disc = Fraction(disc)
    return disc != 0 and disc > 0 and _is_square(disc.numerator) and _is_square(disc.denominator)


def _is_square(n):
    r = math.isqrt(n)
    return r * r == n


def _stack_cols(F, mats):
    out = F.zeros(mats[0].size, len(mats))
    for k, m in enumerate(mats):
        out[:, k] = m.reshape(-1)
    return out


# -- products -----------------------------------------------------------------------------


@dataclass
class ProductResult:
    algebra: object
    embedding: object
    bimodule: object
    triples: list
    sequence: list
    expected_degrees: tuple
    names: list = dc_field(default_factory=list)
    glued_index: int = 0

    def cycle(self):
        return PerfectCycle(self.algebra, self.sequence, list(self.names))

    def glued_is_projective(self):
        """Whether the glued term ``(E_n, F_1)_Psi`` is projective over the triangular algebra."""
        glued = self.sequence[self.glued_index]
        return is_projective(glued)


def _degrees(cert_or_degrees):
    if isinstance(cert_or_degrees, CycleCertificate):
        return tuple(cert_or_degrees.degrees)
    if isinstance(cert_or_degrees, CycleFailure):
        raise ValueError(f"input cycle failed verification: {cert_or_degrees}")
    return tuple(cert_or_degrees)


def product(e, f, cert_e=None, cert_f=None, cutoff=DEFAULT_CUTOFF, seed=0, trials=8, name=None):
    """``E_* (x) F_*`` over ``[[A, E_n (x) D F_1], [0, B]]``."""
    if e.algebra.field != f.algebra.field:
        from .errors import FieldMismatch
        raise FieldMismatch("cycles over different fields")
    c = _degrees(cert_e if cert_e is not None else verify_cycle(e, cutoff, seed, trials))
    d = _degrees(cert_f if cert_f is not None else verify_cycle(f, cutoff, seed, trials))
    En, F1 = e.modules[-1], f.modules[0]
    N = external_tensor(En, dual(F1))
    lam, emb = triangular(e.algebra, f.algebra, N, name=name)
    triples, names = [], []
    for i, E in enumerate(e.modules[:-1]):
        triples.append(a_triple(N, E))
        names.append(f"({e.names[i]},0)")
    psi = psi_map(En, F1, bimodule=N)
    triples.append(TripleModule(En, F1, psi.matrix, N))
    names.append(f"({e.names[-1]},{f.names[0]})")
    for j, F_ in enumerate(f.modules[1:], start=1):
        triples.append(b_triple(N, F_))
        names.append(f"(0,{f.names[j]})")
    seq = [triple_to_module(t, lam, emb) for t in triples]
    for m, nm in zip(seq, names):
        m.name = nm
    expected = tuple(c[:-1]) + tuple(d[:-1]) + (c[-1] + d[-1] + 1,)
    return ProductResult(lam, emb, N, triples, seq, expected, names, glued_index=len(e) - 1)


def kk_cycle(field):
    """``(k, k)`` over the ground field: the 2-cycle with degrees (0, 0)."""
    k = ground_algebra(field)
    reg = regular_module(k)
    return PerfectCycle(k, [reg, reg], ["k", "k"])


def extend(e, cert_e=None, **kw):
    kk = kk_cycle(e.algebra.field)
    return product(e, kk, cert_e, (0, 0), **kw)


def coextend(e, cert_e=None, **kw):
    kk = kk_cycle(e.algebra.field)
    return product(kk, e, (0, 0), cert_e, **kw)


# -- Serre images of triple modules ---------------------------------------------------------------


@dataclass
class SerreShiftCheck:
    rule: str
    sample: str
    hypothesis: bool
    passed: bool
    degree: int = None
    detail: str = ""


def _shift_matches(si, target, degree, seed, trials):
    if isinstance(si, NotAShiftedModule):
        return False, f"not a shifted module: {si.homology_dims}"
    if si.degree != degree:
        return False, f"degree {si.degree}, expected {degree}"
    iso = is_isomorphic(si.image, target, seed, trials)
    if iso.verdict == "undecided":
        raise UndecidedIsomorphism(iso.reason)
    return iso.isomorphic, iso.reason


def _ext_row(m, n, tmax, cutoff):
    return [ext_dim(m, n, t, cutoff) for t in range(tmax + 1)]


def check_a_side(lam, x, cutoff=DEFAULT_CUTOFF, seed=0, trials=8, label="X"):
    """``S(X, 0) = (Y, Hom_A(N, Y))_Theta [c]`` when ``Ext^{>0}_A(N, Y) = 0``."""
    emb = lam.triangular
    N = emb.bimodule
    sa = serre_image(x, cutoff)
    if isinstance(sa, NotAShiftedModule):
        return SerreShiftCheck("a-side", label, False, False, detail="X has no stalk Serre image")
    y, c = sa.image, sa.degree
    pd = proj_dim(N.left, cutoff)
    tops = max(int(pd), 0) if pd != math.inf else cutoff
    ext = _ext_row(N.left, y, tops, cutoff)
    if any(ext[1:]):
        return SerreShiftCheck("a-side", label, False, False, c, f"Ext_A(N, Y) = {ext}")
    hmod, theta = theta_map(N, y)
    target = triple_to_module(TripleModule(y, hmod, theta.matrix, N), lam, emb)
    ok, why = _shift_matches(serre_image(triple_to_module(a_triple(N, x), lam, emb), cutoff),
                             target, c, seed, trials)
    return SerreShiftCheck("a-side", label, True, ok, c, why)


def check_b_side(lam, v, cutoff=DEFAULT_CUTOFF, seed=0, trials=8, label="V"):
    """``S(N (x) V, V)_Id = (0, W)[d]`` when ``Tor_{>0}^B(N, V) = 0``."""
    emb = lam.triangular
    N = emb.bimodule
    sb = serre_image(v, cutoff)
    if isinstance(sb, NotAShiftedModule):
        return SerreShiftCheck("b-side", label, False, False, detail="V has no stalk Serre image")
    w, d = sb.image, sb.degree
    tors = [tor_dim(N.right, v, t, cutoff) for t in range(1, max(d, 0) + 3)]
    if any(tors):
        return SerreShiftCheck("b-side", label, False, False, d, f"Tor_{{>0}}(N, V) = {tors}")
    target = triple_to_module(b_triple(N, w), lam, emb)
    src = triple_to_module(identity_triple(N, v), lam, emb)
    ok, why = _shift_matches(serre_image(src, cutoff), target, d, seed, trials)
    return SerreShiftCheck("b-side", label, True, ok, d, why)


def check_crossing(lam, x, v, cutoff=DEFAULT_CUTOFF, seed=0, trials=8, label="(X,V)"):
    """``S(0, V) = (Y, 0)[c+d+1]`` under the single-degree Ext/Tor hypotheses."""
    emb = lam.triangular
    N = emb.bimodule
    sa, sb = serre_image(x, cutoff), serre_image(v, cutoff)
    if isinstance(sa, NotAShiftedModule) or isinstance(sb, NotAShiftedModule):
        return SerreShiftCheck("crossing", label, False, False, detail="no stalk Serre image")
    y, c = sa.image, sa.degree
    w, d = sb.image, sb.degree
    tmax = max(c, d) + 2
    ext = _ext_row(N.left, y, tmax, cutoff)
    want_ext = [w.dim if t == c else 0 for t in range(tmax + 1)]
    tor = [tor_dim(N.right, v, t, cutoff) for t in range(tmax + 1)]
    want_tor = [x.dim if t == d else 0 for t in range(tmax + 1)]
    hyp = ext == want_ext and tor == want_tor
    if hyp:
        iso = is_isomorphic(tor_module(N, v, d, cutoff), x, seed, trials)
        hyp = iso.isomorphic
    if not hyp:
        return SerreShiftCheck("crossing", label, False, False, c + d + 1, f"Ext {ext} / Tor {tor}")
    target = triple_to_module(a_triple(N, y), lam, emb)
    src = triple_to_module(b_triple(N, v), lam, emb)
    ok, why = _shift_matches(serre_image(src, cutoff), target, c + d + 1, seed, trials)
    return SerreShiftCheck("crossing", label, True, ok, c + d + 1, why)


def check_serre_shifts(lam, a_side=(), b_side=(), crossing=(), cutoff=DEFAULT_CUTOFF, seed=0, trials=8):
    """Run the three shift checks on the given samples; returns a list of ``SerreShiftCheck``."""
    out = []
    for k, x in enumerate(a_side):
        out.append(check_a_side(lam, x, cutoff, seed, trials, label=x.name or f"X{k}"))
    for k, v in enumerate(b_side):
        out.append(check_b_side(lam, v, cutoff, seed, trials, label=v.name or f"V{k}"))
    for k, (x, v) in enumerate(crossing):
        out.append(check_crossing(lam, x, v, cutoff, seed, trials, label=f"({x.name},{v.name})"))
    return out


def product_patterns(e, f, result, cert_e, cert_f, cutoff=DEFAULT_CUTOFF, seed=0, trials=8):
    """Ext/Tor vanishing patterns of ``N`` against the two cycles, at the dimension level.

    ``Ext^t_A(N, E_i)`` is ``F_1`` for (i=1, t=c_n) and (i=n, t=0);
    ``Tor_t^B(N, F_i)`` is ``E_n`` for (i=1, t=0) and (i=m, t=d_m). Returns a
    list of mismatches (empty when both patterns hold), plus module-level
    identifications of the Tor terms.
    """
    N = result.bimodule
    c, d = _degrees(cert_e), _degrees(cert_f)
    n, m = len(e), len(f)
    En, F1 = e.modules[-1], f.modules[0]
    bad = []
    tmax = max(c + d) + 2
    for i, E in enumerate(e.modules):
        for t in range(tmax + 1):
            want = 0
            if i == 0 and t == c[-1]:
                want += F1.dim
            if i == n - 1 and t == 0:
                want += F1.dim
            got = ext_dim(N.left, E, t, cutoff)
            if got != want:
                bad.append(("ext", i, t, got, want))
    for i, F_ in enumerate(f.modules):
        for t in range(tmax + 1):
            want = 0
            if i == 0 and t == 0:
                want += En.dim
            if i == m - 1 and t == d[-1]:
                want += En.dim
            got = tor_dim(N.right, F_, t, cutoff)
            if got != want:
                bad.append(("tor", i, t, got, want))
            elif want:
                copies = direct_sum([En] * (want // En.dim))
                iso = is_isomorphic(tor_module(N, F_, t, cutoff), copies, seed, trials)
                if not iso.isomorphic:
                    bad.append(("tor-iso", i, t, iso.verdict, want))
    return bad


def gorenstein_criterion(lam, cutoff=DEFAULT_CUTOFF):
    """``(proj.dim _A N, proj.dim N_B)``; both finite certifies the triangular algebra Gorenstein
    when its diagonal blocks are."""
    N = lam.triangular.bimodule
    return proj_dim(N.left, cutoff), proj_dim(N.right, cutoff)
