"""Seeded property suites over random small algebras, modules and triangular algebras.

Each test id carries its seed; rerun one instance with ``-k "suite and 17"``.
"""

import pytest

import samples
from excycles.errors import CutoffExceeded
from excycles.homolog import (
    NotAShiftedModule, ext_dim, gorenstein, inj_dim, nakayama, proj_dim, serre_image, tor_dim,
)
from excycles.modrep import (
    TripleModule, a_triple, b_triple, dual, external_tensor, identity_triple, indec_projectives,
    is_isomorphic, theta_map,
)

SEEDS = range(50)
TMAX = 4
CUTOFF = 8

pytestmark = pytest.mark.criterion(5)


@pytest.mark.parametrize("seed", SEEDS)
def test_triple_ext_reduces_to_blocks(seed):
    """Ext over the triangular algebra from (X', 0) and into (0, Y') is Ext over A and B."""
    rng = samples.rng_for("triple-ext", seed)
    lam, emb, A, B, N = samples.random_triangular(rng)
    x2, x = samples.small_module(A, rng, 4), samples.small_module(A, rng, 4)
    y, y2 = samples.small_module(B, rng, 4), samples.small_module(B, rng, 4)
    M = samples.triple(samples.random_phi(N, x, y, rng), lam, emb)
    L = samples.triple(a_triple(N, x2), lam, emb)
    R = samples.triple(b_triple(N, y2), lam, emb)
    for t in range(TMAX + 1):
        assert ext_dim(L, M, t) == ext_dim(x2, x, t), f"from (X',0) at t={t}"
        assert ext_dim(M, R, t) == ext_dim(y, y2, t), f"into (0,Y') at t={t}"


@pytest.mark.parametrize("seed", SEEDS)
def test_external_tensor_ext_and_tor(seed):
    """Ext_A(E (x) D F, X) = F (x) Ext_A(E, X) and Tor^B(E (x) D F, Y) = E (x) D Ext_B(Y, F)."""
    rng = samples.rng_for("key-identities", seed)
    A = samples.algebra(rng.choice(samples.SMALL))
    B = samples.algebra(rng.choice(samples.SMALL))
    E, Fm = samples.small_module(A, rng), samples.small_module(B, rng)
    X, Y = samples.random_module(A, rng), samples.random_module(B, rng)
    N = external_tensor(E, dual(Fm))
    for t in range(TMAX):
        assert ext_dim(N.left, X, t) == Fm.dim * ext_dim(E, X, t), f"Ext at t={t}"
        assert tor_dim(N.right, Y, t) == E.dim * ext_dim(Y, Fm, t), f"Tor at t={t}"


@pytest.mark.parametrize("seed", SEEDS)
def test_nakayama_on_triangular_projectives(seed):
    """nu(P, 0) = (nu P, Hom_A(N, nu P))_Theta and nu(N (x) Q, Q)_Id = (0, nu Q)."""
    rng = samples.rng_for("nakayama-triangular", seed)
    lam, emb, A, B, N = samples.random_triangular(rng)
    for i, P in enumerate(indec_projectives(A)):
        nuP = nakayama(P)
        hmod, theta = theta_map(N, nuP)
        want = samples.triple(TripleModule(nuP, hmod, theta.matrix, N), lam, emb)
        got = nakayama(samples.triple(a_triple(N, P), lam, emb))
        assert is_isomorphic(got, want, seed=seed).isomorphic, f"A-projective {i}"
    for j, Q in enumerate(indec_projectives(B)):
        want = samples.triple(b_triple(N, nakayama(Q)), lam, emb)
        got = nakayama(samples.triple(identity_triple(N, Q), lam, emb))
        assert is_isomorphic(got, want, seed=seed).isomorphic, f"B-projective {j}"


def _shifted_instance(rng):
    """A Gorenstein algebra and a module whose Serre image is a shifted module."""
    for _ in range(60):
        if rng.random() < 0.35:
            lam = samples.random_triangular(rng)[0]
            if not gorenstein(lam, CUTOFF).is_gorenstein:
                continue
            A, max_dim = lam, 8
        else:
            A, max_dim = samples.algebra(rng.choice(samples.GORENSTEIN)), 6
        x = samples.random_module(A, rng, max_dim)
        try:
            si = serre_image(x, CUTOFF)
        except CutoffExceeded:
            continue
        if not isinstance(si, NotAShiftedModule):
            return A, x, si
    raise AssertionError("no instance with a shifted Serre image")


@pytest.mark.parametrize("seed", SEEDS)
def test_serre_duality_swaps_ext(seed):
    """dim Ext^t(x, y) = dim Ext^{d-t}(y, Sx) with Sx = H[d]."""
    rng = samples.rng_for("serre-duality", seed)
    A, x, si = _shifted_instance(rng)
    y = samples.random_module(A, rng, 6)
    d = si.degree
    for t in range(d + 2):
        assert ext_dim(x, y, t) == ext_dim(y, si.image, d - t), f"t={t}, d={d}"


@pytest.mark.parametrize("seed", SEEDS)
def test_serre_degree_is_proj_and_inj_dim(seed):
    rng = samples.rng_for("serre-degree", seed)
    A, x, si = _shifted_instance(rng)
    assert si.degree >= 0
    assert proj_dim(x, CUTOFF) == si.degree == inj_dim(si.image, CUTOFF)
