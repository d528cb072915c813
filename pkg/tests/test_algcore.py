import json

import numpy as np
import pytest

import oracles
import samples
from excycles import QQ, build_from_quiver, opposite, triangular
from excycles.algcore import QuiverPresentation, ground_algebra, semisimple_algebra
from excycles.errors import FieldMismatch, InfiniteDimensional, MalformedQuiver
from excycles.modrep import dual, external_tensor, indec_projectives


def _quiver_of(path):
    with open(samples.data_path(path)) as fh:
        q = json.load(fh)["quiver"]
    return q["vertices"], [tuple(a) for a in q["arrows"]], q.get("relations", [])


@pytest.mark.parametrize("name, dim", [("A.json", 12), ("B.json", 18), ("Q3.json", 39),
                                        ("A3_monomial.json", 5), ("local_square_zero.json", 3)])
def test_shipped_dimensions_match_path_count(shipped, name, dim):
    key = name[:-5]
    assert shipped[key].dim == dim == oracles.count_paths(*_quiver_of(name))


@pytest.mark.parametrize("name", list(samples.QUIVERS))
def test_small_algebras_match_path_count(name):
    A = samples.algebra(name)
    assert A.dim == oracles.count_paths(*samples.QUIVERS[name])


@pytest.mark.parametrize("name", ["A2", "A3-zero", "kronecker", "cycle2", "dual-numbers"])
def test_structure_constants_associative(name):
    A = samples.algebra(name, QQ)
    assert oracles.associative(A)
    assert A.associativity_violation() is None
    assert A.check()


def test_shipped_algebras_pass_axioms(shipped):
    for key in ("A", "B", "Q3", "k"):
        assert shipped[key].check()


def test_path_composition_order(shipped):
    A = shipped["A"]
    a1, a2 = A.index("a1"), A.index("a2")
    # a1: 1 -> 2 then a2: 2 -> 3 gives a2*a1; the other order is zero
    prod = A.mult(A.basis_vector(a2), A.basis_vector(a1))
    assert A.field.equal(prod, A.basis_vector(A.index("a2*a1")))
    assert A.field.is_zero(A.mult(A.basis_vector(a1), A.basis_vector(a2)))


def test_monomial_relation_kills_path(shipped):
    A = shipped["A"]
    assert "a3*a2*a1" not in A.labels
    assert "a2*a1" in A.labels


def test_unit_is_sum_of_idempotents(shipped):
    A = shipped["B"]
    total = A.field.zeros(A.dim)
    for e in A.idempotents:
        total = A.field.add(total, e)
    assert A.field.equal(total, A.unit)


def test_opposite_is_an_involution(shipped):
    A = shipped["A"]
    Aop = opposite(A)
    assert opposite(Aop) is A
    i, j = A.index("a1"), A.index("a2")
    assert A.field.equal(Aop.mult(A.basis_vector(i), A.basis_vector(j)),
                         A.mult(A.basis_vector(j), A.basis_vector(i)))
    assert Aop.check()


def test_ground_and_semisimple():
    assert ground_algebra(QQ).dim == 1
    S = semisimple_algebra(3, QQ)
    assert S.dim == 3 and S.check()


@pytest.mark.parametrize("vertices, arrows, relations, msg", [
    (["1", "1"], [], [], "duplicate vertex"),
    (["1", "2"], [("1", "3", "a")], [], "dangling"),
    (["1", "2"], [("1", "2", "a"), ("2", "1", "a")], [], "duplicate arrow"),
    (["1", "2"], [("1", "2", "a")], [("a",)], "length"),
    (["1", "2"], [("1", "2", "a"), ("1", "2", "b")], [("a", "b")], "not composable"),
    (["1"], [("1", "1", "x")], [("x", "y")], "unknown arrow"),
])
def test_malformed_quivers_rejected(vertices, arrows, relations, msg):
    q = QuiverPresentation(tuple(vertices), tuple(arrows), tuple(relations))
    with pytest.raises(MalformedQuiver, match=msg):
        build_from_quiver(q, QQ)


def test_loop_without_relations_is_infinite():
    q = QuiverPresentation(("1",), (("1", "1", "x"),), ())
    with pytest.raises(InfiniteDimensional):
        build_from_quiver(q, QQ, max_length=10)


def test_triangular_dimension_and_blocks(shipped):
    A, B = shipped["A"], shipped["B"]
    P, Q = indec_projectives(A)[1], indec_projectives(B)[4]
    N = external_tensor(P, dual(Q))
    lam, emb = triangular(A, B, N)
    assert N.dim == 9
    assert lam.dim == A.dim + N.dim + B.dim == 39
    assert emb.check()
    assert lam.triangular is emb
    assert lam.check()
    # N * A = 0 and B * N = 0 in the triangular product
    s = lam.structure
    assert not np.any(s[np.ix_(list(emb.n_range), list(emb.a_range))] != 0)
    assert not np.any(s[np.ix_(list(emb.b_range), list(emb.n_range))] != 0)


def test_triangular_needs_one_field(shipped):
    A = shipped["A"]
    other = samples.algebra("A2", samples.FP if A.field == QQ else QQ)
    P = indec_projectives(A)[0]
    Q = indec_projectives(other)[0]
    with pytest.raises(FieldMismatch):
        external_tensor(P, dual(Q))
