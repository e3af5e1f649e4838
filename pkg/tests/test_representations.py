import pytest

import oracles
from dyckarc import combinatorics as cb
from dyckarc import hecke_algebra as ha
from dyckarc import representations as rep
from dyckarc.combinatorics import Shape

S33 = Shape(3, 3)
SHAPES = [Shape(m, n) for m in range(1, 4) for n in range(1, 4)]


def test_dp_set_rectangle_and_empty():
    assert rep.dp_set(S33, (3, 3, 3)) == (((3, 3, 3),),)
    assert rep.dp_set(Shape(1, 1), ()) == (((),), ((1,),))
    with pytest.raises(ValueError):
        rep.dp_set(S33, (4,))


def test_standard_module_two_one():
    mod = rep.standard_module(S33, (2, 1))
    assert mod.grades[0] == ((2, 1),)
    assert mod.grades[-1] == ((3, 2, 1),)
    expected = sorted(mu for mu in oracles.partitions(3, 3) if oracles.is_dyck_pair((2, 1), mu))
    assert sorted(mod.basis) == expected
    for mu in mod.basis:
        assert mod.grade_of(mu) == oracles.dyck_degree((2, 1), mu)
    assert mod.dimension() == len(expected)


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 6) for n in range(1, 6) if m + n <= 8])
def test_socle_weight_is_unique_top(m, n):
    shape = Shape(m, n)
    for lam in cb.enum_partitions(shape):
        top = rep.dp_set(shape, lam)[-1]
        assert top == (rep.socle_weight(shape, lam),), lam


def test_socle_weight_examples():
    assert rep.socle_weight(S33, (2, 1)) == (3, 2, 1)
    assert rep.socle_weight(S33, (3, 3, 3)) == (3, 3, 3)
    assert rep.socle_weight(Shape(1, 1), ()) == (1,)


def test_lattice_two_one():
    g = rep.alperin_edges(S33, (2, 1))
    assert g.sources() == [(2, 1)]
    assert g.sinks() == [(3, 2, 1)]
    for a, b in g.edges:
        lo, hi = (a, b) if cb.contains(b, a) else (b, a)
        assert cb.degree(S33, lo, hi) == 1


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_action_realizes_lattice(shape):
    for lam in cb.enum_partitions(shape):
        edges, anomalies = rep.action_edges(shape, lam)
        assert not anomalies
        assert set(edges) == set(rep.alperin_edges(shape, lam).edges), lam


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_unique_source_and_sink(shape):
    for lam in cb.enum_partitions(shape):
        g = rep.alperin_edges(shape, lam)
        assert g.sources() == [lam]
        assert g.sinks() == [rep.socle_weight(shape, lam)]


def test_module_action_identity_and_mismatch():
    lam = (2, 1)
    for mu in rep.standard_module(S33, lam).basis:
        assert rep.module_action(S33, lam, ha.idem(mu), mu) == {mu: 1}
    g = next(g for g in ha.generators(S33) if g.kind == ha.UP_GEN and g.col != lam)
    assert rep.module_action(S33, lam, g, lam) == {}


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_graded_decomposition_is_kl(shape):
    for lam in cb.enum_partitions(shape):
        d = rep.graded_decomposition(shape, lam)
        for mu in cb.enum_partitions(shape):
            assert d.get(mu, 0) == cb.kl_polynomial(shape, lam, mu)
        assert sum(p.at_one() for p in d.values()) == rep.standard_module(shape, lam).dimension()


def test_lattice_dot():
    dot = rep.lattice_dot(S33, (2, 1))
    mod = rep.standard_module(S33, (2, 1))
    assert dot.startswith("digraph")
    assert dot.count("rank=same") == len(mod.grades)
    ranks = "".join(line for line in dot.splitlines() if "rank=same" in line)
    assert sorted(ranks.count(f'"({cb.format_partition(mu)})";') for mu in mod.basis) == [1] * mod.dimension()
    assert dot.count("->") == len(rep.alperin_edges(S33, (2, 1)).edges)
    single = rep.lattice_dot(S33, (3, 3, 3))
    assert "->" not in single


def test_json():
    data = rep.alperin_edges(S33, (2, 1)).to_json()
    assert data["lambda"] == [2, 1] and data["grades"][0] == [[2, 1]]
    assert all(len(e) == 2 for e in data["edges"])
