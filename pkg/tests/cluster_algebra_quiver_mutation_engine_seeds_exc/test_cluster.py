import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bdcluster.cluster import (ClusterError, Quiver, compatibility_defect, exchange_matrix, extend_to_mat5,
                               is_skew, mutate_cluster, mutate_matrix, qt_rules, quiver_from_B, seed_quiver)
from bdcluster.exactalg import matmul, rank
from bdcluster.laurent import laurent_probe, probe_cluster, rational_reconstruction, split_denominator
from bdcluster.liealg import standard_case
from bdcluster.verify import (Config, build_pipeline, check_adjacent_regular, corrupt_exchange, standard_quiver,
                              toric_weights, default_parametrization)


def test_mutation_worked_examples():
    assert mutate_matrix([[0, 1], [-1, 0]], 0) == [[0, -1], [1, 0]]
    assert mutate_matrix([[0, 1, 0], [-1, 0, 1]], 1) == [[0, -1, 1], [1, 0, -1]]
    assert mutate_matrix([[0, 1, 1], [-1, 0, 0]], 0) == [[0, -1, -1], [1, 0, 0]]
    with pytest.raises(ClusterError):
        mutate_matrix([[0, 1], [-1, 0]], 2)


skew = st.integers(2, 5).flatmap(lambda n: st.lists(st.integers(-3, 3), min_size=n * n, max_size=n * n).map(
    lambda v: [[0 if i == j else (v[i * n + j] if i < j else -v[j * n + i]) for j in range(n)] for i in range(n)]))


@given(skew, st.data())
def test_mutation_is_an_involution(b, data):
    k = data.draw(st.integers(0, len(b) - 1))
    mu = mutate_matrix(b, k)
    assert is_skew(mu)
    assert mutate_matrix(mu, k) == b


@given(skew, st.data())
def test_mutation_commutes_with_extension_rows(b, data):
    n = len(b)
    k = data.draw(st.integers(0, n - 1))
    extra = data.draw(st.lists(st.integers(-2, 2), min_size=n, max_size=n))
    # principal part of the mutated rectangular matrix is the mutated principal part
    rect = [row + [e] for row, e in zip(b, extra)]
    mu = mutate_matrix(rect, k)
    assert [row[:n] for row in mu] == mutate_matrix(b, k)


@pytest.mark.parametrize("k", [1, 2, 11, 13])
def test_exchange_matrix_compatible(pipelines, k):
    p = pipelines(k)
    mask = p.structure.stable_mask
    assert compatibility_defect(p.b_tilde, p.omega, mask) is None
    assert is_skew(p.seed.principal())
    assert len(p.b_tilde) == 24 - sum(mask)


def test_exchange_matrix_rejects_singular():
    with pytest.raises(ClusterError):
        exchange_matrix([[Fraction(0)] * 2] * 2, [False, False])


@pytest.mark.parametrize("k", [1, 6, 11])
def test_extend_to_mat5_homogeneous(pipelines, k):
    p = pipelines(k)
    s5 = p.seed_mat5
    assert len(s5.variables) == 25 and s5.variables[-1].label == (5, 5)
    for row in s5.exchange:
        assert sum(b * v.degree for b, v in zip(row, s5.variables)) == 0
    assert rank(s5.exchange) == len(s5.exchange)


def test_quiver_basics():
    q = quiver_from_B([[0]], ["a"], [False])
    assert q.edges == {}
    q = quiver_from_B([[0, 2], [-2, 0]], ["a", "b"], [False, False])
    assert q.edges == {("a", "b"): 2}
    q.add("b", "a", 3)
    assert q.edges == {("b", "a"): 1}


def test_trivial_quiver_is_planar():
    q, lam = standard_quiver()
    assert lam == 2
    assert q.is_planar()
    assert len(q.vertices) == 25
    assert sum(not m for m in q.mutable.values()) == 9


def test_rules_do_nothing_for_trivial_triple():
    q, _ = standard_quiver()
    assert qt_rules(standard_case(1), q).same_as(q)


def test_rules_for_single_root_triple():
    q, _ = standard_quiver()
    out = qt_rules(standard_case(2), q)
    assert out.mutable["f51"] and out.mutable["f25"]
    for e in (("f51", "f12"), ("f51", "f52"), ("f13", "f51")):
        assert e in out.edges


@pytest.mark.parametrize("k", [2, 10, 11, 13])
def test_computed_quiver_matches_rules(pipelines, k):
    q, _ = standard_quiver()
    assert seed_quiver(pipelines(k).seed_mat5).same_as(qt_rules(standard_case(k), q))


def test_mutate_cluster_exchange_relation(pipelines):
    seed = pipelines(1).seed_mat5
    k = seed.mutable[0]
    new, mutated = mutate_cluster(seed, k)
    rng = random.Random(3)
    pt = [[Fraction(rng.randint(-9, 9)) for _ in range(5)] for _ in range(5)]
    plus, minus = seed.exchange_monomials(k)
    val = lambda j: seed.variables[j].value(pt)  # noqa: E731
    mono = lambda m: eval_prod(val, m)  # noqa: E731
    point = {5 * i + j: pt[i][j] for i in range(5) for j in range(5)}
    assert new.evaluate(point) * val(k) == mono(plus) + mono(minus)
    assert mutated.mutate(k).exchange == seed.exchange


def eval_prod(val, m):
    acc = Fraction(1)
    for j, e in m.items():
        acc *= val(j) ** e
    return acc


def test_adjacent_regular_trivial(pipelines):
    res = check_adjacent_regular(pipelines(1).seed_mat5)
    assert res.status == "pass"
    assert len(res.data["directions"]) == 16


def test_adjacent_regular_single_direction(pipelines):
    seed = pipelines(2).seed_mat5
    k = seed.names.index("f51")
    res = check_adjacent_regular(seed, directions=[k])
    assert res.status == "pass" and "f51" in res.data["directions"]


def test_adjacent_regular_detects_corruption():
    p = build_pipeline(standard_case(1), Config(corrupt_b=True))
    res = check_adjacent_regular(p.seed_mat5, directions=[p.seed_mat5.mutable[0]])
    assert res.status == "fail"
    assert "A" in res.witness and "B" in res.witness


def test_corrupt_exchange_keeps_degrees(pipelines):
    p = pipelines(1)
    bt = corrupt_exchange(p.b_tilde, p.structure.functions, p.structure.stable_mask)
    assert bt != p.b_tilde
    degs = [f.degree for f in p.structure.functions]
    assert [sum(b * d for b, d in zip(r, degs)) for r in bt] == \
        [sum(b * d for b, d in zip(r, degs)) for r in p.b_tilde]


def test_rational_reconstruction_roundtrip():
    import flint

    p = 1000003
    num = flint.nmod_poly([3, 1, 4], p)
    den = flint.nmod_poly([1, 5], p) * flint.nmod_poly([1, 2], p)
    s = num.mul_low(den.inverse_series_trunc(40), 40)
    got = rational_reconstruction(s, 40, p)
    assert got is not None and got[1] == den
    assert split_denominator(den, [flint.nmod_poly([1, 5], p), flint.nmod_poly([1, 2], p)]) == [1, 1]
    assert split_denominator(den, [flint.nmod_poly([1, 5], p)]) is None


def test_laurent_trivial(pipelines):
    seed = pipelines(1).seed_mat5
    res = probe_cluster(seed)
    assert all(r.ok for r in res)
    assert res[0].entry == "x11" and res[0].denominator == {}
    assert laurent_probe(seed).status == "pass"


def test_laurent_detects_corruption():
    p = build_pipeline(standard_case(1), Config(corrupt_b=True))
    res = laurent_probe(p.seed_mat5, directions=[p.seed_mat5.mutable[0]])
    assert res.status == "fail"
    assert "non-monomial" in res.detail


def _toric_oracle(k):
    p = build_pipeline(standard_case(k))
    par = default_parametrization(standard_case(k))
    eta, zeta = toric_weights(p.structure.functions, par)
    rng = random.Random(k)
    taus = [Fraction(rng.choice([2, 3, 5]), rng.choice([1, 7])) for _ in par[0]]
    sigmas = [Fraction(rng.choice([2, 3]), rng.choice([1, 11])) for _ in par[0]]
    h = lambda tau: [prod_pow(tau, par[i]) for i in range(5)]  # noqa: E731
    h1, h2 = h(taus), h(sigmas)
    x = [[Fraction(rng.randint(-9, 9)) for _ in range(5)] for _ in range(5)]
    y = [[h1[i] * x[i][j] * h2[j] for j in range(5)] for i in range(5)]
    for f, e, z in zip(p.structure.functions, eta, zeta):
        assert f.value(y) == prod_pow(taus, e) * prod_pow(sigmas, z) * f.value(x)


def prod_pow(base, exps):
    acc = Fraction(1)
    for b, e in zip(base, exps):
        acc *= b ** e
    return acc


@pytest.mark.parametrize("k", [1, 2, 13])
def test_toric_weights_numeric_oracle(k):
    _toric_oracle(k)


def test_matmul_shape():
    assert matmul([[1, 2]], [[3], [4]]) == [[11]]
