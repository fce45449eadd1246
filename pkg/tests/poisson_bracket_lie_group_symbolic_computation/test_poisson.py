from fractions import Fraction

import flint

from bdcluster.cluster import build_structure, omega_matrix
from bdcluster.exactalg import flint_context
from bdcluster.liealg import standard_case
from bdcluster.rmatrix import Bracket, PointSampler, assemble_r, bracket_coefficient
from bdcluster.verify import (check_log_canonical, check_semi_invariance, check_stable_x_log_canonical,
                              double_determinants, symbolic_bracket)


def _fq(c):
    return flint.fmpq(c.numerator, c.denominator)


def _q(f):
    ctx = flint_context(rational=True)
    return ctx.from_dict({k: _fq(Fraction(int(v))) for k, v in f.flint().to_dict().items()})


def test_trivial_functions_log_canonical_symbolically():
    t = standard_case(1)
    s = build_structure(t)
    res = check_log_canonical(assemble_r(t), s.functions, PointSampler(seed=2), points=4, symbolic_cap=5)
    assert res.status == "pass"
    om = res.data["omega"]
    assert all(om[i][j] == -om[j][i] for i in range(24) for j in range(24))


def test_case10_large_pair_by_points(pipelines):
    p = pipelines(10)
    fs = {f.name: f for f in p.structure.functions}
    f, g = fs["f43"], fs["f54"]
    br = Bracket(p.r0.r)
    # 10x10 and 11x11 minors: too large for the symbolic product, so agreement across points
    ws = {bracket_coefficient(br, f, g, PointSampler(seed=s)) for s in range(11, 16)}
    assert len(ws) == 1


def test_symbolic_bracket_matches_sampled():
    t = standard_case(2)
    s = build_structure(t)
    r = assemble_r(t)
    fs = [f for f in s.functions if f.size <= 2][:4]
    om = omega_matrix(r, fs, PointSampler(seed=5), points=3)
    for i in range(len(fs)):
        for j in range(len(fs)):
            lhs = symbolic_bracket(r, fs[i].flint(), fs[j].flint())
            assert lhs == _q(fs[i]) * _q(fs[j]) * _fq(om[i][j])


def test_semi_invariance_trivial():
    t = standard_case(1)
    res = check_semi_invariance(assemble_r(t), double_determinants(build_structure(t)))
    assert res.status == "pass"


def test_semi_invariance_case13_six_by_six():
    t = standard_case(13)
    s = build_structure(t)
    dets = double_determinants(s)
    assert sorted(len(g) for g in s.matrices[2:]) == [6, 14]
    res = check_semi_invariance(assemble_r(t), [d for d in dets if d.size == 6])
    assert res.status == "pass"


class _TraceAdapter:
    """x11 + x22 on the double, not semi-invariant."""
    source = 0

    def value_and_gradient(self, px, py, split=True):
        gx = [[Fraction(int(i == j and i < 2)) for j in range(5)] for i in range(5)]
        gy = [[Fraction(0)] * 5 for _ in range(5)]
        return Fraction(px[0][0] + px[1][1]), (gx, gy)


def test_semi_invariance_detects_non_invariant_function():
    res = check_semi_invariance(assemble_r(standard_case(1)), [_TraceAdapter()])
    assert res.status == "fail"
    assert "not proportional" in res.detail


def test_semi_invariance_fails_with_swapped_r(pipelines):
    # dets built for one triple are not semi-invariant under another triple's r
    res = check_semi_invariance(assemble_r(standard_case(1)), double_determinants(pipelines(13).structure))
    assert res.status == "fail"


def test_stable_functions_log_canonical_with_entries(pipelines):
    for k in (1, 2):
        p = pipelines(k)
        assert check_stable_x_log_canonical(p.r0.r, p.structure, points=3).status == "pass"


def test_nonorientable_sign_choice(pipelines):
    import dataclasses

    import pytest

    from bdcluster.rmatrix import NotLogCanonicalError

    p = pipelines(11)
    fs = {f.name: f for f in p.structure.functions}
    f15 = fs["f15"]
    flipped = dataclasses.replace(f15, terms=tuple(
        t if i == 0 else dataclasses.replace(t, sign=-t.sign) for i, t in enumerate(f15.terms)))
    br = Bracket(p.r0.r)
    assert bracket_coefficient(br, fs["f11"], f15, PointSampler(seed=9)) == \
        bracket_coefficient(br, fs["f11"], f15, PointSampler(seed=10))
    # with det M_j + (-1)^j det M'_j the pair is no longer log-canonical
    with pytest.raises(NotLogCanonicalError):
        bracket_coefficient(br, fs["f11"], flipped, PointSampler(seed=9))
