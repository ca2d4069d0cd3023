import numpy as np
import pytest
import sympy

from hkgeom import irrational as irr
from hkgeom import lattice as lat
from hkgeom import period as per
from hkgeom.errors import DomainError

U3 = lat.standard_lattice("U3")


def test_exact_closure_single_rational_vector():
    rep = irr.rational_closure([[1, 2, 3]], mode="exact")
    assert rep.closure_dim == 1
    assert rep.ambient_dim == 3
    assert len(rep.relations) == 2
    for delta in rep.relations:
        assert sum(d * w for d, w in zip(delta, [1, 2, 3])) == 0


def test_exact_closure_matches_sympy_rank_oracle():
    rng = np.random.default_rng(17)
    for _ in range(25):
        k = int(rng.integers(1, 4))
        vecs = [[int(x) for x in rng.integers(-5, 6, size=6)] for _ in range(k)]
        if all(not any(v) for v in vecs):
            continue
        rep = irr.rational_closure(vecs, mode="exact")
        assert rep.closure_dim == sympy.Matrix(vecs).rank()
        for delta in rep.relations:
            for v in vecs:
                assert sum(d * w for d, w in zip(delta, v)) == 0


def test_exact_closure_rejects_empty():
    with pytest.raises(DomainError):
        irr.rational_closure([], mode="exact")


def test_detect_sqrt2_line():
    w = np.zeros(6)
    w[0], w[1] = 1.0, np.sqrt(2.0)
    rep = irr.rational_closure([w], mode="detect", height=100, tol=1e-9)
    # all coordinate forms e_i, i >= 3 are found; nothing ties 1 and sqrt(2)
    assert rep.closure_dim == 2
    assert len(rep.relations) == 4
    for delta in rep.relations:
        assert delta[0] == 0 and delta[1] == 0


def test_detect_planted_relation():
    rng = np.random.default_rng(5)
    w = np.array([1.0, 3.0, -2.0, 0.0, 0.0, 0.0]) + 1e-12 * rng.standard_normal(6)
    rep = irr.rational_closure([w], mode="detect", height=100, tol=1e-9)
    # the plant (3, -1, 0, ...) or an equivalent is recovered
    assert any(d[0] != 0 or d[1] != 0 or d[2] != 0 for d in rep.relations)
    for delta in rep.relations:
        assert abs(sum(d * x for d, x in zip(delta, w))) < 1e-9


def test_fully_irrational_verdicts():
    # a rational 3-plane in U3 is not fully irrational; witness delivered
    vecs = [[1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 1, 1]]
    verdict = irr.is_fully_irrational([np.array(v, dtype=float) for v in vecs])
    assert not verdict.fully_irrational
    assert verdict.witness is not None
    delta = np.array(verdict.witness, dtype=float)
    for v in vecs:
        assert abs(delta @ np.array(v, dtype=float)) < verdict.tol
    # the full space is deterministically fully irrational
    full = irr.is_fully_irrational([row for row in np.eye(6)])
    assert full.fully_irrational and full.deterministic


def test_fully_irrational_random_planes():
    rng = np.random.default_rng(23)
    hits = 0
    for _ in range(20):
        vecs = rng.uniform(-1, 1, size=(2, 6))
        verdict = irr.is_fully_irrational(list(vecs), height=100, tol=1e-9)
        hits += verdict.fully_irrational
    assert hits == 20


def test_picard_rational_plane_has_witness():
    z = per.period_point(
        U3,
        np.array([1, 1, 0, 0, 0, 0], dtype=float),
        np.array([0, 0, 1, 1, 0, 0], dtype=float),
    )
    verdict = irr.picard_trivial(z, height=2, tol=1e-9)
    assert not verdict.trivial_up_to_height
    v = np.array(verdict.witness, dtype=float)
    assert abs(per.bform(U3, v, z.re)) < 1e-9
    assert abs(per.bform(U3, v, z.im)) < 1e-9
    assert max(abs(x) for x in verdict.witness) <= 2


def test_picard_height_zero_vacuous():
    z = per.sample_period_point(U3, 1)
    verdict = irr.picard_trivial(z, height=0)
    assert verdict.trivial_up_to_height
    assert verdict.method == "vacuous"


def test_picard_irrational_plane_trivial():
    for seed in (3, 9):
        z = per.sample_period_point(U3, seed)
        verdict = irr.picard_trivial(z, height=10, tol=1e-9, method="lll")
        assert verdict.trivial_up_to_height


def test_picard_lll_matches_exhaustive_on_rational_plane():
    z = per.period_point(
        U3,
        np.array([1, 1, 0, 0, 0, 0], dtype=float),
        np.array([0, 0, 1, 1, 0, 0], dtype=float),
    )
    ex_verdict = irr.picard_trivial(z, height=2, tol=1e-9, method="exhaustive")
    lll_verdict = irr.picard_trivial(z, height=2, tol=1e-9, method="lll")
    assert not ex_verdict.trivial_up_to_height
    assert not lll_verdict.trivial_up_to_height
