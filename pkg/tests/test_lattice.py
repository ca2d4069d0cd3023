import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hkgeom import exactlin as ex
from hkgeom import lattice as lat
from hkgeom.errors import DomainError


U = lat.hyperbolic_plane()
U3 = lat.standard_lattice("U3")
K3 = lat.k3_lattice()


def test_signature_examples():
    assert lat.signature(U) == (1, 1)
    assert lat.signature(lat.QuadLattice.from_rows([[2, 0, 0], [0, -2, 0], [0, 0, -2]])) == (1, 2)
    assert lat.signature(K3) == (3, 19)
    assert lat.signature(lat.e8_lattice()) == (8, 0)
    assert lat.signature(U3) == (3, 3)


def test_standard_lattices():
    assert lat.rank_one(-2).gram == ((-2,),)
    assert U3.rank == 6
    assert K3.rank == 22
    assert K3.det == -1  # U contributes -1 three times, E8(-1) is unimodular
    assert lat.e8_lattice().det == 1
    with pytest.raises(DomainError):
        lat.rescale(U, 0)
    with pytest.raises(DomainError):
        lat.standard_lattice("nope")


def test_degenerate_rejected():
    with pytest.raises(DomainError):
        lat.QuadLattice.from_rows([[1, 1], [1, 1]])


def test_signature_random_oracle():
    rng = random.Random(2024)
    checked = 0
    while checked < 200:
        n = rng.randint(2, 7)
        a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        sym = [[a[i][j] + a[j][i] for j in range(n)] for i in range(n)]
        evals = np.linalg.eigvalsh(np.array(sym, dtype=float))
        if min(abs(evals)) < 1e-6:
            continue
        try:
            L = lat.QuadLattice.from_rows(sym)
        except DomainError:
            continue
        assert L.signature == (int((evals > 0).sum()), int((evals < 0).sum()))
        checked += 1


def test_dual_value_examples():
    # gram of U is self-inverse: (-1,1) G (-1,1)^T = -2
    assert lat.dual_value(U, [-1, 1]) == -2
    assert lat.dual_value(U3, [-1, 1, 0, 0, 0, 0]) == -2
    assert lat.dual_value(lat.rank_one(2), [1]) == Fraction(1, 2)


def test_is_negative_form_examples():
    # delta dual to e1 - f1 has coords b(e1-f1, .) = (-1, 1, 0, ...)
    coords = [-1, 1, 0, 0, 0, 0]
    assert lat.is_negative_form(U3, coords) is True
    assert lat.kernel_signature(U3, coords) == (3, 2)
    # dual to e1 + f1: q^vee = 2 > 0
    assert lat.is_negative_form(U3, [1, 1, 0, 0, 0, 0]) is False
    # dual to e1: isotropic
    assert lat.is_negative_form(U3, [0, 1, 0, 0, 0, 0]) is False
    with pytest.raises(DomainError):
        lat.is_negative_form(U3, [0] * 6)


def test_negative_form_sweep_agrees_with_kernel_inertia():
    # brute sweep of primitive U3 dual vectors; is_negative_form raises on
    # any disagreement between the dual-value sign and the kernel inertia
    import itertools

    seen = set()
    count = 0
    for coords in itertools.product(range(-3, 4), repeat=6):
        if not any(coords):
            continue
        prim = tuple(ex.primitive_vector(list(coords)))
        if prim in seen or tuple(-x for x in prim) in seen:
            continue
        seen.add(prim)
        verdict = lat.is_negative_form(U3, list(prim))
        assert verdict == (lat.dual_value(U3, list(prim)) < 0)
        count += 1
    assert count > 1000


def test_wall_form_indivisibility():
    w = lat.WallForm.from_coords(U3, [-1, 1, 0, 0, 0, 0])
    assert w.indivisible
    assert w.negative
    assert lat.WallForm.from_coords(U3, [-2, 2, 0, 0, 0, 0]).indivisible is False
    assert lat.WallForm.from_coords(U3, ["1/2", "3/2", 0, 0, 0, 0]).indivisible


def test_reflection_examples():
    r = lat.reflection(U, [1, -1])  # e - f swaps e and f
    assert r.matrix == ((0, 1), (1, 0))
    assert r.integral
    assert lat.reflection(lat.rank_one(2), [1]).matrix == ((-1,),)
    with pytest.raises(DomainError):
        lat.reflection(U, [1, 0])


@settings(max_examples=40)
@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_reflection_properties(vec):
    if U3.q(vec) == 0:
        return
    r = lat.reflection(U3, vec)
    m = ex.frmat([list(row) for row in r.matrix])
    # involution and isometry, exactly
    assert ex.mat_mul(m, m) == ex.identity(6)
    assert lat.is_isometry_matrix(U3, m)
    assert ex.mat_vec(m, ex.frvec(vec)) == [-x for x in ex.frvec(vec)]


def _random_pm2_vector(rng, L, want_sign=None):
    while True:
        v = [rng.randint(-2, 2) for _ in range(L.rank)]
        q = L.q(v)
        if q == 0:
            continue
        if want_sign is None and q in (-2, 2, -1, 1):
            return v, q
        if want_sign is not None and q == want_sign:
            return v, q


def _product_of_reflections(L, vectors):
    m = ex.identity(L.rank)
    for v in vectors:
        m = ex.mat_mul(lat.reflection_matrix(L, v), m)
    return m


def test_spinor_norm_basic():
    assert lat.spinor_norm_sign(U3, ex.identity(6)) == +1
    # reflection in q = -2 vector: sign(-(-2)) = +1
    r_neg = lat.reflection_matrix(U3, [1, -1, 0, 0, 0, 0])
    assert lat.spinor_norm_sign(U3, r_neg) == +1
    assert lat.in_o_sharp(U3, r_neg)
    # reflection in q = +2 vector: sign(-2) = -1
    r_pos = lat.reflection_matrix(U3, [1, 1, 0, 0, 0, 0])
    assert lat.spinor_norm_sign(U3, r_pos) == -1
    assert not lat.in_o_sharp(U3, r_pos)
    both = ex.mat_mul(r_neg, r_pos)
    assert lat.spinor_norm_sign(U3, both) == -1


def test_spinor_norm_known_products_and_homomorphism():
    rng = random.Random(11)
    for _ in range(50):
        vs_g = [_random_pm2_vector(rng, U3)[0] for _ in range(rng.randint(1, 4))]
        vs_h = [_random_pm2_vector(rng, U3)[0] for _ in range(rng.randint(1, 4))]
        g = _product_of_reflections(U3, vs_g)
        h = _product_of_reflections(U3, vs_h)
        expected_g = 1
        for v in vs_g:
            expected_g *= 1 if -U3.q(v) > 0 else -1
        expected_h = 1
        for v in vs_h:
            expected_h *= 1 if -U3.q(v) > 0 else -1
        sg = lat.spinor_norm_sign(U3, g)
        sh = lat.spinor_norm_sign(U3, h)
        assert sg == expected_g
        assert sh == expected_h
        assert lat.spinor_norm_sign(U3, ex.mat_mul(g, h)) == sg * sh


def test_spinor_norm_decomposition_independence():
    rng = random.Random(5)
    orders = [None, [5, 4, 3, 2, 1, 0], [2, 0, 4, 1, 5, 3]]
    for _ in range(10):
        vs = [_random_pm2_vector(rng, U3)[0] for _ in range(rng.randint(1, 5))]
        g = _product_of_reflections(U3, vs)
        signs = {lat.spinor_norm_sign(U3, g, order=o) for o in orders}
        assert len(signs) == 1


def test_reflection_decomposition_reconstructs():
    rng = random.Random(3)
    for _ in range(10):
        vs = [_random_pm2_vector(rng, U3)[0] for _ in range(rng.randint(1, 4))]
        g = _product_of_reflections(U3, vs)
        ws = lat.reflection_vectors(U3, g)
        recon = _product_of_reflections(U3, list(reversed(ws)))
        # g = r_{w_1} ... r_{w_k} applied left to right
        recon = ex.identity(6)
        for w in ws:
            recon = ex.mat_mul(recon, lat.reflection_matrix(U3, w))
        assert recon == g
        assert len(ws) <= 12


def test_spinor_norm_rejects_non_isometry():
    bad = ex.frmat([[1, 1], [0, 1]])
    with pytest.raises(DomainError):
        lat.spinor_norm_sign(U, bad)


def test_k3_spinor_reflection():
    # -2 vectors exist in the E8(-1) blocks of the K3 lattice
    v = [0] * 22
    v[6] = 1  # first E8(-1) root has q = -2
    assert K3.q(v) == -2
    r = lat.reflection(K3, v)
    assert r.integral
    assert lat.spinor_norm_sign(K3, [list(row) for row in r.matrix]) == +1
