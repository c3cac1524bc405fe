"""Finite-group Zak transform: exactness, unitarity, intertwining, fiberization."""

import numpy as np
import pytest

from framekit.generate import complex_gaussian
from framekit.mispace import (
    FiberedFunction,
    global_frame_bounds,
    verify_biorthogonality,
)
from framekit.subspace import Subspace
from framekit.zak import (
    FiniteGroupSpec,
    build_plan,
    builtin_plan,
    cyclic_group,
    determining_table,
    dihedral_group,
    explicit_group,
    modulation_symbol,
    tg_biorthogonality_deviation,
    tg_frame_bounds,
    tg_to_mg,
    translate,
    verify_intertwine,
    zak_forward,
    zak_inverse,
)

PLANS = ("z4", "z12", "d4")


def delta(n, k):
    f = np.zeros(n, dtype=np.complex128)
    f[k] = 1.0
    return f


def test_cyclic_group_table():
    g = cyclic_group(4)
    assert g.order == 4
    assert g.mul[1, 3] == 0
    assert g.inverse[1] == 3
    assert g.element_order(2) == 2
    assert g.element_order(0) == 1


def test_dihedral_group_relations():
    g = dihedral_group(4)
    assert g.order == 8
    r, s = 1, 4  # rotation r, reflection s
    assert g.element_order(r) == 4
    assert g.element_order(s) == 2
    # s r = r^{-1} s
    assert g.mul[s, r] == g.mul[g.inverse[r], s]
    # Non-abelian: r s != s r.
    assert g.mul[r, s] != g.mul[s, r]


def test_explicit_group_validation():
    explicit_group(cyclic_group(3).mul)  # a valid table round-trips
    with pytest.raises(ValueError):
        explicit_group([[1, 0], [0, 1]])  # 0 is not the identity
    with pytest.raises(ValueError):
        explicit_group([[0, 1], [1, 1]])  # no inverse for element 1
    with pytest.raises(ValueError):
        explicit_group([[0, 1], [1, 2]])  # entry out of range
    # A loop with identity and two-sided inverses that is not associative.
    loop = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(ValueError, match="associative"):
        explicit_group(loop)


def test_build_plan_z4():
    plan = build_plan(cyclic_group(4), 2)
    assert plan.q == 2 and plan.p == 2
    assert plan.powers == (0, 2)
    assert plan.subgroup == (0, 2)
    assert plan.section == (0, 1)
    assert np.allclose(plan.characters, [[1.0, 1.0], [1.0, -1.0]])
    assert list(plan.coset_of) == [0, 1, 0, 1]


def test_build_plan_z12():
    plan = builtin_plan("z12")
    assert plan.q == 4 and plan.p == 3
    assert plan.powers == (0, 3, 6, 9)
    assert plan.section == (0, 1, 2)


def test_build_plan_d4():
    plan = builtin_plan("d4")
    assert plan.q == 4 and plan.p == 2
    assert plan.subgroup == (0, 1, 2, 3)  # the rotations
    assert plan.section == (0, 4)


def test_build_plan_trivial_subgroup():
    plan = build_plan(cyclic_group(6), 0)
    assert plan.q == 1 and plan.p == 6
    z = zak_forward(plan, np.arange(6.0))
    assert np.allclose(z.values, np.arange(6.0)[None, :])


def test_zak_of_deltas_on_z4():
    plan = builtin_plan("z4")
    z0 = zak_forward(plan, delta(4, 0))
    assert np.allclose(z0.values, [[1.0, 0.0], [1.0, 0.0]])
    z2 = zak_forward(plan, delta(4, 2))
    # delta at the nontrivial subgroup element: sign flips on the second character.
    assert np.allclose(z2.values, [[1.0, 0.0], [-1.0, 0.0]])
    z1 = zak_forward(plan, delta(4, 1))
    assert np.allclose(z1.values, [[0.0, 1.0], [0.0, 1.0]])


def test_zak_unitary_exhaustive_deltas():
    for name in PLANS:
        plan = builtin_plan(name)
        n = plan.group.order
        for g in range(n):
            f = delta(n, g)
            zf = zak_forward(plan, f)
            assert abs(zf.norm() - 1.0) <= 1e-12
            back = zak_inverse(plan, zf)
            assert np.abs(back - f).max() <= 1e-12


def test_zak_unitary_random_signals():
    rng = np.random.default_rng(103)
    for name in PLANS:
        plan = builtin_plan(name)
        n = plan.group.order
        for _ in range(25):
            f = complex_gaussian(rng, n)
            zf = zak_forward(plan, f)
            assert abs(zf.norm() - np.linalg.norm(f)) <= 1e-12 * max(1.0, np.linalg.norm(f))
            assert np.abs(zak_inverse(plan, zf) - f).max() <= 1e-12


def test_translate_examples():
    plan = builtin_plan("z4")
    assert np.allclose(translate(plan, delta(4, 0), 2), delta(4, 2))
    assert np.allclose(translate(plan, delta(4, 1), 2), delta(4, 3))
    with pytest.raises(ValueError):
        translate(plan, delta(4, 0), 1)  # 1 is not in the subgroup {0, 2}


def test_modulation_symbol_z4():
    plan = builtin_plan("z4")
    assert np.allclose(modulation_symbol(plan, 0), [1.0, 1.0])
    assert np.allclose(modulation_symbol(plan, 2), [1.0, -1.0])


def test_intertwine_exhaustive():
    # Z(L_gamma f) equals the symbol-modulated Z f for every delta signal and
    # every subgroup element, on all three built-in plans.
    for name in PLANS:
        plan = builtin_plan(name)
        n = plan.group.order
        for g in range(n):
            f = delta(n, g)
            for gamma in plan.powers:
                assert verify_intertwine(plan, f, gamma) <= 1e-12


def test_intertwine_random_signals():
    rng = np.random.default_rng(107)
    for name in PLANS:
        plan = builtin_plan(name)
        n = plan.group.order
        for _ in range(10):
            f = complex_gaussian(rng, n)
            for gamma in plan.powers:
                assert verify_intertwine(plan, f, gamma) <= 1e-12


def test_tg_to_mg_examples():
    plan = builtin_plan("z4")
    s = tg_to_mg(plan, [delta(4, 0)])
    assert s.fiber_dim == 2 and s.count == 1
    assert np.allclose(s.fibers[0].matrix, [[1.0], [0.0]])
    assert np.allclose(s.fibers[1].matrix, [[1.0], [0.0]])

    ones = tg_to_mg(plan, [np.ones(4)])
    assert np.allclose(ones.fibers[0].matrix, [[2.0], [2.0]])
    assert np.allclose(ones.fibers[1].matrix, [[0.0], [0.0]])


def test_tg_frame_bounds_hand_case():
    plan = builtin_plan("z4")
    # Translates of delta_0 under {0, 2} are an orthonormal pair.
    lo, hi, ok = tg_frame_bounds(plan, [delta(4, 0)])
    assert lo == pytest.approx(1.0, abs=1e-12)
    assert hi == pytest.approx(1.0, abs=1e-12)
    assert ok


def test_tg_vs_fiber_frame_bounds():
    # The group-side frame operator and the per-character Gramians see the
    # same spectrum; bounds must agree to high accuracy.
    rng = np.random.default_rng(109)
    for name in PLANS:
        plan = builtin_plan(name)
        n = plan.group.order
        for _ in range(30):
            count = int(rng.integers(1, 4))
            gens = [complex_gaussian(rng, n) for _ in range(count)]
            direct = tg_frame_bounds(plan, gens)
            fibered = global_frame_bounds(tg_to_mg(plan, gens))
            assert abs(direct[0] - fibered[0]) <= 1e-9 * max(1.0, direct[0])
            assert abs(direct[1] - fibered[1]) <= 1e-9 * max(1.0, direct[1])
            assert direct[2] == fibered[2]


def test_determining_table_is_parseval():
    for name in PLANS:
        plan = builtin_plan(name)
        dset = determining_table(plan)  # validation inside is exact Parseval
        assert dset.table.shape == (plan.q, plan.q)
        # Row m is the symbol of the m-th generator power.
        for m, gamma in enumerate(plan.powers):
            assert np.allclose(dset.table[m], modulation_symbol(plan, gamma))


def test_biorthogonality_transfers_to_group_side():
    # Build fiber biorthogonal duals inside the fiber spans, pull them back
    # through the inverse Zak transform, and check translate-biorthogonality
    # directly on the group.
    rng = np.random.default_rng(113)
    plan = builtin_plan("z12")
    r = 2
    gens = [complex_gaussian(rng, 12) for _ in range(r)]
    s = tg_to_mg(plan, gens)
    targets = [Subspace.span_of(f.matrix) for f in s.fibers]
    report = verify_biorthogonality(s, targets)
    assert report.holds
    duals = []
    for i in range(r):
        vals = np.stack([report.dual.fibers[k].matrix[:, i] for k in range(plan.q)])
        duals.append(zak_inverse(plan, FiberedFunction(plan.measure(), vals)))
    assert tg_biorthogonality_deviation(plan, gens, duals) <= 1e-8


def test_tg_biorthogonality_of_orthonormal_translates():
    plan = builtin_plan("z4")
    f = delta(4, 0)
    assert tg_biorthogonality_deviation(plan, [f], [f]) <= 1e-15


def test_signal_validation():
    plan = builtin_plan("z4")
    with pytest.raises(ValueError):
        zak_forward(plan, np.ones(3))
    with pytest.raises(ValueError):
        zak_forward(plan, [np.nan, 0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        zak_inverse(plan, FiberedFunction(plan.measure(), np.zeros((2, 3))))


def test_group_spec_shape_errors():
    with pytest.raises(ValueError):
        FiniteGroupSpec("cyclic", 2, np.zeros((2, 3), dtype=int))
    with pytest.raises(ValueError):
        FiniteGroupSpec("weird", 2, cyclic_group(2).mul)
    with pytest.raises(ValueError):
        builtin_plan("z5")
    with pytest.raises(ValueError):
        build_plan(cyclic_group(4), 7)
