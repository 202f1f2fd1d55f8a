"""Acceptance suite: one test per release criterion, each at its stated
tolerance, printing one pass line per criterion (visible with pytest -s/-rA).
"""

import numpy as np

from twinscope.linalg import pauli, random_unitary, tensor
from twinscope.mds import (
    bell_state,
    bell_t_vector,
    build_T,
    canonicalize,
    classify,
    random_edge_t,
    random_interior_t,
    t_from_weights,
)
from twinscope.schmidt import (
    correlation_operator,
    operator_schmidt,
    pure_schmidt,
    pure_twin_partner,
)
from twinscope.twins import (
    ObservablePair,
    analytic_edge_twins,
    bell_twin_partner,
    biorthogonal_separable_forms,
    contains_pair,
    distant_correlation,
    is_twin_pair,
    ppt_separable,
    simultaneous_twins,
    subspace_residual,
    twin_space,
)

EDGE_KINDS = [(axis, case) for axis in (1, 2, 3) for case in ("A", "B")]


def report_pass(line: str) -> None:
    print(f"[PASS] {line}")


def edge_samples(rng, per_edge: int, min_abs_parameter: float = 0.0):
    """Sampled open-edge points covering all six edges."""
    out = []
    for axis, case in EDGE_KINDS:
        for _ in range(per_edge):
            while True:
                t = random_edge_t(rng, axis, case)
                u = classify(t).edge_parameter
                if abs(u) >= min_abs_parameter:
                    break
            out.append((axis, case, t))
    return out


def test_criterion_1_operator_schmidt_spectrum():
    rng = np.random.default_rng(101)
    for _ in range(50):
        t = random_interior_t(rng)
        os_ = operator_schmidt(build_T(t))
        expected = np.sort(np.concatenate([[1.0], np.abs(t)]))[::-1]
        expected /= np.sqrt(1 + np.sum(t**2))
        got = np.zeros(4)
        got[: os_.schmidt_rank] = os_.coefficients
        assert np.abs(got - expected).max() <= 1e-10
    report_pass("criterion 1: operator Schmidt spectrum matches closed form (50 points, 1e-10)")


def test_criterion_2_twin_dimension_law():
    rng = np.random.default_rng(202)
    for k in range(4):
        space = twin_space(bell_state(k)[1])
        assert space.dimension == 4
        assert space.singular_value_gap >= 1e6
    for _, _, t in edge_samples(rng, 5):
        space = twin_space(build_T(t))
        assert space.dimension == 2
        assert space.singular_value_gap >= 1e6
    for _ in range(200):
        space = twin_space(build_T(random_interior_t(rng)))
        assert space.dimension == 1
        assert space.singular_value_gap >= 1e6
    report_pass(
        "criterion 2: twin dimension 4/2/1 at vertices, 30 edge points, "
        "200 interior points with rank gap >= 1e6"
    )


def test_criterion_3_edge_twin_formulas():
    rng = np.random.default_rng(303)
    for axis, case, t in edge_samples(rng, 5):
        oracle = twin_space(build_T(t))
        cls = classify(t)
        assert cls.axis == axis and cls.case == case
        analytic = analytic_edge_twins(cls)
        assert subspace_residual(oracle, analytic) <= 1e-9
        sign = 1.0 if case == "A" else -1.0
        right = ObservablePair(a1=pauli(axis) / 2, a2=sign * pauli(axis) / 2)
        wrong = ObservablePair(a1=pauli(axis) / 2, a2=-sign * pauli(axis) / 2)
        assert contains_pair(oracle, right) <= 1e-9
        assert contains_pair(oracle, wrong) > 0.5
    report_pass(
        "criterion 3: closed-form edge bases span the oracle space "
        "(residual <= 1e-9, + on case A, - on case B)"
    )


def test_criterion_4_bell_twin_table():
    rng = np.random.default_rng(404)
    expected_signs = {0: (-1, -1, -1), 1: (-1, 1, 1), 2: (1, -1, 1), 3: (1, 1, -1)}
    for k in range(4):
        _, proj = bell_state(k)
        for _ in range(20):
            coeff = rng.standard_normal(4)
            a1 = sum(coeff[i] * pauli(i) for i in range(4))
            a2 = bell_twin_partner(k, a1)
            ok, res = is_twin_pair(ObservablePair(a1=a1, a2=a2), proj, tol=1e-10)
            assert ok and res <= 1e-10
            out = [np.trace(pauli(i) @ a2).real / 2 for i in range(4)]
            assert abs(out[0] - coeff[0]) <= 1e-12
            for i, sign in zip((1, 2, 3), expected_signs[k]):
                assert abs(out[i] - sign * coeff[i]) <= 1e-12
    report_pass(
        "criterion 4: Bell twin table verified for 20 random observables per "
        "vertex (residual <= 1e-10, single flip at the vertex axis, triple "
        "flip at the singlet)"
    )


def test_criterion_5_mixture_equals_intersection():
    rng = np.random.default_rng(505)
    projectors = [bell_state(k)[1] for k in range(4)]
    cases = 0
    while cases < 50:
        support_size = int(rng.integers(2, 5))
        support = sorted(rng.choice(4, size=support_size, replace=False))
        w = np.zeros(4)
        w[support] = rng.dirichlet(np.ones(support_size)) * 0.9 + 0.025
        w /= w.sum()
        mixture = build_T(t_from_weights(w))
        via_mixture = twin_space(mixture)
        via_intersection = simultaneous_twins([projectors[k] for k in support])
        assert via_mixture.dimension == via_intersection.dimension
        assert subspace_residual(via_mixture, via_intersection) <= 1e-9
        cases += 1
    report_pass(
        "criterion 5: mixture twin space equals the intersection of "
        "component twin spaces (50 weight vectors, residual <= 1e-9)"
    )


def test_criterion_6_cube_grid_classification():
    axis_vals = np.linspace(-1, 1, 41)
    g1, g2, g3 = np.meshgrid(axis_vals, axis_vals, axis_vals, indexing="ij")
    ts = np.column_stack([g1.ravel(), g2.ravel(), g3.ravel()])
    # weight test, vectorized
    t1, t2, t3 = ts[:, 0], ts[:, 1], ts[:, 2]
    weights = np.column_stack(
        [
            (1 - t1 - t2 - t3) / 4,
            (1 - t1 + t2 + t3) / 4,
            (1 + t1 - t2 + t3) / 4,
            (1 + t1 + t2 - t3) / 4,
        ]
    )
    ok_weights = weights.min(axis=1) >= -1e-9
    # eigenvalue test, vectorized over stacked operators
    paulis = [tensor(pauli(i), pauli(i)) for i in (1, 2, 3)]
    stack = 0.25 * (
        np.eye(4)[None, :, :]
        + t1[:, None, None] * paulis[0]
        + t2[:, None, None] * paulis[1]
        + t3[:, None, None] * paulis[2]
    )
    min_eigs = np.linalg.eigvalsh(stack)[:, 0]
    ok_eigs = min_eigs >= -1e-9
    assert np.array_equal(ok_weights, ok_eigs)

    # vertex sign patterns via the real classifier
    sign_map = {(-1, 1, 1): 1, (1, -1, 1): 2, (1, 1, -1): 3, (-1, -1, -1): 0}
    for signs in [(s1, s2, s3) for s1 in (-1, 1) for s2 in (-1, 1) for s3 in (-1, 1)]:
        cls = classify(np.array(signs, dtype=float))
        if signs in sign_map:
            assert cls.kind == "bell_vertex"
            assert cls.vertex == sign_map[signs]
        else:
            assert cls.kind == "non_state"

    # no state grid point carries exactly two unit components, and the
    # classifier (with its internal impossibility guard) accepts every
    # boundary state point
    at_one = np.sum(np.abs(np.abs(ts) - 1) <= 1e-9, axis=1)
    state_ts = ts[ok_weights]
    state_counts = at_one[ok_weights]
    assert not np.any(state_counts == 2)
    for t in state_ts[state_counts >= 1]:
        cls = classify(t)
        assert cls.kind in ("bell_vertex", "binary_edge")
    report_pass(
        "criterion 6: 41^3 cube grid classified consistently by weight and "
        "eigenvalue tests; vertex sign table holds; no two-unit-component states"
    )


def test_criterion_7_pure_state_twin_machinery():
    singlet, _ = bell_state(0)
    ua = correlation_operator(pure_schmidt(singlet))
    up = np.array([1, 0], dtype=complex)
    down = np.array([0, 1], dtype=complex)
    assert np.abs(ua.apply(up) - down).max() <= 1e-12
    assert np.abs(ua.apply(down) + up).max() <= 1e-12
    rng = np.random.default_rng(707)
    for _ in range(20):
        app, amm = rng.standard_normal(2)
        apm = rng.standard_normal() + 1j * rng.standard_normal()
        a1 = np.array([[app, apm], [np.conj(apm), amm]])
        a2 = pure_twin_partner(a1, singlet)
        expected = np.array([[amm, -apm], [-np.conj(apm), app]])
        assert np.abs(a2 - expected).max() <= 1e-12
    report_pass(
        "criterion 7: singlet correlation operator exact; singlet twin "
        "formula entrywise to 1e-12 for 20 random observables"
    )


def test_criterion_8_separability():
    forms = biorthogonal_separable_forms()
    assert len(forms) == 2
    bell_projs = [bell_state(k)[1] for k in range(4)]
    assert np.abs(forms[0]["bell_form"] - (bell_projs[1] + bell_projs[2]) / 2).max() <= 1e-12
    assert np.abs(forms[1]["bell_form"] - (bell_projs[0] + bell_projs[3]) / 2).max() <= 1e-12
    for entry in forms:
        assert np.abs(entry["product_form"] - entry["bell_form"]).max() <= 1e-12
        separable, _ = ppt_separable(entry["product_form"])
        assert separable
    for proj in bell_projs:
        separable, min_eig = ppt_separable(proj)
        assert not separable
        assert abs(min_eig + 0.5) <= 1e-10
    rng = np.random.default_rng(808)
    for axis, case, t in edge_samples(rng, 5, min_abs_parameter=0.05):
        separable, min_eig = ppt_separable(build_T(t))
        assert not separable, f"edge {axis}{case} at {t} unexpectedly separable"
    report_pass(
        "criterion 8: both product-mixture states separable and equal to "
        "their Bell forms; Bell projectors fail the partial-transpose test "
        "at -1/2; 30 non-midpoint edge states entangled"
    )


def test_criterion_9_distant_measurement():
    rng = np.random.default_rng(909)
    for _, _, t in edge_samples(rng, 5):
        rho = build_T(t)
        space = twin_space(rho)
        for pair in space.basis:
            rep = distant_correlation(pair, rho)
            if rep.degenerate:
                continue
            assert rep.mismatch_probability <= 1e-10
    control = distant_correlation(
        ObservablePair(a1=pauli(1).copy(), a2=pauli(1).copy()),
        build_T(np.array([0.4, -0.4, 1.0])),
    )
    assert abs(control.mismatch_probability - 0.3) <= 1e-10
    report_pass(
        "criterion 9: every nondegenerate oracle twin on edge states "
        "correlates perfectly (mismatch <= 1e-10); non-twin control "
        "mismatches with probability 0.3"
    )


def test_criterion_10_canonicalization_roundtrip():
    rng = np.random.default_rng(1010)
    for _ in range(100):
        t = random_interior_t(rng)
        rho = build_T(t)
        u = tensor(random_unitary(rng), random_unitary(rng))
        scrambled = u @ rho @ u.conj().T
        cf = canonicalize(scrambled)
        assert cf.residual <= 1e-9
        assert np.abs(np.sort(np.abs(cf.t)) - np.sort(np.abs(t))).max() <= 1e-9
    report_pass(
        "criterion 10: 100 local-unitary scramblings recovered "
        "(residual <= 1e-9, |t| multisets match)"
    )
