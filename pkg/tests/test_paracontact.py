import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpsoliton.exact import Tensor
from lpsoliton.fixtures import change_frame, example_manifold, warped_frame
from lpsoliton.frame import FrameManifold, curvature, koszul_levi_civita, metricity, torsion
from lpsoliton.paracontact import (
    PRESETS,
    ConnectionParams,
    ParacontactStructure,
    audit_closed_forms,
    closed_form_curvature_bar,
    g_phi,
    general_connection,
    general_torsion_expected,
    lp_identity_suite,
    parameter_grid,
    preset_connection,
    require_lp_sasakian,
    resolve_preset,
    verify_almost_paracontact,
    verify_lp_sasakian,
)

from strategies import rationals, unimodular

P4 = [ConnectionParams.of(a, b) for a, b in itertools.product([0, 1, -1, Fraction(1, 2)], repeat=2)]


@pytest.fixture(scope="module")
def example():
    M, P = example_manifold()
    return M, P, koszul_levi_civita(M)


def test_example_axioms(example):
    M, P, C = example
    assert verify_almost_paracontact(M, P).all_passed
    assert verify_lp_sasakian(M, P, C).all_passed
    assert P.lam == -3


def test_identity_suite_on_example(example):
    M, P, C = example
    rep = lp_identity_suite(M, P, C, curvature(M, C))
    assert rep.passed
    assert rep["Q_multiple_of_identity"].status == "conditional"
    assert rep["Q_multiple_of_identity"].witness is None


@pytest.mark.parametrize("signs", [(1, -1, 1), (-1, -1), (1, 1, -1, -1)])
def test_warped_frames_are_lp_sasakian(signs):
    M, P = warped_frame(signs)
    C = require_lp_sasakian(M, P)
    assert P.lam == -sum(signs)
    rep = lp_identity_suite(M, P, C, curvature(M, C))
    assert rep.passed
    # QU = (n - 1)U fails for mixed signs but is only tagged, never fatal
    q = rep["Q_multiple_of_identity"]
    assert q.status == "conditional"
    assert (q.witness is None) == (len(set(signs)) == 1)


def _sabotaged(P, **changes):
    fields = {"phi": P.phi, "xi": P.xi, "eta": P.eta}
    fields.update(changes)
    return ParacontactStructure(**fields)


def test_sabotage_phi_squared(example):
    M, P, _ = example
    bad = _sabotaged(P, phi=Tensor.build("ul", 4, lambda j, k: -2 if j == k < 3 else 0))
    rep = verify_almost_paracontact(M, bad)
    assert rep["phi_squared"].status == "fail"
    assert rep["phi_squared"].witness.index == (1, 1)


def test_sabotage_xi(example):
    M, P, _ = example
    bad = _sabotaged(P, xi=Tensor.vector([1, 0, 0, 0]))
    rep = verify_almost_paracontact(M, bad)
    assert rep["eta_xi"].status == "fail"
    assert rep["eta_is_g_xi"].status == "fail"


def test_flat_frame_is_not_lp_sasakian(example):
    # same tensors on the abelian frame: nabla xi = 0 != phi
    _, P, _ = example
    M = FrameManifold.from_data([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
    assert verify_almost_paracontact(M, P).passed
    rep = verify_lp_sasakian(M, P, koszul_levi_civita(M))
    assert rep["nabla_xi"].status == "fail"
    assert rep["nabla_xi"].witness.index == (1, 1)
    with pytest.raises(ValueError):
        require_lp_sasakian(M, P)


def test_presets():
    assert PRESETS["QuarterSymmetric"] == ConnectionParams.of(0, -1)
    assert PRESETS["SchoutenVanKampen"] == ConnectionParams.of(1, 0)
    assert PRESETS["TanakaWebster"] == ConnectionParams.of(1, -1)
    assert PRESETS["Zamkovoy"] == ConnectionParams.of(1, 1)
    assert resolve_preset("tanaka-webster") == "TanakaWebster"
    with pytest.raises(KeyError):
        resolve_preset("levi-civita")


@pytest.mark.parametrize("params", P4, ids=str)
def test_general_connection_entries_on_example(example, params):
    # Gamma'^k_ij = Gamma^k_ij + a[g(e_i, phi e_j) xi^k - eta_j phi^k_i] + b eta_i phi^k_j with
    # g(e_i, phi e_i) = -1, eta_4 = -1, phi^k_i = -delta^k_i (i <= 3):
    #   nabla'_{e_i} e_i = -(1 + a) e4,  nabla'_{e_i} e4 = -(1 + a) e_i,  nabla'_{e4} e_i = b e_i
    M, P, C = example
    a, b = params.a, params.b
    G = general_connection(M, P, C, params).gamma
    expected = {}
    for i in range(3):
        expected[3, i, i] = -(1 + a)
        expected[i, i, 3] = -(1 + a)
        expected[i, 3, i] = b
    assert dict(G.nonzero()) == {k: v for k, v in expected.items() if v != 0}


def test_zamkovoy_torsion_value(example):
    # T(e1, e4) = Gamma'^k_14 - Gamma'^k_41 - c^k_14 = -2 - 1 + 1 = -2 (k = 1)
    M, P, C = example
    T = torsion(M, preset_connection(M, P, C, "zamkovoy"))
    assert T[0, 0, 3] == -2
    assert T[0, 3, 0] == 2


@pytest.mark.parametrize("params", P4, ids=str)
def test_torsion_and_metricity_formulas(example, params):
    M, P, C = example
    Cb = general_connection(M, P, C, params)
    assert torsion(M, Cb) == general_torsion_expected(M, P, params)
    gp = g_phi(M, P)
    expected = Tensor.build("lll", M.n, lambda i, j, k: -2 * params.b * P.eta[i] * gp[j, k])
    assert metricity(M, Cb) == expected


def test_metric_compatibility_of_presets(example):
    M, P, C = example
    metric = {name: metricity(M, preset_connection(M, P, C, name)).is_zero() for name in PRESETS}
    assert metric == {"QuarterSymmetric": False, "SchoutenVanKampen": True,
                      "TanakaWebster": False, "Zamkovoy": False}


@pytest.mark.parametrize("params", P4, ids=str)
def test_closed_forms_on_example(example, params):
    # hand evaluation on the example (S = 3g, r = 12, lambda = -3):
    #   S'(e_i, e_i) = (1 + a)(3 + 2a + b), S'(e4, e4) = -3(1 + a)(1 - b), r' = 6(1 + a)(2 + a)
    M, P, C = example
    a, b = params.a, params.b
    closed = closed_form_curvature_bar(M, P, curvature(M, C), params)
    direct = curvature(M, general_connection(M, P, C, params))
    for curv in (closed, direct):
        assert curv.ricci[0, 0] == curv.ricci[1, 1] == curv.ricci[2, 2] == (1 + a) * (3 + 2 * a + b)
        assert curv.ricci[3, 3] == -3 * (1 + a) * (1 - b)
        assert curv.scalar == 6 * (1 + a) * (2 + a)
    assert closed.riemann == direct.riemann
    assert closed.ricci_op == direct.ricci_op


@settings(max_examples=6, deadline=None)
@given(st.sampled_from([(1, -1, 1), (1, 1), (-1, 1, 1)]), st.data(), rationals, rationals)
def test_closed_forms_on_dense_frames(signs, data, a, b):
    M0, P0 = warped_frame(signs)
    M, P = change_frame(M0, P0, data.draw(unimodular(M0.n)))
    C = require_lp_sasakian(M, P)
    params = ConnectionParams(a, b)
    closed = closed_form_curvature_bar(M, P, curvature(M, C), params)
    direct = curvature(M, general_connection(M, P, C, params))
    assert closed.riemann == direct.riemann
    assert closed.ricci == direct.ricci
    assert closed.ricci_op == direct.ricci_op
    assert closed.scalar == direct.scalar


def test_reduction_at_zero(example):
    M, P, C = example
    Cb = general_connection(M, P, C, ConnectionParams.of(0, 0))
    assert Cb.gamma == C.gamma


def test_parameter_grid():
    grid = parameter_grid(5)
    assert len(grid) == 25
    assert all(p in grid for p in PRESETS.values())
    assert grid == sorted(grid)
    small = parameter_grid(1)
    assert len(small) == 5
    assert len(parameter_grid(1, include_presets=False)) == 1


def test_audit_closed_forms_mixed_signs():
    M, P = warped_frame((1, -1, 1))
    rep = audit_closed_forms(M, P, parameter_grid(2))
    assert rep.passed
    # a 2x2 grid cannot certify a degree-4 polynomial identity
    assert [c.name for c in rep.failures()] == ["polynomial_identity_certified"]
    assert rep["polynomial_identity_certified"].scope == "info"
    assert [p["parameters"] for p in rep.data["points"]] == [
        q.as_dict() for q in parameter_grid(2)]
