"""Moment systems: constraints, generators, shift derivation, serialization."""

import json
import math
from fractions import Fraction

import pytest

from skewpoly.jets import JetSpec
from skewpoly.moments import (MomentSystem, OutOfRangeError, SolitonSpec,
                              from_json_dict, gen, lift_to_jet, load, save,
                              shift_derivative, soliton_system,
                              stembridge_residual, to_json_dict, validate)

ALL_KINDS = ["none", "laurent", "rank2", "rank1skew", "rank1skew-multi",
             "rank1skew-complex"]


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_generator_residuals_exactly_zero(kind):
    comps = 3 if kind.endswith(("multi", "complex")) else 1
    for seed in range(100):
        s = gen(kind, 8, components=comps, seed=seed)
        rep = validate(s)
        assert rep.all_zero, (kind, seed, rep.failures[:3])


def test_generator_tau_existence_resampling():
    s = gen("none", 12, seed=0, require_tau=(3, 1))
    rep = validate(s, n_max=3, m_max=1)
    assert rep.tau_nonzero


def test_single_component_constraints_reject_components():
    with pytest.raises(ValueError):
        gen("rank2", 8, components=2, seed=0)


def test_shift_derivative_rules():
    s = gen("none", 10, seed=1)
    assert shift_derivative(s, ("mu", 0, 1), 1) == s.mu_entry(1, 1) + s.mu_entry(0, 2)
    assert shift_derivative(s, ("mu", 0, 1), 1) == s.mu_entry(0, 2)
    assert shift_derivative(s, ("beta", 1, 3), 2) == s.beta_entry(1, 5)
    with pytest.raises(OutOfRangeError):
        shift_derivative(s, ("mu", 9, 10), 1)


def test_shift_derivative_matches_soliton_time_derivative():
    # finite-difference oracle on genuinely time-dependent moments
    spec = SolitonSpec((1.7, 0.6, 1.2, 0.9),
                       ((0, 1, 0.8), (2, 3, 1.3), (0, 2, -0.4)),
                       ((0.5, 1.0, -0.7, 0.3),))
    h = 1e-6
    for n_flow, t in ((1, (0.3, 0.1)), (2, (0.2, -0.4))):
        sys0 = soliton_system(spec, t, 8, mode="float")
        tp = list(t)
        tp[n_flow - 1] += h
        tm = list(t)
        tm[n_flow - 1] -= h
        sp = soliton_system(spec, tp, 8, mode="float")
        sm = soliton_system(spec, tm, 8, mode="float")
        for (i, j) in [(0, 1), (1, 4), (2, 5)]:
            fd = (sp.mu_entry(i, j) - sm.mu_entry(i, j)) / (2 * h)
            exact = shift_derivative(sys0, ("mu", i, j), n_flow)
            assert abs(fd - exact) <= 1e-12 + 1e-6 * abs(exact)
        for j in (0, 3):
            fd = (sp.beta_entry(1, j) - sm.beta_entry(1, j)) / (2 * h)
            exact = shift_derivative(sys0, ("beta", 1, j), n_flow)
            assert abs(fd - exact) <= 1e-12 + 1e-6 * abs(exact)


def test_lift_to_jet_second_order_by_hand():
    s = gen("none", 12, seed=2)
    i, j = 1, 3
    jet = lift_to_jet(s, ("mu", i, j), JetSpec((2, 0)))
    mu = s.mu_entry
    assert jet.base == mu(i, j)
    assert jet.coeffs.get((1, 0), 0) == mu(i + 1, j) + mu(i, j + 1)
    expected = Fraction(1, 2) * (mu(i + 2, j) + 2 * mu(i + 1, j + 1) + mu(i, j + 2))
    assert jet.coeffs.get((2, 0), 0) == expected


def test_lift_to_jet_beta_first_order():
    s = gen("none", 10, seed=3)
    jet = lift_to_jet(s, ("beta", 1, 2), JetSpec((1, 0)))
    assert jet.base == s.beta_entry(1, 2)
    assert jet.extract(1, 0) == s.beta_entry(1, 3)


def test_lift_to_jet_degenerate_zero_system():
    zero = MomentSystem(6, {}, ((Fraction(0),) * 7,))
    jet = lift_to_jet(zero, ("mu", 0, 1), JetSpec((2, 1)))
    assert jet.is_zero()


def test_laurent_structure_and_stembridge():
    s = gen("laurent", 12, seed=4)
    assert s.mu_entry(3, 4) == s.mu_entry(0, 1)
    for n in range(1, 5):
        assert stembridge_residual(s, n) == 0
    sg = gen("none", 12, seed=4)
    with pytest.raises(ValueError):
        stembridge_residual(sg, 2)


def test_rank1skew_zero_beta_closed_forms():
    # with beta identically zero even gaps vanish and odd gaps too
    s = MomentSystem(8, {(i, j): Fraction(0) for i in range(8)
                         for j in range(i + 1, 9)},
                     ((Fraction(0),) * 9,), constraint="rank1skew")
    assert validate(s).all_zero
    for i in range(4):
        for k in range(1, 3):
            assert s.mu_entry(i, i + 2 * k) == 0


def test_rank2_corruption_localizes():
    s = gen("rank2", 8, seed=5)
    mu = dict(s.mu)
    mu[(2, 3)] = mu[(2, 3)] + 1
    bad = MomentSystem(s.max_index, mu, s.beta, constraint="rank2")
    rep = validate(bad)
    assert not rep.all_zero
    where = {w for (w, _) in rep.failures}
    # the (2,2) instance reads the corrupted entry twice with opposite signs
    # (skew-by-storage), so the failure surfaces at (1,3) and its mirror (3,1)
    assert where == {(1, 3), (3, 1)}


def test_existence_flag_vanishing_tau():
    s = MomentSystem(4, {(i, j): Fraction(0) for i in range(4)
                         for j in range(i + 1, 5)}, ())
    rep = validate(s, n_max=1)
    assert rep.tau_nonzero is False
    assert (2, 0) in rep.tau_failures


def test_json_round_trip_bit_exact():
    for kind, comps in (("none", 2), ("rank1skew-complex", 2)):
        s = gen(kind, 9, components=comps, seed=6)
        data = json.loads(json.dumps(to_json_dict(s)))
        back = from_json_dict(data)
        assert back.max_index == s.max_index
        assert back.constraint == s.constraint
        assert back.mu == s.mu
        assert back.beta == s.beta
        assert back.beta_bar == s.beta_bar


def test_save_load(tmp_path):
    s = gen("rank2", 8, seed=7)
    path = tmp_path / "sys.json"
    save(s, path)
    back = load(path)
    assert back.mu == s.mu and back.beta == s.beta


def test_soliton_exact_mode_matches_float_at_zero():
    spec = SolitonSpec((Fraction(2), Fraction(1, 2), Fraction(3), Fraction(1, 3)),
                       ((0, 1, Fraction(1)), (2, 3, Fraction(2))),
                       ((Fraction(1), Fraction(1), Fraction(1), Fraction(1)),))
    es = soliton_system(spec, (0,), 6, mode="exact")
    fs = soliton_system(spec, (0.0,), 6, mode="float")
    for i in range(3):
        for j in range(i + 1, 4):
            assert math.isclose(float(es.mu_entry(i, j)), fs.mu_entry(i, j),
                                rel_tol=1e-12)
    with pytest.raises(ValueError):
        soliton_system(spec, (0.5,), 6, mode="exact")


def test_soliton_reciprocal_pairs_are_laurent():
    spec = SolitonSpec((Fraction(2), Fraction(1, 2), Fraction(3), Fraction(1, 3)),
                       ((0, 1, Fraction(1)), (2, 3, Fraction(2))))
    s = soliton_system(spec, (0,), 8, mode="exact", constraint="laurent")
    assert validate(s).all_zero


def test_float_mode_quarantine():
    spec = SolitonSpec((1.5, 0.5), ((0, 1, 1.0),))
    s = soliton_system(spec, (0.1,), 6, mode="float")
    with pytest.raises(TypeError):
        s.require_exact()


def test_gen_info_records_attempts():
    info = {}
    gen("none", 12, seed=0, require_tau=(3, 1), info=info)
    assert "resample_attempts" in info
