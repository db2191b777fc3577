"""Operator truncations, compatibility residuals, scalar recurrence suites."""

from fractions import Fraction

import pytest

from skewpoly import lax
from skewpoly.moments import MomentSystem, gen


@pytest.fixture(scope="module")
def unconstrained():
    return gen("none", 15, seed=7, require_tau=(5, 1))


@pytest.fixture(scope="module")
def rank2():
    return gen("rank2", 17, seed=91, require_tau=(6, 1))


def test_op_pair_triangular_inverse():
    # with a vanishing strictly-triangular part the Neumann sum collapses to
    # the diagonal inverse; random triangular pairs invert exactly
    import random
    from skewpoly.jets import Jet, JetSpec
    spec = JetSpec((1,))
    one = Jet.constant(Fraction(1), spec)
    n = 5
    ident = lax.OpPair.from_bands(n, {0: [one] * n})
    inv = ident.inv_triangular()
    assert inv.val == ident.val and all(not v for row in inv.der for v in row)
    rng = random.Random(0)
    for _ in range(5):
        bands = {0: [Jet(spec, {(0,): Fraction(rng.randint(1, 9)),
                                (1,): Fraction(rng.randint(-4, 4))})
                     for _ in range(n)],
                 -1: [None] + [Jet(spec, {(0,): Fraction(rng.randint(-5, 5)),
                                          (1,): Fraction(rng.randint(-4, 4))})
                               for _ in range(n - 1)]}
        op = lax.OpPair.from_bands(n, bands)
        prod = op @ op.inv_triangular()
        assert prod.val == ident.val
        assert all(not v for row in prod.der for v in row)


def test_truncation_size_guard(unconstrained):
    with pytest.raises(ValueError):
        lax.build_psop_lax(unconstrained, 0, 3)
    with pytest.raises(ValueError):
        lax.lax_compat_residual(unconstrained, "mixed", 0, 4)


def test_wave_action_matches_scalar_recurrence(unconstrained):
    residuals = lax.wave_action_residuals(unconstrained, 0, 6)
    assert all(p.is_zero() for p in residuals)


def test_mixed_compatibility_interior(unconstrained):
    for n_size in (6, 8):
        rep = lax.lax_compat_residual(unconstrained, "mixed", 0, n_size)
        assert rep["interior_zero"], n_size
        assert rep["boundary_nonzero"]  # truncation pollutes the edge


def test_rank2_operator_compatibilities(rank2):
    for kind in ("mixed", "rank2-m", "rank2-n"):
        for n_size in (6, 8):
            rep = lax.lax_compat_residual(rank2, kind, 0, n_size)
            assert rep["interior_zero"], (kind, n_size)


def test_unknown_kind_rejected(unconstrained):
    with pytest.raises(ValueError):
        lax.lax_compat_residual(unconstrained, "bogus", 0, 6)


def test_operator_dump_bands(rank2):
    dump = lax.operator_dump(rank2, 0, 6)
    assert set(dump) == {"L", "M", "N", "L1", "L2", "M_evo"}
    m_bands = dump["M"]
    assert m_bands["1"] == ["1"] * 5  # unit superdiagonal of the mixed operator
    assert "0" in m_bands and "-1" in m_bands


def test_c3_suite_zero(rank2):
    s = gen("rank1skew", 22, seed=111, require_tau=(4, 2))
    for m in (0, 1):
        for n in (1, 2, 3):
            res = lax.c3_recurrence_residuals(s, m, n)
            for name, poly in res.items():
                assert poly.is_zero(), (name, m, n)


def test_c3_beta_zero_degenerate():
    s = MomentSystem(8, {(i, j): Fraction(0) for i in range(8)
                         for j in range(i + 1, 9)},
                     ((Fraction(0),) * 9,), constraint="rank1skew")
    from skewpoly.moments import validate
    rep = validate(s, n_max=1)
    assert rep.tau_nonzero is False  # tau_1 = beta_0 = 0: existence fails


def test_c3_requires_tag(unconstrained):
    with pytest.raises(ValueError):
        lax.c3_recurrence_residuals(unconstrained, 0, 1)


def test_c3_negative_control():
    s = gen("rank1skew", 22, seed=111, require_tau=(4, 2))
    mu = dict(s.mu)
    mu[(2, 3)] = mu[(2, 3)] + 1
    bad = MomentSystem(s.max_index, mu, s.beta, constraint="rank1skew")
    res = bad and lax.c3_recurrence_residuals(bad, 0, 1)
    assert any(not poly.is_zero() for poly in res.values())


def test_c2_suite_zero(rank2):
    for m in (0, 1):
        for n in (1, 2, 3, 4):
            res = lax.c2_evolution_residuals(rank2, m, n)
            for name, poly in res.items():
                assert poly.is_zero(), (name, m, n)


def test_c2_requires_tag(unconstrained):
    with pytest.raises(ValueError):
        lax.c2_evolution_residuals(unconstrained, 0, 1)


def test_mixed_identity_any_tag(unconstrained, rank2):
    for sys_ in (unconstrained, rank2):
        for m in (0, 1):
            for n in range(5):
                assert lax.mixed_residual(sys_, m, n).is_zero()


def test_psoplax_degree_balance(rank2):
    # both sides of the shifted evolution have degree n before cancellation
    from skewpoly.families import taus
    from skewpoly.jets import Jet, JetSpec
    t = taus(rank2)
    n, m = 3, 0
    q = t.psop_jet(n, m, JetSpec((1,)))
    d1 = q.map_coeffs(lambda c: c.extract(1) if isinstance(c, Jet) else 0)
    c_n = t.dt1_log_tau(n, m) - t.dt1_log_tau(n, m + 1)
    lhs = d1 + c_n * t.psop(n, m)
    assert lhs.degree == n


def test_toda_vars_and_flow():
    s = gen("laurent", 20, seed=13, require_tau=(5, 1))
    for n in (1, 2, 3):
        res = lax.toda_vars_and_residual(s, n)
        for name, val in res.items():
            if name == "vars":
                continue
            assert val.is_zero(), (name, n)
    tv = lax.toda_vars(s, 3)
    assert tv.b[0] == 0
    from skewpoly.families import taus
    t = taus(s)
    assert tv.b[1] == t.tau(0, 0) * t.tau(4, 0) / (t.tau(2, 0) ** 2)


def test_toda_vars_requires_tag(unconstrained):
    with pytest.raises(ValueError):
        lax.toda_vars_and_residual(unconstrained, 1)
