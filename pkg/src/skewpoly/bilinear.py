"""Schur polynomials, Hirota operators, and the bilinear identity catalog.

Everything here is exact: time derivatives of tau functions come from the
index-shift rule lifted into jets, never from finite differences.  The
catalog is data driven; each entry carries its constraint precondition, a
parameter grid, a human-readable equation, and an evaluator returning a list
of residual scalars that must all be exactly zero.

Schur-operator conventions: with dtilde = (d/dt_1, d/dt_2 / 2, d/dt_3 / 3,
...), the operators s_k(-dtilde) obey the same recurrence as the Schur
polynomials,

    k s_k = sum_{l=1..k} l t_l s_{k-l}   with   t_l -> -(d/dt_l) / l,

so s_k(-dtilde) tau is a finite rational combination of mixed shift
derivatives of tau, all read off one jet of total weight k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .families import TauTable, taus
from .jets import Jet, JetSpec, schur_jet_spec
from .moments import MomentSystem
from .poly import PolyInZ
from .scalars import exact_div


def schur(k: int, t) -> object:
    """Coefficient of z^k in exp(sum t_l z^l); t may be shorter than k."""
    if k < 0:
        raise ValueError("schur index must be nonnegative")
    t = list(t)
    s = [Fraction(1)]
    for j in range(1, k + 1):
        acc = 0
        for l in range(1, j + 1):
            tl = t[l - 1] if l <= len(t) else 0
            if tl:
                acc = acc + l * tl * s[j - l]
        s.append(exact_div(acc, j))
    return s[k]


# ---------------------------------------------------------------------------
# Schur operators acting on tau functions
# ---------------------------------------------------------------------------


class SchurTau:
    """All values s_j(-dtilde) tau and their t_1 derivatives for j <= kmax.

    Internally works on raw coefficient dicts of one big jet of weight
    kmax + reserve; the coefficient of s_j(-dtilde) tau at displacement alpha
    is valid whenever weight(alpha) + j fits the budget, and only weights
    0 and 1 are ever read.
    """

    def __init__(self, table: TauTable, idx: int, m: int, kmax: int,
                 reserve: int = 1, k: int = 1, conj: bool = False):
        self.kmax = kmax
        weight = max(kmax + reserve, 1)
        self.spec = schur_jet_spec(weight)
        key = ("schur", idx, m, k, conj, weight)
        got = table.cache.get(key)
        if got is None:
            base = table.tau_jet(idx, m, self.spec, k, conj)
            layers = [dict(base.coeffs)]
            # fill the whole weight budget so the cache entry serves any kmax
            for j in range(1, weight + 1):
                acc: dict = {}
                for l in range(1, j + 1):
                    _accumulate(acc, self._dt(layers[j - l], l), Fraction(-1, j))
                layers.append(acc)
            got = layers
            table.cache[key] = got
        self.layers = got

    def _dt(self, coeffs: dict, l: int) -> dict:
        d = l - 1
        out: dict = {}
        for alpha, v in coeffs.items():
            if alpha[d] == 0:
                continue
            b = list(alpha)
            b[d] -= 1
            out[tuple(b)] = v * alpha[d]
        return out

    def value(self, j: int):
        """s_j(-dtilde) tau; zero for negative j."""
        if j < 0:
            return 0
        if j > self.kmax:
            raise ValueError(f"schur order {j} above table limit {self.kmax}")
        return self.layers[j].get(self.spec.zero_alpha(), 0)

    def d1(self, j: int):
        """d/dt_1 of s_j(-dtilde) tau."""
        if j < 0:
            return 0
        alpha = tuple([1] + [0] * (self.spec.ndir - 1))
        return self.layers[j].get(alpha, 0)


def _accumulate(acc: dict, other: dict, factor) -> None:
    for alpha, v in other.items():
        acc[alpha] = acc.get(alpha, 0) + factor * v


def schur_d_tau(sys: MomentSystem, k: int, idx: int, m: int, comp: int = 1,
                conj: bool = False):
    """s_k(-dtilde) applied to tau_idx^{(m)}, evaluated exactly."""
    sys.require_exact()
    return SchurTau(taus(sys), idx, m, k, reserve=0, k=comp, conj=conj).value(k)


def hirota(orders, sys: MomentSystem, ref_f, ref_g):
    """Hirota derivative D_{t_1}^{p1} D_{t_2}^{p2} ... f . g of two tau values.

    ``ref_f``/``ref_g`` are (idx, m) or (idx, m, k) or (idx, m, k, conj).
    """
    t = taus(sys)
    return hirota_jets(orders, _tau_jet_for(t, ref_f, orders),
                       _tau_jet_for(t, ref_g, orders))


def _tau_jet_for(t: TauTable, ref, orders) -> Jet:
    idx, m, k, conj = (*ref, 1, False)[:4] if len(ref) >= 2 else ref
    spec = JetSpec(tuple(orders))
    return t.tau_jet(idx, m, spec, k, conj)


def hirota_jets(orders, f: Jet, g: Jet):
    """D^orders f.g from jets: product of f at +eps with g at -eps."""
    flipped = Jet(g.spec, {a: (v if sum(a) % 2 == 0 else -v)
                           for a, v in g.coeffs.items()})
    return (f * flipped).extract(*orders)


# ---------------------------------------------------------------------------
# Derivative and Schur-expansion identities for the polynomial families
# ---------------------------------------------------------------------------


def derivative_residual(sys: MomentSystem, idx: int, m: int, comp: int = 1) -> PolyInZ:
    """(z + d/dt_1)(tau_idx^{(m)} R_idx^{(m)}) - tau_idx^{(m)} R_{idx+1}^{(m)}.

    For even idx this raises the family index by one inside the partial
    family (and the skew-orthogonal family, which shares even members).
    """
    sys.require_exact()
    t = taus(sys)
    spec = JetSpec((1,))
    big = t.psop_jet(idx, m, spec, comp)
    tau_jet = t.tau_jet(idx, m, spec, comp)
    prod = big.map_coeffs(lambda c: c * tau_jet)
    lhs = prod.shift(1) + prod.map_coeffs(lambda c: c.extract(1))
    lhs = lhs.map_coeffs(lambda c: c.base if isinstance(c, Jet) else c)
    if idx % 2 == 0:
        rhs = t.sop(idx + 1, m) * t.tau(idx, m)
    else:
        # raising an odd member lands outside both families in general;
        # only the even case is a catalog identity
        raise ValueError("derivative identity applies to even members")
    return lhs - rhs


def schur_coeff_defects(sys: MomentSystem, idx: int, m: int, comp: int = 1,
                        conj: bool = False) -> list:
    """s_j(-dtilde) tau minus tau times the matching polynomial coefficient.

    Checks the full Schur expansion of the family member of index idx: the
    coefficient of z^{idx-j} equals s_j(-dtilde) tau_idx / tau_idx.
    """
    sys.require_exact()
    t = taus(sys)
    st = SchurTau(t, idx, m, idx, reserve=0, k=comp, conj=conj)
    poly = t.psop(idx, m, comp, conj) if idx % 2 else t.sop(idx, m)
    tau_val = t.tau(idx, m, comp, conj)
    return [st.value(j) - tau_val * poly.coeff(idx - j) for j in range(idx + 1)]


# ---------------------------------------------------------------------------
# Identity catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Identity:
    name: str
    equation: str
    tags: tuple
    grid: Callable
    evaluate: Callable

    def applicable(self, sys: MomentSystem) -> bool:
        return not self.tags or sys.constraint in self.tags


IDENTITIES: dict = {}


def identity_residual(sys: MomentSystem, name: str, **params) -> list:
    """Residual list of one identity instance; every entry must be zero."""
    sys.require_exact()
    ident = IDENTITIES[name]
    if ident.tags and sys.constraint not in ident.tags:
        raise ValueError(f"identity {name} needs constraint in {ident.tags}, "
                         f"system is tagged {sys.constraint!r}")
    res = ident.evaluate(sys, **params)
    return res if isinstance(res, list) else [res]


def identity_names() -> list:
    return sorted(IDENTITIES)


def _grid_nm(sys, n_max, m_max, n_min=0):
    for n in range(n_min, n_max + 1):
        for m in range(m_max + 1):
            yield {"n": n, "m": m}


def _grid_nmk(sys, n_max, m_max, n_min=0):
    for n in range(n_min, n_max + 1):
        for m in range(m_max + 1):
            for k in range(1, sys.ell + 1):
                yield {"n": n, "m": m, "k": k}


# -- unconstrained hierarchy -------------------------------------------------


def _dkp(sys, n, m, l):
    t = taus(sys)
    s_m = SchurTau(t, 2 * n, m, 2 * n + 1)
    s_m1 = SchurTau(t, 2 * n, m + 1, 2 * n + 1)
    s_low = SchurTau(t, 2 * n - 2, m + 1, max(2 * n - 1, 0))
    tau_m = s_m.value(0)
    tau_m1 = s_m1.value(0)
    tau_up = t.tau(2 * n + 2, m)
    return (tau_m1 * s_m.value(2 * n + 1 - l)
            + tau_m1 * s_m.d1(2 * n - l)
            - s_m1.d1(0) * s_m.value(2 * n - l)
            - tau_m * s_m1.value(2 * n + 1 - l)
            + tau_up * s_low.value(2 * n - 1 - l))


def _dkp_eval(sys, n, m, l):
    return _dkp(sys, n, m, l)


def _dkp_grid(sys, n_max, m_max):
    for n in range(1, n_max + 1):
        for m in range(m_max + 1):
            for l in range(2 * n):
                yield {"n": n, "m": m, "l": l}


_dkp_eval.grid = _dkp_grid
IDENTITIES["DKP"] = Identity(
    "DKP",
    "tau2n[m+1] s_{2n+1-l}(-Dt)tau2n[m] + tau2n[m+1] d1 s_{2n-l}(-Dt)tau2n[m]"
    " - d1 tau2n[m+1] s_{2n-l}(-Dt)tau2n[m] = tau2n[m] s_{2n+1-l}(-Dt)tau2n[m+1]"
    " - tau2n+2[m] s_{2n-1-l}(-Dt)tau2n-2[m+1]",
    (), _dkp_grid, _dkp_eval)


def _pfaff_first_eval(sys, n, m):
    t = taus(sys)
    # (D_t2 + D_t1^2) tau2n[m] . tau2n[m+1] = 2 tau2n+2[m] tau2n-2[m+1]
    spec = JetSpec((2, 1))
    f = t.tau_jet(2 * n, m, spec)
    g = t.tau_jet(2 * n, m + 1, spec)
    lhs = hirota_jets((0, 1), f, g) + hirota_jets((2, 0), f, g)
    return lhs - 2 * t.tau(2 * n + 2, m) * t.tau(2 * n - 2, m + 1)


def _pfaff_first_grid(sys, n_max, m_max):
    return _grid_nm(sys, n_max, m_max, n_min=1)


_pfaff_first_eval.grid = _pfaff_first_grid
IDENTITIES["PFAFF_FIRST"] = Identity(
    "PFAFF_FIRST",
    "(D_t2 + D_t1^2) tau2n[m].tau2n[m+1] = 2 tau2n+2[m] tau2n-2[m+1]",
    (), _pfaff_first_grid, _pfaff_first_eval)


# -- laurent reductions ------------------------------------------------------


def _toda1d_eval(sys, n, l):
    t = taus(sys)
    st = SchurTau(t, 2 * n, 0, 2 * n)
    low = SchurTau(t, 2 * n - 2, 0, max(2 * n - 1, 0))
    return (st.d1(0) * st.value(2 * n - l) - st.value(0) * st.d1(2 * n - l)
            - t.tau(2 * n + 2, 0) * low.value(2 * n - 1 - l))


def _toda1d_grid(sys, n_max, m_max):
    for n in range(1, n_max + 1):
        for l in range(2 * n):
            yield {"n": n, "l": l}


_toda1d_eval.grid = _toda1d_grid
IDENTITIES["TODA_1D"] = Identity(
    "TODA_1D",
    "D_t1 tau2n . s_{2n-l}(-Dt)tau2n = tau2n+2 s_{2n-1-l}(-Dt)tau2n-2",
    ("laurent",), _toda1d_grid, _toda1d_eval)


def _toda_bilinear_eval(sys, n):
    t = taus(sys)
    spec = JetSpec((2,))
    f = t.tau_jet(2 * n, 0, spec)
    return (hirota_jets((2,), f, f)
            - 2 * t.tau(2 * n - 2, 0) * t.tau(2 * n + 2, 0))


def _toda_bilinear_grid(sys, n_max, m_max):
    for n in range(1, n_max + 1):
        yield {"n": n}


_toda_bilinear_eval.grid = _toda_bilinear_grid
IDENTITIES["TODA_BILINEAR"] = Identity(
    "TODA_BILINEAR",
    "D_t1^2 tau2n . tau2n = 2 tau2n-2 tau2n+2",
    ("laurent",), _toda_bilinear_grid, _toda_bilinear_eval)


def _lv_eval(sys, n):
    t = taus(sys)
    spec = JetSpec((1,))
    f = t.tau_jet(n, 0, spec)
    g = t.tau_jet(n + 1, 0, spec)
    return (t.tau(n - 1, 0) * t.tau(n + 2, 0)
            - hirota_jets((1,), f, g) - t.tau(n, 0) * t.tau(n + 1, 0))


def _lv_grid(sys, n_max, m_max):
    for n in range(1, 2 * n_max + 1):
        yield {"n": n}


_lv_eval.grid = _lv_grid
IDENTITIES["LV"] = Identity(
    "LV",
    "tau_{n-1} tau_{n+2} = (D_t1 + 1) tau_n . tau_{n+1}",
    ("laurent",), _lv_grid, _lv_eval)


# -- large BKP family and its one-component form -----------------------------


def _bkp_pair(sys, n, m, k, l1, l2, conj=False):
    t = taus(sys)
    even_m = SchurTau(t, 2 * n, m, 2 * n + 1)
    even_m1 = SchurTau(t, 2 * n, m + 1, 2 * n + 1)
    even_up_m = SchurTau(t, 2 * n + 2, m, 2 * n + 2)
    even_up_m1 = SchurTau(t, 2 * n + 2, m + 1, 2 * n + 2)
    odd_m = SchurTau(t, 2 * n + 1, m, 2 * n + 2, k=k, conj=conj)
    odd_m1 = SchurTau(t, 2 * n + 1, m + 1, 2 * n + 2, k=k, conj=conj)
    odd_low_m1 = SchurTau(t, 2 * n - 1, m + 1, max(2 * n, 1), k=k, conj=conj)
    tau_odd_up = t.tau(2 * n + 3, m, k, conj)
    r1 = (even_m1.value(0) * odd_m.value(2 * n + 1 - l1)
          + odd_m1.value(0) * even_m.value(2 * n - l1)
          - odd_m.value(0) * even_m1.value(2 * n + 1 - l1)
          - even_up_m.value(0) * odd_low_m1.value(2 * n - l1))
    r2 = (odd_m1.value(0) * even_up_m.value(2 * n + 2 - l2)
          + even_up_m1.value(0) * odd_m.value(2 * n + 1 - l2)
          - even_up_m.value(0) * odd_m1.value(2 * n + 2 - l2)
          - tau_odd_up * even_m1.value(2 * n + 1 - l2))
    return [r1, r2]


def _bkp_eval(sys, n, m, k, l1, l2):
    return _bkp_pair(sys, n, m, k, l1, l2)


def _bkp_grid(sys, n_max, m_max):
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            for k in range(1, sys.ell + 1):
                for l1 in range(2 * n + 1):
                    yield {"n": n, "m": m, "k": k, "l1": l1, "l2": 2 * n + 1}
                for l2 in range(2 * n + 2):
                    yield {"n": n, "m": m, "k": k, "l1": 2 * n, "l2": l2}


_bkp_eval.grid = _bkp_grid
IDENTITIES["BKP_LARGE"] = Identity(
    "BKP_LARGE",
    "tau2n[m+1] s_{2n+1-l1}(-Dt)tau2n+1,k[m] + tau2n+1,k[m+1] s_{2n-l1}(-Dt)tau2n[m]"
    " = tau2n+1,k[m] s_{2n+1-l1}(-Dt)tau2n[m+1] + tau2n+2[m] s_{2n-l1}(-Dt)tau2n-1,k[m+1]"
    " (and the companion with indices raised by one)",
    (), _bkp_grid, _bkp_eval)


def _glv1_eval(sys, n, m, k):
    t = taus(sys)
    spec = JetSpec((1,))
    f = t.tau_jet(2 * n, m + 1, spec)
    g = t.tau_jet(2 * n + 1, m, spec, k)
    return (t.tau(2 * n + 2, m) * t.tau(2 * n - 1, m + 1, k)
            - hirota_jets((1,), f, g)
            - t.tau(2 * n + 1, m + 1, k) * t.tau(2 * n, m))


def _glv1_grid(sys, n_max, m_max):
    return _grid_nmk(sys, n_max, m_max)


_glv1_eval.grid = _glv1_grid
IDENTITIES["GLV1"] = Identity(
    "GLV1",
    "tau2n+2[m] tau2n-1,k[m+1] = D_t1 tau2n[m+1] . tau2n+1,k[m] + tau2n+1,k[m+1] tau2n[m]",
    (), _glv1_grid, _glv1_eval)


def _glv2_eval(sys, n, m, k):
    t = taus(sys)
    spec = JetSpec((1,))
    f = t.tau_jet(2 * n + 1, m + 1, spec, k)
    g = t.tau_jet(2 * n + 2, m, spec)
    return (t.tau(2 * n + 3, m, k) * t.tau(2 * n, m + 1)
            - hirota_jets((1,), f, g)
            - t.tau(2 * n + 2, m + 1) * t.tau(2 * n + 1, m, k))


_glv2_eval.grid = _glv1_grid
IDENTITIES["GLV2"] = Identity(
    "GLV2",
    "tau2n+3,k[m] tau2n[m+1] = D_t1 tau2n+1,k[m+1] . tau2n+2[m] + tau2n+2[m+1] tau2n+1,k[m]",
    (), _glv1_grid, _glv2_eval)


def _glv_eval(sys, n, m):
    t = taus(sys)
    spec = JetSpec((1,))
    f = t.tau_jet(n, m + 1, spec)
    g = t.tau_jet(n + 1, m, spec)
    return (t.tau(n + 2, m) * t.tau(n - 1, m + 1)
            - hirota_jets((1,), f, g)
            - t.tau(n, m) * t.tau(n + 1, m + 1))


def _glv_grid(sys, n_max, m_max):
    for n in range(2 * n_max + 1):
        for m in range(m_max + 1):
            yield {"n": n, "m": m}


_glv_eval.grid = _glv_grid
IDENTITIES["GLV"] = Identity(
    "GLV",
    "tau_{n+2}[m] tau_{n-1}[m+1] = D_t1 tau_n[m+1] . tau_{n+1}[m] + tau_n[m] tau_{n+1}[m+1]",
    (), _glv_grid, _glv_eval)


# -- rank-two reductions ------------------------------------------------------


def _btoda_eval(sys, n, m):
    # exact evaluation fixes the D_t1 argument order: the lower index comes
    # first under our sign convention for the Hirota operator
    t = taus(sys)
    spec = JetSpec((2,))
    f = t.tau_jet(n, m, spec)
    up = t.tau_jet(n + 1, m, spec)
    low = t.tau_jet(n - 1, m, spec)
    return (hirota_jets((2,), f, f) - 2 * hirota_jets((1,), low, up))


def _btoda_grid(sys, n_max, m_max):
    for n in range(1, 2 * n_max + 1):
        for m in range(m_max + 1):
            yield {"n": n, "m": m}


_btoda_eval.grid = _btoda_grid
IDENTITIES["BTODA"] = Identity(
    "BTODA",
    "D_t1^2 tau_n[m] . tau_n[m] = 2 D_t1 tau_{n-1}[m] . tau_{n+1}[m]",
    ("rank2",), _btoda_grid, _btoda_eval)


def _backlund_eval(sys, n, m):
    t = taus(sys)
    spec = JetSpec((1,))
    return (hirota_jets((1,), t.tau_jet(n, m, spec), t.tau_jet(n, m + 1, spec))
            - hirota_jets((1,), t.tau_jet(n + 1, m, spec),
                          t.tau_jet(n - 1, m + 1, spec)))


_backlund_eval.grid = _btoda_grid
IDENTITIES["BTODA_BACKLUND"] = Identity(
    "BTODA_BACKLUND",
    "D_t1 tau_n[m] . tau_n[m+1] = D_t1 tau_{n+1}[m] . tau_{n-1}[m+1]",
    ("rank2",), _btoda_grid, _backlund_eval)


# -- rank-one skew reductions --------------------------------------------------


def _mkdv_chains(t: TauTable, j: int, m: int, spec):
    """f_j and g_j jets of the folded chain built on base shift m."""
    if j % 2 == 0:
        f = t.tau_jet(j, m, spec)
        g = t.tau_jet(j - 1, m + 1, spec)
    else:
        f = t.tau_jet(j - 1, m + 1, spec)
        g = t.tau_jet(j, m, spec)
    return f, g


def _mkdv_eval(sys, n, m):
    t = taus(sys)
    spec = JetSpec((1,))
    fn, gn = _mkdv_chains(t, n, m, spec)
    fp, gp = _mkdv_chains(t, n + 1, m, spec)
    fl, gl = _mkdv_chains(t, n - 1, m, spec)
    r1 = (hirota_jets((1,), gn, fn) - gp.base * fl.base + gl.base * fp.base)
    r2 = fp.base * fl.base - gn.base * gn.base
    return [r1, r2]


def _mkdv_grid(sys, n_max, m_max):
    for n in range(1, 2 * n_max):
        for m in range(m_max + 1):
            yield {"n": n, "m": m}


_mkdv_eval.grid = _mkdv_grid
IDENTITIES["MKDV"] = Identity(
    "MKDV",
    "D_t1 g_n . f_n = g_{n+1} f_{n-1} - g_{n-1} f_{n+1},  f_{n+1} f_{n-1} = g_n^2",
    ("rank1skew",), _mkdv_grid, _mkdv_eval)


def _evod_eval(sys, n, m):
    t = taus(sys)
    return (t.tau(2 * n, m) * t.tau(2 * n + 2, m)
            - t.tau(2 * n + 1, m) * t.tau(2 * n + 1, m))


_evod_eval.grid = _grid_nm
IDENTITIES["EVOD"] = Identity(
    "EVOD",
    "tau2n[m] tau2n+2[m] = (tau2n+1[m])^2",
    ("rank1skew",), _grid_nm, _evod_eval)


def _cmkdv_eval(sys, n, m, k):
    t = taus(sys)
    res = _bkp_pair(sys, n, m, k, 2 * n, 2 * n + 1)
    for shift in (m, m + 1):
        pair_sum = 0
        for a in range(1, sys.ell + 1):
            for b in range(1, sys.ell + 1):
                pair_sum = pair_sum + t.tau(2 * n + 1, shift, a) * t.tau(2 * n + 1, shift, b)
        res.append(t.tau(2 * n, shift) * t.tau(2 * n + 2, shift) - pair_sum)
    return res


def _cmkdv_grid(sys, n_max, m_max):
    return _grid_nmk(sys, n_max, m_max)


_cmkdv_eval.grid = _cmkdv_grid
IDENTITIES["CMKDV"] = Identity(
    "CMKDV",
    "large BKP pair plus tau2n[m] tau2n+2[m] = sum_{a,b} tau2n+1,a[m] tau2n+1,b[m]",
    ("rank1skew-multi",), _cmkdv_grid, _cmkdv_eval)


def _vnls_eval(sys, n, m, k):
    t = taus(sys)
    res = _bkp_pair(sys, n, m, k, 2 * n, 2 * n + 1)
    res.extend(_bkp_pair(sys, n, m, k, 2 * n, 2 * n + 1, conj=True))
    for shift in (m, m + 1):
        pair_sum = 0
        for a in range(1, sys.ell + 1):
            for b in range(1, sys.ell + 1):
                pair_sum = pair_sum + (t.tau(2 * n + 1, shift, a)
                                       * t.tau(2 * n + 1, shift, b, conj=True))
        res.append(t.tau(2 * n, shift) * t.tau(2 * n + 2, shift) - pair_sum)
    return res


_vnls_eval.grid = _cmkdv_grid
IDENTITIES["VNLS"] = Identity(
    "VNLS",
    "large BKP pair for both single-moment chains plus"
    " tau2n[m] tau2n+2[m] = sum_{a,b} tau2n+1,a[m] taubar2n+1,b[m]",
    ("rank1skew-complex",), _cmkdv_grid, _vnls_eval)
