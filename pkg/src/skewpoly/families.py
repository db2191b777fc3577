"""Tau functions, skew-orthogonal and partial-skew-orthogonal families.

Conventions (one place, used everywhere):

* tau_{2n}^{(m)}   = Pf(m, ..., m+2n-1), so tau_0 = 1 and tau_2^{(m)} = mu_{m,m+1}
* tau_{2n+1,k}^{(m)} = Pf(d_k, m, ..., m+2n)
* boundary values tau_{-1} = tau_{-2} = 0 so recurrences hold verbatim at n=0
* P_{2n}^{(m)}  = Pf(m,...,m+2n,z) / (z^m tau_{2n}^{(m)})
* P_{2n+1}^{(m)} = Pf(m,...,m+2n-1, m+2n+1, z) / (z^m tau_{2n}^{(m)}), P_1 = z
* Q_{2n}^{(m)} = P_{2n}^{(m)};  Q_{2n+1,k}^{(m)} = Pf(d_k, m,...,m+2n+1, z)
  / (z^m tau_{2n+1,k}^{(m)})

The z^{-m} division is exact because the spectral entries start at z^m.
All values are cached per system in a :class:`TauTable`; downstream residual
suites reuse hundreds of tau values, so the cache is not optional.
"""

from __future__ import annotations

import weakref
from fractions import Fraction

from .jets import Jet, JetSpec
from .moments import MomentSystem
from .pfaffian import pf_indexed, pf_labels
from .poly import PolyInZ
from .scalars import exact_div


class TauTable:
    """Per-system cache of labelled Pfaffians (scalar and jet valued)."""

    def __init__(self, sys: MomentSystem):
        self.sys = sys
        self.cache: dict = {}

    # -- tau values --------------------------------------------------------

    def tau(self, idx: int, m: int, k: int = 1, conj: bool = False):
        """Unified tau_idx^{(m)}; odd idx takes the component k (conjugate row
        if ``conj``).  Negative idx returns the boundary value 0."""
        if idx < 0:
            return 0
        if idx == 0:
            return 1
        if idx % 2 == 0:
            return pf_labels(range(m, m + idx), self.sys, cache=self.cache)
        head = ("cbar", k) if conj else ("comp", k)
        return pf_labels([head, *range(m, m + idx)], self.sys, cache=self.cache)

    def tau_jet(self, idx: int, m: int, spec: JetSpec, k: int = 1,
                conj: bool = False) -> Jet:
        if idx < 0:
            return Jet.constant(Fraction(0), spec)
        if idx == 0:
            return Jet.constant(Fraction(1), spec)
        if idx % 2 == 0:
            return pf_labels(range(m, m + idx), self.sys, cache=self.cache,
                             jet_spec=spec)
        head = ("cbar", k) if conj else ("comp", k)
        return pf_labels([head, *range(m, m + idx)], self.sys, cache=self.cache,
                         jet_spec=spec)

    def dt1_log_tau(self, idx: int, m: int, k: int = 1):
        """d/dt_1 log tau_idx^{(m)} as a scalar."""
        spec = JetSpec((1,))
        j = self.tau_jet(idx, m, spec, k)
        return exact_div(j.extract(1), j.base)

    # -- polynomial families -------------------------------------------------

    def sop(self, idx: int, m: int) -> PolyInZ:
        """Monic degree-idx member of the m-th adjacent skew-orthogonal family."""
        if idx < 0:
            return PolyInZ.zero()
        if idx % 2 == 0:
            n2 = idx
            labels = [*range(m, m + n2 + 1), "z"]
            norm = self.tau(n2, m)
        else:
            n2 = idx - 1
            labels = [*range(m, m + n2), m + n2 + 1, "z"]
            norm = self.tau(n2, m)
        if not norm:
            raise ZeroDivisionError(f"vanishing normalizer tau_{n2}^{({m})}")
        raw = pf_indexed(labels, self.sys, cache=self.cache)
        return raw.divide_z(m) / norm

    def psop(self, idx: int, m: int, k: int = 1, conj: bool = False) -> PolyInZ:
        """Monic degree-idx partial family member; even members coincide with sop."""
        if idx < 0:
            return PolyInZ.zero()
        if idx % 2 == 0:
            return self.sop(idx, m)
        head = ("cbar", k) if conj else ("comp", k)
        labels = [head, *range(m, m + idx + 1), "z"]
        norm = self.tau(idx, m, k, conj)
        if not norm:
            raise ZeroDivisionError(f"vanishing normalizer tau_{idx}^{({m})} k={k}")
        raw = pf_indexed(labels, self.sys, cache=self.cache)
        return raw.divide_z(m) / norm

    def sop_jet(self, idx: int, m: int, spec: JetSpec) -> PolyInZ:
        """sop with jet-valued coefficients (time-dependent polynomial)."""
        if idx < 0:
            return PolyInZ.zero()
        n2 = idx if idx % 2 == 0 else idx - 1
        labels = ([*range(m, m + n2 + 1), "z"] if idx % 2 == 0
                  else [*range(m, m + n2), m + n2 + 1, "z"])
        norm = self.tau_jet(n2, m, spec)
        raw = pf_indexed(labels, self.sys, cache=self.cache, jet_spec=spec)
        return raw.divide_z(m).map_coeffs(lambda c: _as_jet(c, spec) / norm)

    def psop_jet(self, idx: int, m: int, spec: JetSpec, k: int = 1) -> PolyInZ:
        if idx < 0:
            return PolyInZ.zero()
        if idx % 2 == 0:
            return self.sop_jet(idx, m, spec)
        labels = [("comp", k), *range(m, m + idx + 1), "z"]
        norm = self.tau_jet(idx, m, spec, k)
        raw = pf_indexed(labels, self.sys, cache=self.cache, jet_spec=spec)
        return raw.divide_z(m).map_coeffs(lambda c: _as_jet(c, spec) / norm)

    def sop_at_zero(self, idx: int, m: int):
        """Constant terms in closed form: P_{2n}^{(m)}(0) = tau_{2n}^{(m+1)} /
        tau_{2n}^{(m)}; P_{2n+1}^{(m)}(0) = Pf(m+1,...,m+2n-1,m+2n+1) /
        tau_{2n}^{(m)} (zero at n=0, where the label list degenerates)."""
        if idx % 2 == 0:
            return exact_div(self.tau(idx, m + 1), self.tau(idx, m))
        n2 = idx - 1
        if n2 == 0:
            return Fraction(0)
        num = pf_labels([*range(m + 1, m + n2), m + n2 + 1], self.sys,
                        cache=self.cache)
        return exact_div(num, self.tau(n2, m))


_tables: "weakref.WeakKeyDictionary[MomentSystem, TauTable]" = weakref.WeakKeyDictionary()


def taus(sys: MomentSystem) -> TauTable:
    """The shared TauTable of a system (created on first use)."""
    tab = _tables.get(sys)
    if tab is None:
        tab = TauTable(sys)
        _tables[sys] = tab
    return tab


def tau(sys: MomentSystem, idx: int, m: int, k: int = 1, conj: bool = False):
    return taus(sys).tau(idx, m, k, conj)


def sop(sys: MomentSystem, idx: int, m: int) -> PolyInZ:
    return taus(sys).sop(idx, m)


def psop(sys: MomentSystem, idx: int, m: int, k: int = 1) -> PolyInZ:
    return taus(sys).psop(idx, m, k)


def sop_at_zero(sys: MomentSystem, idx: int, m: int):
    return taus(sys).sop_at_zero(idx, m)


def skew_inner(sys: MomentSystem, f: PolyInZ, g: PolyInZ):
    """Bilinear extension of <z^i, z^j> = mu_{i,j} to polynomials."""
    total = 0
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        for j, b in enumerate(g.coeffs):
            if not b:
                continue
            total = total + a * b * sys.mu_entry(i, j)
    return total


def orthogonality_defect(sys: MomentSystem, idx_a: int, idx_b: int, m: int):
    """<z^m P_a^{(m)}, z^m P_b^{(m)}> minus its closed form; zero when the
    skew-orthogonality relations hold."""
    t = taus(sys)
    val = skew_inner(sys, t.sop(idx_a, m).shift(m), t.sop(idx_b, m).shift(m))
    expected = 0
    if idx_a % 2 == 0 and idx_b % 2 == 1 and idx_b == idx_a + 1:
        expected = exact_div(t.tau(idx_a + 2, m), t.tau(idx_a, m))
    elif idx_a % 2 == 1 and idx_b % 2 == 0 and idx_a == idx_b + 1:
        expected = -exact_div(t.tau(idx_b + 2, m), t.tau(idx_b, m))
    return val - expected


def psop_inner_defect(sys: MomentSystem, idx: int, i: int, m: int, k: int = 1):
    """<z^m Q_idx^{(m)}, z^{m+i}> minus its closed form, for 0 <= i <= deg+1."""
    t = taus(sys)
    if idx % 2 == 0:
        val = skew_inner(sys, t.sop(idx, m).shift(m), PolyInZ.monomial(1, m + i))
        expected = exact_div(t.tau(idx + 2, m), t.tau(idx, m)) if i == idx + 1 else 0
    else:
        val = skew_inner(sys, t.psop(idx, m, k).shift(m), PolyInZ.monomial(1, m + i))
        expected = -exact_div(sys.beta_entry(k, m + i) * t.tau(idx + 1, m),
                              t.tau(idx, m, k))
    return val - expected


def orthogonality_determinant(sys: MomentSystem, n: int, choice: str = "psop",
                              k: int = 1):
    """The (2n+2) x (2n+2) consistency determinant for the odd-member defect
    parameters; it must vanish for both the skew-orthogonal and the partial
    family choices."""
    t = taus(sys)
    if choice == "sop":
        gap = exact_div(t.tau(2 * n + 2, 0), t.tau(2 * n, 0))
        alpha = [(-gap if i == 2 * n else Fraction(0)) for i in range(2 * n + 2)]
    elif choice == "psop":
        ratio = exact_div(t.tau(2 * n + 2, 0), t.tau(2 * n + 1, 0, k))
        alpha = [-sys.beta_entry(k, i) * ratio for i in range(2 * n + 2)]
    else:
        raise ValueError(choice)
    rows = []
    for r in range(2 * n + 2):
        row = [sys.mu_entry(c, r) for c in range(2 * n + 1)]
        row.append(sys.mu_entry(2 * n + 1, r) - alpha[r])
        rows.append(row)
    from .pfaffian import det_bareiss

    return det_bareiss(rows)


def _as_jet(c, spec: JetSpec) -> Jet:
    if isinstance(c, Jet):
        return c
    return Jet.constant(c, spec)
