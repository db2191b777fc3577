"""Skew-symmetric bi-moment tables, their constraints, and generators.

A :class:`MomentSystem` holds bi-moments mu_{i,j} (0 <= i < j <= max_index),
single-moment sequences beta_j^(k) for components k = 1..ell, optional
conjugate sequences, and a constraint tag.  The commuting time flows act by
the index-shift rule

    d/dt_n mu_{i,j} = mu_{i+n,j} + mu_{i,j+n},      d/dt_n beta_j = beta_{j+n},

so every time derivative of a moment is again a finite combination of
moments; :func:`lift_to_jet` packages iterated shifts into exact jets.

Generators produce random systems satisfying each constraint exactly:

* ``laurent``       mu_{i,j} = mu_{i-1,j-1} and constant beta
* ``rank2``         mu_{i,j+1} + mu_{i+1,j} = beta_{i+1} beta_j - beta_i beta_{j+1}
* ``rank1skew``     mu_{i,j+1} - mu_{i+1,j} = 2 beta_i beta_j
* ``rank1skew-multi``    same with beta replaced by the component sum
* ``rank1skew-complex``  mu_{i,j+1} - mu_{i+1,j} = 2 sum_{a,b} beta_i^a bbar_j^b

plus soliton data whose genuine time dependence realizes the shift rule.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .jets import Jet, JetSpec
from .pfaffian import LabelError, SkewMatrix, det_bareiss, pf_labels, pfaffian
from .scalars import GaussianRational, format_scalar, parse_scalar

CONSTRAINTS = ("none", "laurent", "rank2", "rank1skew", "rank1skew-multi",
               "rank1skew-complex")


class OutOfRangeError(IndexError):
    """Moment index outside the stored range."""


@dataclass(frozen=True, eq=False)
class MomentSystem:
    """Immutable moment data; shareable across threads and cached freely."""

    max_index: int
    mu: dict
    beta: tuple = ()
    beta_bar: Optional[tuple] = None
    constraint: str = "none"
    mode: str = "exact"

    def __post_init__(self):
        if self.constraint not in CONSTRAINTS:
            raise ValueError(f"unknown constraint tag {self.constraint!r}")
        object.__setattr__(self, "_jet_cache", {})

    @property
    def ell(self) -> int:
        return len(self.beta)

    def require_exact(self) -> None:
        if self.mode == "float":
            raise TypeError("exact verification rejects float-mode systems")

    # -- entry access -----------------------------------------------------

    def mu_entry(self, i: int, j: int):
        if i < 0 or j < 0 or i > self.max_index or j > self.max_index:
            raise OutOfRangeError(f"mu index ({i},{j}) exceeds max_index {self.max_index}")
        if i == j:
            return 0
        if i < j:
            return self.mu.get((i, j), 0)
        return -self.mu.get((j, i), 0)

    def beta_entry(self, k: int, j: int):
        if not (1 <= k <= self.ell):
            raise OutOfRangeError(f"component {k} not present (ell={self.ell})")
        if not (0 <= j <= self.max_index):
            raise OutOfRangeError(f"beta index {j} exceeds max_index {self.max_index}")
        return self.beta[k - 1][j]

    def beta_bar_entry(self, k: int, j: int):
        if self.beta_bar is None:
            raise OutOfRangeError("system has no conjugate single moments")
        if not (1 <= k <= len(self.beta_bar)):
            raise OutOfRangeError(f"conjugate component {k} not present")
        if not (0 <= j <= self.max_index):
            raise OutOfRangeError(f"beta index {j} exceeds max_index {self.max_index}")
        return self.beta_bar[k - 1][j]

    def entry_scalar(self, a, b):
        """Pfaffian entry for a pair of z-free labels (antisymmetric in a,b)."""
        val, entry_id = self._entry_term(a, b)
        if entry_id is None:
            return val
        sign, eid = entry_id
        kind = eid[0]
        if kind == "mu":
            v = self.mu_entry(eid[1], eid[2])
        elif kind == "beta":
            v = self.beta_entry(eid[1], eid[2])
        else:
            v = self.beta_bar_entry(eid[1], eid[2])
        return -v if sign < 0 else v

    def entry_jet(self, a, b, spec: JetSpec):
        key = (a, b, spec)
        got = self._jet_cache.get(key)
        if got is not None:
            return got
        val, entry_id = self._entry_term(a, b)
        if entry_id is None:
            jet = Jet.constant(val, spec)
        else:
            sign, eid = entry_id
            jet = lift_to_jet(self, eid, spec)
            if sign < 0:
                jet = -jet
        self._jet_cache[key] = jet
        return jet

    def _entry_term(self, a, b):
        """Return (constant, None) or (0, (sign, entry_id)) for a label pair."""
        if isinstance(a, int) and isinstance(b, int):
            if a == b:
                return 0, None
            if a < b:
                return 0, (1, ("mu", a, b))
            return 0, (-1, ("mu", b, a))
        if isinstance(b, int):
            return self._d_int(a, b)
        if isinstance(a, int):
            val, entry_id = self._d_int(b, a)
            if entry_id is None:
                return -val if val else val, None
            sign, eid = entry_id
            return 0, (-sign, eid)
        # both are d-type labels
        if a == b:
            return 0, None
        if {a[0], b[0]} == {"shift"}:
            return 0, None  # Pf(d0,d1) = 0, forced by the rank2 derivative rule
        raise LabelError(f"no entry rule for label pair ({a!r}, {b!r})")

    def _d_int(self, d, i):
        kind, k = d
        if kind == "comp":
            return 0, (1, ("beta", k, i))
        if kind == "cbar":
            return 0, (1, ("beta_bar", k, i))
        if kind == "shift":
            return 0, (1, ("beta", 1, i + k))
        raise LabelError(f"unrecognized label {d!r}")


# ---------------------------------------------------------------------------
# Shift derivation and jets
# ---------------------------------------------------------------------------


def shift_derivative(sys: MomentSystem, entry, flow: int):
    """d/dt_flow of a moment entry via the index-shift rule."""
    if flow < 1:
        raise ValueError("flow index must be >= 1")
    kind = entry[0]
    if kind == "mu":
        _, i, j = entry
        return sys.mu_entry(i + flow, j) + sys.mu_entry(i, j + flow)
    if kind == "beta":
        _, k, j = entry
        return sys.beta_entry(k, j + flow)
    if kind == "beta_bar":
        _, k, j = entry
        return sys.beta_bar_entry(k, j + flow)
    raise ValueError(f"unknown entry kind {kind!r}")


def _shift_once(comb: dict, flow: int) -> dict:
    out: dict = {}
    for eid, c in comb.items():
        kind = eid[0]
        if kind == "mu":
            _, i, j = eid
            for shifted in (("mu", i + flow, j), ("mu", i, j + flow)):
                out[shifted] = out.get(shifted, 0) + c
        else:
            kind, k, j = eid
            shifted = (kind, k, j + flow)
            out[shifted] = out.get(shifted, 0) + c
    return out


def lift_to_jet(sys: MomentSystem, entry, spec: JetSpec = None) -> Jet:
    """Jet whose (p1,p2,...) coefficient is the mixed shift-derivative / alpha!."""
    if spec is None:
        from .jets import DEFAULT_JET_SPEC
        spec = DEFAULT_JET_SPEC
    combs = {spec.zero_alpha(): {entry: 1}}
    coeffs = {}
    for alpha in sorted(spec.alphas(), key=sum):
        comb = combs.get(alpha)
        if comb is None:
            # build from a predecessor with one derivative removed
            d = next(t for t, a in enumerate(alpha) if a > 0)
            prev = list(alpha)
            prev[d] -= 1
            comb = _shift_once(combs[tuple(prev)], d + 1)
            combs[alpha] = comb
        val = 0
        for eid, c in comb.items():
            kind = eid[0]
            if kind == "mu":
                v = sys.mu_entry(eid[1], eid[2])
            elif kind == "beta":
                v = sys.beta_entry(eid[1], eid[2])
            else:
                v = sys.beta_bar_entry(eid[1], eid[2])
            val = val + c * v
        fact = 1
        for a in alpha:
            fact *= math.factorial(a)
        if isinstance(val, float):
            coeffs[alpha] = val / fact
        elif val:
            coeffs[alpha] = Fraction(1, fact) * val if fact > 1 else val
    return Jet(spec, coeffs)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def _rand_fraction(rng: random.Random, num_bound: int, den_bound: int,
                   nonzero: bool = False) -> Fraction:
    while True:
        num = rng.randint(-num_bound, num_bound)
        if num or not nonzero:
            break
    den = rng.randint(1, den_bound) if den_bound > 1 else 1
    return Fraction(num, den)


def _rand_gaussian(rng: random.Random, num_bound: int, den_bound: int,
                   nonzero: bool = False) -> GaussianRational:
    while True:
        g = GaussianRational(_rand_fraction(rng, num_bound, den_bound),
                            _rand_fraction(rng, num_bound, den_bound))
        if g or not nonzero:
            return g


def gen(kind: str, max_index: int, *, components: int = 1, seed: int = 0,
        num_bound: int = 5, den_bound: int = 1,
        require_tau: Optional[tuple] = None, attempts: int = 32,
        info: Optional[dict] = None) -> MomentSystem:
    """Random moment system satisfying the named constraint exactly.

    ``require_tau = (n_max, m_max)`` resamples (up to ``attempts`` derived
    seeds) until every tau value on that grid is nonzero, so downstream
    coefficient ratios are well defined.  Vanishing happens on measure zero
    but random small rationals do hit it.  ``info`` (if a dict) records the
    number of resampling attempts for reproducibility reports.
    """
    if kind in ("none", "random", "unconstrained"):
        kind = "none"
    if kind not in CONSTRAINTS:
        raise ValueError(f"unknown generator kind {kind!r}")
    if kind in ("laurent", "rank2", "rank1skew") and components != 1:
        raise ValueError(f"constraint {kind!r} is single-component")
    for attempt in range(attempts):
        rng = random.Random(seed * 1000003 + attempt)
        sys = _gen_once(kind, max_index, components, rng, num_bound, den_bound)
        if require_tau is None or _taus_nonzero(sys, *require_tau):
            if info is not None:
                info["resample_attempts"] = attempt
            return sys
    raise RuntimeError(f"no nondegenerate {kind} system after {attempts} attempts")


def _gen_once(kind, max_index, components, rng, num_bound, den_bound) -> MomentSystem:
    if kind == "none":
        mu = {(i, j): _rand_fraction(rng, num_bound, den_bound, nonzero=True)
              for i in range(max_index) for j in range(i + 1, max_index + 1)}
        beta = tuple(tuple(_rand_fraction(rng, num_bound, den_bound, nonzero=True)
                           for _ in range(max_index + 1))
                     for _ in range(components))
        return MomentSystem(max_index, mu, beta)

    if kind == "laurent":
        band = [Fraction(0)] + [_rand_fraction(rng, num_bound, den_bound)
                                for _ in range(max_index)]
        mu = {(i, j): band[j - i]
              for i in range(max_index) for j in range(i + 1, max_index + 1)}
        b = _rand_fraction(rng, num_bound, den_bound, nonzero=True)
        beta = (tuple(b for _ in range(max_index + 1)),)
        return MomentSystem(max_index, mu, beta, constraint="laurent")

    if kind == "rank2":
        beta_seq = [_rand_fraction(rng, num_bound, den_bound, nonzero=True)
                    for _ in range(max_index + 1)]
        mu = _propagate_rank2(beta_seq, max_index, rng, num_bound, den_bound)
        return MomentSystem(max_index, mu, (tuple(beta_seq),), constraint="rank2")

    if kind == "rank1skew":
        beta_seq = [_rand_fraction(rng, num_bound, den_bound, nonzero=True)
                    for _ in range(max_index + 1)]
        mu = _rank1skew_mu([beta_seq], None, max_index, Fraction(1))
        return MomentSystem(max_index, mu, (tuple(beta_seq),),
                            constraint="rank1skew")

    if kind == "rank1skew-multi":
        betas = [[_rand_fraction(rng, num_bound, den_bound)
                  for _ in range(max_index + 1)] for _ in range(components)]
        betas[0] = [_rand_fraction(rng, num_bound, den_bound, nonzero=True)
                    for _ in range(max_index + 1)]
        mu = _rank1skew_mu(betas, None, max_index, Fraction(1))
        return MomentSystem(max_index, mu, tuple(tuple(b) for b in betas),
                            constraint="rank1skew-multi")

    if kind == "rank1skew-complex":
        betas = [[_rand_gaussian(rng, num_bound, den_bound)
                  for _ in range(max_index + 1)] for _ in range(components)]
        betas[0] = [_rand_gaussian(rng, num_bound, den_bound, nonzero=True)
                    for _ in range(max_index + 1)]
        scale = _rand_gaussian(rng, num_bound, den_bound, nonzero=True)
        # the skew symmetry of mu forces the conjugate component sum to be
        # proportional to the direct one; individual conjugate rows stay free
        bbars = [[_rand_gaussian(rng, num_bound, den_bound)
                  for _ in range(max_index + 1)] for _ in range(components - 1)]
        sums = [sum((betas[a][j] for a in range(components)),
                    GaussianRational.of(0)) for j in range(max_index + 1)]
        partial = [sum((bbars[a][j] for a in range(components - 1)),
                       GaussianRational.of(0)) for j in range(max_index + 1)]
        bbars.append([scale * sums[j] - partial[j] for j in range(max_index + 1)])
        mu = _rank1skew_mu(betas, sums, max_index, scale)
        return MomentSystem(max_index, mu, tuple(tuple(b) for b in betas),
                            beta_bar=tuple(tuple(b) for b in bbars),
                            constraint="rank1skew-complex", mode="gauss")

    raise ValueError(kind)


def _propagate_rank2(beta, max_index, rng, num_bound, den_bound) -> dict:
    """Fill mu anti-diagonal by anti-diagonal from the center outward.

    Odd index sums carry one free value at the center pair; even sums are
    forced entirely by the constraint together with the zero diagonal.
    """
    mu: dict = {}
    for sigma in range(1, 2 * max_index):
        if sigma % 2:
            c = (sigma - 1) // 2
            if c + 1 > max_index:
                continue
            mu[(c, c + 1)] = _rand_fraction(rng, num_bound, den_bound)
            i = c - 1
        else:
            c = sigma // 2
            if c + 1 > max_index:
                continue
            mu[(c - 1, c + 1)] = beta[c] * beta[c] - beta[c - 1] * beta[c + 1]
            i = c - 2
        while i >= 0 and sigma - i <= max_index:
            j = sigma - i
            mu[(i, j)] = (beta[i + 1] * beta[j - 1] - beta[i] * beta[j]
                          - mu[(i + 1, j - 1)])
            i -= 1
    return mu


def _rank1skew_mu(betas, sums, max_index, scale) -> dict:
    """Closed forms for the rank-one skew-shift constraint, scaled by ``scale``."""
    if sums is None:
        sums = [sum((b[j] for b in betas[1:]), betas[0][j])
                for j in range(max_index + 1)]
    mu: dict = {}
    for i in range(max_index):
        for j in range(i + 1, max_index + 1):
            gap = j - i
            if gap % 2 == 0:
                k = gap // 2
                val = 2 * sum((sums[i + s] * sums[i + 2 * k - 1 - s]
                               for s in range(k)), Fraction(0))
            else:
                k = (gap - 1) // 2
                val = 2 * sum((sums[i + s] * sums[i + 2 * k - s]
                               for s in range(k)), Fraction(0))
                val = val + sums[i + k] * sums[i + k]
            mu[(i, j)] = scale * val
    return mu


def _taus_nonzero(sys: MomentSystem, n_max: int, m_max: int) -> bool:
    cache: dict = {}
    try:
        for m in range(m_max + 1):
            for n in range(n_max + 1):
                if 2 * n and not pf_labels(range(m, m + 2 * n), sys, cache=cache):
                    return False
                for k in range(1, sys.ell + 1):
                    if not pf_labels([("comp", k), *range(m, m + 2 * n + 1)],
                                     sys, cache=cache):
                        return False
                    if sys.beta_bar is not None and not pf_labels(
                            [("cbar", k), *range(m, m + 2 * n + 1)], sys, cache=cache):
                        return False
    except OutOfRangeError:
        raise ValueError("max_index too small for the requested tau grid")
    return True


def suite_max_index(n_max: int, m_max: int, weight: int = 0) -> int:
    """Moment range needed for taus up to tau_{2n+3} at shift m_max plus jets."""
    return m_max + 2 * n_max + 3 + weight


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    constraint: str
    checked: int = 0
    failures: list = field(default_factory=list)
    tau_nonzero: Optional[bool] = None
    tau_failures: list = field(default_factory=list)

    @property
    def all_zero(self) -> bool:
        return not self.failures

    @property
    def ok(self) -> bool:
        return self.all_zero and self.tau_nonzero is not False

    def summary(self) -> str:
        lines = [f"constraint={self.constraint} residual checks={self.checked} "
                 f"failures={len(self.failures)}"]
        for where, value in self.failures[:8]:
            lines.append(f"  residual at {where}: {value}")
        if self.tau_nonzero is not None:
            lines.append(f"tau values nonzero: {self.tau_nonzero}")
            for t in self.tau_failures[:8]:
                lines.append(f"  vanishing tau at {t}")
        return "\n".join(lines)


def validate(sys: MomentSystem, n_max: Optional[int] = None,
             m_max: int = 0) -> ValidationReport:
    """Exact residual report for the system's constraint tag plus tau existence."""
    rep = ValidationReport(sys.constraint)
    mi = sys.max_index

    def check(where, value):
        rep.checked += 1
        if value:
            rep.failures.append((where, value))

    if sys.constraint == "laurent":
        for i in range(1, mi):
            for j in range(i + 1, mi + 1):
                check((i, j), sys.mu_entry(i, j) - sys.mu_entry(i - 1, j - 1))
        for k in range(1, sys.ell + 1):
            for j in range(1, mi + 1):
                check(("beta", k, j), sys.beta_entry(k, j) - sys.beta_entry(k, j - 1))
    elif sys.constraint == "rank2":
        b = lambda j: sys.beta_entry(1, j)  # noqa: E731
        for i in range(mi):
            for j in range(mi):
                check((i, j), sys.mu_entry(i, j + 1) + sys.mu_entry(i + 1, j)
                      - b(i + 1) * b(j) + b(i) * b(j + 1))
    elif sys.constraint in ("rank1skew", "rank1skew-multi"):
        sums = [sum((sys.beta_entry(k, j) for k in range(2, sys.ell + 1)),
                    sys.beta_entry(1, j)) for j in range(mi + 1)]
        for i in range(mi):
            for j in range(mi):
                check((i, j), sys.mu_entry(i, j + 1) - sys.mu_entry(i + 1, j)
                      - 2 * sums[i] * sums[j])
    elif sys.constraint == "rank1skew-complex":
        sums = [sum((sys.beta_entry(k, j) for k in range(2, sys.ell + 1)),
                    sys.beta_entry(1, j)) for j in range(mi + 1)]
        csums = [sum((sys.beta_bar_entry(k, j) for k in range(2, sys.ell + 1)),
                     sys.beta_bar_entry(1, j)) for j in range(mi + 1)]
        for i in range(mi):
            for j in range(mi):
                check((i, j), sys.mu_entry(i, j + 1) - sys.mu_entry(i + 1, j)
                      - 2 * sums[i] * csums[j])

    if n_max is not None:
        rep.tau_nonzero = True
        cache: dict = {}
        for m in range(m_max + 1):
            for n in range(n_max + 1):
                if 2 * n and not pf_labels(range(m, m + 2 * n), sys, cache=cache):
                    rep.tau_nonzero = False
                    rep.tau_failures.append((2 * n, m))
                for k in range(1, sys.ell + 1):
                    if not pf_labels([("comp", k), *range(m, m + 2 * n + 1)],
                                     sys, cache=cache):
                        rep.tau_nonzero = False
                        rep.tau_failures.append((2 * n + 1, m, k))
    return rep


def stembridge_residual(sys: MomentSystem, n: int):
    """Toeplitz Pfaffian minus the matching Hankel-type determinant.

    For Laurent moments m_k = mu_{i,i+k} the 2n x 2n Pfaffian with entries
    m_{j-i} equals det(x_{i,j})_{i,j=1..n} with
    x_{i,j} = m_{|i-j|+1} + m_{|i-j|+3} + ... + m_{i+j-1}.
    """
    if sys.constraint != "laurent":
        raise ValueError("Toeplitz correspondence needs the laurent tag")
    band = [0] + [sys.mu_entry(0, k) for k in range(1, 2 * n)]
    pf = pfaffian(SkewMatrix.from_upper(
        2 * n, {(i, j): band[j - i] for i in range(2 * n) for j in range(i + 1, 2 * n)}))
    rows = [[sum((band[r] for r in range(abs(i - j) + 1, i + j, 2)), Fraction(0))
             for j in range(1, n + 1)] for i in range(1, n + 1)]
    return pf - det_bareiss(rows)


# ---------------------------------------------------------------------------
# Solitons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SolitonSpec:
    """Moment data built from exponential nodes; time enters through theta_a."""

    nodes: tuple
    pair_amps: tuple = ()   # entries (a, b, c_ab) with node indices a < b
    d_amps: tuple = ()      # per component: one amplitude per node

    def __post_init__(self):
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("soliton nodes must be distinct")
        if any(x == 0 for x in self.nodes):
            raise ValueError("soliton nodes must be nonzero")
        for (a, b, _) in self.pair_amps:
            if not (0 <= a < b < len(self.nodes)):
                raise ValueError(f"bad pair ({a},{b})")

    def thetas(self, t) -> list:
        out = []
        for x in self.nodes:
            th = 0.0
            p = 1.0
            for tn in t:
                p *= x
                th += tn * p
            out.append(th)
        return out

    def mu_value(self, i: int, j: int, weights) -> float:
        total = 0
        for (a, b, c) in self.pair_amps:
            xa, xb = self.nodes[a], self.nodes[b]
            total += c * (xa ** i * xb ** j - xb ** i * xa ** j) * weights[a] * weights[b]
        return total

    def beta_value(self, k: int, j: int, weights):
        total = 0
        for a, d in enumerate(self.d_amps[k - 1]):
            total += d * self.nodes[a] ** j * weights[a]
        return total


def soliton_system(spec: SolitonSpec, t, max_index: int, mode: str = "exact",
                   constraint: str = "none") -> MomentSystem:
    """Evaluate soliton moments at time vector t (exact only at t = 0)."""
    if mode == "exact":
        if any(tn != 0 for tn in t):
            raise ValueError("exact mode evaluates soliton data at t = 0 only")
        weights = [1] * len(spec.nodes)
    elif mode == "float":
        weights = [math.exp(th) for th in spec.thetas(t)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    mu = {(i, j): spec.mu_value(i, j, weights)
          for i in range(max_index) for j in range(i + 1, max_index + 1)}
    beta = tuple(tuple(spec.beta_value(k, j, weights) for j in range(max_index + 1))
                 for k in range(1, len(spec.d_amps) + 1))
    return MomentSystem(max_index, mu, beta, constraint=constraint, mode=mode)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def to_json_dict(sys: MomentSystem) -> dict:
    out = {
        "max_index": sys.max_index,
        "constraint": sys.constraint,
        "mode": sys.mode,
        "mu": [[i, j, format_scalar(v)] for (i, j), v in sorted(sys.mu.items())],
        "beta": [[k + 1, j, format_scalar(v)]
                 for k, seq in enumerate(sys.beta) for j, v in enumerate(seq)],
    }
    if sys.beta_bar is not None:
        out["beta_bar"] = [[k + 1, j, format_scalar(v)]
                           for k, seq in enumerate(sys.beta_bar)
                           for j, v in enumerate(seq)]
    return out


def from_json_dict(data: dict) -> MomentSystem:
    max_index = int(data["max_index"])
    mu = {(int(i), int(j)): parse_scalar(s) for i, j, s in data["mu"]}
    beta = _seqs_from_triples(data.get("beta", []), max_index)
    bbar = None
    if "beta_bar" in data:
        bbar = _seqs_from_triples(data["beta_bar"], max_index)
    return MomentSystem(max_index, mu, beta, beta_bar=bbar,
                        constraint=data.get("constraint", "none"),
                        mode=data.get("mode", "exact"))


def _seqs_from_triples(triples, max_index) -> tuple:
    if not triples:
        return ()
    ncomp = max(int(k) for k, _, _ in triples)
    seqs = [[Fraction(0)] * (max_index + 1) for _ in range(ncomp)]
    for k, j, s in triples:
        seqs[int(k) - 1][int(j)] = parse_scalar(s)
    return tuple(tuple(s) for s in seqs)


def save(sys: MomentSystem, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_json_dict(sys), fh, indent=1)


def load(path) -> MomentSystem:
    with open(path) as fh:
        return from_json_dict(json.load(fh))
