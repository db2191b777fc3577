"""Pfaffians over exact scalar rings and jets, plus the indexed-label resolver.

Two algorithms are provided and cross-checked in the tests:

* :func:`pfaffian_expand` -- recursive expansion along the first row,
  memoized over label subsets.  Works over any commutative ring (no division),
  and the memo cache is shared across calls so nested tau-function chains are
  cheap.
* :func:`pfaffian_eliminate` -- skew-symmetric Gaussian elimination.  Needs
  division by pivots, so it is restricted to fields and to jets whose pivot
  bases are units; it raises :class:`NonUnitPivot` otherwise so callers can
  fall back to expansion.

The indexed resolver :func:`pf_indexed` evaluates Pfaffians whose rows are
named by symbolic labels (integer moment indices, single-moment rows ``d``,
derivative rows ``d0``/``d1``, a spectral row ``z``) against a moment system,
returning a polynomial in z.
"""

from __future__ import annotations

from .poly import PolyInZ


class NonUnitPivot(ArithmeticError):
    """Elimination hit a pivot that is not invertible in the coefficient ring."""


class LabelError(ValueError):
    """Forbidden label combination handed to the indexed resolver."""


# ---------------------------------------------------------------------------
# Skew matrices
# ---------------------------------------------------------------------------


class SkewMatrix:
    """Even-dimensional skew-symmetric matrix; only i<j entries are stored."""

    __slots__ = ("dim", "upper")

    def __init__(self, dim: int, upper: dict):
        self.dim = dim
        self.upper = upper

    @staticmethod
    def from_rows(rows) -> "SkewMatrix":
        n = len(rows)
        upper = {}
        for i in range(n):
            if rows[i][i] != 0:
                raise ValueError(f"nonzero diagonal entry at {i}")
            for j in range(i + 1, n):
                if rows[j][i] != -rows[i][j]:
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) not antisymmetric")
                upper[(i, j)] = rows[i][j]
        return SkewMatrix(n, upper)

    @staticmethod
    def from_upper(dim: int, upper: dict) -> "SkewMatrix":
        for (i, j) in upper:
            if not (0 <= i < j < dim):
                raise ValueError(f"upper entry index ({i},{j}) out of range")
        return SkewMatrix(dim, dict(upper))

    def entry(self, i: int, j: int):
        if i == j:
            return 0
        if i < j:
            return self.upper.get((i, j), 0)
        return -self.upper.get((j, i), 0)

    def rows(self) -> list:
        return [[self.entry(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def pfaffian(self, method: str = "auto"):
        if self.dim % 2:
            raise ValueError("Pfaffian requires even dimension")
        if method == "expand":
            return pfaffian_expand(self)
        if method == "eliminate":
            return pfaffian_eliminate(self.rows())
        try:
            return pfaffian_eliminate(self.rows())
        except NonUnitPivot:
            return pfaffian_expand(self)


def pfaffian(mat, method: str = "auto"):
    """Pfaffian of a SkewMatrix or a full square row list; empty matrix gives 1."""
    if not isinstance(mat, SkewMatrix):
        mat = SkewMatrix.from_rows(mat)
    return mat.pfaffian(method)


def pfaffian_expand(mat: SkewMatrix):
    if mat.dim % 2:
        raise ValueError("Pfaffian requires even dimension")
    cache: dict = {}
    return _pf_expand(tuple(range(mat.dim)), mat.entry, cache)


def _pf_expand(labels: tuple, entry, cache: dict):
    """Expansion along the first label; memoized on label tuples."""
    if not labels:
        return 1
    got = cache.get(labels)
    if got is not None:
        return got
    first, rest = labels[0], labels[1:]
    acc = 0
    sign = 1
    for t, lab in enumerate(rest):
        e = entry(first, lab)
        if not _is_zero(e):
            sub = rest[:t] + rest[t + 1:]
            acc = acc + sign * (e * _pf_expand(sub, entry, cache))
        sign = -sign
    cache[labels] = acc
    return acc


def pfaffian_eliminate(rows):
    """Pfaffian by skew-symmetric elimination; needs invertible pivots."""
    n = len(rows)
    if n % 2:
        raise ValueError("Pfaffian requires even dimension")
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    pf = 1
    negate = False
    for k in range(0, n - 1, 2):
        piv = _choose_pivot(a, k, n)
        if piv is None:
            if all(_is_zero(a[k][j]) for j in range(k + 1, n)):
                return 0
            raise NonUnitPivot(f"no invertible pivot in row {k}")
        if piv != k + 1:
            _swap(a, piv, k + 1)
            negate = not negate
        p = a[k][k + 1]
        pf = pf * p
        inv = _invert(p)
        for i in range(k + 2, n):
            aki = a[k][i]
            ak1i = a[k + 1][i]
            if _is_zero(aki) and _is_zero(ak1i):
                continue
            row_i = a[i]
            row_k = a[k]
            row_k1 = a[k + 1]
            for j in range(i + 1, n):
                new = row_i[j] - (aki * row_k1[j] - row_k[j] * ak1i) * inv
                row_i[j] = new
                a[j][i] = -new  # keep both triangles live for later swaps
    return -pf if negate else pf


def _choose_pivot(a, k, n):
    best = None
    best_quality = 0.0
    for j in range(k + 1, n):
        v = a[k][j]
        if _is_zero(v):
            continue
        base = v.base if hasattr(v, "spec") else v
        if _is_zero(base):
            continue
        if isinstance(base, float):
            q = abs(base)
            if q > best_quality:
                best, best_quality = j, q
        else:
            return j
    return best


def _swap(a, i, j):
    a[i], a[j] = a[j], a[i]
    for row in a:
        row[i], row[j] = row[j], row[i]


def _invert(v):
    if hasattr(v, "inverse"):
        return v.inverse()
    if isinstance(v, float):
        return 1.0 / v
    from fractions import Fraction

    return Fraction(1) / v


def det_bareiss(rows):
    """Fraction-free determinant (Bareiss); exact over any integral domain."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            for r in range(k + 1, n):
                if not _is_zero(m[r][k]):
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = _exact_div(num, prev)
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _exact_div(num, den):
    if den == 1:
        return num
    if isinstance(num, int) and isinstance(den, int):
        q, r = divmod(num, den)
        if r:
            raise ArithmeticError("Bareiss division not exact")
        return q
    return num / den


def _is_zero(v) -> bool:
    if hasattr(v, "is_zero"):
        return v.is_zero()
    return not v


# ---------------------------------------------------------------------------
# Indexed Pfaffians
# ---------------------------------------------------------------------------

Z = "z"
D0 = ("shift", 0)
D1 = ("shift", 1)


def comp(k: int = 1):
    """Single-moment row label for component k."""
    return ("comp", k)


def comp_bar(k: int = 1):
    """Single-moment row label for the conjugate sequence of component k."""
    return ("cbar", k)


_RANK = {"comp": 0, "cbar": 1, "shift": 2}


def parse_label(lab):
    """Accepts ints, canonical tuples, and the strings z, d, d:k, dbar:k, d0, d1."""
    if isinstance(lab, int):
        return lab
    if isinstance(lab, tuple):
        return lab
    if lab == Z:
        return Z
    if lab == "d":
        return comp(1)
    if lab == "d0":
        return D0
    if lab == "d1":
        return D1
    if isinstance(lab, str) and lab.startswith("d:"):
        return comp(int(lab[2:]))
    if isinstance(lab, str) and lab.startswith("dbar:"):
        return comp_bar(int(lab[5:]))
    raise LabelError(f"unrecognized label {lab!r}")


def _sort_key(lab):
    if isinstance(lab, int):
        return (3, lab, 0)
    if lab == Z:
        return (4, 0, 0)
    return (_RANK[lab[0]], lab[1], 0)


def _canonicalize(labs):
    """Sorted label tuple plus the parity sign of the sorting permutation."""
    order = sorted(range(len(labs)), key=lambda t: _sort_key(labs[t]))
    sign = 1
    seen = [False] * len(labs)
    for start in range(len(labs)):
        if seen[start]:
            continue
        length = 0
        t = start
        while not seen[t]:
            seen[t] = True
            t = order[t]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return tuple(labs[t] for t in order), sign


def _validate_labels(labs, sys) -> None:
    zs = sum(1 for l in labs if l == Z)
    if zs > 1:
        raise LabelError("at most one spectral label z is allowed")
    comps = {l[1] for l in labs if isinstance(l, tuple) and l[0] == "comp"}
    cbars = {l[1] for l in labs if isinstance(l, tuple) and l[0] == "cbar"}
    shifts = [l for l in labs if isinstance(l, tuple) and l[0] == "shift"]
    if len(comps) > 1 or len(cbars) > 1 or (comps and cbars):
        raise LabelError("distinct single-moment rows cannot share one Pfaffian")
    if shifts and (comps or cbars):
        raise LabelError("derivative rows cannot mix with single-moment rows")
    if shifts and sys.constraint != "rank2":
        raise LabelError("derivative rows d0/d1 require the rank2 constraint")


def pf_indexed(labels, sys, *, cache: dict | None = None, jet_spec=None) -> PolyInZ:
    """Resolve a labelled Pfaffian against a moment system.

    Entry rules: Pf(i,j) = mu_{i,j}; Pf(d_k,i) = beta_i^(k); Pf(i,z) = z^i;
    Pf(d_k,z) = 0; and under the rank2 constraint Pf(d0,i) = beta_i,
    Pf(d1,i) = beta_{i+1}, Pf(d0,d1) = 0, Pf(d0,z) = Pf(d1,z) = 0.
    Odd-length lists evaluate to the zero polynomial.  With ``jet_spec`` the
    entries are lifted to jets and the coefficients of the result are jets.
    """
    labs = [parse_label(l) for l in labels]
    _validate_labels(labs, sys)
    if len(labs) % 2:
        return PolyInZ.zero()
    if Z not in labs:
        return PolyInZ([pf_labels(labs, sys, cache=cache, jet_spec=jet_spec)])
    zpos = labs.index(Z)
    rest = labs[:zpos] + labs[zpos + 1:]
    coeffs: dict = {}
    for t, lab in enumerate(rest):
        if not isinstance(lab, int):
            continue
        sub = rest[:t] + rest[t + 1:]
        val = pf_labels(sub, sys, cache=cache, jet_spec=jet_spec)
        if _is_zero(val):
            continue
        if (zpos + t + 1) % 2:
            val = -val
        coeffs[lab] = coeffs.get(lab, 0) + val
    return PolyInZ.from_dict(coeffs)


def pf_labels(labels, sys, *, cache: dict | None = None, jet_spec=None):
    """Scalar (z-free) labelled Pfaffian, memoized on canonical label tuples."""
    labs, sign = _canonicalize([parse_label(l) for l in labels])
    if jet_spec is None:
        entry = sys.entry_scalar
        key = labs
    else:
        entry = lambda a, b: sys.entry_jet(a, b, jet_spec)  # noqa: E731
        key = (jet_spec, labs)
    if cache is None:
        cache = {}
    got = cache.get(key)
    if got is None:
        if jet_spec is None:
            got = _pf_expand(labs, entry, _SubsetCache(cache))
        else:
            got = _pf_expand(labs, entry, _SubsetCache(cache, jet_spec))
        cache[key] = got
    return sign * got if sign < 0 else got


class _SubsetCache:
    """Adapter exposing a (jet_spec, labels) keyed dict as a labels-keyed one."""

    __slots__ = ("store", "jet_spec")

    def __init__(self, store: dict, jet_spec=None):
        self.store = store
        self.jet_spec = jet_spec

    def _key(self, labels):
        return labels if self.jet_spec is None else (self.jet_spec, labels)

    def get(self, labels):
        return self.store.get(self._key(labels))

    def __setitem__(self, labels, value):
        self.store[self._key(labels)] = value
