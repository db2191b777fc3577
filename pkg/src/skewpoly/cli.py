"""Command-line entry points: generate moment data, verify identities, simulate.

Exit codes follow a CI-friendly contract: 0 means every requested check
passed, 1 means at least one exact residual was nonzero (the report names
the failing identity and parameters), and 2 means the configuration was
rejected before any computation ran.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys
from fractions import Fraction

from . import bilinear, christoffel, dynamics, lax, moments
from .families import (orthogonality_defect, orthogonality_determinant,
                       psop_inner_defect)
from .moments import MomentSystem, stembridge_residual, suite_max_index, validate
from .poly import PolyInZ

PASS, FAIL, CONFIG_ERROR = 0, 1, 2


class ConfigError(Exception):
    pass


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "simulate":
            return cmd_simulate(args)
        parser.print_help()
        return CONFIG_ERROR
    except ConfigError as exc:
        print(f"config error: {exc}", file=_sys.stderr)
        return CONFIG_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewpoly",
        description="Exact Pfaffian moment systems, polynomial families, and "
                    "their lattice identities")
    sub = parser.add_subparsers(dest="command")

    p_gen = sub.add_parser("gen", help="generate a moment system file")
    _common_gen_flags(p_gen)
    p_gen.add_argument("--out", default="system.json", help="output JSON path")

    p_ver = sub.add_parser("verify", help="run exact identity suites")
    _common_gen_flags(p_ver)
    p_ver.add_argument("--in", dest="infile", help="load a moment system JSON")
    p_ver.add_argument("--identities", help="comma list (default: all applicable)")
    p_ver.add_argument("--corrupt", help="perturb one entry, e.g. mu:2,3 or beta:1,4")
    p_ver.add_argument("--out", help="write the JSON report here")

    p_sim = sub.add_parser("simulate", help="tau trajectory vs fixed-step integration")
    p_sim.add_argument("--dt", type=float, default=1e-3)
    p_sim.add_argument("--t-end", type=float, default=1.0)
    p_sim.add_argument("--window", default="1:4", help="lattice sites n_lo:n_hi")
    p_sim.add_argument("--out", default="trajectory", help="CSV path prefix")
    p_sim.add_argument("--tolerance", type=float, default=1e-8)
    return parser


def _common_gen_flags(p) -> None:
    p.add_argument("--kind", default="none",
                   help="none | laurent | rank2 | rank1skew | rank1skew-multi "
                        "| rank1skew-complex")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-max", type=int, default=2, dest="n_max")
    p.add_argument("--m-max", type=int, default=1, dest="m_max")
    p.add_argument("--components", type=int, default=None)
    p.add_argument("--mode", default="exact", choices=["exact", "float"])


def _components_for(args) -> int:
    if args.components is not None:
        return args.components
    return 2 if args.kind in ("rank1skew-multi", "rank1skew-complex") else 1


def _build_system(args, info: dict) -> MomentSystem:
    if args.mode == "float":
        raise ConfigError("exact verification and generation reject float mode")
    components = _components_for(args)
    weight = 2 * args.n_max + 2
    max_index = suite_max_index(args.n_max, args.m_max + 1, weight)
    try:
        return moments.gen(args.kind, max_index, components=components,
                           seed=args.seed, require_tau=(args.n_max + 2, args.m_max + 1),
                           info=info)
    except ValueError as exc:
        raise ConfigError(str(exc))


def cmd_gen(args) -> int:
    info: dict = {}
    sys_ = _build_system(args, info)
    moments.save(sys_, args.out)
    rep = validate(sys_, n_max=args.n_max, m_max=args.m_max)
    print(f"wrote {args.out} (max_index={sys_.max_index}, "
          f"constraint={sys_.constraint}, components={sys_.ell}, "
          f"resample_attempts={info.get('resample_attempts', 0)})")
    print(rep.summary())
    if rep.all_zero:
        print("all residuals 0")
    return PASS if rep.ok else FAIL


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _apply_corrupt(sys_: MomentSystem, spec: str) -> MomentSystem:
    kind, _, where = spec.partition(":")
    try:
        a, b = (int(x) for x in where.split(","))
    except ValueError:
        raise ConfigError(f"bad --corrupt spec {spec!r}")
    if kind == "mu":
        mu = dict(sys_.mu)
        mu[(a, b)] = mu.get((a, b), Fraction(0)) + 1
        return MomentSystem(sys_.max_index, mu, sys_.beta, sys_.beta_bar,
                            sys_.constraint, sys_.mode)
    if kind == "beta":
        beta = [list(seq) for seq in sys_.beta]
        beta[a - 1][b] = beta[a - 1][b] + 1
        return MomentSystem(sys_.max_index, dict(sys_.mu),
                            tuple(tuple(s) for s in beta), sys_.beta_bar,
                            sys_.constraint, sys_.mode)
    raise ConfigError(f"bad --corrupt kind {kind!r}")


def _residual_size(resid: PolyInZ) -> str:
    if resid.is_zero():
        return "0"
    values = [c for c in resid.coeffs if c]
    try:
        return str(max(abs(c) for c in values))
    except TypeError:
        # Gaussian values have no natural abs; report the first nonzero one
        from .scalars import format_scalar
        return format_scalar(values[0])


def _poly_entries(name, equation, results, params) -> list:
    out = []
    for key, poly in results.items():
        resid = poly if isinstance(poly, PolyInZ) else PolyInZ([poly])
        out.append({
            "identity": f"{name}.{key}" if key else name,
            "equation": equation,
            "params": params,
            "status": "pass" if resid.is_zero() else "fail",
            "residual_max_abs_or_zero": _residual_size(resid),
        })
    return out


def _suite_transforms(sys_, n_max, m_max) -> list:
    entries = []
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            r1, r2 = christoffel.sop_transform_residual(sys_, n, m)
            entries += _poly_entries(
                "SOP_CT", "P_{2n+1}[m] - A P_{2n}[m] = z(P_{2n}[m+1] - B P_{2n-2}[m+1]); "
                "P_{2n+2}[m] - C P_{2n}[m] = z(P_{2n+1}[m+1] - D P_{2n}[m+1])",
                {"even": r1, "odd": r2}, {"n": n, "m": m})
    for n in range(2 * n_max + 1):
        for m in range(m_max + 1):
            r = christoffel.psop_transform_residual(sys_, n, m)
            entries += _poly_entries(
                "PSOP_CT", "Q_{n+1}[m] + xi Q_n[m] = z(Q_n[m+1] + eta Q_{n-1}[m+1])",
                {"": r}, {"n": n, "m": m})
    if sys_.ell > 1:
        for n in range(n_max + 1):
            for m in range(m_max + 1):
                for k in range(1, sys_.ell + 1):
                    r1, r2 = christoffel.psop_multi_residuals(sys_, n, m, k)
                    entries += _poly_entries(
                        "PSOP_CT_MULTI", "component-resolved transform pair",
                        {"odd": r1, "even": r2}, {"n": n, "m": m, "k": k})
    return entries


def _suite_orthogonality(sys_, n_max, m_max) -> list:
    entries = []
    for m in range(m_max + 1):
        defect = 0
        for ia in range(2 * n_max + 2):
            for ib in range(2 * n_max + 2):
                d = orthogonality_defect(sys_, ia, ib, m)
                if d:
                    defect = d
        entries.append({
            "identity": "SOP_ORTHOGONALITY",
            "equation": "<z^m P_a[m], z^m P_b[m]> matches its closed form",
            "params": {"m": m, "max_degree": 2 * n_max + 1},
            "status": "pass" if not defect else "fail",
            "residual_max_abs_or_zero": "0" if not defect else str(defect),
        })
        for k in range(1, sys_.ell + 1):
            defect = 0
            for n in range(n_max + 1):
                for i in range(2 * n + 2):
                    for idx in (2 * n, 2 * n + 1):
                        d = psop_inner_defect(sys_, idx, i, m, k)
                        if d:
                            defect = d
            entries.append({
                "identity": "PSOP_INNER",
                "equation": "<z^m Q_idx[m], z^{m+i}> matches its closed form",
                "params": {"m": m, "k": k, "n_max": n_max},
                "status": "pass" if not defect else "fail",
                "residual_max_abs_or_zero": "0" if not defect else str(defect),
            })
    for n in range(n_max + 1):
        for choice in ("sop", "psop"):
            d = orthogonality_determinant(sys_, n, choice)
            entries.append({
                "identity": "DEFECT_DETERMINANT",
                "equation": "the (2n+2) square consistency determinant vanishes",
                "params": {"n": n, "choice": choice},
                "status": "pass" if not d else "fail",
                "residual_max_abs_or_zero": "0" if not d else str(d),
            })
    return entries


def _suite_schur(sys_, n_max, m_max) -> list:
    entries = []
    for idx in range(2 * n_max + 2):
        for m in range(min(m_max, 1) + 1):
            defects = bilinear.schur_coeff_defects(sys_, idx, m)
            ok = all(not d for d in defects)
            entries.append({
                "identity": "SCHUR_COEFF",
                "equation": "s_j(-Dt) tau_idx = tau_idx * coeff(R_idx, z^{idx-j})",
                "params": {"idx": idx, "m": m},
                "status": "pass" if ok else "fail",
                "residual_max_abs_or_zero": "0" if ok else "nonzero",
            })
    for n in range(n_max + 1):
        for m in range(min(m_max, 1) + 1):
            r = bilinear.derivative_residual(sys_, 2 * n, m)
            entries += _poly_entries(
                "DERIVATIVE", "(z + d1)(tau_{2n}[m] P_{2n}[m]) = tau_{2n}[m] P_{2n+1}[m]",
                {"": r}, {"n": n, "m": m})
            r = lax.mixed_residual(sys_, m, 2 * n)
            entries += _poly_entries(
                "MIXED", "(z + d1) Q_n = Q_{n+1} + K_n Q_n - J_n Q_{n-1}",
                {"": r}, {"n": 2 * n, "m": m})
    return entries


def _suite_constraint(sys_, n_max, m_max) -> list:
    entries = []
    tag = sys_.constraint
    if tag == "rank2":
        for n in range(1, 2 * n_max + 1):
            for m in range(m_max + 1):
                res = lax.c2_evolution_residuals(sys_, m, n)
                entries += _poly_entries("C2_SUITE", "rank2 derivative formulas",
                                         res, {"n": n, "m": m})
        for kind in ("rank2-m", "rank2-n"):
            rep = lax.lax_compat_residual(sys_, kind, 0, 6)
            entries.append({
                "identity": f"LAX_{kind.upper().replace('-', '_')}",
                "equation": "operator compatibility on the interior block",
                "params": {"N": 6, "m": 0},
                "status": "pass" if rep["interior_zero"] else "fail",
                "residual_max_abs_or_zero": "0" if rep["interior_zero"] else "nonzero",
            })
    if tag == "rank1skew":
        for n in range(1, n_max + 1):
            for m in range(m_max + 1):
                res = lax.c3_recurrence_residuals(sys_, m, n)
                entries += _poly_entries("C3_SUITE", "rank1skew recurrences",
                                         res, {"n": n, "m": m})
    if tag == "laurent":
        for n in range(1, n_max + 1):
            res = lax.toda_vars_and_residual(sys_, n)
            res = {k: v for k, v in res.items() if k != "vars"}
            entries += _poly_entries("TODA_VARS", "lattice variables and flow",
                                     res, {"n": n})
            r1, r2 = christoffel.laurent_toda_residual(sys_, n)
            entries += _poly_entries("TODA_CT", "reduced transform pair",
                                     {"even": r1, "odd": r2}, {"n": n})
            v = christoffel.laurent_lv_coeff_check(sys_, n)
            entries += _poly_entries("LV_COEFF", "xi_n + eta_n - 1 = 0",
                                     {"": PolyInZ([v])}, {"n": n})
            d = stembridge_residual(sys_, n)
            entries += _poly_entries(
                "STEMBRIDGE", "Toeplitz Pfaffian equals the folded determinant",
                {"": PolyInZ([d])}, {"n": n})
    if sys_.ell == 1 and sys_.beta_bar is None:
        rep = lax.lax_compat_residual(sys_, "mixed", 0, 6)
        entries.append({
            "identity": "LAX_MIXED",
            "equation": "dL/dt1 = M[m+1] L - L M[m] on the interior block",
            "params": {"N": 6, "m": 0},
            "status": "pass" if rep["interior_zero"] else "fail",
            "residual_max_abs_or_zero": "0" if rep["interior_zero"] else "nonzero",
        })
    return entries


SUITES = {
    "TRANSFORMS": _suite_transforms,
    "ORTHOGONALITY": _suite_orthogonality,
    "SCHUR": _suite_schur,
    "CONSTRAINT": _suite_constraint,
}


def run_verification(sys_: MomentSystem, n_max: int, m_max: int,
                     selected=None, seed=None) -> list:
    """Evaluate the selected identities and suites; returns report entries."""
    sys_.require_exact()
    names = None
    if selected:
        names = {s.strip().upper() for s in selected.split(",") if s.strip()}
        unknown = names - set(bilinear.IDENTITIES) - set(SUITES)
        if unknown:
            raise ConfigError(f"unknown identities: {sorted(unknown)}; "
                              f"known: {sorted(bilinear.IDENTITIES) + sorted(SUITES)}")
    entries = []
    for name, ident in sorted(bilinear.IDENTITIES.items()):
        if names is not None and name not in names:
            continue
        if not ident.applicable(sys_):
            if names is not None:
                raise ConfigError(f"identity {name} requires constraint in "
                                  f"{ident.tags}, system is {sys_.constraint!r}")
            continue
        for params in ident.grid(sys_, n_max, m_max):
            res = bilinear.identity_residual(sys_, name, **params)
            ok = all(not v for v in res)
            entries.append({
                "identity": name,
                "equation": ident.equation,
                "params": params,
                "status": "pass" if ok else "fail",
                "residual_max_abs_or_zero": "0" if ok else "nonzero",
            })
    for name, suite in SUITES.items():
        if names is not None and name not in names:
            continue
        try:
            entries.extend(suite(sys_, n_max, m_max))
        except ZeroDivisionError as exc:
            # a vanishing coefficient denominator on this seed; reported so
            # the caller can rerun with another seed
            entries.append({
                "identity": name,
                "equation": "suite aborted",
                "params": {},
                "status": "degenerate",
                "residual_max_abs_or_zero": str(exc),
            })
    if seed is not None:
        for e in entries:
            e["seed"] = seed
    return entries


def cmd_verify(args) -> int:
    info: dict = {}
    if args.infile:
        sys_ = moments.load(args.infile)
    else:
        sys_ = _build_system(args, info)
    if args.corrupt:
        sys_ = _apply_corrupt(sys_, args.corrupt)
    entries = run_verification(sys_, args.n_max, args.m_max,
                               selected=args.identities, seed=args.seed)
    failures = [e for e in entries if e["status"] != "pass"]
    report = {
        "constraint": sys_.constraint,
        "seed": args.seed,
        "resample_attempts": info.get("resample_attempts"),
        "n_max": args.n_max,
        "m_max": args.m_max,
        "total": len(entries),
        "failures": len(failures),
        "entries": entries,
    }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=1)
    print(f"checked {len(entries)} identity instances: "
          f"{len(entries) - len(failures)} pass, {len(failures)} fail")
    for e in failures[:10]:
        print(f"  FAIL {e['identity']} params={e['params']} "
              f"residual={e['residual_max_abs_or_zero']}")
    return PASS if not failures else FAIL


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def cmd_simulate(args) -> int:
    try:
        lo, hi = (int(x) for x in args.window.replace(",", ":").split(":"))
    except ValueError:
        raise ConfigError(f"bad --window {args.window!r}")
    if hi - lo + 1 < 3:
        raise ConfigError("window must span at least 3 sites")
    if args.dt <= 0 or args.t_end <= 0:
        raise ConfigError("dt and t-end must be positive")
    spec = dynamics.two_soliton_demo_spec()
    steps = round(args.t_end / args.dt)
    try:
        ref = dynamics.tau_trajectory(spec, (lo, hi), 0.0, args.dt, steps)
        run = dynamics.rk4_toda(spec, (lo, hi), 0.0, args.dt, steps)
    except dynamics.TauCollisionError as exc:
        print(f"tau collision: {exc}", file=_sys.stderr)
        return FAIL
    ref.to_csv(f"{args.out}_tau.csv")
    run.to_csv(f"{args.out}_rk4.csv")
    rep = dynamics.compare(ref, run)
    order, errs = dynamics.convergence_order(
        spec, (lo, hi), 0.0, args.t_end, (4 * args.dt, 2 * args.dt, args.dt))
    ok = rep["max_dev_b"] <= args.tolerance
    print(f"wrote {args.out}_tau.csv and {args.out}_rk4.csv")
    print(f"max_dev = {rep['max_dev_b']:.3e} "
          f"({'<=' if ok else '>'} {args.tolerance:g}: {'PASS' if ok else 'FAIL'})")
    print(f"convergence order = {order:.2f} from errors "
          + " ".join(f"{e:.3e}" for e in errs))
    return PASS if ok else FAIL


if __name__ == "__main__":
    raise SystemExit(main())
