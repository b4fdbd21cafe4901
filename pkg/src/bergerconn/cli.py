"""Command-line surface: dimension checks, verification suite, variety
classification, the full regime table, and JSON export.

Exit codes: 0 all checks pass, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import config, einstein, families, nomizu, spaces
from .algebra import Metric
from .einstein import VarietyClass
from .spaces import RankGapError

EXPECTED_DIMS = {  # n -> (invariant, metric, skew directions)
    1: (27, 9, 1),
    2: (13, 7, 3),
    3: (9, 5, 3),
    4: (7, 3, 1),
    5: (7, 3, 1),
    6: (7, 3, 1),
}

EPS_SWEEP = (-3.0, -1.0, -0.1, 0.5, 2.0)

# rows: eps representative per regime; columns: n >= 4, 3, 2, 1
TABLE_ROWS = (
    ("eps < -1", -2.0),
    ("eps = -1", -1.0),
    ("-1 < eps < 0", -0.5),
    ("eps > 0", 1.0),
)
TABLE_COLUMNS = (4, 3, 2, 1)
EXPECTED_TABLE = (
    ("2 pt.", "hyperboloid 2-sheets", "ellipsoid", "empty"),
    ("1 pt.", "cone", "1 pt.", "line"),
    ("empty", "hyperboloid 1-sheet", "empty", "empty"),
    ("2 pt.", "ellipsoid", "ellipsoid", "empty"),
)


@dataclass(frozen=True)
class RunConfig:
    n: int = 2
    eps: float = -1.0
    tol_num: float = config.TOL_NUM
    tol_sol: float = config.TOL_SOL
    seed: int = 0
    fmt: str = "text"
    out: str | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.eps == 0:
            raise ValueError("eps must be nonzero")


def parse_eps(text: str) -> float:
    """Parse eps given as a decimal or a rational like -3/2."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"invalid eps {text!r}") from exc


def _round_floats(obj):
    """Normalize all floats to 15 significant digits for stable output."""
    if isinstance(obj, float):
        return float(f"{obj:.15g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _emit(doc: dict, cfg: RunConfig) -> None:
    if cfg.fmt == "json":
        print(json.dumps(_round_floats(doc), sort_keys=True, indent=2))


# ---------------------------------------------------------------------------
# dims


def compute_dims(n: int, eps_values=EPS_SWEEP) -> dict:
    inv = spaces.invariant_bilinear_space(n).dim
    per_eps = {}
    for eps in eps_values:
        met = spaces.metric_connection_space(n, eps).dim
        skw = spaces.skew_torsion_space(n, eps).dim
        per_eps[eps] = (met, skw)
    mets = {m for m, _ in per_eps.values()}
    skws = {s for _, s in per_eps.values()}
    stable = len(mets) == 1 and len(skws) == 1
    return {
        "n": n,
        "invariant": inv,
        "metric": sorted(mets),
        "skew_directions": sorted(skws),
        "eps_sweep": list(eps_values),
        "stable_under_eps": stable,
    }


def cmd_dims(cfg: RunConfig) -> int:
    try:
        doc = compute_dims(cfg.n)
    except RankGapError as exc:
        print(f"FAIL rank decision: {exc}", file=sys.stderr)
        return 1
    if cfg.fmt == "json":
        _emit(doc, cfg)
    else:
        print(f"n = {cfg.n}")
        print(f"  invariant bilinear maps : {doc['invariant']}")
        print(f"  metric connections      : {doc['metric']}")
        print(f"  skew-torsion directions : {doc['skew_directions']} (affine)")
        print(f"  stable over eps sweep   : {doc['stable_under_eps']}")
    ok = doc["stable_under_eps"]
    if cfg.n in EXPECTED_DIMS:
        exp = EXPECTED_DIMS[cfg.n]
        ok = ok and (doc["invariant"], doc["metric"][0], doc["skew_directions"][0]) == exp
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# verify


def _verification_checks(cfg: RunConfig):
    """Yield (name, residual, tolerance) for the oracle suite at (n, eps)."""
    n, eps = cfg.n, cfg.eps
    g = Metric(n, eps)
    rng = np.random.default_rng(cfg.seed)

    lc = spaces.levi_civita_generic(n, eps)
    yield (
        "levi_civita_closed_vs_generic",
        float(np.abs(lc.coeffs - families.alpha_lc(n, eps).coeffs).max()),
        1e-10,
    )
    yield (
        "levi_civita_torsion_free",
        float(np.abs(nomizu.torsion(families.alpha_lc(n, eps)).coeffs).max()),
        cfg.tol_num,
    )
    if n in EXPECTED_DIMS:
        got = (
            spaces.invariant_bilinear_space(n).dim,
            spaces.metric_connection_space(n, eps).dim,
            spaces.skew_torsion_space(n, eps).dim,
        )
        yield ("dimension_counts", float(got != EXPECTED_DIMS[n]), 0.5)

    k = einstein.param_count(n)
    draws = [rng.uniform(-2.0, 2.0, size=k) for _ in range(5)]
    regime = {1: "s3", 2: "s5", 3: "s7"}.get(n, "general_n")

    r_skew, r_formulicas, r_tor = 0.0, 0.0, 0.0
    ric_lc = nomizu.ricci(nomizu.curvature(families.alpha_lc(n, eps)), g).coeffs
    for x in draws:
        alpha = families.skew_family(n, eps, x)
        params = families.FamilyParams.skew(regime, n, eps, *x, *([0.0] * (3 - k)))
        om = nomizu.torsion_form(alpha, g)
        r_skew = max(r_skew, float(np.abs(om + om.transpose(0, 2, 1)).max()))
        r_tor = max(
            r_tor,
            float(
                np.abs(
                    families.closed_torsion(n, eps, params).coeffs
                    - nomizu.torsion(alpha).coeffs
                ).max()
            ),
        )
        ric = nomizu.ricci(nomizu.curvature(alpha), g)
        S = nomizu.s_tensor(alpha, g)
        r_formulicas = max(
            r_formulicas,
            float(np.abs(nomizu.sym(ric).coeffs - (ric_lc - S.coeffs / 4.0)).max()),
        )
    yield ("closed_torsion_vs_generic", r_tor, cfg.tol_num)
    yield ("torsion_form_is_skew", r_skew, cfg.tol_num)
    yield ("sym_ricci_identity", r_formulicas, cfg.tol_num)

    if n != 2:
        r_cur, r_ric = 0.0, 0.0
        for x in draws:
            alpha = families.skew_family(n, eps, x)
            params = families.FamilyParams.skew(regime, n, eps, *x, *([0.0] * (3 - k)))
            r_cur = max(
                r_cur,
                float(
                    np.abs(
                        families.closed_curvature(n, eps, params).coeffs
                        - nomizu.curvature(alpha).coeffs
                    ).max()
                ),
            )
            r_ric = max(
                r_ric,
                float(
                    np.abs(
                        families.closed_ricci(n, eps, params).coeffs
                        - nomizu.ricci(nomizu.curvature(alpha), g).coeffs
                    ).max()
                ),
            )
        yield ("closed_curvature_vs_generic", r_cur, cfg.tol_num)
        yield ("closed_ricci_vs_generic", r_ric, cfg.tol_num)

    if eps == -1.0:
        ric = nomizu.ricci(nomizu.curvature(families.alpha_lc(n, eps)), g)
        yield (
            "round_ricci_2n_g",
            float(np.abs(ric.coeffs - 2 * n * g.gram()).max()),
            cfg.tol_num,
        )


def cmd_verify(cfg: RunConfig) -> int:
    results = []
    try:
        for name, resid, tol in _verification_checks(cfg):
            results.append((name, resid, tol, resid <= tol))
    except RankGapError as exc:
        print(f"FAIL rank decision: {exc}", file=sys.stderr)
        return 1
    if cfg.fmt == "json":
        _emit(
            {
                "n": cfg.n,
                "eps": cfg.eps,
                "checks": [
                    {"name": n_, "residual": r, "tol": t, "pass": p}
                    for n_, r, t, p in results
                ],
            },
            cfg,
        )
    else:
        for name, resid, tol, ok in results:
            mark = "PASS" if ok else "FAIL"
            print(f"  {mark}  {name:32s} residual {resid:.3e}  (tol {tol:.0e})")
    failing = [name for name, _, _, ok in results if not ok]
    if failing:
        print(f"FAIL: {failing[0]}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# classify / table


def cmd_classify(cfg: RunConfig) -> int:
    var = einstein.variety(cfg.n, cfg.eps, seed=cfg.seed)
    eq = var.equation
    doc = {
        "n": cfg.n,
        "eps": cfg.eps,
        "kind": var.kind.value,
        "equation": {"a": eq.a, "b": eq.b, "c": eq.c, "params": list(eq.names)},
        "samples": [list(x) for x in var.sample_points],
    }
    if cfg.fmt == "json":
        _emit(doc, cfg)
    else:
        print(f"n = {cfg.n}, eps = {cfg.eps}: {var.kind.value}")
        if cfg.n == 1:
            print("  equation: eps = -1 (any s)" if eq.line else "  no solutions")
        else:
            aux = " + ".join(f"{p}^2" for p in eq.names[1:])
            aux = f" + {aux}" if aux else ""
            print(f"  equation: {eq.a:g}*s^2{aux} = {eq.c:g}")
        for x in var.sample_points:
            print(f"  sample: {tuple(round(v, 8) for v in x)}")
    return 0


def compute_table() -> list[list[str]]:
    return [
        [einstein.classify(n, eps).value for n in TABLE_COLUMNS]
        for _, eps in TABLE_ROWS
    ]


def cmd_table(cfg: RunConfig) -> int:
    got = compute_table()
    expected = [list(row) for row in EXPECTED_TABLE]
    mismatches = [
        (TABLE_ROWS[i][0], TABLE_COLUMNS[j], got[i][j], expected[i][j])
        for i in range(4)
        for j in range(4)
        if got[i][j] != expected[i][j]
    ]
    if cfg.fmt == "json":
        _emit({"rows": [r for r, _ in TABLE_ROWS], "columns": list(TABLE_COLUMNS),
               "cells": got, "mismatches": len(mismatches)}, cfg)
    elif cfg.fmt == "csv":
        print("regime," + ",".join(f"n={n}" if n < 4 else "n>=4" for n in TABLE_COLUMNS))
        for (label, _), row in zip(TABLE_ROWS, got):
            print(label + "," + ",".join(row))
    else:
        header = ["regime"] + [f"n={n}" if n < 4 else "n>=4" for n in TABLE_COLUMNS]
        widths = [max(14, len(h)) for h in header]
        print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
        for (label, _), row in zip(TABLE_ROWS, got):
            cells = [label] + row
            print("  ".join(c.ljust(w) for c, w in zip(cells, widths + [22] * 4)))
        print(f"{16 - len(mismatches)}/16 cells match the expected table")
    for label, n, g, e in mismatches:
        print(f"MISMATCH {label}, n={n}: got {g!r}, expected {e!r}", file=sys.stderr)
    return 1 if mismatches else 0


# ---------------------------------------------------------------------------
# export


def _ricci_flat_here(n: int, eps: float) -> bool:
    if n == 1:
        return eps == -1.0
    if n == 2:
        return eps == -1.5
    if n == 3:
        return eps != 0 and eps >= -2.0
    return eps == -(n + 1.0) / 2.0


def build_export(cfg: RunConfig) -> dict:
    from . import __version__

    dims = compute_dims(cfg.n)
    var = einstein.variety(cfg.n, cfg.eps, seed=cfg.seed)
    eq = var.equation
    samples = [list(x) for x in var.sample_points]
    scalars = [
        einstein.scalar_curvature_formula(cfg.n, cfg.eps, x) for x in var.sample_points
    ]
    defects = [einstein.einstein_defect_at(cfg.n, cfg.eps, x) for x in var.sample_points]
    flat = bool(cfg.n == 3 and cfg.eps == -1.0)
    return {
        "tool": "bergerconn",
        "version": __version__,
        "seed": cfg.seed,
        "n": cfg.n,
        "eps": cfg.eps,
        "dims": {
            "invariant": dims["invariant"],
            "metric": dims["metric"][0],
            "skew_directions": dims["skew_directions"][0],
        },
        "kind": var.kind.value,
        "equation": {"a": eq.a, "b": eq.b, "c": eq.c, "params": list(eq.names)},
        "samples": samples,
        "scalar_curvatures": scalars,
        "residuals": {"einstein_defect": defects},
        "ricci_flat": _ricci_flat_here(cfg.n, cfg.eps),
        "flat_connections": flat,
    }


def cmd_export(cfg: RunConfig) -> int:
    doc = build_export(cfg)
    text = json.dumps(_round_floats(doc), sort_keys=True, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bergerconn",
        description="Invariant Einstein-with-skew-torsion connections on Berger spheres",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_eps=True):
        p.add_argument("--n", type=int, default=2, help="ambient parameter (dim 2n+1)")
        if need_eps:
            p.add_argument("--eps", type=parse_eps, default=-1.0,
                           help="metric deformation, decimal or rational like -3/2")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol-num", type=float, default=config.TOL_NUM)
        p.add_argument("--tol-sol", type=float, default=config.TOL_SOL)
        p.add_argument("--format", dest="fmt", choices=("text", "json", "csv"),
                       default="text")
        p.add_argument("--out", default=None)

    common(sub.add_parser("dims", help="dimension counts of the connection spaces"),
           need_eps=False)
    common(sub.add_parser("verify", help="closed forms vs generic calculus"))
    common(sub.add_parser("classify", help="Einstein variety for one (n, eps)"))
    common(sub.add_parser("table", help="all 16 regime cells"), need_eps=False)
    common(sub.add_parser("export", help="JSON report for one (n, eps)"))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            n=args.n,
            eps=getattr(args, "eps", -1.0),
            tol_num=args.tol_num,
            tol_sol=args.tol_sol,
            seed=args.seed,
            fmt=args.fmt,
            out=args.out,
        )
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    handler = {
        "dims": cmd_dims,
        "verify": cmd_verify,
        "classify": cmd_classify,
        "table": cmd_table,
        "export": cmd_export,
    }[args.command]
    return handler(cfg)


if __name__ == "__main__":
    sys.exit(main())
