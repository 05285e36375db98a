"""
``oimac`` command-line front end.

Each scenario computes a small set of tables (regions, curves, reports)
and writes them to stdout or, with ``--out DIR``, to one file per table.
Grid points are evaluated concurrently and assembled in index order, so
output is identical from run to run.

Exit status: 0 on success, 1 on a numerical failure (a JSON diagnostic is
printed to stderr), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import avg_power as ap
from . import peak_power as pp
from .distributions import exponential, make_maxmass_discrete
from .errors import OimacError
from .io import BoundReport, Table, curve_table, hregion_table, render_csv, render_json, report_table, vregion_table
from .mutual_information import EST_ERROR_FACTOR, mi_uniform_noise
from .numerics import DEFAULT_MC_SAMPLES, DEFAULT_QUADRATURE, DEFAULT_SEED, QuadratureSpec, mc_mi_estimate
from .regions import VRegion, corners_from_hrep_2d
from .solver import DEFAULT_TOL, solve_peak_capacity

SCENARIOS = (
    "avg-region",
    "peak-region",
    "kuser-region",
    "gap-vs-k",
    "type-compare",
    "single-user-peak",
    "lemma5-dist",
    "pnr-star",
    "joint-outer",
)

DEFAULTS = {
    # not taken from any published figure; chosen as a readable mid-SNR example
    "avg-region": {"snr_db": "15,10"},
    "peak-region": {"pnr_db": "30,25"},
    "kuser-region": {"snr_db": "10", "k": "3"},
    "gap-vs-k": {"grid": "-10:40:26", "k": "1,2,4,8"},
    "type-compare": {"grid": "0:40:9", "k": "1,2,4,8"},
    "single-user-peak": {"grid": "-10:30:9"},
    "joint-outer": {"pnr_db": "10,5"},
}


class UsageError(Exception):
    pass


def db_to_linear(db: float) -> float:
    """10^(dB / 10): dB values refer to the optical (first-power) ratio."""
    return 10.0 ** (db / 10.0)


def _floats(text: str, what: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated list of numbers, got {text!r}") from None
    if not vals or not all(math.isfinite(v) for v in vals):
        raise UsageError(f"{what} must contain finite numbers")
    return vals


def _ints(text: str, what: str) -> list[int]:
    vals = _floats(text, what)
    if any(v != int(v) or v < 1 for v in vals):
        raise UsageError(f"{what} must be positive integers")
    return [int(v) for v in vals]


def _grid(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("--grid must look like lo:hi:steps")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError("--grid must look like lo:hi:steps") from None
    if steps < 1 or not (math.isfinite(lo) and math.isfinite(hi)) or (steps > 1 and hi < lo):
        raise UsageError("--grid needs finite lo <= hi and steps >= 1")
    return np.linspace(lo, hi, steps) if steps > 1 else np.array([lo])


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    snr_db: tuple = ()
    pnr_db: tuple = ()
    k: tuple = ()
    units: str = "nats"
    grid: tuple = ()
    seed: int = DEFAULT_SEED
    tol: float | None = None
    fmt: str = "csv"
    out: str | None = None
    refined_outer: bool = False
    inner_form: str = "ge"
    a: float = 4.7
    ea_ratio: float = 0.2
    workers: int = 4

    @property
    def spec(self) -> QuadratureSpec:
        if self.tol is None:
            return DEFAULT_QUADRATURE
        return replace(DEFAULT_QUADRATURE, abs_tol=self.tol)

    @property
    def solver_tol(self) -> float:
        return DEFAULT_TOL if self.tol is None else self.tol


def _pmap(cfg: ScenarioConfig, fn, items):
    items = list(items)
    if cfg.workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# scenarios


def _two(values, what):
    if len(values) != 2:
        raise UsageError(f"{what} needs exactly two values")
    return values


def run_avg_region(cfg: ScenarioConfig) -> list[Table]:
    snr = tuple(db_to_linear(v) for v in _two(cfg.snr_db, "--snr-db"))
    pt = ap.ApOperatingPoint(snr)
    spec = cfg.spec
    unit = EST_ERROR_FACTOR * spec.abs_tol
    outer = ap.ap_outer_2u(pt)
    tables = [
        hregion_table(outer, "outer_hrep", "closed_form"),
        vregion_table(corners_from_hrep_2d(outer), "outer", "closed_form"),
    ]
    if cfg.inner_form == "ge":
        inner = ap.ap_inner_corners_2u(pt, spec)
        tables.append(vregion_table(inner.to_vregion(), "inner", "quadrature"))
    elif cfg.inner_form == "hrep":
        h = ap.ap_inner_hrep_2u(pt)
        tables.append(hregion_table(h, "inner_hrep", "closed_form"))
        tables.append(vregion_table(corners_from_hrep_2d(h), "inner", "closed_form"))
    else:
        h = ap.ap_kuser_inner_hrep(pt, "ie_numeric", spec)
        tables.append(hregion_table(h, "inner_hrep", "quadrature", unit))
        v = corners_from_hrep_2d(h)
        tables.append(vregion_table(VRegion(2, v.corners, v.labels, unit), "inner", "quadrature"))
    if min(snr) > 0 and min(ap.ap_asymptotic_capacity(s) for s in snr) > 0:
        asym = ap.ap_asymptotic_region_2u(pt)
        tables.append(vregion_table(asym.corners.to_vregion(), "asymptotic", "closed_form"))
    # Monte-Carlo cross-check of the exponential-input rates behind the corners
    rows = []
    for s in (snr[0], snr[1], snr[0] + snr[1]):
        quad = ap.ie(s, 1.0, spec)
        if s > 0:
            mc = mc_mi_estimate(exponential(s), 1.0, DEFAULT_MC_SAMPLES, cfg.seed)
            rows.append((s, mc.mean, quad, quad, "monte_carlo", mc.std_error))
        else:
            rows.append((s, 0.0, quad, quad, "exact", 0.0))
    tables.append(curve_table("exp_rate_oracle", rows))
    return tables


def run_peak_region(cfg: ScenarioConfig) -> list[Table]:
    pnr = tuple(db_to_linear(v) for v in _two(cfg.pnr_db, "--pnr-db"))
    pt = pp.PpOperatingPoint(pnr)
    spec = cfg.spec
    outer = pp.pp_outer_2u(pt, refined=cfg.refined_outer, tol=cfg.solver_tol)
    method = "solver" if cfg.refined_outer else "closed_form"
    tables = [
        hregion_table(outer, "outer_hrep", method),
        vregion_table(corners_from_hrep_2d(outer), "outer", method),
    ]
    if cfg.inner_form == "ge":
        inner = pp.pp_inner_corners_2u(pt, None, spec)
        tables.append(vregion_table(inner.to_vregion(), "inner", "quadrature"))
    elif cfg.inner_form == "hrep":
        h = pp.pp_inner_hrep_2u(pt)
        tables.append(hregion_table(h, "inner_hrep", "closed_form"))
        tables.append(vregion_table(corners_from_hrep_2d(h), "inner", "closed_form"))
    else:
        raise UsageError("--inner-form ie-hrep applies to average-power scenarios only")
    gaps = pp.pp_orientation_gaps(pt)
    report = BoundReport(
        "asymptotic_gaps",
        {f"gap_user{i + 1}": g.gap_nats for i, g in enumerate(gaps)},
        {"pnr": pnr},
        {f"gap_user{i + 1}": f"closed_form(n={g.n},lambda={g.lam:.12g})" for i, g in enumerate(gaps)},
    )
    tables.append(report_table(report))
    return tables


def run_kuser_region(cfg: ScenarioConfig) -> list[Table]:
    if len(cfg.k) != 1:
        raise UsageError("kuser-region takes a single --k")
    k = cfg.k[0]
    if k > ap.MAX_USERS:
        raise UsageError(f"kuser-region supports at most {ap.MAX_USERS} users")
    snr_db = cfg.snr_db * k if len(cfg.snr_db) == 1 else cfg.snr_db
    if len(snr_db) != k:
        raise UsageError("--snr-db needs one value or one per user")
    pt = ap.ApOperatingPoint(tuple(db_to_linear(v) for v in snr_db))
    spec = cfg.spec
    unit = EST_ERROR_FACTOR * spec.abs_tol
    tables = [hregion_table(ap.ap_kuser_outer(pt), "outer_hrep", "closed_form")]
    if cfg.inner_form == "ge":
        cs = ap.ap_kuser_inner_union(pt, spec)
        tables.append(vregion_table(cs.to_vregion(), "inner", "quadrature"))
    elif cfg.inner_form == "hrep":
        tables.append(hregion_table(ap.ap_kuser_inner_hrep(pt, "closed_form"), "inner_hrep", "closed_form"))
    else:
        tables.append(hregion_table(ap.ap_kuser_inner_hrep(pt, "ie_numeric", spec), "inner_hrep", "quadrature", unit))
    return tables


def run_gap_vs_k(cfg: ScenarioConfig) -> list[Table]:
    spec = cfg.spec
    unit = EST_ERROR_FACTOR * spec.abs_tol
    tables = []
    for k in cfg.k:
        def row(db, k=k):
            s = db_to_linear(db)
            inner = ap.ie(k * s, 1.0, spec)
            upper = ap.ap_single_upper(k * s)
            return (float(db), upper - inner, inner, upper, "quadrature", unit)

        tables.append(curve_table(f"sum_gap_k{k}", _pmap(cfg, row, cfg.grid)))
    return tables


def run_type_compare(cfg: ScenarioConfig) -> list[Table]:
    spec = cfg.spec
    unit = EST_ERROR_FACTOR * spec.abs_tol
    ks = [2 ** j for j in range(8)]
    asym_rows = [(k, ap.type_asymptotic_gap(k), math.nan, math.nan, "closed_form", 0.0) for k in ks]
    tables = [curve_table("asymptotic_gap", asym_rows)]
    for k in cfg.k:
        def row(db, k=k):
            tc = ap.ap_type_compare(k, db_to_linear(db), 1.0, spec)
            return (float(db), tc.finite_gap, tc.sum_rate_type2, tc.sum_rate_type1, "quadrature", 2 * unit)

        tables.append(curve_table(f"type_rates_k{k}", _pmap(cfg, row, cfg.grid)))
    return tables


def run_single_user_peak(cfg: ScenarioConfig) -> list[Table]:
    spec = cfg.spec
    unit = EST_ERROR_FACTOR * spec.abs_tol

    def row(db):
        p = db_to_linear(db)
        r = solve_peak_capacity(p, tol=cfg.solver_tol)
        u_num, u_closed = pp.pp_single_lower_uniform(p, 1.0, spec)
        tkb = pp.pp_tkb(p)
        return float(db), r, u_num, u_closed, pp.pp_mckellips(p), tkb, pp.pp_single_upper(p)

    results = _pmap(cfg, row, cfg.grid)
    cap = [(db, r.capacity, r.capacity, r.upper, "blahut_arimoto", r.bracket_width) for db, r, *_ in results]
    unif = [(db, un, uc, un, "quadrature", unit) for db, _, un, uc, *_ in results]
    mck = [(db, m, math.nan, math.nan, "closed_form", 0.0) for db, _, _, _, m, _, _ in results]
    tkb = [(db, t, math.nan, math.nan, "closed_form", 0.0) for db, _, _, _, _, t, _ in results if t is not None]
    comb = [(db, c, math.nan, math.nan, "closed_form", 0.0) for db, *_, c in results]
    return [
        curve_table("capacity", cap),
        curve_table("uniform_lower", unif),
        curve_table("mckellips_upper", mck),
        curve_table("tkb_upper", tkb),
        curve_table("combined_upper", comb),
    ]


def run_lemma5_dist(cfg: ScenarioConfig) -> list[Table]:
    a = cfg.a
    if not a > 0:
        raise UsageError("--a must be positive")
    law = make_maxmass_discrete(a)
    atoms = [(float(x), float(p), float(p), float(p), "exact", 0.0) for x, p in law.atoms]
    # output density of X + Z, Z uniform on [-1, 1]: piecewise constant
    edges = np.concatenate([law.atom_x - 1.0, law.atom_x + 1.0])
    jumps = np.concatenate([law.atom_p, -law.atom_p]) / 2.0
    scale = max(1.0, float(np.max(np.abs(edges))))
    edges = np.round(edges / (1e-12 * scale)) * (1e-12 * scale)
    starts, inverse = np.unique(edges, return_inverse=True)
    levels = np.clip(np.cumsum(np.bincount(inverse, weights=jumps)), 0.0, None)
    # each row gives the density on [x, next x)
    dens = [(float(x), float(v), float(v), float(v), "exact", 0.0) for x, v in zip(starts, levels)]
    mi = mi_uniform_noise(law)
    report = BoundReport(
        "capacity",
        {"closed_form": pp.pp_lemma5_capacity(a), "mi_at_input": mi.value},
        {"a": a},
        {"closed_form": "closed_form", "mi_at_input": mi.method},
        {"mi_at_input": mi.est_error},
    )
    # probabilities and densities are not rates: keep them out of the unit conversion
    atom_table = curve_table("input_atoms", atoms)
    dens_table = curve_table("output_density", dens)
    atom_table = replace(atom_table, rate_columns=frozenset())
    dens_table = replace(dens_table, rate_columns=frozenset())
    return [atom_table, dens_table, report_table(report)]


def run_pnr_star(cfg: ScenarioConfig) -> list[Table]:
    value = pp.pp_pnr_star()
    report = BoundReport("pnr_star", {"pnr_star": value}, {}, {"pnr_star": "bisection"}, {"pnr_star": 1e-12})
    return [replace(report_table(report), rate_columns=frozenset())]


def run_joint_outer(cfg: ScenarioConfig) -> list[Table]:
    pnr = tuple(db_to_linear(v) for v in _two(cfg.pnr_db, "--pnr-db"))
    if not (0 < cfg.ea_ratio <= 1):
        raise UsageError("--ea-ratio must lie in (0, 1]")
    snr = tuple(cfg.ea_ratio * p for p in pnr)
    outer = ap.ap_outer_2u(ap.ApOperatingPoint(snr))
    peak_outer = pp.pp_outer_2u(pp.PpOperatingPoint(pnr))
    return [
        hregion_table(outer, "avg_outer_hrep", "closed_form"),
        vregion_table(corners_from_hrep_2d(outer), "avg_outer", "closed_form"),
        vregion_table(corners_from_hrep_2d(peak_outer), "peak_outer", "closed_form"),
    ]


RUNNERS = {
    "avg-region": run_avg_region,
    "peak-region": run_peak_region,
    "kuser-region": run_kuser_region,
    "gap-vs-k": run_gap_vs_k,
    "type-compare": run_type_compare,
    "single-user-peak": run_single_user_peak,
    "lemma5-dist": run_lemma5_dist,
    "pnr-star": run_pnr_star,
    "joint-outer": run_joint_outer,
}


# ---------------------------------------------------------------------------
# entry points


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oimac", description="Capacity-region bounds for the optical intensity MAC.")
    p.add_argument("scenario", choices=SCENARIOS)
    p.add_argument("--snr-db", help="per-user optical SNRs in dB, comma separated")
    p.add_argument("--pnr-db", help="per-user optical PNRs in dB, comma separated")
    p.add_argument("--k", help="number of users (a comma list for curve scenarios)")
    p.add_argument("--units", choices=("bits", "nats"), default="nats")
    p.add_argument("--grid", help="sweep in dB as lo:hi:steps")
    p.add_argument("--tol", type=float, help="quadrature abs_tol and solver tolerance, nats")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", help="directory for one file per table (default: stdout)")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"))
    p.add_argument("--refined-outer", action="store_true", help="tighten the peak outer bound with the solver")
    p.add_argument("--inner-form", choices=("ge", "hrep", "ie-hrep"), default="ge")
    p.add_argument("--a", type=float, default=4.7, help="amplitude ratio for lemma5-dist")
    p.add_argument("--ea-ratio", type=float, default=0.2, help="E/A ratio for joint-outer")
    p.add_argument("--workers", type=int, default=4)
    return p


def config_from_args(args: argparse.Namespace) -> ScenarioConfig:
    d = DEFAULTS.get(args.scenario, {})
    snr_db = _floats(args.snr_db or d.get("snr_db", ""), "--snr-db") if (args.snr_db or "snr_db" in d) else ()
    pnr_db = _floats(args.pnr_db or d.get("pnr_db", ""), "--pnr-db") if (args.pnr_db or "pnr_db" in d) else ()
    k = _ints(args.k or d.get("k", ""), "--k") if (args.k or "k" in d) else ()
    grid = _grid(args.grid or d["grid"]) if (args.grid or "grid" in d) else ()
    if args.tol is not None and not (math.isfinite(args.tol) and args.tol > 0):
        raise UsageError("--tol must be positive")
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    fmt = args.fmt or ("json" if args.scenario == "pnr-star" else "csv")
    return ScenarioConfig(
        scenario=args.scenario,
        snr_db=tuple(snr_db),
        pnr_db=tuple(pnr_db),
        k=tuple(k),
        units=args.units,
        grid=tuple(float(g) for g in grid),
        seed=args.seed,
        tol=args.tol,
        fmt=fmt,
        out=args.out,
        refined_outer=args.refined_outer,
        inner_form=args.inner_form,
        a=args.a,
        ea_ratio=args.ea_ratio,
        workers=args.workers,
    )


def write_tables(cfg: ScenarioConfig, tables: list[Table], stream=None) -> list[str]:
    """Write tables to ``cfg.out`` (one file each) or to ``stream``; returns written paths."""
    stream = sys.stdout if stream is None else stream
    ext = "csv" if cfg.fmt == "csv" else "json"
    if cfg.out is None:
        if cfg.fmt == "json":
            if cfg.scenario == "pnr-star":
                stream.write(json.dumps({"pnr_star": float(format(tables[0].rows[0][1], ".12g"))}) + "\n")
            else:
                stream.write(render_json(tables, cfg.units))
        else:
            for i, t in enumerate(tables):
                if i:
                    stream.write("\n")
                stream.write(f"# {t.name}\n")
                stream.write(render_csv(t, cfg.units))
        return []
    os.makedirs(cfg.out, exist_ok=True)
    paths = []
    for t in tables:
        path = os.path.join(cfg.out, f"{cfg.scenario}_{t.name}.{ext}")
        text = render_csv(t, cfg.units) if cfg.fmt == "csv" else render_json(t, cfg.units)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        paths.append(path)
    return paths


def run_scenario(cfg: ScenarioConfig, stream=None) -> int:
    """Run one scenario and write its tables; returns the process exit status."""
    try:
        tables = RUNNERS[cfg.scenario](cfg)
    except UsageError as exc:
        print(f"oimac: error: {exc}", file=sys.stderr)
        return 2
    except (OimacError, ArithmeticError, ValueError) as exc:
        diag = {"scenario": cfg.scenario, "error": type(exc).__name__, "message": str(exc)}
        last = getattr(exc, "last_bracket", None)
        if last is not None:
            diag["last_bracket"] = last
        print(json.dumps(diag), file=sys.stderr)
        return 1
    write_tables(cfg, tables, stream)
    return 0


_VALUE_OPTIONS = ("--snr-db", "--pnr-db", "--grid", "--k", "--a", "--tol")


def _attach_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--snr-db -3,5`` as ``--snr-db=-3,5`` so argparse accepts negative lists."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in _VALUE_OPTIONS and nxt is not None and nxt.startswith("-") and (nxt[1:2].isdigit() or nxt[1:2] == "."):
            out.append(f"{tok}={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_attach_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
    except UsageError as exc:
        print(f"oimac: error: {exc}", file=sys.stderr)
        return 2
    try:
        return run_scenario(cfg)
    except OSError as exc:
        print(json.dumps({"scenario": cfg.scenario, "error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
