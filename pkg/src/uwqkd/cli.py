"""Command-line driver: sweeps, secure-distance solvers, Monte Carlo runs.

Exit codes: 0 success, 2 usage error, 3 config error, 4 insufficient
statistics. The environment variable QKD_SIM_JOBS sets the default
worker count.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from uwqkd.analysis import SECURITY_QBER_LIMIT, evaluate_link
from uwqkd.config import ConfigError, RunSettings, load_config, parse_angle
from uwqkd.environment import SCENARIO_PRESETS, WATER_PRESETS, scenario_preset, water_preset
from uwqkd.montecarlo import InsufficientStatisticsError, SimConfig, predicted_qber, simulate

__all__ = [
    "CSV_HEADER",
    "SweepSpec",
    "ThresholdReport",
    "main",
    "run_sweep",
    "solve_thresholds",
    "write_csv",
]

CSV_HEADER = (
    "water,scenario,beta_rad,L_m,qber,skr_bits_per_pulse,p_coincidence,mc_qber,mc_stderr"
)

_SOLVER_TOL = 1e-4
_SCAN_STEP = 0.01


@dataclass(frozen=True)
class SweepSpec:
    """Grid of operating points for one sweep run."""

    l_min: float
    l_max: float
    step: float
    betas: tuple
    waters: tuple
    scenarios: tuple
    mc_packets: int = 10000
    mc_photons: int = 1000
    mc_seed: int = 1
    with_mc: bool = False

    def __post_init__(self):
        if self.l_min < 0.0 or self.step <= 0.0 or self.l_max <= self.l_min:
            raise ValueError("sweep needs l_min >= 0, step > 0, l_max > l_min")

    def lengths(self) -> list:
        n = int(math.floor((self.l_max - self.l_min) / self.step + 1e-9)) + 1
        return [self.l_min + i * self.step for i in range(n)]


@dataclass(frozen=True)
class ThresholdReport:
    """Secure-distance summary for one (water, scenario, beta) cell.

    Distances are in meters; ``inf`` means the crossing lies beyond the
    scanned range.
    """

    water: str
    scenario: int
    beta: float
    qber_secure_distance: float
    skr_zero_distance: float


def _derive_seed(master_seed: int, index: int) -> int:
    return int(np.random.SeedSequence((master_seed, index)).generate_state(1)[0])


def _fmt(value) -> str:
    return "" if value is None else f"{value:.17g}"


def run_sweep(settings: RunSettings, spec: SweepSpec, jobs: int = 1) -> list:
    """Evaluate the grid; returns CSV-ready rows sorted by (water, scenario, beta, L)."""
    cells = [
        (settings.resolve_water(w), settings.resolve_scenario(s), beta)
        for w in sorted(spec.waters)
        for s in sorted(spec.scenarios)
        for beta in sorted(spec.betas)
    ]
    rows = []
    for water, scenario, beta in cells:
        for length in spec.lengths():
            link = settings.link_at(length, water=water, scenario=scenario)
            res = evaluate_link(link, beta)
            rows.append(
                [water.name, scenario.id, beta, length, res.qber, res.skr, res.p_coincidence, None, None]
            )

    if spec.with_mc:
        def run_cell(index):
            water_name, scenario_id, beta, length = rows[index][:4]
            link = settings.link_at(
                length,
                water=settings.resolve_water(water_name),
                scenario=settings.resolve_scenario(scenario_id),
            )
            sim = simulate(
                SimConfig(
                    link=link,
                    beta=beta,
                    n_packets=spec.mc_packets,
                    photons_per_packet=spec.mc_photons,
                    master_seed=_derive_seed(spec.mc_seed, index),
                )
            )
            return sim.qber_estimate, sim.std_error

        indices = range(len(rows))
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                estimates = list(pool.map(run_cell, indices))
        else:
            estimates = [run_cell(i) for i in indices]
        for row, (mc_qber, mc_stderr) in zip(rows, estimates):
            row[7] = mc_qber
            row[8] = mc_stderr
    return rows


def write_csv(rows, stream) -> None:
    stream.write(CSV_HEADER + "\n")
    for water, scenario, beta, length, qber, skr, pc, mc_qber, mc_stderr in rows:
        stream.write(
            f"{water},{scenario},{_fmt(beta)},{_fmt(length)},{_fmt(qber)},"
            f"{_fmt(skr)},{_fmt(pc)},{_fmt(mc_qber)},{_fmt(mc_stderr)}\n"
        )


def _bisect(predicate, lo: float, hi: float, tol: float) -> float:
    # predicate is True at lo and False at hi; returns the flip point.
    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        if predicate(mid):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def solve_thresholds(
    settings: RunSettings,
    water,
    scenario,
    beta: float,
    l_min: float = 0.0,
    l_max: float = 10.0,
    tol: float = _SOLVER_TOL,
) -> ThresholdReport:
    """Bisect the QBER = 11% crossing and the smallest length with zero key rate.

    A coarse pre-scan asserts that QBER is monotone over the range before
    any bisection is trusted.
    """
    if isinstance(water, str):
        water = settings.resolve_water(water)
    if isinstance(scenario, (str, int)):
        scenario = settings.resolve_scenario(scenario_preset(scenario).id)

    def at(length):
        return evaluate_link(settings.link_at(length, water=water, scenario=scenario), beta)

    grid = [l_min + i * _SCAN_STEP for i in range(int((l_max - l_min) / _SCAN_STEP) + 1)]
    if grid[-1] < l_max:
        grid.append(l_max)
    results = [at(length) for length in grid]
    qbers = [r.qber for r in results]
    for prev, cur, length in zip(qbers, qbers[1:], grid[1:]):
        if cur < prev - 1e-9:
            raise RuntimeError(
                f"QBER is not monotone near L = {length:.3f} m "
                f"({prev:.6f} -> {cur:.6f}); threshold bisection is unsafe here"
            )

    if qbers[0] >= SECURITY_QBER_LIMIT:
        qber_distance = 0.0
    else:
        above = next((i for i, q in enumerate(qbers) if q >= SECURITY_QBER_LIMIT), None)
        if above is None:
            qber_distance = math.inf
        else:
            qber_distance = _bisect(
                lambda length: at(length).qber < SECURITY_QBER_LIMIT,
                grid[above - 1],
                grid[above],
                tol,
            )

    if results[0].skr == 0.0:
        skr_distance = 0.0
    else:
        dead = next((i for i, r in enumerate(results) if r.skr == 0.0), None)
        if dead is None:
            skr_distance = math.inf
        else:
            skr_distance = _bisect(
                lambda length: at(length).skr > 0.0, grid[dead - 1], grid[dead], tol
            )

    return ThresholdReport(
        water=water.name,
        scenario=scenario.id,
        beta=beta,
        qber_secure_distance=qber_distance,
        skr_zero_distance=skr_distance,
    )


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("QKD_SIM_JOBS", "1")))
    except ValueError:
        return 1


def _add_common(parser):
    parser.add_argument("--config", help="INI config file")
    parser.add_argument("--water", help="water preset name or comma list ('all')")
    parser.add_argument("--scenario", help="scenario id/name or comma list ('all')")
    parser.add_argument(
        "--beta", type=parse_angle, action="append",
        help="source angle in radians (accepts pi/4 shorthand); repeatable",
    )
    parser.add_argument("--jobs", type=int, default=_default_jobs(), help="worker count")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uwqkd",
        description="BBM92 underwater QKD link simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="QBER/SKR vs distance grid, CSV output")
    _add_common(p_sweep)
    p_sweep.add_argument("--out", help="CSV output path (default: stdout)")
    p_sweep.add_argument("--mc", action="store_true", help="add Monte Carlo columns")
    p_sweep.add_argument("--seed", type=int, help="Monte Carlo master seed")
    p_sweep.add_argument("--packets", type=int, help="Monte Carlo packets per point")
    p_sweep.add_argument("--photons", type=int, help="photons per packet")
    p_sweep.add_argument("--l-min", type=float, dest="l_min", help="sweep start, m")
    p_sweep.add_argument("--l-max", type=float, dest="l_max", help="sweep end, m")
    p_sweep.add_argument("--step", type=float, help="sweep step, m")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_thr = sub.add_parser("thresholds", help="secure-distance report")
    _add_common(p_thr)
    p_thr.add_argument("--out", help="CSV output path (default: stdout text)")
    p_thr.add_argument("--l-max", type=float, dest="l_max", default=10.0, help="scan limit, m")
    p_thr.set_defaults(func=_cmd_thresholds)

    p_mc = sub.add_parser("mc", help="Monte Carlo run at one operating point")
    _add_common(p_mc)
    p_mc.add_argument("--length", type=float, help="total link length, m")
    p_mc.add_argument("--seed", type=int, help="master seed")
    p_mc.add_argument("--packets", type=int, help="packet count")
    p_mc.add_argument("--photons", type=int, help="photons per packet")
    p_mc.set_defaults(func=_cmd_mc)

    p_presets = sub.add_parser("presets", help="list water and scenario presets")
    p_presets.set_defaults(func=_cmd_presets)

    return parser


def _parse_multi(raw, all_values, one_of):
    if raw is None or raw == "all":
        return tuple(all_values)
    return tuple(one_of(part.strip()) for part in raw.split(",") if part.strip())


def _sweep_spec_from(args, settings: RunSettings) -> SweepSpec:
    waters = _parse_multi(args.water, settings.sweep_waters, lambda w: water_preset(w).name)
    scenarios = _parse_multi(
        args.scenario, settings.sweep_scenarios, lambda s: scenario_preset(s).id
    )
    betas = tuple(args.beta) if args.beta else settings.sweep_betas
    return SweepSpec(
        l_min=args.l_min if args.l_min is not None else settings.sweep_l_min,
        l_max=args.l_max if args.l_max is not None else settings.sweep_l_max,
        step=args.step if args.step is not None else settings.sweep_step,
        betas=betas,
        waters=waters,
        scenarios=scenarios,
        mc_packets=args.packets if args.packets is not None else settings.mc_packets,
        mc_photons=args.photons if args.photons is not None else settings.mc_photons,
        mc_seed=args.seed if args.seed is not None else settings.mc_seed,
        with_mc=args.mc,
    )


def _cmd_sweep(args) -> int:
    settings = load_config(args.config)
    spec = _sweep_spec_from(args, settings)
    rows = run_sweep(settings, spec, jobs=args.jobs)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    return 0


def _cmd_thresholds(args) -> int:
    settings = load_config(args.config)
    waters = _parse_multi(args.water, (settings.water.name,), lambda w: water_preset(w).name)
    scenarios = _parse_multi(
        args.scenario, (settings.scenario.id,), lambda s: scenario_preset(s).id
    )
    betas = tuple(args.beta) if args.beta else settings.sweep_betas
    reports = [
        solve_thresholds(settings, w, s, beta, l_max=args.l_max)
        for w in sorted(waters)
        for s in sorted(scenarios)
        for beta in sorted(betas)
    ]

    def dist(value):
        return "beyond l_max" if math.isinf(value) else f"{value:.17g}"

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write("water,scenario,beta_rad,qber_secure_distance_m,skr_zero_distance_m\n")
            for r in reports:
                fh.write(
                    f"{r.water},{r.scenario},{r.beta:.17g},"
                    f"{dist(r.qber_secure_distance)},{dist(r.skr_zero_distance)}\n"
                )
    else:
        for r in reports:
            print(
                f"water={r.water} scenario={r.scenario} beta={r.beta:.6f} "
                f"qber_secure_distance={dist(r.qber_secure_distance)} m "
                f"skr_zero_distance={dist(r.skr_zero_distance)} m"
            )
    return 0


def _cmd_mc(args) -> int:
    settings = load_config(args.config)
    water = settings.resolve_water(args.water) if args.water else settings.water
    scenario = (
        settings.resolve_scenario(scenario_preset(args.scenario).id)
        if args.scenario
        else settings.scenario
    )
    beta = args.beta[0] if args.beta else settings.sweep_betas[0]
    length = args.length if args.length is not None else settings.total_length
    link = settings.link_at(length, water=water, scenario=scenario)
    cfg = SimConfig(
        link=link,
        beta=beta,
        n_packets=args.packets if args.packets is not None else settings.mc_packets,
        photons_per_packet=args.photons if args.photons is not None else settings.mc_photons,
        master_seed=args.seed if args.seed is not None else settings.mc_seed,
    )
    sim = simulate(cfg, n_jobs=args.jobs)
    analytic = evaluate_link(link, beta)
    expected = predicted_qber(link, beta)
    print(f"pairs={cfg.n_packets * cfg.photons_per_packet}")
    print(f"coincidences={sim.coincidences} sifted={sim.sifted} errors={sim.errors}")
    print(f"mc_qber={sim.qber_estimate:.6g} mc_stderr={sim.std_error:.3g}")
    print(f"predicted_mc_qber={expected:.6g} closed_form_qber={analytic.qber:.6g}")
    return 0


def _cmd_presets(args) -> int:
    print("waters (name, extinction 1/m, depolarization 1/m):")
    for name, water in WATER_PRESETS.items():
        print(f"  {name:8s} alpha={water.alpha:<7g} gamma_dep={water.gamma_dep:g}")
    print("scenarios (id, surface irradiance W/m^2):")
    for sid, scenario in SCENARIO_PRESETS.items():
        print(f"  s{sid}       R0={scenario.surface_irradiance:g}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses exit code 2 for usage errors
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3
    except InsufficientStatisticsError as exc:
        print(f"insufficient statistics: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
