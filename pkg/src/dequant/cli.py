"""Command-line front end emitting figure data as CSV and JSON summaries.

Four subcommands cover the supported systems:

* ``hydrogen``: one bound state; radial kinetic-density profiles plus a
  scalar summary with the closed-form reference values.
* ``pib``: a box superposition at a list of times.
* ``gaussian``: the spreading free packet at a list of times.
* ``scan``: the deformation scan alpha -> T_{alpha u_c} for any of the
  three systems, with a fitted parabola vertex when the scan has at
  least three points.

``--out PREFIX`` writes ``PREFIX.csv`` (``PREFIX_000.csv`` per time for
the dynamical systems) and ``PREFIX.json``; without it the JSON summary
goes to standard output.  All numbers are printed with shortest
round-trip precision and files end lines with LF, so identical
invocations produce byte-identical files.

Exit codes: 0 success, 2 invalid configuration, 3 violated internal
invariant, 4 file I/O failure.
"""

import argparse
import json
import math
import sys

import numpy as np

from .dynamics import GaussianPacket, PibSuperposition, cn_propagate, l2_distance, pib_evolve, gaussian_evolve
from .functionals import (
    ConsistencyError,
    decompose,
    identity_residual,
    parabola_vertex,
    variational_scan,
)
from .hydrogenic import OrbitalSpec, analytic_values, orbital
from .quadgrid import make_spherical_grid, make_uniform_grid
from .qstate import Wavefunction

__all__ = ["main"]

_CLOSURE_RTOL = 1e-8

# Per-system Crank-Nicolson oracle steps; the box needs the finer step
# to keep its larger eigenphases accurate.
_ORACLE_DT = {"pib": 1e-5, "gaussian": 1e-3}

_EXIT_INVALID = 2
_EXIT_INVARIANT = 3
_EXIT_IO = 4


def _fmt(v) -> str:
    return repr(float(v))


def _csv_text(header: str, columns) -> str:
    rows = np.broadcast_arrays(*[np.asarray(c, dtype=float) for c in columns])
    lines = [header]
    for i in range(rows[0].shape[0]):
        lines.append(",".join(_fmt(c[i]) for c in rows))
    return "\n".join(lines) + "\n"


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _parse_floats(raw: str, what: str) -> list:
    try:
        values = [float(tok) for tok in raw.split(",") if tok.strip() != ""]
    except ValueError:
        raise ValueError(f"cannot parse {what} list {raw!r}") from None
    if not values:
        raise ValueError(f"{what} list is empty")
    return values


def _parse_times(raw: str) -> list:
    times = _parse_floats(raw, "time")
    for t in times:
        if t < 0.0:
            raise ValueError(f"times must be nonnegative, got {t!r}")
    return times


def _assert_closure(T: float, T_C: float, T_W: float, where: str) -> None:
    if abs(T - T_C - T_W) > _CLOSURE_RTOL * abs(T):
        raise ConsistencyError(
            f"decomposition closure violated for {where}: "
            f"T={T!r}, T_C={T_C!r}, T_W={T_W!r}"
        )


def _spherical_grid(args):
    return make_spherical_grid(r_max=args.rmax, n_r=args.points, n_theta=args.theta_points)


def _series_payload(system: str, evolve, times, grid, oracle: bool, extra: dict) -> tuple:
    """Decompose evolve(t) per time; returns (json payload, csv texts)."""
    reports = []
    for t in times:
        w = evolve(t)
        rep = decompose(w)
        _assert_closure(rep.T, rep.T_C, rep.T_W, f"{system} at t={t!r}")
        entry = {
            "t": t,
            "T": rep.T,
            "T_C": rep.T_C,
            "T_W": rep.T_W,
            "fisher": rep.fisher,
            "shannon": rep.shannon,
        }
        if oracle:
            dt = _ORACLE_DT[system]
            steps = round(t / dt)
            propagated = cn_propagate(evolve(0.0), dt, steps)
            entry["cn_l2_residual"] = l2_distance(propagated, w)
        reports.append((w, rep, entry))
    payload = dict(extra)
    payload["system"] = system
    payload["grid"] = {
        "x_min": float(grid.points[0]),
        "x_max": float(grid.points[-1]),
        "n_points": grid.n_points,
    }
    payload["series"] = [entry for _, _, entry in reports]
    csvs = []
    for i, (w, rep, _) in enumerate(reports):
        p = np.abs(w.values) ** 2
        text = _csv_text(
            "x,p,t_c,t_w,t",
            [
                grid.points,
                p,
                rep.integrand_TC.values,
                rep.integrand_TW.values,
                rep.integrand_T.values,
            ],
        )
        csvs.append((f"_{i:03d}", text))
    return payload, csvs


def cmd_hydrogen(args) -> tuple:
    spec = OrbitalSpec(args.n, args.l, args.m)
    grid = _spherical_grid(args)
    w = orbital(spec, grid)
    rep = decompose(w)
    _assert_closure(rep.T, rep.T_C, rep.T_W, f"orbital {spec.label}")
    a_tc, a_tw, a_t = analytic_values(spec)
    payload = {
        "n": spec.n,
        "l": spec.l,
        "m": spec.m,
        "T": rep.T,
        "T_C": rep.T_C,
        "T_W": rep.T_W,
        "fisher": rep.fisher,
        "shannon": rep.shannon,
        "analytic_T_C": a_tc,
        "analytic_T_W": a_tw,
        "analytic_T": a_t,
        "max_pointwise_residual": identity_residual(w)[0],
        "grid": {
            "r_max": args.rmax,
            "n_r": args.points,
            "n_theta": args.theta_points,
        },
    }
    csv = _csv_text(
        "r,t_c,t_w,t",
        [
            grid.r.points,
            rep.integrand_TC.values,
            rep.integrand_TW.values,
            rep.integrand_T.values,
        ],
    )
    return payload, [("", csv)]


def _pib_state(args) -> PibSuperposition:
    if args.coefficients is None:
        amp = math.sqrt(0.5)
        return PibSuperposition((amp, amp))
    return PibSuperposition(tuple(_parse_floats(args.coefficients, "coefficient")))


def cmd_pib(args) -> tuple:
    state = _pib_state(args)
    times = _parse_times(args.times)
    lo = 0.0 if args.xmin is None else args.xmin
    hi = state.L if args.xmax is None else args.xmax
    grid = make_uniform_grid(lo, hi, args.points)
    extra = {
        "L": state.L,
        "coefficients": [[c.real, c.imag] for c in state.coefficients],
    }
    return _series_payload(
        "pib", lambda t: pib_evolve(state, t, grid), times, grid, args.oracle, extra
    )


def cmd_gaussian(args) -> tuple:
    packet = GaussianPacket()
    times = _parse_times(args.times)
    lo = -60.0 if args.xmin is None else args.xmin
    hi = 60.0 if args.xmax is None else args.xmax
    grid = make_uniform_grid(lo, hi, args.points)
    return _series_payload(
        "gaussian", lambda t: gaussian_evolve(packet, t, grid), times, grid, args.oracle, {}
    )


def cmd_scan(args) -> tuple:
    alphas = _parse_floats(args.alphas, "alpha")
    if args.system == "hydrogen":
        spec = OrbitalSpec(args.n, args.l, args.m)
        w = orbital(spec, _spherical_grid(args))
        state_desc = {"system": "hydrogen", "n": spec.n, "l": spec.l, "m": spec.m}
    else:
        t = args.time
        if t < 0.0:
            raise ValueError(f"times must be nonnegative, got {t!r}")
        if args.system == "pib":
            state = _pib_state(args)
            lo = 0.0 if args.xmin is None else args.xmin
            hi = state.L if args.xmax is None else args.xmax
            grid = make_uniform_grid(lo, hi, args.points)
            w = pib_evolve(state, t, grid)
            state_desc = {
                "system": "pib",
                "t": t,
                "L": state.L,
                "coefficients": [[c.real, c.imag] for c in state.coefficients],
            }
        else:
            lo = -60.0 if args.xmin is None else args.xmin
            hi = 60.0 if args.xmax is None else args.xmax
            grid = make_uniform_grid(lo, hi, args.points)
            w = gaussian_evolve(GaussianPacket(), t, grid)
            state_desc = {"system": "gaussian", "t": t}
    rep = decompose(w)
    _assert_closure(rep.T, rep.T_C, rep.T_W, f"scan state {state_desc['system']}")
    points = variational_scan(w, alphas)
    payload = {
        "state": state_desc,
        "alphas": [a for a, _ in points],
        "T_alpha": [v for _, v in points],
        "T": rep.T,
        "T_C": rep.T_C,
        "T_W": rep.T_W,
    }
    if len(points) >= 3:
        vertex_alpha, vertex_value = parabola_vertex(points)
        payload["vertex_alpha"] = vertex_alpha
        payload["vertex_T"] = vertex_value
    csv = _csv_text("alpha,T_alpha", [payload["alphas"], payload["T_alpha"]])
    return payload, [("", csv)]


def _write_outputs(args, payload: dict, csvs: list) -> None:
    if args.out is None:
        sys.stdout.write(_json_text(payload))
        return
    paths = []
    if args.format in ("csv", "both"):
        paths.extend((f"{args.out}{suffix}.csv", text) for suffix, text in csvs)
    if args.format in ("json", "both"):
        paths.append((f"{args.out}.json", _json_text(payload)))
    for path, text in paths:
        with open(path, "w", newline="\n") as handle:
            handle.write(text)


def _add_common(sub) -> None:
    sub.add_argument("--out", help="output file prefix; omit to print JSON to stdout")
    sub.add_argument(
        "--format", choices=("csv", "json", "both"), default="both", help="which files to write"
    )
    sub.add_argument("--rmax", type=float, default=60.0, help="spherical grid extent (Bohr)")
    sub.add_argument(
        "--theta-points", type=int, default=1001, help="polar point count (spherical systems)"
    )
    sub.add_argument("--xmin", type=float, default=None, help="line grid left edge (Bohr)")
    sub.add_argument("--xmax", type=float, default=None, help="line grid right edge (Bohr)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dequant",
        description="Decompose quantum kinetic energy into classical and gradient parts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_h = sub.add_parser("hydrogen", help="decompose one hydrogen-like bound state")
    p_h.add_argument("--n", type=int, required=True)
    p_h.add_argument("--l", type=int, required=True)
    p_h.add_argument("--m", type=int, required=True)
    p_h.add_argument("--points", type=int, default=4001, help="radial point count")
    _add_common(p_h)
    p_h.set_defaults(handler=cmd_hydrogen)

    p_p = sub.add_parser("pib", help="box superposition at given times")
    p_p.add_argument("--times", required=True, help="comma-separated times (a.u.)")
    p_p.add_argument(
        "--coefficients", default=None, help="comma-separated eigenstate weights, default equal pair"
    )
    p_p.add_argument("--points", type=int, default=4001, help="line point count")
    p_p.add_argument(
        "--oracle", action="store_true", help="add Crank-Nicolson L2 residual per time"
    )
    _add_common(p_p)
    p_p.set_defaults(handler=cmd_pib)

    p_g = sub.add_parser("gaussian", help="spreading free packet at given times")
    p_g.add_argument("--times", required=True, help="comma-separated times (a.u.)")
    p_g.add_argument("--points", type=int, default=4001, help="line point count")
    p_g.add_argument(
        "--oracle", action="store_true", help="add Crank-Nicolson L2 residual per time"
    )
    _add_common(p_g)
    p_g.set_defaults(handler=cmd_gaussian)

    p_s = sub.add_parser("scan", help="deformation scan alpha -> T_alpha")
    p_s.add_argument("--system", choices=("hydrogen", "pib", "gaussian"), default="hydrogen")
    p_s.add_argument("--alphas", required=True, help="comma-separated scaling factors")
    p_s.add_argument("--n", type=int, default=1)
    p_s.add_argument("--l", type=int, default=0)
    p_s.add_argument("--m", type=int, default=0)
    p_s.add_argument("--time", type=float, default=0.0, help="evaluation time (dynamical systems)")
    p_s.add_argument(
        "--coefficients", default=None, help="comma-separated eigenstate weights (pib)"
    )
    p_s.add_argument("--points", type=int, default=4001, help="grid point count")
    _add_common(p_s)
    p_s.set_defaults(handler=cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        payload, csvs = args.handler(args)
    except ConsistencyError as exc:
        print(f"dequant: invariant violated: {exc}", file=sys.stderr)
        return _EXIT_INVARIANT
    except ValueError as exc:
        print(f"dequant: invalid configuration: {exc}", file=sys.stderr)
        return _EXIT_INVALID
    try:
        _write_outputs(args, payload, csvs)
    except OSError as exc:
        print(f"dequant: cannot write output: {exc}", file=sys.stderr)
        return _EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
