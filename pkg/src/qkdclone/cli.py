"""Command-line entry point: table/figure data, windows and protocol runs.

Every command writes its data file plus ``<out>.manifest.json`` recording the
command, its parameters and the files produced. Exit status is 0 on success,
1 on usage or input errors and 2 when some requested point is flagged as
outside its valid region (the data is still written).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import secrets
import sys
from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .bounds import (
    alpha_window_bh,
    alpha_window_wz,
    a_coefficient,
    delta_z_threshold,
    fidelity_window,
    quadratic_root,
    r_lb,
    r_lb_quadratic,
    woodhead_rate,
)
from .cloners import CloningMachine, fidelity_bh_closed, fidelity_wz_closed
from .constants import A_THRESHOLD, QUADRATIC_VALIDITY_LIMIT
from .distances import (
    OK,
    TABLE_BH_ALPHA_SQ,
    TABLE_WZ_ALPHA_SQ,
    bh_efficiency_table,
    wz_efficiency_table,
)
from .protocol import ConfigError, ProtocolConfig, run_protocol

EXIT_OK, EXIT_USAGE, EXIT_FLAGGED = 0, 1, 2

# offset of the last sample below the threshold in figure-rlb output
EDGE_OFFSET = 1e-9


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    parameters: dict[str, Any]
    artifacts: list[str] = field(default_factory=list)
    tool_version: str = __version__
    seed: Optional[int] = None

    def write(self, out: Path) -> Path:
        path = out.with_name(out.name + ".manifest.json")
        path.write_text(_dumps(asdict(self)), encoding="utf-8")
        return path


def fmt4(x: Optional[float]) -> str:
    """Round half-up to 4 decimals from the shortest float repr."""
    if x is None:
        return ""
    return str(Decimal(repr(float(x))).quantize(Decimal("0.0001"), rounding=ROUND_HALF_UP))


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _write_csv(out: Path, header: Sequence[str], rows: Sequence[Sequence[Any]]):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    _write_text(out, buf.getvalue())


def _write_text(out: Path, text: str):
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from None


def _floats(text: Optional[str], name: str) -> Optional[list[float]]:
    if text is None:
        return None
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--{name} expects comma-separated numbers, got {text!r}") from None


def cmd_table_wz(args) -> int:
    alphas = _floats(args.alpha, "alpha") or list(TABLE_WZ_ALPHA_SQ)
    rows = wz_efficiency_table(alphas)
    _write_csv(
        args.out,
        ["alpha_sq", "fidelity", "trace_dist_sq_upper", "hs_upper",
         "measured_hs_ideal", "measured_hs_pair", "condition_holds", "status"],
        [
            [fmt4(r.alpha_sq), fmt4(r.fidelity), fmt4(r.trace_dist_sq_bound), fmt4(r.hs_bound),
             fmt4(r.measured_hs_ideal), fmt4(r.measured_hs_pair), str(r.condition_holds).lower(), r.status]
            for r in rows
        ],
    )
    RunManifest("table-wz", {"alpha": alphas}, [str(args.out)]).write(args.out)
    return EXIT_OK if all(r.status == OK for r in rows) else EXIT_FLAGGED


def cmd_table_bh(args) -> int:
    xis = _floats(args.xi, "xi")
    alphas = _floats(args.alpha, "alpha")
    if xis is None and alphas is None:
        xis, grid = list(TABLE_BH_ALPHA_SQ), TABLE_BH_ALPHA_SQ
    elif alphas is None:
        bad = [x for x in xis if x not in TABLE_BH_ALPHA_SQ]
        if bad:
            raise UsageError(f"--alpha is required for xi values without default rows: {bad}")
        grid = TABLE_BH_ALPHA_SQ
    else:
        xis = xis or list(TABLE_BH_ALPHA_SQ)
        grid = alphas
    rows = bh_efficiency_table(xis, grid)
    out_rows = []
    for r in rows:
        threshold = delta_z_threshold(r.fidelity)
        out_rows.append([
            fmt4(r.xi if r.xi is not None else 0.0), fmt4(r.alpha_sq), fmt4(r.fidelity),
            fmt4(threshold), fmt4(r.trace_dist_sq_bound), fmt4(r.hs_bound),
            fmt4(r.measured_hs_ideal), fmt4(r.measured_hs_pair),
            str(r.condition_holds).lower(), r.status,
        ])
    _write_csv(
        args.out,
        ["xi", "alpha_sq", "fidelity", "delta_z_upper", "trace_dist_sq_upper", "hs_upper",
         "measured_hs_ideal", "measured_hs_pair", "condition_holds", "status"],
        out_rows,
    )
    params = {"xi": xis, "alpha": alphas}
    RunManifest("table-bh", params, [str(args.out)]).write(args.out)
    return EXIT_OK if all(r.status == OK for r in rows) else EXIT_FLAGGED


def _parse_grid(text: str) -> list[float]:
    try:
        start, stop, count = text.split(":")
        start, stop, count = float(start), float(stop), int(count)
    except ValueError:
        raise UsageError(f"--grid expects START:STOP:COUNT, got {text!r}") from None
    if count < 1:
        raise UsageError("--grid needs at least one point")
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + i * step for i in range(count)]


def figure_rows(machine: CloningMachine, alphas: Sequence[float], dz_points: int):
    """Long-format (alpha^2, F, delta_z, R_lb...) rows below each threshold.

    delta_z runs over threshold * k / dz_points for k = 1 .. dz_points - 1 and
    ends at threshold * (1 - 1e-9), just inside the open interval.
    """
    rows = []
    for x in alphas:
        if machine.xi is None:
            F = fidelity_wz_closed(x)
        else:
            F = fidelity_bh_closed(x, machine.xi)
        dz1 = delta_z_threshold(F)
        if dz1 is None:
            continue
        grid = [dz1 * k / dz_points for k in range(1, dz_points)]
        grid.append(dz1 * (1.0 - EDGE_OFFSET))
        for dz in grid:
            rows.append((x, F, dz1, dz, r_lb(F, dz), r_lb_quadratic(F, dz), woodhead_rate(F, dz)))
    return rows


def cmd_figure_rlb(args) -> int:
    if args.machine == "wz":
        machine = CloningMachine.wootters_zurek()
        window = alpha_window_wz()
    else:
        if args.xi is None:
            raise UsageError("--xi is required for --machine bh")
        machine = CloningMachine.buzek_hillery(args.xi)
        window = alpha_window_bh(args.xi)
        if window is None:
            raise UsageError(f"xi={args.xi} admits no alpha^2 inside the fidelity window")
    alphas = _parse_grid(args.grid) if args.grid else _default_alpha_grid(window)
    if not alphas:
        raise UsageError("empty alpha^2 grid")
    if args.dz_points < 2:
        raise UsageError("--dz-points must be at least 2")
    inside = [x for x in alphas if window.lower < x < window.upper]
    rejected = [x for x in alphas if x not in inside]
    rows = figure_rows(machine, inside, args.dz_points)
    _write_csv(
        args.out,
        ["alpha_sq", "fidelity", "delta_z_threshold", "delta_z", "r_lb", "r_lb_quadratic", "R"],
        [[repr(v) for v in row] for row in rows],
    )
    params = {"machine": args.machine, "xi": args.xi, "grid": alphas,
              "dz_points": args.dz_points, "rejected_alpha": rejected}
    RunManifest("figure-rlb", params, [str(args.out)]).write(args.out)
    if rejected:
        print(f"alpha^2 outside ({window.lower:.4f}, {window.upper:.4f}) rejected: {rejected}",
              file=sys.stderr)
        return EXIT_FLAGGED
    return EXIT_OK


def _default_alpha_grid(window, count: int = 8) -> list[float]:
    step = (window.upper - window.lower) / (count + 1)
    return [window.lower + step * (i + 1) for i in range(count)]


def cmd_simulate(args) -> int:
    try:
        data = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read config {args.config}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {args.config} is not valid JSON: {exc}") from None
    seed = args.seed
    if seed is None and isinstance(data, dict) and data.get("seed") is None:
        seed = secrets.randbits(63)
    try:
        cfg = ProtocolConfig.from_dict(data, seed=seed)
    except ConfigError as exc:
        lines = [f"  {k}: {v}" for k, v in exc.problems.items()]
        raise UsageError("invalid config:\n" + "\n".join(lines)) from None
    outcome = run_protocol(cfg)
    doc = {"config": cfg.to_dict(), "outcome": outcome.to_dict()}
    _write_text(args.out, _dumps(doc))
    RunManifest("simulate", {"config": cfg.to_dict()}, [str(args.out)], seed=int(cfg.seed)).write(args.out)
    print(
        f"decision={outcome.decision.value} delta_z_hat={outcome.delta_z_hat:.6f} "
        f"threshold={outcome.key_rate_report.delta_z_threshold} "
        f"sifted={outcome.sifted_length} sample={outcome.sample_size}"
    )
    return EXIT_OK


def cmd_windows(args) -> int:
    f_lo, f_hi = fidelity_window()
    w_lo, w_hi = alpha_window_wz()
    xis = _floats(args.xi, "xi") or list(TABLE_BH_ALPHA_SQ)
    bh = []
    flagged = False
    for xi in xis:
        if not 0.0 < xi <= 0.5:
            raise UsageError(f"xi must lie in (0, 0.5], got {xi}")
        w = alpha_window_bh(xi)
        if w is None:
            flagged = True
            bh.append({"xi": xi, "window": None})
            continue
        f_at = [fidelity_bh_closed(v, xi) for v in w]
        bh.append({
            "xi": xi,
            "window": [w.lower, w.upper],
            "residuals": [
                None if w.lower == 0.0 else f_at[0] - f_lo,
                f_at[1] - f_hi,
            ],
        })
    doc = {
        "fidelity_window": {
            "window": [f_lo, f_hi],
            "residuals": [
                a_coefficient(f_lo) - A_THRESHOLD,
                quadratic_root(a_coefficient(f_hi)) - QUADRATIC_VALIDITY_LIMIT,
            ],
        },
        "alpha_window_wz": {
            "window": [w_lo, w_hi],
            "residuals": [fidelity_wz_closed(w_lo) - f_lo, fidelity_wz_closed(w_hi) - f_hi],
        },
        "alpha_window_bh": bh,
    }
    _write_text(args.out, _dumps(doc))
    RunManifest("windows", {"xi": xis}, [str(args.out)]).write(args.out)
    return EXIT_FLAGGED if flagged else EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qkdclone", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("table-wz", help="WZ efficiency table (CSV)")
    p.add_argument("--alpha", help="comma-separated alpha^2 values")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_table_wz)

    p = sub.add_parser("table-bh", help="modified-BH fidelity, delta_z and efficiency table (CSV)")
    p.add_argument("--xi", help="comma-separated xi values")
    p.add_argument("--alpha", help="comma-separated alpha^2 values used for every xi")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_table_bh)

    p = sub.add_parser("figure-rlb", help="R_lb curves below the delta_z threshold (CSV)")
    p.add_argument("--machine", choices=("wz", "bh"), default="wz")
    p.add_argument("--xi", type=float)
    p.add_argument("--grid", help="alpha^2 grid as START:STOP:COUNT")
    p.add_argument("--dz-points", type=int, default=50)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_figure_rlb)

    p = sub.add_parser("simulate", help="Monte Carlo protocol run (JSON)")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("windows", help="validity windows found by bisection (JSON)")
    p.add_argument("--xi", help="comma-separated xi values for the BH windows")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_windows)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"qkdclone {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
