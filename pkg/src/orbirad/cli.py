"""Command-line interface: ``orbirad <command> [flags]``.

Commands print JSON on standard output unless noted. Bad flags exit with
status 2; errors raised by the mathematics exit with status 1 and the error
class name on standard error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .certify import CONSTANTS, OrbifoldSignature, certify, certify_triangles
from .corners import Boundary, CornerWeights, parse_corner
from .errors import OrbiradError
from .hypgeom import TriangleAngles, exp_map, from_klein, place_double_triangle, reflect, tangent_frame, to_klein, to_poincare
from .oracle import crosscheck, grid_max
from .solver import solve_full
from .yamada import cusp_case_report

_SCAN_CHUNK = 2048


@dataclass(frozen=True)
class RunConfig:
    tol: float = 1e-3
    grid: int = 400

    def __post_init__(self):
        if not (0.0 < self.tol <= 1e-3):
            raise ValueError(f"tolerance must lie in (0, 1e-3], got {self.tol!r}")
        if self.grid < 16:
            raise ValueError(f"grid resolution must be >= 16, got {self.grid!r}")


def _corner_list(text: str):
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three corners, got {text!r}")
    try:
        return tuple(parse_corner(p) for p in parts)
    except OrbiradError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _order(text: str):
    s = text.strip().lower()
    if s in ("inf", "cusp", "oo", "infinity"):
        return math.inf
    try:
        k = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad cone order {text!r}") from None
    if k < 2:
        raise argparse.ArgumentTypeError(f"cone orders must be >= 2, got {k}")
    return k


def _order_list(text: str):
    return tuple(_order(p) for p in text.split(",") if p.strip())


def _positive_int(lo: int):
    def parse(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if v < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo}, got {v}")
        return v
    return parse


def _tolerance(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (0.0 < v <= 1e-3):
        raise argparse.ArgumentTypeError(f"tolerance must lie in (0, 1e-3], got {v}")
    return v


def _angles(corners) -> TriangleAngles:
    if any(isinstance(c, Boundary) for c in corners):
        raise OrbiradError("the oracle and plot need cone points or cusps, not boundaries")
    return TriangleAngles(*(c.angle for c in corners))


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def cmd_constants(args, out) -> None:
    c = CONSTANTS
    values = {"rho_T": c.rho_T, "t0": c.t0, "rho_Y": c.rho_Y, "rho_P": c.rho_P, "rho_S": c.rho_S}
    if args.digits is not None:
        values = {k: float(f"{v:.{args.digits}g}") for k, v in values.items()}
    _emit(values, out)


def cmd_solve(args, out) -> None:
    sol = solve_full(CornerWeights.from_corners(args.corners))
    d = {"corners": [c.label() for c in args.corners]}
    d.update(sol.to_dict())
    _emit(d, out)


def cmd_certify(args, out) -> None:
    _emit(certify(OrbifoldSignature(args.genus, args.orders)).to_dict(), out)


def scan_triples(max_order: int):
    """Hyperbolic sorted triples with entries in ``{2, ..., max_order, inf}``, sorted with ``inf`` last."""
    orders = list(range(2, max_order + 1)) + [math.inf]
    inv = {p: Fraction(0) if p == math.inf else Fraction(1, p) for p in orders}
    return [t for t in itertools.combinations_with_replacement(orders, 3)
            if inv[t[0]] + inv[t[1]] + inv[t[2]] < 1]


def _threads() -> int:
    env = os.environ.get("ORBIRAD_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def scan_csv(max_order: int) -> str:
    triples = scan_triples(max_order)
    chunks = [triples[i:i + _SCAN_CHUNK] for i in range(0, len(triples), _SCAN_CHUNK)]
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(certify_triangles, chunks))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "q", "r", "radius", "branch", "verdict"])
    for chunk, (radii, verdicts, _) in zip(chunks, results):
        for t, r, v in zip(chunk, radii, verdicts):
            writer.writerow([*("inf" if p == math.inf else p for p in t), repr(float(r)), "Triangular", v.value])
    return buf.getvalue()


def cmd_scan(args, out) -> None:
    text = scan_csv(args.grid)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)


def cmd_oracle(args, out) -> None:
    cfg = RunConfig(tol=args.tol, grid=args.grid)
    _emit(crosscheck(_angles(args.corners), cfg.grid, cfg.tol).to_dict(), out)


def cmd_yamada(args, out) -> None:
    _emit(cusp_case_report(), out)


def _segment(p, q, n=64):
    t = np.linspace(0.0, 1.0, n)[:, None]
    K = (1.0 - t) * to_klein(p) + t * to_klein(q)
    # ideal endpoints sit on the unit circle; pull them just inside
    norm = np.linalg.norm(K, axis=1, keepdims=True)
    K = np.where(norm > 1.0 - 1e-12, K * (1.0 - 1e-12) / np.maximum(norm, 1e-300), K)
    return to_poincare(from_klein(K))


def _poly(points, **attrs) -> str:
    pts = " ".join(f"{300 + 280 * x:.3f},{300 - 280 * y:.3f}" for x, y in points)
    extra = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return f'<polyline points="{pts}" fill="none" {extra}/>'


def plot_svg(corners) -> str:
    """SVG (Poincare disk) of one triangle, its mirror image, the maximal disk and the three loops."""
    t = _angles(corners)
    m = place_double_triangle(t)
    r, p = grid_max(m, 120)
    V = m.vertices
    parts = ['<?xml version="1.0" encoding="UTF-8"?>',
             '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="600" height="600" viewBox="0 0 600 600">',
             '<circle cx="300" cy="300" r="280" fill="none" stroke="#888"/>']
    mirror = reflect(V, m.normals[0])
    for i, j in ((0, 1), (1, 2), (2, 0)):
        parts.append(_poly(_segment(mirror[i], mirror[j]), stroke="#9ab", stroke_dasharray="4 3"))
    for i, j in ((0, 1), (1, 2), (2, 0)):
        parts.append(_poly(_segment(V[i], V[j]), stroke="#000", stroke_width="1.5"))
    e1, e2 = tangent_frame(p)
    phis = np.linspace(0.0, 2.0 * math.pi, 181)
    circle = [to_poincare(exp_map(p, r * (math.cos(a) * e1 + math.sin(a) * e2))) for a in phis]
    parts.append(_poly(circle, stroke="#c33", stroke_width="1.5"))
    for i, colour in zip(range(3), ("#27a", "#2a5", "#a62")):
        parts.append(_poly(_segment(p, m.holonomy(i) @ p), stroke=colour, stroke_dasharray="2 2"))
    x, y = to_poincare(p)
    parts.append(f'<circle cx="{300 + 280 * x:.3f}" cy="{300 - 280 * y:.3f}" r="3" fill="#c33"/>')
    label = ", ".join(c.label() for c in corners)
    parts.append(f'<text x="10" y="590" font-family="sans-serif" font-size="14">({label}) r = {r:.6f}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_plot(args, out) -> None:
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(plot_svg(args.corners))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbirad", description="Maximum injectivity radius of hyperbolic orbifolds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="print rho_T, t0, rho_Y, rho_P, rho_S")
    p.add_argument("--digits", type=_positive_int(1), default=None)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("solve", help="maximal disk of a triangular surface or pair of pants")
    p.add_argument("--corners", type=_corner_list, required=True,
                   help="three of: order, cusp, angle:<radians>, boundary:<length>")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("certify", help="certificate that r(S) >= rho_T")
    p.add_argument("--genus", type=_positive_int(0), required=True)
    p.add_argument("--orders", type=_order_list, default=(), help="comma separated cone orders, inf for cusps")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("scan", help="CSV of all orbifold triples with orders up to N and cusps")
    p.add_argument("--grid", type=_positive_int(2), required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oracle", help="brute-force cross-check of the solver")
    p.add_argument("--corners", type=_corner_list, required=True)
    p.add_argument("--grid", type=_positive_int(16), default=400)
    p.add_argument("--tol", type=_tolerance, default=1e-3)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("yamada", help="checks for the thrice-punctured sphere bound")
    p.set_defaults(func=cmd_yamada)

    p = sub.add_parser("plot", help="SVG picture of the maximal disk")
    p.add_argument("--corners", type=_corner_list, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except OrbiradError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
