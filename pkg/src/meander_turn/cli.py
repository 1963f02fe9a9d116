"""Command-line front end.

Exit codes: 0 success, 1 input or validation error, 2 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .config import load_config
from .equalization import design_equalized, equalization_report, physical_root
from .errors import ConfigError, MeanderError
from .excitation import Waveform, sample_train, waveforms_to_csv
from .modal_params import characteristic_impedance_matrix, coupling_coefficient
from .oracle import oracle_deviation
from .turn import incident_train, turn_responses

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2
NODES = ("v1", "v2", "v3")


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1); exit 2 is reserved for verify
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def cmd_extract(args) -> int:
    rc = load_config(args.config)
    m = rc.modal
    z = characteristic_impedance_matrix(m)
    out = {
        "Ze_ohm": m.z_even,
        "Zo_ohm": m.z_odd,
        "tau_e_ns_per_m": m.tau_even * 1e9,
        "tau_o_ns_per_m": m.tau_odd * 1e9,
        "k": coupling_coefficient(m),
        "Z_ohm": [z.m11, z.m12],
    }
    print(_dump(out))
    return EXIT_OK


def _parse_nodes(text: str) -> list[str]:
    nodes = [n.strip().lower() for n in text.split(",") if n.strip()]
    bad = [n for n in nodes if n not in NODES]
    if bad or not nodes:
        raise ConfigError("--nodes", f"expected a comma list of {','.join(NODES)}, got {text!r}")
    return list(dict.fromkeys(nodes))


def cmd_respond(args) -> int:
    rc = load_config(args.config)
    nodes = _parse_nodes(args.nodes)
    r = turn_responses(rc.turn)
    trains = {"v1": r.v1 + incident_train() if args.physical else r.v1, "v2": r.v2, "v3": r.v3}
    cols = {
        n.upper(): sample_train(trains[n], rc.turn.excitation, 0.0, rc.dt, rc.n_samples) for n in nodes
    }
    text = waveforms_to_csv(cols)
    try:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    except OSError as e:
        raise InputError(f"cannot write {args.out}: {e.strerror}") from e
    return EXIT_OK


def cmd_equalize(args) -> int:
    rc = load_config(args.config)
    t = rc.turn
    rep = equalization_report(t.modal, t.y0, t.length, t.excitation.total_duration())
    out = rep.to_json_dict()
    out["k_physical_root"] = physical_root()
    if args.design is not None:
        if not args.design > 0:
            raise ConfigError("--design", "Z_even must be positive")
        z_odd, y0, amp = design_equalized(args.design)
        out["design"] = {"z_even_ohm": args.design, "z_odd_ohm": z_odd, "y0_S": y0, "amplitude": amp}
    print(_dump(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    rc = load_config(args.config)
    dev = oracle_deviation(rc.turn, rc.oracle)
    ok = all(v <= args.tolerance for v in dev.values())
    print(_dump({"tolerance": args.tolerance, "k_ref": rc.turn.k_ref, "max_deviation": dev, "pass": ok}))
    return EXIT_OK if ok else EXIT_VERIFY


def read_waveform_csv(path) -> dict[str, Waveform]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e
    if not rows or rows[0][:1] != ["time_s"]:
        raise InputError("CSV must start with a time_s header")
    names = rows[0][1:]
    if not names or not all(n.endswith("_V") and len(n) > 2 for n in names):
        raise InputError("CSV needs at least one <name>_V voltage column")
    try:
        data = np.array([[float(x) for x in r] for r in rows[1:]], dtype=float)
    except ValueError as e:
        raise InputError(f"non-numeric CSV cell: {e}") from e
    if data.ndim != 2 or data.shape[0] < 2 or data.shape[1] != len(names) + 1:
        raise InputError("CSV rows are ragged or fewer than 2")
    t = data[:, 0]
    dt = np.diff(t)
    if not np.all(dt > 0) or not np.allclose(dt, dt[0], rtol=1e-6):
        raise InputError("time_s column must be uniformly increasing")
    try:
        return {n[:-2]: Waveform(float(t[0]), float(dt[0]), data[:, i + 1]) for i, n in enumerate(names)}
    except ValueError as e:
        raise InputError(str(e)) from e


PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def render_svg(columns: dict[str, Waveform], width: int = 800, height: int = 450) -> str:
    """Line chart: one polyline per column, time axis in ns, voltage in V."""
    left, right, top, bottom = 70, 130, 20, 50
    pw, ph = width - left - right, height - top - bottom
    first = next(iter(columns.values()))
    t_ns = first.times * 1e9
    t_lo, t_hi = float(t_ns[0]), float(t_ns[-1])
    v_all = np.concatenate([w.samples for w in columns.values()])
    v_lo, v_hi = float(v_all.min()), float(v_all.max())
    if v_hi - v_lo < 1e-12:
        v_lo, v_hi = v_lo - 0.5, v_hi + 0.5
    pad = 0.05 * (v_hi - v_lo)
    v_lo, v_hi = v_lo - pad, v_hi + pad

    def sx(t):
        return left + (t - t_lo) / (t_hi - t_lo) * pw

    def sy(v):
        return top + (v_hi - v) / (v_hi - v_lo) * ph

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for frac in np.linspace(0, 1, 6):
        t = t_lo + frac * (t_hi - t_lo)
        v = v_lo + frac * (v_hi - v_lo)
        parts.append(f'<text x="{sx(t):.1f}" y="{top + ph + 16}" text-anchor="middle">{t:.3g}</text>')
        parts.append(f'<text x="{left - 6}" y="{sy(v) + 4:.1f}" text-anchor="end">{v:.3g}</text>')
    if v_lo < 0 < v_hi:
        parts.append(
            f'<line x1="{left}" y1="{sy(0):.1f}" x2="{left + pw}" y2="{sy(0):.1f}" stroke="#bbb" stroke-dasharray="4 3"/>'
        )
    parts.append(f'<text x="{left + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">time (ns)</text>')
    parts.append(
        f'<text x="16" y="{top + ph / 2:.1f}" text-anchor="middle" transform="rotate(-90 16 {top + ph / 2:.1f})">voltage (V)</text>'
    )
    for i, (name, w) in enumerate(columns.items()):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{sx(t):.2f},{sy(v):.2f}" for t, v in zip(t_ns, w.samples))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{pts}"><title>{escape(name)}</title></polyline>')
        ly = top + 14 + 18 * i
        parts.append(f'<line x1="{left + pw + 12}" y1="{ly}" x2="{left + pw + 36}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{left + pw + 42}" y="{ly + 4}">{escape(name)} (V)</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_plot(args) -> int:
    cols = read_waveform_csv(args.csv)
    try:
        Path(args.out).write_text(render_svg(cols), encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot write {args.out}: {e.strerror}") from e
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="meander-turn", description="Pulse response of a meander-line turn.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("extract", help="even/odd mode parameters from L and C")
    s.add_argument("--config", required=True)
    s.set_defaults(func=cmd_extract)

    s = sub.add_parser("respond", help="write node waveforms as CSV")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--nodes", default="v1,v2,v3")
    s.add_argument("--physical", action="store_true", help="include the incident V_in in node 1")
    s.set_defaults(func=cmd_respond)

    s = sub.add_parser("equalize", help="pulse amplitudes and the equalization condition")
    s.add_argument("--config", required=True)
    s.add_argument("--design", type=float, metavar="Z_EVEN_OHM")
    s.set_defaults(func=cmd_equalize)

    s = sub.add_parser("verify", help="compare closed-form and frequency-domain responses")
    s.add_argument("--config", required=True)
    s.add_argument("--tolerance", type=float, default=0.01)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("plot", help="render a respond CSV as SVG")
    s.add_argument("--csv", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MeanderError, InputError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
