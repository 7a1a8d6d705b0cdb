"""Command-line front end.

Subcommands: levels, run, sweep, tomography, check-dot.  Configuration is a
JSON document whose physical quantities carry unit-suffixed field names
(b_tesla, bandwidth_ueV, storage_time_ns, ...).  Output is deterministic
for a given (config, seed): fixed decimal formatting, '.' radix, LF line
endings.  Exit codes: 0 success, 2 usage/config error, 3 scenario error,
1 failed device-constraint check.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bands import (CASE_A, CASE_B, DEGENERATE, FieldConfig, INAS_GAAS_QW,
                    NORMAL, INPLANE, SpectralWindow, build_level_scheme,
                    material_from_dict, resolvability_check)
from .errors import PolspinError
from .noise import NoiseModel
from .pipeline import (ChainParams, DotConstraints, ScenarioConfig,
                       dot_constraint_check, scenario_report, sweep,
                       sweep_parameters, process_tomography)
from .qstate import is_cptp, process_fidelity

_FORMATS = ("text", "csv", "json-like")


def fmt6(x: float) -> str:
    """Fidelities and probabilities: fixed 6 decimals."""
    return f"{x:.6f}"


def fmt9(x: float) -> str:
    """Matrices and constants: 9 significant digits."""
    return f"{x:.9g}"


def _complex9(z: complex) -> str:
    return f"{z.real:.9g}{z.imag:+.9g}j"


# ---------------------------------------------------------------------------
# config loading
# ---------------------------------------------------------------------------

class ConfigError(ValueError):
    pass


def _parse_amplitude(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise ConfigError(f"amplitude must be a number or [re, im] pair, got {v!r}")


def config_from_dict(doc: dict) -> ScenarioConfig:
    """Build and validate a ScenarioConfig; all problems reported together."""
    problems: list[str] = []

    def grab(builder, what):
        try:
            return builder()
        except (KeyError, TypeError, ValueError) as exc:
            problems.append(f"{what}: {exc}")
            return None

    case = str(doc.get("case", CASE_A))
    material = INAS_GAAS_QW
    if "material" in doc:
        material = grab(lambda: material_from_dict(doc["material"]), "material")
    default_orientation = INPLANE if case == CASE_B else NORMAL
    fdoc = doc.get("field", {})
    fieldcfg = grab(lambda: FieldConfig(
        b_tesla=float(fdoc.get("b_tesla", 1.0)),
        orientation=str(fdoc.get("orientation", default_orientation))), "field")
    window = None
    if doc.get("window") is not None:
        wdoc = doc["window"]
        window = grab(lambda: SpectralWindow(
            bandwidth_uev=float(wdoc["bandwidth_ueV"]),
            center_offset_uev=float(wdoc.get("center_offset_ueV", 0.0)),
            lineshape=str(wdoc.get("lineshape", "gaussian"))), "window")
    ndoc = doc.get("noise", {})
    noise = grab(lambda: NoiseModel(
        t2_iii_v_ns=float(ndoc.get("t2_iii_v_ns", 100.0)),
        t2_si_ns=float(ndoc.get("t2_si_ns", 5.0e5)),
        transport_time_ns=float(ndoc.get("transport_time_ns", 0.0)),
        transport_dephasing_fraction=float(
            ndoc.get("transport_dephasing_fraction", 0.0)),
        transport_loss=float(ndoc.get("transport_loss", 0.0))), "noise")
    cdoc = doc.get("chain", {})
    chain = grab(lambda: ChainParams(
        n_sites=int(cdoc.get("n_sites", 4)),
        storage_site=int(cdoc.get("storage_site", 3)),
        gate_error=float(cdoc.get("gate_error", 0.0))), "chain")
    qdoc = doc.get("input_qubit", [[2 ** -0.5, 0.0], [2 ** -0.5, 0.0]])
    input_qubit = grab(lambda: (_parse_amplitude(qdoc[0]),
                                _parse_amplitude(qdoc[1])), "input_qubit")
    direction = doc.get("emission_direction")
    if direction is not None:
        direction = grab(lambda: tuple(float(x) for x in direction),
                         "emission_direction")

    if problems:
        raise ConfigError("; ".join(problems))

    cfg = ScenarioConfig(
        case=case,
        material=material,
        field=fieldcfg,
        window=window,
        noise=noise,
        chain=chain,
        compensate=bool(doc.get("compensate", True)),
        storage_time_ns=float(doc.get("storage_time_ns", 0.0)),
        hadamard_time_ns=float(doc.get("hadamard_time_ns", 0.0)),
        emission_direction=direction,
        absorption_efficiency=float(doc.get("absorption_efficiency", 1.0)),
        seed=int(doc.get("seed", 0)),
        mc_samples=int(doc.get("mc_samples", 1000)),
        input_qubit=input_qubit,
    )
    problems = cfg.validate()
    if problems:
        raise ConfigError("; ".join(problems))
    return cfg


def load_config(path: str | None, seed: int | None) -> ScenarioConfig:
    doc = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}")
    cfg = config_from_dict(doc)
    if seed is not None:
        from dataclasses import replace
        cfg = replace(cfg, seed=int(seed))
    return cfg


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _write(out_path: str | None, text: str):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _choi_lines(choi: np.ndarray) -> list[str]:
    lines = ["choi:"]
    for row in choi:
        lines.append("  " + "  ".join(_complex9(z) for z in row))
    return lines


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_levels(cfg: ScenarioConfig, fmt: str, out: str | None) -> int:
    scheme = cfg.scheme()
    rows = []
    for lv in scheme.valence_levels + scheme.conduction_levels:
        rows.append((lv.band, lv.label, lv.energy_uev))
    lines = [f"case: {scheme.case}", f"material: {cfg.material.name}",
             f"b_tesla: {fmt9(cfg.field.b_tesla)}",
             f"orientation: {cfg.field.orientation}", "levels:"]
    for band, label, e in rows:
        lines.append(f"  {band:11s} {label:12s} {fmt9(e):>15s} ueV")
    if cfg.field.b_tesla == 0:
        lines.append("warning: B = 0, Zeeman doublets are degenerate")
    if cfg.case != DEGENERATE:
        lines.append(f"valence_splitting_ueV: {fmt9(scheme.valence_splitting_uev)}")
        lines.append(f"conduction_splitting_ueV: {fmt9(scheme.conduction_splitting_uev)}")
        if cfg.window is not None and cfg.field.b_tesla > 0:
            rep = resolvability_check(cfg.window, cfg.material, cfg.field)
            lines += [
                f"valence_resolved: {str(rep.valence_resolved).lower()}",
                f"conduction_unresolved: {str(rep.conduction_unresolved).lower()}",
                f"window_within_strain: {str(rep.window_within_strain).lower()}",
                f"valence_margin_ueV: {fmt9(rep.valence_margin_uev)}",
                f"conduction_margin_ueV: {fmt9(rep.conduction_margin_uev)}",
            ]
    if fmt == "csv":
        csv_lines = ["band,label,energy_ueV"]
        csv_lines += [f"{band},{label},{fmt9(e)}" for band, label, e in rows]
        _write(out, "\n".join(csv_lines) + "\n")
    elif fmt == "json-like":
        _write(out, json.dumps({
            "case": scheme.case,
            "levels": [{"band": b, "label": l, "energy_ueV": e}
                       for b, l, e in rows]}, indent=2, sort_keys=True) + "\n")
    else:
        _write(out, "\n".join(lines) + "\n")
    return 0


def _report_text(rep) -> str:
    lines = [
        f"case: {rep.case}",
        f"seed: {rep.seed}",
        f"n_samples: {rep.n_samples}",
        f"round_trip_fidelity: {fmt6(rep.round_trip_fidelity)}",
        f"mean_fidelity: {fmt6(rep.mean_fidelity)} ± {fmt6(rep.stderr)}",
        f"success_probability: {fmt6(rep.success_probability)}",
        f"leakage: {fmt6(rep.leakage)}",
        f"hole_purity_mean: {fmt6(rep.hole_purity_mean)} ± {fmt6(rep.hole_purity_std)}",
        f"entanglement_entropy_bits: {fmt6(rep.entanglement_entropy_bits)}",
        f"collection_fraction: {fmt6(rep.collection_fraction)}",
        f"process_fidelity: {fmt6(rep.process_fidelity)}",
        f"cptp: {str(rep.cptp).lower()}",
        "stage_fidelities:",
    ]
    for st in rep.stages:
        lines.append(f"  {st.name:15s} fidelity={fmt6(st.fidelity)} "
                     f"success={fmt6(st.success)}")
    lines += _choi_lines(rep.choi)
    return "\n".join(lines) + "\n"


def _report_json(rep) -> str:
    doc = {
        "case": rep.case,
        "seed": rep.seed,
        "n_samples": rep.n_samples,
        "round_trip_fidelity": fmt6(rep.round_trip_fidelity),
        "mean_fidelity": fmt6(rep.mean_fidelity),
        "stderr": fmt6(rep.stderr),
        "success_probability": fmt6(rep.success_probability),
        "leakage": fmt6(rep.leakage),
        "hole_purity_mean": fmt6(rep.hole_purity_mean),
        "hole_purity_std": fmt6(rep.hole_purity_std),
        "entanglement_entropy_bits": fmt6(rep.entanglement_entropy_bits),
        "collection_fraction": fmt6(rep.collection_fraction),
        "process_fidelity": fmt6(rep.process_fidelity),
        "cptp": rep.cptp,
        "stages": [{"name": st.name, "fidelity": fmt6(st.fidelity),
                    "success": fmt6(st.success)} for st in rep.stages],
        "choi": [[_complex9(z) for z in row] for row in rep.choi],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def cmd_run(cfg: ScenarioConfig, fmt: str, out: str | None) -> int:
    rep = scenario_report(cfg)
    if fmt == "csv":
        lines = ["stage,fidelity,success"]
        lines += [f"{st.name},{fmt6(st.fidelity)},{fmt6(st.success)}"
                  for st in rep.stages]
        _write(out, "\n".join(lines) + "\n")
    elif fmt == "json-like":
        _write(out, _report_json(rep))
    else:
        _write(out, _report_text(rep))
    return 0


def cmd_sweep(cfg: ScenarioConfig, param: str, start: float, stop: float,
              steps: int, fmt: str, out: str | None) -> int:
    if steps < 0:
        raise ConfigError("steps must be non-negative")
    values = (np.linspace(start, stop, steps) if steps > 0
              else np.array([]))
    rows = sweep(cfg, param, values)
    header = "param,value,mean_fidelity,stderr,success_prob,leakage,hole_purity"
    lines = [header]
    for r in rows:
        lines.append(",".join([
            r["param"], fmt9(r["value"]), fmt6(r["mean_fidelity"]),
            fmt6(r["stderr"]), fmt6(r["success_prob"]), fmt6(r["leakage"]),
            fmt6(r["hole_purity"]),
        ]))
    _write(out, "\n".join(lines) + "\n")
    return 0


def cmd_tomography(cfg: ScenarioConfig, fmt: str, out: str | None,
                   choi_file: str | None) -> int:
    if choi_file is not None:
        # hand-edited matrix verdict mode
        try:
            with open(choi_file, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
            mat = np.array([[complex(c[0], c[1]) for c in row] for row in raw])
        except (OSError, json.JSONDecodeError, TypeError, IndexError) as exc:
            raise ConfigError(f"cannot parse choi file: {exc}")
        verdict = is_cptp(mat, tol=1e-8, conditional=True)
        pf = process_fidelity(mat) if np.trace(mat).real > 0 else 0.0
        lines = _choi_lines(mat)
        lines.append(f"cptp: {str(verdict).lower()}")
        lines.append(f"process_fidelity: {fmt9(pf)}")
        _write(out, "\n".join(lines) + "\n")
        return 0
    res = process_tomography(cfg)
    lines = _choi_lines(res.choi)
    lines.append(f"cptp: {str(res.cptp).lower()}")
    lines.append(f"process_fidelity: {fmt9(res.process_fidelity)}")
    if fmt == "json-like":
        _write(out, json.dumps({
            "choi": [[_complex9(z) for z in row] for row in res.choi],
            "cptp": res.cptp,
            "process_fidelity": fmt9(res.process_fidelity)},
            indent=2, sort_keys=True) + "\n")
    else:
        _write(out, "\n".join(lines) + "\n")
    return 0


def cmd_check_dot(capacitance: float, resistance: float, confinement: float,
                  temperature: float, out: str | None) -> int:
    rep = dot_constraint_check(DotConstraints(
        capacitance_farad=capacitance,
        tunnel_resistance_ohm=resistance,
        confinement_energy_uev=confinement,
        temperature_k=temperature))
    lines = [
        f"charging    {'PASS' if rep.charging_ok else 'FAIL'}  "
        f"e2_over_C_ueV={fmt9(rep.charging_energy_uev)} kT_ueV={fmt9(rep.thermal_energy_uev)}",
        f"confinement {'PASS' if rep.confinement_ok else 'FAIL'}  "
        f"confinement_ueV={fmt9(rep.confinement_energy_uev)} kT_ueV={fmt9(rep.thermal_energy_uev)}",
        f"resistance  {'PASS' if rep.resistance_ok else 'FAIL'}  "
        f"R_ohm={fmt9(rep.tunnel_resistance_ohm)} threshold_ohm={fmt9(rep.resistance_threshold_ohm)}",
        f"note: {rep.note}",
    ]
    _write(out, "\n".join(lines) + "\n")
    return 0 if rep.all_ok else 1


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    # global flags are accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="path to a JSON scenario config")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="override the config seed")
    common.add_argument("--out", default=argparse.SUPPRESS,
                        help="write output to a file instead of stdout")
    common.add_argument("--format", choices=_FORMATS, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(
        prog="polspin", parents=[common],
        description="Photon-polarization to electron-spin transfer simulator")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("levels", parents=[common],
                   help="print the level scheme and resolvability")
    sub.add_parser("run", parents=[common],
                   help="run the configured scenario end to end")

    sp = sub.add_parser("sweep", parents=[common],
                        help="sweep one numeric parameter")
    sp.add_argument("--param", required=True,
                    help=f"one of: {', '.join(sweep_parameters())}")
    sp.add_argument("--from", dest="start", type=float, required=True)
    sp.add_argument("--to", dest="stop", type=float, required=True)
    sp.add_argument("--steps", type=int, required=True)

    tp = sub.add_parser("tomography", parents=[common],
                        help="Choi matrix and CPTP verdict")
    tp.add_argument("--choi", dest="choi_file",
                    help="verdict mode: JSON 4x4 matrix of [re, im] pairs")

    dp = sub.add_parser("check-dot", parents=[common],
                        help="emitter quantum-dot constraints")
    dp.add_argument("--capacitance", type=float, required=True, metavar="FARAD")
    dp.add_argument("--resistance", type=float, required=True, metavar="OHM")
    dp.add_argument("--confinement", type=float, required=True, metavar="UEV")
    dp.add_argument("--temperature", type=float, required=True, metavar="KELVIN")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0

    config = getattr(args, "config", None)
    seed = getattr(args, "seed", None)
    out = getattr(args, "out", None)
    fmt = getattr(args, "format", "text")

    try:
        if args.command == "check-dot":
            return cmd_check_dot(args.capacitance, args.resistance,
                                 args.confinement, args.temperature, out)
        cfg = load_config(config, seed)
        if args.command == "levels":
            return cmd_levels(cfg, fmt, out)
        if args.command == "run":
            return cmd_run(cfg, fmt, out)
        if args.command == "sweep":
            return cmd_sweep(cfg, args.param, args.start, args.stop,
                             args.steps, fmt, out)
        if args.command == "tomography":
            return cmd_tomography(cfg, fmt, out, args.choi_file)
        return 2
    except (ConfigError, KeyError) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    except (PolspinError, ValueError) as exc:
        sys.stderr.write(f"scenario error: {type(exc).__name__}: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
