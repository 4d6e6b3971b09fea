"""Config-driven command line front end.

One YAML config describes one computation. Parsing is strict: unknown
keys are rejected (with a nearest-key suggestion), physical parameters
have no silent defaults, and only numerical knobs (quadrature nodes,
scheme choices, tolerances) fall back to documented values.

Every run writes a plot-ready CSV and a JSON document with the echoed
config, payload, and diagnostics. Outputs are byte-deterministic for a
fixed config and seed: wall time goes to stderr, never into the files,
and --threads only dispatches oracle sample blocks whose seeded means
reduce in index order.

Exit codes: 0 success, 2 config error, 3 numerical error, 4 domain
error.
"""

import argparse
import difflib
import json
import os
import sys
import time
import warnings

import numpy as np
import yaml

from . import __version__
from .born import elastic_record
from .capture import (
    brute_force_oracle,
    capture_amplitude,
    CaptureQuadrature,
    ct_differential_cross_section,
    ct_total_cross_section,
    make_capture_spec,
)
from .errors import ConfigError, DomainError, NumericalError
from .influence import FixedPath, influence_K1, influence_K2
from .potentials import (
    Gaussian,
    PairPotentials,
    ScreenedCoulomb,
    SoftCoulomb,
    SquareWell,
    Yukawa,
)
from .propagator import (
    AbsorbingLayer,
    boundary_leak_fraction,
    ComplexField1D,
    evolve,
    free_deviation_diagnostic,
    gaussian_packet,
    HardWall,
    LatticeSpec,
    packet_width,
    TimeGrid,
    time_sliced_propagator,
)

COMMANDS = (
    "propagator",
    "evolve",
    "born-elastic",
    "influence",
    "charge-transfer",
    "oracle",
)

_REQUIRED = object()


def _unknown_key(key, allowed, context):
    close = difflib.get_close_matches(str(key), list(allowed), n=1)
    hint = f"; did you mean {close[0]!r}?" if close else ""
    return ConfigError(f"unknown key {key!r} in {context}{hint}")


def _check_keys(mapping, allowed, context):
    if not isinstance(mapping, dict):
        raise ConfigError(f"{context} must be a mapping")
    for key in mapping:
        if key not in allowed:
            raise _unknown_key(key, allowed, context)


def _get(mapping, key, kind, context, default=_REQUIRED):
    if key not in mapping:
        if default is _REQUIRED:
            raise ConfigError(f"missing required key {key!r} in {context}")
        return default
    value = mapping[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{context}.{key} must be a number, got {value!r}")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{context}.{key} must be an integer, got {value!r}")
        return value
    if kind is str:
        if not isinstance(value, str):
            raise ConfigError(f"{context}.{key} must be a string, got {value!r}")
        return value
    if kind is dict:
        if not isinstance(value, dict):
            raise ConfigError(f"{context}.{key} must be a mapping")
        return value
    if kind is list:
        if not isinstance(value, list):
            raise ConfigError(f"{context}.{key} must be a list")
        return value
    raise ConfigError(f"internal schema error for {context}.{key}")


_POTENTIAL_FAMILIES = {
    "none": (None, ()),
    "yukawa": (Yukawa, ("V0", "alpha")),
    "gaussian": (Gaussian, ("V0", "width")),
    "soft-coulomb": (SoftCoulomb, ("Z", "soft")),
    "screened-coulomb": (ScreenedCoulomb, ("Z", "screen")),
    "square-well": (SquareWell, ("V0", "radius")),
}


def build_potential(spec, context):
    family = _get(spec, "family", str, context)
    if family not in _POTENTIAL_FAMILIES:
        raise _unknown_key(family, _POTENTIAL_FAMILIES, context + ".family")
    cls, fields = _POTENTIAL_FAMILIES[family]
    _check_keys(spec, ("family",) + fields, context)
    if cls is None:
        return None
    kwargs = {name: _get(spec, name, float, context) for name in fields}
    try:
        return cls(**kwargs)
    except DomainError as exc:
        raise ConfigError(f"{context}: {exc}") from exc


def build_lattice(spec, context):
    _check_keys(spec, ("x_min", "x_max", "points", "boundary"), context)
    boundary = HardWall()
    if "boundary" in spec:
        bspec = _get(spec, "boundary", dict, context)
        _check_keys(bspec, ("type", "width", "strength"), context + ".boundary")
        btype = _get(bspec, "type", str, context + ".boundary")
        if btype == "hard":
            pass
        elif btype == "absorbing":
            boundary = AbsorbingLayer(
                width=_get(bspec, "width", float, context + ".boundary"),
                strength=_get(bspec, "strength", float, context + ".boundary"),
            )
        else:
            raise _unknown_key(btype, ("hard", "absorbing"), context + ".boundary.type")
    try:
        return LatticeSpec(
            x_min=_get(spec, "x_min", float, context),
            x_max=_get(spec, "x_max", float, context),
            points=_get(spec, "points", int, context),
            boundary=boundary,
        )
    except DomainError as exc:
        raise ConfigError(f"{context}: {exc}") from exc


def build_time_grid(spec, context):
    _check_keys(spec, ("t_a", "t_b", "slices"), context)
    try:
        return TimeGrid(
            t_a=_get(spec, "t_a", float, context),
            t_b=_get(spec, "t_b", float, context),
            N=_get(spec, "slices", int, context),
        )
    except DomainError as exc:
        raise ConfigError(f"{context}: {exc}") from exc


def build_scheme(cfg, context):
    spec = cfg.get("scheme", {})
    _check_keys(spec, ("kinetic", "sampling"), context + ".scheme")
    return (
        _get(spec, "kinetic", str, context + ".scheme", default="pade2"),
        _get(spec, "sampling", str, context + ".scheme", default="endpoint"),
    )


def parse_config(text):
    """YAML text to a validated (command, parameters) pair."""
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise ConfigError(f"config is not valid YAML{where}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a mapping at the top level")
    command = _get(raw, "command", str, "config")
    if command not in COMMANDS:
        raise _unknown_key(command, COMMANDS, "config.command")
    params = {k: v for k, v in raw.items() if k != "command"}
    return command, params


def apply_overrides(params, overrides):
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"--set expects path.to.key=value, got {item!r}")
        path, _, raw_value = item.partition("=")
        try:
            value = yaml.safe_load(raw_value)
        except yaml.YAMLError as exc:
            raise ConfigError(f"--set value {raw_value!r} is not YAML") from exc
        keys = path.split(".")
        target = params
        for key in keys[:-1]:
            if key not in target or not isinstance(target[key], dict):
                target[key] = {}
            target = target[key]
        target[keys[-1]] = value
    return params


def _fmt(x):
    return f"{float(x):.17g}"


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(c) for c in row))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_json(path, document):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(document, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _field_rows(field):
    x = field.lattice.nodes
    return [
        (i, x[i], field.values[i].real, field.values[i].imag)
        for i in range(field.lattice.points)
    ]


def _run_propagator(params, threads):
    _check_keys(
        params,
        ("lattice", "time", "mass", "potential", "scheme", "source"),
        "config",
    )
    lattice = build_lattice(_get(params, "lattice", dict, "config"), "lattice")
    grid = build_time_grid(_get(params, "time", dict, "config"), "time")
    mass = _get(params, "mass", float, "config")
    pot = build_potential(_get(params, "potential", dict, "config"), "potential")
    kinetic, sampling = build_scheme(params, "config")
    source = _get(params, "source", float, "config")
    K = time_sliced_propagator(
        pot, lattice, grid, mass, kinetic=kinetic, sampling=sampling
    )
    nodes = lattice.nodes
    j = int(np.argmin(np.abs(nodes - source)))
    column = ComplexField1D(lattice, K.entries[:, j])
    payload = {
        "kind": "propagator_column",
        "source_node": float(nodes[j]),
        "symmetry_defect": K.symmetry_defect(),
    }
    if pot is None:
        payload["free_kernel_max_rel_deviation"] = free_deviation_diagnostic(K, mass)
    return payload, ("index", "x", "Re", "Im"), _field_rows(column)


def _run_evolve(params, threads):
    _check_keys(
        params,
        ("lattice", "time", "mass", "potential", "scheme", "packet"),
        "config",
    )
    lattice = build_lattice(_get(params, "lattice", dict, "config"), "lattice")
    grid = build_time_grid(_get(params, "time", dict, "config"), "time")
    mass = _get(params, "mass", float, "config")
    pot = build_potential(_get(params, "potential", dict, "config"), "potential")
    kinetic, sampling = build_scheme(params, "config")
    pk = _get(params, "packet", dict, "config")
    _check_keys(pk, ("x0", "p0", "sigma0"), "packet")
    psi0 = gaussian_packet(
        lattice,
        _get(pk, "x0", float, "packet"),
        _get(pk, "p0", float, "packet"),
        _get(pk, "sigma0", float, "packet"),
    )
    K = time_sliced_propagator(
        pot, lattice, grid, mass, kinetic=kinetic, sampling=sampling
    )
    psi = evolve(psi0, K)
    payload = {
        "kind": "evolved_field",
        "norm_initial": psi0.norm(),
        "norm_final": psi.norm(),
        "width_final": packet_width(psi),
        "boundary_leak_fraction": boundary_leak_fraction(psi),
    }
    return payload, ("index", "x", "Re", "Im"), _field_rows(psi)


def _theta_list(spec, context):
    _check_keys(spec, ("min", "max", "n", "spacing"), context)
    lo = _get(spec, "min", float, context)
    hi = _get(spec, "max", float, context)
    n = _get(spec, "n", int, context)
    spacing = _get(spec, "spacing", str, context, default="linear")
    if n < 2 or hi <= lo:
        raise ConfigError(f"{context}: need n >= 2 and max > min")
    if spacing == "linear":
        return np.linspace(lo, hi, n)
    if spacing == "log":
        if lo <= 0:
            raise ConfigError(f"{context}: log spacing needs min > 0")
        return np.geomspace(lo, hi, n)
    raise _unknown_key(spacing, ("linear", "log"), context + ".spacing")


def _run_born(params, threads):
    _check_keys(
        params, ("potential", "mass", "p", "angles", "n_theta", "route"), "config"
    )
    pot = build_potential(_get(params, "potential", dict, "config"), "potential")
    if pot is None:
        raise ConfigError("born-elastic needs a non-trivial potential")
    mass = _get(params, "mass", float, "config")
    p = _get(params, "p", float, "config")
    thetas = _theta_list(_get(params, "angles", dict, "config"), "angles")
    n_theta = _get(params, "n_theta", int, "config", default=64)
    route = _get(params, "route", str, "config", default="auto")
    record = elastic_record(pot, p, mass, thetas, n_theta=n_theta, route=route)
    payload = {
        "kind": "ElasticBorn",
        "sigma_total": record.sigma_total,
        "quadrature_error": record.params["quadrature_error"],
        "n_theta": record.params["n_theta"],
    }
    rows = [(a.theta, d) for a, d in zip(record.angles, record.dsigma)]
    return payload, ("theta_rad", "dsigma_dOmega_au"), rows


def _build_pair_potentials(spec, context):
    _check_keys(spec, ("V_A", "V_B", "V_AB"), context)
    def member(name):
        sub = _get(spec, name, dict, context, default={"family": "none"})
        return build_potential(sub, f"{context}.{name}")
    return PairPotentials(member("V_A"), member("V_B"), member("V_AB"))


def _build_fixed_path(spec, grid, context):
    _check_keys(spec, ("kind", "value", "start", "end", "values"), context)
    kind = _get(spec, "kind", str, context)
    if kind == "static":
        value = _get(spec, "value", float, context)
        samples = np.full(grid.N + 1, value)
    elif kind == "linear":
        samples = np.linspace(
            _get(spec, "start", float, context),
            _get(spec, "end", float, context),
            grid.N + 1,
        )
    elif kind == "samples":
        samples = np.asarray(_get(spec, "values", list, context), dtype=float)
    else:
        raise _unknown_key(kind, ("static", "linear", "samples"), context + ".kind")
    try:
        return FixedPath(grid, samples)
    except DomainError as exc:
        raise ConfigError(f"{context}: {exc}") from exc


def _run_influence(params, threads):
    _check_keys(
        params,
        ("kind", "lattice", "time", "mass", "potentials", "path", "endpoints",
         "scheme"),
        "config",
    )
    kind = _get(params, "kind", str, "config")
    if kind not in ("K1", "K2"):
        raise _unknown_key(kind, ("K1", "K2"), "config.kind")
    lattice = build_lattice(_get(params, "lattice", dict, "config"), "lattice")
    grid = build_time_grid(_get(params, "time", dict, "config"), "time")
    mass = _get(params, "mass", float, "config")
    pots = _build_pair_potentials(_get(params, "potentials", dict, "config"),
                                  "potentials")
    path = _build_fixed_path(_get(params, "path", dict, "config"), grid, "path")
    ep = _get(params, "endpoints", dict, "config")
    _check_keys(ep, ("a", "b"), "endpoints")
    a = _get(ep, "a", float, "endpoints")
    b = _get(ep, "b", float, "endpoints")
    kinetic, sampling = build_scheme(params, "config")
    fn = influence_K1 if kind == "K1" else influence_K2
    result = fn(
        pots, path, a, b, lattice, grid, mass, kinetic=kinetic, sampling=sampling
    )
    payload = {
        "kind": f"influence_{kind}",
        "endpoints": list(result.endpoints),
        "amplitude": {"re": result.amplitude.real, "im": result.amplitude.imag},
        "effective_phase": {
            "re": result.effective_phase.real,
            "im": result.effective_phase.imag,
        },
        "free_reference": {
            "re": result.free_reference.real,
            "im": result.free_reference.imag,
        },
    }
    rows = [
        (
            result.amplitude.real,
            result.amplitude.imag,
            result.effective_phase.real,
            result.effective_phase.imag,
        )
    ]
    return payload, ("amplitude_re", "amplitude_im", "phase_re", "phase_im"), rows


def _build_capture_spec(params):
    system = _get(params, "system", dict, "config")
    _check_keys(system, ("A", "B", "Z_a", "Z_b"), "system")
    interaction = _get(params, "interaction", str, "config")
    try:
        return make_capture_spec(
            A=_get(system, "A", float, "system"),
            B=_get(system, "B", float, "system"),
            Z_a=_get(system, "Z_a", float, "system"),
            Z_b=_get(system, "Z_b", float, "system"),
            v=_get(params, "v", float, "config"),
            interaction=interaction,
        )
    except DomainError as exc:
        raise ConfigError(f"config: {exc}") from exc


def _build_quadrature(params):
    spec = params.get("quad", {})
    _check_keys(spec, ("nk", "nmu", "nphi", "k_scale"), "quad")
    return CaptureQuadrature(
        nk=_get(spec, "nk", int, "quad", default=96),
        nmu=_get(spec, "nmu", int, "quad", default=64),
        nphi=_get(spec, "nphi", int, "quad", default=48),
        k_scale=_get(spec, "k_scale", float, "quad", default=4.0),
    )


def _run_charge_transfer(params, threads):
    _check_keys(
        params,
        ("system", "v", "interaction", "mode", "lam", "angles", "quad",
         "flux_ratio_power", "total"),
        "config",
    )
    spec = _build_capture_spec(params)
    mode = _get(params, "mode", str, "config")
    lam = _get(params, "lam", float, "config")
    quad = _build_quadrature(params)
    power = _get(params, "flux_ratio_power", int, "config", default=2)
    thetas = _theta_list(_get(params, "angles", dict, "config"), "angles")
    tot = params.get("total", {})
    _check_keys(tot, ("theta_min", "theta_split", "segments", "seg_nodes",
                      "tail_nodes"), "total")
    total = ct_total_cross_section(
        spec,
        lam=lam,
        mode=mode,
        quad=quad,
        flux_ratio_power=power,
        theta_min=_get(tot, "theta_min", float, "total", default=1e-7),
        theta_split=_get(tot, "theta_split", float, "total", default=0.1),
        n_segments=_get(tot, "segments", int, "total", default=12),
        seg_nodes=_get(tot, "seg_nodes", int, "total", default=24),
        tail_nodes=_get(tot, "tail_nodes", int, "total", default=64),
    )
    rows = [
        (
            t,
            ct_differential_cross_section(
                spec, t, lam=lam, mode=mode, quad=quad, flux_ratio_power=power
            ),
        )
        for t in thetas
    ]
    payload = {
        "kind": "ChargeTransferBorn",
        "mode": mode,
        "lam": lam,
        "interaction": spec.interaction,
        "sigma_total": total.value,
        "quadrature_error": total.error,
        "p_a": spec.energetics.p_a,
        "p_b": spec.energetics.p_b,
        "mu_a": spec.kin.mu_a,
        "mu_b": spec.kin.mu_b,
    }
    return payload, ("theta_rad", "dsigma_dOmega_au"), rows


def _run_oracle(params, threads):
    _check_keys(
        params,
        ("system", "v", "interaction", "mode", "lam", "theta", "samples", "seed",
         "quad"),
        "config",
    )
    spec = _build_capture_spec(params)
    mode = _get(params, "mode", str, "config")
    lam = _get(params, "lam", float, "config")
    theta = _get(params, "theta", float, "config")
    samples = _get(params, "samples", int, "config")
    seed = _get(params, "seed", int, "config")
    quad = _build_quadrature(params)
    est = brute_force_oracle(
        spec, theta, samples=samples, lam=lam, mode=mode, seed=seed,
        n_threads=threads,
    )
    route = capture_amplitude(spec, theta, lam=lam, mode=mode, quad=quad)
    deviation = abs(est.value - route)
    payload = {
        "kind": "capture_oracle",
        "mode": mode,
        "lam": lam,
        "theta": theta,
        "seed": seed,
        "samples": est.samples,
        "blocks": est.blocks,
        "value": {"re": est.value.real, "im": est.value.imag},
        "statistical_error": est.error,
        "route_value": {"re": route.real, "im": route.imag},
        "route_deviation": deviation,
    }
    rows = [(est.value.real, est.value.imag, est.error, deviation)]
    return payload, ("value_re", "value_im", "stat_error", "route_deviation"), rows


_RUNNERS = {
    "propagator": _run_propagator,
    "evolve": _run_evolve,
    "born-elastic": _run_born,
    "influence": _run_influence,
    "charge-transfer": _run_charge_transfer,
    "oracle": _run_oracle,
}


def run(command, params, out_dir, threads=1):
    """Dispatch one validated config and write csv + json into out_dir."""
    os.makedirs(out_dir, exist_ok=True)
    if not os.access(out_dir, os.W_OK):
        raise ConfigError(f"output directory {out_dir!r} is not writable")
    started = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        payload, header, rows = _RUNNERS[command](params, threads)
    elapsed = time.perf_counter() - started
    document = {
        "schema_version": "1",
        "command": command,
        "config": params,
        "payload": payload,
        "diagnostics": {"warnings": sorted(str(w.message) for w in caught)},
    }
    base = os.path.join(out_dir, command)
    _write_csv(base + ".csv", header, rows)
    _write_json(base + ".json", document)
    print(f"elapsed_seconds={elapsed:.3f}", file=sys.stderr)
    return document


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="pathscat",
        description="Path-integral scattering and electron-capture calculations.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=f"run a {name} computation")
        p.add_argument("--config", required=True, help="YAML config file")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument(
            "--set",
            action="append",
            default=[],
            metavar="PATH=VALUE",
            help="override a config key, e.g. --set time.slices=128",
        )
        p.add_argument(
            "--threads",
            type=int,
            default=1,
            help="worker threads for oracle sample blocks (results unchanged)",
        )
    args = parser.parse_args(argv)
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
        command, params = parse_config(text)
        if command != args.command:
            raise ConfigError(
                f"config declares command {command!r} but {args.command!r} was invoked"
            )
        params = apply_overrides(params, args.set)
        run(command, params, args.out, threads=max(1, args.threads))
    except OSError as exc:
        print(json.dumps({"error": {"type": "ConfigError", "message": str(exc)}}))
        return 2
    except ConfigError as exc:
        print(json.dumps({"error": {"type": "ConfigError", "message": str(exc)}}))
        return 2
    except NumericalError as exc:
        doc = {"error": {"type": "NumericalError", "message": str(exc)}}
        if exc.estimate is not None:
            doc["error"]["estimate"] = float(exc.estimate)
        print(json.dumps(doc))
        return 3
    except DomainError as exc:
        print(json.dumps({"error": {"type": "DomainError", "message": str(exc)}}))
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
