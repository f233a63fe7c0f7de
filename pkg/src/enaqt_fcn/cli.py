"""Command-line front end: sweeps, optimization, validation, trajectories.

Commands read a JSON config and emit CSV (bulk numerics) or JSON (reports)
with 12-significant-digit formatting, so identical configs and seeds produce
byte-identical outputs.  Exit codes: 0 success, 1 validation failure, 2 bad
config, 3 solver error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import closed_form, crosscheck, lindblad, optimize, reduced
from .errors import EnaqtError
from .model import (
    DensityMatrix,
    NetworkParams,
    SymmetricSuperposition,
    detuning,
    reduced_initial_vector,
    superposition_density_matrix,
    validate,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_BAD_CONFIG = 2
EXIT_SOLVER = 3


class ConfigError(Exception):
    """Config file fails schema validation."""


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


def _check_keys(obj: dict, allowed: set[str], required: set[str], context: str) -> None:
    if not isinstance(obj, dict):
        raise ConfigError(f"{context}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"{context}: unknown keys {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise ConfigError(f"{context}: missing keys {sorted(missing)}")


def _number(obj: dict, key: str, context: str) -> float:
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{context}: {key} must be a number")
    return float(value)


_PARAM_KEYS = {
    "n_sites",
    "coupling",
    "trap_energy",
    "detuning",
    "trap_rate",
    "decay_rate",
    "dephasing_rate",
}


def _parse_params(cfg: dict, swept: set[str] = frozenset()) -> NetworkParams:
    """Assemble NetworkParams; swept fields may be omitted (placeholder 0).

    ``coupling`` defaults to 1, so config rates read in units of J.
    """
    _check_keys(cfg, _PARAM_KEYS, {"n_sites"}, "params")
    n_sites = cfg["n_sites"]
    if isinstance(n_sites, bool) or not isinstance(n_sites, int):
        raise ConfigError("params: n_sites must be an integer")
    coupling = _number(cfg, "coupling", "params") if "coupling" in cfg else 1.0

    if "trap_energy" in cfg and "detuning" in cfg:
        raise ConfigError("params: give either trap_energy or detuning, not both")
    if "trap_energy" in cfg:
        trap_energy = _number(cfg, "trap_energy", "params")
    elif "detuning" in cfg:
        trap_energy = _number(cfg, "detuning", "params") + coupling * (n_sites - 2)
    elif {"delta", "eps_n"} & swept:
        trap_energy = 0.0
    else:
        raise ConfigError("params: one of trap_energy or detuning is required")

    rates = {}
    for key, axis in (("trap_rate", "kappa"), ("decay_rate", "gamma"), ("dephasing_rate", "lambda")):
        if key in cfg:
            rates[key] = _number(cfg, key, "params")
        elif axis in swept:
            rates[key] = 0.0
        else:
            raise ConfigError(f"params: {key} is required")
    return NetworkParams(n_sites=n_sites, coupling=coupling, trap_energy=trap_energy, **rates)


def _check_template(params: NetworkParams, s: int | None, swept: set[str]) -> None:
    """Reject structurally invalid templates; swept-field violations are deferred."""
    init = SymmetricSuperposition(s) if s is not None else None
    violations = validate(params, init)
    if {"kappa", "gamma"} & swept:
        violations = [v for v in violations if not v.startswith("no absorption")]
    if violations:
        raise ConfigError("invalid parameters: " + "; ".join(violations))


def _parse_axis(cfg: dict, index: int) -> optimize.SweepAxis:
    context = f"axes[{index}]"
    _check_keys(cfg, {"name", "min", "max", "count", "spacing"}, {"name", "min", "max", "count"}, context)
    count = cfg["count"]
    if isinstance(count, bool) or not isinstance(count, int) or count < 1:
        raise ConfigError(f"{context}: count must be a positive integer")
    spacing = cfg.get("spacing", "linear")
    if spacing not in ("linear", "log"):
        raise ConfigError(f"{context}: spacing must be 'linear' or 'log'")
    return optimize.SweepAxis(
        name=cfg["name"],
        lo=_number(cfg, "min", context),
        hi=_number(cfg, "max", context),
        count=count,
        spacing=spacing,
    )


def _parse_s(cfg: dict) -> int:
    s = cfg.get("s", 1)
    if isinstance(s, bool) or not isinstance(s, int):
        raise ConfigError("s must be an integer")
    return s


def _load_config(path: str | None, command: str) -> dict:
    if path is None:
        raise ConfigError(f"{command} requires --config")
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# --- commands -------------------------------------------------------------

def cmd_sweep(config: dict, solver: str, threads: int) -> str:
    _check_keys(config, {"params", "s", "axes", "objective"}, {"params", "axes"}, "sweep config")
    axes_cfg = config["axes"]
    if not isinstance(axes_cfg, list) or not 1 <= len(axes_cfg) <= 2:
        raise ConfigError("sweep config: axes must be a list of 1 or 2 entries")
    axes = tuple(_parse_axis(a, i) for i, a in enumerate(axes_cfg))
    swept = {a.name for a in axes}
    template = _parse_params(config["params"], swept)
    s = _parse_s(config)
    _check_template(template, s, swept)
    if solver not in optimize.SOLVERS:
        raise ConfigError(f"sweep supports solver in {optimize.SOLVERS}")
    spec = optimize.SweepSpec(
        template=template, s=s, axes=axes, objective=config.get("objective", "efficiency")
    )
    try:
        rows = optimize.sweep(spec, solver=solver, threads=threads)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    header = ",".join([a.name for a in axes] + ["eta", "tau", "rate"])
    lines = [header]
    for row in rows:
        lines.append(",".join(_fmt(c) for c in row.coords) + f",{_fmt(row.eta)},{_fmt(row.tau)},{_fmt(row.rate)}")
    return "\n".join(lines) + "\n"


def cmd_optimize(config: dict, solver: str) -> str:
    allowed = {"params", "s", "objective", "domain", "starts", "diameter_tol", "max_iter"}
    _check_keys(config, allowed, {"params", "domain"}, "optimize config")
    domain_cfg = config["domain"]
    _check_keys(domain_cfg, {"lambda", "kappa"}, {"lambda", "kappa"}, "domain")
    bounds = {}
    for key in ("lambda", "kappa"):
        pair = domain_cfg[key]
        if not isinstance(pair, list) or len(pair) != 2:
            raise ConfigError(f"domain.{key} must be [lo, hi]")
        bounds[key] = (float(pair[0]), float(pair[1]))
    template = _parse_params(config["params"], swept={"lambda", "kappa"})
    s = _parse_s(config)
    objective = config.get("objective", "efficiency")
    if objective not in optimize.OBJECTIVES:
        raise ConfigError(f"objective must be one of {optimize.OBJECTIVES}")
    if solver not in optimize.SOLVERS:
        raise ConfigError(f"optimize supports solver in {optimize.SOLVERS}")
    _check_template(template, s, {"lambda", "kappa"})

    report = optimize.maximize(
        objective,
        (bounds["lambda"], bounds["kappa"]),
        template,
        s,
        solver=solver,
        starts=int(config.get("starts", 5)),
        diameter_tol=float(config.get("diameter_tol", 1e-6)),
        max_iter=int(config.get("max_iter", 10_000)),
    )
    payload = {
        "objective": report.objective,
        "solver": solver,
        "argmax": {"lambda": report.lambda_opt, "kappa": report.kappa_opt},
        "value": report.value,
        "boundary_flag": report.boundary,
        "converged_starts": report.converged_starts,
    }
    analytic_applies = (
        objective == "rate"
        and template.decay_rate == 0.0
        and s == 1
        and template.n_sites >= 3
    )
    if analytic_applies:
        verify = optimize.verify_optimum(template.n_sites, template.coupling, detuning(template))
        payload["analytic"] = verify.analytic._asdict()
        payload["analytic_deltas"] = verify.rel_errors
        payload["stationarity_residuals"] = {
            "at_numeric": list(verify.residuals_at_numeric),
            "at_analytic": list(verify.residuals_at_analytic),
        }
    return json.dumps(payload, indent=2) + "\n"


def cmd_validate(config: dict | None, seed: int | None) -> tuple[str, bool]:
    if config is not None:
        _check_keys(config, {"seed"}, set(), "validate config")
        if seed is None and "seed" in config:
            cfg_seed = config["seed"]
            if isinstance(cfg_seed, bool) or not isinstance(cfg_seed, int):
                raise ConfigError("validate config: seed must be an integer")
            seed = cfg_seed
    summary = crosscheck.run_all(crosscheck.DEFAULT_SEED if seed is None else seed)
    return json.dumps(summary, indent=2) + "\n", summary["all_passed"]


def _parse_times(cfg: dict) -> np.ndarray:
    _check_keys(cfg, {"start", "stop", "count", "list"}, set(), "times")
    if "list" in cfg:
        times = np.asarray(cfg["list"], dtype=float)
    else:
        for key in ("start", "stop", "count"):
            if key not in cfg:
                raise ConfigError("times needs either 'list' or start/stop/count")
        times = np.linspace(cfg["start"], cfg["stop"], int(cfg["count"]))
    if times.ndim != 1 or len(times) == 0 or np.any(np.diff(times) < 0) or times[0] < 0:
        raise ConfigError("times must be ascending and nonnegative")
    return times


def _parse_initial(cfg: dict, n_sites: int):
    _check_keys(cfg, {"s", "density_matrix"}, set(), "initial")
    if ("s" in cfg) == ("density_matrix" in cfg):
        raise ConfigError("initial: give exactly one of s or density_matrix")
    if "s" in cfg:
        s = cfg["s"]
        if isinstance(s, bool) or not isinstance(s, int):
            raise ConfigError("initial: s must be an integer")
        return SymmetricSuperposition(s)
    dm = cfg["density_matrix"]
    _check_keys(dm, {"re", "im"}, {"re"}, "initial.density_matrix")
    re = np.asarray(dm["re"], dtype=float)
    im = np.asarray(dm.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != (n_sites, n_sites) or im.shape != re.shape:
        raise ConfigError("initial.density_matrix must be n_sites x n_sites")
    return DensityMatrix(re + 1j * im)


def cmd_trajectory(config: dict) -> str:
    allowed = {"params", "initial", "times", "include_full", "accumulators"}
    _check_keys(config, allowed, {"params", "initial", "times"}, "trajectory config")
    params = _parse_params(config["params"])
    init = _parse_initial(config["initial"], params.n_sites)
    violations = validate(params, init)
    if violations:
        raise ConfigError("invalid parameters: " + "; ".join(violations))
    times = _parse_times(config["times"])
    include_full = bool(config.get("include_full", False))
    accumulators = bool(config.get("accumulators", False))

    v0 = reduced_initial_vector(init, params.n_sites)
    states = reduced.trajectory(params, v0, times)

    columns = ["t", "rho_nn", "x", "y", "sigma", "trace"]
    table = [times, *np.asarray(states).T]

    if accumulators:
        # append trapped- and decayed-probability accumulator rows and re-propagate
        augmented = np.zeros((7, 7))
        augmented[:5, :5] = reduced.build_generator(params)
        augmented[5, 0] = 2.0 * params.trap_rate
        augmented[6, 4] = 2.0 * params.decay_rate
        state0 = np.concatenate([np.asarray(v0, dtype=float), [0.0, 0.0]])
        acc = reduced._propagate(augmented, state0, times)
        columns += ["eta_acc", "decay_acc"]
        table += [acc[:, 5], acc[:, 6]]

    if include_full:
        if isinstance(init, SymmetricSuperposition):
            rho0 = superposition_density_matrix(init.s, params.n_sites)
        else:
            rho0 = init.rho0
        evolved = lindblad.evolve(params, rho0, times)
        columns.append("rho_nn_full")
        table.append(np.array([r[-1, -1].real for r in evolved]))

    lines = [",".join(columns)]
    for i in range(len(times)):
        lines.append(",".join(_fmt(col[i]) for col in table))
    return "\n".join(lines) + "\n"


def cmd_limits(config: dict) -> str:
    _check_keys(config, {"params", "s"}, {"params"}, "limits config")
    params = _parse_params(config["params"])
    s = _parse_s(config)
    violations = validate(params, SymmetricSuperposition(s))
    if violations:
        raise ConfigError("invalid parameters: " + "; ".join(violations))

    def guarded(fn, *args):
        try:
            value = fn(*args)
        except EnaqtError as exc:
            return {"error": f"{type(exc).__name__}: {exc}"}
        if hasattr(value, "_asdict"):
            return value._asdict()
        return value

    payload: dict = {
        "params": {
            "n_sites": params.n_sites,
            "coupling": params.coupling,
            "trap_energy": params.trap_energy,
            "trap_rate": params.trap_rate,
            "decay_rate": params.decay_rate,
            "dephasing_rate": params.dephasing_rate,
        },
        "s": s,
        "detuning": detuning(params),
        "general": {
            "alpha": guarded(closed_form.alpha_coeffs, params, s),
            "beta": guarded(closed_form.beta_coeffs, params, s),
            "efficiency": guarded(closed_form.efficiency_cf, params, s),
            "rate": guarded(closed_form.rate_cf, params, s),
            "transfer_time": guarded(closed_form.transfer_time_cf, params, s),
        },
        "no_dephasing": {
            "alpha": guarded(closed_form.alpha_coeffs_no_dephasing, params, s),
            "beta": guarded(closed_form.beta_coeffs_no_dephasing, params, s),
        },
        "no_decay": {
            "alpha": closed_form.alpha_coeffs_no_decay()._asdict(),
            "beta": guarded(closed_form.beta_coeffs_no_decay, params, s),
        },
        "coherent": guarded(closed_form.coherent_rate, params, s),
        "weak_decay_efficiency": guarded(closed_form.weak_decay_efficiency, params, s),
        "coherent_efficiency_max": closed_form.coherent_efficiency_max(
            params.n_sites, params.coupling, detuning(params), params.decay_rate
        ),
    }
    if params.n_sites == 2:
        payload["two_site"] = {"alpha": guarded(closed_form.alpha_coeffs_two_site, params)}
    if params.n_sites >= 3:
        optimum = closed_form.enaqt_optimum(params.n_sites, params.coupling, detuning(params))
        payload["enaqt_optimum"] = optimum._asdict()
        payload["stationarity_residuals_at_optimum"] = list(
            closed_form.stationarity_residuals(
                params.n_sites,
                params.coupling,
                detuning(params),
                optimum.kappa_opt,
                optimum.lambda_opt,
            )
        )
    return json.dumps(payload, indent=2) + "\n"


# --- entry point ----------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="enaqt-fcn",
        description="Transport on the fully connected network: sweeps, optima, validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("sweep", "evaluate eta/tau/rate over a parameter grid, emit CSV"),
        ("optimize", "locate a landscape optimum, emit a JSON report"),
        ("validate", "run the randomized cross-solver equivalence batteries"),
        ("trajectory", "time evolution of the reduced state, emit CSV"),
        ("limits", "print every closed-form limit value for given parameters"),
    ):
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("--config", help="path to a JSON config file")
        cmd.add_argument("--out", help="output path (default: stdout)")
        cmd.add_argument(
            "--solver",
            choices=["closed_form", "reduced", "full", "brute"],
            default="closed_form",
        )
        cmd.add_argument("--seed", type=int, help="seed for randomized validation batteries")
        cmd.add_argument("--threads", type=int, default=1, help="worker threads for sweeps")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            output = cmd_sweep(_load_config(args.config, "sweep"), args.solver, args.threads)
        elif args.command == "optimize":
            output = cmd_optimize(_load_config(args.config, "optimize"), args.solver)
        elif args.command == "validate":
            config = _load_config(args.config, "validate") if args.config else None
            output, passed = cmd_validate(config, args.seed)
            _write_output(output, args.out)
            return EXIT_OK if passed else EXIT_VALIDATION
        elif args.command == "trajectory":
            output = cmd_trajectory(_load_config(args.config, "trajectory"))
        else:
            output = cmd_limits(_load_config(args.config, "limits"))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except EnaqtError as exc:
        print(f"solver error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    _write_output(output, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
