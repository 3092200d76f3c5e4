"""Configuration-driven experiment runner.

Each command evolves one configuration, writes a ``run.csv`` time series plus
a ``manifest.json`` describing the run and its physics checks, and reports
pass/fail against the library's tolerance constants. CSV formatting is frozen
(12 significant digits, comma separator, ``\\n`` line endings) so identical
configurations produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

from .ergotropy import ergotropy_numeric
from .hamiltonian import (
    PHI_PI,
    PHI_ZERO,
    PTParams,
    build_pt_hamiltonian,
    classify_point,
    energy_eigensystem,
)
from .opensystem import BathSpec, build_composite, check_eta_unitarity, evolve
from .states import (
    CoefficientMatrix,
    INITIAL_STATE_KINDS,
    build_rho_g,
    coefficients_from_matrix,
    initial_state,
    lambda_eigenvalues,
)
from .thermo import thermo_records, third_law_scan
from .tolerances import (
    ERGOTROPY_FLOOR,
    ETA_UNITARITY_ATOL,
    FIRST_LAW_ATOL,
    SIGMA_FLOOR,
    THIRD_LAW_ENTROPY_BOUND,
    TRAJECTORY_TRACE_ATOL,
)

DEFAULT_TEMPERATURES = (10.0, 1.0, 0.1, 1e-3)


class ConfigError(ValueError):
    """Malformed configuration file, key or value."""


@dataclass(frozen=True)
class RunConfig:
    """One experiment: Hamiltonian, bath, initial state and time grid."""

    r: float = 0.0
    s: float = 1.0
    g: float = 0.5
    omega_c: float = 2.0
    d_bath: int = 15
    temperature: float = 10.0
    initial_state: str = "excited"
    t_max: float = 20.0
    n_steps: int = 400
    output_dir: str = "runs"
    phi_convention: str = "pi"

    def __post_init__(self):
        for name in ("r", "s", "g", "omega_c", "temperature", "t_max"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"{name} must be a number, got {value!r}")
            if not math.isfinite(float(value)):
                raise ConfigError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        for name in ("d_bath", "n_steps"):
            value = getattr(self, name)
            if isinstance(value, float) and value.is_integer():
                value = int(value)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, value)
        if self.n_steps < 2:
            raise ConfigError(f"n_steps must be >= 2, got {self.n_steps}")
        if self.t_max <= 0:
            raise ConfigError(f"t_max must be positive, got {self.t_max}")
        if self.initial_state not in INITIAL_STATE_KINDS:
            raise ConfigError(
                f"initial_state must be one of {INITIAL_STATE_KINDS}, got {self.initial_state!r}"
            )
        if self.phi_convention not in (PHI_PI, PHI_ZERO):
            raise ConfigError(
                f"phi_convention must be '{PHI_PI}' or '{PHI_ZERO}', got {self.phi_convention!r}"
            )
        if not isinstance(self.output_dir, (str, Path)):
            raise ConfigError(f"output_dir must be a path, got {self.output_dir!r}")
        object.__setattr__(self, "output_dir", str(self.output_dir))


CONFIG_FIELDS = tuple(RunConfig.__dataclass_fields__)


def load_config(path) -> RunConfig:
    """Read a JSON config; unknown keys are rejected, missing ones default."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path} must contain a JSON object")
    unknown = sorted(set(raw) - set(CONFIG_FIELDS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    return RunConfig(**raw)


def apply_overrides(config: RunConfig, overrides) -> RunConfig:
    """Apply repeatable ``key=value`` overrides (values parsed as JSON or string)."""
    updates = {}
    for item in overrides or ():
        key, sep, text = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"override must look like key=value, got {item!r}")
        if key not in CONFIG_FIELDS:
            raise ConfigError(f"unknown config key in override: {key}")
        try:
            updates[key] = json.loads(text)
        except json.JSONDecodeError:
            updates[key] = text
    return replace(config, **updates) if updates else config


def time_grid(config: RunConfig) -> np.ndarray:
    return np.linspace(0.0, config.t_max, config.n_steps)


@dataclass(frozen=True)
class RunResult:
    manifest: dict
    csv_path: Path
    manifest_path: Path

    @property
    def all_passed(self) -> bool:
        return bool(self.manifest["all_passed"])


def _fmt(x) -> str:
    v = float(x)
    if v == 0.0:
        v = 0.0  # normalize -0.0
    return format(v, ".12g")


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([cell if isinstance(cell, str) else _fmt(cell) for cell in row])


def _check(name: str, passed: bool, value, threshold) -> dict:
    return {
        "name": name,
        "passed": bool(passed),
        "value": None if value is None else float(value),
        "threshold": threshold,
    }


def _library_version() -> str:
    import ptthermo

    return ptthermo.__version__


def _finish_run(
    command, config, checks, started, out_dir, header, rows, extra=None, bath_tail=None
) -> RunResult:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "run.csv"
    _write_csv(csv_path, header, rows)
    manifest = {
        "command": command,
        "config": asdict(config),
        "library_version": _library_version(),
        "regime": classify_point(PTParams(config.r, config.s)),
        "bath_tail_mass": bath_tail,
        "duration_seconds": time.perf_counter() - started,
        "checks": checks,
        "all_passed": all(c["passed"] for c in checks),
    }
    if extra:
        manifest.update(extra)
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    return RunResult(manifest=manifest, csv_path=csv_path, manifest_path=manifest_path)


def _setup(config: RunConfig, with_bath: bool = True):
    params = PTParams(config.r, config.s)
    h = build_pt_hamiltonian(params)
    esys = energy_eigensystem(h, phi_convention=config.phi_convention)
    rho0 = initial_state(config.initial_state, esys)
    if not with_bath:
        return h, esys, rho0, None, None
    bath = BathSpec(config.omega_c, config.d_bath, config.temperature)
    comp = build_composite(h, esys, bath, config.g)
    return h, esys, rho0, bath, comp


def cmd_closed_ergotropy(config: RunConfig, out_dir=None) -> RunResult:
    """Unitary closed evolution of the chosen coefficients under H alone.

    Diagonal coefficients are constants of the closed motion, so the
    eigenvalues and the ergotropy columns are constant; the coherence only
    rotates its phase. The bath parameters of the config are ignored.
    """
    started = time.perf_counter()
    h, esys, rho0, _, _ = _setup(config, with_bath=False)
    times = time_grid(config)
    c0 = rho0.coeffs
    rows = []
    works = []
    for t in times:
        phase = np.exp(2j * esys.energy_abs * t)
        coeffs = CoefficientMatrix(c0.c11, c0.c12 * phase, c0.c21 * np.conj(phase), c0.c22)
        state = build_rho_g(coeffs, esys)
        lam_plus, lam_minus = lambda_eigenvalues(state)
        work = ergotropy_numeric(state, h).work
        works.append(work)
        rows.append((t, work, lam_plus, lam_minus))
    works = np.array(works)
    checks = [
        _check("ergotropy-nonnegative", works.min() >= ERGOTROPY_FLOOR, works.min(), ERGOTROPY_FLOOR),
        _check(
            "closed-ergotropy-constant",
            np.max(np.abs(works - works[0])) < 1e-10,
            np.max(np.abs(works - works[0])),
            1e-10,
        ),
    ]
    return _finish_run(
        "closed-ergotropy",
        config,
        checks,
        started,
        out_dir or config.output_dir,
        ("t", "w_closed", "lambda_plus", "lambda_minus"),
        rows,
    )


def cmd_open_ergotropy(config: RunConfig, out_dir=None) -> RunResult:
    """Open-system ergotropy along the pseudo-unitary trajectory."""
    started = time.perf_counter()
    h, esys, rho0, bath, comp = _setup(config)
    times = time_grid(config)
    traj = evolve(comp, rho0, bath, times)
    rows = []
    works = []
    trace_err = 0.0
    for k, t in enumerate(times):
        state = build_rho_g(coefficients_from_matrix(esys, traj.rho_g[k]), esys)
        lam_plus, lam_minus = lambda_eigenvalues(state)
        work = ergotropy_numeric(state, h).work
        works.append(work)
        trace = complex(np.trace(traj.rho_g[k]))
        trace_err = max(trace_err, abs(trace - 1.0))
        rows.append((t, work, lam_plus, lam_minus, trace.real))
    works = np.array(works)
    unitarity = check_eta_unitarity(comp, float(times[-1]))
    checks = [
        _check("trajectory-trace", trace_err < TRAJECTORY_TRACE_ATOL, trace_err, TRAJECTORY_TRACE_ATOL),
        _check("ergotropy-nonnegative", works.min() >= ERGOTROPY_FLOOR, works.min(), ERGOTROPY_FLOOR),
        _check("eta-unitarity", unitarity < ETA_UNITARITY_ATOL, unitarity, ETA_UNITARITY_ATOL),
    ]
    extra = {"summary": {"initial_ergotropy": float(works[0])}}
    return _finish_run(
        "open-ergotropy",
        config,
        checks,
        started,
        out_dir or config.output_dir,
        ("t", "ergotropy", "lambda_plus", "lambda_minus", "trace_rho_g"),
        rows,
        extra,
        bath_tail=bath.tail_mass,
    )


def cmd_laws(config: RunConfig, out_dir=None) -> RunResult:
    """Energy balance, entropy production and entropy along one trajectory."""
    started = time.perf_counter()
    h, esys, rho0, bath, comp = _setup(config)
    times = time_grid(config)
    traj = evolve(comp, rho0, bath, times)
    records = thermo_records(h, esys, comp, bath, traj)
    rows = [
        (rec.t, rec.dU, rec.dW, rec.dQ_B, rec.first_law_residual, rec.sigma, rec.s_vn)
        for rec in records
    ]
    max_residual = max(abs(rec.first_law_residual) for rec in records)
    min_sigma = min(rec.sigma for rec in records)
    max_entropy = max(rec.s_vn for rec in records)
    checks = [
        _check("first-law-residual", max_residual < FIRST_LAW_ATOL, max_residual, FIRST_LAW_ATOL),
        _check("entropy-production-nonnegative", min_sigma >= SIGMA_FLOOR, min_sigma, SIGMA_FLOOR),
        _check(
            "entropy-range",
            -1e-10 <= max_entropy <= math.log(2) + 1e-10,
            max_entropy,
            math.log(2),
        ),
    ]
    extra = {
        "summary": {
            "max_abs_first_law_residual": float(max_residual),
            "min_sigma": float(min_sigma),
            "max_s_vn": float(max_entropy),
            "initial_ergotropy": float(records[0].ergotropy),
        }
    }
    return _finish_run(
        "laws",
        config,
        checks,
        started,
        out_dir or config.output_dir,
        ("t", "dU", "dW", "dQ_B", "residual", "sigma", "s_vn"),
        rows,
        extra,
        bath_tail=bath.tail_mass,
    )


def cmd_third_law(config: RunConfig, temperatures=DEFAULT_TEMPERATURES, out_dir=None) -> RunResult:
    """Scan the bath temperature downward and record the peak system entropy."""
    started = time.perf_counter()
    table = third_law_scan(
        PTParams(config.r, config.s),
        config.initial_state,
        config.g,
        config.omega_c,
        config.d_bath,
        temperatures,
        time_grid(config),
    )
    maxima = [s for _, s in table]
    monotone = all(b < a for a, b in zip(maxima, maxima[1:]))
    final_ok = maxima[-1] < THIRD_LAW_ENTROPY_BOUND
    checks = [
        _check("third-law-monotone", monotone, None, "strictly decreasing max entropy"),
        _check(
            "third-law-low-temperature-entropy",
            final_ok,
            maxima[-1],
            THIRD_LAW_ENTROPY_BOUND,
        ),
    ]
    extra = {
        "summary": {
            "scan": [
                {
                    # truncated geometric tail of the thermal weights at this T
                    "temperature": t,
                    "max_s_vn": s,
                    "bath_tail_mass": math.exp(-config.omega_c * config.d_bath / t),
                }
                for t, s in table
            ]
        }
    }
    return _finish_run(
        "third-law",
        config,
        checks,
        started,
        out_dir or config.output_dir,
        ("temperature", "max_s_vn"),
        table,
        extra,
    )


def _sweep_one(config: RunConfig, r: float, out_dir: Path):
    sub = replace(config, r=r, output_dir=str(out_dir / f"r_{format(float(r), 'g')}"))
    try:
        result = cmd_laws(sub)
    except Exception as exc:  # guard failures become summary rows, not aborts
        return {"r": float(r), "status": str(exc), "result": None}
    return {"r": float(r), "status": "ok", "result": result}


def cmd_sweep(config: RunConfig, r_values, workers: int = 1, out_dir=None) -> RunResult:
    """Run the laws pipeline once per r value and summarize the sweep."""
    started = time.perf_counter()
    r_values = list(r_values)
    if not r_values:
        raise ConfigError("empty sweep: provide at least one r value")
    out = Path(out_dir or config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda r: _sweep_one(config, r, out), r_values))
    else:
        outcomes = [_sweep_one(config, r, out) for r in r_values]
    rows = []
    checks = []
    for outcome in outcomes:
        r = outcome["r"]
        if outcome["result"] is None:
            rows.append((r, "", "", "", outcome["status"]))
            checks.append(_check(f"run-r={format(r, 'g')}", False, None, outcome["status"]))
            continue
        summary = outcome["result"].manifest["summary"]
        rows.append(
            (
                r,
                summary["initial_ergotropy"],
                summary["min_sigma"],
                summary["max_abs_first_law_residual"],
                outcome["status"],
            )
        )
        checks.append(
            _check(f"run-r={format(r, 'g')}", outcome["result"].all_passed, None, "all run checks")
        )
    out_csv = out / "sweep.csv"
    _write_csv(out_csv, ("r", "initial_ergotropy", "min_sigma", "max_residual", "status"), rows)
    manifest = {
        "command": "sweep",
        "config": asdict(config),
        "r_values": [float(r) for r in r_values],
        "library_version": _library_version(),
        "duration_seconds": time.perf_counter() - started,
        "checks": checks,
        "all_passed": all(c["passed"] for c in checks),
    }
    manifest_path = out / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    return RunResult(manifest=manifest, csv_path=out_csv, manifest_path=manifest_path)
