"""Sweep drivers, table emitters, and curve fits built on the library core.

Every driver returns a Table whose metadata records the full configuration
and seed, so any row can be regenerated from the file alone.  Numeric
content is identical between the CSV and JSON emitters: floats are written
with 17 significant digits, which round-trips IEEE doubles exactly.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .analytics import QuadratureSpec, mu1_closed_form, mu2_quadrature
from .channel import ChannelModel
from .simulator import NetworkConfig, simulate

_VERSION = "0.1.0"


class TableFormat(enum.Enum):
    CSV = "csv"
    JSON = "json"


class FitModel(enum.Enum):
    # a - b*rho^(1/3) + c*rho
    CUBE_ROOT_LAW = "cube_root_law"
    # c * rho^p
    POWER_LAW = "power_law"


def _clean(value):
    # NaN has no portable spelling in JSON or CSV; emit null/empty instead.
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


@dataclass(frozen=True)
class Table:
    """Column-named rows plus the provenance needed to regenerate them."""

    columns: tuple
    rows: tuple
    metadata: dict

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(
            self, "rows",
            tuple(tuple(_clean(v) for v in row) for row in self.rows))
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError("row width does not match the header")

    def column(self, name):
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]


def _cell_text(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        text = format(value, ".17g")
        if not any(ch in text for ch in ".einEIN"):
            text += ".0"  # keep float cells distinguishable from int cells
        return text
    return str(value)


def _cell_value(text):
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def table_to_csv(table):
    buf = io.StringIO()
    # One provenance line ahead of the RFC-4180 payload; readers skip it.
    buf.write("#meta " + json.dumps(table.metadata, sort_keys=True) + "\r\n")
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_cell_text(v) for v in row])
    return buf.getvalue()


def table_to_json(table):
    payload = {
        "metadata": table.metadata,
        "columns": list(table.columns),
        "rows": [list(row) for row in table.rows],
    }
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_table(table, path, fmt=None):
    if fmt is None:
        fmt = TableFormat.CSV if str(path).endswith(".csv") else TableFormat.JSON
    text = table_to_csv(table) if fmt is TableFormat.CSV else table_to_json(table)
    try:
        with open(path, "w", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        raise OSError(f"cannot write table to {path}: {exc}") from exc


def read_table(path):
    try:
        with open(path, newline="") as handle:
            text = handle.read()
    except OSError as exc:
        raise OSError(f"cannot read table from {path}: {exc}") from exc
    if text.lstrip().startswith("{"):
        payload = json.loads(text)
        return Table(columns=tuple(payload["columns"]),
                     rows=tuple(tuple(r) for r in payload["rows"]),
                     metadata=payload["metadata"])
    lines = text.splitlines()
    metadata = {}
    if lines and lines[0].startswith("#meta "):
        metadata = json.loads(lines[0][len("#meta "):])
        lines = lines[1:]
    reader = csv.reader(lines)
    records = [row for row in reader if row]
    if not records:
        raise ValueError(f"no header row in {path}")
    columns = tuple(records[0])
    rows = tuple(tuple(_cell_value(v) for v in row) for row in records[1:])
    return Table(columns=columns, rows=rows, metadata=metadata)


@dataclass(frozen=True)
class SweepSpec:
    """Grid and budget for a degree sweep."""

    densities: tuple
    etas: tuple = (3.0,)
    epsilons: tuple = (0.0, 1.0)
    beta: float = 1.0
    lobes: int = 1
    trials: int = 200
    max_hops: int = 3
    seed: int = 0
    domain_radius: float = 10.0
    boundary_margin: float = None
    max_sources: int = None
    analytic_mu2: bool = True
    quad_spec: QuadratureSpec = field(default_factory=QuadratureSpec)
    output_path: str = None
    fmt: TableFormat = TableFormat.JSON

    def __post_init__(self):
        object.__setattr__(self, "densities", tuple(self.densities))
        object.__setattr__(self, "etas", tuple(self.etas))
        object.__setattr__(self, "epsilons", tuple(self.epsilons))
        for name in ("densities", "etas", "epsilons"):
            if not getattr(self, name):
                raise ValueError(f"{name} grid is empty")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.max_hops < 1:
            raise ValueError("max_hops must be >= 1")


def _provenance(command, **settings):
    meta = {"generator": "dirnet", "version": _VERSION, "command": command}
    meta.update({k: _clean(v) for k, v in settings.items()})
    return meta


def _reference_margin(max_hops, eta, beta, domain_radius):
    """Boundary margin shared by every antenna case of a comparison run.

    Uses the unit-gain reach (connection probability 1e-6 at gain 1), not
    the per-channel worst-case reach: with a directional pattern the latter
    can exceed the domain itself, while hops that outrun the unit-gain
    reach need jointly aligned boresights at deep fade, which contributes
    far less than the Monte Carlo error at realistic trial counts.
    """
    hops = max_hops if max_hops is not None else 2
    margin = hops * (math.log(1e6) / beta) ** (1.0 / eta)
    if margin >= domain_radius:
        raise ValueError(
            f"default boundary margin {margin:.3g} leaves no interior in a "
            f"disk of radius {domain_radius:.3g}; pass boundary_margin "
            "explicitly")
    return margin


def run_degree_sweep(spec):
    """Simulated mean k-hop degrees over a (density, eta, epsilon) grid.

    Each row carries the matching analytic value where one exists: the
    closed form for k=1 always, the nested quadrature for k=2 when
    ``spec.analytic_mu2`` is set.
    """
    rows = []
    margins = {}
    for eta in spec.etas:
        margins[eta] = (spec.boundary_margin
                        if spec.boundary_margin is not None else
                        _reference_margin(spec.max_hops, eta, spec.beta,
                                          spec.domain_radius))
        for eps in spec.epsilons:
            channel = ChannelModel.rayleigh(eta=eta, epsilon=eps,
                                            beta=spec.beta, lobes=spec.lobes)
            mu2 = {}
            if spec.analytic_mu2:
                mu2 = {rho: mu2_quadrature(rho, channel, spec.quad_spec).value
                       for rho in spec.densities}
            for rho in spec.densities:
                config = NetworkConfig(density=rho, channel=channel,
                                       domain_radius=spec.domain_radius,
                                       boundary_margin=margins[eta],
                                       seed=spec.seed, trials=spec.trials)
                stats = simulate(config, max_hops=spec.max_hops,
                                 max_sources=spec.max_sources)
                for k in range(1, spec.max_hops + 1):
                    if k == 1:
                        analytic = mu1_closed_form(rho, channel).value
                    elif k == 2 and spec.analytic_mu2:
                        analytic = mu2[rho]
                    else:
                        analytic = None
                    rows.append((rho, eta, eps, k,
                                 stats.mu.get(k, 0.0),
                                 stats.stderr.get(k, 0.0),
                                 analytic))
    table = Table(
        columns=("density", "eta", "epsilon", "k", "mu", "stderr", "mu_analytic"),
        rows=rows,
        metadata=_provenance(
            "sweep", densities=list(spec.densities), etas=list(spec.etas),
            epsilons=list(spec.epsilons), beta=spec.beta, lobes=spec.lobes,
            trials=spec.trials, max_hops=spec.max_hops, seed=spec.seed,
            domain_radius=spec.domain_radius,
            boundary_margin={str(eta): m for eta, m in margins.items()},
            max_sources=spec.max_sources, analytic_mu2=spec.analytic_mu2))
    if spec.output_path is not None:
        write_table(table, spec.output_path, spec.fmt)
    return table


TIE_LABEL = "tie/undetermined"


def run_phase_diagram(densities, etas, epsilon_star=1.0, k=1, beta=1.0,
                      lobes=1, quad_spec=None, sim_trials=200, seed=0,
                      domain_radius=10.0, max_sources=None):
    """Classify each (density, eta) cell by which antenna wins mean degree.

    The margin is mu_k(isotropic) - mu_k(epsilon_star).  For k=1 the closed
    form decides; for k=2 the quadrature decides, falling back to paired
    simulation when its error bars straddle zero.  Cells whose margin stays
    inside the combined error are labeled tie/undetermined.
    """
    if k not in (1, 2):
        raise ValueError("phase diagram supports k=1 and k=2 only")
    if quad_spec is None:
        quad_spec = QuadratureSpec()
    rows = []
    for eta in etas:
        iso = ChannelModel.rayleigh(eta=eta, epsilon=0.0, beta=beta, lobes=lobes)
        aniso = ChannelModel.rayleigh(eta=eta, epsilon=epsilon_star, beta=beta,
                                      lobes=lobes)
        for rho in densities:
            if k == 1:
                a = mu1_closed_form(rho, iso)
                b = mu1_closed_form(rho, aniso)
                margin, error, method = a.value - b.value, a.error_bound + b.error_bound, "closed_form"
            else:
                a = mu2_quadrature(rho, iso, quad_spec)
                b = mu2_quadrature(rho, aniso, quad_spec)
                margin, error, method = a.value - b.value, a.error_bound + b.error_bound, "quadrature"
                if abs(margin) <= error:
                    margin, error = _mu2_margin_from_simulation(
                        rho, iso, aniso, sim_trials, seed, domain_radius,
                        max_sources)
                    method = "simulation"
            if abs(margin) <= error:
                winner = TIE_LABEL
            elif margin > 0.0:
                winner = "isotropic"
            else:
                winner = "anisotropic"
            rows.append((rho, eta, winner, margin, error, method))
    return Table(
        columns=("density", "eta", "winner", "margin", "margin_error", "method"),
        rows=rows,
        metadata=_provenance(
            "phase", densities=list(densities), etas=list(etas),
            epsilon_star=epsilon_star, k=k, beta=beta, lobes=lobes,
            sim_trials=sim_trials, seed=seed, domain_radius=domain_radius,
            max_sources=max_sources))


def _mu2_margin_from_simulation(rho, iso, aniso, trials, seed, domain_radius,
                                max_sources):
    margin = _reference_margin(2, iso.eta, iso.beta, domain_radius)
    values, variances = [], []
    for channel in (iso, aniso):
        config = NetworkConfig(density=rho, channel=channel,
                               domain_radius=domain_radius,
                               boundary_margin=margin, seed=seed,
                               trials=trials)
        stats = simulate(config, max_hops=2, max_sources=max_sources)
        values.append(stats.mu.get(2, 0.0))
        variances.append(stats.stderr.get(2, 0.0) ** 2)
    return values[0] - values[1], 3.0 * math.sqrt(sum(variances))


def run_hop_distribution(density, eta, epsilon_star=1.0, beta=1.0, lobes=1,
                         trials=500, seed=0, domain_radius=10.0,
                         boundary_margin=None, max_sources=None):
    """Hop-count distribution for isotropic vs directional antennas.

    Runs the two cases at identical settings and tabulates the per-hop pmf
    side by side; metadata carries the mean hop distance of each case and a
    flag for whether the directional pmf concentrates at fewer hops
    (larger cumulative mass over k <= 3).
    """
    if boundary_margin is None:
        boundary_margin = _reference_margin(None, eta, beta, domain_radius)
    cases = {}
    for label, eps in (("isotropic", 0.0), ("anisotropic", epsilon_star)):
        channel = ChannelModel.rayleigh(eta=eta, epsilon=eps, beta=beta,
                                        lobes=lobes)
        config = NetworkConfig(density=density, channel=channel,
                               domain_radius=domain_radius,
                               boundary_margin=boundary_margin, seed=seed,
                               trials=trials)
        cases[label] = simulate(config, max_sources=max_sources)
    width = max(max(cases["isotropic"].hop_pmf, default=0),
                max(cases["anisotropic"].hop_pmf, default=0))
    rows = [(k,
             cases["isotropic"].hop_pmf.get(k, 0.0),
             cases["anisotropic"].hop_pmf.get(k, 0.0))
            for k in range(1, width + 1)]
    cum3 = {label: sum(stats.hop_pmf.get(k, 0.0) for k in (1, 2, 3))
            for label, stats in cases.items()}
    meta = _provenance(
        "hopdist", density=density, eta=eta, epsilon_star=epsilon_star,
        beta=beta, lobes=lobes, trials=trials, seed=seed,
        domain_radius=domain_radius, boundary_margin=boundary_margin,
        max_sources=max_sources)
    for label, stats in cases.items():
        meta[f"h_bar_{label}"] = _clean(stats.h_bar)
        meta[f"mu1_{label}"] = stats.mu.get(1, 0.0)
        meta[f"mu_inf_{label}"] = stats.mu_inf
        meta[f"cum_pmf_3_{label}"] = cum3[label]
    meta["anisotropic_left_shift"] = bool(
        cum3["anisotropic"] > cum3["isotropic"])
    return Table(columns=("k", "pmf_isotropic", "pmf_anisotropic"),
                 rows=rows, metadata=meta)


@dataclass(frozen=True)
class FitResult:
    """Least-squares fit with uncertainties and declared-constraint audit."""

    model: FitModel
    coefficients: dict
    stderr: dict
    residual_norm: float
    window: tuple
    constraint_violations: tuple = ()

    def as_dict(self):
        return {
            "model": self.model.value,
            "coefficients": dict(self.coefficients),
            "stderr": {k: _clean(v) for k, v in self.stderr.items()},
            "residual_norm": self.residual_norm,
            "window": list(self.window),
            "constraint_violations": list(self.constraint_violations),
        }


def _coefficient_errors(design, residuals):
    dof = design.shape[0] - design.shape[1]
    if dof <= 0:
        return np.full(design.shape[1], float("nan"))
    sigma2 = float(residuals @ residuals) / dof
    cov = sigma2 * np.linalg.inv(design.T @ design)
    return np.sqrt(np.diag(cov))


def fit_power_law(x, y):
    """Fit y = c * x**p by least squares on log-log axes."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    if x.size < 3:
        raise ValueError("power-law fit needs at least 3 points")
    if np.any(x <= 0.0) or np.any(y <= 0.0):
        raise ValueError("power-law fit needs strictly positive data")
    design = np.column_stack([np.ones_like(x), np.log(x)])
    coef, _, rank, _ = np.linalg.lstsq(design, np.log(y), rcond=None)
    if rank < 2:
        raise ValueError("rank-deficient design matrix; densities coincide")
    resid = np.log(y) - design @ coef
    err = _coefficient_errors(design, resid)
    c = math.exp(coef[0])
    return FitResult(
        model=FitModel.POWER_LAW,
        coefficients={"c": c, "p": float(coef[1])},
        stderr={"c": c * float(err[0]), "p": float(err[1])},
        residual_norm=float(np.linalg.norm(resid)),
        window=(float(x.min()), float(x.max())))


def fit_cube_root_law(x, y):
    """Fit y = a - b*x**(1/3) + c*x; flags any coefficient <= 0."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    if x.size < 3:
        raise ValueError("cube-root fit needs at least 3 points")
    design = np.column_stack([np.ones_like(x), -np.cbrt(x), x])
    coef, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < 3:
        raise ValueError("rank-deficient design matrix; densities coincide")
    resid = y - design @ coef
    err = _coefficient_errors(design, resid)
    names = ("a", "b", "c")
    return FitResult(
        model=FitModel.CUBE_ROOT_LAW,
        coefficients=dict(zip(names, map(float, coef))),
        stderr=dict(zip(names, map(float, err))),
        residual_norm=float(np.linalg.norm(resid)),
        window=(float(x.min()), float(x.max())),
        constraint_violations=tuple(n for n, v in zip(names, coef) if v <= 0.0))


def detect_peak(values):
    """Index of the maximum; ties resolve to the first (smallest grid) hit."""
    values = np.asarray(values, float)
    if values.size == 0:
        raise ValueError("empty series")
    return int(np.argmax(values))


def run_hbar_scaling(densities, cases, beta=1.0, lobes=1, trials=500, seed=0,
                     domain_radius=10.0, boundary_margin=None,
                     max_sources=None):
    """Mean hop distance vs density, with a decay-law fit past the peak.

    ``cases`` is a sequence of (epsilon, eta) pairs.  For each case the mean
    hop distance is simulated over the density grid, the curve's maximum is
    located, and a power law is fitted starting two grid points after it.
    Returns (fits, table); the fits are also embedded in the table metadata.
    """
    densities = tuple(densities)
    rows, fits = [], []
    for eps, eta in cases:
        margin = (boundary_margin if boundary_margin is not None else
                  _reference_margin(None, eta, beta, domain_radius))
        channel = ChannelModel.rayleigh(eta=eta, epsilon=eps, beta=beta,
                                        lobes=lobes)
        hbars = []
        for rho in densities:
            config = NetworkConfig(density=rho, channel=channel,
                                   domain_radius=domain_radius,
                                   boundary_margin=margin,
                                   seed=seed, trials=trials)
            stats = simulate(config, max_sources=max_sources)
            hbars.append(stats.h_bar)
            rows.append((rho, eps, eta, stats.h_bar, stats.mu_inf))
        peak = detect_peak(hbars)
        start = peak + 2
        tail = densities[start:]
        if len(tail) < 3:
            raise ValueError(
                f"too few post-peak points for (epsilon={eps}, eta={eta}): "
                f"peak at density {densities[peak]}, {len(tail)} of 3 needed "
                "grid points past it; extend the density grid")
        fits.append(fit_power_law(tail, hbars[start:]))
    meta = _provenance(
        "hbar", densities=list(densities),
        cases=[[eps, eta] for eps, eta in cases], beta=beta, lobes=lobes,
        trials=trials, seed=seed, domain_radius=domain_radius,
        boundary_margin=boundary_margin, max_sources=max_sources)
    meta["fits"] = [fit.as_dict() for fit in fits]
    table = Table(columns=("density", "epsilon", "eta", "h_bar", "mu_inf"),
                  rows=rows, metadata=meta)
    return fits, table


def run_mu3_fit(densities, eta=3.0, epsilon=0.0, beta=1.0, lobes=1,
                trials=200, seed=0, domain_radius=10.0, boundary_margin=None,
                max_sources=None):
    """Simulate the 3-hop mean degree over a density grid and fit its law.

    Fits a - b*rho^(1/3) + c*rho and reports, as diagnostics only, the linear
    coefficient against two area scales: pi times the squared effective range
    at tau=1e-6, and the one-hop area (closed-form mean degree per unit
    density).  Returns (fit, table).
    """
    densities = tuple(densities)
    if len(densities) < 5:
        raise ValueError("need at least 5 densities to fit the 3-hop law")
    if boundary_margin is None:
        boundary_margin = _reference_margin(3, eta, beta, domain_radius)
    channel = ChannelModel.rayleigh(eta=eta, epsilon=epsilon, beta=beta,
                                    lobes=lobes)
    rows = []
    for rho in densities:
        config = NetworkConfig(density=rho, channel=channel,
                               domain_radius=domain_radius,
                               boundary_margin=boundary_margin, seed=seed,
                               trials=trials)
        stats = simulate(config, max_hops=3, max_sources=max_sources)
        rows.append((rho, stats.mu.get(3, 0.0), stats.stderr.get(3, 0.0)))
    fit = fit_cube_root_law([r[0] for r in rows], [r[1] for r in rows])
    c = fit.coefficients["c"]
    reach_area = math.pi * channel.effective_range(1e-6) ** 2
    one_hop_area = mu1_closed_form(1.0, channel).value
    meta = _provenance(
        "fit", densities=list(densities), eta=eta, epsilon=epsilon, beta=beta,
        lobes=lobes, trials=trials, seed=seed, domain_radius=domain_radius,
        boundary_margin=boundary_margin, max_sources=max_sources)
    meta["fit"] = fit.as_dict()
    meta["c_over_reach_area"] = c / reach_area
    meta["c_over_one_hop_area"] = c / one_hop_area
    table = Table(columns=("density", "mu3", "stderr"), rows=rows,
                  metadata=meta)
    return fit, table
