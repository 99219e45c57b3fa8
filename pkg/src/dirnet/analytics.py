"""Mean multihop degrees of randomly oriented networks, computed analytically.

The 1-hop mean degree of the fading channel has a closed form: the spatial
integral of the link probability over the plane factorizes into a radial
piece and the square of the antenna pattern's power integral, because the
two endpoint orientations average independently.  The 2-hop mean degree has
no closed form; it is a three-dimensional integral over the partner node's
polar position and orientation whose integrand itself contains the expected
chance of a shared relay, another three-dimensional integral.  We evaluate
it with an outer quasi-Monte Carlo (or tensor Gauss) rule over a truncated
domain and an inner tensor Gauss rule per outer point, and report a defended
error bound (resolution comparison plus analytic tail bounds).

Fixed-configuration helpers compute the probability that two given nodes of
a frozen node set share a relay at a given hop count.  The 2-hop version is
exact for independent links; the general version multiplies marginal path
probabilities as if paths through different relays were independent, which
is an approximation for three or more hops (shared links correlate them).

The hard-disk variants mirror the same quantities for the threshold channel,
where the shared-relay chance reduces to the lens area of two overlapping
disks and the high-density behaviour has a two-term expansion.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import quad
from scipy.stats import qmc

from .antenna import TWO_PI
from .channel import ChannelKind, ChannelModel
from .specfun import gamma


class QuadMethod(Enum):
    TENSOR_GAUSS = "tensor_gauss"
    QUASI_MONTE_CARLO = "quasi_monte_carlo"


class HardDiskMu2Mode(Enum):
    NUMERIC_INTEGRAL = "numeric_integral"
    ASYMPTOTIC_2D = "asymptotic_2d"
    ASYMPTOTIC_3D = "asymptotic_3d"


@dataclass(frozen=True)
class QuadratureSpec:
    """Resolution knobs for the nested 2-hop integral.

    ``tail_tolerance`` sets where radial domains are cut: at the radius
    where the best-aligned link probability drops to this value.  The
    neglected tails are bounded analytically and folded into the error
    bound, so a smaller tolerance buys a smaller bound at more cost.
    ``eval_cap`` refuses configurations whose estimated integrand
    evaluation count would run effectively unbounded.
    """

    tail_tolerance: float = 1e-8
    outer_points: int = 16
    inner_points: int = 32
    angular_points: int = 24
    method: QuadMethod = QuadMethod.QUASI_MONTE_CARLO
    qmc_samples: int = 4096
    eval_cap: int = 2_000_000_000

    def __post_init__(self):
        if not 0.0 < self.tail_tolerance < 1.0:
            raise ValueError(
                f"tail_tolerance must lie in (0, 1), got {self.tail_tolerance!r}")
        for name in ("outer_points", "inner_points", "angular_points"):
            if getattr(self, name) < 8:
                raise ValueError(f"{name} must be at least 8, got {getattr(self, name)!r}")
        if self.qmc_samples < 1000:
            raise ValueError(f"qmc_samples must be at least 1000, got {self.qmc_samples!r}")
        if not isinstance(self.method, QuadMethod):
            raise ValueError(f"method must be a QuadMethod, got {self.method!r}")
        if self.eval_cap < 1:
            raise ValueError("eval_cap must be positive")


@dataclass(frozen=True)
class DegreeEstimate:
    """A mean degree with an estimated numerical error bound.

    The bound covers evaluation error (truncation, resolution) of this
    computation only; for asymptotic expansions the unmodelled remainder
    of the expansion itself is not included.
    """

    value: float
    error_bound: float

    def __post_init__(self):
        if not self.value >= 0.0:
            raise ValueError(f"mean degree must be nonnegative, got {self.value!r}")
        if not self.error_bound >= 0.0:
            raise ValueError(f"error bound must be nonnegative, got {self.error_bound!r}")


def _require_rayleigh(channel):
    if channel.kind is not ChannelKind.RAYLEIGH_DIRECTIONAL:
        raise ValueError("this operation applies to the fading channel only")


def _require_density(density):
    if not density > 0.0:
        raise ValueError(f"density must be positive, got {density!r}")


def mu1_closed_form(density, channel):
    """Mean 1-hop degree of the fading channel on the infinite plane.

    Averaging the link probability over a partner's position and both
    orientations gives density times a radial moment, gamma(2/eta) /
    (eta * beta**(2/eta)), times the squared pattern power integral at
    exponent 2/eta over 2*pi.  Exact up to floating point; linear in the
    density.
    """
    _require_rayleigh(channel)
    _require_density(density)
    p = 2.0 / channel.eta
    radial = gamma(p) / (channel.eta * channel.beta ** p)
    pattern = channel.gain.power_integral(p)
    value = density * radial * pattern * pattern / TWO_PI
    return DegreeEstimate(value=value, error_bound=1e-13 * value)


def _outer_rule(spec, half):
    """Outer nodes and weights on the unit cube; weights sum to one."""
    if spec.method is QuadMethod.QUASI_MONTE_CARLO:
        n = spec.qmc_samples // 2 if half else spec.qmc_samples
        u = qmc.Halton(d=3, scramble=False).random(max(n, 2))
    else:
        n = max(spec.outer_points // 2 if half else spec.outer_points, 2)
        x, w = np.polynomial.legendre.leggauss(n)
        x = 0.5 * (x + 1.0)
        w = 0.5 * w
        g0, g1, g2 = np.meshgrid(x, x, x, indexing="ij")
        u = np.column_stack([g0.ravel(), g1.ravel(), g2.ravel()])
        wt = (w[:, None, None] * w[None, :, None] * w[None, None, :]).ravel()
        return u, wt
    return u, np.full(len(u), 1.0 / len(u))


def _mu2_pass(density, channel, r_eff, r_max, u, w, n_inner, n_ang):
    """One full evaluation of the truncated nested integral.

    Outer points live on the unit cube and map to (radius, bearing,
    orientation) of the partner node; the radius map r_max*sqrt(u) makes
    the weight area-uniform.  Per outer point the shared-relay exponent
    is integrated over a box aligned with the pair axis that contains
    every point within the cutoff distance of either endpoint, crossed
    with a uniform grid over the relay orientation.
    """
    gain01, gw01 = np.polynomial.legendre.leggauss(n_inner)
    x01 = 0.5 * (gain01 + 1.0)
    w01 = 0.5 * gw01
    th_k = (np.arange(n_ang) + 0.5) * (TWO_PI / n_ang)

    r_j = r_max * np.sqrt(u[:, 0])
    th_j = TWO_PI * u[:, 1]
    vt_j = TWO_PI * u[:, 2]
    x_j = r_j * np.cos(th_j)
    y_j = r_j * np.sin(th_j)
    h_ij = channel.pair_probabilities(x_j, y_j, 0.0, vt_j)

    t_nodes = -r_eff + 2.0 * r_eff * x01
    wt = 2.0 * r_eff * w01
    f = np.empty(len(u))
    for idx in range(len(u)):
        cb, sb = math.cos(th_j[idx]), math.sin(th_j[idx])
        span = r_j[idx] + 2.0 * r_eff
        s_nodes = -r_eff + span * x01
        ws = span * w01
        kx = (s_nodes[:, None] * cb - t_nodes[None, :] * sb).ravel()
        ky = (s_nodes[:, None] * sb + t_nodes[None, :] * cb).ravel()
        wst = (ws[:, None] * wt[None, :]).ravel()
        h_ik = channel.pair_probabilities(kx[:, None], ky[:, None], 0.0, th_k[None, :])
        h_kj = channel.pair_probabilities(x_j[idx] - kx[:, None],
                                          y_j[idx] - ky[:, None],
                                          th_k[None, :], vt_j[idx])
        relay = np.mean(h_ik * h_kj, axis=1)
        exponent = density * np.sum(wst * relay)
        f[idx] = -(1.0 - h_ij[idx]) * math.expm1(-exponent)
    return density * math.pi * r_max ** 2 * float(np.sum(w * f))


def _mu2_tail_bounds(density, channel, r_eff, r_max, tau):
    """Upper bounds on what the domain truncation discards.

    Uses the best-case gain envelope exp(-b*r**eta) with b = beta/(1+eps)**2,
    whose plane integral is m1 below.  Outside the kept inner box every
    relay link is below tau, so the discarded exponent mass is at most
    density*tau*m1 per outer point.  Beyond the outer radius one leg of any
    relay path exceeds half the separation, which decays the integrand fast
    enough for a closed-form bound via Gamma(s, x) <= x**(s-1)*exp(-x), s <= 1.
    """
    p = 2.0 / channel.eta
    b = channel.beta / (1.0 + channel.gain.epsilon) ** 2
    m1 = TWO_PI / channel.eta * gamma(p) * b ** (-p)
    inner = math.pi * density ** 2 * r_max ** 2 * m1 * tau
    log_inv = math.log(1.0 / tau)
    outer = (16.0 * math.pi * density ** 2 * m1 / (channel.eta * b ** p)
             * log_inv ** (p - 1.0) * tau)
    return inner + outer


def mu2_quadrature(density, channel, spec=QuadratureSpec()):
    """Mean 2-hop degree of the fading channel by nested quadrature.

    The value is the average over a random partner of (probability the
    partner is not a direct neighbour) times (probability of at least one
    shared relay), the latter an exponential in the relay-pair integral.
    The reported error bound is the shift under halving every resolution
    plus the analytic tail bounds; halving is a heuristic error probe, the
    tails are rigorous.
    """
    _require_rayleigh(channel)
    _require_density(density)
    tau = spec.tail_tolerance
    r_eff = channel.effective_range(tau)
    r_max = 2.0 * r_eff

    n_inner_half = max(spec.inner_points // 2, 4)
    n_ang_half = max(spec.angular_points // 2, 4)
    if spec.method is QuadMethod.QUASI_MONTE_CARLO:
        outer_full, outer_half = spec.qmc_samples, spec.qmc_samples // 2
    else:
        outer_full, outer_half = spec.outer_points ** 3, max(spec.outer_points // 2, 2) ** 3
    evals = 2 * (outer_full * spec.inner_points ** 2 * spec.angular_points
                 + outer_half * n_inner_half ** 2 * n_ang_half)
    if evals > spec.eval_cap:
        raise ValueError(
            f"estimated {evals:.2e} integrand evaluations exceed the cap "
            f"{spec.eval_cap:.2e}; lower the resolution or qmc_samples, or "
            f"raise tail_tolerance")

    u, w = _outer_rule(spec, half=False)
    value = _mu2_pass(density, channel, r_eff, r_max, u, w,
                      spec.inner_points, spec.angular_points)
    u_h, w_h = _outer_rule(spec, half=True)
    value_half = _mu2_pass(density, channel, r_eff, r_max, u_h, w_h,
                           n_inner_half, n_ang_half)
    bound = abs(value - value_half) + _mu2_tail_bounds(density, channel,
                                                       r_eff, r_max, tau)
    return DegreeEstimate(value=max(value, 0.0), error_bound=bound)


def _link_matrix(nodes, channel):
    """Symmetric link probability matrix with zero diagonal.

    Each unordered pair is evaluated once, so the matrix is symmetric
    bit-for-bit regardless of rounding in the bearing computation.
    """
    n = len(nodes)
    xs = np.array([nd.x for nd in nodes])
    ys = np.array([nd.y for nd in nodes])
    os_ = np.array([nd.orientation for nd in nodes])
    h = np.zeros((n, n))
    if n >= 2:
        iu, ju = np.triu_indices(n, k=1)
        vals = channel.pair_probabilities(xs[ju] - xs[iu], ys[ju] - ys[iu],
                                          os_[iu], os_[ju])
        h[iu, ju] = vals
        h[ju, iu] = vals
    return h


def _check_pair(nodes, i, j):
    n = len(nodes)
    if n < 2:
        raise ValueError("need at least two nodes")
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"node index out of range: {i}, {j} with {n} nodes")
    if i == j:
        raise ValueError("endpoints must differ")


def h2_exact_fixed(nodes, channel, i, j):
    """Probability that fixed nodes i and j share a direct relay.

    One minus the product over candidate relays of (1 - H_ik*H_kj).
    Exact for independent links: paths through distinct relays use
    disjoint link pairs.
    """
    _check_pair(nodes, i, j)
    h = _link_matrix(nodes, channel)
    mask = np.ones(len(nodes), dtype=bool)
    mask[[i, j]] = False
    return float(1.0 - np.prod(1.0 - h[i][mask] * h[j][mask]))


def hm_approx_fixed(nodes, channel, i, j, m):
    """Probability that fixed nodes i and j share a relay at hop count m.

    For m = 1 this is the direct link probability.  For larger m the
    nested product form multiplies, per relay, the chance that the relay
    sits at exactly m-1 hops from i and links directly to j.  Treating
    those per-relay events as independent is exact at m = 2 (disjoint
    links) and an approximation from m = 3 on, where distinct multihop
    paths can share links; callers should compare against enumeration
    when the deviation matters.
    """
    _check_pair(nodes, i, j)
    if m < 1:
        raise ValueError(f"hop count must be at least 1, got {m!r}")
    h = _link_matrix(nodes, channel)
    if m == 1:
        return float(h[i, j])
    n = len(nodes)
    diag = np.arange(n)
    row = h[i].copy()          # reach probabilities at the current hop count
    not_closer = np.ones(n)    # product of (1 - reach) over all shorter counts
    for _ in range(m - 1):
        prefix = row * not_closer
        contrib = prefix[:, None] * h
        contrib[i, :] = 0.0
        contrib[diag, diag] = 0.0
        not_closer = not_closer * (1.0 - row)
        row = 1.0 - np.prod(1.0 - contrib, axis=0)
        row[i] = 0.0
    return float(row[j])


def hard_disk_lens_area(r0, r):
    """Intersection area of two radius-r0 disks with centers r apart.

    Zero from r = 2*r0 on (tangent or separated).  Accepts a scalar or
    an array separation.
    """
    if not r0 > 0.0:
        raise ValueError(f"r0 must be positive, got {r0!r}")
    arr = np.asarray(r, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("separation must be nonnegative")
    ratio = np.clip(arr / (2.0 * r0), 0.0, 1.0)
    lens = (2.0 * r0 ** 2 * np.arccos(ratio)
            - 0.5 * arr * np.sqrt(np.maximum(4.0 * r0 ** 2 - arr ** 2, 0.0)))
    lens = np.where(arr >= 2.0 * r0, 0.0, lens)
    return float(lens) if np.isscalar(r) else lens


def mu2_hard_disk(density, r0, mode=HardDiskMu2Mode.NUMERIC_INTEGRAL):
    """Mean 2-hop degree of the hard-disk channel.

    NUMERIC_INTEGRAL integrates, over separations between r0 and 2*r0,
    the chance of at least one relay in the lens of the two disks.
    The asymptotic modes evaluate two-term high-density expansions (the
    planar one and its three-dimensional analogue); they are accurate for
    large density only and refuse densities where the second term wins.
    """
    _require_density(density)
    if not r0 > 0.0:
        raise ValueError(f"r0 must be positive, got {r0!r}")
    if mode is HardDiskMu2Mode.NUMERIC_INTEGRAL:
        def integrand(r):
            return -r * math.expm1(-density * hard_disk_lens_area(r0, r))
        raw, abserr = quad(integrand, r0, 2.0 * r0,
                           epsabs=1e-13, epsrel=1e-12, limit=200)
        return DegreeEstimate(value=TWO_PI * density * raw,
                              error_bound=TWO_PI * density * abserr)
    if mode is HardDiskMu2Mode.ASYMPTOTIC_2D:
        lead = 3.0 * density * math.pi * r0 ** 2
        correction = (TWO_PI * (2.0 * r0) ** (2.0 / 3.0) * gamma(2.0 / 3.0)
                      * (density / 3.0) ** (1.0 / 3.0))
    elif mode is HardDiskMu2Mode.ASYMPTOTIC_3D:
        lead = 28.0 / 3.0 * math.pi * density * r0 ** 3
        correction = 8.0 * math.pi * r0 ** 1.5 * math.sqrt(2.0 * density)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if correction >= lead:
        raise ValueError(
            f"two-term expansion is negative at density {density!r}; "
            f"it applies to large densities only")
    return DegreeEstimate(value=lead - correction,
                          error_bound=1e-14 * (lead + correction))
