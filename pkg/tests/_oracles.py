"""Independent reference computations used by the test suite.

Everything here deliberately avoids the library's own integration and
recursion code paths: plain tensor grids, plain Monte Carlo, and exhaustive
enumeration over link states.  Slow and simple on purpose.
"""

import itertools
import math

import numpy as np

from dirnet.channel import OrientedNode

TWO_PI = 2.0 * math.pi


def mu1_grid_quadrature(density, channel, n_r=300, n_ang=256, cluster=0.85):
    """Mean 1-hop degree by direct tensor quadrature of the defining integral.

    Node i sits at the origin with orientation zero.  In the angle variables
    (partner bearing as seen from each endpoint's boresight) the integrand
    is exp(-beta*r**eta / (G(u)*G(v))); at epsilon = 1 it loses analyticity
    where the pattern null makes G vanish, so the uniform periodic grids are
    pushed through u = w + cluster*sin(w), which piles nodes up near the
    null and restores fast convergence.  Everything below is computed from
    the raw formula, not through the library's channel code.
    """
    eps = channel.gain.epsilon
    lobes = channel.gain.lobes
    r_cut = (math.log(1e12) * (1.0 + eps) ** 2 / channel.beta) ** (1.0 / channel.eta)
    x, w = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * r_cut * (x + 1.0)
    wr = 0.5 * r_cut * w
    base = (np.arange(n_ang) + 0.5) * (TWO_PI / n_ang)
    u = base + cluster * np.sin(base)
    du = (1.0 + cluster * np.cos(base)) * (TWO_PI / n_ang)
    g = 1.0 + eps * np.cos(lobes * u)
    gg = g[:, None] * g[None, :]
    ww = du[:, None] * du[None, :]
    total = 0.0
    for ri, wri in zip(r, wr):
        with np.errstate(divide="ignore"):
            h = np.where(gg > 0.0,
                         np.exp(-channel.beta * ri ** channel.eta
                                / np.where(gg > 0.0, gg, 1.0)),
                         0.0)
        total += wri * ri * float(np.sum(ww * h))
    return density / TWO_PI * total


def mu2_plain_monte_carlo(density, channel, n_outer=4883, n_inner=2048, seed=0):
    """Mean 2-hop degree by plain Monte Carlo on the same nested integrals.

    Outer samples are uniform over the disk of radius twice the effective
    range (with uniform bearing and orientation); for each, the relay
    exponent is estimated by uniform sampling over a disk that covers every
    point within the effective range of either endpoint.  Returns (value,
    standard error) with the standard error taken across outer samples, so
    it includes the inner sampling noise.
    """
    rng = np.random.default_rng(seed)
    r_eff = channel.effective_range(1e-8)
    r_max = 2.0 * r_eff

    outer_u = rng.random((n_outer, 3))
    r_j = r_max * np.sqrt(outer_u[:, 0])
    th_j = TWO_PI * outer_u[:, 1]
    vt_j = TWO_PI * outer_u[:, 2]
    x_j = r_j * np.cos(th_j)
    y_j = r_j * np.sin(th_j)
    h_ij = channel.pair_probabilities(x_j, y_j, 0.0, vt_j)

    f = np.empty(n_outer)
    for k in range(n_outer):
        # covering disk: center at the pair midpoint, radius r_ij/2 + r_eff
        cx, cy = 0.5 * x_j[k], 0.5 * y_j[k]
        cov_r = 0.5 * r_j[k] + r_eff
        u = rng.random(n_inner)
        ang = TWO_PI * rng.random(n_inner)
        kx = cx + cov_r * np.sqrt(u) * np.cos(ang)
        ky = cy + cov_r * np.sqrt(u) * np.sin(ang)
        vt_k = TWO_PI * rng.random(n_inner)
        relay = (channel.pair_probabilities(kx, ky, 0.0, vt_k)
                 * channel.pair_probabilities(x_j[k] - kx, y_j[k] - ky, vt_k, vt_j[k]))
        exponent = density * math.pi * cov_r ** 2 * float(np.mean(relay))
        f[k] = -(1.0 - h_ij[k]) * math.expm1(-exponent)
    scale = density * math.pi * r_max ** 2
    value = scale * float(np.mean(f))
    stderr = scale * float(np.std(f, ddof=1)) / math.sqrt(n_outer)
    return value, stderr


def _link_probabilities_scalar(nodes, channel):
    """Per-pair link probabilities via the scalar code path, pair order i<j."""
    pairs = list(itertools.combinations(range(len(nodes)), 2))
    probs = [channel.connection_probability(nodes[a], nodes[b]) for a, b in pairs]
    return pairs, probs


def shared_relay_probability_enum(nodes, channel, i, j, m):
    """P(some relay sits at exactly m-1 hops from i and links to j), exactly.

    Enumerates all 2**L link states of the complete pair set with their
    product probabilities, computing hop distances from i by bit-set BFS on
    each state.  Exponential in the pair count; fine for up to ~6 nodes.
    """
    n = len(nodes)
    pairs, probs = _link_probabilities_scalar(nodes, channel)
    lcount = len(pairs)
    total = 0.0
    for state in range(1 << lcount):
        weight = 1.0
        adj = [0] * n
        for bit, ((a, b), p) in enumerate(zip(pairs, probs)):
            if state >> bit & 1:
                weight *= p
                adj[a] |= 1 << b
                adj[b] |= 1 << a
            else:
                weight *= 1.0 - p
        if weight == 0.0:
            continue
        # bit-set BFS from i: level[k] = hop distance
        seen = 1 << i
        frontier = 1 << i
        dist = {i: 0}
        hops = 0
        while frontier:
            reach = 0
            for k in range(n):
                if frontier >> k & 1:
                    reach |= adj[k]
            frontier = reach & ~seen
            seen |= frontier
            hops += 1
            for k in range(n):
                if frontier >> k & 1:
                    dist[k] = hops
        hit = any(dist.get(k) == m - 1 and adj[k] >> j & 1
                  for k in range(n) if k not in (i, j))
        if hit:
            total += weight
    return total


def random_fixed_configuration(rng, n, channel_factory):
    """A random frozen node set for the enumeration cross-checks."""
    nodes = [OrientedNode(x, y, o)
             for x, y, o in zip(rng.uniform(-1.5, 1.5, n),
                                rng.uniform(-1.5, 1.5, n),
                                rng.uniform(0.0, TWO_PI, n))]
    return nodes, channel_factory(rng)


def mu2_hard_disk_riemann(density, r0, n=2_000_000):
    """Hard-disk 2-hop mean degree by a midpoint Riemann sum."""
    r = r0 + (np.arange(n) + 0.5) * (r0 / n)
    ratio = np.clip(r / (2.0 * r0), 0.0, 1.0)
    lens = (2.0 * r0 ** 2 * np.arccos(ratio)
            - 0.5 * r * np.sqrt(np.maximum(4.0 * r0 ** 2 - r ** 2, 0.0)))
    vals = -r * np.expm1(-density * lens)
    return TWO_PI * density * float(np.mean(vals)) * r0
