"""Pairwise link probabilities between oriented nodes.

Two channel families share one interface: a fading channel whose link
probability decays like exp(-beta * r**eta / (G_ab * G_ba)) with the
transmit and receive gains taken from each node's pattern in the
direction of the other, and a hard disk that connects exactly the pairs
closer than a threshold radius (the boundary itself does not connect).

Link probability is symmetric in the two endpoints by construction, and
coincident nodes are treated as connected with probability one.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .antenna import GainModel


class ChannelKind(Enum):
    RAYLEIGH_DIRECTIONAL = "rayleigh_directional"
    HARD_DISK = "hard_disk"


@dataclass(frozen=True)
class OrientedNode:
    """A planar node with a boresight orientation in radians."""

    x: float
    y: float
    orientation: float = 0.0


@dataclass(frozen=True)
class ChannelModel:
    """Channel parameters; which fields matter depends on ``kind``.

    For the fading channel: ``beta`` scales attenuation, ``eta`` is the
    path-loss exponent (at least 2), ``gain`` the antenna pattern shared
    by all nodes.  For the hard disk only ``r0`` matters.
    """

    kind: ChannelKind
    beta: float = 1.0
    eta: float = 2.0
    r0: float = 1.0
    gain: GainModel = field(default_factory=GainModel)

    def __post_init__(self):
        if self.kind is ChannelKind.RAYLEIGH_DIRECTIONAL:
            if not self.beta > 0.0:
                raise ValueError(f"beta must be positive, got {self.beta!r}")
            if not self.eta >= 2.0:
                raise ValueError(f"eta must be at least 2, got {self.eta!r}")
        elif self.kind is ChannelKind.HARD_DISK:
            if not self.r0 > 0.0:
                raise ValueError(f"r0 must be positive, got {self.r0!r}")
        else:
            raise ValueError(f"unknown channel kind {self.kind!r}")

    @classmethod
    def rayleigh(cls, eta, epsilon=0.0, beta=1.0, lobes=1):
        """Fading channel with a cardioid pattern."""
        return cls(kind=ChannelKind.RAYLEIGH_DIRECTIONAL, beta=beta, eta=eta,
                   gain=GainModel(epsilon=epsilon, lobes=lobes))

    @classmethod
    def hard_disk(cls, r0):
        return cls(kind=ChannelKind.HARD_DISK, r0=r0)

    @property
    def epsilon(self):
        return self.gain.epsilon

    def connection_probability(self, a, b):
        """Link probability between two OrientedNode instances."""
        dx = b.x - a.x
        dy = b.y - a.y
        r = math.hypot(dx, dy)
        if r == 0.0:
            return 1.0
        if self.kind is ChannelKind.HARD_DISK:
            return 1.0 if r < self.r0 else 0.0
        bearing = math.atan2(dy, dx)
        g_ab = float(self.gain.gain(bearing - a.orientation))
        g_ba = float(self.gain.gain(bearing + math.pi - b.orientation))
        gg = g_ab * g_ba
        if gg <= 0.0:
            return 0.0
        return math.exp(-self.beta * r ** self.eta / gg)

    def pair_probabilities(self, dx, dy, orient_a, orient_b):
        """Vectorized link probabilities for endpoint offsets b - a.

        All four arguments broadcast together.  Matches
        ``connection_probability`` elementwise, including the r = 0 and
        zero-gain conventions.
        """
        dx = np.asarray(dx, dtype=float)
        dy = np.asarray(dy, dtype=float)
        r = np.hypot(dx, dy)
        if self.kind is ChannelKind.HARD_DISK:
            return (r < self.r0).astype(float)
        bearing = np.arctan2(dy, dx)
        gg = (self.gain.gain(bearing - orient_a)
              * self.gain.gain(bearing + math.pi - orient_b))
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            h = np.exp(-self.beta * r ** self.eta / gg)
        h = np.where(gg <= 0.0, 0.0, h)
        return np.where(r == 0.0, 1.0, h)

    def effective_range(self, tau):
        """Smallest radius beyond which the link probability stays below tau
        for every orientation pair.

        The fading channel is maximized by boresight-to-boresight gain
        (1+epsilon)**2, so the radius solves
        exp(-beta * r**eta / (1+epsilon)**2) = tau.  For the hard disk it
        is the threshold radius itself.
        """
        if not 0.0 < tau < 1.0:
            raise ValueError(f"tau must lie in (0, 1), got {tau!r}")
        if self.kind is ChannelKind.HARD_DISK:
            return self.r0
        gmax = (1.0 + self.gain.epsilon) ** 2
        return (math.log(1.0 / tau) * gmax / self.beta) ** (1.0 / self.eta)
