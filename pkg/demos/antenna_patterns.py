"""Tour of the cardioid antenna pattern and what sharpness buys.

The gain G(theta) = 1 + eps*cos(n*theta) integrates to 2*pi for every
sharpness eps, so a sharper beam trades reach in the favored direction
against a null behind.  This script prints the pattern at a few angles,
checks the normalization numerically, and shows how the worst-case
communication range grows with eps.
"""

import math

import numpy as np

from dirnet import ChannelModel, GainModel


def main():
    print("gain G(theta) = 1 + eps*cos(theta), one lobe")
    angles = np.linspace(0.0, math.pi, 7)
    header = "  eps " + "".join(f"  G({a / math.pi:4.2f}pi)" for a in angles)
    print(header)
    for eps in (0.0, 0.5, 1.0):
        gain = GainModel(epsilon=eps)
        row = "".join(f"  {gain.gain(a):9.4f}" for a in angles)
        print(f"  {eps:3.1f}{row}")

    print()
    print("normalization: the pattern average over the circle is 1")
    for eps in (0.0, 0.3, 0.7, 1.0):
        gain = GainModel(epsilon=eps)
        theta = np.linspace(0.0, 2.0 * math.pi, 200_001)
        avg = float(np.trapezoid(gain.gain(theta), theta)) / (2.0 * math.pi)
        print(f"  eps={eps:3.1f}: mean gain {avg:.9f}")

    print()
    print("effective range at cutoff 1e-6 (eta=3, beta=1): the worst-case")
    print("distance past which no orientation pair connects with odds 1e-6")
    for eps in (0.0, 0.5, 1.0):
        channel = ChannelModel.rayleigh(eta=3.0, epsilon=eps)
        print(f"  eps={eps:3.1f}: r_eff = {channel.effective_range(1e-6):.4f}")
    print()
    print("a two-lobed pattern reuses the same algebra")
    gain = GainModel(epsilon=1.0, lobes=2)
    peaks = [0.0, math.pi / 2.0, math.pi]
    vals = ", ".join(f"G({a / math.pi:3.1f}pi)={gain.gain(a):.1f}" for a in peaks)
    print(f"  eps=1, lobes=2: {vals}")


if __name__ == "__main__":
    main()
