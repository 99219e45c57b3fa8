"""Hard-disk two-hop degree: exact integral vs high-density expansion.

The two-hop mean degree of the disk graph has an exact one-dimensional
integral and a two-term large-density expansion whose error shrinks like
the inverse cube root of density.  This script tabulates both, shows the
scaled error settling toward a constant, and checks the geometry fact the
expansion rests on: the lens area of two almost-separated disks closes
like the 3/2 power of the overlap.
"""

import math

from dirnet import HardDiskMu2Mode, hard_disk_lens_area, mu2_hard_disk


def main():
    r0 = 1.0
    print("two-hop mean degree, unit-range disk graph")
    print("  rho     exact        expansion    |diff|     |diff|*rho^(1/3)")
    for rho in (10.0, 30.0, 100.0, 300.0, 1000.0):
        exact = mu2_hard_disk(rho, r0).value
        asym = mu2_hard_disk(rho, r0,
                             mode=HardDiskMu2Mode.ASYMPTOTIC_2D).value
        diff = abs(exact - asym)
        print(f"  {rho:6.0f}  {exact:11.4f}  {asym:11.4f}  {diff:9.5f}"
              f"  {diff * rho ** (1.0 / 3.0):9.5f}")

    print()
    print("the expansion refuses densities where its second term dominates:")
    try:
        mu2_hard_disk(0.5, r0, mode=HardDiskMu2Mode.ASYMPTOTIC_2D)
    except ValueError as exc:
        print(f"  rho=0.5 -> ValueError: {exc}")

    print()
    print("lens area just before the disks separate, r0=1.3:")
    print("  gap       area          (4*sqrt(r0)/3)*gap^1.5   rel err")
    for gap in (1e-1, 1e-2, 1e-3, 1e-4):
        area = hard_disk_lens_area(1.3, 2.0 * 1.3 - gap)
        approx = (4.0 * math.sqrt(1.3) / 3.0) * gap ** 1.5
        print(f"  {gap:7.0e}  {area:.6e}  {approx:.6e}"
              f"            {abs(area - approx) / area:.2e}")


if __name__ == "__main__":
    main()
