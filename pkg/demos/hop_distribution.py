"""Hop-count distribution of a simulated network, as a text histogram.

Simulates the same ensemble with isotropic and maximally sharp antennas
and prints the per-hop probability mass side by side.  Trial count is
kept small so this finishes in under a minute; expect a trial's worth of
noise in the bars.
"""

from dirnet import run_hop_distribution

BAR = 40


def main():
    table = run_hop_distribution(3.0, 3.0, trials=40, seed=7,
                                 max_sources=100)
    meta = table.metadata
    print("hop distribution at density 3, eta 3 (40 trials)")
    print("  k   isotropic" + " " * 38 + "sharp (eps=1)")
    for k, pmf_iso, pmf_sharp in table.rows:
        left = "#" * round(BAR * pmf_iso)
        right = "#" * round(BAR * pmf_sharp)
        print(f"  {k:2d}  {pmf_iso:6.4f} {left:<{BAR}}"
              f" {pmf_sharp:6.4f} {right}")
    print()
    print(f"  mean hop distance: isotropic {meta['h_bar_isotropic']:.3f}, "
          f"sharp {meta['h_bar_anisotropic']:.3f}")
    print(f"  one-hop mean degree: isotropic {meta['mu1_isotropic']:.3f}, "
          f"sharp {meta['mu1_anisotropic']:.3f}")
    print(f"  mass within three hops: isotropic "
          f"{meta['cum_pmf_3_isotropic']:.4f}, sharp "
          f"{meta['cum_pmf_3_anisotropic']:.4f}")


if __name__ == "__main__":
    main()
