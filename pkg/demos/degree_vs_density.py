"""One- and two-hop mean degrees against density, analytics only.

The one-hop mean degree is linear in density with a closed form; the
two-hop one needs quadrature.  The interesting question is whether beam
sharpness helps or hurts, and the answer flips with the path loss
exponent: near eta=2 a sharp beam wins the two-hop count, by eta=3 the
isotropic antenna is ahead on both counts.  Runs in about a minute.
"""

from dirnet import ChannelModel, mu1_closed_form, mu2_quadrature


def table(eta):
    iso = ChannelModel.rayleigh(eta=eta, epsilon=0.0)
    sharp = ChannelModel.rayleigh(eta=eta, epsilon=1.0)
    print(f"eta = {eta:g}")
    print("  rho    mu1 iso   mu1 eps=1  mu2 iso     mu2 eps=1   2-hop edge")
    for rho in (1.0, 2.0, 4.0):
        m1i = mu1_closed_form(rho, iso).value
        m1s = mu1_closed_form(rho, sharp).value
        m2i = mu2_quadrature(rho, iso)
        m2s = mu2_quadrature(rho, sharp)
        lead = "sharp" if m2s.value > m2i.value else "iso"
        print(f"  {rho:4.1f}  {m1i:8.4f}  {m1s:8.4f}  {m2i.value:9.4f}"
              f"  {m2s.value:9.4f}   {lead}")
    print()


def main():
    for eta in (2.1, 3.0):
        table(eta)
    print("the one-hop ratio iso/sharp depends only on eta, not density:")
    for eta in (2.0, 2.5, 3.0, 4.0):
        iso = mu1_closed_form(1.0, ChannelModel.rayleigh(eta=eta)).value
        sharp = mu1_closed_form(
            1.0, ChannelModel.rayleigh(eta=eta, epsilon=1.0)).value
        print(f"  eta={eta:3.1f}: mu1 iso/sharp = {iso / sharp:.6f}")


if __name__ == "__main__":
    main()
