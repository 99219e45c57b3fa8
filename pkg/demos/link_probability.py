"""How a single link behaves: fading channel vs hard disk.

Prints the connection probability against distance for a pair of nodes in
three mutual arrangements (beams facing, one averted, both averted) and
contrasts the soft fading decay with the hard-disk step.  The takeaway:
directionality does not change whether links exist, only the odds, and
facing beams stretch the reach well past the isotropic one.
"""

from dirnet import ChannelModel, OrientedNode

ARRANGEMENTS = (
    ("facing", 0.0, 3.141592653589793),
    ("one averted", 0.0, 0.0),
    ("both averted", 3.141592653589793, 0.0),
)


def main():
    soft = ChannelModel.rayleigh(eta=3.0, epsilon=1.0)
    iso = ChannelModel.rayleigh(eta=3.0, epsilon=0.0)
    disk = ChannelModel.hard_disk(r0=1.0)

    print("link probability vs distance, eta=3, beta=1")
    print("  r     isotropic  facing     one-avert  both-avert  disk(r0=1)")
    for r in (0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0):
        a = OrientedNode(0.0, 0.0, 0.0)
        cells = [iso.connection_probability(a, OrientedNode(r, 0.0, 0.0))]
        for _name, oa, ob in ARRANGEMENTS:
            cells.append(soft.connection_probability(
                OrientedNode(0.0, 0.0, oa), OrientedNode(r, 0.0, ob)))
        cells.append(disk.connection_probability(
            a, OrientedNode(r, 0.0, 0.0)))
        print("  " + f"{r:4.2f}" + "".join(f"  {c:9.6f}" for c in cells))

    print()
    print("symmetry: the gain product is the same in both directions, so the")
    print("two evaluation orders agree to rounding error, and the simulator")
    print("draws each unordered pair once so realized graphs are undirected")
    a = OrientedNode(0.3, -0.8, 1.1)
    b = OrientedNode(-1.2, 0.4, 5.0)
    fwd = soft.connection_probability(a, b)
    rev = soft.connection_probability(b, a)
    print(f"  forward {fwd:.15f}")
    print(f"  reverse {rev:.15f}  |diff| = {abs(fwd - rev):.2e}")

    print()
    print("a facing pair at eps=1 reaches ~2^(2/eta) times farther than")
    print("isotropic at matched odds; at eta=3 that factor is about 1.59")


if __name__ == "__main__":
    main()
