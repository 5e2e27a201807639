"""Smoke test for the ncwl_py extension module.

Build and install first:  pip install maturin && maturin develop -m crates/python/Cargo.toml
"""

from fractions import Fraction

import ncwl_py as nc


def main():
    c6 = nc.Graph(6, [(i, (i + 1) % 6) for i in range(6)])
    two_k3 = nc.Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])

    one = nc.compare(c6, two_k3, "1wl")
    nc1 = nc.compare(c6, two_k3, "nc1wl")
    assert not one["distinguished"], one
    assert nc1["distinguished"] and nc1["distinguishing_iteration"] == 1, nc1
    assert not nc.brute_force_isomorphic(c6, two_k3)

    k4 = nc.Graph.parse("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    s = k4.stats()
    assert (s["triangle_count"], s["avg_messages_nc"], s["memory_bound"]) == (4, 3, 6), s
    assert nc.Graph.parse(k4.to_edge_list()) == k4

    assert len(set(nc.refine(c6, "1wl")[-1])) == 1

    h = nc.encode_multiset([0, 2, 2], 4)
    assert h == Fraction(9, 8), h
    assert nc.decode_multiset(h, 4) == [0, 2, 2]
    assert nc.decode_multiset("9/8", 4) == [0, 2, 2]
    report = nc.codec_check()
    assert report["injective"] and report["pairwise_inputs"] == 280, report

    a = nc.embed(c6, layers=2, dim=8, seed=1)
    b = nc.embed(two_k3, layers=2, dim=8, seed=1)
    assert max(abs(x - y) for x, y in zip(a, b)) > 1e-6
    ga = nc.embed(c6, layers=2, dim=8, seed=1, gin=True)
    gb = nc.embed(two_k3, layers=2, dim=8, seed=1, gin=True)
    assert max(abs(x - y) for x, y in zip(ga, gb)) < 1e-9

    corpus = nc.load_corpus()
    for entry in corpus:
        for method, want in entry["distinguished"].items():
            got = nc.compare(entry["first"], entry["second"], method)["distinguished"]
            assert got == want, (entry["name"], method)

    try:
        nc.Graph(2, [(0, 0)])
    except ValueError:
        pass
    else:
        raise AssertionError("self loop accepted")

    print(f"ok: {len(corpus)} corpus entries, codec N={report['base']}")


if __name__ == "__main__":
    main()
