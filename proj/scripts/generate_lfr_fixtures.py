#!/usr/bin/env python3
"""Regenerate the LFR benchmark fixtures under tests/data/.

The LFR generator itself is external (networkit, pip install networkit).
Output per network:
  <name>.edges   tab-separated edge list, 1-based labels
  <name>.truth   "label<TAB>community_id" lines
"""
import argparse
import pathlib

import networkit as nk


def write(graph, partition, out_dir, name):
    out = pathlib.Path(out_dir)
    edges = sorted((min(u, v), max(u, v)) for u, v in graph.iterEdges())
    with open(out / f"{name}.edges", "w") as f:
        f.write(f"# LFR n={graph.numberOfNodes()} m={len(edges)}\n")
        for u, v in edges:
            f.write(f"{u + 1}\t{v + 1}\n")
    ids = {}
    with open(out / f"{name}.truth", "w") as f:
        for v in range(graph.numberOfNodes()):
            cid = ids.setdefault(partition.subsetOf(v), len(ids) + 1)
            f.write(f"{v + 1}\t{cid}\n")


def lfr(n, mu, min_c, max_c, seed):
    # Degree exponent 2.5, community-size exponent 1.5, <k>=20, k_max=50.
    for attempt in range(50):
        nk.setSeed(seed + attempt, False)
        gen = nk.generators.LFRGenerator(n)
        gen.generatePowerlawDegreeSequence(20, 50, -2.5)
        gen.generatePowerlawCommunitySizeSequence(min_c, max_c, -1.5)
        gen.setMu(mu)
        try:
            gen.run()
        except RuntimeError:
            continue
        return gen.getGraph(), gen.getPartition()
    raise RuntimeError(f"LFR generation failed for n={n} mu={mu}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"))
    args = ap.parse_args()

    # Smallest community 12: with <k>=20 the low-degree nodes need room for
    # (1 - mu) * k internal neighbours.
    for mu, seed in ((0.1, 11), (0.7, 17)):
        g, p = lfr(1000, mu, 12, 50, seed)
        write(g, p, args.out, f"lfr_n1000_small_mu{int(mu * 10):02d}")

    g, p = lfr(10000, 0.1, 20, 100, 23)
    write(g, p, args.out, "lfr_n10000_big_mu01")


if __name__ == "__main__":
    main()
