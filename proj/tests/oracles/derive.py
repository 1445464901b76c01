#!/usr/bin/env python3
# Independent reference values frozen into the unit tests. Pure Python, no
# shared code with the library. Re-run to regenerate: python3 derive.py
from fractions import Fraction
from itertools import product
from math import log, sqrt


def mi_table(p):
    # p = (pp, pm, mp, mm); four-term sum
    a = p[0] + p[1]
    b = p[0] + p[2]
    marg_a = {1: a, -1: 1 - a}
    marg_b = {1: b, -1: 1 - b}
    cells = {(1, 1): p[0], (1, -1): p[1], (-1, 1): p[2], (-1, -1): p[3]}
    s = 0.0
    for (x, y), v in cells.items():
        if v > 0:
            s += v * log(v / (marg_a[x] * marg_b[y]))
    return s


def cmi(joint):
    # I(X0;X1|X2) straight from the summed definition
    idx = lambda a, b, c: (a << 2) | (b << 1) | c
    pz = [sum(joint[idx(a, b, c)] for a in (0, 1) for b in (0, 1)) for c in (0, 1)]
    pxz = {(a, c): sum(joint[idx(a, b, c)] for b in (0, 1)) for a in (0, 1) for c in (0, 1)}
    pyz = {(b, c): sum(joint[idx(a, b, c)] for a in (0, 1)) for b in (0, 1) for c in (0, 1)}
    s = 0.0
    for a, b, c in product((0, 1), repeat=3):
        v = joint[idx(a, b, c)]
        if v > 0:
            s += v * log(v * pz[c] / (pxz[(a, c)] * pyz[(b, c)]))
    return s


def chain_joint(root, conds, parents, n):
    # conds[k] = (q_pp, q_pm) for node k+1 with parent parents[k]; returns dict
    out = {}
    for xs in product((1, -1), repeat=n):
        p = root if xs[0] > 0 else 1 - root
        for k in range(1, n):
            q = conds[k - 1][0] if xs[parents[k - 1]] > 0 else conds[k - 1][1]
            p *= q if xs[k] > 0 else 1 - q
        out[xs] = p
    return out


def mst_leaf_distribution(n):
    # Kruskal on i.i.d. continuous weights: the next accepted edge is uniform
    # over the pairs that join two components.
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]


    dist = {}

    def rec(comp, degs, prob):
        if len(set(comp)) == 1:
            leaves = sum(1 for d in degs if d == 1)
            dist[leaves] = dist.get(leaves, Fraction(0)) + prob
            return
        cross = [(i, j) for i, j in pairs if comp[i] != comp[j]]
        w = prob / len(cross)
        for i, j in cross:
            a, b = comp[i], comp[j]
            nc = tuple(a if c == b else c for c in comp)
            nd = list(degs)
            nd[i] += 1
            nd[j] += 1
            rec(nc, tuple(nd), w)

    rec(tuple(range(n)), tuple([0] * n), Fraction(1))
    return dist


def main():
    print("mi(0.3,0.1,0.1,0.5) = %.17g" % mi_table((0.3, 0.1, 0.1, 0.5)))
    print("mi(0.375,0.125,0.125,0.375) = %.17g" % mi_table((0.375, 0.125, 0.125, 0.375)))
    joint = [0.05, 0.1, 0.15, 0.2, 0.1, 0.05, 0.25, 0.1]
    print("cmi(0.05,0.1,0.15,0.2,0.1,0.05,0.25,0.1) = %.17g" % cmi(joint))
    print("i_h2(copy) = %.17g" % (1 - 2 * sqrt(0.5 * 0.25)))
    print("ln(0.6*0.3*0.1) = %.17g" % log(0.6 * 0.3 * 0.1))

    # Two 3-node chains 0-1-2 rooted at 0.
    p = chain_joint(0.6, [(0.7, 0.2), (0.9, 0.1)], [0, 1], 3)
    q = chain_joint(0.5, [(0.8, 0.3), (0.6, 0.4)], [0, 1], 3)
    tv = 0.5 * sum(abs(p[x] - q[x]) for x in p)
    h2 = 1 - sum(sqrt(p[x] * q[x]) for x in p)
    print("tv(chainP, chainQ) = %.17g" % tv)
    print("h2(chainP, chainQ) = %.17g" % h2)
    # Star 0-1, 0-2 vs chain P: edges (0,1),(0,2).
    s = chain_joint(0.4, [(0.75, 0.35), (0.55, 0.15)], [0, 0], 3)
    print("tv(chainP, starS) = %.17g" % (0.5 * sum(abs(p[x] - s[x]) for x in p)))
    print("h2(chainP, starS) = %.17g" % (1 - sum(sqrt(p[x] * s[x]) for x in p)))
    # Pair marginal (0,2) of chainP.
    m02 = [sum(v for x, v in p.items() if x[0] == a and x[2] == c) for a in (1, -1) for c in (1, -1)]
    print("chainP pair(0,2) = " + ", ".join("%.17g" % v for v in m02))

    dist = mst_leaf_distribution(6)
    print("random MST leaf counts n=6:")
    for k in sorted(dist):
        print("  %d: %.17g" % (k, float(dist[k])))


if __name__ == "__main__":
    main()
