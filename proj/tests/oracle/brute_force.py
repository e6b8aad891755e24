"""Brute-force reference values for the frozen test expectations.

Builds graphs from scratch (no shared code with the C++ library), sums over
every configuration with Fraction weights and prints the values as num/den.
Run: python3 tests/oracle/brute_force.py
"""
from fractions import Fraction as F
from itertools import product


def path(n):
    return n, [(i, i + 1) for i in range(n - 1)]


def cycle(n):
    return n, [(i, (i + 1) % n) for i in range(n)]


def prod(a, b):
    na, ea = a
    nb, eb = b
    edges = [(u * nb + j, v * nb + j) for (u, v) in ea for j in range(nb)]
    edges += [(i * nb + u, i * nb + v) for i in range(na) for (u, v) in eb]
    return na * nb, edges


def cluster(n, edges, open_edges, o):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, (u, v) in enumerate(edges):
        if open_edges >> e & 1:
            parent[find(u)] = find(v)
    r = find(o)
    return {v for v in range(n) if find(v) == r}, len({find(v) for v in range(n)})


def bond_joint(graph, vplus, vminus, o, p, q=None):
    """(E|C+|, E|C-|, margins) under bond or random-cluster weights."""
    n, edges = graph
    m = len(edges)
    tot = F(0)
    ep = em = F(0)
    dist = {}
    for cfg in range(1 << m):
        k = bin(cfg).count("1")
        c, ncl = cluster(n, edges, cfg, o)
        w = p**k * (1 - p) ** (m - k)
        if q is not None:
            w *= q**ncl
        a, b = len(c & vplus), len(c & vminus)
        tot += w
        ep += w * a
        em += w * b
        dist[(a, b)] = dist.get((a, b), 0) + w
    ep, em = ep / tot, em / tot
    top = max(len(vplus), len(vminus))
    margins = []
    for t in range(1, top + 1):
        margins.append(sum(w for (a, b), w in dist.items() if a >= t) / tot
                       - sum(w for (a, b), w in dist.items() if b >= t) / tot)
    return ep, em, margins


def site_joint(graph, vplus, vminus, o, p):
    n, edges = graph
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    ep = em = F(0)
    for cfg in range(1 << n):
        k = bin(cfg).count("1")
        w = p**k * (1 - p) ** (n - k)
        if not cfg >> o & 1:
            c = {o}
        else:
            c, stack = {o}, [o]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if cfg >> y & 1 and y not in c:
                        c.add(y)
                        stack.append(y)
        ep += w * len(c & vplus)
        em += w * len(c & vminus)
    return ep, em


def connection(graph, o, p):
    n, edges = graph
    m = len(edges)
    c = [F(0)] * n
    for cfg in range(1 << m):
        k = bin(cfg).count("1")
        w = p**k * (1 - p) ** (m - k)
        for v in cluster(n, edges, cfg, o)[0]:
            c[v] += w
    return c


def s(x):
    return f"{x.numerator}/{x.denominator}"


def main():
    grid = [F(1, 4), F(1, 2), F(3, 4)]
    c4 = prod(path(2), path(2))
    print("bunkbed(path(2)) p=1/2:", [s(x) for x in bond_joint(c4, {0, 2}, {1, 3}, 0, F(1, 2))[:2]],
          [s(x) for x in bond_joint(c4, {0, 2}, {1, 3}, 0, F(1, 2))[2]])
    print("C4 connection p=1/2:", [s(x) for x in connection(c4, 0, F(1, 2))])

    cube = prod(prod(path(2), path(2)), path(2))
    for p in grid:
        c = connection(cube, 0, p)
        # vertex (1,0,0) = 4, (1,1,0) = 6, (1,1,1) = 7
        print(f"hypercube(3) p={s(p)}: c0..c3 =", [s(c[v]) for v in (0, 4, 6, 7)])

    def torus3(x, y):
        return (x % 3) * 3 + (y % 3)

    t3 = prod(cycle(3), cycle(3))
    for p in grid:
        c = connection(t3, 0, p)
        r1 = 1 + c[torus3(1, 1)] - 2 * c[torus3(1, 0)]
        r2 = 1 + c[torus3(2, 0)] - 2 * c[torus3(1, 1)]
        print(f"torus(3,3) p={s(p)}: relation1 gap {s(r1)}  relation2 gap {s(r2)}")

    for p in grid:
        ep, em, mg = bond_joint(cycle(8), {0, 2, 4, 6}, {1, 3, 5, 7}, 0, p)
        print(f"cycle(8) even/odd p={s(p)}: E+ {s(ep)} E- {s(em)} margins {[s(x) for x in mg]}")

    bc3 = prod(cycle(3), path(2))
    for p in (F(1, 3), F(1, 2)):
        ep, em = site_joint(bc3, {0, 2, 4}, {1, 3, 5}, 0, p)
        print(f"site bunkbed(cycle(3)) p={s(p)}: E+ {s(ep)} E- {s(em)}")
    for q in (F(2), F(1, 2)):
        for p in (F(1, 3), F(1, 2)):
            ep, em, _ = bond_joint(c4, {0, 2}, {1, 3}, 0, p, q)
            print(f"random-cluster q={s(q)} bunkbed(path(2)) p={s(p)}: E+ {s(ep)} E- {s(em)}")

    ep, em, _ = bond_joint(prod(cycle(5), path(2)), set(range(0, 10, 2)), set(range(1, 10, 2)), 0, F(1, 2))
    print(f"bunkbed(cycle(5)) p=1/2: E+ {s(ep)} E- {s(em)}")


if __name__ == "__main__":
    main()
