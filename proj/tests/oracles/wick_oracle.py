"""Exact Gaussian moments E[(1/n) tr X^k] by direct Wick enumeration.

Written independently of the C++ sources: classes come from a parity
union-find over all ordered pairs, covariances from the class structure.
Usage: python3 wick_oracle.py KIND N K [real]
"""
import itertools
import sys
from fractions import Fraction


def generators(kind, n):
    phi = lambda p: n - 1 - p
    gens = [(lambda p, q: (q, p), True)]
    if kind == "flip":
        gens.append((lambda p, q: (phi(p), phi(q)), False))
    elif kind == "violating":
        gens.append((lambda p, q: (phi(p), q), False))
        gens.append((lambda p, q: (phi(q), phi(p)), True))
    elif kind != "iid":
        raise SystemExit("unknown kind " + kind)
    return gens


def classes(kind, n):
    parent = {}
    parity = {}

    def find(x):
        if parent[x] == x:
            return x, 0
        root, par = find(parent[x])
        parent[x] = root
        parity[x] ^= par
        return root, parity[x]

    for p in range(n):
        for q in range(n):
            parent[(p, q)] = (p, q)
            parity[(p, q)] = 0
    real_roots = set()
    for p in range(n):
        for q in range(n):
            for g, conj in generators(kind, n):
                a, b = (p, q), g(p, q)
                ra, pa = find(a)
                rb, pb = find(b)
                want = 1 if conj else 0
                if ra == rb:
                    if pa ^ pb != want:
                        real_roots.add(ra)
                else:
                    parent[rb] = ra
                    parity[rb] = pa ^ pb ^ want
                    if rb in real_roots:
                        real_roots.add(ra)
    out = {}
    for p in range(n):
        for q in range(n):
            r, par = find((p, q))
            out[(p, q)] = (r, par)
    real = {r for r in real_roots}
    # propagate: a root is real if any merged root was real
    real = {find(r)[0] for r in real}
    return out, real


def pairings(items):
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for p in pairings(rest):
            yield [(a, items[i])] + p


def moment(kind, n, k, real_family=False):
    cls, real = classes(kind, n)

    def cov(a, b):
        ra, pa = cls[a]
        rb, pb = cls[b]
        if ra != rb:
            return 0
        if real_family or ra in real:
            return 1
        return 1 if pa != pb else 0

    if k % 2:
        return Fraction(0)
    pair_list = list(pairings(list(range(k))))
    total = 0
    for seq in itertools.product(range(n), repeat=k):
        entries = [(seq[i], seq[(i + 1) % k]) for i in range(k)]
        for pp in pair_list:
            term = 1
            for a, b in pp:
                if not cov(entries[a], entries[b]):
                    term = 0
                    break
            total += term
    return Fraction(total, n ** (1 + k // 2))


if __name__ == "__main__":
    kind, n, k = sys.argv[1], int(sys.argv[2]), int(sys.argv[3])
    real_family = len(sys.argv) > 4 and sys.argv[4] == "real"
    print(moment(kind, n, k, real_family))
