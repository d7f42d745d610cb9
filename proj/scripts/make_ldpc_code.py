#!/usr/bin/env python3
"""Generate the regular LDPC parity-check matrices shipped under data/codes/.

Progressive edge growth (PEG) with min-degree tie breaking, seeded so the
output is reproducible. Any alist file can be substituted for the shipped
ones; this script only documents where they came from.

Usage: make_ldpc_code.py N M COL_WEIGHT SEED OUT.alist
"""

import random
import sys
from collections import deque


def peg(n, m, col_weight, rng):
    """Return per-variable check lists for an (n, m) code, column weight col_weight."""
    var_adj = [[] for _ in range(n)]
    check_adj = [[] for _ in range(m)]
    check_deg = [0] * m

    def bfs_unreached(v):
        # Checks not reachable from v in the current graph, or failing that the
        # ones at maximum distance (classic PEG candidate set).
        seen_checks = set()
        frontier = {v}
        seen_vars = {v}
        last_new = set(range(m))
        while True:
            new_checks = set()
            for u in frontier:
                for c in var_adj[u]:
                    if c not in seen_checks:
                        new_checks.add(c)
            if not new_checks:
                break
            seen_checks |= new_checks
            if len(seen_checks) == m:
                return last_new
            last_new = set(range(m)) - seen_checks
            frontier = set()
            for c in new_checks:
                for u in check_adj[c]:
                    if u not in seen_vars:
                        seen_vars.add(u)
                        frontier.add(u)
            if not frontier:
                break
        return set(range(m)) - seen_checks

    for v in range(n):
        for _ in range(col_weight):
            candidates = bfs_unreached(v)
            if not candidates:
                candidates = set(range(m)) - set(var_adj[v])
            lowest = min(check_deg[c] for c in candidates)
            pool = sorted(c for c in candidates if check_deg[c] == lowest)
            c = pool[rng.randrange(len(pool))]
            var_adj[v].append(c)
            check_adj[c].append(v)
            check_deg[c] += 1
    return var_adj, check_adj


def gf2_rank(rows, n):
    mat = [sum(1 << j for j in r) for r in rows]
    rank = 0
    for col in range(n):
        bit = 1 << col
        pivot = next((i for i in range(rank, len(mat)) if mat[i] & bit), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i] & bit:
                mat[i] ^= mat[rank]
        rank += 1
    return rank


def girth(var_adj, check_adj, n):
    # BFS in the bipartite graph from every variable node.
    best = float("inf")
    for s in range(n):
        dist = {("v", s): 0}
        q = deque([("v", s)])
        while q:
            kind, x = q.popleft()
            d = dist[(kind, x)]
            neigh = var_adj[x] if kind == "v" else check_adj[x]
            nk = "c" if kind == "v" else "v"
            for y in neigh:
                if (nk, y) not in dist:
                    dist[(nk, y)] = d + 1
                    q.append((nk, y))
                elif dist[(nk, y)] >= d:
                    best = min(best, d + dist[(nk, y)] + 1)
    return best


def write_alist(path, var_adj, check_adj, n, m):
    with open(path, "w") as f:
        f.write(f"{n} {m}\n")
        f.write(f"{max(len(a) for a in var_adj)} {max(len(a) for a in check_adj)}\n")
        f.write(" ".join(str(len(a)) for a in var_adj) + "\n")
        f.write(" ".join(str(len(a)) for a in check_adj) + "\n")
        for a in var_adj:
            f.write(" ".join(str(c + 1) for c in sorted(a)) + "\n")
        for a in check_adj:
            f.write(" ".join(str(v + 1) for v in sorted(a)) + "\n")


def main():
    n, m, w, seed = map(int, sys.argv[1:5])
    out = sys.argv[5]
    rng = random.Random(seed)
    var_adj, check_adj = peg(n, m, w, rng)
    rows = [sorted(a) for a in check_adj]
    r = gf2_rank(rows, n)
    g = girth(var_adj, check_adj, n)
    degs = sorted(len(a) for a in check_adj)
    print(f"({n},{n - r}) code: rank={r}/{m} girth={g} check degrees {degs[0]}..{degs[-1]}")
    write_alist(out, var_adj, check_adj, n, m)


if __name__ == "__main__":
    main()
