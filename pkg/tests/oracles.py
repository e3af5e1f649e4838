"""Brute-force reference computations, written from the definitions and kept
independent of the package internals (only plain tuples go in and out)."""

from __future__ import annotations

import itertools
from functools import lru_cache


def partitions(m: int, n: int) -> list:
    """Partitions with parts <= m and at most n parts."""
    out = []
    for k in range(n + 1):
        for parts in itertools.combinations_with_replacement(range(m, 0, -1), k):
            out.append(tuple(parts))
    return out


def cells(lam) -> frozenset:
    return frozenset((r, c) for r, row in enumerate(lam, 1) for c in range(1, row + 1))


def _content(t):
    return t[0] - t[1]


def _height(t):
    return t[0] + t[1] - 1


def _is_partition_cells(cs) -> bool:
    return all(((r - 1, c) in cs or r == 1) and ((r, c - 1) in cs or c == 1) for r, c in cs)


def _strips(pool: frozenset) -> list:
    """Tile sets in pool forming a Dyck path: a connected ribbon, one tile per
    content in an interval, whose two end tiles share the minimal height."""
    out = []
    for start in pool:
        path = [start]

        def grow():
            cur = path[-1]
            if _height(cur) == _height(start):
                out.append(frozenset(path))
            for nxt in ((cur[0] + 1, cur[1]), (cur[0], cur[1] - 1)):
                if nxt in pool and _height(nxt) >= _height(start):
                    path.append(nxt)
                    grow()
                    path.pop()

        grow()
    return out


def _interval(strip) -> tuple:
    cs = sorted(_content(t) for t in strip)
    return cs[0], cs[-1]


def _compatible(P, Q) -> bool:
    """Nested with strictly smaller endpoints on both sides, or at distance >= 2."""
    if Q[0] >= P[1] + 2 or P[0] >= Q[1] + 2:
        return True
    return (P[0] < Q[0] and Q[1] < P[1]) or (Q[0] < P[0] and P[1] < Q[1])


@lru_cache(maxsize=None)
def tilings(lam: tuple, mu: tuple) -> tuple:
    """All Dyck tilings of mu/lam, each as a sorted tuple of content intervals."""
    if not cells(lam) <= cells(mu):
        return ()
    pool = cells(mu) - cells(lam)
    strips = _strips(pool)
    found = []

    def rec(rest, chosen):
        if not rest:
            found.append(tuple(sorted(_interval(s) for s in chosen)))
            return
        first = min(rest, key=lambda t: (_content(t), -t[0]))
        for s in strips:
            if first in s and s <= rest:
                P = _interval(s)
                if all(_compatible(P, _interval(c)) for c in chosen):
                    rec(rest - s, chosen + [s])

    rec(pool, [])
    return tuple(found)


def dyck_degree(lam, mu):
    """Degree of the Dyck pair (lam, mu), or None."""
    ts = tilings(tuple(lam), tuple(mu))
    return len(ts[0]) if ts else None


def is_dyck_pair(lam, mu) -> bool:
    return bool(tilings(tuple(lam), tuple(mu)))


def weight(m: int, n: int, lam) -> str:
    """Boundary of lam read from the bottom-left: 'v' for each step of the n
    row ends and '^' otherwise, on m + n positions."""
    ups = {m + r - (lam[r - 1] if r <= len(lam) else 0) for r in range(1, n + 1)}
    return "".join("v" if p in ups else "^" for p in range(1, m + n + 1))


def cups(w: str) -> tuple:
    """Repeatedly join neighbouring 'v' '^' pairs, ignoring joined positions."""
    free = list(range(1, len(w) + 1))
    found = []
    changed = True
    while changed:
        changed = False
        for a, b in zip(free, free[1:]):
            if w[a - 1] == "v" and w[b - 1] == "^":
                found.append((a, b))
                free.remove(a)
                free.remove(b)
                changed = True
                break
    return tuple(sorted(found)), tuple(free)


def k_basis_count(m: int, n: int) -> dict:
    """Number of triples (cup, wt, cap) with (wt, cup), (wt, cap) Dyck pairs, by degree."""
    ps = partitions(m, n)
    deg = {(a, b): dyck_degree(a, b) for a in ps for b in ps}
    out: dict = {}
    for wt in ps:
        above = [(p, deg[(wt, p)]) for p in ps if deg[(wt, p)] is not None]
        for (_, d1), (_, d2) in itertools.product(above, above):
            out[d1 + d2] = out.get(d1 + d2, 0) + 1
    return out
