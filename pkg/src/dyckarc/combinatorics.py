"""Partitions in an m x n rectangle, their weights and cup diagrams, and the
Dyck path combinatorics built on top of them.

Conventions used throughout the package:

* a partition ``lam`` in shape (m, n) is a weakly decreasing tuple of
  positive parts with ``lam[0] <= m`` and at most ``n`` parts;
* the tile [r, c] (row r, column c, both from 1) has content r - c, so
  contents range over -m+1 .. n-1;
* the weight of ``lam`` is a string of length m+n over ``'v'`` (up) and
  ``'^'`` (down), position p = 1..m+n sitting at x = p - m - 1/2; the empty
  partition is ``'^'*m + 'v'*n`` and adding a tile of content i turns the
  ``'^v'`` at positions (i+m, i+m+1) into ``'v^'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Iterator, NamedTuple, Optional

from .scalars import LaurentPoly

UP = "v"
DOWN = "^"

Partition = tuple  # tuple[int, ...], trailing zeros dropped
Tile = tuple  # (r, c)


@dataclass(frozen=True, order=True)
class Shape:
    m: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.n, int)):
            raise TypeError("shape entries must be integers")
        if self.m < 1 or self.n < 1:
            raise ValueError(f"shape needs m, n >= 1, got ({self.m},{self.n})")

    @property
    def size(self) -> int:
        return self.m + self.n

    def __str__(self):
        return f"{self.m},{self.n}"

    @classmethod
    def parse(cls, text: str) -> Shape:
        try:
            m, n = (int(x) for x in text.split(","))
        except ValueError:
            raise ValueError(f"shape must look like 'm,n', got {text!r}") from None
        return cls(m, n)


class DyckPath(NamedTuple):
    """A Dyck path up to the identification by content interval."""

    first: int
    last: int

    @property
    def length(self) -> int:
        return self.last - self.first + 1

    @property
    def breadth(self) -> int:
        return (self.length + 1) // 2

    @property
    def contents(self) -> range:
        return range(self.first, self.last + 1)

    def __contains__(self, k) -> bool:
        return self.first <= k <= self.last

    def __str__(self):
        return f"[{self.first}..{self.last}]"

    @classmethod
    def parse(cls, text: str) -> DyckPath:
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]") and ".." in s):
            raise ValueError(f"Dyck path must look like '[a..b]', got {text!r}")
        a, b = s[1:-1].split("..")
        p = cls(int(a), int(b))
        if p.first > p.last:
            raise ValueError(f"empty content interval {text!r}")
        return p


class CupDiagram(NamedTuple):
    cups: tuple  # ((p, q), ...) sorted by p
    rays: tuple  # (p, ...)


class PairKind(Enum):
    DISTANT = "Distant"
    ADJACENT = "Adjacent"
    P_COVERS_Q = "PCoversQ"
    Q_COVERS_P = "QCoversP"
    OTHER = "Other"


# ----------------------------------------------------------------------
# text formats

def parse_partition(text: str) -> Partition:
    s = text.strip()
    if s in ("", "()", "0", "∅"):
        return ()
    s = s.strip("()")
    parts = tuple(int(x) for x in s.split(",") if x.strip() != "")
    return normalize(parts)


def format_partition(lam: Partition) -> str:
    return ",".join(str(x) for x in lam)


def normalize(parts) -> Partition:
    parts = tuple(int(x) for x in parts)
    if any(x < 0 for x in parts):
        raise ValueError(f"negative part in {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"parts not weakly decreasing: {parts}")
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


def fits(shape: Shape, lam: Partition) -> bool:
    return len(lam) <= shape.n and (not lam or lam[0] <= shape.m)


def check_partition(shape: Shape, lam: Partition) -> Partition:
    lam = normalize(lam)
    if not fits(shape, lam):
        raise ValueError(f"partition {format_partition(lam) or '∅'} does not fit shape ({shape})")
    return lam


# ----------------------------------------------------------------------
# partitions, tiles, weights

@lru_cache(maxsize=None)
def enum_partitions(shape: Shape) -> tuple:
    """All partitions of the rectangle sorted by (size, parts)."""
    out = []

    def rec(prefix, cap, rows_left):
        out.append(tuple(prefix))
        if rows_left == 0:
            return
        for x in range(1, cap + 1):
            prefix.append(x)
            rec(prefix, x, rows_left - 1)
            prefix.pop()

    rec([], shape.m, shape.n)
    return tuple(sorted(out, key=lambda p: (sum(p), p)))


def content(t: Tile) -> int:
    return t[0] - t[1]


def height(t: Tile) -> int:
    return t[0] + t[1] - 1


def tiles(lam: Partition) -> frozenset:
    return frozenset((r + 1, c + 1) for r, row in enumerate(lam) for c in range(row))


def from_tiles(ts) -> Optional[Partition]:
    """The partition with exactly these tiles, or None if they do not form one."""
    ts = set(ts)
    rows: dict[int, int] = {}
    for r, c in ts:
        rows[r] = max(rows.get(r, 0), c)
    nrows = max(rows) if rows else 0
    lam = tuple(rows.get(r, 0) for r in range(1, nrows + 1))
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)) or (lam and lam[-1] == 0):
        return None
    if sum(lam) != len(ts) or tiles(lam) != ts:
        return None
    return lam


def contains(big: Partition, small: Partition) -> bool:
    return len(small) <= len(big) and all(s <= b for s, b in zip(small, big))


@lru_cache(maxsize=None)
def partition_to_weight(shape: Shape, lam: Partition) -> str:
    m = shape.m
    ups = {m + r - (lam[r - 1] if r <= len(lam) else 0) for r in range(1, shape.n + 1)}
    return "".join(UP if p in ups else DOWN for p in range(1, shape.size + 1))


@lru_cache(maxsize=None)
def weight_to_partition(shape: Shape, w: str) -> Partition:
    if len(w) != shape.size or set(w) - {UP, DOWN}:
        raise ValueError(f"bad weight {w!r} for shape ({shape})")
    ups = [p for p in range(1, shape.size + 1) if w[p - 1] == UP]
    if len(ups) != shape.n:
        raise ValueError(f"weight {w!r} needs {shape.m} '{DOWN}' and {shape.n} '{UP}'")
    return normalize(shape.m + r - p for r, p in enumerate(ups, start=1))


def swap_labels(w: str, p: int, q: int) -> str:
    """Exchange the labels at positions p and q (1-based)."""
    s = list(w)
    s[p - 1], s[q - 1] = s[q - 1], s[p - 1]
    return "".join(s)


# ----------------------------------------------------------------------
# cup diagrams and removable / addable paths

def cups_of_weight(w: str) -> CupDiagram:
    stack, cups, rays = [], [], []
    for p, lab in enumerate(w, start=1):
        if lab == UP:
            stack.append(p)
        elif stack:
            cups.append((stack.pop(), p))
        else:
            rays.append(p)
    rays.extend(stack)
    return CupDiagram(tuple(sorted(cups)), tuple(sorted(rays)))


@lru_cache(maxsize=None)
def cup_diagram(shape: Shape, lam: Partition) -> CupDiagram:
    return cups_of_weight(partition_to_weight(shape, lam))


def cup_to_path(shape: Shape, cup) -> DyckPath:
    p, q = cup
    return DyckPath(p - shape.m, q - shape.m - 1)


def path_to_cup(shape: Shape, P: DyckPath):
    return (P.first + shape.m, P.last + shape.m + 1)


@lru_cache(maxsize=None)
def dyck_rem(shape: Shape, mu: Partition) -> tuple:
    """Removable Dyck paths of mu, sorted by first content."""
    return tuple(sorted(cup_to_path(shape, c) for c in cup_diagram(shape, mu).cups))


@lru_cache(maxsize=None)
def dyck_add(shape: Shape, mu: Partition) -> tuple:
    """Addable Dyck paths of mu, sorted by first content."""
    w = partition_to_weight(shape, mu)
    out = []
    for p, q in combinations(range(1, shape.size + 1), 2):
        if w[p - 1] == DOWN and w[q - 1] == UP:
            v = swap_labels(w, p, q)
            if (p, q) in cups_of_weight(v).cups:
                out.append(DyckPath(p - shape.m, q - shape.m - 1))
    return tuple(sorted(out))


def remove_path(shape: Shape, mu: Partition, P: DyckPath) -> Partition:
    if P not in dyck_rem(shape, mu):
        raise ValueError(f"{P} is not removable from {format_partition(mu) or '∅'}")
    p, q = path_to_cup(shape, P)
    return weight_to_partition(shape, swap_labels(partition_to_weight(shape, mu), p, q))


def add_path(shape: Shape, mu: Partition, P: DyckPath) -> Partition:
    if P not in dyck_add(shape, mu):
        raise ValueError(f"{P} is not addable to {format_partition(mu) or '∅'}")
    p, q = path_to_cup(shape, P)
    return weight_to_partition(shape, swap_labels(partition_to_weight(shape, mu), p, q))


# ----------------------------------------------------------------------
# Dyck pairs

@lru_cache(maxsize=None)
def dyck_tiling(shape: Shape, lam: Partition, mu: Partition) -> Optional[tuple]:
    """Paths of the Dyck tiling of mu / lam (sorted by first), or None when
    (lam, mu) is not a Dyck pair.  The paths are exactly the cups of mu whose
    end labels differ between the weights of mu and lam."""
    wl = partition_to_weight(shape, lam)
    wm = partition_to_weight(shape, mu)
    diag = cup_diagram(shape, mu)
    v = wm
    used = []
    for p, q in diag.cups:
        a, b = wl[p - 1], wl[q - 1]
        if a == b:
            return None
        if a == DOWN:
            v = swap_labels(v, p, q)
            used.append(cup_to_path(shape, (p, q)))
    if v != wl:
        return None
    return tuple(sorted(used))


def is_dyck_pair(shape: Shape, lam: Partition, mu: Partition) -> bool:
    return dyck_tiling(shape, lam, mu) is not None


def degree(shape: Shape, lam: Partition, mu: Partition) -> Optional[int]:
    t = dyck_tiling(shape, lam, mu)
    return None if t is None else len(t)


def kl_polynomial(shape: Shape, lam: Partition, mu: Partition) -> LaurentPoly:
    d = degree(shape, lam, mu)
    return LaurentPoly() if d is None else LaurentPoly.monomial(d)


def classify_pair(P: DyckPath, Q: DyckPath) -> PairKind:
    if Q.first >= P.last + 2 or P.first >= Q.last + 2:
        return PairKind.DISTANT
    if Q.first == P.last + 1 or P.first == Q.last + 1:
        return PairKind.ADJACENT
    if Q.first > P.first and Q.last < P.last:
        return PairKind.P_COVERS_Q
    if P.first > Q.first and P.last < Q.last:
        return PairKind.Q_COVERS_P
    return PairKind.OTHER


def covers(P: DyckPath, Q: DyckPath) -> bool:
    """True when P covers Q."""
    return classify_pair(P, Q) is PairKind.P_COVERS_Q


def adjacent(P: DyckPath, Q: DyckPath) -> bool:
    return classify_pair(P, Q) is PairKind.ADJACENT


def uncovered(paths) -> list:
    """Paths of a tiling not covered by another path of it, by first content."""
    return sorted(P for P in paths if not any(covers(Q, P) for Q in paths))


def commute(shape: Shape, mu: Partition, P: DyckPath, Q: DyckPath) -> bool:
    rem = dyck_rem(shape, mu)
    if P not in rem or Q not in rem:
        raise ValueError("both paths must be removable")
    if P == Q:
        return False
    return P in dyck_rem(shape, remove_path(shape, mu, Q)) and \
        Q in dyck_rem(shape, remove_path(shape, mu, P))


@lru_cache(maxsize=None)
def envelope(shape: Shape, mu: Partition, P: DyckPath, Q: DyckPath) -> Optional[DyckPath]:
    """Smallest removable path of mu whose contents contain those of P and Q."""
    if P not in dyck_rem(shape, mu):
        raise ValueError(f"{P} is not removable")
    if Q not in dyck_rem(shape, remove_path(shape, mu, P)) or not adjacent(P, Q):
        raise ValueError(f"{Q} must be removable after {P} and adjacent to it")
    lo, hi = min(P.first, Q.first), max(P.last, Q.last)
    cands = [R for R in dyck_rem(shape, mu) if R.first <= lo and R.last >= hi]
    return min(cands, key=lambda R: R.length) if cands else None


def sgn(shape: Shape, lam: Partition, mu: Partition) -> int:
    t = dyck_tiling(shape, lam, mu)
    if t is None or len(t) != 1:
        raise ValueError("sgn needs a Dyck pair of degree 1")
    P = t[0]
    return (P.first + P.last) // 2


# ----------------------------------------------------------------------
# tile level: representatives, generated paths, tilings

def diagonal(lam: Partition, i: int) -> list:
    """Tiles of content i in lam, from the top (largest height) down."""
    out = []
    r = max(1, i + 1)
    while r <= len(lam) and r - i >= 1:
        if lam[r - 1] >= r - i:
            out.append((r, r - i))
        r += 1
    return out[::-1]


def path_tiles(shape: Shape, mu: Partition, P: DyckPath) -> list:
    """The representative of a removable path P cut off by removing it."""
    lam = remove_path(shape, mu, P)
    return sorted(tiles(mu) - tiles(lam), key=content)


@lru_cache(maxsize=None)
def sf_tiles(shape: Shape, mu: Partition, P: DyckPath) -> tuple:
    """Tiles met by the cup of P in mu, one per content, ordered by content.
    Each cup nested inside P over content i pushes the cup down by half a
    tile, so the cup at nesting depth d runs through tile d // 2 of the
    diagonal, counted from the top."""
    cups = cup_diagram(shape, mu).cups
    p, q = path_to_cup(shape, P)
    if (p, q) not in cups:
        raise ValueError(f"{P} is not removable")
    inner = [cup_to_path(shape, c) for c in cups if p < c[0] and c[1] < q]
    out = []
    for i in P.contents:
        depth = sum(1 for R in inner if i in R)
        diag = diagonal(mu, i)
        if depth // 2 >= len(diag):
            raise AssertionError("cup leaves the partition")  # never for a real cup
        out.append(diag[depth // 2])
    return tuple(out)


def roles_local_min(ts) -> tuple:
    hs = [height(t) for t in ts]
    out = []
    for j, h in enumerate(hs):
        if j in (0, len(hs) - 1):
            out.append("spot")
        else:
            out.append("spot" if h <= hs[j - 1] and h <= hs[j + 1] else "fork")
    return tuple(out)


def roles_alternating(ts) -> tuple:
    return tuple("spot" if j % 2 == 0 else "fork" for j in range(len(ts)))


SPOT_FORK_RULES = {"local-min": roles_local_min, "alternating": roles_alternating}
DEFAULT_SPOT_FORK_RULE = "local-min"


def sf_representative(shape: Shape, mu: Partition, P: DyckPath,
                      rule: str = DEFAULT_SPOT_FORK_RULE) -> tuple:
    """((tile, role), ...) along P_sf, role in {'spot', 'fork'}."""
    ts = sf_tiles(shape, mu, P)
    return tuple(zip(ts, SPOT_FORK_RULES[rule](ts)))


def generated_path(shape: Shape, mu: Partition, t: Tile) -> DyckPath:
    r, c = t
    T = tiles(mu)
    if t not in T:
        raise ValueError(f"tile {t} not in partition")
    l = 0
    while (r - l - 1, c + l + 1) in T and (r - l, c + l + 1) in T:
        l += 1
    k = 0
    while (r + k + 1, c - k - 1) in T and (r + k + 1, c - k) in T:
        k += 1
    return DyckPath(r - c - 2 * l, r - c + 2 * k)


def tiles_as_path(ts) -> Optional[DyckPath]:
    """Content interval of a set of tiles forming a Dyck path, else None."""
    seq = sorted(ts, key=content)
    if not seq:
        return None
    for a, b in zip(seq, seq[1:]):
        if b not in ((a[0] + 1, a[1]), (a[0], a[1] - 1)):
            return None
    hs = [height(t) for t in seq]
    if hs[0] != hs[-1] or min(hs) != hs[0]:
        return None
    return DyckPath(content(seq[0]), content(seq[-1]))


def _paths_from(start: Tile, pool: frozenset) -> Iterator[tuple]:
    """Dyck paths (as tile tuples) inside pool beginning at start."""
    h0 = height(start)
    path = [start]

    def rec():
        cur = path[-1]
        if len(path) > 1 and height(cur) == h0:
            yield tuple(path)
        for nxt in ((cur[0] + 1, cur[1]), (cur[0], cur[1] - 1)):
            if nxt in pool and height(nxt) >= h0:
                path.append(nxt)
                yield from rec()
                path.pop()

    yield (start,)
    yield from rec()


def enumerate_tilings(lam: Partition, mu: Partition) -> Iterator[tuple]:
    """All Dyck tilings of mu / lam as tuples of tile tuples."""
    if not contains(mu, lam):
        return
    pool0 = tiles(mu) - tiles(lam)
    chosen: list = []

    def ok(P: DyckPath) -> bool:
        for Q in chosen:
            if classify_pair(P, Q[1]) in (PairKind.ADJACENT, PairKind.OTHER):
                return False
        return True

    def rec(pool):
        if not pool:
            yield tuple(x[0] for x in chosen)
            return
        start = min(pool, key=lambda t: (content(t), -t[0]))
        # the tile of smallest content must start its path
        for ts in _paths_from(start, pool):
            P = DyckPath(content(ts[0]), content(ts[-1]))
            if ok(P):
                chosen.append((ts, P))
                yield from rec(pool - set(ts))
                chosen.pop()

    yield from rec(frozenset(pool0))


def count_tilings(shape: Shape, lam: Partition, mu: Partition) -> int:
    if not is_dyck_pair(shape, lam, mu):
        raise ValueError("not a Dyck pair")
    return sum(1 for _ in enumerate_tilings(lam, mu))


# ----------------------------------------------------------------------
# dilation

def dilate_shape(shape: Shape) -> Shape:
    return Shape(shape.m + 1, shape.n + 1)


def check_k(shape: Shape, k: int):
    if not -shape.m <= k <= shape.n:
        raise ValueError(f"dilation index {k} outside [{-shape.m}, {shape.n}]")


def dilate_weight(shape: Shape, w: str, k: int) -> str:
    check_k(shape, k)
    cut = k + shape.m
    return w[:cut] + UP + DOWN + w[cut:]


def dilate_partition(shape: Shape, lam: Partition, k: int) -> Partition:
    w = dilate_weight(shape, partition_to_weight(shape, lam), k)
    return weight_to_partition(dilate_shape(shape), w)


def dilate_path(P: DyckPath, k: int) -> DyckPath:
    if k in P:
        return DyckPath(P.first - 1, P.last + 1)
    if k < P.first:
        return DyckPath(P.first + 1, P.last + 1)
    return DyckPath(P.first - 1, P.last - 1)
