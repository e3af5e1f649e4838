"""The extended Khovanov arc algebra K_{m,n}: diagram basis, grading and the
surgery multiplication.

A basis diagram is a triple (cup, wt, cap) of partitions: the cup diagram of
``cup`` below the weight of ``wt`` and the cap diagram of ``cap`` above it,
with (wt, cup) and (wt, cap) Dyck pairs.
"""

from __future__ import annotations

import json
from collections import Counter
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional, Sequence

from . import combinatorics as cb
from .combinatorics import DOWN, UP, Partition, Shape
from .scalars import GaussInt


class ArcBasisDiagram(NamedTuple):
    cup: Partition
    wt: Partition
    cap: Partition

    def __str__(self):
        f = lambda p: "(" + cb.format_partition(p) + ")"
        return f"{f(self.cup)}_{f(self.wt)}^{f(self.cap)}"


def is_arc_diagram(shape: Shape, d: ArcBasisDiagram) -> bool:
    return cb.is_dyck_pair(shape, d.wt, d.cup) and cb.is_dyck_pair(shape, d.wt, d.cap)


def arc_degree(shape: Shape, d: ArcBasisDiagram) -> int:
    return cb.degree(shape, d.wt, d.cup) + cb.degree(shape, d.wt, d.cap)


@lru_cache(maxsize=None)
def dyck_partners(shape: Shape, lam: Partition) -> tuple:
    """All mu with (lam, mu) a Dyck pair, i.e. DP(lam)."""
    return tuple(mu for mu in cb.enum_partitions(shape) if cb.is_dyck_pair(shape, lam, mu))


@lru_cache(maxsize=None)
def k_basis(shape: Shape) -> tuple:
    """All basis diagrams, sorted by (wt, cup, cap) in the enumeration order."""
    idx = {p: i for i, p in enumerate(cb.enum_partitions(shape))}
    out = []
    for wt in cb.enum_partitions(shape):
        for cup in dyck_partners(shape, wt):
            for cap in dyck_partners(shape, wt):
                out.append(ArcBasisDiagram(cup, wt, cap))
    out.sort(key=lambda d: (idx[d.wt], idx[d.cup], idx[d.cap]))
    return tuple(out)


def graded_counts(shape: Shape, basis: Iterable, deg) -> dict:
    out: dict[int, int] = {}
    for d in basis:
        k = deg(shape, d)
        out[k] = out.get(k, 0) + 1
    return dict(sorted(out.items()))


def idempotent(lam: Partition) -> ArcBasisDiagram:
    return ArcBasisDiagram(lam, lam, lam)


# ----------------------------------------------------------------------
# elements

class KElement:
    """Finite GaussInt combination of arc basis diagrams of one shape."""

    __slots__ = ("shape", "terms")

    def __init__(self, shape: Shape, terms=None):
        self.shape = shape
        t = {}
        for d, c in dict(terms or {}).items():
            c = GaussInt.coerce(c)
            if c:
                t[ArcBasisDiagram(*d)] = c
        self.terms = t

    @classmethod
    def basis(cls, shape: Shape, d, coeff=1) -> KElement:
        return cls(shape, {ArcBasisDiagram(*d): coeff})

    def _check(self, other: KElement):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch ({self.shape}) vs ({other.shape})")

    def __add__(self, other: KElement) -> KElement:
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, GaussInt()) + c
        return KElement(self.shape, out)

    def __neg__(self):
        return KElement(self.shape, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> KElement:
        c = GaussInt.coerce(c)
        return KElement(self.shape, {d: c * v for d, v in self.terms.items()})

    def __mul__(self, other: KElement) -> KElement:
        return k_multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, KElement):
            return NotImplemented
        return self.shape == other.shape and self.terms == other.terms

    def __hash__(self):
        return hash((self.shape, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self) -> list:
        idx = {p: i for i, p in enumerate(cb.enum_partitions(self.shape))}
        return sorted(self.terms.items(),
                      key=lambda kv: (idx[kv[0].wt], idx[kv[0].cup], idx[kv[0].cap]))

    def degrees(self) -> set:
        return {arc_degree(self.shape, d) for d in self.terms}

    def __repr__(self):
        return f"KElement({self.shape}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{d}" for d, c in self.sorted_terms())

    def to_json(self) -> dict:
        return {
            "shape": [self.shape.m, self.shape.n],
            "terms": [{"re": c.re, "im": c.im, "cup": list(d.cup), "wt": list(d.wt),
                       "cap": list(d.cap)} for d, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data) -> KElement:
        if isinstance(data, str):
            data = json.loads(data)
        shape = Shape(*data["shape"])
        terms: dict = {}
        for t in data["terms"]:
            d = ArcBasisDiagram(tuple(t["cup"]), tuple(t["wt"]), tuple(t["cap"]))
            terms[d] = terms.get(d, GaussInt()) + GaussInt(t["re"], t["im"])
        return cls(shape, terms)


def k_flip(a: KElement) -> KElement:
    """Reflect every diagram in the weight line: (cup, wt, cap) -> (cap, wt, cup)."""
    return KElement(a.shape, {ArcBasisDiagram(d.cap, d.wt, d.cup): c
                              for d, c in a.terms.items()})


# ----------------------------------------------------------------------
# surgery

class _Stack:
    """Two diagrams stacked on two weight lines.  Node (level, p) has index
    level*N + p - 1; the lower diagram's weight sits on level 0."""

    def __init__(self, shape: Shape, lower: ArcBasisDiagram, upper: ArcBasisDiagram):
        self.N = N = shape.size
        bottom = cb.cup_diagram(shape, lower.cup)
        mid = cb.cup_diagram(shape, lower.cap)
        top = cb.cup_diagram(shape, upper.cap)
        self.fixed: list[list] = [[] for _ in range(2 * N)]
        self.ends: dict[int, str] = {}  # node -> 'B' / 'T'
        for p, q in bottom.cups:
            self._link(p - 1, q - 1, turn=True)
        for p in bottom.rays:
            self.ends[p - 1] = "B"
        for p, q in top.cups:
            self._link(N + p - 1, N + q - 1, turn=True)
        for p in top.rays:
            self.ends[N + p - 1] = "T"
        for p in mid.rays:
            self._link(p - 1, N + p - 1, turn=False)
        self.pairs = tuple(mid.cups)

    def _link(self, a, b, turn):
        self.fixed[a].append((b, turn))
        self.fixed[b].append((a, turn))

    def adjacency(self, done: frozenset) -> list:
        N = self.N
        adj = [list(x) for x in self.fixed]
        for p, q in self.pairs:
            if (p, q) in done:
                for x in (p, q):
                    adj[x - 1].append((N + x - 1, False))
                    adj[N + x - 1].append((x - 1, False))
            else:
                for lvl in (0, N):
                    a, b = lvl + p - 1, lvl + q - 1
                    adj[a].append((b, True))
                    adj[b].append((a, True))
        return adj

    def components(self, adj) -> list:
        comp = [-1] * (2 * self.N)
        out = []
        for s in range(2 * self.N):
            if comp[s] >= 0:
                continue
            cid = len(out)
            nodes, todo = [], [s]
            comp[s] = cid
            while todo:
                a = todo.pop()
                nodes.append(a)
                for b, _ in adj[a]:
                    if comp[b] < 0:
                        comp[b] = cid
                        todo.append(b)
            out.append(sorted(nodes))
        return comp, out


def _flipped(lab: str) -> str:
    return DOWN if lab == UP else UP


def _propagate(adj, labels: list, start: int, lab: str, nodes: Sequence[int]):
    """Orient the component of ``start`` so that ``start`` carries ``lab``."""
    labels[start] = lab
    seen = {start}
    todo = [start]
    while todo:
        a = todo.pop()
        for b, turn in adj[a]:
            want = _flipped(labels[a]) if turn else labels[a]
            if b in seen:
                if labels[b] != want:
                    raise AssertionError("inconsistent orientation")
                continue
            seen.add(b)
            labels[b] = want
            todo.append(b)


class _Comp:
    __slots__ = ("nodes", "ends", "N")

    def __init__(self, nodes, stack: _Stack):
        self.nodes = nodes
        self.N = stack.N
        self.ends = [a for a in nodes if a in stack.ends]

    @property
    def is_strand(self) -> bool:
        return bool(self.ends)

    def propagating(self, stack: _Stack) -> bool:
        return {stack.ends[a] for a in self.ends} == {"B", "T"}

    def leftmost(self) -> int:
        return min(self.nodes, key=lambda a: (a % self.N, a // self.N))

    def state(self, labels) -> str:
        """'1' (anti-clockwise) or 'x' for circles, 'y' for strands."""
        if self.is_strand:
            return "y"
        return "1" if labels[self.leftmost()] == UP else "x"


def _orient_circle(adj, labels, comp: _Comp, state: str):
    _propagate(adj, labels, comp.leftmost(), UP if state == "1" else DOWN, comp.nodes)


def _orient_strand(adj, labels, comp: _Comp, old_labels):
    end = comp.ends[0]
    _propagate(adj, labels, end, old_labels[end], comp.nodes)
    for e in comp.ends[1:]:
        if labels[e] != old_labels[e]:
            raise AssertionError("strand end changed orientation")


# how often each vanishing surgery rule fired (uncached evaluations only)
ZERO_RULES: Counter = Counter()


def _surgery(stack: _Stack, labels: tuple, done: frozenset, pair) -> list:
    """Apply surgery at one mirror pair; returns [(labels, coeff), ...]."""
    p, q = pair
    adj0 = stack.adjacency(done)
    comp0, comps0 = stack.components(adj0)
    c_low = _Comp(comps0[comp0[p - 1]], stack)
    c_up = _Comp(comps0[comp0[stack.N + p - 1]], stack)
    done2 = done | {pair}
    adj = stack.adjacency(done2)
    comp1, comps1 = stack.components(adj)
    out = []
    if comp0[p - 1] != comp0[stack.N + p - 1]:
        # merge
        new = _Comp(comps1[comp1[p - 1]], stack)
        s1, s2 = c_low.state(labels), c_up.state(labels)
        lab = list(labels)
        if s1 != "y" and s2 != "y":
            if s1 == "x" and s2 == "x":
                ZERO_RULES["x*x"] += 1
                return []
            _orient_circle(adj, lab, new, "x" if "x" in (s1, s2) else "1")
            out.append((tuple(lab), 1))
        elif s1 == "y" and s2 == "y":
            if not (c_low.propagating(stack) and c_up.propagating(stack)):
                ZERO_RULES["y*y non-propagating"] += 1
                return []
            if labels[c_low.ends[0]] == labels[c_up.ends[0]]:
                ZERO_RULES["y*y same orientation"] += 1
                return []
            for x in (p - 1, q - 1):
                _orient_strand(adj, lab, _Comp(comps1[comp1[x]], stack), labels)
            out.append((tuple(lab), 1))
        else:
            circ = c_low if s1 != "y" else c_up
            if circ.state(labels) == "x":
                ZERO_RULES["x*y"] += 1
                return []
            _orient_strand(adj, lab, new, labels)
            out.append((tuple(lab), 1))
    else:
        # split
        old = c_low
        a = _Comp(comps1[comp1[p - 1]], stack)
        b = _Comp(comps1[comp1[q - 1]], stack)
        s = old.state(labels)
        if s == "y":
            strand, circ = (a, b) if a.is_strand else (b, a)
            lab = list(labels)
            _orient_strand(adj, lab, strand, labels)
            _orient_circle(adj, lab, circ, "x")
            out.append((tuple(lab), 1))
        elif s == "x":
            lab = list(labels)
            _orient_circle(adj, lab, a, "x")
            _orient_circle(adj, lab, b, "x")
            out.append((tuple(lab), 1))
        else:
            for sa, sb in (("1", "x"), ("x", "1")):
                lab = list(labels)
                _orient_circle(adj, lab, a, sa)
                _orient_circle(adj, lab, b, sb)
                out.append((tuple(lab), 1))
    return out


@lru_cache(maxsize=None)
def _basis_product(shape: Shape, a: ArcBasisDiagram, b: ArcBasisDiagram,
                   order: Optional[tuple] = None) -> tuple:
    if a.cap != b.cup:
        return ()
    stack = _Stack(shape, a, b)
    N = shape.size
    wa = cb.partition_to_weight(shape, a.wt)
    wb = cb.partition_to_weight(shape, b.wt)
    labels = tuple(wa) + tuple(wb)
    pairs = list(stack.pairs)
    if order is not None:
        if sorted(order) != sorted(pairs):
            raise ValueError("surgery order must list each middle cup once")
        pairs = list(order)
    states = {labels: 1}
    done: frozenset = frozenset()
    for pair in pairs:
        nxt: dict = {}
        for lab, c in states.items():
            for lab2, c2 in _surgery(stack, lab, done, pair):
                nxt[lab2] = nxt.get(lab2, 0) + c * c2
        states = {k: v for k, v in nxt.items() if v}
        done = done | {pair}
    out = {}
    for lab, c in states.items():
        if lab[:N] != lab[N:]:
            raise AssertionError("weight lines disagree after surgery")
        wt = cb.weight_to_partition(shape, "".join(lab[:N]))
        d = ArcBasisDiagram(a.cup, wt, b.cap)
        if not is_arc_diagram(shape, d):
            raise AssertionError(f"surgery produced a non-basis diagram {d}")
        out[d] = out.get(d, 0) + c
    return tuple(sorted((d, c) for d, c in out.items() if c))


def middle_pairs(shape: Shape, a: ArcBasisDiagram) -> tuple:
    """The cup-cap pairs surgered when ``a`` is the lower factor."""
    return cb.cup_diagram(shape, a.cap).cups


def k_basis_product(shape: Shape, a, b, order=None) -> KElement:
    a, b = ArcBasisDiagram(*a), ArcBasisDiagram(*b)
    return KElement(shape, dict(_basis_product(shape, a, b,
                                               None if order is None else tuple(order))))


def k_multiply(a: KElement, b: KElement, order_fn=None) -> KElement:
    """Product a*b; ``a`` is stacked under ``b``.  ``order_fn(pairs)`` may
    return a permutation of the middle cups to surgery in."""
    a._check(b)
    shape = a.shape
    out: dict = {}
    for da, ca in a.terms.items():
        for db, cbb in b.terms.items():
            if da.cap != db.cup:
                continue
            order = None
            if order_fn is not None:
                order = tuple(order_fn(list(middle_pairs(shape, da))))
            for d, c in _basis_product(shape, da, db, order):
                out[d] = out.get(d, GaussInt()) + ca * cbb * c
    return KElement(shape, out)


def k_one(shape: Shape) -> KElement:
    return KElement(shape, {idempotent(lam): 1 for lam in cb.enum_partitions(shape)})


# ----------------------------------------------------------------------
# dilation

def dilate_diagram(shape: Shape, d: ArcBasisDiagram, k: int) -> ArcBasisDiagram:
    f = lambda p: cb.dilate_partition(shape, p, k)
    return ArcBasisDiagram(f(d.cup), f(d.wt), f(d.cap))


def dilate_k(a: KElement, k: int) -> KElement:
    big = cb.dilate_shape(a.shape)
    return KElement(big, {dilate_diagram(a.shape, d, k): c for d, c in a.terms.items()})
