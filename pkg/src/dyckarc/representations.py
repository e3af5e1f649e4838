"""Standard modules Delta(lambda) of H_{m,n}: graded bases, socles and the
submodule lattice (Alperin diagram)."""

from __future__ import annotations

from dataclasses import dataclass

from . import combinatorics as cb
from .combinatorics import DOWN, UP, Partition, Shape
from .hecke_algebra import (IDEM, Generator, HBasisTriple, generators,
                            mul_by_generator)
from .scalars import GaussInt, LaurentPoly


@dataclass(frozen=True)
class StandardModule:
    shape: Shape
    lam: Partition
    grades: tuple  # grades[k] = sorted partitions mu with degree(lam, mu) = k

    @property
    def basis(self) -> tuple:
        return tuple(mu for layer in self.grades for mu in layer)

    def grade_of(self, mu: Partition) -> int:
        for k, layer in enumerate(self.grades):
            if mu in layer:
                return k
        raise KeyError(mu)

    def dimension(self) -> int:
        return sum(len(layer) for layer in self.grades)

    def to_json(self) -> dict:
        return {"shape": [self.shape.m, self.shape.n], "lambda": list(self.lam),
                "grades": [[list(mu) for mu in layer] for layer in self.grades]}


def dp_set(shape: Shape, lam: Partition) -> tuple:
    """DP_k(lam) for k = 0, 1, ..., top grade."""
    cb.check_partition(shape, lam)
    layers: dict = {}
    for mu in cb.enum_partitions(shape):
        if cb.contains(mu, lam):
            d = cb.degree(shape, lam, mu)
            if d is not None:
                layers.setdefault(d, []).append(mu)
    return tuple(tuple(sorted(layers.get(k, ()))) for k in range(max(layers) + 1))


def standard_module(shape: Shape, lam: Partition) -> StandardModule:
    return StandardModule(shape, lam, dp_set(shape, lam))


def socle_weight(shape: Shape, lam: Partition) -> Partition:
    """Top-grade element of DP(lam), built from the weight of lam.

    Match each DOWN with the next unmatched UP to its right (bracket
    matching, DOWN opens) and swap the labels of every matched pair.  The
    pairs are exactly the cups of the top-grade weight, read anti-clockwise.
    """
    w = list(cb.partition_to_weight(shape, lam))
    stack = []
    for p, lab in enumerate(w):
        if lab == DOWN:
            stack.append(p)
        elif stack:
            q = stack.pop()
            w[q], w[p] = UP, DOWN
    return cb.weight_to_partition(shape, "".join(w))


@dataclass(frozen=True)
class LatticeGraph:
    module: StandardModule
    edges: tuple  # (mu, nu) with grade(nu) = grade(mu) + 1

    def sources(self) -> list:
        targets = {b for _, b in self.edges}
        return [mu for mu in self.module.basis if mu not in targets]

    def sinks(self) -> list:
        starts = {a for a, _ in self.edges}
        return [mu for mu in self.module.basis if mu not in starts]

    def to_json(self) -> dict:
        out = self.module.to_json()
        out["edges"] = [[list(a), list(b)] for a, b in self.edges]
        return out


def _one_path_apart(shape: Shape, a: Partition, b: Partition) -> bool:
    lo, hi = (a, b) if cb.contains(b, a) else (b, a)
    return cb.contains(hi, lo) and cb.degree(shape, lo, hi) == 1


def alperin_edges(shape: Shape, lam: Partition) -> LatticeGraph:
    """Edges mu -> nu between consecutive grades with nu = mu +- P."""
    mod = standard_module(shape, lam)
    edges = []
    for k in range(len(mod.grades) - 1):
        for mu in mod.grades[k]:
            for nu in mod.grades[k + 1]:
                if _one_path_apart(shape, mu, nu):
                    edges.append((mu, nu))
    return LatticeGraph(mod, tuple(edges))


def module_action(shape: Shape, lam: Partition, g: Generator, mu: Partition) -> dict:
    """g . u_mu in Delta(lam) as {nu: coefficient}.

    u_mu is the image of the triple (lam; mu, lam).  Left multiplication is
    computed as (u_mu^* g^*)^*, and terms with middle weight below lam vanish
    in the cell quotient.
    """
    if g.col != mu:
        return {}
    t = HBasisTriple(lam, lam, mu)  # star of (lam; mu, lam)
    out = {}
    for t2, c in mul_by_generator(shape, t, g.star()).terms.items():
        if t2.mid == lam and t2.row == lam:
            out[t2.col] = out.get(t2.col, GaussInt()) + c
    return {nu: c for nu, c in out.items() if c}


def action_edges(shape: Shape, lam: Partition) -> tuple:
    """Recompute the lattice from the action: mu -> nu whenever a degree one
    generator carries u_mu to a unit multiple of u_nu one grade up.

    Returns (edges, anomalies) where anomalies lists coefficients between
    consecutive grades that are neither zero nor units."""
    mod = standard_module(shape, lam)
    grade = {mu: k for k, layer in enumerate(mod.grades) for mu in layer}
    edges, anomalies = set(), []
    for g in generators(shape):
        if g.kind == IDEM or g.col not in grade:
            continue
        for nu, c in module_action(shape, lam, g, g.col).items():
            if grade.get(nu) != grade[g.col] + 1:
                continue
            if c.is_unit():
                edges.add((g.col, nu))
            else:
                anomalies.append((g, nu, c))
    return tuple(sorted(edges, key=lambda e: (grade[e[0]], e))), anomalies


def graded_decomposition(shape: Shape, lam: Partition) -> dict:
    """mu -> q^degree(lam, mu) over DP(lam)."""
    return {mu: LaurentPoly.monomial(k)
            for k, layer in enumerate(dp_set(shape, lam)) for mu in layer}


def lattice_dot(shape: Shape, lam: Partition) -> str:
    graph = alperin_edges(shape, lam)
    name = lambda p: '"(' + cb.format_partition(p) + ')"'
    lines = [f"digraph Delta {{", "  rankdir=TB;"]
    for k, layer in enumerate(graph.module.grades):
        lines.append(f"  {{ rank=same; " + " ".join(name(mu) + ";" for mu in layer) + " }")
    for a, b in graph.edges:
        lines.append(f"  {name(a)} -> {name(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
