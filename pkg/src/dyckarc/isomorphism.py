"""The isomorphism Psi from H_{m,n} to K_{m,n}, its verification, and the
dilation homomorphisms on both sides."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from . import combinatorics as cb
from .arc_algebra import (ArcBasisDiagram, KElement, dilate_k, k_basis,
                          k_basis_product, k_flip, k_multiply)
from .combinatorics import Shape
from .hecke_algebra import (DOWN_GEN, IDEM, UP_GEN, Generator, HBasisTriple,
                            HElement, canonical_word, down, generators,
                            h_basis, h_basis_product, h_degree, idem,
                            relation_instances, triple_of, up, word_product)
from .scalars import GaussInt, I, ipow

WORKERS_ENV = "DYCKARC_WORKERS"


def workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


# ----------------------------------------------------------------------
# Psi

def _diagram(t: HBasisTriple) -> ArcBasisDiagram:
    return ArcBasisDiagram(t.row, t.mid, t.col)


def _triple(d: ArcBasisDiagram) -> HBasisTriple:
    return HBasisTriple(d.wt, d.cup, d.cap)


def psi_scalar(shape: Shape, g: Generator) -> GaussInt:
    if g.kind == IDEM:
        return GaussInt(1)
    low = g.row if g.kind == UP_GEN else g.col
    return ipow(cb.sgn(shape, low, g.top))


def psi_generator(shape: Shape, g: Generator) -> KElement:
    """Idempotents go to idempotent diagrams; Up(mu,P) and Down(mu,P) go to
    i^sgn times the diagram with the same row, middle and column weights."""
    return KElement.basis(shape, _diagram(triple_of(g)), psi_scalar(shape, g))


@lru_cache(maxsize=None)
def _psi_basis(shape: Shape, t: HBasisTriple) -> KElement:
    word = canonical_word(shape, t)
    out = psi_generator(shape, word[0])
    for g in word[1:]:
        out = k_multiply(out, psi_generator(shape, g))
    return out


def psi_basis(shape: Shape, t) -> KElement:
    return _psi_basis(shape, HBasisTriple(*t))


def psi_element(a: HElement) -> KElement:
    out = KElement(a.shape)
    for t, c in a.terms.items():
        out = out + psi_basis(a.shape, t).scale(c)
    return out


def psi_word(shape: Shape, word) -> KElement:
    word = list(word)
    out = psi_generator(shape, word[0])
    for g in word[1:]:
        out = k_multiply(out, psi_generator(shape, g))
    return out


@dataclass
class TransitionMatrix:
    """Coefficients of Psi(triple) on the diagram basis."""

    shape: Shape
    entries: dict  # (HBasisTriple, ArcBasisDiagram) -> GaussInt
    rows: tuple
    cols: tuple

    def is_square(self) -> bool:
        return len(self.rows) == len(self.cols) and \
            {_diagram(t) for t in self.rows} == set(self.cols)

    def diagonal(self) -> dict:
        return {t: self.entries.get((t, _diagram(t)), GaussInt()) for t in self.rows}

    def triangularity_witnesses(self) -> list:
        """Entries that break unit-upper-triangularity for the order by middle weight."""
        bad = []
        for t in self.rows:
            d0 = _diagram(t)
            for (t2, d), c in self.entries.items():
                if t2 != t:
                    continue
                if d == d0:
                    if not c.is_unit():
                        bad.append((t, d, c))
                elif not (cb.contains(t.mid, d.wt) and d.wt != t.mid):
                    bad.append((t, d, c))
        return bad

    def is_unitriangular(self) -> bool:
        return self.is_square() and not self.triangularity_witnesses()


def transition_matrix(shape: Shape) -> TransitionMatrix:
    rows = h_basis(shape)
    entries = {}
    for t in rows:
        for d, c in psi_basis(shape, t).terms.items():
            entries[(t, d)] = c
    return TransitionMatrix(shape, entries, rows, k_basis(shape))


def psi_inverse(x: KElement) -> HElement:
    """Solve Psi(h) = x by back substitution, largest middle weight first."""
    shape = x.shape
    rest = KElement(shape, dict(x.terms))
    out: dict = {}
    while rest:
        d = max(rest.terms, key=lambda d: (sum(d.wt), d.wt, d.cup, d.cap))
        t = _triple(d)
        image = psi_basis(shape, t)
        lead = image.terms.get(d)
        if lead is None or not lead.is_unit():
            raise ArithmeticError(f"Psi is not unitriangular at {t}")
        c = rest.terms[d] * lead.inverse()
        out[t] = c
        rest = rest - image.scale(c)
    return HElement(shape, out)


# ----------------------------------------------------------------------
# verification

@dataclass
class IsoReport:
    shape: Shape
    relations: dict = field(default_factory=dict)
    relation_failures: list = field(default_factory=list)
    square: bool = True
    unitriangular: bool = True
    diagonal: dict = field(default_factory=dict)
    matrix_failures: list = field(default_factory=list)
    pairs_mode: str = "basis"
    pairs_checked: int = 0
    product_failures: list = field(default_factory=list)
    star_failures: list = field(default_factory=list)
    seconds: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not (self.relation_failures or self.matrix_failures or self.product_failures
                    or self.star_failures) and self.square and self.unitriangular

    def to_json(self) -> dict:
        return {
            "shape": [self.shape.m, self.shape.n],
            "ok": self.ok,
            "relations": self.relations,
            "relation_failures": self.relation_failures,
            "matrix": {"square": self.square, "unitriangular": self.unitriangular,
                       "diagonal": self.diagonal, "failures": self.matrix_failures},
            "products": {"mode": self.pairs_mode, "checked": self.pairs_checked,
                         "failures": self.product_failures},
            "star_failures": self.star_failures,
            "seconds": self.seconds,
        }

    def to_text(self) -> str:
        lines = [f"verify-iso shape {self.shape}: {'PASS' if self.ok else 'FAIL'}"]
        for name in sorted(self.relations):
            p, n = self.relations[name]
            lines.append(f"  relation {name}: {p}/{n} {'PASS' if p == n else 'FAIL'}")
        lines.append(f"  matrix square: {self.square}  unitriangular: {self.unitriangular}")
        lines.append("  diagonal: " + ", ".join(f"{k}:{v}" for k, v in sorted(self.diagonal.items())))
        lines.append(f"  products ({self.pairs_mode} pairs): {self.pairs_checked} checked, "
                     f"{len(self.product_failures)} failed")
        lines.append(f"  star compatibility failures: {len(self.star_failures)}")
        for f in (self.relation_failures + self.matrix_failures + self.product_failures
                  + self.star_failures)[:20]:
            lines.append(f"  witness: {f}")
        lines.append("  seconds: " + ", ".join(f"{k}={v:.2f}" for k, v in self.seconds.items()))
        return "\n".join(lines)


def _check_basis_pairs(args) -> list:
    shape, chunk = args
    bad = []
    for a, b in chunk:
        lhs = psi_element(h_basis_product(shape, a, b))
        rhs = k_multiply(psi_basis(shape, a), psi_basis(shape, b))
        if lhs != rhs:
            bad.append({"a": str(a), "b": str(b), "psi(ab)": str(lhs), "psi(a)psi(b)": str(rhs)})
    return bad


def _check_generator_pairs(args) -> list:
    shape, chunk = args
    bad = []
    for g1, g2 in chunk:
        lhs = psi_element(word_product(shape, (g1, g2)))
        rhs = k_multiply(psi_generator(shape, g1), psi_generator(shape, g2))
        if lhs != rhs:
            bad.append({"a": str(g1), "b": str(g2), "psi(ab)": str(lhs), "psi(a)psi(b)": str(rhs)})
    return bad


def _fan_out(fn, shape: Shape, items: list, n_workers: int) -> list:
    if n_workers <= 1 or len(items) < 64:
        return fn((shape, items))
    size = -(-len(items) // (4 * n_workers))
    chunks = [(shape, items[i:i + size]) for i in range(0, len(items), size)]
    out = []
    with ProcessPoolExecutor(n_workers) as ex:
        for part in ex.map(fn, chunks):
            out.extend(part)
    return out


def verify_iso(shape: Shape, pairs: str = "basis", n_workers: int | None = None) -> IsoReport:
    """Relations under Psi, the transition matrix, and transport of products.

    ``pairs`` is "basis" (all composable basis pairs), "generators" (all
    composable generator pairs) or "none".
    """
    n_workers = workers() if n_workers is None else n_workers
    rep = IsoReport(shape, pairs_mode=pairs)

    t0 = time.perf_counter()
    for inst in relation_instances(shape):
        lhs = psi_word(shape, inst.lhs)
        rhs = KElement(shape)
        for c, w in inst.rhs:
            rhs = rhs + psi_word(shape, w).scale(c)
        cnt = rep.relations.setdefault(inst.name, [0, 0])
        cnt[1] += 1
        if lhs == rhs:
            cnt[0] += 1
        else:
            rep.relation_failures.append({"identity": str(inst), "lhs": str(lhs), "rhs": str(rhs)})
    rep.seconds["relations"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    tm = transition_matrix(shape)
    rep.square = tm.is_square()
    wit = tm.triangularity_witnesses()
    rep.unitriangular = rep.square and not wit
    rep.matrix_failures = [{"triple": str(t), "diagram": str(d), "coeff": str(c)} for t, d, c in wit]
    diag: dict = {}
    for c in tm.diagonal().values():
        diag[str(c)] = diag.get(str(c), 0) + 1
    rep.diagonal = diag
    for t in tm.rows:
        if k_flip(psi_basis(shape, t)) != psi_element(HElement.basis(shape, t).star()):
            rep.star_failures.append({"triple": str(t)})
    rep.seconds["matrix"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if pairs == "basis":
        basis = h_basis(shape)
        items = [(a, b) for a in basis for b in basis if a.col == b.row]
        rep.product_failures = _fan_out(_check_basis_pairs, shape, items, n_workers)
    elif pairs == "generators":
        gens = generators(shape)
        items = [(a, b) for a in gens for b in gens if a.col == b.row]
        rep.product_failures = _fan_out(_check_generator_pairs, shape, items, n_workers)
    elif pairs != "none":
        raise ValueError(f"unknown pairs mode {pairs!r}")
    else:
        items = []
    rep.pairs_checked = len(items)
    rep.seconds["products"] = time.perf_counter() - t0
    return rep


# ----------------------------------------------------------------------
# dilation

def _check_k(shape: Shape, k: int):
    cb.check_k(shape, k)


def dilate_generator(shape: Shape, g: Generator, k: int,
                     rule: str = cb.DEFAULT_SPOT_FORK_RULE) -> tuple:
    """(scalar, generator) with dilate_h(g) = scalar * generator.

    The scalar is 1 unless k is a content of P; then it is -i when the tile of
    content k in P_sf is a spot and i when it is a fork.  Down letters get the
    same scalar as their dual Up letter.
    """
    _check_k(shape, k)
    big = cb.dilate_shape(shape)
    if g.kind == IDEM:
        return GaussInt(1), idem(cb.dilate_partition(shape, g.row, k))
    mu, P = g.top, g.path
    scalar = GaussInt(1)
    if k in P:
        roles = {cb.content(t): r for t, r in cb.sf_representative(shape, mu, P, rule)}
        scalar = -I if roles[k] == "spot" else I
    mu2, P2 = cb.dilate_partition(shape, mu, k), cb.dilate_path(P, k)
    g2 = (up if g.kind == UP_GEN else down)(big, mu2, P2)
    return scalar, g2


def dilate_h(shape: Shape, g: Generator, k: int, rule: str = cb.DEFAULT_SPOT_FORK_RULE) -> HElement:
    s, g2 = dilate_generator(shape, g, k, rule)
    return HElement.gen(cb.dilate_shape(shape), g2, s)


@lru_cache(maxsize=None)
def _dilate_h_basis(shape: Shape, t: HBasisTriple, k: int, rule: str) -> HElement:
    big = cb.dilate_shape(shape)
    scalar, word = GaussInt(1), []
    for g in canonical_word(shape, t):
        s, g2 = dilate_generator(shape, g, k, rule)
        scalar = scalar * s
        word.append(g2)
    return word_product(big, word).scale(scalar)


def dilate_h_element(a: HElement, k: int, rule: str = cb.DEFAULT_SPOT_FORK_RULE) -> HElement:
    """Extend dilate_h multiplicatively along canonical words."""
    out = HElement(cb.dilate_shape(a.shape))
    for t, c in a.terms.items():
        out = out + _dilate_h_basis(a.shape, t, k, rule).scale(c)
    return out


def transported_dilation(shape: Shape, k: int) -> dict:
    """Psi^-1 o dilate_k o Psi on every generator.

    Each image is checked to be a unit times a single generator."""
    _check_k(shape, k)
    big = cb.dilate_shape(shape)
    targets = {triple_of(g): g for g in generators(big)}
    out = {}
    for g in generators(shape):
        image = psi_inverse(dilate_k(psi_generator(shape, g), k))
        if len(image.terms) != 1:
            raise ArithmeticError(f"transported image of {g} is not a single term: {image}")
        (t, c), = image.terms.items()
        if t not in targets or not c.is_unit():
            raise ArithmeticError(f"transported image of {g} is not a unit times a generator: {image}")
        out[g] = image
    return out


@dataclass
class DilationReport:
    shape: Shape
    k: int
    rule: str
    scalars: dict       # generator -> (dilate_h scalar, transported scalar)
    k_homomorphism_failures: list
    h_homomorphism_failures: list
    transported_homomorphism_failures: list
    gauge_consistent: bool
    pairs_checked: int
    k_pairs_checked: int = 0

    @property
    def agree(self) -> bool:
        return all(a == b for a, b in self.scalars.values())

    @property
    def ok(self) -> bool:
        return not (self.k_homomorphism_failures or self.h_homomorphism_failures
                    or self.transported_homomorphism_failures) and self.gauge_consistent

    def to_json(self) -> dict:
        return {
            "shape": [self.shape.m, self.shape.n], "k": self.k, "rule": self.rule, "ok": self.ok,
            "pairs_checked": self.pairs_checked, "k_pairs_checked": self.k_pairs_checked,
            "scalars": [{"generator": str(g), "dilate_h": str(a), "transported": str(b)}
                        for g, (a, b) in sorted(self.scalars.items(), key=lambda x: str(x[0]))],
            "agree": self.agree, "gauge_consistent": self.gauge_consistent,
            "k_homomorphism_failures": self.k_homomorphism_failures,
            "h_homomorphism_failures": self.h_homomorphism_failures,
            "transported_homomorphism_failures": self.transported_homomorphism_failures,
        }

    def to_text(self) -> str:
        lines = [f"dilate shape {self.shape} k={self.k} rule={self.rule}: {'PASS' if self.ok else 'FAIL'}"]
        lines.append(f"  basis pairs checked: H {self.pairs_checked}, K {self.k_pairs_checked}")
        lines.append(f"  dilate_k homomorphism failures: {len(self.k_homomorphism_failures)}")
        lines.append(f"  dilate_h homomorphism failures: {len(self.h_homomorphism_failures)}")
        lines.append(f"  transported homomorphism failures: {len(self.transported_homomorphism_failures)}")
        lines.append(f"  scalars agree: {self.agree}  ratio gauge consistent: {self.gauge_consistent}")
        for g, (a, b) in sorted(self.scalars.items(), key=lambda x: str(x[0])):
            if g.kind != IDEM:
                lines.append(f"  {g}: dilate_h {a}  transported {b}")
        return "\n".join(lines)


def _extend(shape: Shape, gen_map, t: HBasisTriple) -> HElement:
    word = canonical_word(shape, t)
    out = gen_map[word[0]]
    for g in word[1:]:
        out = out * gen_map[g]
    return out


def _homomorphism_failures(shape: Shape, image) -> tuple:
    """Basis pairs a, b with image(ab) != image(a) image(b)."""
    basis = h_basis(shape)
    bad, n = [], 0
    for a in basis:
        for b in basis:
            if a.col != b.row:
                continue
            n += 1
            ab = h_basis_product(shape, a, b)
            lhs = None
            for t, c in ab.terms.items():
                v = image(t).scale(c)
                lhs = v if lhs is None else lhs + v
            rhs = image(a) * image(b)
            if lhs is None:
                lhs = rhs - rhs
            if lhs != rhs:
                bad.append({"a": str(a), "b": str(b)})
    return bad, n


def _gauge_consistent(shape: Shape, ratio: dict) -> bool:
    """The ratio transported/dilate_h is i times a +-1 valued coboundary:
    ratio(Up(mu,P)) = ratio(Down(mu,P)) = i * c(mu) * c(mu-P) for signs c."""
    sign: dict = {}
    adj: dict = {}
    for g, r in ratio.items():
        if g.kind == IDEM:
            if r != 1:
                return False
            continue
        e = r * (-I)
        if e not in (GaussInt(1), GaussInt(-1)):
            return False
        adj.setdefault(g.row, []).append((g.col, e.re))
        adj.setdefault(g.col, []).append((g.row, e.re))
    for start in cb.enum_partitions(shape):
        if start in sign:
            continue
        sign[start] = 1
        stack = [start]
        while stack:
            v = stack.pop()
            for w, e in adj.get(v, []):
                want = sign[v] * e
                if w not in sign:
                    sign[w] = want
                    stack.append(w)
                elif sign[w] != want:
                    return False
    return True


def dilation_report(shape: Shape, k: int, rule: str = cb.DEFAULT_SPOT_FORK_RULE) -> DilationReport:
    """Compare dilate_h with the transported dilation and check that
    dilate_k, dilate_h and the transported map are homomorphisms."""
    _check_k(shape, k)
    big = cb.dilate_shape(shape)
    transported = transported_dilation(shape, k)
    scalars, ratio = {}, {}
    for g, image in transported.items():
        (t, c), = image.terms.items()
        s, g2 = dilate_generator(shape, g, k, rule)
        if triple_of(g2) != t:
            raise ArithmeticError(f"dilate_h and transported dilation disagree on the target of {g}")
        scalars[g] = (s, c)
        ratio[g] = c * s.inverse()

    k_bad, n = _homomorphism_failures(
        shape, lambda t: dilate_k(psi_basis(shape, t), k))
    h_bad, _ = _homomorphism_failures(
        shape, lambda t: _dilate_h_basis(shape, t, k, rule))
    tmap = {g: transported[g] for g in transported}
    tr_bad, _ = _homomorphism_failures(shape, lambda t: _extend(shape, tmap, t))
    # the K-side check above goes through Psi; also check the K basis directly
    kb = k_basis(shape)
    for a in kb:
        for b in kb:
            lhs = dilate_k(k_basis_product(shape, a, b), k)
            rhs = k_basis_product(big, *_dilated_pair(shape, a, b, k))
            if lhs != rhs:
                k_bad.append({"a": str(a), "b": str(b)})
    return DilationReport(shape, k, rule, scalars, k_bad, h_bad, tr_bad,
                          _gauge_consistent(shape, ratio), n, len(kb) ** 2)


def _dilated_pair(shape: Shape, a, b, k: int) -> tuple:
    f = lambda d: ArcBasisDiagram(*(cb.dilate_partition(shape, p, k) for p in d))
    return f(a), f(b)


def clear_caches():
    _psi_basis.cache_clear()
    _dilate_h_basis.cache_clear()
