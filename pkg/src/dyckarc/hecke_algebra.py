"""The basic Hecke-category algebra H_{m,n} given by its Dyck presentation:
the path algebra of the Dyck quiver modulo the idempotent, self-dual,
commuting, non-commuting and adjacent relations.

Notation.  ``Up(mu, P)`` is the degree one generator D^{mu-P}_{mu}, an element
of 1_{mu-P} H 1_{mu}; ``Down(mu, P)`` is its dual in 1_{mu} H 1_{mu-P}.  A basis
triple ``(mid; row, col)`` stands for D^{row}_{mid} D^{mid}_{col} and lies in
1_{row} H 1_{col}.  It is the product of its canonical word: a run of Down
letters from ``row`` to ``mid`` followed by a run of Up letters to ``col``.
"""

from __future__ import annotations

import json
import sys
from functools import lru_cache
from typing import NamedTuple, Optional

from . import combinatorics as cb
from .combinatorics import DyckPath, Partition, Shape
from .scalars import GaussInt

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

IDEM, UP_GEN, DOWN_GEN = "idem", "up", "down"
PEEL_POLICIES = ("smallest", "largest")


class Generator(NamedTuple):
    kind: str
    row: Partition
    col: Partition
    path: Optional[DyckPath] = None

    @property
    def top(self) -> Partition:
        """The larger of row and col (mu in Up(mu, P) / Down(mu, P))."""
        return self.row if self.kind == DOWN_GEN else self.col

    def star(self) -> Generator:
        kind = {IDEM: IDEM, UP_GEN: DOWN_GEN, DOWN_GEN: UP_GEN}[self.kind]
        return Generator(kind, self.col, self.row, self.path)

    def degree(self) -> int:
        return 0 if self.kind == IDEM else 1

    def __str__(self):
        f = lambda p: "(" + cb.format_partition(p) + ")"
        if self.kind == IDEM:
            return f"1_{f(self.row)}"
        name = "Up" if self.kind == UP_GEN else "Down"
        return f"{name}({f(self.top)},{self.path})"


def idem(mu: Partition) -> Generator:
    return Generator(IDEM, mu, mu)


def up(shape: Shape, mu: Partition, P: DyckPath) -> Generator:
    return Generator(UP_GEN, cb.remove_path(shape, mu, P), mu, DyckPath(*P))


def down(shape: Shape, mu: Partition, P: DyckPath) -> Generator:
    return Generator(DOWN_GEN, mu, cb.remove_path(shape, mu, P), DyckPath(*P))


def generators(shape: Shape) -> tuple:
    out = [idem(mu) for mu in cb.enum_partitions(shape)]
    for mu in cb.enum_partitions(shape):
        for P in cb.dyck_rem(shape, mu):
            out.append(up(shape, mu, P))
            out.append(down(shape, mu, P))
    return tuple(out)


class HBasisTriple(NamedTuple):
    mid: Partition
    row: Partition
    col: Partition

    def star(self) -> HBasisTriple:
        return HBasisTriple(self.mid, self.col, self.row)

    def __str__(self):
        f = lambda p: "(" + cb.format_partition(p) + ")"
        return f"[{f(self.mid)};{f(self.row)},{f(self.col)}]"


def is_h_triple(shape: Shape, t: HBasisTriple) -> bool:
    return cb.is_dyck_pair(shape, t.mid, t.row) and cb.is_dyck_pair(shape, t.mid, t.col)


def h_degree(shape: Shape, t: HBasisTriple) -> int:
    return cb.degree(shape, t.mid, t.row) + cb.degree(shape, t.mid, t.col)


def triple_of(g: Generator) -> HBasisTriple:
    if g.kind == IDEM:
        return HBasisTriple(g.row, g.row, g.row)
    if g.kind == UP_GEN:
        return HBasisTriple(g.row, g.row, g.col)
    return HBasisTriple(g.col, g.row, g.col)


@lru_cache(maxsize=None)
def h_basis(shape: Shape) -> tuple:
    idx = {p: i for i, p in enumerate(cb.enum_partitions(shape))}
    out = []
    for mid in cb.enum_partitions(shape):
        partners = [mu for mu in cb.enum_partitions(shape) if cb.is_dyck_pair(shape, mid, mu)]
        for row in partners:
            for col in partners:
                out.append(HBasisTriple(mid, row, col))
    out.sort(key=lambda t: (idx[t.mid], idx[t.row], idx[t.col]))
    return tuple(out)


# ----------------------------------------------------------------------
# canonical words

def _pick(paths: list, policy: str) -> DyckPath:
    if policy == "smallest":
        return paths[0]
    if policy == "largest":
        return paths[-1]
    raise ValueError(f"unknown peel policy {policy!r}")


@lru_cache(maxsize=None)
def up_word(shape: Shape, x: Partition, nu: Partition, policy: str = "smallest") -> tuple:
    """Up letters whose product is D^{x}_{nu}: peel an uncovered tiling path
    of nu off as the last letter, and repeat."""
    word = []
    cur = nu
    while cur != x:
        tiling = cb.dyck_tiling(shape, x, cur)
        if tiling is None:
            raise ValueError("not a Dyck pair")
        P = _pick(cb.uncovered(tiling), policy)
        word.append(up(shape, cur, P))
        cur = cb.remove_path(shape, cur, P)
    return tuple(reversed(word))


def down_word(shape: Shape, x: Partition, row: Partition, policy: str = "smallest") -> tuple:
    """Down letters whose product is D^{row}_{x}."""
    return tuple(g.star() for g in reversed(up_word(shape, x, row, policy)))


def canonical_word(shape: Shape, t: HBasisTriple) -> tuple:
    t = HBasisTriple(*t)
    if not is_h_triple(shape, t):
        raise ValueError(f"{t} is not a basis triple")
    if t.mid == t.row == t.col:
        return (idem(t.mid),)
    return down_word(shape, t.mid, t.row) + up_word(shape, t.mid, t.col)


# ----------------------------------------------------------------------
# products of two generators

def _add(acc: dict, t, c):
    v = acc.get(t, 0) + c
    if v:
        acc[t] = v
    else:
        acc.pop(t, None)


def _checked(shape: Shape, terms: dict) -> dict:
    for t in terms:
        if not is_h_triple(shape, t):
            raise AssertionError(f"relation produced a non-basis triple {t}")
    return terms


def self_dual_terms(shape: Shape, mu: Partition, P: DyckPath) -> dict:
    """Right side of the self-dual relation for Up(mu,P) Down(mu,P)."""
    lam = cb.remove_path(shape, mu, P)
    sign = (-1) ** (P.breadth - 1)
    out: dict = {}
    for Q in cb.dyck_rem(shape, lam):
        if cb.covers(Q, P):
            c = 2 * (-1) ** Q.breadth
        elif cb.adjacent(Q, P):
            c = (-1) ** Q.breadth
        else:
            continue
        low = cb.remove_path(shape, lam, Q)
        _add(out, HBasisTriple(low, lam, lam), sign * c)
    return out


def _up_up(shape: Shape, g1: Generator, g2: Generator) -> dict:
    # g1 = Up(nu, C), g2 = Up(mu, P) with nu = mu - P
    C, P, mu = g1.path, g2.path, g2.col
    lo = g1.row
    tiling = cb.dyck_tiling(shape, lo, mu)
    if tiling is not None and sorted(tiling) == sorted((C, P)):
        return {HBasisTriple(lo, lo, mu): 1}
    if cb.adjacent(C, P):
        R = cb.envelope(shape, mu, P, C)
        if R is None:
            return {}
        sign = (-1) ** (R.breadth - C.breadth)
        return _checked(shape, {HBasisTriple(cb.remove_path(shape, mu, R), lo, mu): sign})
    raise AssertionError(f"unexpected ascending pair {g1} {g2}")


def _peak(shape: Shape, g1: Generator, g2: Generator) -> dict:
    # g1 = Up(mu, A), g2 = Down(mu, B)
    mu, A, B = g1.col, g1.path, g2.path
    if A == B:
        return self_dual_terms(shape, mu, A)
    if cb.commute(shape, mu, A, B):
        low = cb.remove_path(shape, g1.row, B)
        return _checked(shape, {HBasisTriple(low, g1.row, g2.col): 1})
    if cb.covers(A, B):
        return _checked(shape, {HBasisTriple(g1.row, g1.row, g2.col): 1})
    if cb.covers(B, A):
        return _checked(shape, {HBasisTriple(g2.col, g1.row, g2.col): 1})
    raise AssertionError(f"removable paths {A}, {B} neither nested nor commuting")


@lru_cache(maxsize=None)
def _gen_pair(shape: Shape, g1: Generator, g2: Generator) -> tuple:
    if g1.col != g2.row:
        return ()
    if g1.kind == IDEM:
        out = {triple_of(g2): 1}
    elif g2.kind == IDEM:
        out = {triple_of(g1): 1}
    elif g1.kind == DOWN_GEN and g2.kind == UP_GEN:
        out = {HBasisTriple(g1.col, g1.row, g2.col): 1}
    elif g1.kind == UP_GEN and g2.kind == DOWN_GEN:
        out = _peak(shape, g1, g2)
    elif g1.kind == UP_GEN:
        out = _up_up(shape, g1, g2)
    else:
        out = {t.star(): c for t, c in _up_up(shape, g2.star(), g1.star()).items()}
    return tuple(sorted(out.items()))


def gen_pair_product(shape: Shape, g1: Generator, g2: Generator) -> HElement:
    """g1 * g2 for two generators, rewritten into basis triples."""
    return HElement(shape, dict(_gen_pair(shape, g1, g2)))


# ----------------------------------------------------------------------
# basis triple times generator

def _fold(shape: Shape, terms: dict, letters, policy: str) -> dict:
    for g in letters:
        nxt: dict = {}
        for t, c in terms.items():
            for t2, c2 in _mul_gen(shape, t, g, policy):
                _add(nxt, t2, c * c2)
        terms = nxt
        if not terms:
            break
    return terms


@lru_cache(maxsize=None)
def _mul_gen(shape: Shape, t: HBasisTriple, g: Generator, policy: str) -> tuple:
    x, row, col = t
    if g.row != col:
        return ()
    if g.kind == IDEM:
        return ((t, 1),)
    if g.kind == UP_GEN:
        # P stays uncovered: the Up run simply grows by one letter
        new = cb.dyck_tiling(shape, x, g.col)
        if new is not None and len(new) == cb.degree(shape, x, col) + 1 \
                and g.path in cb.uncovered(new):
            return ((HBasisTriple(x, row, g.col), 1),)
    elif x == col:
        # P covers no other path: the Down run grows by one letter
        new = cb.dyck_tiling(shape, g.col, row)
        if new is not None and len(new) == cb.degree(shape, x, row) + 1 \
                and not any(cb.covers(g.path, R) for R in new):
            return ((HBasisTriple(g.col, row, g.col), 1),)
    if x != col:
        # D^x_col = D^x_{col-Q} Up(col, Q) for an uncovered tiling path Q
        cands = cb.uncovered(cb.dyck_tiling(shape, x, col))
        head = lambda Q: HBasisTriple(x, row, cb.remove_path(shape, col, Q))
        if g.kind == DOWN_GEN:
            Q = _pick(cands, policy)
            return _rewrite(shape, head(Q), _gen_pair(shape, up(shape, col, Q), g), policy)
        P, mu = g.path, g.col
        adj = [Q for Q in cands if cb.adjacent(Q, P)]
        if adj:
            Q = _pick(adj, policy)
            return _rewrite(shape, head(Q), _gen_pair(shape, up(shape, col, Q), g), policy)
        # otherwise move P below a path it does not cover (commuting relation)
        swap = [Q for Q in cands if not cb.covers(P, Q)]
        if not swap:
            raise AssertionError(f"no rewrite for {t} * {g}")
        Q = _pick(swap, policy)
        if not cb.commute(shape, mu, Q, P):
            raise AssertionError(f"{Q} and {P} do not commute in {mu}")
        word = (up(shape, cb.remove_path(shape, mu, Q), P), up(shape, mu, Q))
        return tuple(sorted(_fold(shape, {head(Q): 1}, word, policy).items()))
    if g.kind == UP_GEN:
        return ((HBasisTriple(x, row, g.col), 1),)
    if row == x:
        return ((triple_of(g), 1),)
    # D^row_x = D^row_{x+Q} Down(x+Q, Q) for a tiling path Q covering no other
    P = g.path
    tiling = cb.dyck_tiling(shape, x, row)
    inner = [Q for Q in tiling if not any(cb.covers(Q, R) for R in tiling)]
    head = lambda Q: HBasisTriple(cb.add_path(shape, x, Q), row, cb.add_path(shape, x, Q))
    adj = [Q for Q in inner if cb.adjacent(Q, P)]
    if adj:
        Q = _pick(adj, policy)
        big = cb.add_path(shape, x, Q)
        return _rewrite(shape, head(Q), _gen_pair(shape, down(shape, big, Q), g), policy)
    swap = [Q for Q in inner if not cb.covers(Q, P)]
    if not swap:
        raise AssertionError(f"no rewrite for {t} * {g}")
    Q = _pick(swap, policy)
    big = cb.add_path(shape, x, Q)
    if not cb.commute(shape, big, Q, P):
        raise AssertionError(f"{Q} and {P} do not commute in {big}")
    word = (down(shape, big, P), down(shape, cb.remove_path(shape, big, P), Q))
    return tuple(sorted(_fold(shape, {head(Q): 1}, word, policy).items()))


def _rewrite(shape: Shape, head: HBasisTriple, pair, policy: str) -> tuple:
    """head times each basis triple of a rewritten two-letter product."""
    out: dict = {}
    for (mid2, r2, c2), c in pair:
        terms = _fold(shape, {head: c}, down_word(shape, mid2, r2, policy), policy)
        terms = _fold(shape, terms, up_word(shape, mid2, c2, policy), policy)
        for t2, v in terms.items():
            _add(out, t2, v)
    return tuple(sorted(out.items()))


def mul_by_generator(shape: Shape, t: HBasisTriple, g: Generator,
                     policy: str = "smallest") -> HElement:
    return HElement(shape, dict(_mul_gen(shape, HBasisTriple(*t), g, policy)))


@lru_cache(maxsize=None)
def _basis_product(shape: Shape, a: HBasisTriple, b: HBasisTriple, policy: str) -> tuple:
    if a.col != b.row:
        return ()
    terms = _fold(shape, {a: 1}, canonical_word(shape, b), policy)
    return tuple(sorted(terms.items()))


def h_basis_product(shape: Shape, a, b, policy: str = "smallest") -> HElement:
    return HElement(shape, dict(_basis_product(shape, HBasisTriple(*a), HBasisTriple(*b), policy)))


# ----------------------------------------------------------------------
# elements

class HElement:
    """Finite GaussInt combination of basis triples of one shape."""

    __slots__ = ("shape", "terms")

    def __init__(self, shape: Shape, terms=None):
        self.shape = shape
        t = {}
        for k, c in dict(terms or {}).items():
            c = GaussInt.coerce(c)
            if c:
                t[HBasisTriple(*k)] = c
        self.terms = t

    @classmethod
    def basis(cls, shape: Shape, t, coeff=1) -> HElement:
        return cls(shape, {HBasisTriple(*t): coeff})

    @classmethod
    def gen(cls, shape: Shape, g: Generator, coeff=1) -> HElement:
        return cls(shape, {triple_of(g): coeff})

    def _check(self, other: HElement):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch ({self.shape}) vs ({other.shape})")

    def __add__(self, other: HElement) -> HElement:
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, GaussInt()) + c
        return HElement(self.shape, out)

    def __neg__(self):
        return HElement(self.shape, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> HElement:
        c = GaussInt.coerce(c)
        return HElement(self.shape, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: HElement) -> HElement:
        return h_multiply(self, other)

    def star(self) -> HElement:
        return HElement(self.shape, {k.star(): c for k, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, HElement):
            return NotImplemented
        return self.shape == other.shape and self.terms == other.terms

    def __hash__(self):
        return hash((self.shape, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self) -> list:
        idx = {p: i for i, p in enumerate(cb.enum_partitions(self.shape))}
        return sorted(self.terms.items(),
                      key=lambda kv: (idx[kv[0].mid], idx[kv[0].row], idx[kv[0].col]))

    def degrees(self) -> set:
        return {h_degree(self.shape, t) for t in self.terms}

    def __repr__(self):
        return f"HElement({self.shape}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{t}" for t, c in self.sorted_terms())

    def to_json(self) -> dict:
        return {
            "shape": [self.shape.m, self.shape.n],
            "terms": [{"re": c.re, "im": c.im, "mid": list(t.mid), "row": list(t.row),
                       "col": list(t.col)} for t, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data) -> HElement:
        if isinstance(data, str):
            data = json.loads(data)
        shape = Shape(*data["shape"])
        terms: dict = {}
        for t in data["terms"]:
            k = HBasisTriple(tuple(t["mid"]), tuple(t["row"]), tuple(t["col"]))
            terms[k] = terms.get(k, GaussInt()) + GaussInt(t["re"], t["im"])
        return cls(shape, terms)


def h_multiply(a: HElement, b: HElement, policy: str = "smallest") -> HElement:
    a._check(b)
    out: dict = {}
    for ta, ca in a.terms.items():
        for tb, cbb in b.terms.items():
            for t, c in _basis_product(a.shape, ta, tb, policy):
                out[t] = out.get(t, GaussInt()) + ca * cbb * c
    return HElement(a.shape, out)


def word_product(shape: Shape, word, policy: str = "smallest") -> HElement:
    """Product of a sequence of generators, reduced to the basis."""
    word = list(word)
    if not word:
        raise ValueError("empty word")
    terms = {triple_of(word[0]): 1}
    return HElement(shape, _fold(shape, terms, word[1:], policy))


def h_one(shape: Shape) -> HElement:
    return HElement(shape, {HBasisTriple(mu, mu, mu): 1 for mu in cb.enum_partitions(shape)})


def clear_caches():
    for f in (_gen_pair, _mul_gen, _basis_product, up_word):
        f.cache_clear()


# ----------------------------------------------------------------------
# relations as word identities

class RelationInstance(NamedTuple):
    name: str
    lhs: tuple
    rhs: tuple  # ((coeff, word), ...)

    def __str__(self):
        w = lambda word: " ".join(str(g) for g in word)
        if not self.rhs:
            right = "0"
        else:
            right = " + ".join(f"({c})*{w(word)}" for c, word in self.rhs)
        return f"[{self.name}] {w(self.lhs)} = {right}"


def _kind_of_pair(shape: Shape, g1: Generator, g2: Generator) -> str:
    if g1.kind == IDEM or g2.kind == IDEM:
        return "idempotent"
    if g1.kind == UP_GEN and g2.kind == DOWN_GEN:
        if g1.path == g2.path:
            return "self-dual"
        return "commuting" if cb.commute(shape, g1.col, g1.path, g2.path) else "non-commuting"
    kind = cb.classify_pair(g1.path, g2.path)
    if kind is cb.PairKind.ADJACENT:
        return "adjacent"
    return "commuting" if kind is cb.PairKind.DISTANT else "non-commuting"


def relation_instances(shape: Shape) -> list:
    """Every two-letter identity of the presentation at this shape.

    Valleys Down*Up and two-letter canonical words are basis elements, not
    relations, and are skipped.
    """
    gens = generators(shape)
    out = []
    for g in gens:
        if g.kind != IDEM:
            out.append(RelationInstance("idempotent", (idem(g.row), g), ((1, (g,)),)))
            out.append(RelationInstance("idempotent", (g, idem(g.col)), ((1, (g,)),)))
    for g1 in gens:
        if g1.kind == IDEM:
            continue
        for g2 in gens:
            if g2.kind == IDEM or g1.col != g2.row:
                continue
            if g1.kind == DOWN_GEN and g2.kind == UP_GEN:
                continue
            res = _gen_pair(shape, g1, g2)
            if len(res) == 1 and res[0][1] == 1 and canonical_word(shape, res[0][0]) == (g1, g2):
                continue
            rhs = tuple((c, canonical_word(shape, t)) for t, c in res)
            out.append(RelationInstance(_kind_of_pair(shape, g1, g2), (g1, g2), rhs))
    return out


def d_gen(shape: Shape, a: Partition, b: Partition) -> Generator:
    """The quiver arrow d^a_b between partitions differing by one Dyck path."""
    if a == b:
        return idem(a)
    if cb.contains(a, b):
        lo, hi, make = b, a, down
    else:
        lo, hi, make = a, b, up
    t = cb.dyck_tiling(shape, lo, hi)
    if t is None or len(t) != 1:
        raise ValueError(f"{cb.format_partition(a)} and {cb.format_partition(b)} are not joined by an arrow")
    return make(shape, hi, t[0])


def _pw(shape: Shape, *parts) -> tuple:
    """Word d^{p0}_{p1} d^{p1}_{p2} ... through the listed partitions."""
    return tuple(d_gen(shape, a, b) for a, b in zip(parts, parts[1:]))


def worked_examples(shape: Shape) -> list:
    """Literal transcriptions of the quiver presentations of H_{2,2} and
    H_{n,1} (the latter with its unsigned loop relation)."""
    out = []
    P = lambda s: cb.parse_partition(s)
    if shape == Shape(2, 2):
        e, one, two, oo, to, tt = (P(s) for s in ("", "1", "2", "1,1", "2,1", "2,2"))
        pairs = [
            ("2x2 zero", _pw(shape, e, one, two), ()),
            ("2x2 zero", _pw(shape, e, one, oo), ()),
            ("2x2 equal", _pw(shape, one, two, to), ((1, _pw(shape, one, tt, to)),)),
            ("2x2 equal", _pw(shape, one, two, to), ((1, _pw(shape, one, oo, to)),)),
        ]
        out += pairs
        out += [(n + " dual", tuple(g.star() for g in reversed(l)),
                 tuple((c, tuple(g.star() for g in reversed(w))) for c, w in r))
                for n, l, r in pairs]
        for lam in (two, oo, tt):
            out.append(("2x2 loop at (1)", _pw(shape, one, lam, one), ((-1, _pw(shape, one, e, one)),)))
        out.append(("2x2 loop at (2,1)", _pw(shape, to, tt, to),
                    ((-1, _pw(shape, to, two, to)), (-1, _pw(shape, to, oo, to)))))
        listed = {(one, two), (one, oo), (one, tt), (to, tt)}
        for nu in cb.enum_partitions(shape):
            for mu in cb.enum_partitions(shape):
                if (nu, mu) in listed or not cb.contains(mu, nu) or nu == mu:
                    continue
                if cb.is_dyck_pair(shape, nu, mu) and cb.degree(shape, nu, mu) == 1:
                    out.append(("2x2 other loop", _pw(shape, nu, mu, nu), ()))
    elif shape.n == 1:
        row = lambda k: (k,) if k else ()
        for k in range(1, shape.m):
            out.append((f"biserial loop at ({k})", _pw(shape, row(k), row(k + 1), row(k)),
                        ((1, _pw(shape, row(k), row(k - 1), row(k))),)))
            out.append((f"biserial zero at ({k})", _pw(shape, row(k), row(k + 1), row(k + 2)), ())
                       if k + 2 <= shape.m else None)
            if k >= 2:
                out.append((f"biserial zero at ({k})", _pw(shape, row(k), row(k - 1), row(k - 2)), ()))
    return [RelationInstance(*x) for x in out if x is not None]


def evaluate_identity(shape: Shape, inst: RelationInstance, policy: str = "smallest") -> tuple:
    """(lhs, rhs) of an identity reduced in H."""
    lhs = word_product(shape, inst.lhs, policy)
    rhs = HElement(shape)
    for c, w in inst.rhs:
        rhs = rhs + word_product(shape, w, policy).scale(c)
    return lhs, rhs


def verify_relations(shape: Shape, policy: str = "smallest") -> dict:
    """Check every presentation instance and the worked examples by reducing
    both sides.  Returns {"relations": {name: [passed, total]},
    "examples": [...], "failures": [...]}."""
    counts: dict = {}
    failures = []
    for inst in relation_instances(shape):
        lhs, rhs = evaluate_identity(shape, inst, policy)
        c = counts.setdefault(inst.name, [0, 0])
        c[1] += 1
        if lhs == rhs:
            c[0] += 1
        else:
            failures.append({"identity": str(inst), "lhs": str(lhs), "rhs": str(rhs)})
    examples = []
    for inst in worked_examples(shape):
        lhs, rhs = evaluate_identity(shape, inst, policy)
        ok = lhs == rhs
        examples.append({"identity": str(inst), "ok": ok, "lhs": str(lhs), "rhs": str(rhs)})
        if not ok:
            failures.append(examples[-1])
    return {"shape": str(shape), "relations": counts, "examples": examples, "failures": failures}


def quiver_dot(shape: Shape) -> str:
    """DOT source of the Dyck quiver: one arrow each way per degree one pair."""
    name = lambda p: '"' + (cb.format_partition(p) or "0") + '"'
    lines = [f'digraph "D_{shape.m}_{shape.n}" {{']
    for mu in cb.enum_partitions(shape):
        lines.append(f"  {name(mu)};")
    for g in generators(shape):
        if g.kind == UP_GEN:
            lines.append(f'  {name(g.row)} -> {name(g.col)} [label="{g.path}"];')
            lines.append(f'  {name(g.col)} -> {name(g.row)} [label="{g.path}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
