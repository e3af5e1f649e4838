"""Acceptance criteria 1-9.  Each test prints one line

    CRITERION n: PASS|FAIL <detail>

and the lines are repeated in the pytest terminal summary.  Run this file as
a script to get the nine lines without pytest.
"""

import itertools
import random
import sys
import time

import conftest
import oracles
from dyckarc import arc_algebra as ka
from dyckarc import combinatorics as cb
from dyckarc import hecke_algebra as ha
from dyckarc import isomorphism as iso
from dyckarc import representations as rep
from dyckarc.arc_algebra import KElement
from dyckarc.combinatorics import PairKind, Shape
from dyckarc.hecke_algebra import HElement

S11, S22, S33 = Shape(1, 1), Shape(2, 2), Shape(3, 3)


def report(n: int, ok: bool, detail: str) -> bool:
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


# ----------------------------------------------------------------------
# 1. the H_{2,2} quiver relations

def _word(*parts):
    return tuple(ha.d_gen(S22, a, b) for a, b in zip(parts, parts[1:]))


def _dual(word):
    return tuple(g.star() for g in reversed(word))


def two_two_identities() -> list:
    """(label, [word, ...], [(coeff, word), ...]): every listed word equals
    the signed sum on the right."""
    e, one, two, oo, to, tt = (), (1,), (2,), (1, 1), (2, 1), (2, 2)
    out = []
    for lam in (two, oo):
        out.append((f"d^0_(1) d^(1)_{lam} = 0", [_word(e, one, lam)], []))
        out.append((f"dual of d^0_(1) d^(1)_{lam} = 0", [_dual(_word(e, one, lam))], []))
    chain = [_word(one, lam, to) for lam in (two, tt, oo)]
    out.append(("d^(1)_(2) d^(2)_(2,1) = d^(1)_(2,2) d^(2,2)_(2,1) = d^(1)_(1,1) d^(1,1)_(2,1)", chain, None))
    out.append(("dual of the three-way equality", [_dual(w) for w in chain], None))
    for lam in (two, oo, tt):
        out.append((f"d^(1)_{lam} d^{lam}_(1) = -d^(1)_0 d^0_(1)",
                    [_word(one, lam, one)], [(-1, _word(one, e, one))]))
    out.append(("d^(2,1)_(2,2) d^(2,2)_(2,1) = -d^(2,1)_(2) d^(2)_(2,1) - d^(2,1)_(1,1) d^(1,1)_(2,1)",
                [_word(to, tt, to)], [(-1, _word(to, two, to)), (-1, _word(to, oo, to))]))
    listed = {(one, two), (one, oo), (one, tt), (to, tt)}
    for nu, mu in itertools.permutations(cb.enum_partitions(S22), 2):
        if (nu, mu) in listed or not cb.contains(mu, nu):
            continue
        if cb.degree(S22, nu, mu) == 1:
            out.append((f"d^{nu}_{mu} d^{mu}_{nu} = 0", [_word(nu, mu, nu)], []))
    return out


def criterion_1() -> bool:
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for label, words, rhs in two_two_identities():
        values = [ha.word_product(S22, w) for w in words]
        if rhs is not None:
            target = HElement(S22)
            for c, w in rhs:
                target = target + ha.word_product(S22, w).scale(c)
            values.append(target)
        checked += 1
        if any(v != values[0] for v in values):
            bad.append(f"{label} [got {' | '.join(str(v) for v in values)}]")
    secs = time.perf_counter() - t0
    ok = not bad and secs < 1
    detail = f"{checked - len(bad)}/{checked} identities hold in {secs:.2f}s"
    if bad:
        detail += "; failing: " + "; ".join(bad)
    return report(1, ok, detail)


# ----------------------------------------------------------------------
# 2. KL polynomial and tiling count of the degree eight pair

BIG_LAM = (11, 9, 8, 7, 6, 4, 3, 3, 2, 2)
BIG_MU = (11,) * 7 + (8, 8, 8, 2, 2)


def criterion_2() -> bool:
    t0 = time.perf_counter()
    shape = Shape(12, 12)
    kl = cb.kl_polynomial(shape, BIG_LAM, BIG_MU)
    count = cb.count_tilings(shape, BIG_LAM, BIG_MU)
    secs = time.perf_counter() - t0
    ok = str(kl) == "q^8" and count == 12 and secs < 5
    return report(2, ok, f"kl = {kl} (want q^8), count_tilings = {count} (want 12), {secs:.2f}s")


# ----------------------------------------------------------------------
# 3. cup diagram

def criterion_3() -> bool:
    c = cb.cup_diagram(Shape(5, 5), (5, 4, 2, 2))
    ok = c.cups == ((1, 2), (3, 4), (6, 9), (7, 8)) and c.rays == (5, 10)
    return report(3, ok, f"cups {list(c.cups)} rays {list(c.rays)}")


# ----------------------------------------------------------------------
# 4. structure constants transported by Psi

def criterion_4() -> bool:
    parts, ok = [], True
    t0 = time.perf_counter()
    small = [iso.verify_iso(s, pairs="basis") for s in (S11, S22)]
    secs = time.perf_counter() - t0
    for r in small:
        ok &= r.ok
        parts.append(f"{r.shape}: {r.pairs_checked} basis pairs, {len(r.product_failures)} failures")
    ok &= secs < 10
    parts[-1] += f" ({secs:.2f}s)"
    t0 = time.perf_counter()
    r = iso.verify_iso(S33, pairs="generators")
    secs = time.perf_counter() - t0
    ok &= r.ok and secs < 300
    parts.append(f"{r.shape}: {r.pairs_checked} generator pairs, "
                 f"{len(r.product_failures)} failures ({secs:.2f}s)")
    return report(4, ok, "; ".join(parts))


# ----------------------------------------------------------------------
# 5. unitriangularity at (2,2)

def criterion_5() -> bool:
    tm = iso.transition_matrix(S22)
    diag = [str(c) for c in tm.diagonal().values()]
    counts = {d: diag.count(d) for d in sorted(set(diag))}
    ok = tm.is_unitriangular() and set(counts) <= {"1", "-1", "i", "-i"}
    return report(5, ok, f"{len(tm.rows)}x{len(tm.cols)} matrix, unitriangular={tm.is_unitriangular()}, "
                         f"diagonal {counts}")


# ----------------------------------------------------------------------
# 6. standard module of (2,1) at (3,3)

def criterion_6() -> bool:
    t0 = time.perf_counter()
    g = rep.alperin_edges(S33, (2, 1))
    edges, anomalies = rep.action_edges(S33, (2, 1))
    secs = time.perf_counter() - t0
    head, socle = g.sources(), g.sinks()
    same = set(edges) == set(g.edges)
    ok = head == [(2, 1)] and socle == [(3, 2, 1)] and same and not anomalies and secs < 30
    return report(6, ok, f"head {head}, socle {socle}, {len(g.edges)} Alperin edges, "
                         f"action edges agree={same}, non-unit coefficients {len(anomalies)}, {secs:.2f}s")


# ----------------------------------------------------------------------
# 7. property suites

def _surgery_order(rng) -> int:
    basis = ka.k_basis(S33)
    pairs = [(a, b) for a in basis for b in basis
             if a.cap == b.cup and len(ka.middle_pairs(S33, a)) > 1]
    bad = 0
    for a, b in rng.sample(pairs, 200):
        cups = list(ka.middle_pairs(S33, a))
        ref = ka.k_basis_product(S33, a, b)
        for _ in range(2):
            rng.shuffle(cups)
            bad += ka.k_basis_product(S33, a, b, order=cups) != ref
    return bad


def _triples(basis, left, right, rng=None, n=None):
    by: dict = {}
    for t in basis:
        by.setdefault(left(t), []).append(t)
    if rng is None:
        for a in basis:
            for b in by.get(right(a), ()):
                for c in by.get(right(b), ()):
                    yield a, b, c
        return
    for _ in range(n):
        a = rng.choice(basis)
        b = rng.choice(by[right(a)])
        yield a, b, rng.choice(by[right(b)])


def _associativity(rng) -> int:
    bad = 0
    for shape in (S11, S22):
        for a, b, c in _triples(ka.k_basis(shape), lambda d: d.cup, lambda d: d.cap):
            x, y, z = (KElement.basis(shape, d) for d in (a, b, c))
            bad += (x * y) * z != x * (y * z)
        for a, b, c in _triples(ha.h_basis(shape), lambda t: t.row, lambda t: t.col):
            x, y, z = (HElement.basis(shape, t) for t in (a, b, c))
            bad += (x * y) * z != x * (y * z)
    for a, b, c in _triples(ka.k_basis(S33), lambda d: d.cup, lambda d: d.cap, rng, 500):
        x, y, z = (KElement.basis(S33, d) for d in (a, b, c))
        bad += (x * y) * z != x * (y * z)
    for a, b, c in _triples(ha.h_basis(S33), lambda t: t.row, lambda t: t.col, rng, 500):
        x, y, z = (HElement.basis(S33, t) for t in (a, b, c))
        bad += (x * y) * z != x * (y * z)
    return bad


def _confluence(rng) -> int:
    bad = 0
    for shape in (S22, Shape(3, 2)):
        gens = [g for g in ha.generators(shape) if g.kind != ha.IDEM]
        for _ in range(100):
            word = [rng.choice(gens)]
            for _ in range(rng.randint(1, 4)):
                word.append(rng.choice([g for g in gens if g.row == word[-1].col]))
            bad += ha.word_product(shape, word, "smallest") != ha.word_product(shape, word, "largest")
    return bad


def _star_grade_cell(rng) -> tuple:
    star = grade = cell = 0
    for shape in (S22, S33):
        hb = ha.h_basis(shape)
        pairs = [(a, b) for a in hb for b in hb if a.col == b.row]
        for a, b in rng.sample(pairs, min(300, len(pairs))):
            x, y = HElement.basis(shape, a), HElement.basis(shape, b)
            p = x * y
            star += p.star() != y.star() * x.star()
            grade += not p.degrees() <= {ha.h_degree(shape, a) + ha.h_degree(shape, b)}
            cell += any(not (cb.contains(a.mid, t.mid) and cb.contains(b.mid, t.mid)) for t in p.terms)
        kb = ka.k_basis(shape)
        kpairs = [(a, b) for a in kb for b in kb if a.cap == b.cup]
        for a, b in rng.sample(kpairs, min(300, len(kpairs))):
            x, y = KElement.basis(shape, a), KElement.basis(shape, b)
            p = x * y
            star += ka.k_flip(p) != ka.k_flip(y) * ka.k_flip(x)
            grade += not p.degrees() <= {ka.arc_degree(shape, a) + ka.arc_degree(shape, b)}
    return star, grade, cell


def _covers_or_distant() -> int:
    bad = 0
    for m in range(1, 5):
        for n in range(1, 5):
            shape = Shape(m, n)
            for mu in cb.enum_partitions(shape):
                for P, Q in itertools.permutations(cb.dyck_rem(shape, mu), 2):
                    bad += cb.classify_pair(P, Q) not in (
                        PairKind.P_COVERS_Q, PairKind.Q_COVERS_P, PairKind.DISTANT)
    return bad


def criterion_7() -> bool:
    rng = random.Random(2024)
    t0 = time.perf_counter()
    star, grade, cell = _star_grade_cell(rng)
    results = {
        "surgery order": _surgery_order(rng),
        "associativity": _associativity(rng),
        "confluence": _confluence(rng),
        "anti-involution": star,
        "grading": grade,
        "cellular support": cell,
        "covers or distant": _covers_or_distant(),
    }
    secs = time.perf_counter() - t0
    ok = not any(results.values()) and secs < 600
    return report(7, ok, ", ".join(f"{k} {v} failures" for k, v in results.items()) + f", {secs:.2f}s")


# ----------------------------------------------------------------------
# 8. dilation

def criterion_8() -> bool:
    t0 = time.perf_counter()
    parts, ok = [], True
    for shape in (S11, Shape(2, 1)):
        bad, same, total = [], 0, 0
        for k in range(-shape.m, shape.n + 1):
            r = iso.dilation_report(shape, k)
            if not r.ok or (shape == S11 and r.k_pairs_checked != 25):
                bad.append(k)
            same += sum(a == b for a, b in r.scalars.values())
            total += len(r.scalars)
        ok &= not bad
        parts.append(f"{shape} -> {cb.dilate_shape(shape)}: failing k {bad}, "
                     f"dilate_h scalar equals transported scalar on {same}/{total} generators "
                     f"(ratios gauge consistent)")
    secs = time.perf_counter() - t0
    ok &= secs < 60
    return report(8, ok, "; ".join(parts) + f", {secs:.2f}s")


# ----------------------------------------------------------------------
# 9. graded dimensions

def criterion_9() -> bool:
    bad = []
    for m in range(1, 4):
        for n in range(1, 4):
            shape = Shape(m, n)
            h = ka.graded_counts(shape, ha.h_basis(shape), ha.h_degree)
            k = ka.graded_counts(shape, ka.k_basis(shape), ka.arc_degree)
            ref = dict(sorted(oracles.k_basis_count(m, n).items()))
            if not h == k == ref:
                bad.append(f"{shape}: H {h} K {k} brute force {ref}")
    return report(9, not bad, "9 shapes agree" if not bad else "; ".join(bad))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def test_criterion_1():
    assert criterion_1()


def test_criterion_2():
    assert criterion_2()


def test_criterion_3():
    assert criterion_3()


def test_criterion_4():
    assert criterion_4()


def test_criterion_5():
    assert criterion_5()


def test_criterion_6():
    assert criterion_6()


def test_criterion_7():
    assert criterion_7()


def test_criterion_8():
    assert criterion_8()


def test_criterion_9():
    assert criterion_9()


if __name__ == "__main__":
    results = [fn() for fn in CRITERIA]
    sys.exit(0 if all(results) else 1)
