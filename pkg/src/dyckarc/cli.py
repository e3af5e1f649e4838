"""Command line front end.

Partitions are comma lists ("3,2,1"; "" or "0" for the empty partition) and
shapes are "m,n".  Basis elements are written with semicolons: a Hecke triple
as MID;ROW;COL and an arc diagram as CUP;WT;CAP.  Elements may also be given
as JSON (inline or @file).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from . import combinatorics as cb
from . import hecke_algebra as ha
from . import isomorphism as iso
from . import representations as rep
from .arc_algebra import ArcBasisDiagram, KElement, dilate_k, k_multiply
from .combinatorics import Shape


class UsageError(Exception):
    pass


def _shape(text: str) -> Shape:
    try:
        return Shape.parse(text)
    except (ValueError, TypeError) as e:
        raise argparse.ArgumentTypeError(str(e))


def _partition(shape: Shape, text, flag: str):
    if text is None:
        raise UsageError(f"{flag} is required for this command")
    try:
        return cb.check_partition(shape, cb.parse_partition(text))
    except ValueError as e:
        raise UsageError(f"{flag}: {e}")


def _load_json(text: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    return json.loads(text)


def _three(shape: Shape, text: str, flag: str) -> tuple:
    parts = text.split(";")
    if len(parts) != 3:
        raise UsageError(f"{flag}: expected three partitions separated by ';'")
    return tuple(_partition(shape, p, flag) for p in parts)


def _k_element(shape: Shape, text, flag: str) -> KElement:
    if text is None:
        raise UsageError(f"{flag} is required for this command")
    if text.lstrip().startswith(("{", "@")):
        a = KElement.from_json(_load_json(text))
        if a.shape != shape:
            raise UsageError(f"{flag}: element shape {a.shape} differs from --shape {shape}")
        return a
    d = ArcBasisDiagram(*_three(shape, text, flag))
    return KElement.basis(shape, d)


def _h_element(shape: Shape, text, flag: str) -> ha.HElement:
    if text is None:
        raise UsageError(f"{flag} is required for this command")
    if text.lstrip().startswith(("{", "@")):
        a = ha.HElement.from_json(_load_json(text))
        if a.shape != shape:
            raise UsageError(f"{flag}: element shape {a.shape} differs from --shape {shape}")
        return a
    t = ha.HBasisTriple(*_three(shape, text, flag))
    if not ha.is_h_triple(shape, t):
        raise UsageError(f"{flag}: {t} is not a basis triple")
    return ha.HElement.basis(shape, t)


def _p(lam) -> str:
    return "(" + cb.format_partition(lam) + ")"


def _emit(args, payload, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


# ----------------------------------------------------------------------
# commands

def cmd_enum(args) -> int:
    S = args.shape
    if args.dot:
        sys.stdout.write(ha.quiver_dot(S))
        return 0
    rows = [(lam, cb.partition_to_weight(S, lam)) for lam in cb.enum_partitions(S)]
    payload = {"shape": [S.m, S.n], "partitions": [{"partition": list(l), "weight": w} for l, w in rows]}
    _emit(args, payload, "\n".join(f"{_p(l)}\t{w}" for l, w in rows))
    return 0


def cmd_cup(args) -> int:
    S = args.shape
    lam = _partition(S, args.lam, "--lambda")
    c = cb.cup_diagram(S, lam)
    payload = {"cups": [list(x) for x in c.cups], "rays": list(c.rays),
               "weight": cb.partition_to_weight(S, lam)}
    text = "cups " + " ".join(f"({p},{q})" for p, q in c.cups) + "\nrays " + \
        " ".join(str(r) for r in c.rays)
    _emit(args, payload, text)
    return 0


def cmd_klpoly(args) -> int:
    S = args.shape
    lam, mu = _partition(S, args.lam, "--lambda"), _partition(S, args.mu, "--mu")
    p = cb.kl_polynomial(S, lam, mu)
    _emit(args, {"lambda": list(lam), "mu": list(mu), "kl": str(p),
                 "coeffs": {str(k): v for k, v in sorted(p.coeffs.items())}}, str(p))
    return 0


def cmd_tilings(args) -> int:
    S = args.shape
    lam, mu = _partition(S, args.lam, "--lambda"), _partition(S, args.mu, "--mu")
    if not cb.is_dyck_pair(S, lam, mu):
        raise UsageError(f"{_p(lam)}, {_p(mu)} is not a Dyck pair")
    n = cb.count_tilings(S, lam, mu)
    paths = [str(P) for P in cb.dyck_tiling(S, lam, mu)]
    _emit(args, {"count": n, "paths": paths}, str(n))
    return 0


def cmd_mult_k(args) -> int:
    S = args.shape
    a, b = _k_element(S, args.a, "--a"), _k_element(S, args.b, "--b")
    c = k_multiply(a, b)
    _emit(args, c.to_json(), str(c))
    return 0


def cmd_mult_h(args) -> int:
    S = args.shape
    a, b = _h_element(S, args.a, "--a"), _h_element(S, args.b, "--b")
    c = ha.h_multiply(a, b)
    _emit(args, c.to_json(), str(c))
    return 0


def cmd_verify_relations(args) -> int:
    S = args.shape
    if args.dot:
        sys.stdout.write(ha.quiver_dot(S))
        return 0
    r = ha.verify_relations(S)
    lines = [f"verify-relations shape {S}: {'PASS' if not r['failures'] else 'FAIL'}"]
    for name in sorted(r["relations"]):
        p, n = r["relations"][name]
        lines.append(f"  relation {name}: {p}/{n} {'PASS' if p == n else 'FAIL'}")
    for ex in r["examples"]:
        lines.append(f"  {'PASS' if ex['ok'] else 'FAIL'} {ex['identity']}")
        if not ex["ok"]:
            lines.append(f"       reduced lhs {ex['lhs']}  rhs {ex['rhs']}")
    _emit(args, r, "\n".join(lines))
    return 1 if r["failures"] else 0


def cmd_verify_iso(args) -> int:
    S = args.shape
    r = iso.verify_iso(S, pairs=args.pairs if args.sample is None else "none")
    if args.sample is not None:
        rng = random.Random(args.seed)
        basis = ha.h_basis(S)
        items = []
        while len(items) < args.sample:
            a = rng.choice(basis)
            cands = [b for b in basis if b.row == a.col]
            items.append((a, rng.choice(cands)))
        r.pairs_mode = f"random({args.sample}, seed={args.seed})"
        r.pairs_checked = len(items)
        r.product_failures = iso._check_basis_pairs((S, items))
    _emit(args, r.to_json(), r.to_text())
    return 0 if r.ok else 1


def cmd_dilate(args) -> int:
    S = args.shape
    if args.k is None:
        raise UsageError("--k is required for dilate")
    try:
        cb.check_k(S, args.k)
    except ValueError as e:
        raise UsageError(str(e))
    if args.lam is not None:
        lam = _partition(S, args.lam, "--lambda")
        big = cb.dilate_partition(S, lam, args.k)
        _emit(args, {"partition": list(big)}, _p(big))
        return 0
    r = iso.dilation_report(S, args.k, args.rule)
    _emit(args, r.to_json(), r.to_text())
    return 0 if r.ok else 1


def cmd_lattice(args) -> int:
    S = args.shape
    lam = _partition(S, args.lam, "--lambda")
    if args.dot:
        sys.stdout.write(rep.lattice_dot(S, lam))
        return 0
    g = rep.alperin_edges(S, lam)
    payload = g.to_json()
    payload["head"] = [list(x) for x in g.sources()]
    payload["socle"] = [list(x) for x in g.sinks()]
    lines = [f"grade {k}: " + " ".join(_p(mu) for mu in layer)
             for k, layer in enumerate(g.module.grades)]
    lines += [f"{_p(a)} -> {_p(b)}" for a, b in g.edges]
    lines.append("head " + " ".join(_p(x) for x in g.sources()))
    lines.append("socle " + " ".join(_p(x) for x in g.sinks()))
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_decomp(args) -> int:
    S = args.shape
    lam = _partition(S, args.lam, "--lambda")
    d = rep.graded_decomposition(S, lam)
    items = sorted(d.items(), key=lambda kv: (min(kv[1].coeffs), kv[0]))
    payload = {"lambda": list(lam), "decomposition": [{"mu": list(mu), "poly": str(p)} for mu, p in items]}
    _emit(args, payload, "\n".join(f"{_p(mu)}\t{p}" for mu, p in items))
    return 0


COMMANDS = {
    "enum": (cmd_enum, "list partitions and weights (--dot: Dyck quiver)"),
    "cup": (cmd_cup, "cup diagram of --lambda"),
    "klpoly": (cmd_klpoly, "KL polynomial for (--lambda, --mu)"),
    "tilings": (cmd_tilings, "number of Dyck tilings of --mu minus --lambda"),
    "mult-k": (cmd_mult_k, "product --a * --b in the arc algebra"),
    "mult-h": (cmd_mult_h, "product --a * --b in the Hecke category algebra"),
    "verify-relations": (cmd_verify_relations, "reduce every relation instance"),
    "verify-iso": (cmd_verify_iso, "check the isomorphism to the arc algebra"),
    "dilate": (cmd_dilate, "dilation by --k (with --lambda: dilate a partition)"),
    "lattice": (cmd_lattice, "submodule lattice of the standard module of --lambda"),
    "decomp": (cmd_decomp, "graded decomposition numbers of --lambda"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--shape", type=_shape, required=True, help="m,n")
    common.add_argument("--lambda", dest="lam")
    common.add_argument("--mu")
    common.add_argument("--a")
    common.add_argument("--b")
    common.add_argument("--k", type=int)
    common.add_argument("--rule", choices=cb.SPOT_FORK_RULES, default=cb.DEFAULT_SPOT_FORK_RULE)
    common.add_argument("--pairs", choices=("basis", "generators", "none"), default="basis")
    common.add_argument("--sample", type=int, help="check this many random basis pairs")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true")
    common.add_argument("--dot", action="store_true")
    parser = argparse.ArgumentParser(prog="dyckarc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command][0](args)
    except UsageError as e:
        print(f"dyckarc {args.command}: error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
