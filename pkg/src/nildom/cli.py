"""Command line front end.

Exit codes: 0 success or predicate true, 1 predicate false, 2 usage error,
3 computation error.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import copro2, engel, heis, intlat, metabdom, subdom2
from .hallnil import (
    CATALOGUE,
    DIVISIBILITY,
    FAMILIES,
    FREE,
    METABELIAN,
    STRATEGIES,
    binomial_fit,
    collect,
    divisibility_check,
    hall_basis,
    verify_identity,
)
from .nil2 import ClassTwoGroup, format_element, free_gen, free_identity, free_mul, free_pow
from .words import UnknownGenerator, WordSyntaxError, split_top

OK, FALSE, USAGE, FAILURE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def read_words(text: str | None) -> list[str]:
    """Comma separated words, or a file of them (one or more per line, '#' comments)."""
    if text is None:
        return []
    path = Path(text)
    if path.is_file():
        words = []
        for line in path.read_text().splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                words += split_top(line)
        return words
    return split_top(text)


def _group(args) -> ClassTwoGroup:
    rels = read_words(getattr(args, "relators", None))
    return ClassTwoGroup.from_relators(args.rank, rels) if rels else ClassTwoGroup.free(args.rank)


def _subgroup(args):
    G = _group(args)
    return G, subdom2.subgroup(G, read_words(args.gens))


def _fmt_index(k) -> str:
    return "inf" if k == intlat.INFINITE else str(k)


def cmd_hall_basis(args, out):
    B = hall_basis(args.rank, args.cls, args.variety)
    for line in B.format_lines():
        print(line, file=out)
    print(f"total: {len(B)}", file=out)
    return OK


def _two_step(args) -> bool:
    return args.cls == 2 and args.variety == FREE


def cmd_collect(args, out):
    if _two_step(args) and args.strategy == "left":
        print(format_element(_group(args).collect_word(args.word)), file=out)
    else:
        print(collect(args.rank, args.cls, args.variety, args.word, args.strategy), file=out)
    return OK


def cmd_mul(args, out):
    if _two_step(args):
        G = _group(args)
        g = G.multiply(G.collect_word(args.left), G.collect_word(args.right))
        print(G.format(g), file=out)
    else:
        print(collect(args.rank, args.cls, args.variety, f"({args.left}) ({args.right})"), file=out)
    return OK


def cmd_inv(args, out):
    if _two_step(args):
        G = _group(args)
        print(G.format(G.inverse(G.collect_word(args.word))), file=out)
    else:
        print(collect(args.rank, args.cls, args.variety, f"({args.word})^-1"), file=out)
    return OK


def cmd_member(args, out):
    _, H = _subgroup(args)
    ok = subdom2.member(H, args.word)
    print("true" if ok else "false", file=out)
    return OK if ok else FALSE


def cmd_dominion(args, out):
    _, H = _subgroup(args)
    print(subdom2.dominion(H).format_gens(), file=out)
    return OK


def cmd_closed(args, out):
    _, H = _subgroup(args)
    ok = subdom2.is_closed(H)
    print("closed" if ok else "not closed", file=out)
    return OK if ok else FALSE


def cmd_min_power(args, out):
    _, H = _subgroup(args)
    print(subdom2.min_power_in(H, args.word), file=out)
    return OK


def cmd_index(args, out):
    G, H = _subgroup(args)
    K = subdom2.subgroup(G, read_words(args.of)) if args.of else subdom2.dominion(H)
    if not subdom2.contains(K, H):
        raise UsageError("the first subgroup is not contained in the second")
    print(_fmt_index(subdom2.index(H, K)), file=out)
    return OK


def cmd_coproduct_check(args, out):
    G, H = _subgroup(args)
    P = copro2.build_coproduct(G, H)
    ok = copro2.equal_images(P, args.word)
    print("equal" if ok else "different", file=out)
    return OK if ok else FALSE


def cmd_metab_saturate(args, out):
    H = metabdom.derived_lattice(args.cls, read_words(args.gens))
    res = metabdom.saturate_dominion(H, rules=args.rules.split(","))
    metabdom.audit(H, res.steps)
    print(f"derived dimension: {H.dim}", file=out)
    print(f"rank of H: {H.rank}", file=out)
    print(f"rank of lower bound: {res.D.rank}", file=out)
    print(f"iterations: {res.iterations}", file=out)
    print(f"steps: {len(res.steps)}", file=out)
    if args.steps:
        for s in res.steps:
            print(f"  {s.rule} {s.a} {s.b}: {metabdom._word(args.cls, s.witness)} -> "
                  f"{metabdom._word(args.cls, s.added)}", file=out)
    print(f"normal: {'yes' if res.normal else 'no'}", file=out)
    print(f"index in lower bound: {_fmt_index(res.index())}", file=out)
    for w in res.D.words():
        print(f"  {w}", file=out)
    return OK


def cmd_engel_check(args, out):
    G = engel.build_group(args.group)
    rep = engel.two_engel_report(G)
    print(f"group: {G.label} (order {G.order})", file=out)
    for line in rep.lines():
        print(line, file=out)
    return OK if rep.uniform else FALSE


def cmd_heis_cert(args, out):
    cert = heis.certificate(args.prime, args.i, args.cls)
    print(cert, file=out)
    return OK if cert.passed else FALSE


def cmd_subvariety_witness(args, out):
    params = subdom2.SubvarietyParams(args.m, args.n)
    w = subdom2.subvariety_witness(params, args.prime)
    print(f"m: {args.m}", file=out)
    print(f"n: {args.n}", file=out)
    print(f"p: {args.prime}", file=out)
    print(f"H: {w.H}", file=out)
    if w.order is not None:
        print(f"group order: {w.order}", file=out)
        print(f"subgroup order: {w.subgroup_size}", file=out)
    print(f"description matches: {'yes' if w.description_matches else 'no'}", file=out)
    print(f"[x,y]^{args.prime} outside H: {'yes' if w.comm_power_outside else 'no'}", file=out)
    print("valid" if w.valid else "invalid", file=out)
    return OK if w.valid else FALSE


def cmd_verify(args, out):
    if args.list or not args.name:
        for name, ident in CATALOGUE.items():
            print(f"{name}: {ident.formula}", file=out)
        return OK
    params = {k: getattr(args, k) for k in ("n", "m") if getattr(args, k) is not None}
    rep = verify_identity(args.name, args.cls, args.variety_opt, args.strategy, **params)
    for line in rep.lines():
        print(line, file=out)
    print("holds" if rep.holds else "fails", file=out)
    return OK if rep.holds else FALSE


def cmd_fit(args, out):
    samples = [int(s) for s in args.samples.split(",")] if args.samples else None
    res = binomial_fit(args.family, args.cls, samples, args.variety)
    print(res.template, file=out)
    for line in res.lines():
        print(line, file=out)
    return OK


def cmd_divisibility(args, out):
    rep = divisibility_check(args.prime, args.cls, args.which)
    print(rep.word, file=out)
    print(f"-> {rep.value}", file=out)
    print("divisible" if rep.holds else "not divisible: " + ", ".join(rep.offenders), file=out)
    return OK if rep.holds else FALSE


def cmd_counterexample_table(args, out):
    table = subdom2.counterexample_table(args.k)
    for n, e in enumerate(table, start=1):
        print(f"{n}: {e}", file=out)
    return OK


def _random_gens(rng: random.Random, rank: int) -> list:
    gens = []
    for _ in range(rng.randint(1, 3)):
        g = free_identity(rank)
        for i in range(rank):
            if rng.random() < 0.7:
                g = free_mul(g, free_pow(free_gen(rank, i), rng.randint(-6, 6)))
        gens.append(g)
    return gens


def cmd_crosscheck(args, out):
    """Dominion membership against the coproduct test on random subgroups."""
    rng = random.Random(args.seed)
    bad = 0
    for t in range(args.trials):
        rank = rng.choice((2, 3))
        G = ClassTwoGroup.free(rank)
        H = subdom2.subgroup(G, _random_gens(rng, rank))
        D = subdom2.dominion(H)
        P = copro2.build_coproduct(G, H)
        probes = list(D.gens)
        for _ in range(4):
            probes.append(_random_gens(rng, rank)[0])
        for g in probes:
            if copro2.equal_images(P, g) != subdom2.member(D, g):
                bad += 1
                print(f"disagreement: H = {H}, g = {format_element(g)}", file=out)
    print(f"trials: {args.trials}", file=out)
    print(f"disagreements: {bad}", file=out)
    return OK if bad == 0 else FALSE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nildom", description="Dominions in nilpotent groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    def rank_opt(p, default=2):
        p.add_argument("--rank", type=int, default=default)

    def class_opt(p, default=2):
        p.add_argument("--class", dest="cls", type=int, default=default)

    def variety_opt(p):
        p.add_argument("--variety", choices=(FREE, METABELIAN), default=FREE)

    def group_opts(p):
        rank_opt(p)
        p.add_argument("--relators", help="relators of the ambient class-2 group (list or file)")

    def subgroup_opts(p):
        group_opts(p)
        p.add_argument("--gens", required=True, help="subgroup generators: comma list or file")

    p = sub.add_parser("hall-basis", help="list basic commutators")
    rank_opt(p)
    class_opt(p)
    variety_opt(p)
    p.set_defaults(func=cmd_hall_basis)

    p = sub.add_parser("collect", help="normal form of a word")
    group_opts(p)
    class_opt(p)
    variety_opt(p)
    p.add_argument("--strategy", choices=STRATEGIES, default="left")
    p.add_argument("word")
    p.set_defaults(func=cmd_collect)

    p = sub.add_parser("mul", help="product of two words")
    group_opts(p)
    class_opt(p)
    variety_opt(p)
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("inv", help="inverse of a word")
    group_opts(p)
    class_opt(p)
    variety_opt(p)
    p.add_argument("word")
    p.set_defaults(func=cmd_inv)

    for name, func, help_ in (("member", cmd_member, "subgroup membership"),
                              ("min-power", cmd_min_power, "least power of an element inside the subgroup"),
                              ("coproduct-check", cmd_coproduct_check, "compare the two images in the amalgam")):
        p = sub.add_parser(name, help=help_)
        subgroup_opts(p)
        p.add_argument("word")
        p.set_defaults(func=func)

    for name, func, help_ in (("dominion", cmd_dominion, "dominion of a subgroup of a class-2 group"),
                              ("closed", cmd_closed, "is the subgroup its own dominion")):
        p = sub.add_parser(name, help=help_)
        subgroup_opts(p)
        p.set_defaults(func=func)

    p = sub.add_parser("index", help="index of H in its dominion (or in --of)")
    subgroup_opts(p)
    p.add_argument("--of", help="generators of an overgroup")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("metab-saturate", help="lower bound for a dominion in the metabelian group")
    class_opt(p, 4)
    p.add_argument("--gens", required=True)
    p.add_argument("--rules", default=",".join(metabdom.RULES))
    p.add_argument("--steps", action="store_true", help="print the certificate steps")
    p.set_defaults(func=cmd_metab_saturate)

    p = sub.add_parser("engel-check", help="2-Engel conditions on a finite group")
    p.add_argument("group", help="e.g. S3, D6, Q8, 'heisenberg 3', C5, 'abelian 2,4', or a table file")
    p.set_defaults(func=cmd_engel_check)

    p = sub.add_parser("heis-cert", help="dominion certificate in the Heisenberg group over Z[1/p]")
    p.add_argument("-p", "--prime", type=int, required=True)
    p.add_argument("-i", type=int, required=True)
    p.add_argument("-c", "--class", dest="cls", type=int, required=True)
    p.set_defaults(func=cmd_heis_cert)

    p = sub.add_parser("subvariety-witness", help="witness that x^p, y^p miss [x,y]^p")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-p", "--prime", type=int, required=True)
    p.set_defaults(func=cmd_subvariety_witness)

    p = sub.add_parser("verify", help="check a catalogued identity")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    class_opt(p, 4)
    p.add_argument("--variety", dest="variety_opt", choices=(FREE, METABELIAN))
    p.add_argument("--strategy", choices=STRATEGIES, default="left")
    p.add_argument("-n", type=int)
    p.add_argument("-m", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fit", help="binomial exponents of a power family")
    p.add_argument("family", help=", ".join(FAMILIES))
    class_opt(p, 3)
    variety_opt(p)
    p.add_argument("--samples", help="comma separated sample values of n")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("divisibility", help="p-divisibility of pulled-out exponents")
    p.add_argument("-p", "--prime", type=int, required=True)
    class_opt(p)
    p.add_argument("--which", choices=DIVISIBILITY, default="left-power")
    p.set_defaults(func=cmd_divisibility)

    p = sub.add_parser("counterexample-table", help="minimal powers for <x^n, y^n>")
    p.add_argument("-k", type=int, default=10)
    p.set_defaults(func=cmd_counterexample_table)

    p = sub.add_parser("crosscheck", help="dominion membership vs the amalgam test on random subgroups")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_crosscheck)
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, WordSyntaxError, UnknownGenerator) as exc:
        print(f"nildom: error: {exc}", file=sys.stderr)
        return USAGE
    except (ValueError, ArithmeticError, KeyError, RuntimeError, OSError) as exc:
        print(f"nildom: {type(exc).__name__}: {exc}", file=sys.stderr)
        return FAILURE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
