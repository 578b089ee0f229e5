"""Command-line front door.

Exit codes: 0 success, 2 usage errors, 3 budget exceeded, 4 verification
failure.  All randomized sweeps take --seed; every output is deterministic
given the flags.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import affine as aff
from .config import RunConfig, from_environment
from .errors import BruhatError, BudgetExceededError, InvalidArgumentError
from .flips import find_flips
from .ksets import enumerate_ksets, packet, parse_kset
from .orders import (
    equivalence_class,
    flippable_bruteforce,
    inversion_set,
    is_admissible,
    is_admissible_on,
    parse_korder,
    transpose,
)
from .poset import (
    build_bnk,
    build_paths_to_J,
    poset_from_json,
    verify_chain_correspondence,
    verify_ziegler_iso,
)
from .realizable import RealizableSet
from .report import Report
from .words import (
    all_reduced_words,
    build_bi,
    check_counterexample_n9,
    commutation_classes,
    lm_ladder,
    parse_word,
    reduce_word,
    rex_order,
    verify_ladder_structure,
    word_inversions,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4


def _emit(text: str, cfg: RunConfig):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
        print(f"wrote {cfg.out}")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _json_text(data) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


def _parse_members(raw, n):
    return [parse_kset(tok, n) for tok in raw]


def _realizable_from_args(args, k=None) -> RealizableSet:
    members = _parse_members(args.members, args.n)
    if not members and k is None:
        raise InvalidArgumentError("--members must not be empty")
    kk = k if k is not None else members[0].k
    return RealizableSet.create(members, args.n, kk)


def _poset_output(poset, cfg: RunConfig):
    if cfg.format == "dot":
        _emit(poset.to_dot(), cfg)
    elif cfg.format == "json":
        _emit(_json_text(poset.to_json()), cfg)
    else:
        ranks = poset.ranks()
        lines = [
            f"{poset.kind} poset over n={poset.n}, k={poset.k}: "
            f"{len(poset.nodes)} nodes, {len(poset.edges)} edges, "
            f"{len(ranks)} ranks"
        ]
        from .poset import inv_label

        for rank, keys in ranks.items():
            lines.append(f"  rank {rank}: " + "  ".join(inv_label(key) for key in keys))
        _emit("\n".join(lines) + "\n", cfg)
    summary = (
        f"nodes={len(poset.nodes)} edges={len(poset.edges)} "
        f"min={len(poset.sources())} max={len(poset.sinks())}"
    )
    print(summary, file=sys.stderr)


def _report_out(report: Report, cfg: RunConfig) -> int:
    if cfg.format == "json":
        _emit(_json_text(report.to_json()), cfg)
    else:
        _emit("\n".join(report.lines()) + "\n", cfg)
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_packets(args, cfg: RunConfig) -> int:
    if args.generator:
        X = parse_kset(args.generator, args.n)
        members = [m.text() for m in packet(X).members]
        if cfg.format == "json":
            _emit(_json_text({"schema": "bruhat/1", "generator": X.to_json(),
                              "members": [m.to_json() for m in packet(X).members]}), cfg)
        else:
            _emit(f"packet of {X.text()}: " + " < ".join(members) + "\n", cfg)
        return EXIT_OK
    if args.k is None:
        raise InvalidArgumentError("need --k (or --generator)")
    sets = enumerate_ksets(args.n, args.k)
    if cfg.format == "json":
        _emit(_json_text({"schema": "bruhat/1", "n": args.n, "k": args.k,
                          "ksets": [s.to_json() for s in sets]}), cfg)
    else:
        _emit(" ".join(s.text() for s in sets) + "\n", cfg)
    return EXIT_OK


def cmd_check_order(args, cfg: RunConfig) -> int:
    rho = parse_korder(args.order, args.n)
    if args.members:
        J = _realizable_from_args(args)
        ok = is_admissible_on(rho, J)
        violations = []
    else:
        ok, violations = is_admissible(rho)
    if cfg.format == "json":
        _emit(_json_text({"schema": "bruhat/1", "order": rho.to_json(),
                          "admissible": ok,
                          "violations": [v.to_json() for v in violations]}), cfg)
    else:
        text = "admissible" if ok else (
            "not admissible"
            + (f"; violating packets: {' '.join(v.text() for v in violations)}"
               if violations else "")
        )
        _emit(text + "\n", cfg)
    return EXIT_OK


def cmd_inv(args, cfg: RunConfig) -> int:
    rho = parse_korder(args.order, args.n)
    J = _realizable_from_args(args) if args.members else None
    inv = sorted(inversion_set(rho, J))
    if cfg.format == "json":
        _emit(_json_text({"schema": "bruhat/1", "inversions": [x.to_json() for x in inv]}), cfg)
    else:
        _emit("{" + ",".join(x.text() for x in inv) + "}\n", cfg)
    return EXIT_OK


def cmd_flips(args, cfg: RunConfig) -> int:
    rho = parse_korder(args.order, args.n)
    results = find_flips(rho)
    rows = [
        {"flip": r.generator.to_json(), "orientation": "lex",
         "result": r.rearranged_order.to_json(), "moves": r.moves}
        for r in results
    ]
    if args.both:
        for r in find_flips(transpose(rho)):
            rows.append({"flip": r.generator.to_json(), "orientation": "anti",
                         "result": transpose(r.rearranged_order).to_json(),
                         "moves": r.moves})
    if cfg.format == "json":
        _emit(_json_text({"schema": "bruhat/1", "order": rho.to_json(), "flips": rows}), cfg)
    else:
        lines = [f"{len(rows)} flippable packet(s)"]
        for row in rows:
            flip_text = parse_kset(str(row["flip"]), args.n).text()
            lines.append(f"  {flip_text} ({row['orientation']}, {row['moves']} moves)")
        _emit("\n".join(lines) + "\n", cfg)
    return EXIT_OK


def cmd_bruhat(args, cfg: RunConfig) -> int:
    poset = build_bnk(args.n, args.k, max_nodes=cfg.max_nodes)
    _poset_output(poset, cfg)
    return EXIT_OK


def cmd_paths_to(args, cfg: RunConfig) -> int:
    J = _realizable_from_args(args)
    poset = build_paths_to_J(J, max_nodes=cfg.max_nodes)
    _poset_output(poset, cfg)
    return EXIT_OK


def cmd_word(args, cfg: RunConfig) -> int:
    w = parse_word(args.word, args.n)
    reduced = reduce_word(w)
    if len(reduced) != len(w.letters):
        print(f"note: input word is not reduced; using {reduced.text()}", file=sys.stderr)
        w = reduced
    if args.inv:
        J = word_inversions(w)
        _emit(_json_text(J.to_json()) if cfg.format == "json" else J.text() + "\n", cfg)
        return EXIT_OK
    if args.rex_graph:
        rexes = all_reduced_words(w)
        classes = commutation_classes(rexes)
        keyed = []
        for cls in classes:
            inv = sorted(inversion_set(rex_order(w, cls[0]), word_inversions(w)))
            keyed.append({
                "inversions": [x.to_json() for x in inv],
                "expressions": [r.text() for r in cls],
            })
        keyed.sort(key=lambda c: (len(c["inversions"]), c["inversions"]))
        data = {"schema": "bruhat/1", "word": w.text(), "expressions": len(rexes),
                "classes": keyed}
        if cfg.format == "json":
            _emit(_json_text(data), cfg)
        else:
            lines = [f"{len(rexes)} reduced expressions, {len(classes)} commutation classes"]
            for cls in keyed:
                lines.append("  {" + ",".join("".join(map(str, x)) for x in cls["inversions"])
                             + "}: " + " ".join(cls["expressions"]))
            _emit("\n".join(lines) + "\n", cfg)
        return EXIT_OK
    if args.ladder is not None:
        return _ladder_output(word_inversions(w), args.ladder, cfg)
    # default: the path poset of the inversion set (--second-order)
    J = word_inversions(w)
    poset = build_paths_to_J(J, max_nodes=cfg.max_nodes)
    _poset_output(poset, cfg)
    return EXIT_OK


def _ladder_output(J: RealizableSet, top: int, cfg: RunConfig) -> int:
    ladder = lm_ladder(J, cap=max(top, 2))
    rows = []
    for i in range(2, ladder.top + 1):
        low, high = ladder.level(i)
        entry = {"level": i,
                 "lower": [x.to_json() for x in sorted(low)],
                 "upper": [x.to_json() for x in sorted(high)]}
        if 2 <= i <= top:
            poset = build_bi(J, i, ladder=ladder, max_nodes=cfg.max_nodes)
            entry["poset"] = {"nodes": len(poset.nodes), "edges": len(poset.edges)}
        rows.append(entry)
    if cfg.format == "json":
        _emit(_json_text({"schema": "bruhat/1", "set": J.to_json(), "levels": rows}), cfg)
    else:
        lines = []
        for entry in rows:
            lower = "{" + ",".join("".join(map(str, x)) for x in entry["lower"]) + "}"
            upper = "{" + ",".join("".join(map(str, x)) for x in entry["upper"]) + "}"
            line = f"level {entry['level']}: lower={lower} upper={upper}"
            if "poset" in entry:
                line += f" poset(nodes={entry['poset']['nodes']}, edges={entry['poset']['edges']})"
            lines.append(line)
        _emit("\n".join(lines) + "\n", cfg)
    return EXIT_OK


def cmd_ladder(args, cfg: RunConfig) -> int:
    J = _realizable_from_args(args, k=2)
    return _ladder_output(J, args.max_level, cfg)


def cmd_verify(args, cfg: RunConfig) -> int:
    report = Report(f"verify-{args.suite}")
    if args.suite in ("ziegler", "all"):
        for n, k in ((4, 2), (5, 2), (4, 3)) if args.n is None else ((args.n, args.k or 2),):
            report.merge(verify_ziegler_iso(n, k, max_nodes=cfg.max_nodes))
    if args.suite in ("thm43", "ladder", "all"):
        n = args.n or 4
        count = 0
        for perm_word in _permutation_words(n):
            J = word_inversions(perm_word)
            report.merge(verify_ladder_structure(J, args.max_level,
                                                 max_nodes=cfg.max_nodes,
                                                 chain_cap=cfg.max_chains))
            count += 1
            if args.limit and count >= args.limit:
                break
    if args.suite in ("counterexample", "all"):
        report.merge(check_counterexample_n9())
    if args.suite in ("flip-oracle", "all"):
        n, k = (args.n or 4), (args.k or 2)
        report.merge(_flip_oracle_report(n, k, cfg, limit=args.limit))
    if args.suite == "chains":
        poset = build_bnk(args.n or 4, args.k or 2, max_nodes=cfg.max_nodes)
        report.merge(verify_chain_correspondence(poset, cap=cfg.max_chains))
    if args.suite in ("affine", "all"):
        for period in ((3, 4) if args.period is None else (args.period,)):
            report.merge(aff.affine_sweep(period, args.max_len))
    return _report_out(report, cfg)


def _permutation_words(n):
    """One word per permutation of S_n (peeled from one-line forms)."""
    from itertools import permutations as perms

    from .words import Word

    out = []
    for one_line in perms(range(1, n + 1)):
        letters = []
        current = list(one_line)
        while True:
            g = next((i + 1 for i in range(n - 1) if current[i] > current[i + 1]), None)
            if g is None:
                break
            current[g - 1], current[g] = current[g], current[g - 1]
            letters.append(g)
        letters.reverse()
        out.append(Word(tuple(letters), n))
    return out


def _flip_oracle_report(n: int, k: int, cfg: RunConfig, limit: int | None = None) -> Report:
    from .orders import iter_admissible_orders

    report = Report(f"flip-oracle({n},{k})")
    mismatch = None
    checked = 0
    for rho in iter_admissible_orders(enumerate_ksets(n, k), n, k):
        greedy = {r.generator for r in find_flips(rho)}
        oracle = flippable_bruteforce(rho, cap=cfg.max_class_size)
        lex_side = {X for X in oracle if X not in inversion_set(rho)}
        if greedy != lex_side:
            mismatch = rho.text()
            break
        checked += 1
        if limit and checked >= limit:
            break
    report.check("greedy flip search matches the class oracle", mismatch is None,
                 witness=mismatch)
    report.data["orders checked"] = checked
    return report


def _affine_letters(text: str) -> list[int]:
    if text.isdigit():
        return [int(c) for c in text]
    return list(parse_word(text, None).letters)


def cmd_affine(args, cfg: RunConfig) -> int:
    if args.word is not None:
        w = aff.PeriodicPermutation.from_word(args.period, _affine_letters(args.word))
        inv = sorted(aff.affine_word_inversions(w))
        realizable = aff.affine_check_realizable(inv)
        data = {"schema": "bruhat/1", "period": args.period,
                "inversions": [a.text() for a in inv], "realizable": realizable}
        _emit(_json_text(data) if cfg.format == "json"
              else f"inversions: {' '.join(a.text() for a in inv)}\n"
                   f"realizable: {realizable}\n", cfg)
        return EXIT_OK
    # batch sweep: one JSON line per distinct inversion set
    lines = []
    all_ok = True
    seen = {}
    for letters in aff.affine_words(args.period, args.max_len):
        w = aff.PeriodicPermutation.from_word(args.period, letters)
        inv = aff.affine_word_inversions(w)
        if inv in seen:
            continue
        seen[inv] = letters
        realizable = aff.affine_check_realizable(inv)
        row = {
            "period": args.period,
            "word": "".join(str(g) for g in letters),
            "inversions": [a.text() for a in sorted(inv)],
            "realizable": realizable,
        }
        if realizable:
            sub = aff.affine_source_sink_report(inv)
            row["orders"] = sub.data["orders"]
            row["classes"] = sub.data["classes"]
            row["unique_source_and_sink"] = sub.ok
            all_ok = all_ok and sub.ok
        else:
            all_ok = False
        lines.append(json.dumps(row, sort_keys=True))
    _emit("\n".join(lines) + "\n", cfg)
    return EXIT_OK if all_ok else EXIT_VERIFY


def cmd_export(args, cfg: RunConfig) -> int:
    with open(args.input) as fh:
        poset = poset_from_json(json.load(fh))
    _poset_output(poset, cfg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bruhat",
        description="higher Bruhat orders: enumeration, verification, ladders, affine sweeps",
    )
    parser.add_argument("--format", choices=("text", "json", "dot"), default="text")
    parser.add_argument("--out", help="write the primary artifact to this path")
    parser.add_argument("--max-nodes", type=int, help="poset node budget")
    parser.add_argument("--max-chains", type=int, help="maximal-chain budget")
    parser.add_argument("--max-class", type=int, help="equivalence-class budget")
    parser.add_argument("--threads", type=int, help="worker count (results never depend on it)")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("packets", help="enumerate k-sets or show one packet")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--generator", help="show the packet of this set")
    p.set_defaults(func=cmd_packets)

    p = sub.add_parser("check-order", help="admissibility of an order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("order", help="e.g. 23<13<24<14<12<34")
    p.add_argument("--members", nargs="*", default=[],
                   help="restrict to this realizable domain")
    p.set_defaults(func=cmd_check_order)

    p = sub.add_parser("inv", help="inversion set of an admissible order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("order")
    p.add_argument("--members", nargs="*", default=[])
    p.set_defaults(func=cmd_inv)

    p = sub.add_parser("flips", help="flippable packets of an admissible order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("order")
    p.add_argument("--both", action="store_true",
                   help="include the reversed-orientation flips via transposition")
    p.set_defaults(func=cmd_flips)

    p = sub.add_parser("bruhat", help="build the full flip poset")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_bruhat)

    p = sub.add_parser("paths-to", help="build the path poset of a realizable set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--members", nargs="+", required=True)
    p.set_defaults(func=cmd_paths_to)

    p = sub.add_parser("word", help="reduced-expression reports for a word")
    p.add_argument("word")
    p.add_argument("--n", type=int)
    p.add_argument("--inv", action="store_true", help="print the inversion set")
    p.add_argument("--rex-graph", action="store_true",
                   help="reduced expressions grouped into commutation classes")
    p.add_argument("--second-order", action="store_true",
                   help="path poset of the inversion set (default)")
    p.add_argument("--ladder", type=int, metavar="I",
                   help="ladder levels and posets up to level I")
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("ladder", help="ladder levels of a realizable 2-set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--members", nargs="*", default=[])
    p.add_argument("--max-level", type=int, default=3)
    p.set_defaults(func=cmd_ladder)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=("all", "ziegler", "thm43", "ladder",
                                     "counterexample", "flip-oracle", "chains", "affine"))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--max-level", type=int, default=3)
    p.add_argument("--limit", type=int, help="cap the number of base sets checked")
    p.add_argument("--period", type=int, help="affine period (default: 3 and 4)")
    p.add_argument("--max-len", type=int, default=4, help="affine word length bound")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("affine", help="affine inversion sets and empirical sweeps")
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--word", help="a single word, e.g. 121 or s1 s2 s1")
    p.add_argument("--max-len", type=int, default=4)
    p.set_defaults(func=cmd_affine)

    p = sub.add_parser("export", help="re-render an exported poset JSON file")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = from_environment()
    cfg.format = args.format
    cfg.out = args.out
    cfg.seed = args.seed
    if args.max_nodes:
        cfg.max_nodes = args.max_nodes
    if args.max_chains:
        cfg.max_chains = args.max_chains
    if args.max_class:
        cfg.max_class_size = args.max_class
    if args.threads:
        cfg.threads = args.threads
    try:
        return args.func(args, cfg)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvalidArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BruhatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
