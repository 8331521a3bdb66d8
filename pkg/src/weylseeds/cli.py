"""Command-line front end: build/export quivers, print gradings, run the
verification suites, twist checks, and mutations.

Every verification emits one JSON line per individual check; the exit code is
0 exactly when no emitted line has "pass": false.  All randomness flows from
--seed, so identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .cartan import build_cartan
from .gradings import (
    assign_gradings,
    check_face_identity,
    check_recursive_identity,
    mutate_grading,
)
from .seeds import Seed, build_borel_quiver, build_conf3_quiver, build_conf4_quiver
from .slgroup import (
    evaluate_cluster,
    gamma_prime,
    sample_bruhat,
    twist_coefficients,
    twist_gamma,
    twist_gamma_direct,
    verify_exchange,
)
from .words import (
    check_w0_word,
    enumerate_reduced_words,
    max_enum_rank,
    parse_word,
    sample_reduced_words,
)


def _build_seed(cd, space: str, word) -> Seed:
    if space == "borel":
        return build_borel_quiver(cd, word)
    if space == "conf3":
        return build_conf3_quiver(cd, word)
    if space == "conf4":
        return build_conf4_quiver(cd, word)
    raise ValueError(f"unknown space {space!r}")


def _default_word(cd, space: str):
    if space == "conf4":
        w0 = cd.canonical_w0_word()
        return tuple(-j for j in w0) + w0
    return cd.canonical_w0_word()


def _words_to_check(cd, args) -> list[tuple[int, ...]]:
    if getattr(args, "word", None):
        return [check_w0_word(cd, parse_word(args.word))]
    if getattr(args, "all_words", False):
        return enumerate_reduced_words(cd)
    if cd.rank <= max_enum_rank() and cd.num_positive_roots() <= 9:
        return enumerate_reduced_words(cd)
    return sample_reduced_words(cd, args.trials, args.seed)


class Reporter:
    def __init__(self, stream):
        self.stream = stream
        self.failures = 0
        self.count = 0

    def emit(self, check: str, inputs: dict, ok: bool, expected=None, actual=None):
        self.count += 1
        if not ok:
            self.failures += 1
        line = {"check": check, "inputs": inputs, "pass": ok,
                "expected": expected, "actual": actual}
        self.stream.write(json.dumps(line, sort_keys=True) + "\n")


def _suite_fact(cd, rep: Reporter, args):
    for word in _words_to_check(cd, args):
        for alpha in cd.positive_roots():
            signs = []
            cur = alpha
            for j in word:
                cur = cd.reflect_root(cur, j)
                signs.append(cur.is_positive())
            transitions = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
            expected = 1 if signs[0] else 0
            ok = transitions == expected and signs[-1] is False
            rep.emit("fact.single_transition",
                     {"word": list(word), "root": list(alpha.coeffs)},
                     ok, expected=expected, actual=transitions)


def _suite_recursive(cd, rep: Reporter, args):
    for word in _words_to_check(cd, args):
        violations = {v["position"]: v for v in check_recursive_identity(cd, word)}
        for l in range(1, len(word) + 1):
            v = violations.get(l)
            rep.emit("recursive.position",
                     {"word": list(word), "position": l},
                     v is None,
                     expected=None if v is None else v["expected"],
                     actual=None if v is None else v["actual"])


def _suite_face(cd, rep: Reporter, args):
    for word in _words_to_check(cd, args):
        seed = build_conf3_quiver(cd, word)
        gradings = assign_gradings(seed)
        for entry in check_face_identity(seed, gradings):
            rep.emit("face.vertex",
                     {"word": list(word), "vertex": entry["id"], "frozen": entry["frozen"]},
                     entry["pass"], expected=entry["expected"], actual=entry["actual"])


def _suite_mutation(cd, rep: Reporter, args):
    word = parse_word(args.word) if args.word else cd.canonical_w0_word()
    base = build_conf3_quiver(cd, word)
    base_grading = assign_gradings(base)
    rng = random.Random(args.seed)
    if not base.unfrozen_ids():
        rep.emit("mutation.no_unfrozen_vertices", {"word": list(word)}, True)
        return
    for trial in range(args.trials):
        seed, grading = base, base_grading
        path = []
        ok = True
        for _ in range(10):
            vid = rng.choice(seed.unfrozen_ids())
            path.append(vid)
            try:
                grading = mutate_grading(seed, grading, vid)
            except ValueError:
                ok = False
                break
            seed = seed.mutate(vid)
            bad = [e for e in check_face_identity(seed, grading)
                   if not e["frozen"] and not e["pass"]]
            if bad:
                ok = False
                break
        for vid in reversed(path):
            seed = seed.mutate(vid)
        ok = ok and seed == base
        rep.emit("mutation.face_invariance_and_involution",
                 {"word": list(word), "trial": trial, "path": path}, ok)


def _suite_exchange(cd, rep: Reporter, args):
    word = check_w0_word(cd, parse_word(args.word) if args.word else cd.canonical_w0_word())
    seed = build_conf3_quiver(cd, word)
    if not seed.unfrozen_ids():
        rep.emit("exchange.no_unfrozen_vertices", {"word": list(word)}, True)
        return
    for s in range(args.trials):
        pt = sample_bruhat(cd, "w0e", rng_seed=args.seed + s, word=word)
        for vid in seed.unfrozen_ids():
            ok = verify_exchange(cd, word, pt, vid)
            rep.emit("exchange.vertex",
                     {"word": list(word), "vertex": vid, "point_seed": args.seed + s}, ok)


def _suite_twist(cd, rep: Reporter, args):
    word = check_w0_word(cd, parse_word(args.word) if args.word else cd.canonical_w0_word())
    for s in range(args.trials):
        pt = sample_bruhat(cd, "w0e", rng_seed=args.seed + s, word=word)
        values = evaluate_cluster(cd, word, pt.matrix)
        bs = twist_coefficients(cd, word, values)
        formula = twist_gamma(cd, word, bs)
        direct = twist_gamma_direct(cd, pt.matrix)
        rep.emit("twist.factorization",
                 {"word": list(word), "point_seed": args.seed + s},
                 formula == direct,
                 expected=[[str(v) for v in row] for row in direct],
                 actual=[[str(v) for v in row] for row in formula])
        try:
            gamma_prime(cd, word, bs)
            ok = True
        except AssertionError:
            ok = False
        rep.emit("twist.gamma_prime_relation",
                 {"word": list(word), "point_seed": args.seed + s}, ok)


SUITES = {
    "fact": _suite_fact,
    "recursive": _suite_recursive,
    "face": _suite_face,
    "mutation": _suite_mutation,
    "exchange": _suite_exchange,
    "twist": _suite_twist,
}

MATRIX_SUITES = ("exchange", "twist")


def cmd_quiver(args) -> int:
    cd = build_cartan(args.type, args.rank)
    word = parse_word(args.word) if args.word else _default_word(cd, args.space)
    seed = _build_seed(cd, args.space, word)
    payload = seed.to_json() if args.format == "json" else seed.to_dot()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


def cmd_grade(args) -> int:
    cd = build_cartan(args.type, args.rank)
    word = parse_word(args.word) if args.word else _default_word(cd, args.space)
    seed = _build_seed(cd, args.space, word)
    gradings = assign_gradings(seed)
    payload = seed.to_json(gradings)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


def cmd_mutate(args) -> int:
    cd = build_cartan(args.type, args.rank)
    word = parse_word(args.word) if args.word else _default_word(cd, args.space)
    seed = _build_seed(cd, args.space, word)
    gradings = assign_gradings(seed)
    for vid in args.at.split(","):
        gradings = mutate_grading(seed, gradings, vid.strip())
        seed = seed.mutate(vid.strip())
    payload = seed.to_json(gradings)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


def cmd_verify(args) -> int:
    cd = build_cartan(args.type, args.rank)
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    rep = Reporter(sys.stdout)
    for name in suites:
        if name in MATRIX_SUITES and cd.family != "A":
            if args.suite == "all":
                continue
            sys.stderr.write(f"suite {name!r} supports type A only\n")
            return 2
        SUITES[name](cd, rep, args)
    sys.stderr.write(f"{rep.count - rep.failures}/{rep.count} checks passed\n")
    return 0 if rep.failures == 0 else 1


def cmd_twist(args) -> int:
    cd = build_cartan(args.type, args.rank)
    rep = Reporter(sys.stdout)
    _suite_twist(cd, rep, args)
    sys.stderr.write(f"{rep.count - rep.failures}/{rep.count} checks passed\n")
    return 0 if rep.failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="weylseeds", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, space=True):
        p.add_argument("--type", default="A", help="Dynkin family A..G")
        p.add_argument("--rank", type=int, required=True)
        p.add_argument("--word", help="comma-separated letters; signed for conf4")
        if space:
            p.add_argument("--space", default="conf3", choices=["borel", "conf3", "conf4"])
        p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("quiver", help="build and export a seed")
    common(p)
    p.add_argument("--format", default="json", choices=["json", "dot"])
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("grade", help="seed with weight gradings attached")
    common(p)
    p.set_defaults(func=cmd_grade)

    p = sub.add_parser("mutate", help="mutate a seed at a comma-separated vertex path")
    common(p)
    p.add_argument("--at", required=True, help="unfrozen vertex id(s), e.g. 1.1 or 1.1,2.1")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("verify", help="run a verification suite; JSON-lines report")
    p.add_argument("--suite", default="all", choices=sorted(SUITES) + ["all"])
    p.add_argument("--type", default="A")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--word")
    p.add_argument("--all-words", action="store_true", dest="all_words")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("twist", help="twist factorization check at sampled points")
    p.add_argument("--type", default="A")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--word")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_twist)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
