"""Command-line interface.

Results are printed to stdout as JSON; a run manifest (inputs, seed, caps,
version, duration) is printed to stderr so stdout stays byte-identical
between repeated runs.

Exit codes: 0 success, 2 input error, 3 precondition violation,
4 cap exceeded, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from divsym import __version__
from divsym.engine import DEFAULT_MAX_M, check_eq1, ds_constant, lemma1_vanishes
from divsym.errors import CapExceeded, DivSymError, InputError, PreconditionError, VerificationError
from divsym.graphs import Graph, validate_tree
from divsym.identities import (
    all_prob_empty_sets,
    cycle_identity_check,
    lemma2_engine,
    lemma2_value,
    postnikov_check,
    q_relation_check,
    verify_eq2,
)
from divsym.instances import random_eq1_instance, random_lemma1_instance
from divsym.poly import Polynomial, compositions
from divsym.sandpile import (
    DEFAULT_MAX_STATES,
    POLICIES,
    RobPolicy,
    config_from_json,
    exact_absorption,
    simulate,
)
from divsym.trees import (
    WeightAssignment,
    acceptable_count_bruteforce,
    acceptable_count_fast,
    classify_edges,
)

log = logging.getLogger("divsym")

DEFAULT_MAX_TRIALS = 10**7


@dataclass
class RunManifest:
    command: str
    inputs: dict
    seed: int | None = None
    caps: dict = field(default_factory=dict)
    version: str = __version__
    duration_s: float = 0.0

    def to_json(self) -> dict:
        return {"format": 1, **asdict(self)}

    @classmethod
    def from_json(cls, obj) -> "RunManifest":
        obj = dict(obj)
        obj.pop("format", None)
        return cls(**obj)


def rational(q: Fraction) -> list:
    return [str(q.numerator), str(q.denominator)]


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _parse_point(text: str | None):
    if text is None:
        return None
    try:
        return tuple(Fraction(v.strip()) for v in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad --point {text!r}: {exc}") from exc


# commands


def cmd_ds(args):
    g = Graph.from_json(_load_json(args.graph))
    f = Polynomial.from_json(_load_json(args.poly))
    value = ds_constant(
        f, g, _parse_point(args.point), verify=args.verify_point,
        workers=args.workers, max_m=args.max_m,
    )
    result = {"format": 1, "value": rational(value), "text": str(value)}
    inputs = {"graph": g.to_json(), "poly": f.to_json(), "point": args.point,
              "verify_point": args.verify_point}
    return result, RunManifest("ds", inputs, caps={"max_m": args.max_m})


def cmd_tree(args):
    t = validate_tree(Graph.from_json(_load_json(args.tree)))
    w = WeightAssignment.from_json(_load_json(args.weights))
    cls = classify_edges(t, w)
    counts = {}
    if args.method in ("brute", "both"):
        if t.m > args.max_m:
            raise CapExceeded(f"brute force over {t.m}! permutations exceeds cap m <= {args.max_m}")
        counts["brute"] = acceptable_count_bruteforce(t, cls)
    if args.method in ("fast", "both"):
        counts["fast"] = acceptable_count_fast(t, cls)
    if len(set(counts.values())) != 1:
        raise VerificationError(f"counting methods disagree: {counts}")
    count = next(iter(counts.values()))
    result = {
        "format": 1,
        "edges": [list(e) for e in cls.edges],
        "regular": list(cls.regular),
        "sign": cls.sign,
        "count": count,
        "tau": cls.sign * count,
    }
    inputs = {"tree": t.to_json(), "weights": w.to_json(), "method": args.method}
    return result, RunManifest("tree", inputs, caps={"max_m": args.max_m})


def cmd_sandpile(args):
    counts = config_from_json(_load_json(args.config))
    policy = RobPolicy(args.policy, args.seed)
    inputs = {"counts": list(counts), "mode": args.mode, "policy": args.policy,
              "vertex": args.vertex}
    caps = {"max_states": args.max_states, "max_trials": args.max_trials}
    if args.vertex is not None and not 0 <= args.vertex < len(counts):
        raise PreconditionError(f"vertex {args.vertex} out of range")
    if args.mode == "solve":
        res = exact_absorption(counts, policy, max_states=args.max_states)
        result = {"format": 1, "distribution": res.to_json()}
        if args.vertex is not None:
            result["prob_vertex_empty"] = rational(res.prob_empty(args.vertex))
        return result, RunManifest("sandpile", inputs, seed=args.seed, caps=caps)
    if args.trials > args.max_trials:
        raise CapExceeded(f"{args.trials} trials exceeds cap {args.max_trials}")
    inputs["trials"] = args.trials
    res = simulate(counts, args.seed, args.trials, policy, workers=args.workers)
    result = {"format": 1, "distribution": res.to_json()}
    if args.vertex is not None:
        p = res.empty_count(args.vertex) / res.trials
        result["vertex_empty"] = {"freq": p, "stderr": res.stderr(p), "trials": res.trials}
    return result, RunManifest("sandpile", inputs, seed=args.seed, caps=caps)


def _verify_checks(args):
    """Yield (label, ok) pairs for the chosen identity family."""
    kw = {"max_m": args.max_m, "workers": args.workers}
    fam = args.family
    if fam == "lemma2":
        for n in range(1, args.n + 1):
            for i in range(n + 1):
                yield f"n={n} i={i}", lemma2_engine(i, n, **kw) == lemma2_value(i, n)
    elif fam == "eq2":
        for n in range(1, args.n + 1):
            lhs, rhs = verify_eq2(n, **kw)
            yield f"n={n}", lhs == rhs
    elif fam == "postnikov":
        for c in compositions(args.n, args.n + 1):
            lhs, rhs = postnikov_check(c, **kw)
            yield f"c={list(c)}", lhs == rhs
    elif fam == "q-relations":
        for c in compositions(args.n, args.n + 1):
            for i, ci in enumerate(c):
                if ci >= 2:
                    yield f"c={list(c)} i={i}", q_relation_check(c, i, **kw) == 0
    elif fam == "cycle":
        for c in compositions(args.n, args.n + args.d):
            lhs, rhs = cycle_identity_check(c, args.d, **kw)
            yield f"c={list(c)} identity", lhs == rhs
            probs = all_prob_empty_sets(c, args.d, **kw)
            yield f"c={list(c)} sum-to-one", sum(probs.values()) == 1
            exact = exact_absorption(c, max_states=args.max_states)
            ok = all(v == exact.prob_empty_set(P) for P, v in probs.items())
            yield f"c={list(c)} solver", ok
    elif fam == "lemma1":
        rng = random.Random(args.seed)
        for k in range(args.instances):
            h, removed, block, g, cof = random_lemma1_instance(rng, min(args.max_m, 6))
            yield f"instance {k}", lemma1_vanishes(h, removed, block, g, cof, **kw) == 0
    elif fam == "eq1":
        rng = random.Random(args.seed)
        for k in range(args.instances):
            lhs, rhs = check_eq1(*random_eq1_instance(rng, min(args.max_m, 6)), **kw)
            yield f"instance {k}", lhs == rhs


def cmd_verify(args):
    if args.family == "cycle" and args.n + args.d < 3:
        raise PreconditionError("cycle family needs n + d >= 3")
    failures, total = [], 0
    for label, ok in _verify_checks(args):
        total += 1
        if not ok:
            failures.append(label)
        log.info("%s %s", "PASS" if ok else "FAIL", label)
    result = {"format": 1, "family": args.family, "checks": total,
              "failures": failures, "passed": not failures}
    inputs = {"family": args.family, "n": args.n, "d": args.d, "instances": args.instances}
    return result, RunManifest("verify", inputs, seed=args.seed,
                               caps={"max_m": args.max_m, "max_states": args.max_states})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="divsym", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument("--max-m", type=int, default=DEFAULT_MAX_M,
                   help="cap on vertex count for permutation sums")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ds", help="divided symmetrization of a polynomial over a graph")
    s.add_argument("graph", help="graph JSON file ('-' for stdin)")
    s.add_argument("poly", help="polynomial JSON file")
    s.add_argument("--point", help="comma-separated evaluation point, e.g. 1,2,3")
    s.add_argument("--verify-point", action="store_true",
                   help="re-evaluate at a second point and fail on mismatch")
    s.set_defaults(func=cmd_ds)

    s = sub.add_parser("tree", help="sign, acceptable-permutation count and tau")
    s.add_argument("tree", help="tree JSON file")
    s.add_argument("weights", help='weights JSON file, {"w": [...]}')
    s.add_argument("--method", choices=("brute", "fast", "both"), default="fast")
    s.set_defaults(func=cmd_tree)

    s = sub.add_parser("sandpile", help="coin robbing on a cycle")
    s.add_argument("config", help='coin configuration JSON file, {"counts": [...]}')
    s.add_argument("mode", choices=("solve", "simulate"))
    s.add_argument("--seed", type=int, default=0, help="simulation seed")
    s.add_argument("--trials", type=int, default=10**5)
    s.add_argument("--policy", choices=POLICIES, default="lowest",
                   help="which robbable vertex fires next")
    s.add_argument("--vertex", type=int, help="also report P(vertex ends empty)")
    s.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    s.add_argument("--max-trials", type=int, default=DEFAULT_MAX_TRIALS)
    s.set_defaults(func=cmd_sandpile)

    s = sub.add_parser("verify", help="check an identity family exhaustively or on random instances")
    s.add_argument("family", choices=("lemma2", "eq2", "postnikov", "q-relations",
                                      "cycle", "lemma1", "eq1"))
    s.add_argument("--n", type=int, default=3, help="largest degree / coin count checked")
    s.add_argument("--d", type=int, default=1, help="largest number of empty vertices (cycle)")
    s.add_argument("--instances", type=int, default=25, help="random instances (lemma1, eq1)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s", stream=sys.stderr)
    start = time.perf_counter()
    try:
        result, manifest = args.func(args)
    except DivSymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    manifest.duration_s = round(time.perf_counter() - start, 6)
    print(json.dumps(result, sort_keys=True))
    print(json.dumps(manifest.to_json(), sort_keys=True), file=sys.stderr)
    if result.get("passed") is False:
        return VerificationError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
