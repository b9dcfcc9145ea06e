"""Command line interface.

Exit status: 0 success, 1 formula/oracle disagreement or verification
counterexample, 2 usage or parse error, 3 refusal because of the exhaustive
bound.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import formats
from .generation import (
    Census,
    NotPrimitiveError,
    completion_count,
    completion_regions,
    distribution,
    enumerate_completions,
    generate_containing,
    generate_primitive,
    primitive_set,
)
from .occurrences import (
    PatternContext,
    count_occurrences_formula,
    letter_classes,
    lexmax_occurrence,
    lexmin_occurrence,
)
from .oracles import (
    BoundExceededError,
    EmptyPatternError,
    census_table_oracle,
    check_bound,
    completion_oracle,
    count_occurrences_oracle,
    covered_positions_oracle,
    exhaustive_bound,
    generate_containing_oracle,
    generate_primitive_oracle,
    lexmax_oracle,
    lexmin_oracle,
)
from .words import BinaryWord, read_word_list, sort_words
from . import verify as verify_mod

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3

Result = Tuple[str, int]


class UsageError(Exception):
    pass


def _word(text: Optional[str], what: str) -> BinaryWord:
    if text is None:
        raise UsageError(f"missing {what}")
    if text == "-":
        text = ""
    try:
        return BinaryWord(text)
    except ValueError as exc:
        raise UsageError(f"bad {what}: {exc}") from None


def _dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _batch(args: argparse.Namespace, flag: str, what: str) -> Tuple[List[BinaryWord], bool]:
    """Operands for a command: the seed file if given, else the single flag value."""
    if args.seed_file:
        try:
            return read_word_list(args.seed_file), True
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read seed file: {exc}") from None
    return [_word(getattr(args, flag), what)], False


def _pattern(args: argparse.Namespace) -> PatternContext:
    return PatternContext(_word(args.pattern, "pattern (-p)"))


def _patterns(args: argparse.Namespace) -> Tuple[List[BinaryWord], bool]:
    return _batch(args, "pattern", "pattern (-p)")


def _bound(args: argparse.Namespace, n: int) -> None:
    if not args.allow_large:
        check_bound(n, args.bound)


def _need(value: Optional[int], flag: str) -> int:
    if value is None:
        raise UsageError(f"missing {flag}")
    return value


def _render(records: List[Dict[str, Any]], batch: bool, fmt: str, text: Callable[[Dict[str, Any]], str]) -> str:
    if fmt == "json":
        return _dumps(records if batch else records[0])
    return "".join(text(rec) for rec in records)


# --- commands ---------------------------------------------------------------------------

def cmd_count(args: argparse.Namespace) -> Result:
    ctx = _pattern(args)
    words, batch = _batch(args, "word", "word (-w)")
    records, status = [], EXIT_OK
    for w in words:
        rec: Dict[str, Any] = {"pattern": ctx.pattern.bits, "word": w.bits, "method": args.method}
        if args.method == "formula":
            rec["count"] = count_occurrences_formula(ctx, w)
        elif args.method == "oracle":
            rec["count"] = count_occurrences_oracle(ctx.pattern, w)
        else:
            f, o = count_occurrences_formula(ctx, w), count_occurrences_oracle(ctx.pattern, w)
            rec.update(count=f, formula=f, oracle=o, agreement=f == o)
            if f != o:
                status = EXIT_MISMATCH
        records.append(rec)

    def text(rec):
        prefix = f"{rec['word'] or '-'} " if batch else ""
        if "agreement" in rec:
            return (f"{prefix}formula {rec['formula']}\n{prefix}oracle {rec['oracle']}\n"
                    f"{prefix}agreement {str(rec['agreement']).lower()}\n")
        return f"{prefix}{rec['count']}\n"

    return _render(records, batch, args.format, text), status


def _extremal(args: argparse.Namespace, kind: str) -> Result:
    ctx = _pattern(args)
    words, batch = _batch(args, "word", "word (-w)")
    fast = lexmin_occurrence if kind == "lexmin" else lexmax_occurrence
    slow = lexmin_oracle if kind == "lexmin" else lexmax_oracle
    records, status = [], EXIT_OK
    for w in words:
        rec: Dict[str, Any] = {"pattern": ctx.pattern.bits, "word": w.bits, "kind": kind, "method": args.method}
        if args.method != "oracle":
            ex = fast(ctx, w)
            rec["occurrence"] = list(ex.occurrence) if ex else None
            rec["heads"] = list(ex.heads) if ex else None
            if kind == "lexmax":
                rec["anchors"] = list(ex.anchors) if ex else None
        if args.method != "formula":
            occ = slow(ctx.pattern, w)
            rec["oracle"] = list(occ) if occ else None
            if args.method == "oracle":
                rec["occurrence"] = rec["oracle"]
            else:
                rec["agreement"] = rec["oracle"] == rec["occurrence"]
                if not rec["agreement"]:
                    status = EXIT_MISMATCH
        records.append(rec)

    def text(rec):
        prefix = f"{rec['word'] or '-'} " if batch else ""
        if rec["occurrence"] is None:
            return f"{prefix}none\n"
        out = [f"{prefix}occurrence {' '.join(map(str, rec['occurrence']))}"]
        for key in ("heads", "anchors"):
            if rec.get(key):
                out.append(f"{prefix}{key} {' '.join(map(str, rec[key]))}")
        if "agreement" in rec:
            out.append(f"{prefix}agreement {str(rec['agreement']).lower()}")
        return "\n".join(out) + "\n"

    return _render(records, batch, args.format, text), status


def cmd_lexmin(args: argparse.Namespace) -> Result:
    return _extremal(args, "lexmin")


def cmd_lexmax(args: argparse.Namespace) -> Result:
    return _extremal(args, "lexmax")


def cmd_classify(args: argparse.Namespace) -> Result:
    ctx = _pattern(args)
    words, batch = _batch(args, "word", "word (-w)")
    records, status = [], EXIT_OK
    for w in words:
        if args.position is not None and not 1 <= args.position <= len(w):
            raise UsageError(f"position {args.position} outside 1..{len(w)}")
        if lexmin_occurrence(ctx, w) is None:
            records.append({"pattern": ctx.pattern.bits, "word": w.bits, "letters": None})
            continue
        classes = letter_classes(ctx, w) if args.method != "oracle" else None
        truth = covered_positions_oracle(ctx.pattern, w) if args.method != "formula" else None
        letters = []
        for l in range(1, len(w) + 1):
            if args.position is not None and l != args.position:
                continue
            item: Dict[str, Any] = {"position": l, "letter": w.bits[l - 1]}
            if classes is not None:
                item["covered"] = classes[l - 1].covered
                item["reason"] = classes[l - 1].reason.value
            if truth is not None:
                item["oracle"] = truth[l - 1]
                if classes is None:
                    item["covered"] = truth[l - 1]
                else:
                    item["agreement"] = item["covered"] == truth[l - 1]
                    if not item["agreement"]:
                        status = EXIT_MISMATCH
            letters.append(item)
        records.append({"pattern": ctx.pattern.bits, "word": w.bits, "letters": letters})

    def text(rec):
        prefix = f"{rec['word'] or '-'} " if batch else ""
        if rec["letters"] is None:
            return f"{prefix}pattern does not occur\n"
        lines = []
        for it in rec["letters"]:
            parts = [str(it["position"]), it["letter"], "covered" if it["covered"] else "uncovered"]
            if "reason" in it:
                parts.append(it["reason"])
            if "agreement" in it:
                parts.append("agree" if it["agreement"] else "DISAGREE")
            lines.append(prefix + " ".join(parts))
        return "\n".join(lines) + "\n"

    return _render(records, batch, args.format, text), status


def _word_lists(args: argparse.Namespace, build: Callable[[BinaryWord], Dict[str, Any]]) -> Result:
    patterns, batch = _patterns(args)
    records, status = [], EXIT_OK
    for p in patterns:
        rec = build(p)
        if rec.get("agreement") is False:
            status = EXIT_MISMATCH
        records.append(rec)

    def text(rec):
        head = f"# p={rec['pattern']}\n" if batch else ""
        return head + "".join((w or "-") + "\n" for w in rec["words"])

    return _render(records, batch, args.format, text), status


def _compare(rec: Dict[str, Any], method: str, fast: Callable[[], List[BinaryWord]],
             slow: Callable[[], set]) -> Dict[str, Any]:
    if method == "oracle":
        rec["words"] = [w.bits for w in sort_words(slow())]
    else:
        got = fast()
        rec["words"] = [w.bits for w in got]
        if method == "both":
            rec["agreement"] = set(got) == slow()
    rec["size"] = len(rec["words"])
    return rec


def cmd_generate(args: argparse.Namespace) -> Result:
    n = _need(args.n, "-n")
    _bound(args, n)

    def build(p: BinaryWord) -> Dict[str, Any]:
        ctx = PatternContext(p)
        rec = {"pattern": p.bits, "n": n, "primitive": args.primitive, "method": args.method}
        if args.primitive:
            return _compare(rec, args.method, lambda: generate_primitive(ctx, n),
                            lambda: generate_primitive_oracle(p, n, bound=n))
        return _compare(rec, args.method, lambda: generate_containing(ctx, n),
                        lambda: generate_containing_oracle(p, n, bound=n))

    return _word_lists(args, build)


def cmd_primitives(args: argparse.Namespace) -> Result:
    n = _need(args.n, "-n")
    _bound(args, n)
    if args.k is not None and args.k < 1:
        raise UsageError("-k must be positive")

    def keep(p: BinaryWord, w: BinaryWord) -> bool:
        if args.exact and len(w) != n:
            return False
        return args.k is None or count_occurrences_oracle(p, w) == args.k

    def build(p: BinaryWord) -> Dict[str, Any]:
        ctx = PatternContext(p)
        rec = {"pattern": p.bits, "n": n, "k": args.k, "exact": args.exact, "method": args.method}

        def fast():
            if args.k is not None:
                words = list(primitive_set(ctx, n, args.k).words)
            else:
                words = [w for m in range(ctx.m, n + 1) for w in generate_primitive(ctx, m)]
            return [w for w in words if not args.exact or len(w) == n]

        def slow():
            return {w for m in range(ctx.m, n + 1) for w in generate_primitive_oracle(p, m, bound=n) if keep(p, w)}

        return _compare(rec, args.method, fast, slow)

    return _word_lists(args, build)


def cmd_complete(args: argparse.Namespace) -> Result:
    ctx = _pattern(args)
    m_prime = _need(args.m, "-m")
    _bound(args, m_prime)
    words, batch = _batch(args, "word", "word (-w)")
    records, status = [], EXIT_OK
    for w in words:
        rec: Dict[str, Any] = {"pattern": ctx.pattern.bits, "word": w.bits, "m": m_prime, "method": args.method}
        # rejects non-primitive words before the oracle would quietly return a set
        completion_regions(ctx, w)
        if m_prime < len(w):
            raise UsageError(f"-m {m_prime} is shorter than the word")
        if args.count:
            if args.method != "oracle":
                rec["count"] = completion_count(ctx, w, m_prime)
            if args.method != "formula":
                size = len(completion_oracle(ctx.pattern, w, m_prime, bound=m_prime))
                if args.method == "oracle":
                    rec["count"] = size
                else:
                    rec["oracle"] = size
                    rec["agreement"] = size == rec["count"]
        else:
            _compare(rec, args.method, lambda: enumerate_completions(ctx, w, m_prime),
                     lambda: completion_oracle(ctx.pattern, w, m_prime, bound=m_prime))
        if rec.get("agreement") is False:
            status = EXIT_MISMATCH
        records.append(rec)

    def text(rec):
        prefix = f"# w={rec['word'] or '-'}\n" if batch else ""
        if "count" in rec:
            line = f"{rec['count']}\n"
            if "agreement" in rec:
                line += f"oracle {rec['oracle']}\nagreement {str(rec['agreement']).lower()}\n"
            return prefix + line
        return prefix + "".join(v + "\n" for v in rec["words"])

    return _render(records, batch, args.format, text), status


def _census(args: argparse.Namespace, p: BinaryWord, n: int) -> Tuple[Census, Optional[Dict[int, int]]]:
    """Census by primitive cores (or the oracle), plus the oracle table when comparing."""
    oracle = None
    if args.method != "primitive":
        oracle = census_table_oracle(p, n, bound=n)
    if args.method == "oracle":
        return Census(p, n, dict(oracle)), None
    return distribution(p, n), oracle


def cmd_bnpk(args: argparse.Namespace) -> Result:
    n, k = _need(args.n, "-n"), _need(args.k, "-k")
    if k < 0:
        raise UsageError("-k must be nonnegative")
    _bound(args, n)
    patterns, batch = _patterns(args)
    records, status = [], EXIT_OK
    for p in patterns:
        census, oracle = _census(args, p, n)
        rec: Dict[str, Any] = {"pattern": p.bits, "n": n, "k": k, "count": census.get(k), "method": args.method}
        if oracle is not None:
            rec["oracle"] = oracle.get(k, 0)
            rec["agreement"] = rec["oracle"] == rec["count"]
            if not rec["agreement"]:
                status = EXIT_MISMATCH
        records.append(rec)

    def text(rec):
        prefix = f"{rec['pattern']} " if batch else ""
        line = f"{prefix}{rec['count']}\n"
        if "agreement" in rec:
            line += f"{prefix}oracle {rec['oracle']}\n{prefix}agreement {str(rec['agreement']).lower()}\n"
        return line

    return _render(records, batch, args.format, text), status


def cmd_table(args: argparse.Namespace) -> Result:
    n = _need(args.n, "-n")
    _bound(args, n)
    patterns, _ = _patterns(args)
    chunks, status = [], EXIT_OK
    for p in patterns:
        census, oracle = _census(args, p, n)
        agree = None
        if oracle is not None:
            agree = {k: oracle.get(k, 0) == census.get(k) for k in sorted(set(oracle) | set(census.table))}
            if not all(agree.values()):
                status = EXIT_MISMATCH
        chunks.append(_format_table(args.format, census, oracle, agree, args.method))
    if args.format == "json" and len(chunks) > 1:
        return "[" + ", ".join(c.rstrip("\n") for c in chunks) + "]\n", status
    return "".join(chunks), status


def _format_table(fmt: str, census: Census, oracle: Optional[Dict[int, int]],
                  agree: Optional[Dict[int, bool]], method: str) -> str:
    if fmt == "csv":
        if oracle is None:
            return formats.census_to_csv(census)
        lines = ["k,count,oracle,agreement"]
        lines += [f"{k},{census.get(k)},{oracle.get(k, 0)},{str(a).lower()}" for k, a in agree.items()]
        return "\n".join(lines) + "\n"
    if fmt == "bfile":
        return formats.census_to_bfile(census)
    if fmt == "json":
        data = formats.census_to_dict(census, method)
        if oracle is not None:
            data["oracle"] = [[k, oracle.get(k, 0)] for k in agree]
            data["agreement"] = all(agree.values())
        return _dumps(data)
    lines = [f"# p={census.pattern.bits} n={census.n}"]
    for k, v in sorted(census.table.items()):
        line = f"{k} {v}"
        if agree is not None:
            line += f" {'agree' if agree[k] else 'DISAGREE'}"
        lines.append(line)
    lines.append(f"sum {census.total}")
    return "\n".join(lines) + "\n"


def cmd_verify(args: argparse.Namespace) -> Result:
    if not args.allow_large:
        check_bound(args.max_n, args.bound)
    patterns = None
    if args.seed_file:
        patterns, _ = _patterns(args)
    suites = args.suite or None
    try:
        report = verify_mod.run_verify(args.max_p, args.max_n, suites, patterns)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = _dumps(report.to_dict()) if args.format == "json" else report.to_text()
    return out, EXIT_OK if report.ok else EXIT_MISMATCH


# --- parser ----------------------------------------------------------------------------------

COMMANDS = {
    "count": (cmd_count, "count occurrences of a pattern in a word"),
    "lexmin": (cmd_lexmin, "lexicographically minimal occurrence"),
    "lexmax": (cmd_lexmax, "lexicographically maximal occurrence"),
    "classify": (cmd_classify, "which letters of a word some occurrence uses"),
    "generate": (cmd_generate, "all words of length n containing the pattern"),
    "primitives": (cmd_primitives, "primitive words up to length n"),
    "complete": (cmd_complete, "pad a primitive word to length m keeping the count"),
    "bnpk": (cmd_bnpk, "number of length-n words with exactly k occurrences"),
    "table": (cmd_table, "full occurrence-count distribution for length n"),
    "verify": (cmd_verify, "run exhaustive formula-versus-oracle sweeps"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", "--pattern", help="pattern word, e.g. 0010")
    common.add_argument("-o", "--output", help="write output to this file instead of stdout")
    common.add_argument("--bound", type=int, default=None,
                        help=f"exhaustive bound (default {exhaustive_bound()}, env SUBWORDS_MAX_N)")
    common.add_argument("--allow-large", action="store_true", help="ignore the exhaustive bound")
    common.add_argument("--seed-file", help="word list (one per line) to run the command over")

    parser = argparse.ArgumentParser(prog="subwords", description="Subword occurrences in binary words.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (func, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        sp.set_defaults(func=func)
        fmts = ["text", "json", "csv", "bfile"] if name == "table" else ["text", "json"]
        sp.add_argument("--format", choices=fmts, default="text")
        if name in ("bnpk", "table"):
            sp.add_argument("--method", choices=["primitive", "oracle", "both"], default="primitive")
        elif name != "verify":
            sp.add_argument("--method", choices=["formula", "oracle", "both"], default="formula")
        if name in ("count", "lexmin", "lexmax", "classify", "complete"):
            sp.add_argument("-w", "--word", help="host word ('-' for the empty word)")
        if name in ("generate", "primitives", "bnpk", "table"):
            sp.add_argument("-n", type=int, help="word length")
        if name in ("primitives", "bnpk"):
            sp.add_argument("-k", type=int, help="exact number of occurrences")
        if name == "classify":
            sp.add_argument("-l", "--position", type=int, help="only this 1-based position")
        if name == "generate":
            sp.add_argument("--primitive", action="store_true", help="only primitive words")
        if name == "primitives":
            sp.add_argument("--exact", action="store_true", help="only words of length exactly n")
        if name == "complete":
            sp.add_argument("-m", type=int, help="target length")
            sp.add_argument("--count", action="store_true", help="print only the number of completions")
        if name == "verify":
            sp.add_argument("--max-n", type=int, default=8, help="longest host word (default 8)")
            sp.add_argument("--max-p", type=int, default=4, help="longest pattern (default 4)")
            sp.add_argument("--suite", action="append", choices=list(verify_mod.SUITES),
                            help="run only this suite (repeatable)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, status = args.func(args)
    except BoundExceededError as exc:
        print(f"subwords: {exc}; pass --allow-large to proceed", file=sys.stderr)
        return EXIT_BOUND
    except (UsageError, EmptyPatternError, NotPrimitiveError, ValueError) as exc:
        print(f"subwords: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        with open(args.output, "w", encoding="ascii", newline="\n") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
