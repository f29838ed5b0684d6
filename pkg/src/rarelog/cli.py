"""Command-line entry point: ``rarelog {gen,train,classify,eval,inspect,run}``.

Exit codes: 0 success, 2 bad configuration, 3 I/O failure, 4 degenerate
training set (only one class among the training events).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bayes import DEFAULT_ALPHA, DegenerateTrainingSet, most_informative, render_feature
from .evaluate import render_report
from .pipeline import LogClassifier, ModelFormatError, evaluate_files, iter_predictions, train_from_files
from .synth import GeneratorSpec, write_corpus
from .tokens import DEFAULT_STOP_WORDS, TokenizerConfig, load_stop_words

EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_DEGENERATE = 4


class ConfigError(Exception):
    pass


def _fraction(text):
    v = float(text)
    if not 0 <= v <= 1:
        raise argparse.ArgumentTypeError(f"{text} is not in [0, 1]")
    return v


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text} is not >= 1")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"{text} is not > 0")
    return v


def _add_training_args(p):
    p.add_argument("--input", action="append", required=True, metavar="FILE",
                   help="log file; repeat to concatenate files in order")
    p.add_argument("--features", type=_positive_int, default=500, metavar="P")
    p.add_argument("--prealloc-frac", type=_fraction, default=0.5, metavar="Q",
                   help="fraction of feature slots reserved for error tokens")
    p.add_argument("--train-size", type=_positive_int, required=True, metavar="N")
    p.add_argument("--alpha", type=_positive_float, default=DEFAULT_ALPHA)
    p.add_argument("--stop-words", metavar="FILE")


def _add_report_args(p):
    p.add_argument("--top", type=_positive_int, default=5, metavar="K")
    p.add_argument("--test-size", type=_positive_int, metavar="M",
                   help="cap the test set at its first M events")
    p.add_argument("--out", metavar="FILE", help="also write the report here")
    p.add_argument("--json", metavar="FILE", help="write a JSON report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rarelog",
        description="Rare error event classification for semi-structured logs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a synthetic labeled corpus")
    p.add_argument("--count", type=_positive_int, required=True)
    p.add_argument("--error-rate", type=_fraction, default=0.01)
    p.add_argument("--format-mix", type=_fraction, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, metavar="FILE")
    p.add_argument("--truth", metavar="FILE",
                   help="ground-truth sidecar (default: OUT.truth)")

    p = sub.add_parser("train", help="train a model on the first N events")
    _add_training_args(p)
    p.add_argument("--model", required=True, metavar="FILE")

    p = sub.add_parser("classify", help="write per-event predictions")
    p.add_argument("--model", required=True, metavar="FILE")
    p.add_argument("--input", action="append", required=True, metavar="FILE")
    p.add_argument("--out", metavar="FILE", help="predictions file (default stdout)")

    p = sub.add_parser("eval", help="evaluate a model on the events after its training prefix")
    p.add_argument("--model", required=True, metavar="FILE")
    p.add_argument("--input", action="append", required=True, metavar="FILE")
    _add_report_args(p)

    p = sub.add_parser("inspect", help="list the most informative features")
    p.add_argument("--model", required=True, metavar="FILE")
    p.add_argument("--top", type=_positive_int, default=5, metavar="K")

    p = sub.add_parser("run", help="parse, train, classify and evaluate in one go")
    _add_training_args(p)
    _add_report_args(p)
    p.add_argument("--model", metavar="FILE", help="also save the trained model")
    return parser


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _emit_report(args, report):
    text = render_report(report)
    sys.stdout.write(text)
    if args.out:
        _write(args.out, text)
    if args.json:
        _write(args.json, json.dumps(report.to_dict(), indent=1) + "\n")


def _tokenizer(args):
    words = load_stop_words(args.stop_words) if args.stop_words else DEFAULT_STOP_WORDS
    return TokenizerConfig(stop_words=words)


def _train(args):
    try:
        return train_from_files(args.input, args.train_size, args.features,
                                args.prealloc_frac, args.alpha, _tokenizer(args))
    except DegenerateTrainingSet:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _evaluate(args, clf):
    try:
        return evaluate_files(clf, args.input, args.top, args.test_size)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_gen(args):
    spec = GeneratorSpec(count=args.count, error_rate=args.error_rate,
                         seed=args.seed, format_mix=args.format_mix)
    counts = write_corpus(spec, args.out, args.truth or args.out + ".truth")
    print(f"wrote {args.count} messages ({counts['error']} error) to {args.out}")


def cmd_train(args):
    clf = _train(args)
    clf.save(args.model)
    voc = clf.model.vocabulary
    print(f"trained on {clf.model.train_size} events, {len(voc)} features "
          f"({voc.prealloc_count} preallocated)")


def cmd_classify(args):
    clf = LogClassifier.load(args.model)
    out = open(args.out, "w", encoding="utf-8", newline="\n") if args.out else sys.stdout
    try:
        for line in iter_predictions(clf, args.input):
            out.write(line)
    finally:
        if args.out:
            out.close()


def cmd_eval(args):
    _emit_report(args, _evaluate(args, LogClassifier.load(args.model)))


def cmd_inspect(args):
    clf = LogClassifier.load(args.model)
    print("Most Informative Features")
    for f in most_informative(clf.model, args.top):
        print(render_feature(f))


def cmd_run(args):
    clf = _train(args)
    if args.model:
        clf.save(args.model)
    _emit_report(args, _evaluate(args, clf))


COMMANDS = {"gen": cmd_gen, "train": cmd_train, "classify": cmd_classify,
            "eval": cmd_eval, "inspect": cmd_inspect, "run": cmd_run}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except DegenerateTrainingSet as exc:
        print(f"rarelog: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ConfigError, ModelFormatError) as exc:
        print(f"rarelog: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"rarelog: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
