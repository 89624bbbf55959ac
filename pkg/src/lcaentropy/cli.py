"""Command-line interface.

Subcommands: classify, iterate, compose, entropy, preimages, invariance,
generator, sweep.  Exit codes: 0 success, 2 configuration error, 3
enumeration cap exceeded.  All numeric output uses 12 significant digits
so tolerance checks are reproducible from logs.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

from .ca import Word, preimage_cylinders
from .entropy import (
    closed_form_entropy,
    check_invariance,
    entropy_sequence,
    generator_probe,
)
from .errors import DEFAULT_CAP, CapExceededError, LcaEntropyError, NotBipermutativeError
from .measure import MarkovMeasure, bernoulli, make_markov, uniform_measure
from .partition import PartitionSpec, default_base
from .rule import LocalRule, brute_force_permutative, classify, compose, iterate

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CAP = 3


class ConfigError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _round12(obj):
    """Round every float to 12 significant digits; NaN becomes None."""
    if isinstance(obj, float):
        return None if math.isnan(obj) else float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _emit_json(obj) -> None:
    print(json.dumps(_round12(obj), indent=2))


# ---------------------------------------------------------------------------
# config resolution


def _load_spec(inline: str | None, path: str | None, what: str):
    if inline is not None and path is not None:
        raise ConfigError(f"give either an inline {what} or a file, not both")
    if inline is None and path is None:
        return None
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                inline = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read {what} file: {exc}") from None
    try:
        return json.loads(inline)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed {what} JSON: {exc}") from None


def _resolve_rule(args, attr: str = "rule") -> LocalRule:
    spec = _load_spec(getattr(args, attr), getattr(args, attr + "_file", None), "rule")
    if spec is None:
        raise ConfigError(f"a rule is required (--{attr.replace('_', '-')} or --{attr.replace('_', '-')}-file)")
    try:
        return LocalRule.from_spec(spec)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _resolve_measure(args, m: int) -> MarkovMeasure:
    sources = [
        args.measure is not None or args.measure_file is not None,
        args.bernoulli is not None,
        args.uniform,
    ]
    if sum(sources) != 1:
        raise ConfigError(
            "exactly one measure is required (--measure/--measure-file, --bernoulli, or --uniform)"
        )
    if args.uniform:
        return uniform_measure(m)
    if args.bernoulli is not None:
        try:
            p = [float(x) for x in args.bernoulli.split(",")]
        except ValueError:
            raise ConfigError(f"malformed --bernoulli vector: {args.bernoulli!r}") from None
        return _build(bernoulli, p)
    spec = _load_spec(args.measure, args.measure_file, "measure")
    if not isinstance(spec, dict) or "P" not in spec:
        raise ConfigError("measure spec must be a JSON object with field 'P'")
    return _build(make_markov, spec["P"], spec.get("pi"))


def _build(fn, *fn_args):
    try:
        return fn(*fn_args)
    except LcaEntropyError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _resolve_partition(args, rule: LocalRule) -> PartitionSpec:
    if args.partition == "default":
        return default_base(rule)
    try:
        return PartitionSpec.parse(args.partition)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _resolve_cap(args) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get("LCA_ENTROPY_CAP")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"LCA_ENTROPY_CAP is not an integer: {env!r}") from None
    return DEFAULT_CAP


def _check_format(fmt: str, allowed: tuple[str, ...]) -> None:
    if fmt not in allowed:
        raise ConfigError(f"--format {fmt} is not supported here (choose from {', '.join(allowed)})")


def _rule_line(rule: LocalRule) -> str:
    return (
        f"m={rule.m} window=[{-rule.l},{rule.r}] coeffs=[{','.join(map(str, rule.coeffs))}]"
    )


def _word_text(w: Word, m: int) -> str:
    sep = "" if m <= 10 else ","
    return sep.join(str(s) for s in w.symbols)


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args) -> int:
    rule = _resolve_rule(args)
    cap = _resolve_cap(args)
    _check_format(args.format, ("text", "json"))
    cls = classify(rule)
    brute = None
    if rule.m ** (rule.span + 1) <= cap:
        brute = {
            off: brute_force_permutative(rule, off, cap)
            for off in range(-rule.l, rule.r + 1)
        }
    if args.format == "json":
        _emit_json(
            {
                "rule": rule.spec(),
                "class": cls.value,
                "brute_force": None
                if brute is None
                else {str(k): v for k, v in brute.items()},
            }
        )
    else:
        print(cls.value)
        if brute is not None:
            for off, ok in brute.items():
                print(f"offset {off:+d}: {'bijective' if ok else 'not bijective'}")
    return EXIT_OK


def cmd_iterate(args) -> int:
    rule = _resolve_rule(args)
    _check_format(args.format, ("text", "json"))
    out = iterate(rule, args.n)
    if args.format == "json":
        _emit_json(out.spec())
    else:
        print(_rule_line(out))
    return EXIT_OK


def cmd_compose(args) -> int:
    _check_format(args.format, ("text", "json"))
    a = _resolve_rule(args, "rule_a")
    b = _resolve_rule(args, "rule_b")
    try:
        out = compose(a, b)
    except LcaEntropyError as exc:
        raise ConfigError(str(exc)) from None
    if args.format == "json":
        _emit_json(out.spec())
    else:
        print(_rule_line(out))
    return EXIT_OK


def _entropy_payload(rule, mu, base, args, cap):
    """Formula + sequence + verdict shared by entropy and sweep."""
    note = None
    try:
        formula = closed_form_entropy(rule, mu, args.log_base)
    except NotBipermutativeError as exc:
        formula = None
        note = str(exc)
    seq = entropy_sequence(
        rule, mu, base, args.n_max, cap=cap, log_base=args.log_base
    )
    if formula is not None and len(seq.H) >= 2:
        verdict = "agree" if abs(seq.final_diff - formula) <= args.tol else "disagree"
    else:
        verdict = None
    return formula, seq, verdict, note


def cmd_entropy(args) -> int:
    rule = _resolve_rule(args)
    mu = _resolve_measure(args, rule.m)
    base = _resolve_partition(args, rule)
    cap = _resolve_cap(args)
    _check_format(args.format, ("json", "csv", "text"))
    formula, seq, verdict, note = _entropy_payload(rule, mu, base, args, cap)

    if args.format == "json":
        _emit_json(
            {
                "rule": rule.spec(),
                "formula": formula,
                "sequence": seq.as_dict(),
                "units": args.log_base,
                "base_partition": base.describe(),
                "stationary": mu.stationary,
                "verdict": verdict,
                "complete": seq.complete,
                "note": note,
            }
        )
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["n", "H", "diff", "ratio", "atoms"])
        for i, h in enumerate(seq.H):
            diff = "" if math.isnan(seq.diffs[i]) else _fmt(seq.diffs[i])
            writer.writerow(
                [i + 1, _fmt(h), diff, _fmt(seq.ratios[i]), seq.atom_counts[i]]
            )
    else:
        print(f"rule: {_rule_line(rule)} ({classify(rule).value})")
        print(f"base partition: {base.describe()}")
        print(f"measure: {'stationary' if mu.stationary else 'NONSTATIONARY (formal values)'}")
        if formula is None:
            print(f"closed form: n/a ({note})")
        else:
            print(f"closed form: {_fmt(formula)} {args.log_base}")
        print(f"{'n':>3} {'H':>18} {'diff':>18} {'ratio':>18} {'atoms':>8}")
        for i, h in enumerate(seq.H):
            diff = "-" if math.isnan(seq.diffs[i]) else _fmt(seq.diffs[i])
            print(
                f"{i + 1:>3} {_fmt(h):>18} {diff:>18} {_fmt(seq.ratios[i]):>18} "
                f"{seq.atom_counts[i]:>8}"
            )
        if not seq.complete:
            print(f"sequence truncated at n={len(seq.H)} by the enumeration cap")
        if verdict is not None:
            print(f"verdict: {verdict} (tolerance {_fmt(args.tol)})")
    return EXIT_OK


def _parse_cylinder(text: str, m: int) -> Word:
    if "@" in text:
        digits, _, start_s = text.partition("@")
        try:
            start = int(start_s)
        except ValueError:
            raise ConfigError(f"malformed cylinder start in {text!r}") from None
    else:
        digits, start = text, 0
    try:
        if "," in digits:
            symbols = tuple(int(d) for d in digits.split(","))
        else:
            symbols = tuple(int(d) for d in digits)
    except ValueError:
        raise ConfigError(f"malformed cylinder symbols in {text!r}") from None
    if not symbols:
        raise ConfigError("cylinder must have at least one symbol")
    if any(s >= m for s in symbols):
        raise ConfigError(f"cylinder symbols must be below m={m}")
    return Word(start, symbols)


def cmd_preimages(args) -> int:
    rule = _resolve_rule(args)
    cap = _resolve_cap(args)
    _check_format(args.format, ("text", "json"))
    c = _parse_cylinder(args.cylinder, rule.m)
    words = preimage_cylinders(rule, c, cap)
    if args.format == "json":
        _emit_json(
            {
                "rule": rule.spec(),
                "cylinder": {"start": c.start, "symbols": list(c.symbols)},
                "window": [c.start - rule.l, c.end + rule.r],
                "count": len(words),
                "preimages": [_word_text(w, rule.m) for w in words],
            }
        )
    else:
        for w in words:
            print(f"[{w.start}..{w.end}] {_word_text(w, rule.m)}")
    return EXIT_OK


def cmd_invariance(args) -> int:
    rule = _resolve_rule(args)
    mu = _resolve_measure(args, rule.m)
    cap = _resolve_cap(args)
    _check_format(args.format, ("text", "json"))
    report = check_invariance(rule, mu, args.max_len, tol=args.tol, cap=cap)
    if args.format == "json":
        payload = report.as_dict()
        payload["rule"] = rule.spec()
        _emit_json(payload)
    else:
        print(report.describe())
    return EXIT_OK


def cmd_generator(args) -> int:
    rule = _resolve_rule(args)
    base = _resolve_partition(args, rule)
    cap = _resolve_cap(args)
    _check_format(args.format, ("text", "json"))
    report = generator_probe(rule, base, args.n, cap=cap)
    if args.format == "json":
        payload = report.as_dict()
        payload["rule"] = rule.spec()
        _emit_json(payload)
    else:
        print(report.describe())
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep


def _parse_grid(text: str):
    try:
        name, _, rng = text.partition("=")
        start_s, stop_s, step_s = rng.split(":")
        start, stop, step = float(start_s), float(stop_s), float(step_s)
    except ValueError:
        raise ConfigError(f"malformed grid {text!r}; expected name=start:stop:step") from None
    if not name.isidentifier():
        raise ConfigError(f"grid variable {name!r} is not a valid identifier")
    if step <= 0:
        raise ConfigError("grid step must be positive")
    values = []
    count = int((stop - start) / step + 1e-9) + 1 if stop >= start else 0
    for i in range(count):
        values.append(float(f"{start + i * step:.12g}"))
    return name, values


def _eval_entry(entry, name: str, value: float) -> float:
    if isinstance(entry, (int, float)):
        return float(entry)
    if isinstance(entry, str):
        try:
            return float(eval(compile(entry, "<sweep>", "eval"), {"__builtins__": {}}, {name: value}))
        except Exception as exc:
            raise ConfigError(f"cannot evaluate {entry!r}: {exc}") from None
    raise ConfigError(f"grid template entries must be numbers or expressions, got {entry!r}")


def _instantiate_rule(spec: dict, name: str, value: float) -> LocalRule:
    coeffs = [int(round(_eval_entry(c, name, value))) for c in spec["coeffs"]]
    return LocalRule.from_spec({**spec, "coeffs": coeffs})


def _instantiate_measure(args, spec, name: str, value: float, m: int) -> MarkovMeasure:
    if args.uniform:
        return uniform_measure(m)
    if args.bernoulli is not None:
        p = [_eval_entry(x, name, value) for x in args.bernoulli.split(",")]
        return bernoulli(p)
    P = [[_eval_entry(x, name, value) for x in row] for row in spec["P"]]
    pi = spec.get("pi")
    if pi is not None:
        pi = [_eval_entry(x, name, value) for x in pi]
    return make_markov(P, pi)


def cmd_sweep(args) -> int:
    _check_format(args.format, ("csv",))
    name, values = _parse_grid(args.grid)
    rule_spec = _load_spec(args.rule, args.rule_file, "rule")
    if rule_spec is None:
        raise ConfigError("a rule is required (--rule or --rule-file)")
    measure_spec = None
    if not args.uniform and args.bernoulli is None:
        measure_spec = _load_spec(args.measure, args.measure_file, "measure")
        if measure_spec is None:
            raise ConfigError(
                "a measure is required (--measure/--measure-file, --bernoulli, or --uniform)"
            )
    cap = _resolve_cap(args)

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow([name, "formula", "final_diff", "verdict", "error"])
    for value in values:
        try:
            rule = _instantiate_rule(rule_spec, name, value)
            mu = _instantiate_measure(args, measure_spec, name, value, rule.m)
            base = _resolve_partition(args, rule)
            formula, seq, verdict, _note = _entropy_payload(rule, mu, base, args, cap)
            writer.writerow(
                [
                    _fmt(value),
                    "" if formula is None else _fmt(formula),
                    "" if math.isnan(seq.final_diff) else _fmt(seq.final_diff),
                    "" if verdict is None else verdict,
                    "",
                ]
            )
        except (ConfigError, LcaEntropyError, ValueError) as exc:
            writer.writerow([_fmt(value), "", "", "", str(exc)])
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=None,
                        help=f"enumeration cap (default: LCA_ENTROPY_CAP or {DEFAULT_CAP})")
    common.add_argument("--tol", type=float, default=1e-9, help="agreement tolerance")
    common.add_argument("--log-base", choices=["nats", "bits", "base-m"], default="nats")
    common.add_argument("--format", choices=["json", "csv", "text"], default=None)
    common.add_argument("--partition", default="default",
                        help="base partition: default, zero-time, or window:a,b")

    rule_opts = argparse.ArgumentParser(add_help=False)
    rule_opts.add_argument("--rule", help='rule JSON, e.g. {"m":2,"l":1,"r":1,"coeffs":[1,0,1]}')
    rule_opts.add_argument("--rule-file", help="path to a rule JSON file")

    measure_opts = argparse.ArgumentParser(add_help=False)
    measure_opts.add_argument("--measure", help='measure JSON {"P": [[...]], "pi": [...]} (pi optional)')
    measure_opts.add_argument("--measure-file", help="path to a measure JSON file")
    measure_opts.add_argument("--bernoulli", help="comma-separated probability vector")
    measure_opts.add_argument("--uniform", action="store_true", help="uniform Bernoulli measure")

    parser = argparse.ArgumentParser(
        prog="lca-entropy",
        description="Entropy of linear cellular automata over Z_m under Markov measures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common, rule_opts],
                       help="permutativity class with brute-force confirmation")
    p.set_defaults(fn=cmd_classify, default_format="text")

    p = sub.add_parser("iterate", parents=[common, rule_opts], help="rule of the n-th iterate")
    p.add_argument("-n", type=int, default=2, help="iteration count (default 2)")
    p.set_defaults(fn=cmd_iterate, default_format="text")

    p = sub.add_parser("compose", parents=[common], help="rule of the composition a then b")
    p.add_argument("--rule-a", required=True, help="rule JSON of the outer factor")
    p.add_argument("--rule-b", required=True, help="rule JSON of the other factor")
    p.set_defaults(fn=cmd_compose, default_format="text", rule_a_file=None, rule_b_file=None)

    p = sub.add_parser("entropy", parents=[common, rule_opts, measure_opts],
                       help="closed-form entropy vs the brute-force join sequence")
    p.add_argument("--n-max", type=int, default=4, help="join depth (default 4)")
    p.set_defaults(fn=cmd_entropy, default_format="json")

    p = sub.add_parser("preimages", parents=[common, rule_opts],
                       help="preimage cylinders of a cylinder")
    p.add_argument("--cylinder", required=True, help="digits[@start], e.g. 010@-1")
    p.set_defaults(fn=cmd_preimages, default_format="text")

    p = sub.add_parser("invariance", parents=[common, rule_opts, measure_opts],
                       help="measure-preservation check over short cylinders")
    p.add_argument("--max-len", type=int, default=4, help="longest cylinder length (default 4)")
    p.set_defaults(fn=cmd_invariance, default_format="text", tol=1e-10)

    p = sub.add_parser("generator", parents=[common, rule_opts],
                       help="finite-scale generator probe (itinerary injectivity)")
    p.add_argument("-n", type=int, default=3, help="join depth (default 3)")
    p.set_defaults(fn=cmd_generator, default_format="text")

    p = sub.add_parser("sweep", parents=[common, rule_opts, measure_opts],
                       help="CSV sweep of a grid variable in the rule or measure spec")
    p.add_argument("--grid", required=True, help="name=start:stop:step")
    p.add_argument("--n-max", type=int, default=3, help="join depth per grid point (default 3)")
    p.set_defaults(fn=cmd_sweep, default_format="csv")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (NotBipermutativeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
