"""Command-line front end.

Subcommands: check, interpolate, separate, countermodel, amalgamate,
embed, lindenbaum, lemmas.  Exit codes: 0 success or holds, 1 fails with
a witness, 2 inconclusive within the searched bounds, 3 usage error.

Output is deterministic: identical argv, input files, and seed produce
byte-identical bytes.  JSON documents are sorted-key and carry the seed;
nothing is stamped with times or machine state.  The environment variable
GOEDEL_BUDGET (an integer) replaces the default clone and extension-step
budgets when the flags are not given.

Formula arguments accept either a file path or literal formula text.
Theory files hold one formula per line with # comments.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from . import interpolation, lindenbaum, linorder, semantics, suites
from .decision import (
    DEFAULT_STATE_CAP,
    EntailmentVerdict,
    NonPropositionalError,
    SearchBudgetExceeded,
    fo_check_bounded,
    one_entails,
)
from .interpolation import (
    DEFAULT_CLONE_BUDGET,
    DEFAULT_HENKIN_BUDGET,
    CloneBudgetError,
    PreconditionError,
    countermodel_synthesize,
    find_separator,
    interpolate,
)
from .lindenbaum import ChainError, CompleteTheoryOracle, build_chain, chain_to_dict
from .linorder import (
    OrderError,
    amalgam_to_dict,
    amalgam_to_dot,
    amalgamate,
    chain_from_dict,
    embed_into_unit,
    linhom_from_dict,
)
from .semantics import valuation_from_dict, valuation_to_dict
from .syntax import (
    Formula,
    ParseError,
    SyntaxInvariantError,
    delta_neg,
    enumerate_closed_formulas,
    language_of,
    parse_formula,
    parse_theory,
    pretty,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by every subcommand."""

    depth_budget: int = 3
    clone_budget: int = DEFAULT_CLONE_BUDGET
    henkin_budget: int = DEFAULT_HENKIN_BUDGET
    max_universe: int = 3
    seed: int = 0
    output_format: str = "text"

    def __post_init__(self):
        if self.depth_budget <= 0 or self.clone_budget <= 0 or self.henkin_budget <= 0:
            raise ValueError("budgets must be positive")
        if self.max_universe <= 0:
            raise ValueError("max_universe must be positive")
        if self.output_format not in ("text", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract wants 3
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Input loading
# ---------------------------------------------------------------------------


def _load_formula(arg: str) -> Formula:
    """File path or literal formula text; a formula file holds exactly one
    formula besides comments and blank lines."""
    if os.path.isfile(arg):
        lines = []
        with open(arg, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if line:
                    lines.append(line)
        if len(lines) != 1:
            raise UsageError(f"{arg}: expected exactly one formula, found {len(lines)}")
        return parse_formula(lines[0])
    return parse_formula(arg)


def _load_theory(arg: str) -> List[Formula]:
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return parse_theory(fh.read())
    return parse_theory(arg)


def _load_json(arg: str) -> dict:
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = arg
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{arg}: invalid JSON ({e})") from None
    if not isinstance(obj, dict):
        raise UsageError(f"{arg}: expected a JSON object")
    return obj


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational: {text!r}") from None


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _verdict_dict(v: EntailmentVerdict) -> dict:
    d: dict = {"holds": v.holds, "exhaustive": v.exhaustive}
    if v.states_checked is not None:
        d["states_checked"] = v.states_checked
    w = v.witness_valuation()
    if w is not None:
        d["witness"] = valuation_to_dict(w)
    return d


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(config: RunConfig, payload: dict, text_lines: Sequence[str]) -> None:
    payload = {**payload, "seed": config.seed}
    if config.output_format == "json":
        print(_dump(payload))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_check(args, config: RunConfig) -> int:
    if args.taut is not None:
        theory: List[Formula] = []
        goal = _load_formula(args.taut)
        mode = "tautology"
    else:
        theory = _load_theory(args.entail[0])
        goal = _load_formula(args.entail[1])
        mode = "entailment"
    payload: dict = {
        "command": "check",
        "mode": mode,
        "formula": pretty(goal),
        "theory": [pretty(g) for g in theory],
    }
    try:
        verdict = one_entails(theory, goal)
    except NonPropositionalError:
        verdict = fo_check_bounded(theory, goal, max_universe=config.max_universe)
    payload["verdict"] = _verdict_dict(verdict)
    if not verdict.holds:
        witness = verdict.witness_valuation()
        _emit(
            config,
            payload,
            [
                f"{mode}: fails",
                f"seed: {config.seed}",
                "witness:",
                _dump(valuation_to_dict(witness)),
            ],
        )
        return EXIT_FAIL
    if not verdict.exhaustive or verdict.bounded:
        _emit(
            config,
            payload,
            [
                f"{mode}: no countermodel up to universe size {config.max_universe} (bounded, inconclusive)",
                f"seed: {config.seed}",
            ],
        )
        return EXIT_INCONCLUSIVE
    _emit(config, payload, [f"{mode}: holds", f"seed: {config.seed}"])
    return EXIT_OK


def _cmd_interpolate(args, config: RunConfig) -> int:
    phi = _load_formula(args.phi)
    psi = _load_formula(args.psi)
    payload: dict = {
        "command": "interpolate",
        "phi": pretty(phi),
        "psi": pretty(psi),
        "g_only": args.g_only,
    }
    try:
        theta = interpolate(phi, psi, args.g_only, clone_budget=config.clone_budget)
    except PreconditionError as e:
        payload["interpolant"] = None
        payload["reason"] = "entailment fails"
        payload["verdict"] = _verdict_dict(e.verdict)
        witness = e.verdict.witness_valuation()
        _emit(
            config,
            payload,
            [
                "no interpolant: the entailment fails",
                f"seed: {config.seed}",
                "witness:",
                _dump(valuation_to_dict(witness)),
            ],
        )
        return EXIT_FAIL
    if theta is None:
        payload["interpolant"] = None
        payload["reason"] = "no separator over the common language"
        _emit(
            config,
            payload,
            ["no interpolant over the common language", f"seed: {config.seed}"],
        )
        return EXIT_FAIL
    certs = {
        "phi_entails_interpolant": _verdict_dict(one_entails([phi], theta)),
        "interpolant_entails_psi": _verdict_dict(one_entails([theta], psi)),
    }
    payload["interpolant"] = pretty(theta)
    payload["certificates"] = certs
    _emit(
        config,
        payload,
        [
            f"interpolant: {pretty(theta)}",
            f"seed: {config.seed}",
            "certificates:",
            _dump(certs),
        ],
    )
    return EXIT_OK


def _cmd_separate(args, config: RunConfig) -> int:
    t_theory = _load_theory(args.t_theory)
    u_theory = _load_theory(args.u_theory)
    payload: dict = {
        "command": "separate",
        "t_theory": [pretty(g) for g in t_theory],
        "u_theory": [pretty(g) for g in u_theory],
        "g_only": args.g_only,
    }
    cert = find_separator(t_theory, u_theory, args.g_only, clone_budget=config.clone_budget)
    if cert is None:
        payload["separable"] = False
        _emit(config, payload, ["inseparable", f"seed: {config.seed}"])
        return EXIT_FAIL
    certs = {
        "t_entails_separator": _verdict_dict(cert.t_proof),
        "u_entails_negation": _verdict_dict(cert.u_proof),
    }
    payload["separable"] = True
    payload["separator"] = pretty(cert.separator)
    payload["certificates"] = certs
    _emit(
        config,
        payload,
        [
            f"separator: {pretty(cert.separator)}",
            f"seed: {config.seed}",
            "certificates:",
            _dump(certs),
        ],
    )
    return EXIT_OK


def _cmd_countermodel(args, config: RunConfig) -> int:
    phi = _load_formula(args.phi)
    psi = _load_formula(args.psi)
    payload: dict = {
        "command": "countermodel",
        "phi": pretty(phi),
        "psi": pretty(psi),
        "g_only": args.g_only,
    }
    enumeration = None
    if args.depth_budget is not None:
        lang = language_of([phi, delta_neg(psi)])
        enumeration = enumerate_closed_formulas(lang, max_depth=args.depth_budget)
    try:
        valuation, trace = countermodel_synthesize(
            phi,
            psi,
            args.g_only,
            config.henkin_budget,
            clone_budget=config.clone_budget,
            enumeration=enumeration,
            seed=config.seed,
        )
    except PreconditionError as e:
        payload["countermodel"] = None
        payload["reason"] = str(e)
        payload["verdict"] = _verdict_dict(e.verdict)
        _emit(
            config,
            payload,
            [f"no countermodel: {e}", f"seed: {config.seed}"],
        )
        return EXIT_FAIL
    payload["countermodel"] = valuation_to_dict(valuation)
    payload["trace"] = trace.to_dict()
    _emit(
        config,
        payload,
        [
            "countermodel:",
            _dump(valuation_to_dict(valuation)),
            f"seed: {config.seed}",
            "trace:",
            _dump(trace.to_dict()),
        ],
    )
    return EXIT_OK


def _cmd_amalgamate(args, config: RunConfig) -> int:
    doc = _load_json(args.input)
    for key in ("b0", "b1", "b2", "f1", "f2"):
        if key not in doc:
            raise UsageError(f"{args.input}: missing key {key!r}")
    try:
        b0 = chain_from_dict(doc["b0"])
        b1 = chain_from_dict(doc["b1"])
        b2 = chain_from_dict(doc["b2"])
        f1 = linhom_from_dict(doc["f1"], b0, b1)
        f2 = linhom_from_dict(doc["f2"], b0, b2)
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"{args.input}: bad chain or map ({e})") from None
    result = amalgamate(b0, b1, b2, f1, f2)
    payload = {"command": "amalgamate", **amalgam_to_dict(result)}
    if args.dot is not None:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(amalgam_to_dot(result))
    _emit(
        config,
        payload,
        [
            "amalgam: " + " < ".join(result.amalgam.elements),
            f"seed: {config.seed}",
            _dump(amalgam_to_dict(result)),
        ],
    )
    return EXIT_OK


def _cmd_embed(args, config: RunConfig) -> int:
    doc = _load_json(args.chain)
    try:
        chain = chain_from_dict(doc)
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"{args.chain}: bad chain ({e})") from None
    table = embed_into_unit(chain)
    embedding = {e: str(table[e]) for e in chain.elements}
    payload = {"command": "embed", "elements": list(chain.elements), "embedding": embedding}
    _emit(
        config,
        payload,
        [f"{e} -> {embedding[e]}" for e in chain.elements] + [f"seed: {config.seed}"],
    )
    return EXIT_OK


def _cmd_lindenbaum(args, config: RunConfig) -> int:
    formulas = _load_theory(args.formulas)
    if args.valuation is not None:
        oracle = CompleteTheoryOracle(valuation_from_dict(_load_json(args.valuation)))
    else:
        assignment = {}
        for item in args.assign or []:
            if "=" not in item:
                raise UsageError(f"--assign expects name=value, got {item!r}")
            name, _, value = item.partition("=")
            assignment[name.strip()] = _parse_fraction(value.strip())
        oracle = CompleteTheoryOracle.from_assignment(assignment)
    chain = build_chain(oracle, formulas, g_only=args.g_only)
    doc = chain_to_dict(chain)
    payload = {"command": "lindenbaum", **doc}
    text = [
        "classes (bottom to top):",
    ]
    for cls in doc["classes"]:
        text.append(f"  value {cls['value']}: " + ", ".join(cls["members"]))
    text.append(f"seed: {config.seed}")
    _emit(config, payload, text)
    return EXIT_OK


def _cmd_lemmas(args, config: RunConfig) -> int:
    report = lemma_suites(config, args.suite, args.cases, args.item7_cases)
    payload = {"command": "lemmas", **report.to_dict()}
    text = [f"suite: {report.suite}", f"seed: {report.seed}"]
    for item in report.items:
        status = "ok" if item.ok else f"{len(item.failures)} FAILED"
        text.append(f"item {item.item}: {item.cases} cases, {status}")
        for detail in item.failures:
            text.append(f"  {detail}")
    text.append("result: " + ("ok" if report.ok else "FAILED"))
    _emit(config, payload, text)
    return EXIT_OK if report.ok else EXIT_FAIL


def lemma_suites(
    config: RunConfig,
    suite: str = "property",
    cases: Optional[int] = None,
    item7_cases: Optional[int] = None,
) -> suites.SuiteReport:
    """Run one of the three lemma suites under the config seed."""
    if suite == "property":
        return suites.property_suite(cases if cases is not None else 1000, config.seed)
    if suite == "constants":
        return suites.constants_suite(
            cases if cases is not None else 500,
            item7_cases if item7_cases is not None else 200,
            config.seed,
            max_universe=config.max_universe,
        )
    if suite == "eqd":
        return suites.eqd_suite(cases if cases is not None else 200, config.seed)
    raise UsageError(f"unknown suite {suite!r} (property, constants, eqd)")


# ---------------------------------------------------------------------------
# Parser assembly and dispatch
# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--clone-budget", type=int, default=None)
    common.add_argument("--budget", type=int, default=None, help="extension steps")
    common.add_argument("--depth-budget", type=int, default=None)
    common.add_argument("--max-universe", type=int, default=3)

    parser = _Parser(prog="goedel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("check", parents=[common], help="decide tautology or 1-entailment")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--taut", metavar="FORMULA")
    group.add_argument("--entail", nargs=2, metavar=("THEORY", "FORMULA"))

    p = sub.add_parser("interpolate", parents=[common], help="interpolant for phi entails psi")
    p.add_argument("phi")
    p.add_argument("psi")
    p.add_argument("--g-only", action="store_true", help="Delta-free interpolant")

    p = sub.add_parser("separate", parents=[common], help="separator for a theory pair")
    p.add_argument("t_theory")
    p.add_argument("u_theory")
    p.add_argument("--g-only", action="store_true")

    p = sub.add_parser("countermodel", parents=[common], help="countermodel for a failed entailment")
    p.add_argument("phi")
    p.add_argument("psi")
    p.add_argument("--g-only", action="store_true")

    p = sub.add_parser("amalgamate", parents=[common], help="amalgamate a span of chains")
    p.add_argument("input", help="JSON with b0, b1, b2, f1, f2")
    p.add_argument("--dot", metavar="FILE", default=None, help="also write a DOT rendering")

    p = sub.add_parser("embed", parents=[common], help="embed a chain into [0,1]")
    p.add_argument("chain", help="JSON with elements")

    p = sub.add_parser("lindenbaum", parents=[common], help="equivalence-class chain of formulas")
    p.add_argument("formulas", help="theory file or literal text")
    p.add_argument("--valuation", metavar="FILE", default=None, help="valuation JSON")
    p.add_argument("--assign", action="append", metavar="NAME=VALUE")
    p.add_argument("--g-only", action="store_true")

    p = sub.add_parser("lemmas", parents=[common], help="run a lemma-checking suite")
    p.add_argument("--suite", choices=("property", "constants", "eqd"), required=True)
    p.add_argument("--cases", type=int, default=None)
    p.add_argument("--item7-cases", type=int, default=None)

    return parser


_HANDLERS = {
    "check": _cmd_check,
    "interpolate": _cmd_interpolate,
    "separate": _cmd_separate,
    "countermodel": _cmd_countermodel,
    "amalgamate": _cmd_amalgamate,
    "embed": _cmd_embed,
    "lindenbaum": _cmd_lindenbaum,
    "lemmas": _cmd_lemmas,
}


def _config_from(args) -> RunConfig:
    env = os.environ.get("GOEDEL_BUDGET")
    env_budget: Optional[int] = None
    if env:
        try:
            env_budget = int(env)
        except ValueError:
            raise UsageError(f"GOEDEL_BUDGET must be an integer, got {env!r}") from None
        if env_budget <= 0:
            raise UsageError("GOEDEL_BUDGET must be positive")
    clone = args.clone_budget
    if clone is None:
        clone = env_budget if env_budget is not None else DEFAULT_CLONE_BUDGET
    henkin = args.budget
    if henkin is None:
        henkin = env_budget if env_budget is not None else DEFAULT_HENKIN_BUDGET
    try:
        return RunConfig(
            depth_budget=args.depth_budget if args.depth_budget is not None else 3,
            clone_budget=clone,
            henkin_budget=henkin,
            max_universe=args.max_universe,
            seed=args.seed,
            output_format=args.format,
        )
    except ValueError as e:
        raise UsageError(str(e)) from None


def run_command(argv: Sequence[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        config = _config_from(args)
        return _HANDLERS[args.command](args, config)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, SyntaxInvariantError, ChainError, OrderError, NonPropositionalError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SearchBudgetExceeded as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except CloneBudgetError as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
