"""Command-line front end: JSON in, JSON out.

Every command prints one report object on stdout.  Exit status is 0 on
success, 1 when a verification fails and 2 on bad usage or input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Any, Callable, Sequence

from .algebra import CPoly, NCPoly, cpoly_to_json, format_cpoly, format_ncpoly, ncpoly_to_json
from .combinatorics import (
    MultirectCoords,
    check_composition,
    check_partition,
    check_set_composition,
    interlacing_from_multirect,
    interlacing_from_partition,
    multirect_from_interlacing,
    partition_from_interlacing,
)
from .posets import RankedPoset, poset_from_json
from .qsym import (
    F_P,
    check_Sx_membership,
    eval_virtual,
    monomial_M,
    monomial_M_virtual,
    qsym_from_json,
    substitute_x_to_pq,
)
from .superqsym import N_P, check_Spq_membership
from .verify import ALL_RUNS, run_main_theorem
from .wqsym import (
    bold_F_P,
    bold_N_P,
    luoto_expand,
    luoto_expand_poset,
    luoto_product,
    set_composition_expansion_to_json,
    wq_from_json,
)


class UsageError(ValueError):
    pass


class Outcome:
    """What a command hands back to the dispatcher."""

    def __init__(self, result: Any, text: str, passed: bool = True, corpus_size: int = 1):
        self.result = result
        self.text = text
        self.passed = passed
        self.corpus_size = corpus_size


# -- input parsing ----------------------------------------------------------


def _json_arg(raw: str, what: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON for {what}: {exc}") from None


def _read_poset_source(source: str | None) -> Any:
    if source is None:
        raise UsageError("--poset is required")
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read poset file: {exc}") from None
    return _json_arg(text, "--poset")


def _poset(args: argparse.Namespace) -> RankedPoset:
    obj = args._poset_obj
    if not isinstance(obj, dict) or "n" not in obj:
        raise UsageError('poset JSON must be an object like {"n": 3, "covers": [[1, 2]]}')
    return poset_from_json(obj)


def _require(args: argparse.Namespace, name: str) -> Any:
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required")
    return value


def _int_list(raw: str, what: str) -> list[int]:
    obj = _json_arg(raw, what)
    if not isinstance(obj, list) or not all(isinstance(v, int) for v in obj):
        raise UsageError(f"{what} must be a JSON list of integers")
    return obj


def _set_composition(raw: str, what: str):
    obj = _json_arg(raw, what)
    if not isinstance(obj, list) or not all(isinstance(b, list) for b in obj):
        raise UsageError(f"{what} must be a JSON list of blocks")
    return check_set_composition(obj)


# -- commands ---------------------------------------------------------------


def _poly_outcome(f: CPoly) -> Outcome:
    return Outcome(cpoly_to_json(f), format_cpoly(f))


def _ncpoly_outcome(f: NCPoly) -> Outcome:
    return Outcome(ncpoly_to_json(f), format_ncpoly(f))


def cmd_fp(args):
    return _poly_outcome(F_P(_poset(args), _require(args, "vars")))


def cmd_np(args):
    return _poly_outcome(N_P(_poset(args), _require(args, "m")))


def cmd_boldfp(args):
    return _ncpoly_outcome(bold_F_P(_poset(args), _require(args, "k")))


def cmd_boldnp(args):
    return _ncpoly_outcome(bold_N_P(_poset(args), _require(args, "m")))


def _composition(args):
    return check_composition(_int_list(_require(args, "composition"), "--composition"))


def cmd_mi(args):
    return _poly_outcome(monomial_M(_composition(args), _require(args, "vars")))


def cmd_mi_virtual(args):
    return _poly_outcome(monomial_M_virtual(_composition(args), _require(args, "m")).value)


def cmd_subst_pq(args):
    m = _require(args, "m")
    if args.qsym is not None:
        F = qsym_from_json(_json_arg(args.qsym, "--qsym"))
    else:
        F = {_composition(args): 1}
    return _poly_outcome(substitute_x_to_pq(eval_virtual(F, m)))


def _coords_result(xs) -> Outcome:
    pq = multirect_from_interlacing(xs)
    lam, shift = partition_from_interlacing(xs)
    result = {"x": list(xs), "p": list(pq.p), "q": list(pq.q), "partition": list(lam), "shift": shift}
    text = f"x = {list(xs)}\np = {list(pq.p)}\nq = {list(pq.q)}\npartition = {list(lam)}, shift {shift}"
    return Outcome(result, text)


def cmd_coords(args):
    given = [a for a in ("partition", "interlacing", "multirect") if getattr(args, a) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --partition, --interlacing, --multirect")
    if args.partition is not None:
        xs = interlacing_from_partition(check_partition(_int_list(args.partition, "--partition")))
        out = _coords_result(xs)
        # a partition input is centred at 0; the shift field is redundant
        out.result = {"x": out.result["x"], "p": out.result["p"], "q": out.result["q"]}
        return out
    if args.interlacing is not None:
        return _coords_result(tuple(_int_list(args.interlacing, "--interlacing")))
    obj = _json_arg(args.multirect, "--multirect")
    if not isinstance(obj, dict) or set(obj) != {"p", "q"}:
        raise UsageError('--multirect must look like {"p": [...], "q": [...]}')
    return _coords_result(interlacing_from_multirect(MultirectCoords(tuple(obj["p"]), tuple(obj["q"]))))


def cmd_luoto_expand(args):
    if args.wq is not None:
        F = wq_from_json(_json_arg(args.wq, "--wq"))
        degrees = {len(u) for u in F}
        if len(degrees) > 1:
            raise UsageError("--wq must be homogeneous")
        expansion = luoto_expand(F, degrees.pop() if degrees else 0)
    else:
        expansion = luoto_expand_poset(_poset(args))
    return _expansion_outcome(expansion)


def _expansion_outcome(expansion) -> Outcome:
    rows = set_composition_expansion_to_json(expansion)
    text = "\n".join(f"{r['coef']:+d} {r['K']}" for r in rows) or "0"
    return Outcome(rows, text)


def cmd_luoto_product(args):
    K = _set_composition(_require(args, "K"), "--K")
    K2 = _set_composition(_require(args, "K2"), "--K2")
    return _expansion_outcome(luoto_product(K, K2))


def _report_outcome(report) -> Outcome:
    lines = [f"{report.name}: {'PASS' if report.passed else 'FAIL'} ({len(report.cells)} cells)"]
    lines += [f"  failed m={c.m} i={c.i} {c.check}" for c in report.failures]
    return Outcome(report.to_json(), "\n".join(lines), report.passed, len(report.cells))


def cmd_check_sx(args):
    I = _composition(args)
    return _report_outcome(check_Sx_membership(lambda m: monomial_M_virtual(I, m), args.m_max))


def cmd_check_spq(args):
    P = _poset(args)
    return _report_outcome(check_Spq_membership(lambda m: N_P(P, m), args.m_max))


def _batch_outcome(results) -> Outcome:
    passed = all(r.passed for r in results)
    lines = [f"{r.name}: {'PASS' if r.passed else 'FAIL'} ({r.corpus_size} cases)" for r in results]
    for r in results:
        lines += [f"  failed {what}" for what in r.failures]
    return Outcome(
        [r.to_json() for r in results],
        "\n".join(lines),
        passed,
        sum(r.corpus_size for r in results),
    )


def cmd_verify_main(args):
    result = run_main_theorem(
        n_max=args.n_max,
        m_max=args.m_max,
        random_count=args.random,
        seed=args.seed,
        jobs=args.jobs,
    )
    return _batch_outcome([result])


def cmd_verify_all(args):
    results = []
    for name, run in ALL_RUNS.items():
        if name == "main-theorem":
            results.append(run(random_count=args.random, seed=args.seed, jobs=args.jobs))
        else:
            results.append(run())
    return _batch_outcome(results)


COMMANDS: dict[str, tuple[Callable[[argparse.Namespace], Outcome], str]] = {
    "fp": (cmd_fp, "F_P over x_1..x_N (needs --poset, --vars)"),
    "np": (cmd_np, "N_P at level m (needs --poset, --m)"),
    "boldfp": (cmd_boldfp, "noncommutative F_P over a_1..a_k (needs --poset, --k)"),
    "boldnp": (cmd_boldnp, "noncommutative N_P at level m (needs --poset, --m)"),
    "mi": (cmd_mi, "M_I over x_1..x_N (needs --composition, --vars)"),
    "mi-virtual": (cmd_mi_virtual, "M_I on the virtual alphabet (needs --composition, --m)"),
    "subst-pq": (cmd_subst_pq, "M_I or a QSym element at level m in p, q variables"),
    "coords": (cmd_coords, "partition, interlacing and multirectangular coordinates"),
    "luoto-expand": (cmd_luoto_expand, "expand bold F_P (or --wq) in the Luoto basis"),
    "luoto-product": (cmd_luoto_product, "Luoto structure constants for --K times --K2"),
    "check-sx": (cmd_check_sx, "functional equations for m -> M_I(X_m)"),
    "check-spq": (cmd_check_spq, "p, q functional equations for m -> N_P"),
    "verify-main": (cmd_verify_main, "main identity over exhaustive and random posets"),
    "verify-all": (cmd_verify_all, "every batch verification"),
}


# -- dispatch ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pqsym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--poset", help="poset JSON: a file, '-' for stdin, or inline")
        sp.add_argument("--vars", type=int, help="number of commuting variables N")
        sp.add_argument("--m", type=int, help="level of the virtual alphabet")
        sp.add_argument("--k", type=int, help="number of noncommuting letters")
        sp.add_argument("--composition", help="composition as a JSON list, e.g. '[2,1]'")
        sp.add_argument("--qsym", help='QSym element in the M basis, e.g. \'{"(2,1)": 3}\'')
        sp.add_argument("--partition", help="partition as a JSON list")
        sp.add_argument("--interlacing", help="interlacing coordinates as a JSON list")
        sp.add_argument("--multirect", help='multirectangular coordinates {"p": [...], "q": [...]}')
        sp.add_argument("--wq", help='WQSym element keyed by packed words, e.g. \'{"12": 1}\'')
        sp.add_argument("--K", help="set composition as JSON blocks, e.g. '[[1,3],[2]]'")
        sp.add_argument("--K2", help="second set composition")
        sp.add_argument("--n-max", type=int, default=4, dest="n_max")
        sp.add_argument("--m-max", type=int, default=2, dest="m_max")
        sp.add_argument("--seed", type=int, default=0, help="seed for random corpora")
        sp.add_argument("--random", type=int, default=0, help="number of random posets of size 5 or 6")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes for verify-main/verify-all")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
    return parser


_INPUT_FIELDS = (
    "vars", "m", "k", "composition", "qsym", "partition", "interlacing", "multirect",
    "wq", "K", "K2", "n_max", "m_max", "seed", "random",
)


def _inputs_digest(args: argparse.Namespace) -> str:
    # --jobs, --format and --timing do not change the result and are left out
    payload = {f: getattr(args, f) for f in _INPUT_FIELDS}
    payload["command"] = args.command
    payload["poset"] = args._poset_obj
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler, _ = COMMANDS[args.command]
    start = time.perf_counter()
    try:
        args._poset_obj = _read_poset_source(args.poset) if args.poset is not None else None
        outcome = handler(args)
    except (ValueError, TypeError, KeyError, ArithmeticError, AssertionError) as exc:
        print(f"pqsym {args.command}: error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - start

    if args.format == "text":
        print(outcome.text)
        if args.timing:
            print(f"time: {elapsed:.3f}s")
    else:
        report = {
            "command": args.command,
            "inputs_digest": _inputs_digest(args),
            "passed": outcome.passed,
            "corpus_size": outcome.corpus_size,
            "result": outcome.result,
        }
        if args.timing:
            report["timing_s"] = round(elapsed, 3)
        print(json.dumps(report, sort_keys=False, separators=(",", ":")))
    return 0 if outcome.passed else 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
