"""Command-line front end.

Exit codes: 0 for a consistent verdict or any successful output, 1 when the
judgements are inconsistent (a domain answer, so pipelines can branch on
it), 2 for input problems (unreadable or invalid files, wrong dimensions),
and 64 for malformed flags.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .consistency import (
    EpsilonSearchConfig,
    consistency_verdict,
    epsilon_search,
    extract_linear_weights,
)
from .errors import (
    InvalidInstanceError,
    NotPointedError,
    PrefconeError,
    WholeSpaceError,
)
from .instance import parse_instance, require_valid, validate
from .plotting import plot2d
from .valuefn import classification, evaluate, make_linear, make_psi, make_vartheta

__all__ = ["run", "main"]

_INPUT_ERRORS = 2
_USAGE = 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="prefcone",
        description=(
            "Test whether pairwise judgements against one reference alternative "
            "admit an increasing quasi-concave value function, and construct "
            "explicit consistent value functions when they do."
        ),
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging (LP tableaux)")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(sp, positional_instance=True):
        if positional_instance:
            sp.add_argument("instance", help="instance file (.json or .csv)")
        sp.add_argument("--output", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = sub.add_parser("validate", help="check the instance file invariants")
    add_common(sp)

    sp = sub.add_parser("test", help="run the consistency test and print the verdict")
    add_common(sp)
    _add_epsilon_flags(sp)

    sp = sub.add_parser("weights", help="extract strictly separating linear weights")
    add_common(sp)

    sp = sub.add_parser("epsilon", help="backtrack a pointed perturbation size")
    add_common(sp)
    _add_epsilon_flags(sp)

    sp = sub.add_parser("eval", help="evaluate a constructed value function at a point")
    sp.add_argument("--instance", required=True, help="instance file (.json or .csv)")
    sp.add_argument("--function", choices=("psi", "vartheta", "linear"), required=True)
    sp.add_argument("--point", required=True, help='comma-separated coordinates, e.g. "3,3"')
    sp.add_argument("--output", help="write the report here instead of stdout")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    _add_epsilon_flags(sp)

    sp = sub.add_parser("plot", help="write a 2-criteria SVG schematic")
    sp.add_argument("instance", help="instance file (.json or .csv)")
    sp.add_argument("--output", help="SVG path (default: instance path with .svg)")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    _add_epsilon_flags(sp)
    return parser


def _add_epsilon_flags(sp):
    sp.add_argument("--epsilon0", type=float, default=1e-2)
    sp.add_argument("--beta", type=float, default=0.5)
    sp.add_argument("--max-iter", type=int, default=60)


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"prefcone: error: {exc}", file=sys.stderr)
        return _USAGE
    if ns.verbose:
        logging.basicConfig(level=logging.DEBUG)

    try:
        payload, code = _dispatch(ns)
    except (NotPointedError, WholeSpaceError) as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}}, ns)
        return 1
    except InvalidInstanceError as exc:
        _emit(
            {
                "error": {"code": exc.code, "message": str(exc)},
                "violations": [{"code": c, "message": m} for c, m in exc.violations],
            },
            ns,
        )
        return _INPUT_ERRORS
    except PrefconeError as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}}, ns)
        return _INPUT_ERRORS
    except OSError as exc:
        _emit({"error": {"code": "IO_ERROR", "message": str(exc)}}, ns)
        return _INPUT_ERRORS
    except ValueError as exc:
        _emit({"error": {"code": "BAD_ARGUMENT", "message": str(exc)}}, ns)
        return _INPUT_ERRORS
    _emit(payload, ns)
    return code


def _dispatch(ns) -> tuple[dict, int]:
    if ns.subcommand == "validate":
        inst = _load(ns.instance)
        report = validate(inst)
        return report.to_dict(), 0 if report.ok else _INPUT_ERRORS

    if ns.subcommand == "test":
        inst = _load(ns.instance)
        report = consistency_verdict(inst, _cfg(ns))
        return report.to_dict(), 0 if report.pointed else 1

    if ns.subcommand == "weights":
        inst = _load(ns.instance)
        weights = extract_linear_weights(inst)
        return {"weights": weights.tolist()}, 0

    if ns.subcommand == "epsilon":
        inst = _load(ns.instance)
        eps = epsilon_search(inst, _cfg(ns))
        return {"epsilon_bar": eps}, 0

    if ns.subcommand == "eval":
        inst = _load(ns.instance)
        require_valid(inst)
        point = _parse_point(ns.point)
        if ns.function == "psi":
            handle = make_psi(inst)
        elif ns.function == "vartheta":
            handle = make_vartheta(inst, epsilon_search(inst, _cfg(ns)))
        else:
            handle = make_linear(inst)
        value = evaluate(handle, point)
        cls = classification(handle, point)
        return {"value": value, "classification": None if cls is None else cls.value}, 0

    if ns.subcommand == "plot":
        inst = _load(ns.instance)
        out = ns.output or str(Path(ns.instance).with_suffix(".svg"))
        plot2d(inst, out, _cfg(ns))
        return {"svg": out}, 0

    raise AssertionError(f"unhandled subcommand {ns.subcommand}")


def _cfg(ns) -> EpsilonSearchConfig:
    return EpsilonSearchConfig(epsilon0=ns.epsilon0, beta=ns.beta, max_iter=ns.max_iter)


def _load(path: str):
    text = Path(path).read_text(encoding="utf-8")
    fmt = "csv" if path.endswith(".csv") else "json"
    return parse_instance(text, fmt)


def _parse_point(text: str):
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise ValueError(f"--point must be comma-separated numbers, got {text!r}") from None


def _emit(payload: dict, ns) -> None:
    if getattr(ns, "format", "json") == "text":
        body = _as_text(payload)
    else:
        body = json.dumps(payload, indent=2) + "\n"
    output = getattr(ns, "output", None)
    if output and ns.subcommand != "plot":
        Path(output).write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)


def _as_text(payload: dict, indent: str = "") -> str:
    lines = []
    for key, value in payload.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_as_text(value, indent + "  ").rstrip("\n"))
        elif isinstance(value, str) and "\n" in value:
            lines.append(f"{indent}{key}:")
            lines.extend(f"{indent}  {part}" for part in value.splitlines())
        else:
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(lines) + "\n"


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
