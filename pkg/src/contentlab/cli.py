"""contentlab command line.

Every subcommand prints JSON lines (one record per line) and optionally
appends them to ``--out``.  Exit status: 0 ok, 1 a Fails verdict was
produced, 2 usage or input error, 3 internal error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError, ContentLabError
from .runner import BOUNDS, DEMOS, append_log, execute, load_config, run_suite, search

EXIT_OK, EXIT_FAILS, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

_HELP = {
    "content": "coefficient content c(f) of f in R[T]",
    "orc": "Ohm-Rush content orc(f), with the orc = c cross-checks",
    "cover": "smallest finitely generated cover of a series given by a descriptor of coefficient valuations",
    "compose": "orc along R -> R[T] -> R[T][U] computed directly and by composition",
    "localize": "orc(f) localized at the prime P of Int",
    "dm": "Dedekind-Mertens exponent of the pair f, g",
    "gaussian": "is orc(fg) = orc(f)orc(g)?",
    "weak": "is orc(f)orc(g) inside the radical of orc(fg)?",
    "semicontent": "search t outside P with t*orc(g) inside orc(fg)",
    "prime-ext": "does the prime P extend to a prime of R[T]? (sampled)",
    "primary-ext": "does the primary Q extend to a primary of R[T]? (sampled)",
    "valuation-verdict": "Ohm-Rush / Gaussian verdict for power series over the Hahn valuation ring of --group",
    "transitivity": "sampled transitivity suite along Int -> Int[T] -> Int[T][U]",
    "pruefer-suite": "Gaussian property on sampled pairs over --ring",
    "demo": "scripted demonstration: " + ", ".join(DEMOS),
    "search": "look for pairs where a weaker property holds and the Gaussian one fails (--config)",
    "suite": "the fixed replayable battery",
}
_POSITIONAL = {
    "content": ["f"], "orc": ["f"], "cover": ["descriptor"], "compose": ["f"], "localize": ["f", "P"],
    "dm": ["f", "g"], "gaussian": ["f", "g"], "weak": ["f", "g"], "semicontent": ["P", "f", "g"],
    "prime-ext": ["P"], "primary-ext": ["Q"], "demo": ["demo"],
}
# option dest -> bound key
_FLAGS = {"bound_degree": "degree", "bound_coeff": "coeff", "max_n": "max_n", "powbound": "powbound",
          "samples": "samples", "window": "window", "cases": "cases"}


def _add_options(p: argparse.ArgumentParser):
    p.add_argument("--ring", help="coefficient ring: Int, IntMod(n), GF(p), Q, Q[x], Q[x,y], Q[x]/(x^2), Hahn(G,Q)")
    p.add_argument("--group", help="value group: Z, LexZ(k) or Quad(d)")
    p.add_argument("--var", help="extension variable (default T)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--bound-degree", type=int, help="membership degree bound, or sample degree for sampled checks")
    p.add_argument("--bound-coeff", type=int, help="sample coefficient bound")
    p.add_argument("--max-n", type=int, help="largest Dedekind-Mertens exponent tried")
    p.add_argument("--powbound", type=int, help="largest power tried in radical membership")
    p.add_argument("--samples", type=int, help="sample count")
    p.add_argument("--window", type=int, help="coordinate window of the lower-bound oracle")
    p.add_argument("--cases", type=int, help="case count (transitivity) or pair count (pruefer-suite)")
    p.add_argument("--out", help="append JSON lines to this file")
    p.add_argument("--config", help="flat JSON config (search)")
    p.add_argument("--timing", action="store_true", help="record wall time (logs stop being byte-reproducible)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="contentlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in _HELP.items():
        p = sub.add_parser(name, help=text, description=text)
        for pos in _POSITIONAL.get(name, []):
            p.add_argument(pos)
        _add_options(p)
    return parser


def _bounds(args) -> dict:
    out = {}
    for dest, key in _FLAGS.items():
        value = getattr(args, dest)
        if value is None:
            continue
        if args.command == "pruefer-suite" and key == "cases":
            key = "pairs"
        if key not in BOUNDS[args.command]:
            raise ConfigError(f"--{dest.replace('_', '-')} does not apply to {args.command}")
        out[key] = value
    return out


def _records(args) -> list:
    cmd = args.command
    if cmd == "suite":
        return run_suite(args.seed or 0, timing=args.timing)
    if cmd == "search":
        if not args.config:
            raise ConfigError("search needs --config")
        return search(load_config(args.config), seed=args.seed)
    inputs = {k: getattr(args, k) for k in _POSITIONAL.get(cmd, [])}
    if args.var:
        if cmd == "compose":
            inputs["vars"] = [args.var, "V" if args.var == "U" else "U"]
        else:
            inputs["var"] = args.var
    if cmd == "localize":
        try:
            inputs["P"] = int(inputs["P"])
        except ValueError:
            raise ConfigError(f"P must be an integer prime, got {inputs['P']!r}") from None
    return [execute(cmd, inputs, ring=args.ring, group=args.group, bounds=_bounds(args),
                    seed=args.seed, timing=args.timing)]


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return EXIT_USAGE if ex.code else EXIT_OK
    try:
        records = _records(args)
    except ContentLabError as ex:
        print(f"contentlab: {type(ex).__name__}: {ex}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as ex:  # noqa: BLE001 - exit code 3 is part of the interface
        print(f"contentlab: internal error: {type(ex).__name__}: {ex}", file=sys.stderr)
        return EXIT_INTERNAL
    for r in records:
        print(r.to_json())
    if args.out:
        append_log(args.out, records)
    return EXIT_FAILS if any(r.failed for r in records) else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
