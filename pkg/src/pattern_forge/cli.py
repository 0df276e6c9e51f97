"""Command-line front end.

Exit codes: 0 success or PASS, 1 verification FAIL, 2 usage or input error,
3 resource limit exceeded.
"""

import argparse
import json
import logging
import os
import sys

from .bisc import avoiders_upto, bisc, enumerate_avoiders, mine, verify_basis
from .corpus import class_names, named_class
from .errors import PatternForgeError, ResourceLimitError
from .notation import (format_pattern, format_perm, parse_pattern, parse_pattern_list, parse_perm,
                       pattern_to_json, read_perms)
from .patterns import contains, squares_of
from .preimage import Device, check_preimage, preimage_basis
from .sorters import SortingPipeline, avoids_4312_linear

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


def _threads(args):
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("PATTERN_FORGE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise PatternForgeError(f"PATTERN_FORGE_THREADS must be an integer, got {env!r}") from None
    return 1


def _read_input(args):
    """Permutations from --input (a path or '-') or --class/--max-len."""
    if args.input is not None:
        if args.input == "-":
            return read_perms(sys.stdin)
        with open(args.input) as fh:
            return read_perms(fh)
    if args.cls is not None:
        if args.max_len is None:
            raise PatternForgeError("--class needs --max-len")
        return named_class(args.cls, args.max_len, max_n=args.max_n)
    raise PatternForgeError("give --input or --class")


def _check_m(args, m):
    if m > args.max_m:
        raise ResourceLimitError(f"m = {m} exceeds --max-m {args.max_m}")


def _emit_patterns(patts, as_json, out):
    if as_json:
        out.write(json.dumps([pattern_to_json(p) for p in patts], indent=2) + "\n")
    else:
        for p in patts:
            out.write(format_pattern(p) + "\n")


def _emit_perms(perms, as_json, out):
    if as_json:
        out.write(json.dumps([list(p) for p in perms]) + "\n")
    else:
        for p in perms:
            out.write(format_perm(p) + "\n")


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_mine(args, out):
    perms = _read_input(args)
    _check_m(args, args.m)
    result = mine(perms, args.m, workers=_threads(args))
    if args.json:
        obj = [{"pattern": list(p), "shadings": [[list(sq) for sq in squares_of(len(p), s)]
                                                 for s in fam]}
               for p, fam in result.items()]
        out.write(json.dumps(obj, indent=2) + "\n")
    else:
        for p, fam in result.items():
            shadings = " ".join("{" + ",".join(f"({c},{r})" for c, r in squares_of(len(p), s)) + "}"
                                for s in fam)
            out.write(f"{format_perm(p)}: {shadings}\n")
    return EXIT_OK


def cmd_bisc(args, out):
    perms = _read_input(args)
    if not perms:
        _emit_patterns([], args.json, out)
        return EXIT_OK
    m = args.m if args.m is not None else max(1, max(len(p) for p in perms) - 1)
    _check_m(args, m)
    basis = bisc(perms, m, workers=_threads(args))
    _emit_patterns(basis, args.json, out)
    return EXIT_OK


def cmd_avoiders(args, out):
    basis = parse_pattern_list(args.basis)
    if args.upto:
        perms = avoiders_upto(basis, args.n, max_n=args.max_n)
    else:
        perms = enumerate_avoiders(basis, args.n, max_n=args.max_n)
    if args.count:
        out.write(f"{len(perms)}\n")
    else:
        _emit_perms(perms, args.json, out)
    return EXIT_OK


def cmd_contains(args, out):
    patt = parse_pattern(args.pattern)
    perm = parse_perm(args.perm)
    result = contains(perm, patt)
    out.write(("true" if result else "false") + "\n")
    return EXIT_OK


def cmd_sort(args, out):
    perm = parse_perm(args.perm)
    pipeline = SortingPipeline.parse(args.pipeline)
    result, steps = pipeline.run(perm, trace=True)
    if args.trace:
        out.write(f"input: {format_perm(steps[0])}\n")
        for stage, step in zip(pipeline.stages, steps[1:]):
            out.write(f"{stage}: {format_perm(step)}\n")
    else:
        out.write(format_perm(result) + "\n")
    return EXIT_OK


def _device(args):
    d = args.d
    if d is not None and d.lower() in ("inf", "oo"):
        d = float("inf")
    elif d is not None:
        try:
            d = int(d)
        except ValueError:
            raise PatternForgeError(f"bad depth {args.d!r}") from None
    return Device.parse(args.device, d)


def cmd_preimage(args, out):
    targets = [p.pattern for p in parse_pattern_list(" ".join(args.pattern))]
    basis = preimage_basis(_device(args), targets)
    _emit_patterns(basis.decorated, args.json, out)
    return EXIT_OK


def cmd_verify(args, out):
    if args.n > args.max_n:
        raise ResourceLimitError(f"n = {args.n} exceeds --max-n {args.max_n}")
    if args.device is not None:
        if not args.pattern:
            raise PatternForgeError("--device needs --pattern")
        targets = [p.pattern for p in parse_pattern_list(" ".join(args.pattern))]
        basis = preimage_basis(_device(args), targets)
        if args.basis is not None:
            basis = type(basis)(basis.target_class, basis.device,
                                tuple(parse_pattern_list(args.basis)))
        for n in range(1, args.n + 1):
            ok, bad = check_preimage(basis, n, max_n=args.max_n)
            if not ok:
                out.write(f"FAIL at length {n}: {format_perm(bad)}\n")
                return EXIT_FAIL
        out.write(f"PASS up to length {args.n}\n")
        return EXIT_OK
    if args.cls is None or args.basis is None:
        raise PatternForgeError("verify needs --device/--pattern or --class/--basis")
    members = named_class(args.cls, args.n, max_n=args.max_n)
    res = verify_basis(members, parse_pattern_list(args.basis), args.n, max_n=args.max_n)
    if res.ok:
        out.write(f"PASS up to length {args.n}\n")
        return EXIT_OK
    out.write(f"FAIL at length {res.checked_upto}: {format_perm(res.counterexample)} "
              f"({res.direction})\n")
    return EXIT_FAIL


def cmd_check4312(args, out):
    if args.perm is not None:
        perms = [parse_perm(args.perm)]
    elif args.input is not None:
        if args.input == "-":
            perms = read_perms(sys.stdin)
        else:
            with open(args.input) as fh:
                perms = read_perms(fh)
    else:
        raise PatternForgeError("give --perm or --input")
    for p in perms:
        out.write(("true" if avoids_4312_linear(p) else "false") + "\n")
    return EXIT_OK


def cmd_class(args, out):
    perms = named_class(args.name, args.n, max_n=args.max_n)
    if args.count:
        out.write(f"{len(perms)}\n")
    else:
        _emit_perms(perms, args.json, out)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: $PATTERN_FORGE_THREADS or 1)")
    common.add_argument("--max-n", type=int, default=9, help="guard on exhaustive lengths")
    common.add_argument("--max-m", type=int, default=6, help="guard on mined pattern length")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="pattern-forge",
        description="Permutation patterns, basis mining and sorting-device preimages.")
    sub = parser.add_subparsers(dest="command", required=True)

    def source(p):
        p.add_argument("--input", help="file with one permutation per line ('-' for stdin)")
        p.add_argument("--class", dest="cls", choices=class_names(), help="named class")
        p.add_argument("--max-len", type=int, help="longest class member to use")

    p = sub.add_parser("mine", parents=[common], help="maximal allowed shadings per pattern")
    source(p)
    p.add_argument("-m", type=int, required=True, help="longest pattern to mine")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("bisc", parents=[common], help="conjecture a mesh-pattern basis")
    source(p)
    p.add_argument("-m", type=int, default=None,
                   help="longest pattern (default: longest input permutation minus one)")
    p.set_defaults(func=cmd_bisc)

    p = sub.add_parser("avoiders", parents=[common], help="permutations avoiding a basis")
    p.add_argument("--basis", required=True, help="patterns separated by spaces or ';'")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--upto", action="store_true", help="all lengths 0..n")
    p.add_argument("--count", action="store_true", help="print only the number")
    p.set_defaults(func=cmd_avoiders)

    p = sub.add_parser("contains", parents=[common], help="pattern containment test")
    p.add_argument("--pattern", required=True)
    p.add_argument("--perm", required=True)
    p.set_defaults(func=cmd_contains)

    p = sub.add_parser("sort", parents=[common], help="run a sorting pipeline")
    p.add_argument("--perm", required=True)
    p.add_argument("--pipeline", required=True,
                   help="comma-separated stages: stack, stackd:<d>, queue, rev, comp, qpass, bubble")
    p.add_argument("--trace", action="store_true", help="print every stage")
    p.set_defaults(func=cmd_sort)

    def device(p, required):
        p.add_argument("--device", choices=["stack", "stackd", "queue"], required=required)
        p.add_argument("--d", default=None, help="stack depth (integer or inf)")
        p.add_argument("--pattern", nargs="+", default=[], help="target classical patterns")

    p = sub.add_parser("preimage", parents=[common], help="decorated preimage basis")
    device(p, True)
    p.set_defaults(func=cmd_preimage)

    p = sub.add_parser("verify", parents=[common],
                       help="check a preimage basis against simulation, or a basis against a class")
    device(p, False)
    p.add_argument("--class", dest="cls", choices=class_names())
    p.add_argument("--basis", help="patterns to check (default for --device: the computed basis)")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check4312", parents=[common], help="linear-time 4312 avoidance test")
    p.add_argument("--perm")
    p.add_argument("--input", help="file with one permutation per line ('-' for stdin)")
    p.set_defaults(func=cmd_check4312)

    p = sub.add_parser("class", parents=[common], help="members of a named class")
    p.add_argument("--name", required=True, choices=class_names())
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", action="store_true")
    p.set_defaults(func=cmd_class)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except ResourceLimitError as exc:
        print(f"pattern-forge: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (PatternForgeError, OSError) as exc:
        print(f"pattern-forge: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
