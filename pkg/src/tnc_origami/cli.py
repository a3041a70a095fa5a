"""Build origamis, compute their Veech groups, and check congruence properties.

Exit codes: 0 success / valid, 2 negative verdict, 1 usage or runtime error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from contextlib import contextmanager
from typing import Sequence

from . import __version__
from .builders import PARITY_RULE, StratumParityError, build_stratum_origami
from .congruence import (
    CongruenceVerdict,
    ParabolicWitness,
    TncCertificate,
    image_is_full_mod,
    is_congruence_at_level,
    standard_witnesses,
    verify_certificate,
    witness_in_group,
)
from .origami import (
    DEFAULT_CONVENTION,
    ActionConvention,
    Direction,
    Origami,
    canonical_key,
    cylinders,
    genus,
    is_reduced_sufficient,
    stratum,
)
from .search import find_l, find_prime_l, harvest_parabolics
from .sl2 import DEFAULT_CLOSURE_CAP, ClosureCapError
from .veech import DEFAULT_ORBIT_CAP, OrbitCapError, orbit_coset_graph, veech_data

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2

SCHEMA = "report/v1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _parse_stratum(text: str) -> list[int]:
    try:
        alphas = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"malformed stratum {text!r}; expected a comma list like 2,4,1,3")
    if any(a < 1 for a in alphas):
        raise UsageError(f"stratum entries must be positive: {text!r}")
    if sum(a % 2 for a in alphas) % 2:
        raise UsageError(f"malformed stratum {text!r}: {PARITY_RULE}")
    return alphas


def origami_hash(o: Origami) -> str:
    ka, kb = canonical_key(o)
    return hashlib.sha256(json.dumps([ka, kb]).encode()).hexdigest()[:16]


def _load_origami(path: str) -> Origami:
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        return Origami.from_text(text.strip())
    return Origami.from_dict(data)


def origami_summary(o: Origami) -> dict:
    return {
        "origami": o.to_dict(),
        "origami_hash": origami_hash(o),
        "d": o.d,
        "stratum": list(stratum(o)),
        "genus": genus(o),
        "cylinders": {dr.value: list(cylinders(o, dr).lengths) for dr in Direction},
        "reducedness": is_reduced_sufficient(o).value,
    }


def builder_shape(o: Origami) -> tuple[int, int] | None:
    """``(L, q)`` if the cylinder data matches the glued one-cylinder family."""
    hor = cylinders(o, Direction.HORIZONTAL).lengths
    ver = cylinders(o, Direction.VERTICAL).lengths
    diag = list(cylinders(o, Direction.DIAGONAL).lengths)
    if len(hor) != 1 or not set(ver) <= {1, 3, 5}:
        return None
    L = hor[0]
    twos = diag.count(2)
    rest = [x for x in diag if x != 2]
    if not rest:
        if twos % 2 == 0:
            return None
        rest, twos = [2], twos - 1
    if len(rest) != 1 or twos % 2:
        return None
    q = twos // 2
    if rest[0] != L - 4 * q or L <= 4 * q:
        return None
    return L, q


@contextmanager
def _timer(timings: dict, name: str):
    t0 = time.perf_counter()
    yield
    timings[name] = round(time.perf_counter() - t0, 4)


def _surjectivity_table(gens, mod_max: int, cap: int, extra: Sequence[int] = ()) -> dict[str, bool | str]:
    table: dict[str, bool | str] = {}
    for n in sorted(set(range(2, mod_max + 1)) | set(extra)):
        try:
            table[str(n)] = image_is_full_mod(gens, n, cap=cap)
        except ClosureCapError:
            table[str(n)] = "cap"
    return table


def _emit(report: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        return
    _print_human(report, out)


def _print_human(report: dict, out, indent: int = 0) -> None:
    pad = "  " * indent
    for key, value in report.items():
        if isinstance(value, dict) and value and key not in ("origami",):
            out.write(f"{pad}{key}:\n")
            _print_human(value, out, indent + 1)
        elif key == "origami" and isinstance(value, dict):
            out.write(f"{pad}origami: {value['d']}; sigma_a={value['sigma_a_cycles']}; "
                      f"sigma_b={value['sigma_b_cycles']}\n")
        else:
            out.write(f"{pad}{key}: {value}\n")


# --------------------------------------------------------------------------
# subcommands


def cmd_build(args) -> int:
    alphas = _parse_stratum(args.stratum)
    o = build_stratum_origami(alphas, args.l)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps(o.to_dict(), sort_keys=True, indent=2) + "\n")
    report = {"schema": SCHEMA, "command": "build", "stratum_input": alphas, "l": args.l}
    report.update(origami_summary(o))
    _emit(report, args.json)
    return EXIT_OK


def _analysis(o: Origami, args, timings: dict) -> tuple[dict, object, list]:
    with _timer(timings, "orbit"):
        g = orbit_coset_graph(o, cap=args.orbit_cap, convention=args.convention)
    with _timer(timings, "veech"):
        vd = veech_data(g)
    veech = {
        "index": vd.index,
        "cusp_widths": vd.cusp_widths,
        "level": vd.level,
        "generator_count": len(vd.generators),
        "contains_minus_identity": vd.contains_minus_identity,
        "convention": vd.convention.value,
    }
    return veech, g, vd.generators


def cmd_analyze(args) -> int:
    o = _load_origami(args.inp)
    timings: dict = {}
    report = {"schema": SCHEMA, "command": "analyze"}
    report.update(origami_summary(o))
    veech, g, gens = _analysis(o, args, timings)
    report["veech"] = veech
    with _timer(timings, "congruence"):
        table = _surjectivity_table(gens, args.mod_max, args.closure_cap)
        shape = builder_shape(o)
        cert = None
        if shape is not None:
            cert = verify_certificate(standard_witnesses(*shape))
        level_verdict = is_congruence_at_level(g, cap=args.closure_cap, certificate=cert)
    report["congruence"] = {
        "surjective_mod_n": table,
        "level_verdict": level_verdict.value,
        "certificate_verdict": cert.verdict if cert else "none",
    }
    if args.timings:
        report["timings"] = timings
    _emit(report, args.json)
    return EXIT_OK


def cmd_verify(args) -> int:
    o = _load_origami(args.inp)
    timings: dict = {}
    report = {"schema": SCHEMA, "command": "verify-tnc"}
    report.update(origami_summary(o))
    if args.witnesses == "auto":
        shape = builder_shape(o)
        if shape is not None:
            witnesses = standard_witnesses(*shape)
            source = f"standard(L={shape[0]}, q={shape[1]})"
        else:
            witnesses = harvest_parabolics(o, radius=2, convention=args.convention)
            source = "harvested(radius=2)"
    else:
        with open(args.witnesses) as fh:
            data = json.load(fh)
        witnesses = [ParabolicWitness.from_dict(w) for w in data.get("witnesses", data)]
        source = args.witnesses
    with _timer(timings, "certificate"):
        cert = verify_certificate(TncCertificate(witnesses))
    report["witness_source"] = source
    report["certificate"] = cert.to_dict()

    surjective_ok = True
    if not args.no_orbit:
        veech, g, gens = _analysis(o, args, timings)
        report["veech"] = veech
        report["witness_membership"] = [witness_in_group(g, w) for w in witnesses]
        with _timer(timings, "surjectivity"):
            table = _surjectivity_table(gens, args.mod_max, args.closure_cap)
        report["surjective_mod_n"] = table
        surjective_ok = all(v is True for v in table.values())
        if not all(report["witness_membership"]):
            surjective_ok = False
    if args.timings:
        report["timings"] = timings
    _emit(report, args.json)
    return EXIT_OK if cert.valid and surjective_ok else EXIT_NEGATIVE


def cmd_search(args) -> int:
    alphas = _parse_stratum(args.stratum)
    report: dict = {"schema": SCHEMA, "command": "search-l", "stratum_input": alphas}
    if args.primes is not None:
        try:
            results = find_prime_l(alphas, args.primes)
        except ValueError as exc:
            report["results"] = []
            report["diagnostic"] = str(exc)
            _emit(report, args.json)
            return EXIT_NEGATIVE
    else:
        results = find_l(alphas, args.max)
    report["results"] = [r.to_dict() for r in results]
    if results.diagnostic:
        report["diagnostic"] = results.diagnostic
    if args.json:
        _emit(report, True)
    else:
        for r in results:
            print(f"l={r.l} L={r.L} q={r.q}" + (" prime" if r.is_prime else ""))
        if results.diagnostic:
            print(f"diagnostic: {results.diagnostic}")
    return EXIT_OK if results else EXIT_NEGATIVE


def cmd_orbit(args) -> int:
    o = _load_origami(args.inp)
    g = orbit_coset_graph(o, cap=args.orbit_cap, convention=args.convention)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(g.to_dot())
    vd = veech_data(g)
    report = {"schema": SCHEMA, "command": "orbit", "origami_hash": origami_hash(o)}
    report["veech"] = vd.to_dict()
    _emit(report, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tnc-origami", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, orbit=False):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if orbit:
            sp.add_argument("--orbit-cap", type=int, default=DEFAULT_ORBIT_CAP,
                            help=f"abort orbit search beyond this many vertices (default {DEFAULT_ORBIT_CAP})")
            sp.add_argument("--closure-cap", type=int, default=DEFAULT_CLOSURE_CAP,
                            help=f"largest |SL(2,Z/nZ)| to close over (default {DEFAULT_CLOSURE_CAP})")
            sp.add_argument("--convention", choices=[c.value for c in ActionConvention],
                            default=DEFAULT_CONVENTION.value,
                            help="action of S on permutation pairs (default rotation)")
            sp.add_argument("--timings", action="store_true", help="include wall-clock timings")

    sp = sub.add_parser("build", help="construct the one-cylinder origami for a stratum")
    sp.add_argument("--stratum", required=True, help="comma list of zero orders, e.g. 2,4,1,3")
    sp.add_argument("--l", type=int, default=1, help="tail length l >= 1 (default 1)")
    sp.add_argument("--out", help="write origami JSON here")
    common(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("analyze", help="stratum, cylinders, Veech group and congruence data")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--mod-max", type=int, default=13, help="surjectivity table for n = 2..N (default 13)")
    common(sp, orbit=True)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("verify-tnc", help="check a totally-non-congruence certificate")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--witnesses", default="auto", help="'auto' or a witness JSON file")
    sp.add_argument("--mod-max", type=int, default=13)
    sp.add_argument("--no-orbit", action="store_true", help="skip the coset-graph cross-checks")
    common(sp, orbit=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("search-l", help="find tail lengths l satisfying the TNC conditions")
    sp.add_argument("--stratum", required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--max", type=int, help="scan l = 1..MAX")
    g.add_argument("--primes", type=int, help="first K values of l with prime L")
    common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("orbit", help="coset graph of the SL(2,Z)-orbit")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--dot", help="write Graphviz DOT here")
    common(sp, orbit=True)
    sp.set_defaults(func=cmd_orbit)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, StratumParityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OrbitCapError, ClosureCapError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
