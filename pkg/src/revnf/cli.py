"""Command-line entry point: ``revnf <subcommand> ...``.

Exit codes: 0 when every check passes, 1 when some check fails (the failure
list is in the document, and on stderr for non-JSON formats), 2 for usage
errors, 3 for invalid input documents or violated preconditions.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager

from . import emit as E
from . import golden, verify as V
from .group import GroupError
from .homological import HomologicalError
from .normalform import NormalFormError, ProblemSpec, complement_deg, normal_form
from .poly import PolyError, poly_to_terms
from .spaces import SpaceError
from .specfile import SpecError, resolve_spec, spec_to_dict

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


@contextmanager
def _mapper(jobs: int):
    """``map`` over degrees, in a process pool when ``jobs > 1``.

    Results come back in input order, so output does not depend on ``jobs``.
    """
    if jobs <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield pool.map


def _signs(text: str | None):
    if text is None:
        return None
    try:
        signs = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise UsageError(f"--signs expects a0,a1,a2 with entries +1/-1, got {text!r}") from None
    if len(signs) != 3 or any(s not in (1, -1) for s in signs):
        raise UsageError(f"--signs expects three entries from {{1, -1}}, got {text!r}")
    return signs


def _spec_from_args(args, kmax: int | None = None) -> ProblemSpec:
    if args.spec:
        return resolve_spec(args.spec, kmax)
    signs = _signs(getattr(args, "signs", None))
    name = f"resonant-{args.n1}-{args.n2}"
    if signs is not None:
        name += "-z2xz2-" + ",".join(str(s) for s in signs)
    return resolve_spec(name, kmax)


def _k_range(args, default_to: int, default_from: int = 2) -> tuple[int, int]:
    lo = args.k_from if args.k_from is not None else default_from
    hi = args.k_to if args.k_to is not None else default_to
    if lo < 0 or hi < lo:
        raise UsageError(f"empty or negative degree range {lo}..{hi}")
    return lo, hi


# -- subcommands -------------------------------------------------------------------------

def _complement_at(args):
    L, G, k = args
    return complement_deg(L, G, k)


def cmd_complement(args) -> dict:
    spec = _spec_from_args(args, args.k_to)
    lo, hi = _k_range(args, spec.kmax)
    with _mapper(args.jobs) as m:
        spaces = list(m(_complement_at, [(spec.L, spec.group, k) for k in range(lo, hi + 1)]))
    return E.complement_document(spec, spaces)


def cmd_normal_form(args) -> dict:
    spec = _spec_from_args(args, args.k_to)
    return E.normal_form_document(normal_form(spec))


def cmd_verify(args) -> dict:
    case = args.case
    if case not in V.CASES:
        raise UsageError(f"unknown verify case {case!r}; expected one of {', '.join(V.CASES)}")
    spec = _spec_from_args(args, args.k_to)
    lo, hi = _k_range(args, spec.kmax)
    needs_sigma = case in ("thm-4-4", "lemmas", "pi", "decompose-plus")
    if needs_sigma and spec.group.sigma_trivial:
        raise GroupError(f"verify case {case!r} needs a reversing group element")
    with _mapper(args.jobs) as m:
        if case == "elphick":
            rep = V.elphick_suite(spec.L, lo, hi, m)
        elif case == "thm-4-4":
            rep = V.theorem_suite(spec.L, spec.group, lo, hi, m)
        elif case == "decompose-plus":
            rep = V.decompose_suite(spec.group, lo, hi, m)
        elif case == "lemmas":
            rep = V.lemma_suite(spec.L, spec.group, lo, hi, args.seed, args.samples)
        else:
            rep = V.pi_suite(spec.group, lo, hi, args.seed, args.samples)
    params = {"case": case, "k_from": lo, "k_to": hi, "seed": args.seed, "samples": args.samples,
              "spec": spec_to_dict(spec)}
    return E.report_document("verify", params, rep)


def cmd_golden(args) -> dict:
    family = args.case or "z2"
    if family not in ("z2", "z2xz2"):
        raise UsageError(f"unknown golden case {family!r}; expected z2 or z2xz2")
    signs = _signs(args.signs)
    if family == "z2xz2" and signs is None:
        raise UsageError("golden --case z2xz2 needs --signs a0,a1,a2")
    case = golden.golden_case(family, args.n1, args.n2, signs if family == "z2xz2" else None)
    lo, hi = _k_range(args, case.degree_bound)
    with _mapper(args.jobs) as m:
        rep = V.golden_suite(case, lo, hi, m)
    params = {"case": family, "n1": args.n1, "n2": args.n2, "signs": list(signs) if signs else None,
              "k_from": lo, "k_to": hi}
    return E.report_document("golden", params, rep, type=rep["type"], type_pass=rep["type_pass"])


def cmd_hilbert(args) -> dict:
    family = args.case or "z2"
    if family != "z2":
        raise UsageError("hilbert supports --case z2 (the u-list of the Z2-reversible family)")
    case = golden.golden_case("z2", args.n1, args.n2)
    u = golden.invariants_u(args.n1, args.n2)
    bound = 2 * (args.n1 + args.n2) + 2
    dmax = args.dmax if args.dmax is not None else bound
    d_to = args.k_to if args.k_to is not None else bound
    basis, rep = V.hilbert_suite(case.group, case.L, [u[f"u{i}"] for i in range(1, 6)], d_to, dmax)
    params = {"case": family, "n1": args.n1, "n2": args.n2, "dmax": dmax, "d_to": d_to}
    return E.report_document("hilbert", params, rep,
                             hilbert_basis=[poly_to_terms(b) for b in basis])


COMMANDS = {
    "complement": cmd_complement,
    "normal-form": cmd_normal_form,
    "verify": cmd_verify,
    "golden": cmd_golden,
    "hilbert": cmd_hilbert,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="revnf", description="Exact normal forms of reversible-equivariant vector fields.")
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "complement": "normal-form complement for a range of degrees",
        "normal-form": "normalize the spec's vector field degree by degree",
        "verify": "run a property suite (elphick, thm-4-4, lemmas, pi, decompose-plus)",
        "golden": "compare computed complements with the tabulated generators",
        "hilbert": "build the invariant generators and check their algebra degree-wise",
    }
    for name, h in helps.items():
        s = sub.add_parser(name, help=h)
        s.add_argument("--spec", help="spec file or built-in name (nilpotent, resonant-N1-N2, ...)")
        s.add_argument("--k-from", type=int, dest="k_from")
        s.add_argument("--k-to", type=int, dest="k_to")
        s.add_argument("--out", choices=E.FORMATS, default="json", help="output format")
        s.add_argument("--case")
        s.add_argument("--n1", type=int, default=1)
        s.add_argument("--n2", type=int, default=2)
        s.add_argument("--signs", help="a0,a1,a2 for the Z2 x Z2 family")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--samples", type=int, default=100)
        s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--dmax", type=int, help="pruning degree bound for hilbert")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and not args.case:
        parser.error("verify needs --case")
    try:
        doc = COMMANDS[args.command](args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"revnf: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SpecError as e:
        return _input_error(e.to_dict(), args.out)
    except (GroupError, HomologicalError, NormalFormError, PolyError, SpaceError, OSError) as e:
        return _input_error({"category": type(e).__name__, "message": str(e)}, args.out)
    sys.stdout.write(E.emit(doc, args.out))
    if not doc["pass"]:
        if args.out != "json":
            print(json.dumps({"failures": doc["failures"]}, sort_keys=True), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _input_error(err: dict, fmt: str) -> int:
    sys.stdout.write(E.emit(E.error_document(err), fmt))
    print(f"revnf: {err.get('category')}: {err.get('message')}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
