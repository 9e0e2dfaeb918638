"""Command-line front end.

Every command prints a result document ``{"status", "payload",
"diagnostics"}`` on stdout and re-verifies whatever it emits.  ``--out``
additionally writes the primary object (cover, signature, conference matrix
or frame) on its own, ready to be fed to another command.

Exit codes: 0 ok, 2 axiom violation, 3 usage or precondition, 4 numerical.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import serialize
from .conference import (
    ConferenceMatrix,
    et_taoui_to_signature,
    mathon_conference,
    signature_to_conference,
    verify_conference,
)
from .drackn import DracknAdjacency, conference_to_drackn, mathon_drackn, verify_drackn
from .eitff import SignatureMatrix, check_eitff, expected_params, factor_gram, gram_from_signature, verify_signature
from .errors import EitffError, PreconditionError, VerificationError
from .numerics import DEFAULT_TOL
from .representations import RepSelection, lift_deleted_permutation, lift_dihedral

EXIT_OK, EXIT_AXIOM, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3, 4


class UsageError(PreconditionError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path: str, key: str) -> dict:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    doc = serialize.loads(text)
    if isinstance(doc, dict) and "payload" in doc and "status" in doc:
        doc = doc["payload"]
    if isinstance(doc, dict) and key in doc and isinstance(doc[key], dict):
        doc = doc[key]
    return doc


def _positive_k(text: str) -> int:
    k = int(text)
    if k < 1:
        raise argparse.ArgumentTypeError(f"k must be >= 1, got {k}")
    return k


def cmd_mathon_drackn(args, diags):
    A, _ = mathon_drackn(args.k)
    p = verify_drackn(A, diagnostics=diags)
    return {"drackn": A.to_json(), "params": p.to_json()}, A


def cmd_verify_drackn(args, diags):
    A = DracknAdjacency.from_json(_load(args.input, "drackn"))
    p = verify_drackn(A, c=args.c, diagnostics=diags)
    return {"params": p.to_json()}, None


def _lift(A: DracknAdjacency, irreps: str):
    if irreps.strip() == "all":
        return lift_deleted_permutation(A)
    return lift_dihedral(A, RepSelection.parse(A.m, irreps))


def cmd_lift(args, diags):
    if args.input:
        A = DracknAdjacency.from_json(_load(args.input, "drackn"))
    else:
        A, _ = mathon_drackn(args.k)
    p = verify_drackn(A)
    S = _lift(A, args.irreps)
    got = verify_signature(S, args.tol, diagnostics=diags)
    want = expected_params(p, S.r)
    if got.d != want.d:
        raise VerificationError(f"lift has d={got.d}, theory predicts d={want.d}")
    return {
        "signature": S.to_json(),
        "params": got.to_json(),
        "expected": want.to_json(),
        "drackn_params": p.to_json(),
    }, S


def cmd_conference(args, diags):
    if args.verify:
        C = ConferenceMatrix.from_json(_load(args.verify, "conference"))
        n = verify_conference(C, args.tol, diagnostics=diags)
        return {"n": n, "exact": C.is_exact}, None
    if args.k is None or args.a is None:
        raise UsageError("conference needs --k and --a, or --verify FILE")
    C = mathon_conference(args.k, args.a)
    verify_conference(C, args.tol, diagnostics=diags)
    return {"conference": C.to_json()}, C


def cmd_verify_conference(args, diags):
    args.verify = args.input
    return cmd_conference(args, diags)


def cmd_convert(args, diags):
    if args.ettaoui_fwd:
        C = ConferenceMatrix.from_json(_load(args.file, "conference"))
        S = et_taoui_to_signature(C)
        params = verify_signature(S, args.tol, diagnostics=diags)
        return {"signature": S.to_json(), "params": params.to_json()}, S
    if args.ettaoui_inv:
        S = SignatureMatrix.from_json(_load(args.file, "signature"))
        verify_signature(S, args.tol)
        C = signature_to_conference(S, modulus=args.modulus)
        verify_conference(C, args.tol, diagnostics=diags)
        return {"conference": C.to_json()}, C
    if args.p is None:
        raise UsageError("--conf2drackn requires --p")
    C = ConferenceMatrix.from_json(_load(args.file, "conference"))
    A = conference_to_drackn(C, args.p)
    p = verify_drackn(A, diagnostics=diags)
    return {"drackn": A.to_json(), "params": p.to_json()}, A


def cmd_frame(args, diags):
    S = SignatureMatrix.from_json(_load(args.input, "signature"))
    G, beta = gram_from_signature(S, args.tol)
    F = factor_gram(G, beta, args.tol)
    cert = check_eitff(F, args.tol, diagnostics=diags)
    return {"frame": F.to_json(), "certificate": cert.to_json()}, F


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eitffkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
        sp.add_argument("--out", help="also write the primary object to this file")
        sp.set_defaults(func=func)
        return sp

    sp = add("mathon-drackn", cmd_mathon_drackn, "symplectic cover of K_{q+1}, q = 2^k")
    sp.add_argument("--k", type=_positive_k, required=True)

    sp = add("verify-drackn", cmd_verify_drackn, "check a cover file and report (n, m, c)")
    sp.add_argument("--input", required=True)
    sp.add_argument("--c", type=int, default=None, help="c to check against (needed only when m = 1)")

    sp = add("lift", cmd_lift, "lift a cover to a signature matrix")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--input")
    src.add_argument("--k", type=_positive_k)
    sp.add_argument("--irreps", default="1", help='comma-separated irrep indices, or "all"')

    sp = add("conference", cmd_conference, "build or verify a conference matrix")
    sp.add_argument("--k", type=_positive_k)
    sp.add_argument("--a", type=int)
    sp.add_argument("--verify", metavar="FILE")

    sp = add("verify-conference", cmd_verify_conference, "verify a conference matrix file")
    sp.add_argument("--input", required=True)

    sp = add("convert", cmd_convert, "Et-Taoui correspondence and conference -> cover")
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--ettaoui-fwd", action="store_true")
    mode.add_argument("--ettaoui-inv", action="store_true")
    mode.add_argument("--conf2drackn", action="store_true")
    sp.add_argument("--p", type=int)
    sp.add_argument("--modulus", type=int, help="snap recovered entries to roots of unity of this order")
    sp.add_argument("file")

    sp = add("frame", cmd_frame, "factor a signature matrix into a certified frame")
    sp.add_argument("--input", required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    diags: list = []
    try:
        payload, primary = args.func(args, diags)
    except EitffError as exc:
        doc = {
            "status": "error",
            "error": {"type": type(exc).__name__, "message": str(exc)},
            "diagnostics": [d.to_json() for d in diags],
        }
        print(serialize.dumps(doc))
        return exc.exit_code
    except (OSError, ValueError, KeyError, TypeError) as exc:
        doc = {"status": "error", "error": {"type": type(exc).__name__, "message": str(exc)}, "diagnostics": []}
        print(serialize.dumps(doc))
        return EXIT_USAGE
    if args.out and primary is not None:
        Path(args.out).write_text(serialize.dumps(primary) + "\n")
    doc = {"status": "ok", "payload": payload, "diagnostics": [d.to_json() for d in diags]}
    print(serialize.dumps(doc))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
