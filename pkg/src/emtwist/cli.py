"""Exact computations with twisted K(pi, n) models.

Exit codes: 0 success, 1 a verification failed, 2 validation error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .base import BaseCochain, BaseComplex, cohomologous, is_cocycle, simplex_boundary
from .coeffs import CoeffGroup
from .emspace import DEFAULT_CAP, em_chain_complex
from .errors import EmTwistError, FormatError, NotACocycle, SizeLimitExceeded
from .linalg import HomologyGroup
from .model import TwistedModel
from . import verify as V

SCHEMA = "emtwist.report/1"
EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3


def parse_coeff(text: str) -> int:
    """``Z`` -> 0, ``F_p`` / ``Fp`` / ``Z/p`` -> p."""
    g = CoeffGroup.parse(text)
    p = g.modulus
    if p and any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise argparse.ArgumentTypeError(f"homology coefficients must be Z or a prime field, got {text}")
    return p


def parse_group(text: str) -> CoeffGroup:
    try:
        return CoeffGroup.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def load_json(path: str | Path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from exc


def load_base(path: str | None) -> BaseComplex:
    return simplex_boundary(3) if path is None else BaseComplex.from_json(load_json(path))


def load_cocycle(path: str | None, K: BaseComplex, group: CoeffGroup, degree: int) -> BaseCochain | None:
    if path is None:
        return None
    z = BaseCochain.from_json(K, load_json(path), group)
    if z.degree != degree:
        raise FormatError(f"cocycle has degree {z.degree}, expected {degree}")
    if not is_cocycle(z):
        raise NotACocycle(f"{path}: cochain is not a cocycle")
    return z


def default_cocycle(K: BaseComplex, group: CoeffGroup, n: int) -> BaseCochain:
    """The cochain with value 1 on the first (n+1)-simplex."""
    top = K.simplices_of_dim(n + 1)
    if not top:
        return BaseCochain(K, n + 1, group)
    return BaseCochain(K, n + 1, group, {top[0]: 1})


def groups_table(groups: list[HomologyGroup]) -> str:
    return "\n".join(f"  H_{h.degree} = {h}" for h in groups)


def job_spec(args: argparse.Namespace) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k == "func":
            continue
        out[k] = str(v) if isinstance(v, CoeffGroup) else v
    return out


def emit(report: dict, args: argparse.Namespace, text: str) -> None:
    print(text)
    if getattr(args, "json", None):
        Path(args.json).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# commands


def cmd_em_homology(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    cx = em_chain_complex(args.pi, args.n, args.max_deg + 1, args.cap)
    t1 = time.perf_counter()
    groups = cx.homology(args.max_deg, args.coeff)
    t2 = time.perf_counter()
    ranks = cx.ranks()
    report = {
        "schema": SCHEMA,
        "job": job_spec(args),
        "normalized_ranks": ranks,
        "groups": [h.to_json() for h in groups],
        "timings": {"enumerate": round(t1 - t0, 3), "homology": round(t2 - t1, 3)},
    }
    text = f"L({args.pi}, {args.n}) normalized ranks: {ranks}\n" + groups_table(groups)
    emit(report, args, text)
    return EXIT_OK


def cmd_model_homology(args: argparse.Namespace) -> int:
    K = load_base(args.base)
    z = load_cocycle(args.cocycle, K, args.pi, args.n + 1)
    t0 = time.perf_counter()
    model = TwistedModel(K, z, args.pi, args.n, args.max_deg + 1, args.cap)
    t1 = time.perf_counter()
    groups = model.homology(args.max_deg, args.coeff)
    t2 = time.perf_counter()
    zz = z if z is not None else BaseCochain(K, args.n + 1, args.pi)
    witness = cohomologous(zz, BaseCochain(K, args.n + 1, args.pi)) if args.pi.is_finite else None
    report = {
        "schema": SCHEMA,
        "job": job_spec(args),
        "z_is_coboundary": witness is not None,
        "ranks": [model.rank(m) for m in range(args.max_deg + 2)],
        "groups": [h.to_json() for h in groups],
        "timings": {"build": round(t1 - t0, 3), "homology": round(t2 - t1, 3)},
    }
    text = (
        f"model over {K} with pi = {args.pi}, n = {args.n}; z is "
        f"{'a coboundary' if witness is not None else 'not a coboundary'}\n" + groups_table(groups)
    )
    emit(report, args, text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    K = load_base(args.base)
    z = load_cocycle(args.cocycle, K, args.pi, args.n + 1)
    if z is None:
        z = default_cocycle(K, args.pi, args.n)
        if not is_cocycle(z):
            z = BaseCochain(K, args.n + 1, args.pi)
    import random

    rng = random.Random(args.seed)
    t0 = time.perf_counter()
    check = args.check
    if check == "twisting":
        res = V.check_twisting(z)
    elif check == "lemma-4-2":
        c = V.random_cochain(K, args.n, args.pi, rng)
        res = V.check_lemma_4_2(z, c)
    elif check == "lemma-7-1":
        res = V.check_lemma_7_1(z, seed=args.seed)
    elif check == "route-equality":
        model = TwistedModel(K, z, args.pi, args.n, args.max_deg, args.cap)
        res = V.check_route_equality(model, args.max_deg, corrupt=args.corrupt_sign)
    else:
        model = TwistedModel(K, z, args.pi, args.n, args.max_deg + 1, args.cap)
        p = args.coeff or (args.pi.modulus if args.pi.modulus else 2)
        res = V.check_action_laws(model, args.max_deg, p, seed=args.seed)
    report = {
        "schema": SCHEMA,
        "job": job_spec(args),
        "result": res.to_json(),
        "timings": {"check": round(time.perf_counter() - t0, 3)},
    }
    emit(report, args, str(res))
    return EXIT_OK if res.passed else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="emtwist", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, coeff_default: str = "Z") -> None:
        p.add_argument("--pi", type=parse_group, default=CoeffGroup(2), help="fiber group Z or Z/m (default Z/2)")
        p.add_argument("--n", type=int, default=1, help="fiber degree n >= 1")
        p.add_argument("--coeff", type=parse_coeff, default=parse_coeff(coeff_default), help="homology coefficients Z or F_p")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max cubes enumerated per dimension")
        p.add_argument("--json", metavar="PATH", help="also write the report as JSON")

    p = sub.add_parser("em-homology", help="homology of the cubical L(pi, n)")
    common(p)
    p.add_argument("--max-deg", type=int, default=3)
    p.set_defaults(func=cmd_em_homology)

    p = sub.add_parser("model-homology", help="homology of the twisted model over a base")
    common(p)
    p.add_argument("--base", help="base complex JSON (default: boundary of the 3-simplex)")
    p.add_argument("--cocycle", help="(n+1)-cocycle JSON (default: zero)")
    p.add_argument("--max-deg", type=int, default=3)
    p.set_defaults(func=cmd_model_homology)

    p = sub.add_parser("verify", help="check an identity exactly")
    p.add_argument("check", choices=["twisting", "lemma-4-2", "lemma-7-1", "route-equality", "action-laws"])
    common(p)
    p.add_argument("--base", help="base complex JSON (default: boundary of the 3-simplex)")
    p.add_argument("--cocycle", help="(n+1)-cocycle JSON (default: 1 on the first (n+1)-simplex)")
    p.add_argument("--max-deg", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corrupt-sign", action="store_true", help="negative control for route-equality")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 1 or args.max_deg < 0:
        print("error: need n >= 1 and max-deg >= 0", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except SizeLimitExceeded as exc:
        dim = f" (dimension {exc.dimension})" if exc.dimension is not None else ""
        print(f"error: SizeLimitExceeded{dim}: {exc}", file=sys.stderr)
        return EXIT_CAP
    except EmTwistError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
