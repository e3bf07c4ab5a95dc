"""Command-line front end.

Every run is fully determined by its arguments plus the seed (--seed flag,
LMKIT_SEED environment variable, default 0); output is deterministic JSON
(sorted keys) or plain text.  Exit codes: 0 = pass, 1 = a check failed
(the witness is in the output), 2 = usage or configuration error.

Functors are named by a small prefix grammar, nestable via ';':

    burau           tym(-1)          reduced-burau     lk
    constant        t1               atomic(2)         e(2)
    sum(F; G)       tensor(F; G)     tau(k; F)         twist(y; F)
    lm(action,system[,pre[,post]]; F)

so the classical twisted image of the constant functor is
    lm(artin,pure-braid,t,t^-1; constant).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .laurent import LaurentError, LaurentPoly, PolyMatrix, ONE, parse_poly
from .braidcat import BraidError, local_system
from .freegroup import FreeGroupError
from . import repfun
from .repfun import (
    BraidFunctor,
    NaturalMap,
    builtin,
    check_functor,
    check_natural,
    direct_sum,
    scalar_twist,
    tensor,
    translate,
)
from .longmoody import (
    CoherenceError,
    LongMoodyConfig,
    action_family,
    check_coherence,
    check_factorization,
    check_inclusion_lemma,
    check_reliability,
    long_moody,
    standard_config,
)
from . import polyfun
from .polyfun import (
    estimate_strong_degree,
    verify_degree_growth,
    verify_difference_splitting,
)
from .braidcat import BraidWord


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Functor expression grammar
# ---------------------------------------------------------------------------


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_functor(spec: str) -> BraidFunctor:
    spec = spec.strip()
    if "(" not in spec:
        head, body = spec, ""
    else:
        if not spec.endswith(")"):
            raise UsageError(f"unbalanced functor expression {spec!r}")
        head, body = spec[: spec.index("(")], spec[spec.index("(") + 1 : -1]
    head = head.strip().lower()

    if head in ("sum", "tensor"):
        args = [parse_functor(p) for p in _split_top(body, ";")]
        if len(args) != 2:
            raise UsageError(f"{head} takes exactly two functor arguments")
        return (direct_sum if head == "sum" else tensor)(*args)
    if head == "tau":
        k_text, f_text = _split_top(body, ";")
        return translate(parse_functor(f_text), int(k_text))
    if head == "twist":
        y_text, f_text = _split_top(body, ";")
        return scalar_twist(parse_functor(f_text), parse_poly(y_text))
    if head == "lm":
        params_text, f_text = _split_top(body, ";")
        params = [p.strip() for p in params_text.split(",")]
        if len(params) < 2:
            raise UsageError("lm(action,system[,pre[,post]]; functor)")
        cfg = LongMoodyConfig(
            action_family(params[0]),
            local_system(params[1]),
            parse_poly(params[2]) if len(params) > 2 and params[2] else None,
            parse_poly(params[3]) if len(params) > 3 and params[3] else None,
        )
        return long_moody(cfg, parse_functor(f_text))

    if head in ("burau", "reduced-burau", "tym"):
        kwargs = {}
        if body:
            kwargs["param"] = parse_poly(body)
        return builtin(head, **kwargs)
    if head == "atomic":
        return builtin("atomic", k=int(body))
    if head == "e":
        return builtin("e", l=int(body))
    if head in ("constant", "x", "lk", "t1", "zero"):
        return builtin(head)
    raise UsageError(f"unknown functor {spec!r}")


def _config_from_args(args) -> LongMoodyConfig:
    return LongMoodyConfig(
        action_family(args.action),
        local_system(args.sigma),
        parse_poly(args.pre) if args.pre else None,
        parse_poly(args.post) if args.post else None,
    )


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        _emit_text(payload, "")


def _emit_text(value, indent: str) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            inner = value[key]
            if isinstance(inner, (dict, list)):
                print(f"{indent}{key}:")
                _emit_text(inner, indent + "  ")
            else:
                print(f"{indent}{key}: {inner}")
    elif isinstance(value, list):
        if value and all(not isinstance(v, (dict, list)) for v in value):
            print(f"{indent}[{', '.join(str(v) for v in value)}]")
            return
        for inner in value:
            _emit_text(inner, indent)
            if isinstance(inner, dict):
                print(f"{indent}-")
    else:
        print(f"{indent}{value}")


def _verdict_exit(payload: dict, fmt: str, passed: bool) -> int:
    _emit(payload, fmt)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_emit(args) -> int:
    functor = parse_functor(args.functor)
    _emit(functor.to_json(args.n), args.format)
    return 0


def cmd_check(args) -> int:
    if args.kind == "functor":
        report = check_functor(parse_functor(args.functor), args.N, args.L)
        return _verdict_exit(report.to_json(), args.format, report.passed)
    if args.kind == "coherence":
        report = check_coherence(
            _config_from_args(args), args.N, args.L, seed=args.seed
        )
        return _verdict_exit(
            {"conditions": report.to_json()}, args.format, report.passed
        )
    if args.kind == "reliability":
        report = check_reliability(_config_from_args(args), args.N, args.L, args.seed)
        return _verdict_exit(
            {"conditions": report.to_json()}, args.format, report.passed
        )
    if args.kind == "natural":
        eta, stab = _named_natural_map(args)
        report = check_natural(eta, args.N, include_stab=stab)
        return _verdict_exit(report.to_json(), args.format, report.passed)
    raise UsageError(f"unknown check kind {args.kind!r}")


def _named_natural_map(args):
    """Built-in natural maps addressable from the command line.

    burau-reversal is a groupoid-level equivalence (components intertwine
    the braid actions only), so it is checked without stabilizations.
    """
    name = args.map
    if name == "identity":
        functor = parse_functor(args.functor)
        return (
            NaturalMap(
                functor, functor, lambda n: PolyMatrix.identity(functor.dim(n)), name
            ),
            True,
        )
    if name == "burau-reversal":
        return (_burau_reversal_map()[0], False)
    raise UsageError(f"unknown natural map {name!r}")


def _burau_reversal_map():
    """Components of the groupoid-level equivalence from the twisted image
    of the constant functor to the squared-parameter Burau family.

    Conjugation by the plain reversal lands on the flipped generator, so a
    half-twist matrix is composed in to match indices.
    """
    t = LaurentPoly.monomial(1, 1, 0)
    cfg = standard_config(pre=t, post=t.unit_inverse())
    source = long_moody(cfg, repfun.constant_functor())
    target = repfun.burau_functor(t * t)

    def component(n):
        reversal = PolyMatrix(n, n, {(i, n - 1 - i): ONE for i in range(n)})
        letters = []
        for k in range(1, n):
            letters.extend(range(k, 0, -1))
        half_twist = BraidWord(n, tuple(letters))
        return target.word_matrix(half_twist).matmul(reversal)

    return NaturalMap(source, target, component, "burau-reversal"), source, target


def cmd_lm(args) -> int:
    cfg = _config_from_args(args)
    functor = parse_functor(args.base)
    for _ in range(args.iterations):
        functor = long_moody(cfg, functor)
    _emit(functor.to_json(args.n), args.format)
    return 0


def cmd_degree(args) -> int:
    report = estimate_strong_degree(
        parse_functor(args.functor), args.N, d_max=args.d_max, seed=args.seed
    )
    _emit(report.to_json(), args.format)
    return 0


def cmd_verify(args) -> int:
    if args.theorem == "splitting":
        report = verify_difference_splitting(
            _config_from_args(args), parse_functor(args.base), args.N, args.seed
        )
        return _verdict_exit(report.to_json(), args.format, report.passed)
    if args.theorem == "degree":
        result = verify_degree_growth(
            _config_from_args(args), parse_functor(args.base), args.N, args.seed
        )
        return _verdict_exit(result, args.format, result["verdict"] == "pass")
    if args.theorem == "xi-lemma":
        report = check_inclusion_lemma(
            _config_from_args(args), parse_functor(args.base), args.N
        )
        return _verdict_exit(report.to_json(), args.format, report.passed)
    if args.theorem == "factorization":
        report = check_factorization(
            action_family(args.action), parse_functor(args.base), args.N
        )
        return _verdict_exit(report.to_json(), args.format, report.passed)
    if args.theorem == "burau-equivalence":
        return _verify_burau_equivalence(args)
    raise UsageError(f"unknown theorem {args.theorem!r}")


def _verify_burau_equivalence(args) -> int:
    eta, source, target = _burau_reversal_map()
    failures = []
    checked = 0
    for n in range(2, args.N + 1):
        reversal = PolyMatrix(n, n, {(i, n - 1 - i): ONE for i in range(n)})
        for i in range(1, n):
            checked += 1
            conj = reversal.matmul(source.gen_matrix(n, i)).matmul(reversal)
            if conj != target.gen_matrix(n, n - i):
                failures.append({"kind": "reversal-conjugation", "n": n, "i": i})
    report = check_natural(eta, args.N, include_stab=False)
    checked += report.checked
    failures.extend(report.failures)
    payload = {
        "check": "burau-equivalence",
        "range": {"N": args.N},
        "verdict": "pass" if not failures else "fail",
        "checked": checked,
        "witness": failures[0] if failures else None,
        "note": (
            "reversal conjugation maps generator i to the flipped generator; "
            "the natural-map components include a half-twist to match indices"
        ),
    }
    return _verdict_exit(payload, args.format, not failures)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lmkit",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    default_seed = int(os.environ.get("LMKIT_SEED", "0"))
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, functor=False, base=False, cfg=False):
        p.add_argument("--seed", type=int, default=default_seed)
        p.add_argument("--format", choices=["json", "text"], default="json")
        if functor:
            p.add_argument("--functor", required=True, help="functor expression")
        if base:
            p.add_argument("--base", required=True, help="base functor expression")
        if cfg:
            p.add_argument("--action", default="artin")
            p.add_argument("--sigma", default="pure-braid")
            p.add_argument("--pre", default=None, help="unit pre-twist polynomial")
            p.add_argument("--post", default=None, help="unit post-scale polynomial")

    p = sub.add_parser("emit", help="dump dimension, generator, stabilization data")
    common(p, functor=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_emit)

    p = sub.add_parser("check", help="run an exact identity check")
    p.add_argument("kind", choices=["functor", "coherence", "reliability", "natural"])
    common(p, cfg=True)
    p.add_argument("--functor", default="constant")
    p.add_argument("--map", default="identity", help="natural map name for `natural`")
    p.add_argument("--N", type=int, default=4)
    p.add_argument("--L", type=int, default=3)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lm", help="apply the construction and dump matrices")
    common(p, base=True, cfg=True)
    p.add_argument("--iterations", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_lm)

    p = sub.add_parser("degree", help="estimate the strong polynomial degree")
    common(p, functor=True)
    p.add_argument("--N", type=int, default=6)
    p.add_argument("--d-max", type=int, default=None, dest="d_max")
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("verify", help="verify one of the package's theorems")
    p.add_argument(
        "theorem",
        choices=["splitting", "degree", "burau-equivalence", "xi-lemma", "factorization"],
    )
    common(p, cfg=True)
    p.add_argument("--base", default="constant")
    p.add_argument("--N", type=int, default=4)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (
        UsageError,
        LaurentError,
        BraidError,
        FreeGroupError,
        CoherenceError,
        repfun.FunctorError,
        polyfun.SplitCertificationError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
