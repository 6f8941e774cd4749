"""Command-line driver.

Exit codes: 0 success, 2 hypothesis failure or invalid input, 3 resource bound
exceeded (norm search or lattice saturation).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction

from .certify import (
    STAGE_INTEGRAL,
    STAGE_RATIONAL,
    STAGE_RAW,
    base_representation,
    certify_path_point,
    certify_psl2_base,
    default_cover,
    is_success,
)
from .bending import bend
from .cover import check_subgroup_relators, restrict
from .descent import DEFAULT_NORM_BOUND, DEFAULT_SAT_BOUND, trace_sample_words
from .errors import HypothesisFailure, ResourceBoundError, ZdenseError
from .groups import (
    TRIANGLE_344,
    Representation,
    check_relations,
    orbifold_from_triangle,
    triangle_generators,
)
from .sympower import omega_n

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_RESOURCE = 3

log = logging.getLogger("zdense")


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    t: Fraction | None = None
    t_list: list = field(default_factory=list)
    out: str | None = None
    input: str | None = None
    norm_bound: int = DEFAULT_NORM_BOUND
    sat_bound: int = DEFAULT_SAT_BOUND
    integralize: bool = False
    rationalize: bool = False
    cover: bool = False

    @property
    def stage(self) -> str:
        if self.integralize:
            return STAGE_INTEGRAL
        return STAGE_RATIONAL


def odd_degree(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"n must be an integer, got {text!r}")
    if n <= 1 or n % 2 == 0:
        raise argparse.ArgumentTypeError(f"n must be odd and > 1, got {n}")
    return n


def nonneg_rational(text: str) -> Fraction:
    try:
        t = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"t must be a rational 'p/q', got {text!r}")
    if t < 0:
        raise argparse.ArgumentTypeError(f"t must be >= 0, got {t}")
    return t


def rational_list(text: str) -> list:
    return [nonneg_rational(p) for p in text.split(",") if p.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zdense",
        description="Exact bent surface-group representations in SL(n, Q) and their certificates.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_n=True):
        p.add_argument("--n", type=odd_degree, required=need_n, default=3 if not need_n else None)
        p.add_argument("--out", help="output JSON path (directory for certify)")
        p.add_argument("--norm-bound", type=int, default=DEFAULT_NORM_BOUND)
        p.add_argument("--sat-bound", type=int, default=DEFAULT_SAT_BOUND)

    def stage_flags(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--integralize", action="store_true", help="use the SL(n,Z) base")
        g.add_argument("--rationalize", action="store_true", help="use the SL(n,Q) base (default)")

    p = sub.add_parser("triangle-gens", help="omega_n(x), omega_n(y) over Q(sqrt2)")
    common(p)
    p = sub.add_parser("orbifold-gens", help="images of g1..g4 under omega_n o sigma")
    common(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--integralize", action="store_true")
    g.add_argument("--rationalize", action="store_true")
    p = sub.add_parser("bend", help="bent generators and conjugator at one t")
    common(p)
    stage_flags(p)
    p.add_argument("--t", type=nonneg_rational, required=True)
    p.add_argument("--input", help="orbifold representation JSON to use as base")
    p.add_argument("--cover", action="store_true", help="also emit the surface-subgroup matrices")
    p = sub.add_parser("certify", help="certificates for a list of t values")
    common(p)
    stage_flags(p)
    p.add_argument("--t-list", type=rational_list, default=None)
    p.add_argument("--t", type=nonneg_rational, default=None)
    p.add_argument("--input", help="orbifold representation JSON to use as base")
    p = sub.add_parser("cover", help="index-3 surface subgroup and restricted matrices")
    common(p, need_n=False)
    stage_flags(p)
    p = sub.add_parser("integralize", help="descent to Q and saturation to Z")
    common(p)
    return parser


def parse_config(argv=None) -> tuple[RunConfig, bool]:
    args = build_parser().parse_args(argv)
    t_list = []
    if args.command == "certify":
        t_list = list(args.t_list or [])
        if args.t is not None:
            t_list.append(args.t)
        if not t_list:
            t_list = [Fraction(0), Fraction(1)]
    cfg = RunConfig(
        command=args.command,
        n=args.n,
        t=getattr(args, "t", None),
        t_list=t_list,
        out=args.out,
        input=getattr(args, "input", None),
        norm_bound=args.norm_bound,
        sat_bound=args.sat_bound,
        integralize=getattr(args, "integralize", False),
        rationalize=getattr(args, "rationalize", False),
        cover=getattr(args, "cover", False),
    )
    return cfg, args.verbose


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(cfg: RunConfig, payload: dict, summary: str) -> None:
    if cfg.out:
        write_atomic(cfg.out, dumps(payload))
        print(summary)
    else:
        sys.stdout.write(dumps(payload))
        print(summary, file=sys.stderr)


def load_representation(path: str) -> Representation:
    with open(path) as fh:
        obj = json.load(fh)
    if "representation" in obj:
        obj = obj["representation"]
    rep = Representation.from_json(obj)
    if rep.presentation == TRIANGLE_344:
        rep = orbifold_from_triangle(rep)
    return rep


def _base(cfg: RunConfig) -> Representation:
    if cfg.input:
        rep = load_representation(cfg.input)
        if rep.n != cfg.n:
            raise HypothesisFailure(f"input has size {rep.n}, --n is {cfg.n}")
        return rep
    return base_representation(cfg.n, cfg.stage, cfg.norm_bound, cfg.sat_bound).orbifold


def cmd_triangle_gens(cfg: RunConfig) -> int:
    x, y = triangle_generators()
    payload = {
        "n": cfg.n,
        "field": "Q(sqrt2)",
        "presentation": TRIANGLE_344.to_json(),
        "sl2": {"x": x.to_json(), "y": y.to_json()},
        "images": {
            "x": omega_n(x, cfg.n).to_json("Q(sqrt2)"),
            "y": omega_n(y, cfg.n).to_json("Q(sqrt2)"),
        },
    }
    emit(cfg, payload, f"triangle-gens n={cfg.n}: omega_n(x), omega_n(y) written")
    return EXIT_OK


def cmd_orbifold_gens(cfg: RunConfig) -> int:
    stage = STAGE_INTEGRAL if cfg.integralize else STAGE_RATIONAL if cfg.rationalize else STAGE_RAW
    base = base_representation(cfg.n, stage, cfg.norm_bound, cfg.sat_bound)
    rel = check_relations(base.orbifold)
    payload = {
        "n": cfg.n,
        "stage": stage,
        "representation": base.orbifold.to_json(),
        "relations": rel.to_json(),
    }
    emit(cfg, payload, f"orbifold-gens n={cfg.n} stage={stage}: relations {'pass' if rel.passed else 'FAIL'}")
    return EXIT_OK if rel.passed else EXIT_HYPOTHESIS


def cmd_bend(cfg: RunConfig) -> int:
    base = _base(cfg)
    bent = bend(base, cfg.t)
    rel = check_relations(bent.rep)
    payload = {"n": cfg.n, "base_stage": "input" if cfg.input else cfg.stage}
    payload.update(bent.to_json())
    payload["relations"] = rel.to_json()
    payload["all_rational"] = bent.rep.is_rational()
    payload["all_integral"] = bent.rep.is_integral()
    if cfg.cover:
        cover = default_cover()
        surf = restrict(bent.rep, cover)
        payload["surface"] = {
            "schreier_generators": {s: str(w) for s, w in cover.schreier_generators.items()},
            "images": {s: m.to_json() for s, m in surf.images.items()},
            "relators_pass": check_subgroup_relators(bent.rep, cover).passed,
        }
    emit(
        cfg,
        payload,
        f"bend n={cfg.n} t={cfg.t}: relations {'pass' if rel.passed else 'FAIL'}, "
        f"rational={bent.rep.is_rational()}, integral={bent.rep.is_integral()}",
    )
    return EXIT_OK if rel.passed else EXIT_HYPOTHESIS


def cert_filename(n: int, t: Fraction) -> str:
    return f"cert_n{n}_t{t.numerator}_{t.denominator}.json"


def cmd_certify(cfg: RunConfig) -> int:
    base = _base(cfg)
    cover = default_cover()
    psl2 = certify_psl2_base()
    certs = []
    for t in cfg.t_list:
        cert = certify_path_point(base, t, cover, cfg.n)
        cert["psl2_base"] = {"passed": psl2["passed"]}
        certs.append(cert)
        line = f"n={cfg.n} t={t}: {cert['verdict']}"
        if cfg.out:
            write_atomic(os.path.join(cfg.out, cert_filename(cfg.n, t)), dumps(cert))
            print(line)
        else:
            print(line, file=sys.stderr)
    if not cfg.out:
        sys.stdout.write(dumps(certs))
    ok = all(is_success(c["verdict"]) for c in certs)
    return EXIT_OK if ok else EXIT_HYPOTHESIS


def cmd_cover(cfg: RunConfig) -> int:
    cover = default_cover()
    base = base_representation(cfg.n, cfg.stage, cfg.norm_bound, cfg.sat_bound).orbifold
    surf = restrict(base, cover)
    rel = check_subgroup_relators(base, cover)
    payload = cover.to_json()
    payload["restricted"] = {
        "n": cfg.n,
        "base_stage": cfg.stage,
        "images": {s: m.to_json() for s, m in surf.images.items()},
        "relators_pass": rel.passed,
    }
    emit(
        cfg,
        payload,
        f"cover: index {cover.index}, {len(cover.schreier_generators)} Schreier generators, "
        f"abelianization {cover.abelianization}, genus {cover.genus}",
    )
    return EXIT_OK if rel.passed and cover.torsion_free["passed"] else EXIT_HYPOTHESIS


def cmd_integralize(cfg: RunConfig) -> int:
    raw = base_representation(cfg.n, STAGE_RAW)
    base = base_representation(cfg.n, STAGE_INTEGRAL, cfg.norm_bound, cfg.sat_bound)
    tri_rel = check_relations(base.triangle, projective=False)
    orb_rel = check_relations(base.orbifold)
    traces = []
    for w in trace_sample_words(raw.triangle):
        a, b = raw.triangle.evaluate(w).trace(), base.triangle.evaluate(w).trace()
        traces.append({"word": str(w), "trace": str(b), "preserved": a == b})
    ok = (
        base.triangle.is_integral()
        and base.orbifold.is_integral()
        and tri_rel.passed
        and orb_rel.passed
        and all(x["preserved"] for x in traces)
        and all(m.det() == 1 for m in base.triangle.images.values())
    )
    payload = {
        "n": cfg.n,
        "triangle": base.triangle.to_json(),
        "orbifold": base.orbifold.to_json(),
        "triangle_relations": tri_rel.to_json(),
        "orbifold_relations": orb_rel.to_json(),
        "traces": traces,
        "descent_witness": base.descent.to_json(),
        "lattice": base.lattice.to_json(),
        "verified": ok,
    }
    if not ok:
        print(f"integralize n={cfg.n}: verification FAILED, nothing written", file=sys.stderr)
        return EXIT_HYPOTHESIS
    emit(cfg, payload, f"integralize n={cfg.n}: integral generators, {base.lattice.iterations} saturation rounds")
    return EXIT_OK


COMMANDS = {
    "triangle-gens": cmd_triangle_gens,
    "orbifold-gens": cmd_orbifold_gens,
    "bend": cmd_bend,
    "certify": cmd_certify,
    "cover": cmd_cover,
    "integralize": cmd_integralize,
}


def main(argv=None) -> int:
    cfg, verbose = parse_config(argv)
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[cfg.command](cfg)
    except ResourceBoundError as exc:
        print(f"error ({type(exc).__name__}, bound={exc.bound}): {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except HypothesisFailure as exc:
        print(f"hypothesis failure ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (OSError, ValueError, KeyError, TypeError, ZdenseError) as exc:
        print(f"invalid input ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
