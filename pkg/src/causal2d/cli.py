"""Command-line front end.

Every subcommand prints one JSON document (also written to ``-o`` when
given).  Exit status: 0 pass, 1 verification failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from . import cylinder as cyl
from . import embedding as emb
from . import exactmaps as em
from . import flatcone as fc
from . import oracle
from . import smoothconf as sc

PASS, FAIL, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    samples: int = 1000
    tol: float = 1e-6
    grid_n: int = 4
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.samples <= 0:
            raise InputError("--samples", "must be positive")
        if self.grid_n < 1:
            raise InputError("--grid-n", "must be >= 1")
        if not self.tol > 0:
            raise InputError("--tol", "must be positive")


# -- input helpers -------------------------------------------------------------

def _parse(where: str, fn: Callable, *args):
    try:
        return fn(*args)
    except InputError:
        raise
    except KeyError as exc:
        raise InputError(where, f"missing field {exc.args[0]!r}") from None
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(where, str(exc)) from None


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(path, exc.strerror or str(exc)) from None
    except json.JSONDecodeError as exc:
        raise InputError(path, f"invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _field(where: str, obj: dict, key: str):
    if not isinstance(obj, dict):
        raise InputError(where, "expected a JSON object")
    if key not in obj:
        raise InputError(where, f"missing field {key!r}")
    return obj[key]


def load_map(obj, where: str):
    return _parse(where, em.map_from_json, obj)


def load_auto(obj, where: str) -> fc.CausalAutomorphism:
    kind = _parse(f"{where}.kind", fc.Kind, _field(where, obj, "kind"))
    phi = load_map(_field(where, obj, "phi"), f"{where}.phi")
    psi = load_map(_field(where, obj, "psi"), f"{where}.psi")
    return _parse(where, fc.CausalAutomorphism, kind, phi, psi)


def load_map_or_auto(path: str):
    obj = _read_json(path)
    if isinstance(obj, dict) and "kind" in obj:
        return load_auto(obj, path)
    return load_map(obj, path)


def parse_point(text: str, where: str = "--point"):
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(where, f"expected 'a,b', got {text!r}")
    return tuple(_parse(where, em.q, s) for s in parts)


def parse_real_point(text: str, where: str = "--at") -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(where, f"expected 'a,b', got {text!r}")
    return tuple(_parse(where, lambda s: float(Fraction(s.strip())), s) for s in parts)


def to_json(obj) -> dict:
    if isinstance(obj, fc.CausalAutomorphism):
        return fc.auto_to_json(obj)
    if isinstance(obj, cyl.CylinderAutomorphism):
        return dict(fc.auto_to_json(obj.rep), canonical=True)
    return em.map_to_json(obj)


# -- subcommands --------------------------------------------------------------

def cmd_compose(args, cfg):
    a, b = load_map_or_auto(args.a), load_map_or_auto(args.b)
    if isinstance(a, fc.CausalAutomorphism) != isinstance(b, fc.CausalAutomorphism):
        raise InputError(args.b, "cannot compose a map with an automorphism")
    if isinstance(a, fc.CausalAutomorphism):
        out = _parse("compose", fc.auto_compose, a, b)
    else:
        out = _parse("compose", em.compose, a, b)
    return to_json(out), PASS


def cmd_invert(args, cfg):
    a = load_map_or_auto(args.a)
    fn = fc.auto_invert if isinstance(a, fc.CausalAutomorphism) else em.invert
    return to_json(_parse("invert", fn, a)), PASS


def _need_auto(path):
    a = load_map_or_auto(path)
    if not isinstance(a, fc.CausalAutomorphism):
        raise InputError(path, "missing field 'kind' (expected an automorphism)")
    return a


def cmd_apply(args, cfg):
    F = _need_auto(args.a)
    x, t = parse_point(args.point)
    return fc.event_to_json(F(fc.Event(x, t))), PASS


def cmd_verify_auto(args, cfg):
    F = _need_auto(args.a)
    report = fc.verify_order_iso(F, fc.SampleSpec(seed=cfg.seed, pairs=cfg.samples))
    return report.to_json(), PASS if report.passed else FAIL


def cmd_descend(args, cfg):
    F = _need_auto(args.a)
    verdict = cyl.descends(F)
    brute = oracle.check_descent_brute(F, cfg.grid_n)
    out = {
        "verdict": verdict.value,
        "brute_verdict": brute.value,
        "literal_condition": cyl.satisfies_paper_condition(F.phi, F.psi),
    }
    if verdict is cyl.DescentVerdict.AUTOMORPHISM:
        g = cyl.canonical_rep(F)
        out["canonical"] = to_json(g)
        out["samples"] = [
            {"p": cyl.cyl_to_json(p), "image": cyl.cyl_to_json(g(p))}
            for p in oracle.lattice_points(oracle.CYLINDER, cfg.grid_n)
        ]
    ok = verdict is brute is cyl.DescentVerdict.AUTOMORPHISM
    return out, PASS if ok else FAIL


def cmd_quotient_compose(args, cfg):
    g1 = _parse(args.g1, cyl.canonical_rep, _need_auto(args.g1))
    g2 = _parse(args.g2, cyl.canonical_rep, _need_auto(args.g2))
    return to_json(cyl.quotient_compose(g1, g2)), PASS


def cmd_embed(args, cfg):
    f = load_map(_read_json(args.f), args.f)
    d = _parse(args.domain, emb.domain_from_json, _read_json(args.domain))
    emb_map = _parse(args.f, emb.extend_embedding, f, d)
    image = emb_map.image
    sampler = emb.DomainSampler(seed=cfg.seed, points=min(cfg.samples, 200))
    pts = list(sampler.iter_points(d))
    agree = all(emb_map(p) == emb_map.via_shadow(p) for p in pts)
    inside = all(emb_map(p) in image for p in pts)
    order = all(
        fc.causally_leq(p, r) == fc.causally_leq(emb_map(p), emb_map(r)) for p in pts for r in pts
    )
    out = {
        "image_domain": emb.domain_to_json(image),
        "route_agreement": agree,
        "membership": inside,
        "order_iso": order,
        "samples": [{"p": fc.event_to_json(p), "image": fc.event_to_json(emb_map(p))} for p in pts],
    }
    return out, PASS if agree and inside and order else FAIL


def cmd_grid_check(args, cfg):
    grid = oracle.build_grid(args.space, cfg.grid_n)
    ok = oracle.is_partial_order(grid)
    out = {"space": grid.space, "n": cfg.grid_n, "points": len(grid),
           "edges": len(grid.edges), "partial_order": ok}
    if args.export:
        out["grid"] = grid.to_json()
    return out, PASS if ok else FAIL


def cmd_conformal_check(args, cfg):
    obj = _read_json(args.a)
    F = _parse(args.a, sc.smooth_auto_from_json, obj)
    p = parse_real_point(args.at)
    try:
        rep = sc.conformal_defect(F, p, args.h)
    except sc.DegenerateJacobian as exc:
        return {"verdict": "degenerate", "detail": str(exc)}, FAIL
    out = rep.to_json(cfg.tol)
    return out, PASS if out["verdict"] == "conformal" else FAIL


def cmd_orbit(args, cfg):
    F = _need_auto(args.a)
    a, b = parse_point(args.point)
    if args.steps < 0:
        raise InputError("--steps", "must be >= 0")
    if args.space == "cyl":
        g = _parse(args.a, cyl.canonical_rep, F)
        p = _parse("--point", cyl.CylPoint, a, b)
        orbit = [cyl.cyl_to_json(p)]
        for _ in range(args.steps):
            p = g(p)
            orbit.append(cyl.cyl_to_json(p))
    else:
        p = fc.Event(a, b)
        orbit = [fc.event_to_json(p)]
        for _ in range(args.steps):
            p = F(p)
            orbit.append(fc.event_to_json(p))
    return {"space": args.space, "orbit": orbit}, PASS


# -- argument parsing -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--samples", type=int, default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("-n", "--grid-n", type=int, default=argparse.SUPPRESS)
    common.add_argument("-o", "--output", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="causal2d", parents=[common],
                                     description="Causal structure of 2D spacetimes, exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, *positionals, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        for pos in positionals:
            p.add_argument(pos)
        p.set_defaults(func=fn)
        return p

    add("compose", cmd_compose, "a", "b", help="A o B for maps or automorphisms")
    add("invert", cmd_invert, "a")
    add("apply", cmd_apply, "a").add_argument("--point", required=True)
    add("verify-auto", cmd_verify_auto, "a", help="sampled order-isomorphism suite")
    add("descend", cmd_descend, "a", help="descent verdict on the cylinder")
    add("quotient-compose", cmd_quotient_compose, "g1", "g2")
    add("embed", cmd_embed, "f", "domain")
    p = add("grid-check", cmd_grid_check)
    p.add_argument("--space", choices=["flat", "cyl"], default="flat")
    p.add_argument("--export", action="store_true", help="include nodes and edges")
    p = add("conformal-check", cmd_conformal_check, "a")
    p.add_argument("--at", required=True)
    p.add_argument("--h", type=float, default=1e-4)
    p = add("orbit", cmd_orbit, "a")
    p.add_argument("--point", required=True)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--space", choices=["flat", "cyl"], default="flat")
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else PASS
    try:
        cfg = RunConfig(
            seed=getattr(args, "seed", 0),
            samples=getattr(args, "samples", 1000),
            tol=getattr(args, "tol", 1e-6),
            grid_n=getattr(args, "grid_n", 4),
            output_path=getattr(args, "output", None),
        )
        payload, code = args.func(args, cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    text = json.dumps(payload, indent=2, sort_keys=True)
    print(text, file=stdout)
    if cfg.output_path:
        Path(cfg.output_path).write_text(text + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
