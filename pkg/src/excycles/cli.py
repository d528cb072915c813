"""Command-line front end.

Exit codes: 0 pass, 1 usage / schema / I/O error, 2 mathematical failure
(including inconclusive verdicts, which are labelled as such).
"""

import argparse
import math
import os
import sys
from dataclasses import dataclass

from . import __version__
from . import cycles as cy
from . import homolog as hl
from . import io
from .errors import (
    AlgebraMismatch, CutoffExceeded, FieldMismatch, InfiniteDimensional, SchemaError,
    UndecidedIsomorphism, UnsupportedAlgebra,
)
from .exactlin import FieldSpec

EXIT_OK, EXIT_INPUT, EXIT_MATH = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    field: FieldSpec = FieldSpec()
    cutoff: int = hl.DEFAULT_CUTOFF
    seed: int = 0
    trials: int = 8
    fast: bool = False
    out: str = None
    verbose: int = 0

    def __post_init__(self):
        if self.cutoff < 1:
            raise ValueError("cutoff must be at least 1")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")

    def as_json(self):
        return {"field": str(self.field), "cutoff": self.cutoff, "seed": self.seed,
                "trials": self.trials, "fast": self.fast}


def _fmt_dim(d):
    if d is None:
        return "exceeded-cutoff"
    return "inf" if d == math.inf else str(d)


def _inputs(paths):
    return [[os.path.basename(p), io.digest(p)] for p in paths]


# -- commands -----------------------------------------------------------------------------


def cmd_algebra_check(path, cfg, out=sys.stdout):
    A = io.load_algebra(path, cfg.field)
    print(f"algebra: {A.name or os.path.basename(path)}", file=out)
    print(f"dim: {A.dim}", file=out)
    bad = A.associativity_violation()
    if bad is not None:
        i, j, l = bad
        print(f"associativity: FAIL at ({A.labels[i]}, {A.labels[j]}, {A.labels[l]})", file=out)
        return EXIT_MATH
    print("associativity: ok", file=out)
    bad = A.unit_violation()
    if bad is not None:
        print(f"unit: FAIL at {A.labels[bad]}", file=out)
        return EXIT_MATH
    print("unit: ok", file=out)
    if not A.has_vertex_data:
        print("gorenstein: unavailable (no vertex idempotents)", file=out)
        return EXIT_OK
    g = hl.gorenstein(A, cfg.cutoff, cfg.seed, cfg.trials)
    print(f"gorenstein: {g.status} (left {_fmt_dim(g.left)}, right {_fmt_dim(g.right)})", file=out)
    return EXIT_OK


def cmd_ext(path_m, path_n, tmax, cfg, out=sys.stdout):
    cache = {}
    m = io.load_module(path_m, cfg.field, cache=cache)
    n = io.load_module(path_n, cfg.field, cache=cache)
    if not m.algebra.same_as(n.algebra):
        raise AlgebraMismatch("modules live over different algebras")
    print("t\tdim Ext^t", file=out)
    for t in range(tmax + 1):
        try:
            d = str(hl.ext_dim(m, n, t, cfg.cutoff))
        except CutoffExceeded:
            d = "∞?"
        print(f"{t}\t{d}", file=out)
    return EXIT_OK


def certificate_doc(result, cycle, cfg, inputs, extra=None):
    F = cycle.algebra.field
    doc = {
        "tool": f"excycles {__version__}",
        "config": cfg.as_json(),
        "inputs": _inputs(inputs),
        "modules": list(cycle.names),
        "algebra_dim": cycle.algebra.dim,
    }
    if result.ok:
        doc.update({
            "verdict": "PASS",
            "degrees": list(result.degrees),
            "tmax": result.tmax,
            "mode": result.mode,
            "ext_table": result.ext_table,
            "gorenstein": [_fmt_dim(x) for x in result.gorenstein],
            "serre_witnesses": [io.matrix_json(F, w) for w in result.serre_witnesses],
        })
    else:
        doc.update({
            "verdict": "FAIL",
            "failure": {"kind": result.kind, "detail": result.detail,
                        "position": list(result.position) if result.position else None},
            "degrees": list(result.degrees),
        })
    if extra:
        doc.update(extra)
    return doc


def _summary_line(result, names):
    if result.ok:
        return f"cycle ({', '.join(names)}): PASS degrees {tuple(result.degrees)}"
    return f"cycle ({', '.join(names)}): FAIL {result}"


def cmd_verify_cycle(cycle_path, cfg, out=sys.stdout):
    cycle, inputs = io.load_cycle(cycle_path, cfg.field)
    res = cy.verify_cycle(cycle, cfg.cutoff, cfg.seed, cfg.trials, fast=cfg.fast)
    doc = certificate_doc(res, cycle, cfg, inputs)
    if cfg.out:
        os.makedirs(cfg.out, exist_ok=True)
        io.write_json(os.path.join(cfg.out, "certificate.json"), doc)
    else:
        out.write(io.dump(doc))
    print(_summary_line(res, cycle.names), file=out)
    return EXIT_OK if res.ok else EXIT_MATH


def _write_product(outdir, result, cert_doc):
    os.makedirs(os.path.join(outdir, "sequence"), exist_ok=True)
    io.write_json(os.path.join(outdir, "lambda.json"), io.algebra_to_json(result.algebra))
    emb = result.embedding
    io.write_json(os.path.join(outdir, "bimodule.json"),
                  io.bimodule_to_json(result.bimodule, emb.alg_a.name or "A", emb.alg_b.name or "B"))
    refs = []
    for k, m in enumerate(result.sequence, start=1):
        rel = f"sequence/m{k}.json"
        io.write_json(os.path.join(outdir, rel), io.module_to_json(m, "../lambda.json"))
        refs.append(rel)
    io.write_json(os.path.join(outdir, "product.cycle.json"), {"algebra": "lambda.json", "modules": refs})
    io.write_json(os.path.join(outdir, "certificate.json"), cert_doc)


def cmd_product(path_a, path_b, cfg, out=sys.stdout, mode="product"):
    """``mode`` is "product", "extend" (only ``path_a``) or "coextend" (only ``path_a``)."""
    e, inputs = io.load_cycle(path_a, cfg.field)
    cert_e = cy.verify_cycle(e, cfg.cutoff, cfg.seed, cfg.trials, fast=cfg.fast)
    print(_summary_line(cert_e, e.names), file=out)
    if not cert_e.ok:
        return EXIT_MATH
    kw = dict(cutoff=cfg.cutoff, seed=cfg.seed, trials=cfg.trials)
    if mode == "extend":
        result = cy.extend(e, cert_e, **kw)
    elif mode == "coextend":
        result = cy.coextend(e, cert_e, **kw)
    else:
        f, more = io.load_cycle(path_b, cfg.field)
        inputs += more
        cert_f = cy.verify_cycle(f, cfg.cutoff, cfg.seed, cfg.trials, fast=cfg.fast)
        print(_summary_line(cert_f, f.names), file=out)
        if not cert_f.ok:
            return EXIT_MATH
        result = cy.product(e, f, cert_e, cert_f, **kw)
    lam = result.algebra
    print(f"triangular algebra: dim {lam.dim} (A {len(result.embedding.a_range)}, "
          f"N {len(result.embedding.n_range)}, B {len(result.embedding.b_range)})", file=out)
    g = hl.gorenstein(lam, cfg.cutoff, cfg.seed, cfg.trials)
    crit = cy.gorenstein_criterion(lam, cfg.cutoff)
    crit_ok = all(x != math.inf for x in crit)
    print(f"gorenstein: {g.status} (left {_fmt_dim(g.left)}, right {_fmt_dim(g.right)}); "
          f"criterion: proj.dim _A N = {_fmt_dim(crit[0])}, proj.dim N_B = {_fmt_dim(crit[1])}", file=out)
    cyc = result.cycle()
    res = cy.verify_cycle(cyc, cfg.cutoff, cfg.seed, cfg.trials, fast=cfg.fast, gor=g)
    matches = res.ok and tuple(res.degrees) == result.expected_degrees
    extra = {
        "construction": mode,
        "expected_degrees": list(result.expected_degrees),
        "degrees_match": bool(matches),
        "gorenstein_criterion": [_fmt_dim(x) for x in crit],
        "glued_is_projective": bool(result.glued_is_projective()),
    }
    doc = certificate_doc(res, cyc, cfg, inputs, extra)
    if cfg.out:
        _write_product(cfg.out, result, doc)
    print(_summary_line(res, cyc.names), file=out)
    verdict = "PASS" if matches and g.is_gorenstein and crit_ok else "FAIL"
    print(f"exceptional {len(cyc)}-cycle: {verdict} degrees {tuple(res.degrees)} "
          f"expected {result.expected_degrees}", file=out)
    return EXIT_OK if verdict == "PASS" else EXIT_MATH


def cmd_serre(path, cfg, out=sys.stdout):
    m = io.load_module(path, cfg.field)
    si = hl.serre_image(m, cfg.cutoff)
    if isinstance(si, hl.NotAShiftedModule):
        print(f"serre image: not a shifted module ({si})", file=out)
        return EXIT_MATH
    print(f"serre image: degree {si.degree}, dim {si.image.dim}, "
          f"dimension vector {list(si.image.dim_vector())}", file=out)
    return EXIT_OK


def cmd_resolve(path, cfg, out=sys.stdout):
    m = io.load_module(path, cfg.field)
    rep = hl.min_proj_resolution(m, cfg.cutoff)
    verts = m.algebra.vertices
    for k, vs in enumerate(rep.vertices):
        print(f"P_{k} = " + (" + ".join(f"P({verts[v]})" for v in vs) or "0"), file=out)
    print("length: " + ("exceeded-cutoff" if rep.exceeded else str(rep.length)), file=out)
    return EXIT_OK


# -- argument parsing -----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1; 2 is reserved for mathematical verdicts."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="rational", help="rational or fp:<p> (default rational)")
    common.add_argument("--cutoff", type=int, default=hl.DEFAULT_CUTOFF)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=8)
    common.add_argument("--fast", action="store_true", help="check only the first Ext row")
    common.add_argument("--out", help="directory for written artifacts")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = _Parser(prog="excycles", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"excycles {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("algebra-check", parents=[common], help="axioms, dimension, Gorenstein dims")
    s.add_argument("algebra")
    s = sub.add_parser("ext", parents=[common], help="table of dim Ext^t(M, N)")
    s.add_argument("m")
    s.add_argument("n")
    s.add_argument("--tmax", type=int, default=3)
    s = sub.add_parser("verify-cycle", parents=[common], help="certify a perfect exceptional cycle")
    s.add_argument("cycle")
    s = sub.add_parser("product", parents=[common], help="product of two cycles (or --extend/--coextend)")
    s.add_argument("cycle_a")
    s.add_argument("cycle_b", nargs="?")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--extend", action="store_true")
    g.add_argument("--coextend", action="store_true")
    s = sub.add_parser("serre", parents=[common], help="Serre image of a module")
    s.add_argument("module")
    s = sub.add_parser("resolve", parents=[common], help="minimal projective resolution")
    s.add_argument("module")
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    p = _parser()
    args = p.parse_args(argv)
    try:
        cfg = RunConfig(FieldSpec.parse(args.field), args.cutoff, args.seed, args.trials,
                        args.fast, args.out, args.verbose)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.command == "algebra-check":
            return cmd_algebra_check(args.algebra, cfg, out)
        if args.command == "ext":
            return cmd_ext(args.m, args.n, args.tmax, cfg, out)
        if args.command == "verify-cycle":
            return cmd_verify_cycle(args.cycle, cfg, out)
        if args.command == "product":
            mode = "extend" if args.extend else "coextend" if args.coextend else "product"
            if mode == "product" and not args.cycle_b:
                p.error("product needs two cycle files unless --extend/--coextend is given")
            return cmd_product(args.cycle_a, args.cycle_b, cfg, out, mode)
        if args.command == "serre":
            return cmd_serre(args.module, cfg, out)
        if args.command == "resolve":
            return cmd_resolve(args.module, cfg, out)
    except (SchemaError, AlgebraMismatch, FieldMismatch, InfiniteDimensional, UnsupportedAlgebra) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CutoffExceeded, UndecidedIsomorphism) as exc:
        print(f"INCONCLUSIVE: {exc}", file=sys.stderr)
        return EXIT_MATH
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
