#!/usr/bin/env python3

"""congtool command line.

Exit codes: 0 success, 1 negative verdict of a yes/no command, 2 usage or
invalid input, 3 a size cap was exceeded, 4 an internal cross-check failed.
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from rich.text import Text

from .. import __version__
from ..commutator.commutator import centralizer, higher_commutator, is_nilpotent
from ..config.config import load_config
from ..config.models import Limits, LogConfig
from ..congruence.lattice import con_lattice
from ..congruence.partition import Partition, parse_partition
from ..construct.constructed import construct_c, constructed_signature
from ..construct.files import load_constructed, write_constructed
from ..construct.identities import find_identity_violation
from ..construct.star import star_congruence, star_subuniverse
from ..construct.terms import coordinate_terms, lift_idempotent
from ..core.algebra import FiniteAlgebra, Signature
from ..core.closure import TupleSet
from ..core.io import algebra_to_dict, read_json
from ..core.terms import check_term, format_term, parse_term, term_arity
from ..smp.coherence import CoherenceReport, check_d_central, check_d_coherent
from ..smp.hypothesis import check_hypothesis_snilp_centralizers
from ..smp.instance import SMPInstance, dump_instance, load_instance
from ..smp.kstar import build_k_star, class_summary
from ..smp.oracle import smp_oracle
from ..smp.reduction import reduce_instance
from ..supernil.decide import decide_supernilpotent
from ..supernil.maltsev import has_maltsev_term
from ..tct.types import classify_type
from ..utils.errors import AlgebraError, ValidationError
from ..utils.logging import get_logger, setup_logging
from . import render
from .catalog import Catalog, parse_chi

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1


@dataclass
class Context:
    catalog: Catalog
    limits: Limits
    json: bool

    def algebra(self, name: str) -> FiniteAlgebra:
        return self.catalog.resolve(name)

    def output(self, data: Any, *renderables: Any) -> None:
        if self.json:
            render.emit_json(data)
        else:
            render.show(*renderables)


def _partition_dict(p: Partition) -> Dict[str, Any]:
    return {"partition": str(p), "labels": list(p.labels)}


def _yes_no(value: bool) -> int:
    return EXIT_OK if value else EXIT_NEGATIVE


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def cmd_con(args: argparse.Namespace, ctx: Context) -> int:
    alg = ctx.algebra(args.algebra)
    lattice = sorted(con_lattice(alg, ctx.limits), key=lambda p: p.sort_key())
    if args.dot:
        sys.stdout.write(render.lattice_dot(lattice, f"Con({alg.name})"))
        return EXIT_OK
    ctx.output(
        [list(p.labels) for p in lattice],
        render.list_table(f"Con({alg.name}): {len(lattice)} congruences",
                          ["#", "partition", "blocks"],
                          [(i, p, p.num_blocks) for i, p in enumerate(lattice)]),
    )
    return EXIT_OK


def cmd_commutator(args: argparse.Namespace, ctx: Context) -> int:
    alg = ctx.algebra(args.algebra)
    betas = [parse_partition(text, alg.size) for text in args.betas]
    result = higher_commutator(alg, betas, ctx.limits)
    ctx.output(
        {"algebra": alg.name, "betas": [str(b) for b in betas], **_partition_dict(result)},
        render.key_value_table("Commutator", [
            ("algebra", alg.name), ("arguments", ", ".join(str(b) for b in betas)),
            ("commutator", result)]),
    )
    return EXIT_OK


def cmd_centralizer(args: argparse.Namespace, ctx: Context) -> int:
    alg = ctx.algebra(args.algebra)
    beta = parse_partition(args.beta, alg.size)
    result = centralizer(alg, beta, ctx.limits)
    ctx.output(
        {"algebra": alg.name, "beta": str(beta), **_partition_dict(result)},
        render.key_value_table("Centralizer", [
            ("algebra", alg.name), ("beta", beta), ("(0:beta)", result)]),
    )
    return EXIT_OK


def cmd_nilpotence(args: argparse.Namespace, ctx: Context) -> int:
    alg = ctx.algebra(args.algebra)
    alpha = parse_partition(args.alpha, alg.size)
    nilpotent, series = is_nilpotent(alg, alpha, ctx.limits)
    ctx.output(
        {"algebra": alg.name, "alpha": str(alpha), "nilpotent": nilpotent,
         "series": [str(p) for p in series]},
        render.key_value_table("Nilpotence", [
            ("algebra", alg.name), ("alpha", alpha),
            ("nilpotent", render.verdict_text(nilpotent)),
            ("lower central series", "  >  ".join(str(p) for p in series))]),
    )
    return _yes_no(nilpotent)


def cmd_supernil(args: argparse.Namespace, ctx: Context) -> int:
    alg = ctx.algebra(args.algebra)
    alpha = parse_partition(args.alpha, alg.size)
    certificate = decide_supernilpotent(alg, alpha, args.assert_omits_type1, ctx.limits,
                                        cross_check=args.cross_check)
    rows = [
        ("algebra", alg.name), ("alpha", alpha),
        ("supernilpotent", render.verdict_text(certificate.verdict)),
        ("hypothesis", certificate.hypothesis),
        ("witnesses", ", ".join(str(b) for b in certificate.witnesses) or "-"),
        ("primes", ", ".join(str(p) for p in certificate.primes) or "-"),
    ]
    if certificate.failure:
        rows.append(("failed", certificate.failure))
    if certificate.cross_check is not None:
        rows.append(("cross-check", render.verdict_text(certificate.cross_check.verdict)))
    ctx.output(certificate.to_dict(), render.key_value_table("Supernilpotence", rows))
    return _yes_no(certificate.verdict)


def cmd_construct(args: argparse.Namespace, ctx: Context) -> int:
    alg = ctx.algebra(args.algebra)
    c = construct_c(alg, parse_chi(alg, args.chi), ctx.limits)
    if args.output:
        path, sidecar = write_constructed(c, Path(args.output))
        ctx.output(
            {"algebra": str(path), "sidecar": str(sidecar), "size": c.size,
             "sorts": [list(s) for s in c.sort_elements]},
            render.key_value_table("Constructed algebra", [
                ("written", path), ("sidecar", sidecar), ("size", c.size)]),
        )
        return EXIT_OK
    ctx.output(
        algebra_to_dict(c.algebra),
        render.key_value_table("Constructed algebra", [
            ("base", alg.name), ("chi", list(c.chi.labels)),
            ("sorts", " x ".join(str(list(s)) for s in c.sort_elements)),
            ("size", c.size), ("symbols", len(c.algebra.signature))]),
    )
    return EXIT_OK


def cmd_star(args: argparse.Namespace, ctx: Context) -> int:
    alg = ctx.algebra(args.algebra)
    c = construct_c(alg, parse_chi(alg, args.chi), ctx.limits)
    if args.congruence is not None:
        beta = parse_partition(args.congruence, alg.size)
        image = star_congruence(beta, c)
        ctx.output(
            {"beta": str(beta), **_partition_dict(image)},
            render.key_value_table("Star congruence", [("beta", beta), ("beta*", image)]),
        )
        return EXIT_OK
    data = read_json(args.subuniverse)
    tuples = data.get("tuples") if isinstance(data, dict) else data
    if not isinstance(tuples, list) or not tuples:
        raise ValidationError("Subuniverse file must hold a nonempty list of tuples")
    arity = len(tuples[0])
    bs = TupleSet.from_tuples([alg.size] * arity, tuples)
    image_set = star_subuniverse(bs, [c] * arity, ctx.limits)
    ordered = sorted(image_set)
    ctx.output(
        {"size": len(ordered), "tuples": [list(t) for t in ordered]},
        render.list_table(f"Star subuniverse: {len(ordered)} tuples", ["tuple", "columns"],
                          [(t, [c.decode(v) for v in t]) for t in ordered]),
    )
    return EXIT_OK


def cmd_lift_term(args: argparse.Namespace, ctx: Context) -> int:
    alg = ctx.algebra(args.algebra)
    chi = parse_chi(alg, args.chi)
    term = parse_term(args.term)
    check_term(alg.signature, term)
    k = args.arity if args.arity is not None else term_arity(term)
    lifted = lift_idempotent(term, k, chi.m, chi.codomain, base=alg)
    ctx.output(
        {"term": format_term(term), "arity": k, "m": chi.m, "lifted": format_term(lifted)},
        render.key_value_table("Lifted term", [("term", format_term(term)), ("m", chi.m),
                                               ("lifted", format_term(lifted))]),
    )
    return EXIT_OK


def cmd_coordinate_terms(args: argparse.Namespace, ctx: Context) -> int:
    alg = ctx.algebra(args.algebra)
    chi = parse_chi(alg, args.chi)
    term = parse_term(args.term)
    check_term(Signature(tuple(constructed_signature(alg, chi.m))), term)
    coords = coordinate_terms(term, chi.m, chi.codomain)
    ctx.output(
        {"term": format_term(term), "m": chi.m, "coordinates": [format_term(t) for t in coords]},
        render.list_table("Coordinate terms", ["i", "t^(i)"],
                          [(i, format_term(t)) for i, t in enumerate(coords)]),
    )
    return EXIT_OK


def _coherence_output(ctx: Context, report: CoherenceReport) -> int:
    ctx.output(
        report.to_dict(),
        render.list_table(
            f"{report.kind} (d = {report.d})", ["condition", "result", "message"],
            [(c.name, render.verdict_text(c.passed, "pass", "fail"), c.message)
             for c in report.conditions]),
    )
    return _yes_no(report.passed)


def _instance(ctx: Context, path: str) -> SMPInstance:
    return load_instance(Path(path), ctx.algebra)


def cmd_smp_solve(args: argparse.Namespace, ctx: Context) -> int:
    inst = _instance(ctx, args.instance)
    answer = smp_oracle(inst, args.cap, ctx.limits)
    ctx.output(
        {"answer": "yes" if answer else "no", "n": inst.n, "k": inst.k},
        render.key_value_table("Subpower membership", [
            ("components", inst.n), ("generators", inst.k),
            ("target generated", render.verdict_text(answer))]),
    )
    return _yes_no(answer)


def cmd_smp_check_coherent(args: argparse.Namespace, ctx: Context) -> int:
    return _coherence_output(ctx, check_d_coherent(_instance(ctx, args.instance), args.d,
                                                   ctx.limits))


def cmd_smp_check_central(args: argparse.Namespace, ctx: Context) -> int:
    return _coherence_output(ctx, check_d_central(_instance(ctx, args.instance), args.d,
                                                  ctx.limits))


def _distinct(algs: Sequence[FiniteAlgebra]) -> List[FiniteAlgebra]:
    result: List[FiniteAlgebra] = []
    for alg in algs:
        if alg not in result:
            result.append(alg)
    return result


def cmd_smp_reduce(args: argparse.Namespace, ctx: Context) -> int:
    inst = _instance(ctx, args.instance)
    classes = build_k_star(_distinct(inst.components), limits=ctx.limits)
    result = reduce_instance(inst, classes, args.d, ctx.limits)
    if args.output:
        out = Path(args.output)
        names = []
        for j, c in enumerate(result.constructed):
            path = out.with_name(f"{out.stem}.component{j}.json")
            write_constructed(c, path)
            names.append(str(path))
        dump_instance(result.instance, out, names)
    ctx.output(
        result.to_dict(),
        render.key_value_table("Reduced instance", [
            ("class", f"I{result.class_index}"),
            ("component sizes", [c.size for c in result.constructed]),
            ("paddings", result.paddings),
            ("padding cells", result.cells),
            ("d-central", render.verdict_text(result.central.passed))]),
    )
    return EXIT_OK


def cmd_smp_build_kstar(args: argparse.Namespace, ctx: Context) -> int:
    classes = build_k_star([ctx.algebra(name) for name in args.algebras], args.cap,
                           ctx.limits)
    ctx.output(
        [cls.to_dict() for cls in classes],
        render.list_table("Similarity classes", ["class", "characteristic", "members",
                                                 "constructed"], class_summary(classes)),
    )
    return EXIT_OK


def cmd_smp_check_hypothesis(args: argparse.Namespace, ctx: Context) -> int:
    report = check_hypothesis_snilp_centralizers(
        [ctx.algebra(name) for name in args.algebras], args.assert_omits_type1, args.cap,
        ctx.limits)
    ctx.output(
        report.to_dict(),
        render.list_table(
            "Supernilpotent monolith centralizers", ["algebra", "(0:mu)", "supernilpotent",
                                                     "hypothesis"],
            [(e.algebra.name, e.certificate.alpha, render.verdict_text(e.certificate.verdict),
              e.certificate.hypothesis) for e in report.entries]),
        Text("holds" if report.holds else "fails",
             style="bold green" if report.holds else "bold red"),
    )
    return _yes_no(report.holds)


def cmd_tct_type(args: argparse.Namespace, ctx: Context) -> int:
    alg = ctx.algebra(args.algebra)
    delta = parse_partition(args.delta, alg.size)
    theta = parse_partition(args.theta, alg.size)
    found = classify_type(alg, delta, theta, ctx.limits)
    ctx.output(
        {"delta": str(delta), "theta": str(theta), **found.to_dict()},
        render.key_value_table("Prime quotient type", [
            ("algebra", alg.name), ("quotient", f"({delta}, {theta})"), ("type", found)]),
    )
    return EXIT_OK


def cmd_check_identities(args: argparse.Namespace, ctx: Context) -> int:
    c = load_constructed(Path(args.file), ctx.algebra)
    violation = find_identity_violation(c, ctx.limits)
    ctx.output(
        {"passed": violation is None,
         "violation": violation.to_dict() if violation is not None else None},
        render.key_value_table("Diagonal algebra identities", [
            ("file", args.file), ("passed", render.verdict_text(violation is None)),
            ("violation", violation.to_dict() if violation is not None else "-")]),
    )
    return _yes_no(violation is None)


def cmd_maltsev(args: argparse.Namespace, ctx: Context) -> int:
    alg = ctx.algebra(args.algebra)
    term = has_maltsev_term(alg, ctx.limits)
    ctx.output(
        {"algebra": alg.name, "maltsev": term is not None,
         "term": format_term(term) if term is not None else None},
        render.key_value_table("Maltsev term", [
            ("algebra", alg.name), ("found", render.verdict_text(term is not None)),
            ("term", format_term(term) if term is not None else "-")]),
    )
    return _yes_no(term is not None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="congtool",
        description="Congruences, commutators and constructed algebras of finite algebras",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__.split("\n\n", 1)[1] if __doc__ else None,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--json", action="store_true", help="Emit JSON on stdout")
    parser.add_argument("--config", type=Path, help="YAML configuration file")
    parser.add_argument("--catalog", type=Path, help="Algebra catalog directory")
    parser.add_argument("--threads", type=_positive, help="Worker threads for parallel kernels")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="Log level (logs go to stderr)")
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler: Callable[[argparse.Namespace, Context], int],
                help_text: str, sub: Any = commands) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = command("con", cmd_con, "List congruences")
    p.add_argument("algebra")
    p.add_argument("--dot", action="store_true", help="Print the Hasse diagram as DOT")

    p = command("commutator", cmd_commutator, "Higher commutator of congruences")
    p.add_argument("algebra")
    p.add_argument("betas", nargs="+", metavar="beta")

    p = command("centralizer", cmd_centralizer, "Centralizer (0:beta)")
    p.add_argument("algebra")
    p.add_argument("beta")

    p = command("nilpotence", cmd_nilpotence, "Lower central series of a congruence")
    p.add_argument("algebra")
    p.add_argument("alpha")

    p = command("supernil", cmd_supernil, "Decide supernilpotence of a congruence")
    p.add_argument("algebra")
    p.add_argument("alpha")
    p.add_argument("--assert-omits-type1", action="store_true",
                   help="Assert that the variety omits type 1")
    p.add_argument("--cross-check", action="store_true",
                   help="Repeat the decision on the constructed algebra")

    p = command("construct", cmd_construct, "Build the constructed algebra of (A, chi)")
    p.add_argument("algebra")
    p.add_argument("chi", help="Kernel (02|13) or labels (0,1,0,1)")
    p.add_argument("--output", help="Write FILE and FILE.sidecar.json")

    p = command("star", cmd_star, "Image of a congruence or subuniverse under the star map")
    p.add_argument("algebra")
    p.add_argument("chi")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--congruence")
    target.add_argument("--subuniverse", type=Path, help="JSON list of tuples")

    p = command("lift-term", cmd_lift_term, "Lift an idempotent term")
    p.add_argument("algebra")
    p.add_argument("chi")
    p.add_argument("--term", required=True)
    p.add_argument("--arity", type=_positive)

    p = command("coordinate-terms", cmd_coordinate_terms,
                "Coordinate terms of a constructed-language term")
    p.add_argument("algebra")
    p.add_argument("chi")
    p.add_argument("--term", required=True)

    smp = command("smp", lambda a, c: EXIT_OK, "Subpower membership")
    smp_commands = smp.add_subparsers(dest="smp_command", required=True)
    p = command("solve", cmd_smp_solve, "Decide membership by closure", smp_commands)
    p.add_argument("instance")
    p.add_argument("--cap", type=int)
    for name, handler, help_text in [
        ("reduce", cmd_smp_reduce, "Reduce a d-coherent instance to a d-central one"),
        ("check-coherent", cmd_smp_check_coherent, "Check d-coherence"),
        ("check-central", cmd_smp_check_central, "Check d-centrality"),
    ]:
        p = command(name, handler, help_text, smp_commands)
        p.add_argument("instance")
        p.add_argument("--d", type=_positive, default=2)
        if name == "reduce":
            p.add_argument("--output", help="Write the reduced instance and its algebras")
    p = command("build-kstar", cmd_smp_build_kstar, "Similarity classes of HS(K)", smp_commands)
    p.add_argument("algebras", nargs="+")
    p.add_argument("--cap", type=int)
    p = command("check-hypothesis", cmd_smp_check_hypothesis,
                "Supernilpotence of monolith centralizers in HS(K)", smp_commands)
    p.add_argument("algebras", nargs="+")
    p.add_argument("--cap", type=int)
    p.add_argument("--assert-omits-type1", action="store_true")

    tct = command("tct", lambda a, c: EXIT_OK, "Tame congruence theory")
    tct_commands = tct.add_subparsers(dest="tct_command", required=True)
    p = command("type", cmd_tct_type, "Type of a prime quotient", tct_commands)
    p.add_argument("algebra")
    p.add_argument("delta")
    p.add_argument("theta")

    check = command("check", lambda a, c: EXIT_OK, "Validators")
    check_commands = check.add_subparsers(dest="check_command", required=True)
    p = command("identities", cmd_check_identities,
                "Check the diagonal algebra identities of a constructed algebra file",
                check_commands)
    p.add_argument("file")

    p = command("maltsev", cmd_maltsev, "Search for a Maltsev term")
    p.add_argument("algebra")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point"""
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        log = config.log
        if args.log_level:
            log = LogConfig(level=args.log_level, renderer=log.renderer)
        setup_logging(log)
        limits = config.limits
        if args.threads is not None:
            limits = Limits(**{**limits.model_dump(), "threads": args.threads})
        ctx = Context(Catalog(args.catalog or config.catalog.directory), limits, args.json)
        return args.handler(args, ctx)
    except AlgebraError as e:
        logger.debug("command failed", command=args.command, code=e.code)
        if args.json:
            render.emit_json({"error": e.to_dict()})
        else:
            render.show_error(e.message, e.code, e.details)
        return e.exit_code
    except Exception as e:
        logger.exception("unexpected failure", command=args.command)
        error = AlgebraError(f"{type(e).__name__}: {e}", "INTERNAL_ERROR")
        if args.json:
            render.emit_json({"error": error.to_dict()})
        else:
            render.show_error(error.message, error.code)
        return error.exit_code


if __name__ == "__main__":
    sys.exit(main())
