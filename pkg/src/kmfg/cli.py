"""Command-line frontend.

Subcommands: info, pi1, spin, flag, weyl, adm, verify.  The input diagram
comes from ``--type NAME`` or ``--matrix PATH`` (``-`` reads stdin).  All
indices on the command line and in rendered output are 1-based.

Exit codes: 0 success, 1 usage error, 2 input/validation error,
3 hypothesis gate refused, 4 resource cap exhausted.  Errors print one
machine-greppable line ``error[ENNN]: ...`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import adm, cartan, coxeter, fpgroup, pi1
from .errors import (
    HypothesisError,
    InadmissibleKappaError,
    InvariantViolationError,
    MatrixFormatError,
    ResourceLimitError,
    UnknownNameError,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_RESOURCE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_max_cosets() -> int:
    raw = os.environ.get("KMFG_MAX_COSETS")
    if raw is None:
        return fpgroup.DEFAULT_MAX_COSETS
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"KMFG_MAX_COSETS must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"KMFG_MAX_COSETS must be >= 1, got {value}")
    return value


def _add_input_options(sub, force=False):
    sub.add_argument("--type", metavar="NAME", help="named diagram, e.g. A3, E10, C2~")
    sub.add_argument(
        "--matrix", metavar="PATH", help="matrix file, plain or JSON; '-' for stdin"
    )
    if force:
        sub.add_argument(
            "--force",
            action="store_true",
            help="compute even when the validity hypotheses are not established",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="kmfg",
        description=(
            "Fundamental groups of split real Kac-Moody groups, their maximal "
            "compact subgroups, spin covers and flag varieties, from a "
            "generalized Cartan matrix."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="hypotheses and diagram summary")
    _add_input_options(p)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("pi1", help="pi1 of the group and its maximal compact subgroup")
    _add_input_options(p, force=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--full", action="store_true", help="full report incl. spin and flags")
    p.add_argument("--max-cosets", type=int, default=None)

    p = sub.add_parser("spin", help="pi1 of the spin covers")
    _add_input_options(p, force=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument(
        "--kappa",
        metavar="BITS",
        help="one '1'/'2' character per free component in canonical order",
    )
    p.add_argument("--all", action="store_true", help="list all admissible colourings")

    p = sub.add_parser("flag", help="pi1 of the flag variety G/P_J")
    _add_input_options(p, force=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument(
        "--set",
        metavar="LIST",
        default="",
        help="comma-separated 1-based parabolic indices; empty for the full flag",
    )
    p.add_argument("--max-cosets", type=int, default=None)

    p = sub.add_parser("weyl", help="Weyl group cell counts and cell closures")
    _add_input_options(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-length", type=int, required=True)
    p.add_argument("--parabolic", metavar="LIST", default="")
    p.add_argument("--cells", action="store_true", help="length histogram (default)")
    p.add_argument(
        "--closure",
        metavar="WORD",
        help="comma-separated word; list the cells in the closure of its cell",
    )
    p.add_argument("--cap", type=int, default=coxeter.DEFAULT_ELEMENT_CAP)

    p = sub.add_parser("adm", help="the coloured parity graph")
    _add_input_options(p)
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--dot", action="store_true", help="shorthand for --format dot")

    p = sub.add_parser("verify", help="check the structural claims by enumeration")
    _add_input_options(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-cosets", type=int, default=None)

    return parser


def _load_matrix(args) -> cartan.GeneralizedCartanMatrix:
    if bool(args.type) == bool(args.matrix):
        raise UsageError("exactly one of --type or --matrix is required")
    if args.type:
        return cartan.from_named(args.type)
    if args.matrix == "-":
        return cartan.parse_matrix(sys.stdin.read())
    try:
        with open(args.matrix, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {args.matrix}: {exc.strerror}") from None
    return cartan.parse_matrix(text)


def _parse_index_list(raw: str, n: int, what: str) -> tuple[int, ...]:
    raw = raw.strip()
    if not raw:
        return ()
    out = []
    for piece in raw.split(","):
        piece = piece.strip()
        try:
            value = int(piece)
        except ValueError:
            raise ValueError(f"{what} must be a comma list of integers, got {piece!r}")
        if not 1 <= value <= n:
            raise ValueError(f"{what} index {value} out of range 1..{n}")
        out.append(value - 1)
    return tuple(out)


def _fmt_set(J) -> str:
    return "{" + ",".join(str(v + 1) for v in sorted(J)) + "}"


def _emit(out, text):
    out.write(text)
    if not text.endswith("\n"):
        out.write("\n")


def _cmd_info(args, out):
    m = _load_matrix(args)
    report = cartan.hypothesis_report(m)
    graph = adm.build_adm(m)
    if args.format == "json":
        payload = {
            "rank": m.n,
            "hypotheses": report.to_json_dict(),
            "adm": adm.report_json(graph),
        }
        _emit(out, json.dumps(payload, indent=2))
        return EXIT_OK
    lines = [f"rank: {m.n}"]
    for key, value in report.to_json_dict().items():
        lines.append(f"{key.replace('_', '-')}: {'yes' if value else 'no'}")
    for idx, comp in enumerate(graph.components):
        lines.append(f"component {_fmt_set(comp)}: colour {graph.colours[idx]}")
    _emit(out, "\n".join(lines))
    return EXIT_OK


def _render_full_report(report: pi1.Pi1Report, fmt: str, out) -> int:
    if fmt == "json":
        _emit(out, json.dumps(report.to_json_dict(), indent=2))
        return EXIT_OK
    lines = []
    hyp = report.hypotheses.to_json_dict()
    lines.append(
        "hypotheses: "
        + " ".join(f"{k.replace('_', '-')}={'yes' if v else 'no'}" for k, v in hyp.items())
    )
    if report.reducible:
        lines.append(
            "note: reducible diagram; the answers are the products over the "
            "irreducible factors"
        )
    for idx, comp in enumerate(report.graph.components):
        lines.append(
            f"component {_fmt_set(comp)}: colour {report.graph.colours[idx]}, "
            f"contributes {report.contributions[idx]}"
        )
    lines.append(f"pi1(G) = {report.group}")
    lines.append(f"pi1(K) = {report.maximal_compact.value}")
    if report.maximal_compact.k_only:
        lines.append(
            "note: not symmetrizable; the value is established for K, the "
            "identification with pi1(G) is not"
        )
    for bits, value in report.spin:
        lines.append(f"spin kappa={bits or '-'}: pi1 = {value}")
    for J, info in sorted(report.flags.items()):
        order = "infinite" if info.order is None else str(info.order)
        lines.append(
            f"flag J={_fmt_set(J)}: abelianization {info.invariants}, order {order}"
        )
    _emit(out, "\n".join(lines))
    return EXIT_OK


def _cmd_pi1(args, out):
    m = _load_matrix(args)
    max_cosets = args.max_cosets or _default_max_cosets()
    if args.full:
        report = pi1.full_report(m, max_cosets=max_cosets, force=args.force)
        return _render_full_report(report, args.format, out)
    group = pi1.pi1_group(m, force=args.force)
    compact = pi1.pi1_maximal_compact(m, force=args.force)
    if args.format == "json":
        payload = {
            "pi1_G": group.to_json_dict(),
            "pi1_K": compact.value.to_json_dict(),
            "pi1_K_caveat": compact.k_only,
        }
        _emit(out, json.dumps(payload, indent=2))
        return EXIT_OK
    lines = [f"pi1(G) = {group}", f"pi1(K) = {compact.value}"]
    if compact.k_only:
        lines.append(
            "note: not symmetrizable; the value is established for K, the "
            "identification with pi1(G) is not"
        )
    _emit(out, "\n".join(lines))
    return EXIT_OK


def _cmd_spin(args, out):
    m = _load_matrix(args)
    graph = adm.build_adm(m)
    if args.kappa is not None and args.all:
        raise UsageError("--kappa and --all are mutually exclusive")
    if args.kappa is not None:
        colourings = [adm.kappa_from_bits(graph, args.kappa)]
    else:
        colourings = adm.enumerate_kappa(graph)
    rows = []
    for kappa in colourings:
        value = pi1.pi1_spin(m, kappa, force=args.force)
        rows.append((adm.kappa_bits(graph, kappa), value))
    if args.format == "json":
        payload = {
            "spin": [{"kappa": bits, **value.to_json_dict()} for bits, value in rows]
        }
        _emit(out, json.dumps(payload, indent=2))
        return EXIT_OK
    lines = [f"admissible colourings: {len(adm.enumerate_kappa(graph))}"]
    for bits, value in rows:
        lines.append(f"kappa {bits or '-'}: pi1(Spin) = {value}")
    _emit(out, "\n".join(lines))
    return EXIT_OK


def _cmd_flag(args, out):
    m = _load_matrix(args)
    J = _parse_index_list(args.set, m.n, "--set")
    max_cosets = args.max_cosets or _default_max_cosets()
    info = pi1.pi1_flag(m, J, max_cosets=max_cosets, force=args.force)
    capped = info.order is not None and not info.order.is_finite
    if args.format == "json":
        payload = {"J": [v + 1 for v in info.parabolic], **info.to_json_dict()}
        _emit(out, json.dumps(payload, indent=2))
    else:
        lines = []
        if info.closed_form is not None:
            lines.append(f"pi1(G/P_J) = {info.closed_form}")
        lines.append(f"J = {_fmt_set(info.parabolic)}")
        lines.append(f"abelianization: {info.invariants}")
        if info.order is None:
            lines.append("order: infinite (positive free rank)")
        elif info.order.is_finite:
            lines.append(f"order: {info.order.order}")
        else:
            lines.append(f"order: undecided, coset table capped at {info.order.limit}")
        _emit(out, "\n".join(lines))
    if capped:
        raise ResourceLimitError(
            f"coset enumeration exhausted the cap {info.order.limit}", info.order.limit
        )
    return EXIT_OK


def _cmd_weyl(args, out):
    m = _load_matrix(args)
    if args.max_length < 0:
        raise ValueError("--max-length must be >= 0")
    group = coxeter.WeylGroup(m)
    J = _parse_index_list(args.parabolic, m.n, "--parabolic")
    if args.cells and args.closure is not None:
        raise UsageError("--cells and --closure are mutually exclusive")
    if args.closure is not None:
        word = _parse_index_list(args.closure, m.n, "--closure")
        element = group.from_word(word)
        cells = group.closure_cells(element, J, cap=args.cap)
        cells.sort(key=lambda w: (w.length, w.reduced_word()))
        if args.format == "json":
            payload = {
                "closure": [[i + 1 for i in w.reduced_word()] for w in cells]
            }
            _emit(out, json.dumps(payload, indent=2))
            return EXIT_OK
        lines = []
        for w in cells:
            label = ",".join(str(i + 1) for i in w.reduced_word()) or "e"
            lines.append(f"length {w.length}: {label}")
        _emit(out, "\n".join(lines))
        return EXIT_OK
    histogram = group.cell_counts(J, args.max_length, cap=args.cap)
    if args.format == "json":
        _emit(out, json.dumps({str(k): v for k, v in histogram.items()}, indent=2))
        return EXIT_OK
    lines = [f"length {k}: {v}" for k, v in histogram.items()]
    lines.append(f"total: {sum(histogram.values())}")
    _emit(out, "\n".join(lines))
    return EXIT_OK


def _cmd_adm(args, out):
    m = _load_matrix(args)
    graph = adm.build_adm(m)
    fmt = "dot" if args.dot else args.format
    if fmt == "dot":
        out.write(adm.to_dot(graph))
        return EXIT_OK
    if fmt == "json":
        _emit(out, json.dumps(adm.report_json(graph), indent=2))
        return EXIT_OK
    lines = []
    for idx, comp in enumerate(graph.components):
        lines.append(f"component {_fmt_set(comp)}: colour {graph.colours[idx]}")
    edges = ", ".join(f"{i + 1}-{j + 1}" for i, j in sorted(graph.edges)) or "none"
    lines.append(f"edges: {edges}")
    _emit(out, "\n".join(lines))
    return EXIT_OK


def _cmd_verify(args, out):
    m = _load_matrix(args)
    max_cosets = args.max_cosets or _default_max_cosets()
    graph = adm.build_adm(m)
    verifications = fpgroup.component_verifications(m, max_cosets=max_cosets)

    failed = False
    capped = False
    lines = []
    payload = {"components": [], "checks": []}
    for v in verifications:
        for name, status, detail in v.checks:
            if status == "fail":
                failed = True
            if status == "inconclusive" and v.expected.order is not None:
                capped = True
        summary = "; ".join(f"{name} {status} ({detail})" for name, status, detail in v.checks)
        lines.append(f"component {_fmt_set(v.vertices)} colour {v.colour}: {summary}")
        payload["components"].append(
            {
                "vertices": [i + 1 for i in v.vertices],
                "colour": v.colour,
                "checks": [
                    {"name": name, "status": status, "detail": detail}
                    for name, status, detail in v.checks
                ],
            }
        )

    # product law: the full flag group abelianizes to the direct sum of the
    # component groups' abelianizations
    full = fpgroup.abelianization(fpgroup.flag_presentation(m, ()))
    combined = _direct_sum(v.observed_invariants for v in verifications)
    status = "pass" if full == combined else "fail"
    failed = failed or status == "fail"
    lines.append(f"product law (abelianization): {status} ({full} vs {combined})")
    payload["checks"].append({"name": "product_law_abelian", "status": status})

    # the two relator routes (all pairs vs two-skeleton) must agree
    weyl = coxeter.WeylGroup(m)
    route_status = "pass"
    for J in [()] + [(k,) for k in range(m.n)]:
        a_full = fpgroup.abelianization(fpgroup.flag_presentation(m, J))
        a_cw = fpgroup.abelianization(fpgroup.cw_presentation(m, J, weyl))
        if a_full != a_cw:
            route_status = "fail"
            break
    failed = failed or route_status == "fail"
    lines.append(f"presentation routes (abelianization): {route_status}")
    payload["checks"].append({"name": "presentation_routes", "status": route_status})

    if all(v.expected.order is not None for v in verifications):
        expected_product = 1
        conclusive = True
        for v in verifications:
            if v.observed_order.is_finite:
                expected_product *= v.observed_order.order
            else:
                conclusive = False
        total = fpgroup.todd_coxeter(
            fpgroup.flag_presentation(m, ()), max_cosets=max_cosets
        )
        if not conclusive or not total.is_finite:
            capped = True
            lines.append("product law (order): inconclusive (cap exhausted)")
            payload["checks"].append({"name": "product_law_order", "status": "inconclusive"})
        else:
            status = "pass" if total.order == expected_product else "fail"
            failed = failed or status == "fail"
            lines.append(
                f"product law (order): {status} ({total.order} vs {expected_product})"
            )
            payload["checks"].append({"name": "product_law_order", "status": status})

    overall = "FAIL" if failed else ("INCONCLUSIVE" if capped else "PASS")
    lines.append(f"result: {overall}")
    payload["result"] = overall
    if args.format == "json":
        _emit(out, json.dumps(payload, indent=2))
    else:
        _emit(out, "\n".join(lines))
    if failed:
        return EXIT_INPUT
    if capped:
        raise ResourceLimitError(f"coset cap {max_cosets} prevented a conclusion", max_cosets)
    return EXIT_OK


def _direct_sum(invariant_list) -> fpgroup.AbelianInvariants:
    free = 0
    torsion = []
    for inv in invariant_list:
        free += inv.free_rank
        torsion.extend(inv.torsion)
    rows = [
        [d if i == j else 0 for j in range(len(torsion))]
        for i, d in enumerate(torsion)
    ]
    diag = fpgroup.smith_normal_form(rows) if rows else []
    return fpgroup.AbelianInvariants(free, tuple(d for d in diag if d > 1))


_COMMANDS = {
    "info": _cmd_info,
    "pi1": _cmd_pi1,
    "spin": _cmd_spin,
    "flag": _cmd_flag,
    "weyl": _cmd_weyl,
    "adm": _cmd_adm,
    "verify": _cmd_verify,
}


def run(argv, stdout=None, stderr=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"error[E101]: {exc}\n")
        return EXIT_USAGE
    except (MatrixFormatError, InvariantViolationError) as exc:
        err.write(f"error[E201]: {exc}\n")
        return EXIT_INPUT
    except UnknownNameError as exc:
        err.write(f"error[E202]: {exc}\n")
        return EXIT_INPUT
    except (ValueError, InadmissibleKappaError) as exc:
        err.write(f"error[E203]: {exc}\n")
        return EXIT_INPUT
    except HypothesisError as exc:
        err.write(f"error[E301]: {exc}\n")
        return EXIT_HYPOTHESIS
    except ResourceLimitError as exc:
        err.write(f"error[E401]: {exc}\n")
        return EXIT_RESOURCE


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
