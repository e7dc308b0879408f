"""Command-line front end: check, nerve, strictify, dcat, emit.

Exit status is 0 on success (including empty validation reports), 1 when a
requested check reports violations, and 2 on input or usage errors.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from importlib import metadata
from pathlib import Path

from .builtins import load_category, load_reedy
from .emit import (
    FORMATS,
    general_hc_type,
    reedy_diagram_type,
    render,
    semisimplicial_type,
    simplicial_type,
    weak_diagram_type,
)
from .emit.schema import SchemaError
from .fincat import CategoryError
from .inverse import check_inverse, coslice, find_cycle
from .nerve import (
    check_preorder,
    check_shape_opfibration,
    nerve_elements_truncated,
    nerve_to_dot,
    positive_nerve_elements,
    to_dot,
)
from .reedy import (
    check_degree_monotone,
    check_no_infinite_chains,
    check_opfibration,
    check_reedy,
    d_construction,
    frak_d,
    marked_generators,
)
from .strictify import plan_text, strict_components, strict_fiber_schema, verify_matching_claim

EXIT_OK, EXIT_REPORT, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Outcome:
    text: str = ""
    violations: list = field(default_factory=list)


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def _report(lines: list[str], title: str, violations) -> None:
    if violations:
        lines.append(f"{title}: {len(violations)} violation(s)")
        lines.extend(f"  {v}" for v in violations)
    else:
        lines.append(f"{title}: ok")


# -- commands --------------------------------------------------------------------


def cmd_check(args) -> Outcome:
    if args.reedy:
        R = load_reedy(args.spec, args.max_word_length)
        report = check_reedy(R)
        lines = [f"reedy category with {len(R.base.objects)} objects, {len(R.base)} morphisms"]
        _report(lines, "reedy", report)
        return Outcome("\n".join(lines) + "\n", report)
    C = load_category(args.spec, args.max_word_length)
    cycle = find_cycle(C)
    degrees = check_inverse(C)
    lines = [f"category {C.name or args.spec}: {len(C.objects)} objects, {len(C)} morphisms"]
    if cycle:
        lines.append(f"inverse: cycle through {' -> '.join(cycle)}")
    if degrees:
        _report(lines, "degrees", degrees)
    if not cycle and not degrees:
        lines.append("inverse: ok, degrees ok")
    elif not cycle:
        lines.insert(1, "inverse: ok (a valid degree map exists)")
    violations = list(degrees) + ([cycle] if cycle else [])
    return Outcome("\n".join(lines) + "\n", violations)


def cmd_nerve(args) -> Outcome:
    C = load_category(args.spec, args.max_word_length)
    if args.coslice is not None:
        K = coslice(C, C.check_object(args.coslice)).as_category()
        if args.dot:
            return Outcome(to_dot(K, title=K.name))
        lines = [f"{x}\t{K.degree[x]}" for x in K.objects]
        return Outcome("".join(line + "\n" for line in lines))
    if args.identities is not None:
        N = nerve_elements_truncated(C, args.identities)
    else:
        N = positive_nerve_elements(C)
    if args.dot:
        text = nerve_to_dot(N)
    else:
        head = f"# {len(N)} objects" + (
            f", truncated at length {args.identities}" if args.identities is not None else ""
        )
        text = head + "\n" + "".join(f"{len(s.arrows)}\t{N.names[s]}\n" for s in N.objects)
    violations = []
    if args.check:
        lines = []
        checks = [("shape opfibration", check_shape_opfibration(N))]
        if args.identities is None:
            # degenerate sequences have parallel faces, so these hold for the positive nerve only
            checks = [("preorder", check_preorder(N))] + checks + [("inverse", check_inverse(N.category))]
        for title, rep in checks:
            _report(lines, title, rep)
            violations += rep
        text += "\n".join(lines) + "\n"
    return Outcome(text, violations)


def cmd_strictify(args) -> Outcome:
    C = load_category(args.spec, args.max_word_length)
    plan = strict_components(C)
    objects = [C.check_object(args.object)] if args.object else None
    if args.format is None:
        text = plan_text(C, plan, objects)
    else:
        objects = objects or list(plan.objects)
        if args.format != "text" and len(objects) != 1:
            raise UsageError(f"--format {args.format} renders one fiber; pass --object")
        text = "".join(
            render(strict_fiber_schema(C, i, plan), args.format,
                   **({"module": f"Fiber-{i}"} if args.format == "agda" else {}))
            for i in objects
        )
    violations = []
    if args.check:
        violations = verify_matching_claim(C)
        lines = []
        _report(lines, "matching claim", violations)
        text += "\n".join(lines) + "\n"
    return Outcome(text, violations)


def _dcat_summary(D, degree_label: str) -> list[str]:
    lines = [f"# {len(D.objects)} objects, {len(D.non_identities())} non-identity morphisms, "
             f"{len(marked_generators(D))} marked generators ({degree_label} degrees)"]
    lines += [f"{D.degree[x]}\t{x}" for x in sorted(D.objects, key=lambda x: (D.degree[x], D.objects.index(x)))]
    lines += [f"marked\t{D.label(f)}" for f in marked_generators(D)]
    return lines


def cmd_dcat(args) -> Outcome:
    if (args.level is None) == (args.general is None):
        raise UsageError("dcat needs exactly one of --level N or --general SPEC")
    violations = []
    if args.general is not None:
        R = load_reedy(args.general, args.max_word_length)
        D = d_construction(R)
        label = "longest-path"
    else:
        if args.level < 0:
            raise UsageError("--level must be >= 0")
        D = frak_d(args.level)
        label = "list"
    if args.dot:
        text = to_dot(D, title=D.name)
    else:
        text = "\n".join(_dcat_summary(D, label)) + "\n"
    if args.check or args.opfibration:
        lines = []
        checks = []
        if args.check:
            checks += [("degree monotone", check_degree_monotone(D)),
                       ("no infinite chains", check_no_infinite_chains(D))]
        if args.opfibration:
            if args.general is None:
                raise UsageError("--opfibration applies to --general only")
            checks.append(("opfibration", check_opfibration(D, R)))
        for title, rep in checks:
            _report(lines, title, rep)
            violations += rep
        text += "\n".join(lines) + "\n"
    return Outcome(text, violations)


def cmd_emit(args) -> Outcome:
    modes = [m for m in ("semisimplicial", "simplicial", "general") if getattr(args, m) is not None]
    if len(modes) > 1:
        raise UsageError("choose at most one of --semisimplicial, --simplicial, --general")
    for m in modes:
        if getattr(args, m) < 0:
            raise UsageError(f"--{m} must be >= 0")
    if modes and modes[0] != "general":
        if args.spec is not None or args.weak:
            raise UsageError(f"--{modes[0]} takes no spec")
        n = getattr(args, modes[0])
        schema = semisimplicial_type(n) if modes[0] == "semisimplicial" else simplicial_type(n)
        module = f"{modes[0].capitalize()}{n}"
    else:
        if args.spec is None:
            raise UsageError("emit needs a spec or one of --semisimplicial/--simplicial")
        C = load_category(args.spec, args.max_word_length)
        base = "".join(ch for ch in (C.name or "I") if ch.isalnum()) or "I"
        if modes:
            schema = general_hc_type(C, args.general)
            module = f"Coherent{base}{args.general}"
        elif args.weak:
            schema = weak_diagram_type(C)
            module = f"Weak{base}"
        else:
            schema = reedy_diagram_type(C)
            module = f"Reedy{base}"
    kw = {"module": module} if args.format == "agda" else {}
    return Outcome(render(schema, args.format, **kw))


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="diagram-forge",
        description="Finite index categories, positive nerves and diagram-type signatures.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, spec=True, spec_optional=False):
        if spec:
            sp.add_argument("spec", nargs="?" if spec_optional else None,
                            help="shipped spec name (E, linear, ...), delta+op:N, frakd-op:N, or a JSON file")
        sp.add_argument("--max-word-length", type=int, default=8,
                        help="saturation bound for presentations (default 8)")
        sp.add_argument("-o", "--output", help="write results to this file instead of stdout")

    sp = sub.add_parser("check", help="validate an inverse (or Reedy) category")
    common(sp)
    sp.add_argument("--reedy", action="store_true",
                    help="treat SPEC as a Reedy spec (delta:N, discrete:a,b, or JSON with plus/minus)")
    sp.set_defaults(run=cmd_check)

    sp = sub.add_parser("nerve", help="list or draw the category of elements of the positive nerve")
    common(sp)
    sp.add_argument("--identities", type=int, metavar="K",
                    help="use the full nerve truncated at length K instead")
    sp.add_argument("--coslice", metavar="OBJ", help="work with the coslice OBJ⫽I instead")
    sp.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    sp.add_argument("--check", action="store_true", help="run the preorder/opfibration/inverse checks")
    sp.set_defaults(run=cmd_nerve)

    sp = sub.add_parser("strictify", help="per-object strictification plan")
    common(sp)
    sp.add_argument("--object", help="restrict to one object")
    sp.add_argument("--format", choices=FORMATS, help="emit fiber schemas instead of the plan")
    sp.add_argument("--check", action="store_true", help="verify the matching-object index identity")
    sp.set_defaults(run=cmd_strictify)

    sp = sub.add_parser("dcat", help="the direct replacement of Δ, or D(R) for a Reedy category")
    common(sp, spec=False)
    sp.add_argument("--level", type=int, metavar="N", help="lists with sum <= N+1")
    sp.add_argument("--general", metavar="REEDY", help="D(R) for delta:N, discrete:..., or a Reedy spec")
    sp.add_argument("--dot", action="store_true")
    sp.add_argument("--check", action="store_true", help="degree monotonicity and acyclicity")
    sp.add_argument("--opfibration", action="store_true",
                    help="with --general: test the projection D(R) -> R for cocartesian lifts")
    sp.set_defaults(run=cmd_dcat)

    sp = sub.add_parser("emit", help="emit a diagram-type signature")
    common(sp, spec_optional=True)
    sp.add_argument("--weak", action="store_true", help="homotopy coherent diagrams over SPEC")
    sp.add_argument("--semisimplicial", type=int, metavar="N")
    sp.add_argument("--simplicial", type=int, metavar="N")
    sp.add_argument("--general", type=int, metavar="K",
                    help="general homotopy coherent diagrams over SPEC, truncated at length K")
    sp.add_argument("--format", choices=FORMATS, default="text")
    sp.set_defaults(run=cmd_emit)
    return p


def _write(text: str, output: str | None) -> None:
    data = text.encode("utf-8")
    if output:
        Path(output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        outcome = args.run(args)
        _write(outcome.text, args.output)
    except (UsageError, CategoryError, SchemaError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"diagram-forge {args.command}: {msg}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_REPORT if outcome.violations else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
