"""Command-line front end.

Emits the certified tables, classifications, theory evaluations, bordism
invariants and the impossibility certificate, as text (unicode by
default, --ascii for portability) or as structured JSON documents of the
form {"command", "inputs", "result"}.

Exit codes: 0 on success, 2 on usage or range errors, 3 when an internal
consistency check fails (which the shipped data never triggers).
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

from . import spectra, tftlab
from .abelian import FgAbGroup
from .classify import (TheoryParams, classify, gilmer_masbaum_report,
                       restrict_theory, restriction_kernel)
from .errors import InternalCheckError, MtspecError
from .exactnum import ExactComplex, parse_exact
from .spectra import SpectrumId

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_GREEK = {"psi": "ψ", "sigma": "σ", "tau": "τ", "rho": "ρ"}


# ---------------------------------------------------------------------------
# rendering


def render_gen(name: str, ascii_mode: bool) -> str:
    if ascii_mode:
        return name
    if name in _GREEK:
        return _GREEK[name]
    out = name.replace("W3", "W₃").replace("p1", "p₁")
    return re.sub(r"\^(\d+)", lambda m: m.group(1).translate(_SUPERSCRIPTS), out)


def render_group(group: FgAbGroup, ascii_mode: bool) -> str:
    if group.is_trivial:
        return "0"
    z, slash, plus = ("Z", "Z/", "+") if ascii_mode else ("ℤ", "ℤ/", "⊕")
    parts = [z] * group.free_rank + [slash + str(d) for d in group.torsion]
    return plus.join(parts)


def render_exact(value: ExactComplex, ascii_mode: bool) -> str:
    if value.is_rational:
        return str(value.rational_value())
    if ascii_mode:
        return str(value)
    zeta = "ζ%d" % value.root_order
    if value.root_power != 1:
        zeta += str(value.root_power).translate(_SUPERSCRIPTS)
    return zeta if value.mag == 1 else "%s·%s" % (value.mag, zeta)


def group_to_json(group: FgAbGroup) -> dict:
    return {"free_rank": group.free_rank, "torsion": list(group.torsion)}


def group_from_json(data: dict) -> FgAbGroup:
    return FgAbGroup(data["free_rank"], tuple(data["torsion"]))


def document_to_json(command: str, inputs: dict, result: dict) -> str:
    return json.dumps({"command": command, "inputs": inputs, "result": result},
                      ensure_ascii=False, indent=2)


def parse_document(text: str) -> dict:
    document = json.loads(text)
    for key in ("command", "inputs", "result"):
        if key not in document:
            raise ValueError("document lacks the %r field" % key)
    return document


# ---------------------------------------------------------------------------
# subcommands: each returns (inputs, result, text)


def cmd_table(args):
    ascii_mode = args.ascii
    if args.kind == "hz":
        groups = [spectra.hz_self_cohomology(k) for k in range(7)]
        text = ",".join(render_group(g, ascii_mode) for g in groups)
        result = {"kind": "hz",
                  "rows": [{"k": k, "group": group_to_json(g)}
                           for k, g in enumerate(groups)]}
        return {"kind": "hz"}, result, text
    if args.d is None:
        raise MtspecError("table %s needs --d" % args.kind)
    if args.kind == "homotopy":
        groups = [spectra.homotopy_group(args.d, k) for k in range(args.d + 1)]
        text = ", ".join(render_group(g, ascii_mode) for g in groups)
        result = {"kind": "homotopy", "d": args.d,
                  "rows": [{"k": k, "group": group_to_json(g)}
                           for k, g in enumerate(groups)]}
        return {"kind": "homotopy", "d": args.d}, result, text
    spectrum = SpectrumId(args.d, args.cover)
    rows = []
    lines = ["H*(%s)" % spectrum.display(ascii_mode)]
    for k in range(6):
        entry = spectra.cohomology(spectrum, k)
        names = ", ".join(render_gen(n, ascii_mode) for n in entry.names)
        lines.append("k=%d: %s%s" % (k, render_group(entry.group, ascii_mode),
                                     " (%s)" % names if names else ""))
        rows.append({"k": k, "group": group_to_json(entry.group),
                     "generators": [[n, o] for n, o in entry.generators]})
    result = {"kind": "cohomology", "d": args.d, "cover": args.cover, "rows": rows}
    inputs = {"kind": "cohomology", "d": args.d, "cover": args.cover}
    return inputs, result, "\n".join(lines)


def _render_theory_group(tg, ascii_mode: bool) -> str:
    if tg.is_trivial:
        return "trivial"
    units = "C^x" if ascii_mode else "ℂˣ"
    if tg.unit_rank == 1:
        head = units
    elif ascii_mode:
        head = "(%s)^%d" % (units, tg.unit_rank)
    else:
        head = "(%s)%s" % (units, str(tg.unit_rank).translate(_SUPERSCRIPTS))
    basis = ", ".join(render_gen(n, ascii_mode) for n in tg.basis_names)
    out = "%s on (%s)" % (head, basis)
    if not tg.finite_part.is_trivial:
        out += " + %s" % render_group(tg.finite_part, ascii_mode)
    return out


def cmd_classify(args):
    tg = classify(args.d, args.n)
    result = {"unit_rank": tg.unit_rank,
              "finite_part": group_to_json(tg.finite_part),
              "basis": list(tg.basis_names)}
    return ({"d": args.d, "n": args.n}, result,
            _render_theory_group(tg, args.ascii))


def cmd_restrict(args):
    params = TheoryParams.of(
        [parse_exact(p) for p in args.params.split(",")] if args.params else [])
    out = restrict_theory(args.d, args.n_from, args.n_to, params)
    text = (", ".join(render_exact(v, args.ascii) for v in out)
            if len(out) else "(no coordinates: the theory group is trivial)")
    result = {"params": [v.to_json() for v in out]}
    inputs = {"d": args.d, "from": args.n_from, "to": args.n_to,
              "params": args.params}
    return inputs, result, text


def _render_kernel(kernel, ascii_mode: bool) -> str:
    if kernel.group.is_trivial:
        return "trivial"
    head = render_group(kernel.group, ascii_mode)
    if not kernel.elements:
        return head
    order = kernel.group.order()
    exponent = kernel.group.torsion[-1]
    if order == exponent:  # cyclic: show a generating tuple
        generator = next(
            e for e in kernel.elements
            if math.lcm(*(x.root_order for x in e)) == exponent)
        powers = [x.root_power * (exponent // x.root_order) for x in generator]
        zeta = "zeta" if ascii_mode else "ζ"
        def power(p):
            if p == 0:
                return "1"
            if p == 1:
                return zeta
            return "%s^%d" % (zeta, p) if ascii_mode else zeta + str(p).translate(_SUPERSCRIPTS)
        tup = ", ".join(power(p) for p in powers)
        eq = "%s^%d=1" % (zeta, exponent) if ascii_mode else \
            zeta + str(exponent).translate(_SUPERSCRIPTS) + "=1"
        return "%s: (%s), %s" % (head, tup, eq)
    listing = "; ".join("(%s)" % ", ".join(render_exact(x, ascii_mode) for x in e)
                        for e in kernel.elements)
    return "%s: %s" % (head, listing)


def cmd_kernel(args):
    kernel = restriction_kernel(args.d, args.n_from, args.n_to)
    elements = None
    if kernel.elements is not None:
        elements = [[x.to_json() for x in e] for e in kernel.elements]
    result = {"group": group_to_json(kernel.group),
              "basis": list(kernel.basis_names), "elements": elements}
    inputs = {"d": args.d, "from": args.n_from, "to": args.n_to}
    return inputs, result, _render_kernel(kernel, args.ascii)


def _genus_of(manifold) -> int:
    if manifold.dim != 2:
        raise MtspecError("genus extraction needs a surface")
    return (2 - manifold.euler) // 2


def cmd_eval(args):
    catalog = tftlab.standard_manifolds()
    inputs = {"theory": args.theory}
    if args.theory == "four_d":
        if args.l1 is None or args.l2 is None or args.manifold is None:
            raise MtspecError("eval four_d needs --l1, --l2 and --manifold")
        manifold = tftlab.parse_manifold(args.manifold, catalog)
        value = tftlab.invertible_4d_value(parse_exact(args.l1),
                                           parse_exact(args.l2), manifold)
        inputs.update({"l1": args.l1, "l2": args.l2, "manifold": args.manifold})
    elif args.theory == "euler":
        if args.lam is None:
            raise MtspecError("eval euler needs --lam")
        if args.manifold is not None:
            manifold = tftlab.parse_manifold(args.manifold, catalog)
            if manifold.dim != 2:
                raise MtspecError("the Euler theory evaluates surfaces")
            bordism = tftlab.SurfaceBordism(manifold.euler, 0)
            inputs["manifold"] = args.manifold
        elif args.chi_total is not None:
            bordism = tftlab.SurfaceBordism(args.chi_total, args.chi_source or 0)
            inputs.update({"chi_total": args.chi_total,
                           "chi_source": args.chi_source or 0})
        else:
            raise MtspecError("eval euler needs --manifold or --chi-total")
        value = tftlab.euler_theory_value(parse_exact(args.lam), bordism)
        inputs["lam"] = args.lam
    else:  # frobenius
        if args.mu is None:
            raise MtspecError("eval frobenius needs --mu")
        if args.g is not None:
            genus = args.g
        elif args.manifold is not None:
            genus = _genus_of(tftlab.parse_manifold(args.manifold, catalog))
            inputs["manifold"] = args.manifold
        else:
            raise MtspecError("eval frobenius needs --g or --manifold")
        value = tftlab.frobenius_closed_value(parse_exact(args.mu), genus)
        inputs.update({"mu": args.mu, "g": genus})
    return inputs, {"value": value.to_json()}, render_exact(value, args.ascii)


def cmd_bordism(args):
    catalog = tftlab.standard_manifolds()
    total = tftlab.parse_formal_sum(args.sum, catalog)
    invariant = tftlab.vf_invariant(args.d, total)
    trivial = tftlab.is_vf_nullbordant(args.d, total)
    if len(invariant) == 0:
        shown = "0"
    elif len(invariant) == 1:
        shown = str(invariant[0])
    else:
        shown = "(%s)" % ", ".join(str(x) for x in invariant)
    text = "invariant: %s\nnull-bordant: %s" % (shown, "true" if trivial else "false")
    result = {"invariant": list(invariant), "null_bordant": trivial}
    return {"d": args.d, "sum": args.sum}, result, text


def cmd_gilmer_masbaum(args):
    report = gilmer_masbaum_report()
    rho = "rho" if args.ascii else "ρ"
    z = "Z" if args.ascii else "ℤ"

    def cls(multiple):
        return rho if multiple == 1 else "%d%s" % (multiple, rho)

    lines = ["%s-central extensions of the 3-dimensional oriented bordism "
             "category form %s, generated by %s"
             % (z, render_group(report.group, args.ascii), rho),
             "(%s)" % report.cover_note]
    for label, mult, induced in report.mcg_dictionary:
        lines.append("%s: %s -> %d times the mapping class group generator"
                     % (label, cls(mult), induced))
    lines.extend(report.argument)
    lines.append("fundamental extension: %s"
                 % ("realizable" if report.fundamental_realizable else "impossible"))
    result = {
        "group": group_to_json(report.group),
        "generator": report.generator,
        "classes": {label.split(" ")[0].lower(): {"rho_multiple": mult,
                                                  "mcg_class": induced}
                    for label, mult, induced in report.mcg_dictionary},
        "fundamental_realizable": report.fundamental_realizable,
        "walker_index4_possible": report.walker_index4_possible,
    }
    return {}, result, "\n".join(lines)


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _add_common(parser):
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--ascii", action="store_true",
                        help="render plain ASCII instead of unicode math")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mtspec",
        description="Exact tables, classifications and certificates for "
                    "invertible topological field theories in dimensions <= 4.")
    sub = parser.add_subparsers(dest="command", required=True)

    table = sub.add_parser("table", help="print a certified table")
    table.add_argument("kind", choices=["cohomology", "homotopy", "hz"])
    table.add_argument("--d", type=int)
    table.add_argument("--cover", type=int, default=0)
    _add_common(table)

    cls = sub.add_parser("classify", help="the group of invertible theories")
    cls.add_argument("--d", type=int, required=True)
    cls.add_argument("--n", type=int, required=True)
    _add_common(cls)

    res = sub.add_parser("restrict", help="transport theory coordinates")
    res.add_argument("--d", type=int, required=True)
    res.add_argument("--from", dest="n_from", type=int, required=True)
    res.add_argument("--to", dest="n_to", type=int, required=True)
    res.add_argument("--params", default="")
    _add_common(res)

    ker = sub.add_parser("kernel", help="kernel of a restriction map")
    ker.add_argument("--d", type=int, required=True)
    ker.add_argument("--from", dest="n_from", type=int, required=True)
    ker.add_argument("--to", dest="n_to", type=int, required=True)
    _add_common(ker)

    ev = sub.add_parser("eval", help="evaluate a concrete theory")
    ev.add_argument("theory", choices=["euler", "frobenius", "four_d"])
    ev.add_argument("--lam")
    ev.add_argument("--mu")
    ev.add_argument("--l1")
    ev.add_argument("--l2")
    ev.add_argument("--manifold")
    ev.add_argument("--g", type=int)
    ev.add_argument("--chi-total", dest="chi_total", type=int)
    ev.add_argument("--chi-source", dest="chi_source", type=int)
    _add_common(ev)

    bor = sub.add_parser("bordism", help="vector-field bordism invariant of a sum")
    bor.add_argument("--d", type=int, required=True)
    bor.add_argument("--sum", required=True)
    _add_common(bor)

    gm = sub.add_parser("gilmer-masbaum", help="print the impossibility certificate")
    _add_common(gm)

    return parser


_HANDLERS = {
    "table": cmd_table,
    "classify": cmd_classify,
    "restrict": cmd_restrict,
    "kernel": cmd_kernel,
    "eval": cmd_eval,
    "bordism": cmd_bordism,
    "gilmer-masbaum": cmd_gilmer_masbaum,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        inputs, result, text = _HANDLERS[args.command](args)
    except InternalCheckError as exc:
        print("internal consistency failure: %s" % exc, file=sys.stderr)
        return 3
    except (MtspecError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    if args.format == "json":
        print(document_to_json(args.command, inputs, result))
    else:
        print(text)
    return 0


def entrypoint():
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
