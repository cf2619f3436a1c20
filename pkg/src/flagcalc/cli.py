"""Command line interface: ``flagcalc <subcommand> [options] SPEC``.

A model spec is a product of factors joined by ``x``, each factor being a
family letter, a rank and a bracketed list of crossed nodes, for example
``G2[2]`` or ``A2[1]xB3[1,3]``.  Output goes to stdout as compact JSON (the
default) or LaTeX.  Exit status: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import chevalley, cominuscule, parabolic, relations, rootsys, schubert, structeq
from .parabolic import ModelError, ParabolicModel, make_model

__all__ = ["SpecSyntaxError", "parse", "report", "to_jsonable", "dumps", "main"]


class SpecSyntaxError(ValueError):
    pass


_FACTOR = re.compile(r"([A-Ga-g])(\d+)\[([^\]]*)\]")


def parse(spec: str) -> ParabolicModel:
    """Parse a model spec; errors name the column where parsing failed."""
    text = spec.strip()
    pos = 0
    factors, crossed = [], []
    while True:
        m = _FACTOR.match(text, pos)
        if not m:
            raise SpecSyntaxError(
                f"column {pos + 1} of {spec!r}: expected FAMILY RANK [nodes], e.g. G2[2]"
            )
        fam, rank, nodes = m.group(1).upper(), int(m.group(2)), m.group(3)
        items = []
        if nodes.strip():
            for k, tok in enumerate(nodes.split(",")):
                tok = tok.strip()
                if not tok.isdigit():
                    col = m.start(3) + len(",".join(nodes.split(",")[:k])) + (1 if k else 0)
                    raise SpecSyntaxError(f"column {col + 1} of {spec!r}: bad node {tok!r}")
                items.append(int(tok))
        try:
            rootsys._check_rank(fam, rank)
        except rootsys.RootSystemError as exc:
            raise ModelError(f"column {m.start() + 1} of {spec!r}: {exc}") from None
        for c in items:
            if not 1 <= c <= rank:
                raise ModelError(
                    f"column {m.start(3) + 1} of {spec!r}: node {c} out of range for {fam}{rank}"
                )
        factors.append((fam, rank))
        crossed.append(items)
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "x":
            raise SpecSyntaxError(f"column {pos + 1} of {spec!r}: expected 'x' between factors")
        pos += 1
    return make_model(factors, crossed)


def to_jsonable(obj):
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "is_Rational") and obj.is_Rational:
        return {"num": int(obj.p), "den": int(obj.q)}
    return obj


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), separators=(",", ":"))


def _roots(rs) -> list:
    return [list(r) for r in rs]


def _ratios(data) -> list | None:
    if data.ratios is None:
        return None
    return list(data.ratios)


def _cominuscule_chern(spec: str):
    """Chern data of an associated cominuscule, None unless Picard rank 1 and small enough."""
    model = parse(spec)
    if len(model.crossed) != 1:
        return None, model
    try:
        return schubert.chern_classes(model), model
    except schubert.WeylGroupTooLarge:
        return None, model


def _verify_block(model, rels, scale):
    rep = relations.verify_relations(model, rels, scale=scale)
    return {
        "normalization": rep.normalization,
        "all_hold": rep.all_hold,
        "verdicts": [
            {"relation": v.relation, "degree": v.degree, "holds": v.holds, "witness": v.witness}
            for v in rep.verdicts
        ],
    }


def _eliminate_block(model, rels):
    sub = cominuscule.associated_cominuscule(model)
    data, _ = _cominuscule_chern(sub.spec)
    if data is None:
        raise ValueError(f"associated cominuscule {sub.spec} has no single-generator Chern relations")
    comin = relations.chern_relations(data)
    res = relations.eliminate(rels, comin, sub.dimension)
    return {
        "cominuscule": sub.spec,
        "dimension": sub.dimension,
        "cominuscule_relations": [relations._show(r) for r in comin],
        "t": list(res.t_values),
        "constraints": [{"degree": k, "poly": p} for k, p in res.degree_constraints],
        "residuals": [{"degree": k, "value": v} for k, v in res.residuals],
        "delta_vanishes_from": res.vanishing_degree,
        "vanishing_classes": list(res.vanishing_classes),
        "consistent": res.consistent,
        "certificate": list(res.certificate),
    }


def report(spec: str, rels=None, scale: int | None = None) -> dict:
    """Classification report of a model, optionally with relation checks."""
    model = parse(spec) if isinstance(spec, str) else spec
    if not model.nontrivial:
        raise ModelError("report needs at least one crossed node")
    tb = schubert.tally_bound_report(model)
    sub = cominuscule.associated_cominuscule(model)
    boosh = cominuscule.boosh_data(model)
    data, _ = _cominuscule_chern(sub.spec)
    out = {
        "model": str(model),
        "depth": model.depth,
        "dimension": len(model.positive_grade),
        "is_cominuscule": cominuscule.is_cominuscule(model),
        "tallies": tb["tallies"],
        "tally_sum": tb["sum"],
        "associated_cominuscule": {
            "type": sub.spec,
            "dimension": sub.dimension,
            "chern_ratios": _ratios(data) if data else None,
            "descriptions_agree": sub.descriptions_agree,
        },
        "boosh": {"max_roots": len(boosh.max_roots), "submaximal": len(boosh.submaximal)},
        "characteristic_ring": {
            "generators": len(tb["tallies"]),
            "nilpotency_exponents": tb["exponents"],
            "numerical_dimension_bound": tb["sum"],
        },
    }
    if rels is not None:
        out["relations"] = _verify_block(model, rels, scale)
        out["elimination"] = _eliminate_block(model, rels)
    return out


def report_latex(doc: dict) -> str:
    rows = [
        ("model", doc["model"]),
        ("depth", doc["depth"]),
        ("cominuscule", "yes" if doc["is_cominuscule"] else "no"),
        ("tallies", ", ".join(map(str, doc["tallies"]))),
        ("tally sum", doc["tally_sum"]),
        ("associated cominuscule", doc["associated_cominuscule"]["type"]),
        ("its dimension", doc["associated_cominuscule"]["dimension"]),
        ("$|Z|$", doc["boosh"]["max_roots"]),
        ("$|T|$", doc["boosh"]["submaximal"]),
    ]
    elim = doc.get("elimination")
    if elim:
        rows.append(("$\\varepsilon/\\delta$", ", ".join(_tex_rational(t) for t in elim["t"])))
        rows.append(("forced zero", ", ".join(elim["vanishing_classes"]) or "none"))
    body = "\n".join(f"{k} & {_tex_escape(str(v))} \\\\" for k, v in rows)
    return "\\begin{tabular}{ll}\n\\hline\n" + body + "\n\\hline\n\\end{tabular}\n"


def _tex_rational(x) -> str:
    x = Fraction(str(x))
    return str(x.numerator) if x.denominator == 1 else f"$\\frac{{{x.numerator}}}{{{x.denominator}}}$"


def _tex_escape(s: str) -> str:
    return s if "$" in s else s.replace("_", "\\_")


# subcommands; each returns (json document, latex text or None)


def _cmd_roots(model, args):
    system = model.system
    return {
        "model": str(model),
        "roots": _roots(system.roots),
        "grades": list(model.grades),
        "highest_roots": _roots(system.highest_roots()),
    }, None


def _cmd_constants(model, args):
    table = chevalley.compute_constants(model.system)
    doc = {
        "model": str(model),
        "constants": [
            {"alpha": list(a), "beta": list(b), "N": v}
            for (a, b), v in table.items()
            if sum(a) > 0 and sum(b) > 0
        ],
    }
    if args.check:
        doc["violations"] = [str(v) for v in chevalley.verify(table)]
    return doc, None


def _cmd_grading(model, args):
    levels = {str(k): _roots(v) for k, v in model.levels.items()}
    chis = {str(k): list(parabolic.chi_geq(model, k)) for k in range(1, model.depth + 1)}
    return {"model": str(model), "depth": model.depth, "levels": levels, "chi_geq": chis}, None


def _cmd_tally(model, args):
    tallies = parabolic.tally(model)
    return {"tallies": tallies, "sum": sum(tallies)}, None


def _cmd_cominuscule(model, args):
    sub = cominuscule.associated_cominuscule(model)
    return {
        "model": str(model),
        "is_cominuscule": cominuscule.is_cominuscule(model),
        "center": _roots(cominuscule.nilradical_center(model)),
        "associated": {
            "type": sub.spec,
            "dimension": sub.dimension,
            "depth": sub.depth,
            "simple_basis": _roots(sub.simple_basis),
            "roots": _roots(sub.roots),
            "descriptions_agree": sub.descriptions_agree,
        },
    }, None


def _cmd_boosh(model, args):
    b = cominuscule.boosh_data(model)
    doc = {
        "model": str(model),
        "max_roots": _roots(b.max_roots),
        "submaximal": _roots(b.submaximal),
        "compact": _roots(b.compact_roots),
        "center_is_top_grade": b.center_is_top_grade,
    }
    latex = structeq.to_latex(structeq.emit_boosh(model)) if args.latex else None
    return doc, latex


def _cmd_chern(model, args):
    data = schubert.chern_classes(model)
    ring = data.ring
    doc = {
        "model": str(model),
        "fano_index": data.fano_index,
        "r": _ratios(data),
        "top_degree": data.top_degree,
        "classes": [ring.describe(c) for c in data.classes],
    }
    return doc, None


def _need_relations(args):
    if not args.relations:
        raise _Usage("--relations FILE is required")
    return relations.read_relations(args.relations)


def _cmd_verify(model, args):
    rels = _need_relations(args)
    doc = {"model": str(model)}
    doc.update(_verify_block(model, rels, args.scale))
    return doc, None


def _cmd_eliminate(model, args):
    rels = _need_relations(args)
    doc = {"model": str(model)}
    doc.update(_eliminate_block(model, rels))
    return doc, None


def _cmd_structeq(model, args):
    table = structeq.emit_boosh(model) if args.boosh else structeq.emit_flat(model)
    doc = {"model": str(model), "table": "boosh" if args.boosh else "flat", "terms": table.as_dict()}
    if args.check:
        rep = structeq.check_flat_consistency(model)
        doc["flat_consistent"] = rep.passed
        doc["violations"] = [str(v) for v in rep.violations]
    latex = structeq.to_latex(table) if args.latex else None
    return doc, latex


def _cmd_report(model, args):
    rels = relations.read_relations(args.relations) if args.relations else None
    doc = report(model, rels, args.scale)
    return doc, report_latex(doc) if args.latex else None


COMMANDS = {
    "roots": _cmd_roots,
    "constants": _cmd_constants,
    "grading": _cmd_grading,
    "tally": _cmd_tally,
    "cominuscule": _cmd_cominuscule,
    "boosh": _cmd_boosh,
    "chern": _cmd_chern,
    "verify": _cmd_verify,
    "eliminate": _cmd_eliminate,
    "structeq": _cmd_structeq,
    "report": _cmd_report,
}


class _Usage(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--latex", action="store_true", help="LaTeX output where available")
    common.add_argument("--check", action="store_true", help="run module verifications")
    common.add_argument("--relations", metavar="FILE", help="relation polynomials, one per line")
    common.add_argument("--scale", type=int, default=None, help="eps = c1/SCALE (default Fano index)")
    common.add_argument("--boosh", action="store_true", help="structeq: emit the boosh table")
    common.add_argument("spec", help="model spec, e.g. G2[2] or A2[1]xB3[1,3]")
    parser = argparse.ArgumentParser(prog="flagcalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


_MODULE_OF = {
    rootsys.RootSystemError: "rootsys",
    chevalley.ChevalleyError: "chevalley",
    relations.RelationSyntaxError: "relations",
    relations.EliminationError: "relations",
    schubert.WeylGroupTooLarge: "schubert",
    ModelError: "parabolic",
}


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        model = parse(args.spec)
        doc, latex = COMMANDS[args.command](model, args)
    except (SpecSyntaxError, _Usage, relations.RelationSyntaxError) as exc:
        print(f"flagcalc: usage: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"flagcalc: {exc}", file=sys.stderr)
        return 1
    except (ValueError, chevalley.ChevalleyError) as exc:
        origin = next((m for t, m in _MODULE_OF.items() if isinstance(exc, t)), "error")
        print(f"flagcalc: {origin}: {exc}", file=sys.stderr)
        return 1
    if args.latex:
        if latex is None:
            print(f"flagcalc: usage: no LaTeX output for {args.command}", file=sys.stderr)
            return 2
        sys.stdout.write(latex)
    else:
        print(dumps(doc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
