"""``relcat`` command line.

Exit codes: 0 the verdict holds (or the construction succeeded), 1 it fails,
2 usage or input error, 3 an enumeration budget was exceeded.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import rel
from . import serialize as S
from .backend import DEFAULT_ENUM_LIMIT, FINGRP
from .cp import choi, groupoid_of, is_completely_positive, respects_inverses_equiv_check
from .crypto import check_correctness, check_security, make_otp
from .errors import EnumerationBudgetExceeded, RelcatError
from .frobenius import (
    check_frobenius,
    frobenius_from_unital,
    from_groupoid,
    indiscrete,
    to_groupoid,
)
from .groupoid import inverse_violation
from .quantum import (
    bottleneck_instance,
    check_bottleneck,
    check_copyable,
    check_heisenberg_instance,
    check_state_projection,
    is_broadcasting_map,
    disturbing_measurement_instance,
    s3_broadcast_instance,
    pinned_copyable_instances,
    search_broadcasting_map,
)
from .report import PropertyReport

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

PROPERTIES = ("heisenberg", "broadcast", "bottleneck", "projection", "copyable")


class Outcome:
    """What a verb hands back to the driver: a JSON payload and an exit code."""

    def __init__(self, payload: dict, code: int = EXIT_OK, figures: dict | None = None):
        self.payload = payload
        self.code = code
        self.figures = figures if figures is not None else payload


def _unwrap(path, key):
    # accept both bare descriptors and documents written by another verb
    d = S.load(path)
    return d[key] if isinstance(d, dict) and key in d else d


def _rel(path):
    return S.relation_from_json(_unwrap(path, "relation"))


def _frob(path):
    return S.frobenius_from_json(_unwrap(path, "structure"))


def _object(spec: str):
    """An object given by name or by a JSON file."""
    if Path(spec).is_file():
        return S.object_from_json(S.load(spec))
    return S.object_from_name(spec)


def _verdict(flag: bool) -> int:
    return EXIT_OK if flag else EXIT_FAIL


# -- relation verbs ----------------------------------------------------------------

def cmd_compose(a):
    return Outcome({"relation": rel.compose(_rel(a.first), _rel(a.second))})


def cmd_dagger(a):
    return Outcome({"relation": rel.dagger(_rel(a.relation))})


def cmd_tensor(a):
    return Outcome({"relation": rel.tensor(_rel(a.first), _rel(a.second))})


def cmd_check_rel(a):
    R = _rel(a.relation)
    preds = {"total": rel.is_total(R), "single_valued": rel.is_single_valued(R),
             "map": rel.is_map(R), "difunctional": rel.is_difunctional(R)}
    if R.dom == R.cod:
        preds.update(reflexive=rel.is_reflexive(R), symmetric=rel.is_symmetric(R),
                     transitive=rel.is_transitive(R), equivalence=rel.is_equivalence(R),
                     positive_condition=rel.satisfies_pos_condition(R))
    return Outcome({"relation": R, "predicates": preds})


def cmd_positive(a):
    R = _rel(a.relation)
    w = rel.is_positive(R)
    payload = {"relation": R, "positive": w is not None}
    if w is not None:
        payload["witness"] = {"mid": w.mid, "s": w.s}
    else:
        payload["violation"] = rel.pos_condition_violation(R)
    return Outcome(payload, _verdict(w is not None))


# -- structures ------------------------------------------------------------------------

def cmd_check_frobenius(a):
    F = _frob(a.structure)
    rep = check_frobenius(F)
    return Outcome({"structure": F, "report": rep.to_dict()}, _verdict(rep.ok), {"mult": F.mult})


def cmd_to_groupoid(a):
    return Outcome({"groupoid": to_groupoid(_frob(a.structure))}, figures={})


def cmd_from_groupoid(a):
    F = from_groupoid(S.groupoid_from_json(_unwrap(a.groupoid, "groupoid")))
    return Outcome({"structure": F}, figures={"mult": F.mult})


def cmd_from_unital(a):
    F0 = _frob(a.structure)
    F = frobenius_from_unital(F0.mult, F0.unit)
    return Outcome({"structure": F}, figures={"mult": F.mult})


def cmd_indiscrete(a):
    F = indiscrete(_object(a.object))
    return Outcome({"structure": F}, figures={"mult": F.mult})


# -- complete positivity -----------------------------------------------------------------

def cmd_choi(a):
    return Outcome({"choi": choi(_rel(a.relation), _frob(a.source), _frob(a.target))})


def cmd_check_cp(a):
    R, FA, FB = _rel(a.relation), _frob(a.source), _frob(a.target)
    v = is_completely_positive(R, FA, FB)
    respects = inverse_violation(R, groupoid_of(FA), groupoid_of(FB))
    payload = {"relation": R, "cp": v.cp, "choi": v.choi, "violation": v.violation,
               "respects_inverses": respects is None, "inverse_violation": respects}
    if v.witness is not None:
        payload["witness"] = {"mid": v.witness.mid, "s": v.witness.s}
    return Outcome(payload, _verdict(v.cp))


def cmd_cp_equivalence(a):
    rep = respects_inverses_equiv_check(_frob(a.source), _frob(a.target), a.max_enum)
    payload = {"total": rep.total, "cp_count": rep.cp_count,
               "disagreements": list(rep.disagreements), "ok": rep.ok}
    return Outcome(payload, _verdict(rep.ok), {})


# -- quantum properties --------------------------------------------------------------------

def _pinned(name: str) -> dict:
    if name == "heisenberg":
        M, FB, FC = disturbing_measurement_instance()
        return {"M": M, "FB": FB, "FC": FC}
    if name == "broadcast":
        Bm, F = s3_broadcast_instance()
        return {"map": Bm, "F": F}
    if name == "bottleneck":
        return {"R": bottleneck_instance()}
    if name == "projection":
        F = indiscrete(S.object_from_name("Z2"))
        return {"psi": rel.state(F.carrier, [0, 3]), "F": F}
    if name == "copyable":
        return {"F": pinned_copyable_instances()["finset_discrete2"]}
    raise RelcatError(f"no pinned instance for {name!r}")


def _load_instance(name: str, path: str) -> dict:
    d = _unwrap(path, "instance")
    rels = {"M", "map", "R", "psi"}
    structs = {"FB", "FC", "F"}
    out = {}
    for k, v in d.items():
        if k in rels:
            out[k] = S.relation_from_json(v)
        elif k in structs:
            out[k] = S.frobenius_from_json(v)
    return out


def run_property(name: str, inst: dict, limit: int) -> PropertyReport:
    if name == "heisenberg":
        return check_heisenberg_instance(inst["M"], inst["FB"], inst["FC"], limit)
    if name == "broadcast":
        F = inst["F"]
        # the property is "no broadcasting": a valid map is a counterexample
        if "map" in inst:
            broadcasts = is_broadcasting_map(inst["map"], F)
            return PropertyReport("no_broadcasting", not broadcasts, {"map": inst["map"]},
                                  "map broadcasts" if broadcasts else "marginals are not the identity")
        found = search_broadcasting_map(F, limit)
        return PropertyReport("no_broadcasting", found is None, {"map": found},
                              "exhaustive search")
    if name == "bottleneck":
        return check_bottleneck(inst["R"])
    if name == "projection":
        return check_state_projection(inst["psi"], inst["F"])
    if name == "copyable":
        return check_copyable(inst["F"], limit)
    raise RelcatError(f"unknown property {name!r}")


def cmd_property(a):
    if a.instance is None and not a.pinned:
        raise RelcatError("give --instance FILE or --pinned")
    inst = _pinned(a.name) if a.pinned else _load_instance(a.name, a.instance)
    rep = run_property(a.name, inst, a.max_enum)
    payload = {"property": rep.name, "holds": rep.holds, "note": rep.instance,
               "payload": rep.payload, "instance": inst}
    return Outcome(payload, _verdict(rep.holds), {**rep.payload})


def cmd_instance(a):
    inst = _pinned(a.name)
    return Outcome({"instance": inst}, figures={})


# -- protocols -------------------------------------------------------------------------

def cmd_otp(a):
    kind = FINGRP if a.group_spaces else None
    spec = make_otp(_object(a.group), a.n, kind=kind)
    return Outcome({"protocol": spec}, figures={"E": spec.E})


def cmd_verify_protocol(a):
    spec = S.protocol_from_json(_unwrap(a.protocol, "protocol"))
    c, s = check_correctness(spec), check_security(spec)
    payload = {"correct": c.holds, "secure": s.holds,
               "correctness": c.payload, "security": s.payload}
    return Outcome(payload, _verdict(c.holds and s.holds), {"E": spec.E})


# -- suites ----------------------------------------------------------------------------

def cmd_suite(a):
    from .suites import SUITES, TIME_LIMITS, run_suite
    if a.name not in SUITES:
        raise RelcatError(f"unknown suite {a.name!r}; choose from {', '.join(SUITES)}")
    results = run_suite(a.name, a.max_enum)
    for r in results:
        print(r.line(TIME_LIMITS[r.number]), file=sys.stderr)
    ok = all(r.ok and r.elapsed < TIME_LIMITS[r.number] for r in results)
    out = Outcome({"suite": a.name, "ok": ok, "criteria": [r.to_dict() for r in results]},
                  _verdict(ok), {})
    out.suite_results = results
    return out


# -- driver ------------------------------------------------------------------------------

def _default_budget() -> int:
    raw = os.environ.get("RELCAT_MAX_ENUM")
    if raw is None:
        return DEFAULT_ENUM_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"relcat: RELCAT_MAX_ENUM must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-enum", type=int, default=argparse.SUPPRESS,
                        help="enumeration budget (default 10^6, or $RELCAT_MAX_ENUM)")
    common.add_argument("--human", action="store_true", default=argparse.SUPPRESS,
                        help="pretty-print the JSON report")
    common.add_argument("--figures", metavar="DIR", default=argparse.SUPPRESS,
                        help="also render matplotlib figures into DIR")
    common.add_argument("-o", "--output", metavar="FILE", default=argparse.SUPPRESS,
                        help="write the report to FILE instead of stdout")
    p = argparse.ArgumentParser(prog="relcat", parents=[common],
                                description="Verify relational constructions over finite backends.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, *args, help=None):
        sp = sub.add_parser(name, help=help, parents=[common])
        for arg in args:
            sp.add_argument(arg)
        sp.set_defaults(fn=fn)
        return sp

    verb("compose", cmd_compose, "first", "second", help="first then second")
    verb("dagger", cmd_dagger, "relation")
    verb("tensor", cmd_tensor, "first", "second")
    verb("check-rel", cmd_check_rel, "relation", help="relation predicates")
    verb("positive", cmd_positive, "relation", help="positivity with a witness")
    verb("check-frobenius", cmd_check_frobenius, "structure")
    verb("to-groupoid", cmd_to_groupoid, "structure")
    verb("from-groupoid", cmd_from_groupoid, "groupoid")
    verb("from-unital", cmd_from_unital, "structure", help="complete a unital multiplication")
    verb("indiscrete", cmd_indiscrete, "object", help="indiscrete structure on a named object or JSON file")
    verb("choi", cmd_choi, "relation", "source", "target")
    verb("check-cp", cmd_check_cp, "relation", "source", "target")
    verb("cp-equivalence", cmd_cp_equivalence, "source", "target")
    sp = verb("property", cmd_property, help="quantum-like property checks")
    sp.add_argument("name", choices=PROPERTIES)
    sp.add_argument("--instance", metavar="FILE")
    sp.add_argument("--pinned", action="store_true", help="use the built-in instance")
    sp = verb("instance", cmd_instance, help="print a built-in property instance")
    sp.add_argument("name", choices=PROPERTIES)
    sp = verb("otp", cmd_otp, "group", help="one-time pad over a named group")
    sp.add_argument("-n", type=int, default=1, help="message length")
    sp.add_argument("--group-spaces", action="store_true",
                    help="use G^n as a group rather than a bare set (abelian G only)")
    verb("verify-protocol", cmd_verify_protocol, "protocol")
    verb("suite", cmd_suite, "name")
    return p


def _write_figures(out: Outcome, directory: str, verb: str) -> list[Path]:
    from . import plotting
    written = plotting.render_payload(out.figures, directory, verb)
    results = getattr(out, "suite_results", None)
    if results:
        from .suites import TIME_LIMITS
        Path(directory).mkdir(parents=True, exist_ok=True)
        written.append(plotting.plot_suite(results, Path(directory) / f"suite-{out.payload['suite']}.png",
                                           TIME_LIMITS))
    return written


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    for name, default in (("human", False), ("figures", None), ("output", None)):
        if not hasattr(a, name):
            setattr(a, name, default)
    if not hasattr(a, "max_enum"):
        a.max_enum = _default_budget()
    try:
        out = a.fn(a)
    except EnumerationBudgetExceeded as e:
        print(f"relcat: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (RelcatError, KeyError) as e:
        print(f"relcat: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    doc = S.document(out.payload)
    if a.figures:
        doc["figures"] = [str(p) for p in _write_figures(out, a.figures, a.verb)]
    text = S.dumps(doc, a.human)
    if a.output:
        Path(a.output).write_text(text + "\n")
    else:
        print(text)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
