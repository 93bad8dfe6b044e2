"""Command-line front end.

    python cli.py invariants compute --space pn --n 3
    python cli.py delpezzo minus-one 6
    python cli.py casestudy verify hilb2-p1p1 --format structured

Exit codes: 0 success, 1 verification failures, 2 input or precondition errors.
"""
import sys
import json
import argparse
from dataclasses import dataclass, field
from typing import Optional, List

import case_studies as cs_mod
import cone_core
import delpezzo_lattice as dp
import fujita_criteria as fc
import invariants as inv
from cone_core import RatVec
from utils import logger, ManinError, InputError, parse_cli_vector, format_rational, format_vector


@dataclass
class Outcome:
    code: int
    payload: dict
    text: List[str] = field(default_factory=list)


# --- PARSING HELPERS ---
def _vectors(text):
    if not text:
        return []
    return [parse_cli_vector(part) for part in text.split(';')]


def _pair(text):
    values = parse_cli_vector(text)
    if len(values) != 2 or values[1].denominator != 1:
        raise InputError(f"expected an (a, b) pair like '1,2', got {text!r}")
    return inv.ABResult.cited(values[0], int(values[1]))


def _rational(text, flag):
    if text is None:
        return None
    values = parse_cli_vector(text)
    if len(values) != 1:
        raise InputError(f"{flag} expects a single rational, got {text!r}")
    return values[0]


def _load(args):
    name = args.dataset or getattr(args, 'name', None) or getattr(args, 'space', None)
    if not name:
        raise InputError("a bundled case study name or --dataset path is required")
    return cs_mod.load_case_study(name)


def _pick_space(cs, args):
    member = args.member if args.member is not None else args.n
    if member is None:
        if len(cs.spaces) == 1:
            return next(iter(cs.spaces.values()))
        raise InputError(f"choose a space with --n or --member: {', '.join(cs.spaces)}")
    if member not in cs.spaces:
        raise InputError(f"case study '{cs.name}' has no space '{member}'")
    return cs.spaces[member]


def _ab(result):
    return {'a': format_rational(result.a), 'b': result.b}


def _cone_payload(cone):
    return {
        'dimension': cone.dimension,
        'generators': [format_vector(g) for g in cone.generators],
        'facets': [format_vector(f) for f in cone.facets],
        'equations': [format_vector(e) for e in cone.equations],
    }


def _cone_text(cone):
    lines = [str(cone)]
    lines += [f"  generator {g}" for g in cone.generators]
    lines += [f"  facet {f}" for f in cone.facets]
    lines += [f"  equation {e}" for e in cone.equations]
    return lines


# --- INVARIANTS ---
def _space_from_args(args):
    if args.generators:
        cone = cone_core.cone_from_generators(_vectors(args.generators))
        if not args.K or not args.L:
            raise InputError("--K and --L are required with --generators")
        return inv.PolarizedSpace("command line", (), cone, parse_cli_vector(args.K), parse_cli_vector(args.L),
                                  adjoint_rigid=args.rigid)
    return _pick_space(_load(args), args)


def cmd_invariants_compute(args):
    space = _space_from_args(args)
    result = inv.ab_result(space)
    payload = dict(_ab(result), space=space.name, adjoint=format_vector(result.adjoint_class),
                   tight_facets=[format_vector(f) for f in result.tight_facets])
    text = [f"{space.name}: a = {format_rational(result.a)}, b = {result.b}",
            f"  adjoint class {result.adjoint_class}"]
    return Outcome(0, payload, text)


def cmd_invariants_equivariant(args):
    cs = _load(args)
    space = _pick_space(cs, args)
    if args.action not in cs.actions or cs.action_space[args.action] != space.name:
        raise InputError(f"no action '{args.action}' on space '{space.name}'")
    b = inv.b_equivariant(space, cs.actions[args.action], args.bound)
    return Outcome(0, {'space': space.name, 'action': args.action, 'b_equivariant': b},
                   [f"{space.name} twisted by {args.action}: b = {b}"])


def cmd_invariants_compare(args):
    order = inv.compare_lex(_pair(args.left), _pair(args.right))
    return Outcome(0, {'ordering': order.value}, [order.value])


def cmd_invariants_verdict(args):
    verdict = inv.balanced_verdict(_pair(args.base), _pair(args.other), not args.not_big)
    return Outcome(0, {'verdict': verdict.value}, [verdict.value])


def cmd_invariants_a_verdict(args):
    verdict = inv.a_balanced_verdict(_rational(args.base_a, '--base-a'), _rational(args.other_a, '--other-a'),
                                     not args.not_big)
    return Outcome(0, {'verdict': verdict.value}, [verdict.value])


def cmd_invariants_rational_curve(args):
    result = inv.rational_curve_ab(_rational(args.degree, '--degree'))
    return Outcome(0, _ab(result), [f"rational curve: a = {format_rational(result.a)}, b = {result.b}"])


# --- CONES ---
def _cone_from_args(args):
    if args.cone:
        cs = _load(args)
        if args.cone not in cs.cones:
            raise InputError(f"case study '{cs.name}' has no cone '{args.cone}'")
        return cs.cones[args.cone]
    if not args.generators:
        raise InputError("either --generators or a case study with --cone is required")
    return cone_core.cone_from_generators(_vectors(args.generators))


def cmd_cone_generators(args):
    cone = _cone_from_args(args)
    return Outcome(0, _cone_payload(cone), _cone_text(cone))


def cmd_cone_dual(args):
    dual = cone_core.dual_cone(_cone_from_args(args))
    return Outcome(0, _cone_payload(dual), _cone_text(dual))


def cmd_cone_contains(args):
    cone = _cone_from_args(args)
    point = RatVec(parse_cli_vector(args.point))
    inside, interior = cone_core.contains(cone, point), cone_core.interior(cone, point)
    tight = cone_core.tight_facets(cone, point) if inside else ()
    payload = {'contains': inside, 'interior': interior, 'tight_facets': [format_vector(f) for f in tight]}
    return Outcome(0, payload, [f"{point}: contains = {str(inside).lower()}, interior = {str(interior).lower()}"])


def cmd_cone_face(args):
    cone = _cone_from_args(args)
    face, codim = cone_core.minimal_supported_face(cone, RatVec(parse_cli_vector(args.point)))
    payload = {'codimension': codim, 'face': _cone_payload(face)}
    return Outcome(0, payload, [f"codimension {codim}"] + _cone_text(face))


# --- FUJITA CRITERIA ---
def _witness(args):
    return fc.GeometricWitness(args.dim, _rational(args.vol, '--vol'), _rational(args.curve, '--curve'),
                               _rational(args.rational_curve, '--rational-curve'), _rational(args.surface, '--surface'))


def _verdict_outcome(verdict):
    return Outcome(0, {'status': verdict.status.value, 'rule': verdict.cited_rule},
                   [f"{verdict.status.value} ({verdict.cited_rule})"])


def cmd_fujita_big(args):
    return _verdict_outcome(fc.bigness_criterion(_witness(args)))


def cmd_fujita_big3(args):
    return _verdict_outcome(fc.bigness_dim3_improved(_witness(args)))


def cmd_fujita_surface_rational(args):
    return _verdict_outcome(fc.surface_rational_curve_criterion(_rational(args.degree, '--degree')))


def cmd_fujita_rigid_volume(args):
    a, vol = _rational(args.a, '--a'), _rational(args.vol, '--vol')
    check = fc.rigid_surface_volume_check(a, vol)
    bound = fc.a_invariant_upper_bound_from_volume(vol)
    return Outcome(0, {'result': check.value, 'a_squared_bound': format_rational(bound)},
                   [f"{check.value} (a^2 <= {format_rational(bound)})"])


def cmd_fujita_cover_a(args):
    r = fc.surface_cover_a_bound(args.d, args.e)
    payload = {'bound_sq': format_rational(r.bound_sq), 'excluded': r.strongly_a_unbalanced_excluded}
    return Outcome(0, payload, [f"a(Y)^2 <= {format_rational(r.bound_sq)}, excluded = {str(r.strongly_a_unbalanced_excluded).lower()}"])


def cmd_fujita_weak_dp(args):
    r = fc.weak_dp_cover_b_bound(args.d, args.e)
    payload = {'feasible': r.feasible, 'b_upper': r.b_upper, 'balanced_forced': r.balanced_forced}
    if not r.feasible:
        return Outcome(0, payload, [f"infeasible: d e = {args.d * args.e} > 9"])
    return Outcome(0, payload, [f"feasible, b <= {r.b_upper}, balanced forced = {str(r.balanced_forced).lower()}"])


def cmd_fujita_hilbert(args):
    values = parse_cli_vector(args.values)
    if any(v.denominator != 1 for v in values):
        raise InputError("Hilbert samples must be integers")
    r = fc.adjoint_hilbert_check(args.n, [int(v) for v in values])
    payload = {'polynomial': r.polynomial, 'top_intersection': format_rational(r.top_intersection),
               'matches_projective': r.matches_projective, 'matches_quadric': r.matches_quadric}
    return Outcome(0, payload, [f"P(r) = {r.polynomial}", f"top intersection {format_rational(r.top_intersection)}"])


# --- DEL PEZZO LATTICE ---
def _classes_outcome(lattice, classes):
    payload = {'n': lattice.n, 'degree': format_rational(dp.degree(lattice)), 'count': len(classes),
               'classes': [format_vector(c.vector) for c in classes]}
    return Outcome(0, payload, [f"{len(classes)} classes on Z^(1,{lattice.n})"] + [f"  {c}" for c in classes])


def cmd_delpezzo_minus_one(args):
    lattice = dp.DPLattice(args.n)
    return _classes_outcome(lattice, dp.enumerate_minus_one(lattice, args.bound))


def cmd_delpezzo_minus_two(args):
    lattice = dp.DPLattice(args.n)
    return _classes_outcome(lattice, dp.enumerate_minus_two(lattice, args.bound))


def cmd_delpezzo_blow_down(args):
    lattice = dp.DPLattice(args.n)
    c = RatVec(parse_cli_vector(args.curve))
    result = dp.blow_down(lattice, c)
    target_degree = format_rational(dp.degree(result.target))
    payload = {'n': result.target.n, 'degree': target_degree, 'exceptional_index': lattice.n,
               'isometry': [list(row) for row in result.isometry]}
    return Outcome(0, payload, [f"Z^(1,{lattice.n}) -> Z^(1,{result.target.n}), degree {target_degree}"])


def cmd_delpezzo_rank_drop(args):
    lattice = dp.DPLattice(args.n)
    roots = [RatVec(v) for v in _vectors(args.roots)]
    kinds = [dp.classify(lattice, r).value for r in roots]
    drop = dp.crepant_rank_drop(lattice, roots)
    return Outcome(0, {'rank_drop': drop, 'kinds': kinds}, [f"rank drop {drop}"])


def cmd_delpezzo_weyl(args):
    lattice = dp.DPLattice(args.n)
    gens = dp.weyl_generators(lattice)
    payload = {'n': lattice.n, 'generators': [[list(row) for row in m] for m in gens]}
    return Outcome(0, payload, [f"{len(gens)} simple reflections on Z^(1,{lattice.n})"])


# --- CASE STUDIES ---
def cmd_casestudy_list(args):
    names = cs_mod.list_case_studies()
    return Outcome(0, {'case_studies': names}, names)


def cmd_casestudy_show(args):
    info = cs_mod.describe(_load(args))
    return Outcome(0, info, [json.dumps(info, indent=2, sort_keys=True)])


def cmd_casestudy_verify(args):
    cs = _load(args)
    report = cs_mod.verify_case_study(cs, args.bound)
    text = [f"{cs.name}: {report.passed} passed, {report.failed} failed",
            report.table.to_string(index=False)]
    return Outcome(0 if report.ok else 1, report.to_dict(), text)


def cmd_casestudy_tables(args):
    cs = _load(args)
    report = cs_mod.check_table_consistency(cs)
    summary = report.to_dict()
    text = [f"{cs.name}: {summary['matches']}/{summary['total']} table entries match"]
    if len(report.entries):
        text.append(report.entries.to_string(index=False))
    text += [f"solved {k}: {str(v).lower()}" for k, v in report.solved.items()]
    text += [f"symmetric {k}: {str(v).lower()}" for k, v in report.symmetric.items()]
    return Outcome(0 if report.ok else 1, summary, text)


# (command, subaction) -> (handler, library operations reached)
COMMANDS = {
    ('invariants', 'compute'): (cmd_invariants_compute, ('ab_result', 'a_invariant', 'b_invariant', 'adjoint_class')),
    ('invariants', 'equivariant'): (cmd_invariants_equivariant, ('b_equivariant', 'group_closure', 'fixed_subspace', 'validate_action')),
    ('invariants', 'compare'): (cmd_invariants_compare, ('compare_lex',)),
    ('invariants', 'verdict'): (cmd_invariants_verdict, ('balanced_verdict',)),
    ('invariants', 'a-verdict'): (cmd_invariants_a_verdict, ('a_balanced_verdict',)),
    ('invariants', 'rational-curve'): (cmd_invariants_rational_curve, ('rational_curve_ab',)),
    ('cone', 'generators'): (cmd_cone_generators, ('cone_from_generators', 'minimized_representation')),
    ('cone', 'dual'): (cmd_cone_dual, ('dual_cone',)),
    ('cone', 'contains'): (cmd_cone_contains, ('contains', 'interior', 'tight_facets')),
    ('cone', 'face'): (cmd_cone_face, ('minimal_supported_face',)),
    ('fujita', 'big'): (cmd_fujita_big, ('bigness_criterion',)),
    ('fujita', 'big3'): (cmd_fujita_big3, ('bigness_dim3_improved',)),
    ('fujita', 'surface-rational'): (cmd_fujita_surface_rational, ('surface_rational_curve_criterion',)),
    ('fujita', 'rigid-volume'): (cmd_fujita_rigid_volume, ('rigid_surface_volume_check', 'a_invariant_upper_bound_from_volume')),
    ('fujita', 'cover-a'): (cmd_fujita_cover_a, ('surface_cover_a_bound',)),
    ('fujita', 'weak-dp'): (cmd_fujita_weak_dp, ('weak_dp_cover_b_bound',)),
    ('fujita', 'hilbert'): (cmd_fujita_hilbert, ('adjoint_hilbert_check',)),
    ('delpezzo', 'minus-one'): (cmd_delpezzo_minus_one, ('enumerate_minus_one', 'degree')),
    ('delpezzo', 'minus-two'): (cmd_delpezzo_minus_two, ('enumerate_minus_two',)),
    ('delpezzo', 'blow-down'): (cmd_delpezzo_blow_down, ('blow_down', 'reduce_to_exceptional')),
    ('delpezzo', 'rank-drop'): (cmd_delpezzo_rank_drop, ('crepant_rank_drop', 'classify', 'pair')),
    ('delpezzo', 'weyl'): (cmd_delpezzo_weyl, ('weyl_generators', 'reflection_matrix')),
    ('casestudy', 'list'): (cmd_casestudy_list, ('list_case_studies',)),
    ('casestudy', 'show'): (cmd_casestudy_show, ('load_case_study', 'parse_case_study', 'dataset_path', 'describe')),
    ('casestudy', 'verify'): (cmd_casestudy_verify, ('verify_case_study', 'compute_quantity', 'render', 'divisor_product',
                                                    'surface_degree', 'curve_degree', 'same_rays')),
    ('casestudy', 'tables'): (cmd_casestudy_tables, ('check_table_consistency',)),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "structured"], default="text", help="Report format (default: text).")
    common.add_argument("--bound", type=int, default=None, help="Group-closure or enumeration bound override.")
    common.add_argument("--dataset", default=None, help="Path to an external case-study file.")

    parser = argparse.ArgumentParser(prog="manin", description="Exact a/b-invariant and balanced-subvariety toolkit.")
    commands = parser.add_subparsers(dest="command", required=True)
    subs = {}
    for command, subaction in COMMANDS:
        if command not in subs:
            subs[command] = commands.add_parser(command).add_subparsers(dest="subaction", required=True)
        p = subs[command].add_parser(subaction, parents=[common])
        _add_arguments(p, command, subaction)
    return parser


def _add_arguments(p, command, subaction):
    if command == 'invariants':
        if subaction in ('compute', 'equivariant'):
            p.add_argument("--space", help="Bundled case study holding the space.")
            p.add_argument("--n", default=None, help="Space name inside the case study (e.g. 3 for P^3).")
            p.add_argument("--member", default=None, help="Alias of --n for non-numeric space names.")
        if subaction == 'compute':
            p.add_argument("--generators", help="Semicolon-separated pseudo-effective generators, e.g. '1,0;0,1'.")
            p.add_argument("--K", help="Canonical class, comma separated.")
            p.add_argument("--L", help="Polarization, comma separated.")
            p.add_argument("--rigid", action="store_true", default=None, help="Flag the adjoint class as rigid.")
        if subaction == 'equivariant':
            p.add_argument("--action", required=True, help="Action name inside the case study.")
        if subaction == 'compare':
            p.add_argument("--left", required=True, help="(a, b) pair, e.g. '1,2'.")
            p.add_argument("--right", required=True)
        if subaction == 'verdict':
            p.add_argument("--base", required=True, help="(a, b) of the base variety.")
            p.add_argument("--other", required=True, help="(a, b) of the subvariety or cover.")
            p.add_argument("--not-big", action="store_true", dest="not_big", help="The pullback is not big.")
        if subaction == 'a-verdict':
            p.add_argument("--base-a", required=True, dest="base_a")
            p.add_argument("--other-a", required=True, dest="other_a")
            p.add_argument("--not-big", action="store_true", dest="not_big")
        if subaction == 'rational-curve':
            p.add_argument("--degree", required=True, help="L.C of the rational curve.")
    elif command == 'cone':
        p.add_argument("name", nargs="?", help="Bundled case study supplying --cone.")
        p.add_argument("--cone", help="Cone name inside the case study; keeps its pairing.")
        p.add_argument("--generators", help="Semicolon-separated generators, e.g. '1,0;1,1'.")
        if subaction in ('contains', 'face'):
            p.add_argument("--point", required=True, help="Comma-separated class.")
    elif command == 'fujita':
        if subaction in ('big', 'big3'):
            p.add_argument("--dim", type=int, default=3 if subaction == 'big3' else None, required=subaction == 'big')
            p.add_argument("--vol", required=True, help="Vol(L).")
            p.add_argument("--curve", help="Minimal L.C over curves through a general point.")
            p.add_argument("--rational-curve", dest="rational_curve", help="Minimal L.C over rational curves.")
            p.add_argument("--surface", help="Minimal L^2.S over surfaces through a general point.")
        if subaction == 'surface-rational':
            p.add_argument("--degree", required=True)
        if subaction == 'rigid-volume':
            p.add_argument("--a", required=True)
            p.add_argument("--vol", required=True)
        if subaction in ('cover-a', 'weak-dp'):
            p.add_argument("--d", type=int, required=True, help="Degree of the del Pezzo surface.")
            p.add_argument("--e", type=int, required=True, help="Degree of the cover.")
        if subaction == 'hilbert':
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--values", required=True, help="P(1), ..., P(n+1), comma separated.")
    elif command == 'delpezzo':
        p.add_argument("n", type=int, help="Number of blown-up points (0..8).")
        if subaction == 'blow-down':
            p.add_argument("--class", dest="curve", required=True, help="The (-1)-class, comma separated.")
        if subaction == 'rank-drop':
            p.add_argument("--roots", default="", help="Semicolon-separated roots.")
    elif command == 'casestudy' and subaction != 'list':
        p.add_argument("name", nargs="?", default=None, help="Bundled case study name.")


def render(outcome, fmt):
    if fmt == "structured":
        return json.dumps(outcome.payload, indent=2, sort_keys=True)
    return "\n".join(outcome.text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    handler, _ = COMMANDS[(args.command, args.subaction)]
    try:
        outcome = handler(args)
    except ManinError as e:
        logger.error(f"{args.command} {args.subaction} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(render(outcome, args.format))
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
