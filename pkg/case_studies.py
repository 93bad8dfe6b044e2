"""Bundled worked examples and the verifier that recomputes their numbers.

A dataset is a JSON file. Vectors are lists of rational strings ("3", "-1/2")
or the name of an entry in `classes`. Expected quantities are
[quantity-id, value, citation] triples; see QUANTITY_KINDS for the ids.
"""
import os
import json
import glob
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

import pandas as pd

import exact_linalg as la
from cone_core import RatVec, PairingForm, cone_from_generators, dual_cone, contains, same_rays
from invariants import (
    PolarizedSpace,
    GroupAction,
    ABResult,
    ab_result,
    b_equivariant,
    group_closure,
    validate_action,
    balanced_verdict,
    a_balanced_verdict,
    rational_curve_ab,
)
from fujita_criteria import adjoint_hilbert_check, rigid_surface_volume_check
from delpezzo_lattice import DPLattice, enumerate_minus_one, weyl_generators
from utils import (
    logger,
    DATASET_DIR,
    DEFAULT_GROUP_BOUND,
    ManinError,
    InputError,
    SchemaError,
    RATIONAL_PATTERN,
    parse_rational,
    parse_vector,
    format_rational,
)

QUANTITY_KINDS = {
    'rank': 1, 'a': 1, 'b': 1, 'adjoint': 1,
    'b_equivariant': 2, 'group_order': 2,
    'verdict': 2, 'a_verdict': 2,
    'curve_a': 2, 'surface_degree': 2, 'rigid_surface': 3, 'rigid_check': 2,
    'dual_equals': 2, 'dual_contains': 2, 'extreme_count': 1, 'contains': 2,
    'top_intersection': 1, 'matches_projective': 1, 'matches_quadric': 1,
}

REPORT_COLUMNS = ['quantity', 'expected', 'computed', 'status', 'citation', 'witness']
TABLE_COLUMNS = ['curve', 'divisor', 'printed', 'derived', 'match']


@dataclass(frozen=True)
class Expectation:
    quantity: str
    value: str
    citation: str


@dataclass
class CaseStudy:
    name: str
    notes: str = ""
    lattices: dict = field(default_factory=dict)
    pairings: dict = field(default_factory=dict)
    pairing_lattices: dict = field(default_factory=dict)
    classes: dict = field(default_factory=dict)
    cones: dict = field(default_factory=dict)
    cone_lattice: dict = field(default_factory=dict)
    listed_generators: dict = field(default_factory=dict)
    spaces: dict = field(default_factory=dict)
    space_lattice: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)
    action_space: dict = field(default_factory=dict)
    reference_pairs: dict = field(default_factory=dict)
    hilbert_samples: dict = field(default_factory=dict)
    products: Optional[dict] = None
    curve_table: Optional[dict] = None
    expected: list = field(default_factory=list)


# --- RENDERING ---
def render(value):
    """Canonical text of a computed value; expected values are normalized the same way."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (Fraction, int)):
        return format_rational(value)
    return str(value)


def _render_expected(raw, path):
    if isinstance(raw, bool):
        return render(raw)
    if isinstance(raw, int):
        return format_rational(raw)
    if isinstance(raw, list):
        return str(RatVec(parse_vector(raw, path)))
    if isinstance(raw, str):
        return format_rational(parse_rational(raw, path)) if RATIONAL_PATTERN.match(raw) else raw
    raise SchemaError(path, f"unsupported expected value {raw!r}")


# --- LOADING ---
_KIND_NAMES = {dict: "an object", list: "a list", str: "a string"}


def _typed(value, kind, path):
    if not isinstance(value, kind):
        logger.error(f"Schema violation: '{path}' is {type(value).__name__}, expected {_KIND_NAMES[kind]}.")
        raise SchemaError(path, f"expected {_KIND_NAMES[kind]}, got {value!r}")
    return value


def _require(obj, key, path, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        logger.error(f"Schema violation: missing '{path}.{key}'.")
        raise SchemaError(f"{path}.{key}", "missing required field")
    value = obj[key]
    return value if kind is None else _typed(value, kind, f"{path}.{key}")


def _section(data, key):
    """A top-level object whose entries are themselves objects."""
    value = _typed(data.get(key, {}), dict, key)
    for name, node in value.items():
        _typed(node, dict, f"{key}.{name}")
    return value


def _vector(cs, raw, lattice, path):
    if isinstance(raw, str):
        if raw not in cs.classes:
            raise SchemaError(path, f"unknown class '{raw}'")
        owner, v = cs.classes[raw]
        if owner != lattice:
            raise SchemaError(path, f"class '{raw}' lives in '{owner}', expected '{lattice}'")
        return v
    v = RatVec(parse_vector(raw, path))
    size = len(cs.lattices[lattice])
    if v.dim != size:
        raise SchemaError(path, f"expected {size} coordinates for '{lattice}', got {v.dim}")
    return v


def _load_lattices(cs, data):
    for name, node in _section(data, 'lattices').items():
        basis = _require(node, 'basis', f"lattices.{name}")
        if not isinstance(basis, list) or not basis or not all(isinstance(b, str) for b in basis):
            raise SchemaError(f"lattices.{name}.basis", "expected a nonempty list of labels")
        cs.lattices[name] = tuple(basis)


def _load_pairings(cs, data):
    for name, node in _section(data, 'pairings').items():
        path = f"pairings.{name}"
        left, right = _require(node, 'left', path, str), _require(node, 'right', path, str)
        for side, lattice in (('left', left), ('right', right)):
            if lattice not in cs.lattices:
                raise SchemaError(f"{path}.{side}", f"unknown lattice '{lattice}'")
        matrix = _require(node, 'matrix', path)
        if not isinstance(matrix, list) or len(matrix) != len(cs.lattices[left]):
            raise SchemaError(f"{path}.matrix", f"expected {len(cs.lattices[left])} rows")
        rows = [parse_vector(row, f"{path}.matrix[{i}]") for i, row in enumerate(matrix)]
        if any(len(row) != len(cs.lattices[right]) for row in rows):
            raise SchemaError(f"{path}.matrix", f"expected {len(cs.lattices[right])} columns")
        cs.pairings[name] = PairingForm(tuple(rows), cs.lattices[left], cs.lattices[right])
        cs.pairing_lattices[name] = (left, right)


def _load_classes(cs, data):
    for name, node in _section(data, 'classes').items():
        path = f"classes.{name}"
        lattice = _require(node, 'lattice', path, str)
        if lattice not in cs.lattices:
            raise SchemaError(f"{path}.lattice", f"unknown lattice '{lattice}'")
        cs.classes[name] = (lattice, _vector(cs, _require(node, 'coords', path), lattice, f"{path}.coords"))


def _load_cones(cs, data):
    for name, node in _section(data, 'cones').items():
        path = f"cones.{name}"
        if 'pairing' in node:
            pairing_name = _require(node, 'pairing', path, str)
            if pairing_name not in cs.pairings:
                raise SchemaError(f"{path}.pairing", f"unknown pairing '{pairing_name}'")
            pairing = cs.pairings[pairing_name]
            left, right = cs.pairing_lattices[pairing_name]
            side = node.get('side', 'left')
            if side not in ('left', 'right'):
                raise SchemaError(f"{path}.side", f"expected 'left' or 'right', got {side!r}")
            if side == 'right':
                pairing, lattice = pairing.transpose(), right
            else:
                lattice = left
        else:
            lattice = _require(node, 'lattice', path, str)
            if lattice not in cs.lattices:
                raise SchemaError(f"{path}.lattice", f"unknown lattice '{lattice}'")
            pairing = PairingForm.identity(len(cs.lattices[lattice]), cs.lattices[lattice])

        if node.get('generators_from') == 'minus_one_classes':
            lines = enumerate_minus_one(DPLattice(len(cs.lattices[lattice]) - 1))
            gens = [c.vector for c in lines]
        else:
            raw = _require(node, 'generators', path)
            if not isinstance(raw, list):
                raise SchemaError(f"{path}.generators", "expected a list")
            gens = [_vector(cs, g, lattice, f"{path}.generators[{i}]") for i, g in enumerate(raw)]
        try:
            cs.cones[name] = cone_from_generators(gens, pairing)
        except InputError as e:
            raise SchemaError(path, str(e)) from e
        cs.cone_lattice[name] = lattice
        cs.listed_generators[name] = tuple(gens)


def _load_spaces(cs, data):
    for name, node in _section(data, 'spaces').items():
        path = f"spaces.{name}"
        cone_name = _require(node, 'cone', path, str)
        if cone_name not in cs.cones:
            raise SchemaError(f"{path}.cone", f"unknown cone '{cone_name}'")
        lattice = cs.cone_lattice[cone_name]
        nef = None
        if 'nef' in node:
            nef_name = _require(node, 'nef', path, str)
            if nef_name not in cs.cones or cs.cone_lattice[nef_name] != lattice:
                raise SchemaError(f"{path}.nef", f"unknown cone '{nef_name}' in lattice '{lattice}'")
            nef = cs.cones[nef_name]
        rigid = node.get('adjoint_rigid')
        if rigid is not None and not isinstance(rigid, bool):
            raise SchemaError(f"{path}.adjoint_rigid", f"expected true or false, got {rigid!r}")
        K = _vector(cs, _require(node, 'K', path), lattice, f"{path}.K")
        L = _vector(cs, _require(node, 'L', path), lattice, f"{path}.L")
        space = PolarizedSpace(name, cs.lattices[lattice], cs.cones[cone_name], K, L, nef, rigid)
        try:
            space.check()
        except ManinError as e:
            raise SchemaError(f"{path}.L" if 'polarization' in str(e) else f"{path}.nef", str(e)) from e
        cs.spaces[name] = space
        cs.space_lattice[name] = lattice


def _load_actions(cs, data):
    for name, node in _section(data, 'actions').items():
        path = f"actions.{name}"
        space_name = _require(node, 'space', path, str)
        if space_name not in cs.spaces:
            raise SchemaError(f"{path}.space", f"unknown space '{space_name}'")
        space = cs.spaces[space_name]
        lattice = cs.space_lattice[space_name]
        if 'weyl' in node:
            weyl = _typed(node['weyl'], dict, f"{path}.weyl")
            gens = weyl_generators(DPLattice(space.rank - 1))
            if not weyl.get('cremona', True) and space.rank > 3:
                gens = gens[:-1]
        else:
            gens = _require(node, 'generators', path, list)
            for k, m in enumerate(gens):
                if not isinstance(m, list) or not all(isinstance(row, list) and all(isinstance(x, int) for x in row) for row in m):
                    raise SchemaError(f"{path}.generators[{k}]", "expected an integer matrix")
        rigid = [_vector(cs, c, lattice, f"{path}.rigid_components[{i}]")
                 for i, c in enumerate(_typed(node.get('rigid_components', []), list, f"{path}.rigid_components"))]
        bound = node.get('closure_bound', DEFAULT_GROUP_BOUND)
        if not isinstance(bound, int) or bound < 1:
            raise SchemaError(f"{path}.closure_bound", f"expected a positive integer, got {bound!r}")
        action = GroupAction(tuple(gens), tuple(rigid), bound, name)
        try:
            validate_action(space, action)
        except InputError as e:
            raise SchemaError(path, str(e)) from e
        cs.actions[name] = action
        cs.action_space[name] = space_name


def _load_reference_pairs(cs, data):
    for name, node in _section(data, 'reference_pairs').items():
        path = f"reference_pairs.{name}"
        a = parse_rational(_require(node, 'a', path), f"{path}.a")
        b = _require(node, 'b', path)
        if not isinstance(b, int) or b < 0:
            raise SchemaError(f"{path}.b", f"expected a nonnegative integer, got {b!r}")
        cs.reference_pairs[name] = ABResult.cited(a, b)


def _load_hilbert_samples(cs, data):
    for name, node in _section(data, 'hilbert_samples').items():
        path = f"hilbert_samples.{name}"
        n = _require(node, 'n', path)
        values = _require(node, 'values', path)
        if not isinstance(n, int) or n < 1:
            raise SchemaError(f"{path}.n", f"expected a positive integer, got {n!r}")
        if not isinstance(values, list) or len(values) != n + 1 or not all(isinstance(v, int) and v >= 0 for v in values):
            raise SchemaError(f"{path}.values", f"expected {n + 1} nonnegative integers")
        cs.hilbert_samples[name] = (n, tuple(values))


def _load_products(cs, data):
    if 'products' not in data:
        return
    node = _typed(data['products'], dict, 'products')
    source = _require(node, 'source', 'products', str)
    pairing = _require(node, 'pairing', 'products', str)
    if source not in cs.lattices:
        raise SchemaError("products.source", f"unknown lattice '{source}'")
    if pairing not in cs.pairings:
        raise SchemaError("products.pairing", f"unknown pairing '{pairing}'")
    target = cs.pairing_lattices[pairing][0]
    labels = cs.lattices[source]
    table = {}
    for i, entry in enumerate(_require(node, 'entries', 'products', list)):
        path = f"products.entries[{i}]"
        if not isinstance(entry, list) or len(entry) != 3 or entry[0] not in labels or entry[1] not in labels:
            raise SchemaError(path, "expected [label, label, vector] with labels of the source lattice")
        x, y = labels.index(entry[0]), labels.index(entry[1])
        table[(x, y)] = table[(y, x)] = _vector(cs, entry[2], target, f"{path}[2]")
    missing = [(labels[i], labels[j]) for i in range(len(labels)) for j in range(i, len(labels)) if (i, j) not in table]
    if missing:
        raise SchemaError("products.entries", f"missing product {missing[0][0]}*{missing[0][1]}")
    cs.products = {'source': source, 'target': target, 'pairing': pairing, 'table': table}


def _load_curve_table(cs, data):
    if 'curve_table' not in data:
        return
    node = _typed(data['curve_table'], dict, 'curve_table')
    pairing = _require(node, 'pairing', 'curve_table', str)
    if pairing not in cs.pairings:
        raise SchemaError("curve_table.pairing", f"unknown pairing '{pairing}'")
    left, right = cs.pairing_lattices[pairing]
    columns = _require(node, 'columns', 'curve_table', list)
    for i, c in enumerate(columns):
        _vector(cs, c, left, f"curve_table.columns[{i}]")
    rows = {}
    for name, row in _require(node, 'rows', 'curve_table', dict).items():
        _vector(cs, name, right, f"curve_table.rows.{name}")
        values = parse_vector(row, f"curve_table.rows.{name}")
        if len(values) != len(columns):
            raise SchemaError(f"curve_table.rows.{name}", f"expected {len(columns)} entries")
        rows[name] = values
    basis = _require(node, 'basis', 'curve_table', list)
    for b in basis:
        if b not in rows:
            raise SchemaError("curve_table.basis", f"basis curve '{b}' has no printed row")
    relations = {}
    for name, combo in _typed(node.get('relations', {}), dict, "curve_table.relations").items():
        path = f"curve_table.relations.{name}"
        if name not in rows:
            raise SchemaError(path, f"curve '{name}' has no printed row")
        if not isinstance(combo, dict) or any(k not in basis for k in combo):
            raise SchemaError(path, "expected coefficients on basis curves")
        relations[name] = {k: parse_rational(v, f"{path}.{k}") for k, v in combo.items()}
    cs.curve_table = {'pairing': pairing, 'columns': tuple(columns), 'rows': rows,
                      'basis': tuple(basis), 'relations': relations}


def _operand_names(cs, token, path):
    if token in cs.reference_pairs or token in cs.spaces:
        return
    if '@' in token:
        space, action = token.split('@', 1)
        if space in cs.spaces and cs.action_space.get(action) == space:
            return
    if '~' in token:
        space, curve = token.split('~', 1)
        if space in cs.spaces and curve in cs.classes:
            return
    raise SchemaError(path, f"unknown operand '{token}'")


def _check_quantity(cs, quantity, path):
    kind, *args = quantity.split(':')
    if kind not in QUANTITY_KINDS:
        raise SchemaError(path, f"unknown quantity kind '{kind}'")
    if len(args) != QUANTITY_KINDS[kind]:
        raise SchemaError(path, f"'{kind}' takes {QUANTITY_KINDS[kind]} argument(s), got {len(args)}")
    if kind in ('rank', 'a', 'b', 'adjoint', 'curve_a', 'surface_degree', 'rigid_surface') and args[0] not in cs.spaces:
        raise SchemaError(path, f"unknown space '{args[0]}'")
    if kind in ('b_equivariant', 'group_order') and cs.action_space.get(args[1]) != args[0]:
        raise SchemaError(path, f"no action '{args[1]}' on space '{args[0]}'")
    if kind in ('verdict', 'a_verdict'):
        for token in args:
            _operand_names(cs, token, path)
    if kind in ('dual_equals', 'dual_contains', 'extreme_count', 'contains') and args[0] not in cs.cones:
        raise SchemaError(path, f"unknown cone '{args[0]}'")
    if kind in ('dual_equals', 'dual_contains') and args[1] not in cs.cones:
        raise SchemaError(path, f"unknown cone '{args[1]}'")
    if kind in ('contains', 'curve_a', 'surface_degree', 'rigid_surface') and args[1] not in cs.classes:
        raise SchemaError(path, f"unknown class '{args[1]}'")
    if kind in ('surface_degree', 'rigid_surface') and cs.products is None:
        raise SchemaError(path, "surface degrees need a products table")
    if kind in ('top_intersection', 'matches_projective', 'matches_quadric') and args[0] not in cs.hilbert_samples:
        raise SchemaError(path, f"unknown Hilbert sample '{args[0]}'")
    if kind == 'rigid_surface':
        parse_rational(args[2], path)
    if kind == 'rigid_check':
        for token in args:
            parse_rational(token, path)


def _load_expected(cs, data):
    raw = data.get('expected', [])
    if not isinstance(raw, list):
        raise SchemaError("expected", "expected a list of [quantity, value, citation] triples")
    for i, entry in enumerate(raw):
        path = f"expected[{i}]"
        if not isinstance(entry, list) or len(entry) != 3 or not isinstance(entry[0], str) or not isinstance(entry[2], str):
            raise SchemaError(path, "expected a [quantity, value, citation] triple")
        _check_quantity(cs, entry[0], path)
        cs.expected.append(Expectation(entry[0], _render_expected(entry[1], f"{path}[1]"), entry[2]))


def parse_case_study(data, source="<memory>"):
    """Validates a decoded dataset and builds the CaseStudy."""
    if not isinstance(data, dict):
        raise SchemaError(source, "dataset must be a JSON object")
    cs = CaseStudy(name=_require(data, 'name', source), notes=data.get('notes', ""))
    for step in (_load_lattices, _load_pairings, _load_classes, _load_cones, _load_spaces,
                 _load_actions, _load_reference_pairs, _load_hilbert_samples, _load_products,
                 _load_curve_table, _load_expected):
        step(cs, data)
    logger.info(f"Loaded case study '{cs.name}' with {len(cs.spaces)} space(s) and {len(cs.expected)} expectation(s).")
    return cs


def dataset_path(name, dataset_dir=None):
    if name.endswith('.json') or os.sep in name:
        return name
    return os.path.join(dataset_dir or DATASET_DIR, f"{name}.json")


def load_case_study(name, dataset_dir=None):
    path = dataset_path(name, dataset_dir)
    if not os.path.isfile(path):
        logger.error(f"Case study '{name}' not found at {path}.")
        raise InputError(f"unknown case study '{name}'")
    try:
        with open(path, encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        logger.error(f"Invalid JSON in {path}: {e}")
        raise SchemaError(f"{os.path.basename(path)}:{e.lineno}", e.msg) from e
    return parse_case_study(data, os.path.basename(path))


def list_case_studies(dataset_dir=None):
    pattern = os.path.join(dataset_dir or DATASET_DIR, "*.json")
    return sorted(os.path.splitext(os.path.basename(p))[0] for p in glob.glob(pattern))


def describe(cs):
    return {
        'name': cs.name,
        'notes': cs.notes,
        'lattices': {k: list(v) for k, v in cs.lattices.items()},
        'cones': {k: {'lattice': cs.cone_lattice[k], 'generators': len(c.generators), 'facets': len(c.facets)}
                  for k, c in cs.cones.items()},
        'spaces': {k: {'rank': s.rank, 'K': str(s.K), 'L': str(s.L)} for k, s in cs.spaces.items()},
        'actions': {k: {'space': cs.action_space[k], 'generators': len(a.generators)} for k, a in cs.actions.items()},
        'reference_pairs': {k: str(v) for k, v in cs.reference_pairs.items()},
        'expected': len(cs.expected),
    }


# --- COMPUTATION ---
def _class(cs, name):
    return cs.classes[name][1]


def divisor_product(cs, x, y):
    """Product of two source classes as a class of the target lattice."""
    if cs.products is None:
        raise InputError(f"case study '{cs.name}' has no products table")
    source = cs.products['source']
    x = _vector(cs, x, source, "x") if isinstance(x, str) else RatVec.of(x)
    y = _vector(cs, y, source, "y") if isinstance(y, str) else RatVec.of(y)
    table = cs.products['table']
    total = RatVec.zero(len(cs.lattices[cs.products['target']]))
    for i, xi in enumerate(x):
        for j, yj in enumerate(y):
            if xi and yj:
                total = total + table[(i, j)].scale(xi * yj)
    return total


def surface_degree(cs, space_name, surface):
    """L^2 . Y for the space's polarization L and a surface class Y."""
    L = cs.spaces[space_name].L
    square = divisor_product(cs, L, L)
    return cs.pairings[cs.products['pairing']].pair(square, _class(cs, surface))


def curve_degree(cs, space_name, curve):
    space = cs.spaces[space_name]
    return space.pseff.pairing.pair(space.L, _class(cs, curve))


def _operand(cs, token, bound):
    if token in cs.reference_pairs:
        return cs.reference_pairs[token]
    if '@' in token:
        space_name, action = token.split('@', 1)
        space = cs.spaces[space_name]
        return ABResult(ab_result(space).a, b_equivariant(space, cs.actions[action], bound))
    if '~' in token:
        space_name, curve = token.split('~', 1)
        return rational_curve_ab(curve_degree(cs, space_name, curve))
    return ab_result(cs.spaces[token])


def _dual_witness(computed, listed):
    computed, listed = set(computed), {g.canonical_ray() for g in listed}
    extra = sorted(computed - listed)
    if extra:
        return f"dual ray not listed: {extra[0]}"
    missing = sorted(listed - computed)
    if missing:
        return f"listed ray not extreme in dual: {missing[0]}"
    return None


def compute_quantity(cs, quantity, bound=None):
    """Recomputes one quantity id. Returns (value, witness or None)."""
    kind, *args = quantity.split(':')
    if kind == 'rank':
        return cs.spaces[args[0]].rank, None
    if kind in ('a', 'b', 'adjoint'):
        result = ab_result(cs.spaces[args[0]])
        return {'a': result.a, 'b': result.b, 'adjoint': result.adjoint_class}[kind], None
    if kind == 'b_equivariant':
        return b_equivariant(cs.spaces[args[0]], cs.actions[args[1]], bound), None
    if kind == 'group_order':
        action = cs.actions[args[1]]
        elements = group_closure(action.generators, bound or action.closure_bound, dim=cs.spaces[args[0]].rank)
        return len(elements), None
    if kind == 'verdict':
        return balanced_verdict(_operand(cs, args[0], bound), _operand(cs, args[1], bound)), None
    if kind == 'a_verdict':
        return a_balanced_verdict(_operand(cs, args[0], bound).a, _operand(cs, args[1], bound).a), None
    if kind == 'curve_a':
        return rational_curve_ab(curve_degree(cs, args[0], args[1])).a, None
    if kind == 'surface_degree':
        return surface_degree(cs, args[0], args[1]), None
    if kind == 'rigid_surface':
        return rigid_surface_volume_check(parse_rational(args[2]), surface_degree(cs, args[0], args[1])), None
    if kind == 'rigid_check':
        return rigid_surface_volume_check(parse_rational(args[0]), parse_rational(args[1])), None
    if kind == 'dual_equals':
        computed = dual_cone(cs.cones[args[0]]).generators
        listed = cs.listed_generators[args[1]]
        witness = _dual_witness(computed, listed)
        return same_rays(computed, listed), witness
    if kind == 'dual_contains':
        dual = dual_cone(cs.cones[args[0]])
        outside = [g for g in cs.listed_generators[args[1]] if not contains(dual, g)]
        return not outside, (f"listed ray outside dual: {outside[0].canonical_ray()}" if outside else None)
    if kind == 'extreme_count':
        return len(cs.cones[args[0]].generators), None
    if kind == 'contains':
        return contains(cs.cones[args[0]], _class(cs, args[1])), None
    n, values = cs.hilbert_samples[args[0]]
    check = adjoint_hilbert_check(n, values)
    return {'top_intersection': check.top_intersection,
            'matches_projective': check.matches_projective,
            'matches_quadric': check.matches_quadric}[kind], None


# --- REPORTS ---
@dataclass
class VerificationReport:
    name: str
    table: pd.DataFrame

    @property
    def passed(self):
        return int((self.table['status'] == 'pass').sum())

    @property
    def failed(self):
        return len(self.table) - self.passed

    @property
    def ok(self):
        return self.failed == 0

    def to_dict(self):
        return {'dataset': self.name, 'passed': self.passed, 'failed': self.failed,
                'results': self.table.to_dict(orient='records')}


def verify_case_study(cs, bound=None):
    rows = []
    for exp in cs.expected:
        try:
            value, witness = compute_quantity(cs, exp.quantity, bound)
            computed = render(value)
            status = 'pass' if computed == exp.value else 'fail'
        except ManinError as e:
            computed, witness, status = f"error: {e}", None, 'error'
        if status != 'pass':
            logger.warning(f"{cs.name}: {exp.quantity} expected {exp.value}, got {computed}.")
        rows.append({'quantity': exp.quantity, 'expected': exp.value, 'computed': computed,
                     'status': status, 'citation': exp.citation, 'witness': witness})
    report = VerificationReport(cs.name, pd.DataFrame(rows, columns=REPORT_COLUMNS))
    logger.info(f"Verified '{cs.name}': {report.passed} passed, {report.failed} failed.")
    return report


@dataclass
class TableReport:
    entries: pd.DataFrame
    solved: dict
    symmetric: dict

    @property
    def ok(self):
        return bool(self.entries['match'].all()) and all(self.solved.values()) and all(self.symmetric.values())

    def to_dict(self):
        return {'entries': self.entries.to_dict(orient='records'), 'matches': int(self.entries['match'].sum()),
                'total': len(self.entries), 'solved': self.solved, 'symmetric': self.symmetric}


def check_table_consistency(cs):
    """Re-derives every printed curve row from the basis curves and the stated relations."""
    symmetric = {name: p.is_symmetric() for name, p in cs.pairings.items()
                 if cs.pairing_lattices[name][0] == cs.pairing_lattices[name][1]}
    if cs.curve_table is None:
        return TableReport(pd.DataFrame([], columns=TABLE_COLUMNS), {}, symmetric)

    table = cs.curve_table
    pairing = cs.pairings[table['pairing']]
    divisors = [_class(cs, c) for c in table['columns']]
    functionals = [la.mat_vec(la.transpose(pairing.matrix), d) for d in divisors]

    solved = {}
    for b in table['basis']:
        coords = la.solve(functionals, table['rows'][b])
        solved[b] = coords is not None and RatVec(coords) == _class(cs, b)

    rows = []
    for curve, printed in table['rows'].items():
        if curve in table['relations']:
            coords = RatVec.zero(pairing.right_dim)
            for b, coeff in table['relations'][curve].items():
                coords = coords + _class(cs, b).scale(coeff)
        else:
            coords = _class(cs, curve)
        for label, d, value in zip(table['columns'], divisors, printed):
            derived = pairing.pair(d, coords)
            rows.append({'curve': curve, 'divisor': label, 'printed': format_rational(value),
                         'derived': format_rational(derived), 'match': derived == value})
    entries = pd.DataFrame(rows, columns=TABLE_COLUMNS)
    logger.info(f"Table check for '{cs.name}': {int(entries['match'].sum())}/{len(entries)} entries match.")
    return TableReport(entries, solved, symmetric)
