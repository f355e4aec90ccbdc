"""
Command-Line Front End
Runs the verifications, prints tables in the printed layout and exports
graphs and reports as text, JSON or DOT
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from src.correspondence import (EXPECTED_MISMATCHES, FIXTURE_BIJECTION, consistent_fixture_labellings,
                                distinguished_elements, mermin_line_match, quad_shell_check, reproduce_table)
from src.finite_ring import (RING_SELECTORS, FiniteRing, direct_product_ring, quotient_ring_gf2, ring_by_selector,
                             same_addition_table, verify_ring_table)
from src.fixture_store import FixtureError, FixtureStore
from src.pauli_two_qubit import (KERNEL, TABLE_LAYOUT, OperatorPartition, closure_check,
                                 cube_structure, fano_embedding, mermin_multiplicity_ok, mermin_squares,
                                 mub_partition, oracle_disagreements, pencil_through, phase_dichotomy_holds,
                                 product_grid, shell_coupling, verify_eigenbases, verify_tables)
from src.projective_line import (array_3x3, distant_graph, enumerate_points, mutually_distant_triples,
                                 neighbourhood_profile, non_transitivity_witness, shell_census)
from src.relations import RelationMatrix
from src.render_components import RenderComponents
from src.verification_monitor import Report, VerificationMonitor

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

# ring selector -> fixture holding its printed tables
RING_FIXTURES = {'gf2x2': 'table4_rperp', 'gf4': 'table4_gf4', 'gf2x3': 'table5'}
R_TRIANGLE_MAXIMAL = [{'0', 'r', 'g', 'y'}, {'0', 'b', 'g', 'c'}, {'0', 'b', 'r', 'm'}]
SET_LAYOUT = {'A': 1, 'B': 2, 'AB': 3}
UNIVERSES = {'A': sorted(KERNEL), 'S': list(range(1, 16))}

CommandResult = Tuple[Report, str]


class UsageError(Exception):
    """Raised by the parser instead of exiting"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def configure_logging(verbosity: int):
    """WARNING by default, INFO with -v, DEBUG with -vv; always on standard error"""
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def expected_line_size(ring: FiniteRing) -> int:
    """3^n points over GF(2)^n and q+1 over a field of order q"""
    if ring.components is not None:
        return 3 ** len(ring.components[0])
    return ring.order + 1


def _names(ring: FiniteRing, elements) -> List[str]:
    return [ring.name(e) for e in sorted(e.index if hasattr(e, 'index') else e for e in elements)]


# ---- ring -----------------------------------------------------------------

def ring_checks(ring: FiniteRing, selector: str, store: FixtureStore, monitor: VerificationMonitor):
    monitor.record_check('axioms', ring.check_axioms())
    monitor.record_check('units_form_group', ring.units_form_group())
    if selector in RING_FIXTURES:
        printed = store.ring_table(RING_FIXTURES[selector])
        diffs = verify_ring_table(ring, printed.names, printed.add, printed.mul)
        monitor.record_check(f"{RING_FIXTURES[selector]}_fixture", not diffs, diffs)
    if selector in ('gf2x2', 'gf4'):
        other = quotient_ring_gf2(0b111) if selector == 'gf2x2' else direct_product_ring(2)
        monitor.record_check('shares_addition_not_multiplication',
                             same_addition_table(ring, other) and not (ring.mul_table == other.mul_table).all())
    if not ring.is_field():
        quotients = [ring.quotient_by_ideal(m) for m in ring.maximal_ideals()]
        monitor.record_check('quotients_are_fields', all(q.is_field() for q in quotients))
    if selector == 'gf2x3':
        found = [set(_names(ring, m.elements)) for m in ring.maximal_ideals()]
        monitor.record_check('maximal_ideals', sorted(map(sorted, found)) == sorted(map(sorted, R_TRIANGLE_MAXIMAL)))
    if selector == 'gf2x4':
        distinguished = distinguished_elements(ring)
        monitor.record_check('distinguished_elements',
                             distinguished.passed and distinguished.names == ['x2', 'x3', 'x8', 'x12']
                             and distinguished.ideal_sizes == [8, 8, 8, 8], distinguished.to_dict())


def ring_payload(ring: FiniteRing) -> Dict:
    maximal = ring.maximal_ideals()
    radical = ring.jacobson_radical()
    intersections = []
    for i in range(len(maximal)):
        for j in range(i + 1, len(maximal)):
            intersections.append(_names(ring, maximal[i].elements & maximal[j].elements))
    return {
        'ring': ring.ring_id,
        'order': ring.order,
        'characteristic': ring.characteristic(),
        'is_field': ring.is_field(),
        'is_local': ring.is_local(),
        'units': _names(ring, ring.units()),
        'zero_divisors': _names(ring, ring.zero_divisors()),
        'maximal_ideals': [{'generator': ring.name(m.generator) if m.generator is not None else None,
                            'elements': _names(ring, m.elements)} for m in maximal],
        'pairwise_intersections': intersections,
        'radical': _names(ring, radical.elements),
        'composite_zero_divisors': _names(ring, ring.composite_zero_divisors()),
        'tables': ring.to_dict(),
    }


def cmd_ring_info(args, store: FixtureStore) -> CommandResult:
    ring = ring_by_selector(args.ring)
    monitor = VerificationMonitor('ring info')
    ring_checks(ring, args.ring, store, monitor)
    payload = ring_payload(ring)
    monitor.payload = payload
    frames = RenderComponents.ring_frames(ring)
    lines = [f"Ring {ring.ring_id} (order {ring.order}, characteristic {payload['characteristic']})",
             RenderComponents.render_frame(frames['+'], '+'), '',
             RenderComponents.render_frame(frames['x'], 'x'), '',
             f"units: {', '.join(payload['units'])}",
             f"zero-divisors: {', '.join(payload['zero_divisors'])}"]
    for ideal in payload['maximal_ideals']:
        lines.append(f"maximal ideal <{ideal['generator']}> = {{{', '.join(ideal['elements'])}}}")
    lines.append(f"radical: {{{', '.join(payload['radical'])}}}")
    if payload['composite_zero_divisors']:
        lines.append(f"composite zero-divisors: {', '.join(payload['composite_zero_divisors'])}")
    lines.extend(RenderComponents.summary_lines(monitor.get_check_history()))
    return monitor.build_report(), '\n'.join(lines)


# ---- line -----------------------------------------------------------------

def line_checks(model, selector: str, monitor: VerificationMonitor):
    monitor.record_check('point_count', len(model) == expected_line_size(model.ring), len(model))
    monitor.record_check('distant_symmetric', distant_graph(model, model.points).is_symmetric())
    if selector == 'gf2x2':
        profile = neighbourhood_profile(model)
        monitor.record_check('neighbourhoods', profile == {'neighbourhood_sizes': [4], 'distant_pair_common': [2],
                                                           'distant_triple_common': [0]}, profile)
        layout = array_3x3(model)
        monitor.record_check('array_3x3', [p.name for p in layout.distinguished] == ['(1,1)', '(x,x+1)', '(x+1,x)'],
                             layout.to_dict())
        triples = mutually_distant_triples(model)
        monitor.record_check('distant_triples_are_array_lines',
                             sorted(map(sorted, triples)) == sorted(map(sorted, layout.lines())), len(triples))


def cmd_line(args, store: FixtureStore) -> CommandResult:
    ring = ring_by_selector(args.ring)
    model = enumerate_points(ring)
    monitor = VerificationMonitor(f"line {args.action}")
    line_checks(model, args.ring, monitor)
    relation = distant_graph(model, model.points)
    if args.action == 'graph':
        monitor.payload = {'ring': ring.ring_id, 'relation': relation.to_dict(), 'edges': len(relation.edges())}
        if args.format == 'dot':
            return monitor.build_report(), RenderComponents.export_dot(relation, 'distant')
        text = RenderComponents.render_frame(RenderComponents.relation_frame(relation))
        return monitor.build_report(), text
    witness = non_transitivity_witness(model)
    payload = {'ring': ring.ring_id, 'count': len(model), 'points': model.names(),
               'non_transitivity_witness': [p.name for p in witness] if witness else None}
    if ring.nontrivial_zero_divisors():
        payload['shells'] = shell_census(model)
    monitor.payload = payload
    if args.format == 'dot':
        return monitor.build_report(), RenderComponents.export_dot(relation, 'distant')
    lines = [f"Line over {ring.ring_id}: {len(model)} points", ' '.join(model.names())]
    if witness:
        lines.append(f"neighbour chain {witness[0].name} ~ {witness[1].name} ~ {witness[2].name}, "
                     f"ends distant")
    if 'shells' in payload:
        lines.append('shells: ' + ', '.join(f"{k} {v}" for k, v in payload['shells'].items()))
    lines.extend(RenderComponents.summary_lines(monitor.get_check_history()))
    return monitor.build_report(), '\n'.join(lines)


# ---- pauli ------------------------------------------------------------------

def cmd_pauli(args, store: FixtureStore) -> CommandResult:
    if args.action == 'mubs':
        monitor = VerificationMonitor('pauli mubs')
        report = mub_partition()
        monitor.record_check('mubs', report.passed)
        checks = verify_eigenbases(store)
        for check in checks:
            monitor.record_check(f"eigenbasis {list(check.triple)}", check.passed, check.to_dict())
        monitor.payload = report.to_dict()
        lines = [f"row {k}: " + ' '.join(basis.to_dict()['vectors']) + (' entangled' if basis.entangled else '')
                 for k, basis in enumerate(report.bases, start=1)]
        lines.append(f"{report.pairs_checked} pairs checked, all unbiased: {report.all_unbiased}")
        lines.extend(RenderComponents.summary_lines(monitor.get_check_history()))
        return monitor.build_report(), '\n'.join(lines)

    if args.set is None:
        raise ValueError("pauli table needs --set A|B|AB")
    number = SET_LAYOUT[args.set]
    rows, cols = TABLE_LAYOUT[number]
    monitor = VerificationMonitor('pauli table')
    check = next(c for c in verify_tables(store) if c.table == number)
    monitor.record_check(f"table {number}", check.passed, check.to_dict())
    if number == 1:
        monitor.record_check('oracle_agreement', not oracle_disagreements())
        monitor.record_check('closure', closure_check(OperatorPartition()))
    grid = product_grid(rows, cols)
    monitor.payload = {'set': args.set, 'rows': rows, 'cols': cols,
                       'cells': [[str(cell) for cell in row] for row in grid]}
    text = RenderComponents.render_frame(RenderComponents.product_frame(rows, cols, grid))
    lines = [text] + [f"({d['row']},{d['col']}): printed {d['printed']}, computed {d['computed']}"
                      + (' (known erratum)' if d['erratum'] else '') for d in check.discrepancies]
    lines.extend(RenderComponents.summary_lines(monitor.get_check_history()))
    return monitor.build_report(), '\n'.join(lines)


# ---- mermin, fano, cube, coupling -----------------------------------------

def cmd_mermin(args, store: FixtureStore) -> CommandResult:
    reports = mermin_squares(store)
    monitor = VerificationMonitor('mermin')
    if args.square is not None:
        if not 1 <= args.square <= len(reports):
            raise ValueError(f"Square must be in 1..{len(reports)}, got {args.square}")
        reports = [reports[args.square - 1]]
    for report in reports:
        monitor.record_check(f"square {report.square}", report.passed)
    grids = [r.grid for r in mermin_squares(store)]
    if args.square is None:
        monitor.record_check('label_multiplicity', mermin_multiplicity_ok(grids))
    if args.square in (None, 1):
        match = mermin_line_match(grids[0], workers=args.workers)
        monitor.record_check('square_1_on_line_gf2x2', match.passed, match.to_dict())
    if len(reports) == 1:
        monitor.payload = reports[0].to_dict()
    else:
        monitor.payload = {'squares': [r.to_dict() for r in reports]}
    lines = []
    for report in reports:
        lines.append(f"Square {report.square}")
        lines.append(RenderComponents.grid_text(report.grid))
        lines.append(f"rows {''.join(report.row_phases)}  columns {''.join(report.col_phases)}")
    lines.extend(RenderComponents.summary_lines(monitor.get_check_history()))
    return monitor.build_report(), '\n'.join(lines)


def cmd_fano(args, store: FixtureStore) -> CommandResult:
    universe = UNIVERSES[args.universe]
    embedding = fano_embedding()
    pencil = pencil_through(args.pencil, universe)
    monitor = VerificationMonitor('fano')
    monitor.record_check('embedding_cross_validated', embedding.cross_validated)
    monitor.record_check('pencil_size', len(pencil) == (3 if args.universe == 'A' else 7), len(pencil))
    monitor.payload = {'embedding': embedding.to_dict(), 'base': args.pencil, 'universe': args.universe,
                       'lines': [line.to_dict() for line in pencil]}
    lines = [f"Fano lines of A\\{{0}}: " + ' '.join('{' + ','.join(map(str, triple)) + '}' for triple in embedding.lines)]
    for line in pencil:
        tag = 'full' if line.full else 'broken'
        if line.entangled:
            tag += ', entangled'
        lines.append(f"{list(line.labels)}: {tag}")
    lines.extend(RenderComponents.summary_lines(monitor.get_check_history()))
    return monitor.build_report(), '\n'.join(lines)


def cmd_cube(args, store: FixtureStore) -> CommandResult:
    report = cube_structure()
    monitor = VerificationMonitor('cube')
    monitor.record_check('cube', report.is_cube)
    monitor.payload = report.to_dict()
    if args.format == 'dot':
        return monitor.build_report(), RenderComponents.export_dot(report.relation, 'cube')
    lines = [RenderComponents.render_frame(RenderComponents.relation_frame(report.relation)),
             'vertex bits: ' + ', '.join(f"{k}={v}" for k, v in sorted(report.isomorphism.items()))]
    lines.extend(RenderComponents.summary_lines(monitor.get_check_history()))
    return monitor.build_report(), '\n'.join(lines)


def cmd_coupling(args, store: FixtureStore) -> CommandResult:
    report = shell_coupling()
    monitor = VerificationMonitor('coupling')
    monitor.record_check('coupling', report.passed)
    monitor.payload = report.to_dict()
    lines = [f"pair {list(p.pair)}: {p.four_tuples[0]} | {p.four_tuples[1]}, faces {p.faces}" for p in report.pairs]
    lines.append(f"full graph: degree {report.full_degree}, {report.full_edges} edges")
    lines.extend(RenderComponents.summary_lines(monitor.get_check_history()))
    return monitor.build_report(), '\n'.join(lines)


# ---- match and shells -------------------------------------------------------

def cmd_match(args, store: FixtureStore) -> CommandResult:
    report = reproduce_table(args.table, store=store, workers=args.workers)
    monitor = VerificationMonitor('match')
    monitor.record_check(f"table {args.table}", report.passed)
    monitor.payload = report.to_dict()
    fixture = store.relation_table(args.table)
    printed = RelationMatrix(fixture.row_labels, fixture.col_labels, fixture.cells)
    frame = RenderComponents.relation_frame(printed, fixture.flags)
    lines = [RenderComponents.render_frame(frame),
             f"mismatches {report.mismatch_count} (printed {EXPECTED_MISMATCHES[args.table]}), "
             f"minimum {report.min_mismatch}, flags match: {report.flags_match}"]
    lines.extend(RenderComponents.summary_lines(monitor.get_check_history()))
    return monitor.build_report(), '\n'.join(lines)


def cmd_shells(args, store: FixtureStore) -> CommandResult:
    monitor = VerificationMonitor('shells')
    triangle = enumerate_points(direct_product_ring(3))
    census = shell_census(triangle)
    monitor.record_check('census_gf2x3', census == {'nucleus': 3, 'mixed': 12, 'outer': 12,
                                                    'outer_composite': 6, 'outer_other': 6}, census)
    quad_ring = direct_product_ring(4)
    distinguished = distinguished_elements(quad_ring)
    monitor.record_check('distinguished_elements', distinguished.passed, distinguished.to_dict())
    quad = quad_shell_check(enumerate_points(quad_ring))
    monitor.record_check('quad_shell_failure_detected', quad.failure_detected, quad.to_dict())
    monitor.payload = {'census_gf2x3': census, 'quad_shell': quad.to_dict()}
    lines = ['shells over gf2x3: ' + ', '.join(f"{k} {v}" for k, v in census.items()),
             f"cube subset over gf2x4: {' '.join(quad.cube_points)}",
             f"kernel subset: {' '.join(quad.kernel_points)}",
             f"distant cross pairs {quad.distant_cross_pairs}, commuting operator cross pairs "
             f"{quad.commuting_cross_pairs}"]
    lines.extend(RenderComponents.summary_lines(monitor.get_check_history()))
    return monitor.build_report(), '\n'.join(lines)


def cmd_verify_all(args, store: FixtureStore) -> CommandResult:
    monitor = VerificationMonitor('verify-all')
    for check in verify_tables(store):
        monitor.record_check(f"table {check.table}", check.passed)
    monitor.record_check('oracle_agreement', not oracle_disagreements())
    monitor.record_check('phase_dichotomy', phase_dichotomy_holds())
    monitor.record_check('closure', closure_check(OperatorPartition()))
    monitor.record_check('mubs', mub_partition().passed)
    monitor.record_check('eigenbases', all(c.passed for c in verify_eigenbases(store)))
    mermin = mermin_squares(store)
    monitor.record_check('mermin_squares', all(r.passed for r in mermin))
    monitor.record_check('mermin_multiplicity', mermin_multiplicity_ok([r.grid for r in mermin]))

    models = {}
    for selector in ('gf2x2', 'gf2x3', 'gf2x4'):
        models[selector] = enumerate_points(ring_by_selector(selector))
        monitor.record_check(f"line_size {selector}", len(models[selector]) == expected_line_size(models[selector].ring))
    fine = VerificationMonitor('line')
    line_checks(models['gf2x2'], 'gf2x2', fine)
    monitor.record_check('line_gf2x2_fine_structure', fine.all_passed())
    monitor.record_check('mermin_line_match', mermin_line_match(mermin[0].grid, models['gf2x2'], args.workers).passed)

    for table in sorted(EXPECTED_MISMATCHES):
        monitor.record_check(f"match table {table}",
                             reproduce_table(table, store, models['gf2x3'], args.workers).passed)
    monitor.record_check('fixture_labelling',
                         FIXTURE_BIJECTION in consistent_fixture_labellings(store, models['gf2x3']))

    for selector in ('gf2x3', 'gf2x4'):
        rings = VerificationMonitor('ring')
        ring_checks(ring_by_selector(selector), selector, store, rings)
        monitor.record_check(f"ring {selector}", rings.all_passed())
    pencil = pencil_through(3, UNIVERSES['A'])
    monitor.record_check('pencil_3', sum(p.full for p in pencil) == 3 and sum(bool(p.entangled) for p in pencil) == 2)
    monitor.record_check('fano_embedding', fano_embedding().cross_validated)
    monitor.record_check('cube', cube_structure().is_cube)
    monitor.record_check('coupling', shell_coupling().passed)
    census = shell_census(models['gf2x3'])
    monitor.record_check('shell_census', (census['nucleus'], census['mixed'], census['outer']) == (3, 12, 12))
    monitor.record_check('quad_shell', quad_shell_check(models['gf2x4']).failure_detected)
    lines = RenderComponents.summary_lines(monitor.get_check_history())
    return monitor.build_report(), '\n'.join(lines)


# ---- parser and entry point ------------------------------------------------

COMMANDS: Dict[str, Callable] = {
    'ring': cmd_ring_info,
    'line': cmd_line,
    'pauli': cmd_pauli,
    'mermin': cmd_mermin,
    'fano': cmd_fano,
    'cube': cmd_cube,
    'coupling': cmd_coupling,
    'match': cmd_match,
    'shells': cmd_shells,
    'verify-all': cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='prgeom', description='Exact checks of two-qubit observables on projective ring lines')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG logging')
    parser.add_argument('--workers', type=int, default=1, help='worker processes for bijection search')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    def formats(p, choices=('text', 'json'), default='text'):
        p.add_argument('--format', choices=choices, default=default)

    ring = sub.add_parser('ring', help='ring tables, units and ideals')
    ring.add_argument('action', choices=['info'])
    ring.add_argument('--ring', required=True, help=f"one of {', '.join(RING_SELECTORS)}")
    formats(ring)

    line = sub.add_parser('line', help='points and distant graph of a projective line')
    line.add_argument('action', choices=['points', 'graph'])
    line.add_argument('--ring', required=True, help=f"one of {', '.join(RING_SELECTORS)}")
    formats(line, ('text', 'json', 'dot'))

    pauli = sub.add_parser('pauli', help='operator tables and mutually unbiased bases')
    pauli.add_argument('action', choices=['table', 'mubs'])
    pauli.add_argument('--set', choices=sorted(SET_LAYOUT))
    formats(pauli)

    mermin = sub.add_parser('mermin', help='Mermin squares')
    mermin.add_argument('--square', type=int)
    formats(mermin)

    fano = sub.add_parser('fano', help='Fano plane and pencils of operator lines')
    fano.add_argument('--pencil', type=int, required=True)
    fano.add_argument('--universe', choices=sorted(UNIVERSES), default='A')
    formats(fano)

    formats(sub.add_parser('cube', help='commutation graph of the outer operators'), ('text', 'json', 'dot'))
    formats(sub.add_parser('coupling', help='kernel pairs and cube faces'))

    match = sub.add_parser('match', help='operator/point correspondence for a printed distant table')
    match.add_argument('--table', type=int, required=True, choices=sorted(EXPECTED_MISMATCHES))
    formats(match, default='json')

    formats(sub.add_parser('shells', help='shell census and the four-factor coupling test'))
    formats(sub.add_parser('verify-all', help='run every check'))
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Execute one command; 0 if every check passed, 1 if one failed, 2 on bad input"""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return 2
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 0

    configure_logging(args.verbose)
    if args.workers < 1:
        print(f"error: --workers must be at least 1, got {args.workers}", file=sys.stderr)
        return 2
    try:
        store = FixtureStore()
        report, text = COMMANDS[args.command](args, store)
    except FixtureError as e:
        print(f"fixture error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    if args.format == 'json':
        sys.stdout.write(RenderComponents.export_json(report))
    else:
        sys.stdout.write(text if text.endswith('\n') else text + '\n')
    logger.info("Command %s finished: %s", args.command, report.status)
    return 0 if report.passed else 1


def main():
    sys.exit(run())
