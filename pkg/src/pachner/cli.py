"""Command-line front end.

Reports are plain text, one fact per line, and byte-stable for fixed
inputs and seeds; --format structured emits the same content as a
JSON document instead.  Commands that produce an artifact
(triangulation tables, surface vectors, move records) print exactly
that artifact, so they pipe into each other:

    pachner moves walk torus.tri 12 --seed 3 > walk.rec
    pachner moves replay torus.tri walk.rec > end.tri
    pachner validate end.tri

Exit codes sort failures into machine-readable categories: 2 for
command-line usage errors, 3 for unreadable files or expressions, 4
for violated preconditions (invalid triangulations, inadmissible
surfaces, mismatched search endpoints), and 5 when a configured
resource guard refuses to continue.
"""

import argparse
import json
import os
import sys

from .bounds import (DEFAULT_BIT_CEILING, Overflow, UnboundVariable,
                     bound_catalogue, compare, evaluate, parse as parse_expr,
                     serialize)
from .enumeration import (BoundViolation, EnumerationLimits, ResourceGuard,
                          enumerate_fundamental, enumerate_vertex,
                          verify_coordinate_bounds)
from .geometry import reconstruct
from .homology import first_homology
from .moves import (IllegalMove, MoveRecord, apply_move, enumerate_moves,
                    format_move, parse_move)
from .normal import (NormalSurfaceVector, dumps_surface, haken_sum,
                     loads_surface, matching_system)
from .search import FingerprintMismatch, SearchConfig, connect, random_walk
from .subdivision import (certify_subcomplex, dumps_embedding, realize_moves,
                          subdivide_along)
from .triangulation import dumps as dumps_triangulation
from .triangulation import loads as loads_triangulation

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_PRECONDITION = 4
EXIT_REFUSED = 5

_CATEGORY = {EXIT_USAGE: 'usage', EXIT_PARSE: 'parse',
             EXIT_PRECONDITION: 'precondition', EXIT_REFUSED: 'refused'}


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code
        self.message = message


class Report:
    def __init__(self, lines, data, code=EXIT_OK):
        self.lines = lines
        self.data = data
        self.code = code


# -- input helpers ------------------------------------------------------------

def _read(path):
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            return handle.read()
    except OSError as exc:
        raise CliError(EXIT_PARSE, 'cannot read %s: %s' % (path, exc))


def _write(path, text):
    try:
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(text)
    except OSError as exc:
        raise CliError(EXIT_PARSE, 'cannot write %s: %s' % (path, exc))


def _load_triangulation(path):
    try:
        return loads_triangulation(_read(path))
    except ValueError as exc:
        raise CliError(EXIT_PARSE, '%s: %s' % (path, exc))


def _valid_triangulation(path):
    tri = _load_triangulation(path)
    if not tri.is_valid:
        raise CliError(EXIT_PRECONDITION, '%s: invalid triangulation (%s)'
                       % (path, '; '.join(tri.validity.messages)))
    return tri


def _load_surface(path, tri):
    try:
        return loads_surface(_read(path), tri)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, '%s: %s' % (path, exc))


def _admissible_surface(path, tri):
    vector = _load_surface(path, tri)
    if not vector.is_admissible():
        raise CliError(EXIT_PRECONDITION,
                       '%s: surface vector is not admissible' % path)
    return vector


def _parse_bindings(pairs):
    bindings = {}
    for pair in pairs or ():
        name, eq, value = pair.partition('=')
        if not eq or not name:
            raise CliError(EXIT_USAGE,
                           "binding %r is not of the form name=value" % pair)
        try:
            bindings[name.strip()] = int(value)
        except ValueError:
            raise CliError(EXIT_PARSE, 'binding %r needs an integer' % pair)
    return bindings


def _parse_expression(text):
    try:
        return parse_expr(text)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc))


# -- settings with environment fallbacks --------------------------------------

_DEFAULTS = {'format': 'text', 'seed': 0, 'jobs': 1, 'max_tets': None,
             'max_depth': None, 'bit_ceiling': DEFAULT_BIT_CEILING}


def _setting(args, name, cast):
    value = getattr(args, name)
    if value is not None:
        return value
    raw = os.environ.get('PACHNER_' + name.upper())
    if raw is None:
        return _DEFAULTS[name]
    try:
        return cast(raw)
    except ValueError:
        raise CliError(EXIT_USAGE, 'PACHNER_%s=%r is not a valid value'
                       % (name.upper(), raw))


class _Settings:
    def __init__(self, args):
        self.format = _setting(args, 'format', str)
        self.seed = _setting(args, 'seed', int)
        self.jobs = _setting(args, 'jobs', int)
        self.max_tets = _setting(args, 'max_tets', int)
        self.max_depth = _setting(args, 'max_depth', int)
        self.bit_ceiling = _setting(args, 'bit_ceiling', int)
        if self.format not in ('text', 'structured'):
            raise CliError(EXIT_USAGE, 'format must be text or structured')
        if self.jobs < 1:
            raise CliError(EXIT_USAGE, 'jobs must be positive')


# -- command handlers ----------------------------------------------------------

def _cmd_validate(args, cfg):
    tri = _load_triangulation(args.file)
    if tri.is_valid:
        free = len(tri.boundary_faces())
        return Report(['valid, %d boundary faces' % free],
                      {'valid': True, 'boundary_faces': free})
    messages = list(tri.validity.messages)
    return Report(['invalid: %s' % '; '.join(messages)],
                  {'valid': False, 'messages': messages},
                  EXIT_PRECONDITION)


def _cmd_skeleton(args, cfg):
    tri = _valid_triangulation(args.file)
    sk = tri.skeleton
    free = len(tri.boundary_faces())
    data = {
        'tetrahedra': tri.size,
        'faces': len(sk.faces),
        'edges': len(sk.edges),
        'vertices': len(sk.vertices),
        'boundary_faces': free,
        'boundary_components': len(tri.boundary_components()),
        'euler_characteristic': tri.euler_characteristic(),
    }
    lines = ['tetrahedra %d' % data['tetrahedra'],
             'faces %d (%d boundary)' % (data['faces'], free),
             'edges %d' % data['edges'],
             'vertices %d' % data['vertices'],
             'boundary components %d' % data['boundary_components'],
             'euler characteristic %d' % data['euler_characteristic']]
    return Report(lines, data)


def _cmd_homology(args, cfg):
    tri = _valid_triangulation(args.file)
    h = first_homology(tri)
    parts = ['Z'] * h.betti_q + ['Z/%d' % d for d in h.torsion]
    lines = ['H1 = %s' % (' + '.join(parts) if parts else '0'),
             'betti over Q: %d' % h.betti_q,
             'betti over Z/2: %d' % h.betti_mod2,
             'torsion: %s' % (' '.join(str(d) for d in h.torsion) or 'none')]
    return Report(lines, {'betti_q': h.betti_q, 'betti_mod2': h.betti_mod2,
                          'torsion': list(h.torsion)})


def _cmd_moves_list(args, cfg):
    tri = _valid_triangulation(args.file)
    moves = [format_move(m) for m in enumerate_moves(tri)]
    return Report(['%d legal moves' % len(moves)] + moves,
                  {'count': len(moves), 'moves': moves})


def _apply_all(tri, specs, path='<argument>'):
    current = tri
    sizes = []
    for spec in specs:
        try:
            move = parse_move(spec)
        except ValueError as exc:
            raise CliError(EXIT_PARSE, str(exc))
        try:
            current = apply_move(current, move)
        except IllegalMove as exc:
            raise CliError(EXIT_PRECONDITION, '%s: %s' % (spec.strip(), exc))
        sizes.append(current.size)
    return current, sizes


def _cmd_moves_apply(args, cfg):
    tri = _valid_triangulation(args.file)
    current, sizes = _apply_all(tri, args.move)
    table = dumps_triangulation(current)
    return Report(table.splitlines(),
                  {'applied': len(args.move), 'sizes': sizes,
                   'triangulation': table})


def _cmd_moves_walk(args, cfg):
    tri = _valid_triangulation(args.file)
    ceiling = cfg.max_tets if cfg.max_tets is not None else tri.size + 8
    record, end = random_walk(tri, args.steps, cfg.seed, ceiling)
    text = record.dumps()
    return Report(text.splitlines(),
                  {'steps': len(record), 'sizes': record.sizes,
                   'final_tetrahedra': end.size, 'record': text})


def _cmd_moves_replay(args, cfg):
    tri = _valid_triangulation(args.file)
    current, sizes = _apply_all(tri, _read(args.record).splitlines())
    table = dumps_triangulation(current)
    return Report(table.splitlines(),
                  {'replayed': len(sizes), 'sizes': sizes,
                   'triangulation': table})


def _cmd_surfaces_matching(args, cfg):
    tri = _valid_triangulation(args.file)
    system = matching_system(tri)
    interior = sum(1 for cls in tri.skeleton.faces if not cls.boundary)
    data = {'coordinates': 7 * tri.size, 'interior_faces': interior,
            'equations': len(system.rows)}
    lines = ['coordinates %d' % data['coordinates'],
             'interior faces %d' % interior,
             'equations %d' % data['equations']]
    return Report(lines, data)


def _limits(cfg):
    if cfg.max_tets is None:
        return EnumerationLimits()
    return EnumerationLimits(max_tets_vertex=cfg.max_tets,
                             max_tets_fundamental=cfg.max_tets)


def _surface_table(primary, vertex_candidates, fundamental_candidates):
    """Rows for the surface listing.  A candidate counts as a vertex
    surface when it is an extreme ray that is connected and two-sided;
    it counts as fundamental when the integer vector is indecomposable.
    Columns that would need a guarded enumeration show '?'."""
    rays = None if vertex_candidates is None else \
        {tuple(c.coords) for c in vertex_candidates}
    indecomposable = None if fundamental_candidates is None else \
        {tuple(c.coords) for c in fundamental_candidates}
    lines = ['index | coords-max | chi | class | vertex? | fundamental?']
    rows = []
    for i, cand in enumerate(primary):
        coords = tuple(cand.coords)
        if rays is None:
            in_vertex = '?'
        else:
            in_vertex = 'yes' if coords in rays and cand.is_vertex_surface \
                else 'no'
        if indecomposable is None:
            in_fundamental = '?'
        else:
            in_fundamental = 'yes' if coords in indecomposable else 'no'
        lines.append('%d | %d | %d | %s | %s | %s'
                     % (i, cand.max_coord(), cand.chi, cand.name,
                        in_vertex, in_fundamental))
        rows.append({'index': i, 'coords': list(coords),
                     'max_coord': cand.max_coord(), 'chi': cand.chi,
                     'class': cand.name, 'vertex': in_vertex,
                     'fundamental': in_fundamental})
    return lines, rows


def _guarded(thunk):
    try:
        return thunk()
    except ResourceGuard as exc:
        raise CliError(EXIT_REFUSED, str(exc))


def _cmd_surfaces_enum_vertex(args, cfg):
    tri = _valid_triangulation(args.file)
    limits = _limits(cfg)
    vertex = _guarded(lambda: enumerate_vertex(tri, limits))
    fundamental = None
    if tri.size <= limits.max_tets_fundamental:
        fundamental = _guarded(lambda: enumerate_fundamental(tri, limits))
    lines, rows = _surface_table(vertex, vertex, fundamental)
    return Report(lines, {'count': len(rows), 'surfaces': rows})


def _cmd_surfaces_enum_fundamental(args, cfg):
    tri = _valid_triangulation(args.file)
    limits = _limits(cfg)
    if tri.size > limits.max_tets_fundamental:
        raise CliError(EXIT_REFUSED,
                       'fundamental enumeration is guarded at %d tetrahedra '
                       '(file has %d); raise --max-tets to proceed'
                       % (limits.max_tets_fundamental, tri.size))
    fundamental = _guarded(lambda: enumerate_fundamental(tri, limits))
    vertex = _guarded(lambda: enumerate_vertex(tri, limits))
    lines, rows = _surface_table(fundamental, vertex, fundamental)
    return Report(lines, {'count': len(rows), 'surfaces': rows})


def _cmd_surfaces_verify_bounds(args, cfg):
    tri = _valid_triangulation(args.file)
    try:
        report = verify_coordinate_bounds(tri, _limits(cfg))
    except ResourceGuard as exc:
        raise CliError(EXIT_REFUSED, str(exc))
    except BoundViolation as exc:
        raise CliError(EXIT_PRECONDITION, str(exc))
    data = {'t': report.t, 'vertex_count': report.vertex_count,
            'vertex_max': report.vertex_max,
            'vertex_bound': report.vertex_bound,
            'fundamental_count': report.fundamental_count,
            'fundamental_max': report.fundamental_max,
            'fundamental_bound': report.fundamental_bound}
    return Report(report.lines(), data)


def _cmd_surfaces_classify(args, cfg):
    tri = _valid_triangulation(args.file)
    vector = _admissible_surface(args.surface, tri)
    geom = reconstruct(vector)
    reports = geom.classify()
    lines = [r.line() for r in reports]
    lines.append('total: chi=%d weight=%d components=%d'
                 % (geom.chi, geom.weight(), len(reports)))
    return Report(lines, {'chi': geom.chi, 'weight': geom.weight(),
                          'components': [r.line() for r in reports]})


def _cmd_surfaces_sum(args, cfg):
    tri = _valid_triangulation(args.file)
    left = _admissible_surface(args.left, tri)
    right = _admissible_surface(args.right, tri)
    try:
        total = haken_sum(left, right)
    except ValueError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc))
    text = dumps_surface(total, os.path.basename(args.file))
    return Report(text.splitlines(),
                  {'coords': list(total.coords), 'surface': text})


def _cmd_subdivide(args, cfg):
    tri = _valid_triangulation(args.file)
    vector = _admissible_surface(args.surface, tri)
    result = subdivide_along(tri, vector)
    certificate = certify_subcomplex(result)
    lines = ['subdivided along %d discs: %d -> %d tetrahedra (bound %d)'
             % (result.n, result.t, result.tets1,
                20 * (result.n + result.t)),
             'largest ball boundary: %d triangles'
             % max(result.ball_sizes),
             certificate.line()]
    if args.out_triangulation:
        _write(args.out_triangulation, dumps_triangulation(result.t1))
        lines.append('wrote %s' % args.out_triangulation)
    if args.out_embedding:
        _write(args.out_embedding, dumps_embedding(result))
        lines.append('wrote %s' % args.out_embedding)
    data = {'discs': result.n, 'tetrahedra': result.t,
            'new_tetrahedra': result.tets1,
            'ball_sizes': result.ball_sizes,
            'certified': certificate.ok}
    code = EXIT_OK if certificate.ok else EXIT_PRECONDITION
    return Report(lines, data, code)


def _cmd_realize(args, cfg):
    tri = _valid_triangulation(args.file)
    vector = _admissible_surface(args.surface, tri)
    result = subdivide_along(tri, vector)
    outcome = realize_moves(tri, result, args.budget)
    if not outcome.ok:
        raise CliError(EXIT_REFUSED, 'realization refused: %s (progress %s)'
                       % (outcome.reason, outcome.progress))
    text = outcome.record.dumps()
    return Report(text.splitlines(),
                  {'moves': len(outcome.record),
                   'sizes': outcome.record.sizes,
                   'progress': outcome.progress, 'record': text})


def _cmd_bounds_eval(args, cfg):
    expr = _parse_expression(args.expression)
    try:
        value = evaluate(expr, _parse_bindings(args.bind), cfg.bit_ceiling)
    except UnboundVariable as exc:
        raise CliError(EXIT_PARSE, str(exc))
    if isinstance(value, Overflow):
        raise CliError(EXIT_REFUSED,
                       'no exact value within %d bits: %s'
                       % (value.bit_ceiling, serialize(value.expression)))
    return Report([str(value)], {'value': str(value)})


def _cmd_bounds_compare(args, cfg):
    left = _parse_expression(args.left)
    right = _parse_expression(args.right)
    bindings = _parse_bindings(args.bind)
    try:
        verdict = compare(left, right, bindings, cfg.bit_ceiling)
    except UnboundVariable as exc:
        raise CliError(EXIT_PARSE, str(exc))
    except ValueError as exc:
        raise CliError(EXIT_REFUSED, str(exc))
    return Report([verdict], {'verdict': verdict})


def _cmd_bounds_catalogue(args, cfg):
    lines = []
    data = {}
    for name, expr in bound_catalogue().items():
        text = serialize(expr)
        lines.append('%s = %s' % (name, text))
        data[name] = text
    return Report(lines, data)


def _cmd_connect(args, cfg):
    start = _valid_triangulation(args.start)
    goal = _valid_triangulation(args.goal)
    max_tets = cfg.max_tets if cfg.max_tets is not None \
        else max(start.size, goal.size) + 4
    max_depth = cfg.max_depth if cfg.max_depth is not None else 6
    search_cfg = SearchConfig(max_tets=max_tets, max_frontier=20000,
                              max_depth=max_depth, seed=cfg.seed)
    try:
        outcome = connect(start, goal, search_cfg)
    except FingerprintMismatch as exc:
        raise CliError(EXIT_PRECONDITION, str(exc))
    if not outcome.ok:
        raise CliError(EXIT_REFUSED, outcome.line())
    text = outcome.record.dumps()
    lines = [outcome.line()] + text.splitlines()
    return Report(lines, {'length': len(outcome.record),
                          'bound_report': outcome.bound_report,
                          'record': text, 'stats': outcome.stats})


# -- parser --------------------------------------------------------------------

def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=('text', 'structured'),
                        help='report style (default text; '
                             'env PACHNER_FORMAT)')
    common.add_argument('--seed', type=int,
                        help='seed for all randomness (default 0; '
                             'env PACHNER_SEED)')
    common.add_argument('--jobs', type=int,
                        help='worker hint for enumeration and search; '
                             'results are identical regardless '
                             '(env PACHNER_JOBS)')
    common.add_argument('--max-tets', type=int, dest='max_tets',
                        help='tetrahedron ceiling for walks, search and '
                             'enumeration guards (env PACHNER_MAX_TETS)')
    common.add_argument('--max-depth', type=int, dest='max_depth',
                        help='search depth ceiling (env PACHNER_MAX_DEPTH)')
    common.add_argument('--bit-ceiling', type=int, dest='bit_ceiling',
                        help='bit budget for exact bound evaluation '
                             '(env PACHNER_BIT_CEILING)')

    parser = argparse.ArgumentParser(
        prog='pachner',
        description='Triangulations, Pachner moves, normal surfaces and '
                    'explicit move-count bounds.')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('validate', parents=[common],
                       help='check a gluing table')
    p.add_argument('file')
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser('skeleton', parents=[common],
                       help='simplex class counts')
    p.add_argument('file')
    p.set_defaults(handler=_cmd_skeleton)

    p = sub.add_parser('homology', parents=[common], help='first homology')
    p.add_argument('file')
    p.set_defaults(handler=_cmd_homology)

    moves = sub.add_parser('moves', help='enumerate, apply, walk, replay') \
        .add_subparsers(dest='subcommand', required=True)
    p = moves.add_parser('list', parents=[common], help='legal moves')
    p.add_argument('file')
    p.set_defaults(handler=_cmd_moves_list)
    p = moves.add_parser('apply', parents=[common],
                         help='apply moves, print the new table')
    p.add_argument('file')
    p.add_argument('move', nargs='+',
                   help="move lines such as 'M14 tet=0'")
    p.set_defaults(handler=_cmd_moves_apply)
    p = moves.add_parser('walk', parents=[common],
                         help='seeded random walk, print the record')
    p.add_argument('file')
    p.add_argument('steps', type=int)
    p.set_defaults(handler=_cmd_moves_walk)
    p = moves.add_parser('replay', parents=[common],
                         help='replay a record file, print the new table')
    p.add_argument('file')
    p.add_argument('record')
    p.set_defaults(handler=_cmd_moves_replay)

    surfaces = sub.add_parser('surfaces',
                              help='matching system, enumeration, '
                                   'classification, sums') \
        .add_subparsers(dest='subcommand', required=True)
    p = surfaces.add_parser('matching', parents=[common],
                            help='matching system dimensions')
    p.add_argument('file')
    p.set_defaults(handler=_cmd_surfaces_matching)
    p = surfaces.add_parser('enum-vertex', parents=[common],
                            help='vertex surfaces')
    p.add_argument('file')
    p.set_defaults(handler=_cmd_surfaces_enum_vertex)
    p = surfaces.add_parser('enum-fundamental', parents=[common],
                            help='fundamental surfaces')
    p.add_argument('file')
    p.set_defaults(handler=_cmd_surfaces_enum_fundamental)
    p = surfaces.add_parser('verify-bounds', parents=[common],
                            help='coordinate ceilings')
    p.add_argument('file')
    p.set_defaults(handler=_cmd_surfaces_verify_bounds)
    p = surfaces.add_parser('classify', parents=[common],
                            help='surface components by type')
    p.add_argument('file')
    p.add_argument('surface')
    p.set_defaults(handler=_cmd_surfaces_classify)
    p = surfaces.add_parser('sum', parents=[common],
                            help='coordinatewise sum of compatible surfaces')
    p.add_argument('file')
    p.add_argument('left')
    p.add_argument('right')
    p.set_defaults(handler=_cmd_surfaces_sum)

    p = sub.add_parser('subdivide', parents=[common],
                       help='cut along a normal surface')
    p.add_argument('file')
    p.add_argument('surface')
    p.add_argument('--out-triangulation', dest='out_triangulation',
                   help='write the new gluing table here')
    p.add_argument('--out-embedding', dest='out_embedding',
                   help='write the disc embedding here')
    p.set_defaults(handler=_cmd_subdivide)

    p = sub.add_parser('realize', parents=[common],
                       help='witness a subdivision as a move record')
    p.add_argument('file')
    p.add_argument('surface')
    p.add_argument('--budget', type=int,
                   help='move budget (default 200t or 200nt)')
    p.set_defaults(handler=_cmd_realize)

    bounds = sub.add_parser('bounds',
                            help='tower-expression arithmetic') \
        .add_subparsers(dest='subcommand', required=True)
    p = bounds.add_parser('eval', parents=[common],
                          help='exact value of an expression')
    p.add_argument('expression')
    p.add_argument('--bind', action='append',
                   help='variable binding name=value (repeatable)')
    p.set_defaults(handler=_cmd_bounds_eval)
    p = bounds.add_parser('compare', parents=[common],
                          help='order two expressions without expanding')
    p.add_argument('left')
    p.add_argument('right')
    p.add_argument('--bind', action='append',
                   help='variable binding name=value (repeatable)')
    p.set_defaults(handler=_cmd_bounds_compare)
    p = bounds.add_parser('catalogue', parents=[common],
                          help='named bounds and their expressions')
    p.set_defaults(handler=_cmd_bounds_catalogue)

    p = sub.add_parser('connect', parents=[common],
                       help='search for a move path between two tables')
    p.add_argument('start')
    p.add_argument('goal')
    p.set_defaults(handler=_cmd_connect)

    return parser


def _emit(report, fmt, command):
    if fmt == 'structured':
        doc = {'command': command, 'ok': report.code == EXIT_OK,
               'exit': report.code, 'report': report.lines,
               'data': report.data}
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in report.lines:
            print(line)
    return report.code


def _emit_error(exc, fmt):
    print('error: %s' % exc.message, file=sys.stderr)
    if fmt == 'structured':
        doc = {'ok': False, 'exit': exc.code,
               'category': _CATEGORY.get(exc.code, 'error'),
               'error': exc.message}
        print(json.dumps(doc, indent=2, sort_keys=True))
    return exc.code


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    command = args.command + (' ' + args.subcommand
                              if getattr(args, 'subcommand', None) else '')
    fmt = 'text'
    try:
        cfg = _Settings(args)
        fmt = cfg.format
        report = args.handler(args, cfg)
    except CliError as exc:
        return _emit_error(exc, fmt)
    return _emit(report, fmt, command)


if __name__ == '__main__':
    sys.exit(main())
