import json
import subprocess
import sys

import pytest

from pachner.cli import main
from pachner.corpus import bundled_text
from pachner.triangulation import loads


@pytest.fixture
def run(capsys):
    """Invoke the command line in-process and capture its streams."""
    def invoke(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return invoke


@pytest.fixture
def tri_file(tmp_path):
    def write(name):
        path = tmp_path / (name + '.tri')
        path.write_text(bundled_text(name))
        return str(path)
    return write


@pytest.fixture
def surface_file(tmp_path):
    def write(stem, t, coords):
        path = tmp_path / (stem + '.sur')
        path.write_text('surface over %s t=%d\n%s\n'
                        % (stem, t, ' '.join(str(c) for c in coords)))
        return str(path)
    return write


# -- validate, skeleton, homology ----------------------------------------

def test_validate_reports_boundary_faces(run, tri_file):
    code, out, err = run('validate', tri_file('one_tet'))
    assert code == 0
    assert out == 'valid, 4 boundary faces\n'
    assert err == ''


def test_validate_closed_manifold(run, tri_file):
    code, out, _ = run('validate', tri_file('two_tet_sphere'))
    assert code == 0
    assert out == 'valid, 0 boundary faces\n'


def test_validate_flags_a_bad_gluing_table(run, tmp_path):
    bad = tmp_path / 'bad.tri'
    bad.write_text('tets 1\n0: 0/0132 - - -\n')
    code, out, _ = run('validate', str(bad))
    assert code == 4
    assert out.startswith('invalid:')


def test_unparseable_file_is_a_parse_error(run, tmp_path):
    junk = tmp_path / 'junk.tri'
    junk.write_text('not a gluing table\n')
    code, out, err = run('validate', str(junk))
    assert code == 3
    assert out == ''
    assert err.startswith('error:')


def test_missing_file_is_a_parse_error(run, tmp_path):
    code, _, err = run('validate', str(tmp_path / 'absent.tri'))
    assert code == 3
    assert 'cannot read' in err


def test_skeleton_counts(run, tri_file):
    code, out, _ = run('skeleton', tri_file('two_tet_sphere'))
    assert code == 0
    assert out.splitlines() == [
        'tetrahedra 2',
        'faces 4 (0 boundary)',
        'edges 6',
        'vertices 4',
        'boundary components 0',
        'euler characteristic 0',
    ]


def test_homology_of_a_lens_space(run, tri_file):
    code, out, _ = run('homology', tri_file('lens_three'))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == 'H1 = Z/3'
    assert 'torsion: 3' in lines


# -- moves ----------------------------------------------------------------

def test_moves_list_counts_legal_sites(run, tri_file):
    code, out, _ = run('moves', 'list', tri_file('one_tet'))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == '%d legal moves' % (len(lines) - 1)
    assert 'M14 tet=0' in lines


def test_moves_apply_prints_the_new_table(run, tri_file):
    code, out, _ = run('moves', 'apply', tri_file('one_tet'), 'M14 tet=0')
    assert code == 0
    assert loads(out).size == 4


def test_moves_apply_rejects_an_illegal_site(run, tri_file):
    code, _, err = run('moves', 'apply', tri_file('one_tet'),
                       'M41 tet=0 vertex=0')
    assert code == 4
    assert 'M41' in err


def test_moves_apply_rejects_a_malformed_move(run, tri_file):
    code, _, err = run('moves', 'apply', tri_file('one_tet'), 'wiggle hard')
    assert code == 3
    assert err.startswith('error:')


def test_walk_replay_validate_pipeline(run, tri_file, tmp_path):
    source = tri_file('lens_three')
    code, record, _ = run('moves', 'walk', source, '6', '--seed', '3')
    assert code == 0
    assert len(record.splitlines()) == 6
    record_path = tmp_path / 'walk.rec'
    record_path.write_text(record)

    code, table, _ = run('moves', 'replay', source, str(record_path))
    assert code == 0
    end_path = tmp_path / 'end.tri'
    end_path.write_text(table)

    code, out, _ = run('validate', str(end_path))
    assert code == 0
    assert out.startswith('valid')


def test_walks_are_seed_deterministic(run, tri_file):
    source = tri_file('two_tet_sphere')
    first = run('moves', 'walk', source, '8', '--seed', '5')
    second = run('moves', 'walk', source, '8', '--seed', '5')
    other = run('moves', 'walk', source, '8', '--seed', '6')
    assert first == second
    assert first[1] != other[1]


def test_walk_respects_the_tetrahedron_ceiling(run, tri_file):
    code, out, _ = run('moves', 'walk', tri_file('one_tet'), '10',
                       '--seed', '1', '--max-tets', '4',
                       '--format', 'structured')
    assert code == 0
    doc = json.loads(out)
    assert all(size <= 4 for size in doc['data']['sizes'])


# -- surfaces --------------------------------------------------------------

def test_matching_system_dimensions(run, tri_file):
    code, out, _ = run('surfaces', 'matching', tri_file('two_tet_sphere'))
    assert code == 0
    assert out.splitlines() == ['coordinates 14', 'interior faces 4',
                                'equations 12']


def test_enum_vertex_table(run, tri_file):
    code, out, _ = run('surfaces', 'enum-vertex', tri_file('two_tet_sphere'))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ('index | coords-max | chi | class | vertex? | '
                        'fundamental?')
    assert len(lines) == 8
    assert all(line.split(' | ')[5] in ('yes', 'no') for line in lines[1:])


def test_one_sided_rays_are_not_vertex_surfaces(run, tri_file):
    code, out, _ = run('surfaces', 'enum-vertex', tri_file('solid_torus'),
                       '--format', 'structured')
    assert code == 0
    rows = json.loads(out)['data']['surfaces']
    sides = {row['class']: row['vertex'] for row in rows}
    assert sides['moebius-band'] == 'no'
    assert sides['annulus'] == 'yes'


def test_enum_vertex_leaves_unguarded_columns_open(run, tri_file):
    code, out, _ = run('surfaces', 'enum-vertex', tri_file('four_tet_ball'))
    assert code == 0
    for line in out.splitlines()[1:]:
        assert line.split(' | ')[5] == '?'


def test_enum_fundamental_guard_refuses_large_input(run, tri_file):
    code, _, err = run('surfaces', 'enum-fundamental',
                       tri_file('four_tet_ball'))
    assert code == 5
    assert 'guarded at 3 tetrahedra (file has 4)' in err


def test_enum_fundamental_guard_lifts_with_max_tets(run, tri_file):
    code, out, _ = run('surfaces', 'enum-fundamental',
                       tri_file('four_tet_ball'), '--max-tets', '4')
    assert code == 0
    assert len(out.splitlines()) > 1


def test_enum_vertex_guard_refuses_when_lowered(run, tri_file):
    code, _, err = run('surfaces', 'enum-vertex', tri_file('two_tet_sphere'),
                       '--max-tets', '1')
    assert code == 5
    assert err.startswith('error:')


def test_verify_bounds_reports_margins(run, tri_file):
    code, out, _ = run('surfaces', 'verify-bounds', tri_file('two_tet_sphere'))
    assert code == 0
    assert out.splitlines() == [
        't=2',
        'vertex surfaces: 7, max coordinate 1 <= 16384 (margin 16383)',
        'fundamental surfaces: 7, max coordinate 1 <= 229376 '
        '(margin 229375)',
    ]


def test_classify_names_the_components(run, tri_file, surface_file):
    surface = surface_file('two_tet_sphere', 2,
                           [1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0])
    code, out, _ = run('surfaces', 'classify', tri_file('two_tet_sphere'),
                       surface)
    assert code == 0
    lines = out.splitlines()
    assert 'class=sphere' in lines[0]
    assert lines[-1] == 'total: chi=2 weight=3 components=1'


def test_classify_rejects_an_inadmissible_vector(run, tri_file, surface_file):
    surface = surface_file('two_tet_sphere', 2,
                           [0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0])
    code, _, err = run('surfaces', 'classify', tri_file('two_tet_sphere'),
                       surface)
    assert code == 4
    assert 'not admissible' in err


def test_sum_emits_a_surface_file(run, tri_file, surface_file):
    link = surface_file('two_tet_sphere', 2,
                        [1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0])
    code, out, _ = run('surfaces', 'sum', tri_file('two_tet_sphere'),
                       link, link)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == 'surface over two_tet_sphere.tri t=2'
    assert lines[1].split() == ['2', '0', '0', '0', '0', '0', '0']
    assert lines[2] == lines[1]


def test_sum_rejects_incompatible_quads(run, tri_file, surface_file):
    left = surface_file('left', 1, [0, 0, 0, 0, 1, 0, 0])
    right = surface_file('right', 1, [0, 0, 0, 0, 0, 1, 0])
    code, _, err = run('surfaces', 'sum', tri_file('one_tet'), left, right)
    assert code == 4
    assert err.startswith('error:')


# -- subdivide and realize --------------------------------------------------

def test_subdivide_writes_certified_artifacts(run, tri_file, tmp_path,
                                              surface_file):
    quad = surface_file('one_tet', 1, [0, 0, 0, 0, 1, 0, 0])
    out_tri = tmp_path / 'sub.tri'
    out_emb = tmp_path / 'sub.emb'
    code, out, _ = run('subdivide', tri_file('one_tet'), quad,
                       '--out-triangulation', str(out_tri),
                       '--out-embedding', str(out_emb))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ('subdivided along 1 discs: 1 -> 16 tetrahedra '
                        '(bound 40)')
    assert lines[2].startswith('certified:')

    code, out, _ = run('validate', str(out_tri))
    assert code == 0
    assert out == 'valid, 12 boundary faces\n'
    assert out_emb.read_text().startswith('# 1 discs embedded in 16')


def test_realize_prints_a_replayable_record(run, tri_file, tmp_path,
                                            surface_file):
    corner = surface_file('one_tet', 1, [1, 0, 0, 0, 0, 0, 0])
    source = tri_file('one_tet')
    code, record, _ = run('realize', source, corner)
    assert code == 0
    record_path = tmp_path / 'realize.rec'
    record_path.write_text(record)
    code, table, _ = run('moves', 'replay', source, str(record_path))
    assert code == 0
    assert loads(table).size == 12


def test_realize_refuses_a_starved_budget(run, tri_file, surface_file):
    corner = surface_file('one_tet', 1, [1, 0, 0, 0, 0, 0, 0])
    code, _, err = run('realize', tri_file('one_tet'), corner,
                       '--budget', '3')
    assert code == 5
    assert 'realization refused' in err


# -- bounds ------------------------------------------------------------------

def test_bounds_eval_small_tower(run):
    code, out, _ = run('bounds', 'eval', '(e 2 3)')
    assert code == 0
    assert out == '256\n'


def test_bounds_eval_with_binding(run):
    code, out, _ = run('bounds', 'eval', '(* 10 p)', '--bind', 'p=3')
    assert code == 0
    assert out == '30\n'


def test_bounds_eval_unbound_variable(run):
    code, _, err = run('bounds', 'eval', '(* 10 p)')
    assert code == 3
    assert 'p' in err


def test_bounds_eval_refuses_past_the_bit_ceiling(run):
    code, _, err = run('bounds', 'eval', '(e 3 10)')
    assert code == 5
    assert 'no exact value within' in err


def test_bounds_eval_malformed_expression(run):
    code, _, err = run('bounds', 'eval', '(e 2')
    assert code == 3
    assert err.startswith('error:')


def test_bounds_compare_without_expanding(run):
    code, out, _ = run('bounds', 'compare', '(e 2 100)', '(e 3 100)')
    assert code == 0
    assert out == 'less\n'


def test_bounds_compare_with_bindings(run):
    code, out, _ = run('bounds', 'compare', '(* 2 n)', '(+ n n)',
                       '--bind', 'n=7')
    assert code == 0
    assert out == 'equal\n'


def test_bounds_catalogue_lists_named_expressions(run):
    code, out, _ = run('bounds', 'catalogue')
    assert code == 0
    lines = out.splitlines()
    assert 'main_bound = (+ (e 6 (* 10 p)) (e 6 (* 10 q)))' in lines
    assert all(' = (' in line or ' = ' in line for line in lines)
    assert len(lines) == 13


# -- connect ------------------------------------------------------------------

def test_connect_identical_tables(run, tri_file):
    source = tri_file('lens_three')
    code, out, _ = run('connect', source, source)
    assert code == 0
    assert out.splitlines() == [
        'path of length 0, within bound '
        '(0 vs (+ (e 6 (* 10 2)) (e 6 (* 10 2))))']


def test_connect_finds_a_short_path(run, tri_file, tmp_path):
    source = tri_file('lens_three')
    code, table, _ = run('moves', 'apply', source, 'M23 tet=0 face=2')
    assert code == 0
    goal = tmp_path / 'goal.tri'
    goal.write_text(table)
    code, out, _ = run('connect', source, str(goal))
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith('path of length 1, within bound')
    assert lines[1] == 'M23 tet=0 face=2'


def test_connect_rejects_mismatched_endpoints(run, tri_file):
    code, _, err = run('connect', tri_file('one_tet'),
                       tri_file('two_tet_sphere'))
    assert code == 4
    assert 'move-invariant property' in err


def test_connect_refuses_at_the_depth_ceiling(run, tri_file, tmp_path):
    source = tri_file('one_tet')
    code, table, _ = run('moves', 'apply', source, 'M14 tet=0', 'M14 tet=0')
    assert code == 0
    goal = tmp_path / 'far.tri'
    goal.write_text(table)
    code, _, err = run('connect', source, str(goal), '--max-depth', '1')
    assert code == 5
    assert 'depth ceiling 1 reached' in err


# -- report formats, environment, exit codes ----------------------------------

def test_structured_format_wraps_the_report(run, tri_file):
    code, out, _ = run('validate', tri_file('one_tet'),
                       '--format', 'structured')
    assert code == 0
    doc = json.loads(out)
    assert doc == {'command': 'validate', 'ok': True, 'exit': 0,
                   'report': ['valid, 4 boundary faces'],
                   'data': {'valid': True, 'boundary_faces': 4}}


def test_structured_format_wraps_errors_too(run, tmp_path):
    junk = tmp_path / 'junk.tri'
    junk.write_text('nonsense\n')
    code, out, err = run('validate', str(junk), '--format', 'structured')
    assert code == 3
    assert err.startswith('error:')
    doc = json.loads(out)
    assert doc['ok'] is False
    assert doc['category'] == 'parse'


def test_format_env_variable_is_honoured(run, tri_file, monkeypatch):
    monkeypatch.setenv('PACHNER_FORMAT', 'structured')
    code, out, _ = run('validate', tri_file('one_tet'))
    assert code == 0
    assert json.loads(out)['ok'] is True


def test_flags_override_the_environment(run, tri_file, monkeypatch):
    monkeypatch.setenv('PACHNER_FORMAT', 'structured')
    code, out, _ = run('validate', tri_file('one_tet'), '--format', 'text')
    assert code == 0
    assert out == 'valid, 4 boundary faces\n'


def test_seed_env_variable_is_honoured(run, tri_file, monkeypatch):
    source = tri_file('two_tet_sphere')
    monkeypatch.setenv('PACHNER_SEED', '5')
    from_env = run('moves', 'walk', source, '8')
    monkeypatch.delenv('PACHNER_SEED')
    from_flag = run('moves', 'walk', source, '8', '--seed', '5')
    assert from_env == from_flag


def test_bad_env_value_is_a_usage_error(run, tri_file, monkeypatch):
    monkeypatch.setenv('PACHNER_SEED', 'lots')
    code, _, err = run('moves', 'walk', tri_file('one_tet'), '2')
    assert code == 2
    assert 'PACHNER_SEED' in err


def test_jobs_hint_does_not_change_results(run, tri_file):
    source = tri_file('solid_torus')
    serial = run('surfaces', 'enum-vertex', source, '--jobs', '1')
    parallel = run('surfaces', 'enum-vertex', source, '--jobs', '4')
    assert serial == parallel


def test_nonpositive_jobs_is_a_usage_error(run, tri_file):
    code, _, err = run('validate', tri_file('one_tet'), '--jobs', '0')
    assert code == 2
    assert 'jobs' in err


def test_unknown_command_exits_with_usage(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(['frobnicate'])
    assert excinfo.value.code == 2
    capsys.readouterr()


def test_console_script_is_installed(tri_file):
    completed = subprocess.run(
        [sys.executable, '-m', 'pachner.cli', 'validate',
         tri_file('one_tet')],
        capture_output=True, text=True)
    assert completed.returncode == 0
    assert completed.stdout == 'valid, 4 boundary faces\n'
