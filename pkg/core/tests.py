import json
import re
import shlex
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from . import exceptions
from .cli import run

SAMPLES = settings.BASE_DIR / 'core' / 'samples'
EXAMPLE_BLOCK = re.compile(r'^```\n(\$ .*?)^```', re.M | re.S)


def readme_examples():
    """``(argv, expected stdout)`` for each ``$ python manage.py dyer`` example."""
    text = (settings.BASE_DIR / 'README.md').read_text(encoding='utf-8')
    examples = []
    for block in EXAMPLE_BLOCK.findall(text):
        for chunk in re.split(r'\n(?=\$ )', block.strip()):
            command, _, output = chunk.partition('\n')
            argv = shlex.split(command[2:])[3:]
            examples.append((argv, output.strip()))
    return examples


def sample(name):
    return str(SAMPLES / name)


def dyer(*argv):
    argv = [str(settings.BASE_DIR / a) if a.startswith('core/samples/') else a for a in argv]
    out, err = StringIO(), StringIO()
    call_command('dyer', *argv, stdout=out, stderr=err)
    return out.getvalue().strip()


class ReadmeExampleTests(SimpleTestCase):
    def test_examples_are_found(self):
        self.assertGreaterEqual(len(readme_examples()), 15)

    def test_every_example(self):
        for argv, expected in readme_examples():
            with self.subTest(argv=' '.join(argv)):
                self.assertEqual(dyer(*argv), expected)


class GoldenOutputTests(SimpleTestCase):
    def test_series_of_infinite_dihedral_group(self):
        self.assertEqual(dyer('series', '--graph', sample('dinfty.json')), '{"num":[1,1],"den":[1,-1]}')

    def test_rate_of_spherical_graph(self):
        data = json.loads(dyer('rate', '--graph', sample('a3.json')))
        self.assertEqual((data['tau_lower'], data['tau_upper']), ('1', '1'))
        self.assertEqual(data['classification'], 'Spherical')

    def test_ball_csv(self):
        self.assertEqual(dyer('ball', '--graph', sample('c5.json'), '--max', '3', '--format', 'csv'),
                         '0,1\n1,2\n2,2\n3,0')

    def test_triangle_rate_bracket(self):
        data = json.loads(dyer('rate', '--graph', sample('triangle237.json'), '--tol', '1e-12'))
        self.assertFalse(data['is_one'])
        self.assertTrue(1.176 < float(data['tau_lower']) <= float(data['tau_upper']) < 1.177)

    def test_digits_round_outward(self):
        data = json.loads(dyer('rate', '--graph', sample('triangle237.json'), '--digits', '3'))
        self.assertEqual((data['tau_lower'], data['tau_upper']), ('1.176', '1.177'))
        data = json.loads(dyer('rate', '--graph', sample('triangle237.json')))
        self.assertTrue(data['tau_lower'].startswith('1.17628081'))

    def test_compare_orders_triangles(self):
        data = json.loads(dyer('compare', '--graph', sample('triangle237.json'),
                               '--graph2', sample('triangle238.json'), '--max', '8'))
        self.assertTrue(data['holds'])
        self.assertTrue(data['tau_consistent'])
        self.assertEqual(data['witness'], {'v1': 'v1', 'v2': 'v2', 'v3': 'v3'})

    def test_converge_csv(self):
        lines = dyer('converge', '--family', sample('triangle_family.json'), '--ks', '7,10,15',
                     '--format', 'csv').splitlines()
        self.assertEqual(lines[0], 'k,tau_lower,tau_upper,gap')
        self.assertEqual([line.split(',')[0] for line in lines[1:]], ['7', '10', '15', 'inf'])
        uppers = [float(line.split(',')[2]) for line in lines[1:]]
        self.assertEqual(uppers, sorted(uppers))

    def test_word_as_json(self):
        data = json.loads(dyer('nf', '--graph', sample('c5.json'), '--word', '[["v1", 7]]'))
        self.assertEqual(data, {'word': [['v1', 2]], 'syllabic_length': 1, 'word_length': 2})

    def test_positional_generator_names(self):
        self.assertEqual(dyer('wordlen', '--graph', sample('a3.json'), '--word', 's1 s2 s1 s2'), '2')

    def test_text_ball_table(self):
        lines = dyer('ball', '--graph', sample('c5.json'), '--max', '2', '--format', 'text').splitlines()
        self.assertEqual(lines[0].split(), ['m', 'a(m)', 'b(m)'])
        self.assertEqual(lines[-1].split(), ['2', '2', '5'])


class ExitCodeTests(SimpleTestCase):
    def assertExit(self, code, *argv):
        with self.assertRaises(CommandError) as ctx:
            dyer(*argv)
        self.assertEqual(ctx.exception.returncode, code)
        return ctx.exception

    def test_domain_errors_exit_1(self):
        self.assertExit(1, 'series', '--graph', sample('broken.json'))
        self.assertExit(1, 'nf', '--graph', sample('a3.json'), '--word', 'x7')
        self.assertExit(1, 'compare', '--graph', sample('c5.json'), '--graph2', sample('c3.json'))
        self.assertExit(1, 'distance', '--graph', sample('c5.json'), '--graph2', sample('a3.json'))

    def test_invalid_graph_is_reported(self):
        out = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command('dyer', 'validate', '--graph', sample('broken.json'), stdout=out)
        self.assertEqual(ctx.exception.returncode, 1)
        report = json.loads(out.getvalue())
        self.assertFalse(report['valid'])
        self.assertEqual(len(report['errors']), 1)
        self.assertIn('must have weight inf', report['errors'][0])

    def test_usage_errors_exit_2(self):
        self.assertExit(2, 'series')
        self.assertExit(2, 'nf', '--graph', sample('a3.json'))
        self.assertExit(2, 'series', '--graph', sample('a3.json'), '--format', 'csv')
        self.assertExit(2, 'series', '--graph', sample('missing.json'))
        self.assertExit(2, 'converge', '--family', sample('triangle_family.json'))
        self.assertExit(2, 'rate', '--graph', sample('a3.json'), '--digits', '0')

    def test_budget_errors_exit_3(self):
        self.assertExit(3, 'ball', '--graph', sample('f2.json'), '--max', '6', '--budget', '50')
        with override_settings(DYER_RANK_CAP=2):
            self.assertExit(3, 'series', '--graph', sample('triangle237.json'))

    def test_exit_codes_follow_exception_classes(self):
        self.assertEqual(exceptions.InvalidDyerGraph.exit_code, 1)
        self.assertEqual(exceptions.RankMismatch.exit_code, 1)
        self.assertEqual(exceptions.ClosureBudgetExceeded.exit_code, 3)
        self.assertEqual(exceptions.RootBudgetExceeded.exit_code, 3)


class RunTests(SimpleTestCase):
    def run_quietly(self, argv):
        out, err = StringIO(), StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = run(argv)
        return code, out.getvalue(), err.getvalue()

    def test_success(self):
        code, out, _ = self.run_quietly(['classify', '--graph', sample('a3.json')])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['kind'], 'Spherical')

    def test_failures(self):
        self.assertEqual(self.run_quietly(['series', '--graph', sample('broken.json')])[0], 1)
        code, _, err = self.run_quietly(['no-such-action'])
        self.assertEqual(code, 2)
        self.assertIn('invalid choice', err)
        code, _, err = self.run_quietly(['ball', '--graph', sample('f2.json'), '--max', '6', '--budget', '50'])
        self.assertEqual(code, 3)
        self.assertTrue(err)
