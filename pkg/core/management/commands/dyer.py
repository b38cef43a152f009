import csv
import io
import json
import logging

from django.core.management.base import BaseCommand, CommandError

from analysis.continuity import continuity_experiment
from analysis.monotonicity import check_monotonicity
from analysis.rates import growth_rate
from analysis.serializers import load_family, parse_ks
from core.exceptions import DyerError, InvalidDyerGraph
from graphs.classification import classify_dyer
from graphs.conversions import (
    graph_to_matrix, induced_coxeter_graph, matrix_problems, matrix_to_graph, validate_graph,
)
from graphs.serializers import dump_graph, dump_matrix, load_graph, load_matrix
from series.growth import growth_series, series_coefficients
from words.enumeration import ball, marking_agreement_radius
from words.parsing import format_word, parse_word
from words.rewriting import normal_form
from words.serializers import dump_normal_form, load_word

APP_LOGGERS = ('core', 'graphs', 'words', 'series', 'analysis')
TABULAR = ('ball', 'coeffs', 'converge')
DEFAULT_MAX = {'compare': 15, 'distance': 6}


def _json(data) -> str:
    return json.dumps(data, separators=(',', ':'))


def _rows(rows) -> str:
    out = io.StringIO()
    csv.writer(out, lineterminator='\n').writerows(rows)
    return out.getvalue().rstrip('\n')


def _is_matrix(data) -> bool:
    return isinstance(data, list) or (isinstance(data, dict) and 'entries' in data)


class Command(BaseCommand):
    help = 'Exact computations on marked Dyer systems: words, growth series and growth rates.'

    ACTIONS = (
        'validate', 'classify', 'matrix', 'induce', 'nf', 'wordlen', 'ball',
        'series', 'coeffs', 'rate', 'compare', 'distance', 'converge',
    )

    def add_arguments(self, parser):
        parser.add_argument('action', choices=self.ACTIONS)
        parser.add_argument('--graph', help='Dyer graph JSON file (a Dyer matrix is accepted too)')
        parser.add_argument('--graph2', help='second graph for compare and distance')
        parser.add_argument('--max', type=int, dest='m_max', help='largest length or degree')
        parser.add_argument('--tol', help='root isolation tolerance, e.g. 1e-12')
        parser.add_argument('--digits', type=int, default=15, help='decimal places printed for tau bounds')
        parser.add_argument('--format', choices=('json', 'csv', 'text'), default='json')
        parser.add_argument('--budget', type=int, help='cap on BFS states and rewriting closures')
        parser.add_argument('--word', help='word as "s1^3 s2^-1" or a JSON list of [id, exp] pairs')
        parser.add_argument('--family', help='family JSON file for converge')
        parser.add_argument('--ks', help='increasing parameters for converge, e.g. 7,8,10')

    def handle(self, *args, **options):
        if options['verbosity'] >= 2:
            for name in APP_LOGGERS:
                logging.getLogger(name).setLevel(logging.DEBUG)
        action = options['action']
        if options['format'] == 'csv' and action not in TABULAR:
            raise CommandError(f"--format csv is only available for {', '.join(TABULAR)}", returncode=2)
        if options['budget'] is not None and options['budget'] < 1:
            raise CommandError('--budget must be positive', returncode=2)
        if not 1 <= options['digits'] <= 50:
            raise CommandError('--digits must be between 1 and 50', returncode=2)
        if options['m_max'] is not None and options['m_max'] < 0:
            raise CommandError('--max must not be negative', returncode=2)
        self.options = options
        try:
            output = getattr(self, f'do_{action}')()
        except DyerError as exc:
            raise CommandError(str(exc), returncode=exc.exit_code) from exc
        self.stdout.write(output)

    # input

    def require(self, name: str):
        value = self.options[name]
        if value is None:
            raise CommandError(f"{self.options['action']} needs --{name.replace('_', '-')}", returncode=2)
        return value

    def read_json(self, flag: str):
        path = self.require(flag)
        try:
            with open(path, encoding='utf-8') as handle:
                return json.load(handle)
        except OSError as exc:
            raise CommandError(f"cannot read {path}: {exc.strerror}", returncode=2) from exc
        except json.JSONDecodeError as exc:
            raise InvalidDyerGraph(f"{path} is not valid JSON: {exc}") from exc

    def graph(self, flag: str = 'graph'):
        data = self.read_json(flag)
        if _is_matrix(data):
            return matrix_to_graph(load_matrix(data))
        return load_graph(data)

    def word(self, g):
        text = self.require('word')
        if text.lstrip().startswith('['):
            try:
                return load_word(g, json.loads(text))
            except json.JSONDecodeError:
                pass
        return parse_word(g, text)

    def m_max(self, default: int = 10) -> int:
        value = self.options['m_max']
        return DEFAULT_MAX.get(self.options['action'], default) if value is None else value

    @property
    def digits(self) -> int:
        return self.options['digits']

    @property
    def text(self) -> bool:
        return self.options['format'] == 'text'

    # actions

    def do_validate(self):
        data = self.read_json('graph')
        if _is_matrix(data):
            errors = matrix_problems(load_matrix(data))
        else:
            errors = list(validate_graph(load_graph(data, strict=False)).errors)
        if self.text:
            output = '\n'.join(errors) or 'valid'
        else:
            output = _json({'valid': not errors, 'errors': errors})
        if errors:
            self.stdout.write(output)
            raise CommandError(f'{len(errors)} problem(s) found', returncode=1)
        return output

    def do_classify(self):
        verdict = classify_dyer(self.graph())
        if self.text:
            parts = [f"{c.label} {{{','.join(c.vertices)}}}" for c in verdict.components]
            return f"{verdict.kind.label}: {' x '.join(parts) or 'trivial'}"
        return _json({
            'kind': verdict.kind.label,
            'components': [{'vertices': list(c.vertices), 'type': c.label} for c in verdict.components],
        })

    def do_matrix(self):
        data = self.read_json('graph')
        if _is_matrix(data):
            return _json(dump_graph(matrix_to_graph(load_matrix(data))))
        matrix = graph_to_matrix(load_graph(data))
        if self.text:
            return '\n'.join(' '.join(str(x) for x in row) for row in matrix.entries)
        return _json(dump_matrix(matrix)['entries'])

    def do_induce(self):
        lam, generator_map = induced_coxeter_graph(self.graph())
        return _json({
            'graph': dump_graph(lam),
            'generator_map': {v: list(image) for v, image in generator_map.items()},
        })

    def do_nf(self):
        g = self.graph()
        nf = normal_form(g, self.word(g), self.options['budget'])
        if self.text:
            return format_word(g, nf.word)
        return _json(dump_normal_form(g, nf))

    def do_wordlen(self):
        g = self.graph()
        return str(normal_form(g, self.word(g), self.options['budget']).word_length)

    def do_ball(self):
        table = ball(self.graph(), self.m_max(), budget=self.options['budget'])
        if self.options['format'] == 'csv':
            return _rows(enumerate(table.a))
        if self.text:
            lines = [f'{m:>4} {a:>12} {b:>12}' for m, (a, b) in enumerate(zip(table.a, table.b))]
            return '\n'.join([f"{'m':>4} {'a(m)':>12} {'b(m)':>12}", *lines])
        return _json({'a': list(table.a), 'b': list(table.b), 'order': table.order})

    def do_series(self):
        f = growth_series(self.graph())
        return str(f) if self.text else _json(f.to_json())

    def do_coeffs(self):
        table = series_coefficients(growth_series(self.graph()), self.m_max())
        if self.options['format'] == 'csv':
            return _rows(enumerate(table.a))
        if self.text:
            return ' '.join(str(a) for a in table.a)
        return _json({'a': list(table.a), 'b': list(table.b)})

    def do_rate(self):
        result = growth_rate(self.graph(), self.options['tol'])
        if self.text:
            data = result.to_json(self.digits)
            return f"[{data['tau_lower']}, {data['tau_upper']}] {data.get('classification', '')}".rstrip()
        return _json(result.to_json(self.digits))

    def do_compare(self):
        verdict = check_monotonicity(self.graph(), self.graph('graph2'), m_max=self.m_max(), tol=self.options['tol'])
        if self.text:
            status = 'holds' if verdict.holds else 'FAILS'
            return f"a(m) <= a'(m) {status}; margins {' '.join(str(x) for x in verdict.margins)}"
        return _json(verdict.to_json(self.digits))

    def do_distance(self):
        r_max = self.m_max()
        radius = marking_agreement_radius(self.graph(), self.graph('graph2'), r_max, self.options['budget'])
        if self.text:
            return f'R = {radius}' + ('' if radius < r_max else f' (no disagreement up to {r_max})')
        return _json({'radius': radius, 'r_max': r_max, 'distance_bound': f'e^-{radius}'})

    def do_converge(self):
        family = load_family(self.read_json('family'))
        report = continuity_experiment(family, parse_ks(self.require('ks')), self.options['tol'])
        if self.options['format'] == 'csv':
            return report.to_csv(self.digits).rstrip('\n')
        if self.text:
            return '\n'.join(
                f"k={r.k:<6} tau in [{t['tau_lower']}, {t['tau_upper']}]"
                for r, t in ((r, r.tau.to_json(self.digits)) for r in report.rows)
            )
        return _json(report.to_json(self.digits))
