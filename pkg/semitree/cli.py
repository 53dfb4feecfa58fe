"""semitree command line utility.

Subcommands:
 - analyze: Green structure, J-heights and expansion sizes of a monoid.
 - embed-verify: length tables, Chiswell trees and the Zeiger embedding,
   every check reported with a witness.
 - export-dot: the Chiswell tree of a length table (or a uniformly
   branching tree) in DOT format.

Exit codes: 0 success, 1 failed verification, 2 bad input.
"""
import argparse
import datetime
import json
import logging
import random
import sys
from collections import OrderedDict, namedtuple

import numpy as np

from .elliptic import build_uniform_tree, chiswell_build, d_chi, to_dot
from .exceptions import BurnsideError, InputError, MonoidError, \
    SemitreeError
from .length import check_length_axioms, dedekind_forward, \
    dedekind_inverse, h_table, holonomy_table_from_weights, \
    null_weight, random_heights, unit_weight
from .monoid import FiniteMonoid, adjoin_identity, compute_green, \
    is_stable, j_height, w_set
from .rhodes import build_rh, build_rh_y, burnside_identity_check, \
    check_expansion_properties, phi3_build
from .zeiger import embedding_generators, local_permutation_groups, \
    verify_embedding, zeiger_embed

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

DEFAULT_SEED = 20170401

MonoidFile = namedtuple('MonoidFile', ['monoid', 'identity_law'])


def _parse_generators(doc, kind):
    generators = doc.get('generators', [])
    if not isinstance(generators, list):
        raise InputError("'generators' must be a list")
    parsed = []
    for n, entry in enumerate(generators):
        label = str(entry.get('label', 'g%s' % n))
        field = 'images' if kind == 'transformations' else 'element'
        if field not in entry:
            raise InputError("Generator %s has no '%s'" % (label, field),
                             witness=label)
        value = entry[field]
        if kind == 'transformations':
            if not isinstance(value, list) or \
                    not all(isinstance(x, int) for x in value):
                raise InputError("Generator %s: images must be a list of "
                                 "integers" % label, witness=label)
        elif not isinstance(value, int):
            raise InputError("Generator %s: element must be an integer"
                             % label, witness=label)
        parsed.append((label, value))
    return parsed


def parse_monoid(doc):
    """Build a MonoidFile from a decoded JSON document."""
    if not isinstance(doc, dict):
        raise InputError("A monoid document must be a JSON object")
    kind = doc.get('kind')
    try:
        if kind == 'transformations':
            monoid = FiniteMonoid.from_generators(
                int(doc.get('domain_size', 0)),
                _parse_generators(doc, kind))
        elif kind == 'table':
            names = doc.get('names')
            monoid = FiniteMonoid.from_table(
                doc['table'], int(doc.get('identity', 0)),
                _parse_generators(doc, kind), names)
        else:
            raise InputError("Unknown monoid kind %r" % (kind,))
    except MonoidError as e:
        raise InputError(str(e), witness=e.witness)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError("Malformed monoid document: %s" % e)
    law = None
    if 'p' in doc or 'q' in doc:
        try:
            law = (int(doc['p']), int(doc['q']))
        except (KeyError, TypeError, ValueError):
            raise InputError("Both p and q are needed for x^(p+q) = x^p")
        if law[0] < 0 or law[1] < 1:
            raise InputError("Need p >= 0 and q >= 1, got %s, %s" % law)
    return MonoidFile(monoid, law)


def load_monoid_file(path):
    """Read a UTF-8 JSON monoid document."""
    try:
        with open(path, encoding='utf-8') as f:
            doc = json.load(f)
    except OSError as e:
        raise InputError("Cannot read %s: %s" % (path, e.strerror))
    except json.JSONDecodeError as e:
        raise InputError("%s: line %s, column %s: %s"
                         % (path, e.lineno, e.colno, e.msg),
                         witness=(e.lineno, e.colno))
    logging.info("Loaded monoid document %s" % path)
    return parse_monoid(doc)


def dump_table(monoid):
    """Return the canonical table document of a monoid."""
    return OrderedDict([
        ('kind', 'table'),
        ('identity', monoid.identity),
        ('names', list(monoid.names)),
        ('generators', [OrderedDict([('label', label),
                                     ('element', element)])
                        for label, element in monoid.generators]),
        ('table', monoid.table.tolist()),
    ])


def _plain(value):
    """Turn numpy scalars and tuples into JSON friendly values."""
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (tuple, list, set, frozenset)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return dict((str(k), _plain(v)) for k, v in value.items())
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return str(value)


class Report(object):
    """Named sections of values and checks."""

    def __init__(self, title):
        """Start an empty report."""
        self.title = title
        self.sections = OrderedDict()

    def _section(self, name):
        return self.sections.setdefault(name, OrderedDict(
            [('values', OrderedDict()), ('checks', OrderedDict())]))

    def add(self, section, key, value):
        """Record a value."""
        self._section(section)['values'][key] = value

    def check(self, section, name, witness):
        """Record a check that passed iff witness is None."""
        self._section(section)['checks'][name] = (witness is None, witness)
        if witness is not None:
            logging.debug("Check %s/%s failed at %s"
                          % (section, name, witness))

    def add_axioms(self, section, axiom_report):
        """Copy every entry of an AxiomReport."""
        for name, (_, witness) in axiom_report.results.items():
            self.check(section, name, witness)

    @property
    def passed(self):
        """Return True if every check passed."""
        return all(ok for section in self.sections.values()
                   for ok, _ in section['checks'].values())

    def as_dict(self):
        """Return the machine-readable form."""
        doc = OrderedDict([('title', self.title), ('passed', self.passed)])
        for name, section in self.sections.items():
            doc[name] = OrderedDict(
                [('values', _plain(section['values'])),
                 ('checks', dict((k, {'passed': ok,
                                      'witness': _plain(witness)})
                                 for k, (ok, witness)
                                 in section['checks'].items()))])
        return doc

    def pretty(self):
        """Return the human-readable form."""
        lines = ['== %s ==' % self.title]
        for name, section in self.sections.items():
            lines.append('[%s]' % name)
            for key, value in section['values'].items():
                lines.append('  %s: %s' % (key, _plain(value)))
            for key, (ok, witness) in section['checks'].items():
                if ok:
                    lines.append('  %s: PASS' % key)
                else:
                    lines.append('  %s: FAIL %s' % (key, _plain(witness)))
        lines.append('result: %s' % ('PASS' if self.passed else 'FAIL'))
        return '\n'.join(lines)


def _check_identity_law(report, doc, rh):
    if doc.identity_law is None:
        return
    p, q = doc.identity_law
    try:
        ok = burnside_identity_check(rh, p, q)
        report.check('identity', 'x^%s = x^%s on Rh_Y' % (p + q, p),
                     None if ok else (p, q))
    except BurnsideError as e:
        report.check('identity', 'x^%s = x^%s on M' % (p + q, p),
                     doc.monoid.names[e.witness])


def cmd_analyze(path, args):
    """Summarise the Green structure and the expansions of a monoid."""
    doc = load_monoid_file(path)
    monoid = doc.monoid
    report = Report('analyze %s' % path)
    base = adjoin_identity(monoid)
    green = compute_green(base)
    heights = j_height(base, green)
    report.add('monoid', '|M|', monoid.size)
    report.add('monoid', '|M^I|', base.size)
    report.add('monoid', 'generators', [label for label, _
                                        in monoid.generators])
    report.add('green', 'J-classes', [[base.names[m] for m in c]
                                      for c in green.J_classes])
    report.add('green', 'L-classes', len(green.L_classes))
    report.add('green', 'R-classes', len(green.R_classes))
    report.add('green', 'H-classes', len(green.H_classes))
    report.add('green', 'max h_J', int(heights.max()))
    report.add('green', 'h_J', dict((base.names[m], int(heights[m]))
                                    for m in range(base.size)))
    report.add('green', 'W(M^I)', sorted(base.names[m]
                                         for m in w_set(base, green)))
    stable, witness = is_stable(base, green)
    report.check('green', 'stable', None if stable else witness)

    rh = build_rh(base, green)
    generators = embedding_generators(monoid)
    rh_y = build_rh_y(base, generators, green)
    report.add('expansions', '|Rh(M^I)|', rh.size)
    report.add('expansions', '|Rh_Y(M^I)|', rh_y.size)
    for name, (ok, witness) in check_expansion_properties(rh).items():
        report.check('expansions', name, None if ok else witness)
    if args.phi3:
        phi3 = phi3_build(monoid, generators)
        report.add('expansions', '|Phi_3|', phi3.size)
    _check_identity_law(report, doc, rh_y)

    if args.dump_table:
        print(json.dumps(dump_table(monoid), indent=2))
    return report


def _dedekind_round_trips(report, green, seed, rounds=100):
    rng = random.Random(seed)
    report.add('dedekind', 'seed', seed)
    witness = None
    for n in range(rounds):
        h = random_heights(green, rng)
        if dedekind_forward(dedekind_inverse(green, h)) != h:
            witness = (n, h)
            break
    report.check('dedekind', 'round trip', witness)


def _chiswell_round_trip(report, section, D, rh):
    names = [rh.name(i) for i in range(rh.size)]
    chi = chiswell_build(D, rh.identity, names)
    back = d_chi(chi)
    diff = np.argwhere(back.values != D.values)
    report.check(section, 'd_chi round trip',
                 tuple(int(i) for i in diff[0]) if len(diff) else None)
    report.check(section, 'strongly faithful',
                 None if chi.is_strongly_faithful else 'not injective')
    report.add(section, 'tree vertices', chi.tree.size)


def cmd_embed_verify(path, args):
    """Run the length, tree and embedding checks on a monoid."""
    doc = load_monoid_file(path)
    monoid = doc.monoid
    report = Report('embed-verify %s' % path)
    base = adjoin_identity(monoid)
    green = compute_green(base)
    generators = embedding_generators(monoid)
    rh_y = build_rh_y(base, generators, green)
    _check_identity_law(report, doc, rh_y)

    _dedekind_round_trips(report, green, args.seed)

    rh = build_rh(base, green)
    weight = unit_weight(green) if args.weights == 'hj' \
        else null_weight(green)
    holonomy = holonomy_table_from_weights(rh, weight)
    report.add('holonomy', 'weights', args.weights)
    report.add_axioms('holonomy', check_length_axioms(holonomy, True))
    _chiswell_round_trip(report, 'holonomy', holonomy, rh)

    H = h_table(rh)
    report.add('H', 'depth', H.max_value)
    report.add_axioms('H', check_length_axioms(H, True))
    _chiswell_round_trip(report, 'H', H, rh)

    emb = zeiger_embed(monoid, generators)
    report.add('embedding', 'levels', emb.depth)
    report.add('embedding', 'alphabet sizes',
               [len(x) for x in emb.alphabets])
    report.add('embedding', 'local monoid orders',
               [len(m) for m in emb.local_monoids])
    report.add('embedding', 'permutation levels',
               dict((level, len(perms)) for level, perms
                    in local_permutation_groups(emb).items()))
    report.add_axioms('embedding', verify_embedding(emb, args.skip_recover))
    return report


def cmd_export_dot(path, args):
    """Return the DOT text of the requested tree."""
    if args.uniform:
        tree = build_uniform_tree(args.uniform)
    else:
        if path is None:
            raise InputError("export-dot needs a monoid file or --uniform")
        monoid = load_monoid_file(path).monoid
        base = adjoin_identity(monoid)
        green = compute_green(base)
        rh = build_rh(base, green)
        if args.tree == 'h':
            D = h_table(rh)
        else:
            weight = unit_weight(green) if args.tree == 'hj' \
                else null_weight(green)
            D = holonomy_table_from_weights(rh, weight)
        names = [rh.name(i) for i in range(rh.size)]
        tree = chiswell_build(D, rh.identity, names).tree
    return to_dot(tree, labels=args.labels, depth_cap=args.depth_cap)


def branching_type(x):
    """Validate a list n_l,...,n_1 of positive branching numbers."""
    try:
        values = [int(n) for n in x.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError("Branching must look like 3,2")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("Branching numbers must be "
                                         "positive.")
    return values


def non_negative_type(x):
    """Validate a non-negative integer."""
    x = int(x)
    if x < 0:
        raise argparse.ArgumentTypeError("Value must be at least 0.")
    return x


def build_parser():
    """Return the argument parser."""
    parser = argparse.ArgumentParser(prog='semitree')
    parser.add_argument("-D", "--debug", action="store_true", default=False,
                        help="Logs extra debug data to log.")
    parser.add_argument("-l", "--log", action="store_true", default=False,
                        help="Log information to log file "
                        "yyyy-mm-dd.hh:mm:ss-semitree.log")
    parser.add_argument("--json", action="store_true", default=False,
                        help="Print the machine-readable report.")
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    analyze = sub.add_parser('analyze', help="Summarise a monoid.")
    analyze.add_argument('file')
    analyze.add_argument("--phi3", action="store_true", default=False,
                         help="Also build the Phi_3 expansion.")
    analyze.add_argument("--dump-table", action="store_true",
                         default=False,
                         help="Print the monoid as a table document.")

    verify = sub.add_parser('embed-verify',
                            help="Verify lengths, trees and the embedding.")
    verify.add_argument('file')
    verify.add_argument("--skip-recover", action="store_true",
                        default=False,
                        help="Skip comparing the wreath length with H.")
    verify.add_argument("--seed", type=non_negative_type,
                        default=DEFAULT_SEED,
                        help="Seed of the randomised checks, default: %s"
                        % DEFAULT_SEED)
    verify.add_argument("--weights", choices=['hj', 'null'], default='hj',
                        help="Weights of the Holonomy table, default: hj")

    dot = sub.add_parser('export-dot', help="Print a tree in DOT format.")
    dot.add_argument('file', nargs='?')
    dot.add_argument("--labels", action="store_true", default=False,
                     help="Label vertices with their classes.")
    dot.add_argument("--depth-cap", type=non_negative_type, default=None,
                     help="Only print levels up to this depth.")
    dot.add_argument("--uniform", type=branching_type, default=None,
                     help="Print T(n_l,...,n_1) instead, e.g. 3,2")
    dot.add_argument("--tree", choices=['h', 'null', 'hj'], default='h',
                     help="Length table of the tree, default: h")
    return parser


def setup_logging(args):
    """Configure console and optional file logging."""
    logLevel = logging.INFO
    if args.debug:
        logLevel = logging.DEBUG
    logger = logging.getLogger()
    logger.setLevel(logLevel)
    formatter = logging.Formatter(
        '%(asctime)s:%(name)s:%(levelname)s:%(message)s')
    ch = logging.StreamHandler()
    ch.setLevel(logLevel)
    ch.setFormatter(formatter)
    logger.addHandler(ch)
    if args.log:
        logFilename = '{0:%Y-%m-%d.%H:%M:%S-semitree.log}'.format(
            datetime.datetime.now())
        fh = logging.FileHandler(logFilename)
        fh.setLevel(logging.DEBUG)
        fh.setFormatter(formatter)
        logger.addHandler(fh)
    return logger


def main(argv=None):
    """Run the command line; return the exit code."""
    args = build_parser().parse_args(argv)
    logger = setup_logging(args)
    try:
        if args.command == 'export-dot':
            sys.stdout.write(cmd_export_dot(args.file, args))
            return EXIT_OK
        if args.command == 'analyze':
            report = cmd_analyze(args.file, args)
            if args.dump_table:
                return EXIT_OK
        else:
            report = cmd_embed_verify(args.file, args)
    except InputError as e:
        print("input error: %s" % e, file=sys.stderr)
        return EXIT_INPUT
    except SemitreeError as e:
        print("verification error: %s (witness: %s)" % (e, e.witness),
              file=sys.stderr)
        return EXIT_FAILED
    finally:
        for handler in list(logger.handlers):
            logger.removeHandler(handler)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        print(report.pretty())
    return EXIT_OK if report.passed else EXIT_FAILED
