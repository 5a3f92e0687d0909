"""Command-line driver: eigen tables, decompositions, certified connections, BFS scans.

Exit codes: 0 ok, 2 configuration or parse error, 3 resource error
(memory budget or series precision), 4 construction failure.
"""

import argparse
import csv
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .algebra import get_field, parse_rational
from .errors import (ConstructionFailure, FqDivError, InvalidArgument, PrecisionExhausted,
                     ResourceExhausted)

EXIT_OK, EXIT_CONFIG, EXIT_RESOURCE, EXIT_CONSTRUCTION = 0, 2, 3, 4


# helpers -------------------------------------------------------------------------------------
def _field(args):
    modulus = None
    if getattr(args, 'modulus', None):
        modulus = [int(c) for c in args.modulus.split(',')]
    return get_field(args.q, modulus)


def _fraction(s):
    try:
        v = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f'not a rational number: {s!r}')
    return v


def _eps(s):
    v = _fraction(s)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError('epsilon must lie strictly between 0 and 1')
    return v


def _open_out(path):
    if path in (None, '-'):
        return sys.stdout, False
    d = os.path.dirname(path)
    if d:
        os.makedirs(d, exist_ok=True)
    return open(path, 'w', newline=''), True


def _json_default(v):
    if isinstance(v, Fraction):
        return str(v)
    raise TypeError(f'cannot serialize {type(v).__name__}')


def _write_constants(path, section, values):
    """Merge ``values`` under ``section`` into the constants file."""
    data = {}
    if os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
    data[section] = values
    d = os.path.dirname(path)
    if d:
        os.makedirs(d, exist_ok=True)
    with open(path, 'w') as fh:
        json.dump(data, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write('\n')


def _constants_path(args):
    if args.constants:
        return args.constants
    if args.out and args.out != '-':
        return os.path.join(os.path.dirname(args.out) or '.', 'constants.json')
    return None


# subcommands ---------------------------------------------------------------------------------
def cmd_eigen(args):
    from .sol import anchor, banach_eigen
    F = _field(args)
    fh, own = _open_out(args.out)
    try:
        w = csv.writer(fh, lineterminator='\n')
        w.writerow(['anchor', 'exponent', 'coefficient'])
        for idx in args.anchor:
            e = banach_eigen(anchor(idx, F), args.K)
            lam = e.lam_plus
            for i in range(args.K):
                w.writerow([idx, -(lam.val + i), lam.coeffs[i] if i < len(lam.coeffs) else 0])
    finally:
        if own:
            fh.close()
    return EXIT_OK


def cmd_decompose(args):
    from .matgroup import GroupMatrix, decompose_elementary, decomposition_word, word_to_json
    F = _field(args)
    g = GroupMatrix.parse(args.matrix, F)
    if not g.is_polynomial():
        raise InvalidArgument('decompose needs entries in F_q[t]')
    g = g.to_poly()
    out = {'matrix': str(g),
           'factors': [[i, j, str(p)] for i, j, p in decompose_elementary(g)]}
    if args.s0:
        word = decomposition_word(g)
        out['word'] = json.loads(word_to_json(word))
        out['length'] = len(word)
    print(json.dumps(out))
    return EXIT_OK


def _connect_one(task):
    kind, q, modulus, g1s, g2s, eps = task
    from .matgroup import GroupMatrix
    F = get_field(q, modulus)
    if kind == 'connect':
        from .trajectories import external_connect
        return external_connect(GroupMatrix.parse(g1s, F, 'poly'),
                                GroupMatrix.parse(g2s, F, 'poly'), eps).to_dict()
    from .sarith import external_connect_s
    return external_connect_s(GroupMatrix.parse(g1s, F, 'laurent'),
                              GroupMatrix.parse(g2s, F, 'laurent'), eps=eps).to_dict()


def _connect_common(args, kind):
    from .matgroup import GroupMatrix
    from .trajectories import TrajectoryCertificate, fit_constants
    F = _field(args)
    modulus = tuple(F.modulus) if getattr(F, 'modulus', None) and F.k > 1 else None
    rng = random.Random(args.seed)
    ring = 'poly' if kind == 'connect' else 'laurent'
    pairs = []
    if args.g1 or args.g2:
        if not (args.g1 and args.g2):
            raise InvalidArgument('--g1 and --g2 go together')
        pairs.append((GroupMatrix.parse(args.g1, F, ring), GroupMatrix.parse(args.g2, F, ring)))
    else:
        if kind == 'connect':
            from .trajectories import random_element as sampler
        else:
            from .sarith import random_laurent_element as sampler
        for _ in range(args.pairs):
            pairs.append((sampler(F, args.rho, rng), sampler(F, args.rho, rng)))
    tasks = [(kind, F.q, modulus, str(a), str(b), args.eps) for a, b in pairs]
    if args.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(args.workers) as ex:
            results = list(ex.map(_connect_one, tasks))
    else:
        results = [_connect_one(t) for t in tasks]
    fh, own = _open_out(args.out)
    try:
        for i, d in enumerate(results):
            d = dict(d)
            d['pair_id'] = i
            fh.write(json.dumps(d, sort_keys=True) + '\n')
    finally:
        if own:
            fh.close()
    path = _constants_path(args)
    if path and results:
        certs = [TrajectoryCertificate.from_dict(d) for d in results]
        fitted = fit_constants(certs)
        fitted['pairs'] = len(certs)
        fitted['rho'] = args.rho
        fitted['seed'] = args.seed
        _write_constants(path, f'{kind}:q={F.q}:rho={args.rho}', fitted)
    return EXIT_OK


def cmd_connect(args):
    return _connect_common(args, 'connect')


def cmd_connect_s(args):
    return _connect_common(args, 'connect-s')


def cmd_divergence(args):
    from .matgroup import (cayley_ball_bfs, divergence_scan, exact_divergence, excluded_radius,
                           proxy_constant, write_divergence_csv)
    F = _field(args)
    ball = cayley_ball_bfs(args.radius, args.n, F, budget=args.budget)
    rows = divergence_scan(ball, args.delta, args.gamma, pairs=args.pairs, seed=args.seed,
                           min_through=args.min_through)
    # control row: a = b, whose divergence is 0 by definition
    a = len(ball) - 1
    rows = [{'pair_id': 0, 'a': a, 'b': a, 'd_ab': 0, 'd_ab_exact': True,
             'excluded_radius': excluded_radius(args.delta, args.gamma, int(ball.dist[a])),
             'div_length': exact_divergence(ball, ball.keys[a], ball.keys[a], None,
                                            args.delta, args.gamma)}] + \
        [dict(r, pair_id=r['pair_id'] + 1) for r in rows]
    fh, own = _open_out(args.out)
    try:
        write_divergence_csv(rows, fh)
    finally:
        if own:
            fh.close()
    path = _constants_path(args)
    if path:
        _write_constants(path, f'divergence:q={F.q}:radius={args.radius}',
                         {'proxy_C': proxy_constant(ball), 'ball_size': len(ball)})
    return EXIT_OK


def cmd_valuation(args):
    from .valuations import PlaceSet, degree_sum_check, is_s_integral, parse_place, valuation_at
    F = _field(args)
    x = parse_rational(args.x, F)
    out = {'x': str(x)}
    if args.place:
        v = valuation_at(x, parse_place(args.place, F))
        out['place'] = args.place
        out['valuation'] = v if v != float('inf') else 'inf'
    if args.S is not None:
        S = PlaceSet(parse_place(s, F) for s in args.S.split(';') if s.strip())
        out['S'] = str(S)
        out['s_integral'] = is_s_integral(x, S)
    if x:
        out['degree_sum'] = degree_sum_check(x)
    print(json.dumps(out))
    return EXIT_OK


def cmd_building(args):
    from .building import (LatticeClass, LocalRingContext, incidence, relative_valuations,
                           vertex_distance)
    from .matgroup import GroupMatrix
    F = _field(args)
    ctx = LocalRingContext.parse(args.place, F)

    def lattice(s):
        if s is None:
            return LatticeClass.standard(3, ctx)
        from .building import _rat
        body = s.strip()[2:-2]
        rows = [[_rat(parse_rational(c.strip(), F), F) for c in r.split(',')]
                for r in body.replace(' ', '').split('],[')]
        return LatticeClass.from_matrix(rows, ctx)

    x, y = lattice(args.x), lattice(args.y)
    out = {'place': str(ctx.place), 'x': str(x), 'y': str(y),
           'relative_valuations': relative_valuations(x, y),
           'distance': vertex_distance(x, y), 'incident': incidence(x, y)}
    print(json.dumps(out))
    return EXIT_OK


def cmd_selftest(args):
    from .selftest import run_selftest
    ok = run_selftest(seed=args.seed, out=sys.stdout)
    return EXIT_OK if ok else EXIT_CONSTRUCTION


# parser ------------------------------------------------------------------------------------
def build_parser():
    p = argparse.ArgumentParser(prog='fqdiv', description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest='command', required=True)

    def common(sp, seed=True):
        sp.add_argument('--q', type=int, default=2, help='field size (prime power)')
        sp.add_argument('--modulus', help='comma-separated coefficients of the modulus, low first')
        if seed:
            sp.add_argument('--seed', type=int, default=0)

    sp = sub.add_parser('eigen', help='coefficients of the expanding eigenvalue of the anchors')
    common(sp, seed=False)
    sp.add_argument('--K', type=int, default=16, help='number of coefficients')
    sp.add_argument('--anchor', type=int, nargs='+', choices=(1, 2), default=[1])
    sp.add_argument('--out', help='CSV path (default stdout)')
    sp.set_defaults(func=cmd_eigen)

    sp = sub.add_parser('decompose', help='elementary factors of a matrix over F_q[t]')
    common(sp, seed=False)
    sp.add_argument('--matrix', required=True, help='e.g. "[[1,0,t^2+1],[0,1,t],[0,0,1]]"')
    sp.add_argument('--s0', action='store_true', help='also expand into a word over S0')
    sp.set_defaults(func=cmd_decompose)

    for name, func, ring in (('connect', cmd_connect, 'F_q[t]'),
                             ('connect-s', cmd_connect_s, 'F_q[t,1/t]')):
        sp = sub.add_parser(name, help=f'certified external connections in SL_3({ring}) (JSONL)')
        common(sp)
        sp.add_argument('--pairs', type=int, default=10)
        sp.add_argument('--rho', type=int, default=10, help='proxy size of sampled endpoints')
        sp.add_argument('--eps', type=_eps, default=Fraction(1, 2))
        sp.add_argument('--g1')
        sp.add_argument('--g2')
        sp.add_argument('--workers', type=int, default=1)
        sp.add_argument('--out', help='JSONL path (default stdout)')
        sp.add_argument('--constants', help='constants file (default: beside --out)')
        sp.set_defaults(func=func)

    sp = sub.add_parser('divergence', help='exact divergence on a BFS ball (CSV)')
    common(sp)
    sp.add_argument('--n', type=int, default=3)
    sp.add_argument('--radius', type=int, default=4)
    sp.add_argument('--delta', type=_fraction, default=Fraction(1, 4))
    sp.add_argument('--gamma', type=_fraction, default=Fraction(1))
    sp.add_argument('--pairs', type=int, default=20)
    sp.add_argument('--min-through', type=int, default=6)
    sp.add_argument('--budget', type=int, help='memory budget in bytes')
    sp.add_argument('--out', help='CSV path (default stdout)')
    sp.add_argument('--constants', help='constants file (default: beside --out)')
    sp.set_defaults(func=cmd_divergence)

    sp = sub.add_parser('valuation', help='valuations and S-integrality of a rational function')
    common(sp, seed=False)
    sp.add_argument('--x', required=True, help='e.g. "(t^2+1)/(t^3+t)"')
    sp.add_argument('--place', help='"inf" or a monic irreducible polynomial')
    sp.add_argument('--S', help='semicolon-separated places, e.g. "inf;t"')
    sp.set_defaults(func=cmd_valuation)

    sp = sub.add_parser('building', help='distance and incidence of two lattice classes')
    common(sp, seed=False)
    sp.add_argument('--place', default='inf')
    sp.add_argument('--x', help='basis matrix (default: the standard lattice)')
    sp.add_argument('--y', help='basis matrix (default: the standard lattice)')
    sp.set_defaults(func=cmd_building)

    sp = sub.add_parser('selftest', help='quick property checks of every module')
    sp.add_argument('--seed', type=int, default=0)
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, 'q', None) is not None:
        try:
            _field(args)
        except (InvalidArgument, ValueError) as e:
            print(f'error: {e}', file=sys.stderr)
            return EXIT_CONFIG
    for name in ('pairs', 'K', 'workers', 'radius'):
        if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
            print(f'error: --{name} must be >= 0', file=sys.stderr)
            return EXIT_CONFIG
    try:
        return args.func(args)
    except ResourceExhausted as e:
        extra = f' (last complete radius {e.radius})' if e.radius is not None else ''
        print(f'memory budget exhausted: {e}{extra}', file=sys.stderr)
        return EXIT_RESOURCE
    except PrecisionExhausted as e:
        print(f'series precision exhausted: {e}', file=sys.stderr)
        return EXIT_RESOURCE
    except ConstructionFailure as e:
        print(f'construction failed at stage {e.stage}: {e}', file=sys.stderr)
        return EXIT_CONSTRUCTION
    except (InvalidArgument, FqDivError, ValueError, ZeroDivisionError) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_CONFIG


if __name__ == '__main__':
    sys.exit(main())
