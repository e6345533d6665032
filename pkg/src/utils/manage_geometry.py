#!/usr/bin/env python3
"""
Command-line front end for the hyperbolic geometry toolkit.

Provides tools for:
- Angular invariants of boundary triples
- Named verification suites
- Bending sweeps with CSV/JSON export
- Characters of 2-cycles
- Limit-set point clouds

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

import argparse
import json
import logging
import math
import os
import sys
from typing import Dict, List, Optional

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config import ExperimentConfig, GeometryConfig  # noqa: E402
from hypergeo import __version__  # noqa: E402
from hypergeo.algebra import ImaginaryDirection, Octonion, format_quaternion, quat, unit_rotation  # noqa: E402
from hypergeo.errors import HypergeoError, InputFormatError  # noqa: E402
from hypergeo.group_io import (  # noqa: E402
    parse_point,
    read_cycle_file,
    read_group_file,
    read_vertex_map,
    write_group_file,
)
from hypergeo.groups import LimitSetSampler, bend, schottky_amalgam_example, schottky_hnn_example  # noqa: E402
from hypergeo.hermitian import Triple  # noqa: E402
from hypergeo.invariants import CHARACTER_BOUND, cartan_signature, character_eval  # noqa: E402
from hypergeo.realbend import octonion_line_angular  # noqa: E402
from hypergeo.suites import SUITES, Tolerances, run_suite  # noqa: E402
from hypergeo.sweep import BendSweep, limit_cloud_frame, FLOAT_FORMAT  # noqa: E402

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


class GeometryRunner:
    """Runs one CLI command against a resolved ExperimentConfig."""

    def __init__(self, config: ExperimentConfig):
        self.config = config

    def tolerances(self) -> Tolerances:
        return Tolerances(self.config.algebraic_tol, self.config.geometric_tol, self.config.oracle_tol)

    def direction(self, group_field: str = "H") -> ImaginaryDirection:
        """Bending axis from the config; octonionic axes are only for real bending."""
        values = self.config.axis()
        if len(values) != 3:
            raise InputFormatError("Quaternionic bending needs a 3-component eta axis")
        axis = ImaginaryDirection.normalized(values)
        if group_field == "C" and (abs(axis.vector[1]) > 0.0 or abs(axis.vector[2]) > 0.0):
            raise InputFormatError("A complex group can only be bent along i (eta axis 1,0,0)")
        return axis

    # ------------------------------------------------------------------
    # invariant
    # ------------------------------------------------------------------

    def invariant(self, points: List[str], as_json: bool = False) -> int:
        if len(points) != 3:
            raise InputFormatError(f"invariant takes exactly 3 points, got {len(points)}")
        if self.config.field == 'O':
            return self._octonion_invariant(points, as_json)

        triple = Triple(*(parse_point(p.split(), self.config.n) for p in points))
        for idx, p in enumerate(triple.points, start=1):
            if self.config.field == 'C' and any(abs(q.y) > 0.0 or abs(q.z) > 0.0 for q in p.coords):
                raise InputFormatError(f"Point x{idx} has j/k components but the field is C")
        report = cartan_signature(triple, self.config.field)

        if as_json:
            print(json.dumps(report.as_dict(), indent=2))
            return EXIT_OK
        tp = report.triple_product
        print("\n📐 Angular Invariant\n")
        print(f"Triple product:    {format_quaternion(quat(*tp), 12)}")
        print(f"A (Cartan):        {report.angle:.15g}")
        print(f"tan A:             {report.tan_angle:.15g}")
        print(f"tau = 2A:          {report.toledo:.15g}")
        print(f"dist to spine:     {report.dist_to_spine:.15g}")
        print(f"Classification:    {report.classification}\n")
        return EXIT_OK

    def _octonion_invariant(self, points: List[str], as_json: bool) -> int:
        octs = []
        for p in points:
            try:
                values = [float(t) for t in p.replace(",", " ").split()]
            except ValueError as e:
                raise InputFormatError(f"Bad octonion '{p}': {e}") from e
            if len(values) != 8:
                raise InputFormatError(f"An octonion needs 8 components, got {len(values)} in '{p}'")
            octs.append(Octonion.from_components(values))
        angle = octonion_line_angular(*octs)
        if as_json:
            print(json.dumps({'angle': angle, 'toledo': 2.0 * angle}, indent=2))
        else:
            print("\n📐 Octonionic Angular Invariant\n")
            print(f"A (Cartan):        {angle:.15g}")
            print(f"tau = 2A:          {2.0 * angle:.15g}\n")
        return EXIT_OK

    # ------------------------------------------------------------------
    # verify
    # ------------------------------------------------------------------

    def verify(self, names: List[str], report_path: Optional[str] = None) -> int:
        names = names or sorted(SUITES)
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise InputFormatError(f"Unknown suite(s) {unknown} (available: {', '.join(sorted(SUITES))})")

        results = [run_suite(n, self.config.seed, self.config.sample_count, self.tolerances()) for n in names]
        print("\n" + "="*60)
        print(f"Verification (seed {self.config.seed}, count {self.config.sample_count})")
        print("="*60)
        for res in results:
            status = "✅ PASS" if res.passed else "✗ FAIL"
            print(f"\n{status}  {res.name}  ({res.elapsed:.2f}s)")
            for p in res.properties:
                mark = "✓" if p.passed else "✗"
                relation = "<=" if p.kind == "max" else ">"
                print(f"  {mark} {p.name:<55} {p.value:.3e} {relation} {p.bound:.1e}  (n={p.samples})")
        failed = [r.name for r in results if not r.passed]
        print("\n" + "="*60)
        print(f"📊 {len(results) - len(failed)}/{len(results)} suites passed")
        print("="*60 + "\n")

        if report_path:
            os.makedirs(os.path.dirname(os.path.abspath(report_path)), exist_ok=True)
            with open(report_path, 'w') as f:
                json.dump({'version': __version__, 'suites': [r.as_dict() for r in results]}, f, indent=2)
            print(f"✓ Report written to {report_path}")
        return EXIT_FAILED if failed else EXIT_OK

    # ------------------------------------------------------------------
    # bend / limitset / example
    # ------------------------------------------------------------------

    def bend(self, group_file: str) -> int:
        group = read_group_file(group_file)
        sweep = BendSweep(group, self.direction(group.field_name), self.config.etas(),
                          word_length=self.config.word_length, limit_count=self.config.limit_count,
                          seed=self.config.seed, collar_delta=self.config.collar_delta)
        frame = sweep.run()
        metadata = {
            'version': __version__,
            'group_file': os.path.basename(group_file),
            'eta_grid': self.config.eta_grid,
            'tolerances': {
                'algebraic': self.config.algebraic_tol,
                'geometric': self.config.geometric_tol,
                'oracle': self.config.oracle_tol,
            },
        }
        paths = sweep.write(frame, self.config.output_dir, metadata)

        print("\n" + "="*60)
        print(f"Bending Sweep ({group.kind}, {len(frame)} grid points)")
        print("="*60)
        print(frame[["eta", "marker_invariant", "min_cygan_offset", "max_cygan_offset"]].to_string(index=False))
        if not bool(frame["collar_ok"].all()):
            print(f"\n⚠️  Collar inequality fails at radius {self.config.collar_delta:.6g}")
        print(f"\n✓ Wrote {len(paths)} files to {self.config.output_dir}")
        print("="*60 + "\n")
        return EXIT_OK

    def limitset(self, group_file: str, eta: float) -> int:
        if abs(eta) >= math.pi:
            raise InputFormatError(f"eta must lie in (-pi, pi), got {eta}")
        group = read_group_file(group_file)
        bent = bend(group, unit_rotation(self.direction(group.field_name), eta)) if eta else group
        sampler = LimitSetSampler(bent, self.config.word_length, self.config.seed)
        cloud = limit_cloud_frame(sampler.sample(self.config.limit_count))
        os.makedirs(self.config.output_dir, exist_ok=True)
        path = os.path.join(self.config.output_dir, "limitset.csv")
        cloud.to_csv(path, index=False, float_format=FLOAT_FORMAT)
        print(f"✓ {sampler.stats['samples']} limit samples "
              f"({sampler.stats['skipped_elliptic']} words skipped) written to {path}")
        return EXIT_OK

    def example(self, path: str, kind: str, eps: float, offset: float, radius: float) -> int:
        builder = schottky_amalgam_example if kind == "amalgam" else schottky_hnn_example
        group = builder(eps=eps, offset=offset, r=radius, n=self.config.n, field_name=self.config.field)
        write_group_file(group, path)
        print(f"✓ Wrote {kind} example (eps = {eps:g}, offset = {offset:g}, r = {radius:g}) to {path}")
        return EXIT_OK

    # ------------------------------------------------------------------
    # character
    # ------------------------------------------------------------------

    def character(self, cycle_file: str, vertex_file: str, allow_open: bool = False) -> int:
        cycle = read_cycle_file(cycle_file)
        vertices = read_vertex_map(vertex_file, self.config.n)
        report = character_eval(cycle, vertices, require_closed=not allow_open)

        print("\n📊 Character Evaluation\n")
        if not report.closed:
            print("⚠️  Chain is not closed; the value is not a character")
        for idx, term in enumerate(report.terms):
            mark = "✗" if idx in report.bound_violations else "✓"
            print(f"  {mark} {term.multiplicity:+d} [{' '.join(term.vertices)}]  "
                  f"tau = {term.toledo:.12g}  4 pi tau = {term.cochain:.12g}")
        print(f"\nc = {report.value:.15g}  (bound per triangle {CHARACTER_BOUND:.12g})\n")
        if not report.bound_ok:
            print(f"✗ {len(report.bound_violations)} triangle(s) exceed the bound")
            return EXIT_FAILED
        return EXIT_OK


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument('--config', help='key = value configuration file')
    parser.add_argument('--field', choices=['C', 'H', 'O'], help='Field selector')
    parser.add_argument('--n', type=int, help='Dimension n of the ball')
    parser.add_argument('--seed', type=int, help='Random seed')
    parser.add_argument('--tol', type=float, help='Geometric tolerance override')
    parser.add_argument('--out', help='Output directory')
    parser.add_argument('--grid', help="Eta grid 'start:stop:count' or 'e1,e2,...'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Quaternionic Hyperbolic Geometry Toolkit - Experiment Runner'
    )
    parser.add_argument('--log-level', default=GeometryConfig.LOG_LEVEL, help='Logging level')
    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    # Invariant command
    invariant_parser = subparsers.add_parser('invariant', help='Angular invariant of a boundary triple')
    invariant_parser.add_argument('points', nargs='+',
                                  help="Three points: ball coordinates '0 -1', 'carnot z | t' or 'inf'")
    invariant_parser.add_argument('--json', action='store_true', help='Print the report as JSON')
    _add_common(invariant_parser)

    # Verify command
    verify_parser = subparsers.add_parser('verify', help='Run verification suites')
    verify_parser.add_argument('suites', nargs='*', help=f"Suites to run (default: all of {', '.join(sorted(SUITES))})")
    verify_parser.add_argument('--count', type=int, help='Samples per property')
    verify_parser.add_argument('--report', help='Write a JSON report to this path')
    _add_common(verify_parser)

    # Bend command
    bend_parser = subparsers.add_parser('bend', help='Bending sweep over an eta grid')
    bend_parser.add_argument('group', help='Group file')
    bend_parser.add_argument('--axis', help="Imaginary bending axis 'x,y,z' (default: config)")
    bend_parser.add_argument('--word-length', type=int, help='Maximal random word length')
    bend_parser.add_argument('--limit-count', type=int, help='Limit samples per grid point')
    _add_common(bend_parser)

    # Character command
    character_parser = subparsers.add_parser('character', help='Character of a triangulated 2-cycle')
    character_parser.add_argument('cycle', help="Cycle file ('mult a b c' per line)")
    character_parser.add_argument('vertices', help="Vertex map file ('label coordinates' per line)")
    character_parser.add_argument('--allow-open', action='store_true', help='Evaluate open chains with a warning')
    _add_common(character_parser)

    # Limitset command
    limit_parser = subparsers.add_parser('limitset', help='Limit-set point cloud of a (bent) group')
    limit_parser.add_argument('group', help='Group file')
    limit_parser.add_argument('--eta', type=float, default=0.0, help='Bending angle (default: 0)')
    limit_parser.add_argument('--axis', help="Imaginary bending axis 'x,y,z'")
    limit_parser.add_argument('--word-length', type=int, help='Maximal random word length')
    limit_parser.add_argument('--limit-count', type=int, help='Number of limit samples')
    _add_common(limit_parser)

    # Example command
    example_parser = subparsers.add_parser('example', help='Write the Schottky-type example group file')
    example_parser.add_argument('path', help='Output group file')
    example_parser.add_argument('--kind', choices=['amalgam', 'hnn'], default='amalgam')
    example_parser.add_argument('--eps', type=float, default=0.5, help='Axis translation length')
    example_parser.add_argument('--offset', type=float, default=1.5, help='Push of the factor axes')
    example_parser.add_argument('--radius', type=float, default=0.5, help='Half translation length of g1, g2')
    _add_common(example_parser)

    # Config command
    config_parser = subparsers.add_parser('config', help='Show the active configuration')
    _add_common(config_parser)

    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    """Environment defaults, then the config file, then command-line flags."""
    config = GeometryConfig.from_file(args.config) if args.config else GeometryConfig.defaults()
    overrides: Dict[str, Optional[str]] = {
        'field': args.field,
        'n': args.n,
        'seed': args.seed,
        'geometric_tol': args.tol,
        'output_dir': args.out,
        'eta_grid': args.grid,
        'sample_count': getattr(args, 'count', None),
        'eta_axis': getattr(args, 'axis', None),
        'word_length': getattr(args, 'word_length', None),
        'limit_count': getattr(args, 'limit_count', None),
    }
    return config.updated(overrides)


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI interface."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.INFO),
        format=GeometryConfig.LOG_FORMAT
    )

    if not args.command:
        parser.print_help()
        return EXIT_OK

    # Execute command
    try:
        config = resolve_config(args)
        runner = GeometryRunner(config)

        if args.command == 'invariant':
            return runner.invariant(args.points, as_json=args.json)

        elif args.command == 'verify':
            return runner.verify(args.suites, args.report)

        elif args.command == 'bend':
            return runner.bend(args.group)

        elif args.command == 'character':
            return runner.character(args.cycle, args.vertices, allow_open=args.allow_open)

        elif args.command == 'limitset':
            return runner.limitset(args.group, args.eta)

        elif args.command == 'example':
            return runner.example(args.path, args.kind, args.eps, args.offset, args.radius)

        elif args.command == 'config':
            GeometryConfig.print_config(config)
            return EXIT_OK

    except KeyboardInterrupt:
        print("\n\nInterrupted by user")
        return EXIT_FAILED
    except (HypergeoError, np.linalg.LinAlgError, ValueError, OSError) as e:
        logger.debug("Input error", exc_info=True)
        print(f"✗ Error: {e}", file=sys.stderr)
        return EXIT_INPUT

    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
