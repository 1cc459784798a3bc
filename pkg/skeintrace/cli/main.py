#!/usr/bin/env python3
"""
Skein Trace CLI - Command Line Interface

Batch entry point: validate inputs, solve the ordering problem, compute
Allegretti-Kim elements and run the corpus. Exit codes: 0 success,
2 rejected input, 3 internal invariant breach, 1 unexpected failure.
"""

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import structlog

from skeintrace.cli.report import (CorpusReport, RunReport, render_corpus_text, render_json,
                                   render_run_text)
from skeintrace.config import EngineKind, SkeinTraceSettings, load_settings
from skeintrace.contracts import LAMINATION_SCHEMA, TRIANGULATION_SCHEMA, load_json, validate_document
from skeintrace.corpus import (CorpusInstance, InstanceOutcome, generated_corpus, load_corpus,
                               run_instance)
from skeintrace.errors import InternalInvariantError, SkeinTraceError
from skeintrace.lamination.lamination import IntegralLamination, fock_coordinates, is_even
from skeintrace.observability import EventLogger, configure_logging, content_digest, deterministic_run_id
from skeintrace.ordering.chains import SeededPolicy, TieBreakPolicy
from skeintrace.ordering.solver import OrderingSolution, solve_ordering, to_dot
from skeintrace.qtorus.commutative import specialize_commutative, x_subalgebra_form
from skeintrace.qtorus.torus import is_positive
from skeintrace.surface.triangulation import Triangulation
from skeintrace.trace.allegretti_kim import TraceOptions, allegretti_kim, classical_oracle

logger = structlog.get_logger(__name__)


class SkeinTraceCLI:
    """
    Skein Trace Command Line Interface main class
    """

    def __init__(self, argv: Optional[Sequence[str]] = None):
        self.argv = argv
        self.settings: SkeinTraceSettings = SkeinTraceSettings()
        self.event_logger = EventLogger()

    def _setup_logging(self, args: argparse.Namespace):
        level = "DEBUG" if args.verbose else (args.log_level or self.settings.log_level)
        if level == "WARN":
            level = "WARNING"
        configure_logging(level, self.settings.log_format)

    def _load_config(self, args: argparse.Namespace) -> SkeinTraceSettings:
        """Settings from the config file and environment, overridden by flags"""
        overrides: Dict[str, Any] = {}
        if getattr(args, "engine", None):
            overrides["engine"] = args.engine
        if getattr(args, "corpus_dir", None):
            overrides["corpus_dir"] = args.corpus_dir
        if getattr(args, "timing", False):
            overrides["include_timing"] = True
        return load_settings(args.config, **overrides)

    def run(self) -> int:
        """Main CLI entry point"""
        parser = self._create_parser()
        args = parser.parse_args(self.argv)

        if not args.command:
            parser.print_help()
            return 1

        run_id = args.run_id or "RUN-pending"
        try:
            self.settings = self._load_config(args)
            self._setup_logging(args)

            documents = self._read_inputs(args)
            digests = {name: content_digest(doc) for name, doc in documents.items()}
            run_id = args.run_id or deterministic_run_id([digests[k] for k in sorted(digests)], args.seed)

            self.event_logger.log_event(
                run_id=run_id,
                step_name='cli_command',
                event_type='COMMAND_START',
                message=f"Starting command: {args.command}",
                metadata={'command': args.command, 'input_digests': digests, 'seed': args.seed}
            )

            start_time = time.perf_counter()
            output, exit_code, output_digest = self._execute_command(args, run_id, documents, digests)
            execution_time = time.perf_counter() - start_time
            sys.stdout.write(output)

            self.event_logger.log_event(
                run_id=run_id,
                step_name='cli_command',
                event_type='COMMAND_SUCCESS' if exit_code == 0 else 'COMMAND_FAILURE',
                message=f"Command finished: {args.command}",
                metadata={'execution_time': execution_time, 'exit_code': exit_code,
                          'output_digest': output_digest}
            )
            return exit_code

        except SkeinTraceError as e:
            return self._fail(args, run_id, e.to_report(), e.exit_code)
        except Exception as e:
            logger.exception("command_crashed", command=args.command)
            report = {
                "status": "error",
                "category": "unexpected",
                "error_type": type(e).__name__,
                "exit_code": 1,
                "message": str(e),
                "details": {},
            }
            return self._fail(args, run_id, report, 1)

    def _fail(self, args: argparse.Namespace, run_id: str, report: Dict[str, Any], exit_code: int) -> int:
        report = dict(report, command=args.command, run_id=run_id)
        sys.stdout.write(render_json_dict(report))
        self.event_logger.log_event(
            run_id=run_id,
            step_name='cli_command',
            event_type='COMMAND_FAILURE',
            message=f"Command failed: {args.command}",
            metadata={'error': report.get("message"), 'category': report.get("category"),
                      'exit_code': exit_code}
        )
        return exit_code

    def _create_parser(self) -> argparse.ArgumentParser:
        """Create argument parser with all commands"""
        parser = argparse.ArgumentParser(
            prog='skein-trace',
            description='Skein Trace - quantum traces of laminations with certified Laurent positivity',
            formatter_class=argparse.RawDescriptionHelpFormatter
        )

        # Global arguments
        parser.add_argument('--run-id', help='Unique run identifier (default: derived from input digests)')
        parser.add_argument('--seed', type=int, help='Seed for tie-breaking choices')
        parser.add_argument('--config', help='Configuration file path (default: configs/dev.yaml)')
        parser.add_argument('--verbose', action='store_true', help='Enable debug logging')
        parser.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARN', 'ERROR'], help='Logging level')

        subparsers = parser.add_subparsers(dest='command', help='Available commands')

        # compute command
        compute_parser = subparsers.add_parser('compute', help='Compute the Allegretti-Kim element')
        self._add_input_args(compute_parser, lamination_required=True)
        compute_parser.add_argument('--x-form', action='store_true', help='Rewrite even laminations in X-variables')
        compute_parser.add_argument('--check-positivity', action='store_true',
                                    help='Fail with exit code 3 unless all coefficients are positive')
        compute_parser.add_argument('--classical-oracle', action='store_true',
                                    help='Compare the w=1 specialization against the commutative brute force')
        compute_parser.add_argument('--engine', choices=[e.value for e in EngineKind], help='Trace engine')
        compute_parser.add_argument('--dump-regional-graph', type=Path, help='Write the regional graph as DOT')
        compute_parser.add_argument('--output', choices=['json', 'text'], default='json', help='Output format')
        compute_parser.add_argument('--timing', action='store_true', help='Include timing in the report')

        # validate command
        validate_parser = subparsers.add_parser('validate', help='Validate a triangulation and lamination')
        self._add_input_args(validate_parser, lamination_required=False)
        validate_parser.add_argument('--output', choices=['json', 'text'], default='json', help='Output format')

        # ordering command
        ordering_parser = subparsers.add_parser('ordering', help='Solve the loop-segment ordering problem')
        self._add_input_args(ordering_parser, lamination_required=True)
        ordering_parser.add_argument('--dump-regional-graph', type=Path, help='Write the regional graph as DOT')
        ordering_parser.add_argument('--output', choices=['json', 'text'], default='json', help='Output format')

        # corpus command
        corpus_parser = subparsers.add_parser('corpus', help='List or run the corpus')
        corpus_parser.add_argument('action', choices=['list', 'run-all'], help='Corpus action')
        corpus_parser.add_argument('--corpus-dir', type=Path, help='Directory of bundled instances')
        corpus_parser.add_argument('--generated', action='store_true', help='Include the generated corpus')
        corpus_parser.add_argument('--jobs', type=int, default=1, help='Parallel worker processes')
        corpus_parser.add_argument('--engine', choices=[e.value for e in EngineKind], help='Trace engine')
        corpus_parser.add_argument('--output', choices=['json', 'text'], default='json', help='Output format')
        corpus_parser.add_argument('--timing', action='store_true', help='Include timing per instance')

        return parser

    @staticmethod
    def _add_input_args(subparser: argparse.ArgumentParser, lamination_required: bool):
        subparser.add_argument('--triangulation', type=Path, required=True, help='Triangulation JSON file')
        subparser.add_argument('--lamination', type=Path, required=lamination_required,
                               help='Lamination JSON file')
        subparser.add_argument('--seed', type=int, default=argparse.SUPPRESS, help='Seed for tie-breaking choices')

    def _read_inputs(self, args: argparse.Namespace) -> Dict[str, Any]:
        documents: Dict[str, Any] = {}
        if args.command == 'corpus':
            documents["corpus"] = {"dir": str(self.settings.corpus_dir), "generated": args.generated,
                                   "size": self.settings.generated_corpus_size,
                                   "seed": self.settings.generated_corpus_seed}
            return documents
        documents["triangulation"] = load_json(args.triangulation)
        validate_document(documents["triangulation"], TRIANGULATION_SCHEMA, str(args.triangulation))
        if args.lamination is not None:
            documents["lamination"] = load_json(args.lamination)
            validate_document(documents["lamination"], LAMINATION_SCHEMA, str(args.lamination))
        return documents

    def _execute_command(self, args: argparse.Namespace, run_id: str, documents: Dict[str, Any],
                         digests: Dict[str, str]) -> Tuple[str, int, Optional[str]]:
        """Execute the specified command; returns rendered output, exit code and output digest"""

        command = args.command

        if command == 'compute':
            return self._cmd_compute(args, run_id, documents, digests)
        elif command == 'validate':
            return self._cmd_validate(args, run_id, documents, digests)
        elif command == 'ordering':
            return self._cmd_ordering(args, run_id, documents, digests)
        elif command == 'corpus':
            return self._cmd_corpus(args)
        else:
            raise ValueError(f"Unknown command: {command}")

    # Commands

    def _parse(self, documents: Dict[str, Any]) -> Tuple[Triangulation, Optional[IntegralLamination]]:
        t = Triangulation.from_dict(documents["triangulation"]).ensure_valid()
        lamination = None
        if "lamination" in documents:
            lamination = IntegralLamination.from_dict(t, documents["lamination"])
        return t, lamination

    def _policy(self, args: argparse.Namespace) -> TieBreakPolicy:
        return SeededPolicy(args.seed) if args.seed is not None else TieBreakPolicy()

    def _new_report(self, args: argparse.Namespace, run_id: str, digests: Dict[str, str],
                    t: Triangulation) -> RunReport:
        surface = dict(t.surface.to_dict(), triangles=t.triangle_count, arcs=t.arc_count,
                       vertex_classes=len(t.vertex_classes()), euler_characteristic=t.euler_characteristic())
        return RunReport(command=args.command, run_id=run_id, input_digests=digests, seed=args.seed,
                         surface=surface)

    def _cmd_compute(self, args: argparse.Namespace, run_id: str, documents: Dict[str, Any],
                     digests: Dict[str, str]) -> Tuple[str, int, Optional[str]]:
        """Execute compute command"""

        timings: Dict[str, float] = {}
        start = time.perf_counter()
        t, lamination = self._parse(documents)
        timings["parse"] = time.perf_counter() - start

        policy = self._policy(args)
        options = TraceOptions(engine=self.settings.engine, policy=policy,
                               statesum_max_junctures=self.settings.statesum_max_junctures,
                               order_check_max_terms=self.settings.order_check_max_terms)
        start = time.perf_counter()
        result = allegretti_kim(t, lamination, options)
        timings["trace"] = time.perf_counter() - start
        element = result.element

        report = self._new_report(args, run_id, digests, t)
        report.engine = self.settings.engine.value
        report.policy = policy.name
        report.normalization_notes = list(lamination.normalization_notes)
        report.components = [
            dict(tr.summary(), ordering=tr.solution.summary() if tr.solution else None)
            for tr in result.components
        ]
        report.element = {"text": element.to_text(), "monomials": len(element), "terms": element.to_json()}
        report.output_digest = content_digest(report.element)
        if result.order_checked:
            report.checks["product_order"] = True
        report.even = is_even(t, lamination)

        if args.check_positivity:
            report.positive = is_positive(element)
            if not report.positive:
                negative = [term for term in element.to_json()
                            if any(c < 0 for c in term["coefficient"].values())]
                raise InternalInvariantError("positivity", "element has a negative coefficient", negative[:5])

        if args.x_form:
            report.x_form = self._x_form(element, report.even, args.check_positivity)

        if args.classical_oracle:
            start = time.perf_counter()
            oracle = classical_oracle(t, lamination, self.settings.oracle_max_junctures)
            timings["classical_oracle"] = time.perf_counter() - start
            report.checks["classical_oracle"] = specialize_commutative(element) == oracle
            if not report.checks["classical_oracle"]:
                raise InternalInvariantError("classical_oracle", "w=1 specialization differs from the oracle",
                                             {"oracle": oracle.to_text()})

        if args.dump_regional_graph:
            self._write_dot(args.dump_regional_graph, [tr.solution for tr in result.components if tr.solution])

        if self.settings.include_timing:
            report.timing = {k: round(v, 6) for k, v in timings.items()}
        logger.info("compute_done", run_id=run_id, monomials=len(element), components=len(result.components))
        return self._render(args, report), 0, report.output_digest

    @staticmethod
    def _x_form(element, even: bool, check_positivity: bool) -> Dict[str, Any]:
        if not even:
            return {"available": False, "reason": "lamination is not even"}
        form = x_subalgebra_form(element)
        if form is None:
            raise InternalInvariantError("x_form", "even lamination gives an element outside the X-subalgebra")
        if check_positivity and not form.is_positive():
            raise InternalInvariantError("positivity", "X-form has a negative coefficient")
        return {"available": True, "text": form.to_text(), "terms": form.to_json(), "positive": form.is_positive()}

    def _cmd_validate(self, args: argparse.Namespace, run_id: str, documents: Dict[str, Any],
                      digests: Dict[str, str]) -> Tuple[str, int, Optional[str]]:
        """Execute validate command"""

        t, lamination = self._parse(documents)
        report = self._new_report(args, run_id, digests, t)
        report.checks["triangulation"] = True
        if lamination is not None:
            report.checks["lamination"] = True
            report.normalization_notes = list(lamination.normalization_notes)
            report.components = [
                {"curve": c.curve.to_dict(), "weight": c.weight, "peripheral": c.peripheral,
                 "junctures": c.junctures.juncture_count}
                for c in lamination.components
            ]
            report.even = is_even(t, lamination)
            report.surface["fock_coordinates"] = {
                t.arc_label(arc): str(value) for arc, value in fock_coordinates(t, lamination).items()
            }
        return self._render(args, report), 0, None

    def _cmd_ordering(self, args: argparse.Namespace, run_id: str, documents: Dict[str, Any],
                      digests: Dict[str, str]) -> Tuple[str, int, Optional[str]]:
        """Execute ordering command"""

        t, lamination = self._parse(documents)
        policy = self._policy(args)
        report = self._new_report(args, run_id, digests, t)
        report.policy = policy.name
        solutions: List[OrderingSolution] = []
        for component in lamination.components:
            entry: Dict[str, Any] = {"curve": component.curve.to_dict(), "weight": component.weight,
                                     "peripheral": component.peripheral,
                                     "junctures": component.junctures.juncture_count, "ordering": None}
            if not component.peripheral:
                solution = solve_ordering(component.junctures, policy)
                solutions.append(solution)
                entry["ordering"] = solution.to_dict()
            report.components.append(entry)
        report.checks["compatible_and_sane"] = all(s.check.passed for s in solutions)
        report.checks["sufficient_condition"] = all(s.condition_report.passed for s in solutions)
        report.output_digest = content_digest(report.components)
        if args.dump_regional_graph:
            self._write_dot(args.dump_regional_graph, solutions)
        return self._render(args, report), 0, report.output_digest

    def _cmd_corpus(self, args: argparse.Namespace) -> Tuple[str, int, Optional[str]]:
        """Execute corpus command"""

        instances: List[CorpusInstance] = load_corpus(self.settings.corpus_dir)
        sources = [str(self.settings.corpus_dir)]
        if args.generated:
            instances += generated_corpus(self.settings.generated_corpus_size, self.settings.generated_corpus_seed,
                                          self.settings.max_corpus_junctures)
            sources.append(f"generated(seed={self.settings.generated_corpus_seed})")

        if args.action == 'list':
            outcomes = [InstanceOutcome(name=i.name, source=i.source, passed=True,
                                        junctures=_instance_junctures(i)) for i in instances]
        elif args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                outcomes = list(pool.map(run_instance, instances, [self.settings] * len(instances)))
        else:
            outcomes = [run_instance(i, self.settings) for i in instances]

        report = CorpusReport.from_outcomes(args.action, sources, outcomes)
        for outcome in outcomes:
            if not outcome.passed:
                logger.warning("corpus_instance_failed", name=outcome.name,
                               invariants=[f["invariant"] for f in outcome.failures])
        output = render_json(report) if args.output == 'json' else render_corpus_text(report)
        return output, 0 if report.failed == 0 else 3, content_digest(report.model_dump(mode="json"))

    # Output

    @staticmethod
    def _render(args: argparse.Namespace, report: RunReport) -> str:
        return render_json(report) if args.output == 'json' else render_run_text(report)

    @staticmethod
    def _write_dot(path: Path, solutions: Sequence[OrderingSolution]):
        graphs = [to_dot(s) for s in solutions] or ["digraph regional_graph {\n}\n"]
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            f.write("".join(graphs))
        logger.info("regional_graph_written", path=str(path), graphs=len(graphs))


def _instance_junctures(instance: CorpusInstance) -> int:
    try:
        return sum(c.junctures.juncture_count for c in instance.build_lamination().components)
    except SkeinTraceError:
        return 0


def render_json_dict(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n"


def main(argv: Optional[Sequence[str]] = None):
    """Main entry point"""
    cli = SkeinTraceCLI(argv)
    exit_code = cli.run()
    sys.exit(exit_code)


if __name__ == "__main__":
    main()
