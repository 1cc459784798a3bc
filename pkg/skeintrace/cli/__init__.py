# CLI Service
# Command-line interface for skein trace runs

"""
CLI Service

Purpose: Batch entry point for the engine
- compute, validate and ordering runs on JSON inputs
- corpus listing and invariant-suite runs
- JSON and text reports with content digests
"""

from skeintrace.cli.main import SkeinTraceCLI, main
from skeintrace.cli.report import CorpusReport, RunReport, render_corpus_text, render_json, render_run_text

__all__ = [
    "SkeinTraceCLI",
    "main",
    "RunReport",
    "CorpusReport",
    "render_json",
    "render_run_text",
    "render_corpus_text",
]
