#!/usr/bin/env python3
"""
Schema Contracts

JSON Schema validation of input documents and reports against
contracts/schemas.
"""

import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List

import jsonschema
import structlog

from skeintrace.errors import SchemaError

logger = structlog.get_logger(__name__)

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "contracts" / "schemas"

TRIANGULATION_SCHEMA = "triangulation.input"
LAMINATION_SCHEMA = "lamination.input"
CORPUS_INSTANCE_SCHEMA = "corpus.instance"
RUN_REPORT_SCHEMA = "run.report"


@lru_cache(maxsize=None)
def load_schema(name: str) -> Dict[str, Any]:
    path = SCHEMA_DIR / f"{name}.json"
    if not path.exists():
        raise SchemaError(f"schema {name} not found in {SCHEMA_DIR}")
    with open(path, "r") as f:
        return json.load(f)


def schema_errors(document: Any, name: str) -> List[str]:
    """Messages for every violation, ordered by document path"""

    validator = jsonschema.Draft7Validator(load_schema(name))
    errors = sorted(validator.iter_errors(document), key=lambda e: list(map(str, e.absolute_path)))
    return [f"{'/'.join(map(str, e.absolute_path)) or '<root>'}: {e.message}" for e in errors]


def validate_document(document: Any, name: str, source: str = "<input>"):
    """Raise SchemaError listing the violations of `document` against schema `name`"""

    errors = schema_errors(document, name)
    if errors:
        logger.info("schema_validation_failed", schema=name, source=source, errors=len(errors))
        raise SchemaError(f"{source} does not conform to {name}", {"schema": name, "errors": errors})


def load_json(path: Path) -> Any:
    """Parse a JSON input file; unreadable or malformed files are schema errors"""

    try:
        with open(path, "r") as f:
            return json.load(f)
    except FileNotFoundError:
        raise SchemaError(f"input file not found: {path}")
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e}")
