#!/usr/bin/env python
"""files.py"""
import csv
import dataclasses
import json
import logging
import math
import sys

from classes.params import RunConfig
from modules import utils

logger = logging.getLogger(__name__)

APP_NAME = "optobessel"


def resolved_config(run: RunConfig) -> dict:
    """
    Plain-dict form of a resolved run, as recorded in output headers.

    Args:
        - run (RunConfig): The resolved invocation.

    Returns:
        - dict: JSON-serializable copy with the sweep axes expanded.
    """
    resolved = dataclasses.asdict(run)
    resolved["schema"] = 1
    return resolved


def header_lines(run: RunConfig, version: str) -> list:
    """
    Comment lines opening every CSV file: the version, then the full
    resolved config on one line with sorted keys.
    """
    config_text = json.dumps(resolved_config(run), sort_keys=True,
                             ensure_ascii=False)
    return [f"# {APP_NAME} v{version}", f"# mode: {run.mode}",
            f"# config: {config_text}"]


def write_csv(handle, columns, rows, run: RunConfig, version: str) -> None:
    """
    Write a CSV table with its comment header.

    Args:
        - handle: Open text stream.
        - columns (list): Column names, fixed per subcommand.
        - rows (list): Lists of cell values in column order.
        - run (RunConfig): Recorded in the header.
        - version (str): Recorded in the header.
    """
    for line in header_lines(run, version):
        handle.write(line + "\n")

    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([utils.format_value(value) for value in row])


def _json_value(value):
    # JSON has no NaN or infinities
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def write_json(handle, columns, rows, run: RunConfig, version: str) -> None:
    """
    Write the same table as one JSON document: header fields, column names
    and rows, non-finite values as null.
    """
    document = {
        "app": APP_NAME,
        "version": version,
        "config": resolved_config(run),
        "columns": list(columns),
        "rows": [[_json_value(value) for value in row] for row in rows],
    }
    json.dump(document, handle, indent=2, sort_keys=False,
              ensure_ascii=False, allow_nan=False)
    handle.write("\n")


def save_table(columns, rows, run: RunConfig, version: str) -> None:
    """
    Send a table to run.output (stdout when None) in run.fmt.

    Args:
        - columns (list): Column names.
        - rows (list): Table rows.
        - run (RunConfig): Carries the output path and format.
        - version (str): Application version for the header.
    """
    writer = write_json if run.fmt == "json" else write_csv

    # Write to stdout if no path was given
    if run.output is None:
        writer(sys.stdout, columns, rows, run, version)
        return

    with open(run.output, "w", encoding="utf-8", newline="\n") as handle:
        writer(handle, columns, rows, run, version)
    logger.info("wrote %d rows to %s", len(rows), run.output)
