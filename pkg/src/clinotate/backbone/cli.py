"""`pipeline` command: run and validate-config.

Exit codes: 0 clean run, 2 completed with record-level errors, 1 fatal.
"""

from __future__ import annotations

import sys

import click
import yaml

from .config import ConfigError, load_pipeline_config, validate_raw_config
from .pipeline import run_pipeline
from .sources import IngestionError


@click.group()
def main() -> None:
    """Note ingestion, annotation, and persistence."""


@main.command("run")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
def run(config_path: str) -> None:
    """Run the pipeline described by a config file."""
    try:
        cfg = load_pipeline_config(config_path)
        summary = run_pipeline(cfg)
    except (ConfigError, IngestionError, OSError) as exc:
        click.echo(f"fatal: {exc}", err=True)
        sys.exit(1)
    click.echo(
        f"notes_in={summary.notes_in} notes_failed={summary.notes_failed} "
        f"mentions_out={summary.mentions_out} elapsed={summary.elapsed:.2f}s"
    )
    sys.exit(0 if summary.notes_failed == 0 else 2)


@main.command("validate-config")
@click.argument("config_path", type=click.Path(exists=True))
def validate_config(config_path: str) -> None:
    """Check a config file without running anything."""
    try:
        with open(config_path, encoding="utf-8") as handle:
            raw = yaml.safe_load(handle)
    except yaml.YAMLError as exc:
        click.echo(f"invalid: not valid YAML: {exc}", err=True)
        sys.exit(1)
    if not isinstance(raw, dict):
        click.echo("invalid: config must be a mapping", err=True)
        sys.exit(1)
    problems = validate_raw_config(raw)
    if problems:
        for problem in problems:
            click.echo(f"invalid: {problem}", err=True)
        sys.exit(1)
    click.echo("ok")


if __name__ == "__main__":
    main()
