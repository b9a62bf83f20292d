"""`serve` command: run the annotation and rule-authoring HTTP service."""

from __future__ import annotations

import click
import uvicorn

from .app import create_app


@click.command()
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--rules", "rules_path", type=click.Path(exists=True),
              help="Rule package directory or zip; bundled baseline when omitted.")
@click.option("--ontology", "ontology_path", type=click.Path(exists=True, dir_okay=False),
              help="Delimited ontology file for the dictionary builder.")
@click.option("--token", help="Bearer token required on mutating routes.")
@click.option("--session-ttl", default=24 * 3600, show_default=True, type=float,
              help="Seconds an uploaded session package stays live.")
@click.option("--spill-dir", type=click.Path(file_okay=False),
              help="Directory where session packages survive restarts.")
@click.option("--webui-dir", type=click.Path(file_okay=False),
              help="Built web UI bundle to serve at /.")
def main(port, host, rules_path, ontology_path, token, session_ttl, spill_dir, webui_dir) -> None:
    """Serve annotate, ruleset, and dictionary-builder routes over HTTP."""
    app = create_app(
        rules_path=rules_path,
        ontology_path=ontology_path,
        token=token,
        session_ttl=session_ttl,
        spill_dir=spill_dir,
        webui_dir=webui_dir,
    )
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
