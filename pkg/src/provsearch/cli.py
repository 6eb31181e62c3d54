"""Command-line surface: ingest, index, search, evaluate, serve."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .config import load_config
from .corpus import augment, parse_records, serialize_jsonl
from .embedding import make_embedder
from .errors import AuthError, DuplicateId, ProvSearchError
from .evaluation import load_ratings, load_suite, render_report, run_suite
from .index import FlatIndex
from .pipeline import (
    RemoteGenerationClient,
    RetrievalConfig,
    StubGenerationClient,
    outcome_to_dict,
    render_outcome_text,
    run_search,
)
from .service import load_corpus_file

EXIT_FATAL = 2
EXIT_AUTH = 3
EXIT_BIND = 4


@click.group()
def main():
    """Semantic provenance search over art-auction records."""


@main.command()
@click.argument("input_path", type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]), default="csv")
@click.option("--output", "output_path", type=click.Path(), required=True,
              help="Where to write the canonical JSONL corpus.")
def ingest(input_path, fmt, output_path):
    """Parse raw auction records and re-export them as canonical JSONL."""
    path = Path(input_path)
    if not path.exists():
        click.echo(f"error: input file {path} does not exist", err=True)
        sys.exit(EXIT_FATAL)
    try:
        corpus, report = parse_records(path.read_bytes(), fmt)
    except DuplicateId as e:
        click.echo(f"error: duplicate record_id {e}", err=True)
        sys.exit(EXIT_FATAL)
    Path(output_path).write_bytes(serialize_jsonl(corpus))
    click.echo(f"{report.accepted} accepted, {report.rejected_count} rejected")
    for rej in report.rejected:
        click.echo(f"  rejected {rej}", err=True)
    if report.dropped_columns:
        click.echo(f"  dropped {report.dropped_columns} unknown column(s)", err=True)


@main.command(name="index")
@click.argument("corpus_path", type=click.Path())
@click.option("--embedder", type=click.Choice(["local", "remote"]), default="local")
@click.option("--dimension", type=click.IntRange(min=8), default=256,
              help="Embedding dimension (3072 for the remote default model).")
@click.option("--output", "output_path", type=click.Path(), required=True)
@click.option("--batch-size", type=click.IntRange(min=1), default=128)
def index_cmd(corpus_path, embedder, dimension, output_path, batch_size):
    """Augment, embed, and index every record of a corpus."""
    path = Path(corpus_path)
    if not path.exists():
        click.echo(f"error: corpus file {path} does not exist", err=True)
        sys.exit(EXIT_FATAL)
    corpus = load_corpus_file(path)
    try:
        emb = make_embedder(embedder, dimension)
    except AuthError as e:
        click.echo(f"error (embedding): {e}", err=True)
        sys.exit(EXIT_AUTH)
    idx = FlatIndex(dimension)
    records = list(corpus)
    try:
        with click.progressbar(range(0, len(records), batch_size), label="embedding") as bar:
            for start in bar:
                batch = records[start : start + batch_size]
                docs = [augment(r) for r in batch]
                vectors = emb.embed([d.text for d in docs], ids=[d.record_id for d in docs])
                for vec in vectors:
                    idx.add(vec.record_id, vec)
    except AuthError as e:
        click.echo(f"error (embedding): {e}", err=True)
        sys.exit(EXIT_AUTH)
    except ProvSearchError as e:
        click.echo(f"error (embedding): {e}", err=True)
        sys.exit(EXIT_FATAL)
    idx.freeze()
    idx.save(output_path)
    click.echo(f"indexed {len(idx)} records at dimension {dimension} -> {output_path}")


@main.command()
@click.argument("query")
@click.option("--corpus", "corpus_path", type=click.Path(), required=True)
@click.option("--index", "index_path", type=click.Path(), required=True)
@click.option("--k", type=click.IntRange(min=1), default=10)
@click.option("--json", "as_json", is_flag=True, help="Emit the SearchOutcome as JSON.")
@click.option("--stub-gen/--remote-gen", default=True,
              help="Use the deterministic stub generation client (default) or the remote one.")
@click.option("--similarity-floor", type=float, default=None)
def search(query, corpus_path, index_path, k, as_json, stub_gen, similarity_floor):
    """Run one end-to-end search and print the outcome."""
    import json as jsonlib

    for p in (corpus_path, index_path):
        if not Path(p).exists():
            click.echo(f"error: {p} does not exist", err=True)
            sys.exit(EXIT_FATAL)
    corpus = load_corpus_file(corpus_path)
    idx = FlatIndex.load(index_path)
    emb = make_embedder("local", idx.dimension)
    client = StubGenerationClient() if stub_gen else RemoteGenerationClient()
    try:
        cfg = RetrievalConfig(k=k, similarity_floor=similarity_floor)
    except ValueError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_FATAL)
    try:
        outcome = run_search(query, cfg, idx, corpus, emb, client)
    except AuthError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_AUTH)
    except ProvSearchError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_FATAL)
    if as_json:
        click.echo(jsonlib.dumps(outcome_to_dict(outcome), ensure_ascii=False, indent=2))
    else:
        click.echo(render_outcome_text(outcome))


@main.command()
@click.option("--corpus", "corpus_path", type=click.Path(), required=True)
@click.option("--index", "index_path", type=click.Path(), required=True)
@click.option("--suite", "suite_path", type=click.Path(), required=True)
@click.option("--ratings", "ratings_path", type=click.Path(), default=None)
@click.option("--k", type=click.IntRange(min=1), default=10)
@click.option("--format", "fmt", type=click.Choice(["table-text", "json", "csv"]),
              default="table-text")
@click.option("--output", "output_path", type=click.Path(), default=None)
@click.option("--stub-gen/--remote-gen", default=True)
def evaluate(corpus_path, index_path, suite_path, ratings_path, k, fmt, output_path, stub_gen):
    """Run the query suite and render the completeness/rating report."""
    for p in (corpus_path, index_path, suite_path):
        if not Path(p).exists():
            click.echo(f"error: {p} does not exist", err=True)
            sys.exit(EXIT_FATAL)
    corpus = load_corpus_file(corpus_path)
    idx = FlatIndex.load(index_path)
    emb = make_embedder("local", idx.dimension)
    client = StubGenerationClient() if stub_gen else RemoteGenerationClient()
    queries = load_suite(Path(suite_path).read_bytes())
    ratings = load_ratings(Path(ratings_path).read_bytes()) if ratings_path else {}
    report = run_suite(queries, RetrievalConfig(k=k), idx, corpus, emb, client, ratings=ratings)
    rendered = render_report(report, fmt)
    if output_path:
        Path(output_path).write_bytes(rendered)
        click.echo(f"wrote {fmt} report to {output_path}")
    else:
        click.echo(rendered.decode("utf-8"), nl=False)


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
def serve(config_path, host, port):
    """Serve the HTTP JSON API (and the UI, when built) until interrupted."""
    import uvicorn

    from .service import create_app

    config = load_config(config_path)
    if host:
        config.bind_host = host
    if port:
        config.bind_port = port
    try:
        app = create_app(config)
    except FileNotFoundError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_FATAL)
    try:
        uvicorn.run(app, host=config.bind_host, port=config.bind_port)
    except (OSError, SystemExit) as e:
        click.echo(f"error: could not bind {config.bind_host}:{config.bind_port} ({e})", err=True)
        sys.exit(EXIT_BIND)


if __name__ == "__main__":
    main()
