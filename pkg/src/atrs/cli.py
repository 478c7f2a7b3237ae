"""Command-line entry points: mine, eval, compare, recommend, repl, stats, serve."""

from __future__ import annotations

import csv
import dataclasses
import json
import sys
from pathlib import Path

import click

from .catalog import distribution_stats, load_catalog
from .evaluation import compare as compare_summaries
from .evaluation import EvalSummary, evaluate
from .history import load_history, to_transactions
from .mining import (
    MiningConfig,
    apriori,
    generate_rules,
    load_basket_transactions,
    read_rules_csv,
    write_rules_csv,
)
from .recommender import RecommenderConfig, format_advice, load_engine, run_repl
from .service import advice_to_dict, create_app

catalog_option = click.option(
    "--catalog",
    "catalog_path",
    envvar="ATRS_CATALOG",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Catalog CSV (env: ATRS_CATALOG).",
)
embeddings_option = click.option(
    "--embeddings",
    "embeddings_path",
    envvar="ATRS_EMBEDDINGS",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Word-vector text file (env: ATRS_EMBEDDINGS).",
)
history_option = click.option(
    "--history",
    "history_path",
    envvar="ATRS_HISTORY",
    type=click.Path(dir_okay=False),
    default="user_searches.csv",
    show_default=True,
    help="Search-history CSV (env: ATRS_HISTORY).",
)
record_in_catalog_option = click.option(
    "--record-in-catalog",
    is_flag=True,
    default=False,
    help="Also record searches that hit the catalog (default: only unknown items).",
)


@click.group()
def main() -> None:
    """Air-travel baggage advisory: verdict lookup, similar items, and mined suggestions."""


@main.command()
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option(
    "--format",
    "input_format",
    type=click.Choice(["basket", "history"]),
    default="basket",
    show_default=True,
    help="basket: headerless CSV, one transaction per row; history: search-history CSV.",
)
@click.option("--min-support", type=float, default=0.1, show_default=True)
@click.option("--min-confidence", type=float, default=0.5, show_default=True)
@click.option("--max-size", type=int, default=None, help="Cap on itemset size.")
@click.option("--output", "output_path", type=click.Path(dir_okay=False), required=True)
def mine(input_path, input_format, min_support, min_confidence, max_size, output_path) -> None:
    """Mine association rules from a transactions file into a rules CSV."""
    with open(input_path, "r", encoding="utf-8", newline="") as fh:
        if input_format == "history":
            transactions, _ = to_transactions(load_history(fh))
        else:
            transactions, _ = load_basket_transactions(fh)
    if not transactions:
        raise click.ClickException("no transactions in input file")
    try:
        config = MiningConfig(
            min_support=min_support, min_confidence=min_confidence, max_itemset_size=max_size
        )
    except ValueError as exc:
        raise click.ClickException(str(exc)) from None
    itemsets = apriori(transactions, config)
    rules = generate_rules(itemsets, transactions, config)
    with open(output_path, "w", encoding="utf-8", newline="") as fh:
        write_rules_csv(rules, fh)
    click.echo(f"{len(itemsets)} frequent itemsets, {len(rules)} rules -> {output_path}")


@main.command("eval")
@click.option("--rules", "rules_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option(
    "--universe",
    "universe_path",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Text file with one item per line.",
)
@click.option("--output", "output_path", type=click.Path(dir_okay=False), required=True)
@click.option("--label", default="", help="Dataset label stored in the summary.")
def eval_cmd(rules_path, universe_path, output_path, label) -> None:
    """Summarize a rules CSV into a metrics JSON."""
    with open(rules_path, "r", encoding="utf-8", newline="") as fh:
        rules = read_rules_csv(fh)
    universe = [
        line.strip()
        for line in Path(universe_path).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    summary = evaluate(rules, universe, dataset_label=label or Path(rules_path).stem)
    Path(output_path).write_text(json.dumps(summary.to_dict(), indent=2) + "\n", encoding="utf-8")
    click.echo(f"{summary.rule_count} rules summarized -> {output_path}")


@main.command()
@click.option("--a", "path_a", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--b", "path_b", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--output", "output_path", type=click.Path(dir_okay=False), required=True)
def compare(path_a, path_b, output_path) -> None:
    """Pair two metrics JSONs into plot-ready CSV rows (metric, value_a, value_b)."""
    summaries = []
    for path in (path_a, path_b):
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        summaries.append(EvalSummary(**payload))
    rows = compare_summaries(summaries[0], summaries[1])
    with open(output_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["metric", "value_a", "value_b"])
        for row in rows:
            writer.writerow([row.metric, repr(row.value_a), repr(row.value_b)])
    click.echo(f"{len(rows)} metric pairs -> {output_path}")


@main.command()
@click.option("--query", required=True)
@click.option("--top-n", type=int, default=5, show_default=True)
@click.option("--format", "output_format", type=click.Choice(["text", "json"]), default="text")
@click.option("--no-record", is_flag=True, default=False, help="Do not append to history.")
@catalog_option
@embeddings_option
@history_option
@record_in_catalog_option
def recommend(
    query,
    top_n,
    output_format,
    no_record,
    catalog_path,
    embeddings_path,
    history_path,
    record_in_catalog,
) -> None:
    """One-shot advice for a single query."""
    if top_n < 1:
        raise click.ClickException(f"--top-n must be >= 1, got {top_n}")
    try:
        engine = load_engine(
            catalog_path,
            embeddings_path,
            history_path,
            RecommenderConfig(top_n=top_n),
            record_in_catalog=record_in_catalog,
        )
    except (OSError, ValueError) as exc:
        raise click.ClickException(str(exc)) from None
    advice = engine.advise(query, record=not no_record)
    if output_format == "json":
        click.echo(json.dumps(advice_to_dict(advice, engine), indent=2))
    else:
        click.echo(format_advice(advice))


@main.command()
@catalog_option
@embeddings_option
@history_option
@record_in_catalog_option
@click.option("--top-n", type=int, default=5, show_default=True)
def repl(catalog_path, embeddings_path, history_path, record_in_catalog, top_n) -> None:
    """Interactive query loop; type 'exit' to quit."""
    status = run_repl(
        RecommenderConfig(top_n=top_n),
        catalog_path=catalog_path,
        embeddings_path=embeddings_path,
        history_path=history_path,
        record_in_catalog=record_in_catalog,
    )
    sys.exit(status)


@main.command()
@catalog_option
@click.option("--output", "output_path", type=click.Path(dir_okay=False), default=None)
def stats(catalog_path, output_path) -> None:
    """Distribution counts for the catalog (flags, categories, cross-tabs)."""
    with open(catalog_path, "r", encoding="utf-8", newline="") as fh:
        catalog = load_catalog(fh)
    payload = json.dumps(dataclasses.asdict(distribution_stats(catalog)), indent=2)
    if output_path:
        Path(output_path).write_text(payload + "\n", encoding="utf-8")
        click.echo(f"stats -> {output_path}")
    else:
        click.echo(payload)


@main.command()
@click.option("--port", envvar="ATRS_PORT", type=int, default=8080, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@catalog_option
@embeddings_option
@history_option
@record_in_catalog_option
@click.option("--top-n", type=int, default=5, show_default=True)
@click.option("--constraints", "constraints_path", type=click.Path(exists=True), default=None)
def serve(
    port,
    host,
    catalog_path,
    embeddings_path,
    history_path,
    record_in_catalog,
    top_n,
    constraints_path,
) -> None:
    """Run the JSON advisory service."""
    import uvicorn

    try:
        engine = load_engine(
            catalog_path,
            embeddings_path,
            history_path,
            RecommenderConfig(top_n=top_n),
            record_in_catalog=record_in_catalog,
        )
    except (OSError, ValueError) as exc:
        raise click.ClickException(str(exc)) from None
    app = create_app(engine, constraints_path=constraints_path)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
