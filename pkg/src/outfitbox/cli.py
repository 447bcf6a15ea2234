"""Command line interface.

Core pipeline commands (retrieve, train, score-pair, generate, solve,
evaluate) plus a `session` group that mirrors every HTTP endpoint, so the
whole flow runs end to end without the web UI.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from .catalog import ClothingType, Occasion, load_catalog, load_features
from .decoder import HyperParams, PairType, pair_probability
from .engine import DecoderScorer, generate_preferred_outfits
from .metrics import OutfitExample, report_osf
from .retrieval import CatalogView, PreferenceQuery, TypePreference, euclidean_distance, rpi
from .service import BoxService, ServiceConfig, ServiceError, SessionStore
from .solver import Instance, exact_solve, olr_solve
from .training import PairDataset, load_checkpoint, load_checkpoint_dir, save_checkpoint, train_decoder


def _emit(obj) -> None:
    click.echo(json.dumps(obj, indent=2, sort_keys=True))


def _load(catalog_path: str, features_path: str):
    load = load_catalog(catalog_path)
    if load.rejected:
        click.echo(f"warning: {len(load.rejected)} catalog rows rejected", err=True)
    features = load_features(features_path, load.catalog)
    return load.catalog, features


@click.group()
def main():
    """Outfit box recommendation toolkit."""


@main.command()
@click.option("--catalog", "catalog_path", required=True, type=click.Path(exists=True))
@click.option("--features", "features_path", required=True, type=click.Path(exists=True))
@click.option("--type", "type_", required=True, help="tw | bw | fw")
@click.option("--occasion", required=True, help="formal | casual")
@click.option("--price-lo", type=int, required=True)
@click.option("--price-hi", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--chosen", required=True, help="comma-separated item ids")
@click.option("--exclude", default="", help="comma-separated item ids to mask out")
def retrieve(catalog_path, features_path, type_, occasion, price_lo, price_hi, m, chosen, exclude):
    """Rank preferred items of one type; prints ids and distances as JSON."""
    catalog, features = _load(catalog_path, features_path)
    t = ClothingType.parse(type_)
    query = PreferenceQuery(
        occasion=Occasion.parse(occasion),
        prefs={t: TypePreference(tuple(chosen.split(",")), price_lo, price_hi, m)},
    )
    view = CatalogView(catalog)
    if exclude:
        view = view.exclude(exclude.split(","))
    anchors = {c.strip() for c in chosen.split(",")}
    ranked = rpi(view, features, query, t)
    payload = []
    for item in ranked:
        anchor_items = [catalog.get(a) for a in anchors]
        dist = min(
            euclidean_distance(
                features.global_vector(item.feature_ref), features.global_vector(a.feature_ref)
            )
            for a in anchor_items
            if a.category == item.category
        )
        payload.append({"id": item.id, "distance": dist, "price": item.price, "category": item.category})
    _emit(payload)


@main.command()
@click.option("--pair", required=True, help="tw-bw | bw-fw | tw-fw")
@click.option("--data", "data_path", required=True, type=click.Path(exists=True))
@click.option("--catalog", "catalog_path", required=True, type=click.Path(exists=True))
@click.option("--features", "features_path", required=True, type=click.Path(exists=True))
@click.option("--config", "config_path", type=click.Path(exists=True), help="hyperparameter JSON")
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--val-fraction", type=float, default=0.2, show_default=True)
def train(pair, data_path, catalog_path, features_path, config_path, out_path, val_fraction):
    """Train one pair-type compatibility decoder and write a checkpoint."""
    catalog, features = _load(catalog_path, features_path)
    pair_type = PairType.parse(pair)
    dataset = PairDataset.from_jsonl(data_path, pair_type)
    hyper = HyperParams.desk()
    if config_path:
        hyper = HyperParams.from_dict(json.loads(Path(config_path).read_text()))
    validation = None
    if val_fraction > 0:
        dataset, validation = dataset.split(val_fraction, np.random.default_rng(hyper.seed))
    result = train_decoder(dataset, catalog, features, hyper, validation=validation)
    save_checkpoint(out_path, result.params, hyper, catalog.vocab_sha256())
    last = result.history[-1]
    _emit(
        {
            "pair": pair_type.tag,
            "epochs": len(result.history),
            "final_loss": last.mean_loss,
            "final_val_auc": last.val_auc,
            "checkpoint": str(out_path),
        }
    )


@main.command("score-pair")
@click.option("--ckpt", "ckpt_path", required=True, type=click.Path(exists=True))
@click.option("--catalog", "catalog_path", required=True, type=click.Path(exists=True))
@click.option("--features", "features_path", required=True, type=click.Path(exists=True))
@click.option("--a", "a_id", required=True)
@click.option("--b", "b_id", required=True)
def score_pair(ckpt_path, catalog_path, features_path, a_id, b_id):
    """Compatibility probability and binary score for one item pair."""
    catalog, features = _load(catalog_path, features_path)
    params, _, _ = load_checkpoint(ckpt_path)
    a, b = catalog.get(a_id), catalog.get(b_id)
    if a.type is not params.pair_type.first:
        a, b = b, a
    p = pair_probability(a, b, params, features, catalog.vocab_index)
    _emit({"pair": params.pair_type.tag, "a": a.id, "b": b.id, "p1": float(p[1]), "score": int(p[1] > p[0])})


@main.command()
@click.option("--catalog", "catalog_path", required=True, type=click.Path(exists=True))
@click.option("--features", "features_path", required=True, type=click.Path(exists=True))
@click.option("--query", "query_path", required=True, type=click.Path(exists=True))
@click.option("--ckpt-dir", required=True, type=click.Path(exists=True))
@click.option("--L", "limit", type=int, default=90, show_default=True)
@click.option("--out", "out_path", type=click.Path())
def generate(catalog_path, features_path, query_path, ckpt_dir, limit, out_path):
    """Generate the preferred outfit set for a preference query."""
    catalog, features = _load(catalog_path, features_path)
    decoders = load_checkpoint_dir(ckpt_dir, expected_vocab_sha256=catalog.vocab_sha256())
    scorer = DecoderScorer(decoders, features, catalog.vocab_index)
    query = PreferenceQuery.from_json(query_path)
    result = generate_preferred_outfits(catalog, features, scorer, query, limit)
    payload = {
        "complete": result.complete,
        "count": len(result.outfits),
        "rounds": [
            {"retrieved": {t.value: n for t, n in r.retrieved.items()}, "checked": r.checked, "passed": r.passed}
            for r in result.rounds
        ],
        "outfits": [
            {
                "items": {t.value: o.item_id(t) for t in ClothingType},
                "price": o.price(catalog),
                "c1": s.c1,
                "c2": s.c2,
                "per_pair": {pt.tag: {"p1": ps.p1, "score": ps.score} for pt, ps in s.per_pair.items()},
            }
            for o, s in zip(result.outfits, result.scores)
        ],
    }
    if out_path:
        Path(out_path).write_text(json.dumps(payload, indent=2))
        click.echo(f"wrote {out_path}")
    else:
        _emit(payload)


@main.command()
@click.option("--instance", "instance_path", required=True, type=click.Path(exists=True))
@click.option("--exact", is_flag=True, help="use the exhaustive oracle (small instances only)")
@click.option("--out", "out_path", type=click.Path())
def solve(instance_path, exact, out_path):
    """Pack outfits into a budget-feasible box."""
    inst = Instance.from_json(instance_path)
    if exact:
        box = exact_solve(inst.outfits, inst.prices, inst.budget)
        stages = None
    else:
        box = olr_solve(inst.outfits, inst.prices, inst.budget)
        stages = [
            [[sorted(o) for o in b] for b in stage] for stage in box.decant_stages
        ]
    payload = {
        "budget": inst.budget,
        "chosen_indices": list(box.indices),
        "outfits": [sorted(o) for o in box.outfits],
        "items": sorted(box.items),
        "total_price": box.total,
        "dropped_over_budget": list(box.dropped),
    }
    if stages is not None:
        payload["decantation"] = {"boxes": stages[0], "components": stages[1], "outfits": stages[2]}
    if out_path:
        Path(out_path).write_text(json.dumps(payload, indent=2))
        click.echo(f"wrote {out_path}")
    else:
        _emit(payload)


@main.command()
@click.option("--testset", "testset_path", required=True, type=click.Path(exists=True))
@click.option("--catalog", "catalog_path", required=True, type=click.Path(exists=True))
@click.option("--features", "features_path", required=True, type=click.Path(exists=True))
@click.option("--ckpt-dir", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", type=click.Path())
def evaluate(testset_path, catalog_path, features_path, ckpt_dir, out_path):
    """Pairwise / AP / C1 / C2 AUC and accuracy on a labeled outfit test set."""
    catalog, features = _load(catalog_path, features_path)
    decoders = load_checkpoint_dir(ckpt_dir, expected_vocab_sha256=catalog.vocab_sha256())
    scorer = DecoderScorer(decoders, features, catalog.vocab_index)
    obj = json.loads(Path(testset_path).read_text())
    testset = []
    for rec in obj["outfits"]:
        pair_labels = None
        if rec.get("pair_labels"):
            pair_labels = {PairType.parse(tag): int(v) for tag, v in rec["pair_labels"].items()}
        testset.append(
            OutfitExample(
                items={ClothingType.parse(k): v for k, v in rec["items"].items()},
                label=int(rec["label"]),
                pair_labels=pair_labels,
            )
        )
    report = report_osf(testset, scorer, catalog).to_dict()
    if out_path:
        Path(out_path).write_text(json.dumps(report, indent=2))
        click.echo(f"wrote {out_path}")
    else:
        _emit(report)


@main.command("feedback-dump")
@click.option("--store", "store_path", required=True, type=click.Path(exists=True))
@click.option("--session", "sid", required=True)
def feedback_dump(store_path, sid):
    """Export a session's raw feedback as JSON lines."""
    store = SessionStore(store_path)
    data = store.get(sid)
    for pid, rec in sorted(data["feedback"].items()):
        click.echo(json.dumps({"session": sid, "product": pid, "liked": rec["liked"], "ts": rec["ts"]}))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--catalog", "catalog_path", envvar="OUTFITBOX_CATALOG")
@click.option("--features", "features_path", envvar="OUTFITBOX_FEATURES")
@click.option("--ckpt-dir", envvar="OUTFITBOX_CKPT_DIR")
@click.option("--store", "store_path", envvar="OUTFITBOX_STORE")
@click.option("--webui-dist", envvar="OUTFITBOX_WEBUI_DIST")
def serve(host, port, catalog_path, features_path, ckpt_dir, store_path, webui_dist):
    """Run the HTTP service."""
    import logging

    import uvicorn

    from .api import create_app

    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(message)s")
    cfg = ServiceConfig.from_env(
        catalog_path=catalog_path, features_path=features_path, ckpt_dir=ckpt_dir, store_path=store_path
    )
    service = BoxService.from_config(cfg)
    uvicorn.run(create_app(service, webui_dist=webui_dist), host=host, port=port)


# ---------------------------------------------------------------------------
# session subcommands (CLI mirror of the HTTP endpoints)
# ---------------------------------------------------------------------------


def _service(catalog_path, features_path, ckpt_dir, store_path) -> BoxService:
    cfg = ServiceConfig.from_env(
        catalog_path=catalog_path, features_path=features_path, ckpt_dir=ckpt_dir, store_path=store_path
    )
    return BoxService.from_config(cfg)


def _session_options(f):
    for opt in (
        click.option("--store", "store_path", envvar="OUTFITBOX_STORE"),
        click.option("--ckpt-dir", envvar="OUTFITBOX_CKPT_DIR"),
        click.option("--features", "features_path", envvar="OUTFITBOX_FEATURES"),
        click.option("--catalog", "catalog_path", envvar="OUTFITBOX_CATALOG"),
    ):
        f = opt(f)
    return f


@main.group()
def session():
    """Session lifecycle: the same operations the HTTP API exposes."""


def _run(fn):
    try:
        _emit(fn())
    except ServiceError as exc:
        click.echo(json.dumps({"error": exc.code, "detail": exc.detail}), err=True)
        sys.exit(1)


@session.command("new")
@_session_options
def session_new(catalog_path, features_path, ckpt_dir, store_path):
    svc = _service(catalog_path, features_path, ckpt_dir, store_path)
    _run(svc.create_session)


@session.command("occasion")
@click.option("--session", "sid", required=True)
@click.option("--occasion", required=True)
@_session_options
def session_occasion(catalog_path, features_path, ckpt_dir, store_path, sid, occasion):
    svc = _service(catalog_path, features_path, ckpt_dir, store_path)
    _run(lambda: svc.set_occasion(sid, occasion))


@session.command("items")
@click.option("--session", "sid", required=True)
@click.option("--type", "type_", required=True)
@click.option("--page", type=int, default=0, show_default=True)
@_session_options
def session_items(catalog_path, features_path, ckpt_dir, store_path, sid, type_, page):
    svc = _service(catalog_path, features_path, ckpt_dir, store_path)
    _run(lambda: svc.sample_items(sid, ClothingType.parse(type_), page))


@session.command("choose")
@click.option("--session", "sid", required=True)
@click.option("--type", "type_", required=True)
@click.option("--items", required=True, help="comma-separated item ids")
@_session_options
def session_choose(catalog_path, features_path, ckpt_dir, store_path, sid, type_, items):
    svc = _service(catalog_path, features_path, ckpt_dir, store_path)
    _run(lambda: svc.set_choices(sid, ClothingType.parse(type_), items.split(",")))


@session.command("constraints")
@click.option("--session", "sid", required=True)
@click.option("--budget", type=int, required=True)
@click.option("--price-range", "ranges", multiple=True, help="type:lo:hi, e.g. tw:0:1000")
@_session_options
def session_constraints(catalog_path, features_path, ckpt_dir, store_path, sid, budget, ranges):
    svc = _service(catalog_path, features_path, ckpt_dir, store_path)
    parsed = {}
    for spec in ranges:
        type_, lo, hi = spec.split(":")
        parsed[ClothingType.parse(type_).value] = (int(lo), int(hi))
    _run(lambda: svc.set_constraints(sid, parsed, budget))


@session.command("recommend")
@click.option("--session", "sid", required=True)
@_session_options
def session_recommend(catalog_path, features_path, ckpt_dir, store_path, sid):
    svc = _service(catalog_path, features_path, ckpt_dir, store_path)
    _run(lambda: svc.recommend(sid))


@session.command("recommendation")
@click.option("--session", "sid", required=True)
@_session_options
def session_recommendation(catalog_path, features_path, ckpt_dir, store_path, sid):
    svc = _service(catalog_path, features_path, ckpt_dir, store_path)
    _run(lambda: svc.get_recommendation(sid))


@session.command("feedback")
@click.option("--session", "sid", required=True)
@click.option("--product", required=True)
@click.option("--liked/--disliked", default=True)
@_session_options
def session_feedback(catalog_path, features_path, ckpt_dir, store_path, sid, product, liked):
    svc = _service(catalog_path, features_path, ckpt_dir, store_path)
    _run(lambda: svc.record_feedback(sid, product, liked))


@session.command("hr")
@click.option("--session", "sid", required=True)
@_session_options
def session_hr(catalog_path, features_path, ckpt_dir, store_path, sid):
    svc = _service(catalog_path, features_path, ckpt_dir, store_path)
    _run(lambda: svc.session_hr(sid))


if __name__ == "__main__":
    main()
