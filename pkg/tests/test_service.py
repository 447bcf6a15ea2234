"""Session lifecycle over the HTTP API, state machine enforcement, and
server-side integrity of recommendations."""

import pytest
from fastapi.testclient import TestClient

from outfitbox.api import create_app
from outfitbox.catalog import ClothingType
from outfitbox.engine import DecoderScorer, Outfit, score_outfit
from outfitbox.service import BoxService, SessionStore
from outfitbox.training import load_checkpoint_dir

from conftest import BW, FW, TW


@pytest.fixture()
def service(world, checkpoint_dir, tmp_path):
    decoders = load_checkpoint_dir(checkpoint_dir, expected_vocab_sha256=world.catalog.vocab_sha256())
    return BoxService(
        world.catalog,
        world.features,
        decoders,
        SessionStore(tmp_path / "store.db"),
        outfit_limit=20,
    )


@pytest.fixture()
def client(service):
    return TestClient(create_app(service))


def _drive_to_prices(client, budget_ready=True):
    sid = client.post("/sessions").json()["session"]
    assert client.post(f"/sessions/{sid}/occasion", json={"occasion": "casual"}).status_code == 200
    for t in ClothingType:
        page = client.get(f"/sessions/{sid}/items", params={"type": t.value, "page": 0}).json()
        first = page["items"][0]["id"]
        r = client.post(f"/sessions/{sid}/choices", json={"type": t.value, "items": [first]})
        assert r.status_code == 200
    return sid


def _constraints_body(budget=9000):
    return {
        "price_ranges": {t.value: (1, 3000) for t in ClothingType},
        "budget": budget,
    }


def test_sessions_are_distinct_and_isolated(client):
    a = client.post("/sessions").json()
    b = client.post("/sessions").json()
    assert a["session"] != b["session"]
    assert a["state"] == "choosing_occasion"
    client.post(f"/sessions/{a['session']}/occasion", json={"occasion": "formal"})
    # session b still expects an occasion; its state is untouched by a
    r = client.get(f"/sessions/{b['session']}/items", params={"type": "top_wear"})
    assert r.status_code == 409


def test_unknown_session_404(client):
    assert client.post("/sessions/nope/occasion", json={"occasion": "casual"}).status_code == 404


def test_item_pages_filter_and_paginate(client, world):
    sid = client.post("/sessions").json()["session"]
    client.post(f"/sessions/{sid}/occasion", json={"occasion": "casual"})
    seen = []
    page = 0
    while True:
        body = client.get(
            f"/sessions/{sid}/items", params={"type": "top_wear", "page": page}
        ).json()
        assert len(body["items"]) <= 8
        for item in body["items"]:
            assert item["occasion"] == "casual"
        seen += [x["id"] for x in body["items"]]
        if body["exhausted"]:
            break
        page += 1
    assert len(seen) == len(set(seen))  # no repeats across pages
    casual_tw = [x.id for x in world.catalog.items_of(TW) if x.occasion.value == "casual"]
    assert seen == casual_tw
    # same page re-request is identical
    again = client.get(f"/sessions/{sid}/items", params={"type": "top_wear", "page": 0}).json()
    assert [x["id"] for x in again["items"]] == seen[:8]


def test_page_sizes_8_8_4_for_20_items(world, checkpoint_dir, tmp_path):
    # restrict to a 20-item casual pool by querying bottom wear of the world
    # is not 20, so drive the arithmetic directly through the service core
    decoders = load_checkpoint_dir(checkpoint_dir)
    svc = BoxService(world.catalog, world.features, decoders, SessionStore(tmp_path / "s.db"))
    sid = svc.create_session()["session"]
    svc.set_occasion(sid, "casual")
    pool = [x for x in world.catalog.items_of(TW) if x.occasion.value == "casual"]
    sizes = []
    page = 0
    while True:
        body = svc.sample_items(sid, TW, page)
        sizes.append(len(body["items"]))
        if body["exhausted"]:
            break
        page += 1
    assert sum(sizes) == len(pool)
    assert all(s == 8 for s in sizes[:-1])


def test_state_machine_rejections(client):
    sid = client.post("/sessions").json()["session"]
    # items before occasion
    assert client.get(f"/sessions/{sid}/items", params={"type": "top_wear"}).status_code == 409
    # recommend before anything
    assert client.post(f"/sessions/{sid}/recommend").status_code == 409
    client.post(f"/sessions/{sid}/occasion", json={"occasion": "casual"})
    # occasion twice
    assert client.post(f"/sessions/{sid}/occasion", json={"occasion": "formal"}).status_code == 409
    # constraints before choices
    assert (
        client.post(f"/sessions/{sid}/constraints", json=_constraints_body()).status_code == 409
    )
    # feedback before recommendation
    assert (
        client.post(f"/sessions/{sid}/feedback", json={"product": "x", "liked": True}).status_code
        == 409
    )


def test_recommend_before_prices_rejected(client):
    sid = _drive_to_prices(client)
    assert client.post(f"/sessions/{sid}/recommend").status_code == 409


def test_choice_validation(client):
    sid = client.post("/sessions").json()["session"]
    client.post(f"/sessions/{sid}/occasion", json={"occasion": "casual"})
    r = client.post(f"/sessions/{sid}/choices", json={"type": "top_wear", "items": ["ghost"]})
    assert r.status_code == 422
    r = client.post(f"/sessions/{sid}/choices", json={"type": "top_wear", "items": ["bw000"]})
    assert r.status_code == 422
    r = client.post(f"/sessions/{sid}/choices", json={"type": "top_wear", "items": []})
    assert r.status_code == 422


def test_constraints_validation(client):
    sid = _drive_to_prices(client)
    bad = _constraints_body()
    bad["budget"] = -5
    assert client.post(f"/sessions/{sid}/constraints", json=bad).status_code == 422
    bad = _constraints_body()
    bad["price_ranges"]["top_wear"] = (500, 500)
    assert client.post(f"/sessions/{sid}/constraints", json=bad).status_code == 422


def test_full_flow_recommendation_integrity(client, world, checkpoint_dir):
    sid = _drive_to_prices(client)
    assert client.post(f"/sessions/{sid}/constraints", json=_constraints_body()).status_code == 200
    rec = client.post(f"/sessions/{sid}/recommend")
    assert rec.status_code == 200
    body = rec.json()
    assert body["total_price"] <= body["budget"]
    box_items = {x["id"] for x in body["items"]}
    assert body["outfits"], "expected outfits in the box"
    decoders = load_checkpoint_dir(checkpoint_dir)
    scorer = DecoderScorer(decoders, world.features, world.catalog.vocab_index)
    for o in body["outfits"]:
        assert set(o["items"].values()) <= box_items
        outfit = Outfit(o["items"]["top_wear"], o["items"]["bottom_wear"], o["items"]["foot_wear"])
        assert score_outfit(outfit, scorer, world.catalog).c2 == 1
    # stored recommendation is retrievable and identical
    stored = client.get(f"/sessions/{sid}/recommendation").json()
    assert stored == body
    # second recommend on the same session is rejected
    assert client.post(f"/sessions/{sid}/recommend").status_code == 409


def test_budget_below_cheapest_outfit(client):
    sid = _drive_to_prices(client)
    client.post(f"/sessions/{sid}/constraints", json=_constraints_body(budget=3))
    r = client.post(f"/sessions/{sid}/recommend")
    assert r.status_code == 422
    assert r.json()["error"] == "budget_infeasible"


def test_feedback_roundtrip_and_hr(client):
    sid = _drive_to_prices(client)
    client.post(f"/sessions/{sid}/constraints", json=_constraints_body())
    body = client.post(f"/sessions/{sid}/recommend").json()
    item_ids = [x["id"] for x in body["items"]]
    outfit_ids = [o["id"] for o in body["outfits"]]
    for pid in item_ids[:2]:
        assert client.post(f"/sessions/{sid}/feedback", json={"product": pid, "liked": True}).status_code == 200
    client.post(f"/sessions/{sid}/feedback", json={"product": outfit_ids[0], "liked": True})
    # duplicate feedback: last write wins
    client.post(f"/sessions/{sid}/feedback", json={"product": item_ids[0], "liked": False})
    hr = client.get(f"/sessions/{sid}/hr").json()
    assert hr["item_hr"] == pytest.approx(1 / len(item_ids))
    assert hr["outfit_hr"] == pytest.approx(1 / len(outfit_ids))
    # foreign product rejected
    r = client.post(f"/sessions/{sid}/feedback", json={"product": "ghost", "liked": True})
    assert r.status_code == 404


def test_feedback_log_export(service):
    sid = service.create_session()["session"]
    service.set_occasion(sid, "casual")
    for t in ClothingType:
        pool = service.sample_items(sid, t, 0)["items"]
        service.set_choices(sid, t, [pool[0]["id"]])
    service.set_constraints(sid, {t.value: (1, 3000) for t in ClothingType}, 9000)
    rec = service.recommend(sid)
    pid = rec["items"][0]["id"]
    service.record_feedback(sid, pid, False)
    log = service.feedback_log(sid)
    assert len(log) == 1
    assert log[0]["product"] == pid
    assert log[0]["liked"] is False
    assert "ts" in log[0]
