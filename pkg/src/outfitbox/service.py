"""Session-scoped recommendation service.

Drives the full pipeline: occasion, per-type item choices, price ranges and
budget, then recommendation and feedback capture. Sessions persist in an
embedded sqlite key-value store; the catalog, features and checkpoints are
read-only. Session state follows the wizard order and out-of-order requests
are rejected.
"""

from __future__ import annotations

import json
import os
import sqlite3
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Mapping, Sequence

from .catalog import Catalog, ClothingType, FeatureStore, Occasion, load_catalog, load_features
from .decoder import DecoderParams, PairType
from .engine import DecoderScorer, Outfit, generate_preferred_outfits, score_outfit
from .metrics import hit_ratio
from .retrieval import PreferenceQuery, TypePreference, RetrievalError
from .solver import olr_solve
from .training import load_checkpoint_dir

PAGE_SIZE = 8

STATE_OCCASION = "choosing_occasion"
STATE_ITEMS = "choosing_items"
STATE_PRICES = "setting_prices"
STATE_RECOMMENDED = "recommended"


class ServiceError(Exception):
    http_status = 400
    code = "bad_request"

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class UnknownSession(ServiceError):
    http_status = 404
    code = "unknown_session"


class UnknownProduct(ServiceError):
    http_status = 404
    code = "unknown_product"


class StateError(ServiceError):
    http_status = 409
    code = "wrong_state"


class ValidationFailure(ServiceError):
    http_status = 422
    code = "invalid_request"


class NoCompatibleOutfits(ServiceError):
    http_status = 422
    code = "no_compatible_outfits"


class BudgetInfeasible(ServiceError):
    http_status = 422
    code = "budget_infeasible"


@dataclass
class ServiceConfig:
    catalog_path: str
    features_path: str
    ckpt_dir: str
    store_path: str
    m_per_type: dict[ClothingType, int] = field(
        default_factory=lambda: {
            ClothingType.TOP_WEAR: 15,
            ClothingType.BOTTOM_WEAR: 3,
            ClothingType.FOOT_WEAR: 2,
        }
    )
    outfit_limit: int = 90

    @classmethod
    def from_env(cls, **overrides) -> "ServiceConfig":
        def need(var: str, key: str) -> str:
            if key in overrides and overrides[key]:
                return str(overrides[key])
            value = os.environ.get(var)
            if not value:
                raise ServiceError(f"missing configuration: set {var} or pass --{key.replace('_', '-')}")
            return value

        cfg = cls(
            catalog_path=need("OUTFITBOX_CATALOG", "catalog_path"),
            features_path=need("OUTFITBOX_FEATURES", "features_path"),
            ckpt_dir=need("OUTFITBOX_CKPT_DIR", "ckpt_dir"),
            store_path=need("OUTFITBOX_STORE", "store_path"),
        )
        limit = overrides.get("outfit_limit") or os.environ.get("OUTFITBOX_LIMIT")
        if limit:
            cfg.outfit_limit = int(limit)
        return cfg


class SessionStore:
    """Embedded key-value store: one sqlite file, one row per session."""

    def __init__(self, path: str | Path):
        self._path = str(path)
        with self._connect() as conn:
            conn.execute("CREATE TABLE IF NOT EXISTS sessions (id TEXT PRIMARY KEY, data TEXT NOT NULL)")

    def _connect(self) -> sqlite3.Connection:
        return sqlite3.connect(self._path, timeout=30.0)

    def create(self, data: dict) -> str:
        sid = uuid.uuid4().hex
        with self._connect() as conn:
            conn.execute("INSERT INTO sessions (id, data) VALUES (?, ?)", (sid, json.dumps(data)))
        return sid

    def get(self, sid: str) -> dict:
        with self._connect() as conn:
            row = conn.execute("SELECT data FROM sessions WHERE id = ?", (sid,)).fetchone()
        if row is None:
            raise UnknownSession(f"no session {sid!r}")
        return json.loads(row[0])

    def put(self, sid: str, data: dict) -> None:
        with self._connect() as conn:
            cur = conn.execute("UPDATE sessions SET data = ? WHERE id = ?", (json.dumps(data), sid))
            if cur.rowcount == 0:
                raise UnknownSession(f"no session {sid!r}")


def _new_session_data() -> dict:
    return {
        "state": STATE_OCCASION,
        "occasion": None,
        "chosen": {t.value: [] for t in ClothingType},
        "constraints": None,
        "recommendation": None,
        "feedback": {},
    }


class BoxService:
    """Application core shared by the HTTP API and the CLI."""

    def __init__(
        self,
        catalog: Catalog,
        features: FeatureStore,
        decoders: Mapping[PairType, DecoderParams],
        store: SessionStore,
        m_per_type: Mapping[ClothingType, int] | None = None,
        outfit_limit: int = 90,
    ):
        self.catalog = catalog
        self.features = features
        self.decoders = dict(decoders)
        self.store = store
        self.m_per_type = dict(m_per_type or {})
        for t in ClothingType:
            self.m_per_type.setdefault(t, {ClothingType.TOP_WEAR: 15, ClothingType.BOTTOM_WEAR: 3, ClothingType.FOOT_WEAR: 2}[t])
        self.outfit_limit = outfit_limit
        self._scorer = DecoderScorer(self.decoders, features, catalog.vocab_index)

    @classmethod
    def from_config(cls, cfg: ServiceConfig) -> "BoxService":
        load = load_catalog(cfg.catalog_path)
        catalog = load.catalog
        features = load_features(cfg.features_path, catalog)
        decoders = load_checkpoint_dir(cfg.ckpt_dir, expected_vocab_sha256=catalog.vocab_sha256())
        return cls(
            catalog,
            features,
            decoders,
            SessionStore(cfg.store_path),
            m_per_type=cfg.m_per_type,
            outfit_limit=cfg.outfit_limit,
        )

    # -- session lifecycle -------------------------------------------------

    def create_session(self) -> dict:
        sid = self.store.create(_new_session_data())
        return {"session": sid, "state": STATE_OCCASION}

    def get_session(self, sid: str) -> dict:
        return self.store.get(sid)

    def set_occasion(self, sid: str, occasion: str) -> dict:
        data = self.store.get(sid)
        if data["state"] != STATE_OCCASION:
            raise StateError(f"occasion already set (state: {data['state']})")
        data["occasion"] = Occasion.parse(occasion).value
        data["state"] = STATE_ITEMS
        self.store.put(sid, data)
        return {"session": sid, "state": data["state"], "occasion": data["occasion"]}

    def sample_items(self, sid: str, t: ClothingType, page: int) -> dict:
        """Deterministic pages of 8 items matching the session occasion."""
        data = self.store.get(sid)
        if data["occasion"] is None:
            raise StateError("occasion must be set before browsing items")
        if page < 0:
            raise ValidationFailure("page must be >= 0")
        occasion = Occasion.parse(data["occasion"])
        pool = [x for x in self.catalog.items_of(t) if x.occasion is occasion]
        start = page * PAGE_SIZE
        chunk = pool[start : start + PAGE_SIZE]
        return {
            "session": sid,
            "type": t.value,
            "page": page,
            "items": [_item_payload(x) for x in chunk],
            "exhausted": start + PAGE_SIZE >= len(pool),
        }

    def set_choices(self, sid: str, t: ClothingType, item_ids: Sequence[str]) -> dict:
        data = self.store.get(sid)
        if data["state"] != STATE_ITEMS:
            raise StateError(f"cannot choose items in state {data['state']}")
        if not item_ids:
            raise ValidationFailure("at least one item must be chosen")
        occasion = Occasion.parse(data["occasion"])
        for item_id in item_ids:
            if item_id not in self.catalog:
                raise ValidationFailure(f"unknown item id {item_id!r}")
            item = self.catalog.get(item_id)
            if item.type is not t:
                raise ValidationFailure(f"item {item_id!r} is {item.type.value}, not {t.value}")
            if item.occasion is not occasion:
                raise ValidationFailure(f"item {item_id!r} does not match occasion {occasion.value}")
        data["chosen"][t.value] = list(dict.fromkeys(item_ids))
        if all(data["chosen"][ct.value] for ct in ClothingType):
            data["state"] = STATE_PRICES
        self.store.put(sid, data)
        return {"session": sid, "state": data["state"], "chosen": data["chosen"]}

    def set_constraints(self, sid: str, price_ranges: Mapping[str, Sequence[int]], budget: int) -> dict:
        data = self.store.get(sid)
        if data["state"] not in (STATE_PRICES,):
            raise StateError(f"cannot set constraints in state {data['state']}")
        if budget <= 0:
            raise ValidationFailure("budget must be a positive integer")
        parsed: dict[str, list[int]] = {}
        for t in ClothingType:
            if t.value not in price_ranges:
                raise ValidationFailure(f"missing price range for {t.value}")
            lo, hi = (int(v) for v in price_ranges[t.value])
            if lo >= hi:
                raise ValidationFailure(f"price range for {t.value} must satisfy lo < hi")
            parsed[t.value] = [lo, hi]
        data["constraints"] = {"price_ranges": parsed, "budget": int(budget)}
        self.store.put(sid, data)
        return {"session": sid, "state": data["state"], "constraints": data["constraints"]}

    # -- recommendation ----------------------------------------------------

    def recommend(self, sid: str) -> dict:
        data = self.store.get(sid)
        if data["state"] == STATE_RECOMMENDED:
            raise StateError("session already has a recommendation")
        if data["state"] != STATE_PRICES or not data["constraints"]:
            raise StateError("occasion, item choices and price constraints must be set first")
        budget = data["constraints"]["budget"]
        prefs = {}
        for t in ClothingType:
            lo, hi = data["constraints"]["price_ranges"][t.value]
            try:
                prefs[t] = TypePreference(
                    chosen=tuple(data["chosen"][t.value]),
                    price_lo=lo,
                    price_hi=hi,
                    m=self.m_per_type[t],
                )
            except RetrievalError as exc:
                raise ValidationFailure(str(exc)) from None
        query = PreferenceQuery(occasion=Occasion.parse(data["occasion"]), prefs=prefs)

        generated = generate_preferred_outfits(
            self.catalog, self.features, self._scorer, query, self.outfit_limit
        )
        if not generated.outfits:
            raise NoCompatibleOutfits("no compatible outfits under these preferences")

        kept: list[tuple[Outfit, object]] = []
        dropped = 0
        for outfit, score in zip(generated.outfits, generated.scores):
            if outfit.price(self.catalog) <= budget:
                kept.append((outfit, score))
            else:
                dropped += 1
        if not kept:
            raise BudgetInfeasible("every compatible outfit costs more than the budget")

        prices = {}
        for outfit, _ in kept:
            for item_id in outfit.ids():
                prices[item_id] = self.catalog.get(item_id).price
        box = olr_solve([o.ids() for o, _ in kept], prices, budget)

        # server-side integrity recheck before anything is persisted
        if box.total > budget:
            raise ServiceError("solver returned an over-budget box")
        for idx in box.indices:
            outfit, _ = kept[idx]
            if score_outfit(outfit, self._scorer, self.catalog).c2 != 1:
                raise ServiceError("box contains an outfit that fails re-verification")

        outfits_payload = []
        for n, idx in enumerate(box.indices):
            outfit, score = kept[idx]
            outfits_payload.append(
                {
                    "id": f"outfit-{n}",
                    "items": {t.value: outfit.item_id(t) for t in ClothingType},
                    "price": outfit.price(self.catalog),
                    "c1": score.c1,
                    "c2": score.c2,
                    "per_pair": {
                        pt.tag: {"p1": ps.p1, "score": ps.score} for pt, ps in score.per_pair.items()
                    },
                }
            )
        item_ids = sorted(box.items)
        recommendation = {
            "session": sid,
            "budget": budget,
            "total_price": box.total,
            "items": [_item_payload(self.catalog.get(i)) for i in item_ids],
            "outfits": outfits_payload,
            "generation_complete": generated.complete,
            "generated_outfits": len(generated.outfits),
            "dropped_over_budget": dropped,
        }
        data["recommendation"] = recommendation
        data["state"] = STATE_RECOMMENDED
        self.store.put(sid, data)
        return recommendation

    def get_recommendation(self, sid: str) -> dict:
        data = self.store.get(sid)
        if not data["recommendation"]:
            raise StateError("no recommendation yet")
        return data["recommendation"]

    # -- feedback ------------------------------------------------------------

    def record_feedback(self, sid: str, product_id: str, liked: bool) -> dict:
        data = self.store.get(sid)
        if not data["recommendation"]:
            raise StateError("feedback requires a recommendation")
        products = self._product_ids(data["recommendation"])
        if product_id not in products:
            raise UnknownProduct(f"product {product_id!r} is not part of this recommendation")
        data["feedback"][product_id] = {
            "liked": bool(liked),
            "ts": datetime.now(timezone.utc).isoformat(),
        }
        self.store.put(sid, data)
        return {"session": sid, "product": product_id, "liked": bool(liked)}

    def feedback_log(self, sid: str) -> list[dict]:
        data = self.store.get(sid)
        return [
            {"session": sid, "product": pid, "liked": rec["liked"], "ts": rec["ts"]}
            for pid, rec in sorted(data["feedback"].items())
        ]

    def session_hr(self, sid: str) -> dict:
        """Hit ratios over the recommended box: liked products over all
        products, computed separately for items and outfits."""
        data = self.store.get(sid)
        rec = data["recommendation"]
        if not rec:
            raise StateError("no recommendation yet")
        fb = data["feedback"]
        item_ids = [x["id"] for x in rec["items"]]
        outfit_ids = [o["id"] for o in rec["outfits"]]
        liked = lambda pid: bool(fb.get(pid, {}).get("liked", False))
        item_hits = sum(1 for i in item_ids if liked(i))
        outfit_hits = sum(1 for o in outfit_ids if liked(o))
        all_ids = item_ids + outfit_ids
        return {
            "session": sid,
            "item_hr": hit_ratio(len(item_ids), item_hits),
            "outfit_hr": hit_ratio(len(outfit_ids), outfit_hits) if outfit_ids else None,
            "overall_hr": hit_ratio(len(all_ids), item_hits + outfit_hits),
        }

    @staticmethod
    def _product_ids(recommendation: dict) -> set[str]:
        ids = {x["id"] for x in recommendation["items"]}
        ids |= {o["id"] for o in recommendation["outfits"]}
        return ids


def _item_payload(item) -> dict:
    return {
        "id": item.id,
        "type": item.type.value,
        "category": item.category,
        "occasion": item.occasion.value,
        "price": item.price,
        "title": " ".join(sorted(item.title_tokens)),
    }
