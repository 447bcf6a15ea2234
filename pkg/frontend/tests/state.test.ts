import { describe, expect, it } from "vitest";

import {
  ITEM_TYPES,
  appendCards,
  canProceed,
  initialState,
  toggleSelection,
  validBudget,
  validRange,
} from "../src/state.js";
import { recorded } from "./fixtures.js";

describe("step gating", () => {
  it("occasion step requires a pick", () => {
    const s = initialState();
    expect(canProceed(s)).toBe(false);
    s.occasion = "casual";
    expect(canProceed(s)).toBe(true);
  });

  it("item steps need at least one selection", () => {
    const s = initialState();
    s.step = "top_wear";
    expect(canProceed(s)).toBe(false);
    toggleSelection(s, "top_wear", "tw000");
    expect(canProceed(s)).toBe(true);
    toggleSelection(s, "top_wear", "tw000"); // toggle off again
    expect(canProceed(s)).toBe(false);
  });

  it("constraints step rejects non-positive budget before submission", () => {
    const s = initialState();
    s.step = "constraints";
    s.budget = 0;
    expect(canProceed(s)).toBe(false);
    s.budget = -100;
    expect(canProceed(s)).toBe(false);
    s.budget = 5000;
    expect(canProceed(s)).toBe(true);
  });

  it("constraints step needs every range valid", () => {
    const s = initialState();
    s.step = "constraints";
    s.budget = 5000;
    s.ranges.bottom_wear = { lo: 900, hi: 900 };
    expect(canProceed(s)).toBe(false);
    s.ranges.bottom_wear = { lo: 900, hi: 1800 };
    expect(canProceed(s)).toBe(true);
  });
});

describe("validators", () => {
  it("budget must be a positive integer", () => {
    expect(validBudget(null)).toBe(false);
    expect(validBudget(0)).toBe(false);
    expect(validBudget(-3)).toBe(false);
    expect(validBudget(2.5)).toBe(false);
    expect(validBudget(1)).toBe(true);
  });

  it("ranges are half-open sane intervals", () => {
    expect(validRange({ lo: 0, hi: 1000 })).toBe(true);
    expect(validRange({ lo: 1000, hi: 1000 })).toBe(false);
    expect(validRange({ lo: -5, hi: 10 })).toBe(false);
  });
});

describe("card accumulation", () => {
  it("appending a page skips ids already shown", () => {
    const s = initialState();
    const page0 = [...recorded.itemsPages.top_wear[0]!.items];
    appendCards(s, "top_wear", page0);
    appendCards(s, "top_wear", page0); // same page twice
    expect(s.cards.top_wear.map((c) => c.id)).toEqual(page0.map((c) => c.id));
    const page1 = [...recorded.itemsPages.top_wear[1]!.items];
    appendCards(s, "top_wear", page1);
    const ids = s.cards.top_wear.map((c) => c.id);
    expect(new Set(ids).size).toBe(ids.length);
    expect(ids.length).toBe(page0.length + page1.length);
  });

  it("covers all three clothing types", () => {
    expect(ITEM_TYPES).toEqual(["top_wear", "bottom_wear", "foot_wear"]);
  });
});
