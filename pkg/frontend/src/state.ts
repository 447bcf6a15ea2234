/** Client-side wizard state: mirrors the server session state machine and
 * gates each step before the next one unlocks.
 */

import type { ItemCard, Recommendation } from "./api.js";

export const ITEM_TYPES = ["top_wear", "bottom_wear", "foot_wear"] as const;
export type ItemType = (typeof ITEM_TYPES)[number];

export const TYPE_LABELS: Record<ItemType, string> = {
  top_wear: "Top wear",
  bottom_wear: "Bottom wear",
  foot_wear: "Foot wear",
};

export type Step = "occasion" | ItemType | "constraints" | "box";

export const STEP_ORDER: Step[] = ["occasion", ...ITEM_TYPES, "constraints", "box"];

export type Occasion = "casual" | "formal";

export interface PriceRange {
  lo: number;
  hi: number;
}

/** The two ranges the service screenshots show, plus a custom escape hatch. */
export const PRESET_RANGES: { label: string; range: PriceRange }[] = [
  { label: "< 1K", range: { lo: 1, hi: 1000 } },
  { label: "1K - 3K", range: { lo: 1000, hi: 3000 } },
];

export interface WizardState {
  step: Step;
  session: string | null;
  occasion: Occasion | null;
  /** occasion that was actually posted; differs from `occasion` after
   * back-navigation until the next forward transition re-syncs */
  postedOccasion: Occasion | null;
  cards: Record<ItemType, ItemCard[]>;
  nextPage: Record<ItemType, number>;
  exhausted: Record<ItemType, boolean>;
  selected: Record<ItemType, string[]>;
  ranges: Record<ItemType, PriceRange>;
  budget: number | null;
  recommendation: Recommendation | null;
  /** product id -> liked, mirroring the server after each ack */
  feedback: Record<string, boolean>;
  busy: boolean;
  error: string | null;
}

function perType<T>(value: () => T): Record<ItemType, T> {
  return {
    top_wear: value(),
    bottom_wear: value(),
    foot_wear: value(),
  };
}

export function initialState(): WizardState {
  return {
    step: "occasion",
    session: null,
    occasion: null,
    postedOccasion: null,
    cards: perType(() => []),
    nextPage: perType(() => 0),
    exhausted: perType(() => false),
    selected: perType(() => []),
    ranges: perType(() => ({ ...PRESET_RANGES[0]!.range })),
    budget: null,
    recommendation: null,
    feedback: {},
    busy: false,
    error: null,
  };
}

export function stepIndex(step: Step): number {
  return STEP_ORDER.indexOf(step);
}

export function isItemStep(step: Step): step is ItemType {
  return (ITEM_TYPES as readonly string[]).includes(step);
}

export function validRange(range: PriceRange): boolean {
  return Number.isInteger(range.lo) && Number.isInteger(range.hi) && range.lo >= 0 && range.lo < range.hi;
}

export function validBudget(budget: number | null): boolean {
  return budget !== null && Number.isInteger(budget) && budget > 0;
}

/** Gate for the "Next" control: at least one selection on item steps, valid
 * numbers on the constraints step. */
export function canProceed(state: WizardState): boolean {
  if (state.busy) {
    return false;
  }
  if (state.step === "occasion") {
    return state.occasion !== null;
  }
  if (isItemStep(state.step)) {
    return state.selected[state.step].length > 0;
  }
  if (state.step === "constraints") {
    return validBudget(state.budget) && ITEM_TYPES.every((t) => validRange(state.ranges[t]));
  }
  return false;
}

export function toggleSelection(state: WizardState, type: ItemType, id: string): void {
  const current = state.selected[type];
  state.selected[type] = current.includes(id)
    ? current.filter((x) => x !== id)
    : [...current, id];
}

/** Append a page of cards, skipping ids already shown. */
export function appendCards(state: WizardState, type: ItemType, cards: ItemCard[]): void {
  const seen = new Set(state.cards[type].map((c) => c.id));
  state.cards[type] = [...state.cards[type], ...cards.filter((c) => !seen.has(c.id))];
}

/** Occasion changed after items were browsed: stale cards and selections
 * must not leak into the new session. */
export function resetItemState(state: WizardState): void {
  state.cards = perType(() => []);
  state.nextPage = perType(() => 0);
  state.exhausted = perType(() => false);
  state.selected = perType(() => []);
}
