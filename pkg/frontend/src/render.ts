/** DOM rendering. Every figure shown in the box view is a verbatim server
 * value; the client performs no price arithmetic of its own. */

import type { ItemCard, Recommendation } from "./api.js";
import {
  ITEM_TYPES,
  PRESET_RANGES,
  TYPE_LABELS,
  type ItemType,
  type WizardState,
  canProceed,
  isItemStep,
  validBudget,
  validRange,
} from "./state.js";
import type { WizardController } from "./wizard.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = []
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

function itemCard(
  card: ItemCard,
  opts: { selected?: boolean; onClick?: () => void } = {}
): HTMLElement {
  const node = el("div", { class: `card${opts.selected ? " selected" : ""}`, "data-item": card.id }, [
    el("div", { class: "card-swatch" }, [card.title.split(" ")[0] ?? ""]),
    el("div", { class: "card-category" }, [card.category]),
    el("div", { class: "card-price price", "data-price": String(card.price) }, [`₹${card.price}`]),
  ]);
  if (opts.onClick) {
    node.addEventListener("click", opts.onClick);
  }
  return node;
}

function occasionStep(state: WizardState, controller: WizardController): HTMLElement {
  const section = el("section", { class: "step step-occasion" }, [
    el("h2", {}, ["What is the occasion?"]),
  ]);
  for (const occ of ["casual", "formal"] as const) {
    const label = el("label", { class: "occasion-option" });
    const radio = el("input", { type: "radio", name: "occasion", value: occ });
    (radio as HTMLInputElement).checked = state.occasion === occ;
    radio.addEventListener("change", () => controller.setOccasion(occ));
    label.append(radio, occ);
    section.append(label);
  }
  return section;
}

function itemStep(state: WizardState, controller: WizardController, type: ItemType): HTMLElement {
  const section = el("section", { class: "step step-items", "data-type": type }, [
    el("h2", {}, [`Pick ${TYPE_LABELS[type].toLowerCase()} you like`]),
  ]);
  const grid = el("div", { class: "grid" });
  for (const card of state.cards[type]) {
    const selected = state.selected[type].includes(card.id);
    grid.append(itemCard(card, { selected, onClick: () => controller.toggleItem(type, card.id) }));
  }
  section.append(grid);
  const loadMore = el("button", { class: "load-more", type: "button" }, ["Load new items"]);
  if (state.exhausted[type]) {
    (loadMore as HTMLButtonElement).disabled = true;
    loadMore.textContent = "No more items";
  }
  loadMore.addEventListener("click", () => void controller.loadMore(type));
  section.append(loadMore);
  return section;
}

function constraintsStep(state: WizardState, controller: WizardController): HTMLElement {
  const section = el("section", { class: "step step-constraints" }, [
    el("h2", {}, ["Price ranges and budget"]),
  ]);
  for (const type of ITEM_TYPES) {
    const row = el("div", { class: "range-row", "data-type": type }, [
      el("span", { class: "range-label" }, [TYPE_LABELS[type]]),
    ]);
    for (const preset of PRESET_RANGES) {
      const active =
        state.ranges[type].lo === preset.range.lo && state.ranges[type].hi === preset.range.hi;
      const btn = el(
        "button",
        { class: `preset${active ? " active" : ""}`, type: "button" },
        [preset.label]
      );
      btn.addEventListener("click", () => controller.setRange(type, preset.range.lo, preset.range.hi));
      row.append(btn);
    }
    const lo = el("input", { class: "range-lo", type: "number", min: "0" }) as HTMLInputElement;
    const hi = el("input", { class: "range-hi", type: "number", min: "1" }) as HTMLInputElement;
    lo.value = String(state.ranges[type].lo);
    hi.value = String(state.ranges[type].hi);
    const update = () => controller.setRange(type, Number(lo.value), Number(hi.value));
    lo.addEventListener("change", update);
    hi.addEventListener("change", update);
    row.append("custom:", lo, "to", hi);
    if (!validRange(state.ranges[type])) {
      row.append(el("span", { class: "field-error" }, ["low must be below high"]));
    }
    section.append(row);
  }
  const budget = el("input", { class: "budget", type: "number", min: "1" }) as HTMLInputElement;
  budget.value = state.budget === null ? "" : String(state.budget);
  budget.addEventListener("change", () => {
    const parsed = budget.value === "" ? null : Number(budget.value);
    controller.setBudget(parsed === null || Number.isNaN(parsed) ? null : parsed);
  });
  const budgetRow = el("div", { class: "budget-row" }, ["Total budget:", budget]);
  if (state.budget !== null && !validBudget(state.budget)) {
    budgetRow.append(el("span", { class: "field-error" }, ["budget must be a positive integer"]));
  }
  section.append(budgetRow);
  return section;
}

function feedbackToggle(
  state: WizardState,
  controller: WizardController,
  productId: string
): HTMLElement {
  const liked = state.feedback[productId];
  const wrap = el("span", { class: "feedback", "data-product": productId });
  const btn = el(
    "button",
    { class: `toggle${liked === undefined ? "" : liked ? " liked" : " disliked"}`, type: "button" },
    [liked === undefined ? "rate" : liked ? "liked" : "disliked"]
  );
  btn.addEventListener("click", () => void controller.toggleFeedback(productId));
  wrap.append(btn);
  return wrap;
}

function boxView(state: WizardState, controller: WizardController): HTMLElement {
  const rec = state.recommendation as Recommendation;
  const section = el("section", { class: "step step-box" }, [
    el("h2", {}, ["Your box"]),
    el("div", { class: "totals" }, [
      el("span", { class: "total price", "data-total": String(rec.total_price) }, [
        `Total ₹${rec.total_price}`,
      ]),
      el("span", { class: "budget-display price", "data-budget": String(rec.budget) }, [
        `Budget ₹${rec.budget}`,
      ]),
    ]),
  ]);
  const byId = new Map(rec.items.map((x) => [x.id, x]));
  const itemsGrid = el("div", { class: "grid box-items" });
  for (const item of rec.items) {
    const card = itemCard(item);
    card.append(feedbackToggle(state, controller, item.id));
    itemsGrid.append(card);
  }
  section.append(el("h3", {}, [`Items (${rec.items.length})`]), itemsGrid);

  const outfitList = el("div", { class: "outfits" });
  for (const outfit of rec.outfits) {
    const row = el("div", { class: "outfit-row", "data-outfit": outfit.id });
    for (const type of ITEM_TYPES) {
      const member = byId.get(outfit.items[type] ?? "");
      if (member) {
        row.append(itemCard(member));
      }
    }
    row.append(feedbackToggle(state, controller, outfit.id));
    outfitList.append(row);
  }
  section.append(el("h3", {}, [`Outfits (${rec.outfits.length})`]), outfitList);
  return section;
}

export function render(root: HTMLElement, state: WizardState, controller: WizardController): void {
  root.replaceChildren();
  const shell = el("div", { class: "wizard" });
  if (state.error) {
    shell.append(el("div", { class: "error-banner" }, [state.error]));
  }
  if (state.step === "occasion") {
    shell.append(occasionStep(state, controller));
  } else if (isItemStep(state.step)) {
    shell.append(itemStep(state, controller, state.step));
  } else if (state.step === "constraints") {
    shell.append(constraintsStep(state, controller));
  } else if (state.recommendation !== null) {
    shell.append(boxView(state, controller));
  }

  if (state.step !== "box") {
    const nav = el("div", { class: "nav" });
    const back = el("button", { class: "back", type: "button" }, ["Back"]) as HTMLButtonElement;
    back.disabled = state.step === "occasion" || state.busy;
    back.addEventListener("click", () => controller.back());
    const next = el("button", { class: "next", type: "button" }, [
      state.step === "constraints" ? "Get my box" : "Next",
    ]) as HTMLButtonElement;
    next.disabled = !canProceed(state);
    next.addEventListener("click", () => void controller.next());
    nav.append(back, next);
    shell.append(nav);
  }
  root.append(shell);
}
