/** Wizard controller: step transitions, server synchronization, feedback.
 *
 * The server session is forward-only, so choices and constraints are kept
 * client-side until the final submit; only the occasion is posted early
 * (item sampling needs it). Changing the occasion after back-navigation
 * starts a fresh server session. A completed wizard issues exactly one
 * recommend call.
 */

import { ApiClient } from "./api.js";
import {
  ITEM_TYPES,
  STEP_ORDER,
  type ItemType,
  type Step,
  type WizardState,
  canProceed,
  initialState,
  isItemStep,
  resetItemState,
  stepIndex,
  toggleSelection,
} from "./state.js";

export class WizardController {
  readonly state: WizardState;
  private feedbackQueue: Promise<void> = Promise.resolve();

  constructor(
    private readonly api: ApiClient,
    private readonly onChange: () => void = () => {}
  ) {
    this.state = initialState();
  }

  private notify(): void {
    this.onChange();
  }

  private async guard<T>(work: () => Promise<T>): Promise<T | undefined> {
    this.state.busy = true;
    this.state.error = null;
    this.notify();
    try {
      return await work();
    } catch (err) {
      this.state.error = err instanceof Error ? err.message : String(err);
      return undefined;
    } finally {
      this.state.busy = false;
      this.notify();
    }
  }

  setOccasion(occasion: "casual" | "formal"): void {
    this.state.occasion = occasion;
    this.notify();
  }

  toggleItem(type: ItemType, id: string): void {
    toggleSelection(this.state, type, id);
    this.notify();
  }

  setRange(type: ItemType, lo: number, hi: number): void {
    this.state.ranges[type] = { lo, hi };
    this.notify();
  }

  setBudget(budget: number | null): void {
    this.state.budget = budget;
    this.notify();
  }

  /** Advance one step; posting whatever the server needs for the next one. */
  async next(): Promise<void> {
    if (!canProceed(this.state)) {
      return;
    }
    const current = this.state.step;
    await this.guard(async () => {
      if (current === "occasion") {
        await this.syncOccasion();
        await this.ensureItems("top_wear");
        this.state.step = "top_wear";
      } else if (isItemStep(current)) {
        const position = ITEM_TYPES.indexOf(current);
        const following = ITEM_TYPES[position + 1];
        if (following) {
          await this.ensureItems(following);
          this.state.step = following;
        } else {
          this.state.step = "constraints";
        }
      } else if (current === "constraints") {
        await this.submit();
      }
    });
  }

  /** Go back one step; selections and inputs stay as they were. */
  back(): void {
    const index = stepIndex(this.state.step);
    if (index > 0 && this.state.step !== "box") {
      this.state.step = STEP_ORDER[index - 1]!;
      this.notify();
    }
  }

  private async syncOccasion(): Promise<void> {
    const occasion = this.state.occasion;
    if (occasion === null) {
      return;
    }
    if (this.state.session !== null && this.state.postedOccasion === occasion) {
      return;
    }
    if (this.state.session !== null && this.state.postedOccasion !== occasion) {
      resetItemState(this.state);
    }
    const ref = await this.api.createSession();
    this.state.session = ref.session;
    await this.api.setOccasion(ref.session, occasion);
    this.state.postedOccasion = occasion;
  }

  private async ensureItems(type: ItemType): Promise<void> {
    if (this.state.cards[type].length === 0 && !this.state.exhausted[type]) {
      await this.fetchPage(type);
    }
  }

  private async fetchPage(type: ItemType): Promise<void> {
    const session = this.state.session;
    if (session === null) {
      throw new Error("no session");
    }
    const page = await this.api.getItems(session, type, this.state.nextPage[type]);
    const seen = new Set(this.state.cards[type].map((c) => c.id));
    this.state.cards[type] = [
      ...this.state.cards[type],
      ...page.items.filter((c) => !seen.has(c.id)),
    ];
    this.state.nextPage[type] += 1;
    this.state.exhausted[type] = page.exhausted;
  }

  /** The "load new items" control. */
  async loadMore(type: ItemType): Promise<void> {
    if (this.state.exhausted[type]) {
      return;
    }
    await this.guard(() => this.fetchPage(type));
  }

  /** Post choices and constraints, then the single recommend call. */
  private async submit(): Promise<void> {
    const session = this.state.session;
    const budget = this.state.budget;
    if (session === null || budget === null) {
      throw new Error("wizard incomplete");
    }
    for (const type of ITEM_TYPES) {
      await this.api.setChoices(session, type, this.state.selected[type]);
    }
    const ranges = Object.fromEntries(
      ITEM_TYPES.map((t) => [t, [this.state.ranges[t].lo, this.state.ranges[t].hi]])
    ) as Record<string, [number, number]>;
    await this.api.setConstraints(session, ranges, budget);
    this.state.recommendation = await this.api.recommend(session);
    this.state.step = "box";
  }

  /** Optimistic like/dislike toggle, reverted if the server rejects it.
   * Posts are queued first-in first-out. */
  toggleFeedback(productId: string): Promise<void> {
    const session = this.state.session;
    if (session === null || this.state.recommendation === null) {
      return Promise.resolve();
    }
    const previous = this.state.feedback[productId];
    const liked = !(previous ?? false);
    this.state.feedback[productId] = liked;
    this.notify();
    this.feedbackQueue = this.feedbackQueue.then(async () => {
      try {
        const ack = await this.api.sendFeedback(session, productId, liked);
        this.state.feedback[ack.product] = ack.liked;
      } catch {
        if (previous === undefined) {
          delete this.state.feedback[productId];
        } else {
          this.state.feedback[productId] = previous;
        }
      }
      this.notify();
    });
    return this.feedbackQueue;
  }
}
