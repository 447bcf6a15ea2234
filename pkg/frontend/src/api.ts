/** Typed client for the recommendation service JSON API.
 *
 * Pure transport: no business logic, no derived values. Every shape here
 * mirrors a server response verbatim.
 */

export interface SessionRef {
  session: string;
  state: string;
}

export interface ItemCard {
  id: string;
  type: string;
  category: string;
  occasion: string;
  price: number;
  title: string;
}

export interface ItemsPage {
  session: string;
  type: string;
  page: number;
  items: ItemCard[];
  exhausted: boolean;
}

export interface PairScore {
  p1: number;
  score: number;
}

export interface BoxOutfit {
  id: string;
  items: Record<string, string>;
  price: number;
  c1: number;
  c2: number;
  per_pair: Record<string, PairScore>;
}

export interface Recommendation {
  session: string;
  budget: number;
  total_price: number;
  items: ItemCard[];
  outfits: BoxOutfit[];
  generation_complete: boolean;
  generated_outfits: number;
  dropped_over_budget: number;
}

export interface FeedbackAck {
  session: string;
  product: string;
  liked: boolean;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    detail: string
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init)
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(
        response.status,
        typeof payload?.error === "string" ? payload.error : "error",
        typeof payload?.detail === "string" ? payload.detail : response.statusText
      );
    }
    return payload as T;
  }

  createSession(): Promise<SessionRef> {
    return this.request("POST", "/sessions");
  }

  setOccasion(session: string, occasion: string): Promise<SessionRef> {
    return this.request("POST", `/sessions/${session}/occasion`, { occasion });
  }

  getItems(session: string, type: string, page: number): Promise<ItemsPage> {
    return this.request("GET", `/sessions/${session}/items?type=${type}&page=${page}`);
  }

  setChoices(session: string, type: string, items: string[]): Promise<unknown> {
    return this.request("POST", `/sessions/${session}/choices`, { type, items });
  }

  setConstraints(
    session: string,
    priceRanges: Record<string, [number, number]>,
    budget: number
  ): Promise<unknown> {
    return this.request("POST", `/sessions/${session}/constraints`, {
      price_ranges: priceRanges,
      budget,
    });
  }

  recommend(session: string): Promise<Recommendation> {
    return this.request("POST", `/sessions/${session}/recommend`);
  }

  getRecommendation(session: string): Promise<Recommendation> {
    return this.request("GET", `/sessions/${session}/recommendation`);
  }

  sendFeedback(session: string, product: string, liked: boolean): Promise<FeedbackAck> {
    return this.request("POST", `/sessions/${session}/feedback`, { product, liked });
  }
}
