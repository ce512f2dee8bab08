/** Typed HTTP client for the citesuggest service.
 *
 * The client tracks the highest session revision it has seen so views
 * can discard stale poll responses, and it refuses to start a second
 * update while one is in flight.
 */

import type {
  ApiErrorBody,
  AuthorsResponse,
  NetworkResponse,
  SearchResponse,
  SessionPayload,
  SuggestionFilters,
  SuggestionsPage,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly type: string;
  readonly detail: string;

  constructor(status: number, type: string, detail: string) {
    super(`${type}: ${detail}`);
    this.status = status;
    this.type = type;
    this.detail = detail;
  }
}

export class UpdateInFlightError extends Error {
  constructor() {
    super("an update request is already in flight");
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let type = "HttpError";
  let detail = response.statusText;
  try {
    const body = (await response.json()) as ApiErrorBody;
    if (body && body.error) {
      type = body.error.type;
      detail = body.error.detail;
    }
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, type, detail);
}

function query(params: Record<string, string | number | boolean | undefined>): string {
  const search = new URLSearchParams();
  for (const [key, value] of Object.entries(params)) {
    if (value !== undefined) search.set(key, String(value));
  }
  const text = search.toString();
  return text ? `?${text}` : "";
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;
  private updateInFlight = false;
  /** highest session revision observed; stale responses compare below it */
  lastRevision = 0;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.base = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  /** True when a payload is older than the newest revision already seen. */
  isStale(revision: number): boolean {
    return revision < this.lastRevision;
  }

  private observe<T extends { revision: number }>(payload: T): T {
    if (payload.revision > this.lastRevision) this.lastRevision = payload.revision;
    return payload;
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  async createSession(document?: unknown): Promise<SessionPayload> {
    const body = document === undefined ? undefined : { document };
    return this.observe(
      await this.request<SessionPayload>("POST", "/sessions", body),
    );
  }

  async getSession(id: string): Promise<SessionPayload> {
    return this.observe(await this.request<SessionPayload>("GET", `/sessions/${id}`));
  }

  async search(id: string, q: string): Promise<SearchResponse> {
    return this.request<SearchResponse>("POST", `/sessions/${id}/search`, { q });
  }

  async select(id: string, dois: string[]): Promise<SessionPayload> {
    return this.observe(
      await this.request<SessionPayload>("POST", `/sessions/${id}/select`, { dois }),
    );
  }

  async stage(
    id: string,
    marks: { include?: string[]; exclude?: string[] },
  ): Promise<SessionPayload> {
    return this.observe(
      await this.request<SessionPayload>("POST", `/sessions/${id}/stage`, marks),
    );
  }

  /** Apply staged marks. At most one update may be in flight. */
  async update(id: string): Promise<SessionPayload> {
    if (this.updateInFlight) throw new UpdateInFlightError();
    this.updateInFlight = true;
    try {
      return this.observe(
        await this.request<SessionPayload>("POST", `/sessions/${id}/update`),
      );
    } finally {
      this.updateInFlight = false;
    }
  }

  async putKeywords(
    id: string,
    text: string,
    boostEnabled: boolean,
  ): Promise<SessionPayload> {
    return this.observe(
      await this.request<SessionPayload>("PUT", `/sessions/${id}/keywords`, {
        text,
        boost_enabled: boostEnabled,
      }),
    );
  }

  async markRead(id: string, doi: string): Promise<SessionPayload> {
    return this.observe(
      await this.request<SessionPayload>("POST", `/sessions/${id}/read`, { doi }),
    );
  }

  async suggestions(
    id: string,
    filters: SuggestionFilters = {},
  ): Promise<SuggestionsPage> {
    return this.observe(
      await this.request<SuggestionsPage>(
        "GET",
        `/sessions/${id}/suggestions${query({ ...filters })}`,
      ),
    );
  }

  async more(id: string): Promise<SuggestionsPage> {
    return this.observe(
      await this.request<SuggestionsPage>("GET", `/sessions/${id}/suggestions/more`),
    );
  }

  async authors(
    id: string,
    config?: { weight_score?: boolean; boost_first?: boolean; boost_new?: boolean },
    top?: number,
  ): Promise<AuthorsResponse> {
    return this.observe(
      await this.request<AuthorsResponse>(
        "GET",
        `/sessions/${id}/authors${query({ ...(config ?? {}), top })}`,
      ),
    );
  }

  async network(
    id: string,
    settings?: {
      n_suggested?: number;
      n_authors?: number;
      keywords?: boolean;
      authors?: boolean;
    },
  ): Promise<NetworkResponse> {
    return this.observe(
      await this.request<NetworkResponse>(
        "GET",
        `/sessions/${id}/network${query({ ...(settings ?? {}) })}`,
      ),
    );
  }

  exportBibtexUrl(id: string): string {
    return `${this.base}/sessions/${id}/export/bibtex`;
  }

  exportSessionUrl(id: string): string {
    return `${this.base}/sessions/${id}/export/session`;
  }
}
