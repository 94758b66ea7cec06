// Typed client for the bricolage HTTP API. All collection knowledge flows
// through this module; the UI never derives filter results locally.

import type {
  AnthologyDetail,
  CollectionSummary,
  FilterResponse,
  FilterStateWire,
  LayoutParams,
  LayoutState,
  MoveRequest,
  SessionInfo,
  SizeCategory,
  TimelineData,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Error responses carry {"error": {"code", "message", ...}}. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly detail: Record<string, unknown> = {},
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function parseError(res: Response): Promise<ApiError> {
  let code = "http_error";
  let message = `request failed with status ${res.status}`;
  let detail: Record<string, unknown> = {};
  try {
    const body = await res.json();
    if (body && typeof body.error === "object") {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
      detail = body.error;
    }
  } catch {
    // non-JSON error body; keep the generic message
  }
  return new ApiError(res.status, code, message, detail);
}

export class BricolageApi {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async getJson<T>(path: string): Promise<T> {
    const res = await this.fetchFn(this.base + path);
    if (!res.ok) throw await parseError(res);
    return res.json() as Promise<T>;
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const res = await this.fetchFn(this.base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!res.ok) throw await parseError(res);
    return res.json() as Promise<T>;
  }

  collection(): Promise<CollectionSummary> {
    return this.getJson("/api/collection");
  }

  anthology(id: string): Promise<AnthologyDetail> {
    return this.getJson(`/api/anthologies/${encodeURIComponent(id)}`);
  }

  coverUrl(id: string): string {
    return `${this.base}/api/anthologies/${encodeURIComponent(id)}/cover`;
  }

  spineUrl(id: string): string {
    return `${this.base}/api/anthologies/${encodeURIComponent(id)}/spine`;
  }

  filter(state: FilterStateWire): Promise<FilterResponse> {
    return this.postJson("/api/filter", state);
  }

  timeline(): Promise<TimelineData> {
    return this.getJson("/api/timeline");
  }

  sizes(): Promise<SizeCategory[]> {
    return this.getJson("/api/sizes");
  }

  createSession(): Promise<SessionInfo> {
    return this.postJson("/api/sessions", {});
  }

  layout(sessionId: string, params?: LayoutParams): Promise<LayoutState> {
    const query = new URLSearchParams();
    if (params?.kind) query.set("kind", params.kind);
    if (params?.group_by) query.set("group_by", params.group_by);
    if (params?.n_piles !== undefined) query.set("n_piles", String(params.n_piles));
    if (params?.filter) query.set("filter", JSON.stringify(params.filter));
    if (params?.shelf_width_mm !== undefined) {
      query.set("shelf_width_mm", String(params.shelf_width_mm));
    }
    const qs = query.toString();
    const sid = encodeURIComponent(sessionId);
    return this.getJson(`/api/sessions/${sid}/layout${qs ? "?" + qs : ""}`);
  }

  move(sessionId: string, req: MoveRequest): Promise<LayoutState> {
    const sid = encodeURIComponent(sessionId);
    return this.postJson(`/api/sessions/${sid}/move`, req);
  }

  setPileLabel(sessionId: string, pileId: string, label: string): Promise<LayoutState> {
    const sid = encodeURIComponent(sessionId);
    return this.postJson(`/api/sessions/${sid}/pile-label`, {
      pile_id: pileId,
      label,
    });
  }
}
