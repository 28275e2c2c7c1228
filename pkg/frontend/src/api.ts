/** Typed client for the local engine service.
 *
 * Every number shown anywhere in the UI originates from one of these
 * responses; the client never post-processes values beyond JSON parsing.
 */
import { ndjsonRecords } from "./ndjson.js";

export interface OutcomeBox {
  lower: number[];
  upper: number[];
}

export interface ProblemMeta {
  id: string;
  n: number;
  m: number;
  k: number;
  outcome_box: OutcomeBox;
  feasible_count: number | string;
}

export interface CountResponse {
  pareto: number | string;
  strategies: number | string;
}

export interface PointRecord {
  point: number[];
}

export interface RankRecord {
  point: number[];
  distance: string;
}

export interface NearestResponse {
  point: number[];
  distance: string;
}

export interface FptasCertificate {
  gamma: number;
  delta: string;
  s: number;
  eps_prime: string;
}

export interface FptasResponse {
  point: number[];
  qvalue: string;
  certificate: FptasCertificate;
}

export interface IdealResponse {
  point: number[];
}

export interface NearestRequest {
  norm: string;
  point: number[];
  order?: string;
}

export interface FptasRequest {
  pseudo: string;
  point: number[];
  eps: string;
}

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

export type FetchLike = (
  input: string,
  init?: { method?: string; body?: string },
) => Promise<Response>;

export class Client {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(
    method: string,
    path: string,
    body?: string,
  ): Promise<Response> {
    const response = await this.fetchFn(this.baseUrl + path, { method, body });
    if (!response.ok) {
      let message = `service returned ${response.status}`;
      try {
        const parsed = (await response.json()) as { error?: string };
        if (parsed.error) {
          message = parsed.error;
        }
      } catch {
        // keep the status-derived message
      }
      throw new ServiceError(response.status, message);
    }
    return response;
  }

  private async *stream<T>(
    method: string,
    path: string,
    body?: string,
  ): AsyncGenerator<T, void, void> {
    const response = await this.request(method, path, body);
    if (!response.body) {
      throw new ServiceError(0, "response has no readable body");
    }
    yield* ndjsonRecords<T>(response.body);
  }

  async uploadProblem(text: string): Promise<ProblemMeta> {
    const response = await this.request("POST", "/problems", text);
    return (await response.json()) as ProblemMeta;
  }

  async fetchCount(id: string): Promise<CountResponse> {
    const response = await this.request("GET", `/problems/${id}/pareto/count`);
    return (await response.json()) as CountResponse;
  }

  streamFront(
    id: string,
    options: { order?: string; limit?: number } = {},
  ): AsyncGenerator<PointRecord, void, void> {
    const params = new URLSearchParams();
    if (options.order !== undefined) {
      params.set("order", options.order);
    }
    if (options.limit !== undefined) {
      params.set("limit", String(options.limit));
    }
    const query = params.toString();
    const path = `/problems/${id}/pareto/stream${query ? `?${query}` : ""}`;
    return this.stream<PointRecord>("GET", path);
  }

  async nearest(id: string, body: NearestRequest): Promise<NearestResponse> {
    const response = await this.request(
      "POST",
      `/problems/${id}/nearest`,
      JSON.stringify(body),
    );
    return (await response.json()) as NearestResponse;
  }

  rank(
    id: string,
    body: NearestRequest & { limit?: number },
  ): AsyncGenerator<RankRecord, void, void> {
    return this.stream<RankRecord>(
      "POST",
      `/problems/${id}/rank`,
      JSON.stringify(body),
    );
  }

  async fptas(id: string, body: FptasRequest): Promise<FptasResponse> {
    const response = await this.request(
      "POST",
      `/problems/${id}/fptas`,
      JSON.stringify(body),
    );
    return (await response.json()) as FptasResponse;
  }

  async ideal(id: string): Promise<IdealResponse> {
    const response = await this.request("GET", `/problems/${id}/ideal`);
    return (await response.json()) as IdealResponse;
  }

  async oracleCount(id: string): Promise<CountResponse> {
    const response = await this.request(
      "POST",
      `/problems/${id}/oracle/count`,
      "{}",
    );
    return (await response.json()) as CountResponse;
  }

  async oracleNearest(
    id: string,
    body: NearestRequest,
  ): Promise<NearestResponse> {
    const response = await this.request(
      "POST",
      `/problems/${id}/oracle/nearest`,
      JSON.stringify(body),
    );
    return (await response.json()) as NearestResponse;
  }

  async oracleFptas(
    id: string,
    body: FptasRequest,
  ): Promise<{ point: number[]; qvalue: string }> {
    const response = await this.request(
      "POST",
      `/problems/${id}/oracle/fptas`,
      JSON.stringify(body),
    );
    return (await response.json()) as { point: number[]; qvalue: string };
  }
}
