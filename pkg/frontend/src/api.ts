import {
  Analysis,
  ApiErrorBody,
  ComplexDoc,
  SolveRequest,
  SolveResponse,
} from "./types";

/** Error carrying the server's machine-readable code and HTTP status. */
export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(status: number, body: ApiErrorBody | null, fallback: string) {
    super(body?.detail ?? fallback);
    this.code = body?.error ?? "HttpError";
    this.status = status;
  }
}

export interface SolverApi {
  getComplex(): Promise<ComplexDoc>;
  getAnalysis(): Promise<Analysis>;
  solve(req: SolveRequest, signal?: AbortSignal): Promise<SolveResponse>;
}

type FetchFn = typeof fetch;

export class ApiClient implements SolverApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchFn = fetch,
  ) {}

  private async get<T>(path: string): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path);
    return this.unwrap<T>(resp);
  }

  private async unwrap<T>(resp: Response): Promise<T> {
    if (!resp.ok) {
      let body: ApiErrorBody | null = null;
      try {
        body = (await resp.json()) as ApiErrorBody;
      } catch {
        body = null;
      }
      throw new ApiError(resp.status, body, `HTTP ${resp.status}`);
    }
    return (await resp.json()) as T;
  }

  getComplex(): Promise<ComplexDoc> {
    return this.get<ComplexDoc>("/api/complex");
  }

  getAnalysis(): Promise<Analysis> {
    return this.get<Analysis>("/api/analysis");
  }

  async solve(req: SolveRequest, signal?: AbortSignal): Promise<SolveResponse> {
    const resp = await this.fetchFn(this.baseUrl + "/api/solve", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req),
      signal,
    });
    return this.unwrap<SolveResponse>(resp);
  }
}
