/** Low-level HTTP plumbing for the subarch service. */

export type ErrorCode = "usage" | "validation" | "resource" | "internal";

export class ServiceError extends Error {
  readonly code: ErrorCode;
  readonly status: number;

  constructor(code: ErrorCode, message: string, status: number) {
    super(message);
    this.name = "ServiceError";
    this.code = code;
    this.status = status;
  }
}

export class UsageError extends ServiceError {
  constructor(message: string, status = 0) {
    super("usage", message, status);
    this.name = "UsageError";
  }
}

export interface RequestOptions {
  method?: string;
  query?: Record<string, string | number | boolean | undefined>;
  body?: unknown;
}

export class HttpClient {
  constructor(readonly baseUrl: string) {}

  async request<T>(path: string, options: RequestOptions = {}): Promise<T> {
    const url = new URL(path, this.baseUrl);
    for (const [key, value] of Object.entries(options.query ?? {})) {
      if (value !== undefined) url.searchParams.set(key, String(value));
    }
    const init: RequestInit = { method: options.method ?? "GET" };
    if (options.body !== undefined) {
      init.body = JSON.stringify(options.body);
      init.headers = { "content-type": "application/json" };
    }
    let response: Response;
    try {
      response = await fetch(url, init);
    } catch (cause) {
      throw new UsageError(`cannot reach service at ${this.baseUrl}: ${cause}`);
    }
    const text = await response.text();
    if (!response.ok) {
      let code: ErrorCode = "internal";
      let message = text;
      try {
        const detail = (JSON.parse(text) as { detail?: { code?: string; message?: string } }).detail;
        if (detail?.code) code = detail.code as ErrorCode;
        if (detail?.message) message = detail.message;
      } catch {
        // non-JSON error body; keep raw text
      }
      throw new ServiceError(code, message, response.status);
    }
    const contentType = response.headers.get("content-type") ?? "";
    if (contentType.includes("application/json")) {
      return JSON.parse(text) as T;
    }
    return text as unknown as T;
  }
}
