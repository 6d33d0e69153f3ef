// Typed access to every API endpoint. Failures come back as values, not
// exceptions: 401 fires the logout hook, 403 classifies as a permission
// notice, transport faults classify as retryable.

import type {
  LoginResponse,
  Prediction,
  PunishmentRecord,
  ReviewDecision,
  ReviewRecord,
  ReviewerRecord,
  RewardRecord,
  ScholarshipStatus,
  ScoreRecord,
  StatusResponse,
  TrainSummary,
} from "./types.js";

export type ApiError =
  | { kind: "unauthorized"; message: string }
  | { kind: "forbidden"; message: string }
  | { kind: "api"; status: number; code: string; message: string }
  | { kind: "network"; retryable: true; message: string };

export type ApiResult<T> = { ok: true; value: T } | { ok: false; error: ApiError };

export interface ApiClientOptions {
  baseUrl?: string;
  fetchFn?: typeof fetch;
  onUnauthorized?: () => void;
}

interface ErrorBody {
  error?: string;
  message?: string;
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchFn: typeof fetch;
  private readonly onUnauthorized: () => void;
  token: string | null = null;

  constructor(options: ApiClientOptions = {}) {
    this.baseUrl = options.baseUrl ?? "";
    this.fetchFn = options.fetchFn ?? fetch.bind(globalThis);
    this.onUnauthorized = options.onUnauthorized ?? (() => undefined);
  }

  async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<ApiResult<T>> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;

    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, {
        method,
        headers,
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (failure) {
      return {
        ok: false,
        error: {
          kind: "network",
          retryable: true,
          message: failure instanceof Error ? failure.message : String(failure),
        },
      };
    }

    if (response.ok) {
      const contentType = response.headers.get("content-type") ?? "";
      if (contentType.startsWith("text/csv")) {
        return { ok: true, value: (await response.text()) as unknown as T };
      }
      return { ok: true, value: (await response.json()) as T };
    }

    let payload: ErrorBody = {};
    try {
      payload = (await response.json()) as ErrorBody;
    } catch {
      // non-JSON error body; fall through with the status alone
    }
    const message = payload.message ?? `request failed with ${response.status}`;
    if (response.status === 401) {
      this.onUnauthorized();
      return { ok: false, error: { kind: "unauthorized", message } };
    }
    if (response.status === 403) {
      return { ok: false, error: { kind: "forbidden", message } };
    }
    return {
      ok: false,
      error: {
        kind: "api",
        status: response.status,
        code: payload.error ?? "HTTPError",
        message,
      },
    };
  }

  // session -----------------------------------------------------------

  login(identifier: string, password: string): Promise<ApiResult<LoginResponse>> {
    return this.request("POST", "/api/login", { identifier, password });
  }

  registerReviewer(
    name: string,
    employeeId: string,
    password: string,
  ): Promise<ApiResult<ReviewerRecord>> {
    return this.request("POST", "/api/reviewers", {
      name,
      employee_id: employeeId,
      password,
    });
  }

  // reviews -----------------------------------------------------------

  submitReview(
    academicYear: number,
    studentSummary: string,
  ): Promise<ApiResult<ReviewRecord>> {
    return this.request("POST", "/api/reviews", {
      academic_year: academicYear,
      student_summary: studentSummary,
    });
  }

  listReviews(filter?: {
    studentId?: string;
    status?: string;
  }): Promise<ApiResult<ReviewRecord[]>> {
    const params = new URLSearchParams();
    if (filter?.studentId) params.set("student_id", filter.studentId);
    if (filter?.status) params.set("status", filter.status);
    const query = params.toString();
    return this.request("GET", `/api/reviews${query ? `?${query}` : ""}`);
  }

  getReview(reviewId: string): Promise<ApiResult<ReviewRecord>> {
    return this.request("GET", `/api/reviews/${reviewId}`);
  }

  editReview(
    reviewId: string,
    fields: { student_summary?: string; reviewer_summary?: string },
  ): Promise<ApiResult<ReviewRecord>> {
    return this.request("PUT", `/api/reviews/${reviewId}`, fields);
  }

  verifyReview(
    reviewId: string,
    reviewerSummary: string,
    decision: ReviewDecision,
  ): Promise<ApiResult<ReviewRecord>> {
    return this.request("POST", `/api/reviews/${reviewId}/verify`, {
      reviewer_summary: reviewerSummary,
      decision,
    });
  }

  // records -----------------------------------------------------------

  putScore(
    studentId: string,
    subjectId: string,
    marks: number,
    hours: number,
  ): Promise<ApiResult<ScoreRecord>> {
    return this.request("PUT", `/api/students/${studentId}/scores/${subjectId}`, {
      marks_obtained: marks,
      hours_attended: hours,
    });
  }

  getScores(studentId: string): Promise<ApiResult<ScoreRecord[]>> {
    return this.request("GET", `/api/students/${studentId}/scores`);
  }

  addPunishment(
    studentId: string,
    seriousness: string,
    description: string,
    date: string,
  ): Promise<ApiResult<PunishmentRecord>> {
    return this.request("POST", `/api/students/${studentId}/punishments`, {
      seriousness,
      description,
      date,
    });
  }

  getPunishments(studentId: string): Promise<ApiResult<PunishmentRecord[]>> {
    return this.request("GET", `/api/students/${studentId}/punishments`);
  }

  addReward(
    studentId: string,
    description: string,
    date: string,
  ): Promise<ApiResult<RewardRecord>> {
    return this.request("POST", `/api/students/${studentId}/rewards`, {
      description,
      date,
    });
  }

  getRewards(studentId: string): Promise<ApiResult<RewardRecord[]>> {
    return this.request("GET", `/api/students/${studentId}/rewards`);
  }

  getStatus(studentId: string): Promise<ApiResult<StatusResponse>> {
    return this.request("GET", `/api/students/${studentId}/scholarship-status`);
  }

  setStatus(
    studentId: string,
    status: ScholarshipStatus,
  ): Promise<ApiResult<StatusResponse>> {
    return this.request("PUT", `/api/students/${studentId}/scholarship-status`, {
      status,
    });
  }

  // administration ----------------------------------------------------

  downloadDataset(): Promise<ApiResult<string>> {
    return this.request("GET", "/api/dataset.csv");
  }

  train(options?: {
    pruning?: boolean;
    min_leaf?: number;
    confidence_factor?: number;
  }): Promise<ApiResult<TrainSummary>> {
    return this.request("POST", "/api/model/train", options ?? {});
  }

  predict(
    subject: { student_id: string } | { features: number[] },
  ): Promise<ApiResult<Prediction>> {
    return this.request("POST", "/api/model/predict", subject);
  }
}
