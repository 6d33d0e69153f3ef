import { describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/apiClient.js";

function jsonResponse(status: number, payload: unknown): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "content-type": "application/json" },
  });
}

describe("api client", () => {
  it("attaches the bearer token and parses typed bodies", async () => {
    const fetchFn = vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
      const headers = new Headers(init?.headers);
      expect(headers.get("authorization")).toBe("Bearer tok-1");
      return jsonResponse(200, [{ review_id: "1" }]);
    });
    const client = new ApiClient({ fetchFn: fetchFn as unknown as typeof fetch });
    client.token = "tok-1";
    const result = await client.listReviews();
    expect(result.ok).toBe(true);
    if (result.ok) expect(result.value[0]?.review_id).toBe("1");
  });

  it("classifies 403 as a permission notice", async () => {
    const client = new ApiClient({
      fetchFn: (async () =>
        jsonResponse(403, { error: "PermissionDenied", message: "nope" })) as typeof fetch,
    });
    const result = await client.submitReview(2015, "x");
    expect(result.ok).toBe(false);
    if (!result.ok) {
      expect(result.error.kind).toBe("forbidden");
      expect(result.error.message).toBe("nope");
    }
  });

  it("401 fires the logout hook and classifies as unauthorized", async () => {
    const onUnauthorized = vi.fn();
    const client = new ApiClient({
      fetchFn: (async () =>
        jsonResponse(401, { error: "Unauthorized", message: "expired" })) as typeof fetch,
      onUnauthorized,
    });
    const result = await client.listReviews();
    expect(onUnauthorized).toHaveBeenCalledTimes(1);
    expect(!result.ok && result.error.kind).toBe("unauthorized");
  });

  it("transport failures are retryable network errors", async () => {
    const client = new ApiClient({
      fetchFn: (async () => {
        throw new TypeError("connection refused");
      }) as typeof fetch,
    });
    const result = await client.train();
    expect(!result.ok && result.error.kind).toBe("network");
    if (!result.ok && result.error.kind === "network") {
      expect(result.error.retryable).toBe(true);
    }
  });

  it("other API errors keep their machine code and status", async () => {
    const client = new ApiClient({
      fetchFn: (async () =>
        jsonResponse(409, { error: "DuplicateReview", message: "already there" })) as typeof fetch,
    });
    const result = await client.submitReview(2015, "x");
    expect(!result.ok && result.error.kind).toBe("api");
    if (!result.ok && result.error.kind === "api") {
      expect(result.error.status).toBe(409);
      expect(result.error.code).toBe("DuplicateReview");
    }
  });

  it("csv bodies come back as text", async () => {
    const client = new ApiClient({
      fetchFn: (async () =>
        new Response("STUDENT_ID,SUBJECT_FAILED\n", {
          status: 200,
          headers: { "content-type": "text/csv; charset=utf-8" },
        })) as typeof fetch,
    });
    const result = await client.downloadDataset();
    expect(result.ok && result.value.startsWith("STUDENT_ID")).toBe(true);
  });
});
