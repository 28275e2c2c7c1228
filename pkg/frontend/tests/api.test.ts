import { describe, expect, it, vi } from "vitest";

import { Client, ServiceError, type FetchLike } from "../src/api.js";

interface Call {
  url: string;
  method?: string;
  body?: string;
}

function mockFetch(
  responder: (call: Call) => Response,
): { calls: Call[]; fetchFn: FetchLike } {
  const calls: Call[] = [];
  const fetchFn: FetchLike = (url, init) => {
    const call = { url, method: init?.method, body: init?.body };
    calls.push(call);
    return Promise.resolve(responder(call));
  };
  return { calls, fetchFn };
}

function json(body: unknown): Response {
  return new Response(JSON.stringify(body), { status: 200 });
}

describe("Client", () => {
  it("uploads the problem text verbatim", async () => {
    const meta = { id: "abc", n: 2, m: 5, k: 2 };
    const { calls, fetchFn } = mockFetch(() => json(meta));
    const client = new Client("http://x", fetchFn);
    const result = await client.uploadProblem("mcilp-problem v1 ...");
    expect(result).toEqual(meta);
    expect(calls).toEqual([
      {
        url: "http://x/problems",
        method: "POST",
        body: "mcilp-problem v1 ...",
      },
    ]);
  });

  it("fetches counts from the documented path", async () => {
    const { calls, fetchFn } = mockFetch(() =>
      json({ pareto: 4, strategies: 4 }),
    );
    const client = new Client("", fetchFn);
    await client.fetchCount("abc");
    expect(calls[0]?.url).toBe("/problems/abc/pareto/count");
    expect(calls[0]?.method).toBe("GET");
  });

  it("streams front records and carries query options", async () => {
    const body = '{"point":[0,3]}\n{"point":[1,2]}\n';
    const { calls, fetchFn } = mockFetch(() => new Response(body));
    const client = new Client("", fetchFn);
    const got: number[][] = [];
    for await (const record of client.streamFront("abc", {
      order: "I",
      limit: 2,
    })) {
      got.push(record.point);
    }
    expect(got).toEqual([
      [0, 3],
      [1, 2],
    ]);
    expect(calls[0]?.url).toBe("/problems/abc/pareto/stream?order=I&limit=2");
  });

  it("posts nearest queries as JSON", async () => {
    const { calls, fetchFn } = mockFetch(() =>
      json({ point: [1, 2], distance: "2/1" }),
    );
    const client = new Client("", fetchFn);
    const result = await client.nearest("abc", {
      norm: "linf",
      point: [0, 0],
    });
    expect(result.distance).toBe("2/1");
    expect(calls[0]?.url).toBe("/problems/abc/nearest");
    expect(JSON.parse(calls[0]?.body ?? "")).toEqual({
      norm: "linf",
      point: [0, 0],
    });
  });

  it("streams rank records", async () => {
    const body =
      '{"point":[1,2],"distance":"2/1"}\n{"point":[0,3],"distance":"3/1"}\n';
    const { fetchFn } = mockFetch(() => new Response(body));
    const client = new Client("", fetchFn);
    const got: string[] = [];
    for await (const record of client.rank("abc", {
      norm: "l1",
      point: [0, 0],
    })) {
      got.push(record.distance);
    }
    expect(got).toEqual(["2/1", "3/1"]);
  });

  it("requests fptas with the accuracy text untouched", async () => {
    const { calls, fetchFn } = mockFetch(() =>
      json({
        point: [1, 2],
        qvalue: "5/1",
        certificate: { gamma: 2, delta: "20/7", s: 11, eps_prime: "1/10" },
      }),
    );
    const client = new Client("", fetchFn);
    const result = await client.fptas("abc", {
      pseudo: "pseudo 2 1:2,0;1:0,2 7/10 1",
      point: [0, 0],
      eps: "0.1",
    });
    expect(result.qvalue).toBe("5/1");
    expect(JSON.parse(calls[0]?.body ?? "").eps).toBe("0.1");
  });

  it("hits the oracle mirrors with POST", async () => {
    const { calls, fetchFn } = mockFetch(() =>
      json({ point: [1, 2], distance: "2/1" }),
    );
    const client = new Client("", fetchFn);
    await client.oracleNearest("abc", { norm: "linf", point: [0, 0] });
    expect(calls[0]?.url).toBe("/problems/abc/oracle/nearest");
    expect(calls[0]?.method).toBe("POST");
  });

  it("turns error payloads into ServiceError with the served message", async () => {
    const { fetchFn } = mockFetch(
      () => new Response('{"error":"unknown problem id zzz"}', { status: 404 }),
    );
    const client = new Client("", fetchFn);
    const failure = client.fetchCount("zzz");
    await expect(failure).rejects.toBeInstanceOf(ServiceError);
    await expect(client.fetchCount("zzz")).rejects.toMatchObject({
      status: 404,
      message: "unknown problem id zzz",
    });
  });

  it("falls back to the status code when the error body is not JSON", async () => {
    const { fetchFn } = mockFetch(
      () => new Response("boom", { status: 500 }),
    );
    const client = new Client("", fetchFn);
    await expect(client.uploadProblem("x")).rejects.toMatchObject({
      status: 500,
      message: "service returned 500",
    });
  });

  it("uses the global fetch when none is injected", () => {
    const spy = vi.fn();
    expect(() => new Client("http://localhost:8437")).not.toThrow();
    expect(spy).not.toHaveBeenCalled();
  });
});
