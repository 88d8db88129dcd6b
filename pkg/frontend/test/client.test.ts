import { describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/client.js";
import { LABELS } from "../src/schemas.js";

const UNIFORM = Object.fromEntries(LABELS.map((l) => [l, 1 / 7]));

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function clientWith(body: unknown, status = 200) {
  const fetchMock = vi.fn(async () => jsonResponse(body, status));
  return { client: new ApiClient("http://svc", fetchMock), fetchMock };
}

const SESSION = {
  id: "abc",
  phase: 1,
  state: "created",
  trial_count: 0,
  pending_trial: null,
};

describe("ApiClient", () => {
  it("creates a session and validates the response shape", async () => {
    const { client, fetchMock } = clientWith(SESSION);
    const session = await client.createSession(1);
    expect(session.id).toBe("abc");
    expect(fetchMock).toHaveBeenCalledWith(
      "http://svc/sessions",
      expect.objectContaining({ method: "POST", body: JSON.stringify({ phase: 1 }) }),
    );
  });

  it("rejects malformed session payloads", async () => {
    const { client } = clientWith({ id: "abc", phase: 3, state: "created" });
    await expect(client.createSession(1)).rejects.toThrow();
  });

  it("surfaces HTTP errors with the server detail", async () => {
    const { client } = clientWith({ detail: "illegal transition" }, 409);
    await expect(client.finalizeSession("abc")).rejects.toThrow(ApiError);
    await expect(client.finalizeSession("abc")).rejects.toThrow(/409.*illegal transition/);
  });

  it("parses trial responses with emotion predictions", async () => {
    const { client } = clientWith({
      trial_id: "t1",
      component: "face",
      target: "anger",
      prediction: { label: "anger", dist: UNIFORM },
    });
    const trial = await client.runTrial("abc", "anger", "face");
    expect(trial.trial_id).toBe("t1");
  });

  it("parses body-intensity predictions", async () => {
    const { client } = clientWith({
      trial_id: "t2",
      component: "body",
      target: "moderate",
      prediction: { label: "moderate", most_moved: "left_wrist" },
    });
    const trial = await client.runTrial("abc", "moderate", "body");
    expect(trial.prediction).toEqual({ label: "moderate", most_moved: "left_wrist" });
  });

  it("rejects distributions that do not sum to one", async () => {
    const bad = { ...UNIFORM, anger: 0.9 };
    const { client } = clientWith({
      trial_id: "t3",
      component: "face",
      target: "anger",
      prediction: { label: "anger", dist: bad },
    });
    await expect(client.runTrial("abc", "anger", "face")).rejects.toThrow(/sum to 1/);
  });

  it("parses unified profiles", async () => {
    const { client } = clientWith({
      fused: UNIFORM,
      top_label: "anger",
      per_modality: [
        { modality: "face", dist: UNIFORM, weight: 1 },
        { modality: "speech", dist: UNIFORM, weight: 1 },
        { modality: "text", dist: UNIFORM, weight: 1 },
      ],
    });
    const profile = await client.getProfile("abc");
    expect(profile.per_modality.map((m) => m.modality)).toEqual([
      "face",
      "speech",
      "text",
    ]);
  });

  it("parses server-sent event streams", async () => {
    const sse =
      `data: ${JSON.stringify({ timestamp: 1, kind: "face", stable_label: null, smoothed: UNIFORM })}\n\n` +
      `data: ${JSON.stringify({ timestamp: 2, kind: "body", intensity: "low", most_moved: "left_wrist" })}\n\n`;
    const fetchMock = vi.fn(
      async () =>
        new Response(sse, {
          status: 200,
          headers: { "content-type": "text/event-stream" },
        }),
    );
    const client = new ApiClient("http://svc", fetchMock);
    const events = await client.readStream("abc");
    expect(events).toHaveLength(2);
    expect(events[0].kind).toBe("face");
    expect(events[1].intensity).toBe("low");
  });
});
