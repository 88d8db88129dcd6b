import { describe, expect, it } from "vitest";

import {
  phase1Prompts,
  phase2Prompts,
  seededRng,
  shuffled,
  TrialFlow,
} from "../src/trialFlow.js";
import { INTENSITIES, LABELS } from "../src/schemas.js";

describe("seeded shuffling", () => {
  it("is deterministic for a given seed", () => {
    expect(shuffled(LABELS, seededRng(7))).toEqual(shuffled(LABELS, seededRng(7)));
  });

  it("is a permutation of the input", () => {
    const out = shuffled(LABELS, seededRng(3));
    expect([...out].sort()).toEqual([...LABELS].sort());
  });

  it("differs across seeds for some seed pair", () => {
    const orders = new Set(
      [0, 1, 2, 3, 4].map((seed) => shuffled(LABELS, seededRng(seed)).join(",")),
    );
    expect(orders.size).toBeGreaterThan(1);
  });
});

describe("prompt construction", () => {
  it("phase-1 face flow has exactly 7 prompts, one per emotion", () => {
    const prompts = phase1Prompts("face", 42);
    expect(prompts).toHaveLength(7);
    expect(prompts.map((p) => p.target).sort()).toEqual([...LABELS].sort());
    expect(prompts.every((p) => p.component === "face")).toBe(true);
  });

  it("phase-1 body flow has exactly 3 intensity prompts", () => {
    const prompts = phase1Prompts("body", 42);
    expect(prompts).toHaveLength(3);
    expect(prompts.map((p) => p.target).sort()).toEqual([...INTENSITIES].sort());
  });

  it("phase-2 flow has 7 emotion prompts without a component", () => {
    const prompts = phase2Prompts(1);
    expect(prompts).toHaveLength(7);
    expect(prompts.every((p) => p.component === undefined)).toBe(true);
  });
});

describe("TrialFlow feedback gating", () => {
  it("unlocks the next prompt only after feedback", () => {
    const flow = new TrialFlow(phase1Prompts("face", 5), 5);
    expect(flow.state.kind).toBe("prompt");
    expect(flow.feedbackEnabled).toBe(false);

    flow.trialStarted("t1");
    expect(flow.state.kind).toBe("await_feedback");
    expect(flow.feedbackEnabled).toBe(true);
    expect(() => flow.trialStarted("t2")).toThrow(/awaiting feedback/);

    flow.feedbackSubmitted("t1");
    expect(flow.state.kind).toBe("prompt");
    expect(flow.state.kind === "prompt" && flow.state.index).toBe(1);
  });

  it("rejects feedback without a pending trial and for unknown trials", () => {
    const flow = new TrialFlow(phase1Prompts("face", 5), 5);
    expect(() => flow.feedbackSubmitted("t1")).toThrow(/no trial/);
    flow.trialStarted("t1");
    expect(() => flow.feedbackSubmitted("other")).toThrow(/unknown trial/);
  });

  it("completes after exactly one feedback per prompt", () => {
    const prompts = phase1Prompts("body", 9);
    const flow = new TrialFlow(prompts, 9);
    for (let i = 0; i < prompts.length; i++) {
      flow.trialStarted(`t${i}`);
      flow.feedbackSubmitted(`t${i}`);
    }
    expect(flow.state).toEqual({ kind: "done", completed: prompts.length });
    expect(() => flow.trialStarted("extra")).toThrow(/complete/);
  });
});
