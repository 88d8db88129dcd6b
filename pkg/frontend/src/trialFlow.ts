import { Component, INTENSITIES, LABELS } from "./schemas.js";

export interface Prompt {
  component?: Component;
  target: string;
}

/** Deterministic PRNG (mulberry32) so a recorded seed replays the order. */
export function seededRng(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function shuffled<T>(items: readonly T[], rng: () => number): T[] {
  const out = [...items];
  for (let i = out.length - 1; i > 0; i--) {
    const j = Math.floor(rng() * (i + 1));
    [out[i], out[j]] = [out[j], out[i]];
  }
  return out;
}

/** Prompt list for a phase-1 component run: one prompt per target class. */
export function phase1Prompts(component: Component, seed: number): Prompt[] {
  const targets: readonly string[] =
    component === "body" ? INTENSITIES : LABELS;
  return shuffled(targets, seededRng(seed)).map((target) => ({
    component,
    target,
  }));
}

/** Prompt list for a phase-2 run: one prompt per emotion. */
export function phase2Prompts(seed: number): Prompt[] {
  return shuffled(LABELS, seededRng(seed)).map((target) => ({ target }));
}

export type FlowState =
  | { kind: "prompt"; index: number; prompt: Prompt }
  | { kind: "await_feedback"; index: number; prompt: Prompt; trialId: string }
  | { kind: "done"; completed: number };

/**
 * The trial-flow state machine that the console UI drives.
 *
 * Exactly one feedback submission per prompt; the next prompt unlocks only
 * after feedback for the current one is recorded.
 */
export class TrialFlow {
  private index = 0;
  private trialId: string | null = null;
  readonly seed: number;

  constructor(
    private readonly prompts: Prompt[],
    seed: number,
  ) {
    this.seed = seed;
  }

  get state(): FlowState {
    if (this.index >= this.prompts.length) {
      return { kind: "done", completed: this.prompts.length };
    }
    const prompt = this.prompts[this.index];
    if (this.trialId !== null) {
      return {
        kind: "await_feedback",
        index: this.index,
        prompt,
        trialId: this.trialId,
      };
    }
    return { kind: "prompt", index: this.index, prompt };
  }

  get feedbackEnabled(): boolean {
    return this.trialId !== null;
  }

  /** Record that the current prompt's trial ran; locks further trials. */
  trialStarted(trialId: string): void {
    if (this.trialId !== null) {
      throw new Error("trial already awaiting feedback");
    }
    if (this.index >= this.prompts.length) {
      throw new Error("flow already complete");
    }
    this.trialId = trialId;
  }

  /** Record feedback for the awaited trial; unlocks the next prompt. */
  feedbackSubmitted(trialId: string): void {
    if (this.trialId === null) {
      throw new Error("no trial awaiting feedback");
    }
    if (trialId !== this.trialId) {
      throw new Error(`feedback for unknown trial ${trialId}`);
    }
    this.trialId = null;
    this.index += 1;
  }
}
