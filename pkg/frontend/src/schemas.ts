import { z } from "zod";

/** Canonical seven-emotion label order used by every payload. */
export const LABELS = [
  "anger",
  "disgust",
  "fear",
  "happiness",
  "neutral",
  "sadness",
  "surprise",
] as const;

export type Label = (typeof LABELS)[number];

export const INTENSITIES = ["low", "moderate", "high"] as const;
export type Intensity = (typeof INTENSITIES)[number];

export const COMPONENTS = ["face", "body", "speech", "text"] as const;
export type Component = (typeof COMPONENTS)[number];

const distributionShape = Object.fromEntries(
  LABELS.map((label) => [label, z.number().min(0).max(1)]),
) as Record<Label, z.ZodNumber>;

/** A probability distribution over the seven labels; must sum to ~1. */
export const Distribution = z
  .object(distributionShape)
  .refine(
    (dist) =>
      Math.abs(LABELS.reduce((sum, label) => sum + dist[label], 0) - 1) < 1e-6,
    { message: "distribution must sum to 1" },
  );
export type Distribution = z.infer<typeof Distribution>;

export const SessionView = z.object({
  id: z.string(),
  phase: z.union([z.literal(1), z.literal(2)]),
  state: z.enum([
    "created",
    "consented",
    "env_checked",
    "recording",
    "processing",
    "reviewed",
    "closed",
    "abandoned",
  ]),
  trial_count: z.number().int().nonnegative(),
  pending_trial: z.string().nullable(),
});
export type SessionView = z.infer<typeof SessionView>;

export const EnvCheckResult = z.object({
  passed: z.boolean(),
  failures: z.array(z.string()),
  state: z.string(),
});
export type EnvCheckResult = z.infer<typeof EnvCheckResult>;

export const EmotionPrediction = z.object({
  label: z.string(),
  dist: Distribution,
});

export const BodyPrediction = z.object({
  label: z.enum(INTENSITIES),
  most_moved: z.string(),
});

export const FusedPrediction = z.object({
  label: z.string(),
  fused: Distribution,
});

export const TrialResponse = z.object({
  trial_id: z.string(),
  component: z.string(),
  target: z.string(),
  prediction: z.union([FusedPrediction, BodyPrediction, EmotionPrediction]),
});
export type TrialResponse = z.infer<typeof TrialResponse>;

export const FeedbackRecord = z.object({
  session_id: z.string(),
  phase: z.number().int(),
  component: z.string(),
  target_class: z.string(),
  correct: z.boolean(),
  timestamp: z.number(),
});
export type FeedbackRecord = z.infer<typeof FeedbackRecord>;

export const ModalityOutput = z.object({
  modality: z.string(),
  dist: Distribution,
  weight: z.number(),
});

export const UnifiedProfile = z.object({
  fused: Distribution,
  top_label: z.string(),
  per_modality: z.array(ModalityOutput),
});
export type UnifiedProfile = z.infer<typeof UnifiedProfile>;

export const TallyCell = z.object({
  true: z.number().int().nonnegative(),
  false: z.number().int().nonnegative(),
  accuracy: z.string(),
});
export type TallyCell = z.infer<typeof TallyCell>;

export const TalliesReport = z.object({
  tallies: z.record(z.record(TallyCell)),
  demographics: z.record(z.record(z.number())).or(z.record(z.never())),
});
export type TalliesReport = z.infer<typeof TalliesReport>;

export const StreamEvent = z.object({
  timestamp: z.number(),
  kind: z.enum(["face", "body"]),
  stable_label: z.string().nullable().optional(),
  smoothed: Distribution.optional(),
  intensity: z.enum(["low", "medium", "high"]).optional(),
  most_moved: z.string().optional(),
});
export type StreamEvent = z.infer<typeof StreamEvent>;
