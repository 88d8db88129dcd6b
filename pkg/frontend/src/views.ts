import {
  Distribution,
  LABELS,
  StreamEvent,
  TalliesReport,
  UnifiedProfile,
} from "./schemas.js";

/** Ranked bar rows for the live prediction panel. */
export function distributionBars(
  dist: Distribution,
  width = 20,
): { label: string; probability: number; bar: string }[] {
  return [...LABELS]
    .map((label) => ({ label, probability: dist[label] }))
    .sort((a, b) => b.probability - a.probability || a.label.localeCompare(b.label))
    .map(({ label, probability }) => ({
      label,
      probability,
      bar: "#".repeat(Math.round(probability * width)),
    }));
}

/** Per-modality + fused text visualization of a unified profile. */
export function renderProfile(profile: UnifiedProfile): string {
  const lines: string[] = [];
  for (const modality of profile.per_modality) {
    const top = distributionBars(modality.dist)[0];
    lines.push(
      `${modality.modality} (w=${modality.weight}): ${top.label} ${top.probability.toFixed(4)}`,
    );
  }
  lines.push(`fused: ${profile.top_label}`);
  for (const row of distributionBars(profile.fused)) {
    lines.push(`  ${row.label.padEnd(10)} ${row.probability.toFixed(4)} ${row.bar}`);
  }
  return lines.join("\n");
}

/** Per-class accuracy table in the shape of the trial results report. */
export function renderTallies(report: TalliesReport): string {
  const lines = ["component    class       true false  accuracy"];
  for (const [component, classes] of Object.entries(report.tallies)) {
    for (const [cls, cell] of Object.entries(classes)) {
      lines.push(
        `${component.padEnd(12)} ${cls.padEnd(10)} ${String(cell.true).padStart(5)} ${String(cell.false).padStart(5)}  ${cell.accuracy.padStart(8)}`,
      );
    }
  }
  return lines.join("\n");
}

/** Latest stable face label and movement intensity from a stream snapshot. */
export function liveSummary(events: StreamEvent[]): {
  stableLabel: string | null;
  intensity: string | null;
} {
  let stableLabel: string | null = null;
  let intensity: string | null = null;
  for (const event of events) {
    if (event.kind === "face" && event.stable_label != null) {
      stableLabel = event.stable_label;
    }
    if (event.kind === "body" && event.intensity != null) {
      intensity = event.intensity;
    }
  }
  return { stableLabel, intensity };
}
