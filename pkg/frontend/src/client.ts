import {
  EnvCheckResult,
  FeedbackRecord,
  SessionView,
  StreamEvent,
  TalliesReport,
  TrialResponse,
  UnifiedProfile,
} from "./schemas.js";

export interface ConsentForm {
  camera: boolean;
  microphone: boolean;
  analysis: boolean;
  retention_notice: boolean;
}

export interface DeviceReport {
  camera_width: number;
  camera_height: number;
  mic_sample_rate: number;
  confirmations: string[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

type FetchLike = typeof fetch;

/** Thin typed client over the session service HTTP+JSON API. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const detail =
        typeof body === "object" && body !== null && "detail" in body
          ? String((body as { detail: unknown }).detail)
          : response.statusText;
      throw new ApiError(response.status, detail);
    }
    return body;
  }

  private post(path: string, payload?: unknown): Promise<unknown> {
    return this.request(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload ?? {}),
    });
  }

  async createSession(phase: 1 | 2): Promise<SessionView> {
    return SessionView.parse(await this.post("/sessions", { phase }));
  }

  async getSession(id: string): Promise<SessionView> {
    return SessionView.parse(await this.request(`/sessions/${id}`));
  }

  async recordConsent(id: string, consent: ConsentForm): Promise<SessionView> {
    return SessionView.parse(await this.post(`/sessions/${id}/consent`, consent));
  }

  async runEnvCheck(id: string, report: DeviceReport): Promise<EnvCheckResult> {
    return EnvCheckResult.parse(await this.post(`/sessions/${id}/env-check`, report));
  }

  async submitSurvey(id: string, answers: Record<string, string | null>): Promise<void> {
    await this.post(`/sessions/${id}/survey`, { answers });
  }

  async runTrial(
    id: string,
    target: string,
    component?: string,
  ): Promise<TrialResponse> {
    return TrialResponse.parse(
      await this.post(`/sessions/${id}/trials`, { component: component ?? null, target }),
    );
  }

  async submitFeedback(trialId: string, correct: boolean): Promise<FeedbackRecord> {
    return FeedbackRecord.parse(await this.post(`/trials/${trialId}/feedback`, { correct }));
  }

  async getProfile(id: string): Promise<UnifiedProfile> {
    return UnifiedProfile.parse(await this.request(`/sessions/${id}/profile`));
  }

  async finalizeSession(id: string): Promise<SessionView> {
    return SessionView.parse(await this.post(`/sessions/${id}/finalize`));
  }

  async abandonSession(id: string): Promise<SessionView> {
    return SessionView.parse(await this.post(`/sessions/${id}/abandon`));
  }

  async getTallies(): Promise<TalliesReport> {
    return TalliesReport.parse(await this.request("/reports/tallies"));
  }

  /** Drain the server-sent event stream (single snapshot with once=true). */
  async readStream(id: string, once = true): Promise<StreamEvent[]> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/sessions/${id}/stream?once=${once}`,
    );
    if (!response.ok) {
      throw new ApiError(response.status, response.statusText);
    }
    const text = await response.text();
    const events: StreamEvent[] = [];
    for (const line of text.split("\n")) {
      if (line.startsWith("data: ")) {
        events.push(StreamEvent.parse(JSON.parse(line.slice("data: ".length))));
      }
    }
    return events;
  }
}
