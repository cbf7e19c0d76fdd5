/** Typed client for the assessment API; all scoring happens server-side. */
import type {
  AssessmentDoc,
  AssessmentStatus,
  AssessmentSummaryDoc,
  ComparisonDoc,
  FingerprintDoc,
  LoginResponse,
  Phase,
  PreviewBody,
  ScorecardDoc,
  TemplateDoc,
} from "./types";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`${status}: ${detail}`);
  }

  get isRevisionConflict(): boolean {
    return this.status === 409;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  token: string | null = null;

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    const response = await this.fetchFn(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    if (!response.ok) {
      let detail = text;
      try {
        detail = JSON.parse(text).detail ?? text;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, detail);
    }
    return (text ? JSON.parse(text) : null) as T;
  }

  async login(username: string, password: string): Promise<LoginResponse> {
    const result = await this.request<LoginResponse>("POST", "/login", {
      username,
      password,
    });
    this.token = result.token;
    return result;
  }

  changePassword(oldPassword: string, newPassword: string): Promise<unknown> {
    return this.request("POST", "/password", {
      old_password: oldPassword,
      new_password: newPassword,
    });
  }

  listTemplates(): Promise<{ id: string; version: string; pillars: number }[]> {
    return this.request("GET", "/templates");
  }

  getTemplate(id: string): Promise<TemplateDoc> {
    return this.request("GET", `/templates/${id}`);
  }

  listAssessments(): Promise<AssessmentSummaryDoc[]> {
    return this.request("GET", "/assessments");
  }

  getAssessment(id: string): Promise<AssessmentDoc> {
    return this.request("GET", `/assessments/${id}`);
  }

  createAssessment(
    templateId: string,
    description: string,
    fromId?: string,
  ): Promise<AssessmentDoc> {
    return this.request("POST", "/assessments", {
      template_id: templateId,
      description,
      from_id: fromId ?? null,
    });
  }

  patchMetrics(
    id: string,
    revision: number,
    values: Record<string, number | boolean>,
  ): Promise<AssessmentDoc> {
    return this.request("PATCH", `/assessments/${id}/metrics`, { revision, values });
  }

  postAnswer(
    id: string,
    revision: number,
    mechanism: string,
    phase: Phase,
    answerIndex: number,
  ): Promise<AssessmentDoc> {
    return this.request("POST", `/assessments/${id}/answers`, {
      revision,
      mechanism,
      phase,
      answer_index: answerIndex,
    });
  }

  postStandard(
    id: string,
    revision: number,
    standardId: string,
    declared: boolean,
  ): Promise<AssessmentDoc> {
    return this.request("POST", `/assessments/${id}/standards`, {
      revision,
      standard_id: standardId,
      declared,
    });
  }

  postExclusion(
    id: string,
    revision: number,
    mechanism: string,
    excluded: boolean,
  ): Promise<AssessmentDoc> {
    return this.request("POST", `/assessments/${id}/exclusions`, {
      revision,
      mechanism,
      excluded,
    });
  }

  postStatus(id: string, revision: number, status: AssessmentStatus): Promise<AssessmentDoc> {
    return this.request("POST", `/assessments/${id}/status`, { revision, status });
  }

  getScorecard(id: string): Promise<ScorecardDoc> {
    return this.request("GET", `/assessments/${id}/scorecard`);
  }

  getFingerprint(
    id: string,
    level: "pillars" | "mechanisms",
    phase: Phase,
    pillar?: string,
  ): Promise<FingerprintDoc> {
    const suffix = pillar ? `&pillar=${encodeURIComponent(pillar)}` : "";
    return this.request(
      "GET",
      `/assessments/${id}/fingerprint?level=${level}&phase=${phase}${suffix}`,
    );
  }

  getExport(id: string, format: "dump" | "tabular" | "summary"): Promise<string> {
    return this.requestText(`/assessments/${id}/export?format=${format}`);
  }

  private async requestText(path: string): Promise<string> {
    const headers: Record<string, string> = {};
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    const response = await this.fetchFn(this.baseUrl + path, { method: "GET", headers });
    const text = await response.text();
    if (!response.ok) throw new ApiError(response.status, text);
    return text;
  }

  compare(a: string, b: string): Promise<ComparisonDoc> {
    return this.request("GET", `/compare?a=${encodeURIComponent(a)}&b=${encodeURIComponent(b)}`);
  }

  preview(id: string, overlay: PreviewBody): Promise<ScorecardDoc> {
    return this.request("POST", `/assessments/${id}/preview`, overlay);
  }
}
