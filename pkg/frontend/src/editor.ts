/**
 * Editor view model: per-mechanism panels with question widgets, metric rows
 * with origin markers, and a live scorecard fragment.
 *
 * The controller never computes a score.  Every number it exposes is copied
 * verbatim from the latest server scorecard or assessment document; edits go
 * to the API and the state is replaced by the server's response.
 */
import { ApiClient, ApiError } from "./api";
import { colorBand, type ColorBand } from "./bands";
import type {
  AssessmentDoc,
  ClusterQuestionDoc,
  MechanismDoc,
  Origin,
  Phase,
  PillarDoc,
  ScorecardDoc,
  TemplateDoc,
} from "./types";

export const ORIGIN_LABELS: Record<Origin, string> = {
  direct: "direct",
  cluster_answer: "from answer",
  standard: "from standard",
  inherited: "inherited",
};

/** Phase of a metric code like "S.AC.D8", from its third segment. */
export function phaseOfCode(code: string): Phase {
  const segment = code.split(".")[2] ?? "";
  return segment.startsWith("D") ? "design" : "operational";
}

export interface MetricRow {
  code: string;
  title: string;
  kind: "boolean" | "percentage";
  /** Normalized server value; null while unscored. */
  value: number | null;
  origin: Origin | null;
  originLabel: string;
  mandatory: boolean;
}

export interface MechanismPanel {
  qualifiedCode: string;
  name: string;
  excluded: boolean;
  question: ClusterQuestionDoc | null;
  chosenAnswer: number | null;
  rows: MetricRow[];
  /** Capped mechanism score from the server scorecard; null until scored. */
  score: number | null;
  band: ColorBand;
}

export class EditorController {
  template!: TemplateDoc;
  assessment!: AssessmentDoc;
  scorecard!: ScorecardDoc;
  /** Set when a write hit a revision conflict; cleared by reload(). */
  conflict: string | null = null;
  error: string | null = null;
  loaded = false;

  constructor(
    private readonly api: ApiClient,
    readonly assessmentId: string,
  ) {}

  async load(): Promise<void> {
    this.assessment = await this.api.getAssessment(this.assessmentId);
    this.template = await this.api.getTemplate(this.assessment.template_id);
    this.scorecard = await this.api.getScorecard(this.assessmentId);
    this.conflict = null;
    this.error = null;
    this.loaded = true;
  }

  async reload(): Promise<void> {
    await this.load();
  }

  get revision(): number {
    return this.assessment.revision;
  }

  get editable(): boolean {
    return this.assessment.status === "draft";
  }

  pillars(): PillarDoc[] {
    return this.template.pillars;
  }

  private findMechanism(qualifiedCode: string): { pillar: PillarDoc; mech: MechanismDoc } {
    for (const pillar of this.template.pillars) {
      for (const mech of pillar.mechanisms) {
        if (`${pillar.code}.${mech.code}` === qualifiedCode) {
          return { pillar, mech };
        }
      }
    }
    throw new Error(`unknown mechanism ${qualifiedCode}`);
  }

  /** Panel for one (mechanism, phase), built purely from server documents. */
  panel(qualifiedCode: string, phase: Phase): MechanismPanel {
    const { mech } = this.findMechanism(qualifiedCode);
    const phaseScores = this.scorecard[phase];
    const node = phaseScores.mechanisms[qualifiedCode] ?? null;
    const question = mech.cluster_questions.find((q) => q.phase === phase) ?? null;
    const chosen = this.assessment.chosen_answers[qualifiedCode]?.[phase];
    const rows: MetricRow[] = mech.metrics
      .filter((m) => phaseOfCode(m.code) === phase)
      .map((m) => {
        const value = phaseScores.metrics[m.code];
        return {
          code: m.code,
          title: m.title,
          kind: m.kind,
          value: value ? value.normalized : null,
          origin: value ? value.origin : null,
          originLabel: value?.origin ? ORIGIN_LABELS[value.origin] : "",
          mandatory: m.mandatory !== null,
        };
      });
    return {
      qualifiedCode,
      name: mech.name,
      excluded: this.assessment.excluded_mechanisms.includes(qualifiedCode),
      question,
      chosenAnswer: chosen ?? null,
      rows,
      score: node ? node.capped_score : null,
      band: node ? colorBand(node) : "Transparent",
    };
  }

  /** Server-computed mechanism score (capped), straight off the scorecard. */
  mechanismScore(qualifiedCode: string, phase: Phase): number | null {
    const node = this.scorecard[phase].mechanisms[qualifiedCode];
    return node ? node.capped_score : null;
  }

  pillarScore(code: string, phase: Phase): number | null {
    const node = this.scorecard[phase].pillars[code];
    return node ? node.capped_score : null;
  }

  /** Metric codes a standard would set to 100, for the pre-apply preview. */
  standardPreview(standardId: string): string[] {
    const std = this.template.standards.find((s) => s.standard_id === standardId);
    return std ? [...std.satisfied_metrics] : [];
  }

  private async write(action: () => Promise<AssessmentDoc>): Promise<void> {
    if (!this.editable) {
      this.error = `assessment is ${this.assessment.status}; reopen it as draft to edit`;
      return;
    }
    try {
      this.assessment = await action();
      this.scorecard = await this.api.getScorecard(this.assessmentId);
      this.error = null;
    } catch (err) {
      if (err instanceof ApiError && err.isRevisionConflict) {
        this.conflict = err.detail;
      } else if (err instanceof ApiError) {
        this.error = err.detail;
      } else {
        throw err;
      }
    }
  }

  selectAnswer(qualifiedCode: string, phase: Phase, answerIndex: number): Promise<void> {
    return this.write(() =>
      this.api.postAnswer(this.assessmentId, this.revision, qualifiedCode, phase, answerIndex),
    );
  }

  overrideMetric(code: string, raw: number | boolean): Promise<void> {
    return this.write(() =>
      this.api.patchMetrics(this.assessmentId, this.revision, { [code]: raw }),
    );
  }

  toggleStandard(standardId: string, declared: boolean): Promise<void> {
    return this.write(() =>
      this.api.postStandard(this.assessmentId, this.revision, standardId, declared),
    );
  }

  toggleExclusion(qualifiedCode: string, excluded: boolean): Promise<void> {
    return this.write(() =>
      this.api.postExclusion(this.assessmentId, this.revision, qualifiedCode, excluded),
    );
  }

  transition(status: "draft" | "private" | "public"): Promise<void> {
    return this.write(() =>
      this.api.postStatus(this.assessmentId, this.revision, status),
    );
  }
}
