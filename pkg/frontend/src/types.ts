/** Wire types mirroring the server's JSON documents. */

export type Phase = "design" | "operational";
export type AssessmentStatus = "draft" | "private" | "public";
export type Origin = "direct" | "cluster_answer" | "standard" | "inherited";
export type MetricKind = "boolean" | "percentage";

export interface MetricValueDoc {
  raw: number | boolean | null;
  normalized: number | null;
  origin: Origin | null;
  state: "scored" | "unscored";
}

export interface AppliedCapDoc {
  metric: string;
  cap: number;
}

export interface ScoreNodeDoc {
  subject: string;
  phase: Phase;
  raw_score: number | null;
  capped_score: number | null;
  applied_cap: AppliedCapDoc | null;
  mandatory_violations: string[];
  excluded: boolean;
  completeness: number;
}

export interface PhaseScoresDoc {
  pillars: Record<string, ScoreNodeDoc>;
  mechanisms: Record<string, ScoreNodeDoc>;
  metrics: Record<string, MetricValueDoc>;
  completeness: number;
}

export interface ScorecardDoc {
  assessment_id: string;
  template_id: string;
  template_version: string;
  design: PhaseScoresDoc;
  operational: PhaseScoresDoc;
  warnings: string[];
}

export interface AssessmentDoc {
  id: string;
  description: string;
  template_id: string;
  template_version: string;
  created_at: string;
  last_modified: string;
  status: AssessmentStatus;
  predecessor: string | null;
  revision: number;
  metric_values: Record<string, MetricValueDoc>;
  chosen_answers: Record<string, Partial<Record<Phase, number>>>;
  declared_standards: string[];
  excluded_mechanisms: string[];
}

export interface AssessmentSummaryDoc {
  id: string;
  description: string;
  template_id: string;
  status: AssessmentStatus;
  revision: number;
  last_modified: string;
}

export interface MetricDoc {
  code: string;
  title: string;
  description: string;
  kind: MetricKind;
  transform: "identity" | "complement" | null;
  mandatory: {
    mechanism_cap: number;
    pillar_cap: number;
    satisfied_when_at_least: number;
  } | null;
  references: string[];
}

export interface AnswerDoc {
  label: string;
  configuration: Record<string, number>;
}

export interface ClusterQuestionDoc {
  phase: Phase;
  prompt: string;
  answers: AnswerDoc[];
}

export interface MechanismDoc {
  code: string;
  name: string;
  metric_weights: Record<string, number>;
  metrics: MetricDoc[];
  cluster_questions: ClusterQuestionDoc[];
}

export interface PillarDoc {
  code: string;
  name: string;
  mechanism_weights: Record<string, number>;
  mechanisms: MechanismDoc[];
}

export interface StandardDoc {
  standard_id: string;
  display_name: string;
  satisfied_metrics: string[];
}

export interface TemplateDoc {
  id: string;
  version: string;
  pillars: PillarDoc[];
  standards: StandardDoc[];
}

export interface FingerprintAxisDoc {
  label: string;
  value: number | null;
  complete: boolean;
}

export interface FingerprintDoc {
  phase: Phase;
  level: "pillars" | "mechanisms";
  axes: FingerprintAxisDoc[];
}

export interface LoginResponse {
  token: string;
  username: string;
  role: "admin" | "assessor" | "external";
  must_change_password: boolean;
}

export interface PreviewBody {
  values?: Record<string, number | boolean>;
  answers?: { mechanism: string; phase: Phase; answer_index: number }[];
  standards?: Record<string, boolean>;
  exclusions?: Record<string, boolean>;
}

export interface ComparisonEntryDoc {
  subject: string;
  kind: "pillar" | "mechanism";
  phase: Phase;
  capped_a: number | null;
  capped_b: number | null;
  delta: number | null;
  band_a: string;
  band_b: string;
  band_changed: boolean;
  newly_satisfied: string[];
  newly_unsatisfied: string[];
}

export interface ComparisonDoc {
  template_id: string;
  assessment_a: string;
  assessment_b: string;
  entries: ComparisonEntryDoc[];
}
