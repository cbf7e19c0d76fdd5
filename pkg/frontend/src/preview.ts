/**
 * What-if previews: unsaved edits are staged locally, sent to the server's
 * transient-overlay endpoint, and shown as deltas against the saved
 * scorecard.  Nothing is persisted; discarding just drops the overlay.
 */
import { ApiClient, ApiError } from "./api";
import type { EditorController } from "./editor";
import type { Phase, PreviewBody, ScorecardDoc } from "./types";

export interface PreviewDelta {
  subject: string;
  kind: "pillar" | "mechanism";
  phase: Phase;
  current: number | null;
  preview: number | null;
  /** preview minus current; null until both sides have a score. */
  delta: number | null;
  /** true when the saved node is capped but the previewed one is not. */
  capLifted: boolean;
}

export class PreviewSession {
  overlay: Required<PreviewBody> = { values: {}, answers: [], standards: {}, exclusions: {} };
  result: ScorecardDoc | null = null;
  rejected: string | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly editor: EditorController,
  ) {}

  get active(): boolean {
    return this.result !== null;
  }

  stageValue(code: string, raw: number | boolean): void {
    this.overlay.values[code] = raw;
  }

  stageAnswer(mechanism: string, phase: Phase, answerIndex: number): void {
    this.overlay.answers = this.overlay.answers.filter(
      (a) => !(a.mechanism === mechanism && a.phase === phase),
    );
    this.overlay.answers.push({ mechanism, phase, answer_index: answerIndex });
  }

  stageStandard(standardId: string, declared: boolean): void {
    this.overlay.standards[standardId] = declared;
  }

  stageExclusion(mechanism: string, excluded: boolean): void {
    this.overlay.exclusions[mechanism] = excluded;
  }

  async refresh(): Promise<void> {
    try {
      this.result = await this.api.preview(this.editor.assessmentId, this.overlay);
      this.rejected = null;
    } catch (err) {
      if (err instanceof ApiError) {
        this.result = null;
        this.rejected = err.detail;
        return;
      }
      throw err;
    }
  }

  /** Drop the overlay; the saved view stands untouched. */
  discard(): void {
    this.overlay = { values: {}, answers: [], standards: {}, exclusions: {} };
    this.result = null;
    this.rejected = null;
  }

  deltas(phase: Phase): PreviewDelta[] {
    if (!this.result) return [];
    const saved = this.editor.scorecard[phase];
    const previewed = this.result[phase];
    const out: PreviewDelta[] = [];
    for (const [kind, savedNodes, previewNodes] of [
      ["pillar", saved.pillars, previewed.pillars],
      ["mechanism", saved.mechanisms, previewed.mechanisms],
    ] as const) {
      for (const subject of Object.keys(savedNodes)) {
        const before = savedNodes[subject];
        const after = previewNodes[subject];
        if (!after) continue;
        out.push({
          subject,
          kind,
          phase,
          current: before.capped_score,
          preview: after.capped_score,
          delta:
            before.capped_score !== null && after.capped_score !== null
              ? after.capped_score - before.capped_score
              : null,
          capLifted: before.applied_cap !== null && after.applied_cap === null,
        });
      }
    }
    return out;
  }
}
