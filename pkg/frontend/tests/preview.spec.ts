import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { EditorController } from "../src/editor";
import { PreviewSession } from "../src/preview";
import type { ScorecardDoc } from "../src/types";
import flow from "./fixtures/editor_flow.json";
import { FakeServer } from "./helpers";

const aid = (flow.created as { id: string }).id;

async function loadedEditor(server: FakeServer): Promise<EditorController> {
  const editor = new EditorController(new ApiClient("", server.fetch), aid);
  await editor.load();
  return editor;
}

function baseRoutes() {
  return [
    { method: "GET", path: `/assessments/${aid}`, payload: flow.created },
    { method: "GET", path: "/templates/distaf-sample", payload: flow.template },
    {
      method: "GET",
      path: `/assessments/${aid}/scorecard`,
      payload: flow.scorecard_initial,
    },
  ];
}

describe("what-if preview", () => {
  it("shows server deltas without persisting anything", async () => {
    const server = new FakeServer([
      ...baseRoutes(),
      {
        method: "POST",
        path: `/assessments/${aid}/preview`,
        payload: flow.scorecard_after_answer,
      },
    ]);
    const editor = await loadedEditor(server);
    const session = new PreviewSession(new ApiClient("", server.fetch), editor);

    session.stageAnswer("S.AC", "design", 3);
    await session.refresh();
    expect(session.active).toBe(true);

    const deltas = session.deltas("design");
    const mech = deltas.find((d) => d.subject === "S.AC")!;
    const before = (flow.scorecard_initial as unknown as ScorecardDoc).design
      .mechanisms["S.AC"].capped_score;
    const after = (flow.scorecard_after_answer as unknown as ScorecardDoc).design
      .mechanisms["S.AC"].capped_score;
    expect(mech.current).toBe(before);
    expect(mech.preview).toBe(after);

    // the editor's saved view is untouched
    expect(editor.panel("S.AC", "design").score).toBe(before);
    const writes = server.requests.filter(
      (r) => r.method !== "GET" && !r.path.endsWith("/preview"),
    );
    expect(writes).toHaveLength(0);
  });

  it("discard drops the overlay and restores the saved view", async () => {
    const server = new FakeServer([
      ...baseRoutes(),
      {
        method: "POST",
        path: `/assessments/${aid}/preview`,
        payload: flow.scorecard_after_answer,
      },
    ]);
    const editor = await loadedEditor(server);
    const session = new PreviewSession(new ApiClient("", server.fetch), editor);
    session.stageValue("S.AC.D9", 75);
    await session.refresh();
    expect(session.active).toBe(true);

    session.discard();
    expect(session.active).toBe(false);
    expect(session.deltas("design")).toEqual([]);
    expect(session.overlay.values).toEqual({});
  });

  it("staging an answer twice keeps only the latest choice", async () => {
    const server = new FakeServer(baseRoutes());
    const editor = await loadedEditor(server);
    const session = new PreviewSession(new ApiClient("", server.fetch), editor);
    session.stageAnswer("S.AC", "design", 1);
    session.stageAnswer("S.AC", "design", 3);
    expect(session.overlay.answers).toEqual([
      { mechanism: "S.AC", phase: "design", answer_index: 3 },
    ]);
  });

  it("surfaces rejection when the assessment is not a draft", async () => {
    const server = new FakeServer([
      ...baseRoutes(),
      {
        method: "POST",
        path: `/assessments/${aid}/preview`,
        payload: { detail: "assessment is public, not draft" },
        status: 409,
      },
    ]);
    const editor = await loadedEditor(server);
    const session = new PreviewSession(new ApiClient("", server.fetch), editor);
    session.stageValue("S.AC.D9", 75);
    await session.refresh();
    expect(session.active).toBe(false);
    expect(session.rejected).toContain("not draft");
  });
});
