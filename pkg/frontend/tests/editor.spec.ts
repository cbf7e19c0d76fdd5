import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { EditorController } from "../src/editor";
import flow from "./fixtures/editor_flow.json";
import { FakeServer } from "./helpers";

const aid = (flow.created as { id: string }).id;

function makeServer(): FakeServer {
  return new FakeServer([
    { method: "GET", path: `/assessments/${aid}`, payload: flow.created },
    { method: "GET", path: "/templates/distaf-sample", payload: flow.template },
    {
      method: "GET",
      path: `/assessments/${aid}/scorecard`,
      payload: [
        flow.scorecard_initial,
        flow.scorecard_after_answer,
        flow.scorecard_after_override,
      ],
    },
    { method: "POST", path: `/assessments/${aid}/answers`, payload: flow.after_answer },
    { method: "PATCH", path: `/assessments/${aid}/metrics`, payload: flow.after_override },
  ]);
}

describe("editor round-trip: answer then direct override", () => {
  let server: FakeServer;
  let editor: EditorController;

  beforeEach(async () => {
    server = new FakeServer([]);
    server = makeServer();
    editor = new EditorController(new ApiClient("", server.fetch), aid);
    await editor.load();
  });

  it("starts with unscored AC rows", () => {
    const panel = editor.panel("S.AC", "design");
    expect(panel.rows.map((r) => r.code)).toEqual(["S.AC.D8", "S.AC.D9"]);
    expect(panel.rows.every((r) => r.value === null)).toBe(true);
    expect(panel.score).toBeNull();
  });

  it("choosing answer d shows both metrics at 100 with origin 'from answer'", async () => {
    await editor.selectAnswer("S.AC", "design", 3);
    expect(editor.conflict).toBeNull();
    const panel = editor.panel("S.AC", "design");
    expect(panel.chosenAnswer).toBe(3);
    for (const row of panel.rows) {
      expect(row.value).toBe(100);
      expect(row.originLabel).toBe("from answer");
    }
  });

  it("overriding S.AC.D9 to 75 flips its origin to 'direct'", async () => {
    await editor.selectAnswer("S.AC", "design", 3);
    await editor.overrideMetric("S.AC.D9", 75);
    const panel = editor.panel("S.AC", "design");
    const d8 = panel.rows.find((r) => r.code === "S.AC.D8")!;
    const d9 = panel.rows.find((r) => r.code === "S.AC.D9")!;
    expect(d8.value).toBe(100);
    expect(d8.originLabel).toBe("from answer");
    expect(d9.value).toBe(75);
    expect(d9.originLabel).toBe("direct");
  });

  it("shows the server-confirmed mechanism score", async () => {
    await editor.selectAnswer("S.AC", "design", 3);
    await editor.overrideMetric("S.AC.D9", 75);
    const fromServer = (
      flow.scorecard_after_override as {
        design: { mechanisms: Record<string, { capped_score: number }> };
      }
    ).design.mechanisms["S.AC"].capped_score;
    expect(editor.mechanismScore("S.AC", "design")).toBe(fromServer);
    expect(editor.panel("S.AC", "design").score).toBe(fromServer);
  });

  it("performs no client-side arithmetic: every displayed number was served", async () => {
    await editor.selectAnswer("S.AC", "design", 3);
    await editor.overrideMetric("S.AC.D9", 75);
    const served = server.servedNumbers();
    const displayed: number[] = [];
    const panel = editor.panel("S.AC", "design");
    for (const row of panel.rows) {
      if (row.value !== null) displayed.push(row.value);
    }
    if (panel.score !== null) displayed.push(panel.score);
    for (const pillar of editor.pillars()) {
      for (const phase of ["design", "operational"] as const) {
        const score = editor.pillarScore(pillar.code, phase);
        if (score !== null) displayed.push(score);
      }
    }
    expect(displayed.length).toBeGreaterThan(0);
    for (const value of displayed) {
      expect(served.has(value.toString()), `${value} not served by the API`).toBe(true);
    }
  });

  it("echoes revisions from the server", async () => {
    expect(editor.revision).toBe((flow.created as { revision: number }).revision);
    await editor.selectAnswer("S.AC", "design", 3);
    expect(editor.revision).toBe((flow.after_answer as { revision: number }).revision);
    await editor.overrideMetric("S.AC.D9", 75);
    expect(editor.revision).toBe((flow.after_override as { revision: number }).revision);
  });

  it("sent the writes the flow describes", async () => {
    await editor.selectAnswer("S.AC", "design", 3);
    await editor.overrideMetric("S.AC.D9", 75);
    const writes = server.requests.filter((r) => r.method !== "GET");
    expect(writes[0].body).toMatchObject({
      mechanism: "S.AC",
      phase: "design",
      answer_index: 3,
    });
    expect(writes[1].body).toMatchObject({ values: { "S.AC.D9": 75 } });
  });
});

describe("editor conflict handling", () => {
  it("surfaces a revision conflict with the server's message", async () => {
    const server = new FakeServer([
      { method: "GET", path: `/assessments/${aid}`, payload: flow.created },
      { method: "GET", path: "/templates/distaf-sample", payload: flow.template },
      {
        method: "GET",
        path: `/assessments/${aid}/scorecard`,
        payload: flow.scorecard_initial,
      },
      {
        method: "POST",
        path: `/assessments/${aid}/answers`,
        payload: { detail: "write was based on 1" },
        status: 409,
      },
    ]);
    const editor = new EditorController(new ApiClient("", server.fetch), aid);
    await editor.load();
    await editor.selectAnswer("S.AC", "design", 3);
    expect(editor.conflict).toContain("write was based on 1");
  });

  it("refuses edits outside draft without calling the server", async () => {
    const published = { ...(flow.created as Record<string, unknown>), status: "public" };
    const server = new FakeServer([
      { method: "GET", path: `/assessments/${aid}`, payload: published },
      { method: "GET", path: "/templates/distaf-sample", payload: flow.template },
      {
        method: "GET",
        path: `/assessments/${aid}/scorecard`,
        payload: flow.scorecard_initial,
      },
    ]);
    const editor = new EditorController(new ApiClient("", server.fetch), aid);
    await editor.load();
    const requestsBefore = server.requests.length;
    await editor.overrideMetric("S.AC.D9", 75);
    expect(editor.error).toContain("public");
    expect(server.requests.length).toBe(requestsBefore);
  });
});
