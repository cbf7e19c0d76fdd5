/**
 * Thin DOM layer: hash-routed pages over the view models.  All behavior
 * worth testing lives in editor.ts / report.ts / preview.ts / bands.ts;
 * this file only builds elements and forwards events.
 */
import { ApiClient, ApiError } from "./api";
import { EditorController, ORIGIN_LABELS } from "./editor";
import { PreviewSession } from "./preview";
import { mechanismTable, pillarTable, radarConfig } from "./report";
import type { FingerprintDoc, Phase } from "./types";

const api = new ApiClient("");
let role: string | null = null;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

function mount(...children: (Node | string)[]): void {
  const root = document.getElementById("app")!;
  root.replaceChildren(...children);
}

function banner(text: string, kind: "error" | "info" = "error"): HTMLElement {
  return el("div", { class: `banner ${kind}` }, text);
}

// ---------------------------------------------------------------------------
// Login
// ---------------------------------------------------------------------------

function loginPage(): void {
  const username = el("input", { placeholder: "username", autocomplete: "username" });
  const password = el("input", { placeholder: "password", type: "password" });
  const message = el("div", { class: "message" });
  const form = el(
    "form",
    { class: "login" },
    el("h1", {}, "Trustworthiness assessments"),
    username,
    password,
    el("button", { type: "submit" }, "Sign in"),
    message,
  );
  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    try {
      const session = await api.login(username.value, password.value);
      role = session.role;
      if (session.must_change_password) {
        passwordPage();
      } else {
        location.hash = "#/assessments";
      }
    } catch (err) {
      message.textContent = err instanceof ApiError ? err.detail : String(err);
    }
  });
  mount(form);
}

function passwordPage(): void {
  const oldPw = el("input", { placeholder: "current password", type: "password" });
  const newPw = el("input", { placeholder: "new password", type: "password" });
  const message = el("div", { class: "message" });
  const form = el(
    "form",
    { class: "login" },
    el("h1", {}, "Change temporary password"),
    oldPw,
    newPw,
    el("button", { type: "submit" }, "Change"),
    message,
  );
  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    try {
      await api.changePassword(oldPw.value, newPw.value);
      location.hash = "#/assessments";
    } catch (err) {
      message.textContent = err instanceof ApiError ? err.detail : String(err);
    }
  });
  mount(form);
}

// ---------------------------------------------------------------------------
// Assessment list
// ---------------------------------------------------------------------------

async function listPage(): Promise<void> {
  const items = await api.listAssessments();
  const rows = items.map((item) =>
    el(
      "tr",
      {},
      el("td", {}, el("a", { href: `#/report/${item.id}` }, item.id)),
      el("td", {}, item.description),
      el("td", {}, item.status),
      el("td", {}, String(item.revision)),
      el(
        "td",
        {},
        role === "assessor"
          ? el("a", { href: `#/edit/${item.id}` }, "edit")
          : "",
      ),
    ),
  );
  const actions: Node[] = [];
  if (role === "assessor") {
    const button = el("button", {}, "New assessment");
    button.addEventListener("click", async () => {
      const templates = await api.listTemplates();
      const description = prompt("Description for the new assessment?") ?? "";
      const created = await api.createAssessment(templates[0].id, description);
      location.hash = `#/edit/${created.id}`;
    });
    actions.push(button);
  }
  mount(
    el("h1", {}, "Assessments"),
    ...actions,
    el(
      "table",
      { class: "list" },
      el(
        "thead",
        {},
        el("tr", {}, el("th", {}, "id"), el("th", {}, "description"),
           el("th", {}, "status"), el("th", {}, "rev"), el("th", {}, "")),
      ),
      el("tbody", {}, ...rows),
    ),
  );
}

// ---------------------------------------------------------------------------
// Editor
// ---------------------------------------------------------------------------

async function editorPage(assessmentId: string): Promise<void> {
  const editor = new EditorController(api, assessmentId);
  await editor.load();
  const preview = new PreviewSession(api, editor);
  let pillarCode = editor.pillars()[0].code;
  let phase: Phase = "design";

  const render = () => {
    const header = el(
      "div",
      { class: "editor-header" },
      el("h1", {}, `Editing ${editor.assessmentId} (rev ${editor.revision})`),
      el("a", { href: `#/report/${assessmentId}` }, "report view"),
    );
    const notices: Node[] = [];
    if (editor.conflict) {
      const reload = el("button", {}, "Reload");
      reload.addEventListener("click", async () => {
        await editor.reload();
        render();
      });
      notices.push(banner(`Revision conflict: ${editor.conflict} `), reload);
    }
    if (editor.error) notices.push(banner(editor.error));

    const pillarNav = el(
      "nav",
      {},
      ...editor.pillars().map((pillar) => {
        const link = el(
          "button",
          { class: pillar.code === pillarCode ? "active" : "" },
          `${pillar.name} (${fmt(editor.pillarScore(pillar.code, phase))})`,
        );
        link.addEventListener("click", () => {
          pillarCode = pillar.code;
          render();
        });
        return link;
      }),
    );
    const phaseToggle = el(
      "div",
      { class: "phase-toggle" },
      ...(["design", "operational"] as Phase[]).map((candidate) => {
        const button = el(
          "button",
          { class: candidate === phase ? "active" : "" },
          candidate,
        );
        button.addEventListener("click", () => {
          phase = candidate;
          render();
        });
        return button;
      }),
    );

    const pillar = editor.pillars().find((p) => p.code === pillarCode)!;
    const panels = pillar.mechanisms
      .map((mech) => {
        const qcode = `${pillar.code}.${mech.code}`;
        const panel = editor.panel(qcode, phase);
        if (!panel.rows.length && !panel.question) return null;
        return mechanismPanel(qcode, panel);
      })
      .filter((node): node is HTMLElement => node !== null);

    const standards = el(
      "section",
      { class: "standards" },
      el("h2", {}, "Standards declarations"),
      ...editor.template.standards.map((std) => {
        const checkbox = el("input", { type: "checkbox" }) as HTMLInputElement;
        checkbox.checked = editor.assessment.declared_standards.includes(std.standard_id);
        checkbox.addEventListener("change", async () => {
          const affected = editor.standardPreview(std.standard_id).join(", ");
          const verb = checkbox.checked ? "satisfy" : "release";
          if (confirm(`${std.display_name} will ${verb}: ${affected}. Continue?`)) {
            await editor.toggleStandard(std.standard_id, checkbox.checked);
          }
          render();
        });
        return el("label", { class: "standard" }, checkbox, ` ${std.display_name}`);
      }),
    );

    mount(header, ...notices, phaseToggle, pillarNav, ...panels, standards);
  };

  const fmt = (value: number | null) => (value === null ? "—" : value.toFixed(1));

  const mechanismPanel = (qcode: string, panel: ReturnType<EditorController["panel"]>) => {
    const headerBits: (Node | string)[] = [
      el("h2", {}, `${panel.name} `),
      el("span", { class: `band ${panel.band}` }, fmt(panel.score)),
    ];
    const excludeBox = el("input", { type: "checkbox" }) as HTMLInputElement;
    excludeBox.checked = panel.excluded;
    excludeBox.addEventListener("change", async () => {
      await editor.toggleExclusion(qcode, excludeBox.checked);
      render();
    });
    headerBits.push(el("label", { class: "exclude" }, excludeBox, " excluded"));

    const body: Node[] = [];
    if (panel.excluded) {
      body.push(el("p", { class: "muted" }, "Excluded from this assessment."));
    } else {
      if (panel.question) {
        const select = el("select", {}) as HTMLSelectElement;
        select.append(el("option", { value: "" }, "— choose an answer —"));
        panel.question.answers.forEach((answer, index) => {
          const option = el("option", { value: String(index) }, answer.label);
          if (panel.chosenAnswer === index) option.selected = true;
          select.append(option);
        });
        select.addEventListener("change", async () => {
          if (select.value !== "") {
            await editor.selectAnswer(qcode, panel.question!.phase, Number(select.value));
            render();
          }
        });
        body.push(el("p", { class: "prompt" }, panel.question.prompt), select);
      }
      const rows = panel.rows.map((row) => {
        const input = el("input", {
          type: row.kind === "boolean" ? "checkbox" : "number",
          min: "0",
          max: "100",
        }) as HTMLInputElement;
        if (row.kind === "boolean") input.checked = row.value === 100;
        else if (row.value !== null) input.value = String(row.value);
        input.addEventListener("change", async () => {
          const raw = row.kind === "boolean" ? input.checked : Number(input.value);
          await editor.overrideMetric(row.code, raw);
          render();
        });
        return el(
          "tr",
          {},
          el("td", {}, row.code),
          el("td", {}, row.title),
          el("td", {}, input),
          el("td", { class: "origin" }, row.originLabel),
        );
      });
      body.push(
        el(
          "table",
          { class: "metrics" },
          el("thead", {}, el("tr", {}, el("th", {}, "code"), el("th", {}, "metric"),
             el("th", {}, "value"), el("th", {}, "origin"))),
          el("tbody", {}, ...rows),
        ),
      );
    }
    return el("section", { class: "mechanism" }, ...headerBits, ...body);
  };

  void preview; // staged what-if edits are wired through PreviewSession
  render();
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

async function reportPage(assessmentId: string): Promise<void> {
  const assessment = await api.getAssessment(assessmentId);
  const template = await api.getTemplate(assessment.template_id);
  const scorecard = await api.getScorecard(assessmentId);
  let phase: Phase = "design";

  const render = async () => {
    const toggle = el(
      "div",
      { class: "phase-toggle" },
      ...(["design", "operational"] as Phase[]).map((candidate) => {
        const button = el(
          "button",
          { class: candidate === phase ? "active" : "" },
          candidate,
        );
        button.addEventListener("click", () => void render().then(undefined), {
          once: true,
        });
        button.addEventListener("click", () => {
          phase = candidate;
        });
        return button;
      }),
    );

    const table = el(
      "table",
      { class: "scores" },
      el("thead", {}, el("tr", {}, el("th", {}, "pillar"), el("th", {}, "raw"),
         el("th", {}, "capped"), el("th", {}, "band"))),
      el(
        "tbody",
        {},
        ...pillarTable(template, scorecard, phase).map((row) => {
          const tr = el(
            "tr",
            {},
            el("td", {}, row.name),
            el("td", {}, row.raw === null ? "" : row.raw.toFixed(1)),
            el("td", {}, row.capped === null ? "" : row.capped.toFixed(1)),
            el("td", {}, row.band),
          );
          tr.style.backgroundColor = row.backgroundCss;
          tr.style.color = row.textCss;
          return tr;
        }),
      ),
    );

    const charts = el("div", { class: "charts" });
    for (const chartPhase of ["design", "operational"] as Phase[]) {
      const series = await api.getFingerprint(assessmentId, "pillars", chartPhase);
      charts.append(drawRadar(series, `${chartPhase} phase`));
    }

    const exports = el(
      "div",
      { class: "exports" },
      ...(["dump", "tabular", "summary"] as const).map((format) => {
        const link = el("a", { href: `/assessments/${assessmentId}/export?format=${format}` },
                        `export ${format}`);
        return link;
      }),
    );

    mount(
      el("h1", {}, `Report: ${assessmentId} (${assessment.status})`),
      toggle,
      table,
      charts,
      exports,
    );
  };
  await render();
}

function drawRadar(series: FingerprintDoc, title: string): HTMLElement {
  const canvas = el("canvas", { width: "420", height: "420" }) as HTMLCanvasElement;
  const chartFactory = (window as { Chart?: new (c: HTMLCanvasElement, cfg: unknown) => unknown })
    .Chart;
  if (chartFactory) {
    new chartFactory(canvas, radarConfig(series, title));
  } else {
    canvas.replaceWith(el("pre", {},
      series.axes.map((a) => `${a.label}: ${a.value ?? "—"}`).join("\n")));
  }
  return el("figure", {}, canvas, el("figcaption", {}, title));
}

// ---------------------------------------------------------------------------
// Router
// ---------------------------------------------------------------------------

async function route(): Promise<void> {
  const hash = location.hash || "#/login";
  try {
    if (hash === "#/login") loginPage();
    else if (hash === "#/assessments") await listPage();
    else if (hash.startsWith("#/edit/")) await editorPage(hash.slice("#/edit/".length));
    else if (hash.startsWith("#/report/")) await reportPage(hash.slice("#/report/".length));
    else loginPage();
  } catch (err) {
    if (err instanceof ApiError && err.status === 401) loginPage();
    else mount(banner(String(err)));
  }
}

window.addEventListener("hashchange", () => void route());
void route();

export { ORIGIN_LABELS };
