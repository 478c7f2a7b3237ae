/** App wiring: debounced previews (never recorded), committed searches, panel refresh. */

import { ApiClient } from "./api.js";
import { renderAdvice, renderConstraints, renderHistory, renderMetrics, renderRulesTable } from "./render.js";
import { initialState, sortRules, toggleSort, type RuleSortKey, type ViewState } from "./state.js";

const PREVIEW_DEBOUNCE_MS = 200;

export function resolveApiBase(): string {
  const fromWindow = (window as unknown as { ATRS_API_BASE?: string }).ATRS_API_BASE;
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return fromWindow ?? fromQuery ?? "http://127.0.0.1:8080";
}

export class App {
  readonly state: ViewState = initialState();
  private previewController: AbortController | null = null;
  private previewTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    readonly api: ApiClient,
    readonly root: HTMLElement,
  ) {}

  async start(): Promise<void> {
    this.renderShell();
    await Promise.all([this.refreshHistory(), this.refreshRules(), this.refreshMetrics()]);
    const constraints = await this.api.constraints();
    this.replacePanel("constraints", renderConstraints(constraints));
    this.render();
  }

  /** As-you-type preview; in-flight requests are superseded by newer keystrokes. */
  onQueryInput(query: string): void {
    this.state.query = query;
    if (this.previewTimer !== null) {
      clearTimeout(this.previewTimer);
    }
    this.previewTimer = setTimeout(() => void this.preview(query), PREVIEW_DEBOUNCE_MS);
  }

  async preview(query: string): Promise<void> {
    this.previewController?.abort();
    if (!query.trim()) {
      this.state.advice = null;
      this.render();
      return;
    }
    const controller = new AbortController();
    this.previewController = controller;
    try {
      // record=false: previews must add zero history rows
      this.state.advice = await this.api.recommend(query, {
        record: false,
        signal: controller.signal,
      });
      this.state.error = null;
    } catch (error) {
      if ((error as Error).name === "AbortError") return;
      this.state.error = (error as Error).message;
    }
    this.render();
  }

  /** Commit the current query: recorded server-side, then panels refresh. */
  async commit(): Promise<void> {
    const query = this.state.query.trim();
    if (!query) return;
    try {
      this.state.advice = await this.api.recommend(query, { record: true });
      await Promise.all([this.refreshHistory(), this.refreshRules(), this.refreshMetrics()]);
      this.state.error = null;
    } catch (error) {
      this.state.error = (error as Error).message;
    }
    this.render();
  }

  async refreshHistory(): Promise<void> {
    this.state.history = await this.api.history();
  }

  async refreshRules(): Promise<void> {
    this.state.rules = await this.api.rules();
  }

  async refreshMetrics(): Promise<void> {
    this.state.metrics = await this.api.metrics();
  }

  onSort(key: RuleSortKey): void {
    this.state.ruleSort = toggleSort(this.state.ruleSort, key);
    this.render();
  }

  loadComparison(payload: unknown): void {
    this.state.comparison = payload as ViewState["comparison"];
    this.render();
  }

  private renderShell(): void {
    this.root.innerHTML = "";
    const header = document.createElement("header");
    const title = document.createElement("h1");
    title.textContent = "baggage advisor";
    header.appendChild(title);

    const searchRow = document.createElement("div");
    searchRow.className = "search-row";
    const input = document.createElement("input");
    input.id = "query";
    input.placeholder = "can I carry ... ?";
    input.addEventListener("input", () => this.onQueryInput(input.value));
    input.addEventListener("keydown", (event) => {
      if (event.key === "Enter") void this.commit();
    });
    const button = document.createElement("button");
    button.id = "commit";
    button.textContent = "search";
    button.addEventListener("click", () => void this.commit());
    searchRow.appendChild(input);
    searchRow.appendChild(button);
    header.appendChild(searchRow);
    this.root.appendChild(header);

    for (const id of ["error", "advice", "history", "rules", "metrics", "constraints"]) {
      const panel = document.createElement("div");
      panel.id = id;
      this.root.appendChild(panel);
    }
  }

  private replacePanel(id: string, node: HTMLElement): void {
    const existing = this.root.querySelector(`#${id}`);
    if (existing) {
      existing.replaceWith(node);
    } else {
      this.root.appendChild(node);
    }
  }

  render(): void {
    const errorPanel = document.createElement("div");
    errorPanel.id = "error";
    errorPanel.className = "error-panel";
    if (this.state.error) {
      errorPanel.textContent = this.state.error;
    }
    this.replacePanel("error", errorPanel);
    this.replacePanel("advice", renderAdvice(this.state.advice));
    this.replacePanel("history", renderHistory(this.state.history));
    this.replacePanel(
      "rules",
      renderRulesTable(sortRules(this.state.rules, this.state.ruleSort), this.state.ruleSort, (key) =>
        this.onSort(key),
      ),
    );
    this.replacePanel("metrics", renderMetrics(this.state.metrics, this.state.comparison));
  }
}

export function mount(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const app = new App(new ApiClient(resolveApiBase()), root);

  const upload = document.getElementById("comparison-upload");
  upload?.addEventListener("change", async () => {
    const file = (upload as HTMLInputElement).files?.[0];
    if (!file) return;
    app.loadComparison(JSON.parse(await file.text()));
  });

  void app.start();
}

// browser entry point; tests import the classes instead
if (typeof document !== "undefined" && document.getElementById("app")) {
  mount();
}
