/** Application wiring: sidebar on the left, corpus / charts on the right.
 * Optimistic updates are deliberately absent; every mutation waits for the
 * API acknowledgement and then re-fetches, so a browser refresh can never
 * lose state that the server has not already persisted.
 */

import { ApiError, WorkbenchApi } from "./api.js";
import { renderAnnotatedText } from "./annotated_text.js";
import {
  ChartTabs,
  renderBarChart,
  renderLineChart,
  renderOverview,
  renderScatter,
} from "./chart_tabs.js";
import { EntitySidebar } from "./sidebar.js";
import type { ClassInfo, DisplayFilterState, DocumentInfo, FilterMode } from "./types.js";

const api = new WorkbenchApi();

interface ViewState {
  projectId: string | null;
  docId: string | null;
  documents: DocumentInfo[];
  classes: ClassInfo[];
  filter: DisplayFilterState;
  sortByFrequency: boolean;
  seriesTarget: string;
}

const state: ViewState = {
  projectId: null,
  docId: null,
  documents: [],
  classes: [],
  filter: { mode: "instance", ids: null, applyAlias: false },
  sortByFrequency: false,
  seriesTarget: "",
};

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function banner(message: string, isError = true): void {
  const box = el<HTMLDivElement>("banner");
  box.textContent = message;
  box.className = isError ? "banner error" : "banner info";
  box.hidden = false;
  window.setTimeout(() => {
    box.hidden = true;
  }, 6000);
}

async function guard<T>(work: () => Promise<T>): Promise<T | undefined> {
  try {
    return await work();
  } catch (err) {
    if (err instanceof ApiError) banner(`${err.code}: ${err.message}`);
    else banner(String(err));
    return undefined;
  }
}

const sidebar = new EntitySidebar(el("entity-list"), {
  async deleteInstance(instanceId) {
    if (!state.projectId) return;
    await guard(() => api.deleteInstance(state.projectId!, instanceId));
    await refreshAll();
  },
});

const chartTabs = new ChartTabs(el("chart-nav"), () => {
  void renderActiveChart();
});

async function refreshProjects(): Promise<void> {
  const result = await guard(() => api.listProjects());
  if (!result) return;
  const select = el<HTMLSelectElement>("project-select");
  select.textContent = "";
  for (const project of result.projects) {
    const option = document.createElement("option");
    option.value = project.project_id;
    option.textContent = `${project.name} (${project.documents} 文件)`;
    select.append(option);
  }
  if (result.projects.length && !state.projectId) {
    state.projectId = result.projects[0].project_id;
  }
  if (state.projectId) select.value = state.projectId;
}

async function refreshDocuments(): Promise<void> {
  if (!state.projectId) return;
  const result = await guard(() => api.listDocuments(state.projectId!));
  if (!result) return;
  state.documents = result.documents;
  const select = el<HTMLSelectElement>("doc-select");
  select.textContent = "";
  for (const doc of state.documents) {
    const option = document.createElement("option");
    option.value = doc.doc_id;
    option.textContent = doc.name;
    select.append(option);
  }
  if (!state.docId || !state.documents.some((d) => d.doc_id === state.docId)) {
    state.docId = state.documents[0]?.doc_id ?? null;
  }
  if (state.docId) select.value = state.docId;
  chartTabs.render(state.documents.length);
  el<HTMLAnchorElement>("export-link").hidden = !state.docId;
}

async function refreshClasses(): Promise<void> {
  if (!state.projectId) return;
  const result = await guard(() => api.listClasses(state.projectId!));
  if (!result) return;
  state.classes = result.classes;
  const select = el<HTMLSelectElement>("annotate-class");
  select.textContent = "";
  for (const cls of state.classes) {
    const option = document.createElement("option");
    option.value = cls.label;
    option.textContent = cls.description ? `${cls.description}|${cls.label}` : cls.label;
    select.append(option);
  }
}

function colorOf(classLabel: string): number {
  return state.classes.find((c) => c.label === classLabel)?.color_index ?? 0;
}

async function refreshSidebarAndText(): Promise<void> {
  if (!state.projectId || !state.docId) return;
  const frequency = await guard(() =>
    api.frequency(state.projectId!, state.docId!, state.filter, state.sortByFrequency),
  );
  if (frequency) sidebar.render(frequency.rows);
  const annotations = await guard(() =>
    api.annotations(state.projectId!, state.docId!, state.filter),
  );
  if (annotations) {
    const result = renderAnnotatedText(el("annotated-text"), annotations);
    if (result.dropped.length) {
      banner(`dropped ${result.dropped.length} out-of-range spans from display`);
    }
  }
  const exportLink = el<HTMLAnchorElement>("export-link");
  exportLink.href = api.exportUrl(state.projectId, state.docId);
}

async function renderActiveChart(): Promise<void> {
  if (!state.projectId || !state.docId) return;
  const container = el("chart-body");
  const tab = chartTabs.activeTab;
  if (tab === "overview") {
    const payload = await guard(() => api.overview(state.projectId!, state.docId!));
    if (payload) renderOverview(container, payload);
  } else if (tab === "bar") {
    const payload = await guard(() =>
      api.frequency(state.projectId!, state.docId!, state.filter, true),
    );
    if (payload) renderBarChart(container, payload, colorOf);
  } else if (tab === "scatter") {
    const payload = await guard(() =>
      api.positions(state.projectId!, state.docId!, state.filter),
    );
    if (payload) renderScatter(container, payload);
  } else {
    const target = state.seriesTarget.trim();
    if (!target) {
      container.textContent = "";
      const hint = document.createElement("p");
      hint.className = "empty-note";
      hint.textContent = "輸入實體或別名名稱 / enter an instance id or alias name";
      container.append(hint);
      return;
    }
    const payload = await guard(() => api.series(state.projectId!, target));
    if (payload) renderLineChart(container, payload);
  }
}

async function refreshAll(): Promise<void> {
  sidebar.disarm();
  await refreshDocuments();
  await refreshClasses();
  await refreshSidebarAndText();
  await renderActiveChart();
}

function currentFilterFromControls(): DisplayFilterState {
  const mode = el<HTMLSelectElement>("filter-mode").value as FilterMode;
  const raw = el<HTMLInputElement>("filter-ids").value.trim();
  return {
    mode,
    ids: raw ? raw.split(/[,\s]+/).filter(Boolean) : null,
    applyAlias: el<HTMLInputElement>("apply-alias").checked,
  };
}

function wireControls(): void {
  el<HTMLSelectElement>("project-select").addEventListener("change", (event) => {
    state.projectId = (event.target as HTMLSelectElement).value;
    state.docId = null;
    void refreshAll();
  });

  el<HTMLButtonElement>("project-create").addEventListener("click", () => {
    void guard(async () => {
      const created = await api.createProject();
      state.projectId = created.project_id;
      await refreshProjects();
      await refreshAll();
    });
  });

  el<HTMLSelectElement>("doc-select").addEventListener("change", (event) => {
    sidebar.disarm();
    state.docId = (event.target as HTMLSelectElement).value;
    void refreshAll();
  });

  el<HTMLButtonElement>("paste-submit").addEventListener("click", () => {
    const text = el<HTMLTextAreaElement>("paste-text").value;
    if (!state.projectId || !text) return;
    void guard(async () => {
      await api.pasteText(state.projectId!, text);
      el<HTMLTextAreaElement>("paste-text").value = "";
      await refreshAll();
    });
  });

  el<HTMLInputElement>("file-input").addEventListener("change", (event) => {
    const input = event.target as HTMLInputElement;
    if (!state.projectId || !input.files?.length) return;
    void guard(async () => {
      await api.uploadFiles(state.projectId!, input.files!);
      input.value = "";
      await refreshAll();
    });
  });

  el<HTMLButtonElement>("auto-annotate").addEventListener("click", () => {
    if (!state.projectId) return;
    void guard(async () => {
      const summary = await api.autoAnnotate(state.projectId!, "external");
      banner(`auto-annotation folded ${summary.surfaces} surfaces`, false);
      await refreshAll();
    });
  });

  el<HTMLButtonElement>("annotate-submit").addEventListener("click", () => {
    const surface = el<HTMLInputElement>("annotate-surface").value.trim();
    const classLabel = el<HTMLSelectElement>("annotate-class").value;
    if (!state.projectId || !surface) return;
    void guard(async () => {
      await api.registerInstance(state.projectId!, surface, classLabel);
      el<HTMLInputElement>("annotate-surface").value = "";
      await refreshAll();
    });
  });

  el<HTMLInputElement>("definition-input").addEventListener("change", (event) => {
    const input = event.target as HTMLInputElement;
    if (!state.projectId || !input.files?.length) return;
    const replace = el<HTMLInputElement>("definition-replace").checked;
    void guard(async () => {
      const summary = await api.uploadDefinition(state.projectId!, input.files![0], replace);
      banner(
        `定義已套用 / applied: ${summary.instances_registered} instances`,
        false,
      );
      input.value = "";
      await refreshAll();
    });
  });

  for (const id of ["filter-mode", "filter-ids", "apply-alias"]) {
    el(id).addEventListener("change", () => {
      sidebar.disarm();
      state.filter = currentFilterFromControls();
      void refreshSidebarAndText().then(renderActiveChart);
    });
  }

  el<HTMLInputElement>("sort-toggle").addEventListener("change", (event) => {
    sidebar.disarm();
    state.sortByFrequency = (event.target as HTMLInputElement).checked;
    void refreshSidebarAndText();
  });

  el<HTMLInputElement>("series-target").addEventListener("change", (event) => {
    state.seriesTarget = (event.target as HTMLInputElement).value;
    void renderActiveChart();
  });

  el<HTMLButtonElement>("group-create").addEventListener("click", () => {
    const name = el<HTMLInputElement>("group-name").value.trim();
    const members = el<HTMLInputElement>("group-members").value.split(/[,\s]+/).filter(Boolean);
    if (!state.projectId || !state.docId || !name) return;
    void guard(async () => {
      await api.createGroup(state.projectId!, state.docId!, name, members);
      banner(`群組 ${name} 已建立 / group created`, false);
      await refreshAll();
    });
  });

  el<HTMLButtonElement>("alias-create").addEventListener("click", () => {
    const name = el<HTMLInputElement>("alias-name").value.trim();
    const members = el<HTMLInputElement>("alias-members").value.split(/[,\s]+/).filter(Boolean);
    if (!state.projectId || !state.docId || !name) return;
    void guard(async () => {
      await api.createAlias(state.projectId!, state.docId!, name, members);
      banner(`別名 ${name} 已建立 / alias created`, false);
      await refreshAll();
    });
  });
}

async function start(): Promise<void> {
  wireControls();
  await refreshProjects();
  await refreshAll();
}

document.addEventListener("DOMContentLoaded", () => {
  void start();
});
