import type {
  AliasInfo,
  AnnotationsPayload,
  ClassInfo,
  DisplayFilterState,
  DocumentInfo,
  FrequencyPayload,
  GroupInfo,
  OverviewPayload,
  PositionsPayload,
  ProjectInfo,
  SeriesPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

function filterQuery(filter: DisplayFilterState | null): string {
  if (!filter) return "";
  const params = new URLSearchParams();
  params.set("mode", filter.mode);
  if (filter.ids !== null) params.set("ids", filter.ids.join(","));
  if (filter.applyAlias) params.set("apply_alias", "true");
  return params.toString();
}

/** Thin typed client over the workbench HTTP API. */
export class WorkbenchApi {
  constructor(
    private fetchFn: FetchLike = (input, init) => globalThis.fetch(input, init),
    private base = "/api/v1",
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      if (body instanceof FormData || body instanceof Blob) {
        init.body = body as BodyInit;
      } else {
        init.headers = { "Content-Type": "application/json" };
        init.body = JSON.stringify(body);
      }
    }
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let code = "HttpError";
      let message = `${response.status}`;
      try {
        const payload = (await response.json()) as { code?: string; message?: string };
        code = payload.code ?? code;
        message = payload.message ?? message;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  listProjects() {
    return this.request<{ projects: ProjectInfo[] }>("GET", "/projects");
  }

  createProject(projectId?: string, name?: string) {
    return this.request<{ project_id: string; name: string }>("POST", "/projects", {
      project_id: projectId,
      name,
    });
  }

  deleteProject(projectId: string) {
    return this.request<{ deleted: string }>("DELETE", `/projects/${projectId}`);
  }

  listDocuments(projectId: string) {
    return this.request<{ documents: DocumentInfo[] }>("GET", `/projects/${projectId}/documents`);
  }

  pasteText(projectId: string, text: string, name?: string) {
    return this.request<{ documents: DocumentInfo[] }>(
      "POST",
      `/projects/${projectId}/documents`,
      { text, name },
    );
  }

  uploadFiles(projectId: string, files: FileList | File[]) {
    const form = new FormData();
    for (const file of Array.from(files)) form.append("files", file);
    return this.request<{ documents: DocumentInfo[] }>(
      "POST",
      `/projects/${projectId}/documents`,
      form,
    );
  }

  autoAnnotate(projectId: string, backend: "gazetteer" | "external") {
    return this.request<Record<string, number>>(
      "POST",
      `/projects/${projectId}/auto-annotate`,
      { backend },
    );
  }

  uploadDefinition(projectId: string, file: File | Blob, replace: boolean) {
    const form = new FormData();
    form.append("file", file);
    return this.request<Record<string, number>>(
      "POST",
      `/projects/${projectId}/definitions?replace=${replace}`,
      form,
    );
  }

  registerInstance(projectId: string, surface: string, classLabel: string) {
    return this.request<{ instance_id: string }>("POST", `/projects/${projectId}/instances`, {
      surface,
      class_label: classLabel,
    });
  }

  deleteInstance(projectId: string, instanceId: string) {
    return this.request<{ deleted: string }>(
      "DELETE",
      `/projects/${projectId}/instances/${instanceId}`,
    );
  }

  listClasses(projectId: string) {
    return this.request<{ classes: ClassInfo[] }>("GET", `/projects/${projectId}/classes`);
  }

  createClass(projectId: string, label: string, description: string) {
    return this.request<ClassInfo>("POST", `/projects/${projectId}/classes`, {
      label,
      description,
    });
  }

  deleteClass(projectId: string, label: string) {
    return this.request<{ deleted: string }>(
      "DELETE",
      `/projects/${projectId}/classes/${encodeURIComponent(label)}`,
    );
  }

  listGroups(projectId: string, docId: string) {
    return this.request<{ groups: GroupInfo[] }>(
      "GET",
      `/projects/${projectId}/documents/${docId}/groups`,
    );
  }

  createGroup(projectId: string, docId: string, name: string, members: string[]) {
    return this.request<GroupInfo>("POST", `/projects/${projectId}/documents/${docId}/groups`, {
      name,
      members,
    });
  }

  deleteGroup(projectId: string, docId: string, groupId: string) {
    return this.request<{ deleted: string }>(
      "DELETE",
      `/projects/${projectId}/documents/${docId}/groups/${groupId}`,
    );
  }

  listAliases(projectId: string, docId: string) {
    return this.request<{ aliases: AliasInfo[] }>(
      "GET",
      `/projects/${projectId}/documents/${docId}/aliases`,
    );
  }

  createAlias(projectId: string, docId: string, name: string, members: string[]) {
    return this.request<AliasInfo>("POST", `/projects/${projectId}/documents/${docId}/aliases`, {
      name,
      members,
    });
  }

  deleteAlias(projectId: string, docId: string, aliasId: string) {
    return this.request<{ deleted: string }>(
      "DELETE",
      `/projects/${projectId}/documents/${docId}/aliases/${aliasId}`,
    );
  }

  annotations(projectId: string, docId: string, filter: DisplayFilterState | null) {
    const query = filterQuery(filter);
    return this.request<AnnotationsPayload>(
      "GET",
      `/projects/${projectId}/documents/${docId}/annotations${query ? "?" + query : ""}`,
    );
  }

  overview(projectId: string, docId: string) {
    return this.request<OverviewPayload>(
      "GET",
      `/projects/${projectId}/documents/${docId}/charts/overview`,
    );
  }

  frequency(
    projectId: string,
    docId: string,
    filter: DisplayFilterState | null,
    sortByFrequency: boolean,
  ) {
    const params = new URLSearchParams(filterQuery(filter));
    if (sortByFrequency) params.set("sort_by_frequency", "true");
    const query = params.toString();
    return this.request<FrequencyPayload>(
      "GET",
      `/projects/${projectId}/documents/${docId}/charts/frequency${query ? "?" + query : ""}`,
    );
  }

  positions(projectId: string, docId: string, filter: DisplayFilterState | null) {
    const query = filterQuery(filter);
    return this.request<PositionsPayload>(
      "GET",
      `/projects/${projectId}/documents/${docId}/charts/positions${query ? "?" + query : ""}`,
    );
  }

  series(projectId: string, target: string) {
    return this.request<SeriesPayload>(
      "GET",
      `/projects/${projectId}/charts/series?target=${encodeURIComponent(target)}`,
    );
  }

  exportUrl(projectId: string, docId: string): string {
    return `${this.base}/projects/${projectId}/documents/${docId}/export`;
  }
}
