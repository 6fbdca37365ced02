/** Payload shapes served by /api/v1. The UI never derives numbers itself:
 * every frequency shown comes from these objects. */

export interface ProjectInfo {
  project_id: string;
  name: string;
  documents: number;
  instances: number;
  modified: number;
}

export interface DocumentInfo {
  doc_id: string;
  name: string;
  order_index: number;
  length: number;
}

export interface ClassInfo {
  label: string;
  description: string;
  color_index: number;
  builtin: boolean;
}

export interface AliasRef {
  name: string;
  frequency: number;
}

export interface FrequencyRowJson {
  instance_id: string;
  surface: string;
  class_label: string;
  frequency: number;
  display_frequency: number;
  alias: AliasRef | null;
}

export interface FrequencyPayload {
  doc_id: string;
  apply_alias: boolean;
  sorted_by_frequency: boolean;
  rows: FrequencyRowJson[];
}

export interface SpanJson {
  start: number;
  end: number;
  instance_id: string;
  surface: string;
  class_label: string;
}

export interface AnnotationsPayload {
  doc_id: string;
  name: string;
  text: string;
  spans: SpanJson[];
  classes: Record<string, { description: string; color_index: number; builtin: boolean }>;
}

export interface OverviewPayload {
  doc_id: string;
  classes: { class_label: string; distinct_instances: number; color_index: number }[];
}

export interface PositionsPayload {
  doc_id: string;
  doc_length: number;
  points: { instance_id: string; surface: string; start: number }[];
}

export interface SeriesPayload {
  target: string;
  points: { doc_id: string; name: string; frequency: number }[];
}

export interface GroupInfo {
  group_id: string;
  name: string;
  members: string[];
  frequency: number;
}

export interface AliasInfo {
  alias_id: string;
  name: string;
  class_label: string;
  members: string[];
  frequency: number;
}

export type FilterMode = "instance" | "class" | "group" | "alias";

export interface DisplayFilterState {
  mode: FilterMode;
  ids: string[] | null;
  applyAlias: boolean;
}
