/** The four chart views: class overview blocks, frequency bar chart,
 * position scatter plot, and the cross-document line chart (which only
 * exists when the project has more than one file). Rendering is plain
 * SVG; values are taken verbatim from API payloads.
 */

import { classColor } from "./palette.js";
import type {
  FrequencyPayload,
  OverviewPayload,
  PositionsPayload,
  SeriesPayload,
} from "./types.js";

export type ChartTab = "overview" | "bar" | "scatter" | "line";

const TAB_TITLES: Record<ChartTab, string> = {
  overview: "總覽 Overview",
  bar: "頻率 Frequency",
  scatter: "位置 Positions",
  line: "跨文件 Trend",
};

export function visibleTabs(documentCount: number): ChartTab[] {
  const tabs: ChartTab[] = ["overview", "bar", "scatter"];
  if (documentCount > 1) tabs.push("line");
  return tabs;
}

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 640;
const HEIGHT = 260;
const MARGIN = 36;

function svgRoot(): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("width", "100%");
  return svg;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, String(value));
  return el;
}

export function renderOverview(container: HTMLElement, payload: OverviewPayload): void {
  container.textContent = "";
  if (!payload.classes.length) {
    container.append(emptyNote("此文件沒有實體 / no entities in this document"));
    return;
  }
  const wrap = document.createElement("div");
  wrap.className = "overview-blocks";
  for (const entry of payload.classes) {
    const block = document.createElement("div");
    block.className = "overview-block";
    block.style.backgroundColor = classColor(entry.color_index);
    const count = document.createElement("div");
    count.className = "count";
    count.textContent = String(entry.distinct_instances);
    const label = document.createElement("div");
    label.className = "label";
    label.textContent = entry.class_label;
    block.append(count, label);
    wrap.append(block);
  }
  container.append(wrap);
}

export function renderBarChart(
  container: HTMLElement,
  payload: FrequencyPayload,
  colorOf: (classLabel: string) => number,
): void {
  container.textContent = "";
  const rows = payload.rows.filter((r) => r.display_frequency > 0);
  if (!rows.length) {
    container.append(emptyNote("沒有可顯示的頻率 / nothing to plot"));
    return;
  }
  const svg = svgRoot();
  const max = Math.max(...rows.map((r) => r.display_frequency));
  const band = (WIDTH - 2 * MARGIN) / rows.length;
  rows.forEach((row, i) => {
    const height = ((HEIGHT - 2 * MARGIN) * row.display_frequency) / max;
    const x = MARGIN + i * band;
    svg.append(
      svgEl("rect", {
        x: x + band * 0.12,
        y: HEIGHT - MARGIN - height,
        width: band * 0.76,
        height,
        fill: classColor(colorOf(row.class_label)),
        "data-surface": row.surface,
        "data-value": row.display_frequency,
      }),
    );
    const text = svgEl("text", {
      x: x + band / 2,
      y: HEIGHT - MARGIN + 14,
      "text-anchor": "middle",
      "font-size": 11,
    });
    text.textContent = row.surface;
    svg.append(text);
  });
  container.append(svg);
}

export function renderScatter(container: HTMLElement, payload: PositionsPayload): void {
  container.textContent = "";
  if (!payload.points.length || payload.doc_length === 0) {
    container.append(emptyNote("沒有出現位置 / no occurrences"));
    return;
  }
  const svg = svgRoot();
  const lanes: string[] = [];
  for (const point of payload.points) {
    if (!lanes.includes(point.instance_id)) lanes.push(point.instance_id);
  }
  const laneHeight = (HEIGHT - 2 * MARGIN) / Math.max(lanes.length, 1);
  lanes.forEach((instanceId, lane) => {
    const y = MARGIN + laneHeight * (lane + 0.5);
    const first = payload.points.find((p) => p.instance_id === instanceId);
    const label = svgEl("text", { x: 4, y: y + 4, "font-size": 11 });
    label.textContent = first ? first.surface : instanceId;
    svg.append(label);
    svg.append(
      svgEl("line", {
        x1: MARGIN,
        x2: WIDTH - 8,
        y1: y,
        y2: y,
        stroke: "#ddd",
      }),
    );
  });
  for (const point of payload.points) {
    const lane = lanes.indexOf(point.instance_id);
    // x is the offset normalized by document length
    const x = MARGIN + ((WIDTH - MARGIN - 8) * point.start) / payload.doc_length;
    svg.append(
      svgEl("circle", {
        cx: x,
        cy: MARGIN + laneHeight * (lane + 0.5),
        r: 3,
        fill: "#4363d8",
        "data-start": point.start,
      }),
    );
  }
  container.append(svg);
}

export function renderLineChart(container: HTMLElement, payload: SeriesPayload): void {
  container.textContent = "";
  if (!payload.points.length) {
    container.append(emptyNote("沒有資料 / no data"));
    return;
  }
  const svg = svgRoot();
  const max = Math.max(...payload.points.map((p) => p.frequency), 1);
  const step = (WIDTH - 2 * MARGIN) / Math.max(payload.points.length - 1, 1);
  const coords = payload.points.map((point, i) => ({
    x: MARGIN + i * step,
    y: HEIGHT - MARGIN - ((HEIGHT - 2 * MARGIN) * point.frequency) / max,
    point,
  }));
  svg.append(
    svgEl("polyline", {
      points: coords.map((c) => `${c.x},${c.y}`).join(" "),
      fill: "none",
      stroke: "#4363d8",
      "stroke-width": 2,
    }),
  );
  for (const { x, y, point } of coords) {
    svg.append(svgEl("circle", { cx: x, cy: y, r: 4, fill: "#4363d8", "data-doc": point.doc_id }));
    const label = svgEl("text", {
      x,
      y: HEIGHT - MARGIN + 14,
      "text-anchor": "middle",
      "font-size": 11,
    });
    label.textContent = point.name;
    svg.append(label);
    const value = svgEl("text", { x, y: y - 8, "text-anchor": "middle", "font-size": 11 });
    value.textContent = String(point.frequency);
    svg.append(value);
  }
  container.append(svg);
}

function emptyNote(message: string): HTMLElement {
  const note = document.createElement("p");
  note.className = "empty-note";
  note.textContent = message;
  return note;
}

export class ChartTabs {
  private active: ChartTab = "overview";

  constructor(
    private nav: HTMLElement,
    private onSelect: (tab: ChartTab) => void,
  ) {}

  get activeTab(): ChartTab {
    return this.active;
  }

  render(documentCount: number): void {
    const tabs = visibleTabs(documentCount);
    if (!tabs.includes(this.active)) this.active = tabs[0];
    this.nav.textContent = "";
    for (const tab of tabs) {
      const button = document.createElement("button");
      button.className = "chart-tab" + (tab === this.active ? " active" : "");
      button.dataset.tab = tab;
      button.textContent = TAB_TITLES[tab];
      button.addEventListener("click", () => {
        this.active = tab;
        this.render(documentCount);
        this.onSelect(tab);
      });
      this.nav.append(button);
    }
  }
}
