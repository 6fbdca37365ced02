import { beforeEach, describe, expect, it } from "vitest";

import {
  ChartTabs,
  renderBarChart,
  renderLineChart,
  visibleTabs,
} from "../src/chart_tabs.js";
import type { FrequencyPayload, SeriesPayload } from "../src/types.js";

describe("tab visibility", () => {
  it("hides the line chart for single-file projects", () => {
    expect(visibleTabs(1)).toEqual(["overview", "bar", "scatter"]);
  });

  it("shows the line chart when there are multiple files", () => {
    expect(visibleTabs(3)).toEqual(["overview", "bar", "scatter", "line"]);
  });

  it("renders no line tab button for a single document", () => {
    document.body.innerHTML = '<nav id="nav"></nav>';
    const tabs = new ChartTabs(document.getElementById("nav")!, () => {});
    tabs.render(1);
    const names = Array.from(document.querySelectorAll("button.chart-tab")).map(
      (b) => (b as HTMLElement).dataset.tab,
    );
    expect(names).toEqual(["overview", "bar", "scatter"]);
    tabs.render(2);
    expect(document.querySelector('button[data-tab="line"]')).not.toBeNull();
  });

  it("falls back to the first tab when the active one disappears", () => {
    document.body.innerHTML = '<nav id="nav"></nav>';
    const tabs = new ChartTabs(document.getElementById("nav")!, () => {});
    tabs.render(2);
    document.querySelector<HTMLButtonElement>('button[data-tab="line"]')!.click();
    expect(tabs.activeTab).toBe("line");
    tabs.render(1); // the second document was deleted
    expect(tabs.activeTab).toBe("overview");
  });
});

describe("chart rendering", () => {
  beforeEach(() => {
    document.body.innerHTML = '<div id="chart"></div>';
  });

  it("draws one bar per row using display frequencies from the payload", () => {
    const payload: FrequencyPayload = {
      doc_id: "d",
      apply_alias: true,
      sorted_by_frequency: true,
      rows: [
        {
          instance_id: "E2",
          surface: "行者",
          class_label: "PERSON",
          frequency: 82,
          display_frequency: 104,
          alias: { name: "孫悟空", frequency: 104 },
        },
        {
          instance_id: "E8",
          surface: "悟空",
          class_label: "PERSON",
          frequency: 8,
          display_frequency: 104,
          alias: { name: "孫悟空", frequency: 104 },
        },
        {
          instance_id: "E9",
          surface: "金箍棒",
          class_label: "WEAPON",
          frequency: 0,
          display_frequency: 0,
          alias: null,
        },
      ],
    };
    renderBarChart(document.getElementById("chart")!, payload, () => 0);
    const bars = document.querySelectorAll("rect");
    expect(bars).toHaveLength(2); // zero-frequency rows draw nothing
    // alias members share the alias total, so the bars are equally tall
    expect(bars[0].getAttribute("height")).toBe(bars[1].getAttribute("height"));
    expect(bars[0].getAttribute("data-value")).toBe("104");
  });

  it("draws a point and a label per document in the series", () => {
    const payload: SeriesPayload = {
      target: "孫悟空",
      points: [
        { doc_id: "chapter59.txt", name: "chapter59.txt", frequency: 104 },
        { doc_id: "chapter60.txt", name: "chapter60.txt", frequency: 75 },
        { doc_id: "chapter61.txt", name: "chapter61.txt", frequency: 50 },
      ],
    };
    renderLineChart(document.getElementById("chart")!, payload);
    expect(document.querySelectorAll("circle")).toHaveLength(3);
    expect(document.querySelector("polyline")).not.toBeNull();
    const ys = Array.from(document.querySelectorAll("circle")).map((c) =>
      Number(c.getAttribute("cy")),
    );
    expect(ys[0]).toBeLessThan(ys[1]);
    expect(ys[1]).toBeLessThan(ys[2]); // decreasing series slopes down
  });
});
