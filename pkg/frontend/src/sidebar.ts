/** Sidebar entity list: frequency labels and the two-step delete.
 *
 * Rows read "surface (N次)", or "surface|alias (N|M次)" when the instance
 * belongs to an alias of the viewed document; numbers come straight from
 * the frequency payload. Deleting takes two clicks on the same row: the
 * first arms it, any other interaction disarms it, only the second click
 * issues the API call.
 */

import type { FrequencyRowJson } from "./types.js";

export function entityRowLabel(row: FrequencyRowJson): string {
  if (row.alias) {
    return `${row.surface}|${row.alias.name} (${row.frequency}|${row.alias.frequency}次)`;
  }
  return `${row.surface} (${row.frequency}次)`;
}

export interface SidebarCallbacks {
  deleteInstance(instanceId: string): Promise<unknown> | void;
  selectInstance?(instanceId: string): void;
}

export class EntitySidebar {
  private pendingDelete: string | null = null;

  constructor(
    private container: HTMLElement,
    private callbacks: SidebarCallbacks,
  ) {}

  /** Any interaction other than the confirming click drops the armed row. */
  disarm(): void {
    this.pendingDelete = null;
    for (const button of this.container.querySelectorAll<HTMLButtonElement>("button.delete")) {
      button.textContent = "刪除";
      button.classList.remove("armed");
    }
  }

  get armedInstance(): string | null {
    return this.pendingDelete;
  }

  render(rows: FrequencyRowJson[]): void {
    this.pendingDelete = null;
    this.container.textContent = "";
    const list = document.createElement("ul");
    list.className = "entity-list";
    for (const row of rows) {
      const item = document.createElement("li");
      item.dataset.instanceId = row.instance_id;

      const label = document.createElement("span");
      label.className = "entity-label";
      label.textContent = entityRowLabel(row);
      label.addEventListener("click", () => {
        this.disarm();
        this.callbacks.selectInstance?.(row.instance_id);
      });

      const del = document.createElement("button");
      del.className = "delete";
      del.textContent = "刪除";
      del.addEventListener("click", () => {
        if (this.pendingDelete === row.instance_id) {
          this.pendingDelete = null;
          void this.callbacks.deleteInstance(row.instance_id);
        } else {
          this.disarm();
          this.pendingDelete = row.instance_id;
          del.textContent = "確認刪除";
          del.classList.add("armed");
        }
      });

      item.append(label, del);
      list.append(item);
    }
    this.container.append(list);
  }
}
