/** Inline span highlighting over the document text.
 *
 * Spans arrive sorted and non-overlapping; anything out of range or
 * overlapping is dropped defensively and reported so a broken payload
 * cannot scramble the text.
 */

import { classColor, highlightBackground } from "./palette.js";
import type { AnnotationsPayload, SpanJson } from "./types.js";

export interface RenderResult {
  rendered: number;
  dropped: SpanJson[];
}

export function renderAnnotatedText(
  container: HTMLElement,
  payload: AnnotationsPayload,
): RenderResult {
  container.textContent = "";
  const text = payload.text;
  const dropped: SpanJson[] = [];
  let cursor = 0;
  let rendered = 0;
  for (const span of payload.spans) {
    if (span.start < cursor || span.end > text.length || span.start >= span.end) {
      dropped.push(span);
      continue;
    }
    if (span.start > cursor) {
      container.append(document.createTextNode(text.slice(cursor, span.start)));
    }
    const mark = document.createElement("mark");
    const colorIndex = payload.classes[span.class_label]?.color_index ?? 0;
    mark.dataset.instanceId = span.instance_id;
    mark.dataset.classLabel = span.class_label;
    mark.style.backgroundColor = highlightBackground(colorIndex);
    mark.style.outlineColor = classColor(colorIndex);
    mark.textContent = text.slice(span.start, span.end);

    const tag = document.createElement("sup");
    tag.className = "class-tag";
    tag.textContent = span.class_label;
    tag.style.color = classColor(colorIndex);
    mark.append(tag);

    container.append(mark);
    cursor = span.end;
    rendered += 1;
  }
  container.append(document.createTextNode(text.slice(cursor)));
  return { rendered, dropped };
}
