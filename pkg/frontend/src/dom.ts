// DOM layer: turns pure models into elements.  Kept separate from the
// controllers so everything above it runs in plain node tests.

import { HighlightModel, buildHighlightModel } from "./highlight.js";
import type { Diagnostic, Mention } from "./types.js";

export function renderAnnotations(
  container: HTMLElement,
  text: string,
  mentions: Mention[],
): HighlightModel {
  const model = buildHighlightModel(text, mentions);
  for (const mention of model.skipped) {
    console.warn("mention offsets out of range, skipped:", mention);
  }
  container.textContent = "";

  const view = document.createElement("div");
  view.className = "annotated-text";
  for (const segment of model.segments) {
    const covering = segment.mentions.map((i) => model.kept[i]!);
    if (covering.length === 0) {
      view.append(document.createTextNode(segment.text));
    } else {
      const span = document.createElement("span");
      span.className = "hl " + covering.map((m) => `hl-${m.certainty}`).join(" ");
      span.title = covering
        .map((m) => `${m.concept} (${m.certainty}${m.normalized_date ? ", " + m.normalized_date : ""})`)
        .join("; ");
      span.textContent = segment.text;
      view.append(span);
    }
    for (const index of segment.ending) {
      const mention = model.kept[index]!;
      const chip = document.createElement("sup");
      chip.className = `chip chip-${mention.certainty}`;
      chip.textContent = mention.concept;
      view.append(chip);
    }
  }
  container.append(view);

  if (model.skipped.length > 0) {
    const badge = document.createElement("div");
    badge.className = "warning-badge";
    badge.textContent = `${model.skipped.length} mention(s) skipped: offsets out of range`;
    container.append(badge);
  }

  const legend = document.createElement("ul");
  legend.className = "legend";
  for (const [concept, count] of [...model.legend.entries()].sort()) {
    const item = document.createElement("li");
    item.textContent = `${concept} x${count}`;
    legend.append(item);
  }
  container.append(legend);
  return model;
}

export function renderDiagnostics(container: HTMLElement, diagnostics: Diagnostic[]): void {
  container.textContent = "";
  if (diagnostics.length === 0) return;
  const list = document.createElement("ul");
  list.className = "diagnostics";
  for (const diagnostic of diagnostics) {
    const item = document.createElement("li");
    const where = diagnostic.file
      ? `${diagnostic.file}${diagnostic.line != null ? ":" + diagnostic.line : ""} — `
      : "";
    item.textContent = where + diagnostic.message;
    item.dataset["file"] = diagnostic.file;
    if (diagnostic.line != null) {
      item.dataset["line"] = String(diagnostic.line);
    }
    list.append(item);
  }
  container.append(list);
}

export function renderBanner(container: HTMLElement, message: string | null): void {
  container.textContent = message ?? "";
  container.classList.toggle("visible", message !== null);
}
