// Single-page app assembly: three tabs sharing one editor session.

import { ServiceClient } from "./api.js";
import { DictBuilderController } from "./dictbuilder.js";
import { renderAnnotations, renderBanner, renderDiagnostics } from "./dom.js";
import { EditorController } from "./editor.js";

const api = new ServiceClient("");
const editor = new EditorController(api);
const dictBuilder = new DictBuilderController(api, editor);

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

// -- tabs ---------------------------------------------------------------------

function showTab(name: string): void {
  for (const section of document.querySelectorAll<HTMLElement>(".tab-panel")) {
    section.hidden = section.dataset["tab"] !== name;
  }
  for (const button of document.querySelectorAll<HTMLElement>(".tab-button")) {
    button.classList.toggle("active", button.dataset["tab"] === name);
  }
}

for (const button of document.querySelectorAll<HTMLElement>(".tab-button")) {
  button.addEventListener("click", () => showTab(button.dataset["tab"]!));
}

// -- annotate demo tab ---------------------------------------------------------

const demoText = el<HTMLTextAreaElement>("demo-text");
const demoDate = el<HTMLInputElement>("demo-date");
const demoView = el<HTMLElement>("demo-view");
const demoBanner = el<HTMLElement>("demo-banner");

el<HTMLButtonElement>("demo-run").addEventListener("click", () => {
  void editor.annotateOnly(demoText.value, demoDate.value || null);
});

// -- rule editor tab -----------------------------------------------------------

const editorPatterns = el<HTMLTextAreaElement>("editor-patterns");
const editorConcept = el<HTMLInputElement>("editor-concept");
const editorContext = el<HTMLTextAreaElement>("editor-context");
const editorName = el<HTMLInputElement>("editor-name");
const editorDiagnostics = el<HTMLElement>("editor-diagnostics");
const editorStatus = el<HTMLElement>("editor-status");

function pullDraftFromForm(): void {
  editor.mutateDraft((draft) => {
    draft.name = editorName.value.trim() || "my_ruleset";
    const concept = editorConcept.value.trim();
    if (concept) {
      const lines = editorPatterns.value
        .split("\n")
        .map((line) => line.trim())
        .filter((line) => line !== "");
      const upper = concept.toUpperCase().replace(/[^A-Z0-9_]+/g, "_");
      if (!draft.concepts.includes(upper)) {
        draft.concepts.push(upper);
        draft.concepts.sort();
      }
      draft.patterns[upper] = lines;
    }
    draft.contextLines = editorContext.value
      .split("\n")
      .map((line) => line.replace(/\r$/, ""))
      .filter((line) => line.trim() !== "" && !line.trimStart().startsWith("#"));
  });
}

el<HTMLButtonElement>("editor-upload-test").addEventListener("click", () => {
  pullDraftFromForm();
  void editor.uploadAndTest(demoText.value, demoDate.value || null);
});

// -- dictionary builder tab ----------------------------------------------------

const treeView = el<HTMLElement>("tree-view");
const dictConcept = el<HTMLInputElement>("dict-concept");
const dictDescendants = el<HTMLInputElement>("dict-descendants");
const dictBanner = el<HTMLElement>("dict-banner");
const dictResult = el<HTMLElement>("dict-result");
const extractButton = el<HTMLButtonElement>("dict-extract");

el<HTMLButtonElement>("dict-load").addEventListener("click", () => {
  void dictBuilder.loadRoots();
});

extractButton.addEventListener("click", () => {
  void dictBuilder.extractSelection(
    (dictConcept.value.trim() || "NEW_CONCEPT").toUpperCase(),
    dictDescendants.checked,
  );
});

el<HTMLButtonElement>("dict-upload").addEventListener("click", () => {
  void editor.uploadAndTest(demoText.value, demoDate.value || null);
});

dictBuilder.onChange(() => {
  renderBanner(dictBanner, dictBuilder.banner);
  extractButton.disabled = dictBuilder.selectedIds().length === 0;
  treeView.textContent = "";
  for (const row of dictBuilder.rows) {
    const line = document.createElement("div");
    line.className = "tree-row";
    line.style.paddingLeft = `${row.depth * 1.2}rem`;
    const expander = document.createElement("button");
    expander.textContent = row.node.has_children ? (row.expanded ? "-" : "+") : "·";
    expander.disabled = !row.node.has_children;
    expander.addEventListener("click", () => void dictBuilder.toggleExpand(row.node.id));
    const checkbox = document.createElement("input");
    checkbox.type = "checkbox";
    checkbox.checked = row.checked;
    checkbox.addEventListener("change", () => dictBuilder.toggleCheck(row.node.id));
    const label = document.createElement("span");
    label.textContent = ` ${row.node.label}`;
    label.title = row.node.definition;
    line.append(expander, checkbox, label);
    treeView.append(line);
  }
  dictResult.textContent = "";
  for (const { entry, duplicate } of dictBuilder.lastExtract) {
    const item = document.createElement("div");
    item.textContent = `${entry.term} -> ${entry.concept}`
      + (entry.source_code ? ` [${entry.source_ontology}:${entry.source_code}]` : "")
      + (duplicate ? " (duplicate, not added)" : "");
    item.className = duplicate ? "dict-duplicate" : "dict-added";
    dictResult.append(item);
  }
});

// -- shared rendering ----------------------------------------------------------

editor.onChange((state) => {
  renderBanner(demoBanner, state.banner);
  renderDiagnostics(editorDiagnostics, state.diagnostics);
  editorStatus.textContent = state.busy
    ? "working..."
    : state.dirty
      ? "Current ruleset (unsaved)"
      : "Ruleset uploaded";
  if (state.lastResponse) {
    renderAnnotations(demoView, state.lastText, state.lastResponse.mentions);
  }
});

showTab("demo");
void api.health().then((info) => {
  el<HTMLElement>("health-line").textContent =
    `${info.package_name} ${info.package_version} — ${info.concepts_count} concepts`;
}).catch(() => {
  el<HTMLElement>("health-line").textContent = "service unreachable";
});
