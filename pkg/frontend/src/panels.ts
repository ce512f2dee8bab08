/** DOM renderers for the selected and suggested publication panels.
 *
 * Renderers are pure functions from payload plus handlers to elements;
 * the suggestion list preserves the API order exactly and every glyph
 * repeats the breakdown values verbatim, so what the service ranked is
 * what the user sees.
 */

import { grayClamp, renderScoreGlyph } from "./glyph.js";
import type { Entry, SessionPayload, SuggestionsPage, TitleSpan } from "./types.js";

export interface SuggestionHandlers {
  stageInclude(doi: string): void;
  stageExclude(doi: string): void;
  markRead(doi: string): void;
}

export interface SelectedHandlers {
  stageExclude(doi: string): void;
  showBibtex(doi: string): void;
}

/** Title text with keyword matches wrapped in per-group <mark> spans. */
export function renderTitleWithSpans(
  title: string,
  spans: TitleSpan[],
  doc: Document = document,
): HTMLElement {
  const root = doc.createElement("span");
  root.className = "pub-title";
  const ordered = [...spans].sort((a, b) => a.start - b.start);
  let cursor = 0;
  for (const span of ordered) {
    if (span.start > cursor) {
      root.appendChild(doc.createTextNode(title.slice(cursor, span.start)));
    }
    const mark = doc.createElement("mark");
    mark.className = `kw-group kw-group-${span.group_index % 4}`;
    mark.dataset.groupIndex = String(span.group_index);
    mark.textContent = title.slice(span.start, span.end);
    root.appendChild(mark);
    cursor = span.end;
  }
  if (cursor < title.length) {
    root.appendChild(doc.createTextNode(title.slice(cursor)));
  }
  return root;
}

function renderMeta(entry: Entry, doc: Document): HTMLElement {
  const pub = entry.publication;
  const meta = doc.createElement("div");
  meta.className = "pub-meta";
  const bits = [
    pub.authors.join(", "),
    pub.year === null ? "year unknown" : String(pub.year),
    pub.venue ?? "",
  ].filter((part) => part !== "");
  meta.textContent = bits.join(" · ");
  return meta;
}

function renderTags(entry: Entry, doc: Document): HTMLElement {
  const list = doc.createElement("span");
  list.className = "pub-tags";
  for (const tag of entry.tags) {
    const chip = doc.createElement("span");
    chip.className = `tag tag-${tag}`;
    chip.textContent = tag.replace("_", " ");
    list.appendChild(chip);
  }
  return list;
}

export function renderSuggestionRow(
  entry: Entry,
  clamp: number,
  handlers: SuggestionHandlers,
  doc: Document = document,
): HTMLElement {
  const row = doc.createElement("li");
  row.className = "suggestion-row" + (entry.unread ? " unread" : "");
  row.dataset.doi = entry.publication.doi;

  row.appendChild(renderScoreGlyph(entry.breakdown, entry.glyph_level, clamp, doc));

  const body = doc.createElement("div");
  body.className = "row-body";
  body.appendChild(renderTitleWithSpans(entry.publication.title, entry.title_spans, doc));
  body.appendChild(renderMeta(entry, doc));
  body.appendChild(renderTags(entry, doc));
  row.appendChild(body);

  const actions = doc.createElement("div");
  actions.className = "row-actions";
  const include = doc.createElement("button");
  include.className = "btn-include";
  include.textContent = "+";
  include.title = "stage for selection";
  include.addEventListener("click", () => handlers.stageInclude(entry.publication.doi));
  const exclude = doc.createElement("button");
  exclude.className = "btn-exclude";
  exclude.textContent = "−";
  exclude.title = "stage for exclusion";
  exclude.addEventListener("click", () => handlers.stageExclude(entry.publication.doi));
  actions.appendChild(include);
  actions.appendChild(exclude);
  row.appendChild(actions);

  row.addEventListener("click", () => handlers.markRead(entry.publication.doi));
  return row;
}

export function renderSuggestionList(
  page: SuggestionsPage,
  staged: { include: string[]; exclude: string[] },
  handlers: SuggestionHandlers,
  doc: Document = document,
): HTMLElement {
  const panel = doc.createElement("div");
  panel.className = "suggestion-panel";
  if (page.entries.length === 0) {
    const empty = doc.createElement("p");
    empty.className = "onboarding";
    empty.textContent =
      page.total_candidates === 0
        ? "Select a few publications to see citation-linked suggestions here."
        : "No suggestions match the current filters.";
    panel.appendChild(empty);
    return panel;
  }

  const counts = doc.createElement("p");
  counts.className = "suggestion-counts";
  counts.textContent = `${page.filtered_count} of ${page.total_candidates} candidates (${page.loaded_count} loaded)`;
  panel.appendChild(counts);

  const clamp = grayClamp(page.entries.map((e) => e.breakdown.s));
  const list = doc.createElement("ol");
  list.className = "suggestion-list";
  const stagedIn = new Set(staged.include);
  const stagedOut = new Set(staged.exclude);
  for (const entry of page.entries) {
    const row = renderSuggestionRow(entry, clamp, handlers, doc);
    if (stagedIn.has(entry.publication.doi)) row.classList.add("staged-include");
    if (stagedOut.has(entry.publication.doi)) row.classList.add("staged-exclude");
    list.appendChild(row);
  }
  panel.appendChild(list);
  return panel;
}

export function renderSelectedEntry(
  entry: Entry,
  clamp: number,
  handlers: SelectedHandlers,
  doc: Document = document,
): HTMLElement {
  const item = doc.createElement("li");
  item.className = "selected-row";
  item.dataset.doi = entry.publication.doi;

  const header = doc.createElement("div");
  header.className = "selected-header";
  header.appendChild(renderScoreGlyph(entry.breakdown, entry.glyph_level, clamp, doc));
  header.appendChild(renderTitleWithSpans(entry.publication.title, entry.title_spans, doc));
  item.appendChild(header);

  const details = doc.createElement("div");
  details.className = "selected-details";
  details.hidden = true;
  details.appendChild(renderMeta(entry, doc));
  const stats = doc.createElement("p");
  stats.className = "pub-stats";
  const pub = entry.publication;
  stats.textContent = `cites ${pub.n_citing} · cited by ${pub.n_cited_by}` +
    (pub.references_known ? "" : " · reference list skipped (very large)");
  details.appendChild(stats);
  if (pub.abstract) {
    const abstract = doc.createElement("p");
    abstract.className = "pub-abstract";
    abstract.textContent = pub.abstract;
    details.appendChild(abstract);
  }
  const actions = doc.createElement("div");
  actions.className = "row-actions";
  const bibtex = doc.createElement("button");
  bibtex.className = "btn-bibtex";
  bibtex.textContent = "BibTeX";
  bibtex.addEventListener("click", () => handlers.showBibtex(pub.doi));
  const remove = doc.createElement("button");
  remove.className = "btn-exclude";
  remove.textContent = "remove";
  remove.addEventListener("click", () => handlers.stageExclude(pub.doi));
  actions.appendChild(bibtex);
  actions.appendChild(remove);
  details.appendChild(actions);
  item.appendChild(details);

  header.addEventListener("click", () => {
    details.hidden = !details.hidden;
  });
  return item;
}

export function renderSelectedPanel(
  session: SessionPayload,
  handlers: SelectedHandlers,
  doc: Document = document,
): HTMLElement {
  const panel = doc.createElement("div");
  panel.className = "selected-panel";
  if (session.selected_entries.length === 0) {
    const empty = doc.createElement("p");
    empty.className = "onboarding";
    empty.textContent =
      "No publications selected yet. Search above or paste DOIs to start.";
    panel.appendChild(empty);
    return panel;
  }
  const clamp = grayClamp(session.selected_entries.map((e) => e.breakdown.s));
  const list = doc.createElement("ul");
  list.className = "selected-list";
  for (const entry of session.selected_entries) {
    list.appendChild(renderSelectedEntry(entry, clamp, handlers, doc));
  }
  panel.appendChild(list);

  if (session.load_errors.length > 0) {
    const warn = doc.createElement("p");
    warn.className = "load-errors";
    warn.textContent = session.load_errors
      .map((e) => `${e.doi}: ${e.error}`)
      .join("; ");
    panel.appendChild(warn);
  }
  return panel;
}
