/** Application shell: three panels driven by the HTTP service.
 *
 * All ranking, scoring, and staging decisions live on the server; this
 * class only renders payloads and forwards user intent. Stale poll
 * responses are recognized by their revision number and dropped.
 */

import { ApiClient, ApiError, UpdateInFlightError } from "./api.js";
import {
  renderSelectedPanel,
  renderSuggestionList,
  type SelectedHandlers,
  type SuggestionHandlers,
} from "./panels.js";
import { renderNetwork, type LayoutMode, type NetworkView } from "./network.js";
import type { PinnedPositions } from "./layout.js";
import type {
  NetworkResponse,
  SearchResponse,
  SessionPayload,
  SuggestionFilters,
  SuggestionsPage,
} from "./types.js";

const TAGS = ["highly_cited", "literature_survey", "new", "unnoted"];

export interface AppOptions {
  networkSize?: { width: number; height: number };
  /** simulation iterations run synchronously per render (tests keep it small) */
  settleIterations?: number;
}

export class App {
  readonly client: ApiClient;
  private readonly root: HTMLElement;
  private readonly doc: Document;
  private readonly settleIterations: number;
  private readonly networkSize: { width: number; height: number };

  session: SessionPayload | null = null;
  suggestions: SuggestionsPage | null = null;
  network: NetworkResponse | null = null;
  networkView: NetworkView | null = null;

  layoutMode: LayoutMode = "cluster";
  showKeywords = true;
  showAuthors = true;
  nSuggested = 20;
  nAuthors = 5;
  filters: SuggestionFilters = {};
  pinnedKeywords: PinnedPositions = {};
  lastSearch: SearchResponse | null = null;

  constructor(client: ApiClient, root: HTMLElement, options: AppOptions = {}) {
    this.client = client;
    this.root = root;
    this.doc = root.ownerDocument;
    this.settleIterations = options.settleIterations ?? 60;
    this.networkSize = options.networkSize ?? { width: 800, height: 480 };
  }

  /** Create a session (or restore a saved document) and render. */
  async init(document?: unknown): Promise<void> {
    this.session = await this.client.createSession(document);
    await this.refreshDerived();
    this.renderAll();
  }

  private async refreshDerived(): Promise<void> {
    if (!this.session) return;
    const id = this.session.id;
    const [suggestions, network] = await Promise.all([
      this.client.suggestions(id, this.filters),
      this.client.network(id, {
        n_suggested: this.nSuggested,
        n_authors: this.nAuthors,
        keywords: this.showKeywords,
        authors: this.showAuthors,
      }),
    ]);
    if (!this.client.isStale(suggestions.revision)) this.suggestions = suggestions;
    if (!this.client.isStale(network.revision)) this.network = network;
  }

  private adopt(session: SessionPayload): void {
    if (!this.client.isStale(session.revision)) this.session = session;
  }

  // -- user intent ----------------------------------------------------------

  /** Add publications to the selection and refresh everything derived. */
  async selectDois(dois: string[]): Promise<void> {
    if (!this.session || dois.length === 0) return;
    try {
      this.adopt(await this.client.select(this.session.id, dois));
      this.lastSearch = null;
      await this.refreshDerived();
      this.renderAll();
    } catch (error) {
      this.toastError(error);
    }
  }

  /** DOI detection first; free-text queries render a result list. */
  async runSearch(q: string): Promise<void> {
    if (!this.session) return;
    try {
      const response = await this.client.search(this.session.id, q);
      if (response.kind === "doi") {
        const resolved = response.results
          .map((hit) => hit.publication?.doi)
          .filter((doi): doi is string => doi !== undefined);
        const failed = response.results.filter((hit) => hit.error);
        if (failed.length > 0) {
          this.toastError(
            new Error(
              failed.map((hit) => `${hit.doi}: ${hit.error}`).join("; "),
            ),
          );
        }
        await this.selectDois(resolved);
      } else {
        this.lastSearch = response;
        this.renderAll();
      }
    } catch (error) {
      this.toastError(error);
    }
  }

  async stageInclude(doi: string): Promise<void> {
    if (!this.session) return;
    try {
      this.adopt(await this.client.stage(this.session.id, { include: [doi] }));
      this.renderAll();
    } catch (error) {
      this.toastError(error);
    }
  }

  async stageExclude(doi: string): Promise<void> {
    if (!this.session) return;
    try {
      this.adopt(await this.client.stage(this.session.id, { exclude: [doi] }));
      this.renderAll();
    } catch (error) {
      this.toastError(error);
    }
  }

  /** Apply staged marks, then re-fetch everything derived. */
  async applyUpdate(): Promise<void> {
    if (!this.session) return;
    try {
      this.adopt(await this.client.update(this.session.id));
      await this.refreshDerived();
      this.renderAll();
    } catch (error) {
      if (error instanceof UpdateInFlightError) return; // one at a time
      this.toastError(error);
      await this.pollOnce(); // reconcile with server state after a failure
    }
  }

  async setKeywords(text: string, boostEnabled: boolean): Promise<void> {
    if (!this.session) return;
    try {
      this.adopt(await this.client.putKeywords(this.session.id, text, boostEnabled));
      await this.refreshDerived();
      this.renderAll();
    } catch (error) {
      this.toastError(error);
    }
  }

  async applyFilters(filters: SuggestionFilters): Promise<void> {
    this.filters = filters;
    if (!this.session) return;
    try {
      const page = await this.client.suggestions(this.session.id, filters);
      if (!this.client.isStale(page.revision)) this.suggestions = page;
      this.renderAll();
    } catch (error) {
      this.toastError(error);
    }
  }

  async loadMore(): Promise<void> {
    if (!this.session) return;
    try {
      const page = await this.client.more(this.session.id);
      if (!this.client.isStale(page.revision)) this.suggestions = page;
      this.renderAll();
    } catch (error) {
      this.toastError(error);
    }
  }

  async markRead(doi: string): Promise<void> {
    if (!this.session) return;
    try {
      this.adopt(await this.client.markRead(this.session.id, doi));
    } catch {
      // read marks are cosmetic; ignore failures
    }
  }

  async setLayoutMode(mode: LayoutMode): Promise<void> {
    this.layoutMode = mode;
    this.renderNetworkPanel();
  }

  /** One poll step: re-read the session; refresh views if it moved. */
  async pollOnce(): Promise<void> {
    if (!this.session) return;
    try {
      const fresh = await this.client.getSession(this.session.id);
      if (fresh.revision > this.session.revision) {
        this.session = fresh;
        await this.refreshDerived();
        this.renderAll();
      }
    } catch (error) {
      this.toastError(error);
    }
  }

  startPolling(intervalMs = 5000): () => void {
    const timer = setInterval(() => void this.pollOnce(), intervalMs);
    return () => clearInterval(timer);
  }

  // -- rendering ------------------------------------------------------------

  renderAll(): void {
    this.root.textContent = "";
    this.root.appendChild(this.renderHeader());
    if (this.lastSearch) this.root.appendChild(this.renderSearchResults());
    const main = this.doc.createElement("main");
    main.className = "panels";
    main.appendChild(this.renderSelectedSection());
    main.appendChild(this.renderSuggestionSection());
    this.root.appendChild(main);
    const networkSection = this.doc.createElement("section");
    networkSection.id = "network-panel";
    this.root.appendChild(networkSection);
    this.renderNetworkPanel();
    const toast = this.doc.createElement("aside");
    toast.id = "toast";
    toast.hidden = true;
    this.root.appendChild(toast);
  }

  private renderHeader(): HTMLElement {
    const header = this.doc.createElement("header");
    const title = this.doc.createElement("h1");
    title.textContent = "citesuggest";
    header.appendChild(title);

    const form = this.doc.createElement("form");
    form.className = "keyword-editor";
    const input = this.doc.createElement("input");
    input.type = "text";
    input.name = "keywords";
    input.placeholder = "boost keywords: alternative|alternative, next group";
    input.value = this.session?.keywords ?? "";
    const boost = this.doc.createElement("input");
    boost.type = "checkbox";
    boost.name = "boost";
    boost.checked = this.session?.boost_enabled ?? true;
    const boostLabel = this.doc.createElement("label");
    boostLabel.appendChild(boost);
    boostLabel.appendChild(this.doc.createTextNode(" boost"));
    const apply = this.doc.createElement("button");
    apply.type = "submit";
    apply.textContent = "apply keywords";
    form.appendChild(input);
    form.appendChild(boostLabel);
    form.appendChild(apply);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.setKeywords(input.value, boost.checked);
    });
    header.appendChild(form);

    const search = this.doc.createElement("form");
    search.className = "search-box";
    const searchInput = this.doc.createElement("input");
    searchInput.type = "search";
    searchInput.name = "q";
    searchInput.placeholder = "add by DOI or search titles";
    const searchButton = this.doc.createElement("button");
    searchButton.type = "submit";
    searchButton.textContent = "search";
    search.appendChild(searchInput);
    search.appendChild(searchButton);
    search.addEventListener("submit", (event) => {
      event.preventDefault();
      if (searchInput.value.trim()) void this.runSearch(searchInput.value);
    });
    header.appendChild(search);

    if (this.session) {
      const exports = this.doc.createElement("nav");
      exports.className = "exports";
      const bibtex = this.doc.createElement("a");
      bibtex.href = this.client.exportBibtexUrl(this.session.id);
      bibtex.textContent = "BibTeX";
      const saved = this.doc.createElement("a");
      saved.href = this.client.exportSessionUrl(this.session.id);
      saved.textContent = "save session";
      exports.appendChild(bibtex);
      exports.appendChild(saved);
      header.appendChild(exports);
    }
    return header;
  }

  private renderSearchResults(): HTMLElement {
    const section = this.doc.createElement("section");
    section.id = "search-results";
    const heading = this.doc.createElement("h2");
    heading.textContent = "Search results";
    section.appendChild(heading);
    const list = this.doc.createElement("ul");
    for (const hit of this.lastSearch?.results ?? []) {
      if (!hit.publication) continue;
      const pub = hit.publication;
      const item = this.doc.createElement("li");
      const add = this.doc.createElement("button");
      add.textContent = "+";
      add.addEventListener("click", () => void this.selectDois([pub.doi]));
      item.appendChild(add);
      item.appendChild(
        this.doc.createTextNode(
          ` ${pub.title}${pub.year !== null ? ` (${pub.year})` : ""}`,
        ),
      );
      list.appendChild(item);
    }
    section.appendChild(list);
    return section;
  }

  private suggestionHandlers(): SuggestionHandlers {
    return {
      stageInclude: (doi) => void this.stageInclude(doi),
      stageExclude: (doi) => void this.stageExclude(doi),
      markRead: (doi) => void this.markRead(doi),
    };
  }

  private selectedHandlers(): SelectedHandlers {
    return {
      stageExclude: (doi) => void this.stageExclude(doi),
      showBibtex: () => {
        if (this.session) {
          this.doc.defaultView?.open(
            this.client.exportBibtexUrl(this.session.id),
            "_blank",
          );
        }
      },
    };
  }

  private renderSelectedSection(): HTMLElement {
    const section = this.doc.createElement("section");
    section.id = "selected-panel";
    const heading = this.doc.createElement("h2");
    const count = this.session?.selected.length ?? 0;
    heading.textContent = `Selected (${count})`;
    section.appendChild(heading);
    if (this.session) {
      section.appendChild(
        renderSelectedPanel(this.session, this.selectedHandlers(), this.doc),
      );
    } else {
      const empty = this.doc.createElement("p");
      empty.className = "onboarding";
      empty.textContent = "Loading session…";
      section.appendChild(empty);
    }
    return section;
  }

  private renderFilterBar(): HTMLElement {
    const bar = this.doc.createElement("form");
    bar.className = "filter-bar";
    const tag = this.doc.createElement("select");
    tag.name = "tag";
    const anyOption = this.doc.createElement("option");
    anyOption.value = "";
    anyOption.textContent = "any tag";
    tag.appendChild(anyOption);
    for (const value of TAGS) {
      const option = this.doc.createElement("option");
      option.value = value;
      option.textContent = value.replace("_", " ");
      if (this.filters.tag === value) option.selected = true;
      tag.appendChild(option);
    }
    const titleInput = this.doc.createElement("input");
    titleInput.type = "text";
    titleInput.name = "title";
    titleInput.placeholder = "title contains";
    titleInput.value = this.filters.title ?? "";
    const yearMin = this.doc.createElement("input");
    yearMin.type = "number";
    yearMin.name = "year_min";
    yearMin.placeholder = "from";
    yearMin.value = this.filters.year_min?.toString() ?? "";
    const yearMax = this.doc.createElement("input");
    yearMax.type = "number";
    yearMax.name = "year_max";
    yearMax.placeholder = "to";
    yearMax.value = this.filters.year_max?.toString() ?? "";
    const apply = this.doc.createElement("button");
    apply.type = "submit";
    apply.textContent = "filter";
    bar.appendChild(tag);
    bar.appendChild(titleInput);
    bar.appendChild(yearMin);
    bar.appendChild(yearMax);
    bar.appendChild(apply);
    bar.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.applyFilters({
        tag: tag.value || undefined,
        title: titleInput.value || undefined,
        year_min: yearMin.value ? Number(yearMin.value) : undefined,
        year_max: yearMax.value ? Number(yearMax.value) : undefined,
      });
    });
    return bar;
  }

  private renderSuggestionSection(): HTMLElement {
    const section = this.doc.createElement("section");
    section.id = "suggestion-panel";
    const heading = this.doc.createElement("h2");
    heading.textContent = "Suggested";
    section.appendChild(heading);
    section.appendChild(this.renderFilterBar());

    const staged = this.session?.staged ?? { include: [], exclude: [] };
    const stagedCount = staged.include.length + staged.exclude.length;
    const updateButton = this.doc.createElement("button");
    updateButton.id = "update-button";
    updateButton.textContent =
      stagedCount > 0 ? `update (${stagedCount} staged)` : "update";
    updateButton.disabled = stagedCount === 0;
    updateButton.addEventListener("click", () => void this.applyUpdate());
    section.appendChild(updateButton);

    if (this.suggestions) {
      section.appendChild(
        renderSuggestionList(
          this.suggestions,
          staged,
          this.suggestionHandlers(),
          this.doc,
        ),
      );
      const more = this.doc.createElement("button");
      more.id = "more-button";
      more.textContent = "load more";
      more.addEventListener("click", () => void this.loadMore());
      section.appendChild(more);
    } else {
      const empty = this.doc.createElement("p");
      empty.className = "onboarding";
      empty.textContent =
        "Suggestions appear once publications are selected.";
      section.appendChild(empty);
    }
    return section;
  }

  renderNetworkPanel(): void {
    const section = this.doc.getElementById("network-panel");
    if (!section) return;
    section.textContent = "";
    const heading = this.doc.createElement("h2");
    heading.textContent = "Citation network";
    section.appendChild(heading);

    const controls = this.doc.createElement("div");
    controls.className = "network-controls";
    for (const mode of ["cluster", "timeline"] as LayoutMode[]) {
      const button = this.doc.createElement("button");
      button.dataset.mode = mode;
      button.textContent = mode;
      button.className = this.layoutMode === mode ? "active" : "";
      button.addEventListener("click", () => void this.setLayoutMode(mode));
      controls.appendChild(button);
    }
    section.appendChild(controls);

    if (!this.network || this.network.pub_nodes.length === 0) {
      const empty = this.doc.createElement("p");
      empty.className = "onboarding";
      empty.textContent = "The citation network appears once publications are selected.";
      section.appendChild(empty);
      this.networkView = null;
      return;
    }

    this.networkView = renderNetwork(
      this.network,
      this.layoutMode,
      this.networkSize,
      this.pinnedKeywords,
      {
        onPublicationClick: (doi) => this.highlightListEntry(doi),
        onKeywordPinned: (groupIndex, x, y) => {
          this.pinnedKeywords[groupIndex] = { x, y };
        },
      },
      this.doc,
    );
    this.networkView.tick(this.settleIterations);
    section.appendChild(this.networkView.svg);
  }

  /** Cross-view highlight: network click selects the list entry. */
  highlightListEntry(doi: string): void {
    for (const row of Array.from(
      this.root.querySelectorAll<HTMLElement>("[data-doi]"),
    )) {
      row.classList.toggle("highlighted", row.dataset.doi === doi);
      if (row.dataset.doi === doi && typeof row.scrollIntoView === "function") {
        row.scrollIntoView({ block: "nearest" });
      }
    }
  }

  toastError(error: unknown): void {
    const toast = this.doc.getElementById("toast");
    if (!toast) return;
    toast.hidden = false;
    toast.textContent =
      error instanceof ApiError
        ? `${error.type}: ${error.detail}`
        : String(error);
    toast.className = "toast-error";
  }
}
