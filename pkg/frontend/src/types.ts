/** JSON payload shapes of the citesuggest HTTP service. */

export interface Breakdown {
  /** final score */
  s: number;
  /** citation links to selected publications */
  o: number;
  /** citation links from selected publications */
  i: number;
  /** matched keyword groups */
  b: number;
}

export interface Publication {
  doi: string;
  title: string;
  authors: string[];
  year: number | null;
  venue: string | null;
  abstract: string | null;
  n_citing: number;
  n_cited_by: number;
  references_known: boolean;
}

export interface TitleSpan {
  start: number;
  end: number;
  group_index: number;
}

export interface Entry {
  publication: Publication;
  breakdown: Breakdown;
  glyph_level: number;
  tags: string[];
  unread: boolean;
  title_spans: TitleSpan[];
}

export interface SuggestionsPage {
  revision: number;
  total_candidates: number;
  loaded_count: number;
  filtered_count: number;
  offset: number;
  limit: number;
  entries: Entry[];
}

export interface LoadError {
  doi: string;
  error: string;
}

export interface SessionPayload {
  id: string;
  revision: number;
  derived_revision: number;
  selected: string[];
  excluded: string[];
  keywords: string;
  boost_enabled: boolean;
  staged: { include: string[]; exclude: string[] };
  read: string[];
  selected_entries: Entry[];
  suggestions: { total_candidates: number; loaded_count: number };
  load_errors: LoadError[];
}

export interface AuthorPayload {
  key: string;
  display_name: string;
  initials: string;
  orcid: string | null;
  score: number;
  contribution_count: number;
  dois: string[];
  year_span: [number, number] | null;
  keyword_hits: number[];
  name_variants: string[];
  coauthors: string[];
}

export interface AuthorsResponse {
  revision: number;
  config: {
    weight_score: boolean;
    boost_first: boolean;
    boost_new: boolean;
  };
  authors: AuthorPayload[];
}

export interface PubNode {
  doi: string;
  selected: boolean;
  year: number | null;
  score: Breakdown;
  tags: string[];
  unread: boolean;
}

export interface KeywordNode {
  group_index: number;
  label: string;
}

export interface AuthorNode {
  author_key: string;
  initials: string;
  score: number;
  center_year: number | null;
}

export interface NetworkResponse {
  revision: number;
  pub_nodes: PubNode[];
  keyword_nodes: KeywordNode[];
  author_nodes: AuthorNode[];
  citation_edges: { from: string; to: string }[];
  keyword_edges: { doi: string; group_index: number }[];
  author_edges: { author_key: string; doi: string }[];
  settings_echo: Record<string, unknown>;
}

export interface ApiErrorBody {
  error: { type: string; detail: string };
}

export interface SearchHit {
  publication?: Publication;
  title_spans?: TitleSpan[];
  partial?: boolean;
  served_stale?: boolean;
  doi?: string;
  error?: string;
}

export interface SearchResponse {
  kind: "doi" | "query";
  results: SearchHit[];
}

export interface SuggestionFilters {
  offset?: number;
  limit?: number;
  title?: string;
  year_min?: number;
  year_max?: number;
  tag?: string;
}
