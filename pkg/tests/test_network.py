import random

import pytest

from citesuggest.authorship import DEFAULT_CONFIG, disambiguate, rank_authors
from citesuggest.errors import NoYearData
from citesuggest.index import CitationIndex
from citesuggest.keywords import EMPTY_SPEC, parse_keyword_spec
from citesuggest.model import Publication, ScoreBreakdown, SuggestionEntry, SuggestionList
from citesuggest.network import (
    NetworkSettings,
    build_network,
    timeline_domain,
    author_center_year,
)
from citesuggest.scoring import candidate_set, rank, score_candidate, score_selected

from .oracle import naive_network_edges


def entry(pub, breakdown=None, tags=frozenset()):
    if breakdown is None:
        breakdown = ScoreBreakdown(outgoing=0, incoming=1, boost=0, score=1)
    return SuggestionEntry(pub, breakdown, tags)


class TestBuildNetwork:
    def test_empty_selection_defaults(self):
        payload = build_network([], SuggestionList(), EMPTY_SPEC, [])
        assert payload.pub_nodes == ()
        assert payload.keyword_nodes == ()
        assert payload.author_nodes == ()
        assert payload.citation_edges == ()
        assert payload.keyword_edges == ()
        assert payload.author_edges == ()
        assert payload.settings_echo == NetworkSettings()

    def test_walkthrough_two_selected_one_suggestion(self):
        x = Publication(doi="x", citing=frozenset({"y"}), cited_by=frozenset())
        y = Publication(doi="y", cited_by=frozenset({"x"}))
        z = Publication(doi="z", title="Tree studies", cited_by=frozenset({"x"}))
        spec = parse_keyword_spec("TREE")
        selected = [entry(x), entry(y)]
        suggestions = rank([entry(z)])
        payload = build_network(selected, suggestions, spec, [])
        assert payload.citation_edges == (("x", "y"), ("x", "z"))
        assert payload.keyword_edges == ((0, "z"),)
        assert [n.doi for n in payload.pub_nodes] == ["x", "y", "z"]
        assert [n.selected for n in payload.pub_nodes] == [True, True, False]

    def test_edges_match_brute_force_on_synthetic_fixture(self):
        rng = random.Random(11)
        dois = [f"10.7/{k}" for k in range(20)]
        links = {doi: (set(), set()) for doi in dois}
        for _ in range(60):
            a, b = rng.sample(dois, 2)
            links[a][0].add(b)
            links[b][1].add(a)
        pubs = {
            doi: Publication(
                doi=doi, citing=frozenset(c), cited_by=frozenset(cb), year=2000
            )
            for doi, (c, cb) in links.items()
        }
        index = CitationIndex.from_publications(pubs.values())
        selected_dois = set(dois[:4])
        candidates = candidate_set(selected_dois, set(), index)
        selected_entries = [
            entry(pubs[d], score_selected(d, selected_dois, index))
            for d in sorted(selected_dois)
        ]
        suggestion_entries = [
            entry(pubs[d], score_candidate(d, selected_dois, index))
            for d in sorted(candidates)
        ]
        suggestions = rank(suggestion_entries)
        settings = NetworkSettings(n_suggested=len(suggestion_entries))
        payload = build_network(selected_entries, suggestions, EMPTY_SPEC, [], settings)
        emitted = {n.doi for n in payload.pub_nodes}
        expected = naive_network_edges(links, emitted, selected_dois)
        assert set(payload.citation_edges) == expected

    def test_suggestion_truncation_and_subset_property(self):
        base = Publication(doi="s", citing=frozenset(f"c{k}" for k in range(10)))
        selected = [entry(base)]
        suggestion_entries = [
            entry(
                Publication(doi=f"c{k}", cited_by=frozenset({"s"})),
                ScoreBreakdown(outgoing=0, incoming=1, boost=0, score=10 - k),
            )
            for k in range(10)
        ]
        suggestions = rank(suggestion_entries)
        small = build_network(
            selected, suggestions, EMPTY_SPEC, [], NetworkSettings(n_suggested=3)
        )
        large = build_network(
            selected, suggestions, EMPTY_SPEC, [], NetworkSettings(n_suggested=8)
        )
        small_nodes = {n.doi for n in small.pub_nodes}
        large_nodes = {n.doi for n in large.pub_nodes}
        assert len(small_nodes) == 4  # 1 selected + 3 suggested
        assert small_nodes <= large_nodes

    def test_referential_integrity(self):
        x = Publication(doi="x", citing=frozenset({"y", "offstage"}))
        y = Publication(doi="y", title="Tree atlas", cited_by=frozenset({"x"}))
        spec = parse_keyword_spec("TREE")
        pubs = [Publication(doi="p1", authors=("Ann Ax",), year=2015)]
        records = disambiguate(pubs)
        ranked = rank_authors(
            records,
            {"p1": ScoreBreakdown(0, 1, 0, 1)},
            DEFAULT_CONFIG,
            current_year=2025,
        )
        payload = build_network(
            [entry(x), entry(Publication(doi="p1", authors=("Ann Ax",), year=2015))],
            rank([entry(y)]),
            spec,
            ranked,
        )
        node_dois = {n.doi for n in payload.pub_nodes}
        group_indices = {n.group_index for n in payload.keyword_nodes}
        author_keys = {n.author_key for n in payload.author_nodes}
        for a, b in payload.citation_edges:
            assert a in node_dois and b in node_dois
        for g, doi in payload.keyword_edges:
            assert g in group_indices and doi in node_dois
        for key, doi in payload.author_edges:
            assert key in author_keys and doi in node_dois

    def test_author_edges_only_to_selected(self):
        pub_sel = Publication(doi="sel", authors=("Ann Ax",), year=2015)
        records = disambiguate([pub_sel])
        ranked = rank_authors(
            records,
            {"sel": ScoreBreakdown(0, 1, 0, 1)},
            DEFAULT_CONFIG,
            current_year=2025,
        )
        sugg = Publication(doi="sugg", authors=("Ann Ax",), cited_by=frozenset({"sel"}))
        payload = build_network([entry(pub_sel)], rank([entry(sugg)]), EMPTY_SPEC, ranked)
        assert payload.author_edges == ((ranked[0].key, "sel"),)

    def test_toggles_suppress_nodes(self):
        pub_sel = Publication(doi="sel", title="Tree", authors=("Ann Ax",), year=2015)
        records = disambiguate([pub_sel])
        ranked = rank_authors(
            records,
            {"sel": ScoreBreakdown(0, 1, 0, 1)},
            DEFAULT_CONFIG,
            current_year=2025,
        )
        payload = build_network(
            [entry(pub_sel)],
            SuggestionList(),
            parse_keyword_spec("TREE"),
            ranked,
            NetworkSettings(show_keywords=False, show_authors=False),
        )
        assert payload.keyword_nodes == ()
        assert payload.keyword_edges == ()
        assert payload.author_nodes == ()
        assert payload.author_edges == ()

    def test_deterministic_payload(self):
        x = Publication(doi="x", citing=frozenset({"y"}))
        y = Publication(doi="y", cited_by=frozenset({"x"}))
        first = build_network([entry(x)], rank([entry(y)]), EMPTY_SPEC, [])
        second = build_network([entry(x)], rank([entry(y)]), EMPTY_SPEC, [])
        assert first == second
        assert first.as_dict() == second.as_dict()

    def test_unread_flag_from_read_set(self):
        x = Publication(doi="x")
        payload = build_network(
            [entry(x)], SuggestionList(), EMPTY_SPEC, [], read_dois=frozenset({"x"})
        )
        assert payload.pub_nodes[0].unread is False
        payload2 = build_network([entry(x)], SuggestionList(), EMPTY_SPEC, [])
        assert payload2.pub_nodes[0].unread is True

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            NetworkSettings(n_suggested=-1)


class TestTimelineDomain:
    def payload_with_years(self, years):
        nodes = [entry(Publication(doi=f"d{k}", year=year)) for k, year in enumerate(years)]
        return build_network(nodes, SuggestionList(), EMPTY_SPEC, [])

    def test_min_max(self):
        assert timeline_domain(self.payload_with_years([2015, 2020, 2009])) == (2009, 2020)

    def test_single_year(self):
        assert timeline_domain(self.payload_with_years([2018])) == (2018, 2018)

    def test_unknown_years_skipped(self):
        assert timeline_domain(self.payload_with_years([None, 2012, None])) == (2012, 2012)

    def test_no_year_data(self):
        with pytest.raises(NoYearData):
            timeline_domain(self.payload_with_years([None, None]))

    def test_matches_linear_scan_on_fixture(self):
        rng = random.Random(3)
        years = [rng.randint(1990, 2025) for _ in range(30)]
        payload = self.payload_with_years(years)
        assert timeline_domain(payload) == (min(years), max(years))


class TestAuthorCenterYear:
    def record_with_span(self, years):
        pubs = [
            Publication(doi=f"p{k}", authors=("Ann Ax",), year=year)
            for k, year in enumerate(years)
        ]
        return disambiguate(pubs)[0]

    @pytest.mark.parametrize(
        "years,expected",
        [
            ([2010, 2020], 2015),
            ([2018], 2018),
            ([2013, 2014], 2014),  # half-up
            ([2013, 2014, 2013], 2014),
            ([2000, 2001, 2002, 2003], 2002),
        ],
    )
    def test_table(self, years, expected):
        assert author_center_year(self.record_with_span(years)) == expected

    def test_no_year_data(self):
        with pytest.raises(NoYearData):
            author_center_year(self.record_with_span([None]))
