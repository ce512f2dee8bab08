from hypothesis import assume, given
from hypothesis import strategies as st

from citesuggest.keywords import (
    EMPTY_SPEC,
    KeywordSpec,
    count_keyword_matches,
    match_spans,
    parse_keyword_spec,
    render_keyword_spec,
)

from .oracle import naive_match_spans


class TestParse:
    def test_groups_and_alternatives(self):
        spec = parse_keyword_spec("CIT, VISUAL, MAP, PUBLI|LITERAT")
        assert spec.groups == (("CIT",), ("VISUAL",), ("MAP",), ("PUBLI", "LITERAT"))

    def test_empty_input(self):
        assert parse_keyword_spec("") == EMPTY_SPEC

    def test_trimming_uppercasing_and_empty_drop(self):
        assert parse_keyword_spec(" a |b ,, c ").groups == (("A", "B"), ("C",))

    def test_render_canonical(self):
        spec = parse_keyword_spec("CIT, VISUAL, MAP, PUBLI|LITERAT")
        assert render_keyword_spec(spec) == "CIT, VISUAL, MAP, PUBLI|LITERAT"

    @given(
        st.lists(
            st.lists(
                st.text(
                    alphabet=st.characters(
                        whitelist_categories=("Lu", "Nd"), max_codepoint=0x7F
                    ),
                    min_size=1,
                    max_size=8,
                ),
                min_size=1,
                max_size=3,
            ),
            max_size=5,
        )
    )
    def test_parse_render_round_trip(self, raw_groups):
        spec = KeywordSpec(tuple(tuple(group) for group in raw_groups))
        assert parse_keyword_spec(render_keyword_spec(spec)) == spec


class TestCountMatches:
    def test_paper_style_example(self):
        # Hand enumeration: CIT in "Citation", VISUAL in "Visual", MAP in
        # "Maps"; neither PUBLI nor LITERAT occurs.
        spec = parse_keyword_spec("CIT,VISUAL,MAP,PUBLI|LITERAT")
        b, matched = count_keyword_matches("Visual Citation Maps", spec)
        assert b == 3
        assert matched == [0, 1, 2]

    def test_empty_spec(self):
        assert count_keyword_matches("any title", EMPTY_SPEC) == (0, [])

    def test_group_counts_once_despite_multiplicity(self):
        b, matched = count_keyword_matches(
            "visualization of visual data", parse_keyword_spec("VISUAL")
        )
        assert (b, matched) == (1, [0])

    def test_group_counts_once_when_both_alternatives_match(self):
        b, _ = count_keyword_matches("tree and map", parse_keyword_spec("TREE|MAP"))
        assert b == 1

    def test_case_invariance(self):
        spec = parse_keyword_spec("TREE,MAP")
        title = "Treemap Layouts"
        assert count_keyword_matches(title, spec) == count_keyword_matches(
            title.upper(), spec
        )

    @given(st.text(max_size=60))
    def test_bound_and_nonmatching_group_append(self, title):
        assume(" " not in title)
        spec = parse_keyword_spec("TREE, MAP|GRID")
        b, _ = count_keyword_matches(title, spec)
        assert 0 <= b <= len(spec.groups)
        extended = KeywordSpec(spec.groups + ((" NOPE ",),))
        b_after, _ = count_keyword_matches(title, extended)
        assert b_after == b


class TestMatchSpans:
    def test_two_occurrences(self):
        spans = match_spans("Treemap Trees", parse_keyword_spec("TREE"))
        assert [(s.start, s.end, s.group_index) for s in spans] == [
            (0, 4, 0),
            (8, 12, 0),
        ]

    def test_empty_spec(self):
        assert match_spans("anything", EMPTY_SPEC) == []

    def test_greedy_non_overlapping(self):
        spans = match_spans("ABAB", parse_keyword_spec("ABA"))
        assert [(s.start, s.end) for s in spans] == [(0, 3)]

    def test_agrees_with_exhaustive_oracle(self):
        spec = parse_keyword_spec("TREE|MAP, VIS, AT")
        alternatives = [
            (alt, g) for g, group in enumerate(spec.groups) for alt in group
        ]
        texts = [
            "Treemap visualization at scale",
            "MAP AT TREE VIS",
            "attributed treemaps",
            "no match here",
            "ATATAT",
        ]
        for text in texts:
            expected = naive_match_spans(text, alternatives)
            actual = [(s.start, s.end, s.group_index) for s in match_spans(text, spec)]
            assert actual == expected, text

    def test_spans_align_despite_fold_expansion(self):
        # "ß" casefolds to "ss", shifting folded offsets; spans must still
        # index the original string.
        spans = match_spans("Straße MAP", parse_keyword_spec("MAP"))
        assert [(s.start, s.end) for s in spans] == [(7, 10)]
