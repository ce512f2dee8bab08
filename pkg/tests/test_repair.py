import pytest
from hypothesis import given
from hypothesis import strategies as st

from citesuggest.repair import (
    fix_encoding,
    recapitalize_title,
    repair_fields,
    year_from_doi,
)


class TestFixEncoding:
    @pytest.mark.parametrize(
        "broken,expected",
        [
            ("Graphs &amp; trees", "Graphs & trees"),
            ("x &lt; y", "x < y"),
            ("MÃ¼ller", "Müller"),
            ("cafÃ©", "café"),
            ("itâ€™s", "it’s"),
            ("clean text", "clean text"),
        ],
    )
    def test_table(self, broken, expected):
        assert fix_encoding(broken) == expected

    def test_nested_entities_unwind(self):
        assert fix_encoding("&amp;amp;") == "&"

    @given(st.text(max_size=50))
    def test_idempotent(self, text):
        once = fix_encoding(text)
        assert fix_encoding(once) == once


class TestRecapitalize:
    def test_all_caps_to_title_case(self):
        assert recapitalize_title("TREEMAP STUDIES") == "Treemap Studies"

    def test_small_words_lowered_inside(self):
        assert (
            recapitalize_title("THE ART OF CITATION ANALYSIS")
            == "The Art of Citation Analysis"
        )

    def test_last_word_always_capitalized(self):
        assert recapitalize_title("A STUDY OF") == "A Study Of"

    def test_mixed_case_untouched(self):
        assert recapitalize_title("mRNA Vaccines IN 2020") == "mRNA Vaccines IN 2020"

    def test_idempotent(self):
        once = recapitalize_title("TREEMAP STUDIES OF THE LITERATURE")
        assert recapitalize_title(once) == once


class TestYearFromDoi:
    def test_frozen_example(self):
        assert year_from_doi("10.1109/tvcg.2015.2467757", 2025) == 2015

    def test_skips_implausible_tokens(self):
        # 1109 is below the floor; 2467757 is not four digits.
        assert year_from_doi("10.1109/2467757", 2025) is None

    def test_upper_bound_is_next_year(self):
        assert year_from_doi("10.1/x.2026", 2025) == 2026
        assert year_from_doi("10.1/x.2027", 2025) is None

    def test_no_year(self):
        assert year_from_doi("10.1000/abc", 2025) is None


class TestRepairFields:
    def test_year_adopted_from_doi(self):
        repaired = repair_fields({"year": None}, "10.1109/tvcg.2015.2467757", 2025)
        assert repaired["year"] == 2015

    def test_existing_year_kept(self):
        repaired = repair_fields({"year": 1999}, "10.1/x.2015", 2025)
        assert repaired["year"] == 1999

    def test_title_pipeline(self):
        repaired = repair_fields(
            {"title": "TREES &AMP; GRAPHS", "year": 2020}, "10.1/x", 2025
        )
        assert repaired["title"] == "Trees & Graphs"

    def test_authors_fixed(self):
        repaired = repair_fields(
            {"authors": ["J. MÃ¼ller"], "year": 2020}, "10.1/x", 2025
        )
        assert repaired["authors"] == ["J. Müller"]

    def test_idempotent_on_samples(self):
        samples = [
            {"title": "TREEMAP STUDIES", "year": None, "authors": ["A &amp; B"]},
            {"title": "plain", "year": 2001},
            {"title": "MÃ¼ller&#39;s WORK", "year": None},
        ]
        for metadata in samples:
            once = repair_fields(metadata, "10.1/y.2018", 2025)
            assert repair_fields(once, "10.1/y.2018", 2025) == once
