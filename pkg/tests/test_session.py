"""Session state transitions and persistence round-trips."""

from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from citesuggest.errors import InvalidSessionFile, MalformedDoi
from citesuggest.session import (
    SessionState,
    commit_update,
    load_session,
    save_session,
)

D1, D2, D3, D4 = "10.1/a", "10.1/b", "10.1/c", "10.1/d"


class TestStaging:
    def test_stage_inclusion_then_commit(self):
        state = SessionState(selected=(D1,)).stage_inclusion(D2)
        assert state.staged_inclusions == {D2}
        assert state.selected == (D1,)
        committed = commit_update(state)
        assert committed.selected == (D1, D2)
        assert not committed.has_staged_changes

    def test_stage_exclusion_then_commit(self):
        state = SessionState(selected=(D1, D2)).stage_exclusion(D2)
        committed = commit_update(state)
        assert committed.selected == (D1,)
        assert committed.excluded == (D2,)

    def test_inclusion_of_excluded_doi_moves_it_out(self):
        state = SessionState(selected=(D1,), excluded=(D2, D3))
        committed = commit_update(state.stage_inclusion(D2))
        assert committed.selected == (D1, D2)
        assert committed.excluded == (D3,)

    def test_staging_an_already_selected_doi_is_a_noop(self):
        state = SessionState(selected=(D1,))
        assert state.stage_inclusion(D1) is state

    def test_staging_an_already_excluded_doi_is_a_noop(self):
        state = SessionState(excluded=(D1,))
        assert state.stage_exclusion(D1) is state

    def test_restaging_flips_direction(self):
        state = SessionState().stage_exclusion(D1).stage_inclusion(D1)
        assert state.staged_inclusions == {D1}
        assert state.staged_exclusions == frozenset()

    def test_unstage(self):
        state = SessionState().stage_inclusion(D1).stage_exclusion(D2)
        state = state.unstage(D1).unstage(D2)
        assert not state.has_staged_changes

    def test_membership_rule_table_for_inclusion(self):
        # (already selected?, already excluded?) -> resulting membership
        for selected_before, excluded_before in [
            (False, False),
            (True, False),
            (False, True),
        ]:
            state = SessionState(
                selected=(D1,) if selected_before else (),
                excluded=(D1,) if excluded_before else (),
            )
            committed = commit_update(state.stage_inclusion(D1))
            assert committed.selected == (D1,)
            assert D1 not in committed.excluded

    def test_membership_rule_table_for_exclusion(self):
        for selected_before, excluded_before in [
            (False, False),
            (True, False),
            (False, True),
        ]:
            state = SessionState(
                selected=(D1,) if selected_before else (),
                excluded=(D1,) if excluded_before else (),
            )
            committed = commit_update(state.stage_exclusion(D1))
            assert committed.excluded == (D1,)
            assert D1 not in committed.selected

    def test_commit_appends_staged_inclusions_in_sorted_order(self):
        state = SessionState(selected=(D4,)).stage_inclusion(D3).stage_inclusion(D1)
        committed = commit_update(state)
        assert committed.selected == (D4, D1, D3)

    def test_commit_without_staged_changes_is_identity(self):
        state = SessionState(selected=(D1,), excluded=(D2,))
        assert commit_update(state) == state

    def test_staging_normalizes_dois(self):
        state = SessionState().stage_inclusion("https://doi.org/10.1/A")
        assert state.staged_inclusions == {"10.1/a"}


class TestDirectEdits:
    def test_add_selected_appends_and_clears_exclusion(self):
        state = SessionState(selected=(D1,), excluded=(D2,)).add_selected(D2)
        assert state.selected == (D1, D2)
        assert state.excluded == ()

    def test_add_selected_is_idempotent(self):
        state = SessionState(selected=(D1,))
        assert state.add_selected(D1) is state

    def test_remove_selected(self):
        state = SessionState(selected=(D1, D2)).remove_selected(D1)
        assert state.selected == (D2,)

    def test_with_keywords_and_boost(self):
        state = SessionState().with_keywords("TREE|GRAPH").with_boost(False)
        assert state.keyword_text == "TREE|GRAPH"
        assert state.boost_enabled is False

    def test_mark_read_is_idempotent(self):
        state = SessionState().mark_read(D1)
        assert state.mark_read(D1) is state
        assert state.read_dois == {D1}
        assert not state.is_unread(D1)
        assert state.is_unread(D2)


class TestInvariants:
    def test_selected_excluded_overlap_rejected(self):
        with pytest.raises(ValueError):
            SessionState(selected=(D1,), excluded=(D1,))

    def test_conflicting_staged_sets_rejected(self):
        with pytest.raises(ValueError):
            SessionState(
                staged_inclusions=frozenset({D1}),
                staged_exclusions=frozenset({D1}),
            )


class TestPersistence:
    def test_save_produces_versioned_json(self):
        state = SessionState(
            selected=(D2, D1),
            excluded=(D3,),
            keyword_text="TREE",
            boost_enabled=False,
            read_dois=frozenset({D1}),
        )
        document = json.loads(save_session(state))
        assert document == {
            "version": 1,
            "selected": [D2, D1],
            "excluded": [D3],
            "keywords": "TREE",
            "boost_enabled": False,
            "read": [D1],
        }

    def test_save_with_staged_changes_is_an_error(self):
        with pytest.raises(ValueError):
            save_session(SessionState().stage_inclusion(D1))

    def test_load_minimal_document_applies_defaults(self):
        state = load_session(json.dumps({"version": 1, "selected": [D1], "keywords": ""}))
        assert state.selected == (D1,)
        assert state.excluded == ()
        assert state.read_dois == frozenset()
        assert state.boost_enabled is True
        assert not state.has_staged_changes

    def test_load_normalizes_and_dedupes(self):
        state = load_session(
            json.dumps(
                {
                    "version": 1,
                    "selected": ["https://doi.org/10.1/A", "10.1/a", D2],
                    "keywords": "",
                }
            )
        )
        assert state.selected == (D1, D2)

    def test_load_drops_excluded_entries_shadowed_by_selected(self):
        state = load_session(
            json.dumps(
                {
                    "version": 1,
                    "selected": [D1],
                    "excluded": [D1, D2],
                    "keywords": "",
                }
            )
        )
        assert state.excluded == (D2,)

    def test_load_ignores_unknown_fields(self):
        state = load_session(
            json.dumps(
                {"version": 1, "selected": [], "keywords": "", "future_field": 7}
            )
        )
        assert state == SessionState()

    @pytest.mark.parametrize(
        "payload",
        [
            b"not json at all {",
            b"[1, 2, 3]",
            b'{"version": 2, "selected": [], "keywords": ""}',
            b'{"selected": [], "keywords": ""}',
            b'{"version": 1, "keywords": ""}',
            b'{"version": 1, "selected": []}',
            b'{"version": 1, "selected": "10.1/a", "keywords": ""}',
            b'{"version": 1, "selected": [42], "keywords": ""}',
            b'{"version": 1, "selected": ["not-a-doi"], "keywords": ""}',
            b'{"version": 1, "selected": [], "keywords": 3}',
            b'{"version": 1, "selected": [], "keywords": "", "boost_enabled": "yes"}',
            b'{"version": 1, "selected": [], "keywords": "", "read": [null]}',
        ],
    )
    def test_load_rejects_malformed_documents(self, payload):
        with pytest.raises(InvalidSessionFile):
            load_session(payload)

    def test_malformed_doi_error_is_also_a_session_error(self):
        # the file-level error wraps the underlying DOI failure
        try:
            load_session(
                b'{"version": 1, "selected": ["bogus"], "keywords": ""}'
            )
        except InvalidSessionFile as exc:
            assert isinstance(exc.__cause__, MalformedDoi)
        else:
            pytest.fail("expected InvalidSessionFile")


_doi = st.from_regex(r"10\.[0-9]{4}/[a-z0-9]{1,12}", fullmatch=True)


@st.composite
def _session_states(draw):
    dois = draw(st.lists(_doi, max_size=12, unique=True))
    cut = draw(st.integers(min_value=0, max_value=len(dois)))
    read = draw(st.lists(st.sampled_from(dois), max_size=6) if dois else st.just([]))
    return SessionState(
        selected=tuple(dois[:cut]),
        excluded=tuple(dois[cut:]),
        keyword_text=draw(st.text(max_size=40)),
        boost_enabled=draw(st.booleans()),
        read_dois=frozenset(read),
    )


class TestRoundTrip:
    @settings(max_examples=150)
    @given(state=_session_states())
    def test_save_load_is_identity(self, state):
        assert load_session(save_session(state)) == state

    @settings(max_examples=60)
    @given(state=_session_states())
    def test_save_is_deterministic(self, state):
        assert save_session(state) == save_session(state)
