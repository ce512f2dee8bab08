import json
import threading

import pytest

from citesuggest.cache import RecordCache
from citesuggest.errors import (
    InvalidQuery,
    NotFound,
    PartialData,
    SourceUnavailable,
)
from citesuggest.gateway import GatewayConfig, SourceGateway
from citesuggest.records import SourceRecord
from citesuggest.sources import FixtureSource

from .corpus import (
    CANDIDATE_COUNT,
    CAPS_DOI,
    FAIL_BOTH_DOI,
    FAIL_CITATIONS_DOI,
    FAIL_METADATA_DOI,
    MEGA_DOI,
    MOJIBAKE_DOI,
    SEEDS,
    build_corpus,
    candidate_doi,
)

CONFIG = GatewayConfig(current_year=2025)


@pytest.fixture()
def corpus():
    return build_corpus()


@pytest.fixture()
def fixture_source(corpus):
    return FixtureSource(corpus)


def make_gateway(source, tmp_path=None, config=CONFIG, clock=None, cache=None):
    if cache is None:
        directory = tmp_path / "cache" if tmp_path else None
        kwargs = {"clock": clock} if clock else {}
        cache = RecordCache(directory, ttl_seconds=config.ttl_seconds, **kwargs)
    kwargs = {"clock": clock} if clock else {}
    return SourceGateway(source, source, cache=cache, config=config, **kwargs)


class TestFetchPublication:
    def test_merged_fields(self, corpus, fixture_source):
        gateway = make_gateway(fixture_source)
        seed = SEEDS[0]
        publication = gateway.fetch_publication(seed)
        entry = corpus[seed]
        assert publication.doi == seed
        assert publication.title == entry["metadata"]["title"]
        assert publication.venue == entry["metadata"]["venue"]
        assert publication.year == entry["metadata"]["year"]
        assert publication.authors == tuple(entry["metadata"]["authors"])
        assert publication.citing == frozenset(entry["citing"])
        assert publication.cited_by == frozenset(entry["cited_by"])
        assert publication.references_known is True

    def test_oversized_publication_skips_links(self, fixture_source):
        gateway = make_gateway(fixture_source)
        record = gateway.fetch_record(MEGA_DOI)
        assert record.citations_skipped_large is True
        assert record.citing == ()
        assert record.cited_by == ()
        assert record.cited_by_total == 1500
        assert fixture_source.call_count("links", MEGA_DOI) == 0
        publication = record.to_publication()
        assert publication.references_known is False
        assert publication.n_cited_by == 1500

    def test_unknown_doi_not_found(self, fixture_source):
        gateway = make_gateway(fixture_source)
        with pytest.raises(NotFound):
            gateway.fetch_publication("10.9999/nope")

    def test_metadata_absent_citations_present(self, corpus):
        doi = SEEDS[0]
        corpus[doi] = dict(corpus[doi], metadata=None)
        gateway = make_gateway(FixtureSource(corpus))
        record = gateway.fetch_record(doi)
        assert record.metadata_ok is False
        assert record.citations_ok is True
        assert record.cited_by != ()

    def test_metadata_outage_partial(self, fixture_source):
        gateway = make_gateway(fixture_source)
        with pytest.raises(PartialData) as excinfo:
            gateway.fetch_publication(FAIL_METADATA_DOI)
        record = excinfo.value.record
        assert record.metadata_ok is False
        assert record.citations_ok is True
        assert record.citing != () or record.cited_by != ()

    def test_citation_outage_partial(self, fixture_source):
        gateway = make_gateway(fixture_source)
        with pytest.raises(PartialData) as excinfo:
            gateway.fetch_publication(FAIL_CITATIONS_DOI)
        record = excinfo.value.record
        assert record.metadata_ok is True
        assert record.citations_ok is False
        assert record.to_publication().references_known is False

    def test_both_fail_unavailable(self, fixture_source):
        gateway = make_gateway(fixture_source)
        with pytest.raises(SourceUnavailable):
            gateway.fetch_publication(FAIL_BOTH_DOI)

    def test_repair_applied(self, fixture_source):
        gateway = make_gateway(fixture_source)
        caps = gateway.fetch_publication(CAPS_DOI)
        assert caps.title == "Treemap Studies of the Literature"
        assert caps.year == 2019  # recovered from the DOI
        moji = gateway.fetch_publication(MOJIBAKE_DOI)
        assert moji.title == "Graphs & trees in Müller’s atlas"
        assert moji.authors == ("J. Müller",)


class TestCaching:
    def test_second_fetch_hits_cache(self, fixture_source):
        gateway = make_gateway(fixture_source)
        first = gateway.fetch_record(SEEDS[0])
        second = gateway.fetch_record(SEEDS[0])
        assert first == second
        assert fixture_source.call_count("metadata", SEEDS[0]) == 1

    def test_disk_round_trip_identical(self, corpus, fixture_source, tmp_path):
        gateway = make_gateway(fixture_source, tmp_path)
        record = gateway.fetch_record(SEEDS[1])
        # A new gateway over the same directory must serve the identical
        # record without any upstream call.
        cold_source = FixtureSource(corpus)
        cache = RecordCache(tmp_path / "cache", ttl_seconds=CONFIG.ttl_seconds)
        gateway2 = SourceGateway(cold_source, cold_source, cache=cache, config=CONFIG)
        assert gateway2.fetch_record(SEEDS[1]) == record
        assert cold_source.calls == []

    def test_serialization_bit_stable(self, fixture_source):
        gateway = make_gateway(fixture_source)
        record = gateway.fetch_record(SEEDS[2])
        encoded = json.dumps(record.to_dict(), sort_keys=True)
        decoded = SourceRecord.from_dict(json.loads(encoded))
        assert decoded == record
        assert json.dumps(decoded.to_dict(), sort_keys=True) == encoded

    def test_ttl_expiry_refetches(self, fixture_source, tmp_path):
        now = [1000.0]
        config = GatewayConfig(current_year=2025, ttl_seconds=100.0)
        gateway = make_gateway(
            fixture_source, tmp_path, config=config, clock=lambda: now[0]
        )
        gateway.fetch_record(SEEDS[0])
        now[0] += 50
        gateway.fetch_record(SEEDS[0])
        assert fixture_source.call_count("metadata", SEEDS[0]) == 1
        now[0] += 100
        gateway.fetch_record(SEEDS[0])
        assert fixture_source.call_count("metadata", SEEDS[0]) == 2

    def test_stale_served_on_outage_and_flagged(self, corpus, tmp_path):
        now = [1000.0]
        config = GatewayConfig(current_year=2025, ttl_seconds=100.0)
        source = FixtureSource(corpus)
        gateway = make_gateway(source, tmp_path, config=config, clock=lambda: now[0])
        fresh = gateway.fetch_record(SEEDS[0])
        assert fresh.served_stale is False
        now[0] += 1000
        corpus[SEEDS[0]]["fail_metadata"] = True
        corpus[SEEDS[0]]["fail_citations"] = True
        stale = gateway.fetch_record(SEEDS[0])
        assert stale.served_stale is True
        assert stale.metadata == fresh.metadata


class TestConcurrency:
    def test_request_coalescing(self, corpus):
        source = FixtureSource(corpus, latency=0.05)
        gateway = make_gateway(source)
        results = []
        errors = []

        def fetch():
            try:
                results.append(gateway.fetch_record(SEEDS[0]))
            except Exception as exc:  # pragma: no cover - diagnostic
                errors.append(exc)

        threads = [threading.Thread(target=fetch) for _ in range(8)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        assert not errors
        assert len(results) == 8
        assert all(record == results[0] for record in results)
        assert source.call_count("metadata", SEEDS[0]) == 1
        assert source.call_count("links", SEEDS[0]) == 1

    def test_parallelism_bound_batch(self, corpus):
        source = FixtureSource(corpus, latency=0.01)
        config = GatewayConfig(current_year=2025, parallelism=3)
        gateway = make_gateway(source, config=config)
        dois = [candidate_doi(k) for k in range(30)]
        gateway.load_suggestion_metadata(dois, offset=0, limit=30)
        assert source.max_concurrent <= 3

    def test_parallelism_bound_direct_threads(self, corpus):
        # Raw threads bypass the batch executor, so only the gateway's
        # upstream semaphore limits concurrency here.
        source = FixtureSource(corpus, latency=0.01)
        config = GatewayConfig(current_year=2025, parallelism=3)
        gateway = make_gateway(source, config=config)
        threads = [
            threading.Thread(target=gateway.fetch_record, args=(candidate_doi(k),))
            for k in range(12)
        ]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        assert source.max_concurrent <= 3


class TestWindowedLoading:
    def candidates(self):
        return [candidate_doi(k) for k in range(CANDIDATE_COUNT)][:120]

    def test_window_of_fifty(self, fixture_source):
        gateway = make_gateway(fixture_source)
        batch = gateway.load_suggestion_metadata(self.candidates(), offset=0)
        assert len(batch) == 50
        assert all(result.publication is not None for result in batch)
        assert [r.doi for r in batch] == self.candidates()[:50]

    def test_tail_window(self, fixture_source):
        gateway = make_gateway(fixture_source)
        batch = gateway.load_suggestion_metadata(self.candidates(), offset=100)
        assert len(batch) == 20

    def test_offset_beyond_end(self, fixture_source):
        gateway = make_gateway(fixture_source)
        assert gateway.load_suggestion_metadata(self.candidates(), offset=200) == []

    def test_negative_offset_rejected(self, fixture_source):
        gateway = make_gateway(fixture_source)
        with pytest.raises(ValueError):
            gateway.load_suggestion_metadata(self.candidates(), offset=-1)

    def test_failures_do_not_abort_batch(self, fixture_source):
        gateway = make_gateway(fixture_source)
        dois = [SEEDS[0], FAIL_METADATA_DOI, "10.9999/nope", FAIL_BOTH_DOI, SEEDS[1]]
        batch = gateway.load_suggestion_metadata(dois, offset=0, limit=10)
        by_doi = {result.doi: result for result in batch}
        assert by_doi[SEEDS[0]].publication is not None
        assert by_doi[SEEDS[0]].error is None
        assert by_doi[FAIL_METADATA_DOI].partial is True
        assert by_doi[FAIL_METADATA_DOI].publication is not None
        assert by_doi["10.9999/nope"].error == "not_found"
        assert by_doi[FAIL_BOTH_DOI].error == "unavailable"


class TestPrefetch:
    def test_prefetch_warms_next_window(self, fixture_source):
        gateway = make_gateway(fixture_source)
        dois = [candidate_doi(k) for k in range(120)]
        gateway.load_suggestion_metadata(dois, offset=0)
        thread = gateway.prefetch_next(dois, offset=50)
        thread.join(timeout=30)
        assert not thread.is_alive()
        for doi in dois[50:100]:
            cached = gateway.cache.get(doi)
            assert cached is not None and cached.fresh

    def test_prefetch_after_end_is_noop(self, fixture_source):
        gateway = make_gateway(fixture_source)
        thread = gateway.prefetch_next([candidate_doi(0)], offset=5)
        thread.join(timeout=5)
        assert fixture_source.calls == []

    def test_overlap_coalesces_to_single_call(self, corpus):
        source = FixtureSource(corpus, latency=0.02)
        gateway = make_gateway(source)
        doi = candidate_doi(0)
        thread = gateway.prefetch_next([doi], offset=0)
        gateway.load_suggestion_metadata([doi], offset=0, limit=1)
        thread.join(timeout=10)
        assert source.call_count("metadata", doi) == 1


class TestSearch:
    def test_recorded_query(self, fixture_source):
        gateway = make_gateway(fixture_source)
        results = gateway.search("citation visualization")
        assert len(results) == 20  # capped from 25 recorded hits
        assert results[0].doi == candidate_doi(0)
        assert all(pub.citing == frozenset() for pub in results)
        assert fixture_source.call_count("links") == 0

    def test_three_hits(self, fixture_source):
        gateway = make_gateway(fixture_source)
        results = gateway.search("three hits")
        assert [pub.doi for pub in results] == [SEEDS[0], SEEDS[1], MEGA_DOI]

    def test_empty_query_rejected(self, fixture_source):
        gateway = make_gateway(fixture_source)
        with pytest.raises(InvalidQuery):
            gateway.search("   ")

    def test_title_scan_fallback(self, fixture_source):
        gateway = make_gateway(fixture_source)
        results = gateway.search("survey")
        assert results
        assert all("survey" in pub.title.lower() for pub in results)
