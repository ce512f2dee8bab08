"""Author identity resolution across publications and ranked author lists.

Mentions of the same person are merged by unified name, by shared ORCID,
and by unambiguous abbreviation expansion. Records are then scored from
the publication scores of their contributions under a configurable
weighting.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, replace

from .errors import MissingScore
from .keywords import EMPTY_SPEC, KeywordSpec, count_keyword_matches
from .model import Publication, ScoreBreakdown
from .scoring import is_new_year

# Letters NFKD decomposition cannot reduce to an ASCII base form.
_SPECIAL_LETTERS = {
    "ß": "ss",
    "æ": "ae",
    "œ": "oe",
    "ø": "o",
    "ð": "d",
    "þ": "th",
    "đ": "d",
    "ħ": "h",
    "ı": "i",
    "ł": "l",
    "ŋ": "n",
}


@dataclass(frozen=True)
class Contribution:
    """One authorship of a publication; score fields are filled at ranking."""

    doi: str
    author_position: int
    year: int | None = None
    publication_score: int = 0
    is_new: bool = False


@dataclass(frozen=True)
class AuthorRecord:
    """A disambiguated author with aggregated contribution data."""

    key: str
    display_name: str
    name_variants: frozenset[str]
    orcid: str | None
    contributions: tuple[Contribution, ...]
    score: int = 0
    year_span: tuple[int, int] | None = None
    keyword_hits: frozenset[int] = frozenset()
    coauthors: frozenset[str] = frozenset()


@dataclass(frozen=True)
class AuthorScoreConfig:
    """Switches for the author score: publication-score weighting plus
    factor-2 boosts for first-author and recent contributions."""

    weight_by_publication_score: bool = True
    boost_first_author: bool = True
    boost_new: bool = True

    @classmethod
    def from_preset(cls, name: str) -> "AuthorScoreConfig":
        try:
            return _CONFIG_PRESETS[name]
        except KeyError:
            raise ValueError(f"unknown author score preset: {name!r}") from None


_CONFIG_PRESETS = {
    "aa": AuthorScoreConfig(False, False, False),
    "ab": AuthorScoreConfig(True, False, False),
    "ba": AuthorScoreConfig(False, True, True),
    "bb": AuthorScoreConfig(True, True, True),
}

DEFAULT_CONFIG = _CONFIG_PRESETS["bb"]


def _fold_letters(text: str) -> str:
    mapped = "".join(_SPECIAL_LETTERS.get(ch, ch) for ch in text)
    decomposed = unicodedata.normalize("NFKD", mapped)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def _strip_punctuation(text: str) -> str:
    # Keep the period (abbreviation marker) and the comma (surname
    # separator); other punctuation becomes a space so hyphenated parts
    # stay separate tokens.
    out = []
    for ch in text:
        if ch in ".,":
            out.append(ch)
        elif unicodedata.category(ch).startswith("P"):
            out.append(" ")
        else:
            out.append(ch)
    return "".join(out)


def _is_initial(token: str) -> bool:
    if len(token) == 1:
        return token.isalpha()
    return len(token) == 2 and token.endswith(".") and token[0].isalpha()


def unify_name(name: str) -> str:
    """Canonical form of an author name.

    Lowercase, diacritics folded to ASCII, punctuation other than period
    and comma dropped, glued initials split ("j.k." to "j. k."), initials
    normalized to the dotted form, and the name rendered as
    "surname, given names" so both orderings unify to the same string.
    """
    text = _strip_punctuation(_fold_letters(name.casefold()))
    text = text.replace(".", ". ")
    surname, givens = _split_name(" ".join(text.split()))
    givens = tuple(g + "." if len(g) == 1 and g.isalpha() else g for g in givens)
    if not givens:
        # A trailing comma keeps a multi-word surname-only mention
        # reparseable as a surname (idempotence).
        return surname + "," if " " in surname else surname
    return f"{surname}, {' '.join(givens)}"


def _has_letter(token: str) -> bool:
    return any(ch.isalnum() for ch in token)


def _split_name(text: str) -> tuple[str, tuple[str, ...]]:
    """(surname, given tokens); comma form keeps multi-word surnames.

    Tokens that carry no letter at all (stray punctuation) are dropped.
    """
    if "," in text:
        head, _, tail = text.partition(",")
        surname = " ".join(t for t in head.split() if _has_letter(t))
        givens = tuple(t for t in tail.replace(",", " ").split() if _has_letter(t))
        return surname, givens
    tokens = [t for t in text.split() if _has_letter(t)]
    if not tokens:
        return "", ()
    if len(tokens) == 1:
        return tokens[0], ()
    return tokens[-1], tuple(tokens[:-1])


def _givens_compatible(
    abbreviated: tuple[str, ...], full: tuple[str, ...]
) -> bool:
    """Token-wise match over the common prefix; extra tokens are allowed."""
    if not abbreviated or not full:
        return False
    for a, b in zip(abbreviated, full):
        if _is_initial(a) or _is_initial(b):
            if a[0] != b[0]:
                return False
        elif a != b:
            return False
    return True


def _name_is_abbreviated(unified: str) -> bool:
    _, givens = _split_name(unified)
    return any(_is_initial(g) for g in givens)


class _UnionFind:
    def __init__(self, items):
        self._parent = {item: item for item in items}

    def find(self, item: str) -> str:
        root = item
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[item] != root:
            self._parent[item], item = root, self._parent[item]
        return root

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # Deterministic root choice regardless of call order.
            keep, drop = min(ra, rb), max(ra, rb)
            self._parent[drop] = keep

    def classes(self) -> dict[str, set[str]]:
        grouped: dict[str, set[str]] = {}
        for item in self._parent:
            grouped.setdefault(self.find(item), set()).add(item)
        return grouped


@dataclass(frozen=True)
class _Mention:
    unified: str
    original: str
    orcid: str | None
    doi: str
    position: int
    year: int | None
    title: str


def _collect_mentions(publications: list[Publication]) -> list[_Mention]:
    mentions = []
    for pub in publications:
        for position, name in enumerate(pub.authors):
            if not name or not name.strip():
                continue
            unified = unify_name(name)
            if not unified:
                continue
            mentions.append(
                _Mention(
                    unified=unified,
                    original=name.strip(),
                    orcid=pub.orcid_for(position),
                    doi=pub.doi,
                    position=position,
                    year=pub.year,
                    title=pub.title,
                )
            )
    return mentions


def disambiguate(
    publications: list[Publication] | tuple[Publication, ...],
    spec: KeywordSpec = EMPTY_SPEC,
) -> list[AuthorRecord]:
    """Merge author mentions into records, deterministically.

    Two passes: exact unified-name and shared-ORCID classes first; then
    each fully abbreviated class merges into the one unabbreviated class
    with the same surname and compatible given-name initials, decided
    against the frozen first-pass classes so input order cannot matter.
    Ambiguous abbreviations (several candidates) stay separate.
    """
    mentions = _collect_mentions(list(publications))
    if not mentions:
        return []

    uf = _UnionFind(sorted({m.unified for m in mentions}))
    by_orcid: dict[str, set[str]] = {}
    for mention in mentions:
        if mention.orcid:
            by_orcid.setdefault(mention.orcid, set()).add(mention.unified)
    for orcid in sorted(by_orcid):
        names = sorted(by_orcid[orcid])
        for name in names[1:]:
            uf.union(names[0], name)

    first_pass = uf.classes()
    abbreviated_roots = sorted(
        root
        for root, names in first_pass.items()
        if all(_name_is_abbreviated(n) for n in names)
    )
    candidate_roots = sorted(
        root
        for root, names in first_pass.items()
        if any(not _name_is_abbreviated(n) for n in names)
    )
    merges: list[tuple[str, str]] = []
    for root in abbreviated_roots:
        matched = [
            candidate
            for candidate in candidate_roots
            if _classes_match(first_pass[root], first_pass[candidate])
        ]
        if len(matched) == 1:
            merges.append((root, matched[0]))
    for source, target in merges:
        uf.union(source, target)

    records = []
    for _, names in sorted(uf.classes().items()):
        records.append(_build_record(names, mentions, spec))
    records.sort(key=lambda r: r.key)
    return _fill_coauthors(records)


def _classes_match(abbreviated_names: set[str], candidate_names: set[str]) -> bool:
    full_names = [n for n in candidate_names if not _name_is_abbreviated(n)]
    for short in abbreviated_names:
        surname, givens = _split_name(short)
        for full in full_names:
            full_surname, full_givens = _split_name(full)
            if surname == full_surname and _givens_compatible(givens, full_givens):
                return True
    return False


def _build_record(
    names: set[str], mentions: list[_Mention], spec: KeywordSpec
) -> AuthorRecord:
    mine = sorted(
        (m for m in mentions if m.unified in names),
        key=lambda m: (m.doi, m.position),
    )
    orcids = sorted({m.orcid for m in mine if m.orcid})
    orcid = orcids[0] if orcids else None
    key = orcid if orcid else min(names)
    variants = {m.original for m in mine}
    unabbreviated = [v for v in variants if not _name_is_abbreviated(unify_name(v))]
    pool = unabbreviated if unabbreviated else sorted(variants)
    display_name = sorted(pool, key=lambda v: (-len(v), v))[0]

    contributions = tuple(
        Contribution(doi=m.doi, author_position=m.position, year=m.year)
        for m in mine
    )
    years = sorted({m.year for m in mine if m.year is not None})
    year_span = (years[0], years[-1]) if years else None

    hits: set[int] = set()
    seen_titles = set()
    for mention in mine:
        if mention.doi in seen_titles:
            continue
        seen_titles.add(mention.doi)
        _, matched = count_keyword_matches(mention.title, spec)
        hits.update(matched)

    return AuthorRecord(
        key=key,
        display_name=display_name,
        name_variants=frozenset(variants),
        orcid=orcid,
        contributions=contributions,
        year_span=year_span,
        keyword_hits=frozenset(hits),
    )


def _fill_coauthors(records: list[AuthorRecord]) -> list[AuthorRecord]:
    by_doi: dict[str, set[str]] = {}
    for record in records:
        for contribution in record.contributions:
            by_doi.setdefault(contribution.doi, set()).add(record.key)
    filled = []
    for record in records:
        others: set[str] = set()
        for contribution in record.contributions:
            others |= by_doi[contribution.doi]
        others.discard(record.key)
        filled.append(replace(record, coauthors=frozenset(others)))
    return filled


def rank_authors(
    records: list[AuthorRecord],
    selected_scores: dict[str, ScoreBreakdown],
    config: AuthorScoreConfig = DEFAULT_CONFIG,
    current_year: int | None = None,
) -> list[AuthorRecord]:
    """Score each record from its contributions and sort.

    Per contribution the base is the publication score (or 1 in count
    mode), doubled for first-author position and again for recent
    publications when the respective boost is on. Order: score desc,
    contribution count desc, key asc.
    """
    ranked = []
    for record in records:
        total = 0
        enriched = []
        for contribution in record.contributions:
            breakdown = selected_scores.get(contribution.doi)
            if breakdown is None:
                raise MissingScore(
                    f"no score for {contribution.doi} (author {record.key})"
                )
            new = (
                is_new_year(contribution.year, current_year)
                if current_year is not None
                else False
            )
            value = breakdown.score if config.weight_by_publication_score else 1
            if config.boost_first_author and contribution.author_position == 0:
                value *= 2
            if config.boost_new and new:
                value *= 2
            total += value
            enriched.append(
                replace(contribution, publication_score=breakdown.score, is_new=new)
            )
        ranked.append(
            replace(record, contributions=tuple(enriched), score=total)
        )
    ranked.sort(key=lambda r: (-r.score, -len(r.contributions), r.key))
    return ranked


def top_authors(ranked: list[AuthorRecord], n: int) -> list[AuthorRecord]:
    if n < 0:
        raise ValueError("author count must be non-negative")
    return list(ranked[:n])


def author_initials(display_name: str) -> str:
    """Short label for graph nodes: given-name initials then surname initial."""
    surname, givens = _split_name(" ".join(display_name.split()))
    letters = [g[0] for g in givens if g and g[0].isalpha()]
    surname_letters = [t[0] for t in surname.split() if t and t[0].isalpha()]
    if surname_letters:
        letters.append(surname_letters[-1])
    return "".join(letters).upper()
