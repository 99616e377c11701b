"""Corpus preprocessing: tokens to bit-string meaning-space patterns.

The pipeline tokenizes and tags text, picks the most frequent tokens of
each class as a basis, orders the basis on a minimum Hamiltonian cycle
of inter-token corpus distances, assigns cyclic codewords, projects the
remaining tokens onto nearby basis tokens, and composes subject-verb-
object triples into fixed-width bit strings (subject in the least
significant bits).
"""

from __future__ import annotations

import bisect
import json
import re
import statistics
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import lexicon
from .codes import BasisSet, basis_for_tokens, min_hamiltonian_cycle
from .errors import QMeaningError, TaggedLineError, TokenResolutionError

MODEL_FORMAT_VERSION = 1

NOUN = "noun"
VERB = "verb"
STOPWORD = "stopword"
OTHER = "other"

_TAG_ALIASES = {
    "noun": NOUN,
    "subject-noun": NOUN,
    "object-noun": NOUN,
    "verb": VERB,
    "stopword": STOPWORD,
    "other": OTHER,
}

_WORD_RE = re.compile(r"[a-z0-9']+")


@dataclass(frozen=True)
class TokenOccurrence:
    """A token type with its tag and every position it occupies.

    Positions are 0-based indices into the stream of retained tokens;
    non-alphanumeric junk does not consume a position.
    """

    text: str
    tag: str
    positions: tuple[int, ...]

    def __post_init__(self):
        if not self.positions:
            raise ValueError(f"token {self.text!r} has no positions")
        if any(b <= a for a, b in zip(self.positions, self.positions[1:])):
            raise ValueError(f"positions of {self.text!r} must be strictly increasing")

    @property
    def frequency(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class PreprocessParams:
    """Run-time knobs of the preprocessing stage.

    Basis sizes must be even (the cyclic code of width n carries 2n
    codewords) and at least 2; cutoffs are measured in retained-token
    positions and must be at least 1.
    """

    n_nouns: int
    n_verbs: int
    w_nouns: int
    w_verbs: int
    w_vn: int

    def __post_init__(self):
        for name, value in (("n_nouns", self.n_nouns), ("n_verbs", self.n_verbs)):
            if value < 2 or value % 2:
                raise ValueError(f"{name} must be even and >= 2, got {value}")
        for name, value in (
            ("w_nouns", self.w_nouns),
            ("w_verbs", self.w_verbs),
            ("w_vn", self.w_vn),
        ):
            if value < 1:
                raise ValueError(f"{name} must be >= 1, got {value}")


def _verb_lemma(token: str) -> str | None:
    """Map an inflected form onto a verb lexicon base, if any fits."""
    candidates: list[str] = []
    if token.endswith("ies") and len(token) > 4:
        candidates.append(token[:-3] + "y")
    if token.endswith("ing") and len(token) > 4:
        stem = token[:-3]
        candidates += [stem, stem + "e"]
        if len(stem) > 2 and stem[-1] == stem[-2]:
            candidates.append(stem[:-1])
    if token.endswith("ied") and len(token) > 4:
        candidates.append(token[:-3] + "y")
    if token.endswith("ed") and len(token) > 3:
        stem = token[:-2]
        candidates += [stem, token[:-1]]
        if len(stem) > 2 and stem[-1] == stem[-2]:
            candidates.append(stem[:-1])
    if token.endswith("es") and len(token) > 3:
        candidates.append(token[:-2])
    if token.endswith("s") and not token.endswith("ss") and len(token) > 2:
        candidates.append(token[:-1])
    for cand in candidates:
        if cand in lexicon.VERB_LEXICON:
            return cand
    return None


def _plural_stem(token: str, vocabulary: set[str]) -> str | None:
    """Fold a plausible plural onto a stem that the corpus itself uses."""
    if token.endswith("ies") and len(token) > 4:
        cand = token[:-3] + "y"
        if cand in vocabulary:
            return cand
    if token.endswith("es") and len(token) > 3 and token[-3] in "sxzh":
        cand = token[:-2]
        if cand in vocabulary:
            return cand
    if (
        token.endswith("s")
        and not token.endswith(("ss", "us", "is"))
        and len(token) > 3
    ):
        cand = token[:-1]
        if cand in vocabulary:
            return cand
    return None


def _classify(token: str, vocabulary: set[str]) -> tuple[str, str]:
    if token in lexicon.STOPWORDS:
        return token, STOPWORD
    if token in lexicon.IRREGULAR_VERBS:
        return lexicon.IRREGULAR_VERBS[token], VERB
    if token in lexicon.VERB_LEXICON:
        return token, VERB
    lemma = _verb_lemma(token)
    if lemma is not None:
        return lemma, VERB
    if not token.isalpha():
        return token, OTHER
    if token in lexicon.OTHER_WORDS:
        return token, OTHER
    if token.endswith("ly") and len(token) > 4:
        return token, OTHER
    stem = _plural_stem(token, vocabulary)
    return (stem or token), NOUN


def _parse_pretagged(raw_text: str) -> list[TokenOccurrence]:
    grouped: dict[tuple[str, str], list[int]] = {}
    position = 0
    for lineno, line in enumerate(raw_text.splitlines(), start=1):
        if not line.strip():
            continue
        fields = line.split()
        if len(fields) != 2:
            raise TaggedLineError(lineno, f"expected 'token<TAB>tag', got {line!r}")
        token, tag = fields[0].lower(), fields[1].lower()
        if tag not in _TAG_ALIASES:
            raise TaggedLineError(lineno, f"unknown tag {tag!r}")
        grouped.setdefault((token, _TAG_ALIASES[tag]), []).append(position)
        position += 1
    if not grouped:
        raise QMeaningError("empty corpus")
    return [
        TokenOccurrence(text=text, tag=tag, positions=tuple(pos))
        for (text, tag), pos in sorted(grouped.items())
    ]


def tokenize_and_tag(raw_text: str, mode: str = "builtin") -> list[TokenOccurrence]:
    """Tokenize a corpus and tag each token type; deterministic.

    ``builtin`` mode lowercases, drops non-alphanumeric junk, tags with
    the embedded stopword/verb/adjective lists plus suffix rules, and
    folds inflections onto lemmas.  ``pre-tagged`` mode expects one
    ``token<TAB>tag`` pair per line.
    """
    if mode == "pre-tagged":
        return _parse_pretagged(raw_text)
    if mode not in ("builtin", "builtin-tagger"):
        raise ValueError(f"unknown mode {mode!r}")
    if not raw_text or not raw_text.strip():
        raise QMeaningError("empty corpus")

    raw_tokens: list[str] = []
    for chunk in _WORD_RE.findall(raw_text.lower()):
        raw_tokens.extend(part for part in chunk.split("'") if part)
    if not raw_tokens:
        raise QMeaningError("corpus contains no alphanumeric tokens")

    vocabulary = set(raw_tokens)
    grouped: dict[tuple[str, str], list[int]] = {}
    for position, token in enumerate(raw_tokens):
        text, tag = _classify(token, vocabulary)
        grouped.setdefault((text, tag), []).append(position)
    return [
        TokenOccurrence(text=text, tag=tag, positions=tuple(pos))
        for (text, tag), pos in sorted(grouped.items())
    ]


def select_basis(
    occurrences: list[TokenOccurrence], token_class: str, n: int
) -> tuple[list[str], bool]:
    """Pick the n most frequent tokens of a class, most frequent first.

    Frequency ties break lexicographically ascending.  Returns the list
    and a shortfall flag set when fewer than n tokens were available.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    pool = [occ for occ in occurrences if occ.tag == token_class]
    pool.sort(key=lambda occ: (-occ.frequency, occ.text))
    chosen = [occ.text for occ in pool[:n]]
    return chosen, len(chosen) < n


def pairwise_token_distance(
    a: TokenOccurrence, b: TokenOccurrence, reducer: str = "min"
) -> float:
    """Reduce |pos_a - pos_b| over all position pairs of two tokens."""
    pa = np.asarray(a.positions, dtype=float)
    pb = np.asarray(b.positions, dtype=float)
    gaps = np.abs(pa[:, None] - pb[None, :]).ravel()
    if reducer == "min":
        return float(gaps.min())
    if reducer == "mean":
        return float(gaps.mean())
    if reducer == "median":
        return float(statistics.median(gaps.tolist()))
    raise ValueError(f"unknown reducer {reducer!r}")


@dataclass(frozen=True)
class ProjectionMap:
    """Composite token -> set of basis tokens (binary weighting).

    Basis tokens map to themselves; unmapped tokens project to the
    empty set.
    """

    entries: dict[str, frozenset[str]]

    def project(self, token: str) -> frozenset[str]:
        return self.entries.get(token, frozenset())


def project_tokens(
    occurrences: list[TokenOccurrence],
    basis: BasisSet,
    cutoff: int,
    reducer: str = "min",
) -> ProjectionMap:
    """Project each token onto every basis token within the cutoff.

    ``occurrences`` must be the occurrences of the basis's own class and
    must contain the basis tokens themselves.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    by_text = {occ.text: occ for occ in occurrences}
    missing = [t for t in basis.tokens if t not in by_text]
    if missing:
        raise QMeaningError(f"basis tokens absent from corpus: {', '.join(missing)}")
    entries: dict[str, frozenset[str]] = {}
    for occ in occurrences:
        if occ.text in basis.assignment:
            entries[occ.text] = frozenset({occ.text})
            continue
        near = frozenset(
            t
            for t in basis.tokens
            if pairwise_token_distance(occ, by_text[t], reducer) <= cutoff
        )
        entries[occ.text] = near
    return ProjectionMap(entries=entries)


@dataclass(frozen=True)
class SentencePattern:
    """Codeword sets of one subject-verb-object token triple."""

    subject: frozenset[int]
    verb: frozenset[int]
    object: frozenset[int]
    composed: frozenset[int]


@dataclass
class CorpusModel:
    """Everything the quantum stages need: bases, projections, patterns."""

    params: PreprocessParams | None
    occurrences: list[TokenOccurrence]
    subject_basis: BasisSet
    verb_basis: BasisSet
    object_basis: BasisSet
    subject_projection: ProjectionMap
    verb_projection: ProjectionMap
    object_projection: ProjectionMap
    sentences: list[SentencePattern] = field(default_factory=list)
    patterns: list[int] = field(default_factory=list)
    labels: dict[int, str] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @property
    def composed_width(self) -> int:
        return self.subject_basis.width + self.verb_basis.width + self.object_basis.width

    def compose(self, subject_code: int, verb_code: int, object_code: int) -> int:
        ws, wv = self.subject_basis.width, self.verb_basis.width
        return (object_code << (wv + ws)) | (verb_code << ws) | subject_code

    def decompose(self, value: int) -> tuple[int, int, int]:
        ws, wv = self.subject_basis.width, self.verb_basis.width
        return value & ((1 << ws) - 1), (value >> ws) & ((1 << wv) - 1), value >> (ws + wv)

    def label_of(self, value: int) -> str | None:
        s, v, o = self.decompose(value)
        ts = self.subject_basis.token_of(s)
        tv = self.verb_basis.token_of(v)
        to = self.object_basis.token_of(o)
        if None in (ts, tv, to):
            return None
        return f"{ts},{tv},{to}"

    def resolve_triple(self, spec: str) -> int:
        parts = [p.strip() for p in spec.split(",")]
        if len(parts) != 3:
            raise QMeaningError(
                f"test pattern {spec!r} is neither a bit-string nor a subject,verb,object triple"
            )
        slots = (
            ("subject", self.subject_basis),
            ("verb", self.verb_basis),
            ("object", self.object_basis),
        )
        codes = []
        for token, (slot, basis) in zip(parts, slots):
            if token not in basis.assignment:
                raise TokenResolutionError(token, slot, sorted(basis.tokens))
            codes.append(basis.codeword_of(token))
        return self.compose(*codes)

    def pattern_strings(self) -> list[str]:
        w = self.composed_width
        return [format(p, f"0{w}b") for p in self.patterns]

    def save(self, path: str | Path) -> None:
        doc = {
            "format_version": MODEL_FORMAT_VERSION,
            "params": None
            if self.params is None
            else {
                "n_nouns": self.params.n_nouns,
                "n_verbs": self.params.n_verbs,
                "w_nouns": self.params.w_nouns,
                "w_verbs": self.params.w_verbs,
                "w_vn": self.params.w_vn,
            },
            "occurrences": [
                [occ.text, occ.tag, list(occ.positions)] for occ in self.occurrences
            ],
            "shared_noun_basis": self.subject_basis is self.object_basis,
            "subject_basis": list(self.subject_basis.tokens),
            "verb_basis": list(self.verb_basis.tokens),
            "object_basis": list(self.object_basis.tokens),
            "subject_projection": _projection_doc(self.subject_projection),
            "verb_projection": _projection_doc(self.verb_projection),
            "object_projection": _projection_doc(self.object_projection),
            "sentences": [
                {
                    "subject": sorted(s.subject),
                    "verb": sorted(s.verb),
                    "object": sorted(s.object),
                    "composed": sorted(s.composed),
                }
                for s in self.sentences
            ],
            "patterns": self.pattern_strings(),
            "labels": {
                format(p, f"0{self.composed_width}b"): lab
                for p, lab in sorted(self.labels.items())
            },
            "warnings": self.warnings,
        }
        Path(path).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "CorpusModel":
        doc = json.loads(Path(path).read_text())
        version = doc.get("format_version")
        if version != MODEL_FORMAT_VERSION:
            raise QMeaningError(
                f"unsupported model format version {version!r}, expected {MODEL_FORMAT_VERSION}"
            )
        params = None
        if doc["params"] is not None:
            params = PreprocessParams(**doc["params"])
        occurrences = [
            TokenOccurrence(text=t, tag=tag, positions=tuple(pos))
            for t, tag, pos in doc["occurrences"]
        ]
        subject_basis = basis_for_tokens(doc["subject_basis"])
        verb_basis = basis_for_tokens(doc["verb_basis"])
        if doc.get("shared_noun_basis"):
            object_basis = subject_basis
        else:
            object_basis = basis_for_tokens(doc["object_basis"])
        model = cls(
            params=params,
            occurrences=occurrences,
            subject_basis=subject_basis,
            verb_basis=verb_basis,
            object_basis=object_basis,
            subject_projection=_projection_from_doc(doc["subject_projection"]),
            verb_projection=_projection_from_doc(doc["verb_projection"]),
            object_projection=_projection_from_doc(doc["object_projection"]),
            sentences=[
                SentencePattern(
                    subject=frozenset(s["subject"]),
                    verb=frozenset(s["verb"]),
                    object=frozenset(s["object"]),
                    composed=frozenset(s["composed"]),
                )
                for s in doc["sentences"]
            ],
            patterns=[int(p, 2) for p in doc["patterns"]],
            labels={int(p, 2): lab for p, lab in doc["labels"].items()},
            warnings=list(doc.get("warnings", [])),
        )
        return model


def _projection_doc(projection: ProjectionMap) -> dict[str, list[str]]:
    return {tok: sorted(targets) for tok, targets in sorted(projection.entries.items())}


def _projection_from_doc(doc: dict[str, list[str]]) -> ProjectionMap:
    return ProjectionMap(entries={tok: frozenset(targets) for tok, targets in doc.items()})


def form_sentences(model: CorpusModel, params: PreprocessParams) -> list[SentencePattern]:
    """Compose subject-verb-object triples within the W_vn window.

    A triple is kept when both nouns sit within w_vn of the verb and
    within 2*w_vn of each other (subject = the earlier noun).  Tokens
    projecting to the empty set are skipped.
    """
    w_vn = params.w_vn
    noun_stream = sorted(
        (pos, occ.text)
        for occ in model.occurrences
        if occ.tag == NOUN
        for pos in occ.positions
    )
    noun_positions = [pos for pos, _ in noun_stream]
    triples: set[tuple[str, str, str]] = set()
    for occ in model.occurrences:
        if occ.tag != VERB:
            continue
        if not model.verb_projection.project(occ.text):
            continue
        for pv in occ.positions:
            lo = bisect.bisect_left(noun_positions, pv - w_vn)
            hi = bisect.bisect_right(noun_positions, pv + w_vn)
            window = noun_stream[lo:hi]
            for i in range(len(window)):
                p1, t1 = window[i]
                for j in range(i + 1, len(window)):
                    p2, t2 = window[j]
                    if p2 - p1 > 2 * w_vn:
                        break
                    triples.add((t1, occ.text, t2))

    sentences = []
    for t_subj, t_verb, t_obj in sorted(triples):
        subj = model.subject_projection.project(t_subj)
        verb = model.verb_projection.project(t_verb)
        obj = model.object_projection.project(t_obj)
        if not subj or not verb or not obj:
            continue
        subj_codes = frozenset(model.subject_basis.codeword_of(t) for t in subj)
        verb_codes = frozenset(model.verb_basis.codeword_of(t) for t in verb)
        obj_codes = frozenset(model.object_basis.codeword_of(t) for t in obj)
        composed = frozenset(
            model.compose(s, v, o)
            for s in subj_codes
            for v in verb_codes
            for o in obj_codes
        )
        sentences.append(
            SentencePattern(
                subject=subj_codes, verb=verb_codes, object=obj_codes, composed=composed
            )
        )
    return sentences


def _order_basis(
    tokens: list[str], occurrences: list[TokenOccurrence], reducer: str
) -> list[str]:
    """Ring-order basis tokens by corpus distance (exact cycle solver)."""
    if len(tokens) <= 2:
        return list(tokens)
    by_text = {occ.text: occ for occ in occurrences}
    k = len(tokens)
    weights = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            d = pairwise_token_distance(by_text[tokens[i]], by_text[tokens[j]], reducer)
            weights[i, j] = weights[j, i] = d
    order = min_hamiltonian_cycle(weights)
    return [tokens[i] for i in order]


def _manual_basis(doc: dict, slot: str) -> list[str] | None:
    entry = doc.get(slot) or doc.get("noun" if slot in ("subject", "object") else slot)
    if entry is None:
        return None
    return list(entry["cycle"])


def _manual_projection(doc: dict, slot: str, basis: BasisSet) -> ProjectionMap:
    raw = (doc.get("projections") or {}).get(slot)
    if raw is None and slot in ("subject", "object"):
        raw = (doc.get("projections") or {}).get("noun")
    entries = {t: frozenset({t}) for t in basis.tokens}
    for token, targets in (raw or {}).items():
        stray = set(targets) - set(basis.tokens)
        if stray:
            raise QMeaningError(
                f"manual {slot} projection of {token!r} targets non-basis tokens: {sorted(stray)}"
            )
        if token not in entries:
            entries[token] = frozenset(targets)
    return ProjectionMap(entries=entries)


def build_model_bases(doc: dict) -> tuple[BasisSet, BasisSet, BasisSet]:
    """Subject/verb/object bases from a manual-bases document.

    The document gives each slot's tokens in ring order (a shared "noun"
    cycle may stand in for both subject and object).
    """
    subject_cycle = _manual_basis(doc, "subject")
    verb_cycle = _manual_basis(doc, "verb")
    object_cycle = _manual_basis(doc, "object")
    if not (subject_cycle and verb_cycle and object_cycle):
        raise QMeaningError(
            "manual bases must define subject/verb/object (or noun) cycles"
        )
    subject_basis = basis_for_tokens(subject_cycle)
    verb_basis = basis_for_tokens(verb_cycle)
    object_basis = (
        subject_basis if object_cycle == subject_cycle else basis_for_tokens(object_cycle)
    )
    return subject_basis, verb_basis, object_basis


def build_model(
    occurrences: list[TokenOccurrence],
    params: PreprocessParams,
    manual_bases: dict | None = None,
    reducer: str = "min",
) -> CorpusModel:
    """Assemble a CorpusModel: bases, codes, projections, sentences."""
    warnings: list[str] = []
    if manual_bases is not None:
        subject_basis, verb_basis, object_basis = build_model_bases(manual_bases)
        subject_projection = _manual_projection(manual_bases, "subject", subject_basis)
        verb_projection = _manual_projection(manual_bases, "verb", verb_basis)
        object_projection = _manual_projection(manual_bases, "object", object_basis)
    else:
        nouns, short_n = select_basis(occurrences, NOUN, params.n_nouns)
        verbs, short_v = select_basis(occurrences, VERB, params.n_verbs)
        if not nouns:
            raise QMeaningError("no noun-class tokens available for basis selection")
        if not verbs:
            raise QMeaningError("no verb-class tokens available for basis selection")
        if short_n:
            warnings.append(
                f"only {len(nouns)} noun basis tokens available (requested {params.n_nouns})"
            )
        if short_v:
            warnings.append(
                f"only {len(verbs)} verb basis tokens available (requested {params.n_verbs})"
            )
        noun_basis = basis_for_tokens(_order_basis(nouns, occurrences, reducer))
        verb_basis = basis_for_tokens(_order_basis(verbs, occurrences, reducer))
        noun_occ = [occ for occ in occurrences if occ.tag == NOUN]
        verb_occ = [occ for occ in occurrences if occ.tag == VERB]
        noun_projection = project_tokens(noun_occ, noun_basis, params.w_nouns, reducer)
        verb_projection = project_tokens(verb_occ, verb_basis, params.w_verbs, reducer)
        subject_basis = object_basis = noun_basis
        subject_projection = object_projection = noun_projection

    model = CorpusModel(
        params=params,
        occurrences=list(occurrences),
        subject_basis=subject_basis,
        verb_basis=verb_basis,
        object_basis=object_basis,
        subject_projection=subject_projection,
        verb_projection=verb_projection,
        object_projection=object_projection,
        warnings=warnings,
    )
    model.sentences = form_sentences(model, params)
    composed: set[int] = set()
    for sentence in model.sentences:
        composed |= sentence.composed
    model.patterns = sorted(composed)
    model.labels = {}
    for value in model.patterns:
        label = model.label_of(value)
        if label is not None:
            model.labels[value] = label
    return model
