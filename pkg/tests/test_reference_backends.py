import pytest
from hypothesis import given, settings, strategies as st

from argusense.backends import classify
from argusense.backends.reference import (
    STOPWORDS,
    ReferenceBackend,
    default_lexicon,
    detect_aspects,
    lexicon_classify,
    reference_ner,
    tfidf_pairwise,
    Lexicon,
)
from argusense.backends.types import CapabilityError, STANCE_AGAINST, STANCE_FOR, STANCE_NONE
from argusense.relevance import Aspect

from conftest import make_post
from oracles import bf_tfidf_matrix


# -- reference NER ---------------------------------------------------------


def test_ner_multiword_run():
    mentions = reference_ner("I bought John Deere parts")
    assert [m.text for m in mentions] == ["John Deere"]
    assert mentions[0].entity_type == "other"


def test_ner_sentence_initial_single_word_excluded():
    assert reference_ner("Great harvest this year") == []
    # the same word mid-sentence is kept
    assert [m.text for m in reference_ner("a Great harvest")] == ["Great"]


def test_ner_empty_and_lowercase():
    assert reference_ner("") == []
    assert reference_ner("all lowercase words here") == []


def test_ner_stopwords_never_join_runs():
    assert [m.text for m in reference_ner("and then And John went home")] == ["John"]


def test_ner_runs_break_at_punctuation():
    texts = [m.text for m in reference_ner("We met Monsanto, Bayer reps")]
    assert texts == ["Monsanto", "Bayer"]


def test_ner_new_sentence_resets():
    # a single capitalized word straight after a period is sentence-initial
    # and excluded; the mid-sentence occurrence survives
    mentions = reference_ner("The demo ended. Monsanto was mentioned twice by Monsanto staff")
    assert [m.text for m in mentions] == ["Monsanto"]
    assert mentions[0].start > len("The demo ended. Monsanto")


def test_ner_spans_are_utf8_byte_offsets():
    text = "café near Monsanto"
    (m,) = reference_ner(text)
    raw = text.encode("utf-8")
    assert raw[m.start : m.end].decode("utf-8") == "Monsanto"
    assert m.start == len("café near ".encode("utf-8"))


# -- aspect discovery ---------------------------------------------------------


def roots_with(bodies_by_thread):
    return [
        make_post(f"r{i}", thread_id=tid, title=None, body=body)
        for i, (tid, body) in enumerate(bodies_by_thread)
    ]


def test_detect_aspects_counts_distinct_threads():
    posts = roots_with(
        [
            ("t1", "Monsanto again"),
            ("t2", "talking about Monsanto here"),
            ("t3", "yet more Monsanto news"),
            ("t4", "nothing relevant"),
            ("t5", "carrots and onions"),
        ]
    )
    found = detect_aspects(posts, min_count=2, backend=ReferenceBackend())
    assert [a.name for a in found] == ["Monsanto"]
    assert found[0].provenance == "discovered"
    assert found[0].keywords == ["monsanto"]


def test_detect_aspects_token_frequency_is_not_thread_frequency():
    posts = roots_with([("t1", "Monsanto Monsanto Monsanto Monsanto Monsanto")])
    assert detect_aspects(posts, min_count=2, backend=ReferenceBackend()) == []


def test_detect_aspects_min_count_larger_than_corpus():
    posts = roots_with([("t1", "Monsanto"), ("t2", "Monsanto")])
    assert detect_aspects(posts, min_count=99, backend=ReferenceBackend()) == []


def test_detect_aspects_ranking_and_ties():
    posts = roots_with(
        [
            ("t1", "the Zebra story and Apple news"),
            ("t2", "more Zebra items and Apple rumors"),
            ("t3", "final Zebra recap"),
        ]
    )
    found = detect_aspects(posts, min_count=2, backend=ReferenceBackend())
    assert [a.name for a in found] == ["Zebra", "Apple"]  # 3 threads before 2


def test_detect_aspects_requires_ner_capability():
    class NoNer:
        from argusense.backends.types import BackendHandle
        handle = BackendHandle(kind="reference", backend_id="x", capabilities=frozenset({"classify"}))

    with pytest.raises(CapabilityError):
        detect_aspects(roots_with([("t1", "x")]), 1, NoNer())


# -- lexicon classifier ---------------------------------------------------------


GMO = Aspect("GMO", ["gmo", "gmos"])
ASPECTS = [GMO, Aspect("Monsanto", ["monsanto"])]


def test_classifier_for_example():
    post = make_post("p", body="GMOs reduce pesticide use, therefore they help the environment")
    (label,) = lexicon_classify([post], ASPECTS, default_lexicon())
    assert label.stance == STANCE_FOR and label.aspect == "GMO"
    assert label.confidence == 1.0 and label.backend_id == "lexicon"


def test_classifier_against_example():
    post = make_post("p", body="Roundup causes cancer so I avoid GMO crops")
    (label,) = lexicon_classify([post], ASPECTS, default_lexicon())
    assert label.stance == STANCE_AGAINST and label.aspect == "GMO"


def test_classifier_no_aspect_example():
    (label,) = lexicon_classify([make_post("p", body="nice photo!")], ASPECTS, default_lexicon())
    assert label.stance == STANCE_NONE and label.aspect is None


def test_classifier_aspect_without_argument_keeps_aspect():
    post = make_post("p", body="saw a gmo label at the store")  # no premise marker
    (label,) = lexicon_classify([post], ASPECTS, default_lexicon())
    assert label.stance == STANCE_NONE and label.aspect == "GMO"


def test_classifier_balanced_cues_yield_none():
    post = make_post("p", body="gmo crops help but also harm, because reasons")
    (label,) = lexicon_classify([post], ASPECTS, default_lexicon())
    assert label.stance == STANCE_NONE and label.aspect == "GMO"


def test_classifier_earliest_aspect_wins():
    post = make_post("p", body="Monsanto sells gmo seed because it is profitable and good")
    (label,) = lexicon_classify([post], ASPECTS, default_lexicon())
    assert label.aspect == "Monsanto"


def test_classifier_title_participates():
    post = make_post("p", title="GMO question", body="is it safe? I say yes because the data is good")
    (label,) = lexicon_classify([post], ASPECTS, default_lexicon())
    assert label.aspect == "GMO" and label.stance == STANCE_FOR


def test_classify_dispatch_checks_aspects_and_determinism():
    backend = ReferenceBackend()
    posts = [make_post("p1", body="gmo is good because it helps"), make_post("p2", body="meh")]
    with pytest.raises(ValueError):
        classify(posts, [], backend)
    first = classify(posts, ASPECTS, backend)
    second = classify(posts, ASPECTS, backend)
    assert first == second
    for label in first:
        if label.stance != STANCE_NONE:
            assert label.aspect in {a.name for a in ASPECTS}


def test_lexicon_round_trip(tmp_path):
    lex = default_lexicon()
    lex.save(tmp_path)
    loaded = Lexicon.load(tmp_path)
    assert loaded == lex


# -- TF-IDF similarity ---------------------------------------------------------

FIXED_CORPUS = [
    "gmo crops reduce pesticide use on farms",
    "pesticide use harms pollinators badly",
    "gmo crops feed the world",
]
# frozen from the independent counter-based oracle (oracles.bf_tfidf_matrix)
FIXED_EXPECTED = {(0, 1): 0.27318606182531335, (0, 2): 0.3134834273358341, (1, 2): 0.0}


def test_tfidf_identical_texts():
    m = tfidf_pairwise(["gmo crops help", "gmo crops help"])
    assert m[0][1] == pytest.approx(1.0, abs=1e-9)


def test_tfidf_disjoint_texts():
    m = tfidf_pairwise(["alpha beta", "gamma delta"])
    assert m[0][1] == 0.0


def test_tfidf_fixed_corpus_matches_frozen_oracle_values():
    m = tfidf_pairwise(FIXED_CORPUS)
    for (i, j), expected in FIXED_EXPECTED.items():
        assert m[i][j] == pytest.approx(expected, abs=1e-9)
    oracle = bf_tfidf_matrix(FIXED_CORPUS, STOPWORDS)
    for i in range(3):
        for j in range(3):
            assert m[i][j] == pytest.approx(oracle[i][j], abs=1e-9)


def test_tfidf_zero_token_text_convention():
    m = tfidf_pairwise(["the and of", "real words here"])
    assert m[0][0] == 1.0  # unit diagonal by convention
    assert m[0][1] == 0.0


words = st.sampled_from(
    ["gmo", "crops", "soil", "monsanto", "help", "harm", "the", "of", "yield", "water"]
)
texts = st.lists(words, min_size=0, max_size=8).map(" ".join)


@settings(max_examples=60, deadline=None)
@given(st.lists(texts, min_size=1, max_size=5))
def test_tfidf_matrix_properties_and_oracle(corpus):
    m = tfidf_pairwise(corpus)
    oracle = bf_tfidf_matrix(corpus, STOPWORDS)
    n = len(corpus)
    for i in range(n):
        assert m[i][i] == 1.0
        for j in range(n):
            assert m[i][j] == m[j][i]
            assert 0.0 <= m[i][j] <= 1.0
            if i != j:
                assert m[i][j] == pytest.approx(oracle[i][j], abs=1e-9)
