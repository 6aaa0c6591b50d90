import numpy as np
import pytest

from nmfkit.datasets import SYNONYMY_COUNTS, SYNONYMY_DOC_IDS, SYNONYMY_TERMS
from nmfkit.textprep import (
    CLUSTERING_OPTIONS,
    Corpus,
    build_matrix,
    build_query_matrix,
    porter_stem,
    remove_stopwords,
    tokenize,
)

# stemmer sample: inputs with their final stems under the classic
# five-step algorithm (each pair hand-traced through the published rules)
PORTER_PAIRS = [
    # plural handling
    ("caresses", "caress"), ("ponies", "poni"), ("ties", "ti"),
    ("caress", "caress"), ("cats", "cat"), ("runs", "run"), ("items", "item"),
    ("references", "refer"), ("universities", "univers"), ("meetings", "meet"),
    # -eed / -ed / -ing and their cleanup
    ("feed", "feed"), ("agreed", "agre"), ("plastered", "plaster"),
    ("bled", "bled"), ("motoring", "motor"), ("sing", "sing"),
    ("conflated", "conflat"), ("troubled", "troubl"), ("sized", "size"),
    ("hopping", "hop"), ("tanned", "tan"), ("falling", "fall"),
    ("hissing", "hiss"), ("fizzed", "fizz"), ("failing", "fail"),
    ("filing", "file"), ("running", "run"), ("singing", "sing"),
    ("connected", "connect"), ("connecting", "connect"), ("argued", "argu"),
    ("arguing", "argu"), ("flying", "fly"), ("dying", "dy"), ("crying", "cry"),
    # terminal y
    ("happy", "happi"), ("sky", "sky"),
    # double-suffix rewrites
    ("relational", "relat"), ("conditional", "condit"), ("rational", "ration"),
    ("valenci", "valenc"), ("hesitanci", "hesit"), ("digitizer", "digit"),
    ("conformabli", "conform"), ("radicalli", "radic"),
    ("differentli", "differ"), ("vileli", "vile"), ("analogousli", "analog"),
    ("vietnamization", "vietnam"), ("predication", "predic"),
    ("operator", "oper"), ("feudalism", "feudal"), ("decisiveness", "decis"),
    ("hopefulness", "hope"), ("callousness", "callous"),
    ("formaliti", "formal"), ("sensitiviti", "sensit"),
    ("sensibiliti", "sensibl"), ("organization", "organ"),
    ("organizations", "organ"), ("nationally", "nation"),
    ("generalization", "gener"), ("realization", "realiz"),
    ("itemization", "item"), ("traditional", "tradit"),
    # -ful / -ness / -icate / -ative / -alize / -iciti / -ical
    ("triplicate", "triplic"), ("formative", "form"), ("formalize", "formal"),
    ("electriciti", "electr"), ("electrical", "electr"), ("hopeful", "hope"),
    ("goodness", "good"),
    # residual suffixes
    ("revival", "reviv"), ("allowance", "allow"), ("inference", "infer"),
    ("airliner", "airlin"), ("gyroscopic", "gyroscop"),
    ("adjustable", "adjust"), ("defensible", "defens"), ("irritant", "irrit"),
    ("replacement", "replac"), ("adjustment", "adjust"),
    ("dependent", "depend"), ("adoption", "adopt"), ("homologou", "homolog"),
    ("communism", "commun"), ("activate", "activ"), ("angulariti", "angular"),
    ("homologous", "homolog"), ("effective", "effect"),
    ("bowdlerize", "bowdler"), ("connection", "connect"),
    ("connections", "connect"), ("national", "nation"),
    ("university", "univers"), ("reference", "refer"),
    ("argument", "argument"), ("arguments", "argument"),
    # terminal e and double l
    ("probate", "probat"), ("rate", "rate"), ("cease", "ceas"),
    ("controll", "control"), ("roll", "roll"),
]


class TestTokenize:
    def test_possessive(self):
        assert tokenize("Mark Twain's bank") == ["mark", "twain", "bank"]

    def test_empty(self):
        assert tokenize("") == []

    def test_short_tokens_dropped(self):
        assert tokenize("a I x") == []

    def test_splits_on_nonletters(self):
        assert tokenize("foo-bar_baz 42nd") == ["foo", "bar", "baz", "nd"]


class TestStopwords:
    def test_basic(self):
        assert remove_stopwords(["the", "bank"]) == ["bank"]

    def test_empty(self):
        assert remove_stopwords([]) == []

    def test_no_stopwords_unchanged(self):
        assert remove_stopwords(["bank", "river"]) == ["bank", "river"]

    def test_custom_stoplist(self):
        assert remove_stopwords(["alpha", "beta"], {"alpha"}) == ["beta"]


class TestPorter:
    def test_sample_vocabulary(self):
        failures = [(w, porter_stem(w), expect)
                    for w, expect in PORTER_PAIRS if porter_stem(w) != expect]
        assert not failures, f"stemmer mismatches: {failures}"

    def test_short_words_unchanged(self):
        assert porter_stem("is") == "is"
        assert porter_stem("be") == "be"


class TestBuildMatrix:
    def test_singleton_pruning(self):
        corpus = Corpus([("d1", "bank money"), ("d2", "bank river")])
        tdm = build_matrix(corpus, prune_singletons=True, weighting="raw")
        assert tdm.vocabulary == ["bank"]
        np.testing.assert_array_equal(tdm.matrix, [[1.0, 1.0]])

    def test_log_weighting(self):
        corpus = Corpus([("d1", "bank bank money"), ("d2", "river")])
        tdm = build_matrix(corpus, weighting="log")
        raw = build_matrix(corpus, weighting="raw")
        np.testing.assert_allclose(tdm.matrix, np.log(raw.matrix + 1.0))
        assert np.log(0.0 + 1.0) == 0.0
        assert np.log((np.e - 1.0) + 1.0) == pytest.approx(1.0)

    def test_log_weighting_monotone(self):
        corpus = Corpus([("d1", "bank bank bank money"), ("d2", "bank river")])
        raw = build_matrix(corpus, weighting="raw").matrix
        logged = build_matrix(corpus, weighting="log").matrix
        assert np.all(np.sign(np.diff(raw, axis=1))
                      == np.sign(np.diff(logged, axis=1)))

    def test_reconstructs_counts_table(self):
        # repeat each term as often as its count: raw weighting recovers
        # the embedded synonymy matrix exactly (rows follow sorted vocab)
        docs = []
        for j, doc_id in enumerate(SYNONYMY_DOC_IDS):
            words = []
            for i, term in enumerate(SYNONYMY_TERMS):
                words += [term] * int(SYNONYMY_COUNTS[i, j])
            docs.append((doc_id, " ".join(words)))
        tdm = build_matrix(Corpus(docs), weighting="raw")
        assert tdm.vocabulary == sorted(SYNONYMY_TERMS)
        reorder = [sorted(SYNONYMY_TERMS).index(t) for t in SYNONYMY_TERMS]
        np.testing.assert_array_equal(tdm.matrix[reorder, :], SYNONYMY_COUNTS)

    def test_deterministic(self):
        corpus = Corpus([("d1", "stream bank water"), ("d2", "money bank loan")])
        a = build_matrix(corpus, **CLUSTERING_OPTIONS)
        b = build_matrix(corpus, **CLUSTERING_OPTIONS)
        np.testing.assert_array_equal(a.matrix, b.matrix)
        assert a.vocabulary == b.vocabulary

    def test_pruning_keeps_shared_terms(self):
        corpus = Corpus([("d1", "bank river tide"), ("d2", "bank tide"),
                         ("d3", "meadow")])
        tdm = build_matrix(corpus, prune_singletons=True, weighting="raw")
        assert set(tdm.vocabulary) == {"bank", "tide"}

    def test_empty_vocabulary_raises(self):
        with pytest.raises(ValueError):
            build_matrix(Corpus([("d1", "a"), ("d2", "I")]))

    def test_empty_corpus_raises(self):
        with pytest.raises(ValueError):
            build_matrix(Corpus([]))

    def test_duplicate_doc_ids_rejected(self):
        with pytest.raises(ValueError):
            Corpus([("d1", "x y"), ("d1", "z w")])

    def test_stemming_merges_variants(self):
        corpus = Corpus([("d1", "connected connection"), ("d2", "connecting")])
        tdm = build_matrix(corpus, stem=True, weighting="raw")
        assert tdm.vocabulary == ["connect"]
        np.testing.assert_array_equal(tdm.matrix, [[2.0, 1.0]])

    def test_bad_options(self):
        corpus = Corpus([("d1", "bank money")])
        with pytest.raises(ValueError):
            build_matrix(corpus, weighting="tfidf")
        with pytest.raises(ValueError):
            build_matrix(corpus, normalize="l2")


class TestQueryMatrix:
    def test_vocabulary_alignment(self):
        corpus = Corpus([("d1", "bank money loan"), ("d2", "river bank")])
        tdm = build_matrix(corpus, weighting="raw")
        Q, ids = build_query_matrix([("q1", "money bank"), ("q2", "unknown")], tdm)
        assert ids == ["q1", "q2"]
        row = {t: Q[0, i] for i, t in enumerate(tdm.vocabulary)}
        assert row["money"] == 1.0 and row["bank"] == 1.0 and row["river"] == 0.0
        assert np.all(Q[1] == 0.0)   # out-of-vocabulary terms ignored

    def test_weighting_follows_matrix(self):
        corpus = Corpus([("d1", "bank money"), ("d2", "river bank")])
        tdm = build_matrix(corpus, weighting="log")
        Q, _ = build_query_matrix([("q1", "bank bank")], tdm)
        assert Q.max() == pytest.approx(np.log(3.0))

    def test_queries_never_normalized(self):
        corpus = Corpus([("d1", "bank money"), ("d2", "river bank")])
        tdm = build_matrix(corpus, weighting="raw", normalize="xu")
        Q, _ = build_query_matrix([("q1", "bank")], tdm)
        assert Q.max() == 1.0
