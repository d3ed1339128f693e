#include "doctest.h"

#include <cmath>
#include <map>
#include <sstream>

#include "bibdedup/rng.hpp"
#include "bibdedup/simvec.hpp"

using namespace bibdedup;

namespace {

Record doc(std::string id, std::string title, std::string abstract = "") {
    Record r;
    r.id = std::move(id);
    r.title = std::move(title);
    if (!abstract.empty()) r.abstract = std::move(abstract);
    return r;
}

Corpus corpus_of(std::vector<Record> records) {
    Corpus c(Source::PM);
    for (auto& r : records) c.add(std::move(r));
    return c;
}

// Dense brute-force cosine over full dictionary-sized vectors.
double dense_cosine(const SparseVector& a, const SparseVector& b) {
    std::vector<double> va(a.dict_size, 0.0), vb(b.dict_size, 0.0);
    for (std::size_t i = 0; i < a.indices.size(); ++i)
        va[a.indices[i]] = a.weights.empty() ? 1.0 : a.weights[i];
    for (std::size_t i = 0; i < b.indices.size(); ++i)
        vb[b.indices[i]] = b.weights.empty() ? 1.0 : b.weights[i];
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        dot += va[i] * vb[i];
        na += va[i] * va[i];
        nb += vb[i] * vb[i];
    }
    if (na == 0 || nb == 0) return 0.0;
    return std::min(1.0, dot / (std::sqrt(na) * std::sqrt(nb)));
}

// Nested-loop set Jaccard.
double loop_jaccard(const CollocSet& a, const CollocSet& b) {
    if (a.elems.empty() && b.elems.empty()) return 1.0;
    std::size_t inter = 0, uni = b.elems.size();
    for (const auto& x : a.elems) {
        bool found = false;
        for (const auto& y : b.elems)
            if (x == y) found = true;
        if (found) ++inter;
        else ++uni;
    }
    return static_cast<double>(inter) / static_cast<double>(uni);
}

SparseVector binary_vector(std::size_t dict_size, std::vector<std::uint32_t> indices) {
    return SparseVector{dict_size, std::move(indices), {}};
}

} // namespace

TEST_CASE("build_word_dictionary applies the frequency cut") {
    const Corpus c = corpus_of({doc("1", "rapamycin study alpha"), doc("2", "rapamycin trial"),
                                doc("3", "rapamycin report beta", "alpha alpha")});
    const auto dict = build_word_dictionary({&c});
    CHECK(dict.rank.count("rapamycin") == 1); // 3 occurrences
    CHECK(dict.rank.count("alpha") == 1);     // 1 + 2 in the abstract
    CHECK(dict.rank.count("study") == 0);     // single occurrence
    CHECK(dict.n_docs == 3);

    // a dictionary where nothing survives the cut raises
    const Corpus sparse = corpus_of({doc("1", "one"), doc("2", "two")});
    CHECK_THROWS_AS(build_word_dictionary({&sparse}), std::runtime_error);
    CHECK_THROWS_AS(build_word_dictionary({}), std::invalid_argument);
}

TEST_CASE("build_word_dictionary matches a hand-counted table") {
    std::vector<Record> docs;
    const char* titles[10] = {
        "tor signal pathway",    "tor growth control",   "signal pathway review",
        "growth factor signal",  "pathway analysis tor", "control group study",
        "growth pathway model",  "tor control signal",   "study of growth",
        "model of tor pathway",
    };
    for (int i = 0; i < 10; ++i) docs.push_back(doc(std::to_string(i), titles[i]));
    const Corpus c = corpus_of(std::move(docs));

    // brute-force count oracle
    std::map<std::string, int> counts;
    for (const Record& r : c)
        for (const auto& w : tokenize_words(*r.title, default_text_config(),
                                            SplitMode::Delimiters))
            ++counts[w];

    const auto dict = build_word_dictionary({&c});
    for (const auto& [word, n] : counts) {
        if (n >= 3) {
            REQUIRE(dict.rank.count(word) == 1);
            CHECK(dict.counts[dict.rank.at(word)] == static_cast<std::uint64_t>(n));
        } else {
            CHECK(dict.rank.count(word) == 0);
        }
    }
    // dense ranks in lexicographic order
    for (std::size_t i = 0; i < dict.attrs.size(); ++i) CHECK(dict.rank.at(dict.attrs[i]) == i);
    for (std::size_t i = 1; i < dict.attrs.size(); ++i) CHECK(dict.attrs[i - 1] < dict.attrs[i]);
}

TEST_CASE("build_colloc_dictionary indexes every collocation without a cut") {
    const Corpus c = corpus_of({doc("1", "mammalian target of rapamycin")});
    const auto dict = build_colloc_dictionary({&c});
    CHECK(dict.size() == 5);
    CHECK(dict.rank.count("mammalian target") == 1);
    CHECK(dict.rank.count("target of rapamycin") == 1);

    const Corpus dup = corpus_of(
        {doc("1", "mammalian target of rapamycin"), doc("2", "mammalian target of rapamycin")});
    const auto dict2 = build_colloc_dictionary({&dup});
    CHECK(dict2.attrs == dict.attrs);
    CHECK(dict2.rank == dict.rank);

    CHECK_THROWS_AS(build_colloc_dictionary({}), std::invalid_argument);
}

TEST_CASE("doc_vector marks dictionary attributes present in the document") {
    const Corpus c = corpus_of({doc("1", "alpha beta gamma"), doc("2", "alpha beta delta"),
                                doc("3", "alpha beta epsilon")});
    const auto dict = build_word_dictionary({&c}); // alpha, beta survive
    REQUIRE(dict.size() == 2);

    const auto v1 = doc_vector(doc("x", "alpha zeta"), dict);
    CHECK(v1.indices == std::vector<std::uint32_t>{dict.rank.at("alpha")});
    const auto v0 = doc_vector(doc("y", "nothing known"), dict);
    CHECK(v0.indices.empty());

    const auto v2 = doc_vector(doc("z", "beta alpha beta"), dict);
    CHECK(v2.indices == std::vector<std::uint32_t>{0, 1}); // sorted, deduplicated
}

TEST_CASE("cosine on binary vectors") {
    const auto a = binary_vector(8, {0, 1, 2, 3});
    CHECK(cosine(a, a) == doctest::Approx(1.0));
    const auto b = binary_vector(8, {4, 5, 6, 7});
    CHECK(cosine(a, b) == doctest::Approx(0.0));
    // |A ∩ B| = 2, |A| = |B| = 4 -> 2/4
    const auto c = binary_vector(8, {2, 3, 4, 5});
    CHECK(cosine(a, c) == doctest::Approx(0.5));
    const auto zero = binary_vector(8, {});
    CHECK(cosine(a, zero) == 0.0);
    CHECK_THROWS_AS(cosine(a, binary_vector(9, {0})), std::invalid_argument);
}

TEST_CASE("jaccard on collocation sets") {
    CollocSet a{{"x y", "y z", "z w"}};
    CHECK(jaccard(a, a) == doctest::Approx(1.0));
    CollocSet b{{"p q", "q r"}};
    CHECK(jaccard(a, b) == doctest::Approx(0.0));
    CollocSet c{{"x y", "y z", "z w", "extra one"}};
    CHECK(jaccard(a, c) == doctest::Approx(0.75)); // 3 / 4
    CollocSet empty;
    CHECK(jaccard(empty, empty) == 1.0);
    CHECK(jaccard(a, empty) == 0.0);
    CHECK(jaccard(empty, a) == 0.0);
}

TEST_CASE("similarity scores agree with brute-force oracles") {
    Rng rng(2024);
    const char* vocab[12] = {"tor",     "growth",  "signal", "pathway", "cell", "kinase",
                             "protein", "binding", "target", "complex", "assay", "model"};
    std::vector<Record> docs;
    for (int i = 0; i < 50; ++i) {
        std::string title;
        const std::size_t len = 3 + rng.below(8);
        for (std::size_t w = 0; w < len; ++w) {
            if (w) title += " ";
            title += vocab[rng.below(12)];
        }
        docs.push_back(doc(std::to_string(i), title));
    }
    const Corpus c = corpus_of(std::move(docs));
    const auto dict = build_word_dictionary({&c}, 1);

    std::vector<SparseVector> vecs;
    std::vector<CollocSet> sets;
    for (const Record& r : c) {
        vecs.push_back(doc_vector(r, dict));
        sets.push_back(collocation_set(r));
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i; j < c.size(); ++j) {
            const double fast = cosine(vecs[i], vecs[j]);
            CHECK(fast == doctest::Approx(dense_cosine(vecs[i], vecs[j])).epsilon(1e-12));
            CHECK(cosine(vecs[j], vecs[i]) == fast); // symmetry
            CHECK(fast >= 0.0);
            CHECK(fast <= 1.0);
            const double jac = jaccard(sets[i], sets[j]);
            CHECK(jac == loop_jaccard(sets[i], sets[j])); // exact
            CHECK(jaccard(sets[j], sets[i]) == jac);
            if (i == j && !sets[i].elems.empty()) CHECK(jac == 1.0);
        }
    }
}

TEST_CASE("jaccard monotonicity") {
    Rng rng(7);
    for (int iter = 0; iter < 100; ++iter) {
        CollocSet a, b;
        for (int k = 0, n = static_cast<int>(rng.below(10)); k < n; ++k)
            a.elems.insert("a" + std::to_string(rng.below(20)));
        for (int k = 0, n = static_cast<int>(rng.below(10)); k < n; ++k)
            b.elems.insert("a" + std::to_string(rng.below(20)));
        const double base = jaccard(a, b);

        CollocSet a_shared = a, b_shared = b;
        a_shared.elems.insert("shared new");
        b_shared.elems.insert("shared new");
        CHECK(jaccard(a_shared, b_shared) >= base);

        CollocSet a_extra = a;
        a_extra.elems.insert("only in a");
        if (!b.elems.empty()) CHECK(jaccard(a_extra, b) <= base);
    }
}

TEST_CASE("tf-idf weighting is optional and off by default") {
    const Corpus c = corpus_of({doc("1", "alpha beta"), doc("2", "alpha beta"),
                                doc("3", "alpha beta"), doc("4", "alpha gamma gamma gamma")});
    const auto dict = build_word_dictionary({&c}, 3);
    REQUIRE(dict.rank.count("alpha") == 1);
    REQUIRE(dict.rank.count("gamma") == 1);

    const auto plain = doc_vector(c.at(3), dict);
    CHECK(plain.weights.empty());

    const auto weighted = doc_vector(c.at(3), dict, true);
    REQUIRE(weighted.weights.size() == weighted.indices.size());
    // alpha appears in every document: idf 0; gamma in one of four: tf 3
    const double idf_gamma = std::log(4.0 / 1.0);
    for (std::size_t i = 0; i < weighted.indices.size(); ++i) {
        if (weighted.indices[i] == dict.rank.at("gamma"))
            CHECK(weighted.weights[i] == doctest::Approx(3.0 * idf_gamma));
        if (weighted.indices[i] == dict.rank.at("alpha"))
            CHECK(weighted.weights[i] == doctest::Approx(0.0));
    }
}

TEST_CASE("dictionary dump format") {
    const Corpus c = corpus_of({doc("1", "beta alpha"), doc("2", "alpha beta"),
                                doc("3", "beta alpha")});
    const auto dict = build_word_dictionary({&c});
    std::ostringstream out;
    dict.dump(out);
    CHECK(out.str() == "alpha\t0\t3\nbeta\t1\t3\n");
}
