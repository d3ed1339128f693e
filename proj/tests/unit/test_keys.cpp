#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "bibdedup/keys.hpp"
#include "bibdedup/rng.hpp"
#include "bibdedup/synth.hpp"
#include "bibdedup/textkit.hpp"

using namespace bibdedup;

namespace {

// The worked example record: fourteen authors, a long mixed-case title,
// uppercase journal.
Record hybrid_record() {
    Record r;
    r.id = "hybrid";
    r.source = Source::WOS;
    r.authors = {"Ayral-Kaloustian, S", "Gu, JX",      "Lucas, J",  "Cinque, M",
                 "Gaydos, C",           "Zask, A",     "Chaudhary, I", "Wang, JY",
                 "Di, L",               "Young, M",    "Ruppen, M",    "Mansour, TS",
                 "Gibbons, JJ",         "Yu, K"};
    r.first_author = "Ayral-Kaloustian";
    r.title =
        "Hybrid Inhibitors of Phosphatidylinositol 3-Kinase (PI3K) and the Mammalian Target "
        "of Rapamycin (mTOR): Design, Synthesis, and Superior Antitumor Activity of Novel "
        "Wortmannin-Rapamycin Conjugates";
    r.journal = "JOURNAL OF MEDICINAL CHEMISTRY";
    r.year = 2010;
    return r;
}

Record titled(std::string title) {
    Record r;
    r.id = "t";
    r.title = std::move(title);
    return r;
}

Corpus single_title_corpus(const std::vector<std::string>& titles) {
    Corpus c(Source::PM);
    for (std::size_t i = 0; i < titles.size(); ++i) {
        Record r;
        r.id = std::to_string(i + 1);
        r.title = titles[i];
        c.add(std::move(r));
    }
    return c;
}

} // namespace

TEST_CASE("key_af takes the first author surname") {
    CHECK(key_af(hybrid_record()).value == "ayral-kaloustian");
    Record empty;
    CHECK(key_af(empty).value == "");
    Record scrascia;
    scrascia.authors = {"Scrascia, Maria"};
    CHECK(key_af(scrascia).value == "scrascia");
}

TEST_CASE("key_tf lowercases and collapses whitespace") {
    const auto key = key_tf(hybrid_record());
    REQUIRE(key.has_value());
    CHECK(key->value ==
          "hybrid inhibitors of phosphatidylinositol 3-kinase (pi3k) and the mammalian target "
          "of rapamycin (mtor): design, synthesis, and superior antitumor activity of novel "
          "wortmannin-rapamycin conjugates");
    CHECK(key_tf(titled("TOR"))->value == "tor");
    Record no_title;
    CHECK(!key_tf(no_title).has_value());
}

TEST_CASE("key_mtf removes every space") {
    const auto key = key_mtf(hybrid_record());
    REQUIRE(key.has_value());
    CHECK(key->value ==
          "hybridinhibitorsofphosphatidylinositol3-kinase(pi3k)andthemammaliantargetof"
          "rapamycin(mtor):design,synthesis,andsuperiorantitumoractivityofnovel"
          "wortmannin-rapamycinconjugates");
    CHECK(key_mtf(titled("a b"))->value == "ab");
    // a title differing only by an inserted space matches its unspaced twin
    CHECK(key_mtf(titled("rapamycin conjugates"))->value ==
          key_mtf(titled("rapa mycin conjugates"))->value);
}

TEST_CASE("key_ardf concatenates author, journal and year") {
    CHECK(key_ardf(hybrid_record()).value ==
          "ayral-kaloustian-journal of medicinal chemistry-2010");
    Record empty;
    CHECK(key_ardf(empty).value == "--");
    Record a = hybrid_record(), b = hybrid_record();
    a.year = 2009;
    CHECK(key_ardf(a).value != key_ardf(b).value);
}

TEST_CASE("key_ssf takes leading bigrams of title words plus the author bigram") {
    const Record r = hybrid_record();
    CHECK(key_ssf(r, 10)->value == "hy in of ph 3- (p an th ma ta ay");
    CHECK(key_ssf(r, 8)->value == "hy in of ph 3- (p an th ay");

    Record short_one;
    short_one.id = "s";
    short_one.title = "tor";
    short_one.authors = {"x"};
    CHECK(key_ssf(short_one)->value == "to x");

    Record no_author = r;
    no_author.authors.clear();
    no_author.first_author.clear();
    CHECK(!key_ssf(no_author).has_value());
    Record no_title = r;
    no_title.title.reset();
    CHECK(!key_ssf(no_title).has_value());
    CHECK_THROWS_AS(key_ssf(r, 0), std::invalid_argument);
}

TEST_CASE("key_ssf token count is min(n_max, words) + 1") {
    Rng rng(41);
    for (int iter = 0; iter < 100; ++iter) {
        Record r;
        r.id = "p";
        r.authors = {"Someone, Q"};
        const std::size_t words = 1 + rng.below(14);
        std::string title;
        for (std::size_t w = 0; w < words; ++w) {
            if (w) title += " ";
            for (std::size_t k = 0, len = 1 + rng.below(6); k < len; ++k)
                title.push_back(static_cast<char>('a' + rng.below(26)));
        }
        r.title = title;
        const std::size_t n_max = 1 + rng.below(12);
        const auto key = key_ssf(r, n_max);
        REQUIRE(key.has_value());
        const std::size_t tokens =
            1 + std::count(key->value.begin(), key->value.end(), ' ');
        CHECK(tokens == std::min(n_max, words) + 1);
    }
}

TEST_CASE("key_mgf is the unique scan of the title") {
    CHECK(key_mgf(hybrid_record())->value == "hybridntosfpal3kemgcuvwj");
    CHECK(key_mgf(titled("tor"))->value == "tor");
    CHECK(key_mgf(titled("Tor tor TOR"))->value == "tor");
    Record no_title;
    CHECK(!key_mgf(no_title).has_value());
}

TEST_CASE("key_smgf sorts digits before letters") {
    CHECK(key_smgf(hybrid_record())->value == "3abcdefghijklmnoprstuvwy");
    CHECK(key_smgf(titled("tor"))->value == "ort");
    // anagram titles collide: the reason SMGF misfires
    CHECK(key_smgf(titled("dog"))->value == key_smgf(titled("god"))->value);
}

TEST_CASE("smgf characters equal sorted mgf characters") {
    Rng rng(59);
    for (int iter = 0; iter < 200; ++iter) {
        std::string title;
        for (std::size_t k = 0, len = rng.below(40); k < len; ++k)
            title.push_back("abc defg-hij(k)2 47"[rng.below(19)]);
        const Record r = titled(title);
        const auto mgf = key_mgf(r);
        const auto smgf = key_smgf(r);
        REQUIRE(mgf.has_value());
        REQUIRE(smgf.has_value());
        std::string sorted = mgf->value;
        std::sort(sorted.begin(), sorted.end());
        CHECK(smgf->value == sorted);
    }
}

TEST_CASE("keys are case-insensitive in the title") {
    Record r = hybrid_record();
    Record lower = r;
    lower.title = to_lower_ascii(*r.title);
    const KeyParams params;
    for (Method m : {Method::TF, Method::MTF, Method::SSF, Method::MGF, Method::SMGF}) {
        const auto a = make_key(r, m, params);
        const auto b = make_key(lower, m, params);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(a->value == b->value);
    }
}

TEST_CASE("build_anchor_dict counts title-word bigrams") {
    SUBCASE("single repeated bigram") {
        const Corpus c = single_title_corpus({"aaaa", "aaaa"});
        const auto dict = build_anchor_dict({&c}, 1, {});
        CHECK(dict.bigrams == std::vector<std::string>{"aa"});
        CHECK(dict.counts == std::vector<std::uint64_t>{6}); // 3 per title
    }
    SUBCASE("stoplist entries never appear") {
        const Corpus c = single_title_corpus({"at it is th an", "at it is th an re"});
        const auto dict = build_anchor_dict({&c}, 3, {"at", "it", "is"});
        for (const auto& bg : dict.bigrams) {
            CHECK(bg != "at");
            CHECK(bg != "it");
            CHECK(bg != "is");
        }
    }
    SUBCASE("ties break lexicographically") {
        const Corpus c = single_title_corpus({"zz yy xx"});
        const auto dict = build_anchor_dict({&c}, 2, {});
        CHECK(dict.bigrams == std::vector<std::string>{"xx", "yy"});
    }
    SUBCASE("shortfall raises") {
        const Corpus c = single_title_corpus({"ab"});
        CHECK_THROWS_WITH_AS(build_anchor_dict({&c}, 50, {}),
                             "build_anchor_dict: need 50 bigrams, corpora provide 1 after "
                             "stoplist",
                             std::runtime_error);
    }
    SUBCASE("only alphabet bigrams are counted") {
        const Corpus c = single_title_corpus({"a-b a-b"});
        // "a-" and "-b" are not alphabet pairs; no bigram survives
        CHECK_THROWS_AS(build_anchor_dict({&c}, 1, {}), std::runtime_error);
    }
}

TEST_CASE("key_bgf transcodes overlapping dictionary bigrams") {
    AnchorDict dict;
    dict.bigrams = {"th"};
    dict.size = 1;
    dict.rebuild_lookup();
    CHECK(key_bgf(titled("thth"), dict)->value == "th th");
    CHECK(key_bgf(titled("xyz"), dict)->value == "");
    Record no_title;
    CHECK(!key_bgf(no_title, dict).has_value());

    // word boundaries reset the scan: "t h" has no "th" bigram
    CHECK(key_bgf(titled("t h"), dict)->value == "");
}

TEST_CASE("anchor dictionary save/load round trip") {
    const Corpus c = single_title_corpus({"there and there", "another anthem"});
    const auto dict = build_anchor_dict({&c}, 5, {});
    std::ostringstream out;
    dict.save(out);
    std::istringstream in(out.str());
    const auto loaded = AnchorDict::load(in);
    CHECK(loaded.bigrams == dict.bigrams);
    CHECK(loaded.contains(dict.bigrams.front()));

    std::istringstream bad("xyz\n");
    CHECK_THROWS_AS(AnchorDict::load(bad), std::runtime_error);
    std::istringstream dup("th\nth\n");
    CHECK_THROWS_AS(AnchorDict::load(dup), std::runtime_error);
}

TEST_CASE("make_key excludes records the method cannot fingerprint") {
    const KeyParams params;
    Record bare;
    bare.id = "x";
    CHECK(!make_key(bare, Method::AF, params).has_value());
    CHECK(!make_key(bare, Method::ARDF, params).has_value()); // "--" skeleton
    CHECK(!make_key(bare, Method::TF, params).has_value());

    Record dated = bare;
    dated.year = 1999;
    CHECK(make_key(dated, Method::ARDF, params)->value == "--1999");

    Record punct = titled("()[]");
    CHECK(!make_key(punct, Method::MGF, params).has_value()); // empty scan

    CHECK_THROWS_AS(make_key(hybrid_record(), Method::BGF, params), std::invalid_argument);
    CHECK_THROWS_AS(make_key(hybrid_record(), Method::SVS, params), std::invalid_argument);

    KeyParams with_dict;
    with_dict.anchor = std::make_shared<AnchorDict>(synthetic_anchor_dict());
    // no dictionary bigram in this title: BGF yields no key at engine level
    CHECK(!make_key(titled("xyz"), Method::BGF, with_dict).has_value());
}

TEST_CASE("method names round trip") {
    for (Method m : all_methods()) {
        const auto parsed = method_from_name(method_name(m));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == m);
    }
    CHECK(!method_from_name("nope").has_value());
    CHECK(is_key_method(Method::BGF));
    CHECK(!is_key_method(Method::SVS));
    CHECK(key_methods().size() == 8);
}

TEST_CASE("key construction is deterministic") {
    const Record r = hybrid_record();
    KeyParams params;
    params.anchor = std::make_shared<AnchorDict>(synthetic_anchor_dict());
    for (Method m : key_methods()) {
        const auto a = make_key(r, m, params);
        const auto b = make_key(r, m, params);
        CHECK(a == b);
    }
}
