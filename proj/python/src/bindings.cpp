#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bibdedup/engine.hpp"
#include "bibdedup/eval.hpp"
#include "bibdedup/simvec.hpp"
#include "bibdedup/synth.hpp"
#include "bibdedup/textkit.hpp"

namespace py = pybind11;
using namespace bibdedup;

namespace {

std::vector<const Corpus*> corpus_ptrs(const std::vector<const Corpus*>& v) { return v; }

KeyParams key_params(std::size_t ssf_n, const AnchorDict* anchor) {
    KeyParams p;
    p.ssf_n = ssf_n;
    if (anchor) p.anchor = std::make_shared<AnchorDict>(*anchor);
    return p;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "bibliographic record deduplication: parsers, fingerprint keys, "
              "similarity scoring, merge and evaluation";

    py::enum_<Source>(m, "Source")
        .value("PM", Source::PM)
        .value("WOS", Source::WOS)
        .value("OTHER", Source::Other);

    py::class_<Record>(m, "Record")
        .def(py::init<>())
        .def_readwrite("id", &Record::id)
        .def_readwrite("source", &Record::source)
        .def_readwrite("authors", &Record::authors)
        .def_readwrite("first_author", &Record::first_author)
        .def_readwrite("title", &Record::title)
        .def_readwrite("journal", &Record::journal)
        .def_readwrite("year", &Record::year)
        .def_readwrite("abstract", &Record::abstract)
        .def_readwrite("raw_fields", &Record::raw_fields)
        .def("__eq__", [](const Record& a, const Record& b) { return a == b; })
        .def("__repr__", [](const Record& r) {
            return "<Record id=" + r.id + " source=" + std::string(source_name(r.source)) + ">";
        });

    py::class_<Corpus>(m, "Corpus")
        .def(py::init<Source>(), py::arg("source") = Source::Other)
        .def("add", &Corpus::add)
        .def("source", &Corpus::source)
        .def("find",
             [](const Corpus& c, const std::string& id) -> std::optional<Record> {
                 const Record* r = c.find(id);
                 if (!r) return std::nullopt;
                 return *r;
             })
        .def("__len__", &Corpus::size)
        .def("__getitem__",
             [](const Corpus& c, std::size_t i) {
                 if (i >= c.size()) throw py::index_error();
                 return c.at(i);
             })
        .def(
            "__iter__",
            [](const Corpus& c) { return py::make_iterator(c.begin(), c.end()); },
            py::keep_alive<0, 1>());

    py::class_<ParseSkip>(m, "ParseSkip")
        .def_readonly("byte_begin", &ParseSkip::byte_begin)
        .def_readonly("byte_end", &ParseSkip::byte_end)
        .def_readonly("reason", &ParseSkip::reason);

    py::class_<ParseResult>(m, "ParseResult")
        .def_readonly("corpus", &ParseResult::corpus)
        .def_readonly("skipped", &ParseResult::skipped);

    py::register_exception<ParseError>(m, "ParseFormatError");

    m.def("parse_medline", [](const std::string& text) { return parse_medline(text); },
          "Parse MEDLINE flat text into a corpus.");
    m.def("parse_isi", [](const std::string& text) { return parse_isi(text); },
          "Parse an ISI export into a corpus.");
    m.def("read_canonical", [](const std::string& text) { return read_canonical(text); });
    m.def("write_canonical", [](const Corpus& c) { return write_canonical(c); },
          "Serialize a corpus to the canonical TAG<TAB>value form.");
    m.def("parse_file", &parse_file, py::arg("path"), py::arg("format") = std::nullopt);
    m.def("first_author_surname", &first_author_surname);

    py::enum_<Method>(m, "Method")
        .value("AF", Method::AF)
        .value("TF", Method::TF)
        .value("MTF", Method::MTF)
        .value("ARDF", Method::ARDF)
        .value("SSF", Method::SSF)
        .value("MGF", Method::MGF)
        .value("SMGF", Method::SMGF)
        .value("BGF", Method::BGF)
        .value("SVS", Method::SVS)
        .value("CSB", Method::CSB)
        .value("MC", Method::MC);
    m.def("method_name", [](Method mm) { return std::string(method_name(mm)); });
    m.def("method_from_name", &method_from_name);
    m.def("is_key_method", &is_key_method);

    py::class_<Key>(m, "Key")
        .def_readonly("method", &Key::method)
        .def_readonly("value", &Key::value)
        .def("__repr__",
             [](const Key& k) {
                 return "<Key " + std::string(method_name(k.method)) + " '" + k.value + "'>";
             });

    py::class_<AnchorDict>(m, "AnchorDict")
        .def_readonly("bigrams", &AnchorDict::bigrams)
        .def_readonly("counts", &AnchorDict::counts)
        .def_readonly("size", &AnchorDict::size)
        .def("contains", &AnchorDict::contains)
        .def("save",
             [](const AnchorDict& d) {
                 std::ostringstream out;
                 d.save(out);
                 return out.str();
             })
        .def_static("load", [](const std::string& text) {
            std::istringstream in(text);
            return AnchorDict::load(in);
        })
        .def_static("load_file", &AnchorDict::load_file);

    m.def(
        "build_anchor_dict",
        [](const std::vector<const Corpus*>& corpora, std::size_t size,
           const std::set<std::string>& stoplist) {
            return build_anchor_dict(corpus_ptrs(corpora), size, stoplist);
        },
        py::arg("corpora"), py::arg("size") = 50, py::arg("stoplist") = std::set<std::string>{});

    m.def("key_af", &key_af);
    m.def("key_tf", &key_tf);
    m.def("key_mtf", &key_mtf);
    m.def("key_ardf", &key_ardf);
    m.def("key_ssf", &key_ssf, py::arg("record"), py::arg("n_max") = 8);
    m.def("key_mgf", &key_mgf);
    m.def("key_smgf", &key_smgf);
    m.def("key_bgf", &key_bgf);
    m.def(
        "make_key",
        [](const Record& r, Method mm, std::size_t ssf_n, const AnchorDict* anchor) {
            return make_key(r, mm, key_params(ssf_n, anchor));
        },
        py::arg("record"), py::arg("method"), py::arg("ssf_n") = 8,
        py::arg("anchor") = nullptr);

    m.def("tokenize_words",
          [](const std::string& s, bool whitespace_only) {
              return tokenize_words(s, default_text_config(),
                                    whitespace_only ? SplitMode::WhitespaceOnly
                                                    : SplitMode::Delimiters);
          },
          py::arg("text"), py::arg("whitespace_only") = false);
    m.def("char_ngrams", [](const std::string& s, std::size_t n) { return char_ngrams(s, n); });
    m.def("collocations", [](const std::string& s, const std::set<std::size_t>& sizes) {
        return collocations(s, sizes, default_text_config());
    });
    m.def("unique_scan",
          [](const std::string& s) { return unique_scan(s, default_text_config()); });

    py::class_<DuplicatePair>(m, "DuplicatePair")
        .def_readonly("test_id", &DuplicatePair::test_id)
        .def_readonly("target_id", &DuplicatePair::target_id)
        .def_readonly("method", &DuplicatePair::method)
        .def_readonly("score", &DuplicatePair::score)
        .def("__eq__", [](const DuplicatePair& a, const DuplicatePair& b) { return a == b; })
        .def("__repr__", [](const DuplicatePair& p) {
            return "<DuplicatePair " + p.test_id + " -> " + p.target_id + ">";
        });

    py::enum_<PairMode>(m, "PairMode")
        .value("FIRST_MATCH", PairMode::FirstMatch)
        .value("ALL_MATCHES", PairMode::AllMatches);

    py::class_<KeyIndex>(m, "KeyIndex")
        .def_readonly("method", &KeyIndex::method)
        .def_readonly("no_key_ids", &KeyIndex::no_key_ids)
        .def("indexed_records", &KeyIndex::indexed_records)
        .def("__len__", [](const KeyIndex& i) { return i.entries.size(); });

    m.def(
        "build_index",
        [](const Corpus& target, Method mm, std::size_t ssf_n, const AnchorDict* anchor) {
            return build_index(target, mm, key_params(ssf_n, anchor));
        },
        py::arg("target"), py::arg("method"), py::arg("ssf_n") = 8,
        py::arg("anchor") = nullptr);
    m.def(
        "dedup_by_key",
        [](const Corpus& test, const KeyIndex& index, Method mm, std::size_t ssf_n,
           const AnchorDict* anchor, PairMode mode) {
            return dedup_by_key(test, index, mm, key_params(ssf_n, anchor), mode);
        },
        py::arg("test"), py::arg("index"), py::arg("method"), py::arg("ssf_n") = 8,
        py::arg("anchor") = nullptr, py::arg("mode") = PairMode::FirstMatch);
    m.def(
        "dedup_by_similarity",
        [](const Corpus& test, const Corpus& target, Method scorer, double threshold,
           std::size_t min_count, bool tfidf, unsigned jobs) {
            SimParams params{threshold, min_count, tfidf, jobs};
            return dedup_by_similarity(test, target, scorer, params);
        },
        py::arg("test"), py::arg("target"), py::arg("scorer"), py::arg("threshold") = 0.95,
        py::arg("min_count") = 3, py::arg("tfidf") = false, py::arg("jobs") = 1);

    py::class_<MergeResult>(m, "MergeResult")
        .def_readonly("merged", &MergeResult::merged)
        .def_readonly("removed", &MergeResult::removed)
        .def_readonly("kept_from_test", &MergeResult::kept_from_test)
        .def_readonly("kept_from_target", &MergeResult::kept_from_target);

    m.def("merge_corpora", &merge_corpora);

    py::class_<AttributeDictionary>(m, "AttributeDictionary")
        .def_readonly("attrs", &AttributeDictionary::attrs)
        .def_readonly("counts", &AttributeDictionary::counts)
        .def_readonly("n_docs", &AttributeDictionary::n_docs)
        .def("__len__", &AttributeDictionary::size);
    m.def(
        "build_word_dictionary",
        [](const std::vector<const Corpus*>& corpora, std::size_t min_count) {
            return build_word_dictionary(corpus_ptrs(corpora), min_count);
        },
        py::arg("corpora"), py::arg("min_count") = 3);
    m.def("build_colloc_dictionary", [](const std::vector<const Corpus*>& corpora) {
        return build_colloc_dictionary(corpus_ptrs(corpora));
    });

    py::class_<SparseVector>(m, "SparseVector")
        .def_readonly("dict_size", &SparseVector::dict_size)
        .def_readonly("indices", &SparseVector::indices)
        .def_readonly("weights", &SparseVector::weights);
    m.def("doc_vector", &doc_vector, py::arg("record"), py::arg("dict"),
          py::arg("tfidf") = false);
    m.def("cosine", &cosine);

    py::class_<CollocSet>(m, "CollocSet").def_readonly("elems", &CollocSet::elems);
    m.def("collocation_set",
          [](const Record& r) { return collocation_set(r, default_text_config()); });
    m.def("jaccard", &jaccard);

    py::class_<GoldStandard>(m, "GoldStandard")
        .def(py::init<>())
        .def("add", &GoldStandard::add, py::arg("test_id"), py::arg("target_id") = std::nullopt)
        .def("positives", &GoldStandard::positives)
        .def("__len__", &GoldStandard::size)
        .def_static("identity_over", &GoldStandard::identity_over)
        .def_static("all_negative_over", &GoldStandard::all_negative_over)
        .def_static("read_tsv",
                    [](const std::string& text) {
                        std::istringstream in(text);
                        return GoldStandard::read_tsv(in);
                    })
        .def("write_tsv", [](const GoldStandard& g) {
            std::ostringstream out;
            g.write_tsv(out);
            return out.str();
        });

    py::class_<EvalReport>(m, "EvalReport")
        .def_readonly("gold_duplicates", &EvalReport::gold_duplicates)
        .def_readonly("predicted", &EvalReport::predicted)
        .def_readonly("true_positives", &EvalReport::true_positives)
        .def_readonly("false_positives", &EvalReport::false_positives)
        .def_readonly("false_negatives", &EvalReport::false_negatives)
        .def_readonly("precision", &EvalReport::precision)
        .def_readonly("recall", &EvalReport::recall)
        .def("__repr__", [](const EvalReport& r) {
            std::ostringstream out;
            out << "<EvalReport tp=" << r.true_positives << " fp=" << r.false_positives
                << " fn=" << r.false_negatives << ">";
            return out.str();
        });

    m.def("score", &score);
    m.def("report_from_counts", &report_from_counts, py::arg("gold_duplicates"),
          py::arg("true_positives"), py::arg("false_positives"), py::arg("false_negatives"));
    m.def("monte_carlo", &monte_carlo);
    m.def("half_split", &half_split);

    py::enum_<PerturbationKind>(m, "PerturbationKind")
        .value("CASE_FLIP", PerturbationKind::CaseFlip)
        .value("L_DIGIT1_SWAP", PerturbationKind::LDigit1Swap)
        .value("HYPHEN_SPLIT", PerturbationKind::HyphenSplit)
        .value("PUNCTUATION_EDIT", PerturbationKind::PunctuationEdit)
        .value("WHITESPACE_INSERT", PerturbationKind::WhitespaceInsert);

    m.def(
        "perturb",
        [](const Corpus& c, PerturbationKind kind, double rate, std::uint64_t seed) {
            return perturb(c, PerturbationSpec{kind, rate, seed});
        },
        py::arg("corpus"), py::arg("kind"), py::arg("rate") = 1.0, py::arg("seed") = 0);
    m.def("perturb_title", &perturb_title);

    m.def(
        "run_protocol",
        [](const std::string& protocol, Method mm, const Corpus& test, const Corpus* target,
           const GoldStandard* gold, std::uint64_t seed, std::size_t ssf_n,
           const AnchorDict* anchor, double threshold, std::size_t min_count) {
            ProtocolParams params;
            params.key = key_params(ssf_n, anchor);
            params.sim.threshold = threshold;
            params.sim.min_count = min_count;
            params.seed = seed;
            if (protocol == "fpm") return run_fpm(test, mm, params);
            if (protocol == "hpm") return run_hpm(test, mm, params);
            if (protocol == "gold") {
                if (!target || !gold)
                    throw std::invalid_argument("gold protocol needs target and gold");
                return run_gold(test, *target, *gold, mm, params);
            }
            throw std::invalid_argument("unknown protocol: " + protocol);
        },
        py::arg("protocol"), py::arg("method"), py::arg("test"), py::arg("target") = nullptr,
        py::arg("gold") = nullptr, py::arg("seed") = 0, py::arg("ssf_n") = 8,
        py::arg("anchor") = nullptr, py::arg("threshold") = 0.95, py::arg("min_count") = 3);

    py::class_<SynthConfig>(m, "SynthConfig")
        .def(py::init<>())
        .def_readwrite("count", &SynthConfig::count)
        .def_readwrite("seed", &SynthConfig::seed)
        .def_readwrite("pool", &SynthConfig::pool)
        .def_readwrite("source", &SynthConfig::source)
        .def_readwrite("id_prefix", &SynthConfig::id_prefix)
        .def_readwrite("start_index", &SynthConfig::start_index)
        .def_readwrite("with_abstracts", &SynthConfig::with_abstracts);
    py::enum_<SynthConfig::Pool>(m, "Pool")
        .value("A", SynthConfig::Pool::A)
        .value("B", SynthConfig::Pool::B);
    m.def("make_synthetic_corpus", &make_synthetic_corpus);
    m.def("synthetic_anchor_dict", &synthetic_anchor_dict);
}
