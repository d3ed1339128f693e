#include "bibdedup/simvec.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace bibdedup {

std::string doc_text(const Record& r) {
    std::string text;
    if (r.title) text = *r.title;
    if (r.abstract) {
        if (!text.empty()) text.push_back(' ');
        text += *r.abstract;
    }
    return text;
}

void AttributeDictionary::dump(std::ostream& out) const {
    for (std::size_t i = 0; i < attrs.size(); ++i)
        out << attrs[i] << "\t" << i << "\t" << (i < counts.size() ? counts[i] : 0) << "\n";
}

namespace {

std::vector<std::string> doc_attrs(const Record& r, AttrKind kind) {
    const std::string text = doc_text(r);
    const TextConfig& cfg = default_text_config();
    if (kind == AttrKind::Words) return tokenize_words(text, cfg, SplitMode::Delimiters);
    const auto set = collocations(text, {2, 3}, cfg);
    return {set.begin(), set.end()};
}

AttributeDictionary build_dictionary(const std::vector<const Corpus*>& corpora, AttrKind kind,
                                     std::size_t min_count) {
    if (corpora.empty()) throw std::invalid_argument("build_dictionary: no corpora");

    std::map<std::string, std::pair<std::uint64_t, std::uint32_t>> table; // attr -> {count, df}
    std::size_t n_docs = 0;
    for (const Corpus* corpus : corpora) {
        for (const Record& r : *corpus) {
            ++n_docs;
            const auto attrs = doc_attrs(r, kind);
            std::set<std::string> seen;
            for (const auto& a : attrs) {
                auto& cell = table[a];
                ++cell.first;
                if (seen.insert(a).second) ++cell.second;
            }
        }
    }

    AttributeDictionary dict;
    dict.kind = kind;
    dict.min_count = min_count;
    dict.n_docs = n_docs;
    for (auto& [attr, cell] : table) {
        if (cell.first < min_count) continue;
        dict.rank.emplace(attr, static_cast<std::uint32_t>(dict.attrs.size()));
        dict.attrs.push_back(attr);
        dict.counts.push_back(cell.first);
        dict.doc_freq.push_back(cell.second);
    }
    if (dict.attrs.empty())
        throw std::runtime_error("build_dictionary: empty dictionary after frequency cut");
    return dict;
}

} // namespace

AttributeDictionary build_word_dictionary(const std::vector<const Corpus*>& corpora,
                                          std::size_t min_count) {
    return build_dictionary(corpora, AttrKind::Words, min_count);
}

AttributeDictionary build_colloc_dictionary(const std::vector<const Corpus*>& corpora) {
    return build_dictionary(corpora, AttrKind::Collocations, 1);
}

SparseVector doc_vector(const Record& r, const AttributeDictionary& dict, bool tfidf) {
    SparseVector v;
    v.dict_size = dict.size();

    std::map<std::uint32_t, std::uint32_t> tf; // index -> in-document count
    for (const auto& a : doc_attrs(r, dict.kind)) {
        auto it = dict.rank.find(a);
        if (it != dict.rank.end()) ++tf[it->second];
    }
    v.indices.reserve(tf.size());
    for (const auto& [idx, count] : tf) {
        v.indices.push_back(idx);
        if (tfidf) {
            const double idf =
                std::log(static_cast<double>(dict.n_docs) / dict.doc_freq[idx]);
            v.weights.push_back(count * idf);
        }
    }
    return v;
}

double cosine(const SparseVector& a, const SparseVector& b) {
    if (a.dict_size != b.dict_size)
        throw std::invalid_argument("cosine: dimension mismatch");

    auto weight = [](const SparseVector& v, std::size_t i) {
        return v.weights.empty() ? 1.0 : v.weights[i];
    };

    double dot = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.indices.size() && j < b.indices.size()) {
        if (a.indices[i] == b.indices[j]) {
            dot += weight(a, i) * weight(b, j);
            ++i;
            ++j;
        } else if (a.indices[i] < b.indices[j]) {
            ++i;
        } else {
            ++j;
        }
    }

    double na = 0.0, nb = 0.0;
    for (std::size_t k = 0; k < a.indices.size(); ++k) na += weight(a, k) * weight(a, k);
    for (std::size_t k = 0; k < b.indices.size(); ++k) nb += weight(b, k) * weight(b, k);
    if (na == 0.0 || nb == 0.0) return 0.0;
    // sqrt rounding can push identical vectors a hair over 1
    return std::min(1.0, dot / (std::sqrt(na) * std::sqrt(nb)));
}

CollocSet collocation_set(const Record& r, const TextConfig& cfg) {
    return CollocSet{collocations(doc_text(r), {2, 3}, cfg)};
}

double jaccard(const CollocSet& a, const CollocSet& b) {
    if (a.elems.empty() && b.elems.empty()) return 1.0;
    std::size_t inter = 0;
    const auto& small = a.elems.size() <= b.elems.size() ? a.elems : b.elems;
    const auto& large = a.elems.size() <= b.elems.size() ? b.elems : a.elems;
    for (const auto& e : small)
        if (large.count(e)) ++inter;
    const std::size_t uni = a.elems.size() + b.elems.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

} // namespace bibdedup
