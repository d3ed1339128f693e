#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "bibdedup/corpus.hpp"
#include "bibdedup/textkit.hpp"

namespace bibdedup {

enum class AttrKind { Words, Collocations };

/// Title + " " + abstract, the text both similarity methods score on.
std::string doc_text(const Record& r);

/// Ranked attribute dictionary over one or more corpora. Ranks are dense
/// 0..n-1 indices assigned in lexicographic attribute order.
struct AttributeDictionary {
    AttrKind kind = AttrKind::Words;
    std::unordered_map<std::string, std::uint32_t> rank;
    std::vector<std::string> attrs;      // index -> attribute
    std::vector<std::uint64_t> counts;   // total occurrences in the corpora
    std::vector<std::uint32_t> doc_freq; // number of documents containing it
    std::size_t n_docs = 0;
    std::size_t min_count = 3;

    std::size_t size() const { return attrs.size(); }

    /// "attribute<TAB>index<TAB>count" per line, for inspection and pinning.
    void dump(std::ostream& out) const;
};

/// Word dictionary over title+abstract tokens of all documents, keeping
/// attributes with at least `min_count` total occurrences ("more than 2").
/// Throws std::runtime_error when nothing survives the cut.
AttributeDictionary build_word_dictionary(const std::vector<const Corpus*>& corpora,
                                          std::size_t min_count = 3);

/// 2-/3-word collocation dictionary; no frequency cut.
AttributeDictionary build_colloc_dictionary(const std::vector<const Corpus*>& corpora);

/// Binary presence vector (weights empty) or TF-IDF weighted vector over the
/// dictionary space. Attributes outside the dictionary are ignored.
struct SparseVector {
    std::size_t dict_size = 0;
    std::vector<std::uint32_t> indices; // sorted, unique
    std::vector<double> weights;        // aligned with indices; empty = all 1
};

SparseVector doc_vector(const Record& r, const AttributeDictionary& dict, bool tfidf = false);

/// Cosine similarity; 0 when either norm is 0. Throws std::invalid_argument
/// on a dimension mismatch.
double cosine(const SparseVector& a, const SparseVector& b);

struct CollocSet {
    std::set<std::string> elems;
};

CollocSet collocation_set(const Record& r, const TextConfig& cfg = default_text_config());

/// |a ∩ b| / |a ∪ b|; 1.0 when both sets are empty, 0.0 when exactly one is.
double jaccard(const CollocSet& a, const CollocSet& b);

} // namespace bibdedup
