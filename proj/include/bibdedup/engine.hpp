#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bibdedup/corpus.hpp"
#include "bibdedup/keys.hpp"

namespace bibdedup {

/// Hash index from key value to the target record ids carrying it, in file
/// order. Built once, then read-only; lookups are amortized O(1).
struct KeyIndex {
    Method method = Method::MGF;
    KeyParams params;
    std::unordered_map<std::string, std::vector<std::string>> entries;
    std::vector<std::string> no_key_ids; // target records that yielded no key

    std::size_t indexed_records() const;
};

struct DuplicatePair {
    std::string test_id;
    std::string target_id;
    Method method = Method::MGF;
    double score = 1.0; // 1.0 for key methods, cosine/Jaccard value otherwise
    bool operator==(const DuplicatePair&) const = default;
};

enum class PairMode {
    FirstMatch, // one pair per test record: first target in file order
    AllMatches, // one pair per matching target
};

KeyIndex build_index(const Corpus& target, Method method, const KeyParams& params = {});

/// Look up each test record's key in the index. Test records without a key
/// emit nothing; their ids are appended to *no_key when given. Throws
/// std::invalid_argument when method/params disagree with the index.
std::vector<DuplicatePair> dedup_by_key(const Corpus& test, const KeyIndex& index, Method method,
                                        const KeyParams& params = {},
                                        PairMode mode = PairMode::FirstMatch,
                                        std::vector<std::string>* no_key = nullptr);

struct SimParams {
    double threshold = 0.95;
    std::size_t min_count = 3; // word-dictionary frequency cut
    bool tfidf = false;
    unsigned jobs = 1; // parallel scoring threads; output is order-stable
};

/// Full pairwise scan of test against target with SVS (cosine over word
/// vectors) or CSB (Jaccard over collocation sets). Emits pairs with
/// score > threshold. O(N*M) scorings by design.
std::vector<DuplicatePair> dedup_by_similarity(const Corpus& test, const Corpus& target,
                                               Method scorer, const SimParams& params = {});

struct MergeResult {
    Corpus merged;
    std::vector<DuplicatePair> removed;
    std::size_t kept_from_test = 0;
    std::size_t kept_from_target = 0;
};

/// Deduplicated union: every target record plus the test records that appear
/// in no pair. The target side of each pair is the record retained.
MergeResult merge_corpora(const Corpus& test, const Corpus& target,
                          const std::vector<DuplicatePair>& pairs);

/// Pair TSV: "test_id<TAB>target_id<TAB>method<TAB>score".
void write_pairs(const std::vector<DuplicatePair>& pairs, std::ostream& out);
std::vector<DuplicatePair> read_pairs(std::istream& in);

} // namespace bibdedup
