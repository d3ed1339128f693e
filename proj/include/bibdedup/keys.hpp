#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "bibdedup/corpus.hpp"

namespace bibdedup {

/// Every comparison method the toolkit knows. The first eight build exact
/// fingerprint keys; SVS/CSB are similarity scorers and MC is the random
/// baseline.
enum class Method { AF, TF, MTF, ARDF, SSF, MGF, SMGF, BGF, SVS, CSB, MC };

bool is_key_method(Method m);
std::string_view method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);
std::vector<Method> all_methods();
std::vector<Method> key_methods();

struct Key {
    Method method;
    std::string value; // always lowercase
    bool operator==(const Key&) const = default;
};

/// Ranked list of the most frequent title-word character bigrams, used by the
/// BGF transcoding. Reproducible BGF runs pin the dictionary to a file.
struct AnchorDict {
    std::vector<std::string> bigrams;       // most frequent first
    std::vector<std::uint64_t> counts;      // aligned with bigrams; empty if loaded without counts
    std::set<std::string> stoplist;
    std::size_t size = 50;

    bool contains(std::string_view bigram) const {
        return lookup_.count(std::string(bigram)) != 0;
    }
    void rebuild_lookup();

    /// One bigram per line, optional "<TAB>count" suffix, frequency-descending.
    void save(std::ostream& out) const;
    static AnchorDict load(std::istream& in);
    static AnchorDict load_file(const std::string& path);

    bool operator==(const AnchorDict& other) const { return bigrams == other.bigrams; }

private:
    std::unordered_set<std::string> lookup_;
};

/// One bigram per line; '#' starts a comment.
std::set<std::string> load_stoplist(std::istream& in);

/// Count all character bigrams (over the 36-character alphabet) of all title
/// words, drop stoplist entries and keep the `size` most frequent, ties
/// broken lexicographically. Throws std::runtime_error when the corpora hold
/// fewer distinct bigrams than requested.
AnchorDict build_anchor_dict(const std::vector<const Corpus*>& corpora, std::size_t size = 50,
                             std::set<std::string> stoplist = {});

// --- key builders -------------------------------------------------------
// Builders whose method cannot work without a title return nullopt when it
// is missing (a "no key" outcome; the engine counts those records).

/// First author surname, lowercased. Empty value when there are no authors.
Key key_af(const Record& r);

/// Lowercased title with whitespace runs collapsed to single spaces.
std::optional<Key> key_tf(const Record& r);

/// TF key with all spaces removed.
std::optional<Key> key_mtf(const Record& r);

/// surname + "-" + lowercase journal + "-" + year; absent parts contribute
/// empty strings between the separators.
Key key_ardf(const Record& r);

/// First character bigram of each of the first `n_max` whitespace-separated
/// title tokens (short tokens contribute themselves), then the first bigram
/// of the author surname, joined by single spaces.
std::optional<Key> key_ssf(const Record& r, std::size_t n_max = 8);

/// unique_scan of the title: first occurrence of each alphabet character.
std::optional<Key> key_mgf(const Record& r);

/// MGF characters sorted ascending, digits before letters.
std::optional<Key> key_smgf(const Record& r);

/// For each title word in order, each of its contiguous bigrams that appears
/// in the anchor dictionary, joined by single spaces; repeats preserved.
std::optional<Key> key_bgf(const Record& r, const AnchorDict& dict);

struct KeyParams {
    std::size_t ssf_n = 8;
    std::shared_ptr<const AnchorDict> anchor; // required for BGF
};

/// Dispatcher used by the dedup engine. On top of the per-method
/// preconditions it excludes keys whose value is empty (or the all-empty
/// ARDF skeleton "--"): matching on them would fabricate duplicates.
std::optional<Key> make_key(const Record& r, Method m, const KeyParams& params);

} // namespace bibdedup
