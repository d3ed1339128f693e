#pragma once

#include <cstdint>
#include <string>

#include "bibdedup/corpus.hpp"
#include "bibdedup/keys.hpp"

namespace bibdedup {

/// Seeded generator of benchmark corpora whose records are collision-free
/// under every key method: titles carry a per-record signature word (a
/// distinct character subset, so monogram keys never repeat), a fixed cover
/// word, and a word sequence encoding the record index (so prefix-bigram and
/// anchor-bigram keys never repeat either). Two pools draw their signatures
/// from disjoint character families, so corpora built from different pools
/// (or disjoint index ranges of the same pool) never collide with each
/// other.
struct SynthConfig {
    std::size_t count = 0;
    std::uint64_t seed = 0;

    /// Pool A signatures always contain 'l' and '1'; pool B signatures never
    /// contain either.
    enum class Pool { A, B };
    Pool pool = Pool::A;

    Source source = Source::PM;
    std::string id_prefix = "P";

    /// Offset into the pool's index space. Corpora meant to coexist in one
    /// run must use disjoint [start_index, start_index+count) ranges.
    std::size_t start_index = 0;

    bool with_abstracts = true;
};

Corpus make_synthetic_corpus(const SynthConfig& cfg);

/// The 50-entry anchor dictionary pinned to the generator's lexicon: each
/// generated title word contributes exactly its leading bigram, which keeps
/// BGF keys collision-free on synthetic corpora.
AnchorDict synthetic_anchor_dict();

} // namespace bibdedup
