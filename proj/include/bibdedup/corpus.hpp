#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bibdedup {

enum class Source { PM, WOS, Other };

std::string_view source_name(Source s);
Source source_from_name(std::string_view name);

/// One parsed bibliographic document. `raw_fields` keeps unrecognized tags in
/// file order so a merge can be written back without losing content.
struct Record {
    std::string id;
    Source source = Source::Other;
    std::vector<std::string> authors;
    std::string first_author; // surname segment of authors[0], as written
    std::optional<std::string> title;
    std::optional<std::string> journal;
    std::optional<int> year;
    std::optional<std::string> abstract;
    std::vector<std::pair<std::string, std::string>> raw_fields;

    bool operator==(const Record&) const = default;
};

/// Lowercase surname segment of the first author: text before the first
/// comma, else the whole entry. Empty string when there are no authors.
std::string first_author_surname(const Record& r);

/// Surname segment (as written) used to populate Record::first_author.
std::string surname_segment(std::string_view author);

/// Immutable-after-build list of records with id lookup. Iteration order is
/// file order.
class Corpus {
public:
    explicit Corpus(Source source = Source::Other) : source_(source) {}

    /// Throws std::invalid_argument on an empty or duplicate id.
    void add(Record r);

    Source source() const { return source_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    const Record& at(std::size_t i) const { return records_.at(i); }
    const Record* find(std::string_view id) const;
    bool contains(std::string_view id) const { return find(id) != nullptr; }

    auto begin() const { return records_.begin(); }
    auto end() const { return records_.end(); }
    const std::vector<Record>& records() const { return records_; }

private:
    Source source_;
    std::vector<Record> records_;
    std::unordered_map<std::string, std::size_t> by_id_;
};

/// Unrecoverable format violation (e.g. an ISI record with no ER terminator).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A record dropped during parsing, with the byte range it occupied.
struct ParseSkip {
    std::size_t byte_begin = 0;
    std::size_t byte_end = 0;
    std::string reason;
};

struct ParseResult {
    Corpus corpus;
    std::vector<ParseSkip> skipped;
};

/// MEDLINE flat format: 4-character tag, "- ", value; continuation lines
/// indented; records separated by blank lines; PMID opens a record.
ParseResult parse_medline(std::istream& in);
ParseResult parse_medline(std::string_view text);

/// ISI export format: 2-letter tags, continuation lines indented, records
/// terminated by ER, file terminated by EF.
ParseResult parse_isi(std::istream& in);
ParseResult parse_isi(std::string_view text);

/// Canonical line-oriented serialization: one "TAG<TAB>value" per line,
/// records separated by blank lines. Round-trips through read_canonical.
void write_canonical(const Corpus& corpus, std::ostream& out);
std::string write_canonical(const Corpus& corpus);
ParseResult read_canonical(std::istream& in);
ParseResult read_canonical(std::string_view text);

enum class FileFormat { Medline, Isi, Canonical };

/// Guess the format from the first non-blank line.
FileFormat detect_format(std::string_view head);

/// Parse a whole file, auto-detecting the format unless one is forced.
ParseResult parse_file(const std::string& path,
                       std::optional<FileFormat> format = std::nullopt);

} // namespace bibdedup
