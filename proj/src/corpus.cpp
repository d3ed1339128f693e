#include "bibdedup/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "bibdedup/textkit.hpp"

namespace bibdedup {

std::string_view source_name(Source s) {
    switch (s) {
    case Source::PM: return "PM";
    case Source::WOS: return "WOS";
    default: return "OTHER";
    }
}

Source source_from_name(std::string_view name) {
    if (name == "PM") return Source::PM;
    if (name == "WOS") return Source::WOS;
    return Source::Other;
}

std::string surname_segment(std::string_view author) {
    const auto comma = author.find(',');
    std::string_view seg = comma == std::string_view::npos ? author : author.substr(0, comma);
    while (!seg.empty() && std::isspace(static_cast<unsigned char>(seg.back())))
        seg.remove_suffix(1);
    while (!seg.empty() && std::isspace(static_cast<unsigned char>(seg.front())))
        seg.remove_prefix(1);
    return std::string(seg);
}

std::string first_author_surname(const Record& r) {
    if (r.authors.empty()) return "";
    return to_lower_ascii(surname_segment(r.authors.front()));
}

void Corpus::add(Record r) {
    if (r.id.empty()) throw std::invalid_argument("Corpus::add: record id is empty");
    if (by_id_.count(r.id))
        throw std::invalid_argument("Corpus::add: duplicate id " + r.id);
    if (!r.authors.empty() && r.first_author.empty())
        r.first_author = surname_segment(r.authors.front());
    by_id_.emplace(r.id, records_.size());
    records_.push_back(std::move(r));
}

const Record* Corpus::find(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? nullptr : &records_[it->second];
}

namespace {

bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

std::string rstrip(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
    return std::string(s);
}

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t extra;
        if (c < 0x80) extra = 0;
        else if ((c & 0xe0) == 0xc0) extra = 1;
        else if ((c & 0xf0) == 0xe0) extra = 2;
        else if ((c & 0xf8) == 0xf0) extra = 3;
        else return false;
        if (i + extra >= s.size() && extra > 0) return false;
        for (std::size_t k = 1; k <= extra; ++k)
            if ((static_cast<unsigned char>(s[i + k]) & 0xc0) != 0x80) return false;
        i += extra + 1;
    }
    return true;
}

// Both feeds predate consistent UTF-8; a line that fails validation is
// treated as Latin-1 and transcoded.
std::string ensure_utf8(std::string line) {
    if (valid_utf8(line)) return line;
    std::string out;
    out.reserve(line.size() + 8);
    for (char ch : line) {
        const unsigned char c = static_cast<unsigned char>(ch);
        if (c < 0x80) {
            out.push_back(ch);
        } else {
            out.push_back(static_cast<char>(0xc0 | (c >> 6)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3f)));
        }
    }
    return out;
}

std::optional<int> extract_year(std::string_view s) {
    std::size_t run = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            ++run;
        } else {
            if (run >= 4) {
                const std::size_t start = i - run;
                return std::stoi(std::string(s.substr(start, 4)));
            }
            run = 0;
        }
    }
    return std::nullopt;
}

struct RawField {
    std::string tag;
    std::string value;
};

// Build a Record from an ordered tag/value list using the shared field map.
// `one_author_per_line` distinguishes the ISI convention (each continuation
// line under AU is one author) from MEDLINE (one author per AU/FAU line).
Record assemble_record(Source source, const std::vector<RawField>& fields,
                       std::string_view id_tag, std::string_view year_tag) {
    Record rec;
    rec.source = source;
    bool journal_from_so = false;
    for (const auto& f : fields) {
        if (f.tag == id_tag) {
            if (rec.id.empty()) rec.id = trim(f.value);
            else rec.raw_fields.emplace_back(f.tag, f.value);
        } else if (f.tag == "AU" || f.tag == "FAU") {
            rec.authors.push_back(f.value);
        } else if (f.tag == "TI") {
            if (rec.title) *rec.title += " " + f.value;
            else rec.title = f.value;
        } else if (f.tag == "AB") {
            if (rec.abstract) *rec.abstract += " " + f.value;
            else rec.abstract = f.value;
        } else if (f.tag == "SO") {
            if (!journal_from_so) {
                if (rec.journal) rec.raw_fields.emplace_back("TA", *rec.journal);
                rec.journal = f.value;
                journal_from_so = true;
            } else {
                rec.raw_fields.emplace_back(f.tag, f.value);
            }
        } else if (f.tag == "TA" && source == Source::PM) {
            if (!rec.journal) rec.journal = f.value;
            else rec.raw_fields.emplace_back(f.tag, f.value);
        } else if (f.tag == year_tag) {
            if (!rec.year) rec.year = extract_year(f.value);
            if (!rec.year) rec.raw_fields.emplace_back(f.tag, f.value);
        } else {
            rec.raw_fields.emplace_back(f.tag, f.value);
        }
    }
    if (!rec.authors.empty()) rec.first_author = surname_segment(rec.authors.front());
    return rec;
}

struct Line {
    std::string text;
    std::size_t byte_begin;
    std::size_t byte_end;
};

std::vector<Line> read_lines(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    std::size_t offset = 0;
    while (std::getline(in, raw)) {
        const std::size_t len = raw.size() + 1; // getline consumed the newline
        lines.push_back({ensure_utf8(rstrip(raw)), offset, offset + len});
        offset += len;
    }
    return lines;
}

} // namespace

ParseResult parse_medline(std::istream& in) {
    ParseResult result{Corpus(Source::PM), {}};
    const auto lines = read_lines(in);

    std::vector<RawField> fields;
    std::size_t rec_begin = 0, rec_end = 0;
    bool in_record = false;

    auto flush = [&] {
        if (!in_record) return;
        Record rec = assemble_record(Source::PM, fields, "PMID", "DP");
        if (rec.id.empty())
            result.skipped.push_back({rec_begin, rec_end, "record has no PMID"});
        else if (result.corpus.contains(rec.id))
            result.skipped.push_back({rec_begin, rec_end, "duplicate PMID " + rec.id});
        else
            result.corpus.add(std::move(rec));
        fields.clear();
        in_record = false;
    };

    for (const auto& line : lines) {
        if (is_blank(line.text)) {
            flush();
            continue;
        }
        const std::string& text = line.text;
        const bool tag_line = text.size() >= 6 && text[4] == '-' && text[5] == ' ' &&
                              !std::isspace(static_cast<unsigned char>(text[0]));
        if (tag_line) {
            std::string tag = trim(text.substr(0, 4));
            std::string value = trim(text.substr(6));
            if (tag == "PMID") flush();
            if (!in_record) {
                in_record = true;
                rec_begin = line.byte_begin;
                fields.clear();
            }
            rec_end = line.byte_end;
            fields.push_back({std::move(tag), std::move(value)});
        } else if (in_record && std::isspace(static_cast<unsigned char>(text[0])) &&
                   !fields.empty()) {
            // continuation: the line break is replaced by a single blank
            fields.back().value += " " + trim(text);
            rec_end = line.byte_end;
        } else if (in_record) {
            fields.push_back({"", text}); // malformed line, kept verbatim
            rec_end = line.byte_end;
        }
        // malformed content before any record opens is ignored
    }
    flush();
    return result;
}

ParseResult parse_medline(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_medline(in);
}

ParseResult parse_isi(std::istream& in) {
    ParseResult result{Corpus(Source::WOS), {}};
    const auto lines = read_lines(in);

    std::vector<RawField> fields;
    std::size_t rec_begin = 0, rec_end = 0;
    bool in_record = false;
    std::string last_tag;

    auto flush = [&](bool terminated) {
        if (!in_record) return;
        Record rec = assemble_record(Source::WOS, fields, "UT", "PY");
        if (!terminated) {
            const std::string who = rec.id.empty() ? "<no UT>" : rec.id;
            throw ParseError("parse_isi: record " + who + " not terminated by ER");
        }
        if (rec.id.empty())
            result.skipped.push_back({rec_begin, rec_end, "record has no UT"});
        else if (result.corpus.contains(rec.id))
            result.skipped.push_back({rec_begin, rec_end, "duplicate UT " + rec.id});
        else
            result.corpus.add(std::move(rec));
        fields.clear();
        last_tag.clear();
        in_record = false;
    };

    for (const auto& line : lines) {
        const std::string& text = line.text;
        if (is_blank(text)) continue;
        const bool indented = std::isspace(static_cast<unsigned char>(text[0])) != 0;
        if (!indented) {
            if (text.size() < 2 || (text.size() > 2 && text[2] != ' ')) {
                // not a tag line; keep verbatim inside the current record
                if (in_record) {
                    fields.push_back({"", text});
                    rec_end = line.byte_end;
                }
                continue;
            }
            std::string tag = text.substr(0, 2);
            std::string value = text.size() > 2 ? trim(text.substr(2)) : "";
            if (tag == "EF") {
                flush(false); // no-op unless a record is dangling
                continue;
            }
            if (tag == "ER") {
                rec_end = line.byte_end;
                flush(true);
                continue;
            }
            if (tag == "FN" || tag == "VR") continue; // file header
            if (!in_record) {
                in_record = true;
                rec_begin = line.byte_begin;
            }
            rec_end = line.byte_end;
            last_tag = tag;
            fields.push_back({std::move(tag), std::move(value)});
        } else if (in_record && !fields.empty()) {
            rec_end = line.byte_end;
            if (last_tag == "AU" || last_tag == "AF")
                fields.push_back({last_tag, trim(text)}); // one author per line
            else
                fields.back().value += " " + trim(text);
        }
    }
    flush(!in_record);
    return result;
}

ParseResult parse_isi(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_isi(in);
}

namespace {

std::string sanitize(std::string_view v) {
    std::string out(v);
    for (char& c : out)
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    return out;
}

} // namespace

void write_canonical(const Corpus& corpus, std::ostream& out) {
    bool first = true;
    for (const Record& r : corpus) {
        if (!first) out << "\n";
        first = false;
        out << "ID\t" << sanitize(r.id) << "\n";
        out << "SRC\t" << source_name(r.source) << "\n";
        for (const auto& a : r.authors) out << "AU\t" << sanitize(a) << "\n";
        if (r.title) out << "TI\t" << sanitize(*r.title) << "\n";
        if (r.journal) out << "JO\t" << sanitize(*r.journal) << "\n";
        if (r.year) out << "YR\t" << *r.year << "\n";
        if (r.abstract) out << "AB\t" << sanitize(*r.abstract) << "\n";
        for (const auto& [tag, value] : r.raw_fields)
            out << (tag.empty() ? "??" : sanitize(tag)) << "\t" << sanitize(value) << "\n";
    }
}

std::string write_canonical(const Corpus& corpus) {
    std::ostringstream out;
    write_canonical(corpus, out);
    return out.str();
}

ParseResult read_canonical(std::istream& in) {
    ParseResult result{Corpus(Source::Other), {}};
    const auto lines = read_lines(in);

    Record rec;
    std::size_t rec_begin = 0, rec_end = 0;
    bool in_record = false;
    std::vector<Source> seen_sources;

    auto flush = [&] {
        if (!in_record) return;
        if (rec.id.empty())
            result.skipped.push_back({rec_begin, rec_end, "record has no ID"});
        else if (result.corpus.contains(rec.id))
            result.skipped.push_back({rec_begin, rec_end, "duplicate ID " + rec.id});
        else {
            seen_sources.push_back(rec.source);
            if (!rec.authors.empty()) rec.first_author = surname_segment(rec.authors.front());
            result.corpus.add(std::move(rec));
        }
        rec = Record{};
        in_record = false;
    };

    for (const auto& line : lines) {
        if (is_blank(line.text)) {
            flush();
            continue;
        }
        const auto tab = line.text.find('\t');
        if (tab == std::string::npos) continue;
        const std::string tag = line.text.substr(0, tab);
        const std::string value = line.text.substr(tab + 1);
        if (!in_record) {
            in_record = true;
            rec_begin = line.byte_begin;
        }
        rec_end = line.byte_end;
        if (tag == "ID") rec.id = value;
        else if (tag == "SRC") rec.source = source_from_name(value);
        else if (tag == "AU") rec.authors.push_back(value);
        else if (tag == "TI") rec.title = value;
        else if (tag == "JO") rec.journal = value;
        else if (tag == "YR") rec.year = extract_year(value);
        else if (tag == "AB") rec.abstract = value;
        else rec.raw_fields.emplace_back(tag, value);
    }
    flush();

    // corpus-level source: uniform across records or Other
    if (!seen_sources.empty() &&
        std::all_of(seen_sources.begin(), seen_sources.end(),
                    [&](Source s) { return s == seen_sources.front(); })) {
        Corpus tagged(seen_sources.front());
        for (const Record& r : result.corpus) tagged.add(r);
        result.corpus = std::move(tagged);
    }
    return result;
}

ParseResult read_canonical(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_canonical(in);
}

FileFormat detect_format(std::string_view head) {
    std::size_t pos = 0;
    while (pos < head.size()) {
        auto eol = head.find('\n', pos);
        if (eol == std::string_view::npos) eol = head.size();
        const std::string_view line = head.substr(pos, eol - pos);
        if (!is_blank(line)) {
            if (line.starts_with("PMID-")) return FileFormat::Medline;
            if (line.find('\t') != std::string_view::npos) return FileFormat::Canonical;
            return FileFormat::Isi;
        }
        pos = eol + 1;
    }
    return FileFormat::Medline;
}

ParseResult parse_file(const std::string& path, std::optional<FileFormat> format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    if (!format) {
        char head[512] = {};
        in.read(head, sizeof(head) - 1);
        format = detect_format(std::string_view(head, static_cast<std::size_t>(in.gcount())));
        in.clear();
        in.seekg(0);
    }
    switch (*format) {
    case FileFormat::Medline: return parse_medline(in);
    case FileFormat::Isi: return parse_isi(in);
    default: return read_canonical(in);
    }
}

} // namespace bibdedup
