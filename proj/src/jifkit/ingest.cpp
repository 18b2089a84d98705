#include "jifkit/ingest.hpp"

#include <charconv>
#include <sstream>
#include <string_view>

#include "json.hpp"

#include "csv.hpp"
#include "io_util.hpp"
#include "jifkit/errors.hpp"

namespace jifkit {
namespace {

const std::vector<std::string> kCsvHeader = {
    "article_id", "journal_id", "subcategory", "year",
    "doc_type",   "citations",  "readers"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool parse_int(std::string_view text, std::int64_t& out) {
    text = trim(text);
    if (text.empty()) return false;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

// Field-level checks shared by both formats. Returns a reject reason or
// empty on success.
std::string validate_row(ArticleRecord& r, const IngestOptions& options) {
    if (r.article_id.empty()) return "missing article_id";
    if (r.journal_id.empty()) return "missing journal_id";
    if (r.subcategory.empty()) return "missing subcategory";
    if (r.year < options.min_year || r.year > options.max_year)
        return "year out of range";
    if (r.citations < 0) return "negative count";
    if (r.readers && *r.readers < 0) return "negative count";
    return {};
}

void parse_csv_row(const std::string& line, std::size_t n_columns,
                   ArticleRecord& r) {
    const auto fields = detail::split_csv_line(line);
    if (fields.size() < kCsvHeader.size()) throw DataError("missing fields");
    if (fields.size() > n_columns) throw DataError("too many fields");

    r.article_id = std::string(trim(fields[0]));
    r.journal_id = std::string(trim(fields[1]));
    r.subcategory = std::string(trim(fields[2]));

    std::int64_t year = 0;
    if (!parse_int(fields[3], year)) throw DataError("unparseable year");
    r.year = static_cast<int>(year);

    const auto doc_type = trim(fields[4]);
    if (doc_type.empty()) throw DataError("missing doc_type");
    r.doc_type = doc_type == "article" ? DocType::article : DocType::other;

    if (!parse_int(fields[5], r.citations)) throw DataError("unparseable count");

    const auto readers = trim(fields[6]);
    if (readers.empty()) {
        r.readers.reset();
    } else {
        std::int64_t value = 0;
        if (!parse_int(readers, value)) throw DataError("unparseable count");
        r.readers = value;
    }
}

void parse_jsonl_row(const std::string& line, ArticleRecord& r) {
    nlohmann::json row;
    try {
        row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
        throw DataError("invalid json");
    }
    if (!row.is_object()) throw DataError("invalid json");

    const auto need = [&](const char* key) -> const nlohmann::json& {
        const auto it = row.find(key);
        if (it == row.end())
            throw DataError(std::string("missing key: ") + key);
        return *it;
    };
    const auto as_string = [](const nlohmann::json& v, const char* what) {
        if (!v.is_string()) throw DataError(std::string("bad type: ") + what);
        return v.get<std::string>();
    };
    const auto as_int = [](const nlohmann::json& v, const char* what) {
        if (!v.is_number_integer()) throw DataError(std::string("bad type: ") + what);
        return v.get<std::int64_t>();
    };

    r.article_id = as_string(need("article_id"), "article_id");
    r.journal_id = as_string(need("journal_id"), "journal_id");
    r.subcategory = as_string(need("subcategory"), "subcategory");
    r.year = static_cast<int>(as_int(need("year"), "year"));
    const auto doc_type = as_string(need("doc_type"), "doc_type");
    if (doc_type.empty()) throw DataError("missing doc_type");
    r.doc_type = doc_type == "article" ? DocType::article : DocType::other;
    r.citations = as_int(need("citations"), "citations");

    const auto readers_it = row.find("readers");
    if (readers_it == row.end() || readers_it->is_null()) {
        r.readers.reset();
    } else {
        r.readers = as_int(*readers_it, "readers");
    }
}

}  // namespace

IngestResult ingest_corpus(const std::filesystem::path& path, CorpusFormat format,
                           const IngestOptions& options) {
    const auto content = detail::read_file(path);
    std::istringstream in(content);

    LoadSummary summary;
    std::vector<ArticleRecord> accepted;
    std::string line;
    std::size_t line_no = 0;
    std::size_t n_columns = kCsvHeader.size();
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        if (format == CorpusFormat::csv && !header_seen) {
            if (trim(line).empty()) continue;  // blank preamble
            auto header = detail::split_csv_line(line);
            for (auto& cell : header) cell = std::string(trim(cell));
            if (header.size() < kCsvHeader.size() ||
                !std::equal(kCsvHeader.begin(), kCsvHeader.end(), header.begin()))
                throw DataError("bad header: " + path.string());
            if (header.size() > kCsvHeader.size())
                summary.warnings.push_back(
                    "ignored " + std::to_string(header.size() - kCsvHeader.size()) +
                    " extra column(s)");
            n_columns = header.size();
            header_seen = true;
            continue;
        }

        if (trim(line).empty()) continue;
        ++summary.total_rows;

        ArticleRecord r;
        try {
            if (format == CorpusFormat::csv)
                parse_csv_row(line, n_columns, r);
            else
                parse_jsonl_row(line, r);
            if (auto reason = validate_row(r, options); !reason.empty())
                throw DataError(reason);
        } catch (const DataError& e) {
            summary.rejects.push_back({line_no, e.what()});
            continue;
        }
        ++summary.accepted;
        accepted.push_back(std::move(r));
    }

    if (format == CorpusFormat::csv && !header_seen)
        throw DataError("bad header: " + path.string());

    // Duplicate ids poison every aggregate, so they abort instead of
    // rejecting one of the copies arbitrarily.
    return IngestResult{Corpus::from_records(std::move(accepted)), std::move(summary)};
}

}  // namespace jifkit
