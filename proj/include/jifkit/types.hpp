#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace jifkit {

enum class DocType { article, other };

// Which per-article count feeds the impact formulas.
enum class CountSource { citations, readers };

enum class MeanKind { arithmetic, geometric };

// One published item. Counts are non-negative; readers may be absent when
// the record was never matched against a readership source.
struct ArticleRecord {
    std::string article_id;
    std::string journal_id;
    std::string subcategory;
    int year = 0;
    DocType doc_type = DocType::article;
    std::int64_t citations = 0;
    std::optional<std::int64_t> readers;

    // Absent readers count as zero: unmatched articles stay in the
    // denominator of per-article means.
    std::int64_t count_for(CountSource source) const {
        return source == CountSource::citations ? citations : readers.value_or(0);
    }

    bool operator==(const ArticleRecord&) const = default;
};

std::string to_string(DocType v);
std::string to_string(CountSource v);
std::string to_string(MeanKind v);

std::optional<CountSource> parse_count_source(const std::string& s);
std::optional<MeanKind> parse_mean_kind(const std::string& s);

}  // namespace jifkit
