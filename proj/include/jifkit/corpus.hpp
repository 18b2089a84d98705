#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "jifkit/types.hpp"

namespace jifkit {

// Validated, immutable collection of article records with an index by
// (subcategory, year, journal). Safe to share across concurrent readers
// once constructed.
class Corpus {
public:
    // Takes ownership of the records, validates invariants (unique
    // article_id, non-negative counts) and builds the index. Throws
    // DataError on violation.
    static Corpus from_records(std::vector<ArticleRecord> records);

    const std::vector<ArticleRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }

    std::vector<std::string> subcategories() const;
    std::vector<int> years(const std::string& subcategory) const;
    std::vector<std::string> journals(const std::string& subcategory, int year) const;

    // Indices of all records (any doc_type) in the group, or nullptr when
    // the group does not exist.
    const std::vector<std::size_t>* group(const std::string& subcategory, int year,
                                          const std::string& journal) const;

    // Number of doc_type == article records in the group.
    std::size_t article_count(const std::string& subcategory, int year,
                              const std::string& journal) const;

private:
    Corpus() = default;

    std::vector<ArticleRecord> records_;
    // subcategory -> year -> journal -> record indices
    std::map<std::string, std::map<int, std::map<std::string, std::vector<std::size_t>>>>
        index_;
};

// Journals of one (subcategory, year) with their doc_type == article
// records. Unknown subcategory or year yields an empty mapping.
std::map<std::string, std::vector<const ArticleRecord*>> group_articles(
    const Corpus& corpus, const std::string& subcategory, int year);

}  // namespace jifkit
