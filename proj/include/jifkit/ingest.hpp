#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "jifkit/corpus.hpp"

namespace jifkit {

enum class CorpusFormat { csv, jsonl };

struct RowReject {
    std::size_t line = 0;  // 1-based line number in the input file
    std::string reason;
};

struct LoadSummary {
    std::size_t total_rows = 0;  // data rows seen (CSV header excluded)
    std::size_t accepted = 0;
    std::vector<RowReject> rejects;
    std::vector<std::string> warnings;
};

struct IngestResult {
    Corpus corpus;
    LoadSummary summary;
};

struct IngestOptions {
    int min_year = 1900;
    int max_year = 2100;
};

// Reads and validates an article file. Rows failing validation are rejected
// with a reason, never silently dropped: accepted + rejects always equals
// total_rows. A duplicate article_id aborts the whole load with DataError.
//
// CSV needs a header with exactly these column names (readers values may be
// empty): article_id, journal_id, subcategory, year, doc_type, citations,
// readers. Extra columns are ignored with a warning. JSONL carries one
// object per line with the same keys.
IngestResult ingest_corpus(const std::filesystem::path& path, CorpusFormat format,
                           const IngestOptions& options = {});

}  // namespace jifkit
