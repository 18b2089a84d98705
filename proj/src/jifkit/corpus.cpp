#include "jifkit/corpus.hpp"

#include <unordered_set>

#include "jifkit/errors.hpp"

namespace jifkit {

Corpus Corpus::from_records(std::vector<ArticleRecord> records) {
    std::unordered_set<std::string> seen;
    seen.reserve(records.size());
    for (const auto& r : records) {
        if (r.article_id.empty()) throw DataError("missing article_id");
        if (r.journal_id.empty())
            throw DataError("missing journal_id: article " + r.article_id);
        if (r.subcategory.empty())
            throw DataError("missing subcategory: article " + r.article_id);
        if (r.citations < 0)
            throw DataError("negative count: article " + r.article_id);
        if (r.readers && *r.readers < 0)
            throw DataError("negative count: article " + r.article_id);
        if (!seen.insert(r.article_id).second)
            throw DataError("duplicate article_id: " + r.article_id);
    }

    Corpus corpus;
    corpus.records_ = std::move(records);
    for (std::size_t i = 0; i < corpus.records_.size(); ++i) {
        const auto& r = corpus.records_[i];
        corpus.index_[r.subcategory][r.year][r.journal_id].push_back(i);
    }
    return corpus;
}

std::vector<std::string> Corpus::subcategories() const {
    std::vector<std::string> out;
    out.reserve(index_.size());
    for (const auto& [sub, _] : index_) out.push_back(sub);
    return out;
}

std::vector<int> Corpus::years(const std::string& subcategory) const {
    std::vector<int> out;
    const auto it = index_.find(subcategory);
    if (it == index_.end()) return out;
    out.reserve(it->second.size());
    for (const auto& [year, _] : it->second) out.push_back(year);
    return out;
}

std::vector<std::string> Corpus::journals(const std::string& subcategory,
                                          int year) const {
    std::vector<std::string> out;
    const auto sub_it = index_.find(subcategory);
    if (sub_it == index_.end()) return out;
    const auto year_it = sub_it->second.find(year);
    if (year_it == sub_it->second.end()) return out;
    out.reserve(year_it->second.size());
    for (const auto& [journal, _] : year_it->second) out.push_back(journal);
    return out;
}

const std::vector<std::size_t>* Corpus::group(const std::string& subcategory,
                                              int year,
                                              const std::string& journal) const {
    const auto sub_it = index_.find(subcategory);
    if (sub_it == index_.end()) return nullptr;
    const auto year_it = sub_it->second.find(year);
    if (year_it == sub_it->second.end()) return nullptr;
    const auto journal_it = year_it->second.find(journal);
    if (journal_it == year_it->second.end()) return nullptr;
    return &journal_it->second;
}

std::size_t Corpus::article_count(const std::string& subcategory, int year,
                                  const std::string& journal) const {
    const auto* indices = group(subcategory, year, journal);
    if (!indices) return 0;
    std::size_t n = 0;
    for (const auto i : *indices)
        if (records_[i].doc_type == DocType::article) ++n;
    return n;
}

std::map<std::string, std::vector<const ArticleRecord*>> group_articles(
    const Corpus& corpus, const std::string& subcategory, int year) {
    std::map<std::string, std::vector<const ArticleRecord*>> out;
    for (const auto& journal : corpus.journals(subcategory, year)) {
        const auto* indices = corpus.group(subcategory, year, journal);
        std::vector<const ArticleRecord*> group;
        for (const auto i : *indices) {
            const auto& r = corpus.records()[i];
            if (r.doc_type == DocType::article) group.push_back(&r);
        }
        if (!group.empty()) out.emplace(journal, std::move(group));
    }
    return out;
}

}  // namespace jifkit
