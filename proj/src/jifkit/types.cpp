#include "jifkit/types.hpp"

namespace jifkit {

std::string to_string(DocType v) {
    return v == DocType::article ? "article" : "other";
}

std::string to_string(CountSource v) {
    return v == CountSource::citations ? "citations" : "readers";
}

std::string to_string(MeanKind v) {
    return v == MeanKind::arithmetic ? "arithmetic" : "geometric";
}

std::optional<CountSource> parse_count_source(const std::string& s) {
    if (s == "citations") return CountSource::citations;
    if (s == "readers") return CountSource::readers;
    return std::nullopt;
}

std::optional<MeanKind> parse_mean_kind(const std::string& s) {
    if (s == "arithmetic") return MeanKind::arithmetic;
    if (s == "geometric") return MeanKind::geometric;
    return std::nullopt;
}

}  // namespace jifkit
