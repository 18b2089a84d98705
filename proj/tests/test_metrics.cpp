#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "jifkit/errors.hpp"
#include "jifkit/metrics.hpp"
#include "jifkit/rng.hpp"

using namespace jifkit;

namespace {

// Base-10 route: 10^(mean(log10(1+c))) - 1. Logarithm base must not matter.
double geometric_base10(const std::vector<std::int64_t>& counts) {
    double sum = 0.0;
    for (const auto c : counts) sum += std::log10(1.0 + static_cast<double>(c));
    return std::pow(10.0, sum / static_cast<double>(counts.size())) - 1.0;
}

std::vector<std::int64_t> random_counts(RandomStream& rng, std::int64_t max_value) {
    const auto n = rng.uniform_int(1, 60);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n));
    for (auto& c : counts) c = rng.uniform_int(0, max_value);
    return counts;
}

}  // namespace

TEST_CASE("arithmetic mean of counts") {
    CHECK(arithmetic_jif(std::vector<std::int64_t>{1, 2, 3}) == 2.0);
    CHECK(arithmetic_jif(std::vector<std::int64_t>{0, 0, 0, 0}) == 0.0);
    CHECK(arithmetic_jif(std::vector<std::int64_t>{7}) == 7.0);
    CHECK(arithmetic_jif(std::vector<std::int64_t>{170, 30, 0, 0, 0, 0, 0, 0, 0, 0}) ==
          20.0);
}

TEST_CASE("shifted geometric mean on pinned vectors") {
    // exp((ln 1 + ln 4) / 2) - 1 = 1, exactly representable
    CHECK(geometric_jif(std::vector<std::int64_t>{0, 3}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(geometric_jif(std::vector<std::int64_t>{0, 0, 0}) == 0.0);
    CHECK(geometric_jif(std::vector<std::int64_t>{7}) == doctest::Approx(7.0).epsilon(1e-14));
    // frozen from an independent high-precision evaluation
    CHECK(geometric_jif(std::vector<std::int64_t>{170, 30, 0, 0, 0, 0, 0, 0, 0, 0}) ==
          doctest::Approx(1.3574135769856854).epsilon(1e-13));
}

TEST_CASE("empty groups are an error, not a zero") {
    CHECK_THROWS_WITH_AS(arithmetic_jif({}), "empty journal-year", DataError);
    CHECK_THROWS_WITH_AS(geometric_jif({}), "empty journal-year", DataError);
}

TEST_CASE("geometric never exceeds arithmetic") {
    RandomStream rng(2024, 0);
    for (int i = 0; i < 2000; ++i) {
        const auto counts = random_counts(rng, 10000);
        CHECK(geometric_jif(counts) <= arithmetic_jif(counts) + 1e-9);
    }
}

TEST_CASE("both means are permutation invariant") {
    RandomStream rng(2025, 0);
    for (int i = 0; i < 200; ++i) {
        auto counts = random_counts(rng, 1000);
        const double a = arithmetic_jif(counts);
        const double g = geometric_jif(counts);
        std::reverse(counts.begin(), counts.end());
        CHECK(arithmetic_jif(counts) == a);
        CHECK(geometric_jif(counts) == doctest::Approx(g).epsilon(1e-14));
    }
}

TEST_CASE("raising any single count raises both means") {
    RandomStream rng(2026, 0);
    for (int i = 0; i < 200; ++i) {
        auto counts = random_counts(rng, 500);
        const double a = arithmetic_jif(counts);
        const double g = geometric_jif(counts);
        const auto idx = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(counts.size()) - 1));
        counts[idx] += 1 + rng.uniform_int(0, 50);
        CHECK(arithmetic_jif(counts) > a);
        CHECK(geometric_jif(counts) > g);
    }
}

TEST_CASE("the logarithm base cancels out") {
    RandomStream rng(2027, 0);
    for (int i = 0; i < 500; ++i) {
        const auto counts = random_counts(rng, 5000);
        const double g = geometric_jif(counts);
        CHECK(g == doctest::Approx(geometric_base10(counts)).epsilon(1e-10));
    }
}

TEST_CASE("score_journal_year aggregates one group") {
    ArticleRecord a{"a1", "jx", "eco", 2004, DocType::article, 4, 9};
    ArticleRecord b{"a2", "jx", "eco", 2004, DocType::article, 0, std::nullopt};
    const std::vector<const ArticleRecord*> group{&a, &b};

    const auto arith = score_journal_year(group, CountSource::citations,
                                          MeanKind::arithmetic);
    CHECK(arith.journal_id == "jx");
    CHECK(arith.subcategory == "eco");
    CHECK(arith.year == 2004);
    CHECK(arith.value == 2.0);
    CHECK(arith.article_count == 2);

    const auto geom = score_journal_year(group, CountSource::citations,
                                         MeanKind::geometric);
    // exp((ln 5 + ln 1) / 2) - 1 = sqrt(5) - 1
    CHECK(geom.value == doctest::Approx(std::sqrt(5.0) - 1.0).epsilon(1e-14));

    // absent readers enter the denominator as zero
    const auto readers = score_journal_year(group, CountSource::readers,
                                            MeanKind::arithmetic);
    CHECK(readers.value == 4.5);
}

TEST_CASE("score_journal_year rejects mixed groups") {
    ArticleRecord a{"a1", "jx", "eco", 2004, DocType::article, 4, std::nullopt};
    ArticleRecord b{"a2", "jy", "eco", 2004, DocType::article, 0, std::nullopt};
    const std::vector<const ArticleRecord*> group{&a, &b};
    CHECK_THROWS_WITH_AS(
        score_journal_year(group, CountSource::citations, MeanKind::arithmetic),
        "inconsistent group: journal jx", DataError);

    CHECK_THROWS_WITH_AS(
        score_journal_year({}, CountSource::citations, MeanKind::arithmetic),
        "empty journal-year", DataError);
}
