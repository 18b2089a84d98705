#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "jifkit/corpus.hpp"

namespace jifkit {

// Parameters of a seeded synthetic field. Citation counts are discretized
// lognormal, max(0, floor(exp(z)) - 1) with z ~ Normal(mu_jy, sigma^2),
// which reproduces the heavy right tail of real per-article counts.
//
// Per journal j: location mu_j ~ Uniform[mu_min, mu_max] and a yearly
// article count ~ Uniform{articles_min..articles_max}, both drawn once.
// Per journal-year: mu_jy = mu_j + drift * eps with eps ~ Normal(0, 1);
// with probability shock_rate one uniformly chosen article's count is
// replaced by shock_count. Identical specs yield identical corpora.
struct FieldSpec {
    std::size_t n_journals = 0;
    int year_first = 0;
    int year_last = 0;
    std::size_t articles_min = 0;
    std::size_t articles_max = 0;
    double mu_min = 0.0;
    double mu_max = 0.0;
    double sigma = 1.0;      // > 0
    double drift = 0.0;      // >= 0
    double shock_rate = 0.0; // in [0, 1]
    std::int64_t shock_count = 1;  // >= 1
    std::uint64_t seed = 0;
    std::string subcategory = "synthetic";

    // Optional reader counts, same mechanism with independent parameters
    // and an independent stream (no reader shocks).
    bool readers = false;
    double readers_mu_min = 0.0;
    double readers_mu_max = 0.0;
    double readers_sigma = 1.0;

    void validate() const;  // throws DataError naming the offending field

    bool operator==(const FieldSpec&) const = default;
};

Corpus generate_corpus(const FieldSpec& spec);

// key = value config file; '#' starts a comment. Unknown keys are errors.
FieldSpec load_field_spec(const std::filesystem::path& path);
void save_field_spec(const FieldSpec& spec, const std::filesystem::path& path);

// Lower-middle order statistic; for odd n the usual median. Always an
// element of the vector, so a median substitution is well defined.
std::int64_t low_median(std::span<const std::int64_t> counts);

// Baseline with its first low-median-valued element replaced by
// shock_count. n stays fixed: rank displacement isolates the count effect.
std::vector<std::int64_t> apply_shock(std::span<const std::int64_t> baseline,
                                      std::int64_t shock_count);

struct ShockOutcome {
    double value_before = 0.0;  // impact value without the outlier
    double value_after = 0.0;   // with the outlier substituted
    double rank_before = 0.0;
    double rank_after = 0.0;

    double value_delta() const { return value_after - value_before; }
    double rank_displacement() const { return std::abs(rank_after - rank_before); }
};

// Single-article shock experiment. The shocked journal publishes its
// baseline counts in the field's first year; in the second year it is
// ranked twice against the same generated field (citations, no size
// filter): once with the baseline counts and once with the outlier
// substituted. Before and after differ only in that one article, so the
// displacement is the shock's alone; a shock at the median value moves
// nothing.
struct ShockExperiment {
    std::vector<std::int64_t> baseline;  // shocked journal, outlier-free
    std::int64_t shock_count = 0;
    FieldSpec field;  // surrounding journals; must span >= 2 years

    ShockOutcome arithmetic;  // filled by run_shock_experiment
    ShockOutcome geometric;
};

ShockExperiment run_shock_experiment(ShockExperiment exp);

// A 10-article journal in a 20-journal field whose second year carries one
// article at 170 citations over a 30-citation runner-up.
ShockExperiment systematics_preset();

// A 52-article journal whose one 192-citation article towers over an
// 8-citation runner-up; large n keeps the geometric mean almost unmoved.
ShockExperiment fly_preset();

}  // namespace jifkit
