#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "wilf/class_model.hpp"

namespace wilf {

/// Deterministic random source; identical seeds reproduce identical sample
/// streams on every platform.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// 53-bit uniform double in [0, 1).
    double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Exact uniform integer in [0, bound) by rejection on raw bits.
    BigInt next_below(const BigInt& bound);

private:
    std::mt19937_64 gen_;
};

/// Letter distribution P(a) = kappa^weight(a), where A(kappa) = 1.
struct SamplerModel {
    AlphabetPtr alphabet;
    double kappa = 0;
    double mean_weight = 0;  // kappa * A'(kappa)
    int period = 1;          // gcd of letter weights
    bool aperiodic = true;
    std::vector<double> cdf;  // cumulative letter probabilities, canonical order
};

SamplerModel build_sampler(AlphabetPtr alphabet);

struct BoltzmannResult {
    Word word;
    long long attempts = 0;  // phase-2 trials including the accepting one
};

/// Two-phase rejection sampler: draw letters until the weight reaches n,
/// accept only exact hits. Output is uniform on the weight-n words.
BoltzmannResult boltzmann_sample(const SamplerModel& m, int n, RandomSource& rng);

/// Exact uniform sampler on C_n from completion counts. Build once per
/// (model, n); the model must outlive the sampler.
class ClassSampler {
public:
    ClassSampler(const ClassModel& model, int n);

    const BigInt& count() const { return total_; }
    Word sample(RandomSource& rng) const;

private:
    const ClassModel* model_;
    int n_;
    BigInt total_;
    std::vector<std::vector<BigInt>> completions_;  // [state][remaining weight]
};

Word uniform_class_sample(const ClassModel& model, int n, RandomSource& rng);

/// Upper-tail p-value of the chi-squared distribution.
double chi_squared_pvalue(double statistic, int dof);

struct ReportRow {
    std::string statistic;
    int n = 0;
    int samples = 0;
    double value = 0;
};

struct EmpiricalReport {
    std::uint64_t seed = 0;
    std::vector<ReportRow> rows;
    std::map<std::string, std::map<long long, long long>> histograms;
};

struct EmpiricalOptions {
    int concentration_length = 0;      // letters per concentration trial; 0 = n
    double concentration_band = 0.1;   // relative deviation from the mean
    std::vector<Word> block_patterns;  // patterns for disjoint-block counts
    int typicality_threshold = -1;     // forwarded to is_typical
};

/// Monte Carlo measurements over uniform C_n words: block-pattern counts,
/// non-dominant weight, dominant-block sizes, typicality fraction, letter
/// concentration, and Boltzmann acceptance for sum-closed classes. Emits
/// numbers only; the assertions live in the test layer.
EmpiricalReport empirical_suite(const ClassModel& model, int n, int samples, RandomSource& rng,
                                const EmpiricalOptions& options = {});

}  // namespace wilf
