#include "wilf/sampler.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wilf {

BigInt RandomSource::next_below(const BigInt& bound) {
    if (bound <= 0) throw std::invalid_argument("next_below needs a positive bound");
    if (bound == 1) return 0;
    const unsigned bits = boost::multiprecision::msb(bound) + 1;
    const unsigned chunks = (bits + 63) / 64;
    while (true) {
        BigInt value = 0;
        for (unsigned i = 0; i < chunks; ++i) value = (value << 64) | next_u64();
        value >>= chunks * 64 - bits;
        if (value < bound) return value;
    }
}

SamplerModel build_sampler(AlphabetPtr alphabet) {
    if (!alphabet || alphabet->size() == 0)
        throw std::invalid_argument("sampler needs a nonempty alphabet");
    SamplerModel m;
    m.alphabet = std::move(alphabet);

    auto A = [&](double x) {
        double acc = 0;
        for (int b = 0; b < m.alphabet->size(); ++b) acc += std::pow(x, m.alphabet->weight(b));
        return acc;
    };
    // A increases from 0 to |A| >= 1 on [0, 1]
    double lo = 0, hi = 1;
    while (hi - lo > 1e-13) {
        double mid = 0.5 * (lo + hi);
        (A(mid) < 1 ? lo : hi) = mid;
    }
    m.kappa = 0.5 * (lo + hi);
    if (m.alphabet->size() == 1) m.kappa = 1.0;  // A(x) = x^w exactly

    double mean = 0;
    for (int b = 0; b < m.alphabet->size(); ++b)
        mean += m.alphabet->weight(b) * std::pow(m.kappa, m.alphabet->weight(b));
    m.mean_weight = mean;

    m.period = m.alphabet->weight_gcd();
    m.aperiodic = (m.period == 1);

    double acc = 0;
    for (int b = 0; b < m.alphabet->size(); ++b) {
        acc += std::pow(m.kappa, m.alphabet->weight(b));
        m.cdf.push_back(acc);
    }
    if (std::abs(acc - 1.0) > 1e-9)
        throw std::logic_error("letter probabilities do not sum to one");
    m.cdf.back() = 1.0;
    return m;
}

namespace {

int draw_letter(const SamplerModel& m, RandomSource& rng) {
    double u = rng.next_unit();
    for (int b = 0; b < m.alphabet->size(); ++b)
        if (u < m.cdf[static_cast<size_t>(b)]) return b;
    return m.alphabet->size() - 1;
}

constexpr long long kRejectionCap = 10'000'000;

}  // namespace

BoltzmannResult boltzmann_sample(const SamplerModel& m, int n, RandomSource& rng) {
    if (n % m.period != 0)
        throw std::invalid_argument("weight " + std::to_string(n) +
                                    " is unreachable for a period-" + std::to_string(m.period) +
                                    " alphabet");
    BoltzmannResult out;
    out.word = Word(m.alphabet);
    for (out.attempts = 1;; ++out.attempts) {
        if (out.attempts > kRejectionCap)
            throw std::runtime_error("rejection sampler exceeded its restart cap");
        std::vector<int> ids;
        int weight = 0;
        while (weight < n) {
            int b = draw_letter(m, rng);
            ids.push_back(b);
            weight += m.alphabet->weight(b);
        }
        if (weight == n) {
            out.word = Word(m.alphabet, std::move(ids));
            return out;
        }
    }
}

ClassSampler::ClassSampler(const ClassModel& model, int n) : model_(&model), n_(n) {
    const auto& g = model.prefix_graph();
    const Alphabet& a = *model.alphabet();
    completions_.assign(static_cast<size_t>(g.state_count()),
                        std::vector<BigInt>(static_cast<size_t>(n) + 1, 0));
    for (int s = 0; s < g.state_count(); ++s) completions_[static_cast<size_t>(s)][0] = 1;
    for (int r = 1; r <= n; ++r)
        for (int s = 0; s < g.state_count(); ++s)
            for (int b = 0; b < a.size(); ++b) {
                int t = g.transitions[static_cast<size_t>(s)][static_cast<size_t>(b)];
                if (t < 0 || a.weight(b) > r) continue;
                completions_[static_cast<size_t>(s)][static_cast<size_t>(r)] +=
                    completions_[static_cast<size_t>(t)][static_cast<size_t>(r - a.weight(b))];
            }
    total_ = completions_[0][static_cast<size_t>(n)];
    if (total_ == 0)
        throw std::invalid_argument("the class has no words of weight " + std::to_string(n));
}

Word ClassSampler::sample(RandomSource& rng) const {
    const auto& g = model_->prefix_graph();
    const Alphabet& a = *model_->alphabet();
    std::vector<int> ids;
    int state = 0;
    int remaining = n_;
    while (remaining > 0) {
        BigInt u = rng.next_below(completions_[static_cast<size_t>(state)][static_cast<size_t>(remaining)]);
        for (int b = 0; b < a.size(); ++b) {
            int t = g.transitions[static_cast<size_t>(state)][static_cast<size_t>(b)];
            if (t < 0 || a.weight(b) > remaining) continue;
            const BigInt& ways =
                completions_[static_cast<size_t>(t)][static_cast<size_t>(remaining - a.weight(b))];
            if (u < ways) {
                ids.push_back(b);
                state = t;
                remaining -= a.weight(b);
                break;
            }
            u -= ways;
        }
    }
    return Word(model_->alphabet(), std::move(ids));
}

Word uniform_class_sample(const ClassModel& model, int n, RandomSource& rng) {
    return ClassSampler(model, n).sample(rng);
}

double chi_squared_pvalue(double statistic, int dof) {
    boost::math::chi_squared dist(dof);
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

EmpiricalReport empirical_suite(const ClassModel& model, int n, int samples, RandomSource& rng,
                                const EmpiricalOptions& options) {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    EmpiricalReport report;
    SamplerModel letters = build_sampler(model.alphabet());

    // letter-level concentration: weight of a fixed-length random letter run
    const int k = options.concentration_length > 0 ? options.concentration_length : n;
    {
        long long outside = 0;
        auto& hist = report.histograms["letter_run_weight"];
        for (int trial = 0; trial < samples; ++trial) {
            int weight = 0;
            for (int i = 0; i < k; ++i) weight += model.alphabet()->weight(draw_letter(letters, rng));
            ++hist[weight];
            double ratio = weight / (k * letters.mean_weight);
            if (std::abs(ratio - 1.0) > options.concentration_band) ++outside;
        }
        report.rows.push_back({"concentration_outside_band", k, samples,
                               static_cast<double>(outside) / samples});
    }

    // uniform words of C_n
    ClassSampler sampler(model, n);
    const int large = model.large_block_weight();
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    long long all_large = 0, nondom_small = 0, typical = 0;
    double nondom_sum = 0;
    std::vector<std::vector<int>> block_counts(options.block_patterns.size());
    for (int trial = 0; trial < samples; ++trial) {
        Word w = sampler.sample(rng);
        for (size_t p = 0; p < options.block_patterns.size(); ++p)
            block_counts[p].push_back(count_disjoint_blocks(w, options.block_patterns[p]));

        auto pre = model.prefix_decomposition(w);
        auto suf = model.suffix_decomposition(w);
        bool large_ok = true;
        int nondom_weight = 0;
        auto scan = [&](const Decomposition& d, const StateGraph& g, bool count_nondom) {
            for (size_t j = 0; j < d.blocks.size(); ++j) {
                bool dom = g.dominant[static_cast<size_t>(d.block_states[j])];
                if (dom && d.blocks[j].weight() < large) large_ok = false;
                if (!dom && count_nondom) nondom_weight += d.blocks[j].weight();
            }
        };
        scan(pre, model.prefix_graph(), true);
        scan(suf, model.suffix_graph(), false);
        if (large_ok) ++all_large;
        if (nondom_weight <= sqrt_n) ++nondom_small;
        nondom_sum += nondom_weight;
        ++report.histograms["nondominant_weight"][nondom_weight];

        if (model.is_typical(w, options.typicality_threshold).typical) ++typical;
    }
    report.rows.push_back({"dominant_blocks_all_large_frac", n, samples,
                           static_cast<double>(all_large) / samples});
    report.rows.push_back({"nondominant_le_sqrt_frac", n, samples,
                           static_cast<double>(nondom_small) / samples});
    report.rows.push_back({"nondominant_weight_mean", n, samples, nondom_sum / samples});
    report.rows.push_back({"typical_frac", n, samples, static_cast<double>(typical) / samples});
    for (size_t p = 0; p < options.block_patterns.size(); ++p) {
        auto& counts = block_counts[p];
        std::sort(counts.begin(), counts.end());
        const std::string tag = options.block_patterns[p].str();
        double mean = std::accumulate(counts.begin(), counts.end(), 0.0) / samples;
        double p01 = counts[static_cast<size_t>(samples / 100)] / static_cast<double>(n);
        report.rows.push_back({"pblocks_min_" + tag, n, samples, static_cast<double>(counts.front())});
        report.rows.push_back({"pblocks_mean_" + tag, n, samples, mean});
        report.rows.push_back({"pblocks_ratio_p01_" + tag, n, samples, p01});
        auto& hist = report.histograms["pblocks_" + tag];
        for (int c : counts) ++hist[c];
    }

    // rejection-sampler acceptance over the same weight, sum-closed case
    if (model.is_sum_closed() && n % letters.period == 0) {
        long long attempts = 0;
        for (int trial = 0; trial < samples; ++trial)
            attempts += boltzmann_sample(letters, n, rng).attempts;
        report.rows.push_back({"boltzmann_acceptance_rate", n, samples,
                               static_cast<double>(samples) / static_cast<double>(attempts)});
    }
    return report;
}

}  // namespace wilf
