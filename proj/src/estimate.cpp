#include "matcon/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace matcon {

void MCConfig::validate() const {
    if (samples < 2) throw std::invalid_argument("Monte Carlo needs at least 2 samples");
    if (!(k >= 0.0)) throw std::invalid_argument("confidence multiplier must be nonnegative");
    if (estimator == EstimatorKind::MedianOfMeans) {
        if (blocks == 0 || samples % blocks != 0) {
            throw std::invalid_argument("median-of-means block count must divide the sample count");
        }
    }
}

std::size_t block_count_for(std::size_t samples, std::size_t preferred) {
    for (std::size_t b = std::min(samples, preferred); b > 1; --b)
        if (samples % b == 0) return b;
    return 1;
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

Estimate summarize(std::span<const double> values, const MCConfig& cfg) {
    Estimate out;
    out.samples = values.size();
    out.seed = cfg.seed;
    out.estimator = cfg.estimator;
    if (values.empty()) return out;

    if (cfg.estimator == EstimatorKind::Mean) {
        double sum = 0.0;
        for (double x : values) sum += x;
        const double mean = sum / static_cast<double>(values.size());
        double ss = 0.0;
        for (double x : values) ss += (x - mean) * (x - mean);
        const double var = values.size() > 1 ? ss / static_cast<double>(values.size() - 1) : 0.0;
        out.mean = mean;
        out.std_error = std::sqrt(var / static_cast<double>(values.size()));
        out.spread = *out.std_error;
        return out;
    }

    const std::size_t blocks = cfg.blocks;
    if (blocks == 0 || values.size() % blocks != 0) {
        throw std::invalid_argument("median-of-means block count must divide the sample count");
    }
    const std::size_t per = values.size() / blocks;
    std::vector<double> block_means(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        double s = 0.0;
        for (std::size_t i = b * per; i < (b + 1) * per; ++i) s += values[i];
        block_means[b] = s / static_cast<double>(per);
    }
    const double med = median(block_means);
    std::vector<double> dev(blocks);
    for (std::size_t b = 0; b < blocks; ++b) dev[b] = std::abs(block_means[b] - med);
    out.mean = med;
    out.spread = median(dev);
    return out;
}

std::string estimator_name(EstimatorKind e) { return e == EstimatorKind::Mean ? "mean" : "mom"; }

}  // namespace matcon
