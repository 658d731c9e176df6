#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "matcon/rng.hpp"

namespace matcon {

enum class EstimatorKind { Mean, MedianOfMeans };

inline constexpr std::size_t kDefaultBlocks = 16;

struct MCConfig {
    std::size_t samples = 200;
    RngSeed seed{};
    EstimatorKind estimator = EstimatorKind::Mean;
    std::size_t blocks = kDefaultBlocks;  ///< median-of-means only
    double k = 3.0;                       ///< confidence multiplier
    std::size_t workers = 0;              ///< 0: MATCON_THREADS / hardware

    /// samples >= 2; blocks >= 1 and divides samples for median-of-means.
    void validate() const;
};

/// Largest divisor of `samples` that does not exceed `preferred`.
std::size_t block_count_for(std::size_t samples, std::size_t preferred = kDefaultBlocks);

struct Estimate {
    double mean = 0.0;
    std::optional<double> std_error;  ///< sample sd / sqrt(samples); absent for median-of-means
    double spread = 0.0;              ///< std_error, or the inter-block MAD for median-of-means
    std::size_t samples = 0;
    RngSeed seed{};
    EstimatorKind estimator = EstimatorKind::Mean;
};

/// Reduces per-sample values (in index order) with the configured estimator.
Estimate summarize(std::span<const double> values, const MCConfig& cfg);

std::string estimator_name(EstimatorKind e);

}  // namespace matcon
