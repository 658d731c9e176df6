#include "matcon/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "matcon/parallel.hpp"

namespace matcon {

namespace {

std::size_t workers_for(const MCConfig& cfg) { return cfg.workers == 0 ? worker_count() : cfg.workers; }

// Samples are handed out in contiguous chunks so each worker reuses one
// scratch matrix.
constexpr std::size_t kChunk = 16;

}  // namespace

std::vector<SampleRealization> collect_samples(const IndependentSumModel& model, const MCConfig& cfg) {
    cfg.validate();
    std::vector<SampleRealization> out(cfg.samples);
    const std::size_t chunks = (cfg.samples + kChunk - 1) / kChunk;
    parallel_for(chunks, workers_for(cfg), [&](std::size_t c) {
        RectMatrix z(model.d1(), model.d2());
        const std::size_t end = std::min(cfg.samples, (c + 1) * kChunk);
        for (std::size_t k = c * kChunk; k < end; ++k) out[k] = realize_sum(model, cfg.seed, k, z);
    });
    return out;
}

Estimate estimate_norm_moment(const IndependentSumModel& model, int r, const MCConfig& cfg) {
    if (r != 1 && r != 2) throw std::invalid_argument("norm moment order must be 1 or 2");
    const auto samples = collect_samples(model, cfg);
    std::vector<double> values(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k)
        values[k] = r == 1 ? samples[k].norm : samples[k].norm * samples[k].norm;
    return summarize(values, cfg);
}

Estimate estimate_max_summand_sq(const IndependentSumModel& model, const MCConfig& cfg) {
    const auto samples = collect_samples(model, cfg);
    std::vector<double> values(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) values[k] = samples[k].max_summand_sq;
    return summarize(values, cfg);
}

EmpiricalMoments empirical_second_moments(const IndependentSumModel& model, const MCConfig& cfg) {
    cfg.validate();
    if (!model.centered()) throw std::domain_error("empirical second moments need a centered model");
    const std::size_t d1 = model.d1();
    const std::size_t d2 = model.d2();
    const std::size_t n = cfg.samples;

    // Per-sample Gram matrices, stored by index, then reduced in order.
    std::vector<HermitianMatrix> outer(n);
    std::vector<HermitianMatrix> inner(n);
    parallel_for(n, workers_for(cfg), [&](std::size_t k) {
        RectMatrix z(d1, d2);
        realize_sum(model, cfg.seed, k, z);
        outer[k] = gram_outer(z);
        inner[k] = gram_inner(z);
    });

    auto reduce = [n](const std::vector<HermitianMatrix>& mats, std::size_t d, std::vector<double>& se) {
        RectMatrix mean(d, d);
        for (const auto& m : mats) mean += m.matrix();
        mean *= 1.0 / static_cast<double>(n);
        se.assign(d * d, 0.0);
        for (const auto& m : mats)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) se[i * d + j] += std::norm(m(i, j) - mean(i, j));
        for (auto& s : se) s = std::sqrt(s / static_cast<double>(n - 1) / static_cast<double>(n));
        return HermitianMatrix(mean);
    };

    EmpiricalMoments out{SecondMoments{HermitianMatrix(), HermitianMatrix()}, {}, {}, n};
    out.moments.outer = reduce(outer, d1, out.outer_se);
    out.moments.inner = reduce(inner, d2, out.inner_se);
    return out;
}

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Analytic: return "analytic";
        case Provenance::Empirical: return "empirical";
        case Provenance::MonteCarlo: return "montecarlo";
    }
    return "unknown";
}

bool sandwich_holds(double lower, double upper, const Estimate& sqnorm, double k) {
    const double lo = std::sqrt(std::max(0.0, sqnorm.mean - k * sqnorm.spread));
    const double hi = std::sqrt(std::max(0.0, sqnorm.mean + k * sqnorm.spread));
    return hi >= lower && lo <= upper;
}

BoundReport bound_report(const IndependentSumModel& input, const MCConfig& cfg) {
    cfg.validate();
    BoundReport report;
    report.model = input.name();
    report.d1 = input.d1();
    report.d2 = input.d2();
    report.n = input.n();
    report.k = cfg.k;

    std::optional<CenteringResult> centering;
    if (!input.centered()) centering = center(input);
    const IndependentSumModel& model = centering ? centering->model : input;

    if (const auto moments = analytic_second_moments(model)) {
        report.v = variance_param(model, *moments);
        report.v_provenance = Provenance::Analytic;
    } else {
        const auto empirical = empirical_second_moments(model, cfg);
        report.v = variance_param(model, empirical.moments);
        report.v_provenance = Provenance::Empirical;
    }

    const auto samples = collect_samples(model, cfg);
    std::vector<double> norms(samples.size());
    std::vector<double> sqnorms(samples.size());
    std::vector<double> maxsq(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        norms[i] = samples[i].norm;
        sqnorms[i] = samples[i].norm * samples[i].norm;
        maxsq[i] = samples[i].max_summand_sq;
    }

    if (const auto l2 = analytic_large_dev_sq(model)) {
        report.L = std::sqrt(*l2);
        report.L_provenance = Provenance::Analytic;
    } else {
        report.L = std::sqrt(std::max(0.0, summarize(maxsq, cfg).mean));
        report.L_provenance = Provenance::MonteCarlo;
    }
    // An all-zero model can yield v at rounding level with L = 0.
    if (report.L == 0.0) report.v = 0.0;

    const auto second = main_interval(BoundInputs{report.v, report.L, report.d1, report.d2, MomentKind::Second});
    const auto first = main_interval(BoundInputs{report.v, report.L, report.d1, report.d2, MomentKind::First});
    report.C = second.constant;
    report.lower = second.lower;
    report.upper = second.upper;
    report.first_moment_lower = first.lower;

    report.mc_norm = summarize(norms, cfg);
    report.mc_sqnorm = summarize(sqnorms, cfg);
    report.sandwich_ok = sandwich_holds(report.lower, report.upper, report.mc_sqnorm, cfg.k);

    if (centering) {
        const double mean_norm = spectral_norm(centering->mean_sum);
        report.mean_norm = mean_norm;
        report.envelope_lower = std::max(0.0, mean_norm - report.upper);
        report.envelope_upper = mean_norm + report.upper;
    }
    return report;
}

}  // namespace matcon
