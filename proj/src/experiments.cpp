#include "matcon/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "matcon/models.hpp"
#include "matcon/montecarlo.hpp"
#include "matcon/output.hpp"

namespace matcon {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::optional<ExperimentId> parse_experiment(std::string_view name) {
    if (name == "sec71") return ExperimentId::Sec71;
    if (name == "sec72") return ExperimentId::Sec72;
    if (name == "sec73") return ExperimentId::Sec73;
    if (name == "sec74") return ExperimentId::Sec74;
    if (name == "rademacher_sharpness") return ExperimentId::RademacherSharpness;
    return std::nullopt;
}

std::string experiment_name(ExperimentId id) {
    switch (id) {
        case ExperimentId::Sec71: return "sec71";
        case ExperimentId::Sec72: return "sec72";
        case ExperimentId::Sec73: return "sec73";
        case ExperimentId::Sec74: return "sec74";
        case ExperimentId::RademacherSharpness: return "rademacher_sharpness";
    }
    return "unknown";
}

void ExperimentSpec::validate() const {
    if (ds.empty()) throw std::invalid_argument("experiment grid is empty");
    for (std::size_t d : ds)
        if (d == 0) throw std::invalid_argument("experiment dimensions must be at least 1");
    const bool uses_n = id == ExperimentId::Sec71 || id == ExperimentId::Sec72 || id == ExperimentId::RademacherSharpness;
    if (uses_n && n == 0) throw std::invalid_argument("this experiment needs n >= 1");
    cfg.validate();
}

EstimatorKind default_estimator(ExperimentId id) {
    return id == ExperimentId::Sec74 ? EstimatorKind::MedianOfMeans : EstimatorKind::Mean;
}

ExperimentSpec default_experiment(ExperimentId id) {
    ExperimentSpec spec;
    spec.id = id;
    switch (id) {
        case ExperimentId::Sec71:
        case ExperimentId::RademacherSharpness:
            spec.ds = {16, 64, 256};
            spec.n = 400;
            break;
        case ExperimentId::Sec72:
            spec.ds = {4, 16, 64};
            spec.n = 100;
            break;
        case ExperimentId::Sec73: spec.ds = {4, 16, 64}; break;
        case ExperimentId::Sec74: spec.ds = {8, 32, 128}; break;
    }
    spec.cfg.estimator = default_estimator(id);
    spec.cfg.blocks = block_count_for(spec.cfg.samples);
    return spec;
}

namespace {

Example model_for(ExperimentId id) {
    switch (id) {
        case ExperimentId::Sec71:
        case ExperimentId::RademacherSharpness: return Example::Sec71;
        case ExperimentId::Sec72: return Example::Sec72;
        case ExperimentId::Sec73: return Example::Sec73;
        case ExperimentId::Sec74: return Example::Sec74;
    }
    throw std::invalid_argument("unknown experiment");
}

double ratio_for(ExperimentId id, double d, double mc) {
    const double root = std::sqrt(mc);
    switch (id) {
        case ExperimentId::Sec71: return d > 1.0 ? mc / (2.0 * std::log(d)) : kNaN;
        case ExperimentId::Sec72: return d >= 3.0 ? root * std::log(std::log(d)) / std::log(d) : kNaN;
        case ExperimentId::Sec73: return root / std::sqrt(d);
        case ExperimentId::Sec74: return root / d;
        case ExperimentId::RademacherSharpness: return d > 1.0 ? root / std::sqrt(2.0 * std::log(d)) : kNaN;
    }
    return kNaN;
}

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs at least two points");
    const double k = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("log-log fit needs positive data");
        sx += std::log(x[i]);
        sy += std::log(y[i]);
    }
    const double mx = sx / k, my = sy / k;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw std::invalid_argument("slope fit needs distinct x values");
    return sxy / sxx;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult result;
    const std::string name = experiment_name(spec.id);
    std::vector<double> fit_d;
    std::vector<double> fit_l2;
    for (std::size_t d : spec.ds) {
        const IndependentSumModel model = make_example(model_for(spec.id), d, spec.n);
        const BoundReport rep = bound_report(model, spec.cfg);
        ExperimentRow row;
        row.experiment = name;
        row.d = d;
        row.n = model.n();
        row.samples = spec.cfg.samples;
        row.seed = spec.cfg.seed.value;
        row.v = rep.v;
        row.L = rep.L;
        row.C = rep.C;
        row.lower = rep.lower;
        row.upper = rep.upper;
        row.mc_sqnorm_mean = rep.mc_sqnorm.mean;
        row.mc_se = rep.mc_sqnorm.spread;
        row.ratio = ratio_for(spec.id, static_cast<double>(d), rep.mc_sqnorm.mean);
        row.sandwich_ok = rep.sandwich_ok;
        result.all_sandwich_ok = result.all_sandwich_ok && rep.sandwich_ok;
        result.rows.push_back(row);
        fit_d.push_back(static_cast<double>(d));
        fit_l2.push_back(rep.L * rep.L);
    }
    if (spec.id == ExperimentId::Sec74 && fit_d.size() >= 2) {
        const double slope = loglog_slope(fit_d, fit_l2);
        result.fitted_exponent = slope;
        ExperimentRow fit;
        fit.experiment = "sec74_fit";
        fit.samples = spec.cfg.samples;
        fit.seed = spec.cfg.seed.value;
        fit.v = fit.L = fit.C = fit.lower = fit.upper = fit.mc_sqnorm_mean = fit.mc_se = kNaN;
        fit.ratio = slope;
        result.rows.push_back(fit);
    }
    return result;
}

std::string experiment_csv_header() { return "experiment,d,n,samples,seed,v,L,C,lower,upper,mc_sqnorm_mean,mc_se,ratio"; }

std::string experiment_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << experiment_csv_header() << '\n';
    for (const auto& r : result.rows) {
        out << r.experiment << ',' << r.d << ',' << r.n << ',' << r.samples << ',' << r.seed << ','
            << format_number(r.v) << ',' << format_number(r.L) << ',' << format_number(r.C) << ','
            << format_number(r.lower) << ',' << format_number(r.upper) << ',' << format_number(r.mc_sqnorm_mean)
            << ',' << format_number(r.mc_se) << ',' << format_number(r.ratio) << '\n';
    }
    return out.str();
}

nlohmann::ordered_json experiment_json(const ExperimentResult& result) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : result.rows) {
        nlohmann::ordered_json j;
        j["experiment"] = r.experiment;
        j["d"] = r.d;
        j["n"] = r.n;
        j["samples"] = r.samples;
        j["seed"] = r.seed;
        j["v"] = json_number(r.v);
        j["L"] = json_number(r.L);
        j["C"] = json_number(r.C);
        j["lower"] = json_number(r.lower);
        j["upper"] = json_number(r.upper);
        j["mc_sqnorm_mean"] = json_number(r.mc_sqnorm_mean);
        j["mc_se"] = json_number(r.mc_se);
        j["ratio"] = json_number(r.ratio);
        rows.push_back(std::move(j));
    }
    return rows;
}

std::string experiment_svg(const ExperimentResult& result) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : result.rows)
        if (r.d > 0 && std::isfinite(r.ratio)) pts.emplace_back(std::log(static_cast<double>(r.d)), r.ratio);

    constexpr double W = 480, H = 320, M = 48;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n";
    const std::string title = result.rows.empty() ? std::string() : result.rows.front().experiment;
    svg << "<text x=\"" << W / 2 << "\" y=\"" << M / 2 << "\" text-anchor=\"middle\">" << title
        << ": ratio vs d</text>\n";
    if (!pts.empty()) {
        double x0 = pts.front().first, x1 = x0, y0 = 0.0, y1 = 0.0;
        for (const auto& [x, y] : pts) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y1 = std::max(y1, y);
            y0 = std::min(y0, y);
        }
        if (x1 == x0) x1 = x0 + 1.0;
        if (y1 == y0) y1 = y0 + 1.0;
        auto px = [&](double x) { return M + (x - x0) / (x1 - x0) * (W - 2 * M); };
        auto py = [&](double y) { return H - M - (y - y0) / (y1 - y0) * (H - 2 * M); };
        svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : pts) svg << format_number(px(x)) << ',' << format_number(py(y)) << ' ';
        svg << "\"/>\n";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto& [x, y] = pts[i];
            svg << "<circle cx=\"" << format_number(px(x)) << "\" cy=\"" << format_number(py(y))
                << "\" r=\"3\" fill=\"steelblue\"/>\n";
            svg << "<text x=\"" << format_number(px(x)) << "\" y=\"" << H - M + 16 << "\" text-anchor=\"middle\">d="
                << format_number(std::exp(x)) << "</text>\n";
        }
        svg << "<text x=\"" << M - 4 << "\" y=\"" << format_number(py(y1)) << "\" text-anchor=\"end\">"
            << format_number(y1) << "</text>\n";
        svg << "<text x=\"" << M - 4 << "\" y=\"" << format_number(py(y0)) << "\" text-anchor=\"end\">"
            << format_number(y0) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace matcon
