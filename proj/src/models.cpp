#include "matcon/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace matcon {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_index(std::size_t index, std::size_t dim, const char* family) {
    if (dim == 0) throw std::invalid_argument(std::string(family) + ": dimension must be positive");
    if (index >= dim) throw std::invalid_argument(std::string(family) + ": index out of range");
}

void validate(const SummandSpec& spec) {
    std::visit(overloaded{
                   [](const FixedRademacher&) {},
                   [](const FixedGaussian&) {},
                   [](const ScaledBasisRademacher& s) {
                       require_index(s.index, s.dim, "scaled_basis_rademacher");
                       if (!std::isfinite(s.scale)) throw std::invalid_argument("scale must be finite");
                   },
                   [](const CenteredBernoulliBasis& s) {
                       require_index(s.index, s.dim, "centered_bernoulli_basis");
                       if (!(s.p > 0.0 && s.p <= 1.0)) throw std::invalid_argument("Bernoulli p must be in (0, 1]");
                   },
                   [](const RademacherEntry& s) {
                       require_index(s.row, s.dim, "rademacher_entry");
                       require_index(s.col, s.dim, "rademacher_entry");
                   },
                   [](const ParetoDiagonal& s) { require_index(s.index, s.dim, "pareto_diagonal"); },
                   [](const FiniteSummand&) {},
               },
               spec);
}

bool family_is_hermitian(const SummandSpec& spec) {
    return std::visit(overloaded{
                          [](const RademacherEntry& s) { return s.row == s.col; },
                          [](const FiniteSummand& f) {
                              if (f.rows() != f.cols()) return false;
                              for (const auto& o : f.outcomes()) {
                                  const RectMatrix diff = o.value - o.value.adjoint();
                                  if (diff.frobenius_norm() > 1e-12 * std::max(1.0, o.value.frobenius_norm()))
                                      return false;
                              }
                              return true;
                          },
                          [](const auto&) { return true; },
                      },
                      spec);
}

bool family_is_centered(const SummandSpec& spec) {
    if (const auto* f = std::get_if<FiniteSummand>(&spec)) return f->is_centered();
    return true;
}

}  // namespace

FixedRademacher::FixedRademacher(HermitianMatrix matrix) : h(std::move(matrix)), norm(spectral_norm(h)) {}

FixedGaussian::FixedGaussian(HermitianMatrix matrix) : h(std::move(matrix)), norm(spectral_norm(h)) {}

// ---------------------------------------------------------------------------
// FiniteSummand

FiniteSummand::FiniteSummand(std::vector<std::pair<double, RectMatrix>> outcomes) {
    if (outcomes.empty()) throw std::invalid_argument("finite summand needs at least one outcome");
    const std::size_t r = outcomes.front().second.rows();
    const std::size_t c = outcomes.front().second.cols();
    double total = 0.0;
    double scale = 0.0;
    mean_ = RectMatrix(r, c);
    for (auto& [p, m] : outcomes) {
        if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("outcome probabilities must be positive");
        if (m.rows() != r || m.cols() != c) throw std::invalid_argument("finite summand outcomes differ in shape");
        total += p;
        mean_.add_scaled(m, p);
        const double nrm = spectral_norm(m);
        scale = std::max(scale, m.frobenius_norm());
        outcomes_.push_back(Outcome{p, std::move(m), nrm});
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("outcome probabilities must sum to 1");
    centered_ = mean_.frobenius_norm() <= 1e-12 * std::max(1.0, scale);
}

FiniteSummand FiniteSummand::centered() const {
    std::vector<std::pair<double, RectMatrix>> shifted;
    shifted.reserve(outcomes_.size());
    for (const auto& o : outcomes_) shifted.emplace_back(o.probability, o.value - mean_);
    FiniteSummand out(std::move(shifted));
    out.centered_ = true;
    return out;
}

// ---------------------------------------------------------------------------
// Shapes and names

std::pair<std::size_t, std::size_t> summand_shape(const SummandSpec& spec) {
    return std::visit(overloaded{
                          [](const FixedRademacher& s) { return std::pair{s.h.dim(), s.h.dim()}; },
                          [](const FixedGaussian& s) { return std::pair{s.h.dim(), s.h.dim()}; },
                          [](const ScaledBasisRademacher& s) { return std::pair{s.dim, s.dim}; },
                          [](const CenteredBernoulliBasis& s) { return std::pair{s.dim, s.dim}; },
                          [](const RademacherEntry& s) { return std::pair{s.dim, s.dim}; },
                          [](const ParetoDiagonal& s) { return std::pair{s.dim, s.dim}; },
                          [](const FiniteSummand& s) { return std::pair{s.rows(), s.cols()}; },
                      },
                      spec);
}

std::string family_name(const SummandSpec& spec) {
    return std::visit(overloaded{
                          [](const FixedRademacher&) { return std::string("fixed_rademacher"); },
                          [](const FixedGaussian&) { return std::string("fixed_gaussian"); },
                          [](const ScaledBasisRademacher&) { return std::string("scaled_basis_rademacher"); },
                          [](const CenteredBernoulliBasis&) { return std::string("centered_bernoulli_basis"); },
                          [](const RademacherEntry&) { return std::string("rademacher_entry"); },
                          [](const ParetoDiagonal&) { return std::string("pareto_diagonal"); },
                          [](const FiniteSummand&) { return std::string("finite"); },
                      },
                      spec);
}

// ---------------------------------------------------------------------------
// IndependentSumModel

IndependentSumModel::IndependentSumModel(std::string name, std::size_t d1, std::size_t d2,
                                         std::vector<SummandSpec> summands, std::size_t n)
    : name_(std::move(name)), d1_(d1), d2_(d2), n_(n == 0 ? summands.size() : n), summands_(std::move(summands)) {
    if (d1_ == 0 || d2_ == 0) throw std::invalid_argument("model dimensions must be positive");
    hermitian_ = d1_ == d2_;
    for (const auto& s : summands_) {
        validate(s);
        const auto [r, c] = summand_shape(s);
        if (r != d1_ || c != d2_) {
            throw std::invalid_argument("summand " + family_name(s) + " has shape " + std::to_string(r) + "x" +
                                        std::to_string(c) + ", model is " + std::to_string(d1_) + "x" +
                                        std::to_string(d2_));
        }
        centered_ = centered_ && family_is_centered(s);
        hermitian_ = hermitian_ && family_is_hermitian(s);
    }
}

std::optional<Example> parse_example(std::string_view name) {
    if (name == "sec71") return Example::Sec71;
    if (name == "sec72") return Example::Sec72;
    if (name == "sec73") return Example::Sec73;
    if (name == "sec74") return Example::Sec74;
    return std::nullopt;
}

std::string example_name(Example e) {
    switch (e) {
        case Example::Sec71: return "sec71";
        case Example::Sec72: return "sec72";
        case Example::Sec73: return "sec73";
        case Example::Sec74: return "sec74";
    }
    return "unknown";
}

IndependentSumModel make_example(Example which, std::size_t d, std::size_t n) {
    if (d == 0) throw std::invalid_argument("example dimension must be at least 1");
    std::vector<SummandSpec> summands;
    switch (which) {
        case Example::Sec71: {
            if (n == 0) throw std::invalid_argument("sec71 needs n >= 1");
            const double scale = 1.0 / std::sqrt(static_cast<double>(n));
            summands.reserve(d * n);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < n; ++j) summands.emplace_back(ScaledBasisRademacher{i, scale, d});
            return IndependentSumModel("sec71", d, d, std::move(summands), n);
        }
        case Example::Sec72: {
            if (n == 0) throw std::invalid_argument("sec72 needs n >= 1");
            const double p = 1.0 / static_cast<double>(n);
            summands.reserve(d * n);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < n; ++j) summands.emplace_back(CenteredBernoulliBasis{i, p, d});
            return IndependentSumModel("sec72", d, d, std::move(summands), n);
        }
        case Example::Sec73:
            summands.reserve(d * d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) summands.emplace_back(RademacherEntry{i, j, d});
            return IndependentSumModel("sec73", d, d, std::move(summands));
        case Example::Sec74:
            for (std::size_t i = 0; i < d; ++i) summands.emplace_back(ParetoDiagonal{i, d});
            return IndependentSumModel("sec74", d, d, std::move(summands));
    }
    throw std::invalid_argument("unknown example");
}

HermitianMatrix random_hermitian(std::size_t d, CounterRng& rng) {
    RectMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        m(i, i) = rng.gaussian();
        for (std::size_t j = i + 1; j < d; ++j) {
            const Complex z{rng.gaussian(), rng.gaussian()};
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return HermitianMatrix(m);
}

IndependentSumModel make_random_rademacher(std::size_t d, std::size_t n, RngSeed seed) {
    CounterRng rng(seed, 0, 0);
    std::vector<SummandSpec> summands;
    summands.reserve(n);
    for (std::size_t i = 0; i < n; ++i) summands.emplace_back(FixedRademacher(random_hermitian(d, rng)));
    return IndependentSumModel("fixed_rademacher", d, d, std::move(summands));
}

// ---------------------------------------------------------------------------
// Sampling

double pareto_sample(double u, int sign) {
    if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("pareto_sample: u must lie in (0, 1]");
    return (sign < 0 ? -1.0 : 1.0) * std::pow(u, -0.25);
}

void SummandDraw::accumulate_into(RectMatrix& z) const {
    if (coefficient == 0.0) return;
    if (dense != nullptr) {
        z.add_scaled(*dense, coefficient);
    } else {
        z(row, col) += coefficient;
    }
}

RectMatrix SummandDraw::to_matrix(std::size_t d1, std::size_t d2) const {
    RectMatrix m(d1, d2);
    accumulate_into(m);
    return m;
}

SummandDraw draw_summand(const SummandSpec& spec, RngSeed seed, std::uint64_t index, std::uint64_t position) {
    CounterRng rng(seed, index, position);
    return std::visit(
        overloaded{
            [&](const FixedRademacher& s) {
                return SummandDraw{static_cast<double>(rng.sign()), &s.h.matrix(), 0, 0, s.norm};
            },
            [&](const FixedGaussian& s) { return SummandDraw{rng.gaussian(), &s.h.matrix(), 0, 0, s.norm}; },
            [&](const ScaledBasisRademacher& s) {
                return SummandDraw{s.scale * rng.sign(), nullptr, s.index, s.index, 1.0};
            },
            [&](const CenteredBernoulliBasis& s) {
                const double delta = rng.bernoulli(s.p) ? 1.0 : 0.0;
                return SummandDraw{delta - s.p, nullptr, s.index, s.index, 1.0};
            },
            [&](const RademacherEntry& s) {
                return SummandDraw{static_cast<double>(rng.sign()), nullptr, s.row, s.col, 1.0};
            },
            [&](const ParetoDiagonal& s) {
                const double u = rng.uniform_open0();
                const int sign = rng.sign();
                return SummandDraw{pareto_sample(u, sign), nullptr, s.index, s.index, 1.0};
            },
            [&](const FiniteSummand& f) {
                const double u = rng.uniform();
                double cumulative = 0.0;
                const auto& outs = f.outcomes();
                std::size_t k = 0;
                for (; k + 1 < outs.size(); ++k) {
                    cumulative += outs[k].probability;
                    if (u < cumulative) break;
                }
                return SummandDraw{1.0, &outs[k].value, 0, 0, outs[k].norm};
            },
        },
        spec);
}

std::vector<RectMatrix> sample_summands(const IndependentSumModel& model, RngSeed seed, std::uint64_t index) {
    std::vector<RectMatrix> out;
    out.reserve(model.size());
    for (std::size_t i = 0; i < model.size(); ++i)
        out.push_back(draw_summand(model.summands()[i], seed, index, i).to_matrix(model.d1(), model.d2()));
    return out;
}

SampleRealization realize_sum(const IndependentSumModel& model, RngSeed seed, std::uint64_t index, RectMatrix& z) {
    if (z.rows() != model.d1() || z.cols() != model.d2()) {
        z = RectMatrix(model.d1(), model.d2());
    } else {
        z.set_zero();
    }
    SampleRealization out;
    for (std::size_t i = 0; i < model.size(); ++i) {
        const SummandDraw draw = draw_summand(model.summands()[i], seed, index, i);
        draw.accumulate_into(z);
        const double nrm = draw.norm();
        out.max_summand_sq = std::max(out.max_summand_sq, nrm * nrm);
    }
    out.norm = model.hermitian() && !z.is_diagonal() ? spectral_norm(HermitianMatrix(z)) : spectral_norm(z);
    return out;
}

// ---------------------------------------------------------------------------
// Moments

namespace {

HermitianMatrix basis_projector(std::size_t d, std::size_t i, double weight) {
    RectMatrix m(d, d);
    m(i, i) = weight;
    return HermitianMatrix(m);
}

}  // namespace

SecondMoments summand_second_moments(const SummandSpec& spec) {
    return std::visit(overloaded{
                          [](const FixedRademacher& s) {
                              const auto sq = matrix_power(s.h, 2);
                              return SecondMoments{sq, sq};
                          },
                          [](const FixedGaussian& s) {
                              const auto sq = matrix_power(s.h, 2);
                              return SecondMoments{sq, sq};
                          },
                          [](const ScaledBasisRademacher& s) {
                              const auto m = basis_projector(s.dim, s.index, s.scale * s.scale);
                              return SecondMoments{m, m};
                          },
                          [](const CenteredBernoulliBasis& s) {
                              const auto m = basis_projector(s.dim, s.index, s.p * (1.0 - s.p));
                              return SecondMoments{m, m};
                          },
                          [](const RademacherEntry& s) {
                              // E_ij E_ij* = E_ii, E_ij* E_ij = E_jj
                              return SecondMoments{basis_projector(s.dim, s.row, 1.0),
                                                   basis_projector(s.dim, s.col, 1.0)};
                          },
                          [](const ParetoDiagonal& s) {
                              // E P^2 = 1 + int_1^inf s^-2 ds = 2
                              const auto m = basis_projector(s.dim, s.index, 2.0);
                              return SecondMoments{m, m};
                          },
                          [](const FiniteSummand& f) {
                              RectMatrix outer(f.rows(), f.rows());
                              RectMatrix inner(f.cols(), f.cols());
                              for (const auto& o : f.outcomes()) {
                                  outer.add_scaled(gram_outer(o.value).matrix(), o.probability);
                                  inner.add_scaled(gram_inner(o.value).matrix(), o.probability);
                              }
                              return SecondMoments{HermitianMatrix(outer), HermitianMatrix(inner)};
                          },
                      },
                      spec);
}

RectMatrix summand_mean(const SummandSpec& spec) {
    if (const auto* f = std::get_if<FiniteSummand>(&spec)) return f->mean();
    const auto [r, c] = summand_shape(spec);
    return RectMatrix(r, c);
}

std::optional<SecondMoments> analytic_second_moments(const IndependentSumModel& model) {
    if (!model.centered()) throw std::domain_error("second moments of Z require a centered model; call center()");
    SecondMoments total{HermitianMatrix::zero(model.d1()), HermitianMatrix::zero(model.d2())};
    // Basis-type summands only touch the diagonal, so they are accumulated as
    // vectors; building a dense d x d matrix per summand costs O(n d^3) overall.
    std::vector<double> outer_diag(model.d1(), 0.0), inner_diag(model.d2(), 0.0);
    bool dense_seen = false;
    for (const auto& s : model.summands()) {
        const bool diagonal = std::visit(
            overloaded{
                [&](const ScaledBasisRademacher& b) {
                    outer_diag[b.index] += b.scale * b.scale;
                    inner_diag[b.index] += b.scale * b.scale;
                    return true;
                },
                [&](const CenteredBernoulliBasis& b) {
                    outer_diag[b.index] += b.p * (1.0 - b.p);
                    inner_diag[b.index] += b.p * (1.0 - b.p);
                    return true;
                },
                [&](const RademacherEntry& e) {
                    outer_diag[e.row] += 1.0;
                    inner_diag[e.col] += 1.0;
                    return true;
                },
                [&](const ParetoDiagonal& b) {
                    outer_diag[b.index] += 2.0;
                    inner_diag[b.index] += 2.0;
                    return true;
                },
                [](const auto&) { return false; },
            },
            s);
        if (diagonal) continue;
        const auto m = summand_second_moments(s);
        total.outer += m.outer;
        total.inner += m.inner;
        dense_seen = true;
    }
    const HermitianMatrix outer_part(RectMatrix::diagonal(outer_diag));
    const HermitianMatrix inner_part(RectMatrix::diagonal(inner_diag));
    if (!dense_seen) return SecondMoments{outer_part, inner_part};
    total.outer += outer_part;
    total.inner += inner_part;
    return total;
}

std::optional<std::vector<std::pair<double, double>>> norm_sq_distribution(const SummandSpec& spec) {
    using Dist = std::vector<std::pair<double, double>>;
    return std::visit(overloaded{
                          [](const FixedRademacher& s) -> std::optional<Dist> { return Dist{{s.norm * s.norm, 1.0}}; },
                          [](const FixedGaussian&) -> std::optional<Dist> { return std::nullopt; },
                          [](const ScaledBasisRademacher& s) -> std::optional<Dist> {
                              return Dist{{s.scale * s.scale, 1.0}};
                          },
                          [](const CenteredBernoulliBasis& s) -> std::optional<Dist> {
                              const double hi = (1.0 - s.p) * (1.0 - s.p);
                              const double lo = s.p * s.p;
                              if (s.p == 1.0) return Dist{{0.0, 1.0}};
                              return Dist{{hi, s.p}, {lo, 1.0 - s.p}};
                          },
                          [](const RademacherEntry&) -> std::optional<Dist> { return Dist{{1.0, 1.0}}; },
                          [](const ParetoDiagonal&) -> std::optional<Dist> { return std::nullopt; },
                          [](const FiniteSummand& f) -> std::optional<Dist> {
                              Dist out;
                              for (const auto& o : f.outcomes()) out.emplace_back(o.norm * o.norm, o.probability);
                              return out;
                          },
                      },
                      spec);
}

CenteringResult center(const IndependentSumModel& model) {
    RectMatrix mean_sum(model.d1(), model.d2());
    std::vector<SummandSpec> summands;
    summands.reserve(model.size());
    for (const auto& s : model.summands()) {
        mean_sum += summand_mean(s);
        if (const auto* f = std::get_if<FiniteSummand>(&s); f != nullptr && !f->is_centered()) {
            summands.emplace_back(f->centered());
        } else {
            summands.push_back(s);
        }
    }
    return CenteringResult{IndependentSumModel(model.name(), model.d1(), model.d2(), std::move(summands), model.n()),
                           std::move(mean_sum)};
}

}  // namespace matcon
