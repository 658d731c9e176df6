#include "matcon/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "matcon/bounds.hpp"
#include "matcon/output.hpp"
#include "matcon/parallel.hpp"

namespace matcon {

using ojson = nlohmann::ordered_json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t resolve(std::size_t workers) { return workers == 0 ? worker_count() : workers; }

ojson matrix_json(const RectMatrix& m) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(ojson::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

ojson matrix_json(const HermitianMatrix& h) { return matrix_json(h.matrix()); }

// Per-case record kept by index so the summary never depends on scheduling.
struct CaseRecord {
    bool holds = true;
    double slack = std::numeric_limits<double>::infinity();
};

SuiteOutcome summarize_records(std::string name, const std::vector<CaseRecord>& records) {
    SuiteOutcome out;
    out.name = std::move(name);
    out.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].holds) {
            ++out.passed;
        } else {
            ++out.failed;
            if (!out.first_failure_index) out.first_failure_index = i;
        }
        out.worst_slack = std::min(out.worst_slack, records[i].slack);
    }
    return out;
}

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
    if (name == "facts") return Suite::Facts;
    if (name == "symmetrization") return Suite::Symmetrization;
    if (name == "rademacher") return Suite::Rademacher;
    if (name == "all") return Suite::All;
    return std::nullopt;
}

bool VerifyResult::all_passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteOutcome& s) { return s.failed == 0; });
}

ojson fact_case_json(const FactCase& c) {
    ojson j;
    j["kind"] = fact_name(c.kind());
    std::visit(overloaded{
                   [&](const HeinzPayload& p) {
                       j["theta"] = p.theta;
                       j["lambda"] = p.lambda;
                       j["mu"] = p.mu;
                   },
                   [&](const GmAmPayload& p) {
                       j["r"] = p.r;
                       j["q"] = p.q;
                       j["H"] = matrix_json(p.h);
                       j["W"] = matrix_json(p.w);
                       j["Y"] = matrix_json(p.y);
                   },
                   [&](const SumSquaresPayload& p) {
                       ojson list = ojson::array();
                       for (const auto& a : p.a) list.push_back(matrix_json(a));
                       j["A"] = std::move(list);
                   },
                   [&](const TraceProductPayload& p) {
                       j["H"] = matrix_json(p.h);
                       j["A"] = matrix_json(p.a);
                   },
                   [&](const MonotonicityPayload& p) {
                       j["A"] = matrix_json(p.a);
                       j["H"] = matrix_json(p.h);
                   },
                   [&](const DiffPowersPayload& p) {
                       j["p"] = p.p;
                       j["W"] = matrix_json(p.w);
                       j["Y"] = matrix_json(p.y);
                   },
                   [&](const DoubleFactorialPayload& p) { j["p"] = p.p; },
                   [&](const DilationSquarePayload& p) { j["B"] = matrix_json(p.b); },
               },
               c.payload());
    return j;
}

SuiteOutcome verify_fact_kind(FactKind kind, RngSeed seed, std::size_t cases, FaultInjection fault,
                              std::size_t workers) {
    std::vector<CaseRecord> records(cases);
    parallel_for(cases, resolve(workers), [&](std::size_t i) {
        const CheckResult r = verify_fact(random_fact_case(kind, seed, i), fault);
        records[i] = CaseRecord{r.holds, r.slack / std::max(1.0, std::abs(r.rhs))};
    });
    SuiteOutcome out = summarize_records("facts/" + fact_name(kind), records);
    if (out.first_failure_index) {
        const FactCase c = random_fact_case(kind, seed, *out.first_failure_index);
        const CheckResult r = verify_fact(c, fault);
        ojson j;
        j["seed"] = seed.value;
        j["index"] = *out.first_failure_index;
        j["lhs"] = r.lhs;
        j["rhs"] = r.rhs;
        j["tolerance"] = r.tolerance;
        j["case"] = fact_case_json(c);
        out.first_failure = std::move(j);
    }
    return out;
}

namespace {

struct SymInstance {
    std::vector<FiniteSummand> summands;
    unsigned r;
};

SymInstance symmetrization_instance(RngSeed seed, std::uint64_t index) {
    CounterRng rng(seed, index, 0x5e);
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 5.0);
    const std::size_t d1 = 1 + static_cast<std::size_t>(rng.uniform() * 3.0);
    const std::size_t d2 = 1 + static_cast<std::size_t>(rng.uniform() * 3.0);
    const unsigned r = index % 2 == 0 ? 1u : 2u;
    return SymInstance{random_finite_family(n, d1, d2, 2, rng), r};
}

}  // namespace

SuiteOutcome verify_symmetrization(RngSeed seed, std::size_t cases, std::size_t workers) {
    std::vector<CaseRecord> records(cases);
    parallel_for(cases, resolve(workers), [&](std::size_t i) {
        const SymInstance inst = symmetrization_instance(seed, i);
        const SymmetrizationResult s = symmetrization_check(inst.summands, inst.r);
        const double scale = std::max(1.0, s.m);
        const double slack = std::min({s.m - 0.5 * s.r_centered, 2.0 * s.r_centered - s.m, 2.0 * s.r_raw - s.m});
        records[i] = CaseRecord{s.holds, slack / scale};
    });
    SuiteOutcome out = summarize_records("symmetrization", records);
    if (out.first_failure_index) {
        const SymInstance inst = symmetrization_instance(seed, *out.first_failure_index);
        const SymmetrizationResult s = symmetrization_check(inst.summands, inst.r);
        ojson j;
        j["seed"] = seed.value;
        j["index"] = *out.first_failure_index;
        j["r"] = inst.r;
        j["M"] = s.m;
        j["R_centered"] = s.r_centered;
        j["R_raw"] = s.r_raw;
        out.first_failure = std::move(j);
    }
    return out;
}

std::vector<HermitianMatrix> random_rademacher_family(RngSeed seed, std::uint64_t index) {
    CounterRng rng(seed, index, 0x4a);
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 10.0);
    const std::size_t d = 1 + static_cast<std::size_t>(rng.uniform() * 6.0);
    std::vector<HermitianMatrix> h;
    h.reserve(n);
    for (std::size_t i = 0; i < n; ++i) h.push_back(random_hermitian(d, rng));
    return h;
}

namespace {

struct RademacherCase {
    double exact = 0.0;
    double bound = 0.0;
    double trace_moment = 0.0;  ///< nan when d = 1
    bool holds = false;
};

RademacherCase rademacher_case(const std::vector<HermitianMatrix>& h) {
    std::vector<FiniteSummand> summands;
    summands.reserve(h.size());
    for (const auto& m : h) summands.emplace_back(std::vector<std::pair<double, RectMatrix>>{{0.5, m.matrix()}, {0.5, -1.0 * m.matrix()}});
    RademacherCase out;
    out.exact = std::sqrt(brute_force_expected_norm(summands, 2));
    out.bound = rademacher_bound(h);
    out.holds = out.exact <= out.bound * (1.0 + 1e-9);
    const std::size_t d = h.front().dim();
    out.trace_moment = std::numeric_limits<double>::quiet_NaN();
    if (d > 1) {
        // The trace-moment chain at p = ceil(log d) sits between the two.
        out.trace_moment = trace_moment_bound(h, static_cast<unsigned>(ceil_log(static_cast<double>(d))));
        out.holds = out.holds && out.trace_moment <= out.bound * (1.0 + 1e-12) &&
                    out.exact <= out.trace_moment * (1.0 + 1e-9);
    }
    return out;
}

}  // namespace

SuiteOutcome verify_rademacher(RngSeed seed, std::size_t cases, std::size_t workers) {
    std::vector<CaseRecord> records(cases);
    parallel_for(cases, resolve(workers), [&](std::size_t i) {
        const RademacherCase c = rademacher_case(random_rademacher_family(seed, i));
        records[i] = CaseRecord{c.holds, (c.bound - c.exact) / std::max(c.bound, 1e-300)};
    });
    SuiteOutcome out = summarize_records("rademacher", records);
    if (out.first_failure_index) {
        const auto h = random_rademacher_family(seed, *out.first_failure_index);
        const RademacherCase c = rademacher_case(h);
        ojson j;
        j["seed"] = seed.value;
        j["index"] = *out.first_failure_index;
        j["exact"] = c.exact;
        j["bound"] = c.bound;
        j["trace_moment"] = json_number(c.trace_moment);
        ojson list = ojson::array();
        for (const auto& m : h) list.push_back(matrix_json(m));
        j["H"] = std::move(list);
        out.first_failure = std::move(j);
    }
    return out;
}

VerifyResult run_verify(const VerifyConfig& cfg) {
    VerifyResult result;
    const bool all = cfg.suite == Suite::All;
    if (all || cfg.suite == Suite::Facts) {
        for (FactKind kind : kAllFactKinds)
            result.suites.push_back(verify_fact_kind(kind, cfg.seed, cfg.cases, cfg.fault, cfg.workers));
    }
    if (all || cfg.suite == Suite::Symmetrization)
        result.suites.push_back(verify_symmetrization(cfg.seed, cfg.cases, cfg.workers));
    if (all || cfg.suite == Suite::Rademacher)
        result.suites.push_back(verify_rademacher(cfg.seed, cfg.cases, cfg.workers));
    return result;
}

}  // namespace matcon
