#pragma once

// Seeded oracle sweeps behind the `verify` subcommand.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "matcon/oracles.hpp"

namespace matcon {

enum class Suite { Facts, Symmetrization, Rademacher, All };

std::optional<Suite> parse_suite(std::string_view name);

struct VerifyConfig {
    Suite suite = Suite::All;
    RngSeed seed{};
    std::size_t cases = 1000;  ///< per fact kind for the facts suite; instances otherwise
    FaultInjection fault = FaultInjection::None;
    std::size_t workers = 0;  ///< 0: MATCON_THREADS / hardware
};

/// One line of the verify summary. `worst_slack` is the smallest
/// (rhs - lhs) / max(1, |rhs|) seen, or the smallest relative margin for the
/// enumeration suites.
struct SuiteOutcome {
    std::string name;
    std::size_t passed = 0;
    std::size_t failed = 0;
    double worst_slack = 0.0;
    /// Replay coordinates and payload of the first failing case, by index.
    std::optional<std::uint64_t> first_failure_index;
    nlohmann::ordered_json first_failure;
};

struct VerifyResult {
    std::vector<SuiteOutcome> suites;
    bool all_passed() const;
};

VerifyResult run_verify(const VerifyConfig& cfg);

/// Suite-level entry points (also used directly by tests).
SuiteOutcome verify_fact_kind(FactKind kind, RngSeed seed, std::size_t cases, FaultInjection fault,
                              std::size_t workers);
SuiteOutcome verify_symmetrization(RngSeed seed, std::size_t cases, std::size_t workers);
SuiteOutcome verify_rademacher(RngSeed seed, std::size_t cases, std::size_t workers);

/// Random Rademacher family for instance `index`: n <= 10, d <= 6.
std::vector<HermitianMatrix> random_rademacher_family(RngSeed seed, std::uint64_t index);

/// Serialized payload of a fact case (matrices as [re, im] rows).
nlohmann::ordered_json fact_case_json(const FactCase& c);

}  // namespace matcon
