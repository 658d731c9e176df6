#pragma once

// JSON description of models.
//
//   {"name": "sec71", "d": 16, "n": 100}                  built-in example
//   {"name": "random_rademacher", "d": 4, "n": 6, "seed": 9}
//   {"name": "mine", "d1": 2, "d2": 3, "summands": [...]} custom
//
// Each custom summand names a family:
//   {"family": "fixed_rademacher" | "fixed_gaussian", "matrix": [[...], ...]}
//   {"family": "scaled_basis_rademacher", "index": i, "scale": s, "dim": d}
//   {"family": "centered_bernoulli_basis", "index": i, "p": p, "dim": d}
//   {"family": "rademacher_entry", "row": i, "col": j, "dim": d}
//   {"family": "pareto_diagonal", "index": i, "dim": d}
//   {"family": "finite", "outcomes": [{"p": 0.5, "matrix": [[...]]}, ...]}
// Matrix entries are real numbers or [re, im] pairs.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "matcon/models.hpp"

namespace matcon {

class ModelParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

IndependentSumModel model_from_json(const nlohmann::json& j);
IndependentSumModel model_from_json_text(const std::string& text);
IndependentSumModel model_from_file(const std::string& path);

/// Custom-form serialization; model_from_json(model_to_json(m)) rebuilds m.
nlohmann::json model_to_json(const IndependentSumModel& model);

}  // namespace matcon
