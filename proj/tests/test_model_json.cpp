#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "matcon/bounds.hpp"
#include "matcon/model_json.hpp"

using namespace matcon;

TEST_CASE("built-in models by name") {
    const auto m = model_from_json_text(R"({"name": "sec71", "d": 4, "n": 9})");
    CHECK(m.name() == "sec71");
    CHECK(m.size() == 36);
    CHECK(m.n() == 9);
    const auto r = model_from_json_text(R"({"name": "fixed_rademacher", "d": 3, "n": 5, "seed": 2})");
    CHECK(r.size() == 5);
    CHECK(r.hermitian());
}

TEST_CASE("custom models with every family") {
    const char* text = R"({
      "name": "custom", "d1": 2, "d2": 2,
      "summands": [
        {"family": "fixed_rademacher", "matrix": [[1, [0, 1]], [[0, -1], 2]]},
        {"family": "fixed_gaussian", "matrix": [[1, 0], [0, 0]]},
        {"family": "scaled_basis_rademacher", "index": 1, "scale": 0.5, "dim": 2},
        {"family": "centered_bernoulli_basis", "index": 0, "p": 0.25, "dim": 2},
        {"family": "rademacher_entry", "row": 0, "col": 1, "dim": 2},
        {"family": "pareto_diagonal", "index": 1, "dim": 2},
        {"family": "finite", "outcomes": [{"p": 0.5, "matrix": [[1, 0], [0, 1]]},
                                          {"p": 0.5, "matrix": [[-1, 0], [0, -1]]}]}
      ]})";
    const auto m = model_from_json_text(text);
    CHECK(m.size() == 7);
    CHECK(m.centered());
    CHECK_FALSE(m.hermitian());
    const auto& fr = std::get<FixedRademacher>(m.summands()[0]);
    CHECK(fr.h(0, 1) == Complex{0, 1});

    const auto round = model_from_json(model_to_json(m));
    CHECK(round.size() == m.size());
    CHECK(family_name(round.summands()[6]) == "finite");
    CHECK(std::get<FixedRademacher>(round.summands()[0]).h.matrix() == fr.h.matrix());
}

TEST_CASE("malformed input raises ModelParseError") {
    CHECK_THROWS_AS(model_from_json_text("{bad"), ModelParseError);
    CHECK_THROWS_AS(model_from_json_text("[]"), ModelParseError);
    CHECK_THROWS_AS(model_from_json_text(R"({"name": "sec99", "d": 2})"), ModelParseError);
    CHECK_THROWS_AS(model_from_json_text(R"({"name": "sec71", "n": 2})"), ModelParseError);
    CHECK_THROWS_AS(model_from_json_text(R"({"name": "sec71", "d": -2, "n": 2})"), ModelParseError);
    CHECK_THROWS_AS(model_from_json_text(R"({"name": "x", "d1": 2, "d2": 2, "summands": [{"family": "nope"}]})"),
                    ModelParseError);
    // Non-Hermitian matrix for a Hermitian family.
    CHECK_THROWS_AS(model_from_json_text(
                        R"({"name": "x", "d1": 2, "d2": 2, "summands": [{"family": "fixed_rademacher", "matrix": [[0, 1], [0, 0]]}]})"),
                    ModelParseError);
    // Probabilities that do not sum to one.
    CHECK_THROWS_AS(model_from_json_text(
                        R"({"name": "x", "d1": 1, "d2": 1, "summands": [{"family": "finite", "outcomes": [{"p": 0.3, "matrix": [[1]]}]}]})"),
                    ModelParseError);
    CHECK_THROWS_AS(model_from_json_text(
                        R"({"name": "x", "d1": 1, "d2": 1, "summands": [{"family": "finite", "outcomes": [{"p": 1, "matrix": [[1, 2], [3]]}]}]})"),
                    ModelParseError);
    CHECK_THROWS_AS(model_from_file("/nonexistent/model.json"), ModelParseError);
}

TEST_CASE("models load from files") {
    const std::string path = "test_model_json_tmp.json";
    {
        std::ofstream f(path);
        f << R"({"name": "sec73", "d": 3})";
    }
    const auto m = model_from_file(path);
    CHECK(m.size() == 9);
    std::remove(path.c_str());
}
