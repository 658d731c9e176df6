#include "matcon/model_json.hpp"

#include <fstream>
#include <sstream>

namespace matcon {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void fail(const std::string& msg) { throw ModelParseError("model: " + msg); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::size_t get_size(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(std::string("'") + key + "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

double get_double(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number()) fail(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

Complex parse_entry(const json& v) {
    if (v.is_number()) return Complex{v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return Complex{v[0].get<double>(), v[1].get<double>()};
    fail("matrix entries must be numbers or [re, im] pairs");
}

RectMatrix parse_matrix(const json& v) {
    if (!v.is_array() || v.empty() || !v[0].is_array() || v[0].empty()) fail("a matrix must be a nonempty array of rows");
    const std::size_t rows = v.size();
    const std::size_t cols = v[0].size();
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const auto& row : v) {
        if (!row.is_array() || row.size() != cols) fail("matrix rows must have equal length");
        for (const auto& e : row) entries.push_back(parse_entry(e));
    }
    return RectMatrix(rows, cols, std::move(entries));
}

json matrix_json(const RectMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Complex z = m(i, j);
            if (z.imag() == 0.0) {
                row.push_back(z.real());
            } else {
                row.push_back(json::array({z.real(), z.imag()}));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

SummandSpec parse_summand(const json& s) {
    const json& fam = field(s, "family");
    if (!fam.is_string()) fail("'family' must be a string");
    const std::string family = fam.get<std::string>();
    if (family == "fixed_rademacher") return FixedRademacher(HermitianMatrix(parse_matrix(field(s, "matrix"))));
    if (family == "fixed_gaussian") return FixedGaussian(HermitianMatrix(parse_matrix(field(s, "matrix"))));
    if (family == "scaled_basis_rademacher")
        return ScaledBasisRademacher{get_size(s, "index"), get_double(s, "scale"), get_size(s, "dim")};
    if (family == "centered_bernoulli_basis")
        return CenteredBernoulliBasis{get_size(s, "index"), get_double(s, "p"), get_size(s, "dim")};
    if (family == "rademacher_entry") return RademacherEntry{get_size(s, "row"), get_size(s, "col"), get_size(s, "dim")};
    if (family == "pareto_diagonal") return ParetoDiagonal{get_size(s, "index"), get_size(s, "dim")};
    if (family == "finite") {
        const json& outs = field(s, "outcomes");
        if (!outs.is_array() || outs.empty()) fail("'outcomes' must be a nonempty array");
        std::vector<std::pair<double, RectMatrix>> outcomes;
        for (const auto& o : outs) outcomes.emplace_back(get_double(o, "p"), parse_matrix(field(o, "matrix")));
        return FiniteSummand(std::move(outcomes));
    }
    fail("unknown family '" + family + "'");
}

json summand_json(const SummandSpec& spec) {
    json out = std::visit(
        overloaded{
            [](const FixedRademacher& s) { return json{{"matrix", matrix_json(s.h.matrix())}}; },
            [](const FixedGaussian& s) { return json{{"matrix", matrix_json(s.h.matrix())}}; },
            [](const ScaledBasisRademacher& s) { return json{{"index", s.index}, {"scale", s.scale}, {"dim", s.dim}}; },
            [](const CenteredBernoulliBasis& s) { return json{{"index", s.index}, {"p", s.p}, {"dim", s.dim}}; },
            [](const RademacherEntry& s) { return json{{"row", s.row}, {"col", s.col}, {"dim", s.dim}}; },
            [](const ParetoDiagonal& s) { return json{{"index", s.index}, {"dim", s.dim}}; },
            [](const FiniteSummand& s) {
                json outs = json::array();
                for (const auto& o : s.outcomes())
                    outs.push_back(json{{"p", o.probability}, {"matrix", matrix_json(o.value)}});
                return json{{"outcomes", std::move(outs)}};
            },
        },
        spec);
    out["family"] = family_name(spec);
    return out;
}

}  // namespace

IndependentSumModel model_from_json(const json& j) {
    try {
        if (!j.is_object()) fail("top level must be an object");
        const json& name_field = field(j, "name");
        if (!name_field.is_string()) fail("'name' must be a string");
        const std::string name = name_field.get<std::string>();

        if (j.contains("summands")) {
            const json& list = j.at("summands");
            if (!list.is_array() || list.empty()) fail("'summands' must be a nonempty array");
            std::vector<SummandSpec> summands;
            for (const auto& s : list) summands.push_back(parse_summand(s));
            const std::size_t n = j.contains("n") ? get_size(j, "n") : 0;
            return IndependentSumModel(name, get_size(j, "d1"), get_size(j, "d2"), std::move(summands), n);
        }
        if (const auto example = parse_example(name)) {
            const std::size_t n = j.contains("n") ? get_size(j, "n") : 0;
            return make_example(*example, get_size(j, "d"), n);
        }
        if (name == "fixed_rademacher") {
            return make_random_rademacher(get_size(j, "d"), get_size(j, "n"), RngSeed{get_size(j, "seed")});
        }
        fail("unknown built-in model '" + name + "' and no 'summands' given");
    } catch (const ModelParseError&) {
        throw;
    } catch (const json::exception& e) {
        throw ModelParseError(std::string("model: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ModelParseError(std::string("model: ") + e.what());
    }
}

IndependentSumModel model_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ModelParseError(std::string("model: invalid JSON: ") + e.what());
    }
    return model_from_json(j);
}

IndependentSumModel model_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelParseError("model: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return model_from_json_text(buf.str());
}

json model_to_json(const IndependentSumModel& model) {
    json summands = json::array();
    for (const auto& s : model.summands()) summands.push_back(summand_json(s));
    return json{{"name", model.name()},
                {"d1", model.d1()},
                {"d2", model.d2()},
                {"n", model.n()},
                {"summands", std::move(summands)}};
}

}  // namespace matcon
