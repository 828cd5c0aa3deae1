#include "cuelab/symbol_json.hpp"

#include "cuelab/error.hpp"

namespace cuelab {
namespace {

Complex complex_from_json(const nlohmann::json& j, const char* field) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    throw ConfigError(field, "expected a number, [re, im] or {\"re\", \"im\"}");
}

}  // namespace

SymbolSpec symbol_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("symbol", "expected a JSON object");
    try {
        if (j.contains("sigma")) {
            const int which = j.at("sigma").get<int>();
            const ExponentPair p{j.value("alpha", 0.0), j.value("beta", 0.0)};
            return make_sigma(which, j.value("theta", 0.0), j.value("theta2", 0.0), p,
                              j.value("k", std::size_t{0}));
        }
        SymbolSpec spec;
        if (j.contains("v_coeffs")) {
            for (const auto& entry : j.at("v_coeffs")) {
                if (!entry.contains("j")) throw ConfigError("v_coeffs", "entry without 'j'");
                spec.v_coeffs[entry.at("j").get<int>()] +=
                    Complex{entry.value("re", 0.0), entry.value("im", 0.0)};
            }
        }
        if (j.contains("singularities")) {
            for (const auto& entry : j.at("singularities")) {
                Singularity s;
                s.location = wrap_angle(entry.at("location").get<double>());
                s.alpha_exp = entry.value("alpha_exp", 0.0);
                if (entry.contains("beta_jump"))
                    s.beta_jump = complex_from_json(entry.at("beta_jump"), "singularities.beta_jump");
                spec.singularities.push_back(s);
            }
        }
        spec.validate();
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("symbol", e.what());
    }
}

nlohmann::json symbol_to_json(const SymbolSpec& spec) {
    nlohmann::json out;
    out["v_coeffs"] = nlohmann::json::array();
    for (const auto& [k, c] : spec.v_coeffs)
        out["v_coeffs"].push_back({{"j", k}, {"re", c.real()}, {"im", c.imag()}});
    out["singularities"] = nlohmann::json::array();
    for (const Singularity& s : spec.singularities)
        out["singularities"].push_back(
            {{"location", s.location},
             {"alpha_exp", s.alpha_exp},
             {"beta_jump", {{"re", s.beta_jump.real()}, {"im", s.beta_jump.imag()}}}});
    return out;
}

std::vector<std::size_t> sizes_from_json(const nlohmann::json& j) {
    std::vector<std::size_t> sizes;
    if (!j.contains("sizes")) return sizes;
    for (const auto& v : j.at("sizes")) {
        if (!v.is_number_integer() || v.get<long long>() < 1)
            throw ConfigError("sizes", "expected positive integers");
        sizes.push_back(v.get<std::size_t>());
    }
    return sizes;
}

}  // namespace cuelab
