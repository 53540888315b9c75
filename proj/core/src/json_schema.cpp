#include "sincert/report.hpp"

#include <cmath>

namespace sincert {

using nlohmann::json;

namespace {

json num() { return {{"type", "number"}}; }
json boolean() { return {{"type", "boolean"}}; }
json integer() { return {{"type", "integer"}}; }
json str() { return {{"type", "string"}}; }
json arr(json items) { return {{"type", "array"}, {"items", std::move(items)}}; }
json obj(json properties, json required) {
    return {{"type", "object"}, {"properties", std::move(properties)}, {"required", std::move(required)}};
}

} // namespace

json report_schema() {
    json degrees = arr(obj({{"t", integer()},
                            {"rho", integer()},
                            {"h_t", integer()},
                            {"gamma_t", integer()},
                            {"kernel_dim", integer()},
                            {"det", str()},
                            {"areg_rows", arr(str())},
                            {"areg_cols", arr(str())},
                            {"witness_count", integer()}},
                           {"t", "rho", "h_t", "det"}));
    return obj(
        {{"input", obj({{"nvars", integer()},
                        {"nequations", integer()},
                        {"digits", integer()},
                        {"tolerance", num()},
                        {"point", arr(str())}},
                       {"nvars", "nequations", "digits", "tolerance", "point"})},
         {"structure", obj({{"multiplicity", integer()},
                            {"nil_index", integer()},
                            {"hilbert", arr(integer())},
                            {"basis", arr(str())},
                            {"im_size", arr(integer())},
                            {"mu_count", integer()},
                            {"sc_count", integer()},
                            {"os_size", arr(integer())},
                            {"pivot_notes", arr(str())},
                            {"sigma_reject", num()}},
                           {"multiplicity", "nil_index", "basis"})},
         {"regularity", obj({{"regular", boolean()},
                             {"failing_degree", integer()},
                             {"reason", str()},
                             {"free_parameters", arr(str())},
                             {"degrees", degrees}},
                            {"regular", "degrees"})},
         {"square_system", obj({{"removed_equations", arr(str())}, {"sigma_min_j0", num()}},
                               {"removed_equations"})},
         {"alpha", obj({{"beta", num()},
                        {"gamma_hat", num()},
                        {"alpha_hat", num()},
                        {"alpha0", num()},
                        {"pass", boolean()}},
                       {"beta", "gamma_hat", "alpha_hat", "alpha0", "pass"})},
         {"c2", obj({{"entries", arr(obj({{"t", integer()},
                                          {"empty", boolean()},
                                          {"sigma_lower", num()},
                                          {"lipschitz", num()},
                                          {"pass", boolean()}},
                                         {"t", "pass"}))},
                     {"pass", boolean()}},
                    {"entries", "pass"})},
         {"c3", obj({{"sigma_lower", num()}, {"lipschitz", num()}, {"pass", boolean()}},
                    {"sigma_lower", "lipschitz", "pass"})},
         {"newton", obj({{"residuals", arr(num())},
                         {"residuals_str", arr(str())},
                         {"converged", boolean()},
                         {"quadratic", boolean()},
                         {"iterations", integer()},
                         {"final_point", arr(str())},
                         {"final_residual_inf", num()}},
                        {"residuals", "converged"})},
         {"perturbation", obj({{"omega", arr(arr(integer()))},
                               {"eps_values", arr(num())},
                               {"eps_values_str", arr(str())},
                               {"eps_norm_max", num()},
                               {"eps_norm_fro", num()},
                               {"eps_bound", num()},
                               {"lipschitz_f1", num()},
                               {"perturbed_system", arr(str())}},
                              {"omega", "eps_values", "eps_bound"})},
         {"verdict", obj({{"pass", boolean()}, {"reasons", arr(str())}}, {"pass", "reasons"})}},
        {"input", "structure", "regularity", "alpha", "c2", "c3", "newton", "perturbation",
         "verdict"});
}

bool validate_against_schema(const json& doc, const json& schema, std::string* error) {
    auto fail = [&](const std::string& msg) {
        if (error) *error = msg;
        return false;
    };
    if (!schema.contains("type")) return true;
    const std::string type = schema["type"];
    if (type == "object") {
        if (!doc.is_object()) return fail("expected object");
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!doc.contains(key.get<std::string>()))
                    return fail("missing required key: " + key.get<std::string>());
        if (schema.contains("properties"))
            for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
                if (doc.contains(it.key())) {
                    std::string sub;
                    if (!validate_against_schema(doc[it.key()], it.value(), &sub))
                        return fail(it.key() + ": " + sub);
                }
        return true;
    }
    if (type == "array") {
        if (!doc.is_array()) return fail("expected array");
        if (schema.contains("items"))
            for (const auto& el : doc) {
                std::string sub;
                if (!validate_against_schema(el, schema["items"], &sub)) return fail("item: " + sub);
            }
        return true;
    }
    if (type == "number") {
        if (!doc.is_number()) return fail("expected number");
        double v = doc.get<double>();
        if (!std::isfinite(v)) return fail("non-finite number");
        return true;
    }
    if (type == "integer") {
        if (!doc.is_number_integer() && !doc.is_number_unsigned()) return fail("expected integer");
        return true;
    }
    if (type == "boolean") return doc.is_boolean() ? true : fail("expected boolean");
    if (type == "string") return doc.is_string() ? true : fail("expected string");
    return fail("unknown schema type: " + type);
}

} // namespace sincert
