#include "sincert/report.hpp"

namespace sincert {

using nlohmann::json;

json report_to_json(const CertificationReport& r) {
    json j;
    j["input"] = {
        {"nvars", r.nvars},
        {"nequations", r.nequations},
        {"digits", r.digits},
        {"tolerance", r.tolerance},
        {"point", r.point},
    };
    j["structure"] = {
        {"multiplicity", r.multiplicity},
        {"nil_index", r.nil_index},
        {"hilbert", r.hilbert},
        {"basis", r.basis},
        {"im_size", r.im_size},
        {"mu_count", r.mu_count},
        {"sc_count", r.sc_count},
        {"os_size", r.os_size},
        {"pivot_notes", r.pivot_notes},
        {"sigma_reject", r.sigma_reject},
    };
    json degs = json::array();
    for (const auto& d : r.regularity_degrees)
        degs.push_back({{"t", d.t},
                        {"rho", d.rho},
                        {"h_t", d.h_t},
                        {"gamma_t", d.gamma_t},
                        {"kernel_dim", d.kernel_dim},
                        {"det", d.det},
                        {"areg_rows", d.areg_rows},
                        {"areg_cols", d.areg_cols},
                        {"witness_count", d.witness_count}});
    j["regularity"] = {
        {"regular", r.regular},
        {"failing_degree", r.regularity_failing_degree},
        {"reason", r.regularity_reason},
        {"free_parameters", r.free_parameters},
        {"degrees", degs},
    };
    j["square_system"] = {
        {"removed_equations", r.removed_equations},
        {"sigma_min_j0", r.sigma_min_j0},
    };
    j["alpha"] = {
        {"beta", r.beta},
        {"gamma_hat", r.gamma_hat},
        {"alpha_hat", r.alpha_hat},
        {"alpha0", r.alpha0},
        {"pass", r.c1},
    };
    json c2 = json::array();
    for (const auto& e : r.c2)
        c2.push_back({{"t", e.t},
                      {"empty", e.empty},
                      {"sigma_lower", e.sigma_lower},
                      {"lipschitz", e.lipschitz},
                      {"pass", e.pass}});
    j["c2"] = {{"entries", c2}, {"pass", r.c2_pass}};
    j["c3"] = {
        {"sigma_lower", r.sigma_cert_lower},
        {"lipschitz", r.lipschitz_cert},
        {"pass", r.c3},
    };
    j["newton"] = {
        {"residuals", r.newton_residuals},
        {"residuals_str", r.newton_residuals_str},
        {"converged", r.newton_converged},
        {"quadratic", r.newton_quadratic},
        {"iterations", r.newton_iterations},
        {"final_point", r.final_point},
        {"final_residual_inf", r.final_residual_inf},
    };
    json omega = json::array();
    for (const auto& o : r.omega) omega.push_back(o);
    j["perturbation"] = {
        {"omega", omega},
        {"eps_values", r.eps_values},
        {"eps_values_str", r.eps_values_str},
        {"eps_norm_max", r.eps_norm_max},
        {"eps_norm_fro", r.eps_norm_fro},
        {"eps_bound", r.eps_bound},
        {"lipschitz_f1", r.lipschitz_f1},
        {"perturbed_system", r.perturbed_system},
    };
    j["verdict"] = {
        {"pass", r.pass},
        {"reasons", r.reasons},
    };
    return j;
}

} // namespace sincert
