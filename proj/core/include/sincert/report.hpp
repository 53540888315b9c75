#ifndef SINCERT_REPORT_HPP
#define SINCERT_REPORT_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace sincert {

struct RegularityDegreeInfo {
    std::uint32_t t = 0;
    std::size_t rho = 0, h_t = 0, gamma_t = 0, kernel_dim = 0;
    std::string det;
    std::vector<std::string> areg_rows, areg_cols;
    std::size_t witness_count = 0;
};

struct C2Entry {
    std::uint32_t t = 0;
    bool empty = false; // empty block: passes by convention
    double sigma_lower = 0;
    double lipschitz = 0;
    bool pass = false;
};

// Everything a certification run produces, in plain serializable form.
struct CertificationReport {
    // input
    std::size_t nvars = 0, nequations = 0;
    unsigned digits = 16;
    double tolerance = 0;
    std::vector<std::string> point;

    // multiplicity structure
    std::size_t multiplicity = 0, nil_index = 0;
    std::vector<std::size_t> hilbert;
    std::vector<std::string> basis;
    std::array<std::size_t, 2> im_size{0, 0}; // largest kernel-problem matrix
    std::size_t mu_count = 0, sc_count = 0;
    std::array<std::size_t, 2> os_size{0, 0}; // overdetermined system: equations x variables
    std::vector<std::string> pivot_notes;
    double sigma_reject = 0; // smallest singular value of the rejecting kernel problem

    // regularity certificate
    bool regular = false;
    std::uint32_t regularity_failing_degree = 0;
    std::string regularity_reason;
    std::vector<std::string> free_parameters;
    std::vector<RegularityDegreeInfo> regularity_degrees;

    // square system
    std::vector<std::string> removed_equations;
    double sigma_min_j0 = 0;

    // C1: alpha test
    double beta = 0, gamma_hat = 0, alpha_hat = 0, alpha0 = 0.26141;
    bool c1 = false;

    // C2: regular-block singular values vs Lipschitz drift
    std::vector<C2Entry> c2;
    bool c2_pass = false;

    // C3: completeness matrix
    double sigma_cert_lower = 0, lipschitz_cert = 0;
    bool c3 = false;

    // Newton iteration
    std::vector<double> newton_residuals;
    std::vector<std::string> newton_residuals_str;
    bool newton_converged = false, newton_quadratic = false;
    std::size_t newton_iterations = 0;
    std::vector<std::string> final_point;
    double final_residual_inf = 0;

    // perturbation
    std::vector<std::array<std::size_t, 2>> omega; // (dual index, polynomial index), 1-based
    std::vector<double> eps_values;
    std::vector<std::string> eps_values_str;
    double eps_norm_max = 0, eps_norm_fro = 0, eps_bound = 0, lipschitz_f1 = 0;
    std::vector<std::string> perturbed_system;

    // verdict
    bool pass = false;
    std::vector<std::string> reasons;
};

nlohmann::json report_to_json(const CertificationReport& r);

// The JSON schema the reports are published under.
nlohmann::json report_schema();

// Minimal structural validator for the subset of JSON Schema used by
// report_schema(): type / properties / required / items.
bool validate_against_schema(const nlohmann::json& doc, const nlohmann::json& schema,
                             std::string* error = nullptr);

} // namespace sincert

#endif
