#ifndef SINCERT_PIPELINE_HPP
#define SINCERT_PIPELINE_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sincert/certification.hpp"
#include "sincert/deflation.hpp"
#include "sincert/hilbert_param.hpp"
#include "sincert/multiplicity.hpp"
#include "sincert/report.hpp"

namespace sincert {

struct PipelineOptions {
    std::optional<std::vector<std::pair<std::size_t, std::size_t>>> removal; // explicit Omega
    NewtonOptions newton;
    std::optional<std::uint32_t> degree_cap;
    bool param_only = false; // stop after the regularity certificate
};

namespace detail {
inline double to_double(const Real& r) { return r.convert_to<double>(); }
inline std::string real_str(const Real& r, unsigned digits = 0) {
    return r.str(digits ? digits : working_digits(), std::ios_base::scientific);
}
inline std::string point_str(const Complex& z) { return to_string(z, working_digits()); }

inline std::string monomial_str(const ExponentVector& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += "x" + std::to_string(i + 1);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}
} // namespace detail

// The whole certification pipeline: multiplicity structure, exact regularity
// certificate, deflation and square extraction, the alpha test, the
// singular-value/Lipschitz comparisons, Newton iteration and the perturbation
// bound. Any stage failure downgrades the verdict with a recorded reason.
inline CertificationReport certify_all(const PolySystem<Complex>& f,
                                       const std::vector<Complex>& point, const Real& eps,
                                       const PipelineOptions& opts = {},
                                       const RegularityCertificate* pre_cert = nullptr,
                                       MultiplicityStructure<Complex>* struct_out = nullptr) {
    CertificationReport rep;
    rep.nvars = point.size();
    rep.nequations = f.size();
    rep.digits = working_digits();
    rep.tolerance = detail::to_double(eps);
    for (const auto& z : point) rep.point.push_back(detail::point_str(z));

    auto fail = [&](const std::string& why) {
        rep.pass = false;
        rep.reasons.push_back(why);
        return rep;
    };

    // multiplicity structure
    MultiplicityStructure<Complex> st;
    try {
        IntegrationOptions iopts;
        iopts.degree_cap = opts.degree_cap;
        st = compute_multiplicity_structure(f, point, eps, iopts);
    } catch (const std::exception& e) {
        return fail(std::string("integration method failed: ") + e.what());
    }
    if (struct_out) *struct_out = st;
    rep.multiplicity = st.multiplicity();
    rep.nil_index = st.nil_index;
    rep.hilbert = st.hilbert;
    for (const auto& b : st.basis) rep.basis.push_back(detail::monomial_str(b));
    for (const auto& [rw, cl] : st.k_dims) {
        if (rw * cl >= rep.im_size[0] * rep.im_size[1]) rep.im_size = {rw, cl};
    }
    rep.pivot_notes = st.pivot_notes;
    if (st.sigma_min_reject) rep.sigma_reject = detail::to_double(*st.sigma_min_reject);

    // exact regularity certificate (depends on the basis only)
    RegularityCertificate local_cert;
    const RegularityCertificate* cert = pre_cert;
    if (!cert) {
        local_cert = certify_regular_basis(st.basis, st.nvars());
        cert = &local_cert;
    } else if (cert->basis != st.basis) {
        return fail("supplied regularity certificate does not match the computed basis");
    }
    rep.regular = cert->regular;
    rep.free_parameters = cert->phi.free_names();
    for (const auto& rec : cert->phi.degrees) {
        RegularityDegreeInfo info;
        info.t = rec.t;
        info.rho = rec.rho;
        info.h_t = rec.h_t;
        info.gamma_t = rec.gamma_t;
        info.kernel_dim = rec.kernel_dim;
        std::vector<std::string> names(cert->phi.universe.names);
        info.det = rec.det.str(names);
        for (auto [s, k, l] : rec.areg_rows)
            info.areg_rows.push_back("(s=" + std::to_string(s + 1) + ",k=" + std::to_string(k + 1) +
                                     ",l=" + std::to_string(l + 1) + ")");
        for (auto [j, k] : rec.areg_cols)
            info.areg_cols.push_back("(j=" + std::to_string(j + 1) + ",k=" + std::to_string(k + 1) + ")");
        info.witness_count = rec.witnesses.size();
        rep.regularity_degrees.push_back(std::move(info));
    }
    if (!cert->regular) {
        rep.regularity_failing_degree = cert->failing_degree;
        rep.regularity_reason = cert->reason;
        return fail("primal basis is not regular: " + cert->reason);
    }
    if (opts.param_only) {
        rep.pass = true;
        return rep;
    }

    // deflated system and square split
    auto rows = areg_row_sets(*cert);
    auto sys = build_deflated_system(f, st.basis, &rows);
    rep.mu_count = sys.mu_slots.size();
    rep.sc_count = sys.eq_a.size();
    rep.os_size = {sys.equation_count(), sys.nvars()};
    auto z0 = initial_point(sys, st);

    SquareSplit split;
    try {
        split = extract_square(sys, z0, eps,
                               opts.removal ? &*opts.removal : nullptr);
    } catch (const std::exception& e) {
        return fail(std::string("square extraction failed: ") + e.what());
    }
    rep.sigma_min_j0 = detail::to_double(split.sigma_min_j0);
    for (auto idx : split.f1) rep.removed_equations.push_back(sys.label_string(idx));

    // C1: alpha test at the start point
    AlphaData alpha;
    try {
        alpha = alpha_test(sys, split.f0, z0);
    } catch (const std::exception& e) {
        return fail(std::string("alpha test failed: ") + e.what());
    }
    rep.beta = detail::to_double(alpha.beta);
    rep.gamma_hat = detail::to_double(alpha.gamma_hat);
    rep.alpha_hat = detail::to_double(alpha.alpha_hat);
    rep.c1 = alpha.pass;
    if (!alpha.pass) rep.reasons.push_back("alpha test above threshold");

    // C2: recorded regular blocks stay invertible within the beta ball
    rep.c2_pass = true;
    {
        auto areg_numeric = evaluate_Areg(*cert, st);
        for (std::size_t d = 0; d < cert->phi.degrees.size(); ++d) {
            const auto& rec = cert->phi.degrees[d];
            C2Entry entry;
            entry.t = rec.t;
            if (areg_numeric[d].rows() == 0) {
                entry.empty = true;
                entry.pass = true;
                rep.c2.push_back(entry);
                continue;
            }
            Real sigma = sigma_min_certified(areg_numeric[d]);
            Real lip = lipschitz_bound(areg_matrix_parametric(sys, rec), z0, alpha.beta);
            entry.sigma_lower = detail::to_double(sigma);
            entry.lipschitz = detail::to_double(lip);
            entry.pass = lip * alpha.beta < sigma;
            if (!entry.pass) rep.c2_pass = false;
            rep.c2.push_back(entry);
        }
    }
    if (!rep.c2_pass) rep.reasons.push_back("regular-block drift exceeds its singular value");

    // C3: completeness matrix stays full rank within the beta ball
    {
        auto acert = completeness_matrix_parametric(sys);
        Real sigma = sigma_min_certified(eval_matrix(acert, z0));
        Real lip = lipschitz_bound(acert, z0, alpha.beta);
        rep.sigma_cert_lower = detail::to_double(sigma);
        rep.lipschitz_cert = detail::to_double(lip);
        rep.c3 = lip * alpha.beta < sigma;
        if (!rep.c3) rep.reasons.push_back("completeness-matrix drift exceeds its singular value");
    }

    // Newton iteration on the square system
    auto tr = newton_solve(sys, split.f0, z0, opts.newton);
    rep.newton_converged = tr.converged;
    rep.newton_quadratic = tr.quadratic;
    rep.newton_iterations = tr.iterations;
    for (const auto& r : tr.residual_inf) {
        rep.newton_residuals.push_back(detail::to_double(r));
        rep.newton_residuals_str.push_back(detail::real_str(r, 6));
    }
    for (const auto& z : tr.solution) rep.final_point.push_back(detail::point_str(z));
    if (!tr.residual_inf.empty())
        rep.final_residual_inf = detail::to_double(tr.residual_inf.back());
    if (!tr.converged) rep.reasons.push_back("newton iteration did not converge: " + tr.message);

    // perturbation values and the bound from the leftover rows
    auto pert = perturbed_residual(sys, split.omega, tr.solution);
    Real eps_max(0), eps_fro(0);
    for (const auto& v : pert.values) {
        Real a = abs(v);
        eps_max = std::max(eps_max, a);
        eps_fro += a * a;
    }
    eps_fro = boost::multiprecision::sqrt(eps_fro);
    for (std::size_t i = 0; i < pert.omega.size(); ++i) {
        rep.omega.push_back({pert.omega[i].first + 1, pert.omega[i].second + 1});
        rep.eps_values.push_back(detail::to_double(abs(pert.values[i])));
        rep.eps_values_str.push_back(detail::point_str(pert.values[i]));
    }
    rep.eps_norm_max = detail::to_double(eps_max);
    rep.eps_norm_fro = detail::to_double(eps_fro);
    {
        std::vector<std::vector<Polynomial<Complex>>> f1rows(1);
        for (auto idx : split.f1) f1rows[0].push_back(sys.equation(idx));
        Real f1norm = norm2(eval_equations(sys, z0, split.f1));
        Real lip = split.f1.empty() ? Real(0) : lipschitz_bound(f1rows, z0, alpha.beta);
        rep.lipschitz_f1 = detail::to_double(lip);
        rep.eps_bound = detail::to_double(f1norm + lip * alpha.beta);
    }
    for (const auto& p : pert.perturbed) rep.perturbed_system.push_back(p.str());

    rep.pass = rep.c1 && rep.c2_pass && rep.c3 && rep.newton_converged && rep.regular;
    return rep;
}

} // namespace sincert

#endif
