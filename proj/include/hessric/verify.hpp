#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hessric/catalog.hpp"

namespace hessric {

struct ToleranceConfig {
    double tol_identity = 1e-8;
    double tol_ode_limited = 1e-6;
    double tol_negative_control = 1e-4;
    int samples = 200;
    std::uint64_t seed = 42;
    int jet_order = 3;

    void validate() const;
};

struct CheckRecord {
    std::string check_id;
    int num_points = 0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    bool pass = true;
    std::string note;
};

struct VerificationReport {
    std::string case_name;
    std::vector<CheckRecord> checks;   // sorted by check_id
    bool pass = true;
    ToleranceConfig config;
    std::string timestamp;
    double duration_ms = 0.0;
};

// Max-norm of the defining residual hessian11(f) + f * Ric (1,1 components).
double residual_main(const SolutionSpec& spec, std::span<const double> point, int order = 3);

// g-norm of Ric(grad f) - (S/2) grad f - (f/4) grad S; needs order >= 3.
double residual_ric_grad(const SolutionSpec& spec, std::span<const double> point, int order = 3);

// f * laplacian(f) + 2 |grad f|^2 sampled over a plan.
struct MuStats {
    double mean = 0.0;
    double max_deviation = 0.0;
    std::optional<double> mean_error;   // |mean - expected_mu| when declared
};
MuStats check_mu(const SolutionSpec& spec, const std::vector<std::vector<double>>& plan, int order = 3);
double mu_at(const SolutionSpec& spec, std::span<const double> point, int order = 3);

// |laplacian(f) - f * S|
double check_laplace_identity(const SolutionSpec& spec, std::span<const double> point, int order = 3);

// Vanishing-set geometry: shape operator of {f = 0} and its Gauss scalar
// S - 2 ric(nu, nu) + tr(W)^2 - |W|^2.
struct LevelSetRecord {
    bool applicable = false;
    int num_points = 0;
    double max_shape_operator = 0.0;
    double max_gauss_scalar = 0.0;
};
LevelSetRecord check_level_set(const SolutionSpec& spec, int count, std::uint64_t seed, int order = 3);

// Newton projection of plan points onto the f = 0 level (empty if f has no
// zeros reachable from the plan).
std::vector<std::vector<double>> find_level_set_points(const SolutionSpec& spec, int count, std::uint64_t seed);

// g-norm of nabla_nu nu at a regular point (|grad f| >= 1e-6).
double check_geodesic_nu(const SolutionSpec& spec, std::span<const double> point);

// The seven Killing-field residuals, aggregated over a plan:
//   symmetry        symmetric part of the lowered nabla eta
//   orthogonality   <eta, grad f>
//   acceleration    nabla_eta eta - epsilon f grad f
//   norm_constancy  |eta|^2 + epsilon f^2 minus its plan mean
//   ric_eigen       Ric(eta) - (S/2) eta
//   rank_proxy      third singular value of the lowered nabla eta
//   commutator      [eta, grad f]
struct KillingRecord {
    int num_points = 0;
    double symmetry = 0.0;
    double orthogonality = 0.0;
    double acceleration = 0.0;
    double norm_constancy = 0.0;
    double ric_eigen = 0.0;
    double rank_proxy = 0.0;
    double commutator = 0.0;
    double norm_constant = 0.0;   // plan mean of |eta|^2 + epsilon f^2
};
KillingRecord check_killing_suite(const SolutionSpec& spec, const std::vector<std::vector<double>>& plan);

// Ricci eigenstructure of product witnesses: eigenvalues {S/2, S/2, 0...},
// Ric^2(eta) = (S/2) Ric(eta), nabla_nu Ric = 0.
struct RicciStructureRecord {
    bool applicable = false;
    int num_points = 0;
    double eigenvalue_err = 0.0;
    double ric_squared_err = 0.0;
    double nabla_nu_err = 0.0;
};
RicciStructureRecord check_ricci_structure(const SolutionSpec& spec, const std::vector<std::vector<double>>& plan,
                                           int order = 3);

VerificationReport run_suite(const SolutionSpec& spec, const ToleranceConfig& config);
VerificationReport run_suite(const std::string& case_name, const ToleranceConfig& config);

}  // namespace hessric
