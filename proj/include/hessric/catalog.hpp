#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hessric/geometry.hpp"

namespace hessric {

/// A (chart, scalar field, optional vector field) triple with its declared
/// constants: the unit every check operates on.  Constructors return
/// immutable values; copies are cheap to share.
struct SolutionSpec {
    std::string name;
    ChartPatch patch;
    ScalarField f;
    std::optional<VectorFieldSpec> eta;

    std::optional<double> expected_S;    // set iff scalar curvature is constant
    std::optional<double> expected_mu;
    std::optional<int> epsilon;          // in {-1, 0, +1} when normalized
    std::vector<double> critical_values;
    std::vector<std::string> tags;

    bool ode_limited = false;            // residual budget limited by an ODE solve
    bool is_product = false;
    std::optional<std::vector<double>> flow_start;

    bool has_tag(const std::string& t) const;
};

SolutionSpec sphere2();
SolutionSpec euclidean(int n, std::span<const double> a, double b);
SolutionSpec cylinder(double b);

enum class HyperbolicKind { Cosh, Sinh, Exp };
SolutionSpec hyperbolic2(HyperbolicKind kind);

SolutionSpec product_with_flat(const SolutionSpec& base, int flat_dim);

SolutionSpec conformal_dim3(const ScalarField& u, bool check_harmonic);

// Conformal rescaling of geodesic-polar hyperbolic 3-space by e^{-2u} with
// radial u solving u'' + 2 coth(r) u' = 2 numerically; the constant c fixes
// u'(r0) at the midpoint of r_range.
SolutionSpec hyperbolic3_radial(double c, std::pair<double, double> r_range);

/// Stable case identifiers for the CLI.
std::vector<std::string> case_names();

/// Builds any named case, including the negative controls
/// ("sphere2-negcontrol", "sphere2-negcontrol-eta") that `case_names` omits.
/// Throws std::invalid_argument for unknown names.
SolutionSpec make_case(const std::string& name);

}  // namespace hessric
