#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hessric/jet.hpp"
#include "hessric/linalg.hpp"
#include "hessric/sampling.hpp"

namespace hessric {

/// Square matrix of jets (metric components and intermediates).
struct JetMat {
    int n = 0;
    std::vector<Jet> e;

    JetMat(int dim, const Jet& fill) : n(dim), e(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), fill) {}
    Jet& at(int i, int j) { return e[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
    const Jet& at(int i, int j) const { return e[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
};

using MetricFn = std::function<JetMat(std::span<const Jet>)>;

/// A coordinate chart with a metric-component map.  The metric function must
/// return a symmetric matrix whose value part is positive definite on the
/// margin-shrunk interior of the domain.
struct ChartPatch {
    int dim = 0;
    Domain domain;
    MetricFn metric_fn;
    std::string label;
};

struct ScalarField {
    std::function<Jet(std::span<const Jet>)> eval_fn;
    std::string label;
};

/// Contravariant components of a vector field.  eval_fn is evaluated on
/// coordinate jets of the chart and must return jets of the same shape.
struct VectorFieldSpec {
    std::function<std::vector<Jet>(std::span<const Jet>)> eval_fn;
    std::string label;
};

/// Per-point curvature package.  Index conventions:
///   gamma(k,i,j)   = Gamma^k_ij
///   riem(l,i,j,k)  = R^l_ijk with R(d_i, d_j) d_k = R^l_ijk d_l
///   ricci02(j,k)   = sum_i R^i_ijk     (unit sphere gives ricci02 = +g)
///   ricci11(i,j)   = g^ik ricci02(k,j)
/// The sign of the Riemann contraction is pinned by the constant-curvature
/// witnesses, not left to convention.
struct CurvatureData {
    int dim = 0;
    std::vector<double> point;
    MatD g, g_inv;
    std::vector<double> gamma_;     // k*n*n + i*n + j
    std::vector<double> riemann_;   // ((l*n + i)*n + j)*n + k
    MatD ricci02, ricci11;
    double S = 0.0;

    bool has_third_order = false;
    std::vector<double> grad_S;       // contravariant, valid when has_third_order
    std::vector<double> d_ricci11_;   // mu*n*n + i*n + j: partial_mu Ric^i_j

    double gamma(int k, int i, int j) const {
        return gamma_[(static_cast<std::size_t>(k) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i)) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)];
    }
    double riem(int l, int i, int j, int k) const {
        return riemann_[((static_cast<std::size_t>(l) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i)) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(k)];
    }

    // (nabla_X Ric)^i_j = X^mu (d_mu Ric^i_j + Gamma^i_mu,k Ric^k_j - Gamma^k_mu,j Ric^i_k)
    MatD nabla_ric_in(std::span<const double> direction) const;

    // g-norm of a contravariant vector.
    double vec_norm(std::span<const double> v) const;
};

std::vector<Jet> coordinate_jets(std::span<const double> point, int order);

// Metric evaluation with symmetry and positive-definiteness validation.
JetMat metric_jets(const ChartPatch& patch, std::span<const Jet> coords);

// Inverse and determinant of a jet matrix by adjugate expansion (n <= 4).
Jet jet_det(const JetMat& m);
JetMat jet_inverse(const JetMat& m);

CurvatureData curvature_at(const ChartPatch& patch, std::span<const double> point, int order = 3);

// Christoffel symbols Gamma^k_ij flattened as k*n*n + i*n + j.
std::vector<double> christoffel(const ChartPatch& patch, std::span<const double> point);

// (grad f)^i = g^ij d_j f
std::vector<double> gradient(const ChartPatch& patch, const ScalarField& field, std::span<const double> point);

// H^i_j = g^ik (d_k d_j f - Gamma^l_kj d_l f)
MatD hessian11(const ChartPatch& patch, const ScalarField& field, std::span<const double> point);

// Geometer's sign: laplacian = -trace(hessian11).
double laplacian(const ChartPatch& patch, const ScalarField& field, std::span<const double> point);

// Same quantities from a precomputed curvature package and field jet
// (order >= 2) at the same point.
std::vector<double> gradient_from(const CurvatureData& curv, const Jet& f_jet);
MatD hessian11_from(const CurvatureData& curv, const Jet& f_jet);
double laplacian_from(const CurvatureData& curv, const Jet& f_jet);

// cov(i,j) = (nabla_i V)^j = d_i V^j + Gamma^j_ik V^k, from order >= 1 jets
// of the field components.
MatD covariant_matrix(const CurvatureData& curv, std::span<const Jet> v_jets);

// Derived fields.  Their eval_fn rebuilds coordinate jets one order higher
// from the values of its inputs, so they are valid on coordinate jets only.
VectorFieldSpec gradient_field(const ChartPatch& patch, const ScalarField& field);
VectorFieldSpec normalized_gradient_field(const ChartPatch& patch, const ScalarField& field);

}  // namespace hessric
