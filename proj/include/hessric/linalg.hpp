#pragma once

#include <span>
#include <vector>

namespace hessric {

/// Dense square matrix of doubles, sized for chart dimensions (n <= 6).
struct MatD {
    int n = 0;
    std::vector<double> a;

    MatD() = default;
    explicit MatD(int dim) : n(dim), a(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }

    static MatD identity(int dim);
    double max_abs() const;
    double trace() const;
};

MatD mat_mul(const MatD& a, const MatD& b);

// Eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> sym_eigenvalues(const MatD& m);

// Eigenvalues of the pencil a*v = lambda*g*v with g symmetric positive
// definite, ascending.  Used for operators that are self-adjoint w.r.t. g.
std::vector<double> generalized_sym_eigenvalues(const MatD& a, const MatD& g);

// Singular values (one-sided Jacobi), descending.
std::vector<double> singular_values(const MatD& m);

// Lower Cholesky factor; throws std::domain_error if not positive definite.
MatD cholesky(const MatD& g);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace hessric
