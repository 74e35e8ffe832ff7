#include "hessric/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hessric {

MatD MatD::identity(int dim) {
    MatD m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

double MatD::max_abs() const {
    double mx = 0.0;
    for (double v : a) mx = std::max(mx, std::abs(v));
    return mx;
}

double MatD::trace() const {
    double t = 0.0;
    for (int i = 0; i < n; ++i) t += at(i, i);
    return t;
}

MatD mat_mul(const MatD& a, const MatD& b) {
    MatD out(a.n);
    for (int i = 0; i < a.n; ++i) {
        for (int k = 0; k < a.n; ++k) {
            double aik = a.at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < a.n; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    }
    return out;
}

std::vector<double> sym_eigenvalues(const MatD& m) {
    MatD w = m;
    const int n = w.n;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) off += w.at(p, q) * w.at(p, q);
        }
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = w.at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (w.at(q, q) - w.at(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double wkp = w.at(k, p), wkq = w.at(k, q);
                    w.at(k, p) = c * wkp - s * wkq;
                    w.at(k, q) = s * wkp + c * wkq;
                }
                for (int k = 0; k < n; ++k) {
                    double wpk = w.at(p, k), wqk = w.at(q, k);
                    w.at(p, k) = c * wpk - s * wqk;
                    w.at(q, k) = s * wpk + c * wqk;
                }
            }
        }
    }
    std::vector<double> eig(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = w.at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

MatD cholesky(const MatD& g) {
    const int n = g.n;
    MatD l(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = g.at(i, j);
            for (int k = 0; k < j; ++k) sum -= l.at(i, k) * l.at(j, k);
            if (i == j) {
                if (sum <= 0.0) throw std::domain_error("matrix not positive definite");
                l.at(i, i) = std::sqrt(sum);
            } else {
                l.at(i, j) = sum / l.at(j, j);
            }
        }
    }
    return l;
}

std::vector<double> generalized_sym_eigenvalues(const MatD& a, const MatD& g) {
    const int n = a.n;
    MatD l = cholesky(g);
    // b = inv(l) * a * inv(l)^T by forward substitutions
    MatD y(n);   // solves l * y = a columnwise
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            double sum = a.at(i, j);
            for (int k = 0; k < i; ++k) sum -= l.at(i, k) * y.at(k, j);
            y.at(i, j) = sum / l.at(i, i);
        }
    }
    MatD b(n);   // solves b * l^T = y rowwise
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double sum = y.at(i, j);
            for (int k = 0; k < j; ++k) sum -= b.at(i, k) * l.at(j, k);
            b.at(i, j) = sum / l.at(j, j);
        }
    }
    // enforce symmetry before Jacobi (exact up to rounding)
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double s = 0.5 * (b.at(i, j) + b.at(j, i));
            b.at(i, j) = s;
            b.at(j, i) = s;
        }
    }
    return sym_eigenvalues(b);
}

std::vector<double> singular_values(const MatD& m) {
    // One-sided Jacobi: orthogonalize column pairs of a working copy.
    MatD w = m;
    const int n = w.n;
    for (int sweep = 0; sweep < 64; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (int k = 0; k < n; ++k) {
                    alpha += w.at(k, p) * w.at(k, p);
                    beta += w.at(k, q) * w.at(k, q);
                    gamma += w.at(k, p) * w.at(k, q);
                }
                if (std::abs(gamma) <= 1e-32 * std::sqrt(alpha * beta) || gamma == 0.0) continue;
                rotated = true;
                double zeta = (beta - alpha) / (2.0 * gamma);
                double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (int k = 0; k < n; ++k) {
                    double wkp = w.at(k, p), wkq = w.at(k, q);
                    w.at(k, p) = c * wkp - s * wkq;
                    w.at(k, q) = s * wkp + c * wkq;
                }
            }
        }
        if (!rotated) break;
    }
    std::vector<double> sv(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double norm2 = 0.0;
        for (int k = 0; k < n; ++k) norm2 += w.at(k, j) * w.at(k, j);
        sv[static_cast<std::size_t>(j)] = std::sqrt(norm2);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace hessric
