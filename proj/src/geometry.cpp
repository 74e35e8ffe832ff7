#include "hessric/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace hessric {

namespace {

MatD value_part(const JetMat& m) {
    MatD out(m.n);
    for (int i = 0; i < m.n; ++i) {
        for (int j = 0; j < m.n; ++j) out.at(i, j) = m.at(i, j).value();
    }
    return out;
}

JetMat truncate(const JetMat& m, int order) {
    JetMat out(m.n, m.at(0, 0).truncated(order));
    for (int i = 0; i < m.n; ++i) {
        for (int j = 0; j < m.n; ++j) out.at(i, j) = m.at(i, j).truncated(order);
    }
    return out;
}

Jet minor_det(const JetMat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    const std::size_t k = rows.size();
    if (k == 1) return m.at(rows[0], cols[0]);
    Jet acc = Jet::constant_like(m.at(0, 0), 0.0);
    int row = rows[0];
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<int> sub_cols;
        sub_cols.reserve(k - 1);
        for (std::size_t j = 0; j < k; ++j) {
            if (j != c) sub_cols.push_back(cols[j]);
        }
        Jet term = m.at(row, cols[c]) * minor_det(m, sub_rows, sub_cols);
        if (c % 2 == 0) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    return acc;
}

}  // namespace

Jet jet_det(const JetMat& m) {
    std::vector<int> rows(static_cast<std::size_t>(m.n)), cols(static_cast<std::size_t>(m.n));
    for (int i = 0; i < m.n; ++i) rows[static_cast<std::size_t>(i)] = cols[static_cast<std::size_t>(i)] = i;
    return minor_det(m, rows, cols);
}

JetMat jet_inverse(const JetMat& m) {
    const int n = m.n;
    if (n > 4) throw std::invalid_argument("adjugate inversion supports n <= 4");
    Jet det = jet_det(m);
    if (det.value() == 0.0) throw std::domain_error("metric not invertible at point");
    Jet inv_det = 1.0 / det;
    JetMat out(n, inv_det);
    if (n == 1) {
        out.at(0, 0) = inv_det;
        return out;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<int> rows, cols;
            for (int r = 0; r < n; ++r) {
                if (r != j) rows.push_back(r);
            }
            for (int c = 0; c < n; ++c) {
                if (c != i) cols.push_back(c);
            }
            Jet cof = minor_det(m, rows, cols);
            out.at(i, j) = ((i + j) % 2 == 0 ? cof : -cof) * inv_det;
        }
    }
    return out;
}

std::vector<Jet> coordinate_jets(std::span<const double> point, int order) {
    std::vector<Jet> xs;
    xs.reserve(point.size());
    const int n = static_cast<int>(point.size());
    for (int i = 0; i < n; ++i) xs.push_back(Jet::variable(i, point[static_cast<std::size_t>(i)], n, order));
    return xs;
}

JetMat metric_jets(const ChartPatch& patch, std::span<const Jet> coords) {
    JetMat g = patch.metric_fn(coords);
    if (g.n != patch.dim) throw std::invalid_argument("metric_fn returned wrong dimension");
    MatD values = value_part(g);
    double scale = std::max(1.0, values.max_abs());
    for (int i = 0; i < g.n; ++i) {
        for (int j = i + 1; j < g.n; ++j) {
            if (std::abs(values.at(i, j) - values.at(j, i)) > 1e-12 * scale) {
                throw std::domain_error("metric_fn returned an asymmetric matrix");
            }
        }
    }
    auto eig = sym_eigenvalues(values);
    if (eig.front() <= 1e-10) throw std::domain_error("metric not positive definite at point");
    return g;
}

CurvatureData curvature_at(const ChartPatch& patch, std::span<const double> point, int order) {
    if (order < 2) throw std::invalid_argument("curvature needs jet order >= 2");
    if (!patch.domain.contains(point)) throw std::domain_error("point outside chart domain");
    const int n = patch.dim;

    auto xs = coordinate_jets(point, order);
    JetMat gj = metric_jets(patch, xs);

    CurvatureData out;
    out.dim = n;
    out.point.assign(point.begin(), point.end());
    out.g = value_part(gj);

    // d_i g as jets one order down, matching the inverse metric's order.
    std::vector<JetMat> dg;
    dg.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        JetMat di(n, gj.at(0, 0).partial_jet(i));
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) di.at(a, b) = gj.at(a, b).partial_jet(i);
        }
        dg.push_back(std::move(di));
    }
    JetMat ginv = jet_inverse(truncate(gj, order - 1));
    out.g_inv = value_part(ginv);

    // Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij)
    const Jet zero_lower = Jet::constant_like(ginv.at(0, 0), 0.0);
    std::vector<Jet> gamma_jets(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n), zero_lower);
    auto gamma_index = [n](int k, int i, int j) {
        return (static_cast<std::size_t>(k) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j);
    };
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                Jet acc = zero_lower;
                for (int l = 0; l < n; ++l) {
                    acc += ginv.at(k, l) * (dg[static_cast<std::size_t>(i)].at(j, l) +
                                            dg[static_cast<std::size_t>(j)].at(i, l) -
                                            dg[static_cast<std::size_t>(l)].at(i, j));
                }
                acc = acc * 0.5;
                gamma_jets[gamma_index(k, i, j)] = acc;
                gamma_jets[gamma_index(k, j, i)] = acc;
            }
        }
    }
    out.gamma_.resize(gamma_jets.size());
    for (std::size_t s = 0; s < gamma_jets.size(); ++s) out.gamma_[s] = gamma_jets[s].value();

    // R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik
    const int rlow = order - 2;
    std::vector<Jet> gamma_trunc;
    gamma_trunc.reserve(gamma_jets.size());
    for (const auto& gjet : gamma_jets) gamma_trunc.push_back(gjet.truncated(rlow));
    const Jet zero_r = Jet::constant_like(gamma_trunc[0], 0.0);
    std::vector<Jet> riem_jets(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n), zero_r);
    auto riem_index = [n](int l, int i, int j, int k) {
        return ((static_cast<std::size_t>(l) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k);
    };
    for (int l = 0; l < n; ++l) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;   // antisymmetric in (i, j)
                for (int k = 0; k < n; ++k) {
                    if (j < i) {
                        riem_jets[riem_index(l, i, j, k)] = -riem_jets[riem_index(l, j, i, k)];
                        continue;
                    }
                    Jet acc = gamma_jets[gamma_index(l, j, k)].partial_jet(i) -
                              gamma_jets[gamma_index(l, i, k)].partial_jet(j);
                    for (int m = 0; m < n; ++m) {
                        acc += gamma_trunc[gamma_index(l, i, m)] * gamma_trunc[gamma_index(m, j, k)] -
                               gamma_trunc[gamma_index(l, j, m)] * gamma_trunc[gamma_index(m, i, k)];
                    }
                    riem_jets[riem_index(l, i, j, k)] = acc;
                }
            }
        }
    }
    out.riemann_.resize(riem_jets.size());
    for (std::size_t s = 0; s < riem_jets.size(); ++s) out.riemann_[s] = riem_jets[s].value();

    // ric_jk = sum_i R^i_ijk; Ric^i_j = g^ik ric_kj; S = g^jk ric_jk
    std::vector<Jet> ric_jets(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), zero_r);
    auto ric_index = [n](int j, int k) {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k);
    };
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            Jet acc = zero_r;
            for (int i = 0; i < n; ++i) acc += riem_jets[riem_index(i, i, j, k)];
            ric_jets[ric_index(j, k)] = acc;
        }
    }
    JetMat ginv_r = truncate(ginv, rlow);
    std::vector<Jet> ric11_jets(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), zero_r);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Jet acc = zero_r;
            for (int k = 0; k < n; ++k) acc += ginv_r.at(i, k) * ric_jets[ric_index(k, j)];
            ric11_jets[ric_index(i, j)] = acc;
        }
    }
    Jet s_jet = zero_r;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) s_jet += ginv_r.at(j, k) * ric_jets[ric_index(j, k)];
    }

    out.ricci02 = MatD(n);
    out.ricci11 = MatD(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out.ricci02.at(i, j) = ric_jets[ric_index(i, j)].value();
            out.ricci11.at(i, j) = ric11_jets[ric_index(i, j)].value();
        }
    }
    out.S = s_jet.value();

    if (order >= 3) {
        out.has_third_order = true;
        out.grad_S.assign(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += out.g_inv.at(i, j) * s_jet.partial(j);
            out.grad_S[static_cast<std::size_t>(i)] = acc;
        }
        out.d_ricci11_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
        for (int mu = 0; mu < n; ++mu) {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    out.d_ricci11_[(static_cast<std::size_t>(mu) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] =
                        ric11_jets[ric_index(i, j)].partial(mu);
                }
            }
        }
    }
    return out;
}

MatD CurvatureData::nabla_ric_in(std::span<const double> direction) const {
    if (!has_third_order) throw std::invalid_argument("nabla_ric_in needs jet order >= 3");
    const int n = dim;
    MatD out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int mu = 0; mu < n; ++mu) {
                double term = d_ricci11_[(static_cast<std::size_t>(mu) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
                for (int k = 0; k < n; ++k) {
                    term += gamma(i, mu, k) * ricci11.at(k, j) - gamma(k, mu, j) * ricci11.at(i, k);
                }
                acc += direction[static_cast<std::size_t>(mu)] * term;
            }
            out.at(i, j) = acc;
        }
    }
    return out;
}

double CurvatureData::vec_norm(std::span<const double> v) const {
    double acc = 0.0;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) acc += g.at(i, j) * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
    }
    return std::sqrt(std::max(acc, 0.0));
}

std::vector<double> christoffel(const ChartPatch& patch, std::span<const double> point) {
    return curvature_at(patch, point, 2).gamma_;
}

std::vector<double> gradient_from(const CurvatureData& curv, const Jet& f_jet) {
    const int n = curv.dim;
    std::vector<double> grad(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += curv.g_inv.at(i, j) * f_jet.partial(j);
        grad[static_cast<std::size_t>(i)] = acc;
    }
    return grad;
}

MatD hessian11_from(const CurvatureData& curv, const Jet& f_jet) {
    const int n = curv.dim;
    MatD lowered(n);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            double acc = f_jet.partial2(k, j);
            for (int l = 0; l < n; ++l) acc -= curv.gamma(l, k, j) * f_jet.partial(l);
            lowered.at(k, j) = acc;
        }
    }
    MatD out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += curv.g_inv.at(i, k) * lowered.at(k, j);
            out.at(i, j) = acc;
        }
    }
    return out;
}

double laplacian_from(const CurvatureData& curv, const Jet& f_jet) {
    return -hessian11_from(curv, f_jet).trace();
}

std::vector<double> gradient(const ChartPatch& patch, const ScalarField& field, std::span<const double> point) {
    CurvatureData curv = curvature_at(patch, point, 2);
    Jet f = field.eval_fn(coordinate_jets(point, 2));
    return gradient_from(curv, f);
}

MatD hessian11(const ChartPatch& patch, const ScalarField& field, std::span<const double> point) {
    CurvatureData curv = curvature_at(patch, point, 2);
    Jet f = field.eval_fn(coordinate_jets(point, 2));
    return hessian11_from(curv, f);
}

double laplacian(const ChartPatch& patch, const ScalarField& field, std::span<const double> point) {
    return -hessian11(patch, field, point).trace();
}

MatD covariant_matrix(const CurvatureData& curv, std::span<const Jet> v_jets) {
    const int n = curv.dim;
    MatD out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double acc = v_jets[static_cast<std::size_t>(j)].partial(i);
            for (int k = 0; k < n; ++k) acc += curv.gamma(j, i, k) * v_jets[static_cast<std::size_t>(k)].value();
            out.at(i, j) = acc;
        }
    }
    return out;
}

namespace {

std::vector<Jet> gradient_jets(const ChartPatch& patch, const ScalarField& field, std::span<const Jet> xs) {
    const int k = xs[0].order();
    const int n = static_cast<int>(xs.size());
    if (k + 1 > kMaxJetOrder) throw std::invalid_argument("derived field evaluated at too high an order");
    std::vector<double> values(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = xs[static_cast<std::size_t>(i)].value();
    auto ys = coordinate_jets(values, k + 1);
    Jet f = field.eval_fn(ys);
    std::vector<Jet> zs;
    zs.reserve(static_cast<std::size_t>(n));
    for (const auto& y : ys) zs.push_back(y.truncated(k));
    JetMat ginv = jet_inverse(metric_jets(patch, zs));
    std::vector<Jet> grad;
    grad.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Jet acc = Jet::constant_like(zs[0], 0.0);
        for (int j = 0; j < n; ++j) acc += ginv.at(i, j) * f.partial_jet(j);
        grad.push_back(std::move(acc));
    }
    return grad;
}

}  // namespace

VectorFieldSpec gradient_field(const ChartPatch& patch, const ScalarField& field) {
    VectorFieldSpec v;
    v.label = "grad(" + field.label + ")";
    v.eval_fn = [patch, field](std::span<const Jet> xs) { return gradient_jets(patch, field, xs); };
    return v;
}

VectorFieldSpec normalized_gradient_field(const ChartPatch& patch, const ScalarField& field) {
    VectorFieldSpec v;
    v.label = "grad(" + field.label + ")/|grad|";
    v.eval_fn = [patch, field](std::span<const Jet> xs) {
        auto grad = gradient_jets(patch, field, xs);
        const int n = static_cast<int>(xs.size());
        std::vector<double> values(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = xs[static_cast<std::size_t>(i)].value();
        auto zs = coordinate_jets(values, xs[0].order());
        JetMat g = metric_jets(patch, zs);
        Jet norm2 = Jet::constant_like(grad[0], 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) norm2 += g.at(i, j) * grad[static_cast<std::size_t>(i)] * grad[static_cast<std::size_t>(j)];
        }
        Jet norm = sqrt(norm2);
        std::vector<Jet> nu;
        nu.reserve(grad.size());
        for (auto& v_i : grad) nu.push_back(v_i / norm);
        return nu;
    };
    return v;
}

}  // namespace hessric
