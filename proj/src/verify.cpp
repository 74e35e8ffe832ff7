#include "hessric/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <stdexcept>

namespace hessric {

namespace {

constexpr double kRegularGradCutoff = 1e-6;

struct PointData {
    CurvatureData curv;
    Jet f_jet;
    double f;
    std::vector<double> grad;
    double grad_norm2 = 0.0;
    double grad_norm = 0.0;
    MatD hess11;
    double lap = 0.0;
};

PointData point_data(const SolutionSpec& spec, std::span<const double> point, int order) {
    PointData pd{curvature_at(spec.patch, point, order),
                 spec.f.eval_fn(coordinate_jets(point, order)),
                 0.0,
                 {},
                 0.0,
                 0.0,
                 MatD(spec.patch.dim),
                 0.0};
    pd.f = pd.f_jet.value();
    pd.grad = gradient_from(pd.curv, pd.f_jet);
    for (int i = 0; i < pd.curv.dim; ++i) {
        for (int j = 0; j < pd.curv.dim; ++j) {
            pd.grad_norm2 += pd.curv.g.at(i, j) * pd.grad[static_cast<std::size_t>(i)] * pd.grad[static_cast<std::size_t>(j)];
        }
    }
    pd.grad_norm = std::sqrt(std::max(pd.grad_norm2, 0.0));
    pd.hess11 = hessian11_from(pd.curv, pd.f_jet);
    pd.lap = -pd.hess11.trace();
    return pd;
}

double residual_main_from(const PointData& pd) {
    double mx = 0.0;
    for (int i = 0; i < pd.curv.dim; ++i) {
        for (int j = 0; j < pd.curv.dim; ++j) {
            mx = std::max(mx, std::abs(pd.hess11.at(i, j) + pd.f * pd.curv.ricci11.at(i, j)));
        }
    }
    return mx;
}

double residual_ric_grad_from(const PointData& pd) {
    if (!pd.curv.has_third_order) throw std::invalid_argument("residual_ric_grad needs jet order >= 3");
    const int n = pd.curv.dim;
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += pd.curv.ricci11.at(i, j) * pd.grad[static_cast<std::size_t>(j)];
        acc -= 0.5 * pd.curv.S * pd.grad[static_cast<std::size_t>(i)];
        acc -= 0.25 * pd.f * pd.curv.grad_S[static_cast<std::size_t>(i)];
        v[static_cast<std::size_t>(i)] = acc;
    }
    return pd.curv.vec_norm(v);
}

double laplace_identity_from(const PointData& pd) { return std::abs(pd.lap - pd.f * pd.curv.S); }

std::vector<double> apply11(const MatD& m, std::span<const double> v) {
    std::vector<double> out(static_cast<std::size_t>(m.n), 0.0);
    for (int i = 0; i < m.n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < m.n; ++j) acc += m.at(i, j) * v[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

MatD lowered_covariant(const CurvatureData& curv, const MatD& cov) {
    // a(i,j) = g_jk (nabla_i v)^k
    MatD a(curv.dim);
    for (int i = 0; i < curv.dim; ++i) {
        for (int j = 0; j < curv.dim; ++j) {
            double acc = 0.0;
            for (int k = 0; k < curv.dim; ++k) acc += curv.g.at(j, k) * cov.at(i, k);
            a.at(i, j) = acc;
        }
    }
    return a;
}

struct KillingPointResiduals {
    double symmetry, orthogonality, acceleration, ric_eigen, rank_proxy, commutator;
    double norm_value;
};

KillingPointResiduals killing_point(const SolutionSpec& spec, const PointData& pd, std::span<const double> point,
                                    const VectorFieldSpec& grad_field) {
    if (!spec.eta) throw std::invalid_argument("killing checks need a declared eta field");
    if (!spec.epsilon) throw std::invalid_argument("killing checks need a declared epsilon");
    const int n = pd.curv.dim;
    const double eps = static_cast<double>(*spec.epsilon);

    auto xs = coordinate_jets(point, 1);
    auto eta_jets = spec.eta->eval_fn(xs);
    std::vector<double> eta(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eta[static_cast<std::size_t>(i)] = eta_jets[static_cast<std::size_t>(i)].value();

    MatD cov = covariant_matrix(pd.curv, eta_jets);
    MatD lowered = lowered_covariant(pd.curv, cov);

    KillingPointResiduals out{};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out.symmetry = std::max(out.symmetry, std::abs(lowered.at(i, j) + lowered.at(j, i)));
        }
    }

    double orth = 0.0;
    for (int i = 0; i < n; ++i) orth += eta[static_cast<std::size_t>(i)] * pd.f_jet.partial(i);
    out.orthogonality = std::abs(orth);

    std::vector<double> accel(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += eta[static_cast<std::size_t>(i)] * cov.at(i, j);
        accel[static_cast<std::size_t>(j)] = acc - eps * pd.f * pd.grad[static_cast<std::size_t>(j)];
    }
    out.acceleration = pd.curv.vec_norm(accel);

    double eta_norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            eta_norm2 += pd.curv.g.at(i, j) * eta[static_cast<std::size_t>(i)] * eta[static_cast<std::size_t>(j)];
        }
    }
    out.norm_value = eta_norm2 + eps * pd.f * pd.f;

    auto ric_eta = apply11(pd.curv.ricci11, eta);
    std::vector<double> diff(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) diff[static_cast<std::size_t>(i)] = ric_eta[static_cast<std::size_t>(i)] - 0.5 * pd.curv.S * eta[static_cast<std::size_t>(i)];
    out.ric_eigen = pd.curv.vec_norm(diff);

    out.rank_proxy = n >= 3 ? singular_values(lowered)[2] : 0.0;

    auto grad_jets = grad_field.eval_fn(xs);
    std::vector<double> bracket(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            acc += eta[static_cast<std::size_t>(j)] * grad_jets[static_cast<std::size_t>(i)].partial(j) -
                   grad_jets[static_cast<std::size_t>(j)].value() * eta_jets[static_cast<std::size_t>(i)].partial(j);
        }
        bracket[static_cast<std::size_t>(i)] = acc;
    }
    out.commutator = pd.curv.vec_norm(bracket);
    return out;
}

double geodesic_residual(const SolutionSpec& spec, const PointData& pd, std::span<const double> point,
                         const VectorFieldSpec& nu_field) {
    const int n = pd.curv.dim;
    auto nu_jets = nu_field.eval_fn(coordinate_jets(point, 1));
    MatD cov = covariant_matrix(pd.curv, nu_jets);
    std::vector<double> accel(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += nu_jets[static_cast<std::size_t>(i)].value() * cov.at(i, j);
        accel[static_cast<std::size_t>(j)] = acc;
    }
    return pd.curv.vec_norm(accel);
}

struct RicciPointResiduals {
    double eigenvalue_err, ric_squared_err, nabla_nu_err;
};

RicciPointResiduals ricci_structure_point(const SolutionSpec& spec, const PointData& pd) {
    const int n = pd.curv.dim;
    const double half_S = 0.5 * *spec.expected_S;

    auto eig = generalized_sym_eigenvalues(pd.curv.ricci02, pd.curv.g);
    std::vector<double> expected(static_cast<std::size_t>(n), 0.0);
    expected[static_cast<std::size_t>(n - 2)] = half_S;
    expected[static_cast<std::size_t>(n - 1)] = half_S;
    std::sort(expected.begin(), expected.end());
    double eig_err = 0.0;
    for (int i = 0; i < n; ++i) eig_err = std::max(eig_err, std::abs(eig[static_cast<std::size_t>(i)] - expected[static_cast<std::size_t>(i)]));

    RicciPointResiduals out{eig_err, 0.0, 0.0};

    if (spec.eta) {
        auto eta_jets = spec.eta->eval_fn(coordinate_jets(pd.curv.point, 1));
        std::vector<double> eta(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) eta[static_cast<std::size_t>(i)] = eta_jets[static_cast<std::size_t>(i)].value();
        auto ric_eta = apply11(pd.curv.ricci11, eta);
        auto ric2_eta = apply11(pd.curv.ricci11, ric_eta);
        std::vector<double> diff(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) diff[static_cast<std::size_t>(i)] = ric2_eta[static_cast<std::size_t>(i)] - half_S * ric_eta[static_cast<std::size_t>(i)];
        out.ric_squared_err = pd.curv.vec_norm(diff);
    }

    if (pd.grad_norm >= kRegularGradCutoff) {
        std::vector<double> nu(pd.grad);
        for (auto& c : nu) c /= pd.grad_norm;
        out.nabla_nu_err = pd.curv.nabla_ric_in(nu).max_abs();
    }
    return out;
}

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Accumulator {
    int n = 0;
    double max = 0.0;
    double sum = 0.0;
    void add(double v) {
        ++n;
        max = std::max(max, v);
        sum += v;
    }
    double mean() const { return n > 0 ? sum / n : 0.0; }
};

CheckRecord make_record(const std::string& id, const Accumulator& acc, double threshold, std::string note = {}) {
    CheckRecord r;
    r.check_id = id;
    r.num_points = acc.n;
    r.max_residual = acc.max;
    r.mean_residual = acc.mean();
    r.pass = acc.max <= threshold;
    r.note = std::move(note);
    return r;
}

}  // namespace

void ToleranceConfig::validate() const {
    if (!(tol_identity < tol_negative_control)) {
        throw std::invalid_argument("tol_identity must be below tol_negative_control");
    }
    if (samples < 10) throw std::invalid_argument("samples must be >= 10");
    if (jet_order < 3 || jet_order > kMaxJetOrder) {
        throw std::invalid_argument("jet order must be 3 or 4 for the verification suite");
    }
}

double residual_main(const SolutionSpec& spec, std::span<const double> point, int order) {
    return residual_main_from(point_data(spec, point, order));
}

double residual_ric_grad(const SolutionSpec& spec, std::span<const double> point, int order) {
    return residual_ric_grad_from(point_data(spec, point, order));
}

double mu_at(const SolutionSpec& spec, std::span<const double> point, int order) {
    PointData pd = point_data(spec, point, order);
    return pd.f * pd.lap + 2.0 * pd.grad_norm2;
}

MuStats check_mu(const SolutionSpec& spec, const std::vector<std::vector<double>>& plan, int order) {
    std::vector<double> values;
    values.reserve(plan.size());
    for (const auto& p : plan) values.push_back(mu_at(spec, p, order));
    MuStats stats;
    for (double v : values) stats.mean += v;
    stats.mean /= static_cast<double>(values.size());
    for (double v : values) stats.max_deviation = std::max(stats.max_deviation, std::abs(v - stats.mean));
    if (spec.expected_mu) stats.mean_error = std::abs(stats.mean - *spec.expected_mu);
    return stats;
}

double check_laplace_identity(const SolutionSpec& spec, std::span<const double> point, int order) {
    return laplace_identity_from(point_data(spec, point, order));
}

std::vector<std::vector<double>> find_level_set_points(const SolutionSpec& spec, int count, std::uint64_t seed) {
    // Oversample: not every start converges onto the zero level set.
    auto plan = sample_points(spec.patch.domain, 4 * count, seed);
    std::vector<std::vector<double>> found;
    const int n = spec.patch.dim;
    for (auto p : plan) {
        bool converged = false;
        for (int it = 0; it < 60; ++it) {
            if (!spec.patch.domain.contains(p)) break;
            Jet fj = spec.f.eval_fn(coordinate_jets(p, 1));
            if (std::abs(fj.value()) <= 1e-12) {
                converged = true;
                break;
            }
            double d2 = 0.0;
            for (int i = 0; i < n; ++i) d2 += fj.partial(i) * fj.partial(i);
            if (d2 < 1e-16) break;
            for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] -= fj.value() * fj.partial(i) / d2;
        }
        if (converged && spec.patch.domain.contains(p)) found.push_back(std::move(p));
        if (static_cast<int>(found.size()) >= count) break;
    }
    return found;
}

LevelSetRecord check_level_set(const SolutionSpec& spec, int count, std::uint64_t seed, int order) {
    LevelSetRecord rec;
    auto points = find_level_set_points(spec, count, seed);
    if (points.empty()) return rec;
    rec.applicable = true;

    auto nu_field = normalized_gradient_field(spec.patch, spec.f);
    const int n = spec.patch.dim;
    for (const auto& p : points) {
        PointData pd = point_data(spec, p, order);
        if (pd.grad_norm < 1e-8) {
            throw std::domain_error("vanishing gradient on the zero level set (inconsistent solution)");
        }
        std::vector<double> nu(pd.grad);
        for (auto& c : nu) c /= pd.grad_norm;
        std::vector<double> nu_lower(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) nu_lower[static_cast<std::size_t>(i)] += pd.curv.g.at(i, j) * nu[static_cast<std::size_t>(j)];
        }

        auto nu_jets = nu_field.eval_fn(coordinate_jets(p, 1));
        MatD cov = covariant_matrix(pd.curv, nu_jets);
        // operator form: (W X)^j = -(nabla_i nu)^j X^i, projected to nu-perp
        MatD w_full(n);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) w_full.at(j, i) = -cov.at(i, j);
        }
        MatD proj(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                proj.at(i, j) = (i == j ? 1.0 : 0.0) - nu[static_cast<std::size_t>(i)] * nu_lower[static_cast<std::size_t>(j)];
            }
        }
        MatD w = mat_mul(proj, mat_mul(w_full, proj));

        rec.max_shape_operator = std::max(rec.max_shape_operator, w.max_abs());
        double tr_w = w.trace();
        double w2 = mat_mul(w, w).trace();
        double ric_nunu = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) ric_nunu += pd.curv.ricci02.at(i, j) * nu[static_cast<std::size_t>(i)] * nu[static_cast<std::size_t>(j)];
        }
        double gauss = pd.curv.S - 2.0 * ric_nunu + tr_w * tr_w - w2;
        rec.max_gauss_scalar = std::max(rec.max_gauss_scalar, std::abs(gauss));
        ++rec.num_points;
    }
    return rec;
}

double check_geodesic_nu(const SolutionSpec& spec, std::span<const double> point) {
    PointData pd = point_data(spec, point, 2);
    if (pd.grad_norm < kRegularGradCutoff) {
        throw std::domain_error("point too close to the critical set of f");
    }
    auto nu_field = normalized_gradient_field(spec.patch, spec.f);
    return geodesic_residual(spec, pd, point, nu_field);
}

KillingRecord check_killing_suite(const SolutionSpec& spec, const std::vector<std::vector<double>>& plan) {
    KillingRecord rec;
    auto grad_field = gradient_field(spec.patch, spec.f);
    std::vector<double> norm_values;
    norm_values.reserve(plan.size());
    for (const auto& p : plan) {
        PointData pd = point_data(spec, p, 2);
        if (pd.grad_norm < kRegularGradCutoff) continue;
        auto kp = killing_point(spec, pd, p, grad_field);
        rec.symmetry = std::max(rec.symmetry, kp.symmetry);
        rec.orthogonality = std::max(rec.orthogonality, kp.orthogonality);
        rec.acceleration = std::max(rec.acceleration, kp.acceleration);
        rec.ric_eigen = std::max(rec.ric_eigen, kp.ric_eigen);
        rec.rank_proxy = std::max(rec.rank_proxy, kp.rank_proxy);
        rec.commutator = std::max(rec.commutator, kp.commutator);
        norm_values.push_back(kp.norm_value);
        ++rec.num_points;
    }
    if (!norm_values.empty()) {
        double mean = 0.0;
        for (double v : norm_values) mean += v;
        mean /= static_cast<double>(norm_values.size());
        rec.norm_constant = mean;
        for (double v : norm_values) rec.norm_constancy = std::max(rec.norm_constancy, std::abs(v - mean));
    }
    return rec;
}

RicciStructureRecord check_ricci_structure(const SolutionSpec& spec, const std::vector<std::vector<double>>& plan,
                                           int order) {
    RicciStructureRecord rec;
    if (!spec.is_product || !spec.expected_S || *spec.expected_S == 0.0 || spec.patch.dim < 3) return rec;
    rec.applicable = true;
    for (const auto& p : plan) {
        PointData pd = point_data(spec, p, order);
        auto rp = ricci_structure_point(spec, pd);
        rec.eigenvalue_err = std::max(rec.eigenvalue_err, rp.eigenvalue_err);
        rec.ric_squared_err = std::max(rec.ric_squared_err, rp.ric_squared_err);
        rec.nabla_nu_err = std::max(rec.nabla_nu_err, rp.nabla_nu_err);
        ++rec.num_points;
    }
    return rec;
}

VerificationReport run_suite(const SolutionSpec& spec, const ToleranceConfig& config) {
    config.validate();
    auto t0 = std::chrono::steady_clock::now();

    VerificationReport report;
    report.case_name = spec.name;
    report.config = config;
    report.timestamp = utc_timestamp();

    const double base = spec.ode_limited ? config.tol_ode_limited : config.tol_identity;
    auto plan = sample_points(spec.patch.domain, config.samples, config.seed);

    // Stage 1: pointwise identities sharing one curvature evaluation.
    Accumulator main_acc, ric_grad_acc, laplace_acc, geodesic_acc;
    std::vector<double> mu_values;
    mu_values.reserve(plan.size());
    int geodesic_skipped = 0;
    try {
        auto nu_field = normalized_gradient_field(spec.patch, spec.f);
        for (const auto& p : plan) {
            PointData pd = point_data(spec, p, config.jet_order);
            main_acc.add(residual_main_from(pd));
            ric_grad_acc.add(residual_ric_grad_from(pd));
            laplace_acc.add(laplace_identity_from(pd));
            mu_values.push_back(pd.f * pd.lap + 2.0 * pd.grad_norm2);
            if (spec.expected_S) {
                if (pd.grad_norm >= kRegularGradCutoff) {
                    geodesic_acc.add(geodesic_residual(spec, pd, p, nu_field));
                } else {
                    ++geodesic_skipped;
                }
            }
        }
        report.checks.push_back(make_record("residual_main", main_acc, base));
        report.checks.push_back(make_record("residual_ric_grad", ric_grad_acc, 10.0 * base));
        report.checks.push_back(make_record("laplace_identity", laplace_acc, base));

        double mean = 0.0;
        for (double v : mu_values) mean += v;
        mean /= static_cast<double>(mu_values.size());
        Accumulator mu_acc;
        for (double v : mu_values) mu_acc.add(std::abs(v - mean));
        report.checks.push_back(make_record("mu_constancy", mu_acc, base, "mean=" + std::to_string(mean)));
        if (spec.expected_mu) {
            Accumulator mu_mean_acc;
            mu_mean_acc.add(std::abs(mean - *spec.expected_mu));
            report.checks.push_back(make_record("mu_expected", mu_mean_acc, base));
        }
        if (spec.expected_S) {
            report.checks.push_back(make_record("geodesic_nu", geodesic_acc, 10.0 * base,
                                                geodesic_skipped > 0
                                                    ? "skipped " + std::to_string(geodesic_skipped) + " near-critical points"
                                                    : ""));
        }
    } catch (const std::exception& e) {
        CheckRecord r;
        r.check_id = "pointwise_identities";
        r.pass = false;
        r.note = e.what();
        report.checks.push_back(r);
    }

    // Stage 2: Killing-field suite.
    if (spec.eta) {
        try {
            auto k = check_killing_suite(spec, plan);
            auto add = [&](const std::string& id, double value, std::string note = {}) {
                Accumulator acc;
                acc.add(value);
                acc.n = k.num_points;
                report.checks.push_back(make_record(id, acc, 10.0 * base, std::move(note)));
            };
            add("killing_symmetry", k.symmetry);
            add("killing_orthogonality", k.orthogonality);
            add("killing_acceleration", k.acceleration);
            add("killing_norm_constancy", k.norm_constancy, "constant=" + std::to_string(k.norm_constant));
            add("killing_ric_eigen", k.ric_eigen);
            add("killing_rank", k.rank_proxy);
            add("killing_commutator", k.commutator);
        } catch (const std::exception& e) {
            CheckRecord r;
            r.check_id = "killing_suite";
            r.pass = false;
            r.note = e.what();
            report.checks.push_back(r);
        }
    }

    // Stage 3: Ricci eigenstructure on product witnesses.
    if (spec.is_product && spec.expected_S && *spec.expected_S != 0.0 && spec.patch.dim >= 3) {
        try {
            auto rs = check_ricci_structure(spec, plan, config.jet_order);
            Accumulator a1, a2, a3;
            a1.add(rs.eigenvalue_err);
            a2.add(rs.ric_squared_err);
            a3.add(rs.nabla_nu_err);
            a1.n = a2.n = a3.n = rs.num_points;
            report.checks.push_back(make_record("ricci_eigenvalues", a1, base));
            report.checks.push_back(make_record("ricci_squared_eta", a2, 10.0 * base));
            report.checks.push_back(make_record("ricci_nabla_nu", a3, 10.0 * base));
        } catch (const std::exception& e) {
            CheckRecord r;
            r.check_id = "ricci_structure";
            r.pass = false;
            r.note = e.what();
            report.checks.push_back(r);
        }
    }

    // Stage 4: vanishing-set geometry.
    try {
        auto ls = check_level_set(spec, std::min(config.samples, 50), config.seed, config.jet_order);
        if (ls.applicable) {
            Accumulator shape_acc, gauss_acc;
            shape_acc.add(ls.max_shape_operator);
            gauss_acc.add(ls.max_gauss_scalar);
            shape_acc.n = gauss_acc.n = ls.num_points;
            report.checks.push_back(make_record("level_set_shape", shape_acc, 100.0 * base));
            report.checks.push_back(make_record("level_set_gauss", gauss_acc, 100.0 * base));
        } else {
            CheckRecord r;
            r.check_id = "level_set_shape";
            r.note = "not applicable (no zeros of f reachable)";
            report.checks.push_back(r);
        }
    } catch (const std::exception& e) {
        CheckRecord r;
        r.check_id = "level_set_shape";
        r.pass = false;
        r.note = e.what();
        report.checks.push_back(r);
    }

    std::sort(report.checks.begin(), report.checks.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.check_id < b.check_id; });
    report.pass = std::all_of(report.checks.begin(), report.checks.end(), [](const CheckRecord& r) { return r.pass; });
    report.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

VerificationReport run_suite(const std::string& case_name, const ToleranceConfig& config) {
    return run_suite(make_case(case_name), config);
}

}  // namespace hessric
