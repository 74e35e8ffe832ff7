#include "hessric/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace hessric {

namespace {

constexpr double kPi = std::numbers::pi;

Jet one_like(const Jet& shape) { return Jet::constant_like(shape, 1.0); }
Jet zero_like(const Jet& shape) { return Jet::constant_like(shape, 0.0); }

JetMat flat_metric(std::span<const Jet> x) {
    const int n = static_cast<int>(x.size());
    JetMat g(n, zero_like(x[0]));
    for (int i = 0; i < n; ++i) g.at(i, i) = one_like(x[0]);
    return g;
}

// -------------------------------------------------------------------------
// Radial Poisson solve on hyperbolic 3-space: u'' + 2 coth(r) u' = 2,
// integrated with fixed-step RK4 and wrapped in quintic Hermite dense
// output so the potential is usable as a jet-evaluable scalar field.
// -------------------------------------------------------------------------

class RadialPoisson {
public:
    RadialPoisson(double c, double r0, double r_lo, double r_hi, double step) : step_(step), r_first_(r_lo) {
        const int n_lo = static_cast<int>(std::ceil((r0 - r_lo) / step));
        const int n_hi = static_cast<int>(std::ceil((r_hi - r0) / step));
        r_first_ = r0 - n_lo * step;

        std::vector<std::array<double, 2>> states(static_cast<std::size_t>(n_lo + n_hi + 1));
        states[static_cast<std::size_t>(n_lo)] = {0.0, c};
        for (int i = n_lo; i > 0; --i) {
            states[static_cast<std::size_t>(i - 1)] = rk4_step(r_first_ + i * step, states[static_cast<std::size_t>(i)], -step);
        }
        for (int i = n_lo; i < n_lo + n_hi; ++i) {
            states[static_cast<std::size_t>(i + 1)] = rk4_step(r_first_ + i * step, states[static_cast<std::size_t>(i)], step);
        }

        intervals_.resize(states.size() - 1);
        for (std::size_t k = 0; k + 1 < states.size(); ++k) {
            double ra = r_first_ + static_cast<double>(k) * step;
            build_interval(k, ra, states[k], states[k + 1]);
        }

        double worst = 0.0;
        for (std::size_t k = 0; k < intervals_.size(); ++k) {
            double rm = r_first_ + (static_cast<double>(k) + 0.5) * step;
            worst = std::max(worst, std::abs(ode_residual(rm)));
        }
        if (worst > 1e-10) throw std::runtime_error("radial ODE solver tolerance not met");
    }

    double derivative(double r, int m) const {
        const auto& [s, c] = locate(r);
        switch (m) {
            case 0: return c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * (c[4] + s * c[5]))));
            case 1: return c[1] + s * (2 * c[2] + s * (3 * c[3] + s * (4 * c[4] + s * 5 * c[5])));
            case 2: return 2 * c[2] + s * (6 * c[3] + s * (12 * c[4] + s * 20 * c[5]));
            case 3: return 6 * c[3] + s * (24 * c[4] + s * 60 * c[5]);
            default: return 24 * c[4] + s * 120 * c[5];
        }
    }

    double ode_residual(double r) const {
        return derivative(r, 2) + 2.0 / std::tanh(r) * derivative(r, 1) - 2.0;
    }

    Jet eval_jet(const Jet& r) const {
        std::array<double, kMaxJetOrder + 1> derivs{};
        for (int m = 0; m <= r.order(); ++m) derivs[static_cast<std::size_t>(m)] = derivative(r.value(), m);
        return compose_univariate(r, std::span<const double>(derivs.data(), static_cast<std::size_t>(r.order() + 1)));
    }

private:
    static std::array<double, 2> ode_rhs(double r, const std::array<double, 2>& y) {
        return {y[1], 2.0 - 2.0 / std::tanh(r) * y[1]};
    }

    static std::array<double, 2> rk4_step(double r, const std::array<double, 2>& y, double h) {
        auto k1 = ode_rhs(r, y);
        auto k2 = ode_rhs(r + 0.5 * h, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
        auto k3 = ode_rhs(r + 0.5 * h, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
        auto k4 = ode_rhs(r + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
        return {y[0] + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
                y[1] + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
    }

    void build_interval(std::size_t k, double ra, const std::array<double, 2>& ya, const std::array<double, 2>& yb) {
        const double h = step_;
        double aa = 2.0 - 2.0 / std::tanh(ra) * ya[1];
        double ab = 2.0 - 2.0 / std::tanh(ra + h) * yb[1];
        auto& c = intervals_[k];
        c[0] = ya[0];
        c[1] = ya[1];
        c[2] = 0.5 * aa;
        double e0 = (yb[0] - (c[0] + h * (c[1] + h * c[2]))) / (h * h * h);
        double e1 = (yb[1] - (c[1] + 2 * h * c[2])) / (h * h);
        double e2 = (ab - 2 * c[2]) / h;
        c[3] = 0.5 * (20 * e0 - 8 * e1 + e2);
        c[4] = 0.5 * (-30 * e0 + 14 * e1 - 2 * e2) / h;
        c[5] = 0.5 * (12 * e0 - 6 * e1 + e2) / (h * h);
    }

    std::pair<double, const std::array<double, 6>&> locate(double r) const {
        double raw = (r - r_first_) / step_;
        auto idx = static_cast<std::size_t>(std::clamp(raw, 0.0, static_cast<double>(intervals_.size()) - 1.0));
        return {r - (r_first_ + static_cast<double>(idx) * step_), intervals_[idx]};
    }

    double step_;
    double r_first_;
    std::vector<std::array<double, 6>> intervals_;
};

}  // namespace

bool SolutionSpec::has_tag(const std::string& t) const {
    return std::find(tags.begin(), tags.end(), t) != tags.end();
}

SolutionSpec sphere2() {
    SolutionSpec s;
    s.name = "sphere2";
    s.patch.dim = 2;
    s.patch.label = "unit sphere, polar chart (theta, phi)";
    s.patch.domain = Domain::box({0.0, 0.0}, {kPi, 2.0 * kPi});
    s.patch.metric_fn = [](std::span<const Jet> x) {
        JetMat g(2, zero_like(x[0]));
        Jet st = sin(x[0]);
        g.at(0, 0) = one_like(x[0]);
        g.at(1, 1) = st * st;
        return g;
    };
    s.f = {[](std::span<const Jet> x) { return cos(x[0]); }, "cos(theta)"};
    s.eta = VectorFieldSpec{[](std::span<const Jet> x) {
                                std::vector<Jet> v;
                                v.push_back(zero_like(x[0]));
                                v.push_back(one_like(x[0]));
                                return v;
                            },
                            "d/dphi (rotation)"};
    s.expected_S = 2.0;
    s.expected_mu = 2.0;
    s.epsilon = 1;
    s.critical_values = {-1.0, 1.0};
    s.flow_start = std::vector<double>{kPi / 2.0, 1.0};
    s.tags = {"surface", "constant-S"};
    return s;
}

SolutionSpec euclidean(int n, std::span<const double> a, double b) {
    if (n != 2 && n != 3) throw std::invalid_argument("euclidean case supports n in {2, 3}");
    if (static_cast<int>(a.size()) != n) throw std::invalid_argument("direction vector length must equal n");
    double norm2 = dot(a, a);
    if (norm2 == 0.0) throw std::invalid_argument("direction vector a must be nonzero");
    double norm = std::sqrt(norm2);
    std::vector<double> unit(a.begin(), a.end());
    for (auto& c : unit) c /= norm;

    SolutionSpec s;
    s.name = n == 2 ? "euclidean2" : "euclidean3";
    s.patch.dim = n;
    s.patch.label = "flat box";
    s.patch.domain = Domain::box(std::vector<double>(static_cast<std::size_t>(n), -3.0),
                                 std::vector<double>(static_cast<std::size_t>(n), 3.0));
    s.patch.metric_fn = flat_metric;
    double b_scaled = b / norm;
    s.f = {[unit, b_scaled](std::span<const Jet> x) {
               Jet acc = Jet::constant_like(x[0], b_scaled);
               for (std::size_t i = 0; i < x.size(); ++i) acc += unit[i] * x[i];
               return acc;
           },
           "affine, |grad| = 1"};
    if (n == 3) {
        // unit parallel field orthogonal to the gradient direction
        std::size_t j = 0;
        for (std::size_t i = 1; i < unit.size(); ++i) {
            if (std::abs(unit[i]) < std::abs(unit[j])) j = i;
        }
        std::vector<double> e(static_cast<std::size_t>(n), 0.0);
        e[j] = 1.0;
        double proj = dot(e, unit);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] -= proj * unit[i];
        double en = std::sqrt(dot(e, e));
        for (auto& c : e) c /= en;
        s.eta = VectorFieldSpec{[e](std::span<const Jet> x) {
                                    std::vector<Jet> v;
                                    for (std::size_t i = 0; i < x.size(); ++i) v.push_back(Jet::constant_like(x[0], e[i]));
                                    return v;
                                },
                                "parallel unit field, orthogonal to grad f"};
    }
    s.expected_S = 0.0;
    s.expected_mu = 2.0;
    s.epsilon = 0;
    s.flow_start = std::vector<double>(static_cast<std::size_t>(n), 0.0);
    s.tags = {"flat", "constant-S"};
    return s;
}

SolutionSpec cylinder(double b) {
    SolutionSpec s;
    s.name = "cylinder";
    s.patch.dim = 2;
    s.patch.label = "flat cylinder chart (s, t)";
    s.patch.domain = Domain::box({0.0, -3.0}, {2.0 * kPi, 3.0});
    s.patch.metric_fn = flat_metric;
    s.f = {[b](std::span<const Jet> x) { return x[1] + b; }, "t + b"};
    s.expected_S = 0.0;
    s.expected_mu = 2.0;
    s.epsilon = 0;
    s.flow_start = std::vector<double>{kPi, 0.0};
    s.tags = {"flat", "constant-S"};
    return s;
}

SolutionSpec hyperbolic2(HyperbolicKind kind) {
    SolutionSpec s;
    s.expected_S = -2.0;
    s.epsilon = -1;
    s.tags = {"surface", "constant-S"};

    if (kind == HyperbolicKind::Exp) {
        s.name = "hyp2-exp";
        s.patch.dim = 2;
        s.patch.label = "upper half-plane";
        s.patch.domain = Domain::box({-2.0, 0.05}, {2.0, 3.0});
        s.patch.metric_fn = [](std::span<const Jet> x) {
            JetMat g(2, zero_like(x[0]));
            Jet w = 1.0 / (x[1] * x[1]);
            g.at(0, 0) = w;
            g.at(1, 1) = w;
            return g;
        };
        s.f = {[](std::span<const Jet> x) { return 1.0 / x[1]; }, "1/y"};
        s.eta = VectorFieldSpec{[](std::span<const Jet> x) {
                                    std::vector<Jet> v;
                                    v.push_back(one_like(x[0]));
                                    v.push_back(zero_like(x[0]));
                                    return v;
                                },
                                "horizontal translation"};
        s.expected_mu = 0.0;
        s.flow_start = std::vector<double>{0.0, 1.0};
        return s;
    }

    s.patch.dim = 2;
    s.patch.label = "Poincare disk";
    s.patch.domain = Domain::disk(1.0);
    s.patch.metric_fn = [](std::span<const Jet> x) {
        JetMat g(2, zero_like(x[0]));
        Jet q = 1.0 - x[0] * x[0] - x[1] * x[1];
        Jet w = 4.0 / (q * q);
        g.at(0, 0) = w;
        g.at(1, 1) = w;
        return g;
    };
    if (kind == HyperbolicKind::Cosh) {
        s.name = "hyp2-cosh";
        s.f = {[](std::span<const Jet> x) {
                   Jet q = 1.0 - x[0] * x[0] - x[1] * x[1];
                   return 2.0 / q - 1.0;
               },
               "(1+r^2)/(1-r^2)"};
        s.eta = VectorFieldSpec{[](std::span<const Jet> x) {
                                    std::vector<Jet> v;
                                    v.push_back(-x[1]);
                                    v.push_back(x[0] + 0.0);
                                    return v;
                                },
                                "rotation about the origin"};
        s.expected_mu = -2.0;
        s.critical_values = {1.0};
        s.flow_start = std::vector<double>{0.5, 0.0};
    } else {
        s.name = "hyp2-sinh";
        s.f = {[](std::span<const Jet> x) {
                   Jet q = 1.0 - x[0] * x[0] - x[1] * x[1];
                   return 2.0 * x[0] / q;
               },
               "2 x1/(1-r^2)"};
        s.eta = VectorFieldSpec{[](std::span<const Jet> x) {
                                    std::vector<Jet> v;
                                    v.push_back(-x[0] * x[1]);
                                    v.push_back((1.0 + x[0] * x[0] - x[1] * x[1]) * 0.5);
                                    return v;
                                },
                                "translation along the x2-axis geodesic"};
        s.expected_mu = 2.0;
        s.flow_start = std::vector<double>{0.0, 0.0};
    }
    return s;
}

SolutionSpec product_with_flat(const SolutionSpec& base, int flat_dim) {
    if (base.patch.dim != 2) throw std::invalid_argument("product base must be 2-dimensional");
    if (flat_dim < 1 || flat_dim > 2) throw std::invalid_argument("flat factor dimension must be 1 or 2");
    const int n = 2 + flat_dim;

    SolutionSpec s;
    s.name = base.name + "xflat" + std::to_string(flat_dim);
    s.patch.dim = n;
    s.patch.label = base.patch.label + " x flat";
    s.patch.domain.lo = base.patch.domain.lo;
    s.patch.domain.hi = base.patch.domain.hi;
    for (int i = 0; i < flat_dim; ++i) {
        s.patch.domain.lo.push_back(-1.0);
        s.patch.domain.hi.push_back(1.0);
    }
    s.patch.domain.ball = base.patch.domain.ball;
    MetricFn base_metric = base.patch.metric_fn;
    s.patch.metric_fn = [base_metric, n](std::span<const Jet> x) {
        JetMat g(n, zero_like(x[0]));
        JetMat gb = base_metric(x.first(2));
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) g.at(i, j) = gb.at(i, j);
        }
        for (int i = 2; i < n; ++i) g.at(i, i) = one_like(x[0]);
        return g;
    };
    auto base_f = base.f.eval_fn;
    s.f = {[base_f](std::span<const Jet> x) { return base_f(x.first(2)); }, base.f.label + " on the base factor"};

    if (base.epsilon && *base.epsilon != 0 && base.eta) {
        auto base_eta = base.eta->eval_fn;
        s.eta = VectorFieldSpec{[base_eta, n](std::span<const Jet> x) {
                                    auto v = base_eta(x.first(2));
                                    for (int i = 2; i < n; ++i) v.push_back(zero_like(x[0]));
                                    return v;
                                },
                                base.eta->label + ", extended by zero"};
    } else if (base.epsilon && *base.epsilon == 0) {
        s.eta = VectorFieldSpec{[n](std::span<const Jet> x) {
                                    std::vector<Jet> v;
                                    for (int i = 0; i < n; ++i) v.push_back(Jet::constant_like(x[0], i == 2 ? 1.0 : 0.0));
                                    return v;
                                },
                                "unit parallel field on the flat factor"};
    }

    s.expected_S = base.expected_S;
    s.expected_mu = base.expected_mu;
    s.epsilon = base.epsilon;
    s.critical_values = base.critical_values;
    s.ode_limited = base.ode_limited;
    s.is_product = true;
    if (base.flow_start) {
        s.flow_start = *base.flow_start;
        for (int i = 0; i < flat_dim; ++i) s.flow_start->push_back(0.0);
    }
    s.tags = base.tags;
    s.tags.push_back("product");
    return s;
}

SolutionSpec conformal_dim3(const ScalarField& u, bool check_harmonic) {
    SolutionSpec s;
    s.name = "conformal3";
    s.patch.dim = 3;
    s.patch.label = "conformally flat box, g = e^{-2u} delta";
    s.patch.domain = Domain::box({-0.8, -0.8, -0.8}, {0.8, 0.8, 0.8});

    if (check_harmonic) {
        auto plan = sample_points(s.patch.domain, 50, 1234);
        for (const auto& p : plan) {
            Jet uj = u.eval_fn(coordinate_jets(p, 2));
            double lap = 0.0;
            for (int i = 0; i < 3; ++i) lap += uj.partial2(i, i);
            if (std::abs(lap) > 1e-10) throw std::invalid_argument("conformal potential is not harmonic on the box");
        }
    }

    auto u_fn = u.eval_fn;
    s.patch.metric_fn = [u_fn](std::span<const Jet> x) {
        JetMat g(3, zero_like(x[0]));
        Jet w = exp(-2.0 * u_fn(x));
        for (int i = 0; i < 3; ++i) g.at(i, i) = w;
        return g;
    };
    s.f = {[u_fn](std::span<const Jet> x) { return exp(-u_fn(x)); }, "e^{-u}, u = " + u.label};
    s.expected_mu = 0.0;
    s.tags = {"conformal"};
    return s;
}

SolutionSpec hyperbolic3_radial(double c, std::pair<double, double> r_range) {
    auto [r_lo, r_hi] = r_range;
    if (!(r_lo > 0.1 && r_hi > r_lo && r_hi <= 10.0)) {
        throw std::invalid_argument("radial range must satisfy 0.1 < r_lo < r_hi <= 10");
    }
    double r0 = 0.5 * (r_lo + r_hi);
    auto sol = std::make_shared<RadialPoisson>(c, r0, std::max(r_lo - 0.02, 0.05), r_hi + 0.02, 1e-3);

    SolutionSpec s;
    s.name = "hyp3-radial";
    s.patch.dim = 3;
    s.patch.label = "conformally rescaled hyperbolic 3-space, polar chart (r, theta, phi)";
    s.patch.domain = Domain::box({r_lo, 0.0, 0.0}, {r_hi, kPi, 2.0 * kPi});
    s.patch.metric_fn = [sol](std::span<const Jet> x) {
        JetMat g(3, zero_like(x[0]));
        Jet w = exp(-2.0 * sol->eval_jet(x[0]));
        Jet sh = sinh(x[0]);
        Jet st = sin(x[1]);
        g.at(0, 0) = w;
        g.at(1, 1) = w * sh * sh;
        g.at(2, 2) = w * sh * sh * st * st;
        return g;
    };
    s.f = {[sol](std::span<const Jet> x) { return exp(-sol->eval_jet(x[0])); }, "e^{-u(r)}"};
    s.expected_mu = 2.0;
    s.ode_limited = true;
    s.tags = {"conformal", "ode"};
    return s;
}

std::vector<std::string> case_names() {
    return {"sphere2",        "euclidean2",         "euclidean3",      "cylinder",
            "hyp2-cosh",      "hyp2-sinh",          "hyp2-exp",        "sphere2xflat2",
            "hyp2-coshxflat2", "euclidean2xflat1",  "conformal3-linear", "conformal3-quadratic",
            "hyp3-radial"};
}

SolutionSpec make_case(const std::string& name) {
    if (name == "sphere2") return sphere2();
    if (name == "euclidean2") {
        const double a[] = {1.0, 0.0};
        return euclidean(2, a, 0.0);
    }
    if (name == "euclidean3") {
        const double a[] = {1.0, 0.0, 0.0};
        return euclidean(3, a, 0.0);
    }
    if (name == "cylinder") return cylinder(0.0);
    if (name == "hyp2-cosh") return hyperbolic2(HyperbolicKind::Cosh);
    if (name == "hyp2-sinh") return hyperbolic2(HyperbolicKind::Sinh);
    if (name == "hyp2-exp") return hyperbolic2(HyperbolicKind::Exp);
    if (name == "sphere2xflat2") return product_with_flat(sphere2(), 2);
    if (name == "hyp2-coshxflat2") return product_with_flat(hyperbolic2(HyperbolicKind::Cosh), 2);
    if (name == "euclidean2xflat1") {
        const double a[] = {1.0, 0.0};
        return product_with_flat(euclidean(2, a, 0.0), 1);
    }
    if (name == "conformal3-linear") {
        ScalarField u{[](std::span<const Jet> x) { return x[0] + 0.0; }, "x1"};
        SolutionSpec s = conformal_dim3(u, true);
        s.name = "conformal3-linear";
        return s;
    }
    if (name == "conformal3-quadratic") {
        ScalarField u{[](std::span<const Jet> x) { return x[0] * x[0] - x[1] * x[1]; }, "x1^2 - x2^2"};
        SolutionSpec s = conformal_dim3(u, true);
        s.name = "conformal3-quadratic";
        return s;
    }
    if (name == "hyp3-radial") return hyperbolic3_radial(0.3, {0.5, 2.0});
    if (name == "sphere2-negcontrol") {
        SolutionSpec s = sphere2();
        s.name = "sphere2-negcontrol";
        s.f = {[](std::span<const Jet> x) { return cos(x[0]) + 1e-3 * cos(2.0 * x[0]); },
               "cos(theta) + 1e-3 cos(2 theta)"};
        s.eta.reset();
        s.tags.push_back("negative-control");
        return s;
    }
    if (name == "sphere2-negcontrol-eta") {
        SolutionSpec s = sphere2();
        s.name = "sphere2-negcontrol-eta";
        s.eta = VectorFieldSpec{[](std::span<const Jet> x) {
                                    std::vector<Jet> v;
                                    v.push_back(zero_like(x[0]));
                                    v.push_back(Jet::constant_like(x[0], 2.0));
                                    return v;
                                },
                                "mis-scaled rotation field"};
        s.tags.push_back("negative-control");
        return s;
    }
    throw std::invalid_argument("unknown case: " + name);
}

}  // namespace hessric
