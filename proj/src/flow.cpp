#include "hessric/flow.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace hessric {

namespace {

constexpr double kNearCriticalCutoff = 1e-4;

struct RhsEval {
    std::vector<double> nu;
    double f = 0.0;
    double grad_norm = 0.0;
};

// Normalized gradient at a point: solve g w = df, |grad f|^2 = df . w.
std::optional<RhsEval> eval_nu(const SolutionSpec& spec, std::span<const double> p) {
    if (!spec.patch.domain.contains(p)) return std::nullopt;
    const int n = spec.patch.dim;
    auto xs = coordinate_jets(p, 1);
    JetMat gj = metric_jets(spec.patch, xs);
    MatD g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) g.at(i, j) = gj.at(i, j).value();
    }
    Jet fj = spec.f.eval_fn(xs);
    std::vector<double> df(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) df[static_cast<std::size_t>(i)] = fj.partial(i);

    MatD l = cholesky(g);
    std::vector<double> w(df);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < i; ++k) w[static_cast<std::size_t>(i)] -= l.at(i, k) * w[static_cast<std::size_t>(k)];
        w[static_cast<std::size_t>(i)] /= l.at(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int k = i + 1; k < n; ++k) w[static_cast<std::size_t>(i)] -= l.at(k, i) * w[static_cast<std::size_t>(k)];
        w[static_cast<std::size_t>(i)] /= l.at(i, i);
    }

    RhsEval out;
    out.f = fj.value();
    out.grad_norm = std::sqrt(std::max(dot(df, w), 0.0));
    out.nu = std::move(w);
    if (out.grad_norm > 0.0) {
        for (auto& c : out.nu) c /= out.grad_norm;
    }
    return out;
}

}  // namespace

std::string family_name(ProfileFamily family) {
    switch (family) {
        case ProfileFamily::Cosine: return "cosine";
        case ProfileFamily::Linear: return "linear";
        case ProfileFamily::Sinh: return "sinh";
        case ProfileFamily::Exp: return "exp";
        default: return "cosh";
    }
}

FlowTrace integrate_flow(const SolutionSpec& spec, std::span<const double> start, double t_span, double h) {
    if (!spec.expected_S) throw std::invalid_argument("flow integration needs constant scalar curvature");
    if (t_span <= 0.0 || h <= 0.0) throw std::invalid_argument("flow span and step must be positive");
    if (!spec.patch.domain.contains(start)) throw std::invalid_argument("flow start outside the chart interior");
    {
        auto probe = eval_nu(spec, start);
        if (!probe || probe->grad_norm < kNearCriticalCutoff) {
            throw std::invalid_argument("flow start too close to a critical point of f");
        }
    }

    FlowTrace trace;
    trace.case_name = spec.name;
    trace.start.assign(start.begin(), start.end());
    trace.step = h;

    const int n = spec.patch.dim;
    const long long steps = std::llround(t_span / h);
    std::vector<double> p(start.begin(), start.end());

    for (long long i = 0;; ++i) {
        auto here = eval_nu(spec, p);
        if (!here) {
            trace.termination = FlowTermination::LeftDomain;
            break;
        }
        FlowSample sample{static_cast<double>(i) * h, p, here->f, here->grad_norm};
        if (here->grad_norm < kNearCriticalCutoff) {
            trace.samples.push_back(std::move(sample));
            trace.termination = FlowTermination::NearCritical;
            break;
        }
        trace.samples.push_back(std::move(sample));
        if (i == steps) {
            trace.termination = FlowTermination::RangeExhausted;
            break;
        }

        auto stage = [&](double scale, const std::vector<double>& k) {
            std::vector<double> q(p);
            for (int d = 0; d < n; ++d) q[static_cast<std::size_t>(d)] += scale * h * k[static_cast<std::size_t>(d)];
            return q;
        };
        const auto& k1 = here->nu;
        auto e2 = eval_nu(spec, stage(0.5, k1));
        if (!e2) { trace.termination = FlowTermination::LeftDomain; break; }
        auto e3 = eval_nu(spec, stage(0.5, e2->nu));
        if (!e3) { trace.termination = FlowTermination::LeftDomain; break; }
        auto e4 = eval_nu(spec, stage(1.0, e3->nu));
        if (!e4) { trace.termination = FlowTermination::LeftDomain; break; }
        for (int d = 0; d < n; ++d) {
            p[static_cast<std::size_t>(d)] += h / 6.0 *
                (k1[static_cast<std::size_t>(d)] + 2.0 * e2->nu[static_cast<std::size_t>(d)] +
                 2.0 * e3->nu[static_cast<std::size_t>(d)] + e4->nu[static_cast<std::size_t>(d)]);
        }
        if (!spec.patch.domain.contains(p)) {
            trace.termination = FlowTermination::LeftDomain;
            break;
        }
    }
    return trace;
}

ProfileFit fit_profile(const FlowTrace& trace, double S, double mu) {
    if (trace.samples.size() < 50) throw std::invalid_argument("profile fit needs at least 50 samples");

    constexpr double kZeroTol = 1e-9;
    ProfileFamily family;
    if (S > kZeroTol) {
        if (mu <= kZeroTol) throw std::invalid_argument("no admissible profile: S > 0 requires mu > 0");
        family = ProfileFamily::Cosine;
    } else if (std::abs(S) <= kZeroTol) {
        if (mu <= kZeroTol) throw std::invalid_argument("no admissible profile: S = 0 requires mu > 0");
        family = ProfileFamily::Linear;
    } else {
        family = mu > kZeroTol ? ProfileFamily::Sinh : (mu < -kZeroTol ? ProfileFamily::Cosh : ProfileFamily::Exp);
    }

    const double t0 = trace.samples.front().t;
    const double y0 = trace.samples.front().y;
    double phase = 0.0;
    switch (family) {
        case ProfileFamily::Cosine:
            // increasing branch: t0 + phase in [-pi, 0]
            phase = -std::acos(std::clamp(y0, -1.0, 1.0)) - t0;
            break;
        case ProfileFamily::Linear:
            phase = y0 - t0;
            break;
        case ProfileFamily::Sinh:
            phase = std::asinh(y0) - t0;
            break;
        case ProfileFamily::Exp:
            if (y0 <= 0.0) throw std::invalid_argument("exp profile needs positive f along the flow");
            phase = std::log(y0) - t0;
            break;
        case ProfileFamily::Cosh:
            // increasing branch: t0 + phase >= 0
            phase = std::acosh(std::max(y0, 1.0)) - t0;
            break;
    }

    double sq = 0.0;
    for (const auto& s : trace.samples) {
        double d = s.y - profile_value(family, phase, s.t);
        sq += d * d;
    }
    ProfileFit fit;
    fit.family = family;
    fit.phase = phase;
    fit.rms_error = std::sqrt(sq / static_cast<double>(trace.samples.size()));
    return fit;
}

double profile_value(ProfileFamily family, double phase, double t) {
    switch (family) {
        case ProfileFamily::Cosine: return std::cos(t + phase);
        case ProfileFamily::Linear: return t + phase;
        case ProfileFamily::Sinh: return std::sinh(t + phase);
        case ProfileFamily::Exp: return std::exp(t + phase);
        default: return std::cosh(t + phase);
    }
}

RangeSpec expected_range(ProfileFamily family) {
    switch (family) {
        case ProfileFamily::Cosine: return {-1.0, 1.0, true, true};
        case ProfileFamily::Exp: return {0.0, std::nullopt, false, false};
        case ProfileFamily::Cosh: return {1.0, std::nullopt, true, false};
        default: return {std::nullopt, std::nullopt, false, false};
    }
}

bool range_check(const FlowTrace& trace, const RangeSpec& range) {
    if (trace.samples.empty()) return false;
    constexpr double kGrace = 1e-9;
    double prev = trace.samples.front().y;
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        double y = trace.samples[i].y;
        if (range.lo) {
            if (range.lo_closed ? y < *range.lo - kGrace : y <= *range.lo) return false;
        }
        if (range.hi) {
            if (range.hi_closed ? y > *range.hi + kGrace : y >= *range.hi) return false;
        }
        if (i > 0 && y <= prev) return false;   // y' = |grad f| > 0 along the flow
        if (i > 0) prev = y;
    }
    return true;
}

}  // namespace hessric
