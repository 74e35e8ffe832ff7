#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hessric/catalog.hpp"

namespace hessric {

enum class FlowTermination { RangeExhausted, NearCritical, LeftDomain };

struct FlowSample {
    double t;
    std::vector<double> x;
    double y;            // f(gamma(t))
    double grad_norm;    // |grad f|(gamma(t)) = y'(t)
};

struct FlowTrace {
    std::string case_name;
    std::vector<double> start;
    double step = 0.0;
    std::vector<FlowSample> samples;
    FlowTermination termination = FlowTermination::RangeExhausted;
};

enum class ProfileFamily { Cosine, Linear, Sinh, Exp, Cosh };

std::string family_name(ProfileFamily family);

/// Closed-form profile dictated by (sign S, sign mu); the fit estimates only
/// the phase.  For the Exp family the profile is y = e^{t + phase}, so the
/// positive coefficient is e^{phase}.
struct ProfileFit {
    ProfileFamily family;
    double phase = 0.0;
    double rms_error = 0.0;
};

struct RangeSpec {
    std::optional<double> lo, hi;
    bool lo_closed = false, hi_closed = false;
};

// Classical RK4 on gamma' = grad f / |grad f|, fixed step, recording every
// step.  Stops early near the critical set (|grad f| < 1e-4) or when the
// margin-shrunk domain is left.
FlowTrace integrate_flow(const SolutionSpec& spec, std::span<const double> start, double t_span, double h);

ProfileFit fit_profile(const FlowTrace& trace, double S, double mu);

double profile_value(ProfileFamily family, double phase, double t);

RangeSpec expected_range(ProfileFamily family);

bool range_check(const FlowTrace& trace, const RangeSpec& range);

}  // namespace hessric
