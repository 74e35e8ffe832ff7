#include "hessric/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace hessric {

namespace {
constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13};
}

Domain Domain::box(std::vector<double> lo, std::vector<double> hi) {
    Domain d;
    d.lo = std::move(lo);
    d.hi = std::move(hi);
    return d;
}

Domain Domain::disk(double radius, int axis_count) {
    Domain d;
    d.lo.assign(static_cast<std::size_t>(axis_count), -radius);
    d.hi.assign(static_cast<std::size_t>(axis_count), radius);
    d.ball = Ball{0, axis_count, radius};
    return d;
}

bool Domain::contains(std::span<const double> p) const {
    if (static_cast<int>(p.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
        double ext = hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
        double pad = margin * ext;
        if (p[static_cast<std::size_t>(i)] < lo[static_cast<std::size_t>(i)] + pad ||
            p[static_cast<std::size_t>(i)] > hi[static_cast<std::size_t>(i)] - pad) {
            return false;
        }
    }
    if (ball) {
        double r2 = 0.0;
        for (int i = 0; i < ball->axis_count; ++i) {
            double x = p[static_cast<std::size_t>(ball->first_axis + i)];
            r2 += x * x;
        }
        double r_eff = ball->radius * (1.0 - 2.0 * margin);
        if (r2 > r_eff * r_eff) return false;
    }
    return true;
}

double halton(std::uint64_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
        index /= static_cast<std::uint64_t>(base);
    }
    return r;
}

std::vector<std::vector<double>> sample_points(const Domain& domain, int count, std::uint64_t seed) {
    const int n = domain.dim();
    if (n > static_cast<int>(std::size(kPrimes))) throw std::invalid_argument("domain dimension too large for sampler");
    std::vector<std::vector<double>> points;
    points.reserve(static_cast<std::size_t>(count));
    std::uint64_t index = 1 + (seed % 1000003ull) * 7919ull;
    std::uint64_t attempts = 0;
    const std::uint64_t max_attempts = 20000ull * static_cast<std::uint64_t>(count) + 100000ull;
    while (static_cast<int>(points.size()) < count) {
        if (++attempts > max_attempts) throw std::runtime_error("sampler failed to fill the plan (domain too thin?)");
        std::vector<double> p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            double ext = domain.hi[static_cast<std::size_t>(i)] - domain.lo[static_cast<std::size_t>(i)];
            double pad = domain.margin * ext;
            double u = halton(index, kPrimes[i]);
            p[static_cast<std::size_t>(i)] = domain.lo[static_cast<std::size_t>(i)] + pad + u * (ext - 2.0 * pad);
        }
        ++index;
        if (domain.contains(p)) points.push_back(std::move(p));
    }
    return points;
}

}  // namespace hessric
