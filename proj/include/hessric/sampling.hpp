#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hessric {

/// Admissible chart coordinates: a bounding box, optionally intersected with
/// a centered ball over a leading block of axes (Poincare-disk charts and
/// their products).  All interior queries respect the boundary margin: valid
/// points stay at least `margin` times the per-axis extent away from each
/// box wall, and `2 * margin` times the radius away from the ball boundary.
struct Domain {
    struct Ball {
        int first_axis = 0;
        int axis_count = 0;
        double radius = 0.0;
    };

    std::vector<double> lo, hi;
    std::optional<Ball> ball;
    double margin = 0.05;

    static Domain box(std::vector<double> lo, std::vector<double> hi);
    static Domain disk(double radius, int axis_count = 2);

    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(std::span<const double> p) const;
};

/// Deterministic low-discrepancy plan: Halton points mapped into the
/// margin-shrunk domain, with ball rejection.  The seed offsets the start
/// index of the sequence, so identical (domain, count, seed) triples always
/// produce the same points.
std::vector<std::vector<double>> sample_points(const Domain& domain, int count, std::uint64_t seed);

double halton(std::uint64_t index, int base);

}  // namespace hessric
