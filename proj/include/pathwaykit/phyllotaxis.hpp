#pragma once

// Golden-angle phyllotaxis on an Archimedes spiral r = k theta.

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace pathwaykit::phyllo {

/// theta with theta / (2 pi - theta) = (sqrt(5) - 1) / 2, in radians.
double golden_angle();

struct SpiralConfig {
    double k = 1.0;                 // radius per radian
    std::size_t n_points = 0;
    double divergence = golden_angle();
    double marker_radius = 1.0;

    void validate() const;
};

struct PolarPoint {
    double r;
    double phi;  // cumulative angle, not reduced mod 2 pi

    double x() const;
    double y() const;
};

/// Point i = 1..n at phi_i = i * divergence, r_i = k * phi_i.
std::vector<PolarPoint> generate_points(const SpiralConfig& config);

/// Half-open index range [begin, end) into a point list.
struct IndexWindow {
    std::size_t begin;
    std::size_t end;
};

/// Visible spiral counts around the window. For each point, the nearest
/// smaller-radius neighbour on each angular side is found; the most frequent
/// index difference on each side is returned as (left, right). A neighbour
/// lying on the point's own ray (angular offset within 1e-9) counts on both
/// sides.
std::pair<std::size_t, std::size_t> parastichy_pair(const std::vector<PolarPoint>& points,
                                                    IndexWindow window);

/// Ratio of the largest to the smallest nearest-neighbour distance among the
/// points of the window (neighbours drawn from the whole list).
double nearest_neighbor_spread(const std::vector<PolarPoint>& points, IndexWindow window);

/// Ratio of the largest to the smallest gap between the sorted angles (mod
/// 2 pi) of the window's points; infinite when two angles coincide.
double angular_gap_ratio(const std::vector<PolarPoint>& points, IndexWindow window);

/// Standalone SVG 1.1 document: one circle per point, square view box of
/// half-width max r + marker_radius about the origin.
std::string render_svg(const std::vector<PolarPoint>& points, const SpiralConfig& config);

/// Writes render_svg to `path`; returns the byte count.
std::size_t emit_svg(const std::vector<PolarPoint>& points, const SpiralConfig& config,
                     const std::filesystem::path& path);

}  // namespace pathwaykit::phyllo
