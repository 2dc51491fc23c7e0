#include "pathwaykit/phyllotaxis.hpp"

#include "pathwaykit/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace pathwaykit::phyllo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSameRay = 1e-9;

// Signed angular offset of b relative to a, in (-pi, pi].
double angular_offset(const PolarPoint& a, const PolarPoint& b) {
    double d = std::fmod(b.phi - a.phi, kTwoPi);
    if (d > std::numbers::pi) d -= kTwoPi;
    if (d <= -std::numbers::pi) d += kTwoPi;
    return d;
}

double distance(const PolarPoint& a, const PolarPoint& b) {
    return std::hypot(a.x() - b.x(), a.y() - b.y());
}

void check_window(const std::vector<PolarPoint>& points, IndexWindow window) {
    if (window.begin >= window.end || window.end > points.size()) {
        std::ostringstream os;
        os << "window [" << window.begin << ", " << window.end << ") outside the "
           << points.size() << " points";
        throw DomainError(os.str());
    }
}

std::size_t mode_of(const std::map<std::size_t, std::size_t>& counts) {
    std::size_t best = 0;
    std::size_t best_count = 0;
    for (const auto& [value, count] : counts) {
        if (count > best_count) {
            best = value;
            best_count = count;
        }
    }
    return best;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

double golden_angle() {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    return kTwoPi * g / (1.0 + g);
}

void SpiralConfig::validate() const {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("spiral: k must be positive");
    if (!(divergence > 0.0 && divergence < kTwoPi)) {
        throw DomainError("spiral: divergence must lie in (0, 2 pi)");
    }
    if (!(marker_radius > 0.0) || !std::isfinite(marker_radius)) {
        throw DomainError("spiral: marker radius must be positive");
    }
}

double PolarPoint::x() const { return r * std::cos(phi); }
double PolarPoint::y() const { return r * std::sin(phi); }

std::vector<PolarPoint> generate_points(const SpiralConfig& config) {
    config.validate();
    std::vector<PolarPoint> points;
    points.reserve(config.n_points);
    for (std::size_t i = 1; i <= config.n_points; ++i) {
        const double phi = static_cast<double>(i) * config.divergence;
        points.push_back({config.k * phi, phi});
    }
    return points;
}

std::pair<std::size_t, std::size_t> parastichy_pair(const std::vector<PolarPoint>& points,
                                                    IndexWindow window) {
    if (points.size() < 50) {
        throw DegenerateError("parastichy_pair: at least 50 points are required");
    }
    check_window(points, window);

    std::map<std::size_t, std::size_t> left_counts;
    std::map<std::size_t, std::size_t> right_counts;
    for (std::size_t i = std::max<std::size_t>(window.begin, 1); i < window.end; ++i) {
        double best_left = std::numeric_limits<double>::infinity();
        double best_right = best_left;
        std::size_t left = 0;
        std::size_t right = 0;
        for (std::size_t j = 0; j < i; ++j) {
            if (!(points[j].r < points[i].r)) continue;
            const double offset = angular_offset(points[i], points[j]);
            const double d = distance(points[i], points[j]);
            if (offset >= -kSameRay && d < best_left) {
                best_left = d;
                left = i - j;
            }
            if (offset <= kSameRay && d < best_right) {
                best_right = d;
                right = i - j;
            }
        }
        if (left != 0) ++left_counts[left];
        if (right != 0) ++right_counts[right];
    }
    if (left_counts.empty() || right_counts.empty()) {
        throw DegenerateError("parastichy_pair: no inner neighbours in the window");
    }
    return {mode_of(left_counts), mode_of(right_counts)};
}

double nearest_neighbor_spread(const std::vector<PolarPoint>& points, IndexWindow window) {
    check_window(points, window);
    if (points.size() < 2) throw DegenerateError("nearest_neighbor_spread: need two points");
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = window.begin; i < window.end; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j != i) nearest = std::min(nearest, distance(points[i], points[j]));
        }
        lo = std::min(lo, nearest);
        hi = std::max(hi, nearest);
    }
    return hi / lo;
}

double angular_gap_ratio(const std::vector<PolarPoint>& points, IndexWindow window) {
    check_window(points, window);
    if (window.end - window.begin < 2) throw DegenerateError("angular_gap_ratio: need two points");
    std::vector<double> angles;
    for (std::size_t i = window.begin; i < window.end; ++i) {
        angles.push_back(std::fmod(points[i].phi, kTwoPi));
    }
    std::sort(angles.begin(), angles.end());
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double next = i + 1 < angles.size() ? angles[i + 1] : angles.front() + kTwoPi;
        double gap = next - angles[i];
        if (gap < kSameRay) gap = 0.0;
        lo = std::min(lo, gap);
        hi = std::max(hi, gap);
    }
    return lo == 0.0 ? std::numeric_limits<double>::infinity() : hi / lo;
}

std::string render_svg(const std::vector<PolarPoint>& points, const SpiralConfig& config) {
    config.validate();
    double max_r = 0.0;
    for (const PolarPoint& p : points) max_r = std::max(max_r, p.r);
    const double half = max_r + config.marker_radius;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << fmt(-half)
       << ' ' << fmt(-half) << ' ' << fmt(2.0 * half) << ' ' << fmt(2.0 * half) << "\">\n";
    for (const PolarPoint& p : points) {
        os << "  <circle cx=\"" << fmt(p.x()) << "\" cy=\"" << fmt(p.y()) << "\" r=\""
           << fmt(config.marker_radius) << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::size_t emit_svg(const std::vector<PolarPoint>& points, const SpiralConfig& config,
                     const std::filesystem::path& path) {
    const std::string doc = render_svg(points, config);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("emit_svg: cannot open " + path.string() + ": " +
                                 std::strerror(errno));
    }
    out.write(doc.data(), static_cast<std::streamsize>(doc.size()));
    out.close();
    if (!out) throw std::runtime_error("emit_svg: write to " + path.string() + " failed");
    return doc.size();
}

}  // namespace pathwaykit::phyllo
