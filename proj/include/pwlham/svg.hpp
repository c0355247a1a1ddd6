#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwlham/cycle.hpp"

namespace pwlham {

inline constexpr int kCanvasWidth = 800;
inline constexpr int kCanvasHeight = 600;

/// Plot window in phase-plane coordinates. Throws InvalidInput unless x0 < x1 and y0 < y1.
struct Window {
  double x0, x1, y0, y1;
  Window(double x0, double x1, double y0, double y1);
};

/// Parses "x0,x1,y0,y1".
Window parse_window(const std::string& text);

/// Bounding box of the points and the switching lines, padded by 10%.
Window default_window(const PiecewiseSystem& system, const std::vector<Point>& points);

/// Cycle polyline as one closed path, corners as labelled dots.
std::string render_cycle_svg(const PiecewiseSystem& system, const CycleCertificate& cert,
                             const std::optional<Window>& window = std::nullopt);

/// Open polyline. Throws InvalidInput for an empty trajectory.
std::string render_trajectory_svg(const PiecewiseSystem& system, const std::vector<Point>& points,
                                  const std::optional<Window>& window = std::nullopt);

}  // namespace pwlham
