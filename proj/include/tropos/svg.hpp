#pragma once

#include "tropos/sphere.hpp"
#include "tropos/tropical.hpp"

#include <string>
#include <vector>

namespace tropos {

/// Regions and sphere sets drawn together on the square [-3.5, 3.5]^2.
/// Sphere sets live on the circle of radius 2. Only n <= 2.
struct SvgScene {
  std::string title;
  std::vector<TropicalRegion> regions;
  std::vector<SphericalSet> spheres;
};

/// Throws Error when some input has ambient dimension above 2.
std::string render_svg(const SvgScene &scene);

} // namespace tropos
