#pragma once

#include "tropos/alexander.hpp"
#include "tropos/svg.hpp"

#include <string>
#include <vector>

namespace tropos {

/// Presentations used by the regression suite: "bs12", "brown", "fox-factor".
Presentation example_presentation(const std::string &id);

/// Stored Sigma^1 fixtures: "bs12", "brown".
BnsFixture example_fixture(const std::string &id);

/// Drawings of the reference figures: see figure_ids().
SvgScene figure_scene(const std::string &id);
std::vector<std::string> figure_ids();

/// Cell shape "v=[...] r=[...] l=[...]" from the generators of a polyhedron.
std::string cell_shape(const Polyhedron &p);
/// Sorted cell shapes of a region.
std::vector<std::string> region_shapes(const TropicalRegion &r);

struct ExampleCheck {
  std::string id;
  bool pass = false;
  std::string detail;
};

/// Runs every built-in pipeline against its stored expected values.
std::vector<ExampleCheck> run_examples();

} // namespace tropos
