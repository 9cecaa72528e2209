#ifndef HYPTESS_SVG_HPP
#define HYPTESS_SVG_HPP

#include <string>
#include <vector>

#include "hyptess/estimator.hpp"
#include "hyptess/geometry.hpp"

namespace hyptess {

// Plain SVG 1.1 rendering of a d=2 tessellation, cells colored by
// combinatorial type. Deterministic bytes.
std::string render_svg(const std::vector<CellPolytope>& cells, double window_radius,
                       double pixels_per_unit = 8.0);

}  // namespace hyptess

#endif
