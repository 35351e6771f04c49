#pragma once

#include <cstddef>
#include <string>

#include "orbitkit/orbit.hpp"
#include "orbitkit/set_map.hpp"
#include "orbitkit/transition.hpp"

namespace orbitkit {

/// Drawings with more elements than this throw TooLarge.
constexpr std::size_t kRenderElementLimit = 100'000;

/// Coordinates are computed exactly and rounded to 12 significant digits
/// only when written, so equal inputs give byte-identical documents.
std::string render_svg(const SetValuedMap& f);
std::string render_svg(const OrbitTree& t, const std::string& title);
std::string render_svg(const OrbitCover& c, const std::string& title);
std::string render_svg(const TransitionGraph& g, const std::string& title);

}  // namespace orbitkit
