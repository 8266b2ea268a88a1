#pragma once

#include <cstdint>

#include "pierce/instance_io.hpp"

namespace pierce {

// n bodies on the unit circle, every pair meeting on the circle. Throws
// PierceError(Argument) for n < 2 and PierceError(Generator) if ten attempts
// fail the complete-graph check.
Instance gen_pairwise(int n, std::uint64_t seed);

// n bodies in p-1 clusters; bodies of one cluster share a curve point and
// bodies of different clusters are disjoint on the curve. Throws
// PierceError(Argument) for p < 2 or n < p.
Instance gen_clustered(int p, int n, std::uint64_t seed);

inline constexpr double kGalleryDelta = 0.35;

// Seven triangles on seven circle points forming a Fano plane; needs three
// piercing points although every pair meets.
Instance gallery7(double delta = kGalleryDelta);

}  // namespace pierce
