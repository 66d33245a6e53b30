#pragma once

#include "octa/mat2.hpp"
#include "octa/surface.hpp"

#include <random>

namespace octa::sample {

using Rng = std::mt19937_64;

QSqrt2 small_q(Rng& rng, long range = 50, long den = 17);
// rational + rational*sqrt2 with large denominators, roughly uniform in [lo, hi]
QSqrt2 generic(Rng& rng, double lo, double hi);
// generic point strictly inside the octagon
Vec2 point(Rng& rng);
// generic direction u with angle in sector k, roughly uniform in angle
ProjPoint direction(Rng& rng, int k);
ProjPoint direction(Rng& rng);
// generic direction in [0, pi), uniform in angle
ProjPoint direction_any(Rng& rng);

}  // namespace octa::sample
