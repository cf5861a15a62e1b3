#pragma once

#include "obstruction_lab/arc_set.hpp"
#include "obstruction_lab/geometry.hpp"

namespace obstruction_lab {

// Half-width of the arc of directions v (centred on y - x) for which y lies
// strictly within eps of the ray / length-T segment from x. Returns pi for the
// full circle and a negative value when no direction is blocked.
// Throws DegenerateObstacle when y coincides with x.
double blocked_half_width(Point x, Point y, double eps, double horizon);

// Same, from the separation d = |y - x| alone (d must be >= the identity
// tolerance). Hot loops call this after computing d themselves.
double blocked_half_width_at(double d, double eps, double horizon);

ArcSet blocked_arc(Point x, Point y, double eps, double horizon);

}  // namespace obstruction_lab
