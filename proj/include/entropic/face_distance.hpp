#pragma once

#include <vector>

#include "entropic/linalg.hpp"
#include "entropic/model.hpp"

namespace entropic {

/// min over lambda in [0,1] of ||x - (lambda p + (1-lambda) q)||_1, by
/// evaluating every breakpoint of the piecewise-linear objective.
double l1_distance_to_segment(const Vector& x, const Vector& p, const Vector& q);

/// min over z in conv(points) of ||x - z||_1. Solves the auxiliary program
///   min 1'(s + t)  s.t.  sum_k w_k p_k + s - t = x,  1'w = 1,  w, s, t >= 0
/// with a dense primal simplex (Bland's rule), starting from w = e_0.
double l1_distance_to_hull(const Vector& x, const std::vector<Vector>& points);

/// d_1(x, F) for the optimal face F = conv(optimal vertices) of `prof`.
double face_distance(const Vector& x, const PolytopeProfile& prof);

}  // namespace entropic
