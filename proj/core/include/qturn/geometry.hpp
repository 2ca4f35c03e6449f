#pragma once

#include "qturn/model.hpp"

namespace qturn::geom {

// Sign of the orientation determinant of (a, b, c), exact for double inputs.
int orient(Vec2 a, Vec2 b, Vec2 c);

// Closed segments [p1,p2] and [q1,q2] share a point (touching counts).
bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
double segment_distance(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2);

// true if the closed segment [a,b] contains the origin
bool segment_hits_origin(Vec2 a, Vec2 b);

}  // namespace qturn::geom
