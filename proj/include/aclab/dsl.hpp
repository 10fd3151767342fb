#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aclab/checkers.hpp"
#include "aclab/function_zoo.hpp"

namespace aclab {

/// Textual function descriptions, e.g.
///   preset:takagi-tent
///   product(h=const:1, g=cbrt, d=1/2)
///   affine:x+y     affine:2x-3y+1/4
///   axis(p=sqrtabs:10, axis=0)
///   sum(preset:takagi-tent, affine:x)
///   scale(3, preset:cbrt-product)
///   hierarchy:3
/// Failures raise ParseError with a 1-based column.
FunctionSpec parse_function(std::string_view text);

/// Class strings: 1ac | alpha:1/2 | 0ac | strong0ac | ach:1/2 | 1ach:1/2 |
/// kac:sup | kac:euclid, with the exponent supplied separately.
ACClassSpec parse_class(std::string_view text, int n);

/// "x,y" with exact rational components; also accepts a+b"r2" components
/// for sqrt(2) probes in eval contexts.
Point parse_point(std::string_view text);
Q2Point parse_q2_point(std::string_view text);
/// "x,y:u,v"
std::pair<Point, Point> parse_point_pair(std::string_view text);

}  // namespace aclab
