#pragma once

namespace circlekit {

inline constexpr double kCatalan = 0.9159655941772190150546;

// Im Li2(i e^x) for real x: the antiderivative of arctan(e^x) with value
// Catalan at 0. Strictly increasing, tends to 0 as x -> -inf and satisfies
// the reflection Im Li2(i e^x) - Im Li2(i e^-x) = (pi/2) x.
// Relative accuracy ~1e-14.
double im_li2_i_exp(double x);

}  // namespace circlekit
