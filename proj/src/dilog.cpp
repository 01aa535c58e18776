#include "circlekit/dilog.hpp"

#include <cmath>
#include <numbers>

namespace circlekit {

namespace {

using std::numbers::pi;

// Im Li2(i y) = sum_{m>=0} (-1)^m y^(2m+1) / (2m+1)^2, geometric for y < 1.
double series(double y) {
    double term = y, sum = 0.0;
    const double y2 = y * y;
    for (int m = 0; m < 200; ++m) {
        const int k = 2 * m + 1;
        const double add = (m % 2 ? -term : term) / (k * k);
        sum += add;
        term *= y2;
        if (term < 1e-18 * (std::abs(sum) + 1e-300) * k * k) break;
    }
    return sum;
}

constexpr int kGL = 20;
constexpr double kGLNode[kGL] = {
    -0.9931285991850949247861, -0.9639719272779137912677, -0.9122344282513259058678,
    -0.8391169718222188233945, -0.7463319064601507926143, -0.6360536807265150254528,
    -0.5108670019508270980044, -0.3737060887154195606725, -0.2277858511416450780805,
    -0.07652652113349733375464, 0.07652652113349733375464, 0.2277858511416450780805,
    0.3737060887154195606725,  0.5108670019508270980044,  0.6360536807265150254528,
    0.7463319064601507926143,  0.8391169718222188233945,  0.9122344282513259058678,
    0.9639719272779137912677,  0.9931285991850949247861};
constexpr double kGLWeight[kGL] = {
    0.01761400713915211831186, 0.04060142980038694133104, 0.06267204833410906356951,
    0.08327674157670474872476, 0.1019301198172404350368,  0.1181945319615184173124,
    0.1316886384491766268985,  0.1420961093183820513293,  0.1491729864726037467878,
    0.1527533871307258506981,  0.1527533871307258506981,  0.1491729864726037467878,
    0.1420961093183820513293,  0.1316886384491766268985,  0.1181945319615184173124,
    0.1019301198172404350368,  0.08327674157670474872476, 0.06267204833410906356951,
    0.04060142980038694133104, 0.01761400713915211831186};

// integral of arctan(e^t) over [a, b], |b - a| moderate
double arctan_exp_integral(double a, double b) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double sum = 0.0;
    for (int i = 0; i < kGL; ++i) sum += kGLWeight[i] * std::atan(std::exp(half * kGLNode[i] + mid));
    return half * sum;
}

}  // namespace

double im_li2_i_exp(double x) {
    if (x > 0.0) return im_li2_i_exp(-x) + 0.5 * pi * x;  // reflection x <-> -x
    if (x <= -0.5) return series(std::exp(x));
    return kCatalan - arctan_exp_integral(x, 0.0);
}

}  // namespace circlekit
