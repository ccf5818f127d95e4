#include "isentropy/normal.hpp"

#include <cmath>

namespace isentropy {

// Rational approximations from W. J. Cody, "Rational Chebyshev approximation
// for the error function", Math. Comp. 23 (1969). Three regimes:
// |x| <= 0.46875 (erf direct), 0.46875 < |x| <= 4, and |x| > 4.

namespace {

constexpr double kThresh = 0.46875;
constexpr double kInvSqrtPi = 0.56418958354775628695; // 1/sqrt(pi)

const double A[5] = {3.16112374387056560e+00, 1.13864154151050156e+02,
                     3.77485237685302021e+02, 3.20937758913846947e+03,
                     1.85777706184603153e-01};
const double B[4] = {2.36012909523441209e+01, 2.44024637934444173e+02,
                     1.28261652607737228e+03, 2.84423683343917062e+03};
const double C[9] = {5.64188496988670089e-01, 8.88314979438837594e+00,
                     6.61191906371416295e+01, 2.98635138197400131e+02,
                     8.81952221241769090e+02, 1.71204761263407058e+03,
                     2.05107837782607147e+03, 1.23033935479799725e+03,
                     2.15311535474403846e-08};
const double D[8] = {1.57449261107098347e+01, 1.17693950891312499e+02,
                     5.37181101862009858e+02, 1.62138957456669019e+03,
                     3.29079923573345963e+03, 4.36261909014324716e+03,
                     3.43936767414372164e+03, 1.23033935480374942e+03};
const double P[6] = {3.05326634961232344e-01, 3.60344899949804439e-01,
                     1.25781726111229246e-01, 1.60837851487422766e-02,
                     6.58749161529837803e-04, 1.63153871373020978e-02};
const double Q[5] = {2.56852019228982242e+00, 1.87295284992346047e+00,
                     5.27905102951428412e-01, 6.05183413124413191e-02,
                     2.33520497626869185e-03};

double erf_small(double x) {
    const double y = std::fabs(x);
    const double ysq = y > 6.71e-7 ? y * y : 0.0;
    double xnum = A[4] * ysq;
    double xden = ysq;
    for (int i = 0; i < 3; ++i) {
        xnum = (xnum + A[i]) * ysq;
        xden = (xden + B[i]) * ysq;
    }
    return x * (xnum + A[3]) / (xden + B[3]);
}

double erfc_mid(double y) {
    double xnum = C[8] * y;
    double xden = y;
    for (int i = 0; i < 7; ++i) {
        xnum = (xnum + C[i]) * y;
        xden = (xden + D[i]) * y;
    }
    const double result = (xnum + C[7]) / (xden + D[7]);
    const double ysq = std::trunc(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del) * result;
}

double erfc_large(double y) {
    const double ysq = 1.0 / (y * y);
    double xnum = P[5] * ysq;
    double xden = ysq;
    for (int i = 0; i < 4; ++i) {
        xnum = (xnum + P[i]) * ysq;
        xden = (xden + Q[i]) * ysq;
    }
    double result = ysq * (xnum + P[4]) / (xden + Q[4]);
    result = (kInvSqrtPi - result) / y;
    const double ysq2 = std::trunc(y * 16.0) / 16.0;
    const double del = (y - ysq2) * (y + ysq2);
    return std::exp(-ysq2 * ysq2) * std::exp(-del) * result;
}

} // namespace

double erfc_approx(double x) {
    const double y = std::fabs(x);
    double result;
    if (y <= kThresh)
        return 1.0 - erf_small(x);
    if (y <= 4.0)
        result = erfc_mid(y);
    else if (y < 26.5)
        result = erfc_large(y);
    else
        result = 0.0;
    return x < 0.0 ? 2.0 - result : result;
}

double normal_cdf(double x) {
    return 0.5 * erfc_approx(-x * 0x1.6a09e667f3bcdp-1); // x / sqrt(2)
}

} // namespace isentropy
