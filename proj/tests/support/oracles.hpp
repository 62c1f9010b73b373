#pragma once

// Reference computations used only by the tests. Each one follows a route
// that is independent of the library implementation it is compared with.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>

namespace covkit::oracle {

/// Plain Taylor series of exp without scaling, accumulated in long double.
/// Adequate for matrices of norm up to ~10.
inline Eigen::MatrixXcd taylor_exp(const Eigen::MatrixXcd& a, int terms = 120) {
    using LMat = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
    const LMat x = a.cast<std::complex<long double>>();
    LMat term = LMat::Identity(a.rows(), a.cols());
    LMat sum = term;
    for (int k = 1; k < terms; ++k) {
        term = (term * x) / static_cast<long double>(k);
        sum += term;
    }
    return sum.cast<std::complex<double>>();
}

/// cosh and sinh from their power series.
inline double series_cosh(double x) {
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 60; ++k) {
        term *= static_cast<long double>(x) * x / ((2.0L * k - 1.0L) * (2.0L * k));
        sum += term;
    }
    return static_cast<double>(sum);
}

inline double series_sinh(double x) {
    long double term = x, sum = x;
    for (int k = 1; k < 60; ++k) {
        term *= static_cast<long double>(x) * x / ((2.0L * k) * (2.0L * k + 1.0L));
        sum += term;
    }
    return static_cast<double>(sum);
}

/// Composite Simpson rule on [a, b] with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

}  // namespace covkit::oracle
