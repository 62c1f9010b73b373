#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <type_traits>

namespace covkit {

using Complex = std::complex<double>;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Induced infinity norm (max absolute row sum).
template <typename Derived>
double inf_norm(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Largest entry in absolute value; 0 for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
///
/// The argument is scaled by 2^-s so that its infinity norm is at most 1/2,
/// the series is summed until the next term drops below 1e-18 relative to the
/// partial sum, and the result is squared s times. Works for real and complex
/// square matrices.
template <typename Derived>
typename Derived::PlainObject expm(const Eigen::MatrixBase<Derived>& a) {
    using Plain = typename Derived::PlainObject;
    using Scalar = typename Derived::Scalar;
    if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");

    const double norm = inf_norm(a);
    if (!std::isfinite(norm)) throw std::invalid_argument("expm: non-finite matrix");
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));

    const Plain scaled = a / Scalar(std::ldexp(1.0, squarings));
    Plain result = Plain::Identity(a.rows(), a.cols());
    Plain term = Plain::Identity(a.rows(), a.cols());
    for (int k = 1; k <= 40; ++k) {
        term = (term * scaled) / Scalar(static_cast<double>(k));
        result += term;
        if (inf_norm(term) <= 1e-18 * inf_norm(result)) break;
    }
    for (int i = 0; i < squarings; ++i) result = (result * result).eval();
    return result;
}

/// Central finite difference of `f` at t = 0 along a scalar offset.
///
/// `f(t)` may return anything supporting subtraction and scalar division
/// (double, Complex, Eigen expressions). Order 2 uses the 3-point stencil,
/// order 4 the 5-point stencil.
template <typename F>
auto central_difference(F&& f, double h, int order) {
    using Result = std::decay_t<decltype(f(h))>;
    if (order == 4) {
        const Result value = (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h);
        return value;
    }
    const Result value = (f(h) - f(-h)) / (2.0 * h);
    return value;
}

}  // namespace covkit
