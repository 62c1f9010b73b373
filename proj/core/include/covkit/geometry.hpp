#pragma once

// Minkowski geometry: metric, Lorentz generators and transforms, Poincare
// elements, and affine charts on R^4 with their transition maps.
//
// Index conventions: 4x4 matrices act on contravariant column vectors, the
// entry (sigma, rho) of a Lorentz matrix is Lambda^sigma_rho, and the metric
// has signature (-+++).

#include "covkit/numerics.hpp"

#include <array>
#include <cstddef>

namespace covkit {

/// Tolerances used by geometric validity checks.
struct GeometryTolerance {
    double algebraic = 1e-12;  ///< metric preservation, determinant, round trips
    double group_law = 1e-10;  ///< products of several exponentials
};

/// The Minkowski metric diag(-1, +1, +1, +1); symmetric and its own inverse.
class Metric {
public:
    static const Mat4& components();
    static double component(int mu, int nu) { return components()(mu, nu); }
};

/// An index pair (alpha, beta) with alpha < beta labelling a plane in R^4.
struct Plane {
    int alpha = 0;
    int beta = 1;

    friend bool operator==(const Plane&, const Plane&) = default;
};

/// The six coordinate planes in parameter order: 01, 02, 03, 12, 13, 23.
inline constexpr std::array<Plane, 6> kLorentzPlanes{
    Plane{0, 1}, Plane{0, 2}, Plane{0, 3}, Plane{1, 2}, Plane{1, 3}, Plane{2, 3}};

/// Position of `plane` inside kLorentzPlanes. Throws InvalidArgument for
/// indices out of range or alpha >= beta.
std::size_t plane_index(Plane plane);

/// Six real parameters omega^{alpha beta}, alpha < beta, ordered as kLorentzPlanes.
using LorentzParams = Eigen::Matrix<double, 6, 1>;

/// Lorentz algebra basis element J_{alpha beta} with
/// (J_{alpha beta})^sigma_rho = delta^sigma_alpha eta_{beta rho} - delta^sigma_beta eta_{alpha rho}.
class LorentzGenerator {
public:
    explicit LorentzGenerator(Plane plane);

    Plane plane() const noexcept { return plane_; }
    const Mat4& matrix() const noexcept { return matrix_; }

    /// max |J^T eta + eta J|; zero for a member of the Lorentz algebra.
    double algebra_residual() const;

    static const std::array<LorentzGenerator, 6>& basis();

private:
    Plane plane_;
    Mat4 matrix_;
};

/// sum_{alpha<beta} omega^{alpha beta} J_{alpha beta}.
Mat4 lorentz_algebra_element(const LorentzParams& omega);

/// Coordinates of an algebra element in the J basis. The input is assumed
/// to lie in the algebra; only the (alpha, beta) entries are read.
LorentzParams lorentz_algebra_coordinates(const Mat4& x);

/// A proper orthochronous Lorentz matrix.
class LorentzTransform {
public:
    LorentzTransform() : matrix_(Mat4::Identity()) {}

    /// Validates Lambda^T eta Lambda = eta, det = +1 and Lambda^0_0 >= 1.
    /// Throws InvalidArgument when any check fails.
    static LorentzTransform from_matrix(const Mat4& m, GeometryTolerance tol = {});

    static LorentzTransform identity() { return {}; }

    const Mat4& matrix() const noexcept { return matrix_; }

    /// eta Lambda^T eta.
    LorentzTransform inverse() const;

    Vec4 apply(const Vec4& v) const { return matrix_ * v; }

    /// max |Lambda^T eta Lambda - eta|.
    double metric_residual() const;

    friend LorentzTransform operator*(const LorentzTransform& a, const LorentzTransform& b) {
        return LorentzTransform(a.matrix_ * b.matrix_);
    }

private:
    explicit LorentzTransform(const Mat4& m) : matrix_(m) {}

    Mat4 matrix_;
};

/// exp(sum omega^{alpha beta} J_{alpha beta}). Throws InvalidArgument on
/// non-finite parameters.
LorentzTransform lorentz_exp(const LorentzParams& omega);

/// Principal logarithm projected onto the J basis. Valid for transforms
/// whose rotation part is below pi; used to label group products.
LorentzParams lorentz_log(const LorentzTransform& lambda);

/// Element (Lambda, a) of the Poincare group acting as x -> Lambda x + a.
struct PoincareElement {
    LorentzTransform rotation;
    Vec4 translation = Vec4::Zero();

    static PoincareElement identity() { return {}; }

    Vec4 apply(const Vec4& x) const { return rotation.apply(x) + translation; }

    /// (Lambda^-1, -Lambda^-1 a).
    PoincareElement inverse() const;
};

/// (Lambda2 Lambda1, Lambda2 a1 + a2): apply g1 first, then g2.
PoincareElement poincare_compose(const PoincareElement& g2, const PoincareElement& g1);

/// Parameters (omega, a) of a Poincare element. Keeping the parameters
/// rather than only the matrix lets representations that are not single
/// valued on the group (spinors) be evaluated unambiguously.
struct PoincareParams {
    LorentzParams omega = LorentzParams::Zero();
    Vec4 translation = Vec4::Zero();

    PoincareElement element() const;

    /// Parameters of the inverse element: (-omega, -Lambda^-1 a).
    PoincareParams inverse() const;
};

/// Affine point map r -> L r + c on R^4.
class AffineMap {
public:
    AffineMap() : linear_(Mat4::Identity()), offset_(Vec4::Zero()) {}
    AffineMap(const Mat4& linear, const Vec4& offset) : linear_(linear), offset_(offset) {}

    static AffineMap identity() { return {}; }
    static AffineMap from_poincare(const PoincareElement& g) {
        return {g.rotation.matrix(), g.translation};
    }

    const Mat4& linear() const noexcept { return linear_; }
    const Vec4& offset() const noexcept { return offset_; }

    Vec4 operator()(const Vec4& r) const { return linear_ * r + offset_; }

    /// Throws InvalidChart when the linear part is singular.
    AffineMap inverse() const;

    /// (*this) o inner.
    AffineMap after(const AffineMap& inner) const {
        return {linear_ * inner.linear_, linear_ * inner.offset_ + offset_};
    }

    /// max distance from `other` over the linear and offset parts.
    double distance(const AffineMap& other) const;

private:
    Mat4 linear_;
    Vec4 offset_;
};

/// A global affine coordinate system u: M -> R^4 (M identified with R^4).
class AffineChart {
public:
    AffineChart() = default;

    /// Throws InvalidChart when |det L| <= 1e-12.
    AffineChart(const Mat4& linear, const Vec4& offset);

    static AffineChart identity() { return {}; }

    /// u' = g o u, i.e. u'(x) = Lambda u(x) + a.
    static AffineChart transformed(const AffineChart& u, const PoincareElement& g);

    const AffineMap& map() const noexcept { return map_; }
    const AffineMap& inverse_map() const noexcept { return inverse_; }

    Vec4 coordinates(const Vec4& x) const { return map_(x); }
    Vec4 point(const Vec4& r) const { return inverse_(r); }

private:
    AffineMap map_;
    AffineMap inverse_;
};

/// The four transition maps between two charts u and u'.
struct ChartTransitions {
    AffineMap u_after_uprime_inv;   ///< u o u'^-1, r -> Lambda^-1 (r - a)
    AffineMap uprime_after_u_inv;   ///< u' o u^-1, r -> Lambda r + a
    AffineMap u_inv_after_uprime;   ///< u^-1 o u'
    AffineMap uprime_inv_after_u;   ///< u'^-1 o u
};

ChartTransitions chart_transition(const AffineChart& u, const AffineChart& u_prime);

/// Jacobian determinant of an affine point map (det of its linear part).
double transition_jacobian(const AffineMap& map);

}  // namespace covkit
