#include "covkit/geometry.hpp"

#include "covkit/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

namespace covkit {

const Mat4& Metric::components() {
    static const Mat4 eta = Vec4(-1.0, 1.0, 1.0, 1.0).asDiagonal();
    return eta;
}

std::size_t plane_index(Plane plane) {
    if (plane.alpha < 0 || plane.beta > 3 || plane.alpha >= plane.beta) {
        throw InvalidArgument("plane (" + std::to_string(plane.alpha) + "," +
                              std::to_string(plane.beta) + ") must satisfy 0 <= alpha < beta <= 3");
    }
    for (std::size_t i = 0; i < kLorentzPlanes.size(); ++i) {
        if (kLorentzPlanes[i] == plane) return i;
    }
    throw InvalidArgument("unreachable plane index");
}

LorentzGenerator::LorentzGenerator(Plane plane) : plane_(plane), matrix_(Mat4::Zero()) {
    plane_index(plane);
    const Mat4& eta = Metric::components();
    for (int sigma = 0; sigma < 4; ++sigma) {
        for (int rho = 0; rho < 4; ++rho) {
            const double a = sigma == plane.alpha ? eta(plane.beta, rho) : 0.0;
            const double b = sigma == plane.beta ? eta(plane.alpha, rho) : 0.0;
            matrix_(sigma, rho) = a - b;
        }
    }
}

double LorentzGenerator::algebra_residual() const {
    const Mat4& eta = Metric::components();
    return max_abs(Mat4(matrix_.transpose() * eta + eta * matrix_));
}

const std::array<LorentzGenerator, 6>& LorentzGenerator::basis() {
    static const std::array<LorentzGenerator, 6> generators{
        LorentzGenerator(kLorentzPlanes[0]), LorentzGenerator(kLorentzPlanes[1]),
        LorentzGenerator(kLorentzPlanes[2]), LorentzGenerator(kLorentzPlanes[3]),
        LorentzGenerator(kLorentzPlanes[4]), LorentzGenerator(kLorentzPlanes[5])};
    return generators;
}

Mat4 lorentz_algebra_element(const LorentzParams& omega) {
    Mat4 x = Mat4::Zero();
    const auto& basis = LorentzGenerator::basis();
    for (std::size_t i = 0; i < basis.size(); ++i) x += omega(static_cast<Eigen::Index>(i)) * basis[i].matrix();
    return x;
}

LorentzParams lorentz_algebra_coordinates(const Mat4& x) {
    // Only J_{alpha beta} has a nonzero (alpha, beta) entry, equal to eta_{beta beta}.
    LorentzParams omega;
    for (std::size_t i = 0; i < kLorentzPlanes.size(); ++i) {
        const Plane p = kLorentzPlanes[i];
        omega(static_cast<Eigen::Index>(i)) = x(p.alpha, p.beta) / Metric::component(p.beta, p.beta);
    }
    return omega;
}

LorentzTransform LorentzTransform::from_matrix(const Mat4& m, GeometryTolerance tol) {
    if (!m.allFinite()) throw InvalidArgument("Lorentz matrix has non-finite entries");
    LorentzTransform lambda(m);
    const double metric = lambda.metric_residual();
    if (metric > tol.algebraic) {
        throw InvalidArgument("matrix does not preserve the Minkowski metric (residual " +
                              std::to_string(metric) + ")");
    }
    const double det = m.determinant();
    if (std::abs(det - 1.0) > tol.algebraic) {
        throw InvalidArgument("Lorentz matrix is not proper (det = " + std::to_string(det) + ")");
    }
    if (m(0, 0) < 1.0 - tol.algebraic) {
        throw InvalidArgument("Lorentz matrix is not orthochronous");
    }
    return lambda;
}

LorentzTransform LorentzTransform::inverse() const {
    const Mat4& eta = Metric::components();
    return LorentzTransform(eta * matrix_.transpose() * eta);
}

double LorentzTransform::metric_residual() const {
    const Mat4& eta = Metric::components();
    return max_abs(Mat4(matrix_.transpose() * eta * matrix_ - eta));
}

LorentzTransform lorentz_exp(const LorentzParams& omega) {
    if (!omega.allFinite()) throw InvalidArgument("lorentz_exp: non-finite parameters");
    return LorentzTransform::from_matrix(expm(lorentz_algebra_element(omega)));
}

LorentzParams lorentz_log(const LorentzTransform& lambda) {
    const Mat4 log = lambda.matrix().log();
    if (!log.allFinite()) throw InvalidArgument("lorentz_log: logarithm is not defined");
    return lorentz_algebra_coordinates(log);
}

PoincareElement PoincareElement::inverse() const {
    const LorentzTransform inv = rotation.inverse();
    return {inv, -inv.apply(translation)};
}

PoincareElement poincare_compose(const PoincareElement& g2, const PoincareElement& g1) {
    return {g2.rotation * g1.rotation, g2.rotation.apply(g1.translation) + g2.translation};
}

PoincareElement PoincareParams::element() const {
    if (!translation.allFinite()) throw InvalidArgument("non-finite translation");
    return {lorentz_exp(omega), translation};
}

PoincareParams PoincareParams::inverse() const {
    const LorentzTransform lambda_inv = lorentz_exp(-omega);
    return {-omega, -lambda_inv.apply(translation)};
}

AffineMap AffineMap::inverse() const {
    const double det = linear_.determinant();
    if (!(std::abs(det) > 1e-12)) throw InvalidChart("affine map has a singular linear part");
    const Mat4 inv = linear_.inverse();
    return {inv, -inv * offset_};
}

double AffineMap::distance(const AffineMap& other) const {
    return std::max(max_abs(Mat4(linear_ - other.linear_)), max_abs(Vec4(offset_ - other.offset_)));
}

AffineChart::AffineChart(const Mat4& linear, const Vec4& offset) : map_(linear, offset) {
    if (!linear.allFinite() || !offset.allFinite()) throw InvalidChart("chart has non-finite entries");
    if (!(std::abs(linear.determinant()) > 1e-12)) throw InvalidChart("chart linear part is singular");
    inverse_ = map_.inverse();
}

AffineChart AffineChart::transformed(const AffineChart& u, const PoincareElement& g) {
    const AffineMap composed = AffineMap::from_poincare(g).after(u.map());
    return AffineChart(composed.linear(), composed.offset());
}

ChartTransitions chart_transition(const AffineChart& u, const AffineChart& u_prime) {
    return {
        u.map().after(u_prime.inverse_map()),
        u_prime.map().after(u.inverse_map()),
        u.inverse_map().after(u_prime.map()),
        u_prime.inverse_map().after(u.map()),
    };
}

double transition_jacobian(const AffineMap& map) { return map.linear().determinant(); }

}  // namespace covkit
