#pragma once

// Sampled fields and their transformation laws.
//
// Convention: the active law evaluates the field at the moved point
// (u' o u^-1)(r) = Lambda r + a and acts with the transposed representation
// matrix. The form with argument Lambda^-1 (r - a) is the same law at the
// inverse group element.

#include "covkit/geometry.hpp"
#include "covkit/numerics.hpp"
#include "covkit/representations.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace covkit {

/// A smooth map R^4 -> C^n with an analytic gradient (n x 4, column k is d/dx^k).
class FieldFunction {
public:
    using Evaluate = std::function<CVector(const Vec4&)>;
    using Gradient = std::function<CMatrix(const Vec4&)>;

    FieldFunction(int components, Evaluate evaluate, Gradient gradient);

    int components() const noexcept { return components_; }
    CVector operator()(const Vec4& x) const { return evaluate_(x); }
    CVector evaluate(const Vec4& x) const { return evaluate_(x); }
    CMatrix gradient(const Vec4& x) const { return gradient_(x); }

    /// x -> v everywhere.
    static FieldFunction constant(const CVector& value);

    /// Pointwise sum; throws InvalidArgument on mismatched component counts.
    friend FieldFunction operator+(const FieldFunction& a, const FieldFunction& b);

private:
    int components_;
    Evaluate evaluate_;
    Gradient gradient_;
};

/// Relative error max|G - G_fd| / max|G| of the analytic gradient against
/// central differences at `step`. Falls back to the absolute error when the
/// gradient vanishes.
double gradient_consistency(const FieldFunction& field, const Vec4& x, double step = 1e-4);

/// Polynomial prefactor of one wave-packet component in y = x - center:
/// constant + linear . y + sum_k quadratic_k (y^k)^2.
struct ComponentPolynomial {
    Complex constant{1.0, 0.0};
    Eigen::Vector4cd linear = Eigen::Vector4cd::Zero();
    Eigen::Vector4cd quadratic = Eigen::Vector4cd::Zero();
};

/// Gaussian wave packet p_i(x - c) exp(-|x - c|^2 / (2 s^2)) with a Euclidean
/// norm on R^4. Values underflow below 1e-300 outside radius 40 s.
struct WavePacket {
    Vec4 center = Vec4::Zero();
    double width = 1.0;
    std::vector<ComponentPolynomial> components{ComponentPolynomial{}};

    /// Throws InvalidArgument for a non-positive width or no components.
    FieldFunction field() const;

    /// Single-component packet with constant prefactor `amplitude`.
    static WavePacket gaussian(const Vec4& center, double width, Complex amplitude = 1.0);
};

/// Pointwise frame-change matrix A(x), e'_i(x) = A_i^j(x) e_j(x).
class FrameChange {
public:
    using Matrix = std::function<CMatrix(const Vec4&)>;
    /// Derivative of A along axis k at x.
    using Derivative = std::function<CMatrix(const Vec4&, int)>;

    FrameChange(int dimension, Matrix matrix, Derivative derivative = {});

    static FrameChange constant(const CMatrix& a);
    static FrameChange identity(int dimension) { return constant(CMatrix::Identity(dimension, dimension)); }

    int dimension() const noexcept { return dimension_; }
    CMatrix at(const Vec4& x) const { return matrix_(x); }

    /// Analytic derivative when supplied, else central differences with step 1e-5.
    CMatrix derivative(const Vec4& x, int axis) const;

private:
    int dimension_;
    Matrix matrix_;
    Derivative derivative_;
};

/// Axis-aligned box with per-axis point counts; the grid includes both ends.
struct GridSpec {
    Vec4 lower = Vec4::Constant(-1.0);
    Vec4 upper = Vec4::Constant(1.0);
    std::array<int, 4> counts{2, 2, 2, 2};

    /// Throws InvalidArgument unless counts >= 2 and lower < upper on every axis.
    void validate() const;

    double spacing(int axis) const { return (upper(axis) - lower(axis)) / (counts[static_cast<std::size_t>(axis)] - 1); }
    double coordinate(int axis, int index) const { return lower(axis) + index * spacing(axis); }
    std::size_t size() const;

    /// Same box with the number of intervals per axis doubled.
    GridSpec refined() const;

    static GridSpec cube(double half_width, int count);
};

/// Which matrix transforms a test function.
enum class TestFunctionLaw {
    kClassical,  ///< f'(x) = D f(Lambda^-1 (x - a))
    kBundle,     ///< f'(x) = I^-1 f(Lambda^-1 (x - a))
};

/// phi'(x) = D phi(Lambda^-1 (x - a)).
FieldFunction passive_transform(const FieldFunction& field, const FieldRep& rep, const PoincareParams& g);
FieldFunction passive_transform(const FieldFunction& field, const CMatrix& d, const PoincareElement& g);

/// phi'(x) = D^T phi(Lambda x + a).
FieldFunction active_transform(const FieldFunction& field, const FieldRep& rep, const PoincareParams& g);

/// General active law for an affine point map H: phi'(r) = det(dH/dr) M^T phi(H(r)).
FieldFunction active_transform(const FieldFunction& field, const CMatrix& m, const AffineMap& point_map);

/// Test-function law; kBundle uses the inverse matrix.
FieldFunction test_function_transform(const FieldFunction& f, const FieldRep& rep, const PoincareParams& g,
                                      TestFunctionLaw law = TestFunctionLaw::kClassical);

/// x -> A^-1(x) phi(x). Evaluation throws SingularFrame where |det A(x)| <= 1e-12.
FieldFunction frame_change_components(const FieldFunction& field, const FrameChange& change);

/// max over points of max|A(e,e')(x) A(e',e'')(x) - A(e,e'')(x)|.
double cocycle_check(const FrameChange& ab, const FrameChange& bc, const FrameChange& ac,
                     const std::vector<Vec4>& points);

/// Trapezoidal quadrature of sum_i phi_i(r) f^i(r) over the grid (bilinear,
/// no conjugation). `threads` = 0 picks the hardware concurrency. The sum is
/// accumulated per slab of the first axis and combined in slab order.
Complex pairing(const FieldFunction& phi, const FieldFunction& f, const GridSpec& grid, unsigned threads = 0);

/// CSV dump: header x0,x1,x2,x3,re_0,im_0,...; one row per grid point with
/// the last axis fastest; 17 significant digits.
void write_field_csv(std::ostream& out, const FieldFunction& field, const GridSpec& grid);

/// Deterministic sample points uniformly distributed in [lower, upper).
/// Uses a fixed 64-bit generator so that the sequence is platform independent.
std::vector<Vec4> sample_points(std::size_t count, const Vec4& lower, const Vec4& upper, std::uint64_t seed);

}  // namespace covkit
