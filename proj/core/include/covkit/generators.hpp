#pragma once

// Parametrized group families b -> (H_b, I(b)) and the infinitesimal data
// obtained by differentiating them at the identity parameters b0:
//
//   I_w      = dI/db^w (b0)                        rep coefficients
//   h_w(r)   = dH_b(r)/db^w (b0)                   transport vector field
//   Delta_w(r) = d det[dH_b(r)/dr]/db^w (b0)       Jacobian rate

#include "covkit/numerics.hpp"
#include "covkit/representations.hpp"

#include <functional>
#include <string>
#include <vector>

namespace covkit {

/// Central-difference scheme. `per_parameter`, when non-empty, overrides the
/// step for each parameter.
struct FDScheme {
    double step = 1e-4;
    int order = 2;
    std::vector<double> per_parameter;

    /// Throws InvalidScheme unless every step is finite and >= 1e-12 and order is 2 or 4.
    void validate() const;
    double step_for(int parameter) const;
};

struct ParamFamily {
    using PointMap = std::function<Vec4(const Eigen::VectorXd& b, const Vec4& r)>;
    using RepMap = std::function<CMatrix(const Eigen::VectorXd& b)>;
    using RepDerivative = std::function<CMatrix(int parameter)>;
    using PointDerivative = std::function<Vec4(int parameter, const Vec4& r)>;
    using SpatialJacobian = std::function<Mat4(const Eigen::VectorXd& b, const Vec4& r)>;
    using JacobianRate = std::function<double(int parameter, const Vec4& r)>;

    std::string name;
    int dimension = 1;           ///< n, size of I(b)
    Eigen::VectorXd identity;    ///< b0
    std::vector<std::string> labels;
    PointMap point_map;
    RepMap rep_map;

    // Optional analytic data; finite differences are used when empty.
    RepDerivative rep_derivative;
    PointDerivative point_derivative;
    SpatialJacobian spatial_jacobian;
    JacobianRate jacobian_rate;

    int parameters() const { return static_cast<int>(identity.size()); }

    /// Throws InvalidFamily unless point_map(b0, r) = r and rep_map(b0) = 1
    /// within 1e-12 on a fixed probe set.
    void validate() const;

    /// b0 + t e_w.
    Eigen::VectorXd displaced(int parameter, double t) const;

    /// det[dH_b(r)/dr]: analytic when `spatial_jacobian` is set, else nested
    /// central differences with inner step 1e-5.
    double jacobian_determinant(const Eigen::VectorXd& b, const Vec4& r) const;
};

/// Extracted infinitesimal data. Sampled fields are indexed [parameter][point].
struct GeneratorCoefficients {
    std::vector<CMatrix> rep;
    std::vector<std::vector<Vec4>> transport;
    std::vector<std::vector<double>> jacobian_rate;
    /// Rep coefficients along translation parameters (H_{i mu}^j), empty when
    /// the family has none.
    std::vector<CMatrix> translation;
};

std::vector<CMatrix> extract_I(const ParamFamily& family, const FDScheme& scheme);
std::vector<std::vector<Vec4>> extract_h(const ParamFamily& family, const FDScheme& scheme,
                                         const std::vector<Vec4>& points);
std::vector<std::vector<double>> extract_delta(const ParamFamily& family, const FDScheme& scheme,
                                               const std::vector<Vec4>& points);

/// All of the above. Translation coefficients are collected for parameters
/// whose label starts with "a^".
GeneratorCoefficients extract_coefficients(const ParamFamily& family, const FDScheme& scheme,
                                           const std::vector<Vec4>& points);

/// b -> H(b), a family of 4x4 matrices with H(b0) = 1.
struct LinearFamily {
    Eigen::VectorXd identity;
    std::function<Mat4(const Eigen::VectorXd&)> matrix;
};

struct DetTraceResult {
    std::vector<double> det_rate;
    std::vector<double> trace_rate;
    std::vector<double> residual;

    double max_residual() const;
};

/// Compares d det H / db^w with d Tr H / db^w at b0 for each parameter.
/// Throws InvalidFamily when H(b0) differs from the identity by more than 1e-12.
DetTraceResult det_trace_identity_check(const LinearFamily& family, const FDScheme& scheme);

/// Ten-parameter Poincare family b = (omega^01..omega^23, a^0..a^3):
/// H_b(r) = Lambda(omega) r + a, I(b) = rep(omega), independent of a.
/// Throws InvalidArgument for phase reps. When `analytic_rep_derivative` is set
/// the family also carries the exact generators (scalar, vector, spinor).
ParamFamily poincare_family(const FieldRep& rep, bool analytic_rep_derivative = false);

/// Frame-only Poincare family: identical parameters and I(b), but the point
/// map is the identity (bundle frame changes leave points fixed).
ParamFamily bundle_family(const FieldRep& rep);

/// H_b = identity, I(b) from a phase or custom rep's internal parameters.
/// Phase families carry the exact generator -(q / (i e)).
ParamFamily internal_family(const FieldRep& rep);

/// One-parameter internal family I(b) = 1 exp(f(b) - f(b0)).
ParamFamily exponent_family(int dimension, std::function<double(double)> f, double b0);

/// H_b(r) = r + b, I = 1.
ParamFamily translation_family(int dimension);

/// H_b(r) = e^b r, I = 1. Carries the exact rates h = r and Delta = 4.
ParamFamily dilation_family(int dimension);

/// H_b(r) = diag(.., e^b on `axis`, ..) r, I = 1. Carries the exact Delta = 1.
ParamFamily axis_scaling_family(int dimension, int axis);

}  // namespace covkit
