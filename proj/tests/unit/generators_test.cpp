#include "covkit/errors.hpp"
#include "covkit/fields.hpp"
#include "covkit/generators.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace covkit {
namespace {

constexpr Complex kI{0.0, 1.0};

const std::vector<Vec4>& points() {
    static const std::vector<Vec4> p = sample_points(30, Vec4::Constant(-2.0), Vec4::Constant(2.0), 12);
    return p;
}

// Independent evaluation of delta^sigma_alpha eta_{beta rho} - delta^sigma_beta eta_{alpha rho}.
double vector_coefficient(int alpha, int beta, int sigma, int rho) {
    auto delta = [](int i, int j) { return i == j ? 1.0 : 0.0; };
    auto eta = [](int i, int j) { return i != j ? 0.0 : (i == 0 ? -1.0 : 1.0); };
    return delta(sigma, alpha) * eta(beta, rho) - delta(sigma, beta) * eta(alpha, rho);
}

TEST(FDScheme, Validation) {
    EXPECT_NO_THROW(FDScheme{}.validate());
    EXPECT_THROW((FDScheme{1e-13, 2, {}}).validate(), InvalidScheme);
    EXPECT_THROW((FDScheme{1e-4, 3, {}}).validate(), InvalidScheme);
    EXPECT_THROW((FDScheme{-1e-4, 2, {}}).validate(), InvalidScheme);
    EXPECT_THROW((FDScheme{1e-4, 2, {1e-4, 0.0}}).validate(), InvalidScheme);
    EXPECT_THROW((FDScheme{std::nan(""), 2, {}}).validate(), InvalidScheme);
    const FDScheme s{1e-4, 2, {1e-3, 2e-3}};
    EXPECT_EQ(s.step_for(1), 2e-3);
}

TEST(ExtractI, StepUnderflowRejected) {
    EXPECT_THROW(extract_I(poincare_family(FieldRep::scalar()), FDScheme{1e-13, 2, {}}), InvalidScheme);
}

TEST(ExtractI, ScalarPoincareIsZero) {
    for (const auto& c : extract_I(poincare_family(FieldRep::scalar()), FDScheme{})) EXPECT_LE(max_abs(c), 1e-8);
}

TEST(ExtractI, VectorPoincareReproducesFullTable) {
    const auto coeffs = extract_I(poincare_family(FieldRep::vector()), FDScheme{});
    ASSERT_EQ(coeffs.size(), 10u);
    EXPECT_NEAR(coeffs[0](0, 1).real(), 1.0, 1e-8);
    for (std::size_t w = 0; w < 6; ++w) {
        const Plane p = kLorentzPlanes[w];
        for (int sigma = 0; sigma < 4; ++sigma) {
            for (int rho = 0; rho < 4; ++rho) {
                EXPECT_LE(std::abs(coeffs[w](sigma, rho) - vector_coefficient(p.alpha, p.beta, sigma, rho)), 1e-8);
            }
        }
    }
    for (std::size_t w = 6; w < 10; ++w) EXPECT_EQ(max_abs(coeffs[w]), 0.0);
}

TEST(ExtractI, SpinorPoincareReproducesSigmaTable) {
    const SigmaTensor sigma(GammaBasis::dirac());
    const auto coeffs = extract_I(poincare_family(FieldRep::spinor()), FDScheme{});
    for (std::size_t w = 0; w < 6; ++w) {
        const Plane p = kLorentzPlanes[w];
        EXPECT_LE(max_abs(CMatrix(coeffs[w] - (-0.5 * kI) * sigma(p.alpha, p.beta))), 1e-8);
    }
    const auto covering = extract_I(poincare_family(FieldRep::spinor(SpinorExponent::kHalfSigma)), FDScheme{});
    for (std::size_t w = 0; w < 6; ++w) {
        const Plane p = kLorentzPlanes[w];
        EXPECT_LE(max_abs(CMatrix(covering[w] - 0.5 * sigma(p.alpha, p.beta))), 1e-8);
    }
}

TEST(ExtractI, AnalyticDerivativeUsedWhenSupplied) {
    const auto fd = extract_I(poincare_family(FieldRep::spinor()), FDScheme{});
    const auto exact = extract_I(poincare_family(FieldRep::spinor(), true), FDScheme{});
    for (std::size_t w = 0; w < fd.size(); ++w) EXPECT_LE(max_abs(CMatrix(fd[w] - exact[w])), 1e-8);
}

TEST(ExtractI, SecondOrderConvergenceOnSpinorFamily) {
    const ParamFamily fd_family = poincare_family(FieldRep::spinor());
    const auto exact = extract_I(poincare_family(FieldRep::spinor(), true), FDScheme{});
    auto error = [&](double h) {
        const auto c = extract_I(fd_family, FDScheme{h, 2, {}});
        double worst = 0.0;
        for (std::size_t w = 0; w < 6; ++w) worst = std::max(worst, max_abs(CMatrix(c[w] - exact[w])));
        return worst;
    };
    const double ratio = error(1e-2) / error(5e-3);
    EXPECT_GE(ratio, 3.5);
    EXPECT_LE(ratio, 4.5);
}

TEST(ExtractI, PhaseCoefficient) {
    const double q = 2.0, e = 0.5;
    const ParamFamily fam = internal_family(FieldRep::phase(q, e));
    const auto c = extract_I(fam, FDScheme{});
    ASSERT_EQ(c.size(), 1u);
    EXPECT_LE(std::abs(c[0](0, 0) - (-q / (kI * e))), 1e-10);

    // Differencing the rep map itself, without the analytic generator.
    ParamFamily numeric = fam;
    numeric.rep_derivative = nullptr;
    const auto c2 = extract_I(numeric, FDScheme{});
    EXPECT_LE(std::abs(c2[0](0, 0) - (-q / (kI * e))), std::pow(q / e, 3) * 1e-8 / 6.0 * 1.01);
    const auto c4 = extract_I(numeric, FDScheme{1e-3, 4, {}});
    EXPECT_LE(std::abs(c4[0](0, 0) - (-q / (kI * e))), 1e-10);
}

TEST(ExtractI, ExponentFamilyReadsDerivative) {
    const auto stationary = extract_I(exponent_family(2, [](double b) { return b * b; }, 0.0), FDScheme{});
    EXPECT_LE(max_abs(stationary[0]), 1e-8);
    const auto sloped = extract_I(exponent_family(2, [](double b) { return std::sin(b); }, 0.3), FDScheme{});
    EXPECT_LE(max_abs(CMatrix(sloped[0] - std::cos(0.3) * CMatrix::Identity(2, 2))), 1e-8);
}

TEST(ExtractH, Translation) {
    const auto h = extract_h(translation_family(1), FDScheme{}, points());
    for (int mu = 0; mu < 4; ++mu) {
        for (const auto& v : h[static_cast<std::size_t>(mu)]) EXPECT_LE(max_abs(Vec4(v - Vec4::Unit(mu))), 1e-11);
    }
}

TEST(ExtractH, LorentzGeneratorTimesPoint) {
    const auto h = extract_h(poincare_family(FieldRep::scalar()), FDScheme{}, points());
    for (std::size_t w = 0; w < 6; ++w) {
        const Mat4& j = LorentzGenerator(kLorentzPlanes[w]).matrix();
        for (std::size_t k = 0; k < points().size(); ++k) {
            EXPECT_LE(max_abs(Vec4(h[w][k] - j * points()[k])), 1e-8);
        }
    }
    for (std::size_t mu = 0; mu < 4; ++mu) {
        for (const auto& v : h[6 + mu]) EXPECT_LE(max_abs(Vec4(v - Vec4::Unit(static_cast<Eigen::Index>(mu)))), 1e-10);
    }
}

TEST(ExtractH, Dilation) {
    const auto h = extract_h(dilation_family(1), FDScheme{}, points());
    for (std::size_t k = 0; k < points().size(); ++k) EXPECT_LE(max_abs(Vec4(h[0][k] - points()[k])), 1e-8);
}

TEST(ExtractDelta, KnownFamilies) {
    for (const auto& rep : {FieldRep::scalar(), FieldRep::vector(), FieldRep::spinor()}) {
        for (const auto& per_param : extract_delta(poincare_family(rep), FDScheme{}, points())) {
            for (double d : per_param) EXPECT_LE(std::abs(d), 1e-8);
        }
    }
    const auto dilation = extract_delta(dilation_family(1), FDScheme{}, points());
    for (double d : dilation[0]) EXPECT_NEAR(d, 4.0, 1e-8);
    const auto scaling = extract_delta(axis_scaling_family(1, 0), FDScheme{}, points());
    for (double d : scaling[0]) EXPECT_NEAR(d, 1.0, 1e-8);
}

TEST(ExtractDelta, DifferencedJacobianWithoutAnalyticRate) {
    ParamFamily dilation = dilation_family(1);
    dilation.jacobian_rate = nullptr;
    dilation.point_derivative = nullptr;
    const auto order2 = extract_delta(dilation, FDScheme{}, points());
    // Truncation error of the 3-point stencil on e^{4b}: 64 h^2 / 6.
    for (double d : order2[0]) EXPECT_NEAR(d, 4.0, 64.0 * 1e-8 / 6.0 * 1.01);
    const auto order4 = extract_delta(dilation, FDScheme{1e-3, 4, {}}, points());
    for (double d : order4[0]) EXPECT_NEAR(d, 4.0, 1e-8);
    const auto h = extract_h(dilation, FDScheme{}, points());
    for (std::size_t k = 0; k < points().size(); ++k) EXPECT_LE(max_abs(Vec4(h[0][k] - points()[k])), 1e-8);

    ParamFamily scaling = axis_scaling_family(1, 2);
    scaling.jacobian_rate = nullptr;
    const auto s = extract_delta(scaling, FDScheme{}, points());
    for (double d : s[0]) EXPECT_NEAR(d, 1.0, 1e-8);
}

TEST(ExtractDelta, NestedDifferencesForNonAffineMap) {
    // H_b(r) = r + b (sin r^0, 0, 0, 0): det = 1 + b cos r^0, so Delta = cos r^0.
    ParamFamily f;
    f.name = "warp";
    f.dimension = 1;
    f.identity = Eigen::VectorXd::Zero(1);
    f.labels = {"b"};
    f.point_map = [](const Eigen::VectorXd& b, const Vec4& r) {
        Vec4 out = r;
        out(0) += b(0) * std::sin(r(0));
        return out;
    };
    f.rep_map = [](const Eigen::VectorXd&) { return CMatrix(CMatrix::Identity(1, 1)); };
    const auto delta = extract_delta(f, FDScheme{}, points());
    for (std::size_t k = 0; k < points().size(); ++k) EXPECT_NEAR(delta[0][k], std::cos(points()[k](0)), 1e-6);
}

TEST(InternalFamily, NoMotion) {
    const ParamFamily f = internal_family(FieldRep::phase(1.0, 1.0));
    const auto c = extract_coefficients(f, FDScheme{}, points());
    for (const auto& v : c.transport[0]) EXPECT_EQ(v, Vec4::Zero());
    for (double d : c.jacobian_rate[0]) EXPECT_EQ(d, 0.0);
}

TEST(InternalFamily, RejectsSpacetimeReps) {
    EXPECT_THROW(internal_family(FieldRep::vector()), InvalidArgument);
    EXPECT_THROW(poincare_family(FieldRep::phase(1.0, 1.0)), InvalidArgument);
}

TEST(PoincareFamily, Structure) {
    const ParamFamily f = poincare_family(FieldRep::vector());
    EXPECT_EQ(f.parameters(), 10);
    EXPECT_EQ(f.labels[0], "omega^01");
    EXPECT_EQ(f.labels[9], "a^3");
    EXPECT_NO_THROW(f.validate());
    EXPECT_LE(max_abs(CMatrix(f.rep_map(f.identity) - CMatrix::Identity(4, 4))), 1e-12);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(10);
    b(0) = 0.5;
    b(6) = 1.0;
    EXPECT_LE(max_abs(Vec4(f.point_map(b, Vec4::Zero()) - Vec4(1, 0, 0, 0))), 1e-15);
    // The rep ignores translation parameters.
    Eigen::VectorXd shifted = b;
    shifted.tail<4>() = Vec4(3.0, -1.0, 2.0, 0.5);
    EXPECT_EQ(f.rep_map(b), f.rep_map(shifted));
    const auto c = extract_coefficients(f, FDScheme{}, points());
    ASSERT_EQ(c.translation.size(), 4u);
    for (const auto& t : c.translation) EXPECT_EQ(max_abs(t), 0.0);
}

TEST(ParamFamily, ValidateRejectsNonIdentity) {
    ParamFamily f = translation_family(1);
    f.rep_map = [](const Eigen::VectorXd&) { return CMatrix(2.0 * CMatrix::Identity(1, 1)); };
    EXPECT_THROW(f.validate(), InvalidFamily);
    ParamFamily g = dilation_family(1);
    g.identity = Eigen::VectorXd::Constant(1, 0.5);
    EXPECT_THROW(g.validate(), InvalidFamily);
}

TEST(DetTrace, Families) {
    LinearFamily dilation{Eigen::VectorXd::Zero(1), [](const Eigen::VectorXd& b) { return Mat4(std::exp(b(0)) * Mat4::Identity()); }};
    // e^{4b} has third derivative 64, so the order-2 stencil at 1e-4 is off by ~1e-7.
    const DetTraceResult d2 = det_trace_identity_check(dilation, FDScheme{});
    EXPECT_NEAR(d2.det_rate[0], 4.0 + 64.0 * 1e-8 / 6.0, 1e-10);
    const DetTraceResult d = det_trace_identity_check(dilation, FDScheme{1e-4, 4, {}});
    EXPECT_NEAR(d.det_rate[0], 4.0, 1e-10);
    EXPECT_NEAR(d.trace_rate[0], 4.0, 1e-10);
    EXPECT_LE(d.max_residual(), 1e-8);

    LinearFamily lorentz{Eigen::VectorXd::Zero(6), [](const Eigen::VectorXd& b) {
                             return lorentz_exp(LorentzParams(b.head<6>())).matrix();
                         }};
    const DetTraceResult l = det_trace_identity_check(lorentz, FDScheme{});
    EXPECT_LE(l.max_residual(), 1e-8);
    for (double t : l.trace_rate) EXPECT_LE(std::abs(t), 1e-8);

    Mat4 n = Mat4::Zero();
    n(0, 1) = 1.0;
    n(1, 3) = -2.0;
    n(0, 2) = 0.5;
    LinearFamily nilpotent{Eigen::VectorXd::Zero(1), [n](const Eigen::VectorXd& b) { return Mat4(Mat4::Identity() + b(0) * n); }};
    EXPECT_LE(det_trace_identity_check(nilpotent, FDScheme{}).max_residual(), 1e-10);
}

TEST(DetTrace, IdentityPreconditionEnforced) {
    LinearFamily off{Eigen::VectorXd::Zero(1), [](const Eigen::VectorXd& b) { return Mat4((2.0 + b(0)) * Mat4::Identity()); }};
    EXPECT_THROW(det_trace_identity_check(off, FDScheme{}), InvalidFamily);
}

}  // namespace
}  // namespace covkit
