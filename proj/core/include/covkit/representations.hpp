#pragma once

// Representation matrices acting on field components.

#include "covkit/geometry.hpp"
#include "covkit/numerics.hpp"

#include <array>
#include <functional>
#include <string>
#include <variant>

namespace covkit {

/// Four complex 4x4 matrices with {gamma_mu, gamma_nu} = 2 eta_{mu nu} 1.
class GammaBasis {
public:
    /// Dirac basis multiplied by i, which moves the Clifford relation to the
    /// (-+++) signature: gamma_0 is anti-Hermitian, gamma_j Hermitian.
    static GammaBasis dirac();

    /// Takes arbitrary matrices; use anticommutator_residual() to validate.
    explicit GammaBasis(std::array<CMatrix, 4> gamma);

    const CMatrix& gamma(int mu) const { return gamma_.at(static_cast<std::size_t>(mu)); }

    /// max over mu <= nu of max |{gamma_mu, gamma_nu} - 2 eta_{mu nu} 1|.
    double anticommutator_residual() const;

private:
    std::array<CMatrix, 4> gamma_;
};

/// sigma_{mu nu} = 1/2 [gamma_mu, gamma_nu], antisymmetric by construction.
class SigmaTensor {
public:
    explicit SigmaTensor(const GammaBasis& basis);

    const CMatrix& operator()(int mu, int nu) const;

private:
    std::array<CMatrix, 16> sigma_;
};

/// Coefficient multiplying sigma_{alpha beta} in the spinor exponent.
///
/// kMinusIHalfSigma: exp(-(i/2) sum_{alpha<beta} omega^{alpha beta} sigma_{alpha beta}),
///   whose generators are the standard spin-1/2 coefficient table -(i/2) sigma.
///   In the (-+++) signature this is not a homomorphism off a single plane.
/// kHalfSigma: exp((1/2) sum omega sigma), the genuine double cover of the
///   vector representation in the J basis.
enum class SpinorExponent { kMinusIHalfSigma, kHalfSigma };

/// Group parameters understood by every representation: Lorentz parameters,
/// a translation, and any number of internal parameters (phase b first).
struct GroupParams {
    LorentzParams omega = LorentzParams::Zero();
    Vec4 translation = Vec4::Zero();
    Eigen::VectorXd internal;

    static GroupParams lorentz(const LorentzParams& omega) { return {omega, Vec4::Zero(), {}}; }
    static GroupParams poincare(const PoincareParams& p) { return {p.omega, p.translation, {}}; }
    static GroupParams phase(double b) { return {LorentzParams::Zero(), Vec4::Zero(), Eigen::VectorXd::Constant(1, b)}; }

    bool all_finite() const {
        return omega.allFinite() && translation.allFinite() && internal.allFinite();
    }
};

struct ScalarRep {};
struct VectorRep {};
struct SpinorRep {
    GammaBasis gamma = GammaBasis::dirac();
    SpinorExponent exponent = SpinorExponent::kMinusIHalfSigma;
};
/// I(b) = exp(-(q / (i e)) b) on a single component.
struct PhaseRep {
    double charge = 1.0;
    double unit_charge = 1.0;
};
struct CustomRep {
    int dimension = 1;
    int internal_parameters = 0;
    std::function<CMatrix(const GroupParams&)> rule;
    std::string name = "custom";
};

enum class RepKind { kScalar, kVector, kSpinor, kPhase, kCustom };

std::string to_string(RepKind kind);

/// A representation rule mapping group parameters to an n x n complex matrix.
class FieldRep {
public:
    static FieldRep scalar();
    static FieldRep vector();
    static FieldRep spinor(SpinorExponent exponent = SpinorExponent::kMinusIHalfSigma,
                           GammaBasis gamma = GammaBasis::dirac());
    /// Throws InvalidArgument when the unit charge is zero or either value is non-finite.
    static FieldRep phase(double charge, double unit_charge);
    /// Validates the rule: it must return an n x n identity (within 1e-12) at zero parameters.
    static FieldRep custom(CustomRep rep);

    RepKind kind() const;
    int dimension() const;
    /// Internal parameter count: 1 for phase, user supplied for custom, else 0.
    int internal_parameters() const;
    std::string name() const;

    const std::variant<ScalarRep, VectorRep, SpinorRep, PhaseRep, CustomRep>& variant() const {
        return variant_;
    }

private:
    template <typename T>
    explicit FieldRep(T rep) : variant_(std::move(rep)) {}

    std::variant<ScalarRep, VectorRep, SpinorRep, PhaseRep, CustomRep> variant_;
};

/// Evaluate the representation. Throws InvalidArgument on non-finite
/// parameters or when a phase rep receives no internal parameter.
CMatrix rep_matrix(const FieldRep& rep, const GroupParams& params);

/// Transpose (not conjugate transpose) of rep_matrix.
CMatrix dual_rep_matrix(const FieldRep& rep, const GroupParams& params);

struct HomomorphismResult {
    double residual = 0.0;
    int sign = 1;
};

/// Compares rep(g1) rep(g2) with sign * rep(g1 g2). The product element is
/// formed in the group: Lorentz parts via the matrix product and principal
/// logarithm, translations via the Poincare law, internal parameters
/// additively. The sign is fixed to +1 except for spinors, which try both.
HomomorphismResult homomorphism_check(const FieldRep& rep, const GroupParams& g1, const GroupParams& g2);

}  // namespace covkit
