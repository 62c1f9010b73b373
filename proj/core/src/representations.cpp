#include "covkit/representations.hpp"

#include "covkit/errors.hpp"

#include <cmath>
#include <utility>

namespace covkit {

namespace {

constexpr Complex kI{0.0, 1.0};

CMatrix pauli(int k) {
    CMatrix s = CMatrix::Zero(2, 2);
    switch (k) {
        case 1: s << 0.0, 1.0, 1.0, 0.0; break;
        case 2: s << 0.0, -kI, kI, 0.0; break;
        default: s << 1.0, 0.0, 0.0, -1.0; break;
    }
    return s;
}

CMatrix spinor_matrix(const SpinorRep& rep, const LorentzParams& omega) {
    // Generator construction is cheap relative to the exponential; no caching.
    const SigmaTensor sigma(rep.gamma);
    const Complex coefficient =
        rep.exponent == SpinorExponent::kMinusIHalfSigma ? Complex(0.0, -0.5) : Complex(0.5, 0.0);
    CMatrix x = CMatrix::Zero(4, 4);
    for (std::size_t i = 0; i < kLorentzPlanes.size(); ++i) {
        const Plane p = kLorentzPlanes[i];
        x += coefficient * omega(static_cast<Eigen::Index>(i)) * sigma(p.alpha, p.beta);
    }
    return expm(x);
}

}  // namespace

GammaBasis GammaBasis::dirac() {
    const CMatrix id2 = CMatrix::Identity(2, 2);
    const CMatrix zero2 = CMatrix::Zero(2, 2);
    std::array<CMatrix, 4> gamma;
    gamma[0] = CMatrix::Zero(4, 4);
    gamma[0] << id2, zero2, zero2, -id2;
    for (int k = 1; k <= 3; ++k) {
        CMatrix g(4, 4);
        g << zero2, pauli(k), -pauli(k), zero2;
        gamma[static_cast<std::size_t>(k)] = g;
    }
    for (auto& g : gamma) g *= kI;
    return GammaBasis(std::move(gamma));
}

GammaBasis::GammaBasis(std::array<CMatrix, 4> gamma) : gamma_(std::move(gamma)) {
    for (const auto& g : gamma_) {
        if (g.rows() != 4 || g.cols() != 4) throw InvalidArgument("gamma matrices must be 4x4");
    }
}

double GammaBasis::anticommutator_residual() const {
    double worst = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = mu; nu < 4; ++nu) {
            const CMatrix anti = gamma(mu) * gamma(nu) + gamma(nu) * gamma(mu);
            const CMatrix target = 2.0 * Metric::component(mu, nu) * CMatrix::Identity(4, 4);
            worst = std::max(worst, max_abs(CMatrix(anti - target)));
        }
    }
    return worst;
}

SigmaTensor::SigmaTensor(const GammaBasis& basis) {
    for (int mu = 0; mu < 4; ++mu) {
        sigma_[static_cast<std::size_t>(4 * mu + mu)] = CMatrix::Zero(4, 4);
        for (int nu = mu + 1; nu < 4; ++nu) {
            const CMatrix s = 0.5 * (basis.gamma(mu) * basis.gamma(nu) - basis.gamma(nu) * basis.gamma(mu));
            sigma_[static_cast<std::size_t>(4 * mu + nu)] = s;
            sigma_[static_cast<std::size_t>(4 * nu + mu)] = -s;
        }
    }
}

const CMatrix& SigmaTensor::operator()(int mu, int nu) const {
    if (mu < 0 || mu > 3 || nu < 0 || nu > 3) throw InvalidArgument("sigma index out of range");
    return sigma_[static_cast<std::size_t>(4 * mu + nu)];
}

std::string to_string(RepKind kind) {
    switch (kind) {
        case RepKind::kScalar: return "scalar";
        case RepKind::kVector: return "vector";
        case RepKind::kSpinor: return "spinor";
        case RepKind::kPhase: return "phase";
        case RepKind::kCustom: return "custom";
    }
    return "unknown";
}

FieldRep FieldRep::scalar() { return FieldRep(ScalarRep{}); }
FieldRep FieldRep::vector() { return FieldRep(VectorRep{}); }

FieldRep FieldRep::spinor(SpinorExponent exponent, GammaBasis gamma) {
    return FieldRep(SpinorRep{std::move(gamma), exponent});
}

FieldRep FieldRep::phase(double charge, double unit_charge) {
    if (!std::isfinite(charge) || !std::isfinite(unit_charge)) {
        throw InvalidArgument("phase rep: charge and unit charge must be finite");
    }
    if (unit_charge == 0.0) throw InvalidArgument("phase rep: unit charge must be nonzero");
    return FieldRep(PhaseRep{charge, unit_charge});
}

FieldRep FieldRep::custom(CustomRep rep) {
    if (rep.dimension < 1) throw InvalidArgument("custom rep: dimension must be positive");
    if (rep.internal_parameters < 0) throw InvalidArgument("custom rep: negative internal parameter count");
    if (!rep.rule) throw InvalidArgument("custom rep: missing rule");
    GroupParams zero;
    zero.internal = Eigen::VectorXd::Zero(rep.internal_parameters);
    const CMatrix at_zero = rep.rule(zero);
    if (at_zero.rows() != rep.dimension || at_zero.cols() != rep.dimension) {
        throw InvalidArgument("custom rep: rule returned a matrix of the wrong size");
    }
    const double residual = max_abs(CMatrix(at_zero - CMatrix::Identity(rep.dimension, rep.dimension)));
    if (!(residual <= 1e-12)) {
        throw InvalidArgument("custom rep '" + rep.name + "' is not the identity at zero parameters");
    }
    return FieldRep(std::move(rep));
}

RepKind FieldRep::kind() const { return static_cast<RepKind>(variant_.index()); }

int FieldRep::dimension() const {
    switch (kind()) {
        case RepKind::kScalar:
        case RepKind::kPhase: return 1;
        case RepKind::kVector:
        case RepKind::kSpinor: return 4;
        case RepKind::kCustom: return std::get<CustomRep>(variant_).dimension;
    }
    return 0;
}

int FieldRep::internal_parameters() const {
    if (kind() == RepKind::kPhase) return 1;
    if (kind() == RepKind::kCustom) return std::get<CustomRep>(variant_).internal_parameters;
    return 0;
}

std::string FieldRep::name() const {
    if (kind() == RepKind::kCustom) return std::get<CustomRep>(variant_).name;
    return to_string(kind());
}

CMatrix rep_matrix(const FieldRep& rep, const GroupParams& params) {
    if (!params.all_finite()) throw InvalidArgument("rep_matrix: non-finite parameters");
    return std::visit(
        [&](const auto& r) -> CMatrix {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, ScalarRep>) {
                return CMatrix::Identity(1, 1);
            } else if constexpr (std::is_same_v<T, VectorRep>) {
                return lorentz_exp(params.omega).matrix().cast<Complex>();
            } else if constexpr (std::is_same_v<T, SpinorRep>) {
                return spinor_matrix(r, params.omega);
            } else if constexpr (std::is_same_v<T, PhaseRep>) {
                if (params.internal.size() < 1) throw InvalidArgument("phase rep needs the internal parameter b");
                const double b = params.internal(0);
                const Complex exponent = -(r.charge / (kI * r.unit_charge)) * b;
                return CMatrix::Constant(1, 1, std::exp(exponent));
            } else {
                GroupParams p = params;
                if (p.internal.size() < r.internal_parameters) {
                    Eigen::VectorXd padded = Eigen::VectorXd::Zero(r.internal_parameters);
                    padded.head(p.internal.size()) = p.internal;
                    p.internal = padded;
                }
                CMatrix m = r.rule(p);
                if (m.rows() != r.dimension || m.cols() != r.dimension) {
                    throw InvalidArgument("custom rep: rule returned a matrix of the wrong size");
                }
                return m;
            }
        },
        rep.variant());
}

CMatrix dual_rep_matrix(const FieldRep& rep, const GroupParams& params) {
    return rep_matrix(rep, params).transpose();
}

HomomorphismResult homomorphism_check(const FieldRep& rep, const GroupParams& g1, const GroupParams& g2) {
    const LorentzTransform l1 = lorentz_exp(g1.omega);
    const LorentzTransform l2 = lorentz_exp(g2.omega);

    GroupParams product;
    product.omega = lorentz_log(l1 * l2);
    product.translation = l1.apply(g2.translation) + g1.translation;
    const Eigen::Index n_internal = std::max(g1.internal.size(), g2.internal.size());
    product.internal = Eigen::VectorXd::Zero(n_internal);
    product.internal.head(g1.internal.size()) += g1.internal;
    product.internal.head(g2.internal.size()) += g2.internal;

    const CMatrix lhs = rep_matrix(rep, g1) * rep_matrix(rep, g2);
    const CMatrix rhs = rep_matrix(rep, product);

    HomomorphismResult result{max_abs(CMatrix(lhs - rhs)), 1};
    if (rep.kind() == RepKind::kSpinor) {
        const double flipped = max_abs(CMatrix(lhs + rhs));
        if (flipped < result.residual) result = {flipped, -1};
    }
    return result;
}

}  // namespace covkit
