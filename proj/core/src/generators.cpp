#include "covkit/generators.hpp"

#include "covkit/errors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace covkit {

void FDScheme::validate() const {
    if (order != 2 && order != 4) throw InvalidScheme("finite-difference order must be 2 or 4");
    auto check = [](double h) {
        if (!std::isfinite(h) || !(h >= 1e-12)) {
            throw InvalidScheme("finite-difference step must be finite and at least 1e-12");
        }
    };
    check(step);
    for (double h : per_parameter) check(h);
}

double FDScheme::step_for(int parameter) const {
    if (per_parameter.empty()) return step;
    return per_parameter.at(static_cast<std::size_t>(parameter));
}

void ParamFamily::validate() const {
    if (!point_map || !rep_map) throw InvalidFamily("family '" + name + "' is missing a point or rep map");
    if (!identity.allFinite()) throw InvalidFamily("family '" + name + "' has non-finite identity parameters");
    if (!labels.empty() && static_cast<int>(labels.size()) != parameters()) {
        throw InvalidFamily("family '" + name + "' has a label count that differs from its parameter count");
    }
    static const std::array<Vec4, 3> probes{Vec4::Zero(), Vec4(1.0, -2.0, 0.5, 3.0), Vec4(-0.7, 0.3, 1.9, -1.1)};
    for (const auto& r : probes) {
        if (max_abs(Vec4(point_map(identity, r) - r)) > 1e-12 * (1.0 + max_abs(r))) {
            throw InvalidFamily("family '" + name + "': point map is not the identity at b0");
        }
    }
    const CMatrix at_identity = rep_map(identity);
    if (at_identity.rows() != dimension || at_identity.cols() != dimension) {
        throw InvalidFamily("family '" + name + "': rep map has the wrong size");
    }
    if (max_abs(CMatrix(at_identity - CMatrix::Identity(dimension, dimension))) > 1e-12) {
        throw InvalidFamily("family '" + name + "': rep map is not the identity at b0");
    }
}

Eigen::VectorXd ParamFamily::displaced(int parameter, double t) const {
    Eigen::VectorXd b = identity;
    b(parameter) += t;
    return b;
}

double ParamFamily::jacobian_determinant(const Eigen::VectorXd& b, const Vec4& r) const {
    if (spatial_jacobian) return spatial_jacobian(b, r).determinant();
    constexpr double inner = 1e-5;
    Mat4 jac;
    for (int l = 0; l < 4; ++l) {
        const Vec4 e = Vec4::Unit(l);
        jac.col(l) = central_difference([&](double t) { return Vec4(point_map(b, r + t * e)); }, inner, 2);
    }
    return jac.determinant();
}

std::vector<CMatrix> extract_I(const ParamFamily& family, const FDScheme& scheme) {
    scheme.validate();
    family.validate();
    std::vector<CMatrix> out;
    out.reserve(static_cast<std::size_t>(family.parameters()));
    for (int w = 0; w < family.parameters(); ++w) {
        if (family.rep_derivative) {
            out.push_back(family.rep_derivative(w));
            continue;
        }
        out.push_back(central_difference(
            [&](double t) { return CMatrix(family.rep_map(family.displaced(w, t))); }, scheme.step_for(w),
            scheme.order));
    }
    return out;
}

std::vector<std::vector<Vec4>> extract_h(const ParamFamily& family, const FDScheme& scheme,
                                         const std::vector<Vec4>& points) {
    scheme.validate();
    family.validate();
    std::vector<std::vector<Vec4>> out(static_cast<std::size_t>(family.parameters()));
    for (int w = 0; w < family.parameters(); ++w) {
        auto& column = out[static_cast<std::size_t>(w)];
        column.reserve(points.size());
        for (const auto& r : points) {
            if (!r.allFinite()) throw InvalidArgument("extract_h: non-finite sample point");
            if (family.point_derivative) {
                column.push_back(family.point_derivative(w, r));
                continue;
            }
            column.push_back(central_difference(
                [&](double t) { return Vec4(family.point_map(family.displaced(w, t), r)); }, scheme.step_for(w),
                scheme.order));
        }
    }
    return out;
}

std::vector<std::vector<double>> extract_delta(const ParamFamily& family, const FDScheme& scheme,
                                               const std::vector<Vec4>& points) {
    scheme.validate();
    family.validate();
    std::vector<std::vector<double>> out(static_cast<std::size_t>(family.parameters()));
    for (int w = 0; w < family.parameters(); ++w) {
        auto& column = out[static_cast<std::size_t>(w)];
        column.reserve(points.size());
        for (const auto& r : points) {
            if (family.jacobian_rate) {
                column.push_back(family.jacobian_rate(w, r));
                continue;
            }
            column.push_back(central_difference(
                [&](double t) { return family.jacobian_determinant(family.displaced(w, t), r); },
                scheme.step_for(w), scheme.order));
        }
    }
    return out;
}

GeneratorCoefficients extract_coefficients(const ParamFamily& family, const FDScheme& scheme,
                                           const std::vector<Vec4>& points) {
    GeneratorCoefficients c;
    c.rep = extract_I(family, scheme);
    c.transport = extract_h(family, scheme, points);
    c.jacobian_rate = extract_delta(family, scheme, points);
    for (std::size_t w = 0; w < family.labels.size(); ++w) {
        if (family.labels[w].rfind("a^", 0) == 0) c.translation.push_back(c.rep[w]);
    }
    return c;
}

double DetTraceResult::max_residual() const {
    double worst = 0.0;
    for (double r : residual) worst = std::max(worst, r);
    return worst;
}

DetTraceResult det_trace_identity_check(const LinearFamily& family, const FDScheme& scheme) {
    scheme.validate();
    if (!family.matrix) throw InvalidFamily("linear family has no matrix function");
    const Mat4 at_identity = family.matrix(family.identity);
    if (!(max_abs(Mat4(at_identity - Mat4::Identity())) <= 1e-12)) {
        throw InvalidFamily("det_trace_identity_check: H(b0) is not the identity");
    }
    DetTraceResult result;
    const auto s = static_cast<int>(family.identity.size());
    for (int w = 0; w < s; ++w) {
        auto at = [&](double t) {
            Eigen::VectorXd b = family.identity;
            b(w) += t;
            return family.matrix(b);
        };
        const double det_rate =
            central_difference([&](double t) { return at(t).determinant(); }, scheme.step_for(w), scheme.order);
        const double trace_rate =
            central_difference([&](double t) { return at(t).trace(); }, scheme.step_for(w), scheme.order);
        result.det_rate.push_back(det_rate);
        result.trace_rate.push_back(trace_rate);
        result.residual.push_back(std::abs(det_rate - trace_rate));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Families

namespace {

LorentzParams omega_of(const Eigen::VectorXd& b) { return b.head<6>(); }

std::vector<std::string> poincare_labels() {
    std::vector<std::string> labels;
    for (const auto& p : kLorentzPlanes) labels.push_back("omega^" + std::to_string(p.alpha) + std::to_string(p.beta));
    for (int mu = 0; mu < 4; ++mu) labels.push_back("a^" + std::to_string(mu));
    return labels;
}

ParamFamily::RepDerivative analytic_generators(const FieldRep& rep) {
    const int n = rep.dimension();
    std::vector<CMatrix> table(10, CMatrix::Zero(n, n));
    switch (rep.kind()) {
        case RepKind::kScalar: break;
        case RepKind::kVector:
            for (std::size_t i = 0; i < 6; ++i) table[i] = LorentzGenerator::basis()[i].matrix().cast<Complex>();
            break;
        case RepKind::kSpinor: {
            const auto& spinor = std::get<SpinorRep>(rep.variant());
            const SigmaTensor sigma(spinor.gamma);
            const Complex c = spinor.exponent == SpinorExponent::kMinusIHalfSigma ? Complex(0.0, -0.5)
                                                                                  : Complex(0.5, 0.0);
            for (std::size_t i = 0; i < 6; ++i) table[i] = c * sigma(kLorentzPlanes[i].alpha, kLorentzPlanes[i].beta);
            break;
        }
        default:
            throw InvalidArgument("analytic generators are only known for scalar, vector and spinor reps");
    }
    return [table](int w) { return table.at(static_cast<std::size_t>(w)); };
}

ParamFamily identity_family(std::string name, int dimension, int parameters) {
    ParamFamily f;
    f.name = std::move(name);
    f.dimension = dimension;
    f.identity = Eigen::VectorXd::Zero(parameters);
    f.point_map = [](const Eigen::VectorXd&, const Vec4& r) { return r; };
    f.rep_map = [dimension](const Eigen::VectorXd&) { return CMatrix::Identity(dimension, dimension).eval(); };
    f.spatial_jacobian = [](const Eigen::VectorXd&, const Vec4&) { return Mat4::Identity().eval(); };
    return f;
}

}  // namespace

ParamFamily poincare_family(const FieldRep& rep, bool analytic_rep_derivative) {
    if (rep.kind() == RepKind::kPhase) {
        throw InvalidArgument("poincare_family: phase reps carry no Lorentz action; use internal_family");
    }
    ParamFamily f;
    f.name = "poincare/" + rep.name();
    f.dimension = rep.dimension();
    f.identity = Eigen::VectorXd::Zero(10);
    f.labels = poincare_labels();
    f.point_map = [](const Eigen::VectorXd& b, const Vec4& r) {
        return Vec4(lorentz_exp(omega_of(b)).apply(r) + b.tail<4>());
    };
    f.rep_map = [rep](const Eigen::VectorXd& b) {
        GroupParams p;
        p.omega = omega_of(b);
        p.translation = b.tail<4>();
        return rep_matrix(rep, p);
    };
    f.spatial_jacobian = [](const Eigen::VectorXd& b, const Vec4&) { return lorentz_exp(omega_of(b)).matrix(); };
    if (analytic_rep_derivative) {
        f.rep_derivative = analytic_generators(rep);
        f.point_derivative = [](int w, const Vec4& r) -> Vec4 {
            if (w < 6) return LorentzGenerator::basis()[static_cast<std::size_t>(w)].matrix() * r;
            return Vec4::Unit(w - 6);
        };
    }
    return f;
}

ParamFamily bundle_family(const FieldRep& rep) {
    if (rep.kind() == RepKind::kPhase) {
        throw InvalidArgument("bundle_family: phase reps carry no Lorentz action; use internal_family");
    }
    ParamFamily f = identity_family("bundle/" + rep.name(), rep.dimension(), 10);
    f.labels = poincare_labels();
    f.rep_map = [rep](const Eigen::VectorXd& b) { return rep_matrix(rep, GroupParams::lorentz(omega_of(b))); };
    return f;
}

ParamFamily internal_family(const FieldRep& rep) {
    const int s = rep.internal_parameters();
    if (s < 1) throw InvalidArgument("internal_family: rep '" + rep.name() + "' has no internal parameter");
    ParamFamily f = identity_family("internal/" + rep.name(), rep.dimension(), s);
    for (int i = 0; i < s; ++i) f.labels.push_back(s == 1 ? std::string("b") : "b^" + std::to_string(i + 1));
    f.rep_map = [rep](const Eigen::VectorXd& b) {
        GroupParams p;
        p.internal = b;
        return rep_matrix(rep, p);
    };
    if (rep.kind() == RepKind::kPhase) {
        const auto& phase = std::get<PhaseRep>(rep.variant());
        const CMatrix generator = CMatrix::Constant(1, 1, -phase.charge / Complex(0.0, phase.unit_charge));
        f.rep_derivative = [generator](int) { return generator; };
    }
    return f;
}

ParamFamily exponent_family(int dimension, std::function<double(double)> fn, double b0) {
    if (!fn) throw InvalidArgument("exponent_family: missing exponent function");
    ParamFamily f = identity_family("exponent", dimension, 1);
    f.identity(0) = b0;
    f.labels = {"b"};
    const double at_identity = fn(b0);
    f.rep_map = [dimension, fn, at_identity](const Eigen::VectorXd& b) {
        return (CMatrix::Identity(dimension, dimension) * std::exp(fn(b(0)) - at_identity)).eval();
    };
    return f;
}

ParamFamily translation_family(int dimension) {
    ParamFamily f = identity_family("translation", dimension, 4);
    f.labels = {"a^0", "a^1", "a^2", "a^3"};
    f.point_map = [](const Eigen::VectorXd& b, const Vec4& r) { return Vec4(r + b.head<4>()); };
    return f;
}

ParamFamily dilation_family(int dimension) {
    ParamFamily f = identity_family("dilation", dimension, 1);
    f.labels = {"b"};
    f.point_map = [](const Eigen::VectorXd& b, const Vec4& r) { return Vec4(std::exp(b(0)) * r); };
    f.spatial_jacobian = [](const Eigen::VectorXd& b, const Vec4&) { return Mat4(std::exp(b(0)) * Mat4::Identity()); };
    f.point_derivative = [](int, const Vec4& r) { return r; };
    f.jacobian_rate = [](int, const Vec4&) { return 4.0; };
    return f;
}

ParamFamily axis_scaling_family(int dimension, int axis) {
    if (axis < 0 || axis > 3) throw InvalidArgument("axis_scaling_family: axis must be in 0..3");
    ParamFamily f = identity_family("axis-scaling/" + std::to_string(axis), dimension, 1);
    f.labels = {"b"};
    f.point_map = [axis](const Eigen::VectorXd& b, const Vec4& r) {
        Vec4 out = r;
        out(axis) *= std::exp(b(0));
        return out;
    };
    f.spatial_jacobian = [axis](const Eigen::VectorXd& b, const Vec4&) {
        Mat4 m = Mat4::Identity();
        m(axis, axis) = std::exp(b(0));
        return m;
    };
    f.jacobian_rate = [](int, const Vec4&) { return 1.0; };
    return f;
}

}  // namespace covkit
