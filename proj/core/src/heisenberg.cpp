#include "covkit/heisenberg.hpp"

#include "covkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace covkit {

double RelationReport::sup() const {
    double worst = 0.0;
    for (const auto& p : parameters) worst = std::max(worst, p.sup);
    return worst;
}

bool RelationReport::pass() const {
    if (parameters.empty()) return false;
    return std::all_of(parameters.begin(), parameters.end(), [](const auto& p) { return p.pass; });
}

void RelationReport::finalize() {
    for (auto& p : parameters) p.pass = p.sup <= tolerance;
}

std::string generator_label(const ParamFamily& family, const std::string& parameter_label) {
    if (parameter_label.rfind("omega^", 0) == 0) return "S_" + parameter_label.substr(6);
    if (parameter_label.rfind("a^", 0) == 0) return "T_" + parameter_label.substr(2);
    if (family.name.rfind("internal/", 0) == 0 || family.name == "exponent") {
        return parameter_label == "b" ? "Q" : "Q_" + parameter_label.substr(2);
    }
    return "U_" + parameter_label;
}

namespace {

struct Residuals {
    std::vector<double> sup;
    std::vector<double> rms;
};

std::string label_of(const ParamFamily& family, int w) {
    if (static_cast<std::size_t>(w) < family.labels.size()) return family.labels[static_cast<std::size_t>(w)];
    return "b^" + std::to_string(w + 1);
}

struct Samples {
    std::vector<CVector> values;
    std::vector<CMatrix> gradients;
};

Samples sample_field(const FieldFunction& field, const std::vector<Vec4>& points) {
    Samples s;
    s.values.reserve(points.size());
    s.gradients.reserve(points.size());
    for (const auto& r : points) {
        if (!r.allFinite()) throw InvalidArgument("sample point is not finite");
        CVector v = field(r);
        CMatrix g = field.gradient(r);
        if (!v.allFinite() || !g.allFinite()) throw EvaluationError("field is not finite at a sample point");
        s.values.push_back(std::move(v));
        s.gradients.push_back(std::move(g));
    }
    return s;
}

Residuals local_residuals(const FieldFunction& field, const ParamFamily& family, const FDScheme& scheme,
                          const std::vector<Vec4>& points, const Samples& samples) {
    const GeneratorCoefficients c = extract_coefficients(family, scheme, points);
    Residuals out;
    for (int w = 0; w < family.parameters(); ++w) {
        const auto wi = static_cast<std::size_t>(w);
        double sup = 0.0;
        double sum_sq = 0.0;
        for (std::size_t k = 0; k < points.size(); ++k) {
            const Vec4& r = points[k];
            const CVector lhs = central_difference(
                [&](double t) {
                    const Eigen::VectorXd b = family.displaced(w, t);
                    return CVector(family.jacobian_determinant(b, r) * (family.rep_map(b) * field(family.point_map(b, r))));
                },
                scheme.step_for(w), scheme.order);
            const CVector rhs = c.jacobian_rate[wi][k] * samples.values[k] + c.rep[wi] * samples.values[k] +
                                samples.gradients[k] * c.transport[wi][k].cast<Complex>();
            const double err = max_abs(CVector(lhs - rhs));
            if (!std::isfinite(err)) throw EvaluationError("non-finite residual in local relation");
            sup = std::max(sup, err);
            sum_sq += err * err;
        }
        out.sup.push_back(sup);
        out.rms.push_back(points.empty() ? 0.0 : std::sqrt(sum_sq / static_cast<double>(points.size())));
    }
    return out;
}

void require_points(const std::vector<Vec4>& points) {
    if (points.empty()) throw InvalidArgument("verification needs at least one sample point");
}

void add_correspondences(RelationReport& report, double hbar) {
    for (const auto& p : report.parameters) {
        if (p.generator.rfind("T_", 0) == 0) report.correspondences.push_back({p.generator, "P_" + p.generator.substr(2), hbar});
        if (p.generator.rfind("S_", 0) == 0) report.correspondences.push_back({p.generator, "M_" + p.generator.substr(2), hbar});
        if (p.generator == "Q") report.correspondences.push_back({p.generator, "Q", 1.0});
    }
}

template <typename ResidualFn>
RelationReport assemble(std::string relation, const ParamFamily& family, const FDScheme& scheme,
                        const VerificationOptions& options, ResidualFn&& residuals_at) {
    RelationReport report;
    report.relation = std::move(relation);
    report.tolerance = options.tolerance;
    report.step = scheme.step;
    report.order = scheme.order;
    report.convergence_steps = options.convergence_steps;

    const Residuals main = residuals_at(scheme);
    std::vector<Residuals> table;
    for (double h : options.convergence_steps) {
        FDScheme s = scheme;
        s.step = h;
        s.per_parameter.clear();
        table.push_back(residuals_at(s));
    }
    for (int w = 0; w < family.parameters(); ++w) {
        const auto wi = static_cast<std::size_t>(w);
        ParameterResidual p;
        p.label = label_of(family, w);
        p.generator = generator_label(family, p.label);
        p.sup = main.sup[wi];
        p.rms = main.rms[wi];
        for (const auto& t : table) p.sup_by_step.push_back(t.sup[wi]);
        for (std::size_t k = 0; k + 1 < p.sup_by_step.size(); ++k) {
            const double next = p.sup_by_step[k + 1];
            p.convergence_ratios.push_back(next > 0.0 ? p.sup_by_step[k] / next : 0.0);
        }
        report.parameters.push_back(std::move(p));
    }
    report.finalize();
    add_correspondences(report, options.hbar);
    return report;
}

}  // namespace

RelationReport verify_local_relation(const FieldFunction& field, const ParamFamily& family, const FDScheme& scheme,
                                     const std::vector<Vec4>& points, const VerificationOptions& options) {
    scheme.validate();
    family.validate();
    require_points(points);
    if (field.components() != family.dimension) {
        throw InvalidArgument("verify_local_relation: field has " + std::to_string(field.components()) +
                              " components, family acts on " + std::to_string(family.dimension));
    }
    const Samples samples = sample_field(field, points);
    RelationReport report = assemble("local", family, scheme, options, [&](const FDScheme& s) {
        return local_residuals(field, family, s, points, samples);
    });
    report.metadata["family"] = family.name;
    return report;
}

RelationReport verify_bundle_relation(const FieldFunction& field, const ParamFamily& family, const FDScheme& scheme,
                                      const std::vector<Vec4>& points, const VerificationOptions& options) {
    scheme.validate();
    family.validate();
    require_points(points);
    if (field.components() != family.dimension) {
        throw InvalidArgument("verify_bundle_relation: field has " + std::to_string(field.components()) +
                              " components, family acts on " + std::to_string(family.dimension));
    }
    std::vector<double> probe_steps{scheme.step};
    for (double h : options.convergence_steps) probe_steps.push_back(h);
    for (int w = 0; w < family.parameters(); ++w) {
        for (double h : probe_steps) {
            for (const double t : {-2.0 * h, -h, h, 2.0 * h}) {
                const Eigen::VectorXd b = family.displaced(w, t);
                for (const auto& r : points) {
                    if (max_abs(Vec4(family.point_map(b, r) - r)) > 1e-14 * (1.0 + max_abs(r))) {
                        throw InvalidFamily("verify_bundle_relation: family '" + family.name +
                                            "' moves points; use verify_local_relation");
                    }
                }
            }
        }
    }
    const Samples samples = sample_field(field, points);

    double translation_derivative = 0.0;
    auto residuals_at = [&](const FDScheme& s) {
        const std::vector<CMatrix> coefficients = extract_I(family, s);
        Residuals out;
        for (int w = 0; w < family.parameters(); ++w) {
            const auto wi = static_cast<std::size_t>(w);
            const bool translation = label_of(family, w).rfind("a^", 0) == 0;
            double sup = 0.0;
            double sum_sq = 0.0;
            for (std::size_t k = 0; k < points.size(); ++k) {
                const CVector lhs = central_difference(
                    [&](double t) { return CVector(family.rep_map(family.displaced(w, t)) * samples.values[k]); },
                    s.step_for(w), s.order);
                if (translation) translation_derivative = std::max(translation_derivative, max_abs(lhs));
                const double err = max_abs(CVector(lhs - coefficients[wi] * samples.values[k]));
                sup = std::max(sup, err);
                sum_sq += err * err;
            }
            out.sup.push_back(sup);
            out.rms.push_back(std::sqrt(sum_sq / static_cast<double>(points.size())));
        }
        return out;
    };
    RelationReport report = assemble("bundle", family, scheme, options, residuals_at);
    report.metadata["family"] = family.name;
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", translation_derivative);
    report.metadata["translation_derivative_sup"] = buffer;
    report.metadata["note"] =
        "bundle components carry no transport term; translation generators commute with the field components";
    return report;
}

double frame_independence_check(const FieldFunction& field, const CMatrix& a, const ParamFamily& family,
                                const FDScheme& scheme, const std::vector<Vec4>& points) {
    if (a.rows() != a.cols() || a.rows() != field.components()) {
        throw InvalidArgument("frame_independence_check: frame matrix has the wrong size");
    }
    if (!(std::abs(a.determinant()) > 1e-12)) throw InvalidArgument("frame_independence_check: singular frame matrix");
    if (field.components() != family.dimension) {
        throw InvalidArgument("frame_independence_check: field and family dimensions differ");
    }
    const CMatrix a_inv = a.inverse();
    const std::vector<CMatrix> coefficients = extract_I(family, scheme);
    double worst = 0.0;
    for (const auto& i_w : coefficients) {
        const CMatrix transformed = a_inv * i_w * a;
        for (const auto& r : points) {
            const CVector phi = field(r);
            const CVector frame1 = a_inv * (i_w * phi);
            const CVector frame2 = transformed * (a_inv * phi);
            worst = std::max(worst, max_abs(CVector(frame1 - frame2)));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Matrix models

CMatrix lowering_operator(int dimension) {
    if (dimension < 1) throw InvalidArgument("lowering_operator: dimension must be positive");
    CMatrix a = CMatrix::Zero(dimension, dimension);
    for (int k = 0; k + 1 < dimension; ++k) a(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
    return a;
}

ToyOperatorModel ToyOperatorModel::number_operator(int dimension, double charge, double unit_charge) {
    if (dimension < 1) throw InvalidArgument("toy model dimension must be positive");
    ToyOperatorModel m;
    m.dimension = dimension;
    m.charge = charge;
    m.unit_charge = unit_charge;
    m.charge_operator = CMatrix::Zero(dimension, dimension);
    for (int k = 0; k < dimension; ++k) m.charge_operator(k, k) = charge * static_cast<double>(k);
    m.field_ops = {lowering_operator(dimension)};
    m.validate();
    return m;
}

void ToyOperatorModel::validate() const {
    if (dimension < 1) throw InvalidArgument("toy model dimension must be positive");
    if (charge_operator.rows() != dimension || charge_operator.cols() != dimension) {
        throw InvalidArgument("toy model charge operator has the wrong size");
    }
    for (const auto& op : field_ops) {
        if (op.rows() != dimension || op.cols() != dimension) throw InvalidArgument("toy model field operator has the wrong size");
    }
    if (!std::isfinite(charge) || !std::isfinite(unit_charge) || unit_charge == 0.0) {
        throw InvalidArgument("toy model charge and unit charge must be finite, unit charge nonzero");
    }
}

RelationReport toy_commutator_check(const ToyOperatorModel& model, double tolerance) {
    model.validate();
    RelationReport report;
    report.relation = "toy-commutator";
    report.tolerance = tolerance;
    for (std::size_t i = 0; i < model.field_ops.size(); ++i) {
        const CMatrix& a = model.field_ops[i];
        const CMatrix& q = model.charge_operator;
        CMatrix commutator;
        if (q.isDiagonal(0.0)) {
            commutator = CMatrix(a.rows(), a.cols());
            for (Eigen::Index r = 0; r < a.rows(); ++r)
                for (Eigen::Index c = 0; c < a.cols(); ++c) commutator(r, c) = (q(r, r) - q(c, c)) * a(r, c);
        } else {
            commutator = q * a - a * q;
        }
        const CMatrix residual = commutator + model.charge * a;
        ParameterResidual p;
        p.label = "field_op[" + std::to_string(i) + "]";
        p.generator = "Q";
        p.sup = max_abs(residual);
        p.rms = std::sqrt(residual.cwiseAbs2().sum() / static_cast<double>(residual.size()));
        report.parameters.push_back(std::move(p));
    }
    report.finalize();
    report.correspondences.push_back({"Q", "Q", 1.0});
    report.metadata["model"] = "number-operator";
    return report;
}

RelationReport toy_global_check(const ToyOperatorModel& model, double b, double tolerance) {
    model.validate();
    if (!std::isfinite(b)) throw InvalidArgument("toy_global_check: non-finite b");
    const Complex ie{0.0, model.unit_charge};
    const CMatrix generator = model.charge_operator * (b / ie);
    const CMatrix u = expm(generator);
    const CMatrix u_inv = expm(CMatrix(-generator));
    const Complex phase = std::exp(-model.charge * b / ie);

    RelationReport report;
    report.relation = "toy-global";
    report.tolerance = tolerance;
    for (std::size_t i = 0; i < model.field_ops.size(); ++i) {
        const CMatrix& a = model.field_ops[i];
        const CMatrix residual = u * a * u_inv - phase * a;
        ParameterResidual p;
        p.label = "field_op[" + std::to_string(i) + "]";
        p.generator = "Q";
        p.sup = max_abs(residual);
        p.rms = std::sqrt(residual.cwiseAbs2().sum() / static_cast<double>(residual.size()));
        report.parameters.push_back(std::move(p));
    }
    report.finalize();
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", b);
    report.metadata["b"] = buffer;
    return report;
}

double observer_groupoid_check(const CMatrix& u12, const CMatrix& u23, const CMatrix& u13,
                               const std::vector<CMatrix>& self_maps) {
    if (u12.cols() != u23.rows() || u12.rows() != u13.rows() || u23.cols() != u13.cols()) {
        throw InvalidArgument("observer_groupoid_check: inconsistent dimensions");
    }
    double worst = max_abs(CMatrix(u12 * u23 - u13));
    for (const auto& u : self_maps) {
        if (u.rows() != u.cols()) throw InvalidArgument("observer_groupoid_check: self map must be square");
        worst = std::max(worst, max_abs(CMatrix(u - CMatrix::Identity(u.rows(), u.cols()))));
    }
    return worst;
}

}  // namespace covkit
