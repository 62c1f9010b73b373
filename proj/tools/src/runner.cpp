#include "covkit/cli/runner.hpp"

#include "covkit/cli/schema.hpp"
#include "covkit/errors.hpp"
#include "covkit/fields.hpp"
#include "covkit/generators.hpp"
#include "covkit/geometry.hpp"
#include "covkit/heisenberg.hpp"
#include "covkit/representations.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

namespace covkit::cli {

namespace {

constexpr Complex kI{0.0, 1.0};

class Checks {
public:
    void add(const std::string& name, double residual, double tolerance, Json detail = {}) {
        Json c;
        c["name"] = name;
        c["residual"] = residual;
        c["tolerance"] = tolerance;
        c["pass"] = std::isfinite(residual) && residual <= tolerance;
        if (!detail.is_null()) c["detail"] = std::move(detail);
        list_.push_back(std::move(c));
    }

    Json take() { return std::move(list_); }

    bool pass() const {
        if (list_.empty()) return false;
        return std::all_of(list_.begin(), list_.end(), [](const Json& c) { return c["pass"].get<bool>(); });
    }

private:
    Json list_ = Json::array();
};

/// 53-bit uniform draws in [lo, hi), independent of the standard library's distributions.
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : rng_(seed) {}
    double operator()(double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1p-53;
    }

private:
    std::mt19937_64 rng_;
};

LorentzParams draw_omega(Uniform& u, double range) {
    LorentzParams omega;
    for (int i = 0; i < 6; ++i) omega(i) = u(-range, range);
    return omega;
}

Json matrix_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json vector_json(const CVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
    return out;
}

Json relation_json(const RelationReport& r) {
    Json j;
    j["relation"] = r.relation;
    j["tolerance"] = r.tolerance;
    j["step"] = r.step;
    j["order"] = r.order;
    j["convergence_steps"] = r.convergence_steps;
    Json params = Json::array();
    for (const auto& p : r.parameters) {
        Json e;
        e["label"] = p.label;
        e["generator"] = p.generator;
        e["sup"] = p.sup;
        e["rms"] = p.rms;
        e["sup_by_step"] = p.sup_by_step;
        e["convergence_ratios"] = p.convergence_ratios;
        e["pass"] = p.pass;
        params.push_back(std::move(e));
    }
    j["parameters"] = std::move(params);
    Json corr = Json::array();
    for (const auto& c : r.correspondences) {
        corr.push_back(Json{{"generator", c.generator}, {"physical", c.physical}, {"hbar", c.hbar}});
    }
    j["correspondences"] = std::move(corr);
    Json meta = Json::object();
    for (const auto& [k, v] : r.metadata) meta[k] = v;
    j["metadata"] = std::move(meta);
    return j;
}

void require_spacetime_rep(const Scenario& s) {
    if (s.rep.kind == "phase") {
        throw ConfigError("/rep/kind", "check '" + to_string(s.check) + "' needs a scalar, vector or spinor representation");
    }
}

ParamFamily family_for(const Scenario& s, const FieldRep& rep, bool bundle) {
    std::string name = s.group.family;
    if (name.empty()) name = rep.kind() == RepKind::kPhase ? "internal" : (bundle ? "bundle" : "poincare");
    const int n = rep.dimension();
    if (name == "internal") {
        if (rep.kind() != RepKind::kPhase) throw ConfigError("/group/family", "internal families need a phase representation");
        return internal_family(rep);
    }
    if (name == "translation") return translation_family(n);
    if (name == "dilation") return dilation_family(n);
    if (rep.kind() == RepKind::kPhase) throw ConfigError("/group/family", "'" + name + "' needs a spacetime representation");
    if (name == "bundle") return bundle_family(rep);
    return poincare_family(rep, s.group.analytic);
}

std::vector<std::size_t> selected_parameters(const Scenario& s, const ParamFamily& family) {
    std::vector<std::size_t> keep;
    if (s.group.parameters.empty()) {
        for (int w = 0; w < family.parameters(); ++w) keep.push_back(static_cast<std::size_t>(w));
        return keep;
    }
    for (std::size_t i = 0; i < s.group.parameters.size(); ++i) {
        const std::string& wanted = s.group.parameters[i];
        bool found = false;
        for (int w = 0; w < family.parameters(); ++w) {
            const std::string& label = family.labels[static_cast<std::size_t>(w)];
            if (label == wanted || generator_label(family, label) == wanted) {
                keep.push_back(static_cast<std::size_t>(w));
                found = true;
            }
        }
        if (!found) {
            throw ConfigError("/group/parameters/" + std::to_string(i),
                              "family '" + family.name + "' has no parameter '" + wanted + "'");
        }
    }
    return keep;
}

void add_relation_checks(const Scenario& s, const RelationReport& report, const std::string& prefix, Checks& checks) {
    for (const auto& p : report.parameters) {
        checks.add(prefix + ":" + p.generator, p.sup, report.tolerance, Json{{"label", p.label}, {"rms", p.rms}});
        if (p.convergence_ratios.empty()) continue;
        double outside = 0.0;
        Json judged = Json::array();
        for (std::size_t k = 0; k < p.convergence_ratios.size(); ++k) {
            if (p.sup_by_step[k + 1] < kConvergenceFloor) continue;
            const double ratio = p.convergence_ratios[k];
            judged.push_back(ratio);
            if (ratio < s.tolerances.convergence_min) outside = std::max(outside, s.tolerances.convergence_min - ratio);
            if (ratio > s.tolerances.convergence_max) outside = std::max(outside, ratio - s.tolerances.convergence_max);
            if (!std::isfinite(ratio)) outside = ratio;
        }
        checks.add("convergence:" + p.generator, outside, 0.0,
                   Json{{"ratios", p.convergence_ratios},
                        {"judged", judged},
                        {"range", Json::array({s.tolerances.convergence_min, s.tolerances.convergence_max})},
                        {"floor", kConvergenceFloor}});
    }
}

Json coefficients_json(const ParamFamily& family, const std::vector<CMatrix>& coeffs, const std::vector<std::size_t>& keep) {
    Json out = Json::array();
    for (std::size_t w : keep) {
        Json c;
        c["label"] = family.labels[w];
        c["generator"] = generator_label(family, family.labels[w]);
        c["real"] = matrix_json(coeffs[w].real());
        c["imag"] = matrix_json(coeffs[w].imag());
        out.push_back(std::move(c));
    }
    return out;
}

RelationReport filtered(RelationReport report, const std::vector<std::size_t>& keep) {
    std::vector<ParameterResidual> kept;
    for (std::size_t w : keep) kept.push_back(report.parameters[w]);
    report.parameters = std::move(kept);
    std::vector<Correspondence> corr;
    for (const auto& c : report.correspondences) {
        for (const auto& p : report.parameters) {
            if (p.generator == c.generator) {
                corr.push_back(c);
                break;
            }
        }
    }
    report.correspondences = std::move(corr);
    return report;
}

void dump_field(const FieldFunction& field, const GridSpec& grid, const std::string& path, Json& report) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw ConfigError(path, "cannot write field dump");
    write_field_csv(out, field, grid);
    if (!out) throw ConfigError(path, "failed while writing field dump");
    report["artifacts"].push_back(path);
}

// ---------------------------------------------------------------------------

void run_group_check(const Scenario& s, Checks& checks, Json& values) {
    Uniform u(s.sampling.seed);
    const auto draws = static_cast<std::size_t>(s.group.draws);
    double metric = 0.0, det = 0.0, ortho = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
        const LorentzTransform lambda = lorentz_exp(draw_omega(u, 1.0));
        metric = std::max(metric, lambda.metric_residual());
        det = std::max(det, std::abs(lambda.matrix().determinant() - 1.0));
        ortho = std::max(ortho, std::max(0.0, 1.0 - lambda.matrix()(0, 0)));
    }
    const Json n{{"draws", draws}};
    checks.add("metric_preservation", metric, s.tolerances.algebraic, n);
    checks.add("unit_determinant", det, s.tolerances.algebraic, n);
    checks.add("orthochronous", ortho, s.tolerances.algebraic, n);

    auto element = [&] {
        return PoincareElement{lorentz_exp(draw_omega(u, 1.0)), Vec4(u(-1, 1), u(-1, 1), u(-1, 1), u(-1, 1))};
    };
    auto distance = [](const PoincareElement& a, const PoincareElement& b) {
        return std::max(max_abs(Mat4(a.rotation.matrix() - b.rotation.matrix())),
                        max_abs(Vec4(a.translation - b.translation)));
    };
    const std::size_t triples = std::max<std::size_t>(1, draws / 10);
    double assoc = 0.0, inverse = 0.0, subgroup = 0.0, charts = 0.0;
    for (std::size_t i = 0; i < triples; ++i) {
        const PoincareElement a = element(), b = element(), c = element();
        assoc = std::max(assoc, distance(poincare_compose(poincare_compose(a, b), c),
                                         poincare_compose(a, poincare_compose(b, c))));
        inverse = std::max(inverse, distance(poincare_compose(a.inverse(), a), PoincareElement::identity()));

        const LorentzParams dir = draw_omega(u, 1.0);
        const double t1 = u(-1, 1), t2 = u(-1, 1);
        subgroup = std::max(subgroup, max_abs(Mat4((lorentz_exp(t1 * dir) * lorentz_exp(t2 * dir)).matrix() -
                                                   lorentz_exp((t1 + t2) * dir).matrix())));

        const AffineChart chart(Mat4::Identity() + 0.1 * Mat4::Identity() * u(-1, 1), Vec4(u(-1, 1), 0.0, 0.0, 0.0));
        const ChartTransitions t = chart_transition(chart, AffineChart::transformed(chart, b));
        charts = std::max({charts, t.u_after_uprime_inv.after(t.uprime_after_u_inv).distance(AffineMap::identity()),
                           t.uprime_after_u_inv.after(t.u_after_uprime_inv).distance(AffineMap::identity()),
                           t.u_inv_after_uprime.after(t.uprime_inv_after_u).distance(AffineMap::identity())});
    }
    const Json nt{{"triples", triples}};
    checks.add("associativity", assoc, s.tolerances.algebraic, nt);
    checks.add("inverse_law", inverse, s.tolerances.algebraic, nt);
    checks.add("one_parameter_subgroup", subgroup, s.tolerances.group_law, nt);
    checks.add("chart_transitions", charts, s.tolerances.algebraic, nt);

    const PoincareElement g = s.group.poincare().element();
    checks.add("scenario_element_metric", g.rotation.metric_residual(), s.tolerances.algebraic);
    values["lorentz_matrix"] = matrix_json(g.rotation.matrix());
    values["translation"] = std::vector<double>(g.translation.data(), g.translation.data() + 4);
    values["transition_jacobian"] = transition_jacobian(AffineMap::from_poincare(g));
}

void run_rep_check(const Scenario& s, Checks& checks, Json& values) {
    const FieldRep rep = s.rep.build();
    const int n = rep.dimension();
    const bool phase = rep.kind() == RepKind::kPhase;
    const CMatrix id = CMatrix::Identity(n, n);
    checks.add("identity_at_zero", max_abs(CMatrix(rep_matrix(rep, GroupParams::phase(0.0)) - id)), s.tolerances.algebraic);

    Uniform u(s.sampling.seed);
    auto draw = [&](std::size_t i) {
        if (phase) return GroupParams::phase(u(-1, 1));
        LorentzParams omega = draw_omega(u, 0.5);
        if (s.group.same_plane) {
            const Eigen::Index keep = static_cast<Eigen::Index>(i % 6);
            const double value = omega(keep);
            omega.setZero();
            omega(keep) = value;
        }
        return GroupParams::lorentz(omega);
    };
    const auto draws = static_cast<std::size_t>(s.group.draws);
    double hom = 0.0, lorentz = 0.0, constant = 0.0;
    int negative = 0;
    for (std::size_t i = 0; i < draws; ++i) {
        const GroupParams g1 = draw(i);
        const GroupParams g2 = draw(i);
        const HomomorphismResult h = homomorphism_check(rep, g1, g2);
        hom = std::max(hom, h.residual);
        if (h.sign < 0) ++negative;
        const CMatrix m = rep_matrix(rep, g1);
        if (rep.kind() == RepKind::kVector) {
            const Mat4 real = m.real();
            lorentz = std::max({lorentz, max_abs(Eigen::MatrixXd(m.imag())),
                                max_abs(Mat4(real.transpose() * Metric::components() * real - Metric::components()))});
        }
        if (rep.kind() == RepKind::kScalar) constant = std::max(constant, max_abs(CMatrix(m - id)));
    }
    checks.add("homomorphism", hom, s.tolerances.homomorphism,
               Json{{"draws", draws}, {"pairs", s.group.same_plane ? "same-plane" : "general"}, {"negative_signs", negative}});
    if (rep.kind() == RepKind::kVector) checks.add("lorentz_invariants", lorentz, s.tolerances.algebraic);
    if (rep.kind() == RepKind::kScalar) checks.add("constant", constant, s.tolerances.algebraic);
    if (rep.kind() == RepKind::kSpinor) {
        const auto& spinor = std::get<SpinorRep>(rep.variant());
        checks.add("gamma_anticommutator", spinor.gamma.anticommutator_residual(), s.tolerances.algebraic);
        if (spinor.exponent == SpinorExponent::kHalfSigma) {
            double unitarity = 0.0;
            for (std::size_t i = 0; i < draws; ++i) {
                LorentzParams omega = LorentzParams::Zero();
                for (int k = 3; k < 6; ++k) omega(k) = u(-M_PI, M_PI);
                const CMatrix m = rep_matrix(rep, GroupParams::lorentz(omega));
                unitarity = std::max(unitarity, max_abs(CMatrix(m.adjoint() * m - id)));
            }
            checks.add("spatial_unitarity", unitarity, s.tolerances.group_law);
        }
    }

    GroupParams at = GroupParams::poincare(s.group.poincare());
    if (phase) at = GroupParams::phase(s.group.b);
    const CMatrix m = rep_matrix(rep, at);
    values["rep_matrix"] = Json{{"real", matrix_json(m.real())}, {"imag", matrix_json(m.imag())}};
    const CMatrix dual = dual_rep_matrix(rep, at);
    checks.add("dual_is_transpose", max_abs(CMatrix(dual - m.transpose())), s.tolerances.algebraic);
}

std::vector<Vec4> sample_set(const Scenario& s) {
    return sample_points(s.sampling.samples, s.sampling.grid.lower, s.sampling.grid.upper, s.sampling.seed);
}

void run_transform(const Scenario& s, Checks& checks, Json& values, Json& report, const std::string& dump_path) {
    require_spacetime_rep(s);
    const FieldRep rep = s.rep.build();
    const FieldFunction phi = s.field.field();
    const PoincareParams g = s.group.poincare();
    const std::vector<Vec4> points = sample_set(s);

    const FieldFunction active = active_transform(phi, rep, g);
    const FieldFunction passive = passive_transform(phi, rep, g);
    const FieldFunction test = test_function_transform(phi, rep, g);
    const FieldFunction round_trip = active_transform(active, rep, g.inverse());

    const PoincareElement e = g.element();
    const CMatrix d = rep_matrix(rep, GroupParams::poincare(g));
    const FieldFunction twice = passive_transform(passive, rep, g);
    const FieldFunction composed = passive_transform(phi, CMatrix(d * d), poincare_compose(e, e));

    double roundtrip = 0.0, composition = 0.0, gradient = 0.0;
    for (const auto& x : points) {
        roundtrip = std::max(roundtrip, max_abs(CVector(round_trip(x) - phi(x))));
        composition = std::max(composition, max_abs(CVector(twice(x) - composed(x))));
        for (const FieldFunction* f : {&active, &passive, &test}) gradient = std::max(gradient, gradient_consistency(*f, x));
    }
    const Json n{{"points", points.size()}};
    checks.add("active_inverse_roundtrip", roundtrip, s.tolerances.group_law, n);
    checks.add("passive_composition", composition, s.tolerances.group_law, n);
    checks.add("gradient_chain_rule", gradient, s.tolerances.gradient, n);

    values["active_at_origin"] = vector_json(active(Vec4::Zero()));
    values["passive_at_origin"] = vector_json(passive(Vec4::Zero()));
    values["test_function_at_origin"] = vector_json(test(Vec4::Zero()));
    if (s.output.dump_fields) dump_field(active, s.sampling.grid, dump_path, report);
}

void run_relation(const Scenario& s, bool bundle, Checks& checks, Json& report, const std::string& dump_path) {
    const FieldRep rep = s.rep.build();
    const ParamFamily family = family_for(s, rep, bundle);
    const std::vector<std::size_t> keep = selected_parameters(s, family);
    const FieldFunction phi = s.field.field();
    const std::vector<Vec4> points = sample_set(s);
    VerificationOptions options;
    options.tolerance = s.tolerances.residual;
    options.convergence_steps = s.convergence_steps;

    RelationReport r = bundle ? verify_bundle_relation(phi, family, s.fd, points, options)
                              : verify_local_relation(phi, family, s.fd, points, options);
    if (bundle && r.metadata.count("translation_derivative_sup")) {
        bool has_translation = false;
        for (std::size_t w : keep) has_translation = has_translation || family.labels[w].rfind("a^", 0) == 0;
        if (has_translation) {
            checks.add("translation_exact_zero", std::stod(r.metadata["translation_derivative_sup"]), 0.0);
        }
    }
    r = filtered(std::move(r), keep);
    add_relation_checks(s, r, bundle ? "bundle" : "local", checks);
    report["coefficients"] = coefficients_json(family, extract_I(family, s.fd), keep);
    report["relation"] = relation_json(r);
    if (s.output.dump_fields) dump_field(phi, s.sampling.grid, dump_path, report);
}

void run_toy(const Scenario& s, Checks& checks, Json& values, Json& report) {
    const ToyOperatorModel model = ToyOperatorModel::number_operator(s.rep.dimension, s.rep.charge, s.rep.unit_charge);
    const RelationReport comm = toy_commutator_check(model, s.tolerances.commutator);
    checks.add("commutator", comm.sup(), s.tolerances.commutator, Json{{"dimension", model.dimension}});
    const RelationReport global = toy_global_check(model, s.group.b, s.tolerances.global);
    checks.add("global_conjugation", global.sup(), s.tolerances.global, Json{{"b", s.group.b}});

    // Infinitesimal conjugation against the internal-family coefficient.
    const CMatrix& a = model.field_ops.front();
    const Complex ie{0.0, model.unit_charge};
    const CMatrix derivative = central_difference(
        [&](double t) {
            const CMatrix u = expm(CMatrix(model.charge_operator * (t / ie)));
            const CMatrix u_inv = expm(CMatrix(model.charge_operator * (-t / ie)));
            return CMatrix(u * a * u_inv);
        },
        s.fd.step, s.fd.order);
    const Complex coefficient = extract_I(internal_family(s.rep.build()), s.fd).front()(0, 0);
    checks.add("local_global_agreement", max_abs(CMatrix(derivative - coefficient * a)), s.tolerances.homomorphism);

    const CMatrix c = model.charge_operator * a - a * model.charge_operator;
    if (model.dimension >= 3) {
        values["commutator_01"] = complex_json(c(0, 1));
        values["commutator_12"] = complex_json(c(1, 2));
    }
    values["phase_coefficient"] = complex_json(coefficient);
    report["relation"] = relation_json(comm);
}

void run_pairing(const Scenario& s, unsigned threads, Checks& checks, Json& values, Json& report,
                 const std::string& dump_path) {
    require_spacetime_rep(s);
    const FieldRep rep = s.rep.build();
    const FieldFunction phi = s.field.field();
    const FieldFunction f = s.test_field.field();
    const PoincareParams g = s.group.poincare();

    GridSpec grid = s.sampling.grid;
    Complex previous = pairing(phi, f, grid, threads);
    double change = std::numeric_limits<double>::infinity();
    Json table = Json::array();
    table.push_back(Json{{"counts", grid.counts}, {"value", complex_json(previous)}});
    for (int level = 0; level < s.sampling.max_refinements; ++level) {
        grid = grid.refined();
        const Complex current = pairing(phi, f, grid, threads);
        const double scale = std::abs(current);
        change = std::abs(current - previous) / (scale > 0.0 ? scale : 1.0);
        table.push_back(Json{{"counts", grid.counts}, {"value", complex_json(current)}, {"relative_change", change}});
        previous = current;
        if (change <= s.tolerances.refinement_relative) break;
    }
    checks.add("refinement_convergence", change, s.tolerances.refinement_relative, Json{{"levels", table}});

    const Complex active = pairing(active_transform(phi, rep, g), f, grid, threads);
    const Complex moved = pairing(phi, test_function_transform(f, rep, g), grid, threads);
    const double scale = std::max(std::abs(active), std::abs(moved));
    checks.add("pairing_invariance", std::abs(active - moved) / (scale > 0.0 ? scale : 1.0), s.tolerances.pairing_relative,
               Json{{"counts", grid.counts}});
    values["pairing"] = complex_json(previous);
    values["active_pairing"] = complex_json(active);
    values["test_function_pairing"] = complex_json(moved);
    if (s.output.dump_fields) dump_field(phi, s.sampling.grid, dump_path, report);
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

std::string default_dump_path(const Scenario& s, const std::string& report_path) {
    if (!s.output.dump_path.empty()) return s.output.dump_path;
    if (!report_path.empty()) {
        std::filesystem::path p(report_path);
        return (p.parent_path() / (p.stem().string() + ".field.csv")).string();
    }
    return "field.csv";
}

}  // namespace

RunResult execute(const Scenario& s, unsigned threads, const std::string& dump_path) {
    const auto start = std::chrono::steady_clock::now();
    Json report;
    report["schema_version"] = kSchemaVersion;
    report["artifact_version"] = kArtifactVersion;
    report["check"] = to_string(s.check);
    report["scenario"] = s.document;
    report["checks"] = Json::array();
    report["artifacts"] = Json::array();

    Checks checks;
    Json values = Json::object();
    switch (s.check) {
        case CheckKind::kGroupCheck: run_group_check(s, checks, values); break;
        case CheckKind::kRepCheck: run_rep_check(s, checks, values); break;
        case CheckKind::kTransform: run_transform(s, checks, values, report, dump_path); break;
        case CheckKind::kVerifyLocal: run_relation(s, false, checks, report, dump_path); break;
        case CheckKind::kVerifyBundle: run_relation(s, true, checks, report, dump_path); break;
        case CheckKind::kToy: run_toy(s, checks, values, report); break;
        case CheckKind::kPairing: run_pairing(s, threads, checks, values, report, dump_path); break;
    }

    RunResult result;
    result.pass = checks.pass();
    report["checks"] = checks.take();
    if (!values.empty()) report["values"] = std::move(values);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report["timings"] = Json{{"total_seconds", seconds}};
    report["timestamp"] = utc_timestamp();
    report["pass"] = result.pass;
    result.report = std::move(report);
    return result;
}

Json strip_volatile(Json report) {
    report.erase("timings");
    report.erase("timestamp");
    return report;
}

int run_command(const std::string& scenario_path, const RunOptions& options, std::ostream& out, std::ostream& err) {
    try {
        Json document = load_file(scenario_path);
        for (const auto& o : options.overrides) apply_override(document, o);
        const Scenario scenario = parse_scenario(document);
        const std::string report_path = options.report_path.empty() ? scenario.output.report : options.report_path;
        const std::string dump_path = scenario.output.dump_fields ? default_dump_path(scenario, report_path) : "";

        RunResult result;
        try {
            result = execute(scenario, options.threads, dump_path);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError(scenario_path, e.what());
        }

        const std::string text = dump(result.report) + "\n";
        if (report_path.empty()) {
            out << text;
        } else {
            std::ofstream file(report_path, std::ios::binary);
            if (!file) throw ConfigError(report_path, "cannot write report");
            file << text;
            if (!file) throw ConfigError(report_path, "failed while writing report");
        }
        if (!result.pass) {
            for (const auto& c : result.report["checks"]) {
                if (!c["pass"].get<bool>()) {
                    err << "covariant-kit: check '" << c["name"].get<std::string>() << "' failed: residual "
                        << dump(c["residual"], 0) << " > tolerance " << dump(c["tolerance"], 0) << "\n";
                }
            }
            return kExitToleranceFailure;
        }
        return kExitPass;
    } catch (const ConfigError& e) {
        err << "covariant-kit: error: " << e.where() << ": " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        err << "covariant-kit: error: " << scenario_path << ": " << e.what() << "\n";
        return kExitConfigError;
    }
}

}  // namespace covkit::cli
