#include "covkit/cli/scenario.hpp"

#include "covkit/cli/schema.hpp"
#include "covkit/errors.hpp"

#include <cmath>

namespace covkit::cli {

namespace {

Vec4 vec4(const Json& v) { return Vec4(v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()); }

Complex complex_of(const Json& v) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    return {v[0].get<double>(), v[1].get<double>()};
}

void require_finite(double value, const std::string& where) {
    if (!std::isfinite(value)) throw ConfigError(where, "value must be finite");
}

WavePacket default_packet(int components) {
    WavePacket p;
    p.components.assign(static_cast<std::size_t>(components), ComponentPolynomial{});
    for (int i = 0; i < components; ++i) {
        auto& c = p.components[static_cast<std::size_t>(i)];
        c.constant = Complex(1.0 - 0.15 * i, 0.1 * i);
        c.linear(i % 4) = Complex(0.3, -0.1);
    }
    return p;
}

WavePacket parse_packet(const Json& j, const std::string& where, int components) {
    WavePacket p = j.contains("components") ? WavePacket{} : default_packet(components);
    if (j.contains("center")) p.center = vec4(j["center"]);
    if (j.contains("width")) p.width = j["width"].get<double>();
    if (j.contains("components")) {
        p.components.clear();
        for (std::size_t i = 0; i < j["components"].size(); ++i) {
            const Json& c = j["components"][i];
            ComponentPolynomial poly;
            if (c.contains("constant")) poly.constant = complex_of(c["constant"]);
            if (c.contains("linear")) {
                for (int k = 0; k < 4; ++k) poly.linear(k) = complex_of(c["linear"][static_cast<std::size_t>(k)]);
            }
            if (c.contains("quadratic")) {
                for (int k = 0; k < 4; ++k) poly.quadratic(k) = complex_of(c["quadratic"][static_cast<std::size_t>(k)]);
            }
            p.components.push_back(poly);
        }
    }
    if (static_cast<int>(p.components.size()) != components) {
        throw ConfigError(where + "/components", "field has " + std::to_string(p.components.size()) +
                                                      " components but the representation acts on " +
                                                      std::to_string(components));
    }
    for (int k = 0; k < 4; ++k) require_finite(p.center(k), where + "/center");
    require_finite(p.width, where + "/width");
    return p;
}

CheckKind check_of(const std::string& name) {
    if (name == "group-check") return CheckKind::kGroupCheck;
    if (name == "rep-check") return CheckKind::kRepCheck;
    if (name == "transform") return CheckKind::kTransform;
    if (name == "verify-local") return CheckKind::kVerifyLocal;
    if (name == "verify-bundle") return CheckKind::kVerifyBundle;
    if (name == "toy") return CheckKind::kToy;
    return CheckKind::kPairing;
}

}  // namespace

std::string to_string(CheckKind kind) {
    switch (kind) {
        case CheckKind::kGroupCheck: return "group-check";
        case CheckKind::kRepCheck: return "rep-check";
        case CheckKind::kTransform: return "transform";
        case CheckKind::kVerifyLocal: return "verify-local";
        case CheckKind::kVerifyBundle: return "verify-bundle";
        case CheckKind::kToy: return "toy";
        case CheckKind::kPairing: return "pairing";
    }
    return "unknown";
}

FieldRep RepSpec::build() const {
    if (kind == "scalar") return FieldRep::scalar();
    if (kind == "vector") return FieldRep::vector();
    if (kind == "spinor") return FieldRep::spinor(exponent);
    return FieldRep::phase(charge, unit_charge);
}

Scenario parse_scenario(const Json& document) {
    const std::vector<std::string> errors = validate(document, scenario_schema());
    if (!errors.empty()) {
        const auto colon = errors.front().find(": ");
        throw ConfigError(errors.front().substr(0, colon), errors.front().substr(colon + 2));
    }

    Scenario s;
    s.document = document;
    s.check = check_of(document["check"].get<std::string>());

    if (document.contains("rep")) {
        const Json& r = document["rep"];
        s.rep.kind = r["kind"].get<std::string>();
        if (r.contains("q")) s.rep.charge = r["q"].get<double>();
        if (r.contains("e")) s.rep.unit_charge = r["e"].get<double>();
        if (r.contains("spinor_exponent")) {
            s.rep.exponent = r["spinor_exponent"] == "half-sigma" ? SpinorExponent::kHalfSigma
                                                                   : SpinorExponent::kMinusIHalfSigma;
        }
        if (r.contains("dimension")) s.rep.dimension = r["dimension"].get<int>();
        require_finite(s.rep.charge, "/rep/q");
        require_finite(s.rep.unit_charge, "/rep/e");
        if (s.rep.unit_charge == 0.0) throw ConfigError("/rep/e", "unit charge must be nonzero");
    } else if (s.check == CheckKind::kToy) {
        s.rep.kind = "phase";
    }
    if (s.check == CheckKind::kToy && s.rep.kind != "phase") {
        throw ConfigError("/rep/kind", "toy models need a phase representation");
    }

    const int components = s.rep.kind == "vector" || s.rep.kind == "spinor" ? 4 : 1;
    const Json empty = Json::object();
    const Json& field = document.contains("field") ? document["field"] : empty;
    s.field = parse_packet(field, "/field", components);
    s.test_field = field.contains("test") ? parse_packet(field["test"], "/field/test", components) : s.field;

    if (document.contains("group")) {
        const Json& g = document["group"];
        if (g.contains("omega")) {
            for (int i = 0; i < 6; ++i) {
                s.group.omega(i) = g["omega"][static_cast<std::size_t>(i)].get<double>();
                require_finite(s.group.omega(i), "/group/omega/" + std::to_string(i));
            }
        }
        if (g.contains("translation")) s.group.translation = vec4(g["translation"]);
        for (int k = 0; k < 4; ++k) require_finite(s.group.translation(k), "/group/translation");
        if (g.contains("b")) s.group.b = g["b"].get<double>();
        require_finite(s.group.b, "/group/b");
        if (g.contains("family")) s.group.family = g["family"].get<std::string>();
        if (g.contains("analytic")) s.group.analytic = g["analytic"].get<bool>();
        if (g.contains("draws")) s.group.draws = g["draws"].get<int>();
        if (g.contains("pairs")) s.group.same_plane = g["pairs"] == "same-plane";
        if (g.contains("parameters")) s.group.parameters = g["parameters"].get<std::vector<std::string>>();
    }

    if (document.contains("grid")) {
        const Json& g = document["grid"];
        if (g.contains("lower")) s.sampling.grid.lower = vec4(g["lower"]);
        if (g.contains("upper")) s.sampling.grid.upper = vec4(g["upper"]);
        if (g.contains("counts")) {
            for (std::size_t k = 0; k < 4; ++k) s.sampling.grid.counts[k] = g["counts"][k].get<int>();
        }
        if (g.contains("samples")) s.sampling.samples = g["samples"].get<std::size_t>();
        if (g.contains("seed")) s.sampling.seed = g["seed"].get<std::uint64_t>();
        if (g.contains("max_refinements")) s.sampling.max_refinements = g["max_refinements"].get<int>();
    }
    try {
        s.sampling.grid.validate();
    } catch (const Error& err) {
        throw ConfigError("/grid", err.what());
    }

    if (document.contains("fd")) {
        const Json& f = document["fd"];
        if (f.contains("step")) s.fd.step = f["step"].get<double>();
        if (f.contains("order")) s.fd.order = f["order"].get<int>();
        if (f.contains("convergence_steps")) s.convergence_steps = f["convergence_steps"].get<std::vector<double>>();
    }
    try {
        s.fd.validate();
        for (double h : s.convergence_steps) FDScheme{h, s.fd.order, {}}.validate();
    } catch (const Error& err) {
        throw ConfigError("/fd", err.what());
    }

    if (document.contains("tolerances")) {
        const Json& t = document["tolerances"];
        auto read = [&](const char* key, double& target) {
            if (t.contains(key)) target = t[key].get<double>();
        };
        read("residual", s.tolerances.residual);
        read("algebraic", s.tolerances.algebraic);
        read("group_law", s.tolerances.group_law);
        read("homomorphism", s.tolerances.homomorphism);
        read("gradient", s.tolerances.gradient);
        read("convergence_min", s.tolerances.convergence_min);
        read("convergence_max", s.tolerances.convergence_max);
        read("pairing_relative", s.tolerances.pairing_relative);
        read("refinement_relative", s.tolerances.refinement_relative);
        read("commutator", s.tolerances.commutator);
        read("global", s.tolerances.global);
        if (s.tolerances.convergence_min > s.tolerances.convergence_max) {
            throw ConfigError("/tolerances/convergence_min", "must not exceed convergence_max");
        }
    }

    if (document.contains("output")) {
        const Json& o = document["output"];
        if (o.contains("report")) s.output.report = o["report"].get<std::string>();
        if (o.contains("dump_fields")) s.output.dump_fields = o["dump_fields"].get<bool>();
        if (o.contains("dump_path")) s.output.dump_path = o["dump_path"].get<std::string>();
    }
    return s;
}

}  // namespace covkit::cli
