#include "covkit/cli/schema.hpp"

#include <cmath>

namespace covkit::cli {

namespace {

constexpr const char* kScenarioSchema = R"json({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "$id": "https://covariant-kit.invalid/schema/scenario-1.json",
  "title": "covariant-kit scenario",
  "type": "object",
  "required": ["check"],
  "additionalProperties": false,
  "properties": {
    "check": {"enum": ["group-check", "rep-check", "transform", "verify-local", "verify-bundle", "toy", "pairing"]},
    "description": {"type": "string"},
    "rep": {
      "type": "object",
      "required": ["kind"],
      "additionalProperties": false,
      "properties": {
        "kind": {"enum": ["scalar", "vector", "spinor", "phase"]},
        "q": {"type": "number"},
        "e": {"type": "number"},
        "spinor_exponent": {"enum": ["minus-i-half-sigma", "half-sigma"]},
        "dimension": {"type": "integer", "minimum": 1, "maximum": 512}
      }
    },
    "field": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "center": {"$ref": "#/$defs/vec4"},
        "width": {"type": "number", "exclusiveMinimum": 0},
        "components": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/component"}},
        "test": {"$ref": "#/$defs/packet"}
      }
    },
    "group": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "omega": {"type": "array", "items": {"type": "number"}, "minItems": 6, "maxItems": 6},
        "translation": {"$ref": "#/$defs/vec4"},
        "b": {"type": "number"},
        "family": {"enum": ["poincare", "bundle", "internal", "translation", "dilation"]},
        "analytic": {"type": "boolean"},
        "draws": {"type": "integer", "minimum": 1, "maximum": 1000000},
        "pairs": {"enum": ["general", "same-plane"]},
        "parameters": {"type": "array", "items": {"type": "string"}}
      }
    },
    "grid": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "lower": {"$ref": "#/$defs/vec4"},
        "upper": {"$ref": "#/$defs/vec4"},
        "counts": {"type": "array", "items": {"type": "integer", "minimum": 2}, "minItems": 4, "maxItems": 4},
        "samples": {"type": "integer", "minimum": 1, "maximum": 1000000},
        "seed": {"type": "integer", "minimum": 0},
        "max_refinements": {"type": "integer", "minimum": 0, "maximum": 8}
      }
    },
    "fd": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "step": {"type": "number", "exclusiveMinimum": 0},
        "order": {"enum": [2, 4]},
        "convergence_steps": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}}
      }
    },
    "tolerances": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "residual": {"$ref": "#/$defs/tolerance"},
        "algebraic": {"$ref": "#/$defs/tolerance"},
        "group_law": {"$ref": "#/$defs/tolerance"},
        "homomorphism": {"$ref": "#/$defs/tolerance"},
        "gradient": {"$ref": "#/$defs/tolerance"},
        "convergence_min": {"$ref": "#/$defs/tolerance"},
        "convergence_max": {"$ref": "#/$defs/tolerance"},
        "pairing_relative": {"$ref": "#/$defs/tolerance"},
        "refinement_relative": {"$ref": "#/$defs/tolerance"},
        "commutator": {"$ref": "#/$defs/tolerance"},
        "global": {"$ref": "#/$defs/tolerance"}
      }
    },
    "output": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "report": {"type": "string"},
        "dump_fields": {"type": "boolean"},
        "dump_path": {"type": "string"}
      }
    }
  },
  "$defs": {
    "vec4": {"type": "array", "items": {"type": "number"}, "minItems": 4, "maxItems": 4},
    "tolerance": {"type": "number", "exclusiveMinimum": 0},
    "complex": {"type": ["number", "array"], "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
    "component": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "constant": {"$ref": "#/$defs/complex"},
        "linear": {"type": "array", "items": {"$ref": "#/$defs/complex"}, "minItems": 4, "maxItems": 4},
        "quadratic": {"type": "array", "items": {"$ref": "#/$defs/complex"}, "minItems": 4, "maxItems": 4}
      }
    },
    "packet": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "center": {"$ref": "#/$defs/vec4"},
        "width": {"type": "number", "exclusiveMinimum": 0},
        "components": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/component"}}
      }
    }
  }
})json";

constexpr const char* kReportSchema = R"json({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "$id": "https://covariant-kit.invalid/schema/report-1.json",
  "title": "covariant-kit report",
  "type": "object",
  "required": ["schema_version", "artifact_version", "check", "scenario", "checks", "timings", "timestamp", "pass"],
  "additionalProperties": false,
  "properties": {
    "schema_version": {"const": "1"},
    "artifact_version": {"type": "string"},
    "check": {"enum": ["group-check", "rep-check", "transform", "verify-local", "verify-bundle", "toy", "pairing"]},
    "scenario": {"type": "object"},
    "checks": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/check"}},
    "values": {"type": "object"},
    "coefficients": {"type": "array", "items": {"$ref": "#/$defs/coefficient"}},
    "relation": {"$ref": "#/$defs/relation"},
    "artifacts": {"type": "array", "items": {"type": "string"}},
    "timings": {
      "type": "object",
      "required": ["total_seconds"],
      "properties": {"total_seconds": {"type": "number", "minimum": 0}}
    },
    "timestamp": {"type": "string"},
    "pass": {"type": "boolean"}
  },
  "$defs": {
    "check": {
      "type": "object",
      "required": ["name", "pass"],
      "additionalProperties": false,
      "properties": {
        "name": {"type": "string"},
        "residual": {"type": ["number", "null"]},
        "tolerance": {"type": "number", "minimum": 0},
        "pass": {"type": "boolean"},
        "detail": {"type": "object"}
      }
    },
    "matrix": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
    "coefficient": {
      "type": "object",
      "required": ["label", "generator", "real", "imag"],
      "additionalProperties": false,
      "properties": {
        "label": {"type": "string"},
        "generator": {"type": "string"},
        "real": {"$ref": "#/$defs/matrix"},
        "imag": {"$ref": "#/$defs/matrix"}
      }
    },
    "relation": {
      "type": "object",
      "required": ["relation", "tolerance", "step", "order", "parameters"],
      "additionalProperties": false,
      "properties": {
        "relation": {"type": "string"},
        "tolerance": {"type": "number"},
        "step": {"type": "number"},
        "order": {"type": "integer"},
        "convergence_steps": {"type": "array", "items": {"type": "number"}},
        "parameters": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["label", "generator", "sup", "rms", "pass"],
            "additionalProperties": false,
            "properties": {
              "label": {"type": "string"},
              "generator": {"type": "string"},
              "sup": {"type": ["number", "null"]},
              "rms": {"type": ["number", "null"]},
              "sup_by_step": {"type": "array", "items": {"type": ["number", "null"]}},
              "convergence_ratios": {"type": "array", "items": {"type": ["number", "null"]}},
              "pass": {"type": "boolean"}
            }
          }
        },
        "correspondences": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["generator", "physical", "hbar"],
            "properties": {
              "generator": {"type": "string"},
              "physical": {"type": "string"},
              "hbar": {"type": "number"}
            }
          }
        },
        "metadata": {"type": "object"}
      }
    }
  }
})json";

bool matches_type(const Json& v, const std::string& type) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    if (type == "number") return v.is_number();
    if (type == "integer") {
        if (v.is_number_integer()) return true;
        if (!v.is_number_float()) return false;
        const double d = v.get<double>();
        return std::isfinite(d) && std::floor(d) == d;
    }
    return false;
}

std::string escape_token(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

class Validator {
public:
    explicit Validator(const Json& root) : root_(root) {}

    void run(const Json& v, const Json& schema, const std::string& path) {
        if (schema.contains("$ref")) {
            const std::string ref = schema["$ref"].get<std::string>();
            const std::string prefix = "#/$defs/";
            if (ref.rfind(prefix, 0) != 0 || !root_["$defs"].contains(ref.substr(prefix.size()))) {
                errors.push_back(path_or_root(path) + ": unresolvable schema reference " + ref);
                return;
            }
            run(v, root_["$defs"][ref.substr(prefix.size())], path);
        }
        if (schema.contains("type")) {
            const Json& t = schema["type"];
            bool ok = false;
            if (t.is_string()) {
                ok = matches_type(v, t.get<std::string>());
            } else {
                for (const auto& alt : t) ok = ok || matches_type(v, alt.get<std::string>());
            }
            if (!ok) {
                errors.push_back(path_or_root(path) + ": expected type " + (t.is_string() ? t.get<std::string>() : t.dump()));
                return;
            }
        }
        if (schema.contains("const") && v != schema["const"]) {
            errors.push_back(path_or_root(path) + ": must equal " + schema["const"].dump());
        }
        if (schema.contains("enum")) {
            bool found = false;
            for (const auto& option : schema["enum"]) found = found || option == v;
            if (!found) errors.push_back(path_or_root(path) + ": must be one of " + schema["enum"].dump());
        }
        if (v.is_number()) {
            const double d = v.get<double>();
            if (schema.contains("minimum") && !(d >= schema["minimum"].get<double>())) {
                errors.push_back(path_or_root(path) + ": must be >= " + schema["minimum"].dump());
            }
            if (schema.contains("maximum") && !(d <= schema["maximum"].get<double>())) {
                errors.push_back(path_or_root(path) + ": must be <= " + schema["maximum"].dump());
            }
            if (schema.contains("exclusiveMinimum") && !(d > schema["exclusiveMinimum"].get<double>())) {
                errors.push_back(path_or_root(path) + ": must be > " + schema["exclusiveMinimum"].dump());
            }
        }
        if (v.is_array()) {
            if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>()) {
                errors.push_back(path_or_root(path) + ": needs at least " + schema["minItems"].dump() + " items");
            }
            if (schema.contains("maxItems") && v.size() > schema["maxItems"].get<std::size_t>()) {
                errors.push_back(path_or_root(path) + ": allows at most " + schema["maxItems"].dump() + " items");
            }
            if (schema.contains("items")) {
                for (std::size_t i = 0; i < v.size(); ++i) run(v[i], schema["items"], path + "/" + std::to_string(i));
            }
        }
        if (v.is_object()) {
            if (schema.contains("required")) {
                for (const auto& key : schema["required"]) {
                    if (!v.contains(key.get<std::string>())) {
                        errors.push_back(path_or_root(path) + ": missing required property '" + key.get<std::string>() + "'");
                    }
                }
            }
            const Json empty = Json::object();
            const Json& properties = schema.contains("properties") ? schema["properties"] : empty;
            for (const auto& [key, item] : v.items()) {
                const std::string child = path + "/" + escape_token(key);
                if (properties.contains(key)) {
                    run(item, properties[key], child);
                } else if (schema.contains("additionalProperties")) {
                    const Json& extra = schema["additionalProperties"];
                    if (extra.is_boolean()) {
                        if (!extra.get<bool>()) errors.push_back(child + ": unknown property");
                    } else {
                        run(item, extra, child);
                    }
                }
            }
        }
    }

    std::vector<std::string> errors;

private:
    static std::string path_or_root(const std::string& path) { return path.empty() ? "/" : path; }

    const Json& root_;
};

}  // namespace

const Json& scenario_schema() {
    static const Json schema = Json::parse(kScenarioSchema);
    return schema;
}

const Json& report_schema() {
    static const Json schema = Json::parse(kReportSchema);
    return schema;
}

std::vector<std::string> validate(const Json& document, const Json& schema) {
    Validator v(schema);
    v.run(document, schema, "");
    return v.errors;
}

}  // namespace covkit::cli
