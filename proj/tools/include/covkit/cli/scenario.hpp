#pragma once

#include "covkit/cli/json_io.hpp"

#include "covkit/fields.hpp"
#include "covkit/generators.hpp"
#include "covkit/representations.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace covkit::cli {

enum class CheckKind { kGroupCheck, kRepCheck, kTransform, kVerifyLocal, kVerifyBundle, kToy, kPairing };

std::string to_string(CheckKind kind);

struct RepSpec {
    std::string kind = "scalar";
    double charge = 1.0;
    double unit_charge = 1.0;
    SpinorExponent exponent = SpinorExponent::kMinusIHalfSigma;
    int dimension = 16;  ///< toy model size

    FieldRep build() const;
};

struct GroupSpec {
    LorentzParams omega = LorentzParams::Zero();
    Vec4 translation = Vec4::Zero();
    double b = 0.3;
    std::string family;  ///< empty: chosen from the check and rep
    bool analytic = false;
    int draws = 1000;
    bool same_plane = false;
    std::vector<std::string> parameters;  ///< empty: all

    PoincareParams poincare() const { return {omega, translation}; }
};

struct SampleSpec {
    GridSpec grid = GridSpec::cube(1.5, 9);
    std::size_t samples = 200;
    std::uint64_t seed = 1;
    int max_refinements = 4;
};

struct Tolerances {
    double residual = 1e-6;
    double algebraic = 1e-12;
    double group_law = 1e-10;
    double homomorphism = 1e-9;
    double gradient = 1e-6;
    double convergence_min = 3.5;
    double convergence_max = 4.5;
    double pairing_relative = 1e-6;
    double refinement_relative = 1e-7;
    double commutator = 1e-14;
    double global = 1e-10;
};

struct OutputSpec {
    std::string report;
    bool dump_fields = false;
    std::string dump_path;
};

struct Scenario {
    CheckKind check = CheckKind::kRepCheck;
    RepSpec rep;
    WavePacket field;
    WavePacket test_field;
    SampleSpec sampling;
    GroupSpec group;
    FDScheme fd;
    std::vector<double> convergence_steps;
    Tolerances tolerances;
    OutputSpec output;
    Json document;  ///< effective scenario after overrides, echoed in reports
};

/// Validates `document` against the scenario schema, then converts it.
/// Throws ConfigError naming the offending JSON pointer.
Scenario parse_scenario(const Json& document);

}  // namespace covkit::cli
