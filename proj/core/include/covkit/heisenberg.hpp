#pragma once

// Numerical verification of Heisenberg relations.
//
// Two realizations are provided. On classical sampled fields the relation is
// checked as a derivative identity: the finite-difference derivative of the
// global law b -> det[dH_b/dr] I(b) phi(H_b(r)) at b0 is compared with
// Delta_w phi + I_w phi + h_w . grad phi. For internal symmetries the
// operator commutators are checked on finite matrix models.

#include "covkit/fields.hpp"
#include "covkit/generators.hpp"
#include "covkit/numerics.hpp"

#include <map>
#include <string>
#include <vector>

namespace covkit {

/// Residual of one relation for one generator direction.
struct ParameterResidual {
    std::string label;      ///< parameter label, e.g. "omega^01"
    std::string generator;  ///< generator label, e.g. "S_01", "T_0", "Q"
    double sup = 0.0;
    double rms = 0.0;
    std::vector<double> sup_by_step;         ///< sup residual at each convergence step
    std::vector<double> convergence_ratios;  ///< sup(h_k) / sup(h_{k+1})
    bool pass = false;
};

/// Relabeling i hbar G -> P (metadata only).
struct Correspondence {
    std::string generator;
    std::string physical;
    double hbar = 1.0;
};

struct RelationReport {
    std::string relation;
    double tolerance = 0.0;
    double step = 0.0;
    int order = 2;
    std::vector<double> convergence_steps;
    std::vector<ParameterResidual> parameters;
    std::vector<Correspondence> correspondences;
    std::map<std::string, std::string> metadata;

    double sup() const;
    /// Every parameter passes; a report without parameters does not pass.
    bool pass() const;
    /// Recomputes each pass flag from sup and tolerance.
    void finalize();
};

struct VerificationOptions {
    double tolerance = 1e-6;
    /// Steps for the convergence table; empty disables it.
    std::vector<double> convergence_steps;
    double hbar = 1.0;
};

/// Order-2 convergence is judged only while residuals stay above this floor.
inline constexpr double kConvergenceFloor = 1e-10;

/// Generator label for a family parameter label: omega^ab -> S_ab, a^m -> T_m,
/// b -> Q for internal families, otherwise U_<label>.
std::string generator_label(const ParamFamily& family, const std::string& parameter_label);

/// Local relation for a general family (spacetime motion plus rep action).
/// Throws InvalidArgument on dimension mismatch and EvaluationError when the
/// field is non-finite at a sample point.
RelationReport verify_local_relation(const FieldFunction& field, const ParamFamily& family, const FDScheme& scheme,
                                     const std::vector<Vec4>& points, const VerificationOptions& options = {});

/// Pointwise bundle relation: d/db (I(b) phi(r)) at b0 against I_w phi(r).
/// Throws InvalidFamily when the family moves points.
RelationReport verify_bundle_relation(const FieldFunction& field, const ParamFamily& family, const FDScheme& scheme,
                                      const std::vector<Vec4>& points, const VerificationOptions& options = {});

/// Covariance of I_w phi under a constant frame change A: max over w and
/// points of |A^-1 (I_w phi) - (A^-1 I_w A)(A^-1 phi)|. Throws
/// InvalidArgument when A is singular or has the wrong size.
double frame_independence_check(const FieldFunction& field, const CMatrix& a, const ParamFamily& family,
                                const FDScheme& scheme, const std::vector<Vec4>& points);

/// Truncated bosonic lowering operator: a[k, k+1] = sqrt(k + 1).
CMatrix lowering_operator(int dimension);

struct ToyOperatorModel {
    int dimension = 16;
    CMatrix charge_operator;
    std::vector<CMatrix> field_ops;
    double charge = 1.0;
    double unit_charge = 1.0;

    /// Q = q diag(0, 1, ..., N-1) with the lowering operator as the field.
    /// Diagonal Q makes the truncated commutator exact at any N.
    static ToyOperatorModel number_operator(int dimension, double charge, double unit_charge = 1.0);

    /// Throws InvalidArgument on inconsistent sizes or a zero unit charge.
    void validate() const;
};

/// [Q, a] + q a for every field operator (entrywise sup). A diagonal Q is
/// commuted entrywise as (Q_rr - Q_cc) a_rc.
RelationReport toy_commutator_check(const ToyOperatorModel& model, double tolerance = 1e-14);

/// U(b) a U(b)^-1 against exp(-q b / (i e)) a with U(b) = exp(b Q / (i e)).
RelationReport toy_global_check(const ToyOperatorModel& model, double b, double tolerance = 1e-10);

/// max(|U12 U23 - U13|, max over self maps |U_aa - 1|).
double observer_groupoid_check(const CMatrix& u12, const CMatrix& u23, const CMatrix& u13,
                               const std::vector<CMatrix>& self_maps = {});

}  // namespace covkit
