#include "covkit/fields.hpp"

#include "covkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>
#include <thread>

namespace covkit {

FieldFunction::FieldFunction(int components, Evaluate evaluate, Gradient gradient)
    : components_(components), evaluate_(std::move(evaluate)), gradient_(std::move(gradient)) {
    if (components_ < 1) throw InvalidArgument("field must have at least one component");
    if (!evaluate_ || !gradient_) throw InvalidArgument("field needs both evaluate and gradient");
}

FieldFunction FieldFunction::constant(const CVector& value) {
    const auto n = static_cast<int>(value.size());
    return FieldFunction(
        n, [value](const Vec4&) { return value; },
        [n](const Vec4&) { return CMatrix::Zero(n, 4).eval(); });
}

FieldFunction operator+(const FieldFunction& a, const FieldFunction& b) {
    if (a.components() != b.components()) throw InvalidArgument("field sum: component counts differ");
    return FieldFunction(
        a.components(), [a, b](const Vec4& x) { return CVector(a(x) + b(x)); },
        [a, b](const Vec4& x) { return CMatrix(a.gradient(x) + b.gradient(x)); });
}

double gradient_consistency(const FieldFunction& field, const Vec4& x, double step) {
    const CMatrix analytic = field.gradient(x);
    CMatrix numeric(field.components(), 4);
    for (int k = 0; k < 4; ++k) {
        const Vec4 e = Vec4::Unit(k);
        numeric.col(k) = central_difference([&](double t) { return field(x + t * e); }, step, 2);
    }
    const double err = max_abs(CMatrix(analytic - numeric));
    const double scale = max_abs(analytic);
    return scale > 0.0 ? err / scale : err;
}

// ---------------------------------------------------------------------------
// Wave packets

FieldFunction WavePacket::field() const {
    if (!(width > 0.0) || !std::isfinite(width)) throw InvalidArgument("wave packet width must be positive");
    if (components.empty()) throw InvalidArgument("wave packet needs at least one component");
    if (!center.allFinite()) throw InvalidArgument("wave packet center must be finite");

    const auto n = static_cast<int>(components.size());
    const WavePacket spec = *this;
    const double inv_two_s2 = 1.0 / (2.0 * width * width);

    auto evaluate = [spec, n, inv_two_s2](const Vec4& x) {
        const Vec4 y = x - spec.center;
        const double envelope = std::exp(-y.squaredNorm() * inv_two_s2);
        CVector out(n);
        for (int i = 0; i < n; ++i) {
            const auto& p = spec.components[static_cast<std::size_t>(i)];
            Complex poly = p.constant;
            for (int k = 0; k < 4; ++k) poly += p.linear(k) * y(k) + p.quadratic(k) * y(k) * y(k);
            out(i) = poly * envelope;
        }
        return out;
    };
    auto gradient = [spec, n, inv_two_s2](const Vec4& x) {
        const Vec4 y = x - spec.center;
        const double envelope = std::exp(-y.squaredNorm() * inv_two_s2);
        CMatrix out(n, 4);
        for (int i = 0; i < n; ++i) {
            const auto& p = spec.components[static_cast<std::size_t>(i)];
            Complex poly = p.constant;
            for (int k = 0; k < 4; ++k) poly += p.linear(k) * y(k) + p.quadratic(k) * y(k) * y(k);
            for (int k = 0; k < 4; ++k) {
                const Complex dpoly = p.linear(k) + 2.0 * p.quadratic(k) * y(k);
                out(i, k) = (dpoly - poly * (2.0 * inv_two_s2 * y(k))) * envelope;
            }
        }
        return out;
    };
    return FieldFunction(n, std::move(evaluate), std::move(gradient));
}

WavePacket WavePacket::gaussian(const Vec4& center, double width, Complex amplitude) {
    ComponentPolynomial p;
    p.constant = amplitude;
    return WavePacket{center, width, {p}};
}

// ---------------------------------------------------------------------------
// Frame changes

FrameChange::FrameChange(int dimension, Matrix matrix, Derivative derivative)
    : dimension_(dimension), matrix_(std::move(matrix)), derivative_(std::move(derivative)) {
    if (dimension_ < 1) throw InvalidArgument("frame change dimension must be positive");
    if (!matrix_) throw InvalidArgument("frame change needs a matrix function");
}

FrameChange FrameChange::constant(const CMatrix& a) {
    if (a.rows() != a.cols()) throw InvalidArgument("frame change matrix must be square");
    const auto n = static_cast<int>(a.rows());
    return FrameChange(
        n, [a](const Vec4&) { return a; }, [n](const Vec4&, int) { return CMatrix::Zero(n, n).eval(); });
}

CMatrix FrameChange::derivative(const Vec4& x, int axis) const {
    if (derivative_) return derivative_(x, axis);
    const Vec4 e = Vec4::Unit(axis);
    return central_difference([&](double t) { return matrix_(x + t * e); }, 1e-5, 2);
}

namespace {

CMatrix checked_inverse(const CMatrix& a, const Vec4& x) {
    const Complex det = a.determinant();
    if (!(std::abs(det) > 1e-12)) {
        throw SingularFrame("frame change matrix is singular at the evaluation point", x);
    }
    return a.inverse();
}

void require_dimension(const char* op, int field, int rep) {
    if (field != rep) {
        throw InvalidArgument(std::string(op) + ": field has " + std::to_string(field) +
                              " components but the representation acts on " + std::to_string(rep));
    }
}

}  // namespace

FieldFunction frame_change_components(const FieldFunction& field, const FrameChange& change) {
    require_dimension("frame_change_components", field.components(), change.dimension());
    const int n = field.components();
    auto evaluate = [field, change](const Vec4& x) {
        return CVector(checked_inverse(change.at(x), x) * field(x));
    };
    // d(A^-1 phi) = A^-1 d(phi) - A^-1 (dA) A^-1 phi
    auto gradient = [field, change, n](const Vec4& x) {
        const CMatrix inv = checked_inverse(change.at(x), x);
        const CVector value = inv * field(x);
        const CMatrix grad = field.gradient(x);
        CMatrix out(n, 4);
        for (int k = 0; k < 4; ++k) out.col(k) = inv * (grad.col(k) - change.derivative(x, k) * value);
        return out;
    };
    return FieldFunction(n, std::move(evaluate), std::move(gradient));
}

double cocycle_check(const FrameChange& ab, const FrameChange& bc, const FrameChange& ac,
                     const std::vector<Vec4>& points) {
    if (ab.dimension() != bc.dimension() || ab.dimension() != ac.dimension()) {
        throw InvalidArgument("cocycle_check: frame changes have different dimensions");
    }
    double worst = 0.0;
    for (const auto& x : points) worst = std::max(worst, max_abs(CMatrix(ab.at(x) * bc.at(x) - ac.at(x))));
    return worst;
}

// ---------------------------------------------------------------------------
// Transformation laws

FieldFunction passive_transform(const FieldFunction& field, const CMatrix& d, const PoincareElement& g) {
    require_dimension("passive_transform", field.components(), static_cast<int>(d.rows()));
    const PoincareElement inv = g.inverse();
    const Mat4 chain = inv.rotation.matrix();
    auto evaluate = [field, d, inv](const Vec4& x) { return CVector(d * field(inv.apply(x))); };
    auto gradient = [field, d, inv, chain](const Vec4& x) {
        return CMatrix(d * field.gradient(inv.apply(x)) * chain.cast<Complex>());
    };
    return FieldFunction(field.components(), std::move(evaluate), std::move(gradient));
}

FieldFunction passive_transform(const FieldFunction& field, const FieldRep& rep, const PoincareParams& g) {
    require_dimension("passive_transform", field.components(), rep.dimension());
    return passive_transform(field, rep_matrix(rep, GroupParams::poincare(g)), g.element());
}

FieldFunction active_transform(const FieldFunction& field, const CMatrix& m, const AffineMap& point_map) {
    require_dimension("active_transform", field.components(), static_cast<int>(m.rows()));
    const CMatrix action = transition_jacobian(point_map) * m.transpose();
    auto evaluate = [field, action, point_map](const Vec4& r) { return CVector(action * field(point_map(r))); };
    auto gradient = [field, action, point_map](const Vec4& r) {
        return CMatrix(action * field.gradient(point_map(r)) * point_map.linear().cast<Complex>());
    };
    return FieldFunction(field.components(), std::move(evaluate), std::move(gradient));
}

FieldFunction active_transform(const FieldFunction& field, const FieldRep& rep, const PoincareParams& g) {
    require_dimension("active_transform", field.components(), rep.dimension());
    return active_transform(field, rep_matrix(rep, GroupParams::poincare(g)), AffineMap::from_poincare(g.element()));
}

FieldFunction test_function_transform(const FieldFunction& f, const FieldRep& rep, const PoincareParams& g,
                                      TestFunctionLaw law) {
    require_dimension("test_function_transform", f.components(), rep.dimension());
    CMatrix d = rep_matrix(rep, GroupParams::poincare(g));
    if (law == TestFunctionLaw::kBundle) d = d.inverse().eval();
    return passive_transform(f, d, g.element());
}

// ---------------------------------------------------------------------------
// Grids, quadrature and dumps

void GridSpec::validate() const {
    for (int k = 0; k < 4; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        if (counts[idx] < 2) throw InvalidArgument("grid axis " + std::to_string(k) + " needs at least 2 points");
        if (!std::isfinite(lower(k)) || !std::isfinite(upper(k)) || !(lower(k) < upper(k))) {
            throw InvalidArgument("grid axis " + std::to_string(k) + " bounds must be finite and ordered");
        }
    }
}

std::size_t GridSpec::size() const {
    std::size_t total = 1;
    for (int c : counts) total *= static_cast<std::size_t>(std::max(c, 0));
    return total;
}

GridSpec GridSpec::refined() const {
    GridSpec g = *this;
    for (auto& c : g.counts) c = 2 * (c - 1) + 1;
    return g;
}

GridSpec GridSpec::cube(double half_width, int count) {
    return GridSpec{Vec4::Constant(-half_width), Vec4::Constant(half_width), {count, count, count, count}};
}

namespace {

std::vector<double> trapezoid_weights(const GridSpec& grid, int axis) {
    const int n = grid.counts[static_cast<std::size_t>(axis)];
    std::vector<double> w(static_cast<std::size_t>(n), grid.spacing(axis));
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

}  // namespace

Complex pairing(const FieldFunction& phi, const FieldFunction& f, const GridSpec& grid, unsigned threads) {
    if (phi.components() != f.components()) throw InvalidArgument("pairing: component counts differ");
    grid.validate();

    std::array<std::vector<double>, 4> weights;
    for (int k = 0; k < 4; ++k) weights[static_cast<std::size_t>(k)] = trapezoid_weights(grid, k);

    const int slabs = grid.counts[0];
    std::vector<Complex> partial(static_cast<std::size_t>(slabs), Complex{0.0, 0.0});

    auto run_slab = [&](int i0) {
        Complex acc{0.0, 0.0};
        Vec4 x;
        x(0) = grid.coordinate(0, i0);
        for (int i1 = 0; i1 < grid.counts[1]; ++i1) {
            x(1) = grid.coordinate(1, i1);
            for (int i2 = 0; i2 < grid.counts[2]; ++i2) {
                x(2) = grid.coordinate(2, i2);
                const double w12 = weights[1][static_cast<std::size_t>(i1)] * weights[2][static_cast<std::size_t>(i2)];
                for (int i3 = 0; i3 < grid.counts[3]; ++i3) {
                    x(3) = grid.coordinate(3, i3);
                    const Complex value = (phi(x).array() * f(x).array()).sum();
                    acc += (w12 * weights[3][static_cast<std::size_t>(i3)]) * value;
                }
            }
        }
        partial[static_cast<std::size_t>(i0)] = weights[0][static_cast<std::size_t>(i0)] * acc;
    };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(slabs));
    if (workers <= 1) {
        for (int i0 = 0; i0 < slabs; ++i0) run_slab(i0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int i0 = static_cast<int>(w); i0 < slabs; i0 += static_cast<int>(workers)) run_slab(i0);
            });
        }
        for (auto& t : pool) t.join();
    }

    Complex total{0.0, 0.0};
    for (const auto& p : partial) total += p;
    return total;
}

void write_field_csv(std::ostream& out, const FieldFunction& field, const GridSpec& grid) {
    grid.validate();
    const int n = field.components();
    out << "x0,x1,x2,x3";
    for (int i = 0; i < n; ++i) out << ",re_" << i << ",im_" << i;
    out << '\n';

    char buffer[32];
    auto put = [&](double v) {
        std::snprintf(buffer, sizeof buffer, "%.17g", v);
        out << buffer;
    };
    Vec4 x;
    for (int i0 = 0; i0 < grid.counts[0]; ++i0) {
        x(0) = grid.coordinate(0, i0);
        for (int i1 = 0; i1 < grid.counts[1]; ++i1) {
            x(1) = grid.coordinate(1, i1);
            for (int i2 = 0; i2 < grid.counts[2]; ++i2) {
                x(2) = grid.coordinate(2, i2);
                for (int i3 = 0; i3 < grid.counts[3]; ++i3) {
                    x(3) = grid.coordinate(3, i3);
                    const CVector v = field(x);
                    for (int k = 0; k < 4; ++k) {
                        if (k > 0) out << ',';
                        put(x(k));
                    }
                    for (int i = 0; i < n; ++i) {
                        out << ',';
                        put(v(i).real());
                        out << ',';
                        put(v(i).imag());
                    }
                    out << '\n';
                }
            }
        }
    }
}

std::vector<Vec4> sample_points(std::size_t count, const Vec4& lower, const Vec4& upper, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Vec4> points(count);
    for (auto& p : points) {
        for (int k = 0; k < 4; ++k) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            p(k) = lower(k) + u * (upper(k) - lower(k));
        }
    }
    return points;
}

}  // namespace covkit
