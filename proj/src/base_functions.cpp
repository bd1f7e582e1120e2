#include "mto/base_functions.hpp"

#include <cmath>
#include <numbers>

#include "mto/rng.hpp"

namespace mto {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Location of the global maximum of w*sin(sqrt(|w|)) on [0, 500].
constexpr double kSchwefelPeakArg = 420.96874635998205;

double sphere(const Vector& z) { return z.squaredNorm(); }

double rosenbrock(const Vector& z) {
    double f = 0.0;
    for (Eigen::Index i = 0; i + 1 < z.size(); ++i) {
        double a = z[i] + 1.0;
        double b = z[i + 1] + 1.0;
        f += 100.0 * (a * a - b) * (a * a - b) + (a - 1.0) * (a - 1.0);
    }
    return f;
}

double ackley(const Vector& z) {
    double d = static_cast<double>(z.size());
    double s = z.squaredNorm() / d;
    double c = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) c += std::cos(kTwoPi * z[i]);
    return -20.0 * std::exp(-0.2 * std::sqrt(s)) - std::exp(c / d) + 20.0 + std::exp(1.0);
}

double rastrigin(const Vector& z) {
    double f = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) f += z[i] * z[i] - 10.0 * std::cos(kTwoPi * z[i]) + 10.0;
    return f;
}

double griewank(const Vector& z) {
    double p = 1.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) p *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
    return 1.0 + z.squaredNorm() / 4000.0 - p;
}

double weierstrass_term(double t) {
    double s = 0.0;
    double a = 1.0;
    double b = 1.0;
    for (int k = 0; k <= 20; ++k) {
        s += a * std::cos(kTwoPi * b * (t + 0.5));
        a *= 0.5;
        b *= 3.0;
    }
    return s;
}

double weierstrass(const Vector& z) {
    double base = weierstrass_term(0.0);
    double f = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) f += weierstrass_term(z[i]) - base;
    return f;
}

// Folded-and-penalized tail keeps the function defined (and above the
// optimum) when the rotated input leaves [-500, 500].
double schwefel_component(double w, double dim) {
    if (w > 500.0) {
        double t = 500.0 - std::fmod(w, 500.0);
        double d = w - 500.0;
        return t * std::sin(std::sqrt(std::abs(t))) - d * d / (10000.0 * dim);
    }
    if (w < -500.0) {
        double t = std::fmod(std::abs(w), 500.0) - 500.0;
        double d = w + 500.0;
        return t * std::sin(std::sqrt(std::abs(t))) - d * d / (10000.0 * dim);
    }
    return w * std::sin(std::sqrt(std::abs(w)));
}

double schwefel(const Vector& z) {
    double d = static_cast<double>(z.size());
    double peak = kSchwefelPeakArg * std::sin(std::sqrt(kSchwefelPeakArg));
    double f = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) f += peak - schwefel_component(z[i] + kSchwefelPeakArg, d);
    return f;
}

} // namespace

const char* base_kind_name(BaseKind kind) {
    switch (kind) {
    case BaseKind::Sphere: return "sphere";
    case BaseKind::Rosenbrock: return "rosenbrock";
    case BaseKind::Ackley: return "ackley";
    case BaseKind::Rastrigin: return "rastrigin";
    case BaseKind::Griewank: return "griewank";
    case BaseKind::Weierstrass: return "weierstrass";
    case BaseKind::Schwefel: return "schwefel";
    }
    throw Error("unknown base function kind");
}

std::pair<double, double> native_range(BaseKind kind) {
    switch (kind) {
    case BaseKind::Sphere: return {-100.0, 100.0};
    case BaseKind::Rosenbrock: return {-2.048, 2.048};
    case BaseKind::Ackley: return {-32.0, 32.0};
    case BaseKind::Rastrigin: return {-5.12, 5.12};
    case BaseKind::Griewank: return {-600.0, 600.0};
    case BaseKind::Weierstrass: return {-0.5, 0.5};
    case BaseKind::Schwefel: return {-500.0, 500.0};
    }
    throw Error("unknown base function kind");
}

void BaseFunction::validate() const {
    if (shift.size() == 0) throw DimensionError("base function needs a shift vector");
    if (rotation) {
        if (rotation->rows() != shift.size() || rotation->cols() != shift.size())
            throw DimensionError("rotation must be square of the function dimension");
        Matrix err = rotation->transpose() * *rotation - Matrix::Identity(shift.size(), shift.size());
        if (err.cwiseAbs().maxCoeff() >= 1e-10) throw DimensionError("rotation is not orthogonal");
    }
}

double eval_base(const BaseFunction& fn, const Vector& x) {
    if (x.size() != fn.shift.size()) throw DimensionError("eval_base: point size must match the function dimension");
    Vector z = x - fn.shift;
    if (fn.rotation) z = *fn.rotation * z;
    switch (fn.kind) {
    case BaseKind::Sphere: return sphere(z);
    case BaseKind::Rosenbrock: return rosenbrock(z);
    case BaseKind::Ackley: return ackley(z);
    case BaseKind::Rastrigin: return rastrigin(z);
    case BaseKind::Griewank: return griewank(z);
    case BaseKind::Weierstrass: return weierstrass(z);
    case BaseKind::Schwefel: return schwefel(z);
    }
    throw Error("unknown base function kind");
}

Matrix random_rotation(int dim, Rng& rng) {
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = rng.gaussian();
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

} // namespace mto
