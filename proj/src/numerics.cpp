#include "pairwave/numerics.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace pairwave::num {

double derivative(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

double second_derivative(const std::function<double(double)>& f, double x, double h) {
    const double f0 = f(x);
    auto d = [&](double s) { return (f(x + s) - 2.0 * f0 + f(x - s)) / (s * s); };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

double mixed_partial(const std::function<double(double, double)>& f, double x, double y, double hx,
                     double hy) {
    auto d = [&](double sx, double sy) {
        return (f(x + sx, y + sy) - f(x + sx, y - sy) - f(x - sx, y + sy) + f(x - sx, y - sy)) /
               (4.0 * sx * sy);
    };
    return (4.0 * d(0.5 * hx, 0.5 * hy) - d(hx, hy)) / 3.0;
}

std::optional<double> bisect(const std::function<double(double)>& f, double a, double b, double rel_tol,
                             int max_iter) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa < 0.0) == (fb < 0.0)) return std::nullopt;
    for (int it = 0; it < max_iter; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        if (std::abs(b - a) <= rel_tol * std::max(std::abs(a), std::abs(b))) break;
    }
    return 0.5 * (a + b);
}

double golden_section(const std::function<double(double)>& f, double a, double b, double rel_tol,
                      int max_iter) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - r * (b - a);
    double x2 = a + r * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(b - a) <= rel_tol * (std::abs(x1) + std::abs(x2))) break;
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? x1 : x2;
}

QuadraticRoots solve_quadratic(double a, double b, double c) {
    QuadraticRoots out;
    if (a == 0.0) {
        out.discriminant = b * b;
        if (b == 0.0) return out;
        out.count = 1;
        out.r1 = out.r2 = -c / b;
        return out;
    }
    out.discriminant = b * b - 4.0 * a * c;
    if (out.discriminant < 0.0) return out;
    const double q = -0.5 * (b + std::copysign(std::sqrt(out.discriminant), b));
    out.count = 2;
    if (q == 0.0) {
        out.r1 = out.r2 = 0.0;
        return out;
    }
    out.r1 = q / a;
    out.r2 = c / q;
    if (out.r1 > out.r2) std::swap(out.r1, out.r2);
    return out;
}

double hermite_function(int n, double x) {
    double p0 = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
    if (n == 0) return p0;
    double p1 = std::sqrt(2.0) * x * p0;
    for (int k = 2; k <= n; ++k) {
        const double p2 = std::sqrt(2.0 / k) * x * p1 - std::sqrt((k - 1.0) / k) * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

}  // namespace pairwave::num
