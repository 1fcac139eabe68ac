#pragma once

#include <functional>
#include <optional>

namespace pairwave::num {

// central differences, one Richardson step: error O(h^4)
double derivative(const std::function<double(double)>& f, double x, double h);
double second_derivative(const std::function<double(double)>& f, double x, double h);
double mixed_partial(const std::function<double(double, double)>& f, double x, double y, double hx, double hy);

// plain bracketed bisection; returns nullopt when f(a), f(b) share a sign
std::optional<double> bisect(const std::function<double(double)>& f, double a, double b,
                             double rel_tol = 1e-14, int max_iter = 400);

// minimizer of a unimodal function on [a, b]
double golden_section(const std::function<double(double)>& f, double a, double b,
                      double rel_tol = 1e-12, int max_iter = 300);

// real roots of a x^2 + b x + c = 0 without cancellation; empty if complex
struct QuadraticRoots {
    int count = 0;
    double r1 = 0.0, r2 = 0.0;
    double discriminant = 0.0;
};
QuadraticRoots solve_quadratic(double a, double b, double c);

// orthonormal Hermite functions psi_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) exp(-x^2/2)
double hermite_function(int n, double x);

}  // namespace pairwave::num
