#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "pairwave/errors.hpp"
#include "pairwave/oracle.hpp"

namespace pairwave::oracle {

namespace {

// Kronrod nodes on [0, 1]; odd indices are the 7-point Gauss nodes
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule {
    double x[15];
    double k[15];
    double g[15];  // zero at Kronrod-only nodes
};

Rule make_rule() {
    Rule r{};
    for (int j = 0; j < 7; ++j) {
        r.x[j] = -xgk[j];
        r.x[14 - j] = xgk[j];
        r.k[j] = r.k[14 - j] = wgk[j];
        const double gw = (j % 2 == 1) ? wg[j / 2] : 0.0;
        r.g[j] = r.g[14 - j] = gw;
    }
    r.x[7] = 0.0;
    r.k[7] = wgk[7];
    r.g[7] = wg[3];
    return r;
}

const Rule& rule() {
    static const Rule r = make_rule();
    return r;
}

struct Seg {
    double a, b, val, err;
    long id;
};

struct Rect {
    double ax, bx, ay, by, val, err;
    long id;
};

template <class T>
struct ByError {
    bool operator()(const T& l, const T& r) const { return l.err < r.err || (l.err == r.err && l.id > r.id); }
};

Seg gk1(const std::function<double(double)>& f, double a, double b, long id) {
    const Rule& r = rule();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double k = 0.0, g = 0.0;
    for (int j = 0; j < 15; ++j) {
        const double v = f(c + h * r.x[j]);
        k += r.k[j] * v;
        g += r.g[j] * v;
    }
    return {a, b, k * h, std::abs((k - g) * h), id};
}

Rect gk2(const std::function<double(double, double)>& f, double ax, double bx, double ay, double by, long id) {
    const Rule& r = rule();
    const double cx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
    const double cy = 0.5 * (ay + by), hy = 0.5 * (by - ay);
    double k = 0.0, g = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double x = cx + hx * r.x[i];
        double ki = 0.0, gi = 0.0;
        for (int j = 0; j < 15; ++j) {
            const double v = f(x, cy + hy * r.x[j]);
            ki += r.k[j] * v;
            gi += r.g[j] * v;
        }
        k += r.k[i] * ki;
        g += r.g[i] * gi;
    }
    const double area = hx * hy;
    return {ax, bx, ay, by, k * area, std::abs((k - g) * area), id};
}

void not_converged(const char* what, double est, double err, int n) {
    std::ostringstream os;
    os << what << ": estimate " << est << " with error " << err << " after " << n << " regions";
    throw Error(Errc::QuadratureNotConverged, os.str());
}

// sum in creation order so the result does not depend on heap layout
template <class T>
double ordered_sum(std::vector<T> done) {
    std::sort(done.begin(), done.end(), [](const T& l, const T& r) { return l.id < r.id; });
    double s = 0.0;
    for (const auto& d : done) s += d.val;
    return s;
}

}  // namespace

QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b, const QuadOptions& opt) {
    long next = 0;
    std::priority_queue<Seg, std::vector<Seg>, ByError<Seg>> heap;
    Seg s0 = gk1(f, a, b, next++);
    double total = s0.val, err = s0.err;
    heap.push(s0);
    while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (static_cast<int>(heap.size()) >= opt.max_regions) not_converged("1-D quadrature", total, err, heap.size());
        Seg w = heap.top();
        heap.pop();
        const double m = 0.5 * (w.a + w.b);
        Seg l = gk1(f, w.a, m, next++), r = gk1(f, m, w.b, next++);
        total += l.val + r.val - w.val;
        err += l.err + r.err - w.err;
        heap.push(l);
        heap.push(r);
        if (err < 0.0) err = 0.0;
    }
    std::vector<Seg> done;
    double e = 0.0;
    while (!heap.empty()) {
        e += heap.top().err;
        done.push_back(heap.top());
        heap.pop();
    }
    return {ordered_sum(done), e, static_cast<int>(done.size())};
}

QuadResult integrate_2d(const std::function<double(double, double)>& f, double ax, double bx, double ay, double by,
                        const QuadOptions& opt) {
    long next = 0;
    std::priority_queue<Rect, std::vector<Rect>, ByError<Rect>> heap;
    Rect r0 = gk2(f, ax, bx, ay, by, next++);
    double total = r0.val, err = r0.err;
    heap.push(r0);
    while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (static_cast<int>(heap.size()) >= opt.max_regions) not_converged("2-D quadrature", total, err, heap.size());
        Rect w = heap.top();
        heap.pop();
        const double mx = 0.5 * (w.ax + w.bx), my = 0.5 * (w.ay + w.by);
        Rect q[4] = {gk2(f, w.ax, mx, w.ay, my, next), gk2(f, mx, w.bx, w.ay, my, next + 1),
                     gk2(f, w.ax, mx, my, w.by, next + 2), gk2(f, mx, w.bx, my, w.by, next + 3)};
        next += 4;
        total -= w.val;
        err -= w.err;
        for (const auto& r : q) {
            total += r.val;
            err += r.err;
            heap.push(r);
        }
        if (err < 0.0) err = 0.0;
    }
    std::vector<Rect> done;
    double e = 0.0;
    while (!heap.empty()) {
        e += heap.top().err;
        done.push_back(heap.top());
        heap.pop();
    }
    return {ordered_sum(done), e, static_cast<int>(done.size())};
}

double erf_quad(double x) {
    if (x == 0.0) return 0.0;
    const double ax = std::abs(x);
    // past 6 the complement is below 1e-17
    const double top = std::min(ax, 6.5);
    QuadOptions opt;
    opt.rel_tol = 1e-15;
    opt.abs_tol = 1e-17;
    const double v = integrate_1d([](double s) { return std::exp(-s * s); }, 0.0, top, opt).value;
    const double e = std::min(1.0, 2.0 / std::sqrt(3.14159265358979323846) * v);
    return x < 0.0 ? -e : e;
}

}  // namespace pairwave::oracle
