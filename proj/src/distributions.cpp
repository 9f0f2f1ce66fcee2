#include "chartdesc/distributions.hpp"

#include "chartdesc/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace chartdesc {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double gamma_q_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_gamma_args(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a))
        throw Error("domain", "incomplete gamma needs a > 0 and x >= 0");
}

}  // namespace

double gamma_q(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_fraction(a, x);
}

double gamma_p(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_fraction(a, x);
}

double chi_square_sf(double x, double df) {
    if (!(df > 0.0)) throw Error("domain", "chi-square needs df > 0");
    if (x <= 0.0) return 1.0;
    return gamma_q(df / 2.0, x / 2.0);
}

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

std::vector<std::pair<double, double>> gauss_legendre(std::size_t n) {
    std::vector<std::pair<double, double>> nodes(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = {-x, w};
        nodes[n - 1 - i] = {x, w};
    }
    return nodes;
}

double studentized_range_cdf(double q, int k) {
    if (k < 2) throw Error("domain", "studentized range needs k >= 2");
    if (q <= 0.0) return 0.0;
    if (std::isinf(q)) return 1.0;
    static const auto nodes = gauss_legendre(20);
    constexpr double lo = -9.0, hi = 9.0;
    constexpr int panels = 60;
    const double width = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * width;
        for (const auto& [node, weight] : nodes) {
            const double z = mid + 0.5 * width * node;
            const double inner = normal_cdf(z + q) - normal_cdf(z);
            total += weight * 0.5 * width * normal_pdf(z) * std::pow(inner, k - 1);
        }
    }
    const double f = k * total;
    return f < 0.0 ? 0.0 : (f > 1.0 ? 1.0 : f);
}

double studentized_range_quantile(double p, int k) {
    if (!(p > 0.0 && p < 1.0)) throw Error("domain", "quantile needs p in (0, 1)");
    double lo = 0.0, hi = 1.0;
    while (studentized_range_cdf(hi, k) < p) {
        hi *= 2.0;
        if (hi > 1e3) throw Error("domain", "studentized range quantile did not bracket");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (studentized_range_cdf(mid, k) < p) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace chartdesc
