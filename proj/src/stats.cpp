#include "acmine/stats.hpp"

#include <algorithm>
#include <cmath>

namespace acmine::stats {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

namespace {

// Lentz's continued fraction for the incomplete beta.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 400;
    constexpr double kEps = 3e-15;
    constexpr double kFpMin = 1e-300;

    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                   a * std::log(x) + b * std::log1p(-x);
    double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (!std::isfinite(t)) return 0.0;
    if (df <= 0.0) return 0.0;
    double x = df / (df + t * t);
    double p = incomplete_beta(0.5 * df, 0.5, x);
    return std::clamp(p, 0.0, 1.0);
}

double binomial_normal_two_sided_p(long long count, long long n, double p0) {
    double mu = static_cast<double>(n) * p0;
    double var = static_cast<double>(n) * p0 * (1.0 - p0);
    if (var <= 0.0) return static_cast<double>(count) == mu ? 1.0 : 0.0;
    double sd = std::sqrt(var);
    double lower = normal_cdf((static_cast<double>(count) + 0.5 - mu) / sd);
    double upper = 1.0 - normal_cdf((static_cast<double>(count) - 0.5 - mu) / sd);
    return std::min(1.0, 2.0 * std::min(lower, upper));
}

}  // namespace acmine::stats
