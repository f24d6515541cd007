#include "acmine/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "acmine/errors.hpp"
#include "acmine/stats.hpp"

namespace acmine {

const char* duration_kind_name(DurationKind k) {
    return k == DurationKind::TriggerToAttack ? "trigger_to_attack" : "leakage_to_attack";
}

MilestoneRecords milestone_extract(const Dataset& ds) {
    MilestoneRecords out;
    for (const auto& t : ds.transactions()) {
        if (t.trigger) {
            switch (t.trigger->precision) {
                case DatePrecision::Day:
                case DatePrecision::Week:
                    out.records.push_back(
                        {t.id, DurationKind::TriggerToAttack,
                         t.attack_date.days - t.trigger->resolved(t.attack_date).days,
                         t.trigger->precision});
                    break;
                case DatePrecision::Month: out.skipped.trigger_month++; break;
                case DatePrecision::Year: out.skipped.trigger_year++; break;
            }
        }
        if (t.leakage) {
            switch (t.leakage->precision) {
                case DatePrecision::Day:
                case DatePrecision::Week:
                    out.records.push_back(
                        {t.id, DurationKind::LeakageToAttack,
                         t.attack_date.days - t.leakage->resolved(t.attack_date).days,
                         t.leakage->precision});
                    break;
                case DatePrecision::Month: out.skipped.leakage_month++; break;
                case DatePrecision::Year: out.skipped.leakage_year++; break;
            }
        }
    }
    return out;
}

DurationSummary summarize(const std::vector<long long>& days) {
    if (days.empty()) throw EmptyResultError("cannot summarize an empty cohort");
    DurationSummary s;
    s.n = static_cast<long long>(days.size());

    double sum = 0.0;
    for (long long v : days) sum += static_cast<double>(v);
    s.mean = sum / static_cast<double>(s.n);

    std::vector<long long> sorted = days;
    std::sort(sorted.begin(), sorted.end());
    if (s.n % 2 == 1) {
        s.median = static_cast<double>(sorted[s.n / 2]);
    } else {
        s.median = 0.5 * (static_cast<double>(sorted[s.n / 2 - 1]) +
                          static_cast<double>(sorted[s.n / 2]));
    }

    if (s.n > 1) {
        double ss = 0.0;
        for (long long v : days) {
            double dev = static_cast<double>(v) - s.mean;
            ss += dev * dev;
        }
        s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    if (s.mean > 0.0) s.cv = s.stddev / s.mean;
    return s;
}

DurationSummary summarize(const std::vector<DurationRecord>& records, DurationKind kind) {
    std::vector<long long> days;
    for (const auto& r : records)
        if (r.kind == kind) days.push_back(r.days);
    return summarize(days);
}

namespace {

struct Moments {
    double n = 0, mean = 0, var = 0;  // sample variance
};

Moments moments(const std::vector<long long>& xs, const char* what) {
    if (xs.size() < 2)
        throw ConfigError(std::string(what) + " group needs at least 2 observations");
    Moments m;
    m.n = static_cast<double>(xs.size());
    double sum = 0;
    for (long long v : xs) sum += static_cast<double>(v);
    m.mean = sum / m.n;
    double ss = 0;
    for (long long v : xs) {
        double dev = static_cast<double>(v) - m.mean;
        ss += dev * dev;
    }
    m.var = ss / (m.n - 1.0);
    return m;
}

TwoSampleResult degenerate(const Moments& a, const Moments& b) {
    TwoSampleResult r;
    if (a.mean == b.mean) {
        r.t = 0.0;
        r.df = a.n + b.n - 2.0;
        r.p = 1.0;
    } else {
        r.t = a.mean > b.mean ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
        r.df = a.n + b.n - 2.0;
        r.p = 0.0;
    }
    return r;
}

}  // namespace

TwoSampleResult welch_t(const std::vector<long long>& group_a,
                        const std::vector<long long>& group_b) {
    Moments a = moments(group_a, "first");
    Moments b = moments(group_b, "second");
    if (a.var == 0.0 && b.var == 0.0) return degenerate(a, b);

    double se_a = a.var / a.n, se_b = b.var / b.n;
    TwoSampleResult r;
    r.t = (a.mean - b.mean) / std::sqrt(se_a + se_b);
    r.df = (se_a + se_b) * (se_a + se_b) /
           (se_a * se_a / (a.n - 1.0) + se_b * se_b / (b.n - 1.0));
    r.p = stats::student_t_two_sided_p(r.t, r.df);
    return r;
}

TwoSampleResult pooled_t(const std::vector<long long>& group_a,
                         const std::vector<long long>& group_b) {
    Moments a = moments(group_a, "first");
    Moments b = moments(group_b, "second");
    if (a.var == 0.0 && b.var == 0.0) return degenerate(a, b);

    double df = a.n + b.n - 2.0;
    double pooled = ((a.n - 1.0) * a.var + (b.n - 1.0) * b.var) / df;
    TwoSampleResult r;
    r.t = (a.mean - b.mean) / std::sqrt(pooled * (1.0 / a.n + 1.0 / b.n));
    r.df = df;
    r.p = stats::student_t_two_sided_p(r.t, r.df);
    return r;
}

}  // namespace acmine
