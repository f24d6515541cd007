#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acmine/dataset.hpp"

namespace acmine {

enum class DurationKind { TriggerToAttack, LeakageToAttack };

const char* duration_kind_name(DurationKind k);

struct DurationRecord {
    std::string id;
    DurationKind kind = DurationKind::TriggerToAttack;
    long long days = 0;  // nonnegative by the ingest date-ordering invariant
    DatePrecision precision = DatePrecision::Day;
};

struct DurationSummary {
    long long n = 0;
    double mean = 0.0;
    double median = 0.0;    // average of the middle two for even n
    double stddev = 0.0;    // sample, n-1 denominator; 0 for n == 1
    std::optional<double> cv;  // stddev/mean, defined only when mean > 0
};

struct MilestoneSkips {
    long long trigger_month = 0, trigger_year = 0;
    long long leakage_month = 0, leakage_year = 0;
};

struct MilestoneRecords {
    std::vector<DurationRecord> records;
    MilestoneSkips skipped;
};

// One record per usable trigger/leakage date. Only day and week precision are
// admitted; week dates resolve to the interval midpoint. Month/year dates are
// skipped and counted.
MilestoneRecords milestone_extract(const Dataset& ds);

DurationSummary summarize(const std::vector<long long>& days);
DurationSummary summarize(const std::vector<DurationRecord>& records, DurationKind kind);

struct TwoSampleResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;
};

// Welch unequal-variance t statistic with Welch-Satterthwaite degrees of
// freedom and a two-sided p from the t distribution. When both groups have
// zero variance: p = 1 for equal means, p = 0 otherwise.
TwoSampleResult welch_t(const std::vector<long long>& group_a,
                        const std::vector<long long>& group_b);

// Pooled-variance variant, for comparison.
TwoSampleResult pooled_t(const std::vector<long long>& group_a,
                         const std::vector<long long>& group_b);

}  // namespace acmine
