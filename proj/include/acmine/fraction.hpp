#pragma once

#include <string>

namespace acmine {

// Exact rational. Supports and confidences are ratios of small integers and
// thresholds like 0.2 have no finite binary representation, so threshold
// comparisons cross-multiply in 128-bit instead of going through doubles.
struct Fraction {
    long long num = 0;
    long long den = 1;

    Fraction() = default;
    Fraction(long long n, long long d);

    // Accepts decimal ("0.2", "1", ".75") or ratio ("7/10") text.
    static Fraction parse(const std::string& text);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
};

bool operator==(Fraction a, Fraction b);
bool operator!=(Fraction a, Fraction b);
bool operator<(Fraction a, Fraction b);
bool operator<=(Fraction a, Fraction b);
bool operator>(Fraction a, Fraction b);
bool operator>=(Fraction a, Fraction b);

// count/total >= f and count/total > f without constructing intermediates.
// total must be positive.
bool ratio_at_least(long long count, long long total, Fraction f);
bool ratio_greater(long long count, long long total, Fraction f);

}  // namespace acmine
