#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace acmine {

// Calendar date stored as days since 1970-01-01.
struct Date {
    std::int64_t days = 0;
    auto operator<=>(const Date&) const = default;
};

Date parse_date(const std::string& iso);  // strict YYYY-MM-DD
std::string format_date(Date d);

enum class DatePrecision { Day, Week, Month, Year };

DatePrecision parse_precision(const std::string& text);
const char* precision_name(DatePrecision p);

// A date known only to some precision. The raw date marks the start of the
// stated period; resolved() maps it to the period midpoint, capped so that a
// milestone never lands after the event it precedes.
struct ImpreciseDate {
    Date date;
    DatePrecision precision = DatePrecision::Day;

    Date resolved(Date cap) const;
    bool operator==(const ImpreciseDate&) const = default;
};

}  // namespace acmine
