#include "acmine/dates.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "acmine/errors.hpp"

namespace acmine {

namespace {
namespace chr = std::chrono;
}

Date parse_date(const std::string& iso) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    if (iso.size() != 10 ||
        std::sscanf(iso.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3)
        throw DataError("malformed date: '" + iso + "' (expected YYYY-MM-DD)");
    chr::year_month_day ymd{chr::year{y}, chr::month{m}, chr::day{d}};
    if (!ymd.ok()) throw DataError("invalid calendar date: '" + iso + "'");
    return Date{chr::sys_days{ymd}.time_since_epoch().count()};
}

std::string format_date(Date d) {
    chr::year_month_day ymd{chr::sys_days{chr::days{d.days}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

DatePrecision parse_precision(const std::string& text) {
    if (text == "day") return DatePrecision::Day;
    if (text == "week") return DatePrecision::Week;
    if (text == "month") return DatePrecision::Month;
    if (text == "year") return DatePrecision::Year;
    throw DataError("unknown date precision: '" + text + "'");
}

const char* precision_name(DatePrecision p) {
    switch (p) {
        case DatePrecision::Day: return "day";
        case DatePrecision::Week: return "week";
        case DatePrecision::Month: return "month";
        case DatePrecision::Year: return "year";
    }
    return "?";
}

Date ImpreciseDate::resolved(Date cap) const {
    std::int64_t offset = 0;
    switch (precision) {
        case DatePrecision::Day: offset = 0; break;
        case DatePrecision::Week: offset = 3; break;
        case DatePrecision::Month: offset = 15; break;
        case DatePrecision::Year: offset = 182; break;
    }
    return Date{std::min(date.days + offset, cap.days)};
}

}  // namespace acmine
