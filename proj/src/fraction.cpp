#include "acmine/fraction.hpp"

#include <cctype>
#include <numeric>

#include "acmine/errors.hpp"

namespace acmine {

Fraction::Fraction(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw ConfigError("fraction with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Fraction Fraction::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ConfigError("empty fraction value");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        try {
            long long n = std::stoll(s.substr(0, slash));
            long long d = std::stoll(s.substr(slash + 1));
            return Fraction(n, d);
        } catch (const std::exception&) {
            throw ConfigError("malformed fraction: " + text);
        }
    }

    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    long long num = 0, den = 1;
    bool saw_digit = false, saw_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (saw_dot) throw ConfigError("malformed fraction: " + text);
            saw_dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ConfigError("malformed fraction: " + text);
        if (num > (1LL << 58) || den > (1LL << 58))
            throw ConfigError("fraction literal too long: " + text);
        num = num * 10 + (c - '0');
        if (saw_dot) den *= 10;
        saw_digit = true;
    }
    if (!saw_digit) throw ConfigError("malformed fraction: " + text);
    return Fraction(neg ? -num : num, den);
}

std::string Fraction::str() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

bool operator==(Fraction a, Fraction b) {
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
}
bool operator!=(Fraction a, Fraction b) { return !(a == b); }
bool operator<(Fraction a, Fraction b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}
bool operator<=(Fraction a, Fraction b) { return !(b < a); }
bool operator>(Fraction a, Fraction b) { return b < a; }
bool operator>=(Fraction a, Fraction b) { return !(a < b); }

bool ratio_at_least(long long count, long long total, Fraction f) {
    return static_cast<__int128>(count) * f.den >= static_cast<__int128>(f.num) * total;
}

bool ratio_greater(long long count, long long total, Fraction f) {
    return static_cast<__int128>(count) * f.den > static_cast<__int128>(f.num) * total;
}

}  // namespace acmine
