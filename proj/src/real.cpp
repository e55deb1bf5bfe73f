#include "qorth/real.hpp"

#include "qorth/errors.hpp"

#include <cctype>
#include <ios>

namespace qorth {

Real parse_real(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) throw ValidationError("empty number");
    for (char ch : s) {
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' || ch == '+' ||
              ch == 'e' || ch == 'E')) {
            throw ValidationError("malformed number '" + s + "'");
        }
    }
    try {
        Real value(s);
        if (!boost::multiprecision::isfinite(value)) throw ValidationError("non-finite number '" + s + "'");
        return value;
    } catch (const std::runtime_error&) {
        throw ValidationError("malformed number '" + s + "'");
    }
}

std::string format_real(const Real& value, unsigned digits) {
    if (digits == 0) digits = 1;
    return value.str(static_cast<std::streamsize>(digits - 1), std::ios_base::scientific);
}

Real pow10_neg(int exponent) {
    return boost::multiprecision::pow(Real(10), -exponent);
}

PrecisionGuard::PrecisionGuard(unsigned digits10) : previous_(Real::default_precision()) {
    Real::default_precision(digits10);
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(previous_); }

}  // namespace qorth
