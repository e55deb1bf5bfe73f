#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace qorth {

/// Runtime-precision real. Precision of new values follows the current
/// default precision, see PrecisionGuard.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Parses a decimal string at the current default precision.
/// Throws ValidationError on malformed input.
Real parse_real(std::string_view text);

/// Scientific notation with `digits` significant digits. Output is
/// deterministic for a given value and digit count.
std::string format_real(const Real& value, unsigned digits);

/// 10^(-exponent) at the current default precision.
Real pow10_neg(int exponent);

/// Sets the default mpfr precision (decimal digits) for its lifetime.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits10);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned previous_;
};

}  // namespace qorth
