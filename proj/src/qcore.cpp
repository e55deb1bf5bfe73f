#include "qorth/qcore.hpp"

#include "qorth/errors.hpp"

#include <cmath>
#include <string>

namespace qorth {

namespace {

constexpr int kQuietTermsToStop = 5;

// Sum of terms t_k with the relative-quiet stopping rule shared by the
// q-integral and the hypergeometric series.
class TruncatedSum {
public:
    explicit TruncatedSum(const Real& tol) : tol_(tol) {}

    // Returns true once the series may stop.
    bool add(const Real& term) {
        sum_ += term;
        if (abs(term) < tol_ * (abs(sum_) + 1)) {
            ++quiet_;
        } else {
            quiet_ = 0;
        }
        return quiet_ >= kQuietTermsToStop;
    }
    const Real& value() const noexcept { return sum_; }

private:
    Real tol_;
    Real sum_ = 0;
    int quiet_ = 0;
};

Real lattice_sum(const std::function<Real(std::size_t)>& f_at, const QParam& q,
                 const PrecisionContext& ctx) {
    TruncatedSum sum(ctx.series_tol());
    const std::size_t budget = ctx.max_terms(q.value());
    Real qk = 1;
    for (std::size_t k = 0; k < budget; ++k) {
        Real fk = f_at(k);
        if (!boost::multiprecision::isfinite(fk)) {
            throw NonFiniteTerm("integrand not finite at lattice index " + std::to_string(k));
        }
        if (sum.add(qk * fk)) return sum.value();
        qk *= q.value();
    }
    throw SeriesDiverged("q-integral did not converge within " + std::to_string(budget) + " lattice points");
}

}  // namespace

PrecisionContext::PrecisionContext(unsigned digits, unsigned guard_digits)
    : digits_(digits), guard_(guard_digits), derived_tol_(true) {
    if (digits_ < 15) throw ValidationError("digits must be >= 15");
    if (guard_ < 10) throw ValidationError("guard_digits must be >= 10");
    PrecisionGuard guard(working_digits());
    series_tol_ = pow10_neg(static_cast<int>(working_digits()));
}

PrecisionContext::PrecisionContext(unsigned digits, unsigned guard_digits, const Real& series_tol)
    : PrecisionContext(digits, guard_digits) {
    PrecisionGuard guard(working_digits());
    if (!(series_tol > 0) || series_tol > pow10_neg(static_cast<int>(digits_))) {
        throw ValidationError("series_tol must lie in (0, 10^-digits]");
    }
    series_tol_ = series_tol;
    derived_tol_ = false;
}

PrecisionContext PrecisionContext::widened(unsigned extra) const {
    PrecisionContext out(digits_, guard_ + extra);
    if (!derived_tol_) {
        out.series_tol_ = series_tol_;
        out.derived_tol_ = false;
    }
    return out;
}

Real PrecisionContext::tolerance(int slack) const {
    return pow10_neg(static_cast<int>(digits_) - slack);
}

Real PrecisionContext::near_zero() const { return pow10_neg(static_cast<int>(digits_ / 2)); }

std::size_t PrecisionContext::max_terms(const Real& q) const {
    // Terms needed for plain geometric decay q^k to reach the working
    // precision, with generous slack for slower integrands.
    const double lq = -std::log10(q.convert_to<double>());
    const double expected = static_cast<double>(working_digits()) / lq;
    return static_cast<std::size_t>(8.0 * expected) + 200;
}

QParam::QParam(const Real& q) : q_(q) {
    if (!(q_ > 0 && q_ < 1)) throw ValidationError("q must satisfy 0 < q < 1");
}

Lattice::Lattice(const QParam& q) : q_(q) {
    points_.push_back(1 / q_.value());
    points_.push_back(Real(1));
}

const Real& Lattice::point(long k) const {
    if (k < -1) throw IndexOutOfRange("lattice index below -1");
    const auto idx = static_cast<std::size_t>(k + 1);
    while (points_.size() <= idx) points_.push_back(points_.back() * q_.value());
    return points_[idx];
}

Real qpoch_fin(const Real& a, const QParam& q, std::size_t n) {
    Real prod = 1;
    Real aqk = a;
    for (std::size_t k = 0; k < n; ++k) {
        prod *= 1 - aqk;
        aqk *= q.value();
    }
    return prod;
}

Real qpoch_inf(const Real& a, const QParam& q, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    const Real stop = ctx.series_tol() * (1 - q.value());
    Real prod = 1;
    Real aqk = a;
    while (abs(aqk) >= stop) {
        prod *= 1 - aqk;
        aqk *= q.value();
    }
    return prod;
}

Real qint_lattice(const std::function<Real(std::size_t)>& f_at, const QParam& q,
                  const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    return (1 - q.value()) * lattice_sum(f_at, q, ctx);
}

Real qint(const std::function<Real(const Real&)>& f, const Real& a, const Real& b, const QParam& q,
          const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    auto endpoint = [&](const Real& end) -> Real {
        if (end == 0) return Real(0);
        Real point = end;
        // lattice_sum visits indices in order, so points advance by one factor of q.
        auto at = [&](std::size_t k) -> Real {
            if (k > 0) point *= q.value();
            return f(point);
        };
        return end * (1 - q.value()) * lattice_sum(at, q, ctx);
    };
    return endpoint(b) - endpoint(a);
}

Real dq(const std::function<Real(const Real&)>& f, const Real& x, const QParam& q) {
    if (x == 0) throw ZeroPoint("q-difference operator at x = 0");
    return (f(x) - f(q.value() * x)) / (x * (1 - q.value()));
}

Real phi21(const Real& a1, const Real& a2, const Real& b1, const QParam& q, const Real& z,
           const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    const Real tiny = pow10_neg(static_cast<int>(ctx.working_digits()));
    TruncatedSum sum(ctx.series_tol());
    Real term = 1;
    Real ql = 1;  // q^l
    const std::size_t budget = ctx.max_terms(q.value()) + ctx.max_terms(abs(z) < 1 && z != 0 ? abs(z) : Real("0.5"));
    for (std::size_t l = 0; l < budget; ++l) {
        if (sum.add(term)) return sum.value();
        const Real den = (1 - b1 * ql) * (1 - ql * q.value());
        if (abs(1 - b1 * ql) < tiny) {
            throw PoleInDenominator("(b1;q)_l vanishes at l = " + std::to_string(l + 1));
        }
        term *= (1 - a1 * ql) * (1 - a2 * ql) * z / den;
        ql *= q.value();
    }
    throw SeriesDiverged("2phi1 did not converge; |z| = " + format_real(abs(z), 6));
}

}  // namespace qorth
