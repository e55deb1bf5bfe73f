#pragma once

// q-calculus kernel: Pochhammer symbols, the Jackson q-integral, the
// q-difference operator and 2phi1.

#include "qorth/real.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace qorth {

/// Target accuracy of a computation. Arithmetic runs at
/// digits + guard_digits; results are reported at digits.
class PrecisionContext {
public:
    explicit PrecisionContext(unsigned digits = 50, unsigned guard_digits = 10);
    /// Explicit truncation threshold; must satisfy 0 < series_tol <= 10^-digits.
    PrecisionContext(unsigned digits, unsigned guard_digits, const Real& series_tol);

    unsigned digits() const noexcept { return digits_; }
    unsigned guard_digits() const noexcept { return guard_; }
    unsigned working_digits() const noexcept { return digits_ + guard_; }
    const Real& series_tol() const noexcept { return series_tol_; }

    /// Same target digits with `extra` more guard digits; a derived
    /// series_tol follows the new working precision.
    PrecisionContext widened(unsigned extra) const;

    /// 10^-(digits - slack), the family of reported tolerances.
    Real tolerance(int slack) const;

    /// Threshold below which a denominator counts as vanished: 10^-(digits/2).
    Real near_zero() const;

    /// Term budget for a series whose terms decay at least like q^k.
    std::size_t max_terms(const Real& q) const;

private:
    unsigned digits_;
    unsigned guard_;
    bool derived_tol_;
    Real series_tol_;
};

/// Base of the lattice, 0 < q < 1.
class QParam {
public:
    explicit QParam(const Real& q);
    const Real& value() const noexcept { return q_; }
    operator const Real&() const noexcept { return q_; }

private:
    Real q_;
};

/// Points q^k of the exponential lattice, k >= -1, built by repeated
/// multiplication and cached.
class Lattice {
public:
    explicit Lattice(const QParam& q);
    const QParam& q() const noexcept { return q_; }
    /// q^k for k >= -1.
    const Real& point(long k) const;

private:
    QParam q_;
    mutable std::vector<Real> points_;  // points_[i] = q^(i-1)
};

/// (a;q)_n = prod_{k<n} (1 - a q^k).
Real qpoch_fin(const Real& a, const QParam& q, std::size_t n);

/// (a;q)_inf, extended until |a q^k| drops below series_tol * (1 - q).
Real qpoch_inf(const Real& a, const QParam& q, const PrecisionContext& ctx);

/// Jackson integral from a to b:
///   b(1-q) sum q^n f(b q^n) - a(1-q) sum q^n f(a q^n).
/// Each series stops once 5 consecutive terms fall below
/// series_tol * (|partial sum| + 1).
Real qint(const std::function<Real(const Real&)>& f, const Real& a, const Real& b, const QParam& q,
          const PrecisionContext& ctx);

/// (1-q) sum_k q^k f_k with f_k = f(q^k) supplied by lattice index. Same
/// truncation rule as qint.
Real qint_lattice(const std::function<Real(std::size_t)>& f_at, const QParam& q,
                  const PrecisionContext& ctx);

/// (f(x) - f(qx)) / (x(1-q)); throws ZeroPoint at x = 0.
Real dq(const std::function<Real(const Real&)>& f, const Real& x, const QParam& q);

/// 2phi1(a1, a2; b1; q; z) by incremental term ratios.
Real phi21(const Real& a1, const Real& a2, const Real& b1, const QParam& q, const Real& z,
           const PrecisionContext& ctx);

}  // namespace qorth
