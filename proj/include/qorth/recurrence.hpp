#pragma once

#include "qorth/moments.hpp"
#include "qorth/qcore.hpp"
#include "qorth/weights.hpp"

#include <functional>
#include <vector>

namespace qorth {

/// Coefficients of x p_n = a_{n+1} p_{n+1} + b_n p_n + a_n p_{n-1} for the
/// orthonormal p_n. a2 has N+1 entries (a2[0] = 0), b has N.
struct RecurrenceTable {
    std::vector<Real> a2;
    std::vector<Real> b;
    Real mu0;
    Real q;

    unsigned degree() const { return static_cast<unsigned>(b.size()); }
    /// a_n = +sqrt(a2[n]).
    Real a(unsigned n) const;
};

/// LDL^T factorisation of the Hankel matrix (mu_{i+j}), 0 <= i,j <= N.
/// The pivots are the squared norms of the monic polynomials, the unit
/// lower factor holds their coefficients:
///   a_n^2 = D_n / D_{n-1},  b_n = L_{n+1,n} - L_{n,n-1},  b_0 = mu_1/mu_0.
/// Throws NotPositiveDefinite on a non-positive pivot.
RecurrenceTable table_from_moments(const MomentSequence& moments, unsigned N, const PrecisionContext& ctx);

/// Orthonormal p_n(x) by forward recurrence. Throws IndexOutOfRange for n > N.
Real eval_pn(const RecurrenceTable& table, unsigned n, const Real& x);

/// p_0(x) .. p_upto(x).
std::vector<Real> eval_all_pn(const RecurrenceTable& table, const Real& x, unsigned upto);

/// Weight and p_0..p_N sampled on q^k (k >= -1 for the polynomials),
/// filled lazily. Not thread-safe; one per computation.
class PolynomialLattice {
public:
    PolynomialLattice(const WeightSpec& spec, const RecurrenceTable& table, const PrecisionContext& ctx);

    const RecurrenceTable& table() const noexcept { return table_; }
    const WeightSpec& spec() const noexcept { return weight_.spec(); }
    const PrecisionContext& context() const noexcept { return ctx_; }
    const QParam& q() const noexcept { return weight_.spec().q(); }
    const Real& x(long k) const { return weight_.point(k); }
    const Real& w(std::size_t k) const { return weight_.value(k); }
    /// p_0..p_N at q^k.
    const std::vector<Real>& p(long k) const;

    /// (1-q) sum_k q^k f(k).
    Real integrate(const std::function<Real(std::size_t)>& f_at) const;

private:
    RecurrenceTable table_;
    PrecisionContext ctx_;
    LatticeWeight weight_;
    mutable std::vector<std::vector<Real>> values_;  // values_[i] at q^(i-1)
};

/// max_{m,n <= N} |int p_m p_n w d_q x - delta_mn|.
Real gram_residual(const WeightSpec& spec, const RecurrenceTable& table, unsigned N, const PrecisionContext& ctx);
Real gram_residual(const PolynomialLattice& lattice, unsigned N);

/// Deviations of int p_n(y) p_n(y/q) w = q^{-n} and int p_n(y) p_{n-1}(y/q) w = 0.
struct AuxOrthogonality {
    Real same_degree = 0;
    Real adjacent = 0;
};
AuxOrthogonality aux_orthogonality(const PolynomialLattice& lattice, unsigned N);

}  // namespace qorth
