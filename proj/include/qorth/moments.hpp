#pragma once

#include "qorth/qcore.hpp"
#include "qorth/weights.hpp"

#include <vector>

namespace qorth {

/// mu_0 .. mu_{2N} of a weight.
struct MomentSequence {
    std::vector<Real> mu;
    WeightSpec spec;

    std::size_t max_degree() const { return mu.empty() ? 0 : (mu.size() - 1) / 2; }
};

/// Hankel dimensions lose roughly this many digits each.
inline constexpr unsigned kDigitsLostPerHankelDimension = 4;

/// Working context for a degree-N computation:
/// digits + guard + 2N * kDigitsLostPerHankelDimension.
PrecisionContext moment_context(const PrecisionContext& ctx, unsigned N);

/// mu_k = int_0^1 x^k w(x) d_q x by lattice summation.
Real moment_series(const WeightSpec& spec, unsigned k, const PrecisionContext& ctx);
Real moment_series(const LatticeWeight& weight, unsigned k, const PrecisionContext& ctx);

/// (1-q) (q;q)_inf (cq;q)_inf 2phi1(0,0;cq;q;q^{a+k+1}).
Real moment_ex1(const Real& alpha, const Real& c, const QParam& q, unsigned k, const PrecisionContext& ctx);

/// (1-q)(q;q)_inf (q/c1;q)_inf (c1;q)_inf/(c2;q)_inf 2phi1(0,0;q/c2;q;(c1/c2) q^{a+1+k}).
Real moment_ex2(const Real& alpha, const Real& c1, const Real& c2, const QParam& q, unsigned k,
                const PrecisionContext& ctx);

/// mu_0 .. mu_{2N} by lattice summation at the context given. Throws
/// ValidationError if mu_0 <= 0.
MomentSequence compute_moments(const WeightSpec& spec, unsigned N, const PrecisionContext& ctx);

}  // namespace qorth
