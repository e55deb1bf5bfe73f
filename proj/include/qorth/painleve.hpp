#pragma once

// Recurrence coefficients by recursion: forward iteration of the discrete
// system from (r_0, R_0, b_0), and for k3 = 0 the q-P_V orbit
//   (x_n x_{n-1} - 1)(x_n x_{n+1} - 1)
//     = gd q^{2n} (x_n - a)(x_n - 1/a)(x_n - b)(x_n - 1/b) / ((x_n - g q^n)(x_n - d q^n))
// in x_n = (1 + r_n) / p, p = sqrt(1 - k1), with a = b = g = d = 1/p.

#include "qorth/qcore.hpp"
#include "qorth/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qorth {

struct PainleveParams {
    PotentialParams params;
    Real b0;                ///< mu_1 / mu_0
    std::optional<Real> p;  ///< sqrt(1 - k1) when 1 - k1 > 0

    /// Throws DegenerateK2 when k2 vanishes relative to k1, k3.
    static PainleveParams make(const PotentialParams& params, const Real& b0, const PrecisionContext& ctx);

    bool k3_vanishes(const PrecisionContext& ctx) const;
};

/// Where and why a recursion stopped early.
struct Halt {
    unsigned index = 0;
    std::string reason;
};

struct OrbitState {
    std::vector<Real> x;  ///< (1 + r_n) / p, empty without p
    std::vector<Real> r;
    std::vector<Real> R;
    std::vector<Real> b;
    std::vector<Real> a2;
    /// Estimated decimal digits lost by step n, from a shadow run at lower precision.
    std::vector<double> digit_loss;
    std::optional<Halt> halt;

    std::size_t size() const { return r.size(); }
};

/// r_{n+1} = -b_n R_n - k1 - r_n,
/// a_{n+1}^2 = q^2 a_n^2 + (q^{n+1} - q^{n+2} - q^{n+2} r_n + q^{n+1} r_{n+1}) / k2,
/// R_{n+1} from the shifted R relation, b_{n+1} = q b_n + q^{n+1}(q R_{n+1} - R_n) / k2,
/// starting at r_0 = 0, a_0^2 = 0, R_0 = (k2 b_0 + k3) / q. Produces indices
/// 0..N unless a denominator drops below 10^-(digits/2), in which case the
/// state is truncated and `halt` says where.
OrbitState iterate_system(const PainleveParams& pp, unsigned N, const PrecisionContext& ctx);

/// Parameters (a, b, g, d) of the q-P_V right-hand side.
struct QpvParams {
    Real pv_alpha, pv_beta, pv_gamma, pv_delta;

    static QpvParams all_equal(const Real& v) { return {v, v, v, v}; }
};

/// x_{n+1} from (x_{n-1}, x_n). Throws SingularStep when x_n, x_n x_{n-1} - 1
/// or the right-hand denominator falls below `near_zero`.
Real qpv_step(const Real& x_prev, const Real& x_cur, unsigned n, const QpvParams& pv, const Real& q,
              const Real& near_zero);
Real qpv_step(const Real& x_prev, const Real& x_cur, unsigned n, const PainleveParams& pp,
              const PrecisionContext& ctx);

/// x_{n-1} from (x_n, x_{n+1}); the map is symmetric in the outer points.
Real qpv_step_back(const Real& x_cur, const Real& x_next, unsigned n, const QpvParams& pv, const Real& q,
                   const Real& near_zero);

/// x_0 = 1/p, x_1 = p - k2 b0^2 / (q p), then q-P_V steps up to x_N.
/// Requires k3 = 0 and real p (ValidationError otherwise).
std::vector<Real> qpv_orbit(const PainleveParams& pp, unsigned N, const PrecisionContext& ctx);

struct OrbitCoefficients {
    std::vector<Real> a2;  ///< q^n (p x_n - q^n) / k2, one per orbit point
    std::vector<Real> b2;  ///< -q^{2n+1}(p x_n + p x_{n+1} - 1 - p^2)^2 / (k2 p^2 (x_n x_{n+1} - 1))
};

OrbitCoefficients coeffs_from_orbit(const std::vector<Real>& x, const PainleveParams& pp,
                                    const PrecisionContext& ctx);

/// |LHS - RHS| of the r_n form of the q-P_V equation for x^a (qx;q)(-qx;q):
///   r_n^2 (r_n + 1 - q^-a)^2
///     = q^-2n (r_n + 1 - q^n)^2 ((r_n+1)(r_{n+1}+1) - q^-a) ((r_n+1)(r_{n-1}+1) - q^-a).
Real rn_equation_residual(const Real& r_prev, const Real& r_cur, const Real& r_next, const Real& alpha,
                          const Real& q, unsigned n);

/// |f^2 - 2 f g + g^2 - k3^2 q^{-2n-2} f| with f the R_n^2 right-hand side
/// and g the quadratic right-hand side. Throws DivisionNearZero on f's denominator.
Real thm1_residual(const Real& r_prev, const Real& r_cur, const Real& r_next, const PotentialParams& params,
                   unsigned n, const PrecisionContext& ctx);

}  // namespace qorth
