#pragma once

// Closed-form right-hand sides of the discrete system shared by the
// definition route (ladder) and the recursion route (painleve). Pure
// arithmetic in the caller's precision.

#include "qorth/real.hpp"
#include "qorth/weights.hpp"

namespace qorth::identities {

/// R_{n-1} = -k2 q^-n r_n (r_n + k1) / ((q^n - 1 - r_n) R_n).
Real r_prev_from(const PotentialParams& p, int n, const Real& r_n, const Real& R_n);
Real r_prev_denominator(const PotentialParams& p, int n, const Real& r_n, const Real& R_n);

/// R_{n+1} = -k2 q^{-1-n} r_{n+1} (r_{n+1} + k1) / ((q^{n+1} - 1 - r_{n+1}) R_n).
Real r_next_from(const PotentialParams& p, int n, const Real& r_next, const Real& R_n);
Real r_next_denominator(const PotentialParams& p, int n, const Real& r_next, const Real& R_n);

/// Right-hand side of the R_n^2 relation in r_{n-1}, r_n, r_{n+1} (called f).
Real rn_squared(const PotentialParams& p, int n, const Real& r_prev, const Real& r_cur, const Real& r_next);
Real rn_squared_denominator(const PotentialParams& p, int n, const Real& r_prev, const Real& r_cur);

/// Right-hand side of R_n^2 - k3 q^{-n-1} R_n = g:
///   g = -k2 q^{-2n-1} ((1 + r_n)(1 + r_{n+1}) - (1 - k1)).
Real quadratic_rhs(const PotentialParams& p, int n, const Real& r_cur, const Real& r_next);

/// f^2 - 2 f g + g^2 - k3^2 q^{-2n-2} f.
Real second_degree_residual(const PotentialParams& p, int n, const Real& f, const Real& g);

}  // namespace qorth::identities
