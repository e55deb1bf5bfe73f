#include "qorth/identities.hpp"

namespace qorth::identities {

namespace {

Real qpow(const PotentialParams& p, int e) { return pow(p.q, e); }

}  // namespace

Real r_prev_denominator(const PotentialParams& p, int n, const Real& r_n, const Real& R_n) {
    return (qpow(p, n) - 1 - r_n) * R_n;
}

Real r_prev_from(const PotentialParams& p, int n, const Real& r_n, const Real& R_n) {
    return -p.k2 * qpow(p, -n) * r_n * (r_n + p.k1) / r_prev_denominator(p, n, r_n, R_n);
}

Real r_next_denominator(const PotentialParams& p, int n, const Real& r_next, const Real& R_n) {
    return (qpow(p, n + 1) - 1 - r_next) * R_n;
}

Real r_next_from(const PotentialParams& p, int n, const Real& r_next, const Real& R_n) {
    return -p.k2 * qpow(p, -1 - n) * r_next * (r_next + p.k1) / r_next_denominator(p, n, r_next, R_n);
}

Real rn_squared_denominator(const PotentialParams& p, int n, const Real& r_prev, const Real& r_cur) {
    const Real qn1 = qpow(p, n) - 1;
    return (qn1 - r_cur) * (r_prev * (qn1 - r_cur) + qn1 * (r_cur + p.k1));
}

Real rn_squared(const PotentialParams& p, int n, const Real& r_prev, const Real& r_cur, const Real& r_next) {
    const Real qn1 = qpow(p, n) - 1;
    const Real num = -p.k2 * qpow(p, -1 - n) * r_cur * (r_cur + p.k1) *
                     (r_cur * (qn1 - r_next) + qn1 * (r_next + p.k1));
    return num / rn_squared_denominator(p, n, r_prev, r_cur);
}

Real quadratic_rhs(const PotentialParams& p, int n, const Real& r_cur, const Real& r_next) {
    return -p.k2 * qpow(p, -2 * n - 1) * ((1 + r_cur) * (1 + r_next) - (1 - p.k1));
}

Real second_degree_residual(const PotentialParams& p, int n, const Real& f, const Real& g) {
    return f * f - 2 * f * g + g * g - p.k3 * p.k3 * qpow(p, -2 * n - 2) * f;
}

}  // namespace qorth::identities
