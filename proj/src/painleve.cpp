#include "qorth/painleve.hpp"

#include "qorth/errors.hpp"
#include "qorth/identities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qorth {

namespace {

constexpr unsigned kShadowDigitGap = 20;

Real rounded(const Real& v, unsigned digits10) {
    Real out = v;
    out.precision(digits10);
    return out;
}

// One run of the forward scheme at the current default precision.
OrbitState run_system(const PainleveParams& pp, unsigned N, const Real& near_zero) {
    const unsigned digits = Real::default_precision();
    const Real k1 = rounded(pp.params.k1, digits);
    const Real k2 = rounded(pp.params.k2, digits);
    const Real k3 = rounded(pp.params.k3, digits);
    const Real q = rounded(pp.params.q, digits);
    const PotentialParams P{k1, k2, k3, q};

    OrbitState s;
    s.r.push_back(Real(0));
    s.a2.push_back(Real(0));
    s.b.push_back(rounded(pp.b0, digits));
    s.R.push_back((k2 * s.b[0] + k3) / q);

    Real qn1 = q;  // q^{n+1}
    for (unsigned n = 0; n < N; ++n) {
        const int ni = static_cast<int>(n);
        if (abs(s.R[n]) < near_zero) {
            s.halt = Halt{n, "|R_" + std::to_string(n) + "| below 10^-(digits/2)"};
            break;
        }
        const Real r_next = -s.b[n] * s.R[n] - k1 - s.r[n];
        if (abs(qn1 - 1 - r_next) < near_zero) {
            s.halt = Halt{n, "|q^" + std::to_string(n + 1) + " - 1 - r_" + std::to_string(n + 1) +
                                 "| below 10^-(digits/2)"};
            break;
        }
        const Real a2_next = q * q * s.a2[n] + (qn1 - qn1 * q - qn1 * q * s.r[n] + qn1 * r_next) / k2;
        const Real R_next = identities::r_next_from(P, ni, r_next, s.R[n]);
        const Real b_next = q * s.b[n] + qn1 * (q * R_next - s.R[n]) / k2;
        s.r.push_back(r_next);
        s.a2.push_back(a2_next);
        s.R.push_back(R_next);
        s.b.push_back(b_next);
        qn1 *= q;
    }
    return s;
}

double digits_lost(const Real& exact, const Real& shadow, unsigned shadow_digits) {
    const Real diff = abs(exact - shadow);
    if (diff == 0) return 0.0;
    const Real scale = std::max(Real(abs(exact)), Real(pow10_neg(static_cast<int>(shadow_digits))));
    const double correct = -std::log10((diff / scale).convert_to<double>());
    return std::max(0.0, static_cast<double>(shadow_digits) - correct);
}

void require_qpv(const PainleveParams& pp, const PrecisionContext& ctx) {
    if (!pp.k3_vanishes(ctx)) throw ValidationError("qP_V requires k3=0");
    if (!pp.p) throw ValidationError("qP_V requires 1 - k1 > 0");
}

}  // namespace

PainleveParams PainleveParams::make(const PotentialParams& params, const Real& b0, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    if (params.degenerate(ctx.tolerance(0))) {
        throw DegenerateK2("k2=0 degenerate (classical weight): the discrete system does not determine a_n");
    }
    PainleveParams pp{params, b0, std::nullopt};
    const Real one_minus_k1 = 1 - params.k1;
    if (one_minus_k1 > 0) pp.p = sqrt(one_minus_k1);
    return pp;
}

bool PainleveParams::k3_vanishes(const PrecisionContext& ctx) const {
    return abs(params.k3) <= ctx.tolerance(0) * (1 + abs(params.k1) + abs(params.k2));
}

OrbitState iterate_system(const PainleveParams& pp, unsigned N, const PrecisionContext& ctx) {
    const unsigned working = ctx.working_digits();
    const unsigned shadow_digits = working > kShadowDigitGap + 15 ? working - kShadowDigitGap : 15;

    OrbitState shadow;
    {
        PrecisionGuard guard(shadow_digits);
        shadow = run_system(pp, N, ctx.near_zero());
    }
    PrecisionGuard guard(working);
    OrbitState s = run_system(pp, N, ctx.near_zero());

    for (std::size_t n = 0; n < s.size(); ++n) {
        if (n >= shadow.size()) {
            s.digit_loss.push_back(static_cast<double>(shadow_digits));
            continue;
        }
        const double loss = std::max({digits_lost(s.r[n], shadow.r[n], shadow_digits),
                                      digits_lost(s.a2[n], shadow.a2[n], shadow_digits),
                                      digits_lost(s.b[n], shadow.b[n], shadow_digits)});
        s.digit_loss.push_back(loss);
    }
    if (pp.p) {
        for (const auto& r : s.r) s.x.push_back((1 + r) / *pp.p);
    }
    return s;
}

Real qpv_step(const Real& x_prev, const Real& x_cur, unsigned n, const QpvParams& pv, const Real& q,
              const Real& near_zero) {
    const Real qn = pow(q, static_cast<int>(n));
    const Real lhs_factor = x_cur * x_prev - 1;
    const Real den = (x_cur - pv.pv_gamma * qn) * (x_cur - pv.pv_delta * qn);
    if (abs(x_cur) < near_zero || abs(lhs_factor) < near_zero || abs(den) < near_zero) {
        throw SingularStep("q-P_V step hits a vanishing denominator at n = " + std::to_string(n),
                           static_cast<int>(n));
    }
    const Real rhs = pv.pv_gamma * pv.pv_delta * qn * qn * (x_cur - pv.pv_alpha) * (x_cur - 1 / pv.pv_alpha) *
                     (x_cur - pv.pv_beta) * (x_cur - 1 / pv.pv_beta) / den;
    return (1 + rhs / lhs_factor) / x_cur;
}

Real qpv_step_back(const Real& x_cur, const Real& x_next, unsigned n, const QpvParams& pv, const Real& q,
                   const Real& near_zero) {
    return qpv_step(x_next, x_cur, n, pv, q, near_zero);
}

Real qpv_step(const Real& x_prev, const Real& x_cur, unsigned n, const PainleveParams& pp,
              const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    require_qpv(pp, ctx);
    return qpv_step(x_prev, x_cur, n, QpvParams::all_equal(1 / *pp.p), pp.params.q, ctx.near_zero());
}

std::vector<Real> qpv_orbit(const PainleveParams& pp, unsigned N, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    require_qpv(pp, ctx);
    const Real& p = *pp.p;
    const Real& q = pp.params.q;
    const QpvParams pv = QpvParams::all_equal(1 / p);
    std::vector<Real> x{1 / p};
    if (N >= 1) x.push_back(p - pp.params.k2 / (q * p) * pp.b0 * pp.b0);
    for (unsigned n = 1; n < N; ++n) x.push_back(qpv_step(x[n - 1], x[n], n, pv, q, ctx.near_zero()));
    return x;
}

OrbitCoefficients coeffs_from_orbit(const std::vector<Real>& x, const PainleveParams& pp,
                                    const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    if (!pp.p) throw ValidationError("orbit coefficients require 1 - k1 > 0");
    const Real& p = *pp.p;
    const Real& q = pp.params.q;
    const Real& k2 = pp.params.k2;
    OrbitCoefficients out;
    for (std::size_t n = 0; n < x.size(); ++n) {
        const Real qn = pow(q, static_cast<int>(n));
        out.a2.push_back(qn * (p * x[n] - qn) / k2);
        if (n + 1 < x.size()) {
            const Real den = x[n] * x[n + 1] - 1;
            if (abs(den) < ctx.near_zero()) {
                throw SingularStep("x_n x_{n+1} - 1 vanishes at n = " + std::to_string(n), static_cast<int>(n));
            }
            const Real s = p * x[n] + p * x[n + 1] - 1 - p * p;
            out.b2.push_back(-qn * qn * q * s * s / (k2 * p * p * den));
        }
    }
    return out;
}

Real rn_equation_residual(const Real& r_prev, const Real& r_cur, const Real& r_next, const Real& alpha,
                          const Real& q, unsigned n) {
    const int ni = static_cast<int>(n);
    const Real qa = pow(q, -alpha);
    const Real t = r_cur + 1 - qa;
    const Real lhs = r_cur * r_cur * t * t;
    const Real u = r_cur + 1 - pow(q, ni);
    const Real rhs = pow(q, -2 * ni) * u * u * ((r_cur + 1) * (r_next + 1) - qa) * ((r_cur + 1) * (r_prev + 1) - qa);
    return abs(lhs - rhs);
}

Real thm1_residual(const Real& r_prev, const Real& r_cur, const Real& r_next, const PotentialParams& params,
                   unsigned n, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    const int ni = static_cast<int>(n);
    if (abs(identities::rn_squared_denominator(params, ni, r_prev, r_cur)) < ctx.near_zero()) {
        throw DivisionNearZero("R_n^2 relation denominator vanishes at n = " + std::to_string(n), ni);
    }
    const Real f = identities::rn_squared(params, ni, r_prev, r_cur, r_next);
    const Real g = identities::quadratic_rhs(params, ni, r_cur, r_next);
    return abs(identities::second_degree_residual(params, ni, f, g));
}

}  // namespace qorth
