#include "qorth/moments.hpp"

#include "qorth/errors.hpp"

namespace qorth {

PrecisionContext moment_context(const PrecisionContext& ctx, unsigned N) {
    return ctx.widened(2 * N * kDigitsLostPerHankelDimension);
}

Real moment_series(const LatticeWeight& weight, unsigned k, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    return qint_lattice(
        [&](std::size_t i) { return pow(weight.point(static_cast<long>(i)), k) * weight.value(i); },
        weight.spec().q(), ctx);
}

Real moment_series(const WeightSpec& spec, unsigned k, const PrecisionContext& ctx) {
    LatticeWeight weight(spec, ctx);
    return moment_series(weight, k, ctx);
}

Real moment_ex1(const Real& alpha, const Real& c, const QParam& q, unsigned k, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    const Real& qv = q.value();
    const Real z = pow(qv, alpha + k + 1);
    return (1 - qv) * qpoch_inf(qv, q, ctx) * qpoch_inf(c * qv, q, ctx) *
           phi21(Real(0), Real(0), c * qv, q, z, ctx);
}

Real moment_ex2(const Real& alpha, const Real& c1, const Real& c2, const QParam& q, unsigned k,
                const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    const Real& qv = q.value();
    const Real z = c1 / c2 * pow(qv, alpha + 1 + k);
    if (!(abs(z) < 1)) {
        throw SeriesDiverged("2phi1 argument (c1/c2) q^(alpha+1+k) = " + format_real(z, 8) +
                             " lies outside |z| < 1");
    }
    const Real c2_poch = qpoch_inf(c2, q, ctx);
    if (c2_poch == 0) throw PoleInDenominator("(c2;q)_inf vanishes");
    return (1 - qv) * qpoch_inf(qv, q, ctx) * qpoch_inf(qv / c1, q, ctx) * qpoch_inf(c1, q, ctx) / c2_poch *
           phi21(Real(0), Real(0), qv / c2, q, z, ctx);
}

MomentSequence compute_moments(const WeightSpec& spec, unsigned N, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    LatticeWeight weight(spec, ctx);
    MomentSequence out{{}, spec};
    out.mu.reserve(2 * N + 1);
    for (unsigned k = 0; k <= 2 * N; ++k) out.mu.push_back(moment_series(weight, k, ctx));
    if (!(out.mu[0] > 0)) throw ValidationError("mu_0 is not positive");
    return out;
}

}  // namespace qorth
