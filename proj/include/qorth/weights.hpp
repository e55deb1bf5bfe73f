#pragma once

// Semi-classical weights on the lattice {q^k} assembled from the building
// blocks
//   V1 = x^a, V2 = (cx;q)_inf, V3 = (cx^2;q^2)_inf,
//   V4 = (c/x;q)_inf, V5 = (c/x^2;q^2)_inf,
// each optionally inverted, together with the potential
//   u(x) = k1 q / ((1-q) x) + (k2 x + k3) / (1-q)
// read off from w(x/q)/w(x) = A x^2 + B x + C.

#include "qorth/qcore.hpp"
#include "qorth/real.hpp"

#include <nlohmann/json_fwd.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qorth {

enum class FactorKind { V1, V2, V3, V4, V5 };

std::string_view to_string(FactorKind kind);
FactorKind factor_kind_from_string(std::string_view name);

struct WeightFactor {
    FactorKind kind;
    Real param;            ///< exponent for V1, c for V2..V5
    bool inverse = false;  ///< factor appears in the denominator
};

/// Asymptotics of w(q^{k+1}) / w(q^k) as k grows: behaves like
/// limit * q^{-(k+1) order}. order < 0 is super-geometric decay, order > 0
/// super-geometric growth.
struct TailRatio {
    int order = 0;
    Real limit = 1;
};

class WeightSpec {
public:
    /// Validates positivity on the first 50 lattice points and the boundary
    /// conditions w(0) = w(1/q) = 0. Throws ValidationError.
    WeightSpec(QParam q, std::vector<WeightFactor> factors, const PrecisionContext& ctx);

    /// No validation. For identities that hold pointwise, such as the
    /// Pearson equation, on parameter points that are not orthogonality
    /// weights.
    static WeightSpec unvalidated(QParam q, std::vector<WeightFactor> factors);

    const QParam& q() const noexcept { return q_; }
    std::span<const WeightFactor> factors() const noexcept { return factors_; }
    /// Positive constant multiplying the product of factors.
    const Real& scale() const noexcept { return scale_; }

    WeightSpec scaled(const Real& lambda) const;

    TailRatio tail_ratio() const;

private:
    WeightSpec(QParam q, std::vector<WeightFactor> factors, Real scale);

    QParam q_;
    std::vector<WeightFactor> factors_;
    Real scale_;
};

/// x^a (qx;q)_inf (cqx;q)_inf.
WeightSpec example1_weight(const Real& alpha, const Real& c, const QParam& q,
                           const PrecisionContext& ctx);
/// x^a (qx;q)_inf (c1/x;q)_inf (qx/c1;q)_inf / (c2/x;q)_inf.
WeightSpec example2_weight(const Real& alpha, const Real& c1, const Real& c2, const QParam& q,
                           const PrecisionContext& ctx);
/// x^a (qx;q)_inf.
WeightSpec little_q_laguerre_weight(const Real& alpha, const QParam& q, const PrecisionContext& ctx);

std::vector<WeightFactor> example1_factors(const Real& alpha, const Real& c, const QParam& q);
std::vector<WeightFactor> example2_factors(const Real& alpha, const Real& c1, const Real& c2,
                                           const QParam& q);

Real eval_factor(const WeightFactor& factor, const QParam& q, const Real& x, const PrecisionContext& ctx);
Real eval_weight(const WeightSpec& spec, const Real& x, const PrecisionContext& ctx);

/// Lazily filled cache of w(q^k), k >= 0. Not thread-safe; one per computation.
class LatticeWeight {
public:
    LatticeWeight(const WeightSpec& spec, const PrecisionContext& ctx);
    const WeightSpec& spec() const noexcept { return spec_; }
    const Lattice& lattice() const noexcept { return lattice_; }
    const Real& point(long k) const { return lattice_.point(k); }
    const Real& value(std::size_t k) const;

private:
    WeightSpec spec_;
    PrecisionContext ctx_;
    Lattice lattice_;
    mutable std::vector<Real> values_;
};

struct RatioCoeffs {
    Real A, B, C;
};

/// Composes the per-factor ratios w(x/q)/w(x) as an exact rational
/// function, divides out the denominator and returns the quadratic.
/// Throws NotSemiclassical if the reduced ratio is not a polynomial of
/// degree <= 2, or if the composed quadratic fails the numeric check
/// against eval_weight.
RatioCoeffs ratio_coeffs(const WeightSpec& spec, const PrecisionContext& ctx);

struct PotentialParams {
    Real k1, k2, k3;
    Real q;

    /// k2 vanishes relative to the other parameters (classical weight).
    bool degenerate(const Real& tol) const;
};

PotentialParams potential_from_ratio(const RatioCoeffs& ratio, const QParam& q, const Real& tol);
PotentialParams potential_from_ratio(const RatioCoeffs& ratio, const QParam& q);

Real eval_potential(const PotentialParams& params, const Real& x);

/// (u(qx) - u(y)) / (qx - y) in closed form.
Real potential_divided_difference(const PotentialParams& params, const Real& x, const Real& y);

/// |-u(qx) w(qx) - D_q w(x)|.
Real pearson_residual(const WeightSpec& spec, const PotentialParams& params, const Real& x,
                      const PrecisionContext& ctx);

/// Weight spec JSON: {"q": "...", "factors": [{"kind": "V1", "param": "...",
/// "inverse": false}], "scale": "..."}; "inverse" and "scale" are optional.
nlohmann::json weight_spec_to_json(const WeightSpec& spec, unsigned digits);
WeightSpec weight_spec_from_json(const nlohmann::json& doc, const PrecisionContext& ctx);

}  // namespace qorth
