#include "qorth/weights.hpp"

#include "qorth/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <string>
#include <utility>

namespace qorth {

namespace {

using Poly = std::vector<Real>;  // ascending powers of x

constexpr std::size_t kPositivityPoints = 50;
constexpr int kRatioCheckPoints = 10;

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, Real(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

void trim(Poly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

Real max_abs(const Poly& p) {
    Real m = 0;
    for (const auto& c : p) m = std::max(m, Real(abs(c)));
    return m;
}

// Ratio w(x/q)/w(x) contributed by one factor, as numerator/denominator.
std::pair<Poly, Poly> factor_ratio(const WeightFactor& f, const Real& q) {
    const Real& c = f.param;
    std::pair<Poly, Poly> r;
    switch (f.kind) {
        case FactorKind::V1: r = {{pow(q, -f.param)}, {Real(1)}}; break;
        case FactorKind::V2: r = {{q, -c}, {q}}; break;
        case FactorKind::V3: r = {{q * q, Real(0), -c}, {q * q}}; break;
        case FactorKind::V4: r = {{Real(0), Real(1)}, {-c, Real(1)}}; break;
        case FactorKind::V5: r = {{Real(0), Real(0), Real(1)}, {-c, Real(0), Real(1)}}; break;
    }
    if (f.inverse) std::swap(r.first, r.second);
    return r;
}

bool vanishes_at(const WeightFactor& f, const QParam& q, const Real& x, const PrecisionContext& ctx) {
    if (f.inverse || f.kind == FactorKind::V1) return false;
    return abs(eval_factor(f, q, x, ctx)) <= ctx.tolerance(0);
}

void validate_factors(const std::vector<WeightFactor>& factors) {
    if (factors.empty()) throw ValidationError("weight needs at least one factor");
    for (const auto& f : factors) {
        if (f.kind == FactorKind::V1 && !f.inverse && !(f.param > 0)) {
            throw ValidationError("V1 exponent must be positive");
        }
    }
}

}  // namespace

std::string_view to_string(FactorKind kind) {
    switch (kind) {
        case FactorKind::V1: return "V1";
        case FactorKind::V2: return "V2";
        case FactorKind::V3: return "V3";
        case FactorKind::V4: return "V4";
        case FactorKind::V5: return "V5";
    }
    return "?";
}

FactorKind factor_kind_from_string(std::string_view name) {
    if (name == "V1") return FactorKind::V1;
    if (name == "V2") return FactorKind::V2;
    if (name == "V3") return FactorKind::V3;
    if (name == "V4") return FactorKind::V4;
    if (name == "V5") return FactorKind::V5;
    throw ValidationError("unknown factor kind '" + std::string(name) + "'");
}

WeightSpec::WeightSpec(QParam q, std::vector<WeightFactor> factors, Real scale)
    : q_(std::move(q)), factors_(std::move(factors)), scale_(std::move(scale)) {}

WeightSpec WeightSpec::unvalidated(QParam q, std::vector<WeightFactor> factors) {
    return WeightSpec(std::move(q), std::move(factors), Real(1));
}

WeightSpec::WeightSpec(QParam q, std::vector<WeightFactor> factors, const PrecisionContext& ctx)
    : WeightSpec(std::move(q), std::move(factors), Real(1)) {
    PrecisionGuard guard(ctx.working_digits());
    validate_factors(factors_);

    LatticeWeight lw(*this, ctx);
    for (std::size_t k = 0; k < kPositivityPoints; ++k) {
        if (!(lw.value(k) > 0)) {
            throw ValidationError("weight is not positive at lattice point q^" + std::to_string(k));
        }
    }

    const TailRatio tail = tail_ratio();
    if (tail.order > 0 || (tail.order == 0 && !(tail.limit < 1))) {
        throw ValidationError("weight does not vanish at 0: w(q^{k+1})/w(q^k) tends to " +
                              format_real(tail.limit, 8) +
                              (tail.order > 0 ? " times a growing power of 1/q" : ""));
    }
    const Real inv_q = 1 / q_.value();
    const bool zero_at_inv_q = std::any_of(factors_.begin(), factors_.end(), [&](const WeightFactor& f) {
        return vanishes_at(f, q_, inv_q, ctx);
    });
    if (!zero_at_inv_q) throw ValidationError("weight does not vanish at 1/q");
}

WeightSpec WeightSpec::scaled(const Real& lambda) const {
    if (!(lambda > 0)) throw ValidationError("scale factor must be positive");
    return WeightSpec(q_, factors_, scale_ * lambda);
}

TailRatio WeightSpec::tail_ratio() const {
    TailRatio t;
    for (const auto& f : factors_) {
        const int sign = f.inverse ? -1 : 1;
        switch (f.kind) {
            case FactorKind::V1:
                t.limit *= pow(q_.value(), sign * f.param);
                break;
            case FactorKind::V2:
            case FactorKind::V3:
                break;
            case FactorKind::V4:
            case FactorKind::V5:
                if (f.param == 0) break;
                t.order += sign * (f.kind == FactorKind::V4 ? 1 : 2);
                t.limit *= f.inverse ? Real(-1 / f.param) : Real(-f.param);
                break;
        }
    }
    return t;
}

std::vector<WeightFactor> example1_factors(const Real& alpha, const Real& c, const QParam& q) {
    return {{FactorKind::V1, alpha}, {FactorKind::V2, q.value()}, {FactorKind::V2, c * q.value()}};
}

std::vector<WeightFactor> example2_factors(const Real& alpha, const Real& c1, const Real& c2,
                                           const QParam& q) {
    return {{FactorKind::V1, alpha},
            {FactorKind::V2, q.value()},
            {FactorKind::V4, c1},
            {FactorKind::V2, q.value() / c1},
            {FactorKind::V4, c2, true}};
}

WeightSpec example1_weight(const Real& alpha, const Real& c, const QParam& q, const PrecisionContext& ctx) {
    return WeightSpec(q, example1_factors(alpha, c, q), ctx);
}

WeightSpec example2_weight(const Real& alpha, const Real& c1, const Real& c2, const QParam& q,
                           const PrecisionContext& ctx) {
    if (!(c1 < 0 && c2 < 0)) throw ValidationError("example 2 needs c1 < 0 and c2 < 0");
    return WeightSpec(q, example2_factors(alpha, c1, c2, q), ctx);
}

WeightSpec little_q_laguerre_weight(const Real& alpha, const QParam& q, const PrecisionContext& ctx) {
    return WeightSpec(q, {{FactorKind::V1, alpha}, {FactorKind::V2, q.value()}}, ctx);
}

Real eval_factor(const WeightFactor& f, const QParam& q, const Real& x, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    Real v;
    switch (f.kind) {
        case FactorKind::V1: v = pow(x, f.param); break;
        case FactorKind::V2: v = qpoch_inf(f.param * x, q, ctx); break;
        case FactorKind::V3: v = qpoch_inf(f.param * x * x, QParam(q.value() * q.value()), ctx); break;
        case FactorKind::V4: v = qpoch_inf(f.param / x, q, ctx); break;
        case FactorKind::V5: v = qpoch_inf(f.param / (x * x), QParam(q.value() * q.value()), ctx); break;
    }
    if (f.inverse) {
        if (v == 0) throw NonFiniteTerm("inverted factor " + std::string(to_string(f.kind)) + " vanishes");
        v = 1 / v;
    }
    return v;
}

Real eval_weight(const WeightSpec& spec, const Real& x, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    if (!(x > 0)) throw ValidationError("weight evaluated at non-positive point");
    Real w = spec.scale();
    for (const auto& f : spec.factors()) w *= eval_factor(f, spec.q(), x, ctx);
    if (!boost::multiprecision::isfinite(w)) throw NonFiniteTerm("weight not finite");
    return w;
}

LatticeWeight::LatticeWeight(const WeightSpec& spec, const PrecisionContext& ctx)
    : spec_(spec), ctx_(ctx), lattice_(spec.q()) {}

const Real& LatticeWeight::value(std::size_t k) const {
    if (k < values_.size()) return values_[k];
    PrecisionGuard guard(ctx_.working_digits());
    while (values_.size() <= k) {
        const Real& x = lattice_.point(static_cast<long>(values_.size()));
        values_.push_back(eval_weight(spec_, x, ctx_));
    }
    return values_[k];
}

RatioCoeffs ratio_coeffs(const WeightSpec& spec, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    const Real& q = spec.q().value();
    Poly num{Real(1)};
    Poly den{Real(1)};
    for (const auto& f : spec.factors()) {
        auto [n, d] = factor_ratio(f, q);
        num = poly_mul(num, n);
        den = poly_mul(den, d);
    }
    trim(num);
    trim(den);

    // num = quot * den + rem
    Poly rem = num;
    const std::size_t dd = den.size() - 1;
    Poly quot;
    if (rem.size() > dd) {
        quot.assign(rem.size() - dd, Real(0));
        for (std::size_t i = rem.size(); i-- > dd;) {
            const Real coef = rem[i] / den[dd];
            quot[i - dd] = coef;
            for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= coef * den[j];
        }
    } else {
        quot = {Real(0)};
    }
    rem.resize(dd);
    const Real scale = max_abs(num);
    const Real exact_tol = pow10_neg(static_cast<int>(ctx.working_digits()) - 5) * scale;
    for (const auto& r : rem) {
        if (abs(r) > exact_tol) throw NotSemiclassical("w(x/q)/w(x) is not a polynomial");
    }
    for (auto& c : quot) {
        if (abs(c) <= exact_tol) c = 0;
    }
    trim(quot);
    if (quot.size() > 3) throw NotSemiclassical("w(x/q)/w(x) has degree above 2");
    quot.resize(3, Real(0));
    RatioCoeffs out{quot[2], quot[1], quot[0]};

    const Real check_tol = ctx.tolerance(0);
    Lattice lattice(spec.q());
    for (int k = 1; k <= kRatioCheckPoints; ++k) {
        const Real& x = lattice.point(k);
        const Real lhs = eval_weight(spec, lattice.point(k - 1), ctx) / eval_weight(spec, x, ctx);
        const Real rhs = (out.A * x + out.B) * x + out.C;
        if (abs(lhs - rhs) > check_tol * std::max(Real(1), Real(abs(rhs)))) {
            throw NotSemiclassical("composed ratio disagrees with the weight at q^" + std::to_string(k));
        }
    }
    return out;
}

bool PotentialParams::degenerate(const Real& tol) const {
    return abs(k2) <= tol * (1 + abs(k1) + abs(k3));
}

PotentialParams potential_from_ratio(const RatioCoeffs& ratio, const QParam& q, const Real& tol) {
    PotentialParams p{1 - ratio.C, -ratio.A * q.value(), -ratio.B * q.value(), q.value()};
    if (abs(p.k1) <= tol) throw DegenerateK1("C = 1 gives k1 = 0");
    return p;
}

PotentialParams potential_from_ratio(const RatioCoeffs& ratio, const QParam& q) {
    return potential_from_ratio(ratio, q, Real(0));
}

Real eval_potential(const PotentialParams& p, const Real& x) {
    if (x == 0) throw ZeroPoint("potential evaluated at x = 0");
    return p.k1 * p.q / ((1 - p.q) * x) + (p.k2 * x + p.k3) / (1 - p.q);
}

Real potential_divided_difference(const PotentialParams& p, const Real& x, const Real& y) {
    return p.k1 / ((p.q - 1) * x * y) + p.k2 / (1 - p.q);
}

Real pearson_residual(const WeightSpec& spec, const PotentialParams& params, const Real& x,
                      const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    const Real& q = spec.q().value();
    const Real lhs = -eval_potential(params, q * x) * eval_weight(spec, q * x, ctx);
    const Real rhs = dq([&](const Real& y) { return eval_weight(spec, y, ctx); }, x, spec.q());
    return abs(lhs - rhs);
}

nlohmann::json weight_spec_to_json(const WeightSpec& spec, unsigned digits) {
    nlohmann::json doc;
    doc["q"] = format_real(spec.q().value(), digits);
    doc["factors"] = nlohmann::json::array();
    for (const auto& f : spec.factors()) {
        nlohmann::json jf{{"kind", std::string(to_string(f.kind))}, {"param", format_real(f.param, digits)}};
        if (f.inverse) jf["inverse"] = true;
        doc["factors"].push_back(std::move(jf));
    }
    if (spec.scale() != 1) doc["scale"] = format_real(spec.scale(), digits);
    return doc;
}

namespace {

Real json_number(const nlohmann::json& v, const char* what) {
    if (v.is_string()) return parse_real(v.get<std::string>());
    if (v.is_number()) return parse_real(v.dump());
    throw ValidationError(std::string("field '") + what + "' must be a decimal string");
}

}  // namespace

WeightSpec weight_spec_from_json(const nlohmann::json& doc, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    if (!doc.is_object() || !doc.contains("q") || !doc.contains("factors") || !doc["factors"].is_array()) {
        throw ValidationError("weight spec needs \"q\" and a \"factors\" array");
    }
    QParam q(json_number(doc["q"], "q"));
    std::vector<WeightFactor> factors;
    for (const auto& jf : doc["factors"]) {
        if (!jf.is_object() || !jf.contains("kind") || !jf.contains("param") || !jf["kind"].is_string()) {
            throw ValidationError("each factor needs \"kind\" and \"param\"");
        }
        WeightFactor f{factor_kind_from_string(jf["kind"].get<std::string>()), json_number(jf["param"], "param")};
        if (jf.contains("inverse")) {
            if (!jf["inverse"].is_boolean()) throw ValidationError("\"inverse\" must be a boolean");
            f.inverse = jf["inverse"].get<bool>();
        }
        factors.push_back(std::move(f));
    }
    WeightSpec spec(q, std::move(factors), ctx);
    if (doc.contains("scale")) spec = spec.scaled(json_number(doc["scale"], "scale"));
    return spec;
}

}  // namespace qorth
