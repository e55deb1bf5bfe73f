#include "qorth/pipeline.hpp"

#include "qorth/errors.hpp"

#include <nlohmann/json.hpp>

namespace qorth {

std::string_view to_string(WeightKind kind) {
    switch (kind) {
        case WeightKind::Ex1: return "ex1";
        case WeightKind::Ex2: return "ex2";
        case WeightKind::LittleQLaguerre: return "little-q-laguerre";
        case WeightKind::Custom: return "custom";
    }
    return "?";
}

WeightKind weight_kind_from_string(std::string_view name) {
    if (name == "ex1") return WeightKind::Ex1;
    if (name == "ex2") return WeightKind::Ex2;
    if (name == "little-q-laguerre") return WeightKind::LittleQLaguerre;
    if (name == "custom") return WeightKind::Custom;
    throw ValidationError("unknown weight '" + std::string(name) + "'");
}

void validate_choice(const WeightChoice& ch) {
    auto need = [](const std::optional<std::string>& v, bool required, const char* name) {
        if (required && !v) throw ValidationError(std::string("missing --") + name);
        if (!required && v) throw ValidationError(std::string("--") + name + " does not apply to this weight");
    };
    const bool ex1 = ch.kind == WeightKind::Ex1;
    const bool ex2 = ch.kind == WeightKind::Ex2;
    const bool custom = ch.kind == WeightKind::Custom;
    need(ch.q, !custom, "q");
    need(ch.alpha, !custom, "alpha");
    need(ch.c, ex1, "c");
    need(ch.c1, ex2, "c1");
    need(ch.c2, ex2, "c2");
    if (custom && !ch.spec_json) throw ValidationError("custom weight needs --spec");
    if (!custom && ch.spec_json) throw ValidationError("--spec applies only to --weight custom");
}

WeightSpec make_weight(const WeightChoice& ch, const PrecisionContext& ctx, bool validated) {
    validate_choice(ch);
    PrecisionGuard guard(ctx.working_digits());
    if (ch.kind == WeightKind::Custom) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(*ch.spec_json);
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(std::string("weight spec is not valid JSON: ") + e.what());
        }
        return weight_spec_from_json(doc, ctx);
    }
    const QParam q(parse_real(*ch.q));
    const Real alpha = parse_real(*ch.alpha);
    std::vector<WeightFactor> factors;
    switch (ch.kind) {
        case WeightKind::Ex1: factors = example1_factors(alpha, parse_real(*ch.c), q); break;
        case WeightKind::Ex2: {
            const Real c1 = parse_real(*ch.c1);
            const Real c2 = parse_real(*ch.c2);
            if (!(c1 < 0 && c2 < 0)) throw ValidationError("example 2 needs c1 < 0 and c2 < 0");
            factors = example2_factors(alpha, c1, c2, q);
            break;
        }
        case WeightKind::LittleQLaguerre: factors = {{FactorKind::V1, alpha}, {FactorKind::V2, q.value()}}; break;
        case WeightKind::Custom: break;
    }
    if (!validated) return WeightSpec::unvalidated(q, std::move(factors));
    return WeightSpec(q, std::move(factors), ctx);
}

std::optional<Real> closed_form_moment(const WeightChoice& ch, unsigned k, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    switch (ch.kind) {
        case WeightKind::Ex1:
            return moment_ex1(parse_real(*ch.alpha), parse_real(*ch.c), QParam(parse_real(*ch.q)), k, ctx);
        case WeightKind::LittleQLaguerre:
            return moment_ex1(parse_real(*ch.alpha), Real(0), QParam(parse_real(*ch.q)), k, ctx);
        case WeightKind::Ex2:
            return moment_ex2(parse_real(*ch.alpha), parse_real(*ch.c1), parse_real(*ch.c2),
                              QParam(parse_real(*ch.q)), k, ctx);
        case WeightKind::Custom: return std::nullopt;
    }
    return std::nullopt;
}

Pipeline build_pipeline(const WeightChoice& choice, unsigned degree, const PrecisionContext& ctx) {
    const PrecisionContext work = moment_context(ctx, degree);
    PrecisionGuard guard(work.working_digits());
    WeightSpec spec = make_weight(choice, work);
    RatioCoeffs ratio = ratio_coeffs(spec, work);
    PotentialParams params = potential_from_ratio(ratio, spec.q(), work.tolerance(0));
    MomentSequence moments = compute_moments(spec, degree, work);
    RecurrenceTable table = table_from_moments(moments, degree, work);
    return Pipeline{ctx, work, degree, std::move(spec), std::move(ratio), std::move(params), std::move(moments),
                    std::move(table)};
}

}  // namespace qorth
