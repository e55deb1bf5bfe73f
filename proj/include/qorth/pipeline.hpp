#pragma once

// Weight selection and the standard chain weight -> potential -> moments ->
// recurrence table, built at the precision a degree-N run needs.

#include "qorth/ladder.hpp"
#include "qorth/moments.hpp"
#include "qorth/painleve.hpp"
#include "qorth/recurrence.hpp"
#include "qorth/weights.hpp"

#include <optional>
#include <string>

namespace qorth {

enum class WeightKind { Ex1, Ex2, LittleQLaguerre, Custom };

std::string_view to_string(WeightKind kind);
WeightKind weight_kind_from_string(std::string_view name);

/// Weight parameters as decimal strings; parsed at the working precision.
struct WeightChoice {
    WeightKind kind = WeightKind::Ex1;
    std::optional<std::string> q, alpha, c, c1, c2;
    std::optional<std::string> spec_json;  ///< custom weights: JSON document text
};

/// Throws ValidationError unless exactly the parameters of the chosen weight are set.
void validate_choice(const WeightChoice& choice);

/// Builds the spec at ctx's working precision. With `validated = false` the
/// boundary-condition and positivity checks are skipped (pointwise use only).
WeightSpec make_weight(const WeightChoice& choice, const PrecisionContext& ctx, bool validated = true);

/// Closed-form mu_k when the weight has one (ex1, ex2, little q-Laguerre).
std::optional<Real> closed_form_moment(const WeightChoice& choice, unsigned k, const PrecisionContext& ctx);

struct Pipeline {
    PrecisionContext report;  ///< requested digits
    PrecisionContext work;    ///< widened for the Hankel factorisation
    unsigned degree;          ///< table degree
    WeightSpec spec;
    RatioCoeffs ratio;
    PotentialParams params;
    MomentSequence moments;
    RecurrenceTable table;
};

/// Table of degree `degree` with everything computed at moment_context(ctx, degree).
Pipeline build_pipeline(const WeightChoice& choice, unsigned degree, const PrecisionContext& ctx);

}  // namespace qorth
