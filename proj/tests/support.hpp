#pragma once

#include "qorth/ladder.hpp"
#include "qorth/painleve.hpp"
#include "qorth/pipeline.hpp"
#include "qorth/recurrence.hpp"

#include <optional>
#include <string>

namespace qorth::test {

// Holds the working precision for the duration of a test case.
struct Precision {
    explicit Precision(unsigned digits = 50) : ctx(digits), guard(ctx.working_digits()) {}
    PrecisionContext ctx;
    PrecisionGuard guard;
};

inline Real R(const char* text) { return parse_real(text); }

inline bool below(const Real& value, const Real& tol) { return abs(value) < tol; }

inline WeightChoice ex1(const char* alpha, const char* c, const char* q) {
    WeightChoice ch;
    ch.kind = WeightKind::Ex1;
    ch.alpha = alpha;
    ch.c = c;
    ch.q = q;
    return ch;
}

inline WeightChoice ex2(const char* alpha, const char* c1, const char* c2, const char* q) {
    WeightChoice ch;
    ch.kind = WeightKind::Ex2;
    ch.alpha = alpha;
    ch.c1 = c1;
    ch.c2 = c2;
    ch.q = q;
    return ch;
}

inline WeightChoice laguerre(const char* alpha, const char* q) {
    WeightChoice ch;
    ch.kind = WeightKind::LittleQLaguerre;
    ch.alpha = alpha;
    ch.q = q;
    return ch;
}

// Pipeline plus the definition-route ladder data up to the table degree.
// Values live at the pipeline's widened precision; keep `guard` alive.
struct Ladder {
    Ladder(const WeightChoice& choice, unsigned N, const PrecisionContext& ctx)
        : pl(build_pipeline(choice, N, ctx)),
          guard(pl.work.working_digits()),
          lat(pl.spec, pl.table, pl.work),
          state(compute_ladder_state(lat, pl.params, N)) {}

    Pipeline pl;
    PrecisionGuard guard;
    PolynomialLattice lat;
    LadderState state;
};

}  // namespace qorth::test
