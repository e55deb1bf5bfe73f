#pragma once

// Ladder data computed from their q-integral definitions
//   R_n = -k1 int p_n(y) p_n(y/q) w(y)/y d_q y,
//   r_n = -a_n k1 int p_n(y) p_{n-1}(y/q) w(y)/y d_q y,
// and residuals of every identity of the discrete system evaluated on them.
// Nothing here is produced by recursion.

#include "qorth/recurrence.hpp"
#include "qorth/weights.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qorth {

struct LadderValues {
    Real R;
    Real r;
};

struct LadderState {
    std::vector<Real> r;  ///< r[0] = 0
    std::vector<Real> R;
    PotentialParams params;

    std::size_t size() const { return R.size(); }
};

LadderValues compute_ladder(const PolynomialLattice& lattice, const PotentialParams& params, unsigned n);
LadderValues compute_ladder(const WeightSpec& spec, const RecurrenceTable& table, const PotentialParams& params,
                            unsigned n, const PrecisionContext& ctx);

/// R_n, r_n for n = 0..upto.
LadderState compute_ladder_state(const PolynomialLattice& lattice, const PotentialParams& params, unsigned upto);

/// A_n(x) = a_n R_n / (x(1-q)) + a_n k2 q^-n / (1-q).
Real ladder_a(const RecurrenceTable& table, const LadderState& ladder, unsigned n, const Real& x);
/// B_n(x) = r_n / ((1-q) x).
Real ladder_b(const LadderState& ladder, unsigned n, const Real& x, const Real& q);

/// A_n(x), B_n(x) straight from their integral definitions with the
/// divided difference (u(qx) - u(y)) / (qx - y) built from eval_potential.
/// x must avoid q * lattice points.
Real ladder_a_integral(const PolynomialLattice& lattice, const PotentialParams& params, unsigned n, const Real& x);
Real ladder_b_integral(const PolynomialLattice& lattice, const PotentialParams& params, unsigned n, const Real& x);

/// |D_q p_n(x) - A_n(x) p_{n-1}(x) + B_n(x) p_n(x)|.
Real ladder_relation_residual(const RecurrenceTable& table, const LadderState& ladder, unsigned n, const Real& x);

struct ResidualEntry {
    std::string name;
    Real value;
    /// A denominator fell below 10^-(digits/2); value is not meaningful.
    bool near_zero_denominator = false;
};

/// Residual (left minus right, absolute) of every identity at index n.
struct ResidualRecord {
    unsigned n = 0;
    std::vector<ResidualEntry> entries;
    Real f;  ///< right-hand side of the R_n^2 relation
    Real g;  ///< right-hand side of the quadratic for R_n

    const ResidualEntry* find(std::string_view name) const;
};

/// Identity names in record order.
const std::vector<std::string>& residual_names();

/// Needs ladder and table at n-1, n, n+1 (n >= 1).
ResidualRecord system_residuals(const LadderState& ladder, const RecurrenceTable& table, unsigned n,
                                const PrecisionContext& ctx);

}  // namespace qorth
