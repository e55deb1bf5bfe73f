#include "qorth/ladder.hpp"

#include "qorth/errors.hpp"
#include "qorth/identities.hpp"

#include <algorithm>

namespace qorth {

namespace {

void require_degree(const RecurrenceTable& table, unsigned n) {
    if (n > table.degree()) throw IndexOutOfRange("ladder index beyond table degree");
}

// int p_n(y) p_m(y/q) w(y) g(y) d_q y with a lattice-indexed extra factor.
template <typename Extra>
Real shifted_product_integral(const PolynomialLattice& lat, unsigned n, unsigned m, Extra extra) {
    return lat.integrate([&](std::size_t k) {
        const long kk = static_cast<long>(k);
        return lat.p(kk)[n] * lat.p(kk - 1)[m] * lat.w(k) * extra(k);
    });
}

}  // namespace

LadderValues compute_ladder(const PolynomialLattice& lat, const PotentialParams& params, unsigned n) {
    PrecisionGuard guard(lat.context().working_digits());
    require_degree(lat.table(), n);
    auto over_y = [&](std::size_t k) { return 1 / lat.x(static_cast<long>(k)); };
    LadderValues out;
    out.R = -params.k1 * shifted_product_integral(lat, n, n, over_y);
    if (n == 0) {
        out.r = 0;
    } else {
        out.r = -lat.table().a(n) * params.k1 * shifted_product_integral(lat, n, n - 1, over_y);
    }
    return out;
}

LadderValues compute_ladder(const WeightSpec& spec, const RecurrenceTable& table, const PotentialParams& params,
                            unsigned n, const PrecisionContext& ctx) {
    PolynomialLattice lat(spec, table, ctx);
    return compute_ladder(lat, params, n);
}

LadderState compute_ladder_state(const PolynomialLattice& lat, const PotentialParams& params, unsigned upto) {
    LadderState s{{}, {}, params};
    for (unsigned n = 0; n <= upto; ++n) {
        auto v = compute_ladder(lat, params, n);
        s.R.push_back(std::move(v.R));
        s.r.push_back(std::move(v.r));
    }
    return s;
}

Real ladder_a(const RecurrenceTable& table, const LadderState& ladder, unsigned n, const Real& x) {
    const Real& q = ladder.params.q;
    const Real a_n = table.a(n);
    return a_n * ladder.R.at(n) / (x * (1 - q)) + a_n * ladder.params.k2 * pow(q, -static_cast<int>(n)) / (1 - q);
}

Real ladder_b(const LadderState& ladder, unsigned n, const Real& x, const Real& q) {
    return ladder.r.at(n) / ((1 - q) * x);
}

Real ladder_a_integral(const PolynomialLattice& lat, const PotentialParams& params, unsigned n, const Real& x) {
    PrecisionGuard guard(lat.context().working_digits());
    require_degree(lat.table(), n);
    const Real qx = params.q * x;
    const Real u_qx = eval_potential(params, qx);
    auto kernel = [&](std::size_t k) {
        const Real& y = lat.x(static_cast<long>(k));
        return (u_qx - eval_potential(params, y)) / (qx - y);
    };
    return lat.table().a(n) * shifted_product_integral(lat, n, n, kernel);
}

Real ladder_b_integral(const PolynomialLattice& lat, const PotentialParams& params, unsigned n, const Real& x) {
    PrecisionGuard guard(lat.context().working_digits());
    require_degree(lat.table(), n);
    if (n == 0) return Real(0);
    const Real qx = params.q * x;
    const Real u_qx = eval_potential(params, qx);
    auto kernel = [&](std::size_t k) {
        const Real& y = lat.x(static_cast<long>(k));
        return (u_qx - eval_potential(params, y)) / (qx - y);
    };
    return lat.table().a(n) * shifted_product_integral(lat, n, n - 1, kernel);
}

Real ladder_relation_residual(const RecurrenceTable& table, const LadderState& ladder, unsigned n, const Real& x) {
    require_degree(table, n);
    const QParam q(ladder.params.q);
    const Real dpn = dq([&](const Real& y) { return eval_pn(table, n, y); }, x, q);
    const Real pn = eval_pn(table, n, x);
    const Real a_term = n == 0 ? Real(0) : Real(ladder_a(table, ladder, n, x) * eval_pn(table, n - 1, x));
    return abs(dpn - a_term + ladder_b(ladder, n, x, q.value()) * pn);
}

const ResidualEntry* ResidualRecord::find(std::string_view name) const {
    auto it = std::find_if(entries.begin(), entries.end(), [&](const ResidualEntry& e) { return e.name == name; });
    return it == entries.end() ? nullptr : &*it;
}

const std::vector<std::string>& residual_names() {
    static const std::vector<std::string> names{"eq733g", "eq734g", "eq734gnew", "eq735g", "eq736g", "eq737g",
                                                "eq738g", "eq7310g", "Rnm1",     "Rnp1",   "Rn2",    "thm1"};
    return names;
}

ResidualRecord system_residuals(const LadderState& ladder, const RecurrenceTable& table, unsigned n,
                                const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    if (n == 0) throw IndexOutOfRange("system residuals need n >= 1");
    if (n + 1 >= ladder.size()) throw IndexOutOfRange("system residuals need ladder data at n+1");
    if (n + 1 > table.degree()) throw IndexOutOfRange("system residuals need table data at n+1");

    const auto& P = ladder.params;
    const Real& q = P.q;
    const int ni = static_cast<int>(n);
    const auto& r = ladder.r;
    const auto& R = ladder.R;
    const auto& a2 = table.a2;
    const auto& b = table.b;
    const Real qn = pow(q, ni);
    const Real nz = ctx.near_zero();

    Real partial = 0;
    for (unsigned j = 0; j <= n; ++j) partial += R[j];

    ResidualRecord rec;
    rec.n = n;
    auto add = [&](const char* name, const Real& v, bool near_zero = false) {
        rec.entries.push_back({name, near_zero ? Real(0) : Real(abs(v)), near_zero});
    };

    add("eq733g", r[n + 1] + r[n] + b[n] * R[n] + P.k1);
    add("eq734g", R[n] - P.k2 * pow(q, -ni) * b[n] - P.k3 - (1 - q) * partial);
    add("eq734gnew", P.k2 * q * b[n - 1] - P.k2 * b[n] + qn * (q * R[n] - R[n - 1]));
    add("eq735g", a2[n + 1] * R[n + 1] - a2[n] * R[n - 1] + b[n] * (r[n + 1] - r[n]));
    add("eq736g", P.k2 * a2[n + 1] - P.k2 * q * q * a2[n] -
                      (qn * q - qn * q * q - qn * q * q * r[n] + qn * q * r[n + 1]));
    add("eq737g", P.k2 * a2[n] - qn * (1 - qn + r[n]));
    add("eq738g", a2[n] * R[n] * R[n - 1] - r[n] * (P.k1 + r[n]));

    rec.g = identities::quadratic_rhs(P, ni, r[n], r[n + 1]);
    add("eq7310g", R[n] * R[n] - P.k3 * pow(q, -ni - 1) * R[n] - rec.g);

    const bool prev_bad = abs(identities::r_prev_denominator(P, ni, r[n], R[n])) < nz;
    add("Rnm1", prev_bad ? Real(0) : Real(R[n - 1] - identities::r_prev_from(P, ni, r[n], R[n])), prev_bad);

    const bool next_bad = abs(identities::r_next_denominator(P, ni, r[n + 1], R[n])) < nz;
    add("Rnp1", next_bad ? Real(0) : Real(R[n + 1] - identities::r_next_from(P, ni, r[n + 1], R[n])), next_bad);

    const bool f_bad = abs(identities::rn_squared_denominator(P, ni, r[n - 1], r[n])) < nz;
    rec.f = f_bad ? Real(0) : identities::rn_squared(P, ni, r[n - 1], r[n], r[n + 1]);
    add("Rn2", R[n] * R[n] - rec.f, f_bad);
    add("thm1", identities::second_degree_residual(P, ni, rec.f, rec.g), f_bad);
    return rec;
}

}  // namespace qorth
