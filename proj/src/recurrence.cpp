#include "qorth/recurrence.hpp"

#include "qorth/errors.hpp"

#include <algorithm>
#include <string>

namespace qorth {

Real RecurrenceTable::a(unsigned n) const {
    if (n >= a2.size()) throw IndexOutOfRange("a_n requested beyond table");
    return sqrt(a2[n]);
}

RecurrenceTable table_from_moments(const MomentSequence& moments, unsigned N, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits());
    const auto& mu = moments.mu;
    if (mu.size() < 2 * N + 1) throw IndexOutOfRange("need 2N+1 moments for degree N");
    const std::size_t dim = N + 1;

    std::vector<std::vector<Real>> L(dim, std::vector<Real>(dim, Real(0)));
    std::vector<Real> D(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        Real d = mu[2 * j];
        for (std::size_t k = 0; k < j; ++k) d -= L[j][k] * L[j][k] * D[k];
        if (!(d > 0)) {
            throw NotPositiveDefinite("Hankel pivot " + std::to_string(j) +
                                      " is not positive; raise the precision or check the weight");
        }
        D[j] = d;
        L[j][j] = 1;
        for (std::size_t i = j + 1; i < dim; ++i) {
            Real s = mu[i + j];
            for (std::size_t k = 0; k < j; ++k) s -= L[i][k] * L[j][k] * D[k];
            L[i][j] = s / d;
        }
    }

    RecurrenceTable t;
    t.mu0 = mu[0];
    t.q = moments.spec.q().value();
    t.a2.assign(dim, Real(0));
    for (std::size_t n = 1; n < dim; ++n) t.a2[n] = D[n] / D[n - 1];
    t.b.reserve(N);
    for (std::size_t n = 0; n < N; ++n) {
        if (n == 0) {
            t.b.push_back(mu[1] / mu[0]);
        } else {
            t.b.push_back(L[n + 1][n] - L[n][n - 1]);
        }
    }
    return t;
}

std::vector<Real> eval_all_pn(const RecurrenceTable& table, const Real& x, unsigned upto) {
    if (upto > table.degree()) throw IndexOutOfRange("p_n requested beyond table degree");
    std::vector<Real> p;
    p.reserve(upto + 1);
    p.push_back(1 / sqrt(table.mu0));
    Real prev = 0;
    Real a_n = 0;
    for (unsigned n = 0; n < upto; ++n) {
        const Real a_next = sqrt(table.a2[n + 1]);
        const Real next = ((x - table.b[n]) * p[n] - a_n * prev) / a_next;
        prev = p[n];
        a_n = a_next;
        p.push_back(next);
    }
    return p;
}

Real eval_pn(const RecurrenceTable& table, unsigned n, const Real& x) {
    return eval_all_pn(table, x, n).back();
}

PolynomialLattice::PolynomialLattice(const WeightSpec& spec, const RecurrenceTable& table,
                                     const PrecisionContext& ctx)
    : table_(table), ctx_(ctx), weight_(spec, ctx) {}

const std::vector<Real>& PolynomialLattice::p(long k) const {
    const auto idx = static_cast<std::size_t>(k + 1);
    if (idx < values_.size()) return values_[idx];
    PrecisionGuard guard(ctx_.working_digits());
    while (values_.size() <= idx) {
        const long kk = static_cast<long>(values_.size()) - 1;
        values_.push_back(eval_all_pn(table_, x(kk), table_.degree()));
    }
    return values_[idx];
}

Real PolynomialLattice::integrate(const std::function<Real(std::size_t)>& f_at) const {
    return qint_lattice(f_at, q(), ctx_);
}

Real gram_residual(const PolynomialLattice& lat, unsigned N) {
    PrecisionGuard guard(lat.context().working_digits());
    if (N > lat.table().degree()) throw IndexOutOfRange("Gram check beyond table degree");
    Real worst = 0;
    for (unsigned m = 0; m <= N; ++m) {
        for (unsigned n = m; n <= N; ++n) {
            const Real v = lat.integrate([&](std::size_t k) {
                const auto& p = lat.p(static_cast<long>(k));
                return p[m] * p[n] * lat.w(k);
            });
            worst = std::max(worst, Real(abs(v - (m == n ? 1 : 0))));
        }
    }
    return worst;
}

Real gram_residual(const WeightSpec& spec, const RecurrenceTable& table, unsigned N, const PrecisionContext& ctx) {
    PolynomialLattice lat(spec, table, ctx);
    return gram_residual(lat, N);
}

AuxOrthogonality aux_orthogonality(const PolynomialLattice& lat, unsigned N) {
    PrecisionGuard guard(lat.context().working_digits());
    if (N > lat.table().degree()) throw IndexOutOfRange("orthogonality check beyond table degree");
    AuxOrthogonality out;
    const Real& q = lat.q().value();
    for (unsigned n = 0; n <= N; ++n) {
        const Real same = lat.integrate([&](std::size_t k) {
            const long kk = static_cast<long>(k);
            return lat.p(kk)[n] * lat.p(kk - 1)[n] * lat.w(k);
        });
        out.same_degree = std::max(out.same_degree, Real(abs(same - pow(q, -static_cast<int>(n)))));
        if (n == 0) continue;
        const Real adjacent = lat.integrate([&](std::size_t k) {
            const long kk = static_cast<long>(k);
            return lat.p(kk)[n] * lat.p(kk - 1)[n - 1] * lat.w(k);
        });
        out.adjacent = std::max(out.adjacent, Real(abs(adjacent)));
    }
    return out;
}

}  // namespace qorth
