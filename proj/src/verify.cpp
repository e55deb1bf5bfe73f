#include "qorth/verify.hpp"

#include "qorth/errors.hpp"

#include <algorithm>

namespace qorth {

namespace {

constexpr int kPearsonLatticePoints = 21;

class ReportBuilder {
public:
    ReportBuilder(const PrecisionContext& report, const std::optional<Real>& tol_override)
        : report_(report), override_(tol_override) {}

    void add(std::string name, const Real& residual, int slack_digits, std::string note = {}) {
        const Real tol = override_ ? *override_ : report_.tolerance(slack_digits);
        checks_.push_back({std::move(name), residual, tol, residual < tol, false, std::move(note)});
    }
    void skip(std::string name, std::string note) {
        checks_.push_back({std::move(name), Real(0), Real(0), true, true, std::move(note)});
    }
    std::vector<CheckResult> take() { return std::move(checks_); }

private:
    const PrecisionContext& report_;
    const std::optional<Real>& override_;
    std::vector<CheckResult> checks_;
};

Real max_of(Real a, const Real& b) { return a < b ? b : a; }

}  // namespace

bool VerifyReport::passed() const {
    return !halt && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

Real VerifyReport::max_residual() const {
    Real m = 0;
    for (const auto& c : checks) {
        if (!c.skipped) m = max_of(m, c.max_residual);
    }
    return m;
}

VerifyReport verify_weight(const WeightChoice& choice, unsigned N, const PrecisionContext& ctx,
                           const std::optional<Real>& tol_override) {
    if (N < 2) throw ValidationError("verify needs N >= 2");
    const Pipeline pl = build_pipeline(choice, N, ctx);
    const PrecisionContext& work = pl.work;
    PrecisionGuard guard(work.working_digits());
    const Real& q = pl.spec.q().value();
    ReportBuilder out(ctx, tol_override);
    VerifyReport report;

    {
        Real worst = 0;
        Real x = 1;
        for (int k = 0; k < kPearsonLatticePoints; ++k, x *= q) {
            worst = max_of(worst, pearson_residual(pl.spec, pl.params, x, work));
        }
        out.add("pearson", worst, slack::kPearson);
    }

    {
        Real worst = 0;
        bool have_closed = true;
        for (unsigned k = 0; k <= 2 * N && have_closed; ++k) {
            const auto closed = closed_form_moment(choice, k, work);
            if (!closed) {
                have_closed = false;
                break;
            }
            worst = max_of(worst, abs(pl.moments.mu[k] - *closed) / abs(*closed));
        }
        if (have_closed) {
            out.add("moments", worst, slack::kMoments, "relative, k = 0..2N");
        } else {
            out.skip("moments", "no closed form for custom weights");
        }
    }

    PolynomialLattice lat(pl.spec, pl.table, work);
    out.add("gram", gram_residual(lat, N), slack::kGram);
    const AuxOrthogonality aux = aux_orthogonality(lat, N);
    out.add("aux-orthogonality", max_of(aux.same_degree, aux.adjacent), slack::kGram);

    if (pl.params.degenerate(work.tolerance(0))) {
        for (const char* name : {"ladder-relation", "system-residuals", "route-system"}) {
            out.skip(name, "k2=0 degenerate");
        }
        report.checks = out.take();
        return report;
    }

    const LadderState ladder = compute_ladder_state(lat, pl.params, N);
    {
        Real worst = 0;
        std::vector<Real> points{Real(1), q, q * q, Real("0.7")};
        for (unsigned n = 1; n < N; ++n) {
            for (const auto& x : points) worst = max_of(worst, ladder_relation_residual(pl.table, ladder, n, x));
        }
        out.add("ladder-relation", worst, slack::kLadderRelation);
    }

    const PainleveParams pp = PainleveParams::make(pl.params, pl.table.b[0], work);
    const bool k3_zero = pp.k3_vanishes(work);
    {
        Real worst = 0;
        Real factor_gap = 0;
        std::string flagged;
        for (unsigned n = 1; n < N; ++n) {
            const ResidualRecord rec = system_residuals(ladder, pl.table, n, work);
            for (const auto& e : rec.entries) {
                if (e.near_zero_denominator) {
                    flagged += e.name + "@" + std::to_string(n) + " ";
                } else {
                    worst = max_of(worst, e.value);
                }
            }
            factor_gap = max_of(factor_gap, abs(rec.f - rec.g));
        }
        out.add("system-residuals", worst, slack::kSystem,
                flagged.empty() ? std::string() : "near-zero denominators: " + flagged);
        if (k3_zero) out.add("second-degree-factorization", factor_gap, slack::kSystem, "|f - g| with k3 = 0");
    }

    const OrbitState sys = iterate_system(pp, N, work);
    if (sys.halt) report.halt = sys.halt;
    {
        Real worst = 0;
        for (std::size_t n = 0; n < sys.size() && n <= N; ++n) {
            worst = max_of(worst, abs(sys.a2[n] - pl.table.a2[n]));
            if (n < N) worst = max_of(worst, abs(sys.b[n] * sys.b[n] - pl.table.b[n] * pl.table.b[n]));
        }
        const double loss = sys.digit_loss.empty() ? 0.0 : sys.digit_loss.back();
        out.add("route-system", worst, slack::kRoute,
                "digits lost by step " + std::to_string(sys.size() - 1) + ": " + std::to_string(static_cast<int>(loss)));
    }

    if (!k3_zero || !pp.p) {
        out.skip("route-orbit", "qP_V requires k3=0");
        report.checks = out.take();
        return report;
    }

    try {
        const std::vector<Real> x = qpv_orbit(pp, N, work);
        const OrbitCoefficients oc = coeffs_from_orbit(x, pp, work);
        const Real& p = *pp.p;
        Real worst = 0;
        for (unsigned n = 0; n <= N; ++n) {
            worst = max_of(worst, abs(oc.a2[n] - pl.table.a2[n]));
            if (n < N) worst = max_of(worst, abs(oc.b2[n] - pl.table.b[n] * pl.table.b[n]));
        }
        out.add("route-orbit", worst, slack::kRoute);

        Real change = 0;
        for (unsigned n = 0; n <= N; ++n) change = max_of(change, abs(x[n] * p - 1 - ladder.r[n]));
        out.add("orbit-vs-ladder", change, slack::kRoute, "|p x_n - 1 - r_n|");

        out.add("initial-x0", abs(x[0] - 1 / p), slack::kInitialX0);
        if (sys.size() > 1) out.add("initial-x1", abs(x[1] - (1 + sys.r[1]) / p), slack::kInitialX1);

        Real back = 0;
        const QpvParams pv = QpvParams::all_equal(1 / p);
        for (unsigned n = 1; n < N; ++n) {
            back = max_of(back, abs(qpv_step_back(x[n], x[n + 1], n, pv, q, work.near_zero()) - x[n - 1]));
        }
        out.add("qpv-reversibility", back, slack::kRoute);
    } catch (const SingularStep& e) {
        report.halt = Halt{static_cast<unsigned>(e.index()), e.what()};
    }

    if (choice.kind == WeightKind::Ex1) {
        Real worst = 0;
        const Real alpha = parse_real(*choice.alpha);
        for (unsigned n = 1; n < N; ++n) {
            worst = max_of(worst, rn_equation_residual(ladder.r[n - 1], ladder.r[n], ladder.r[n + 1], alpha, q, n));
        }
        out.add("rn-equation", worst, slack::kSystem);
    }

    report.checks = out.take();
    return report;
}

}  // namespace qorth
