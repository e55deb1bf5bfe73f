// Acceptance gate: one PASS/FAIL line per criterion at digits = 50.

#include "support.hpp"

#include "qorth/cli.hpp"
#include "qorth/errors.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

using namespace qorth;
using qorth::test::Ladder;
using qorth::test::R;

namespace {

constexpr unsigned kDigits = 50;
constexpr unsigned kDegree = 12;
constexpr unsigned kSystemUpTo = 10;
constexpr unsigned kMomentUpTo = 24;

const char* const kPearsonTol = "1e-40";
const char* const kMomentTol = "1e-40";
const char* const kGramTol = "1e-40";
const char* const kSystemTol = "1e-35";
const char* const kRouteTol = "1e-25";
const char* const kX0Tol = "1e-45";
const char* const kX1Tol = "1e-40";
const char* const kRnTol = "1e-35";
const char* const kProbeFloor = "1e-8";

struct Point {
    std::string label;
    WeightChoice choice;
    bool ex1_c_minus_one = false;
    bool ex2_equal = false;  // c1 = c2 = -1
    std::unique_ptr<Ladder> data;  // null when the weight is not admissible
    std::string rejected;
};

struct Worst {
    Real value = 0;
    std::string where;
    bool ok = true;
    std::string failure;

    void observe(const Real& v, const std::string& at) {
        if (v > value) {
            value = v;
            where = at;
        }
    }
    void fail(const std::string& why) {
        if (ok) failure = why;
        ok = false;
    }
};

int g_failures = 0;

void report(int id, const std::string& title, const Worst& w, const char* tol_text) {
    PrecisionGuard g(kDigits + 10);
    const bool pass = w.ok && w.value < parse_real(tol_text);
    if (!pass) ++g_failures;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << "  " << title << "  max=" << format_real(w.value, 3)
              << " tol=" << tol_text;
    if (!w.where.empty()) std::cout << " at " << w.where;
    if (!w.ok) std::cout << "  [" << w.failure << "]";
    std::cout << "\n";
}

std::vector<Point> make_grid(const PrecisionContext& ctx) {
    std::vector<Point> grid;
    for (const char* q : {"0.3", "0.5", "0.8"}) {
        for (const char* a : {"0.5", "1", "2"}) {
            for (const char* c : {"-1", "0.3"}) {
                Point p;
                p.label = std::string("ex1(a=") + a + ",c=" + c + ",q=" + q + ")";
                p.choice = qorth::test::ex1(a, c, q);
                p.ex1_c_minus_one = std::string(c) == "-1";
                grid.push_back(std::move(p));
            }
            for (auto [c1, c2] : {std::pair{"-1", "-1"}, std::pair{"-2", "-1"}}) {
                Point p;
                p.label = std::string("ex2(a=") + a + ",c1=" + c1 + ",c2=" + c2 + ",q=" + q + ")";
                p.choice = qorth::test::ex2(a, c1, c2, q);
                p.ex2_equal = std::string(c1) == "-1";
                grid.push_back(std::move(p));
            }
        }
    }
    for (auto& p : grid) {
        try {
            p.data = std::make_unique<Ladder>(p.choice, kDegree, ctx);
        } catch (const ValidationError& e) {
            p.rejected = e.what();
        }
    }
    return grid;
}

Worst pearson(const std::vector<WeightChoice>& choices, const PrecisionContext& ctx) {
    Worst w;
    const PrecisionContext work = ctx.widened(10);
    PrecisionGuard g(work.working_digits());
    for (const auto& ch : choices) {
        // pointwise identity: admissibility is irrelevant
        const WeightSpec spec = make_weight(ch, work, false);
        const RatioCoeffs ratio = ratio_coeffs(spec, work);
        PotentialParams u;
        try {
            u = potential_from_ratio(ratio, spec.q());
        } catch (const DegenerateK1&) {
            // k1 = 0 lies outside the family, but the Pearson equation is a
            // statement about the ratio and still holds
            u = PotentialParams{1 - ratio.C, -ratio.A * spec.q().value(), -ratio.B * spec.q().value(), spec.q().value()};
            std::cout << "note  k1 = 0 at " << to_string(ch.kind) << "(a=" << *ch.alpha << ",q=" << *ch.q
                      << "); Pearson checked with the potential built from the ratio directly\n";
        }
        Real x = 1;
        for (int k = 0; k <= 20; ++k, x *= spec.q().value()) {
            w.observe(pearson_residual(spec, u, x, work), std::string(to_string(ch.kind)) + " q^" + std::to_string(k));
        }
    }
    return w;
}

Worst moments(const std::vector<const Ladder*>& data, const std::vector<WeightChoice>& choices) {
    Worst w;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const Pipeline& pl = data[i]->pl;
        PrecisionGuard g(pl.work.working_digits());
        for (unsigned k = 0; k <= kMomentUpTo; ++k) {
            const auto closed = closed_form_moment(choices[i], k, pl.work);
            if (!closed) {
                w.fail("no closed form");
                continue;
            }
            w.observe(abs(pl.moments.mu[k] - *closed) / abs(*closed), "k=" + std::to_string(k));
        }
    }
    return w;
}

Worst orthonormality(const std::vector<const Ladder*>& data) {
    Worst w;
    for (const Ladder* d : data) {
        PrecisionGuard g(d->pl.work.working_digits());
        w.observe(gram_residual(d->lat, kDegree), "gram");
        const AuxOrthogonality aux = aux_orthogonality(d->lat, kDegree);
        w.observe(aux.same_degree, "aux same degree");
        w.observe(aux.adjacent, "aux adjacent");
    }
    return w;
}

}  // namespace

int main() {
    const PrecisionContext ctx(kDigits);
    PrecisionGuard guard(ctx.working_digits());

    std::vector<Point> grid = make_grid(ctx);
    std::vector<const Point*> admissible;
    for (const auto& p : grid) {
        if (p.data) {
            admissible.push_back(&p);
        } else {
            std::cout << "note  skipped " << p.label << ": " << p.rejected << "\n";
        }
    }

    // 1. Pearson on the full grid
    {
        std::vector<WeightChoice> all;
        for (const auto& p : grid) all.push_back(p.choice);
        report(1, "Pearson equation on q^0..q^20", pearson(all, ctx), kPearsonTol);
    }

    std::vector<const Ladder*> data;
    std::vector<WeightChoice> choices;
    for (const Point* p : admissible) {
        data.push_back(p->data.get());
        choices.push_back(p->choice);
    }

    // 2. moment routes
    report(2, "moment series vs closed form, k=0..24 (relative)", moments(data, choices), kMomentTol);

    // 3. orthonormality
    report(3, "Gram matrix and auxiliary orthogonality, N=12", orthonormality(data), kGramTol);

    // 4. system residuals and the second-degree relation
    {
        Worst sys, split;
        for (const Point* p : admissible) {
            const Ladder& d = *p->data;
            PrecisionGuard g(d.pl.work.working_digits());
            const bool k3_zero = abs(d.pl.params.k3) <= d.pl.work.tolerance(0);
            for (unsigned n = 1; n <= kSystemUpTo; ++n) {
                const ResidualRecord rec = system_residuals(d.state, d.pl.table, n, d.pl.work);
                for (const auto& e : rec.entries) {
                    if (e.near_zero_denominator) {
                        sys.fail(e.name + " denominator near zero at " + p->label);
                        continue;
                    }
                    sys.observe(e.value, p->label + " " + e.name + " n=" + std::to_string(n));
                }
                const Real gap = abs(rec.f - rec.g);
                if (k3_zero) {
                    split.observe(gap, p->label + " |f-g| n=" + std::to_string(n));
                } else if (!(gap > parse_real(kSystemTol))) {
                    split.fail("|f-g| small with k3 != 0 at " + p->label);
                }
            }
        }
        report(4, "system residuals n=1..10 incl. thm1", sys, kSystemTol);
        report(4, "factorisation |f-g| iff k3=0", split, kSystemTol);
    }

    // 5. route equivalence
    {
        Worst orbit, system;
        for (const Point* p : admissible) {
            const Ladder& d = *p->data;
            PrecisionGuard g(d.pl.work.working_digits());
            const PainleveParams pp = PainleveParams::make(d.pl.params, d.pl.table.b[0], d.pl.work);
            const RecurrenceTable& t = d.pl.table;
            if (p->ex1_c_minus_one || p->ex2_equal) {
                try {
                    const auto x = qpv_orbit(pp, kDegree, d.pl.work);
                    const OrbitCoefficients oc = coeffs_from_orbit(x, pp, d.pl.work);
                    for (unsigned n = 0; n <= kDegree; ++n) {
                        orbit.observe(abs(oc.a2[n] - t.a2[n]), p->label + " a2 n=" + std::to_string(n));
                        if (n < kDegree) {
                            orbit.observe(abs(oc.b2[n] - t.b[n] * t.b[n]), p->label + " b2 n=" + std::to_string(n));
                        }
                    }
                } catch (const SingularStep& e) {
                    orbit.fail(p->label + ": " + e.what());
                }
            }
            if (!pp.k3_vanishes(d.pl.work)) {
                const OrbitState s = iterate_system(pp, kDegree, d.pl.work);
                if (s.halt) system.fail(p->label + ": " + s.halt->reason);
                for (std::size_t n = 0; n < s.size(); ++n) {
                    system.observe(abs(s.a2[n] - t.a2[n]), p->label + " a2 n=" + std::to_string(n));
                    if (n < kDegree) {
                        system.observe(abs(s.b[n] * s.b[n] - t.b[n] * t.b[n]), p->label + " b2 n=" + std::to_string(n));
                    }
                }
            }
        }
        report(5, "Gram vs q-P_V orbit, n<=12 (k3=0)", orbit, kRouteTol);
        report(5, "Gram vs system iteration, n<=12 (k3!=0)", system, kRouteTol);
    }

    // 6. initial conditions
    {
        Worst x0, x1, ex1_forms;
        for (const Point* p : admissible) {
            const Ladder& d = *p->data;
            PrecisionGuard g(d.pl.work.working_digits());
            const PainleveParams pp = PainleveParams::make(d.pl.params, d.pl.table.b[0], d.pl.work);
            if (!pp.k3_vanishes(d.pl.work) || !pp.p) continue;
            const auto x = qpv_orbit(pp, 1, d.pl.work);
            const OrbitState s = iterate_system(pp, 1, d.pl.work);
            x0.observe(abs(x[0] - 1 / *pp.p), p->label);
            x1.observe(abs(x[1] - (1 + s.r[1]) / *pp.p), p->label);
            if (p->ex1_c_minus_one) {
                const Real q = parse_real(*p->choice.q), alpha = parse_real(*p->choice.alpha);
                const Real c = parse_real(*p->choice.c);
                const auto& mu = d.pl.moments.mu;
                ex1_forms.observe(abs(x[0] - pow(q, alpha / 2)), p->label + " x0");
                ex1_forms.observe(abs(x[1] - pow(q, -alpha / 2) * (1 + c * mu[1] * mu[1] / (mu[0] * mu[0]))),
                                  p->label + " x1");
            }
        }
        report(6, "x0 = 1/p", x0, kX0Tol);
        report(6, "x1 = (1 + r1)/p", x1, kX1Tol);
        report(6, "example 1 forms of x0 and x1", ex1_forms, kX1Tol);
    }

    // 7. r_n equation
    {
        Worst rn;
        struct Lowest {
            Real value = R("1e300");
            std::string where;
        } probe, grid_probe;
        for (const Point* p : admissible) {
            if (!p->ex1_c_minus_one) continue;
            const Ladder& d = *p->data;
            PrecisionGuard g(d.pl.work.working_digits());
            const Real q = parse_real(*p->choice.q), alpha = parse_real(*p->choice.alpha);
            const bool reference = *p->choice.q == "0.5" && *p->choice.alpha == "1";
            const auto& r = d.state.r;
            for (unsigned n = 1; n <= kSystemUpTo; ++n) {
                const std::string at = p->label + " n=" + std::to_string(n);
                rn.observe(rn_equation_residual(r[n - 1], r[n], r[n + 1], alpha, q, n), at);
                const Real bumped = rn_equation_residual(r[n - 1], r[n], r[n + 1] + R("1e-5"), alpha, q, n);
                if (bumped < grid_probe.value) grid_probe = {bumped, at};
                if (reference && bumped < probe.value) probe = {bumped, at};
            }
        }
        report(7, "r_n equation n=1..10, example 1 c=-1", rn, kRnTol);
        PrecisionGuard g(kDigits + 10);
        const bool probe_ok = probe.value > parse_real(kProbeFloor);
        if (!probe_ok) ++g_failures;
        std::cout << (probe_ok ? "PASS" : "FAIL") << "  criterion 7  perturbation probe, a=1 q=0.5  min="
                  << format_real(probe.value, 3) << " floor=" << kProbeFloor << " at " << probe.where << "\n";
        // d(residual)/d(r_{n+1}) shrinks like q^n as r_n -> -1, so a fixed
        // 1e-5 bump fades below the floor for small q and large n
        std::cout << "INFO  criterion 7  perturbation probe over the c=-1 grid  min=" << format_real(grid_probe.value, 3)
                  << " at " << grid_probe.where << "\n";
    }

    // 8. classical weight
    {
        std::vector<WeightChoice> lq;
        std::vector<std::unique_ptr<Ladder>> owned;
        std::vector<const Ladder*> lq_data;
        Worst gate;
        for (const char* q : {"0.3", "0.5", "0.8"}) {
            for (const char* a : {"0.5", "1", "2"}) {
                lq.push_back(qorth::test::laguerre(a, q));
                owned.push_back(std::make_unique<Ladder>(lq.back(), kDegree, ctx));
                lq_data.push_back(owned.back().get());

                cli::RunConfig cfg;
                cfg.command = cli::Command::Painleve;
                cfg.weight = lq.back();
                cfg.N = 8;
                const auto res = cli::run(cfg);
                if (res.exit_code != cli::kExitValidation) gate.fail("painleve exit " + std::to_string(res.exit_code));
                if (res.diagnostics.find("k2=0") == std::string::npos) gate.fail("diagnostic lacks k2=0");
            }
        }
        report(8, "little q-Laguerre Pearson", pearson(lq, ctx), kPearsonTol);
        report(8, "little q-Laguerre moments", moments(lq_data, lq), kMomentTol);
        report(8, "little q-Laguerre orthonormality", orthonormality(lq_data), kGramTol);
        report(8, "painleve rejects k2=0 with exit 2", gate, "1e-40");
    }

    // 9. determinism
    {
        Worst same;
        cli::RunConfig cfg;
        cfg.command = cli::Command::Verify;
        cfg.weight = qorth::test::ex1("1", "-1", "0.5");
        cfg.N = 10;
        const auto a = cli::run(cfg);
        const auto b = cli::run(cfg);
        if (a.output != b.output) same.fail("verify output differs between runs");
        if (a.exit_code != cli::kExitOk) same.fail("verify exit " + std::to_string(a.exit_code));
        report(9, "verify output byte-identical across runs", same, "1e-40");
    }

    std::cout << (g_failures == 0 ? "ALL CRITERIA PASS" : std::to_string(g_failures) + " CHECK(S) FAILED") << "\n";
    return g_failures == 0 ? 0 : 1;
}
