#include "qorth/cli.hpp"

#include "qorth/errors.hpp"
#include "qorth/verify.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace qorth::cli {

namespace {

using Json = nlohmann::ordered_json;

// Accumulates either CSV rows or a JSON document with the same content.
class Emitter {
public:
    Emitter(Format format, const RunConfig& cfg, std::vector<std::string> columns)
        : format_(format), columns_(std::move(columns)) {
        if (format_ == Format::Csv) {
            for (std::size_t i = 0; i < columns_.size(); ++i) csv_ << (i ? "," : "") << columns_[i];
            csv_ << "\n";
        } else {
            doc_["command"] = std::string(to_string(cfg.command));
            doc_["weight"] = std::string(qorth::to_string(cfg.weight.kind));
            Json params = Json::object();
            auto put = [&](const char* name, const std::optional<std::string>& v) {
                if (v) params[name] = *v;
            };
            put("q", cfg.weight.q);
            put("alpha", cfg.weight.alpha);
            put("c", cfg.weight.c);
            put("c1", cfg.weight.c1);
            put("c2", cfg.weight.c2);
            doc_["params"] = params;
            doc_["N"] = cfg.N;
            doc_["digits"] = cfg.digits;
            doc_["rows"] = Json::array();
        }
    }

    void row(const std::vector<std::string>& cells) {
        if (format_ == Format::Csv) {
            for (std::size_t i = 0; i < cells.size(); ++i) csv_ << (i ? "," : "") << cells[i];
            csv_ << "\n";
        } else {
            Json r = Json::object();
            for (std::size_t i = 0; i < cells.size(); ++i) r[columns_[i]] = cells[i];
            doc_["rows"].push_back(std::move(r));
        }
    }

    void field(const std::string& key, Json value) {
        if (format_ == Format::Json) doc_[key] = std::move(value);
    }

    std::string str() const { return format_ == Format::Csv ? csv_.str() : doc_.dump(2) + "\n"; }

private:
    Format format_;
    std::vector<std::string> columns_;
    std::ostringstream csv_;
    Json doc_;
};

struct Ctx {
    PrecisionContext report;
    std::optional<Real> tol;
};

std::string num(const Real& v, unsigned digits) { return format_real(v, digits); }

Real tolerance(const Ctx& c, int slack_digits) { return c.tol ? *c.tol : c.report.tolerance(slack_digits); }

int cmd_moments(const RunConfig& cfg, const Ctx& c, RunResult& res) {
    const PrecisionContext work = moment_context(c.report, cfg.N);
    PrecisionGuard guard(work.working_digits());
    const WeightSpec spec = make_weight(cfg.weight, work);
    const MomentSequence m = compute_moments(spec, cfg.N, work);
    Emitter em(cfg.format, cfg, {"k", "mu_series", "mu_closed", "discrepancy"});
    bool ok = true;
    const Real tol = tolerance(c, slack::kMoments);
    for (unsigned k = 0; k <= 2 * cfg.N; ++k) {
        const auto closed = closed_form_moment(cfg.weight, k, work);
        std::string closed_s, disc_s;
        if (closed) {
            const Real disc = abs(m.mu[k] - *closed) / abs(*closed);
            ok = ok && disc < tol;
            closed_s = num(*closed, cfg.digits);
            disc_s = num(disc, cfg.digits);
        }
        em.row({std::to_string(k), num(m.mu[k], cfg.digits), closed_s, disc_s});
    }
    res.output = em.str();
    return ok ? kExitOk : kExitToleranceFailure;
}

int cmd_recurrence(const RunConfig& cfg, const Ctx& c, RunResult& res) {
    const Pipeline pl = build_pipeline(cfg.weight, cfg.N, c.report);
    Emitter em(cfg.format, cfg, {"n", "a2", "b"});
    Json a2 = Json::array(), b = Json::array();
    for (unsigned n = 0; n <= cfg.N; ++n) {
        const std::string bs = n < cfg.N ? num(pl.table.b[n], cfg.digits) : std::string();
        em.row({std::to_string(n), num(pl.table.a2[n], cfg.digits), bs});
        a2.push_back(num(pl.table.a2[n], cfg.digits));
        if (n < cfg.N) b.push_back(bs);
    }
    em.field("a2", std::move(a2));
    em.field("b", std::move(b));
    res.output = em.str();
    return kExitOk;
}

int cmd_ladder_check(const RunConfig& cfg, const Ctx& c, RunResult& res) {
    if (cfg.N < 2) throw ValidationError("ladder-check needs N >= 2");
    const Pipeline pl = build_pipeline(cfg.weight, cfg.N, c.report);
    PrecisionGuard guard(pl.work.working_digits());
    if (pl.params.degenerate(pl.work.tolerance(0))) {
        throw DegenerateK2("k2=0 degenerate: the ladder system does not determine a_n");
    }
    PolynomialLattice lat(pl.spec, pl.table, pl.work);
    const LadderState ladder = compute_ladder_state(lat, pl.params, cfg.N);
    Emitter em(cfg.format, cfg, {"n", "eq", "residual"});
    const Real tol = tolerance(c, slack::kSystem);
    bool ok = true;
    for (unsigned n = 1; n < cfg.N; ++n) {
        const ResidualRecord rec = system_residuals(ladder, pl.table, n, pl.work);
        for (const auto& e : rec.entries) {
            if (e.near_zero_denominator) {
                em.row({std::to_string(n), e.name, "NA"});
                res.diagnostics += e.name + " at n=" + std::to_string(n) + ": denominator near zero\n";
                continue;
            }
            ok = ok && e.value < tol;
            em.row({std::to_string(n), e.name, num(e.value, cfg.digits)});
        }
    }
    res.output = em.str();
    return ok ? kExitOk : kExitToleranceFailure;
}

int cmd_painleve(const RunConfig& cfg, const Ctx& c, RunResult& res) {
    if (cfg.N < 1) throw ValidationError("painleve needs N >= 1");
    const Pipeline pl = build_pipeline(cfg.weight, cfg.N, c.report);
    PrecisionGuard guard(pl.work.working_digits());
    const PainleveParams pp = PainleveParams::make(pl.params, pl.table.b[0], pl.work);
    const Real tol = tolerance(c, slack::kRoute);
    Emitter em(cfg.format, cfg, {"n", "x", "r", "a2", "b2", "route"});
    bool ok = true;
    int code = kExitOk;

    const OrbitState sys = iterate_system(pp, cfg.N, pl.work);
    for (std::size_t n = 0; n < sys.size(); ++n) {
        const std::string xs = sys.x.empty() ? std::string() : num(sys.x[n], cfg.digits);
        em.row({std::to_string(n), xs, num(sys.r[n], cfg.digits), num(sys.a2[n], cfg.digits),
                num(sys.b[n] * sys.b[n], cfg.digits), "system"});
        ok = ok && abs(sys.a2[n] - pl.table.a2[n]) < tol;
        if (n < cfg.N) ok = ok && abs(sys.b[n] * sys.b[n] - pl.table.b[n] * pl.table.b[n]) < tol;
    }
    if (!sys.digit_loss.empty()) {
        Json loss = Json::array();
        std::size_t worst = 0;
        for (std::size_t n = 0; n < sys.digit_loss.size(); ++n) {
            loss.push_back(num(Real(sys.digit_loss[n]), 3));
            if (sys.digit_loss[n] > sys.digit_loss[worst]) worst = n;
        }
        em.field("digit_loss", std::move(loss));
        res.diagnostics += "system route digit loss: max " + num(Real(sys.digit_loss[worst]), 3) + " at n=" +
                           std::to_string(worst) + "\n";
    }
    if (sys.halt) {
        res.diagnostics += "system route halted at n=" + std::to_string(sys.halt->index) + ": " + sys.halt->reason + "\n";
        code = kExitSingular;
    }

    if (!pp.k3_vanishes(pl.work) || !pp.p) {
        res.diagnostics += "qP_V requires k3=0; orbit route skipped\n";
    } else {
        try {
            const std::vector<Real> x = qpv_orbit(pp, cfg.N, pl.work);
            const OrbitCoefficients oc = coeffs_from_orbit(x, pp, pl.work);
            for (std::size_t n = 0; n < x.size(); ++n) {
                const std::string b2 = n < oc.b2.size() ? num(oc.b2[n], cfg.digits) : std::string();
                em.row({std::to_string(n), num(x[n], cfg.digits), num(*pp.p * x[n] - 1, cfg.digits),
                        num(oc.a2[n], cfg.digits), b2, "orbit"});
                ok = ok && abs(oc.a2[n] - pl.table.a2[n]) < tol;
                if (n < oc.b2.size()) ok = ok && abs(oc.b2[n] - pl.table.b[n] * pl.table.b[n]) < tol;
            }
        } catch (const SingularStep& e) {
            res.diagnostics += std::string("orbit route halted: ") + e.what() + "\n";
            code = kExitSingular;
        }
    }
    res.output = em.str();
    if (code != kExitOk) return code;
    return ok ? kExitOk : kExitToleranceFailure;
}

int cmd_verify(const RunConfig& cfg, const Ctx& c, RunResult& res) {
    const VerifyReport rep = verify_weight(cfg.weight, cfg.N, c.report, c.tol);
    Emitter em(cfg.format, cfg, {"check", "max_residual", "tolerance", "status"});
    for (const auto& chk : rep.checks) {
        const std::string status = chk.skipped ? "SKIP" : (chk.passed ? "PASS" : "FAIL");
        em.row({chk.name, chk.skipped ? std::string() : num(chk.max_residual, 6),
                chk.skipped ? std::string() : num(chk.tolerance, 6), status});
        if (!chk.note.empty()) res.diagnostics += chk.name + ": " + chk.note + "\n";
    }
    if (rep.halt) res.diagnostics += "halted at n=" + std::to_string(rep.halt->index) + ": " + rep.halt->reason + "\n";
    em.row({"overall", num(rep.max_residual(), 6), "", rep.passed() ? "PASS" : "FAIL"});
    em.field("passed", rep.passed());
    res.output = em.str();
    if (rep.halt) return kExitSingular;
    return rep.passed() ? kExitOk : kExitToleranceFailure;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string_view to_string(Command command) {
    switch (command) {
        case Command::Moments: return "moments";
        case Command::Recurrence: return "recurrence";
        case Command::LadderCheck: return "ladder-check";
        case Command::Painleve: return "painleve";
        case Command::Verify: return "verify";
    }
    return "?";
}

Command command_from_string(std::string_view name) {
    if (name == "moments") return Command::Moments;
    if (name == "recurrence") return Command::Recurrence;
    if (name == "ladder-check") return Command::LadderCheck;
    if (name == "painleve") return Command::Painleve;
    if (name == "verify") return Command::Verify;
    throw ValidationError("unknown command '" + std::string(name) + "'");
}

RunResult run(RunConfig cfg) {
    RunResult res;
    try {
        if (cfg.spec_path) {
            if (cfg.weight.kind != WeightKind::Custom) throw ValidationError("--spec applies only to --weight custom");
            cfg.weight.spec_json = read_file(*cfg.spec_path);
        }
        validate_choice(cfg.weight);
        if (cfg.N < 1) throw ValidationError("N must be positive");
        Ctx c{PrecisionContext(cfg.digits), std::nullopt};
        if (cfg.tol) {
            PrecisionGuard guard(c.report.working_digits());
            c.tol = parse_real(*cfg.tol);
            if (!(*c.tol > 0)) throw ValidationError("--tol must be positive");
        }
        switch (cfg.command) {
            case Command::Moments: res.exit_code = cmd_moments(cfg, c, res); break;
            case Command::Recurrence: res.exit_code = cmd_recurrence(cfg, c, res); break;
            case Command::LadderCheck: res.exit_code = cmd_ladder_check(cfg, c, res); break;
            case Command::Painleve: res.exit_code = cmd_painleve(cfg, c, res); break;
            case Command::Verify: res.exit_code = cmd_verify(cfg, c, res); break;
        }
    } catch (const ValidationError& e) {
        res.exit_code = kExitValidation;
        res.diagnostics += std::string("error: ") + e.what() + "\n";
        return res;
    } catch (const SingularStep& e) {
        res.exit_code = kExitSingular;
        res.diagnostics += std::string("error: ") + e.what() + "\n";
    } catch (const DivisionNearZero& e) {
        res.exit_code = kExitSingular;
        res.diagnostics += std::string("error: ") + e.what() + "\n";
    } catch (const Error& e) {
        res.exit_code = kExitToleranceFailure;
        res.diagnostics += std::string("error: ") + e.what() + "\n";
    }
    if (cfg.out_path && !res.output.empty()) {
        std::ofstream out(*cfg.out_path, std::ios::binary);
        if (!out) {
            res.exit_code = kExitValidation;
            res.diagnostics += "error: cannot write '" + *cfg.out_path + "'\n";
        } else {
            out << res.output;
        }
    }
    return res;
}

}  // namespace qorth::cli
