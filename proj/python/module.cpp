#include "qorth/cli.hpp"
#include "qorth/errors.hpp"
#include "qorth/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qorth;

namespace {

using Opt = std::optional<std::string>;

WeightChoice choice(const std::string& weight, Opt q, Opt alpha, Opt c, Opt c1, Opt c2, Opt spec) {
    WeightChoice ch;
    ch.kind = weight_kind_from_string(weight);
    ch.q = std::move(q);
    ch.alpha = std::move(alpha);
    ch.c = std::move(c);
    ch.c1 = std::move(c1);
    ch.c2 = std::move(c2);
    ch.spec_json = std::move(spec);
    return ch;
}

std::vector<std::string> strings(const std::vector<Real>& values, unsigned digits) {
    std::vector<std::string> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(format_real(v, digits));
    return out;
}

#define WEIGHT_ARGS                                                                                             \
    py::arg("weight"), py::kw_only(), py::arg("q") = py::none(), py::arg("alpha") = py::none(),                 \
        py::arg("c") = py::none(), py::arg("c1") = py::none(), py::arg("c2") = py::none(),                      \
        py::arg("spec") = py::none()

}  // namespace

PYBIND11_MODULE(_qorth, m) {
    m.doc() = "Recurrence coefficients of semi-classical q-orthogonal polynomials";

    static py::exception<Error> base(m, "QorthError");
    static py::exception<ValidationError> validation(m, "ValidationError", base.ptr());
    static py::exception<DegenerateK2> degenerate(m, "DegenerateK2", validation.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DegenerateK2& e) {
            py::set_error(degenerate, e.what());
        } catch (const ValidationError& e) {
            py::set_error(validation, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    m.def(
        "recurrence",
        [](const std::string& weight, Opt q, Opt alpha, Opt c, Opt c1, Opt c2, Opt spec, unsigned N,
           unsigned digits) {
            const PrecisionContext ctx(digits);
            const Pipeline pl = build_pipeline(choice(weight, q, alpha, c, c1, c2, spec), N, ctx);
            py::dict out;
            out["a2"] = strings(pl.table.a2, digits);
            out["b"] = strings(pl.table.b, digits);
            out["mu0"] = format_real(pl.table.mu0, digits);
            return out;
        },
        WEIGHT_ARGS, py::arg("N") = 10, py::arg("digits") = 50,
        "a_n^2 (n = 0..N) and b_n (n = 0..N-1) from the moment route, as decimal strings.");

    m.def(
        "moments",
        [](const std::string& weight, Opt q, Opt alpha, Opt c, Opt c1, Opt c2, Opt spec, unsigned N,
           unsigned digits) {
            const PrecisionContext ctx(digits);
            const Pipeline pl = build_pipeline(choice(weight, q, alpha, c, c1, c2, spec), N, ctx);
            return strings(pl.moments.mu, digits);
        },
        WEIGHT_ARGS, py::arg("N") = 10, py::arg("digits") = 50, "mu_0..mu_2N by lattice summation.");

    m.def(
        "potential",
        [](const std::string& weight, Opt q, Opt alpha, Opt c, Opt c1, Opt c2, Opt spec, unsigned digits) {
            const PrecisionContext ctx(digits);
            const Pipeline pl = build_pipeline(choice(weight, q, alpha, c, c1, c2, spec), 1, ctx);
            py::dict out;
            out["k1"] = format_real(pl.params.k1, digits);
            out["k2"] = format_real(pl.params.k2, digits);
            out["k3"] = format_real(pl.params.k3, digits);
            return out;
        },
        WEIGHT_ARGS, py::arg("digits") = 50);

    m.def(
        "verify",
        [](const std::string& weight, Opt q, Opt alpha, Opt c, Opt c1, Opt c2, Opt spec, unsigned N,
           unsigned digits) {
            const PrecisionContext ctx(digits);
            const VerifyReport rep = verify_weight(choice(weight, q, alpha, c, c1, c2, spec), N, ctx);
            py::list checks;
            for (const auto& chk : rep.checks) {
                py::dict d;
                d["name"] = chk.name;
                d["max_residual"] = chk.skipped ? py::object(py::none()) : py::cast(format_real(chk.max_residual, 6));
                d["tolerance"] = chk.skipped ? py::object(py::none()) : py::cast(format_real(chk.tolerance, 6));
                d["status"] = chk.skipped ? "SKIP" : (chk.passed ? "PASS" : "FAIL");
                d["note"] = chk.note;
                checks.append(d);
            }
            py::dict out;
            out["checks"] = checks;
            out["passed"] = rep.passed();
            return out;
        },
        WEIGHT_ARGS, py::arg("N") = 10, py::arg("digits") = 50, "Full cross-route campaign.");

    m.def(
        "run",
        [](const std::string& command, const std::string& weight, Opt q, Opt alpha, Opt c, Opt c1,
           Opt c2, Opt spec, unsigned N, unsigned digits, const std::string& format, Opt tol) {
            cli::RunConfig cfg;
            cfg.command = cli::command_from_string(command);
            cfg.weight = choice(weight, q, alpha, c, c1, c2, std::nullopt);
            cfg.spec_path = std::move(spec);
            cfg.N = N;
            cfg.digits = digits;
            if (format != "csv" && format != "json") throw ValidationError("format must be csv or json");
            cfg.format = format == "json" ? cli::Format::Json : cli::Format::Csv;
            cfg.tol = std::move(tol);
            const cli::RunResult res = cli::run(cfg);
            return py::make_tuple(res.exit_code, res.output, res.diagnostics);
        },
        py::arg("command"), WEIGHT_ARGS, py::arg("N") = 10, py::arg("digits") = 50, py::arg("format") = "csv",
        py::arg("tol") = py::none(),
        "Same as the command-line tool; `spec` is a file path here. Returns (exit_code, output, diagnostics).");

    m.def(
        "qpoch_inf",
        [](const std::string& a, const std::string& q, unsigned digits) {
            const PrecisionContext ctx(digits);
            PrecisionGuard g(ctx.working_digits());
            return format_real(qpoch_inf(parse_real(a), QParam(parse_real(q)), ctx), digits);
        },
        py::arg("a"), py::arg("q"), py::arg("digits") = 50);

    m.def(
        "phi21",
        [](const std::string& a1, const std::string& a2, const std::string& b1, const std::string& q,
           const std::string& z, unsigned digits) {
            const PrecisionContext ctx(digits);
            PrecisionGuard g(ctx.working_digits());
            return format_real(phi21(parse_real(a1), parse_real(a2), parse_real(b1), QParam(parse_real(q)),
                                     parse_real(z), ctx),
                               digits);
        },
        py::arg("a1"), py::arg("a2"), py::arg("b1"), py::arg("q"), py::arg("z"), py::arg("digits") = 50);
}
