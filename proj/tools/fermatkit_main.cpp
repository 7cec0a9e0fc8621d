#include "fermatkit/fixtures.hpp"
#include "fermatkit/nonexistence.hpp"
#include "fermatkit/specfile.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace fermatkit;
using nlohmann::json;

namespace {

constexpr double kFloatPassTol = 1e-8;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::InvalidArgument, "cannot read input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void apply_eps_env(SpecFile& sf) {
    const char* env = std::getenv("FERMAT_KIT_EPS");
    if (!env) return;
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
        raise(ErrorCode::InvalidArgument, "FERMAT_KIT_EPS must be a positive number");
    }
    sf.eps_zero = v;
}

SpecFile load_spec(const std::string& path, std::initializer_list<const char*> ops) {
    SpecFile sf = parse_spec(slurp(path));
    apply_eps_env(sf);
    const std::string op = sf.command["op"].get<std::string>();
    for (const char* want : ops) {
        if (op == want) return sf;
    }
    std::string expected;
    for (const char* want : ops) {
        if (!expected.empty()) expected += "' or '";
        expected += want;
    }
    raise(ErrorCode::SchemaError,
          "command.op: this subcommand expects '" + expected + "', got '" + op + "'");
}

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) {
        raise(ErrorCode::SchemaError, where + ": missing \"" + key + "\"");
    }
    return j[key];
}

unsigned uint_field(const json& j, const char* key, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        raise(ErrorCode::SchemaError,
              where + "." + key + ": expected a non-negative integer");
    }
    return static_cast<unsigned>(v.get<long long>());
}

bool report_passes(const VerificationReport& rep, const Context& ctx) {
    if (ctx.backend == Backend::Exact) return rep.symbolic_pass;
    return rep.symbolic_pass || rep.sample_max_abs < kFloatPassTol;
}

LinearShift shift_field(const json& j, const char* key, const Context& ctx,
                        const std::string& where) {
    const json& v = field(j, key, where);
    const std::string at = where + "." + std::string(key);
    if (!v.is_object()) raise(ErrorCode::SchemaError, at + ": expected an object");
    Scalar c = scalar_from_json(field(v, "c", at), ctx.backend, at + ".c");
    const json& jc = field(v, "coeffs", at);
    if (!jc.is_array()) raise(ErrorCode::SchemaError, at + ".coeffs: expected an array");
    std::vector<Scalar> coeffs;
    for (std::size_t t = 0; t < jc.size(); ++t) {
        coeffs.push_back(scalar_from_json(jc[t], ctx.backend,
                                          at + ".coeffs[" + std::to_string(t) + "]"));
    }
    return make_linear_shift(c, coeffs, ctx.eps_zero);
}

NonlinearShiftEquation nonlinear_from_command(const json& cmd, const Context& ctx) {
    unsigned m = uint_field(cmd, "m", "command");
    unsigned n = uint_field(cmd, "n", "command");
    ExpPoly q = exppoly_from_json(field(cmd, "q", "command"), ctx, "command.q");
    ExpPoly p = exppoly_from_json(field(cmd, "p", "command"), ctx, "command.p");
    LinearShift L = shift_field(cmd, "shift", ctx, "command");
    Poly denom;
    if (cmd.contains("denom")) denom = poly_from_json(cmd["denom"], ctx, "command.denom");
    return make_nonlinear_shift_equation(m, n, q, p, L, denom);
}

int run_verify(const std::string& path) {
    SpecFile sf = load_spec(path, {"verify", "verify_nonlinear"});
    Context ctx = make_context(sf);
    const json& cmd = sf.command;
    ExpPoly f = exppoly_from_json(field(cmd, "f", "command"), ctx, "command.f");
    VerificationReport rep;
    if (cmd["op"] == "verify") {
        OperatorSpec op = operator_from_json(field(cmd, "operator", "command"), ctx,
                                             "command.operator");
        ExpPoly rhs = exppoly_from_json(field(cmd, "rhs", "command"), ctx, "command.rhs");
        rep = verify_fermat(f, make_fermat_equation(op, rhs), ctx);
    } else {
        rep = verify_nonlinear(f, nonlinear_from_command(cmd, ctx), ctx);
    }
    std::cout << report_to_json(rep, ctx.backend).dump(2) << "\n";
    return report_passes(rep, ctx) ? 0 : 1;
}

json family_to_json(const SolutionFamily& fam) {
    const Backend be = fam.ctx.backend;
    json j = json::object();
    j["f"] = exppoly_to_json(render_cosh(fam.f, fam.ctx), be);
    j["operator"] = operator_to_json(fam.op, be);
    j["rhs"] = exppoly_to_json(fam.rhs, be);
    json sc = json::array();
    for (const auto& cond : fam.side_conditions) {
        sc.push_back(json{{"name", cond.name}, {"residual", scalar_to_json(cond.residual)}});
    }
    j["side_conditions"] = std::move(sc);
    json ex = json::array();
    for (const auto& check : fam.exclusions_checked) {
        ex.push_back(json{{"name", check.name}, {"ok", check.ok}});
    }
    j["exclusions_checked"] = std::move(ex);
    j["report"] = report_to_json(fam.report, be);
    return j;
}

PinMap pinned_from_json(const json& cmd, const Context& ctx) {
    PinMap pinned;
    if (!cmd.contains("pinned")) return pinned;
    const json& jp = cmd["pinned"];
    if (!jp.is_array()) {
        raise(ErrorCode::SchemaError, "command.pinned: expected [[index, scalar], ...]");
    }
    for (std::size_t t = 0; t < jp.size(); ++t) {
        const std::string at = "command.pinned[" + std::to_string(t) + "]";
        if (!jp[t].is_array() || jp[t].size() != 2 || !jp[t][0].is_number_integer() ||
            jp[t][0].get<long long>() < 0) {
            raise(ErrorCode::SchemaError, at + ": expected [index, scalar]");
        }
        pinned[static_cast<std::size_t>(jp[t][0].get<long long>())] =
            scalar_from_json(jp[t][1], ctx.backend, at + "[1]");
    }
    return pinned;
}

int run_build(const std::string& path) {
    SpecFile sf = load_spec(path, {"build"});
    Context ctx = make_context(sf);
    const json& cmd = sf.command;
    const json& fam_name = field(cmd, "family", "command");
    if (!fam_name.is_string()) {
        raise(ErrorCode::SchemaError, "command.family: expected a string");
    }
    const std::string family = fam_name.get<std::string>();
    auto scalar_arg = [&](const char* key) {
        return scalar_from_json(field(cmd, key, "command"), ctx.backend,
                                "command." + std::string(key));
    };
    if (family == "case_i") {
        SolutionFamily fam = build_case_i(
            uint_field(cmd, "k", "command"), scalar_arg("c"),
            field(cmd, "branch_m", "command").get<long>(), scalar_arg("Q1"),
            scalar_arg("Q2"), scalar_arg("b"), ctx);
        std::cout << family_to_json(fam).dump(2) << "\n";
        return 0;
    }
    if (family == "case_ii") {
        SolutionFamily fam = build_case_ii(
            uint_field(cmd, "k", "command"), scalar_arg("a"), scalar_arg("c"),
            poly_from_json(field(cmd, "Q1", "command"), ctx, "command.Q1"),
            poly_from_json(field(cmd, "Q2", "command"), ctx, "command.Q2"),
            scalar_arg("b"), ctx);
        std::cout << family_to_json(fam).dump(2) << "\n";
        return 0;
    }
    if (family == "mixed") {
        const json& br = field(cmd, "branch", "command");
        if (!br.is_string() || (br != "plus" && br != "minus")) {
            raise(ErrorCode::SchemaError, "command.branch: expected \"plus\" or \"minus\"");
        }
        SolutionFamily fam = build_mixed(
            uint_field(cmd, "m", "command"), uint_field(cmd, "n", "command"),
            scalar_arg("A"), scalar_arg("B"), scalar_arg("a"), scalar_arg("b"),
            br == "plus" ? Branch::Plus : Branch::Minus, ctx);
        std::cout << family_to_json(fam).dump(2) << "\n";
        return 0;
    }
    if (family == "sin") {
        auto out = build_sin_family(scalar_arg("c"),
                                    uint_field(cmd, "tau", "command"),
                                    pinned_from_json(cmd, ctx), ctx);
        if (const auto* inf = std::get_if<Infeasible>(&out)) {
            json j{{"infeasible", true}, {"rule", inf->rule}, {"detail", inf->detail}};
            std::cout << j.dump(2) << "\n";
            return 1;
        }
        std::cout << family_to_json(std::get<SolutionFamily>(out)).dump(2) << "\n";
        return 0;
    }
    raise(ErrorCode::SchemaError, "command.family: unknown family '" + family + "'");
}

int run_solve(const std::string& path) {
    SpecFile sf = load_spec(path, {"solve_shift"});
    Context ctx = make_context(sf);
    const json& cmd = sf.command;
    Scalar w = scalar_from_json(field(cmd, "w", "command"), ctx.backend, "command.w");
    auto out = solve_shift_coeffs(uint_field(cmd, "tau", "command"), w,
                                  pinned_from_json(cmd, ctx), ctx);
    if (const auto* inf = std::get_if<Infeasible>(&out)) {
        json j{{"infeasible", true}, {"rule", inf->rule}, {"detail", inf->detail}};
        std::cout << j.dump(2) << "\n";
        return 1;
    }
    json arr = json::array();
    for (const Scalar& s : std::get<std::vector<Scalar>>(out)) {
        arr.push_back(scalar_to_json(s));
    }
    std::cout << json{{"coeffs", std::move(arr)}}.dump(2) << "\n";
    return 0;
}

int run_gate(unsigned m, unsigned n, unsigned tau, const std::string& cls) {
    FunctionClass fc;
    if (cls == "entire") {
        fc = FunctionClass::Entire;
    } else if (cls == "meromorphic") {
        fc = FunctionClass::Meromorphic;
    } else {
        raise(ErrorCode::InvalidArgument, "--class must be 'entire' or 'meromorphic'");
    }
    GateVerdict v = gate(m, n, tau, fc);
    json j{{"guaranteed", v.guaranteed},
           {"rule", v.rule},
           {"verdict", v.guaranteed ? "NonexistenceGuaranteed" : "GateOpen"}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_search(const std::string& path) {
    SpecFile sf = load_spec(path, {"search"});
    Context ctx = make_context(sf);
    const json& cmd = sf.command;
    NonlinearShiftEquation eq = nonlinear_from_command(cmd, ctx);

    AnsatzSpace space;
    if (cmd.contains("lattice")) {
        const json& jl = cmd["lattice"];
        if (!jl.is_array()) raise(ErrorCode::SchemaError, "command.lattice: expected an array");
        for (std::size_t t = 0; t < jl.size(); ++t) {
            space.freq_lattice.push_back(scalar_from_json(
                jl[t], ctx.backend, "command.lattice[" + std::to_string(t) + "]"));
        }
        if (cmd.contains("max_poly_degree")) {
            space.max_poly_degree = uint_field(cmd, "max_poly_degree", "command");
        }
        if (cmd.contains("max_terms")) space.max_terms = uint_field(cmd, "max_terms", "command");
    } else {
        int max_j = cmd.contains("max_j") ? static_cast<int>(uint_field(cmd, "max_j", "command")) : 4;
        unsigned deg = cmd.contains("max_poly_degree")
                           ? uint_field(cmd, "max_poly_degree", "command") : 1;
        std::size_t terms = cmd.contains("max_terms")
                                ? uint_field(cmd, "max_terms", "command") : 2;
        space = default_lattice(eq.L.c, max_j, deg, terms);
    }

    SearchOptions opts;
    if (cmd.contains("tol")) opts.tol = field(cmd, "tol", "command").get<double>();
    if (cmd.contains("budget")) opts.budget = uint_field(cmd, "budget", "command");
    if (cmd.contains("parallel")) opts.parallel = field(cmd, "parallel", "command").get<bool>();
    if (cmd.contains("starts")) opts.starts = static_cast<int>(uint_field(cmd, "starts", "command"));
    if (cmd.contains("max_iterations")) {
        opts.max_iterations = static_cast<int>(uint_field(cmd, "max_iterations", "command"));
    }
    if (cmd.contains("seed")) opts.seed = field(cmd, "seed", "command").get<std::uint64_t>();

    SearchOutcome outcome = ansatz_search(eq, space, opts, ctx);
    if (const auto* sols = std::get_if<std::vector<ExpPoly>>(&outcome)) {
        json arr = json::array();
        for (const ExpPoly& s : *sols) arr.push_back(exppoly_to_json(s, ctx.backend));
        std::cout << json{{"solutions", std::move(arr)}}.dump(2) << "\n";
        return 0;
    }
    const auto& cert = std::get<ExhaustionCertificate>(outcome);
    json j{{"certificate",
            json{{"supports_examined", cert.supports_examined},
                 {"tol", cert.tol},
                 {"lattice_size", cert.space.freq_lattice.size()},
                 {"max_poly_degree", cert.space.max_poly_degree},
                 {"max_terms", cert.space.max_terms}}}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_eval(const std::string& path) {
    SpecFile sf = load_spec(path, {"eval"});
    Context ctx = make_context(sf);
    const json& cmd = sf.command;
    ExpPoly f = exppoly_from_json(field(cmd, "f", "command"), ctx, "command.f");
    const json& jp = field(cmd, "points", "command");
    if (!jp.is_array()) raise(ErrorCode::SchemaError, "command.points: expected an array");
    json values = json::array();
    for (std::size_t t = 0; t < jp.size(); ++t) {
        Scalar z = scalar_from_json(jp[t], Backend::Float,
                                    "command.points[" + std::to_string(t) + "]");
        std::complex<double> v = ep_eval(f, z.to_complex());
        values.push_back(json{{"re", v.real()}, {"im", v.imag()}});
    }
    std::cout << json{{"values", std::move(values)}}.dump(2) << "\n";
    return 0;
}

int run_fixtures() {
    json arr = json::array();
    bool all_ok = true;
    for (const Fixture& fx : builtin_fixtures()) {
        VerificationReport rep = run_fixture(fx);
        bool passed = report_passes(rep, fx.ctx);
        bool ok = passed == fx.expect_pass;
        all_ok = all_ok && ok;
        arr.push_back(json{{"name", fx.name},
                           {"backend", backend_name(fx.ctx.backend)},
                           {"symbolic_pass", rep.symbolic_pass},
                           {"sample_max_abs", rep.sample_max_abs},
                           {"expected_pass", fx.expect_pass},
                           {"ok", ok}});
    }
    std::cout << arr.dump(2) << "\n";
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exponential-polynomial kit for delay-differential Fermat equations"};
    app.require_subcommand(1);

    std::string verify_path, build_path, solve_path, search_path, eval_path;
    unsigned gate_m = 1, gate_n = 1, gate_tau = 1;
    std::string gate_class;

    CLI::App* sc_verify = app.add_subcommand("verify", "check a candidate against an equation");
    sc_verify->add_option("spec", verify_path, "input JSON file")->required();
    CLI::App* sc_build = app.add_subcommand("build", "construct a solution family");
    sc_build->add_option("spec", build_path, "input JSON file")->required();
    CLI::App* sc_solve = app.add_subcommand("solve", "solve the shift coefficient system");
    sc_solve->add_option("spec", solve_path, "input JSON file")->required();
    CLI::App* sc_gate = app.add_subcommand("gate", "query the non-existence gate");
    sc_gate->add_option("--m", gate_m, "power of f")->required();
    sc_gate->add_option("--n", gate_n, "power of the shifted combination")->required();
    sc_gate->add_option("--tau", gate_tau, "shift operator order")->required();
    sc_gate->add_option("--class", gate_class, "entire | meromorphic")->required();
    CLI::App* sc_search = app.add_subcommand("search", "bounded ansatz search");
    sc_search->add_option("spec", search_path, "input JSON file")->required();
    CLI::App* sc_eval = app.add_subcommand("eval", "evaluate an exponential polynomial");
    sc_eval->add_option("spec", eval_path, "input JSON file")->required();
    CLI::App* sc_fixtures = app.add_subcommand("fixtures", "run the built-in corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        nlohmann::json j{{"error", "usage"}, {"message", e.what()}};
        std::cout << j.dump(2) << "\n";
        return 2;
    }

    try {
        if (sc_verify->parsed()) return run_verify(verify_path);
        if (sc_build->parsed()) return run_build(build_path);
        if (sc_solve->parsed()) return run_solve(solve_path);
        if (sc_gate->parsed()) return run_gate(gate_m, gate_n, gate_tau, gate_class);
        if (sc_search->parsed()) return run_search(search_path);
        if (sc_eval->parsed()) return run_eval(eval_path);
        if (sc_fixtures->parsed()) return run_fixtures();
    } catch (const Error& e) {
        nlohmann::json j{{"error", error_code_name(e.code())}, {"message", e.what()}};
        std::cout << j.dump(2) << "\n";
        return e.code() == ErrorCode::ConsistencyFailure ? 1 : 2;
    } catch (const std::exception& e) {
        nlohmann::json j{{"error", "internal"}, {"message", e.what()}};
        std::cout << j.dump(2) << "\n";
        return 2;
    }
    return 2;
}
