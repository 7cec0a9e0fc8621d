#include "fermatkit/fixtures.hpp"
#include "fermatkit/nonexistence.hpp"

#include <chrono>
#include <iostream>

using namespace fermatkit;

// Times the ansatz search with the OpenMP path against the serial reference
// on the exponential-plus-z instance and checks that both produce identical
// solution sets.

namespace {

double run_once(const NonlinearShiftEquation& eq, const AnsatzSpace& space,
                const Context& ctx, bool parallel, SearchOutcome& out) {
    SearchOptions opts;
    opts.parallel = parallel;
    auto t0 = std::chrono::steady_clock::now();
    out = ansatz_search(eq, space, opts, ctx);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main() {
    std::vector<Fixture> all = builtin_fixtures();
    const Fixture* fx = find_fixture(all, "nonlinear-exp-plus-z-float");
    if (!fx) {
        std::cerr << "fixture missing\n";
        return 1;
    }
    const auto& eq = std::get<NonlinearShiftEquation>(fx->equation);
    AnsatzSpace space = default_lattice(eq.L.c);

    SearchOutcome serial_out, parallel_out;
    const double t_serial = run_once(eq, space, fx->ctx, false, serial_out);
    const double t_parallel = run_once(eq, space, fx->ctx, true, parallel_out);

    auto describe = [](const SearchOutcome& out) {
        if (const auto* sols = std::get_if<std::vector<ExpPoly>>(&out)) {
            return "solutions=" + std::to_string(sols->size());
        }
        return std::string("certificate");
    };
    std::cout << "serial:   " << t_serial << " s  (" << describe(serial_out) << ")\n";
    std::cout << "parallel: " << t_parallel << " s  (" << describe(parallel_out) << ")\n";
    std::cout << "speedup:  " << (t_parallel > 0 ? t_serial / t_parallel : 0.0) << "x\n";

    bool identical = false;
    if (serial_out.index() == parallel_out.index()) {
        if (const auto* s = std::get_if<std::vector<ExpPoly>>(&serial_out)) {
            const auto& p = std::get<std::vector<ExpPoly>>(parallel_out);
            identical = s->size() == p.size();
            for (std::size_t t = 0; identical && t < s->size(); ++t) {
                identical = ep_equal((*s)[t], p[t], fx->ctx);
            }
        } else {
            identical = std::get<ExhaustionCertificate>(serial_out).supports_examined ==
                        std::get<ExhaustionCertificate>(parallel_out).supports_examined;
        }
    }
    std::cout << "identical results: " << (identical ? "yes" : "NO") << "\n";
    return identical ? 0 : 1;
}
