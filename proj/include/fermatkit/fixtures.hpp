#pragma once

#include "fermatkit/builder.hpp"

namespace fermatkit {

/// Self-contained worked instance: a candidate solution, the equation it is
/// matched against, and the context carrying backend and declared
/// exponentials. expect_pass = false marks deliberate counter-instances.
///
/// Exact entries replace pi-valued step/frequency constants by rational
/// stand-ins and carry the corresponding declared exponential values, so
/// verification is a formal character-level identity check; the float twins
/// instantiate the genuine transcendental constants and verify numerically.
struct Fixture {
    std::string name;
    std::string summary;
    Context ctx;
    ExpPoly f;
    std::variant<FermatEquation, NonlinearShiftEquation> equation;
    bool expect_pass = true;
};

std::vector<Fixture> builtin_fixtures();

/// nullptr when the name is unknown.
const Fixture* find_fixture(const std::vector<Fixture>& all, const std::string& name);

VerificationReport run_fixture(const Fixture& fx);

} // namespace fermatkit
