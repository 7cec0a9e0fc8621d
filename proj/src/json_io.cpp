#include "fermatkit/json_io.hpp"

namespace fermatkit {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    raise(ErrorCode::SchemaError, where + ": " + what);
}

std::string rat_str(const mpq_class& q) { return q.get_str(); }

mpq_class rat_from_string(const std::string& s, const std::string& where) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return mpq_class(mpz_class(s));
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) bad(where, "zero denominator in '" + s + "'");
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        bad(where, "'" + s + "' is not a rational (expected \"p\" or \"p/q\")");
    }
}

mpq_class exact_component(const json& j, const std::string& where) {
    if (j.is_string()) return rat_from_string(j.get<std::string>(), where);
    if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<long long>()));
    if (j.is_number_float()) {
        bad(where, "exact components must be rational strings or integers, not floats");
    }
    bad(where, "expected a rational string or integer");
}

double float_component(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    bad(where, "expected a number");
}

} // namespace

json scalar_to_json(const Scalar& s) {
    json j = json::object();
    if (s.is_exact()) {
        j["re"] = rat_str(s.rat().re);
        j["im"] = rat_str(s.rat().im);
        j["backend"] = "exact";
    } else {
        j["re"] = s.cplx().real();
        j["im"] = s.cplx().imag();
        j["backend"] = "float";
    }
    return j;
}

Scalar scalar_from_json(const json& j, Backend expected, const std::string& where) {
    if (j.is_string() || j.is_number()) {
        // Shorthand for a purely real value.
        if (expected == Backend::Exact) return Scalar::exact(exact_component(j, where));
        return Scalar::floating(float_component(j, where));
    }
    if (!j.is_object()) bad(where, "expected an object, string, or number");
    if (j.contains("backend")) {
        const json& b = j["backend"];
        if (!b.is_string()) bad(where + ".backend", "expected \"exact\" or \"float\"");
        const std::string name = b.get<std::string>();
        if (name != "exact" && name != "float") {
            bad(where + ".backend", "unknown backend '" + name + "'");
        }
        if ((name == "exact") != (expected == Backend::Exact)) {
            bad(where + ".backend",
                std::string("scalar declares '") + name + "' but the file's backend is '" +
                    backend_name(expected) + "'");
        }
    }
    if (!j.contains("re") || !j.contains("im")) bad(where, "missing \"re\" or \"im\"");
    if (expected == Backend::Exact) {
        return Scalar::exact(exact_component(j["re"], where + ".re"),
                             exact_component(j["im"], where + ".im"));
    }
    return Scalar::floating(float_component(j["re"], where + ".re"),
                            float_component(j["im"], where + ".im"));
}

json poly_to_json(const Poly& p, Backend be) {
    json arr = json::array();
    for (const Scalar& s : p.coeffs()) arr.push_back(scalar_to_json(s));
    (void)be;
    return arr;
}

Poly poly_from_json(const json& j, const Context& ctx, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of scalars (ascending degree)");
    std::vector<Scalar> coeffs;
    for (std::size_t t = 0; t < j.size(); ++t) {
        coeffs.push_back(
            scalar_from_json(j[t], ctx.backend, where + "[" + std::to_string(t) + "]"));
    }
    return Poly(std::move(coeffs), ctx.eps_zero);
}

json exppoly_to_json(const ExpPoly& f, Backend be) {
    json terms = json::array();
    for (const ExpTerm& t : f.terms()) {
        json jt = json::object();
        jt["poly"] = poly_to_json(t.poly, be);
        jt["freq"] = scalar_to_json(t.freq);
        terms.push_back(std::move(jt));
    }
    return json{{"terms", std::move(terms)}};
}

ExpPoly exppoly_from_json(const json& j, const Context& ctx, const std::string& where) {
    if (!j.is_object() || !j.contains("terms")) {
        bad(where, "expected an object with a \"terms\" array");
    }
    const json& terms = j["terms"];
    if (!terms.is_array()) bad(where + ".terms", "expected an array");
    std::vector<ExpTerm> out;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string at = where + ".terms[" + std::to_string(t) + "]";
        const json& jt = terms[t];
        if (!jt.is_object() || !jt.contains("poly") || !jt.contains("freq")) {
            bad(at, "expected an object with \"poly\" and \"freq\"");
        }
        Poly p = poly_from_json(jt["poly"], ctx, at + ".poly");
        Scalar freq = scalar_from_json(jt["freq"], ctx.backend, at + ".freq");
        out.push_back({std::move(p), std::move(freq)});
    }
    return normalize(std::move(out), ctx);
}

namespace {

unsigned uint_field(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) bad(where, std::string("missing \"") + key + "\"");
    const json& v = j[key];
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        bad(where + "." + key, "expected a non-negative integer");
    }
    return static_cast<unsigned>(v.get<long long>());
}

} // namespace

json operator_to_json(const OperatorSpec& op, Backend be) {
    json j = json::object();
    std::visit(
        [&](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, LinearShift>) {
                j["kind"] = "linear_shift";
                j["c"] = scalar_to_json(o.c);
                json arr = json::array();
                for (const Scalar& s : o.coeffs) arr.push_back(scalar_to_json(s));
                j["coeffs"] = std::move(arr);
            } else if constexpr (std::is_same_v<T, Difference>) {
                j["kind"] = "difference";
                j["c"] = scalar_to_json(o.c);
                j["P"] = poly_to_json(o.P, be);
            } else if constexpr (std::is_same_v<T, DiffDelta>) {
                j["kind"] = "diff_delta";
                j["k"] = o.k;
                j["c"] = scalar_to_json(o.c);
                j["R"] = poly_to_json(o.R, be);
            } else {
                j["kind"] = "mixed_delay";
                j["m"] = o.m;
                j["n"] = o.n;
                j["c"] = scalar_to_json(o.c);
                j["A"] = scalar_to_json(o.A);
                j["B"] = scalar_to_json(o.B);
                j["R"] = poly_to_json(o.R, be);
            }
        },
        op);
    return j;
}

OperatorSpec operator_from_json(const json& j, const Context& ctx, const std::string& where) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        bad(where, "expected an object with a string \"kind\"");
    }
    const std::string kind = j["kind"].get<std::string>();
    auto scalar_field = [&](const char* key) {
        if (!j.contains(key)) bad(where, std::string("missing \"") + key + "\"");
        return scalar_from_json(j[key], ctx.backend, where + "." + key);
    };
    auto poly_field = [&](const char* key) {
        if (!j.contains(key)) bad(where, std::string("missing \"") + key + "\"");
        return poly_from_json(j[key], ctx, where + "." + key);
    };
    if (kind == "linear_shift") {
        if (!j.contains("coeffs") || !j["coeffs"].is_array()) {
            bad(where, "missing \"coeffs\" array");
        }
        std::vector<Scalar> coeffs;
        for (std::size_t t = 0; t < j["coeffs"].size(); ++t) {
            coeffs.push_back(scalar_from_json(j["coeffs"][t], ctx.backend,
                                              where + ".coeffs[" + std::to_string(t) + "]"));
        }
        return OperatorSpec{make_linear_shift(scalar_field("c"), coeffs, ctx.eps_zero)};
    }
    if (kind == "difference") {
        return OperatorSpec{make_difference(scalar_field("c"), poly_field("P"), ctx.eps_zero)};
    }
    if (kind == "diff_delta") {
        return OperatorSpec{make_diff_delta(uint_field(j, "k", where), scalar_field("c"),
                                            poly_field("R"), ctx.eps_zero)};
    }
    if (kind == "mixed_delay") {
        return OperatorSpec{make_mixed_delay(uint_field(j, "m", where),
                                             uint_field(j, "n", where), scalar_field("c"),
                                             scalar_field("A"), scalar_field("B"),
                                             poly_field("R"), ctx.eps_zero)};
    }
    bad(where + ".kind", "unknown operator kind '" + kind + "'");
}

json report_to_json(const VerificationReport& rep, Backend be) {
    json j = json::object();
    j["symbolic_pass"] = rep.symbolic_pass;
    j["residual"] = exppoly_to_json(rep.residual, be);
    j["sample_max_abs"] = rep.sample_max_abs;
    return j;
}

} // namespace fermatkit
