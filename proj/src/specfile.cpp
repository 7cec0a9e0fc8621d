#include "fermatkit/specfile.hpp"

namespace fermatkit {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    raise(ErrorCode::SchemaError, where + ": " + what);
}

/// nlohmann reports a byte offset; humans want line and column.
std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t t = 0; t < byte && t < text.size(); ++t) {
        if (text[t] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace

SpecFile parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        raise(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", column " +
                                          std::to_string(col) + ": " + e.what());
    }
    if (!j.is_object()) bad("document", "expected a JSON object");

    SpecFile sf;
    if (!j.contains("version") || !j["version"].is_number_integer()) {
        bad("version", "missing or non-integer");
    }
    sf.version = j["version"].get<int>();
    if (sf.version != 1) {
        bad("version", "unsupported version " + std::to_string(sf.version));
    }

    if (!j.contains("backend") || !j["backend"].is_string()) {
        bad("backend", "missing; expected \"exact\" or \"float\"");
    }
    const std::string be = j["backend"].get<std::string>();
    if (be == "exact") {
        sf.backend = Backend::Exact;
    } else if (be == "float") {
        sf.backend = Backend::Float;
    } else {
        bad("backend", "unknown backend '" + be + "'");
    }

    if (j.contains("eps_zero")) {
        if (!j["eps_zero"].is_number()) bad("eps_zero", "expected a number");
        sf.eps_zero = j["eps_zero"].get<double>();
        if (!(sf.eps_zero > 0.0)) bad("eps_zero", "must be positive");
    }

    if (j.contains("declared_exponentials")) {
        const json& decl = j["declared_exponentials"];
        if (!decl.is_array()) bad("declared_exponentials", "expected an array of [key, value]");
        for (std::size_t t = 0; t < decl.size(); ++t) {
            const std::string at = "declared_exponentials[" + std::to_string(t) + "]";
            const json& pair = decl[t];
            if (!pair.is_array() || pair.size() != 2) bad(at, "expected a [key, value] pair");
            sf.declared_exponentials.emplace_back(
                scalar_from_json(pair[0], sf.backend, at + "[0]"),
                scalar_from_json(pair[1], sf.backend, at + "[1]"));
        }
    }

    if (!j.contains("command") || !j["command"].is_object()) {
        bad("command", "missing command object");
    }
    sf.command = j["command"];
    if (!sf.command.contains("op") || !sf.command["op"].is_string()) {
        bad("command.op", "missing operation name");
    }
    return sf;
}

std::string print_spec(const SpecFile& sf) {
    json j = json::object();
    j["version"] = sf.version;
    j["backend"] = backend_name(sf.backend);
    j["eps_zero"] = sf.eps_zero;
    if (!sf.declared_exponentials.empty()) {
        json decl = json::array();
        for (const auto& [k, v] : sf.declared_exponentials) {
            decl.push_back(json::array({scalar_to_json(k), scalar_to_json(v)}));
        }
        j["declared_exponentials"] = std::move(decl);
    }
    j["command"] = sf.command;
    return j.dump(2) + "\n";
}

Context make_context(const SpecFile& sf) {
    Context ctx(sf.backend, sf.eps_zero);
    for (const auto& [k, v] : sf.declared_exponentials) ctx.declare_exponential(k, v);
    return ctx;
}

} // namespace fermatkit
