#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "xorgames/classical.hpp"
#include "xorgames/game.hpp"
#include "xorgames/kernel.hpp"
#include "xorgames/simulate.hpp"
#include "xorgames/solver.hpp"

namespace xorgames {

// ---------------------------------------------------------------------------
// Number and angle formatting
// ---------------------------------------------------------------------------

/// Shortest-ish round-trippable decimal: 17 significant digits always
/// reproduce the same double on parse.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Pretty form of an angle that is (within 1e-9) a multiple of pi/48, e.g.
/// "3π/16", "-π/3", "π", "0". Returns "" for angles off that grid. pi/48
/// covers every multiple of pi/16 and pi/12, which is where the catalog
/// games' optimal witnesses live.
inline std::string pretty_angle(double radians) {
    const double unit = kPi / 48.0;
    const long long k = std::llround(radians / unit);
    if (std::abs(radians - static_cast<double>(k) * unit) > 1e-9) return "";
    if (k == 0) return "0";
    const long long g = std::gcd(std::llabs(k), 48LL);
    const long long num = k / g;
    const long long den = 48 / g;
    std::string s = num < 0 ? "-" : "";
    if (std::llabs(num) != 1) s += std::to_string(std::llabs(num));
    s += "π";  // pi
    if (den != 1) s += "/" + std::to_string(den);
    return s;
}

inline std::string bell_label(BellState b) {
    const char* names[4] = {"φ+", "φ-", "ψ+", "ψ-"};  // φ+ φ- ψ+ ψ-
    return names[bell_order(b)];
}

/// Accepts "φ+", "phi+", "φ−" (unicode minus), "psi-", etc.
inline BellState bell_from_label(std::string_view label) {
    std::string s;
    for (std::size_t i = 0; i < label.size();) {
        // normalize the two unicode spellings that matter: φ ψ − (minus)
        if (label.compare(i, 2, "φ") == 0) {
            s += "phi";
            i += 2;
        } else if (label.compare(i, 2, "ψ") == 0) {
            s += "psi";
            i += 2;
        } else if (label.compare(i, 3, "−") == 0) {
            s += '-';
            i += 3;
        } else {
            s += static_cast<char>(std::tolower(static_cast<unsigned char>(label[i])));
            i += 1;
        }
    }
    if (s == "phi+") return kPhiPlus;
    if (s == "phi-") return kPhiMinus;
    if (s == "psi+") return kPsiPlus;
    if (s == "psi-") return kPsiMinus;
    throw ParseError("unknown Bell state label '" + std::string(label) +
                     "' (expected one of φ+, φ-, ψ+, ψ-)");
}

namespace detail {

/// Parses "[-][k][*]pi[/d]" or a plain decimal. π and the unicode minus sign
/// are accepted; whitespace is ignored.
inline double parse_angle_text(std::string_view text) {
    std::string s;
    for (std::size_t i = 0; i < text.size();) {
        if (text.compare(i, 2, "π") == 0) {
            s += "pi";
            i += 2;
        } else if (text.compare(i, 3, "−") == 0) {
            s += '-';
            i += 3;
        } else if (std::isspace(static_cast<unsigned char>(text[i]))) {
            i += 1;
        } else {
            s += text[i];
            i += 1;
        }
    }
    if (s.empty()) throw ParseError("empty angle expression");

    if (s.find("pi") == std::string::npos) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw ParseError("cannot parse angle '" + std::string(text) + "'");
        }
        if (used != s.size()) throw ParseError("cannot parse angle '" + std::string(text) + "'");
        return v;
    }

    std::size_t i = 0;
    double sign = 1.0;
    if (s[i] == '-') {
        sign = -1.0;
        ++i;
    } else if (s[i] == '+') {
        ++i;
    }
    double coeff = 1.0;
    std::size_t digits = i;
    while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
    if (digits > i) {
        coeff = std::stod(s.substr(i, digits - i));
        i = digits;
        if (i < s.size() && s[i] == '*') ++i;
    }
    if (s.compare(i, 2, "pi") != 0) {
        throw ParseError("cannot parse angle '" + std::string(text) + "'");
    }
    i += 2;
    double denom = 1.0;
    if (i < s.size()) {
        if (s[i] != '/') throw ParseError("cannot parse angle '" + std::string(text) + "'");
        ++i;
        std::size_t d = i;
        while (d < s.size() && std::isdigit(static_cast<unsigned char>(s[d]))) ++d;
        if (d == i || d != s.size()) {
            throw ParseError("cannot parse angle '" + std::string(text) + "'");
        }
        denom = std::stod(s.substr(i, d - i));
        if (denom == 0.0) throw ParseError("angle denominator is zero in '" + std::string(text) + "'");
    }
    return sign * coeff * kPi / denom;
}

}  // namespace detail

/// An angle field: a JSON number (radians) or a "3π/16"-style string.
inline double parse_angle(const nlohmann::json& v, const std::string& field) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            return detail::parse_angle_text(v.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(field + ": " + e.what());
        }
    }
    throw ParseError(field + ": expected a number or an angle string");
}

/// A probability field: a JSON number or an exact-rational "p/q" string.
inline double parse_probability(const nlohmann::json& v, const std::string& field) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        const std::size_t slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                std::size_t used = 0;
                const double d = std::stod(s, &used);
                if (used != s.size()) throw ParseError("");
                return d;
            }
            std::size_t used_num = 0, used_den = 0;
            const std::string num_s = s.substr(0, slash);
            const std::string den_s = s.substr(slash + 1);
            const double num = std::stod(num_s, &used_num);
            const double den = std::stod(den_s, &used_den);
            if (used_num != num_s.size() || used_den != den_s.size() || den == 0.0) {
                throw ParseError("");
            }
            return num / den;
        } catch (const std::exception&) {
            throw ParseError(field + ": cannot parse probability '" + s + "'");
        }
    }
    throw ParseError(field + ": expected a number or a \"p/q\" string");
}

// ---------------------------------------------------------------------------
// Minimal ordered JSON writer
// ---------------------------------------------------------------------------

/// Emits JSON with the exact field order and float formatting the callers
/// choose; identical inputs yield byte-identical output. (The vendored JSON
/// library is used for parsing only -- its serializer decides float digits
/// on its own, which breaks output stability across shortest-representation
/// boundaries.)
class JsonWriter {
public:
    JsonWriter& begin_object() { return open('{', '}'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('[', ']'); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(std::string_view k) {
        separate();
        escaped(k);
        out_ += ':';
        pending_value_ = true;
        return *this;
    }

    JsonWriter& value(double v) { return raw(format_double(v)); }
    JsonWriter& value(std::int64_t v) { return raw(std::to_string(v)); }
    JsonWriter& value(std::uint64_t v) { return raw(std::to_string(v)); }
    JsonWriter& value(int v) { return raw(std::to_string(v)); }
    JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
    JsonWriter& value(std::string_view v) {
        separate();
        escaped(v);
        return *this;
    }
    // Keeps string literals away from the bool overload.
    JsonWriter& value(const char* v) { return value(std::string_view(v)); }

    const std::string& str() const { return out_; }

private:
    JsonWriter& open(char c, char) {
        separate();
        out_ += c;
        first_.push_back(true);
        return *this;
    }
    JsonWriter& close(char c) {
        out_ += c;
        first_.pop_back();
        return *this;
    }
    JsonWriter& raw(const std::string& text) {
        separate();
        out_ += text;
        return *this;
    }
    void separate() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!first_.empty()) {
            if (!first_.back()) out_ += ',';
            first_.back() = false;
        }
    }
    void escaped(std::string_view s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                case '\r': out_ += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out_ += buf;
                    } else {
                        out_ += c;  // UTF-8 bytes pass through
                    }
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<bool> first_;
    bool pending_value_ = false;
};

// ---------------------------------------------------------------------------
// Game and strategy files
// ---------------------------------------------------------------------------

inline XorGame game_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("game spec: top level must be an object");
    XorGame game;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ParseError("game spec: 'name' must be a string");
        game.name = j["name"].get<std::string>();
    }
    for (const char* field : {"n_alice", "n_bob"}) {
        if (!j.contains(field) || !j[field].is_number_integer()) {
            throw ParseError(std::string("game spec: '") + field + "' must be an integer");
        }
    }
    game.n_alice = j["n_alice"].get<int>();
    game.n_bob = j["n_bob"].get<int>();
    if (!j.contains("pairs") || !j["pairs"].is_array()) {
        throw ParseError("game spec: 'pairs' must be an array");
    }
    std::size_t i = 0;
    for (const nlohmann::json& e : j["pairs"]) {
        const std::string where = "game spec: pairs[" + std::to_string(i) + "]";
        if (!e.is_object()) throw ParseError(where + " must be an object");
        for (const char* field : {"s", "t", "target"}) {
            if (!e.contains(field) || !e[field].is_number_integer()) {
                throw ParseError(where + ".'" + field + "' must be an integer");
            }
        }
        if (!e.contains("prob")) throw ParseError(where + ".'prob' is missing");
        PairEntry p;
        p.s = e["s"].get<int>();
        p.t = e["t"].get<int>();
        p.target = e["target"].get<int>();
        p.prob = parse_probability(e["prob"], where + ".prob");
        game.pairs.push_back(p);
        ++i;
    }
    validate(game);
    return game;
}

inline XorGame parse_game_text(const std::string& text, const std::string& origin = "<input>") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    try {
        return game_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline XorGame load_game_file(const std::string& path) {
    return parse_game_text(read_text_file(path), path);
}

inline std::string game_to_json(const XorGame& game) {
    JsonWriter w;
    w.begin_object();
    w.key("name").value(std::string_view(game.name));
    w.key("n_alice").value(game.n_alice);
    w.key("n_bob").value(game.n_bob);
    w.key("pairs").begin_array();
    for (const PairEntry& p : game.pairs) {
        w.begin_object();
        w.key("s").value(p.s);
        w.key("t").value(p.t);
        w.key("prob").value(p.prob);
        w.key("target").value(p.target);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

/// A strategy file is either classical ({type, f, g}) or quantum
/// ({type, bell, alpha, beta}).
struct StrategyFile {
    enum class Kind { classical, quantum };
    Kind kind = Kind::classical;
    DeterministicStrategy det;
    QuantumStrategy quantum;
};

inline StrategyFile strategy_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        throw ParseError("strategy: 'type' must be \"classical\" or \"quantum\"");
    }
    const std::string type = j["type"].get<std::string>();
    StrategyFile out;
    if (type == "classical") {
        out.kind = StrategyFile::Kind::classical;
        for (const char* field : {"f", "g"}) {
            if (!j.contains(field) || !j[field].is_array()) {
                throw ParseError(std::string("strategy: '") + field + "' must be an array of bits");
            }
            std::vector<std::uint8_t>& table =
                field[0] == 'f' ? out.det.f : out.det.g;
            for (const nlohmann::json& b : j[field]) {
                if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1)) {
                    throw ParseError(std::string("strategy: '") + field +
                                     "' entries must be 0 or 1");
                }
                table.push_back(static_cast<std::uint8_t>(b.get<int>()));
            }
        }
    } else if (type == "quantum") {
        out.kind = StrategyFile::Kind::quantum;
        if (!j.contains("bell") || !j["bell"].is_string()) {
            throw ParseError("strategy: 'bell' must be a Bell state label");
        }
        out.quantum.bell = bell_from_label(j["bell"].get<std::string>());
        for (const char* field : {"alpha", "beta"}) {
            if (!j.contains(field) || !j[field].is_array()) {
                throw ParseError(std::string("strategy: '") + field + "' must be an array");
            }
            std::vector<double>& angles =
                field[0] == 'a' ? out.quantum.alpha : out.quantum.beta;
            std::size_t i = 0;
            for (const nlohmann::json& a : j[field]) {
                angles.push_back(
                    parse_angle(a, std::string("strategy: ") + field + "[" + std::to_string(i) + "]"));
                ++i;
            }
        }
    } else {
        throw ParseError("strategy: unknown type '" + type + "'");
    }
    return out;
}

inline StrategyFile load_strategy_file(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        return strategy_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Result serialization (fixed field order; see JsonWriter)
// ---------------------------------------------------------------------------

inline void write_angle_array(JsonWriter& w, const std::vector<double>& angles) {
    w.begin_array();
    for (double a : angles) w.value(a);
    w.end_array();
}

inline void write_pretty_array(JsonWriter& w, const std::vector<double>& angles) {
    w.begin_array();
    for (double a : angles) w.value(std::string_view(pretty_angle(a)));
    w.end_array();
}

inline std::string classical_result_to_json(const ClassicalResult& r) {
    JsonWriter w;
    w.begin_object();
    w.key("value").value(r.value);
    w.key("witness_f").begin_array();
    for (std::uint8_t b : r.witness.f) w.value(static_cast<int>(b));
    w.end_array();
    w.key("witness_g").begin_array();
    for (std::uint8_t b : r.witness.g) w.value(static_cast<int>(b));
    w.end_array();
    w.key("strategies_enumerated").value(r.strategies_enumerated);
    w.end_object();
    return w.str();
}

inline constexpr const char* kQuantumValueLabel = "quantum value (single-ebit ansatz)";

inline void write_optimization_fields(JsonWriter& w, const OptimizationResult& r) {
    w.key("label").value(std::string_view(kQuantumValueLabel));
    w.key("value").value(r.value);
    w.key("bell").value(std::string_view(bell_label(r.witness.bell)));
    w.key("alpha");
    write_angle_array(w, r.witness.alpha);
    w.key("alpha_pretty");
    write_pretty_array(w, r.witness.alpha);
    w.key("beta");
    write_angle_array(w, r.witness.beta);
    w.key("beta_pretty");
    write_pretty_array(w, r.witness.beta);
    w.key("starts_run").value(r.starts_run);
    w.key("gradient_norm").value(r.best_gradient_norm);
    w.key("converged").value(r.converged);
}

inline std::string optimization_result_to_json(const OptimizationResult& r) {
    JsonWriter w;
    w.begin_object();
    write_optimization_fields(w, r);
    w.end_object();
    return w.str();
}

inline std::string simulation_report_to_json(const SimulationReport& r) {
    JsonWriter w;
    w.begin_object();
    w.key("rounds").value(r.rounds);
    w.key("wins").value(r.wins);
    w.key("win_rate").value(r.win_rate);
    w.key("stderr").value(r.std_error);
    w.key("seed").value(r.seed);
    w.end_object();
    return w.str();
}

}  // namespace xorgames
