#pragma once

#include <cctype>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mutinv/explore.hpp"

// Text and JSON formats. Matrices, sequences and permutations are 1-based in
// every serialized form; the in-memory API stays 0-based.

namespace mutinv {

// ---- integers ----

inline Int parse_int_token(std::string_view tok) {
    std::string_view rest = tok;
    if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) rest.remove_prefix(1);
    if (rest.empty()) throw ParseError("malformed integer '" + std::string(tok) + "'");
    for (char c : rest)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("malformed integer '" + std::string(tok) + "'");
    Int v{std::string(rest)};
    if (tok.front() == '-') v = -v;
    return v;
}

inline nlohmann::json json_from_int(const Int& v) {
    if (v >= INT64_MIN && v <= INT64_MAX) return v.convert_to<std::int64_t>();
    return v.str();
}

inline Int int_from_json(const nlohmann::json& j, const std::string& what) {
    if (j.is_number_unsigned()) {
        std::uint64_t u = j.get<std::uint64_t>();
        return Int(u);
    }
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return parse_int_token(j.get<std::string>());
    if (j.is_number_float())
        throw ParseError(what + ": non-integer number (quote values beyond 64 bits as strings)");
    throw ParseError(what + " must be an integer or a decimal string");
}

// ---- matrices ----

inline constexpr std::size_t kMaxParsedDimension = 10000;

struct MatrixFile {
    IntMatrix entries;
    std::optional<std::vector<Int>> symmetrizer;
};

// "n" on the first line, then n*n whitespace-separated integers; nothing else.
inline IntMatrix parse_matrix_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string tok;
    if (!(in >> tok)) throw ParseError("empty matrix input");
    Int header = parse_int_token(tok);
    if (header < 1 || header > Int(kMaxParsedDimension))
        throw ParseError("dimension must be between 1 and " + std::to_string(kMaxParsedDimension));
    const std::size_t n = header.convert_to<std::size_t>();
    IntMatrix b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!(in >> tok))
                throw ParseError("matrix input ends after " +
                                 std::to_string(i * n + j) + " of " + std::to_string(n * n) +
                                 " entries");
            b(i, j) = parse_int_token(tok);
        }
    if (in >> tok) throw ParseError("trailing garbage after matrix entries: '" + tok + "'");
    return b;
}

inline std::string format_matrix_text(const IntMatrix& b) { return b.to_text(); }

inline nlohmann::json json_of_entries(const IntMatrix& b) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < b.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < b.size(); ++j) row.push_back(json_from_int(b(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline IntMatrix entries_from_json(const nlohmann::json& rows, std::size_t n) {
    if (!rows.is_array() || rows.size() != n)
        throw ParseError("entries must be an array of " + std::to_string(n) + " rows");
    IntMatrix b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || row.size() != n)
            throw ParseError("row " + std::to_string(i + 1) + " must hold " + std::to_string(n) +
                             " entries");
        for (std::size_t j = 0; j < n; ++j)
            b(i, j) = int_from_json(row[j], "entry (" + std::to_string(i + 1) + "," +
                                                std::to_string(j + 1) + ")");
    }
    return b;
}

// Object with keys n, entries, and optionally symmetrizer; anything else is
// rejected so typos fail loudly.
inline MatrixFile parse_matrix_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("matrix JSON must be an object");
    for (const auto& item : j.items())
        if (item.key() != "n" && item.key() != "entries" && item.key() != "symmetrizer")
            throw ParseError("unknown key '" + item.key() + "'");
    if (!j.contains("n") || !j.contains("entries"))
        throw ParseError("matrix JSON requires keys 'n' and 'entries'");

    Int header = int_from_json(j["n"], "n");
    if (header < 1 || header > Int(kMaxParsedDimension))
        throw ParseError("dimension must be between 1 and " + std::to_string(kMaxParsedDimension));
    const std::size_t n = header.convert_to<std::size_t>();

    MatrixFile out{entries_from_json(j["entries"], n), std::nullopt};
    if (j.contains("symmetrizer")) {
        const auto& arr = j["symmetrizer"];
        if (!arr.is_array() || arr.size() != n)
            throw ParseError("symmetrizer must be an array of " + std::to_string(n) + " entries");
        std::vector<Int> d;
        d.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            Int v = int_from_json(arr[i], "symmetrizer entry " + std::to_string(i + 1));
            if (v < 1) throw ParseError("symmetrizer entries must be positive");
            d.push_back(std::move(v));
        }
        out.symmetrizer = std::move(d);
    }
    return out;
}

inline nlohmann::json json_of_matrix(const ExchangeMatrix& b) {
    nlohmann::json d = nlohmann::json::array();
    for (std::size_t i = 0; i < b.n(); ++i) d.push_back(json_from_int(b.symmetrizer()[i]));
    return {{"n", b.n()}, {"entries", json_of_entries(b.matrix())}, {"symmetrizer", std::move(d)}};
}

// Sniffs JSON by the first non-space byte.
inline MatrixFile parse_matrix_auto(std::string_view text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return parse_matrix_json(text);
        break;
    }
    return {parse_matrix_text(text), std::nullopt};
}

// ---- sequences and permutations ----

namespace detail {

inline std::vector<std::string> split_commas(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    bool any = false;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
            any = true;
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (any || !cur.empty()) out.push_back(cur);
    return out;
}

inline std::size_t parse_position(const std::string& tok, std::size_t n) {
    if (tok.empty()) throw ParseError("empty element in comma-separated list");
    Int v = parse_int_token(tok);
    if (v < 1) throw ParseError("positions are 1-based; got '" + tok + "'");
    if (v > Int(n)) throw IndexOutOfRangeError(v.convert_to<std::size_t>() - 1, n);
    return v.convert_to<std::size_t>() - 1;
}

}  // namespace detail

// "2,1,3" with 1-based directions; empty input is the empty sequence.
inline MutationSequence parse_mutation_sequence(std::string_view s, std::size_t n) {
    MutationSequence seq;
    for (const std::string& tok : detail::split_commas(s))
        seq.push_back(detail::parse_position(tok, n));
    return seq;
}

inline std::string format_mutation_sequence(const MutationSequence& seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(seq[i] + 1);
    }
    return out;
}

// "2,3,1" lists the 1-based images of positions 1..n.
inline Permutation parse_permutation(std::string_view s, std::size_t n) {
    std::vector<std::string> toks = detail::split_commas(s);
    if (toks.size() != n)
        throw InvalidPermutationError("expected " + std::to_string(n) + " images, got " +
                                      std::to_string(toks.size()));
    std::vector<std::size_t> images;
    images.reserve(n);
    for (const std::string& tok : toks) images.push_back(detail::parse_position(tok, n));
    return Permutation(std::move(images));
}

inline std::string format_permutation(const Permutation& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(p(i) + 1);
    }
    return out;
}

// ---- invariant values ----

inline nlohmann::json json_of_delta(const DeltaValue& d) {
    return {{"residue", json_from_int(d.residue)},
            {"modulus", json_from_int(d.modulus)},
            {"det", d.raw_det.str()}};
}

inline DeltaValue delta_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("residue") || !j.contains("modulus") || !j.contains("det"))
        throw ParseError("delta JSON requires keys residue, modulus, det");
    if (!j["det"].is_string()) throw ParseError("delta 'det' must be a decimal string");
    return {int_from_json(j["residue"], "residue"), int_from_json(j["modulus"], "modulus"),
            parse_int_token(j["det"].get<std::string>())};
}

// ---- class dumps (JSON lines) ----

inline constexpr int kDumpVersion = 1;

struct DumpData {
    ExchangeMatrix seed;
    std::vector<ClassMember> members;
    std::size_t expanded = 0;    // trusted only when has_trailer
    bool has_trailer = false;
    bool complete = false;
    ExploreOptions budgets;      // as recorded in the header
};

inline void write_dump(std::ostream& out, const ExploreResult& r, const ExploreOptions& opts) {
    nlohmann::json header{{"kind", "header"},
                          {"format", "mutinv-class-dump"},
                          {"version", kDumpVersion},
                          {"n", r.seed.n()},
                          {"seed", json_of_entries(r.seed.matrix())},
                          {"max_depth", opts.max_depth},
                          {"max_nodes", opts.max_nodes},
                          {"magnitude_limit", json_from_int(opts.magnitude_limit)}};
    out << header.dump() << '\n';
    for (const ClassMember& m : r.members) {
        nlohmann::json line{{"kind", "member"},
                            {"depth", m.depth},
                            {"canonical", json_of_entries(m.canonical.matrix())},
                            {"delta", json_from_int(m.delta_residue)}};
        line["delta_prime"] =
            m.delta_prime_residue ? json_from_int(*m.delta_prime_residue) : nlohmann::json();
        out << line.dump() << '\n';
    }
    nlohmann::json trailer{{"kind", "trailer"},
                           {"expanded", r.expanded},
                           {"complete", r.report.complete},
                           {"member_count", r.report.member_count},
                           {"depth_reached", r.report.depth_reached},
                           {"max_entry", json_from_int(r.report.max_entry_seen)},
                           {"magnitude_pruned", r.report.magnitude_pruned}};
    nlohmann::json dv = nlohmann::json::array();
    for (const Int& v : r.report.delta_values) dv.push_back(json_from_int(v));
    trailer["delta_values"] = std::move(dv);
    nlohmann::json dpv = nlohmann::json::array();
    for (const Int& v : r.report.delta_prime_values) dpv.push_back(json_from_int(v));
    trailer["delta_prime_values"] = std::move(dpv);
    out << trailer.dump() << '\n';
}

namespace detail {

inline DumpData parse_dump_impl(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next_json = [&](nlohmann::json& j) -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            bool blank = true;
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
            if (blank) continue;
            try {
                j = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw ParseError("dump line " + std::to_string(line_no) + ": " + e.what());
            }
            if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
                throw ParseError("dump line " + std::to_string(line_no) + ": expected an object with 'kind'");
            return true;
        }
        return false;
    };

    nlohmann::json j;
    if (!next_json(j) || j["kind"] != "header")
        throw ParseError("dump must start with a header line");
    if (!j.contains("format") || j["format"] != "mutinv-class-dump")
        throw ParseError("not a mutinv class dump");
    if (!j.contains("version") || j["version"] != kDumpVersion)
        throw ParseError("unsupported dump version");
    Int header_n = int_from_json(j.at("n"), "n");
    if (header_n < 1 || header_n > Int(kMaxParsedDimension))
        throw ParseError("dump dimension out of range");
    const std::size_t n = header_n.convert_to<std::size_t>();

    ExchangeMatrix seed = [&] {
        try {
            return ExchangeMatrix::validate(entries_from_json(j.at("seed"), n));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(std::string("dump seed matrix is invalid: ") + e.what());
        }
    }();
    ExploreOptions budgets;
    if (j.contains("max_depth")) budgets.max_depth = j.at("max_depth").get<std::size_t>();
    if (j.contains("max_nodes")) budgets.max_nodes = j.at("max_nodes").get<std::size_t>();
    if (j.contains("magnitude_limit"))
        budgets.magnitude_limit = int_from_json(j.at("magnitude_limit"), "magnitude_limit");

    DumpData out{std::move(seed), {}, 0, false, false, std::move(budgets)};
    while (next_json(j)) {
        const std::string kind = j["kind"].get<std::string>();
        if (kind == "member") {
            ClassMember m = [&] {
                try {
                    ExchangeMatrix mat = ExchangeMatrix::validate(entries_from_json(j.at("canonical"), n));
                    std::optional<Int> dp;
                    if (j.contains("delta_prime") && !j["delta_prime"].is_null())
                        dp = int_from_json(j["delta_prime"], "delta_prime");
                    return ClassMember{std::move(mat), j.at("depth").get<std::size_t>(),
                                       int_from_json(j.at("delta"), "delta"), std::move(dp)};
                } catch (const ParseError&) {
                    throw;
                } catch (const Error& e) {
                    throw ParseError("dump member at line " + std::to_string(line_no) +
                                     " is invalid: " + e.what());
                }
            }();
            out.members.push_back(std::move(m));
        } else if (kind == "trailer") {
            out.expanded = j.at("expanded").get<std::size_t>();
            out.complete = j.value("complete", false);
            out.has_trailer = true;
            if (next_json(j)) throw ParseError("content after dump trailer");
            break;
        } else {
            throw ParseError("dump line " + std::to_string(line_no) + ": unknown kind '" + kind + "'");
        }
    }
    return out;
}

}  // namespace detail

// Reads a dump back. A missing trailer (interrupted write) is not an error:
// the members are kept and `expanded` falls back to 0, which merely redoes
// work on resume. Structural damage is a ParseError.
inline DumpData parse_dump(std::istream& in) {
    try {
        return detail::parse_dump_impl(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed dump: ") + e.what());
    }
}

}  // namespace mutinv
