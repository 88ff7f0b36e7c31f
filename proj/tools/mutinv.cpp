// Command-line front end. All user-facing indices are 1-based; results go to
// stdout, diagnostics to stderr, and failure paths leave stdout empty.
//
// Exit codes: 0 ok (valid matrix, report, SameClass), 1 ProvablyDifferent,
// 2 semantic or usage error, 3 unreadable input, 4 Unknown verdict,
// 5 internal consistency failure (selftest or cross-check).

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <mutinv/mutinv.hpp>

namespace {

using namespace mutinv;

struct CliConfig {
    std::string input_format = "auto";    // text | json | auto
    std::string output_format = "plain";  // plain | json
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

MatrixFile load_matrix_file(const std::string& path, const CliConfig& cfg) {
    std::string text = slurp(path);
    if (cfg.input_format == "text") return {parse_matrix_text(text), std::nullopt};
    if (cfg.input_format == "json") return parse_matrix_json(text);
    return parse_matrix_auto(text);
}

std::string join_space(const std::vector<Int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += v[i].str();
    }
    return s;
}

nlohmann::json json_int_array(const std::vector<Int>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const Int& x : v) a.push_back(json_from_int(x));
    return a;
}

void print_matrix(std::ostream& out, const ExchangeMatrix& b, const CliConfig& cfg) {
    if (cfg.output_format == "json")
        out << json_of_matrix(b).dump() << '\n';
    else
        out << format_matrix_text(b.matrix());
}

// ---- check ----

int cmd_check(const std::string& path, const CliConfig& cfg, std::ostream& out) {
    MatrixFile f = load_matrix_file(path, cfg);
    ExchangeMatrix b = ExchangeMatrix::validate(f.entries);

    std::optional<Symmetrizer> declared;
    if (f.symmetrizer) {
        Symmetrizer d(*f.symmetrizer);
        if (!d.certifies(b.matrix()))
            throw SymmetrizerMismatchError("declared symmetrizer does not certify the matrix");
        declared = std::move(d);
    }

    std::vector<Int> minimal(b.symmetrizer().values().begin(), b.symmetrizer().values().end());
    if (cfg.output_format == "json") {
        nlohmann::json j{{"valid", true}, {"n", b.n()}, {"symmetrizer", json_int_array(minimal)}};
        if (declared) {
            std::vector<Int> dv(declared->values().begin(), declared->values().end());
            j["declared_symmetrizer"] = json_int_array(dv);
        }
        out << j.dump() << '\n';
    } else {
        out << "valid\n";
        out << "symmetrizer: " << join_space(minimal) << '\n';
        if (declared) {
            std::vector<Int> dv(declared->values().begin(), declared->values().end());
            out << "declared symmetrizer: " << join_space(dv) << " (certifies)\n";
        }
    }
    return 0;
}

// ---- mutate ----

int cmd_mutate(const std::string& path, const std::string& seq_text, const CliConfig& cfg,
               std::ostream& out) {
    ExchangeMatrix b = ExchangeMatrix::validate(load_matrix_file(path, cfg).entries);
    MutationSequence seq = parse_mutation_sequence(seq_text, b.n());
    print_matrix(out, mutate_sequence(b, seq), cfg);
    return 0;
}

// ---- delta ----

int cmd_delta(const std::string& path, bool prime, const CliConfig& cfg, std::ostream& out) {
    MatrixFile f = load_matrix_file(path, cfg);
    ExchangeMatrix b = ExchangeMatrix::validate(f.entries);

    DeltaValue v;
    const char* label;
    if (prime) {
        // an explicitly declared symmetrizer wins over the minimal one
        v = f.symmetrizer ? delta_prime(b, Symmetrizer(*f.symmetrizer)) : delta_prime(b);
        label = "delta'";
    } else {
        v = delta(b);
        label = "delta";
    }

    if (cfg.output_format == "json")
        out << json_of_delta(v).dump() << '\n';
    else
        out << label << " = " << v.residue.str() << " (mod " << v.modulus.str()
            << "), det = " << v.raw_det.str() << '\n';
    return 0;
}

// ---- explore ----

void print_report(std::ostream& out, const ExploreResult& r, const CliConfig& cfg) {
    const MutationClassReport& rep = r.report;
    Int prime_modulus = 4 * r.seed.symmetrizer().product();
    if (cfg.output_format == "json") {
        nlohmann::json j{{"members", rep.member_count},
                         {"expanded", rep.expanded},
                         {"complete", rep.complete},
                         {"depth_reached", rep.depth_reached},
                         {"max_entry", json_from_int(rep.max_entry_seen)},
                         {"magnitude_pruned", rep.magnitude_pruned},
                         {"delta_values", json_int_array(rep.delta_values)},
                         {"delta_modulus", 4}};
        if (rep.delta_prime_values.empty()) {
            j["delta_prime_values"] = nullptr;
        } else {
            j["delta_prime_values"] = json_int_array(rep.delta_prime_values);
            j["delta_prime_modulus"] = json_from_int(prime_modulus);
        }
        out << j.dump() << '\n';
        return;
    }
    out << "members: " << rep.member_count << '\n';
    out << "expanded: " << rep.expanded << '\n';
    out << "complete: " << (rep.complete ? "yes" : "no") << '\n';
    out << "depth reached: " << rep.depth_reached << '\n';
    out << "max entry: " << rep.max_entry_seen.str() << '\n';
    out << "magnitude pruned: " << rep.magnitude_pruned << '\n';
    out << "delta values: " << join_space(rep.delta_values) << " (mod 4)\n";
    if (rep.delta_prime_values.empty())
        out << "delta' values: not tracked (symmetrizer not pairwise coprime)\n";
    else
        out << "delta' values: " << join_space(rep.delta_prime_values) << " (mod "
            << prime_modulus.str() << ")\n";
}

struct ExploreArgs {
    std::string file;
    std::string out_path;
    std::string resume_path;
    std::size_t depth = 6;
    std::size_t nodes = 100000;
    unsigned jobs = 1;
    std::string magnitude;
    bool depth_set = false, nodes_set = false, magnitude_set = false;
};

int cmd_explore(const ExploreArgs& a, const CliConfig& cfg, std::ostream& out) {
    ExploreOptions opts;
    opts.max_depth = a.depth;
    opts.max_nodes = a.nodes;
    opts.jobs = a.jobs;
    if (a.magnitude_set) {
        Int lim = parse_int_token(a.magnitude);
        if (lim < 1) throw Error("magnitude limit must be positive");
        opts.magnitude_limit = lim;
    }

    ExploreResult result = [&] {
        if (!a.resume_path.empty()) {
            std::string text = slurp(a.resume_path);
            std::istringstream in(text);
            DumpData dump = parse_dump(in);
            // flags override the budgets recorded in the dump header
            if (!a.depth_set) opts.max_depth = dump.budgets.max_depth;
            if (!a.nodes_set) opts.max_nodes = dump.budgets.max_nodes;
            if (!a.magnitude_set) opts.magnitude_limit = dump.budgets.magnitude_limit;
            if (!a.file.empty()) {
                ExchangeMatrix given = ExchangeMatrix::validate(load_matrix_file(a.file, cfg).entries);
                if (!(given == dump.seed))
                    throw Error("matrix file disagrees with the seed stored in the dump");
            }
            return explore_resume(dump.seed, std::move(dump.members), dump.expanded, opts);
        }
        if (a.file.empty()) throw Error("a matrix file (or --resume) is required");
        ExchangeMatrix b = ExchangeMatrix::validate(load_matrix_file(a.file, cfg).entries);
        return explore(b, opts);
    }();

    if (!a.out_path.empty()) {
        std::ofstream dump_out(a.out_path, std::ios::binary | std::ios::trunc);
        if (!dump_out) throw Error("cannot write '" + a.out_path + "'");
        write_dump(dump_out, result, opts);
    }
    print_report(out, result, cfg);
    return 0;
}

// ---- distinguish ----

int cmd_distinguish(const std::string& path1, const std::string& path2, std::size_t depth,
                    std::size_t nodes, const CliConfig& cfg, std::ostream& out) {
    ExchangeMatrix b1 = ExchangeMatrix::validate(load_matrix_file(path1, cfg).entries);
    ExchangeMatrix b2 = ExchangeMatrix::validate(load_matrix_file(path2, cfg).entries);
    ExploreOptions budgets;
    budgets.max_depth = depth;
    budgets.max_nodes = nodes;
    Verdict v = distinguish(b1, b2, budgets);

    if (cfg.output_format == "json") {
        nlohmann::json j;
        switch (v.kind) {
            case VerdictKind::SameClass: {
                j["verdict"] = "SameClass";
                nlohmann::json seq = nlohmann::json::array();
                for (std::size_t k : v.witness->sequence) seq.push_back(k + 1);
                nlohmann::json perm = nlohmann::json::array();
                for (std::size_t i = 0; i < v.witness->relabeling.size(); ++i)
                    perm.push_back(v.witness->relabeling(i) + 1);
                j["seq"] = std::move(seq);
                j["perm"] = std::move(perm);
                break;
            }
            case VerdictKind::ProvablyDifferent:
                j["verdict"] = "ProvablyDifferent";
                j["statistic"] = v.statistic;
                j["detail"] = v.detail;
                break;
            case VerdictKind::Unknown:
                j["verdict"] = "Unknown";
                j["detail"] = v.detail;
                break;
        }
        out << j.dump() << '\n';
    } else {
        switch (v.kind) {
            case VerdictKind::SameClass: {
                std::string seq = format_mutation_sequence(v.witness->sequence);
                out << "SameClass: seq=" << (seq.empty() ? "-" : seq)
                    << " perm=" << format_permutation(v.witness->relabeling) << '\n';
                break;
            }
            case VerdictKind::ProvablyDifferent: {
                std::string stat = v.statistic == "delta_prime" ? "delta'" : v.statistic;
                out << "ProvablyDifferent: " << stat << ' ' << v.detail << '\n';
                break;
            }
            case VerdictKind::Unknown:
                out << "Unknown: " << v.detail << '\n';
                break;
        }
    }
    switch (v.kind) {
        case VerdictKind::SameClass: return 0;
        case VerdictKind::ProvablyDifferent: return 1;
        case VerdictKind::Unknown: return 4;
    }
    return 2;
}

// ---- evidence ----

int cmd_evidence(std::size_t n, const std::string& d_text, std::size_t samples,
                 std::int64_t bound, std::uint64_t seed, const CliConfig& cfg, std::ostream& out) {
    std::vector<Int> d_values;
    if (d_text.empty()) {
        d_values.assign(n, Int(1));
    } else {
        std::string norm = d_text;
        for (char& c : norm)
            if (c == ',') c = ' ';
        std::istringstream nin(norm);
        std::string tok;
        while (nin >> tok) d_values.push_back(parse_int_token(tok));
        if (d_values.size() != n)
            throw Error("symmetrizer needs exactly " + std::to_string(n) + " entries");
    }
    Symmetrizer d(d_values);

    std::vector<Int> values = binary_evidence(n, d, samples, bound, seed);
    if (cfg.output_format == "json") {
        nlohmann::json j{{"n", n},
                         {"d", json_int_array(d_values)},
                         {"samples", samples},
                         {"bound", bound},
                         {"seed", seed},
                         {"delta_values", json_int_array(values)},
                         {"modulus", 4}};
        out << j.dump() << '\n';
    } else {
        out << "delta values: " << join_space(values) << " (mod 4)\n";
    }
    return 0;
}

// ---- selftest ----

// The corrupted mutation formula for the negative control: drops the
// [-b_ik]+ b_kj term.
IntMatrix corrupt_mutate(const IntMatrix& b, std::size_t k) {
    const std::size_t n = b.size();
    IntMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == k || j == k) {
                out(i, j) = -b(i, j);
            } else {
                Int v = b(i, j);
                if (b(k, j) > 0) v += b(i, k) * b(k, j);
                out(i, j) = v;
            }
        }
    return out;
}

int cmd_selftest(std::size_t samples, std::uint64_t seed, const std::string& fault,
                 const CliConfig& cfg, std::ostream& out) {
    bool saved_checks = config::oracle_checks();
    config::oracle_checks() = true;

    std::mt19937_64 rng(seed);
    std::size_t checks = 0;
    int rc = 0;

    auto fail = [&](const std::string& what, const ExchangeMatrix& b) {
        std::cerr << "selftest failed: " << what << "\nat matrix:\n" << b.matrix().to_text();
        rc = 5;
    };

    for (std::size_t s = 0; s < samples && rc == 0; ++s) {
        const std::size_t n = 2 + s % 5;
        std::vector<Int> d(n);
        for (Int& v : d) v = 1 + Int(detail::uniform_below(rng, 3));
        ExchangeMatrix b = sample_compatible_matrix(n, Symmetrizer(d), 3, rng);
        const std::size_t k = detail::uniform_below(rng, n);

        // involution; mutate itself cross-checks the factor form and the
        // symmetrizer while oracle checks are on
        ExchangeMatrix m1 = mutate(b, k);
        if (!(mutate(m1, k) == b)) {
            fail("mutation at direction " + std::to_string(k + 1) + " is not an involution", b);
            break;
        }
        ++checks;

        // factor form vs the entrywise route, recomputed here
        MutationFactors fac = build_mutation_factors(b, k);
        IntMatrix target = fault == "mutation" ? corrupt_mutate(b.matrix(), k) : m1.matrix();
        if (!(fac.left * b.matrix() * fac.right == target)) {
            fail("factor form disagrees with the entrywise mutation formula at direction " +
                     std::to_string(k + 1),
                 b);
            break;
        }
        ++checks;

        // determinant fast path vs the symbolic expansion
        DeltaValue dv = delta(b);
        Int fast = dv.raw_det;
        if (fault == "delta") fast += 1;
        if (fast != sym_det_expansion(symmetrize(b))) {
            fail("determinant fast path disagrees with the symbolic expansion", b);
            break;
        }
        ++checks;

        // invariance across one mutation
        if (delta(m1).residue != dv.residue) {
            fail("delta changed under mutation at direction " + std::to_string(k + 1), b);
            break;
        }
        ++checks;
    }

    config::oracle_checks() = saved_checks;
    if (rc != 0) return rc;
    if (cfg.output_format == "json")
        out << nlohmann::json{{"passed", checks}}.dump() << '\n';
    else
        out << "selftest: " << checks << " checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);

    CLI::App app{"exchange matrix mutation toolkit"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::size_t canon_cap = config::canonical_cap();
    bool oracle = config::oracle_checks();
    app.add_option("--input-format", cfg.input_format, "matrix input format")
        ->check(CLI::IsMember({"text", "json", "auto"}))
        ->capture_default_str();
    app.add_option("--output-format", cfg.output_format, "result format")
        ->check(CLI::IsMember({"plain", "json"}))
        ->capture_default_str();
    app.add_option("--canon-cap", canon_cap, "canonical form dimension cap")
        ->envname("MUTINV_CANON_CAP")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_flag("--oracle-checks,!--no-oracle-checks", oracle,
                 "cross-check fast paths against the symbolic oracle");

    std::function<int(std::ostream&)> run;

    // check
    {
        auto* sc = app.add_subcommand("check", "validate a matrix and print its symmetrizer");
        auto file = std::make_shared<std::string>();
        sc->add_option("file", *file, "matrix file")->required();
        sc->callback([&, file] { run = [&, file](std::ostream& o) { return cmd_check(*file, cfg, o); }; });
    }
    // mutate
    {
        auto* sc = app.add_subcommand("mutate", "apply a mutation sequence");
        auto file = std::make_shared<std::string>();
        auto seq = std::make_shared<std::string>();
        sc->add_option("file", *file, "matrix file")->required();
        sc->add_option("sequence", *seq, "comma-separated 1-based directions")->required();
        sc->callback([&, file, seq] {
            run = [&, file, seq](std::ostream& o) { return cmd_mutate(*file, *seq, cfg, o); };
        });
    }
    // delta
    {
        auto* sc = app.add_subcommand("delta", "print the determinant residue");
        auto file = std::make_shared<std::string>();
        auto prime = std::make_shared<bool>(false);
        sc->add_option("file", *file, "matrix file")->required();
        sc->add_flag("--prime", *prime, "use the alternative symmetrization");
        sc->callback([&, file, prime] {
            run = [&, file, prime](std::ostream& o) { return cmd_delta(*file, *prime, cfg, o); };
        });
    }
    // explore
    {
        auto* sc = app.add_subcommand("explore", "enumerate a mutation class within budgets");
        auto a = std::make_shared<ExploreArgs>();
        sc->add_option("file", a->file, "matrix file");
        auto* od = sc->add_option("--depth", a->depth, "maximum mutation depth")
                       ->check(CLI::PositiveNumber)
                       ->capture_default_str();
        auto* on = sc->add_option("--nodes", a->nodes, "maximum stored canonical forms")
                       ->check(CLI::PositiveNumber)
                       ->capture_default_str();
        sc->add_option("--jobs", a->jobs, "worker threads for frontier expansion")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        auto* om = sc->add_option("--magnitude-limit", a->magnitude,
                                  "abort branches whose entries exceed this");
        sc->add_option("--out", a->out_path, "write the class dump here");
        sc->add_option("--resume", a->resume_path, "continue from a class dump");
        sc->callback([&, a, od, on, om] {
            a->depth_set = od->count() > 0;
            a->nodes_set = on->count() > 0;
            a->magnitude_set = om->count() > 0;
            run = [&, a](std::ostream& o) { return cmd_explore(*a, cfg, o); };
        });
    }
    // distinguish
    {
        auto* sc = app.add_subcommand("distinguish", "decide whether two matrices share a class");
        auto f1 = std::make_shared<std::string>();
        auto f2 = std::make_shared<std::string>();
        auto depth = std::make_shared<std::size_t>(6);
        auto nodes = std::make_shared<std::size_t>(100000);
        sc->add_option("file1", *f1, "first matrix file")->required();
        sc->add_option("file2", *f2, "second matrix file")->required();
        sc->add_option("--depth", *depth, "maximum depth per side")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sc->add_option("--nodes", *nodes, "combined node budget")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sc->callback([&, f1, f2, depth, nodes] {
            run = [&, f1, f2, depth, nodes](std::ostream& o) {
                return cmd_distinguish(*f1, *f2, *depth, *nodes, cfg, o);
            };
        });
    }
    // evidence
    {
        auto* sc = app.add_subcommand("evidence", "sample random matrices and collect delta values");
        auto n = std::make_shared<std::size_t>();
        auto d = std::make_shared<std::string>();
        auto samples = std::make_shared<std::size_t>(100);
        auto bound = std::make_shared<std::int64_t>(5);
        auto seed = std::make_shared<std::uint64_t>(1);
        sc->add_option("--n", *n, "matrix dimension")->required()->check(CLI::PositiveNumber);
        sc->add_option("--d", *d, "comma-separated symmetrizer (default all ones)");
        sc->add_option("--samples", *samples, "sample count")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sc->add_option("--bound", *bound, "entry bound for the skew-symmetric part")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sc->add_option("--seed", *seed, "rng seed")->capture_default_str();
        sc->callback([&, n, d, samples, bound, seed] {
            run = [&, n, d, samples, bound, seed](std::ostream& o) {
                return cmd_evidence(*n, *d, *samples, *bound, *seed, cfg, o);
            };
        });
    }
    // selftest
    {
        auto* sc = app.add_subcommand("selftest", "run the embedded cross-check suites");
        auto samples = std::make_shared<std::size_t>(200);
        auto seed = std::make_shared<std::uint64_t>(20240901);
        auto fault = std::make_shared<std::string>();
        sc->add_option("--samples", *samples, "randomized cases to run")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sc->add_option("--seed", *seed, "rng seed")->capture_default_str();
        sc->add_option("--inject-fault", *fault, "negative control: corrupt one formula")
            ->check(CLI::IsMember({"mutation", "delta"}));
        sc->callback([&, samples, seed, fault] {
            run = [&, samples, seed, fault](std::ostream& o) {
                return cmd_selftest(*samples, *seed, *fault, cfg, o);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);  // prints the message to stderr
        return 2;
    }

    config::canonical_cap() = canon_cap;
    config::oracle_checks() = oracle;

    try {
        std::ostringstream buf;
        int code = run(buf);
        std::cout << buf.str() << std::flush;
        return code;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const InternalDisagreementError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 5;
    } catch (const InvariantViolationError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 5;
    } catch (const NotPerfectSquareError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 5;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
