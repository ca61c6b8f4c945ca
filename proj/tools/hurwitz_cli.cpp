// Command-line front end: verification runs, censuses, certificates,
// counting cross-checks and move-catalog validation.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "hurwitz/catalog.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/frobenius.hpp"
#include "hurwitz/moves.hpp"
#include "hurwitz/normalize.hpp"
#include "hurwitz/orbit.hpp"
#include "hurwitz/validation.hpp"

namespace {

using namespace hurwitz;

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kInconclusive = 3 };

/// "3", "2..4" or "2,4,6".
std::vector<int> parse_range(const std::string& text, const char* flag) {
    std::vector<int> out;
    try {
        if (const auto dots = text.find(".."); dots != std::string::npos) {
            const int lo = std::stoi(text.substr(0, dots));
            const int hi = std::stoi(text.substr(dots + 2));
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            std::stringstream ss(text);
            for (std::string part; std::getline(ss, part, ',');) out.push_back(std::stoi(part));
        }
    } catch (const std::exception&) {
        throw UsageError(std::string("bad range for ") + flag + ": '" + text + "'");
    }
    if (out.empty()) throw UsageError(std::string("empty range for ") + flag);
    for (int v : out) {
        if (v < 0) throw UsageError(std::string("negative value in ") + flag);
    }
    return out;
}

struct Config {
    std::string d = "2", h = "1", w = "4";
    std::string moves = "full";
    std::string filter = "full-monodromy";
    std::string mode = "fast";
    std::string method = "auto";
    std::size_t budget = 2'000'000;
    std::uint64_t seed = 1;
    int threads = 1;
    int samples = 200;
    std::string out;
    std::string csv;
    std::string log;
};

/// Output sink: --out file or stdout.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw UsageError("cannot open output file " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// First non-empty, non-comment line of a system file.
HurwitzSystem read_system_file(const std::string& path) {
    std::stringstream ss(read_file(path));
    for (std::string line; std::getline(ss, line);) {
        if (line.empty() || line[0] == '#') continue;
        return HurwitzSystem::parse(line);
    }
    throw UsageError(path + " holds no system line");
}

void require_valid(const HurwitzSystem& sys, const std::string& what) {
    if (const auto r = validate(sys); !r.ok) throw UsageError(what + " is not a valid system: " + r.first_violation);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyRow {
    int d, h, w;
    std::string method, result, detail;
    std::size_t orbits = 0, systems = 0;
    double seconds = 0;
};

VerifyRow verify_case(int d, int h, int w, const Config& cfg) {
    VerifyRow row{d, h, w, "", "", ""};
    if (w % 2 != 0 || w < 2 * d) {
        row.method = "-";
        row.result = "REJECT";
        row.detail = w % 2 ? "w is odd" : "w < 2d";
        return row;
    }
    std::string method = cfg.method;
    if (method == "auto") {
        const bool fits = d <= 6 && estimated_system_count(d, h, w) <= static_cast<double>(cfg.budget);
        method = fits ? "census" : "sample";
    }
    row.method = method;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (method == "census") {
            CensusParams p{d, h, w, MoveSetKind::Full, "full-monodromy", "fast", cfg.seed, cfg.budget};
            const auto c = census(p, FilterSpec::parse("full-monodromy", d).predicate, cfg.threads);
            row.orbits = c.orbits.size();
            row.systems = c.total;
            row.result = c.orbits.size() == 1 ? "PASS" : "FAIL";
            row.detail = std::to_string(c.orbits.size()) + " full-monodromy orbit(s)";
        } else if (method == "sample") {
            if (d > 6 && h > 0) {
                row.result = "SKIP";
                row.detail = "sampling needs the S_d commutator table (d <= 6)";
                return row;
            }
            std::mt19937_64 rng(cfg.seed);
            const NormalizeOptions opts{parse_mode(cfg.mode), kDefaultSearchBudget};
            std::string first;
            std::size_t agree = 0;
            for (int s = 0; s < cfg.samples; ++s) {
                const HurwitzSystem sys = sample_system(d, h, w, rng, true);
                const auto res = canonicalize(sys, opts);
                if (replay(sys, res.word) != res.system) throw OrbitMismatch("certificate does not replay");
                const std::string line = res.system.to_line();
                if (first.empty()) first = line;
                if (line == first) ++agree;
            }
            row.systems = static_cast<std::size_t>(cfg.samples);
            row.orbits = agree == row.systems ? 1 : 2;
            row.result = agree == row.systems ? "PASS" : "FAIL";
            row.detail = std::to_string(agree) + "/" + std::to_string(cfg.samples) + " samples reach one canonical form";
        } else {
            throw UsageError("unknown method '" + method + "'");
        }
    } catch (const BudgetExceeded& e) {
        row.result = "SKIP";
        row.detail = std::string("infeasible: ") + e.what();
    } catch (const OrbitMismatch& e) {
        row.result = "FAIL";
        row.detail = e.what();
    }
    row.seconds = seconds_since(t0);
    return row;
}

int cmd_verify(const Config& cfg) {
    std::vector<VerifyRow> rows;
    for (int d : parse_range(cfg.d, "--d")) {
        for (int h : parse_range(cfg.h, "--h")) {
            for (int w : parse_range(cfg.w, "--w")) rows.push_back(verify_case(d, h, w, cfg));
        }
    }
    Sink sink(cfg.out);
    auto& os = sink.os();
    os << "catalog frame " << fnv1a_hex(format_push_frame(shipped_push_frame())) << "  seed " << cfg.seed << "  budget "
       << cfg.budget << "\n";
    char buf[256];
    std::snprintf(buf, sizeof buf, "%3s %3s %3s  %-7s %-6s %8s %10s %9s  %s\n", "d", "h", "w", "method", "result",
                  "orbits", "systems", "seconds", "detail");
    os << buf;
    bool failed = false, rejected_all = true, inconclusive = false;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%3d %3d %3d  %-7s %-6s %8zu %10zu %9s  %s\n", r.d, r.h, r.w, r.method.c_str(),
                      r.result.c_str(), r.orbits, r.systems, fixed(r.seconds, 2).c_str(), r.detail.c_str());
        os << buf;
        failed = failed || r.result == "FAIL";
        rejected_all = rejected_all && r.result == "REJECT";
        inconclusive = inconclusive || r.result == "SKIP";
    }
    if (!cfg.csv.empty()) {
        std::ofstream csv(cfg.csv);
        if (!csv) throw UsageError("cannot open " + cfg.csv);
        csv << "d,h,w,method,result,orbits,systems,detail\n";
        for (const auto& r : rows) {
            csv << r.d << ',' << r.h << ',' << r.w << ',' << r.method << ',' << r.result << ',' << r.orbits << ','
                << r.systems << ",\"" << r.detail << "\"\n";
        }
    }
    if (failed) return kFail;
    if (rejected_all) {
        std::cerr << "error: every requested case violates w >= 2d with w even\n";
        return kUsage;
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// census / explore

int run_census(const Config& cfg, bool explore) {
    const auto ds = parse_range(cfg.d, "--d");
    const auto hs = parse_range(cfg.h, "--h");
    const auto ws = parse_range(cfg.w, "--w");
    Sink sink(cfg.out);
    auto& os = sink.os();
    std::vector<Orbit> logs;
    for (int d : ds) {
        for (int h : hs) {
            for (int w : ws) {
                if (w % 2 != 0) throw UsageError("w must be even");
                const FilterSpec filter = FilterSpec::parse(cfg.filter, d);
                CensusParams p{d, h, w, parse_move_set(cfg.moves), filter.name, cfg.mode, cfg.seed, cfg.budget};
                auto c = census(p, filter.predicate, cfg.threads, !cfg.log.empty());
                if (explore) {
                    os << "d=" << d << " h=" << h << " w=" << w << " moves=" << cfg.moves << " filter=" << filter.name
                       << ": " << c.total << " systems, " << c.orbits.size() << " orbit(s)\n";
                    for (const auto& r : c.orbits) {
                        os << "  size " << r.size << "  full=" << (r.full_monodromy ? "yes" : "no") << "  genus "
                           << r.genus << "  blocks " << r.blocks << "  rep " << r.rep << "\n";
                    }
                } else {
                    os << c.to_jsonl();
                }
                for (auto& l : c.logs) logs.push_back(std::move(l));
            }
        }
    }
    if (!cfg.log.empty()) {
        if (ds.size() * hs.size() * ws.size() != 1) throw UsageError("--log needs a single (d, h, w)");
        std::ofstream log(cfg.log, std::ios::binary);
        if (!log) throw UsageError("cannot open " + cfg.log);
        write_predecessor_log(log, logs);
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// connect / replay

int cmd_connect(const Config& cfg, const std::string& src_path, const std::string& dst_path) {
    const HurwitzSystem src = read_system_file(src_path);
    const HurwitzSystem dst = read_system_file(dst_path);
    require_valid(src, "source");
    require_valid(dst, "target");
    if (src.degree() != dst.degree() || src.h() != dst.h() || src.w() != dst.w()) {
        throw UsageError("source and target have different (d, h, w)");
    }
    const MoveSetKind kind = parse_move_set(cfg.moves);
    const ConnectResult res = connect(src, dst, kind, cfg.budget);
    if (res.status == ConnectResult::Status::Inconclusive) {
        std::cerr << "inconclusive: budget of " << cfg.budget << " states exhausted\n";
        return kInconclusive;
    }
    if (res.status == ConnectResult::Status::Disconnected) {
        const Orbit a = orbit_bfs(src, kind, {cfg.budget, cfg.threads});
        const Orbit b = orbit_bfs(dst, kind, {cfg.budget, cfg.threads});
        std::cout << "disconnected\n  source orbit size " << a.size() << (a.exhaustive ? "" : "+") << "\n  target orbit size "
                  << b.size() << (b.exhaustive ? "" : "+") << "\n";
        return kFail;
    }
    Sink sink(cfg.out);
    sink.os() << "source: " << src.to_line() << "\n"
              << "target: " << dst.to_line() << "\n"
              << "moves: " << catalog_for(src.h(), src.w()).hash() << "\n"
              << "word: " << res.word.to_string() << "\n";
    return kOk;
}

struct Certificate {
    HurwitzSystem source, target;
    MoveWord word;
};

Certificate parse_certificate(const std::string& text) {
    Certificate c;
    bool have_src = false, have_dst = false;
    std::stringstream ss(text);
    for (std::string line; std::getline(ss, line);) {
        if (line.rfind("source: ", 0) == 0) {
            c.source = HurwitzSystem::parse(line.substr(8));
            have_src = true;
        } else if (line.rfind("target: ", 0) == 0) {
            c.target = HurwitzSystem::parse(line.substr(8));
            have_dst = true;
        } else if (line.rfind("word:", 0) == 0) {
            c.word = MoveWord::parse(line.substr(5));
        }
    }
    if (!have_src || !have_dst) throw UsageError("certificate needs source: and target: lines");
    return c;
}

int cmd_replay(const Config& cfg, const std::string& cert_path, int orbit_no) {
    if (!cfg.log.empty()) {
        std::ifstream in(cfg.log, std::ios::binary);
        if (!in) throw UsageError("cannot read " + cfg.log);
        const auto orbits = read_predecessor_log(in);
        std::size_t checked = 0;
        for (std::size_t o = 0; o < orbits.size(); ++o) {
            if (orbit_no >= 0 && static_cast<std::size_t>(orbit_no) != o) continue;
            const auto& orb = orbits[o];
            const HurwitzSystem seed = orb.system(0);
            for (std::size_t n = 0; n < orb.size(); ++n) {
                if (replay(seed, orb.path_to(n)) != orb.system(n)) {
                    std::cout << "FAIL orbit " << o << " node " << n << "\n";
                    return kFail;
                }
                ++checked;
            }
        }
        std::cout << "PASS " << checked << " logged paths replayed\n";
        return kOk;
    }
    if (cert_path.empty()) throw UsageError("replay needs a certificate file or --log");
    const Certificate c = parse_certificate(read_file(cert_path));
    const HurwitzSystem end = replay(c.source, c.word);
    if (end != c.target) {
        std::cout << "FAIL replay ends at " << end.to_line() << "\n";
        return kFail;
    }
    std::cout << "PASS " << c.word.size() << " moves replayed\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// count / canonicalize / validate-moves / catalog / search-pushes / orbit

int cmd_count(const Config& cfg) {
    bool mismatch = false;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%3s %3s %3s %24s %24s  %s\n", "d", "h", "w", "frobenius", "enumeration", "status");
    std::cout << buf;
    for (int d : parse_range(cfg.d, "--d")) {
        for (int h : parse_range(cfg.h, "--h")) {
            for (int w : parse_range(cfg.w, "--w")) {
                const BigInt f = frobenius_count(d, h, w);
                std::string enumerated = "-";
                std::string status = "frobenius only";
                try {
                    const SystemEnumerator en(d, h, w, static_cast<double>(cfg.budget));
                    const auto n = en.count();
                    enumerated = std::to_string(n);
                    status = BigInt(n) == f ? "match" : "MISMATCH";
                    mismatch = mismatch || BigInt(n) != f;
                } catch (const BudgetExceeded&) {
                    status = "enumeration over budget";
                }
                std::snprintf(buf, sizeof buf, "%3d %3d %3d %24s %24s  %s\n", d, h, w, f.str().c_str(),
                              enumerated.c_str(), status.c_str());
                std::cout << buf;
            }
        }
    }
    return mismatch ? kFail : kOk;
}

int cmd_canonicalize(const Config& cfg, const std::string& path, const std::string& line) {
    const HurwitzSystem sys = !line.empty() ? HurwitzSystem::parse(line) : read_system_file(path);
    require_valid(sys, "input");
    const auto res = canonicalize(sys, {parse_mode(cfg.mode), cfg.budget});
    Sink sink(cfg.out);
    sink.os() << "source: " << sys.to_line() << "\n"
              << "target: " << res.system.to_line() << "\n"
              << "moves: " << catalog_for(sys.h(), sys.w()).hash() << "\n"
              << "word: " << res.word.to_string() << "\n";
    return kOk;
}

int cmd_validate_moves(const Config& cfg, const std::string& catalog_path) {
    std::vector<MoveCatalog> catalogs;
    if (!catalog_path.empty()) {
        catalogs.push_back(MoveCatalog::parse(read_file(catalog_path)));
    } else {
        for (int h : parse_range(cfg.h, "--h")) {
            for (int w : parse_range(cfg.w, "--w")) catalogs.push_back(MoveCatalog::build(h, w));
        }
    }
    const int degree = parse_range(cfg.d, "--d").front();
    bool ok = true;
    for (const auto& cat : catalogs) {
        std::cout << "catalog h=" << cat.handles() << " w=" << cat.punctures() << " hash " << cat.hash() << "\n";
        const CatalogReport rep = validate_catalog(cat, degree, cfg.samples, cfg.seed);
        for (const auto& c : rep.checks) std::cout << (c.ok ? "  PASS " : "  FAIL ") << c.name << ": " << c.detail << "\n";
        ok = ok && rep.ok();
    }
    return ok ? kOk : kFail;
}

int cmd_orbit(const Config& cfg, const std::string& path) {
    const HurwitzSystem sys = read_system_file(path);
    require_valid(sys, "seed");
    const Orbit orb = orbit_bfs(sys, parse_move_set(cfg.moves), {cfg.budget, cfg.threads});
    std::cout << "orbit size " << orb.size() << (orb.exhaustive ? "" : " (budget hit, partial)") << "\n";
    if (!cfg.log.empty()) {
        std::ofstream log(cfg.log, std::ios::binary);
        write_predecessor_log(log, {orb});
    }
    return orb.exhaustive ? kOk : kInconclusive;
}

void add_common(CLI::App* sub, Config& cfg, bool ranges = true) {
    if (ranges) {
        sub->add_option("--d", cfg.d, "degree or range, e.g. 3 or 2..4");
        sub->add_option("--h", cfg.h, "base genus or range");
        sub->add_option("--w", cfg.w, "branch point count or range");
    }
    sub->add_option("--moves", cfg.moves, "move set: braid | full");
    sub->add_option("--filter", cfg.filter, "all | full-monodromy | transitive | intransitive | group=<p>;<p>...");
    sub->add_option("--mode", cfg.mode, "fast | validate");
    sub->add_option("--budget", cfg.budget, "state budget")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--threads", cfg.threads, "worker threads for orbit searches")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hurwitz systems: move orbits, certificates and counts for simply branched covers"};
    // --h is the base genus, so help is long-form only.
    app.set_help_flag("--help", "print help and exit");
    app.set_config("--config", "", "TOML/INI config file; command-line flags take precedence");
    app.require_subcommand(1);

    Config cfg;
    std::string src, dst, cert, catalog_path, system_line;
    int orbit_no = -1;

    auto* verify = app.add_subcommand("verify", "check one-orbit connectivity for w >= 2d");
    add_common(verify, cfg);
    verify->add_option("--method", cfg.method, "auto | census | sample");
    verify->add_option("--samples", cfg.samples, "random systems per sampled case");
    verify->add_option("--csv", cfg.csv, "write the verification matrix as CSV");

    auto* explore = app.add_subcommand("explore", "census report without a pass/fail judgment");
    add_common(explore, cfg);

    auto* census_cmd = app.add_subcommand("census", "orbit census as JSONL");
    add_common(census_cmd, cfg);
    census_cmd->add_option("--log", cfg.log, "write a binary predecessor log");

    auto* connect_cmd = app.add_subcommand("connect", "find a move word between two systems");
    add_common(connect_cmd, cfg, false);
    connect_cmd->add_option("source", src, "file with the source system line")->required();
    connect_cmd->add_option("target", dst, "file with the target system line")->required();

    auto* replay_cmd = app.add_subcommand("replay", "re-verify a certificate or a predecessor log");
    replay_cmd->add_option("certificate", cert, "certificate file");
    replay_cmd->add_option("--log", cfg.log, "predecessor log to replay");
    replay_cmd->add_option("--orbit", orbit_no, "only this orbit of the log");

    auto* count_cmd = app.add_subcommand("count", "Frobenius count vs enumeration");
    add_common(count_cmd, cfg);

    auto* validate_cmd = app.add_subcommand("validate-moves", "soundness suite for the move catalog");
    add_common(validate_cmd, cfg);
    validate_cmd->add_option("--catalog", catalog_path, "catalog file to check instead of the built-in one");
    validate_cmd->add_option("--samples", cfg.samples, "random systems per catalog");

    auto* canon_cmd = app.add_subcommand("canonicalize", "normalize a system and emit the certificate");
    add_common(canon_cmd, cfg, false);
    canon_cmd->add_option("input", src, "file with the system line");
    canon_cmd->add_option("--system", system_line, "system line given inline");

    auto* catalog_cmd = app.add_subcommand("catalog", "print the instantiated move catalog");
    add_common(catalog_cmd, cfg);

    auto* search_cmd = app.add_subcommand("search-pushes", "rerun the point-push search and print the frame file");
    int max_len = 6;
    search_cmd->add_option("--max-len", max_len, "conjugator length bound");
    search_cmd->add_option("--out", cfg.out, "output file");

    auto* orbit_cmd = app.add_subcommand("orbit", "BFS orbit of one system");
    add_common(orbit_cmd, cfg, false);
    orbit_cmd->add_option("system", src, "file with the seed system line")->required();
    orbit_cmd->add_option("--log", cfg.log, "write a binary predecessor log");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*verify) return cmd_verify(cfg);
        if (*explore) return run_census(cfg, true);
        if (*census_cmd) return run_census(cfg, false);
        if (*connect_cmd) return cmd_connect(cfg, src, dst);
        if (*replay_cmd) return cmd_replay(cfg, cert, orbit_no);
        if (*count_cmd) return cmd_count(cfg);
        if (*validate_cmd) return cmd_validate_moves(cfg, catalog_path);
        if (*canon_cmd) {
            if (src.empty() && system_line.empty()) throw UsageError("canonicalize needs an input file or --system");
            return cmd_canonicalize(cfg, src, system_line);
        }
        if (*catalog_cmd) {
            Sink sink(cfg.out);
            for (int h : parse_range(cfg.h, "--h")) {
                for (int w : parse_range(cfg.w, "--w")) {
                    const MoveCatalog cat = MoveCatalog::build(h, w);
                    sink.os() << cat.to_text() << "# hash " << cat.hash() << "\n";
                }
            }
            return kOk;
        }
        if (*search_cmd) {
            Sink sink(cfg.out);
            sink.os() << format_push_frame(search_push_frame(max_len));
            return kOk;
        }
        if (*orbit_cmd) return cmd_orbit(cfg, src);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kUsage;
    } catch (const Unsupported& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kInconclusive;
    } catch (const OrbitMismatch& e) {
        std::cerr << "FAIL: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
