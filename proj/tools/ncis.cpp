// Command-line front end: Hilbert series, the alternating system, invariant
// suites, perp bases and the result cache.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ncis/altsys.hpp"
#include "ncis/commutative.hpp"
#include "ncis/errors.hpp"
#include "ncis/perp.hpp"
#include "ncis/verify.hpp"

#ifndef NCIS_DATA_DIR
#define NCIS_DATA_DIR "data"
#endif

namespace {

using ncis::u64;
using Json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kMismatch = 2, kResource = 3, kBadConfig = 4 };

struct Options {
    std::string system = "ncsym";
    int n = 3;
    int max_deg = -1;
    int deg = -1;
    std::string mode;
    u64 prime = 0;
    u64 seed = 1;
    unsigned threads = 1;
    std::string cache_dir;
    std::string format = "json";
    bool check = false;
    bool oracle = false;
    u64 trials = 1000;
    std::string expected_file = std::string(NCIS_DATA_DIR) + "/expected_values.json";
    std::string suite;
};

ncis::PerpConfig make_config(const Options& o, ncis::Mode fallback) {
    ncis::PerpConfig c;
    c.mode = o.mode.empty() ? fallback : ncis::parse_mode(o.mode);
    if (o.prime != 0) c.prime = o.prime;
    c.seed = o.seed;
    c.threads = std::max(1u, o.threads);
    c.cache_dir = o.cache_dir;
    return c;
}

Json prime_json(const std::optional<u64>& p) { return p ? Json(*p) : Json(nullptr); }

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json load_expected(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ncis::InvalidArgument("cannot open expected-values file " + path);
    return Json::parse(in);
}

std::optional<Json> find_entry(const Json& list, const std::string& system, int n) {
    if (!list.is_array()) return std::nullopt;
    for (const auto& e : list)
        if (e.at("system") == system && e.at("n") == n) return e;
    return std::nullopt;
}

// Compares against the published table; totals are compared once the series
// has reached a vanishing degree.
Json check_series(const ncis::HilbertSeries& hs, const std::string& system, const std::string& path) {
    const Json data = load_expected(path);
    const auto coeffs = hs.coefficients();
    Json out;
    Json mismatches = Json::array();
    bool any_table = false;
    if (auto table = find_entry(data.value("tables", Json::array()), system, hs.n)) {
        any_table = true;
        out["source"] = (*table)["source"];
        const auto expected = (*table)["coefficients"].get<std::vector<u64>>();
        const bool complete = table->value("complete", false);
        out["expected"] = expected;
        for (std::size_t d = 0; d < coeffs.size(); ++d) {
            std::optional<u64> want;
            if (d < expected.size()) {
                want = expected[d];
            } else if (complete) {
                want = 0;
            }
            if (want && *want != coeffs[d]) mismatches.push_back({{"d", d}, {"expected", *want}, {"computed", coeffs[d]}});
        }
    }
    const bool vanished = !coeffs.empty() && coeffs.back() == 0;
    if (auto total = find_entry(data.value("totals", Json::array()), system, hs.n); total && vanished) {
        any_table = true;
        const u64 want = (*total)["total"].get<u64>();
        out["expected_total"] = want;
        out["total_source"] = (*total)["source"];
        if (want != hs.total()) mismatches.push_back({{"total", true}, {"expected", want}, {"computed", hs.total()}});
    }
    out["status"] = !any_table ? "no_table" : (mismatches.empty() ? "match" : "mismatch");
    if (!mismatches.empty()) out["mismatches"] = mismatches;
    return out;
}

int cmd_hilbert(const Options& o) {
    if (o.max_deg < 0) throw ncis::InvalidArgument("--max-deg is required");
    const auto system = ncis::parse_system(o.system);
    const auto config = make_config(o, ncis::Mode::ModpCertified);
    const auto hs = ncis::hilbert_series(system, o.n, o.max_deg, config);
    const std::string name = ncis::to_string(system);
    std::optional<u64> prime;
    if (config.mode != ncis::Mode::Exact) prime = config.resolved_prime();

    Json check;
    if (o.check) check = check_series(hs, name, o.expected_file);
    const bool mismatch = o.check && check["status"] == "mismatch";

    if (o.format == "csv") {
        std::cout << "system,n,d,dim,mode,prime\n";
        for (const auto& d : hs.degrees) {
            std::cout << name << ',' << o.n << ',' << d.d << ',' << d.perp_dim << ',' << ncis::to_string(d.rank.mode)
                      << ',' << (d.rank.prime ? std::to_string(*d.rank.prime) : "") << "\n";
        }
    } else if (o.format == "text") {
        std::cout << name << " n=" << o.n << " mode=" << ncis::to_string(config.mode);
        if (prime) std::cout << " prime=" << *prime;
        std::cout << "\n";
        for (const auto& d : hs.degrees)
            std::cout << "  d=" << d.d << " dim=" << d.perp_dim << " cols=" << d.n_cols << " ("
                      << ncis::to_string(d.rank.mode) << ")\n";
        std::cout << "coefficients:";
        for (u64 c : hs.coefficients()) std::cout << ' ' << c;
        std::cout << "\ntotal: " << hs.total() << "\n";
        if (o.check) std::cout << "check: " << check["status"].get<std::string>() << "\n";
    } else {
        Json j;
        j["system"] = name;
        j["n"] = o.n;
        j["max_deg"] = o.max_deg;
        j["mode"] = ncis::to_string(config.mode);
        j["prime"] = prime_json(prime);
        j["seed"] = o.seed;
        j["coefficients"] = hs.coefficients();
        j["total"] = hs.total();
        Json degrees = Json::array();
        for (const auto& d : hs.degrees) {
            degrees.push_back({{"d", d.d},
                               {"n_cols", d.n_cols},
                               {"rank", d.rank.rank},
                               {"perp_dim", d.perp_dim},
                               {"mode", ncis::to_string(d.rank.mode)},
                               {"n_rows_consumed", d.rank.n_rows_consumed}});
        }
        j["degrees"] = degrees;
        if (o.check) j["check"] = check;
        emit(j);
    }
    return mismatch ? kMismatch : kOk;
}

int cmd_alt(const Options& o) {
    std::vector<int> degrees;
    if (o.deg >= 0) {
        degrees.push_back(o.deg);
    } else if (o.max_deg >= 0) {
        for (int d = 0; d <= o.max_deg; ++d) degrees.push_back(d);
    } else {
        throw ncis::InvalidArgument("--deg or --max-deg is required");
    }
    const auto config = make_config(o, ncis::Mode::ModpCertified);
    std::optional<u64> prime;
    if (config.mode != ncis::Mode::Exact) prime = config.resolved_prime();
    bool disagree = false;
    Json records = Json::array();
    for (int d : degrees) {
        const auto sol = ncis::solve_alt(o.n, d, config);
        Json r;
        r["n"] = o.n;
        r["d"] = d;
        r["alt_dim"] = sol.alt_dim;
        r["solution_dim"] = sol.solution_dim;
        r["n_equations"] = sol.n_equations;
        r["rank"] = sol.rank.rank;
        r["mode"] = ncis::to_string(sol.rank.mode);
        r["prime"] = prime_json(sol.rank.prime);
        if (o.oracle) {
            const u64 oracle = ncis::alt_oracle_dimension(o.n, d, config);
            r["oracle_dim"] = oracle;
            r["oracle_agree"] = oracle == sol.solution_dim;
            disagree = disagree || oracle != sol.solution_dim;
        }
        records.push_back(r);
    }
    if (o.format == "csv") {
        std::cout << "n,d,alt_dim,solution_dim,mode,prime" << (o.oracle ? ",oracle_dim" : "") << "\n";
        for (const auto& r : records) {
            std::cout << r["n"] << ',' << r["d"] << ',' << r["alt_dim"] << ',' << r["solution_dim"] << ','
                      << r["mode"].get<std::string>() << ',' << (r["prime"].is_null() ? "" : r["prime"].dump());
            if (o.oracle) std::cout << ',' << r["oracle_dim"];
            std::cout << "\n";
        }
    } else if (o.format == "text") {
        for (const auto& r : records) {
            std::cout << "n=" << r["n"] << " d=" << r["d"] << " alt_dim=" << r["alt_dim"]
                      << " solution_dim=" << r["solution_dim"] << " equations=" << r["n_equations"];
            if (o.oracle) std::cout << " oracle=" << r["oracle_dim"] << (r["oracle_agree"].get<bool>() ? " agree" : " DISAGREE");
            std::cout << "\n";
        }
    } else {
        emit(o.deg >= 0 ? records[0] : records);
    }
    return disagree ? kMismatch : kOk;
}

int cmd_verify(const Options& o) {
    ncis::VerifyOptions v;
    v.n = o.n;
    v.max_deg = o.max_deg < 0 ? 4 : o.max_deg;
    v.trials = o.trials;
    v.seed = o.seed;
    v.config = make_config(o, ncis::Mode::ModpCertified);
    std::vector<std::string> suites;
    if (o.suite == "all") {
        suites = ncis::suite_names();
    } else {
        suites.push_back(o.suite);
    }
    bool pass = true;
    Json reports = Json::array();
    for (const auto& s : suites) {
        const auto r = ncis::run_suite(s, v);
        pass = pass && r.pass;
        reports.push_back({{"suite", r.suite},
                           {"pass", r.pass},
                           {"cases", r.cases},
                           {"failure_count", r.failure_count},
                           {"failures", r.failures}});
    }
    if (o.format == "json") {
        Json j;
        j["n"] = v.n;
        j["max_deg"] = v.max_deg;
        j["trials"] = v.trials;
        j["seed"] = v.seed;
        j["pass"] = pass;
        j["reports"] = reports;
        emit(j);
    } else if (o.format == "csv") {
        std::cout << "suite,pass,cases,failures\n";
        for (const auto& r : reports)
            std::cout << r["suite"].get<std::string>() << ',' << (r["pass"].get<bool>() ? 1 : 0) << ','
                      << r["cases"] << ',' << r["failure_count"] << "\n";
    } else {
        for (const auto& r : reports) {
            std::cout << r["suite"].get<std::string>() << ": " << (r["pass"].get<bool>() ? "pass" : "FAIL") << " ("
                      << r["cases"] << " cases)\n";
            for (const auto& f : r["failures"]) std::cout << "  " << f.get<std::string>() << "\n";
        }
    }
    return pass ? kOk : kMismatch;
}

int cmd_basis(const Options& o) {
    if (o.deg < 0) throw ncis::InvalidArgument("--deg is required");
    const auto system = ncis::parse_system(o.system);
    const auto config = make_config(o, ncis::Mode::Exact);
    std::vector<std::string> polys;
    if (ncis::is_free(system)) {
        for (const auto& p : ncis::perp_basis_free(system, o.n, o.deg, config)) polys.push_back(p.to_string());
    } else {
        for (const auto& p : ncis::perp_basis_comm(system, o.n, o.deg, config)) polys.push_back(p.to_string());
    }
    if (o.format == "json") {
        Json j;
        j["system"] = ncis::to_string(system);
        j["n"] = o.n;
        j["d"] = o.deg;
        j["mode"] = ncis::to_string(config.mode);
        j["dim"] = polys.size();
        j["basis"] = polys;
        emit(j);
    } else {
        for (const auto& p : polys) std::cout << p << "\n";
    }
    return kOk;
}

int cmd_cache(const Options& o, bool clear) {
    if (o.cache_dir.empty()) throw ncis::InvalidArgument("--cache-dir or NCIS_CACHE_DIR is required");
    const ncis::ResultCache cache(o.cache_dir);
    if (clear) {
        const auto removed = cache.clear();
        if (o.format == "json") {
            emit(Json{{"removed", removed}});
        } else {
            std::cout << "removed " << removed << "\n";
        }
        return kOk;
    }
    std::vector<std::string> names;
    for (const auto& p : cache.entries()) names.push_back(p.filename().string());
    if (o.format == "json") {
        emit(Json{{"cache_dir", o.cache_dir}, {"entries", names}});
    } else {
        for (const auto& n : names) std::cout << n << "\n";
    }
    return kOk;
}

void add_common(CLI::App* app, Options& o, bool system, bool degrees) {
    if (system) app->add_option("--system", o.system, "ncsym, ncqsym, sym or qsym")->capture_default_str();
    app->add_option("--n", o.n, "number of variables")->capture_default_str()->check(CLI::Range(1, 12));
    if (degrees) {
        app->add_option("--max-deg", o.max_deg, "largest degree")->check(CLI::NonNegativeNumber);
        app->add_option("--deg", o.deg, "single degree")->check(CLI::NonNegativeNumber);
    }
    app->add_option("--mode", o.mode, "exact, modp or modp_certified");
    app->add_option("--prime", o.prime, "prime modulus in (2^50, 2^62); default drawn from --seed");
    app->add_option("--seed", o.seed, "seed for the prime and randomized suites")->capture_default_str();
    app->add_option("--threads", o.threads, "worker threads")->envname("NCIS_THREADS")->capture_default_str();
    app->add_option("--cache-dir", o.cache_dir, "result cache directory")->envname("NCIS_CACHE_DIR");
    app->add_option("--format", o.format, "json, csv or text")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv", "text"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial inverse systems in non-commuting variables"};
    app.require_subcommand(1);
    Options o;

    auto* hilbert = app.add_subcommand("hilbert", "Hilbert series of a perp space");
    add_common(hilbert, o, true, true);
    hilbert->add_flag("--check", o.check, "compare with the published coefficients");
    hilbert->add_option("--expected-file", o.expected_file, "expected-values table")->capture_default_str();

    auto* alt = app.add_subcommand("alt", "alternating linear system");
    add_common(alt, o, false, true);
    alt->add_flag("--oracle", o.oracle, "cross-check against word-level pairings");

    auto* verify = app.add_subcommand("verify", "run an invariant suite");
    verify->add_option("suite", o.suite, "lemma3, cor24, deltaw, prop42, products, closure or all")
        ->required()
        ->check(CLI::IsMember([] {
            auto names = ncis::suite_names();
            names.push_back("all");
            return names;
        }()));
    add_common(verify, o, false, true);
    verify->add_option("--trials", o.trials, "random cases per randomized suite")->capture_default_str();

    auto* basis = app.add_subcommand("basis", "dump a perp basis");
    add_common(basis, o, true, true);

    auto* cache = app.add_subcommand("cache", "inspect or clear the result cache");
    cache->require_subcommand(1);
    auto* cache_list = cache->add_subcommand("list", "list cached records");
    auto* cache_clear = cache->add_subcommand("clear", "delete cached records");
    for (auto* sub : {cache_list, cache_clear}) {
        sub->add_option("--cache-dir", o.cache_dir, "result cache directory")->envname("NCIS_CACHE_DIR");
        sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "csv", "text"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadConfig;
    }

    try {
        if (*hilbert) return cmd_hilbert(o);
        if (*alt) return cmd_alt(o);
        if (*verify) return cmd_verify(o);
        if (*basis) return cmd_basis(o);
        if (*cache_list) return cmd_cache(o, false);
        if (*cache_clear) return cmd_cache(o, true);
    } catch (const ncis::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadConfig;
    } catch (const ncis::ResourceError& e) {
        std::cerr << "resource bound: " << e.what() << "\n";
        return kResource;
    } catch (const ncis::CertificationError& e) {
        std::cerr << "certification: " << e.what() << "\n";
        return kResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kBadConfig;
}
