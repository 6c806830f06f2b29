#pragma once

#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cache.hpp"
#include "congruences.hpp"
#include "partitions.hpp"
#include "quasimod.hpp"
#include "relations.hpp"

namespace qmoments::cli {

enum class Format { text, records };

struct RunConfig {
    std::string command;
    std::size_t precision = 30;
    std::optional<std::uint64_t> modulus;
    std::optional<std::size_t> depth;
    std::filesystem::path cache_dir = SeriesCache::default_dir();
    bool use_cache = true;
    Format format = Format::text;
};

enum ExitCode : int { ok = 0, failed = 1, usage = 2 };

using json = nlohmann::ordered_json;

inline json to_json(const CongruenceReport& r) {
    json j;
    j["id"] = r.id;
    j["modulus"] = r.modulus;
    j["progression"] = std::to_string(r.step) + "n+" + std::to_string(r.residue);
    j["depth"] = r.depth;
    j["verdict"] = r.pass ? "pass" : "fail";
    j["counterexample"] = r.counterexample ? json(*r.counterexample) : json(nullptr);
    j["partial"] = r.partial;
    return j;
}

/// Collects one suite's output so suites can run concurrently and still
/// print in a fixed order.
struct SuiteOutput {
    std::string text;
    bool pass = true;
};

class Printer {
public:
    explicit Printer(Format f) : format_(f) {}

    void report(SuiteOutput& out, const CongruenceReport& r) const {
        out.pass = out.pass && r.pass;
        out.text += format_ == Format::text ? r.to_line() : to_json(r).dump();
        out.text += '\n';
    }

    void relation(SuiteOutput& out, const RelationResult& r) const {
        out.pass = out.pass && r.pass;
        if (format_ == Format::text) {
            out.text += r.to_string();
            return;
        }
        json j;
        j["id"] = r.id;
        j["depth"] = r.depth;
        j["verdict"] = r.pass ? "pass" : "fail";
        json coeffs = json::array();
        for (std::size_t i = 0; i < r.labels.size(); ++i) {
            coeffs.push_back({{"label", r.labels[i]}, {"value", to_fraction_string(r.coefficients[i])}});
        }
        j["coefficients"] = coeffs;
        out.text += j.dump() + '\n';
    }

    void failure(SuiteOutput& out, const std::string& id, std::size_t depth, const std::string& reason) const {
        out.pass = false;
        if (format_ == Format::text) {
            out.text += id + " depth=" + std::to_string(depth) + " verdict=fail reason=\"" + reason + "\"\n";
            return;
        }
        json j;
        j["id"] = id;
        j["depth"] = depth;
        j["verdict"] = "fail";
        j["reason"] = reason;
        out.text += j.dump() + '\n';
    }

    void pde(SuiteOutput& out, const PdeReport& r) const {
        out.pass = out.pass && r.pass;
        if (format_ == Format::text) {
            out.text += "pde depth=" + std::to_string(r.depth) + " verdict=" + (r.pass ? "pass" : "fail");
            if (r.first_failure) {
                out.text += " first-failure=q^" + std::to_string(r.first_failure->first) + "z^" +
                            std::to_string(r.first_failure->second);
            }
            out.text += '\n';
            return;
        }
        json j;
        j["id"] = "pde";
        j["depth"] = r.depth;
        j["verdict"] = r.pass ? "pass" : "fail";
        j["first_failure"] =
            r.first_failure ? json({{"n", r.first_failure->first}, {"m", r.first_failure->second}}) : json(nullptr);
        out.text += j.dump() + '\n';
    }

    template <class Ring>
    std::string series(const basic_series<Ring>& s) const {
        if (format_ == Format::text) return to_text(s);
        std::string text;
        for (std::size_t n = 0; n <= s.prec(); ++n) {
            json j;
            j["n"] = n;
            if constexpr (std::is_same_v<Ring, ResidueRing>) {
                j["value"] = s[n];
                j["modulus"] = s.ring().modulus();
            } else {
                j["value"] = to_fraction_string(Rational(s[n]));
            }
            text += j.dump() + '\n';
        }
        return text;
    }

    Format format() const { return format_; }

private:
    Format format_;
};

// Cache keys and the builders that can regenerate them.

inline std::string mod9_object_spec() { return "mod9-object " + mod9_eta_quotient_spec().to_string() + " * G1 mod=9"; }
inline std::string mod9_G_spec() { return "mod9-G mod=9"; }
inline std::string product_spec(const ProductSpec& p, std::optional<std::uint64_t> m) {
    return "product " + p.to_string() + (m ? " mod=" + std::to_string(*m) : "");
}

/// Recomputes the body stored under a cache key, or nullopt if the key is
/// not one this tool writes.
inline std::optional<std::string> recompute(const std::string& key) {
    const auto at = key.rfind(" prec=");
    if (at == std::string::npos) return std::nullopt;
    const std::string spec = key.substr(0, at);
    const std::size_t prec = std::stoul(key.substr(at + 6));
    if (spec == mod9_object_spec()) return to_text(mod9_object(prec));
    if (spec == mod9_G_spec()) return to_text(mod9_G(prec, ResidueRing(9)));
    if (spec.rfind("product ", 0) == 0) {
        std::string body = spec.substr(8);
        std::optional<std::uint64_t> m;
        if (const auto mp = body.rfind(" mod="); mp != std::string::npos) {
            m = std::stoull(body.substr(mp + 5));
            body = body.substr(0, mp);
        }
        const auto p = ProductSpec::parse(body);
        return m ? to_text(expand_product(p, prec, ResidueRing(*m))) : to_text(expand_product(p, prec));
    }
    return std::nullopt;
}

template <class Build>
ZmSeries cached_zm(const RunConfig& cfg, const std::string& spec, std::size_t prec, Build build) {
    const SeriesCache cache(cfg.cache_dir);
    const auto key = SeriesCache::make_key(spec, prec);
    if (cfg.use_cache) {
        if (auto hit = cache.load_zm(key)) return *hit;
    }
    auto s = build();
    if (cfg.use_cache) cache.store(key, s);
    return s;
}

template <class Build>
QSeries cached_q(const RunConfig& cfg, const std::string& spec, std::size_t prec, Build build) {
    const SeriesCache cache(cfg.cache_dir);
    const auto key = SeriesCache::make_key(spec, prec);
    if (cfg.use_cache) {
        if (auto hit = cache.load_q(key)) return *hit;
    }
    auto s = build();
    if (cfg.use_cache) cache.store(key, s);
    return s;
}

// Suites.

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"pde", "corollaries", "congruences", "mod9", "sifts", "abl"};
    return names;
}

inline std::size_t default_depth(const std::string& suite) {
    if (suite == "pde") return 30;
    if (suite == "corollaries") return 80;
    if (suite == "congruences") return 120;
    if (suite == "mod9") return mod9_full_depth;
    if (suite == "sifts") return 300;
    return 500;
}

inline SuiteOutput run_suite(const std::string& suite, const RunConfig& cfg) {
    const Printer pr(cfg.format);
    const std::size_t depth = cfg.depth.value_or(default_depth(suite));
    SuiteOutput out;
    if (suite == "pde") {
        pr.pde(out, verify_pde(depth));
    } else if (suite == "corollaries") {
        for (auto c : {Corollary::four, Corollary::six, Corollary::extra}) {
            try {
                pr.relation(out, corollary(c, depth));
            } catch (const error& e) {
                pr.failure(out, std::string(corollary_name(c)), depth, e.what());
            }
        }
    } else if (suite == "congruences") {
        for (const auto& r : check_spt_congruences(depth)) pr.report(out, r);
        for (const auto& r : check_moment_congruences(depth)) pr.report(out, r);
        for (const auto& r : check_reductions(depth)) pr.report(out, r);
    } else if (suite == "mod9") {
        const auto object = cached_zm(cfg, mod9_object_spec(), depth, [&] { return mod9_object(depth); });
        const auto G = cached_zm(cfg, mod9_G_spec(), depth, [&] { return mod9_G(depth, ResidueRing(9)); });
        for (const auto& r : mod9_pipeline(depth, object, G).reports()) pr.report(out, r);
    } else if (suite == "sifts") {
        for (const auto& s : {sift_3n2(depth), sift_5n2(depth)}) {
            pr.report(out, s.identity);
            pr.report(out, s.intermediate);
        }
    } else if (suite == "abl") {
        for (const auto& r : abl_special_cases(depth)) pr.report(out, r);
    } else {
        throw ParseError("unknown suite '" + suite + "'");
    }
    return out;
}

// Commands. Each writes to out and returns an exit code.

inline int cmd_dims(std::size_t K, const RunConfig& cfg, std::ostream& out) {
    for (std::size_t N = 1; N <= K; ++N) {
        if (cfg.format == Format::text) {
            out << "N=" << N << " dim=" << dim_W(N) << '\n';
        } else {
            out << json{{"N", N}, {"dim", dim_W(N)}}.dump() << '\n';
        }
    }
    return ok;
}

inline int cmd_series(const std::vector<std::string>& args, const RunConfig& cfg, std::ostream& out) {
    if (args.empty()) throw ParseError("series needs a name");
    const Printer pr(cfg.format);
    const std::size_t prec = cfg.precision;
    const std::string& name = args[0];
    auto expect_args = [&](std::size_t n) {
        if (args.size() != n + 1) throw ParseError("series " + name + " takes " + std::to_string(n) + " argument(s)");
    };
    auto emit_q = [&](const QSeries& s) {
        out << (cfg.modulus ? pr.series(reduce_mod(s, *cfg.modulus)) : pr.series(s));
    };
    auto emit_product = [&](const ProductSpec& p) {
        if (cfg.modulus) {
            const ResidueRing r(*cfg.modulus);
            out << pr.series(cached_zm(cfg, product_spec(p, cfg.modulus), prec, [&] { return expand_product(p, prec, r); }));
        } else {
            out << pr.series(cached_q(cfg, product_spec(p, std::nullopt), prec, [&] { return expand_product(p, prec); }));
        }
    };

    if (name == "eisenstein") {
        expect_args(1);
        emit_q(eisenstein(static_cast<unsigned>(std::stoul(args[1])), prec));
    } else if (name == "prefactor-A") {
        expect_args(0);
        emit_product(prefactor_A_spec());
    } else if (name == "form-F") {
        expect_args(0);
        emit_product(form_F_spec());
    } else if (name == "eta2-12") {
        expect_args(0);
        emit_product(eta2_12_spec());
    } else if (name == "product") {
        if (args.size() < 2) throw ParseError("series product needs a product spec");
        std::string text;
        for (std::size_t i = 1; i < args.size(); ++i) text += args[i];
        emit_product(ProductSpec::parse(text));
    } else if (name == "mspt") {
        expect_args(0);
        emit_q(to_rational(mspt_series(prec)));
    } else if (name == "mspt2") {
        expect_args(0);
        emit_q(to_rational(mspt2_series(prec)));
    } else {
        throw ParseError("unknown series '" + name + "'");
    }
    return ok;
}

inline int cmd_moments(const std::string& family, unsigned k, const RunConfig& cfg, std::ostream& out) {
    const Printer pr(cfg.format);
    const auto s = moment(parse_family(family), k, cfg.depth.value_or(cfg.precision));
    out << (cfg.modulus ? pr.series(reduce_mod(s, *cfg.modulus)) : pr.series(s));
    return ok;
}

inline int cmd_table(const std::string& kind, long n, const RunConfig& cfg, std::ostream& out) {
    const auto t = stat_table(n, parse_kind(kind));
    if (cfg.format == Format::text) {
        write_table(out, t);
        return ok;
    }
    for (const auto& [m, count] : t.counts) {
        out << json{{"kind", kind}, {"n", n}, {"m", m}, {"count", count.get_str()}}.dump() << '\n';
    }
    return ok;
}

inline int cmd_verify(const std::string& suite, const RunConfig& cfg, std::ostream& out) {
    std::vector<std::string> suites;
    if (suite == "all") {
        suites = suite_names();
    } else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end()) {
        suites = {suite};
    } else {
        throw ParseError("unknown suite '" + suite + "'");
    }
    std::vector<std::future<SuiteOutput>> jobs;
    for (const auto& s : suites) jobs.push_back(std::async(std::launch::async, run_suite, s, cfg));
    bool pass = true;
    for (auto& j : jobs) {
        const auto r = j.get();
        out << r.text;
        pass = pass && r.pass;
    }
    return pass ? ok : failed;
}

inline int cmd_cache(const std::string& action, const RunConfig& cfg, std::ostream& out) {
    const SeriesCache cache(cfg.cache_dir);
    if (action == "list") {
        for (const auto& e : cache.list()) out << e.file.filename().string() << ' ' << e.bytes << ' ' << e.key << '\n';
        return ok;
    }
    if (action == "clear") {
        out << "removed " << cache.clear() << '\n';
        return ok;
    }
    if (action == "verify") {
        bool pass = true;
        for (const auto& e : cache.list()) {
            const auto fresh = recompute(e.key);
            const auto stored = cache.load_text(e.key);
            const char* verdict = !fresh ? "skip" : (stored && *stored == *fresh) ? "pass" : "fail";
            if (fresh && std::string(verdict) == "fail") pass = false;
            out << e.key << " verdict=" << verdict << '\n';
        }
        return pass ? ok : failed;
    }
    throw ParseError("unknown cache action '" + action + "'");
}

/// Parses argv and dispatches. Usage problems return 2 with a message on err.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact q-series, partition moments and congruence verification"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string cache_dir = cfg.cache_dir.string();
    std::string format = "text";
    bool no_cache = false;
    std::uint64_t modulus = 0;
    std::size_t depth = 0;
    app.add_option("--prec", cfg.precision, "series precision (highest q exponent)")->check(CLI::PositiveNumber);
    app.add_option("--depth", depth, "verification depth (largest argument checked)")->check(CLI::PositiveNumber);
    app.add_option("--mod", modulus, "reduce output modulo m")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 31));
    app.add_option("--cache-dir", cache_dir, "series cache directory");
    app.add_flag("--no-cache", no_cache, "neither read nor write the cache");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "records"}));

    std::size_t dims_k = 5;
    auto* dims = app.add_subcommand("dims", "print dim W_N for N = 1..K");
    dims->add_option("K", dims_k);

    std::vector<std::string> series_args;
    auto* series = app.add_subcommand("series", "expand a named series or a product spec");
    series->add_option("spec", series_args, "eisenstein <k> | prefactor-A | form-F | eta2-12 | mspt | mspt2 | product <spec>")
        ->required();

    std::string family;
    unsigned k = 0;
    auto* moments = app.add_subcommand("moments", "moment series of a family");
    moments->add_option("family", family, "C C1 C2 C4 R2 R Rbar")->required();
    moments->add_option("k", k)->required();

    std::string kind;
    long n = 0;
    auto* table = app.add_subcommand("table", "statistic counts by enumeration or recurrence");
    table->add_option("kind", kind, "rank crank m2rank overline-rank residual-crank-2")->required();
    table->add_option("n", n)->required()->check(CLI::NonNegativeNumber);

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "pde corollaries congruences mod9 sifts abl all")->required();

    std::string action;
    auto* cache = app.add_subcommand("cache", "inspect the series cache");
    cache->add_option("action", action, "list clear verify")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return usage;
    }

    cfg.cache_dir = cache_dir;
    cfg.use_cache = !no_cache;
    cfg.format = format == "records" ? Format::records : Format::text;
    if (modulus != 0) cfg.modulus = modulus;
    if (depth != 0) cfg.depth = depth;

    try {
        if (*dims) return cmd_dims(dims_k, cfg, out);
        if (*series) return cmd_series(series_args, cfg, out);
        if (*moments) return cmd_moments(family, k, cfg, out);
        if (*table) return cmd_table(kind, n, cfg, out);
        if (*verify) return cmd_verify(suite, cfg, out);
        if (*cache) return cmd_cache(action, cfg, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const OddWeight& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        err << "error: bad number: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return failed;
    }
    return usage;
}

} // namespace qmoments::cli
