#pragma once

// Randomized sweeps behind the command line driver. Each sweep evaluates
// samples independently (optionally on several threads), stores outcomes by
// sample index and assembles a report whose content depends only on the
// configuration, never on scheduling.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "cover_io.hpp"
#include "json_io.hpp"
#include "sampling.hpp"

#ifndef BUNDLESIG_DEFAULT_CORPUS
#define BUNDLESIG_DEFAULT_CORPUS "corpus"
#endif

namespace bundlesig {

struct SweepConfig {
    std::string command;
    std::vector<int> n_values{2, 4, 6};
    std::vector<int> g_values{1, 2, 3};
    std::vector<int> h_values{1, 2, 3};
    /// Unset means the per-command default (see default_samples).
    std::optional<std::size_t> samples;
    std::uint64_t seed = 0;
    std::string exactness;  // empty means the per-command default
    std::string corpus;
    std::string input;
    std::string basepoint = "0";
    std::string output;
    std::string format = "json";
    int jobs = 1;
    /// Test hook: multiply in the wrong order inside the cocycle sweep.
    bool fault_swap_product = false;

    std::size_t sample_count() const;
    std::string exactness_class() const;
    void validate() const;
    Json to_json() const;
};

inline std::size_t default_samples(const std::string& command) {
    if (command == "cocycle-check") return 1000;
    if (command == "transfer") return 30;
    return 200;
}

inline std::size_t SweepConfig::sample_count() const { return samples.value_or(default_samples(command)); }

inline std::string SweepConfig::exactness_class() const {
    if (!exactness.empty()) return exactness;
    return command == "milnor-wood" ? "mixed" : "exact";
}

inline void SweepConfig::validate() const {
    static const std::set<std::string> commands{"cocycle-check", "milnor-wood", "meyer", "transfer", "euler-eval"};
    if (!commands.count(command)) throw ConfigError("unknown command '" + command + "'");
    if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
    if (jobs < 1) throw ConfigError("jobs must be at least 1");
    if (n_values.empty() || h_values.empty() || g_values.empty()) throw ConfigError("empty parameter range");
    for (int n : n_values)
        if (n < 2 || n % 2 != 0) throw ConfigError("n must be even and positive");
    for (int h : h_values)
        if (h < 1) throw ConfigError("h must be at least 1");
    for (int g : g_values)
        if (g < 1) throw ConfigError("g must be at least 1");
    if (command == "cocycle-check") parse_map_class(exactness_class());
    if (command == "milnor-wood") {
        const auto cls = parse_rep_class(exactness_class());
        if (cls == RepClass::Fuchsian)
            for (int h : h_values)
                if (h < 2) throw ConfigError("Fuchsian representations need h >= 2");
    }
    if (command == "euler-eval" && input.empty()) throw ConfigError("euler-eval needs an input file");
    try {
        parse_rational(basepoint);
    } catch (const ParseError& e) {
        throw ConfigError(std::string("bad basepoint: ") + e.what());
    }
}

inline Json SweepConfig::to_json() const {
    Json j = {{"command", command},     {"n", n_values},           {"g", g_values},
              {"h", h_values},          {"samples", sample_count()}, {"seed", seed},
              {"exactness", exactness_class()}, {"basepoint", basepoint}, {"format", format},
              {"fault_swap_product", fault_swap_product}};
    if (command == "transfer") j["corpus"] = corpus;
    if (command == "euler-eval") j["input"] = input;
    return j;
}

struct RunReport {
    Json config;
    std::vector<Json> records;
    Json aggregate = Json::object();
    std::vector<Json> violations;
    /// Excluded from the report hash.
    Json timings = Json::object();
    std::vector<std::string> csv_columns;
    std::vector<Json> csv_rows;

    bool ok() const { return violations.empty(); }

    Json to_json(bool with_timings = true) const {
        Json j = {{"config", config}, {"records", records}, {"aggregate", aggregate}, {"violations", violations}};
        if (with_timings) {
            j["timings"] = timings;
            j["hash"] = hash();
        }
        return j;
    }

    /// FNV-1a over the serialized report without timings.
    std::string hash() const {
        const std::string text = to_json(false).dump();
        std::uint64_t h = 14695981039346656037ull;
        for (unsigned char c : text) {
            h ^= c;
            h *= 1099511628211ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    void write_csv(std::ostream& out) const {
        for (std::size_t i = 0; i < csv_columns.size(); ++i) out << (i ? "," : "") << csv_columns[i];
        out << "\n";
        for (const auto& row : csv_rows) {
            for (std::size_t i = 0; i < csv_columns.size(); ++i) {
                const auto& v = row.contains(csv_columns[i]) ? row.at(csv_columns[i]) : Json(nullptr);
                out << (i ? "," : "") << (v.is_string() ? v.get<std::string>() : v.dump());
            }
            out << "\n";
        }
    }
};

struct SampleOutcome {
    Json record = Json::object();
    std::vector<Json> violations;
    std::vector<Json> rows;
};

namespace detail {

/// Work sharing over sample indices; outcomes land at their index.
inline std::vector<SampleOutcome> run_samples(std::size_t count, int jobs,
                                              const std::function<SampleOutcome(std::size_t)>& body) {
    std::vector<SampleOutcome> out(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = body(i);
            } catch (const std::exception& e) {
                out[i].record = {{"index", i}, {"error", e.what()}};
                out[i].violations.push_back({{"index", i}, {"kind", "exception"}, {"detail", e.what()}});
            }
        }
    };
    const int width = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    std::vector<std::thread> pool;
    for (int t = 1; t < width; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

inline void collect(RunReport& report, std::vector<SampleOutcome>&& outcomes) {
    for (auto& o : outcomes) {
        report.records.push_back(std::move(o.record));
        for (auto& v : o.violations) {
            if (!v.contains("reproduce"))
                v["reproduce"] = {{"command", report.config.value("command", "")},
                                  {"seed", report.config.value("seed", std::uint64_t{0})},
                                  {"index", v["index"]}};
            report.violations.push_back(std::move(v));
        }
        for (auto& r : o.rows) report.csv_rows.push_back(std::move(r));
    }
}

inline Json violation(const SweepConfig& cfg, std::size_t index, const std::string& kind,
                      const std::string& detail, Json extra = Json::object()) {
    Json v = {{"index", index},
              {"kind", kind},
              {"detail", detail},
              {"reproduce", {{"command", cfg.command}, {"seed", cfg.seed}, {"index", index}}}};
    for (auto& [k, val] : extra.items()) v["reproduce"][k] = val;
    return v;
}

template <class F>
double timed_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline const std::array<Rational, 3>& test_basepoints() {
    static const std::array<Rational, 3> pts{Rational(0), make_rational(1, 3), make_rational(1, 2)};
    return pts;
}

inline std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

}  // namespace detail

/// Range, component and 2-cocycle checks on random triples of wreath
/// elements and of circle maps.
inline RunReport run_cocycle_check(const SweepConfig& cfg) {
    cfg.validate();
    RunReport report;
    report.config = cfg.to_json();
    report.csv_columns = {"index", "n", "raw", "shifted", "delta", "classical", "classical_delta", "basepoint", "seed"};
    const MapClass cls = parse_map_class(cfg.exactness_class());
    const WreathProduct product =
        cfg.fault_swap_product ? WreathProduct([](const WreathElement& a, const WreathElement& b) {
            return wreath_multiply(b, a);
        })
                               : WreathProduct(wreath_multiply);

    auto body = [&](std::size_t i) {
        SampleOutcome o;
        Rng rng = sample_rng(cfg.seed, i);
        const auto n = static_cast<std::size_t>(cfg.n_values[i % cfg.n_values.size()]);
        const Rational x0 = detail::test_basepoints()[i % 3];
        const auto a = random_wreath(rng, n, cls), b = random_wreath(rng, n, cls), c = random_wreath(rng, n, cls);
        o.record = {{"index", i}, {"n", n}, {"basepoint", format_rational(x0)}};
        auto flag = [&](const std::string& kind, const std::string& what) {
            o.violations.push_back(detail::violation(cfg, i, kind, what, {{"n", n}}));
        };
        try {
            const WreathElement ab = product(a, b), bc = product(b, c);
            std::vector<std::int64_t> raws;
            const std::pair<const WreathElement*, const WreathElement*> pairs[] = {
                {&a, &b}, {&b, &c}, {&ab, &c}, {&a, &bc}};
            for (const auto& [l, r] : pairs) {
                const CentralVector d = kernel_defect(*l, *r, x0, product);
                for (auto comp : d)
                    if (comp != 0 && comp != 1) flag("defect-component", "component " + std::to_string(comp));
                const std::int64_t raw = rho(d);
                const auto half = static_cast<std::int64_t>(n / 2);
                if (raw < 0 || raw > static_cast<std::int64_t>(n)) flag("raw-range", std::to_string(raw));
                if (raw - half < -half || raw - half > half) flag("shifted-range", std::to_string(raw - half));
                raws.push_back(raw);
            }
            const std::int64_t delta = raws[1] - raws[2] + raws[3] - raws[0];
            if (delta != 0) flag("cocycle-identity", "delta c = " + std::to_string(delta));
            o.record["raw"] = raws;
            o.record["shifted"] = raws[0] - static_cast<std::int64_t>(n / 2);
            o.record["delta"] = delta;
        } catch (const InternalConsistency& e) {
            flag("non-central-defect", e.what());
        } catch (const AmbiguousLift& e) {
            o.record["skipped"] = e.what();
        }
        try {
            const auto f = random_circle_map(rng, cls), g = random_circle_map(rng, cls), k = random_circle_map(rng, cls);
            const std::int64_t c_fg = classical_euler_cocycle(f, g, x0);
            const std::int64_t c_gk = classical_euler_cocycle(g, k, x0);
            const std::int64_t c_fgk = classical_euler_cocycle(compose(f, g), k, x0);
            const std::int64_t c_fgk2 = classical_euler_cocycle(f, compose(g, k), x0);
            for (auto v : {c_fg, c_gk, c_fgk, c_fgk2})
                if (v != 0 && v != 1) flag("classical-range", std::to_string(v));
            const std::int64_t delta = c_gk - c_fgk + c_fgk2 - c_fg;
            if (delta != 0) flag("classical-cocycle-identity", "delta c = " + std::to_string(delta));
            o.record["classical"] = c_fg;
            o.record["classical_delta"] = delta;
        } catch (const AmbiguousLift& e) {
            o.record["classical_skipped"] = e.what();
        }
        Json row = o.record;
        row["raw"] = o.record.contains("raw") ? o.record["raw"][0] : Json(nullptr);
        row["seed"] = cfg.seed;
        o.rows.push_back(row);
        return o;
    };

    report.timings["sweep_ms"] = detail::timed_ms([&] {
        detail::collect(report, detail::run_samples(cfg.sample_count(), cfg.jobs, body));
    });

    std::map<std::string, std::int64_t> histogram;
    std::int64_t lo = 0, hi = 0, skipped = 0;
    bool first = true, all_zero = true;
    for (const auto& r : report.records) {
        if (!r.contains("raw")) {
            ++skipped;
            continue;
        }
        for (const auto& v : r["raw"]) {
            const auto x = v.get<std::int64_t>();
            lo = first ? x : std::min(lo, x);
            hi = first ? x : std::max(hi, x);
            first = false;
            all_zero &= x == 0;
            ++histogram[std::to_string(x)];
        }
    }
    report.aggregate = {{"samples", report.records.size()}, {"raw_min", lo},  {"raw_max", hi},
                        {"raw_histogram", histogram},      {"all_zero", all_zero}, {"skipped", skipped},
                        {"violations", report.violations.size()}};
    return report;
}

struct MilnorWoodSample {
    std::int64_t e_bar = 0;
    std::int64_t e_lift = 0;
    std::int64_t e_shifted = 0;
    std::int64_t bound = 0;
    double residual = 0;
};

/// Milnor-Wood sweep: both evaluations, the bound and every invariance.
inline RunReport run_milnor_wood(const SweepConfig& cfg) {
    cfg.validate();
    RunReport report;
    report.config = cfg.to_json();
    report.csv_columns = {"n", "h", "e", "bound", "slack", "method", "basepoint", "seed"};
    const RepClass cls = parse_rep_class(cfg.exactness_class());
    std::vector<std::pair<int, int>> grid;
    for (int n : cfg.n_values)
        for (int h : cfg.h_values) grid.emplace_back(n, h);
    const Rational x0 = parse_rational(cfg.basepoint);

    auto body = [&](std::size_t i) {
        SampleOutcome o;
        Rng rng = sample_rng(cfg.seed, i);
        const auto [n_int, h] = grid[i % grid.size()];
        const auto n = static_cast<std::size_t>(n_int);
        auto sample = random_representation(rng, n, h, cls);
        const auto& rep = sample.rep;
        auto flag = [&](const std::string& kind, const std::string& what) {
            o.violations.push_back(detail::violation(cfg, i, kind, what, {{"n", n}, {"h", h}}));
        };
        o.record = {{"index", i}, {"n", n}, {"h", h}, {"family", sample.family}, {"numeric", sample.numeric}};
        const double residual = rep.relator_residual();
        o.record["residual"] = residual;
        rep.check();

        const auto bar = evaluate_euler_bar(rep, x0);
        const auto lift = evaluate_euler_relator_lift(rep, x0);
        const std::int64_t shifted = evaluate_euler_bar_shifted(rep, x0);
        const auto verdict = milnor_wood_check(lift);
        o.record["e_bar"] = bar.e;
        o.record["e_lift"] = lift.e;
        o.record["e_shifted"] = shifted;
        o.record["bound"] = verdict.bound;
        o.record["slack"] = verdict.slack;
        if (bar.e != lift.e) flag("method-disagreement", "bar " + std::to_string(bar.e) + " lift " + std::to_string(lift.e));
        if (shifted != bar.e) flag("shifted-disagreement", std::to_string(shifted));
        if (!verdict.pass) flag("milnor-wood", "e " + std::to_string(lift.e) + " bound " + std::to_string(verdict.bound));
        if (h == 1 && lift.e != 0) flag("torus-forcing", "e " + std::to_string(lift.e));
        if (cls == RepClass::Rotation && lift.e != 0) flag("rotation-nonzero", "e " + std::to_string(lift.e));

        Json at_basepoints = Json::array();
        for (const auto& p : detail::test_basepoints()) {
            const auto e_p = evaluate_euler_relator_lift(rep, p).e;
            at_basepoints.push_back(e_p);
            if (e_p != lift.e) flag("basepoint-invariance", format_rational(p) + ": " + std::to_string(e_p));
        }
        o.record["e_basepoints"] = at_basepoints;

        std::vector<CentralVector> perturb(static_cast<std::size_t>(2 * h), CentralVector(n));
        for (auto& v : perturb)
            for (auto& x : v) x = between(rng, -3, 3);
        const auto e_perturbed = evaluate_euler_relator_lift(rep, x0, perturb).e;
        o.record["e_perturbed"] = e_perturbed;
        if (e_perturbed != lift.e) flag("lift-perturbation", std::to_string(e_perturbed));

        const auto conj = conjugate(rep, random_conjugator(rng, n, sample.numeric, cls));
        const auto e_conj = evaluate_euler_relator_lift(conj, x0).e;
        o.record["e_conjugated"] = e_conj;
        if (e_conj != lift.e) flag("conjugation-invariance", std::to_string(e_conj));

        for (const auto& r : {bar, lift})
            o.rows.push_back({{"n", n}, {"h", h}, {"e", r.e}, {"bound", r.bound}, {"slack", verdict.slack},
                              {"method", r.method}, {"basepoint", format_rational(x0)}, {"seed", cfg.seed}});
        return o;
    };

    report.timings["sweep_ms"] = detail::timed_ms([&] {
        detail::collect(report, detail::run_samples(cfg.sample_count(), cfg.jobs, body));
    });

    std::int64_t lo = 0, hi = 0, saturated = 0;
    double max_residual = 0;
    bool first = true;
    std::map<std::string, std::int64_t> slack_histogram;
    for (const auto& r : report.records) {
        if (!r.contains("e_lift")) continue;
        const auto e = r["e_lift"].get<std::int64_t>();
        lo = first ? e : std::min(lo, e);
        hi = first ? e : std::max(hi, e);
        first = false;
        ++slack_histogram[std::to_string(r["slack"].get<std::int64_t>())];
        if (r["slack"] == 0 && r["bound"] != 0) ++saturated;
        max_residual = std::max(max_residual, r["residual"].get<double>());
    }
    report.aggregate = {{"samples", report.records.size()}, {"e_min", lo},
                        {"e_max", hi},                      {"slack_histogram", slack_histogram},
                        {"saturated", saturated},           {"max_relator_residual", max_residual},
                        {"violations", report.violations.size()}};
    return report;
}

/// Checks of the Meyer cocycle on one random triple of twist-word matrices.
struct MeyerTripleCheck {
    bool identity_holds = true;
    bool normalized = true;  // tau(I, A) = tau(A, I) = tau(A, A^-1) = 0
    bool bounded = true;     // |tau(A, B)| <= 2g
    bool symplectic = true;
    int tau_ab = 0;
};

inline MeyerTripleCheck check_meyer_triple(const SpMatrix& a, const SpMatrix& b, const SpMatrix& c) {
    MeyerTripleCheck r;
    const int g = a.genus();
    const SpMatrix id = SpMatrix::identity(g);
    r.symplectic = is_symplectic(a) && is_symplectic(b) && is_symplectic(c);
    r.tau_ab = meyer_cocycle(a, b);
    r.identity_holds = r.tau_ab + meyer_cocycle(a * b, c) == meyer_cocycle(a, b * c) + meyer_cocycle(b, c);
    r.normalized = meyer_cocycle(id, a) == 0 && meyer_cocycle(a, id) == 0 && meyer_cocycle(a, inverse(a)) == 0;
    r.bounded = std::abs(r.tau_ab) <= 2 * g;
    return r;
}

/// Meyer sweep over the families
///   trivial     all generators to I                     (certified bundle)
///   multitwist  commuting multitwists on disjoint curves (certified bundle)
///   free        a_i twist words, b_i = I                 (sp-only)
///   powers      handles (W^p, W^q) for a twist word W    (sp-only)
inline RunReport run_meyer(const SweepConfig& cfg) {
    cfg.validate();
    RunReport report;
    report.config = cfg.to_json();
    report.csv_columns = {"g", "h", "sigma", "chiE", "v3", "v2", "mod4", "cert", "seed"};
    std::vector<std::pair<int, int>> grid;
    for (int g : cfg.g_values)
        for (int h : cfg.h_values) grid.emplace_back(g, h);
    static const char* kFamilies[] = {"trivial", "multitwist", "free", "powers"};

    auto body = [&](std::size_t i) {
        SampleOutcome o;
        Rng rng = sample_rng(cfg.seed, i);
        const auto [g, h] = grid[i % grid.size()];
        const std::string family = kFamilies[below(rng, 4)];
        auto flag = [&](const std::string& kind, const std::string& what) {
            o.violations.push_back(detail::violation(cfg, i, kind, what, {{"g", g}, {"h", h}}));
        };
        Representation<SpMatrix> rep;
        rep.genus = h;
        Certification cert = Certification::SpOnly;
        const SpMatrix id = SpMatrix::identity(g);
        const auto curves = disjoint_curve_classes(g).size();
        if (family == "trivial") {
            cert = Certification::CertifiedBundle;
            rep.images.assign(static_cast<std::size_t>(2 * h), id);
        } else if (family == "multitwist") {
            cert = Certification::CertifiedBundle;
            for (int k = 0; k < 2 * h; ++k) {
                std::vector<std::int64_t> powers(curves);
                for (auto& p : powers) p = between(rng, -2, 2);
                rep.images.push_back(multitwist(g, powers).matrix());
            }
        } else if (family == "free") {
            for (int k = 0; k < h; ++k) {
                rep.images.push_back(random_twist_word(rng, g).matrix());
                rep.images.push_back(id);
            }
        } else {
            for (int k = 0; k < h; ++k) {
                const SpMatrix w = random_twist_word(rng, g).matrix();
                rep.images.push_back(power(w, between(rng, -2, 2)));
                rep.images.push_back(power(w, between(rng, -2, 2)));
            }
        }
        for (const auto& m : rep.images)
            if (!is_symplectic(m)) flag("not-symplectic", "constructed monodromy matrix");
        const SignatureReport s = signature_from_monodromy(rep, cert);
        const bool certified = cert == Certification::CertifiedBundle;
        if (certified && !(s.verdict_3 && s.verdict_2))
            flag("signature-bound", "sigma " + std::to_string(s.sigma) + " chi " + std::to_string(s.chi_e));
        if ((family == "trivial" || family == "free") && s.sigma != 0)
            flag("vanishing", family + " monodromy has sigma " + std::to_string(s.sigma));
        if (certified && h == 1 && s.sigma != 0) flag("torus-forcing", "sigma " + std::to_string(s.sigma));

        const auto t = check_meyer_triple(random_twist_word(rng, g).matrix(), random_twist_word(rng, g).matrix(),
                                          random_twist_word(rng, g).matrix());
        if (!t.symplectic) flag("not-symplectic", "twist word matrix");
        if (!t.identity_holds) flag("meyer-cocycle-identity", "triple fails the 2-cocycle identity");
        if (!t.normalized) flag("meyer-normalization", "tau(I,.), tau(.,I) or tau(A,A^-1) nonzero");
        if (!t.bounded) flag("meyer-bound", "|tau| = " + std::to_string(std::abs(t.tau_ab)));

        Json sj = to_json(s);
        o.record = sj;
        o.record["index"] = i;
        o.record["family"] = family;
        o.record["tau_sample"] = t.tau_ab;
        o.record["cocycle_identity"] = t.identity_holds;
        sj["seed"] = cfg.seed;
        o.rows.push_back(sj);
        return o;
    };

    report.timings["sweep_ms"] = detail::timed_ms([&] {
        detail::collect(report, detail::run_samples(cfg.sample_count(), cfg.jobs, body));
    });

    std::int64_t lo = 0, hi = 0, certified = 0, sp_only = 0, mod4_soft = 0, max_tau = 0;
    bool first = true;
    for (const auto& r : report.records) {
        if (!r.contains("sigma")) continue;
        const auto s = r["sigma"].get<std::int64_t>();
        lo = first ? s : std::min(lo, s);
        hi = first ? s : std::max(hi, s);
        first = false;
        const bool cert = r["cert"] == "certified-bundle";
        (cert ? certified : sp_only) += 1;
        if (cert && !r["mod4"].get<bool>()) ++mod4_soft;
        max_tau = std::max(max_tau, detail::abs64(r["tau_sample"].get<std::int64_t>()));
    }
    report.aggregate = {{"samples", report.records.size()}, {"sigma_min", lo},
                        {"sigma_max", hi},                  {"certified", certified},
                        {"sp_only", sp_only},               {"mod4_soft_failures", mod4_soft},
                        {"max_abs_tau", max_tau},           {"violations", report.violations.size()}};
    return report;
}

inline std::string resolve_corpus(const SweepConfig& cfg) {
    if (!cfg.corpus.empty()) return cfg.corpus;
    if (const char* env = std::getenv("BUNDLESIG_CORPUS"); env && *env) return env;
    return BUNDLESIG_DEFAULT_CORPUS;
}

inline Cochain random_cochain(Rng& rng, const SimplicialComplex& k, int degree) {
    Cochain c = zero_cochain(k, degree);
    for (auto& v : c.values) v = make_rational(between(rng, -9, 9), between(rng, 1, 9));
    return c;
}

/// Validates every corpus covering, then checks tau(phi^* c) = deg c and
/// tau(delta c) = delta tau(c) on random cochains of every degree, and that
/// the preimage of the fundamental cycle is a cycle.
inline RunReport run_transfer(SweepConfig cfg) {
    cfg.corpus = resolve_corpus(cfg);
    cfg.validate();
    RunReport report;
    report.config = cfg.to_json();
    report.csv_columns = {"name", "degree", "k", "checked", "passed"};
    const auto covers = load_corpus(cfg.corpus);
    const std::size_t per_degree = cfg.sample_count();

    auto body = [&](std::size_t i) {
        SampleOutcome o;
        Rng rng = sample_rng(cfg.seed, i);
        const auto& spec = covers[i];
        auto flag = [&](const std::string& kind, const std::string& what) {
            o.violations.push_back(detail::violation(cfg, i, kind, what, {{"cover", spec.name}}));
        };
        const BranchedCovering cov(spec.map(), spec.branch);
        const auto& rep = cov.report();
        o.record = {{"index", i},
                    {"name", spec.name},
                    {"valid", rep.valid},
                    {"degree", rep.degree},
                    {"diagnostics", rep.diagnostics},
                    {"neighborhood_condition", rep.neighborhood_proxy_holds ? "holds (punctured-star proxy)"
                                                                            : "fails (punctured-star proxy)"},
                    {"summation_holds", rep.degrees.summation_holds}};
        Json local = Json::object();
        for (const auto& [v, d] : rep.degrees.vertex_local_degree) local[std::to_string(v)] = d;
        o.record["vertex_local_degree"] = local;
        if (!rep.valid) {
            flag("invalid-cover", rep.diagnostics.empty() ? "invalid" : rep.diagnostics.front());
            return o;
        }
        const auto& phi = cov.map();
        const int dim = phi.target().dimension();
        Json checks = Json::array();
        for (int k = 0; k <= dim; ++k) {
            std::size_t passed = 0;
            for (std::size_t s = 0; s < per_degree; ++s) {
                const Cochain c = random_cochain(rng, phi.target(), k);
                Cochain expect = c;
                for (auto& v : expect.values) v *= cov.degree();
                bool ok = transfer(cov, pullback(phi, c)) == expect;
                if (k < dim) {
                    const Cochain x = random_cochain(rng, phi.source(), k);
                    ok = ok && transfer(cov, coboundary(phi.source(), x)) == coboundary(phi.target(), transfer(cov, x));
                }
                passed += ok;
            }
            if (passed != per_degree)
                flag("transfer-identity", "degree " + std::to_string(k) + ": " + std::to_string(per_degree - passed) +
                                              " failures");
            checks.push_back({{"k", k}, {"checked", per_degree}, {"passed", passed}});
            o.rows.push_back({{"name", spec.name}, {"degree", cov.degree()}, {"k", k}, {"checked", per_degree},
                              {"passed", passed}});
        }
        o.record["transfer_checks"] = checks;
        try {
            const Chain z = fundamental_cycle_of_cover(cov);
            o.record["fundamental_cycle_cells"] = z.size();
        } catch (const NotOrientable& e) {
            flag("fundamental-cycle", e.what());
        }
        return o;
    };

    report.timings["sweep_ms"] = detail::timed_ms([&] {
        detail::collect(report, detail::run_samples(covers.size(), cfg.jobs, body));
    });
    std::int64_t valid = 0;
    for (const auto& r : report.records) valid += r.value("valid", false);
    report.aggregate = {{"covers", covers.size()}, {"valid", valid}, {"violations", report.violations.size()}};
    return report;
}

/// Euler number or signature of one representation read from JSON.
inline RunReport run_euler_eval(const SweepConfig& cfg) {
    cfg.validate();
    RunReport report;
    report.config = cfg.to_json();
    std::ifstream in(cfg.input);
    if (!in) throw ConfigError("cannot read " + cfg.input);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError(e.what());
    }
    const auto any = representation_from_json(j);
    const Rational x0 = parse_rational(cfg.basepoint);
    auto flag = [&](const std::string& kind, const std::string& what) {
        report.violations.push_back(detail::violation(cfg, 0, kind, what, {{"input", cfg.input}}));
    };
    report.timings["eval_ms"] = detail::timed_ms([&] {
        if (const auto* sp = std::get_if<Representation<SpMatrix>>(&any)) {
            const Certification cert = j.value("certification", std::string("sp-only")) == "certified-bundle"
                                           ? Certification::CertifiedBundle
                                           : Certification::SpOnly;
            const auto s = signature_from_monodromy(*sp, cert);
            report.csv_columns = {"g", "h", "sigma", "chiE", "v3", "v2", "mod4", "cert", "seed"};
            Json row = to_json(s);
            row["seed"] = cfg.seed;
            report.records.push_back(to_json(s));
            report.csv_rows.push_back(row);
            if (cert == Certification::CertifiedBundle && !(s.verdict_2 && s.verdict_3))
                flag("signature-bound", "certified bundle violates the signature bound");
            return;
        }
        report.csv_columns = {"n", "h", "e", "bound", "slack", "method", "basepoint", "seed"};
        auto evaluate = [&](const auto& rep) {
            const auto bar = evaluate_euler_bar(rep, x0);
            const auto lift = evaluate_euler_relator_lift(rep, x0);
            const auto verdict = milnor_wood_check(lift);
            Json rec = {{"bar", to_json(bar)}, {"relator_lift", to_json(lift)}, {"slack", verdict.slack},
                        {"milnor_wood", verdict.pass}, {"relator_residual", rep.relator_residual()}};
            report.records.push_back(rec);
            for (const auto& r : {bar, lift})
                report.csv_rows.push_back({{"n", r.n}, {"h", r.h}, {"e", r.e}, {"bound", r.bound},
                                           {"slack", verdict.slack}, {"method", r.method},
                                           {"basepoint", format_rational(x0)}, {"seed", cfg.seed}});
            if (bar.e != lift.e) flag("method-disagreement", "bar and relator-lift differ");
            if (!verdict.pass) flag("milnor-wood", "bound exceeded");
        };
        if (const auto* w = std::get_if<Representation<WreathElement>>(&any)) evaluate(*w);
        if (const auto* c = std::get_if<Representation<CircleMap>>(&any)) evaluate(*c);
    });
    report.aggregate = {{"violations", report.violations.size()}};
    return report;
}

inline RunReport run_command(const SweepConfig& cfg) {
    if (cfg.command == "cocycle-check") return run_cocycle_check(cfg);
    if (cfg.command == "milnor-wood") return run_milnor_wood(cfg);
    if (cfg.command == "meyer") return run_meyer(cfg);
    if (cfg.command == "transfer") return run_transfer(cfg);
    if (cfg.command == "euler-eval") return run_euler_eval(cfg);
    throw ConfigError("unknown command '" + cfg.command + "'");
}

}  // namespace bundlesig
