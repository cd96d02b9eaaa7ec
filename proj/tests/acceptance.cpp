// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Every tolerance, sample count and time budget is pinned below.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include <bundlesig/harness.hpp>

using namespace bundlesig;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr int kJobs = 1;

constexpr std::size_t kRangePairsPerN = 10000;
constexpr double kRangeBudgetSeconds = 30;
constexpr std::size_t kCocycleTriples = 1000;
constexpr double kCocycleBudgetSeconds = 60;
constexpr std::size_t kMilnorWoodSamples = 1000;
constexpr double kResidualTolerance = 1e-6;
constexpr double kMilnorWoodBudgetSeconds = 300;
constexpr std::size_t kAgreementSamples = 200;
constexpr std::size_t kTransferCochainsPerDegree = 30;
constexpr double kTransferBudgetSeconds = 10;
constexpr std::size_t kMeyerTriples = 1000;
constexpr std::size_t kFreeFactoringSamples = 200;
constexpr double kMeyerBudgetSeconds = 120;
constexpr std::size_t kMeyerSweepSamples = 1000;
constexpr std::size_t kTorusSamples = 300;
constexpr int kDeterminismRepeats = 3;

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

SweepConfig sweep(const std::string& command, std::size_t samples) {
    SweepConfig cfg;
    cfg.command = command;
    cfg.samples = samples;
    cfg.seed = kSeed;
    cfg.jobs = kJobs;
    return cfg;
}

std::string first_violation(const RunReport& r) {
    return r.violations.empty() ? "" : r.violations.front().dump();
}

std::int64_t chi_of(int g, int h) { return static_cast<std::int64_t>(2 * g - 2) * (2 * h - 2); }

// 1 and 2 share one sweep of independent random exact pairs.
struct RangeSweep {
    std::size_t pairs = 0, range_violations = 0, component_violations = 0;
    double seconds = 0;
};

RangeSweep range_sweep() {
    RangeSweep s;
    const auto start = Clock::now();
    std::uint64_t index = 0;
    for (std::size_t n : {2u, 4u, 6u}) {
        const auto half = static_cast<std::int64_t>(n / 2);
        for (std::size_t k = 0; k < kRangePairsPerN; ++k, ++index) {
            Rng rng = sample_rng(kSeed, index);
            const auto a = random_wreath(rng, n, MapClass::Exact);
            const auto b = random_wreath(rng, n, MapClass::Exact);
            const Rational x0 = make_rational(static_cast<std::int64_t>(below(rng, 12)), 12);
            const CentralVector d = kernel_defect(a, b, x0);
            for (auto comp : d) s.component_violations += comp != 0 && comp != 1;
            const CocycleValue c = cocycle(a, b, x0);
            s.range_violations += c.raw < 0 || c.raw > static_cast<std::int64_t>(n);
            s.range_violations += c.shifted < -half || c.shifted > half;
            s.range_violations += c.shifted != c.raw - half;
            ++s.pairs;
        }
    }
    s.seconds = seconds_since(start);
    return s;
}

Outcome criterion_range(const RangeSweep& s) {
    Outcome o;
    o.pass = s.pairs == 3 * kRangePairsPerN && s.range_violations == 0 && s.seconds < kRangeBudgetSeconds;
    o.detail = std::to_string(s.pairs) + " pairs, " + std::to_string(s.range_violations) + " range violations, " +
               std::to_string(s.seconds) + " s";
    return o;
}

Outcome criterion_components(const RangeSweep& s) {
    Outcome o;
    o.pass = s.pairs > 0 && s.component_violations == 0;
    o.detail = std::to_string(s.component_violations) + " components outside {0,1}";
    return o;
}

Outcome criterion_cocycle_identity() {
    const auto start = Clock::now();
    auto cfg = sweep("cocycle-check", kCocycleTriples);
    cfg.n_values = {2, 4, 6};
    cfg.exactness = "exact";
    const auto r = run_command(cfg);
    const double secs = seconds_since(start);
    std::size_t wreath = 0, classical = 0;
    for (const auto& rec : r.records) {
        wreath += rec.contains("delta");
        classical += rec.contains("classical_delta");
    }
    Outcome o;
    o.pass = r.ok() && wreath == kCocycleTriples && classical == kCocycleTriples && secs < kCocycleBudgetSeconds;
    o.detail = std::to_string(wreath) + " wreath and " + std::to_string(classical) + " classical triples, " +
               std::to_string(r.violations.size()) + " violations, " + std::to_string(secs) + " s " +
               first_violation(r);
    return o;
}

struct MilnorWoodRun {
    RunReport mixed, fuchsian;
    double seconds = 0;
};

MilnorWoodRun milnor_wood_run() {
    MilnorWoodRun m;
    const auto start = Clock::now();
    auto cfg = sweep("milnor-wood", kMilnorWoodSamples);
    cfg.n_values = {2, 4};
    cfg.h_values = {1, 2, 3};
    cfg.exactness = "mixed";
    m.mixed = run_command(cfg);
    auto f = sweep("milnor-wood", 2);
    f.n_values = {2};
    f.h_values = {2};
    f.exactness = "fuchsian";
    m.fuchsian = run_command(f);
    m.seconds = seconds_since(start);
    return m;
}

Outcome criterion_milnor_wood(const MilnorWoodRun& m) {
    std::size_t bound_failures = 0, numeric = 0;
    double max_residual = 0;
    for (const auto& rec : m.mixed.records) {
        const auto n = rec.at("n").get<std::int64_t>(), h = rec.at("h").get<std::int64_t>();
        const auto e = rec.at("e_lift").get<std::int64_t>();
        bound_failures += detail::abs64(e) > n * (2 * h - 2);
        numeric += rec.at("numeric").get<bool>();
        max_residual = std::max(max_residual, rec.at("residual").get<double>());
    }
    bool saturated = !m.fuchsian.records.empty();
    for (const auto& rec : m.fuchsian.records)
        saturated = saturated && detail::abs64(rec.at("e_lift").get<std::int64_t>()) == 4 && rec.at("slack") == 0 &&
                    rec.at("bound") == 4;
    Outcome o;
    o.pass = m.mixed.records.size() == kMilnorWoodSamples && bound_failures == 0 && m.mixed.ok() &&
             m.fuchsian.ok() && saturated && numeric > 0 && max_residual <= kResidualTolerance &&
             m.seconds < kMilnorWoodBudgetSeconds;
    o.detail = std::to_string(m.mixed.records.size()) + " reps (" + std::to_string(numeric) + " numeric), " +
               std::to_string(bound_failures) + " bound failures, fuchsian pair " +
               (saturated ? "saturates" : "does not saturate") + ", max residual " + std::to_string(max_residual) +
               ", " + std::to_string(m.seconds) + " s " + first_violation(m.mixed);
    return o;
}

Outcome criterion_torus(const MilnorWoodRun& m) {
    std::size_t reps = 0, nonzero = 0;
    auto count = [&](const RunReport& r) {
        for (const auto& rec : r.records) {
            if (rec.at("h") != 1) continue;
            ++reps;
            for (const char* key : {"e_bar", "e_lift", "e_shifted", "e_perturbed", "e_conjugated"})
                nonzero += rec.at(key) != 0;
        }
    };
    count(m.mixed);
    for (const char* cls : {"rotation", "exact"}) {
        auto cfg = sweep("milnor-wood", kTorusSamples);
        cfg.n_values = {2, 4, 6};
        cfg.h_values = {1};
        cfg.exactness = cls;
        count(run_command(cfg));
    }

    auto mc = sweep("meyer", kTorusSamples);
    mc.g_values = {1, 2, 3};
    mc.h_values = {1};
    const auto meyer = run_command(mc);
    std::size_t certified = 0, sigma_nonzero = 0;
    for (const auto& rec : meyer.records) {
        if (rec.at("cert") != "certified-bundle") continue;
        ++certified;
        sigma_nonzero += rec.at("sigma") != 0;
    }
    Outcome o;
    o.pass = reps > 0 && nonzero == 0 && certified > 0 && sigma_nonzero == 0;
    o.detail = std::to_string(reps) + " genus-1 reps with " + std::to_string(nonzero) + " nonzero values, " +
               std::to_string(certified) + " certified Meyer runs with " + std::to_string(sigma_nonzero) +
               " nonzero signatures";
    return o;
}

Outcome criterion_agreement() {
    auto cfg = sweep("milnor-wood", kAgreementSamples);
    cfg.seed = kSeed + 1;
    cfg.n_values = {2, 4, 6};
    cfg.h_values = {1, 2, 3};
    cfg.exactness = "mixed";
    const auto r = run_command(cfg);
    std::size_t mismatches = 0;
    for (const auto& rec : r.records) {
        const auto e = rec.at("e_lift");
        mismatches += rec.at("e_bar") != e || rec.at("e_shifted") != e || rec.at("e_perturbed") != e ||
                      rec.at("e_conjugated") != e;
        for (const auto& v : rec.at("e_basepoints")) mismatches += v != e;
    }
    Outcome o;
    o.pass = r.records.size() == kAgreementSamples && mismatches == 0 && r.ok();
    o.detail = std::to_string(r.records.size()) + " reps, " + std::to_string(mismatches) + " mismatches " +
               first_violation(r);
    return o;
}

Outcome criterion_transfer() {
    const auto start = Clock::now();
    auto cfg = sweep("transfer", kTransferCochainsPerDegree);
    const auto r = run_command(cfg);
    const double secs = seconds_since(start);
    std::size_t checked = 0, passed = 0;
    for (const auto& rec : r.records)
        if (rec.contains("transfer_checks"))
            for (const auto& c : rec.at("transfer_checks")) {
                checked += c.at("checked").get<std::size_t>();
                passed += c.at("passed").get<std::size_t>();
            }
    Outcome o;
    o.pass = r.ok() && r.aggregate.at("covers") == 3 && r.aggregate.at("valid") == 3 && checked == passed &&
             checked > 0 && secs < kTransferBudgetSeconds;
    o.detail = std::to_string(passed) + "/" + std::to_string(checked) + " cochains over " +
               r.aggregate.at("valid").dump() + " valid covers, " + std::to_string(secs) + " s " + first_violation(r);
    return o;
}

Outcome criterion_meyer() {
    const auto start = Clock::now();
    std::size_t failures = 0;
    for (std::size_t i = 0; i < kMeyerTriples; ++i) {
        Rng rng = sample_rng(kSeed + 2, i);
        const int g = static_cast<int>(1 + i % 3);
        const auto t = check_meyer_triple(random_twist_word(rng, g).matrix(), random_twist_word(rng, g).matrix(),
                                          random_twist_word(rng, g).matrix());
        failures += !(t.symplectic && t.identity_holds && t.normalized && t.bounded);
    }
    std::size_t free_nonzero = 0;
    for (std::size_t i = 0; i < kFreeFactoringSamples; ++i) {
        Rng rng = sample_rng(kSeed + 3, i);
        const int g = static_cast<int>(1 + i % 3);
        const int h = static_cast<int>(1 + (i / 3) % 3);
        Representation<SpMatrix> rep;
        rep.genus = h;
        for (int k = 0; k < h; ++k) {
            const SpMatrix m = random_twist_word(rng, g).matrix();
            failures += !is_symplectic(m);
            rep.images.push_back(m);
            rep.images.push_back(SpMatrix::identity(g));
        }
        free_nonzero += signature_from_monodromy(rep).sigma != 0;
    }
    const double secs = seconds_since(start);
    Outcome o;
    o.pass = failures == 0 && free_nonzero == 0 && secs < kMeyerBudgetSeconds;
    o.detail = std::to_string(kMeyerTriples) + " triples with " + std::to_string(failures) + " failures, " +
               std::to_string(free_nonzero) + " free-factoring reps with nonzero signature, " + std::to_string(secs) +
               " s";
    return o;
}

Outcome criterion_inequality() {
    auto cfg = sweep("meyer", kMeyerSweepSamples);
    cfg.g_values = {1, 2, 3};
    cfg.h_values = {1, 2, 3};
    const auto r = run_command(cfg);
    std::size_t certified = 0, certified_failures = 0, sp_only = 0, sp_only_exceeding = 0;
    for (const auto& rec : r.records) {
        const auto sigma = detail::abs64(rec.at("sigma").get<std::int64_t>());
        const auto chi = detail::abs64(chi_of(rec.at("g").get<int>(), rec.at("h").get<int>()));
        const bool holds = 3 * sigma <= chi && 2 * sigma <= chi;
        if (rec.at("cert") == "certified-bundle") {
            ++certified;
            certified_failures += !holds;
        } else {
            ++sp_only;
            sp_only_exceeding += !holds;
        }
    }
    Outcome o;
    o.pass = certified > 0 && certified_failures == 0;
    o.detail = std::to_string(certified) + " certified samples with " + std::to_string(certified_failures) +
               " failures; " + std::to_string(sp_only) + " sp-only samples reported, " +
               std::to_string(sp_only_exceeding) + " exceed the bound (not gated)";
    return o;
}

Outcome criterion_determinism() {
    std::size_t mismatches = 0, runs = 0;
    for (const std::string command : {"cocycle-check", "milnor-wood", "meyer", "transfer"}) {
        auto cfg = sweep(command, command == "transfer" ? 5 : 60);
        std::string reference;
        for (int k = 0; k < kDeterminismRepeats; ++k) {
            cfg.jobs = 1 + k;
            const auto h = run_command(cfg).hash();
            if (k == 0) reference = h;
            mismatches += h != reference;
            ++runs;
        }
    }
    Outcome o;
    o.pass = mismatches == 0;
    o.detail = std::to_string(runs) + " runs, " + std::to_string(mismatches) + " hash mismatches";
    return o;
}

Outcome guarded(const std::function<Outcome()>& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        return {false, std::string("exception: ") + e.what()};
    }
}

}  // namespace

int main() {
    int failed = 0;
    auto report = [&](int id, const char* name, const Outcome& o) {
        std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    };

    RangeSweep range;
    const Outcome range_error = guarded([&] {
        range = range_sweep();
        return Outcome{};
    });
    report(1, "cocycle-range", range_error.pass ? criterion_range(range) : range_error);
    report(2, "defect-components", range_error.pass ? criterion_components(range) : range_error);
    report(3, "cocycle-identity", guarded(criterion_cocycle_identity));

    MilnorWoodRun mw;
    const Outcome mw_error = guarded([&] {
        mw = milnor_wood_run();
        return Outcome{};
    });
    report(4, "milnor-wood", mw_error.pass ? criterion_milnor_wood(mw) : mw_error);
    report(5, "torus-forcing", mw_error.pass ? guarded([&] { return criterion_torus(mw); }) : mw_error);
    report(6, "method-agreement", guarded(criterion_agreement));
    report(7, "transfer", guarded(criterion_transfer));
    report(8, "meyer-oracle", guarded(criterion_meyer));
    report(9, "signature-inequality", guarded(criterion_inequality));
    report(10, "determinism", guarded(criterion_determinism));
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
