// dyndiv: index divisibility sets/graphs, permutation parity filters, Hensel
// lifts and the S_{d,c} scan harness for the family x^d + c.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>

#include <CLI11.hpp>

#include "dyndiv/div_graph.hpp"
#include "dyndiv/divisibility.hpp"
#include "dyndiv/errors.hpp"
#include "dyndiv/experiments.hpp"
#include "dyndiv/hensel.hpp"
#include "dyndiv/orbit.hpp"
#include "dyndiv/parallel.hpp"
#include "dyndiv/permutation.hpp"
#include "dyndiv/primes.hpp"

namespace {

struct GlobalOpts {
    unsigned jobs = dyndiv::default_jobs();
    std::uint64_t seed = 0;
    std::size_t digit_cap = 1'000'000;
    std::uint64_t budget_ms = 5000;
};

void apply_jobs_env(GlobalOpts& opts) {
    if (const char* env = std::getenv("DYNDIV_JOBS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 1)
            opts.jobs = static_cast<unsigned>(v);
    }
}

int cmd_orbit(std::int64_t d, std::int64_t c, std::uint64_t k,
              std::optional<std::uint64_t> mod, const GlobalOpts& opts) {
    dyndiv::Map map(d, c);
    if (mod) {
        dyndiv::ModOrbit orbit = dyndiv::orbit_mod(map, *mod);
        std::cout << "tail=" << orbit.tail << " period=" << orbit.period << "\n";
        std::cout << "residues=";
        for (std::size_t i = 0; i < orbit.residues.size(); ++i)
            std::cout << (i ? "," : "") << orbit.residues[i];
        std::cout << "\n";
        return 0;
    }
    dyndiv::BigOrbit orbit = dyndiv::orbit_exact(map, k, {opts.digit_cap});
    std::cout << "n,W_n\n";
    for (std::size_t n = 0; n < orbit.terms.size(); ++n)
        std::cout << n << ',' << orbit.terms[n] << "\n";
    return 0;
}

int cmd_graph(std::int64_t d, std::int64_t c, std::uint64_t bound, const std::string& format,
              const std::string& out_path) {
    dyndiv::DivGraph graph = dyndiv::build_graph(dyndiv::Map(d, c), bound);
    std::string text = dyndiv::export_graph(graph, format);
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open output file: " + out_path);
        out << text;
    }
    std::cerr << graph.vertices.size() << " vertices, " << graph.edges.size() << " edges\n";
    return 0;
}

int cmd_sets(std::int64_t d, std::int64_t c, std::uint64_t bound, const GlobalOpts& opts) {
    dyndiv::Map map(d, c);
    auto join = [](const std::vector<std::uint64_t>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? " " : "") + std::to_string(v[i]);
        return s;
    };
    std::cout << "D: " << join(dyndiv::enumerate_D(map, bound, opts.jobs)) << "\n";
    std::vector<std::uint64_t> P = dyndiv::enumerate_P(map, bound, opts.jobs);
    std::cout << "P: " << join(P) << "\n";
    std::vector<std::uint64_t> S;
    for (std::uint64_t p : dyndiv::sieve_primes(bound))
        if (dyndiv::in_S(map, p))
            S.push_back(p);
    std::cout << "S: " << join(S) << "\n";
    dyndiv::Classification cls = dyndiv::classify(map);
    std::cout << "classification: " << dyndiv::to_string(cls.kind) << "\n";
    if (cls.even_sets) {
        if (cls.even_sets->p_all_primes) {
            std::cout << "exact_P: all primes\n";
        } else {
            std::cout << "exact_P:";
            for (std::int64_t p : cls.even_sets->p_primes)
                std::cout << ' ' << p;
            std::cout << "\n";
        }
        std::cout << "exact_S:" << (cls.even_sets->s_has_two ? " 2" : " (empty)") << "\n";
    }
    return 0;
}

int cmd_scan(std::int64_t d, std::uint64_t x_max, bool full_range, bool c_full,
             const std::string& out_dir, const GlobalOpts& opts) {
    dyndiv::ScanConfig config;
    config.d = d;
    config.x_max = x_max;
    config.residue_filter = !full_range;
    config.c_full_range = c_full;
    config.jobs = opts.jobs;

    std::vector<dyndiv::ScanRecord> records = dyndiv::scan_s(config);
    std::vector<dyndiv::BinRow> bins = dyndiv::binned_counts(records, config);
    std::vector<dyndiv::RatioRow> ratios = dyndiv::ratio_series(config, records);

    std::filesystem::create_directories(out_dir);
    auto emit = [&](const std::string& name, auto&& writer) {
        std::ofstream out(std::filesystem::path(out_dir) / name, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open output file: " + name);
        writer(out);
    };
    emit("pvsc.csv", [&](std::ostream& os) { dyndiv::write_pvsc_csv(os, records); });
    emit("pvsc_scaled.csv", [&](std::ostream& os) { dyndiv::write_pvsc_scaled_csv(os, records); });
    emit("binned.csv", [&](std::ostream& os) { dyndiv::write_binned_csv(os, bins); });
    emit("ratio.csv", [&](std::ostream& os) { dyndiv::write_ratio_csv(os, ratios); });

    std::size_t soft_warnings = 0;
    for (const dyndiv::BinRow& row : bins) {
        double dev = std::abs(static_cast<double>(row.count) - row.expectation);
        if (row.sigma > 0 && dev > 3.0 * row.sigma) {
            ++soft_warnings;
            std::cerr << "warn: bin " << row.bin_start << " count " << row.count
                      << " deviates from expectation " << row.expectation << " by more than 3 sigma\n";
        }
    }
    std::cerr << "hits=" << records.size();
    if (!ratios.empty())
        std::cerr << " ratio_at_X=" << ratios.back().ratio;
    std::cerr << " soft_warnings=" << soft_warnings << "\n";
    return 0;
}

int cmd_lift(std::int64_t d, unsigned n) {
    dyndiv::LiftResult result = dyndiv::hensel_lift(d, n);
    std::cout << "modulus=" << result.modulus << "\n";
    for (std::size_t i = 0; i < result.lifts.size(); ++i)
        std::cout << "a_" << i << "=" << result.lifts[i] << "\n";
    for (const mpz_class& a : result.lifts) {
        auto [w, wp] = dyndiv::orbit_with_derivative(d, a, static_cast<std::uint64_t>(d),
                                                     result.modulus);
        (void)wp;
        if (w != 0) {
            std::cerr << "verification failed for lift " << a << "\n";
            return 2;
        }
    }
    std::cerr << result.lifts.size() << " lifts verified\n";
    return 0;
}

int cmd_parity(std::int64_t d, std::optional<std::uint64_t> p, std::optional<std::uint64_t> sweep) {
    if (p) {
        if (std::gcd(static_cast<std::uint64_t>(d), *p - 1) != 1) {
            std::cout << "p=" << *p << " d=" << d << " permutation=no excluded=yes reason="
                      << dyndiv::to_string(dyndiv::ExclusionVerdict::Reason::NotPermutation)
                      << "\n";
            return 0;
        }
        dyndiv::CycleStructure cs = dyndiv::cycle_structure(*p, d);
        dyndiv::ParityReport report = dyndiv::parity(*p, d);
        std::cout << "p=" << *p << " d=" << d << " cycles=";
        bool first = true;
        for (auto [len, count] : cs.counts) {
            std::cout << (first ? "" : " ") << len << "^" << count;
            first = false;
        }
        std::cout << " transpositions=" << report.transpositions
                  << " parity=" << (report.is_even ? "even" : "odd");
        dyndiv::ExclusionVerdict verdict = dyndiv::excluded_from_S(*p, d);
        if (verdict.excluded)
            std::cout << " excluded=yes reason=" << dyndiv::to_string(verdict.reason) << "\n";
        else
            std::cout << " excluded=no (not excluded)\n";
        return 0;
    }
    if (!sweep)
        throw CLI::ValidationError("parity", "either -p or --sweep is required");
    std::cout << "p,parity,excluded\n";
    for (std::uint64_t q : dyndiv::sieve_primes(*sweep)) {
        if (q < 3)
            continue;
        dyndiv::ExclusionVerdict verdict = dyndiv::excluded_from_S(q, d);
        std::string par = "-";
        if (verdict.reason != dyndiv::ExclusionVerdict::Reason::NotPermutation)
            par = dyndiv::parity(q, d).is_even ? "even" : "odd";
        std::cout << q << ',' << par << ',' << (verdict.excluded ? "yes" : "no") << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"index divisibility and cyclic orbits for x^d + c"};
    app.require_subcommand(1);
    GlobalOpts opts;
    app.add_option("--jobs,-j", opts.jobs, "worker threads (env DYNDIV_JOBS overrides)");
    app.add_option("--seed", opts.seed, "seed for factorization randomness");
    app.add_option("--digit-cap", opts.digit_cap, "decimal digit cap for exact orbit terms");
    app.add_option("--time-budget-ms", opts.budget_ms, "factorization time budget");

    std::int64_t d = 2, c = 0;
    std::uint64_t k = 10, bound = 100, x_max = 2000;
    unsigned lift_n = 1;
    std::optional<std::uint64_t> mod, parity_p, parity_sweep;
    std::string format = "dot", out_path, out_dir = ".";
    bool full_range = false, c_full = false;

    CLI::App* orbit = app.add_subcommand("orbit", "exact or modular orbit of 0");
    orbit->add_option("-d", d, "exponent")->required();
    orbit->add_option("-c", c, "constant")->required();
    orbit->add_option("-k", k, "number of terms beyond W_0");
    orbit->add_option("--mod", mod, "modulus: print tail/period/residues instead");

    CLI::App* graph = app.add_subcommand("graph", "index divisibility graph up to a bound");
    graph->add_option("-d", d, "exponent")->required();
    graph->add_option("-c", c, "constant")->required();
    graph->add_option("-B", bound, "vertex bound")->required();
    graph->add_option("--format", format, "dot or json");
    graph->add_option("-o,--output", out_path, "output file (default stdout)");

    CLI::App* sets = app.add_subcommand("sets", "D, P, S up to a bound plus classification");
    sets->add_option("-d", d, "exponent")->required();
    sets->add_option("-c", c, "constant")->required();
    sets->add_option("-B", bound, "bound")->required();

    CLI::App* scan = app.add_subcommand("scan", "S_{d,c} scan with aggregate tables");
    scan->add_option("-d", d, "exponent")->required();
    scan->add_option("-X", x_max, "prime bound")->required();
    scan->add_flag("--full-range", full_range, "scan all odd primes (disable the residue filter)");
    scan->add_flag("--c-full", c_full, "scan c over [1, p-1] instead of [1, (p-1)/2]");
    scan->add_option("--out", out_dir, "output directory for the CSV files");

    CLI::App* lift = app.add_subcommand("lift", "Hensel lifts of the c-classes mod d^n");
    lift->add_option("-d", d, "prime base")->required();
    lift->add_option("-n", lift_n, "target exponent")->required();

    CLI::App* parity = app.add_subcommand("parity", "cycle structure and parity of x^d on Z/pZ");
    parity->add_option("-d", d, "exponent")->required();
    parity->add_option("-p", parity_p, "single prime query");
    parity->add_option("--sweep", parity_sweep, "emit CSV for all odd primes up to the bound");

    CLI11_PARSE(app, argc, argv);
    apply_jobs_env(opts);

    try {
        if (orbit->parsed())
            return cmd_orbit(d, c, k, mod, opts);
        if (graph->parsed())
            return cmd_graph(d, c, bound, format, out_path);
        if (sets->parsed())
            return cmd_sets(d, c, bound, opts);
        if (scan->parsed())
            return cmd_scan(d, x_max, full_range, c_full, out_dir, opts);
        if (lift->parsed())
            return cmd_lift(d, lift_n);
        if (parity->parsed())
            return cmd_parity(d, parity_p, parity_sweep);
    } catch (const dyndiv::ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
