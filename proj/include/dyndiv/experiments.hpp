#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace dyndiv {

/// Scan parameters for the S_{d,c} experiment: all primes p <= x_max in the
/// residue classes that survive excluded_from_S (unless disabled), with c
/// running over [1, (p-1)/2] (or [1, p-1] when c_full_range).
struct ScanConfig {
    std::int64_t d = 3;
    std::uint64_t x_max = 2000;
    bool residue_filter = true;
    bool c_full_range = false;
    unsigned jobs = 1;
};

/// A single hit: p is prime and the orbit of 0 mod p under x^d + c is one
/// p-cycle.
struct ScanRecord {
    std::uint64_t p;
    std::uint64_t c;
    friend auto operator<=>(const ScanRecord&, const ScanRecord&) = default;
};

/// Hot primitive behind in_S for raw integer parameters.
bool single_p_cycle(std::int64_t d, std::uint64_t c, std::uint64_t p);

/// Primes <= x_max that the scan visits under `config` (p >= 3; filtered
/// unless residue_filter is off).
std::vector<std::uint64_t> scan_primes(const ScanConfig& config);

/// Deterministic (p asc, c asc) list of hits, independent of jobs.
std::vector<ScanRecord> scan_s(const ScanConfig& config);

/// Heuristic expected hit count for a fixed c: sum of 2/(p-1) over qualifying
/// primes p in [2|c|, x_max]. For d = 3 the class is 11 mod 12; for other d
/// the qualifying classes are the excluded_from_S survivors with p not
/// dividing d.
double expectation(const ScanConfig& config, std::uint64_t c);

/// Histogram of hit c-values in fixed-width bins, with a centered sliding
/// average of the bin heights and the per-bin expectation and Bernoulli-model
/// sigma.
struct BinRow {
    std::uint64_t bin_start;
    std::uint64_t count;
    double window_avg;
    double expectation;
    double sigma;
};

std::vector<BinRow> binned_counts(const std::vector<ScanRecord>& records,
                                  const ScanConfig& config, unsigned bin_width = 6,
                                  unsigned window_half = 60);

/// Running ratio #U/#T sampled at each prime of T, where T is the qualifying
/// class (11 mod 12 for d = 3, 5 mod 6 for d = 9) and U holds the T-primes
/// with at least one hit. The 11-mod-12 subseries column appears whenever T
/// is coarser than that class.
struct RatioRow {
    std::uint64_t x;
    double ratio;
    std::optional<double> ratio_11mod12;
};

std::vector<RatioRow> ratio_series(const ScanConfig& config,
                                   const std::vector<ScanRecord>& records);

/// Number of c in [1, p-1] with p in S_{d,c}, counted two ways: direct scan,
/// and the count of distinct nonzero roots of the dynatomic factor
/// Psi_{p,0}/c mod p (dense symbolic build; unavailable when the polynomial
/// would not fit the memory cap).
struct DynatomicCount {
    std::uint64_t by_scan;
    std::optional<std::uint64_t> by_polynomial;
};

DynatomicCount dynatomic_root_count(std::int64_t d, std::uint64_t p,
                                    std::size_t mem_cap_bytes = std::size_t(1) << 30);

// CSV emitters (header row, LF endings, first column ascending).
void write_pvsc_csv(std::ostream& os, const std::vector<ScanRecord>& records);
void write_pvsc_scaled_csv(std::ostream& os, const std::vector<ScanRecord>& records);
void write_binned_csv(std::ostream& os, const std::vector<BinRow>& rows);
void write_ratio_csv(std::ostream& os, const std::vector<RatioRow>& rows);

} // namespace dyndiv
