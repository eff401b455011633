#include "dyndiv/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "dyndiv/divisibility.hpp"
#include "dyndiv/errors.hpp"
#include "dyndiv/map.hpp"
#include "dyndiv/modarith.hpp"
#include "dyndiv/parallel.hpp"
#include "dyndiv/permutation.hpp"
#include "dyndiv/primes.hpp"

#include "ntt.hpp"

namespace dyndiv {

bool single_p_cycle(std::int64_t d, std::uint64_t c, std::uint64_t p) {
    const std::uint64_t du = static_cast<std::uint64_t>(d);
    const std::uint64_t cm = c % p;
    std::uint64_t x = 0;
    for (std::uint64_t step = 1; step <= p; ++step) {
        x = orbit_step(x, du, cm, p);
        if (x == 0)
            return step == p;
    }
    return false;
}

namespace {

bool scan_keeps_prime(const ScanConfig& config, std::uint64_t p) {
    if (!config.residue_filter)
        return true;
    return !excluded_from_S(p, config.d).excluded;
}

// The T-set of the ratio figures excludes primes dividing d on top of the
// survivor classes; for d = 3 that leaves exactly 11 mod 12, for d = 9
// exactly 5 mod 6.
bool qualifies_for_expectation(std::int64_t d, std::uint64_t p) {
    if (d == 3)
        return p % 12 == 11;
    if (static_cast<std::uint64_t>(d) % p == 0)
        return false;
    return !excluded_from_S(p, d).excluded;
}

} // namespace

std::vector<std::uint64_t> scan_primes(const ScanConfig& config) {
    if (config.x_max < 3)
        throw std::invalid_argument("scan: X must be >= 3");
    if (config.d < 2)
        throw std::invalid_argument("scan: d must be >= 2");
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p : sieve_primes(config.x_max)) {
        if (p < 3)
            continue;
        if (scan_keeps_prime(config, p))
            primes.push_back(p);
    }
    return primes;
}

std::vector<ScanRecord> scan_s(const ScanConfig& config) {
    const std::vector<std::uint64_t> primes = scan_primes(config);
    // One worker per prime off a dynamic queue; per-prime slots make the
    // merged output independent of the worker count.
    std::vector<std::vector<ScanRecord>> per_prime(primes.size());
    parallel_for(primes.size(), config.jobs, [&](std::uint64_t i) {
        const std::uint64_t p = primes[i];
        const std::uint64_t c_hi = config.c_full_range ? p - 1 : (p - 1) / 2;
        for (std::uint64_t c = 1; c <= c_hi; ++c) {
            if (single_p_cycle(config.d, c, p))
                per_prime[i].push_back({p, c});
        }
    });
    std::vector<ScanRecord> records;
    for (auto& chunk : per_prime)
        records.insert(records.end(), chunk.begin(), chunk.end());
    return records;
}

double expectation(const ScanConfig& config, std::uint64_t c) {
    if (c < 1)
        throw std::invalid_argument("expectation: c must be >= 1");
    double sum = 0.0;
    for (std::uint64_t p : sieve_primes(config.x_max)) {
        if (p < 2 * c || p < 3)
            continue;
        if (qualifies_for_expectation(config.d, p))
            sum += 2.0 / static_cast<double>(p - 1);
    }
    return sum;
}

std::vector<BinRow> binned_counts(const std::vector<ScanRecord>& records,
                                  const ScanConfig& config, unsigned bin_width,
                                  unsigned window_half) {
    if (bin_width == 0)
        throw std::invalid_argument("binned_counts: bin width must be positive");
    std::uint64_t max_c = 0;
    for (const ScanRecord& r : records)
        max_c = std::max(max_c, r.c);
    const std::size_t bins = static_cast<std::size_t>(max_c / bin_width) + 1;

    std::vector<std::uint64_t> counts(bins, 0);
    for (const ScanRecord& r : records)
        ++counts[static_cast<std::size_t>(r.c / bin_width)];

    // Per-c expectations and Bernoulli variances, accumulated per bin. The
    // qualifying primes are sorted, so a running suffix sum over 2|c| keeps
    // this linear.
    std::vector<std::uint64_t> qualifying;
    for (std::uint64_t p : sieve_primes(config.x_max))
        if (p >= 3 && qualifies_for_expectation(config.d, p))
            qualifying.push_back(p);
    std::vector<double> exp_bin(bins, 0.0), var_bin(bins, 0.0);
    {
        double e = 0.0, v = 0.0;
        for (std::uint64_t p : qualifying) {
            double q = 2.0 / static_cast<double>(p - 1);
            e += q;
            v += q * (1.0 - q);
        }
        std::size_t next = 0; // primes below 2c drop out as c grows
        for (std::uint64_t c = 1; c <= max_c; ++c) {
            while (next < qualifying.size() && qualifying[next] < 2 * c) {
                double q = 2.0 / static_cast<double>(qualifying[next] - 1);
                e -= q;
                v -= q * (1.0 - q);
                ++next;
            }
            exp_bin[static_cast<std::size_t>(c / bin_width)] += e;
            var_bin[static_cast<std::size_t>(c / bin_width)] += v;
        }
    }

    std::vector<BinRow> rows(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        rows[b].bin_start = static_cast<std::uint64_t>(b) * bin_width;
        rows[b].count = counts[b];
        rows[b].expectation = exp_bin[b];
        rows[b].sigma = var_bin[b] > 0 ? std::sqrt(var_bin[b]) : 0.0;
    }

    // Sliding average of the bin-height step function over (x-w, x+w) at each
    // bin midpoint, integrating partial bin overlaps exactly.
    const double w = window_half;
    for (std::size_t b = 0; b < bins; ++b) {
        const double x = (static_cast<double>(b) + 0.5) * bin_width;
        const double lo = x - w, hi = x + w;
        double area = 0.0;
        const std::ptrdiff_t first = static_cast<std::ptrdiff_t>(std::floor(lo / bin_width));
        const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(std::floor((hi) / bin_width));
        for (std::ptrdiff_t j = first; j <= last; ++j) {
            if (j < 0 || j >= static_cast<std::ptrdiff_t>(bins))
                continue;
            const double bs = static_cast<double>(j) * bin_width;
            const double overlap =
                std::min(hi, bs + bin_width) - std::max(lo, bs);
            if (overlap > 0)
                area += overlap * static_cast<double>(counts[static_cast<std::size_t>(j)]);
        }
        rows[b].window_avg = area / (2.0 * w);
    }
    return rows;
}

std::vector<RatioRow> ratio_series(const ScanConfig& config,
                                   const std::vector<ScanRecord>& records) {
    std::vector<std::uint64_t> t_primes;
    for (std::uint64_t p : sieve_primes(config.x_max))
        if (p >= 3 && qualifies_for_expectation(config.d, p))
            t_primes.push_back(p);

    std::vector<std::uint64_t> hit_primes;
    for (const ScanRecord& r : records)
        if (hit_primes.empty() || hit_primes.back() != r.p)
            hit_primes.push_back(r.p);

    // The subseries column is meaningful only when T is coarser than the
    // 11 mod 12 class.
    const bool emit_sub =
        std::any_of(t_primes.begin(), t_primes.end(), [](std::uint64_t p) { return p % 12 != 11; });

    std::vector<RatioRow> rows;
    rows.reserve(t_primes.size());
    std::uint64_t t_count = 0, u_count = 0, u11_count = 0;
    for (std::uint64_t p : t_primes) {
        ++t_count;
        if (std::binary_search(hit_primes.begin(), hit_primes.end(), p)) {
            ++u_count;
            if (p % 12 == 11)
                ++u11_count;
        }
        RatioRow row{p, static_cast<double>(u_count) / static_cast<double>(t_count),
                     std::nullopt};
        if (emit_sub)
            row.ratio_11mod12 =
                u_count == 0 ? 0.0 : static_cast<double>(u11_count) / static_cast<double>(u_count);
        rows.push_back(row);
    }
    return rows;
}

namespace {

// Polynomial gcd over F_p on small dense vectors; returns the degree.
std::size_t poly_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b,
                            std::uint64_t p) {
    auto trim = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0)
            v.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        const std::uint64_t lead_inv = powmod(b.back(), p - 2, p);
        while (a.size() >= b.size()) {
            std::uint64_t factor = mulmod(a.back(), lead_inv, p);
            if (factor != 0) {
                std::size_t shift = a.size() - b.size();
                for (std::size_t i = 0; i < b.size(); ++i) {
                    std::uint64_t sub = mulmod(factor, b[i], p);
                    a[shift + i] = a[shift + i] >= sub ? a[shift + i] - sub
                                                       : a[shift + i] + p - sub;
                }
            }
            a.pop_back();
            trim(a);
            if (a.empty())
                break;
        }
        std::swap(a, b);
    }
    return a.empty() ? 0 : a.size() - 1;
}

} // namespace

DynatomicCount dynatomic_root_count(std::int64_t d, std::uint64_t p, std::size_t mem_cap_bytes) {
    if (!is_prime_u64(p))
        throw std::invalid_argument("dynatomic_root_count: p must be prime");
    if (d < 2)
        throw std::invalid_argument("dynatomic_root_count: d must be >= 2");

    DynatomicCount out{0, std::nullopt};
    for (std::uint64_t c = 1; c < p; ++c)
        if (single_p_cycle(d, c, p))
            ++out.by_scan;

    // Dense symbolic build of Psi_{p,0}(c) = W_p(c) mod p: p-1 rounds of
    // W <- W^d + c starting from W_1 = c. Degree d^(p-1).
    long double deg_estimate = 1.0L;
    for (std::uint64_t i = 1; i < p; ++i) {
        deg_estimate *= static_cast<long double>(d);
        if (deg_estimate * sizeof(std::uint8_t) > static_cast<long double>(mem_cap_bytes))
            return out; // method B unavailable at this size
    }

    try {
        const std::size_t final_len = static_cast<std::size_t>(deg_estimate) + 1;
        detail::poly_scratch_reserve(std::bit_ceil(final_len), mem_cap_bytes);
        std::vector<std::uint8_t> psi;
        psi.reserve(final_len);
        psi.assign({0, 1}); // W_1(c) = c
        for (std::uint64_t round = 1; round < p; ++round) {
            detail::poly_pow_mod_p(psi, static_cast<unsigned>(d), static_cast<std::uint32_t>(p),
                                   mem_cap_bytes);
            psi[1] = static_cast<std::uint8_t>((psi[1] + 1) % p); // + c
        }
        if (psi[0] != 0)
            throw std::logic_error("dynatomic_root_count: Psi has nonzero constant term");

        // Phi = Psi / c, then fold mod c^(p-1) - 1: distinct nonzero roots of
        // Phi are exactly deg gcd(Phi, c^(p-1) - 1). Coefficients are < 256,
        // so the fold accumulates raw and reduces once.
        std::vector<std::uint64_t> folded(p - 1, 0);
        std::size_t idx = 0;
        for (std::size_t e = 1; e < psi.size(); ++e) {
            folded[idx] += psi[e];
            if (++idx == p - 1)
                idx = 0;
        }
        for (std::uint64_t& v : folded)
            v %= p;
        std::vector<std::uint64_t> cyc(p, 0); // c^(p-1) - 1
        cyc[0] = p - 1;
        cyc[p - 1] = 1;
        out.by_polynomial = poly_gcd_degree(cyc, std::move(folded), p);
    } catch (const ResourceLimitError&) {
        // method B unavailable; the scan count stands alone
    }
    return out;
}

// ---- CSV ------------------------------------------------------------------

namespace {
void write_fixed6(std::ostream& os, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    os << buf;
}
} // namespace

void write_pvsc_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
    os << "p,c\n";
    for (const ScanRecord& r : records)
        os << r.p << ',' << r.c << '\n';
}

void write_pvsc_scaled_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
    os << "p,c_over_p\n";
    for (const ScanRecord& r : records) {
        os << r.p << ',';
        write_fixed6(os, static_cast<double>(r.c) / static_cast<double>(r.p));
        os << '\n';
    }
}

void write_binned_csv(std::ostream& os, const std::vector<BinRow>& rows) {
    os << "bin_start,count,window_avg,expectation\n";
    for (const BinRow& row : rows) {
        os << row.bin_start << ',' << row.count << ',';
        write_fixed6(os, row.window_avg);
        os << ',';
        write_fixed6(os, row.expectation);
        os << '\n';
    }
}

void write_ratio_csv(std::ostream& os, const std::vector<RatioRow>& rows) {
    const bool sub = !rows.empty() && rows.front().ratio_11mod12.has_value();
    os << (sub ? "X,ratio,ratio_11mod12\n" : "X,ratio\n");
    for (const RatioRow& row : rows) {
        os << row.x << ',';
        write_fixed6(os, row.ratio);
        if (sub) {
            os << ',';
            write_fixed6(os, row.ratio_11mod12.value_or(0.0));
        }
        os << '\n';
    }
}

} // namespace dyndiv
