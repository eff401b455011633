#include "ntt.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <new>
#include <stdexcept>

#include <sys/mman.h>

#include "dyndiv/errors.hpp"

namespace dyndiv::detail {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// NTT-friendly prime 27 * 2^56 + 1 (< 2^61, so lazy [0, 2P) arithmetic never
// overflows), primitive root 5.
constexpr u64 P = 1945555039024054273ull;
constexpr u64 P2 = 2 * P;
constexpr u64 G = 5;
constexpr unsigned MAX_RANK = 56;

constexpr u64 neg_inv_p() {
    u64 inv = P; // Newton: inv *= 2 - P*inv, five rounds give P^-1 mod 2^64
    for (int i = 0; i < 5; ++i)
        inv *= 2 - P * inv;
    return ~inv + 1; // -P^-1 mod 2^64
}
constexpr u64 PINV = neg_inv_p();

// Montgomery REDC; result < 2P for t < P * 2^64.
constexpr u64 reduce(u128 t) {
    u64 m = static_cast<u64>(t) * PINV;
    return static_cast<u64>((t + static_cast<u128>(m) * P) >> 64);
}

constexpr u64 mont_mul(u64 a, u64 b) { return reduce(static_cast<u128>(a) * b); }

constexpr u64 r2() { // (2^64)^2 mod P
    u128 r = (u128(1) << 64) % P;
    return static_cast<u64>(r * r % P);
}
constexpr u64 R2 = r2();

constexpr u64 to_mont(u64 a) { return mont_mul(a, R2); }
constexpr u64 from_mont(u64 a) {
    u64 v = reduce(a);
    return v >= P ? v - P : v;
}

constexpr u64 lazy_reduce(u64 v) { return v >= P2 ? v - P2 : v; }

constexpr u64 mont_pow(u64 base_mont, u64 e) {
    u64 r = to_mont(1);
    while (e) {
        if (e & 1)
            r = mont_mul(r, base_mont);
        base_mont = mont_mul(base_mont, base_mont);
        e >>= 1;
    }
    return r;
}

constexpr u64 mont_inv(u64 a_mont) { return mont_pow(a_mont, P - 2); }

// Twiddle advance tables in the usual product-of-roots layout: after block s,
// multiply the running rotation by rate[countr_one(s)].
struct Tables {
    std::array<u64, MAX_RANK + 1> root, iroot; // root[i] has order 2^i
    std::array<u64, MAX_RANK - 1> rate2, irate2;
    std::array<u64, MAX_RANK - 2> rate3, irate3;

    constexpr Tables() : root{}, iroot{}, rate2{}, irate2{}, rate3{}, irate3{} {
        root[MAX_RANK] = mont_pow(to_mont(G), (P - 1) >> MAX_RANK);
        iroot[MAX_RANK] = mont_inv(root[MAX_RANK]);
        for (int i = MAX_RANK - 1; i >= 0; --i) {
            root[i] = mont_mul(root[i + 1], root[i + 1]);
            iroot[i] = mont_mul(iroot[i + 1], iroot[i + 1]);
        }
        u64 prod = to_mont(1), iprod = to_mont(1);
        for (unsigned i = 0; i <= MAX_RANK - 2; ++i) {
            rate2[i] = mont_mul(root[i + 2], prod);
            irate2[i] = mont_mul(iroot[i + 2], iprod);
            prod = mont_mul(prod, iroot[i + 2]);
            iprod = mont_mul(iprod, root[i + 2]);
        }
        prod = to_mont(1), iprod = to_mont(1);
        for (unsigned i = 0; i <= MAX_RANK - 3; ++i) {
            rate3[i] = mont_mul(root[i + 3], prod);
            irate3[i] = mont_mul(iroot[i + 3], iprod);
            prod = mont_mul(prod, iroot[i + 3]);
            iprod = mont_mul(iprod, root[i + 3]);
        }
    }
};
constexpr Tables tables;

// Forward transform (decimation order matching the rate tables); radix-4
// passes with a radix-2 pass for an odd level count. All values stay in
// [0, 2P). `first_len` skips levels the caller has already satisfied.
void ntt_forward(u64* a, unsigned h, unsigned first_len) {
    unsigned len = first_len;
    while (len < h) {
        if (h - len == 1) {
            const std::size_t half = std::size_t(1) << (h - 1 - len);
            u64 rot = to_mont(1);
            for (std::size_t s = 0; s < (std::size_t(1) << len); ++s) {
                u64* __restrict lo = a + (s << (h - len));
                u64* __restrict hi = lo + half;
                for (std::size_t i = 0; i < half; ++i) {
                    u64 l = lo[i];
                    u64 r = mont_mul(hi[i], rot);
                    lo[i] = lazy_reduce(l + r);
                    hi[i] = lazy_reduce(l - r + P2);
                }
                if (s + 1 < (std::size_t(1) << len))
                    rot = mont_mul(rot, tables.rate2[std::countr_one(s)]);
            }
            len += 1;
        } else {
            const std::size_t q = std::size_t(1) << (h - 2 - len);
            const u64 imag = tables.root[2];
            u64 rot = to_mont(1);
            for (std::size_t s = 0; s < (std::size_t(1) << len); ++s) {
                const u64 rot2 = mont_mul(rot, rot);
                const u64 rot3 = mont_mul(rot2, rot);
                u64* __restrict p0 = a + (s << (h - len));
                u64* __restrict p1 = p0 + q;
                u64* __restrict p2 = p1 + q;
                u64* __restrict p3 = p2 + q;
                // unrolled 2x; q is a power of two, so only q == 1 needs the
                // scalar tail
                auto kernel = [&](std::size_t i) {
                    u64 a0 = p0[i];
                    u64 a1 = mont_mul(p1[i], rot);
                    u64 a2 = mont_mul(p2[i], rot2);
                    u64 a3 = mont_mul(p3[i], rot3);
                    u64 t02p = lazy_reduce(a0 + a2);
                    u64 t02m = lazy_reduce(a0 - a2 + P2);
                    u64 t13p = lazy_reduce(a1 + a3);
                    u64 t13m = mont_mul(a1 - a3 + P2, imag);
                    p0[i] = lazy_reduce(t02p + t13p);
                    p1[i] = lazy_reduce(t02p - t13p + P2);
                    p2[i] = lazy_reduce(t02m + t13m);
                    p3[i] = lazy_reduce(t02m - t13m + P2);
                };
                for (std::size_t i = 0; i + 2 <= q; i += 2) {
                    kernel(i);
                    kernel(i + 1);
                }
                if (q & 1)
                    kernel(q - 1);
                if (s + 1 < (std::size_t(1) << len))
                    rot = mont_mul(rot, tables.rate3[std::countr_one(s)]);
            }
            len += 2;
        }
    }
}

// Inverse of ntt_forward up to the 1/n factor (applied by the caller's
// writeback). All values stay in [0, 2P).
void ntt_inverse(u64* a, unsigned h) {
    unsigned len = h;
    while (len) {
        if (len == 1) {
            const std::size_t half = std::size_t(1) << (h - 1);
            u64* __restrict lo = a;
            u64* __restrict hi = a + half;
            for (std::size_t i = 0; i < half; ++i) {
                u64 l = lo[i], r = hi[i];
                lo[i] = lazy_reduce(l + r);
                hi[i] = lazy_reduce(l - r + P2); // block twiddle is 1 at the top level
            }
            len -= 1;
        } else {
            const std::size_t q = std::size_t(1) << (h - len);
            const u64 iimag = tables.iroot[2];
            u64 irot = to_mont(1);
            for (std::size_t s = 0; s < (std::size_t(1) << (len - 2)); ++s) {
                const u64 irot2 = mont_mul(irot, irot);
                const u64 irot3 = mont_mul(irot2, irot);
                u64* __restrict p0 = a + (s << (h - len + 2));
                u64* __restrict p1 = p0 + q;
                u64* __restrict p2 = p1 + q;
                u64* __restrict p3 = p2 + q;
                auto kernel = [&](std::size_t i) {
                    u64 a0 = p0[i];
                    u64 a1 = p1[i];
                    u64 a2 = p2[i];
                    u64 a3 = p3[i];
                    u64 s01 = lazy_reduce(a0 + a1);
                    u64 d01 = lazy_reduce(a0 - a1 + P2);
                    u64 s23 = lazy_reduce(a2 + a3);
                    u64 d23i = mont_mul(a2 - a3 + P2, iimag);
                    p0[i] = lazy_reduce(s01 + s23);
                    p1[i] = mont_mul(d01 + d23i, irot);
                    p2[i] = mont_mul(s01 - s23 + P2, irot2);
                    p3[i] = mont_mul(d01 - d23i + P2, irot3);
                };
                for (std::size_t i = 0; i + 2 <= q; i += 2) {
                    kernel(i);
                    kernel(i + 1);
                }
                if (q & 1)
                    kernel(q - 1);
                if (s + 1 < (std::size_t(1) << (len - 2)))
                    irot = mont_mul(irot, tables.irate3[std::countr_one(s)]);
            }
            len -= 2;
        }
    }
}

// Transform scratch on an anonymous mapping with transparent-hugepage advice;
// grows monotonically and is reused across calls (repeated growth would
// re-fault hundreds of MB on every step).
class Scratch {
  public:
    ~Scratch() { release(); }

    u64* get(std::size_t elements) {
        if (elements > capacity_) {
            release();
            std::size_t bytes = elements * sizeof(u64);
            void* m = mmap(nullptr, bytes, PROT_READ | PROT_WRITE,
                           MAP_PRIVATE | MAP_ANONYMOUS, -1, 0);
            if (m == MAP_FAILED)
                throw std::bad_alloc();
            madvise(m, bytes, MADV_HUGEPAGE);
            // touch one byte per huge-page stride so population happens in
            // large faults up front
            auto* bytes_ptr = static_cast<unsigned char*>(m);
            for (std::size_t off = 0; off < bytes; off += std::size_t(2) << 20)
                bytes_ptr[off] = 0;
            data_ = static_cast<u64*>(m);
            capacity_ = elements;
        }
        return data_;
    }

  private:
    void release() {
        if (data_)
            munmap(data_, capacity_ * sizeof(u64));
        data_ = nullptr;
        capacity_ = 0;
    }
    u64* data_ = nullptr;
    std::size_t capacity_ = 0;
};

thread_local Scratch scratch;

} // namespace

void poly_scratch_reserve(std::size_t elements, std::size_t mem_cap_bytes) {
    if (elements * sizeof(u64) > mem_cap_bytes)
        throw ResourceLimitError("poly_scratch_reserve: transform buffer exceeds the memory cap");
    scratch.get(elements);
}

std::vector<std::uint8_t> poly_mul_naive(const std::vector<std::uint8_t>& a,
                                         const std::vector<std::uint8_t>& b, std::uint32_t p) {
    if (a.empty() || b.empty())
        return {};
    std::vector<std::uint8_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<std::uint8_t>(
                (out[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    return out;
}

void poly_pow_mod_p(std::vector<std::uint8_t>& coeffs, unsigned e, std::uint32_t p,
                    std::size_t mem_cap_bytes) {
    if (e == 0)
        throw std::invalid_argument("poly_pow_mod_p: exponent must be >= 1");
    if (p < 2 || p > 255)
        throw std::invalid_argument("poly_pow_mod_p: p must be a prime below 256");
    if (e == 1 || coeffs.empty())
        return;
    const std::size_t deg = coeffs.size() - 1;
    const std::size_t out_len = e * deg + 1;

    // Exact integer coefficients of the e-th power are bounded by
    // (p-1)^e * (deg+1)^(e-1); they must stay below the NTT modulus.
    long double bound = 1.0L;
    for (unsigned i = 0; i < e; ++i)
        bound *= p - 1;
    for (unsigned i = 0; i + 1 < e; ++i)
        bound *= static_cast<long double>(deg + 1);
    if (bound >= static_cast<long double>(P))
        throw ResourceLimitError("poly_pow_mod_p: coefficients would overflow the NTT modulus");

    const std::size_t n = std::bit_ceil(out_len);
    if (n > (std::size_t(1) << MAX_RANK))
        throw ResourceLimitError("poly_pow_mod_p: transform size exceeds the NTT order");
    if (n * sizeof(u64) > mem_cap_bytes)
        throw ResourceLimitError("poly_pow_mod_p: transform buffer exceeds the memory cap");
    const unsigned h = static_cast<unsigned>(std::countr_zero(n));

    u64* work = scratch.get(n);
    unsigned first_len = 0;
    if (n >= 2 && deg < n / 2) {
        // Upper half starts zero, so level 0 degenerates to duplicating the
        // lower half; fuse that into the expansion.
        for (std::size_t i = 0; i <= deg; ++i)
            work[i] = work[i + n / 2] = to_mont(coeffs[i]);
        std::memset(work + deg + 1, 0, (n / 2 - deg - 1) * sizeof(u64));
        std::memset(work + n / 2 + deg + 1, 0, (n / 2 - deg - 1) * sizeof(u64));
        first_len = 1;
    } else {
        for (std::size_t i = 0; i <= deg; ++i)
            work[i] = to_mont(coeffs[i]);
        std::memset(work + deg + 1, 0, (n - deg - 1) * sizeof(u64));
    }
    ntt_forward(work, h, first_len);
    for (std::size_t i = 0; i < n; ++i) {
        u64 base = work[i], acc = base;
        for (unsigned j = 1; j < e; ++j)
            acc = mont_mul(acc, base);
        work[i] = acc;
    }
    ntt_inverse(work, h);

    // Writeback folds in the 1/n factor and reduces mod p with a
    // multiply-based remainder; a hardware divide per coefficient would
    // dominate at 2^26 elements.
    const u64 inv_n = mont_inv(to_mont(n));
    const u64 magic = ~u64(0) / p;
    coeffs.assign(out_len, 0);
    for (std::size_t i = 0; i < out_len; ++i) {
        u64 v = from_mont(mont_mul(work[i], inv_n));
        u64 q = static_cast<u64>((static_cast<u128>(v) * magic) >> 64);
        u64 r = v - q * p;
        while (r >= p)
            r -= p;
        coeffs[i] = static_cast<std::uint8_t>(r);
    }
}

} // namespace dyndiv::detail
