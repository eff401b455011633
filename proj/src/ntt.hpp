#pragma once

#include <cstdint>
#include <vector>

namespace dyndiv::detail {

/// Raise a dense polynomial over F_p (tiny prime p, coefficients in [0, p))
/// to the e-th power, exactly, through a 61-bit NTT modulus (p < 256). The coefficient
/// vector is resized from deg+1 to e*deg+1.
///
/// Throws ResourceLimitError when the transform buffer would exceed
/// mem_cap_bytes or when exact integer coefficients of the e-th power could
/// overflow the NTT modulus.
void poly_pow_mod_p(std::vector<std::uint8_t>& coeffs, unsigned e, std::uint32_t p,
                    std::size_t mem_cap_bytes);

/// Pre-grow the transform scratch to `elements` u64 slots in one mapping.
/// Callers that iterate poly_pow_mod_p at growing degrees avoid re-faulting
/// a fresh buffer on every step.
void poly_scratch_reserve(std::size_t elements, std::size_t mem_cap_bytes);

/// Schoolbook reference, for tests and tiny inputs.
std::vector<std::uint8_t> poly_mul_naive(const std::vector<std::uint8_t>& a,
                                         const std::vector<std::uint8_t>& b, std::uint32_t p);

} // namespace dyndiv::detail
