#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace ff {

using BigInt = boost::multiprecision::mpz_int;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

// Largest b with b^k <= n, for k >= 1.
std::uint64_t integer_root_floor(std::uint64_t n, unsigned k);

// b with b^k == n, if one exists.
std::optional<std::uint64_t> exact_root(std::uint64_t n, unsigned k);

// floor(log2(n)) for n >= 1.
unsigned floor_log2(std::uint64_t n);

bool is_prime_u64(std::uint64_t n);

}  // namespace ff
