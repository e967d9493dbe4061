#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

#include "untwist/errors.hpp"

namespace untwist {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int binomial(const Int& n, std::uint64_t k) {
    if (n < 0) fail(ErrorCode::domain, "binomial: negative n");
    if (Int(k) > n) return 0;
    Int r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r *= n - Int(i);
        r /= Int(i) + 1;  // exact at each step
    }
    return r;
}

inline Int factorial(std::uint64_t n) {
    Int r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int ipow(std::uint64_t base, std::uint64_t exp) {
    Int r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace untwist
