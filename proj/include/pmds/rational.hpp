/*
 * Copyright 2026 pmdskit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pmds {

/// Exact binomial coefficient; C(n, k) = 0 for k < 0 or k > n.
/// Throws on 64-bit overflow (desk-scale parameters never get close).
inline std::uint64_t binomial(std::uint64_t n, std::int64_t k) {
    if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
    std::uint64_t kk = static_cast<std::uint64_t>(k);
    if (kk > n - kk) kk = n - kk;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= kk; ++i) {
        r = r * (n - kk + i) / i;  // exact at every step
        if (r > UINT64_MAX) throw std::overflow_error("binomial: value exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

/// Exact nonnegative rational, always stored reduced.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    Rational() = default;
    Rational(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        const std::uint64_t g = std::gcd(num, den);
        num /= g;
        den /= g;
    }

    double approx() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const Rational&, const Rational&) = default;
};

}  // namespace pmds
