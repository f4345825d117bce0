// Copyright 2026 The annealab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace annealab {

/// Bad user-supplied parameters, graphs, counts or file contents.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands of incompatible length/dimension.
struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A code construction that cannot be completed (infeasible logical X,
/// dependent stabilisers, unmappable couplings, ...).
struct CodeDesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Eigensolver failure (non-convergence, dimension cap exceeded).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file; message carries field/element context.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two independent internal computations disagreed. Always a bug.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Exact rational coefficient. Gadget strengths are small rationals times
/// the penalty scale Delta; keeping them exact makes the term-expansion
/// identity an integer statement rather than a floating-point one.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw ValidationError("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend Rational operator+(Rational a, Rational b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(Rational a, Rational b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(Rational a, Rational b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator*(Rational a, std::int64_t k) { return Rational(a.num * k, a.den); }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    /// Numerator after rescaling to the given common denominator.
    std::int64_t scaled(std::int64_t common_den) const { return num * (common_den / den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

/// Nearest small-denominator rational (continued fractions). Used to turn
/// user-facing double parameters (the odd-gadget coupling ratio) into exact
/// coefficients; decimals like 1.5 or 0.9 resolve to 3/2 and 9/10.
inline Rational rational_from_double(double x, std::int64_t max_den = 1000000) {
    if (!(x == x)) throw ValidationError("cannot convert NaN to a rational");
    bool neg = x < 0;
    double v = neg ? -x : x;
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        std::int64_t a = static_cast<std::int64_t>(frac);
        std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = frac - static_cast<double>(a);
        if (rem < 1e-13) break;
        frac = 1.0 / rem;
    }
    Rational r(neg ? -p1 : p1, q1);
    if (std::abs(r.value() - x) > 1e-9)
        throw ValidationError("parameter " + std::to_string(x) +
                              " is not representable as a small rational");
    return r;
}

/// SplitMix64. This is the project-wide deterministic generator: the same
/// seed produces the same stream on every platform, which is what makes
/// instances and sweeps reproducible row by row.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw on the closed interval [0, 1]: 53 high bits over 2^53 - 1.
    double uniform01() {
        return static_cast<double>(next() >> 11) / 9007199254740991.0;
    }

    /// Uniform draw on the closed interval [-scale, scale].
    double uniform_symmetric(double scale) { return -scale + 2.0 * scale * uniform01(); }

    /// Uniform integer in [0, bound) by rejection-free modulo (bias is
    /// irrelevant for test-data generation; bound is tiny next to 2^64).
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  private:
    std::uint64_t state_;
};

/// Shortest round-trip decimal form; used everywhere numbers are printed so
/// that repeated runs emit byte-identical files.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace annealab
