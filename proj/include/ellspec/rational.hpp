/*
   Copyright 2026 The ellspec authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ELLSPEC_RATIONAL_HPP
#define ELLSPEC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace ellspec {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Canonical text form: "p/q" with q > 0 and gcd(p,q) = 1, "/1" omitted.
inline std::string to_string(const Rational& r)
{
    Int num = numerator(r);
    Int den = denominator(r);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0)
            throw parse_error("zero denominator in rational '" + s + "'");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw parse_error("malformed rational '" + s + "'");
    }
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline std::optional<Int> integer_sqrt_exact(const Int& n)
{
    if (n < 0)
        return std::nullopt;
    Int r = boost::multiprecision::sqrt(n);
    if (r * r == n)
        return r;
    return std::nullopt;
}

// n = k^2 * m with m as square-free as trial division up to the bound can
// make it; any residual square factor beyond the bound stays inside m.
// Deterministic, so equal inputs always normalize identically.
struct SquarefreeDecomposition {
    Int square_root;     // k
    Int squarefree_part; // m, same sign as n
};

inline SquarefreeDecomposition squarefree_decompose(Int n)
{
    if (n == 0)
        return {1, 0};
    SquarefreeDecomposition out{1, n < 0 ? Int(-1) : Int(1)};
    Int m = abs(n);
    for (Int p = 2; p * p <= m && p < 100000; p += (p == 2 ? 1 : 2)) {
        while (m % (p * p) == 0) {
            m /= p * p;
            out.square_root *= p;
        }
        if (m % p == 0) {
            m /= p;
            out.squarefree_part *= p;
        }
    }
    if (auto r = integer_sqrt_exact(m)) {
        out.square_root *= *r;
    } else {
        out.squarefree_part *= m;
    }
    return out;
}

// Exact square root of a rational if one exists in Q.
inline std::optional<Rational> rational_sqrt_exact(const Rational& r)
{
    if (r < 0)
        return std::nullopt;
    auto n = integer_sqrt_exact(numerator(r));
    auto d = integer_sqrt_exact(denominator(r));
    if (n && d)
        return Rational(*n, *d);
    return std::nullopt;
}

} // namespace ellspec

#endif
