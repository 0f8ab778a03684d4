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

#ifndef ELLSPEC_SAMPLING_HPP
#define ELLSPEC_SAMPLING_HPP

#include "ellspec/multipoly.hpp"

#include <random>
#include <vector>

namespace ellspec {

// Deterministic source of small exact values for the randomized suites.
// A fixed seed makes every run reproducible.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    int64_t integer(int64_t lo, int64_t hi)
    {
        return std::uniform_int_distribution<int64_t>(lo, hi)(eng_);
    }

    Rational rational(int64_t max_num = 9, int64_t max_den = 9)
    {
        Int num(integer(-max_num, max_num));
        Int den(integer(1, max_den));
        return Rational(num, den);
    }

    Rational nonzero_rational(int64_t max_num = 9, int64_t max_den = 9)
    {
        for (;;) {
            Rational r = rational(max_num, max_den);
            if (r != 0)
                return r;
        }
    }

    Monomial monomial(const std::vector<Var>& vars, int max_exp)
    {
        Monomial m;
        for (Var v : vars)
            m[v] = static_cast<uint16_t>(integer(0, max_exp));
        return m;
    }

    MultiPoly poly(const std::vector<Var>& vars, int terms, int max_exp)
    {
        MultiPoly p;
        for (int i = 0; i < terms; ++i)
            p.add_term(monomial(vars, max_exp), Scalar(rational(5, 3)));
        return p;
    }

    MultiPoly nonzero_poly(const std::vector<Var>& vars, int terms, int max_exp)
    {
        for (;;) {
            MultiPoly p = poly(vars, terms, max_exp);
            if (!p.is_zero())
                return p;
        }
    }

private:
    std::mt19937_64 eng_;
};

} // namespace ellspec

#endif
