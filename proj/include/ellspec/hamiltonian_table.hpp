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

#ifndef ELLSPEC_HAMILTONIAN_TABLE_HPP
#define ELLSPEC_HAMILTONIAN_TABLE_HPP

#include <cstdint>
#include <string_view>

namespace ellspec {

// The coefficient table of the two Hitchin Hamiltonians
//   h1 = a0 c1^2 + a1 c1 c2 + a2 c2^2,   h2 = b0 c1^2 + b1 c1 c2 + b2 c2^2
// with a0 = sum_i a0i z1^i, a2 = sum_i a2i z2^i (degree 4),
// a1 = sum_{i,j<=2} a1ij z1^i z2^j, and likewise for b. Transcribed once;
// the symmetry rows (a0i = a2i, a1ij = a1ji and the b analogues) are
// recomputed by the tests rather than trusted.
inline constexpr std::string_view kHamiltonianTableText = R"TBL(
a00 = -t^3*lambda^2
a01 = 4*t^3*lambda*(-t+lambda+1)
a02 = -2*t^2*(2*t+lambda+2*t*lambda^2-2*t^2*lambda-2*t^2+t*lambda+lambda^2)
a03 = 4*t^2*(-t^2+1+lambda^2)
a04 = -t*(-3*t^2+2*t*lambda+2*t+lambda^2-2*lambda+1)
a20 = -t^3*lambda^2
a21 = 4*t^3*lambda*(-t+lambda+1)
a22 = -2*t^2*(2*t+lambda+2*t*lambda^2-2*t^2*lambda-2*t^2+t*lambda+lambda^2)
a23 = 4*t^2*(-t^2+1+lambda^2)
a24 = -t*(-3*t^2+2*t*lambda+2*t+lambda^2-2*lambda+1)
a100 = 2*t^3*lambda^2
a101 = 4*t^2*lambda*(t*lambda-2*lambda+t-t^2)
a110 = 4*t^2*lambda*(t*lambda-2*lambda+t-t^2)
a102 = -2*t*lambda*(t*lambda-2*lambda+t-t^2)
a120 = -2*t*lambda*(t*lambda-2*lambda+t-t^2)
a111 = -8*t*(-t*lambda^2+t^2-t*lambda+t^2*lambda^2+2*t^2*lambda-t^3*lambda-t^3-lambda^2)
a112 = 4*t*(-2*lambda-2*lambda^2-t^3+t+2*t*lambda+t*lambda^2)
a121 = 4*t*(-2*lambda-2*lambda^2-t^3+t+2*t*lambda+t*lambda^2)
a122 = 2*t*(-6*t*lambda+6*lambda+lambda^2-6*t+5*t^2+1)
b00 = t^2*lambda^2
b01 = -4*lambda*t^2*(-t+1+lambda)
b02 = 2*t*(t*lambda+lambda^2+lambda-2*t^2*lambda+2*t*lambda^2+2*t-2*t^2)
b03 = -4*t*(1+lambda^2-t^2)
b04 = 2*t+2*t*lambda-3*t^2+1-2*lambda+lambda^2
b20 = t^2*lambda^2
b21 = -4*lambda*t^2*(-t+1+lambda)
b22 = 2*t*(t*lambda+lambda^2+lambda-2*t^2*lambda+2*t*lambda^2+2*t-2*t^2)
b23 = -4*t*(1+lambda^2-t^2)
b24 = 2*t+2*t*lambda-3*t^2+1-2*lambda+lambda^2
b100 = -2*t^2*lambda^2
b101 = 4*lambda*t^2*(-t+1+lambda)
b110 = 4*lambda*t^2*(-t+1+lambda)
b102 = -2*t*(-2*t^3+2*t^2*lambda-3*t*lambda+lambda^2+lambda+2*t^2)
b120 = -2*t*(-2*t^3+2*t^2*lambda-3*t*lambda+lambda^2+lambda+2*t^2)
b111 = -8*t^2*(-t+1+lambda)^2
b112 = 4*t*(1+lambda^2-t^2)
b121 = 4*t*(1+lambda^2-t^2)
b122 = -4*t*lambda+6*t^2-4*t+4*lambda-2*lambda^2-2
)TBL";

// FNV-1a over the table text; the tests assert it so silent edits to the
// transcription are caught.
inline constexpr uint64_t fnv1a(std::string_view s)
{
    uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<uint64_t>(static_cast<unsigned char>(c));
        h *= 1099511628211ull;
    }
    return h;
}

inline constexpr uint64_t kHamiltonianTableChecksum = fnv1a(kHamiltonianTableText);

} // namespace ellspec

#endif
