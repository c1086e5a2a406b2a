// Copyright 2026 The dfscodec Authors
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

// Sends a random two-qubit message through Pauli collective noise and prints
// the token states, the decode outcome and the recovered fidelity.

#include <iomanip>
#include <iostream>
#include <memory>

#include "dfscodec/dfscodec.hpp"

int main() {
    using namespace dfscodec;
    auto k4 = std::make_shared<const FiniteGroup>(builtin_group("k4"));
    UnitaryRep pauli = builtin_rep("k4", k4, "pauli");
    TokenSet tokens = make_token_set(pauli, builtin_character_table("k4"), 2);

    std::cout << std::fixed << std::setprecision(4);
    for (std::size_t g = 0; g < tokens.order(); ++g) {
        std::cout << "psi(" << k4->label(g) << ") =";
        for (std::size_t i = 0; i < 4; ++i) {
            std::cout << ' ' << tokens.tokens[g].amp(i).real();
        }
        std::cout << '\n';
    }

    Rng rng(42);
    StateVector message = StateVector::from_amplitudes(2, 2, random_state(rng, 4));
    for (std::size_t k = 0; k < k4->order; ++k) {
        DecodeResult res = roundtrip(tokens, ChannelSpec::fixed(pauli, k), message, 1, 100 + k);
        std::cout << "channel " << k4->label(k) << ": outcome " << k4->label(res.report.outcome) << ", fidelity "
                  << *res.report.fidelity << ", rate " << res.report.rate_numerator << '/'
                  << res.report.rate_denominator << '\n';
    }
    return 0;
}
