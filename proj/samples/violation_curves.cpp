// Copyright 2026 The relbell Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Prints the collinear CHSH and center-of-mass three-particle curves next to
// the operator norms computed from the assembled matrices.

#include <cstdio>

#include <relbell/relbell.hpp>

int main() {
    using namespace relbell;
    std::printf("%6s %12s %12s %12s %12s\n", "beta", "eps2", "chsh_norm", "eps3_com",
                "mermin_norm");
    for (double beta : beta_grid(0.0, 0.99, 0.11)) {
        const auto two = scenario_curve({ScenarioKind::chsh_collinear, beta});
        const auto three = scenario_curve({ScenarioKind::mermin_center_of_mass, beta});
        std::printf("%6.2f %12.9f %12.9f %12.9f %12.9f\n", beta, two.closed_form,
                    *two.numeric_max, three.closed_form, *three.numeric_max);
    }
}
