// Copyright 2026 The mvcircuits Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Library usage: long-time OTOCs of the self-dual kicked Ising circuit from
// transfer iteration, the eigenoperator projector and the closed form.

#include <cstdio>

#include "mvc/mvc.hpp"

int main() {
  using namespace mvc;
  const double h1 = 0.4, h2 = 0.6;
  const Gate g = build_kim({h1, h2});
  const PauliCoeffs a = PauliCoeffs{1.0, 0.0, 1.0}.normalized();
  const PauliCoeffs b{0.0, 1.0, 0.0};

  std::printf("%-3s %-6s %-4s %-20s %-20s %-20s\n", "n", "parity", "t-x", "iterate", "projector", "closed_form");
  for (int n = 1; n <= 3; ++n)
    for (Parity p : {Parity::even, Parity::odd}) {
      const OtocResult it = otoc_longtime(g, a.matrix(), b.matrix(), n, p);
      const OtocResult pr = otoc_longtime_projector(g, a.matrix(), b.matrix(), n, p, EigenFamily::kicked_ising);
      std::printf("%-3d %-6s %-4d %-20.15f %-20.15f %-20.15f\n", n, std::string(to_string(p)).c_str(), it.t_minus_x,
                  it.value, pr.value, kim_longtime(h1, h2, a, b, it.t_minus_x));
    }
}
