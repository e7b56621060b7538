// Copyright 2026 The qccsched Authors
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

#ifndef QCC_SRC_CROSSTALK_HPP_
#define QCC_SRC_CROSSTALK_HPP_

#include "qcc/instance.hpp"
#include "qcc/schedule.hpp"

namespace qcc::detail {

// Crosstalk relation between tasks on disjoint qubits: a two-qubit gate
// disables the neighbors of its endpoints. Two mixes never clash.
inline bool crosstalk_related(const ChipGraph& g, const GateTask& x, const GateTask& y) {
  auto near = [&g](QubitId q, const GateTask& gate) {
    return g.adjacent(q, gate.u) || g.adjacent(q, gate.v);
  };
  if (x.two_qubit() && y.two_qubit()) return near(y.u, x) || near(y.v, x);
  if (x.two_qubit() && y.kind == TaskKind::kMix) return near(y.u, x);
  if (y.two_qubit() && x.kind == TaskKind::kMix) return near(x.u, y);
  return false;
}

}  // namespace qcc::detail

#endif  // QCC_SRC_CROSSTALK_HPP_
