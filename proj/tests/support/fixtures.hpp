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

#ifndef QCC_TESTS_FIXTURES_HPP_
#define QCC_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qcc/instance.hpp"
#include "qcc/schedule.hpp"

namespace qcc::testing {

std::filesystem::path data_dir();

// rigetti-8, QCC, one stage, goal <q3,q4>.
Instance example_instance();
// Swaps (n1,n4) and (n2,n3) at 0, then the blue PS on (n1,n2) at 2.
Schedule example_schedule();

Instance single_goal(const Chip& chip, StateId a, StateId b, Variant variant = Variant::kQcc,
                     int stages = 1);

// Random instance drawn from presets and grids with |G| in [1, max_goals].
Instance random_instance(std::uint64_t seed, int max_goals, bool presets = true);

// A valid schedule with random slack: a greedy or baseline schedule with
// some tasks pushed later while the validator keeps accepting it.
Schedule random_valid_schedule(const Instance& instance, std::uint64_t seed);

// One random corruption of a schedule; `what` names it.
Schedule mutate(const Instance& instance, const Schedule& schedule, std::uint64_t seed,
                std::string* what = nullptr);

}  // namespace qcc::testing

#endif  // QCC_TESTS_FIXTURES_HPP_
