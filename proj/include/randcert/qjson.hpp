// Copyright 2026 The randcert Authors
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
#pragma once

// JSON form of states and POVMs:
//   state: {"schema":1,"type":"state","dims":[..],"labels":[..],
//           "entries":[[re,im],...]}            (row-major)
//   povm:  {"schema":1,"type":"povm","dims":[..],"labels":[..],
//           "elements":[[[re,im],...],...],"kets":[[[re,im],...],...]}
// Doubles are written in shortest round-trip form, so parsing a dump gives
// back bit-identical matrices.

#include <json.hpp>

#include "randcert/qobjects.hpp"

namespace randcert {

nlohmann::ordered_json matrix_entries_json(const CMat& m);
CMat matrix_from_entries_json(const nlohmann::json& entries, std::size_t rows,
                              std::size_t cols);
nlohmann::ordered_json vector_entries_json(const CVec& v);
CVec vector_from_entries_json(const nlohmann::json& entries);

nlohmann::ordered_json to_json(const QState& state);
QState state_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const Povm& povm, const SubsystemShape& shape);
nlohmann::ordered_json to_json(const Povm& povm);
/// Returns the POVM and fills `shape` when non-null.
Povm povm_from_json(const nlohmann::json& j, SubsystemShape* shape = nullptr);

}  // namespace randcert
