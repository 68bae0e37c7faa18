// Copyright 2026 The clusterlab Authors
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

#include <compare>
#include <string>

namespace clusterlab {

inline constexpr int kMaxQubits = 6;

// Spatial mode of a photon, used as a qubit position in the tensor product.
// Position 0 (mode a) is the most significant bit of a basis index.
class QubitLabel {
 public:
  constexpr explicit QubitLabel(int position) : position_(position) {}

  // 'a' -> 0, 'b' -> 1, ... up to kMaxQubits letters.
  static QubitLabel from_char(char name);

  constexpr int position() const { return position_; }
  char name() const { return static_cast<char>('a' + position_); }

  friend constexpr auto operator<=>(QubitLabel, QubitLabel) = default;

 private:
  int position_;
};

inline constexpr QubitLabel kModeA{0};
inline constexpr QubitLabel kModeB{1};
inline constexpr QubitLabel kModeC{2};
inline constexpr QubitLabel kModeD{3};

// Local measurement axis. For every axis the +1 eigenstate is listed first:
// Z: |H>, |V>;  X: |+45>, |-45>;  Y: |L> = (|H> + i|V>)/sqrt2, |R>.
enum class Axis { X, Y, Z };

char axis_char(Axis axis);
Axis axis_from_char(char c);

}  // namespace clusterlab
