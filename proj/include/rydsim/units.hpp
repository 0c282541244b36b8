// Copyright 2026 The rydsim Authors
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

#pragma once

#include <numbers>

// hbar = 1 throughout: energies and Rabi frequencies are angular frequencies
// in rad/s, times in seconds, distances in micrometres.
namespace rydsim::units {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double mhz_2pi(double v) { return kTwoPi * 1e6 * v; }
constexpr double ghz_2pi(double v) { return kTwoPi * 1e9 * v; }
constexpr double to_mhz_2pi(double omega) { return omega / (kTwoPi * 1e6); }
constexpr double to_ghz_2pi(double omega) { return omega / (kTwoPi * 1e9); }

constexpr double ps(double v) { return v * 1e-12; }
constexpr double ns(double v) { return v * 1e-9; }
constexpr double us(double v) { return v * 1e-6; }
constexpr double to_us(double seconds) { return seconds * 1e6; }
constexpr double to_ns(double seconds) { return seconds * 1e9; }

}  // namespace rydsim::units
