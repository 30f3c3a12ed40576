// Copyright 2026 The Datum Authors.
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

#include "datum/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace datum {

double haversine_gigameters(const GeoPoint& a, const GeoPoint& b) {
  constexpr double kDegToRad = std::numbers::pi / 180.0;
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlambda = (b.lon - a.lon) * kDegToRad;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  const double central = 2.0 * std::asin(std::sqrt(std::min(1.0, h)));
  return kEarthRadiusKm * central / 1.0e6;
}

Rational distance_cost(const GeoPoint& a, const GeoPoint& b, const Rational& rate_per_gigameter) {
  return quantize(rate_per_gigameter * from_double(haversine_gigameters(a, b), 12));
}

}  // namespace datum
