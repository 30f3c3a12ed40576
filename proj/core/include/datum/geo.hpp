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

#ifndef DATUM_GEO_HPP
#define DATUM_GEO_HPP

#include "datum/rational.hpp"

namespace datum {

/// Latitude/longitude in degrees.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

inline constexpr double kEarthRadiusKm = 6371.0;

/// Great-circle distance in gigameters (10^6 km) on a sphere of radius 6371 km.
double haversine_gigameters(const GeoPoint& a, const GeoPoint& b);

/// rate * distance, quantized to 10^-6. The rate is money per gigameter.
Rational distance_cost(const GeoPoint& a, const GeoPoint& b, const Rational& rate_per_gigameter);

}  // namespace datum

#endif  // DATUM_GEO_HPP
