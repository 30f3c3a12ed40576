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

#ifndef DATUM_RATIONAL_HPP
#define DATUM_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace datum {

/// Exact rational number. All monetary quantities in the library use it.
using Rational = mpq_class;

/// Number of decimal places every external quantity is quantized to.
inline constexpr int kDecimalPlaces = 6;

/// Rounds to the nearest multiple of 10^-places, ties away from zero.
Rational quantize(const Rational& value, int places = kDecimalPlaces);

/// Parses a plain decimal string ("12", "-0.25", "3.1415926") exactly and
/// quantizes it. Exponent notation is rejected. Throws ParseError.
Rational parse_decimal(std::string_view text);

/// Formats with exactly `places` digits after the point, rounding half away
/// from zero. parse_decimal(format_decimal(q)) == quantize(q).
std::string format_decimal(const Rational& value, int places = kDecimalPlaces);

/// Converts a finite double to the nearest multiple of 10^-places.
Rational from_double(double value, int places = kDecimalPlaces);

double to_double(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }
inline bool is_binary(const Rational& value) { return value == 0 || value == 1; }

}  // namespace datum

#endif  // DATUM_RATIONAL_HPP
