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

#include "datum/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "datum/errors.hpp"

namespace datum {
namespace {

mpz_class power_of_ten(int places) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(places));
  return p;
}

// Integer n with value ~= n / 10^places, rounded half away from zero.
mpz_class scaled_integer(const Rational& value, int places) {
  const mpz_class scale = power_of_ten(places);
  mpz_class num = abs(value.get_num()) * scale;
  const mpz_class& den = value.get_den();
  mpz_class q;
  mpz_class twice = 2 * num + den;
  mpz_class twice_den = 2 * den;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), twice_den.get_mpz_t());
  if (sgn(value) < 0) q = -q;
  return q;
}

}  // namespace

Rational quantize(const Rational& value, int places) {
  Rational out(scaled_integer(value, places), power_of_ten(places));
  out.canonicalize();
  return out;
}

Rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  std::size_t frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      throw ParseError("invalid decimal string '" + std::string(text) + "'");
    }
  }
  if (!any_digit) throw ParseError("invalid decimal string '" + std::string(text) + "'");
  mpz_class num(digits, 10);
  if (negative) num = -num;
  Rational value(num, power_of_ten(static_cast<int>(frac_digits)));
  value.canonicalize();
  return quantize(value);
}

std::string format_decimal(const Rational& value, int places) {
  mpz_class scaled = scaled_integer(value, places);
  const bool negative = sgn(scaled) < 0;
  std::string digits = mpz_class(abs(scaled)).get_str(10);
  if (digits.size() <= static_cast<std::size_t>(places)) {
    digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
  }
  std::string out;
  if (negative) out.push_back('-');
  out.append(digits, 0, digits.size() - static_cast<std::size_t>(places));
  if (places > 0) {
    out.push_back('.');
    out.append(digits, digits.size() - static_cast<std::size_t>(places));
  }
  return out;
}

Rational from_double(double value, int places) {
  if (!std::isfinite(value)) throw ParseError("non-finite value cannot become a rational");
  return quantize(Rational(value), places);
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace datum
