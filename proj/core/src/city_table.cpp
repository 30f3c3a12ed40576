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

#include <stdexcept>
#include <string>

#include "datum/scenario.hpp"

namespace datum {
namespace {

// The 100 most populous US cities plus the three largest of every
// data-center state. Populations are 2020 US Census counts (rounded figures
// as published), coordinates approximate city centers. Kept sorted by
// population, descending.
constexpr City kCities[] = {
    {"New York", "NY", 40.7128, -74.0060, 8804190},
    {"Los Angeles", "CA", 34.0522, -118.2437, 3898747},
    {"Chicago", "IL", 41.8781, -87.6298, 2746388},
    {"Houston", "TX", 29.7604, -95.3698, 2304580},
    {"Phoenix", "AZ", 33.4484, -112.0740, 1608139},
    {"Philadelphia", "PA", 39.9526, -75.1652, 1603797},
    {"San Antonio", "TX", 29.4241, -98.4936, 1434625},
    {"San Diego", "CA", 32.7157, -117.1611, 1386932},
    {"Dallas", "TX", 32.7767, -96.7970, 1304379},
    {"San Jose", "CA", 37.3382, -121.8863, 1013240},
    {"Austin", "TX", 30.2672, -97.7431, 961855},
    {"Jacksonville", "FL", 30.3322, -81.6557, 949611},
    {"Fort Worth", "TX", 32.7555, -97.3308, 918915},
    {"Columbus", "OH", 39.9612, -82.9988, 905748},
    {"Indianapolis", "IN", 39.7684, -86.1581, 887642},
    {"Charlotte", "NC", 35.2271, -80.8431, 874579},
    {"San Francisco", "CA", 37.7749, -122.4194, 873965},
    {"Seattle", "WA", 47.6062, -122.3321, 737015},
    {"Denver", "CO", 39.7392, -104.9903, 715522},
    {"Washington", "DC", 38.9072, -77.0369, 689545},
    {"Nashville", "TN", 36.1627, -86.7816, 689447},
    {"Oklahoma City", "OK", 35.4676, -97.5164, 681054},
    {"El Paso", "TX", 31.7619, -106.4850, 678815},
    {"Boston", "MA", 42.3601, -71.0589, 675647},
    {"Portland", "OR", 45.5152, -122.6784, 652503},
    {"Las Vegas", "NV", 36.1699, -115.1398, 641903},
    {"Detroit", "MI", 42.3314, -83.0458, 639111},
    {"Memphis", "TN", 35.1495, -90.0490, 633104},
    {"Louisville", "KY", 38.2527, -85.7585, 633045},
    {"Baltimore", "MD", 39.2904, -76.6122, 585708},
    {"Milwaukee", "WI", 43.0389, -87.9065, 577222},
    {"Albuquerque", "NM", 35.0844, -106.6504, 564559},
    {"Tucson", "AZ", 32.2226, -110.9747, 542629},
    {"Fresno", "CA", 36.7378, -119.7871, 542107},
    {"Sacramento", "CA", 38.5816, -121.4944, 524943},
    {"Kansas City", "MO", 39.0997, -94.5786, 508090},
    {"Mesa", "AZ", 33.4152, -111.8315, 504258},
    {"Atlanta", "GA", 33.7490, -84.3880, 498715},
    {"Omaha", "NE", 41.2565, -95.9345, 486051},
    {"Colorado Springs", "CO", 38.8339, -104.8214, 478961},
    {"Raleigh", "NC", 35.7796, -78.6382, 467665},
    {"Long Beach", "CA", 33.7701, -118.1937, 466742},
    {"Virginia Beach", "VA", 36.8529, -75.9780, 459470},
    {"Miami", "FL", 25.7617, -80.1918, 442241},
    {"Oakland", "CA", 37.8044, -122.2712, 440646},
    {"Minneapolis", "MN", 44.9778, -93.2650, 429954},
    {"Tulsa", "OK", 36.1540, -95.9928, 413066},
    {"Bakersfield", "CA", 35.3733, -119.0187, 403455},
    {"Wichita", "KS", 37.6872, -97.3301, 397532},
    {"Arlington", "TX", 32.7357, -97.1081, 394266},
    {"Aurora", "CO", 39.7294, -104.8319, 386261},
    {"Tampa", "FL", 27.9506, -82.4572, 384959},
    {"New Orleans", "LA", 29.9511, -90.0715, 383997},
    {"Cleveland", "OH", 41.4993, -81.6944, 372624},
    {"Honolulu", "HI", 21.3069, -157.8583, 350964},
    {"Anaheim", "CA", 33.8366, -117.9143, 346824},
    {"Lexington", "KY", 38.0406, -84.5037, 322570},
    {"Stockton", "CA", 37.9577, -121.2908, 320804},
    {"Corpus Christi", "TX", 27.8006, -97.3964, 317863},
    {"Henderson", "NV", 36.0395, -114.9817, 317610},
    {"Riverside", "CA", 33.9806, -117.3755, 314998},
    {"Newark", "NJ", 40.7357, -74.1724, 311549},
    {"Saint Paul", "MN", 44.9537, -93.0900, 311527},
    {"Santa Ana", "CA", 33.7455, -117.8677, 310227},
    {"Cincinnati", "OH", 39.1031, -84.5120, 309317},
    {"Irvine", "CA", 33.6846, -117.8265, 307670},
    {"Orlando", "FL", 28.5383, -81.3792, 307573},
    {"Pittsburgh", "PA", 40.4406, -79.9959, 302971},
    {"St. Louis", "MO", 38.6270, -90.1994, 301578},
    {"Greensboro", "NC", 36.0726, -79.7920, 299035},
    {"Jersey City", "NJ", 40.7178, -74.0431, 292449},
    {"Anchorage", "AK", 61.2181, -149.9003, 291247},
    {"Lincoln", "NE", 40.8136, -96.7026, 291082},
    {"Plano", "TX", 33.0198, -96.6989, 285494},
    {"Durham", "NC", 35.9940, -78.8986, 283506},
    {"Buffalo", "NY", 42.8864, -78.8784, 278349},
    {"Chandler", "AZ", 33.3062, -111.8413, 275987},
    {"Chula Vista", "CA", 32.6401, -117.0842, 275487},
    {"Toledo", "OH", 41.6528, -83.5379, 270871},
    {"Madison", "WI", 43.0731, -89.4012, 269840},
    {"Gilbert", "AZ", 33.3528, -111.7890, 267918},
    {"Reno", "NV", 39.5296, -119.8138, 264165},
    {"Fort Wayne", "IN", 41.0793, -85.1394, 263886},
    {"North Las Vegas", "NV", 36.1989, -115.1175, 262527},
    {"St. Petersburg", "FL", 27.7676, -82.6403, 258308},
    {"Lubbock", "TX", 33.5779, -101.8552, 257141},
    {"Irving", "TX", 32.8140, -96.9489, 256684},
    {"Laredo", "TX", 27.5306, -99.4803, 255205},
    {"Winston-Salem", "NC", 36.0999, -80.2442, 249545},
    {"Chesapeake", "VA", 36.7682, -76.2875, 249422},
    {"Glendale", "AZ", 33.5387, -112.1860, 248325},
    {"Garland", "TX", 32.9126, -96.6389, 246018},
    {"Scottsdale", "AZ", 33.4942, -111.9261, 241361},
    {"Norfolk", "VA", 36.8508, -76.2859, 238005},
    {"Boise", "ID", 43.6150, -116.2023, 235684},
    {"Fremont", "CA", 37.5485, -121.9886, 230504},
    {"Spokane", "WA", 47.6588, -117.4260, 228989},
    {"Santa Clarita", "CA", 34.3917, -118.5426, 228673},
    {"Baton Rouge", "LA", 30.4515, -91.1871, 227470},
    {"Richmond", "VA", 37.5407, -77.4360, 226610},
    {"Tacoma", "WA", 47.2529, -122.4443, 219346},
    {"Columbus", "GA", 32.4610, -84.9877, 206922},
    {"Augusta", "GA", 33.4735, -82.0105, 202081},
    {"Aurora", "IL", 41.7606, -88.3201, 180542},
    {"Eugene", "OR", 44.0521, -123.0868, 176654},
    {"Salem", "OR", 44.9429, -123.0351, 175535},
    {"Joliet", "IL", 41.5250, -88.0817, 150362},
    {"Charleston", "SC", 32.7765, -79.9311, 150227},
    {"Columbia", "SC", 34.0007, -81.0348, 136632},
    {"North Charleston", "SC", 32.8546, -79.9748, 114852},
};

}  // namespace

std::span<const City> city_table() { return kCities; }

const City& city_by_rank(std::string_view state, std::size_t rank) {
  for (const auto& city : kCities) {
    if (city.state != state) continue;
    if (rank == 0) return city;
    --rank;
  }
  throw std::out_of_range("city table has too few cities in " + std::string(state));
}

}  // namespace datum
