#pragma once

#include <iosfwd>
#include <optional>

#include "json.hpp"
#include "toricob/monomial.hpp"

// Line-oriented exact text formats for fans and monomial ideals, plus the JSON
// building blocks of the command reports. Files are structured text with
// explicit integers: blank lines and '#' comments are skipped, every other
// line is a keyword followed by whitespace-separated integers.
//
//   fan                     header (first content line)
//   rank N
//   ray x1 .. xN            one per ray, 0-indexed in order of appearance
//   cone i j k              a maximal cone as ray indices; faces are implied
//   action x1 .. xN         optional one-parameter subgroup
//
//   ideal                   header
//   rank N
//   chart                   starts a chart block
//   ray x1 .. xN            generator of the chart cone
//   gen m1 .. mN            exponent vector of an ideal generator
//
// A ray listed in no cone line is its own one-dimensional cone. A fan file
// with no rays denotes the zero fan.

namespace toricob {

struct ParseError : ToricError {
  using ToricError::ToricError;
};

struct FanFile {
  std::size_t rank = 0;
  std::vector<Vec> rays;
  std::vector<std::vector<std::size_t>> cones;  // maximal cones as ray indices
  std::optional<Vec> action;

  bool operator==(const FanFile& o) const = default;
};

FanFile parse_fan_file(std::istream& in);
FanFile read_fan_file(const std::string& path);
std::string write_fan_file(const FanFile& ff);

Fan to_fan(const FanFile& ff);
// Canonical file of a fan: sorted rays, maximal cones as sorted index lists.
FanFile from_fan(const Fan& f, const std::optional<Vec>& action = std::nullopt);

struct IdealEntry {
  std::vector<Vec> chart;  // generators of the chart cone
  std::vector<Vec> gens;   // exponent vectors

  bool operator==(const IdealEntry& o) const = default;
};

struct IdealFile {
  std::size_t rank = 0;
  std::vector<IdealEntry> entries;

  bool operator==(const IdealFile& o) const = default;
};

IdealFile parse_ideal_file(std::istream& in);
IdealFile read_ideal_file(const std::string& path);
std::string write_ideal_file(const IdealFile& f);

// One MonomialIdeal per entry, on the entry's chart cone.
std::vector<MonomialIdeal> to_ideals(const IdealFile& f);

// JSON forms used by every report. Integers become JSON numbers (decimal
// strings in the unlikely event they overflow 64 bits).
nlohmann::json json_int(const Int& x);
nlohmann::json json_vec(const Vec& v);
nlohmann::json json_vecs(const std::vector<Vec>& vs);
nlohmann::json json_cone(const Cone& c);
nlohmann::json json_fan(const Fan& f);  // canonical rays + index cone lists

}  // namespace toricob
