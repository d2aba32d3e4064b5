#include "toricob/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace toricob {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

Int parse_int(const std::string& tok, std::size_t lineno) {
  // accept an optional sign followed by digits only
  std::size_t start = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (start == tok.size())
    throw ParseError("line " + std::to_string(lineno) + ": bad integer '" + tok + "'");
  for (std::size_t i = start; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i])))
      throw ParseError("line " + std::to_string(lineno) + ": bad integer '" + tok + "'");
  return Int(tok);
}

Vec parse_vec(const std::vector<std::string>& toks, std::size_t width,
              std::size_t lineno) {
  if (toks.size() - 1 != width)
    throw ParseError("line " + std::to_string(lineno) + ": expected " +
                     std::to_string(width) + " coordinates");
  Vec v;
  for (std::size_t i = 1; i < toks.size(); ++i) v.push_back(parse_int(toks[i], lineno));
  return v;
}

struct LineReader {
  std::istream& in;
  std::size_t lineno = 0;

  // next non-blank, non-comment line tokenized; empty result at end of input
  std::vector<std::string> next() {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::vector<std::string> toks = tokens_of(line);
      if (!toks.empty()) return toks;
    }
    return {};
  }
};

void write_vec_line(std::ostream& out, const char* kw, const Vec& v) {
  out << kw;
  for (const Int& x : v) out << ' ' << x;
  out << '\n';
}

}  // namespace

FanFile parse_fan_file(std::istream& in) {
  LineReader r{in};
  std::vector<std::string> toks = r.next();
  if (toks.empty() || toks[0] != "fan")
    throw ParseError("line " + std::to_string(r.lineno) + ": expected 'fan' header");
  FanFile ff;
  bool have_rank = false;
  while (!(toks = r.next()).empty()) {
    const std::string& kw = toks[0];
    if (kw == "rank") {
      if (have_rank || toks.size() != 2)
        throw ParseError("line " + std::to_string(r.lineno) + ": bad rank line");
      Int n = parse_int(toks[1], r.lineno);
      if (n < 0 || n > 64)
        throw ParseError("line " + std::to_string(r.lineno) + ": rank out of range");
      ff.rank = static_cast<std::size_t>(n);
      have_rank = true;
    } else if (kw == "ray") {
      if (!have_rank)
        throw ParseError("line " + std::to_string(r.lineno) + ": ray before rank");
      ff.rays.push_back(parse_vec(toks, ff.rank, r.lineno));
    } else if (kw == "cone") {
      std::vector<std::size_t> idx;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        Int k = parse_int(toks[i], r.lineno);
        if (k < 0 || k >= Int(ff.rays.size()))
          throw ParseError("line " + std::to_string(r.lineno) + ": ray index " +
                           toks[i] + " out of range");
        idx.push_back(static_cast<std::size_t>(k));
      }
      ff.cones.push_back(idx);
    } else if (kw == "action") {
      if (!have_rank)
        throw ParseError("line " + std::to_string(r.lineno) + ": action before rank");
      if (ff.action)
        throw ParseError("line " + std::to_string(r.lineno) + ": duplicate action");
      ff.action = parse_vec(toks, ff.rank, r.lineno);
    } else {
      throw ParseError("line " + std::to_string(r.lineno) + ": unknown keyword '" +
                       kw + "'");
    }
  }
  if (!have_rank) throw ParseError("fan file has no rank line");
  return ff;
}

FanFile read_fan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_fan_file(in);
}

std::string write_fan_file(const FanFile& ff) {
  std::ostringstream out;
  out << "fan\nrank " << ff.rank << '\n';
  for (const Vec& r : ff.rays) write_vec_line(out, "ray", r);
  for (const std::vector<std::size_t>& c : ff.cones) {
    out << "cone";
    for (std::size_t i : c) out << ' ' << i;
    out << '\n';
  }
  if (ff.action) write_vec_line(out, "action", *ff.action);
  return out.str();
}

Fan to_fan(const FanFile& ff) {
  std::vector<Cone> cones;
  std::vector<bool> used(ff.rays.size(), false);
  for (const std::vector<std::size_t>& idx : ff.cones) {
    std::vector<Vec> gens;
    for (std::size_t i : idx) {
      gens.push_back(ff.rays[i]);
      used[i] = true;
    }
    cones.push_back(Cone::from_generators(ff.rank, gens));
  }
  for (std::size_t i = 0; i < ff.rays.size(); ++i)
    if (!used[i]) cones.push_back(Cone::from_generators(ff.rank, {ff.rays[i]}));
  if (cones.empty()) cones.push_back(Cone::zero(ff.rank));
  return Fan::from_cones(ff.rank, cones);
}

FanFile from_fan(const Fan& f, const std::optional<Vec>& action) {
  FanFile ff;
  ff.rank = f.rank;
  ff.rays = f.ray_generators();
  for (const Cone& c : f.maximal()) {
    if (c.rays.empty()) continue;  // the zero fan writes no cone lines
    std::vector<std::size_t> idx;
    for (const Vec& r : c.rays) {
      std::size_t i =
          std::lower_bound(ff.rays.begin(), ff.rays.end(), r, vec_less) - ff.rays.begin();
      idx.push_back(i);
    }
    std::sort(idx.begin(), idx.end());
    ff.cones.push_back(idx);
  }
  std::sort(ff.cones.begin(), ff.cones.end());
  ff.action = action;
  return ff;
}

IdealFile parse_ideal_file(std::istream& in) {
  LineReader r{in};
  std::vector<std::string> toks = r.next();
  if (toks.empty() || toks[0] != "ideal")
    throw ParseError("line " + std::to_string(r.lineno) + ": expected 'ideal' header");
  IdealFile f;
  bool have_rank = false;
  while (!(toks = r.next()).empty()) {
    const std::string& kw = toks[0];
    if (kw == "rank") {
      if (have_rank || toks.size() != 2)
        throw ParseError("line " + std::to_string(r.lineno) + ": bad rank line");
      Int n = parse_int(toks[1], r.lineno);
      if (n < 0 || n > 64)
        throw ParseError("line " + std::to_string(r.lineno) + ": rank out of range");
      f.rank = static_cast<std::size_t>(n);
      have_rank = true;
    } else if (kw == "chart") {
      if (!have_rank)
        throw ParseError("line " + std::to_string(r.lineno) + ": chart before rank");
      f.entries.push_back({});
    } else if (kw == "ray" || kw == "gen") {
      if (f.entries.empty())
        throw ParseError("line " + std::to_string(r.lineno) + ": '" + kw +
                         "' outside a chart block");
      Vec v = parse_vec(toks, f.rank, r.lineno);
      (kw == "ray" ? f.entries.back().chart : f.entries.back().gens).push_back(v);
    } else {
      throw ParseError("line " + std::to_string(r.lineno) + ": unknown keyword '" +
                       kw + "'");
    }
  }
  if (!have_rank) throw ParseError("ideal file has no rank line");
  if (f.entries.empty()) throw ParseError("ideal file has no chart block");
  return f;
}

IdealFile read_ideal_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_ideal_file(in);
}

std::string write_ideal_file(const IdealFile& f) {
  std::ostringstream out;
  out << "ideal\nrank " << f.rank << '\n';
  for (const IdealEntry& e : f.entries) {
    out << "chart\n";
    for (const Vec& r : e.chart) write_vec_line(out, "ray", r);
    for (const Vec& g : e.gens) write_vec_line(out, "gen", g);
  }
  return out.str();
}

std::vector<MonomialIdeal> to_ideals(const IdealFile& f) {
  std::vector<MonomialIdeal> out;
  for (const IdealEntry& e : f.entries)
    out.push_back(MonomialIdeal::make(Cone::from_generators(f.rank, e.chart), e.gens));
  return out;
}

nlohmann::json json_int(const Int& x) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (x < lo || x > hi) return x.str();
  return x.convert_to<long long>();
}

nlohmann::json json_vec(const Vec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const Int& x : v) a.push_back(json_int(x));
  return a;
}

nlohmann::json json_vecs(const std::vector<Vec>& vs) {
  nlohmann::json a = nlohmann::json::array();
  for (const Vec& v : vs) a.push_back(json_vec(v));
  return a;
}

nlohmann::json json_cone(const Cone& c) {
  return {{"rays", json_vecs(c.rays)}, {"lines", json_vecs(c.lines)}};
}

nlohmann::json json_fan(const Fan& f) {
  FanFile ff = from_fan(f, std::nullopt);
  nlohmann::json cones = nlohmann::json::array();
  for (const std::vector<std::size_t>& c : ff.cones) cones.push_back(c);
  return {{"rank", ff.rank}, {"rays", json_vecs(ff.rays)}, {"cones", cones}};
}

}  // namespace toricob
