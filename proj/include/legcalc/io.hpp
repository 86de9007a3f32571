#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "legcalc/errors.hpp"
#include "legcalc/invariants.hpp"
#include "legcalc/model.hpp"
#include "legcalc/projection.hpp"

namespace legcalc {

namespace detail {

// Shortest exact decimal for a double; %.17g round-trips and re-runs are
// byte-identical on one platform.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& tok, std::size_t lineno) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw error(errc::parse, "malformed number '" + tok + "' on line " +
                                 std::to_string(lineno));
  }
  if (used != tok.size())
    throw error(errc::parse,
                "malformed number '" + tok + "' on line " + std::to_string(lineno));
  return v;
}

}  // namespace detail

// --- curve file formats -----------------------------------------------
//
//   cylcurve v1 n=<N>      |   hknot v1 n=<N>
//   t z r phi              |   t x y theta        (N lines, decimal literals)

inline std::string write_cylcurve(const CylCurve& c) {
  std::string out = "cylcurve v1 n=" + std::to_string(c.samples.size()) + "\n";
  for (const auto& s : c.samples)
    out += detail::fmt_double(s.t) + " " + detail::fmt_double(s.z) + " " +
           detail::fmt_double(s.r) + " " + detail::fmt_double(s.phi) + "\n";
  return out;
}

inline std::string write_hknot(const HKnot& k) {
  std::string out = "hknot v1 n=" + std::to_string(k.points.size()) + "\n";
  for (const auto& p : k.points)
    out += detail::fmt_double(p.t) + " " + detail::fmt_double(p.x) + " " +
           detail::fmt_double(p.y) + " " + detail::fmt_double(p.theta) + "\n";
  return out;
}

namespace detail {

inline std::size_t parse_curve_header(std::istringstream& ls, const char* kind) {
  std::string version, nfield;
  if (!(ls >> version >> nfield) || version != "v1" || nfield.rfind("n=", 0) != 0)
    throw error(errc::parse, std::string(kind) + ": malformed header (expected '" +
                                 kind + " v1 n=<N>')");
  try {
    return std::stoul(nfield.substr(2));
  } catch (const std::exception&) {
    throw error(errc::parse, std::string(kind) + ": malformed sample count in header");
  }
}

template <typename Row>
std::vector<Row> parse_rows(std::istream& in, std::size_t n, std::size_t& lineno,
                            const char* kind) {
  std::vector<Row> rows;
  rows.reserve(n);
  std::string line;
  while (rows.size() < n && std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string t0, t1, t2, t3, extra;
    if (!(ls >> t0)) continue;  // blank line
    if (!(ls >> t1 >> t2 >> t3) || (ls >> extra))
      throw error(errc::parse, std::string(kind) + ": expected 4 fields on line " +
                                   std::to_string(lineno));
    rows.push_back({parse_double(t0, lineno), parse_double(t1, lineno),
                    parse_double(t2, lineno), parse_double(t3, lineno)});
  }
  if (rows.size() < n)
    throw error(errc::parse, std::string(kind) + ": expected " + std::to_string(n) +
                                 " samples, got " + std::to_string(rows.size()));
  return rows;
}

}  // namespace detail

inline CylCurve read_cylcurve(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw error(errc::parse, "cylcurve: empty input");
  std::istringstream ls(line);
  std::string kind;
  ls >> kind;
  if (kind != "cylcurve") throw error(errc::parse, "cylcurve: wrong header kind");
  const std::size_t n = detail::parse_curve_header(ls, "cylcurve");
  CylCurve c;
  c.samples = detail::parse_rows<CylCurve::Sample>(in, n, lineno, "cylcurve");
  c.validate();
  return c;
}

inline HKnot read_hknot(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw error(errc::parse, "hknot: empty input");
  std::istringstream ls(line);
  std::string kind;
  ls >> kind;
  if (kind != "hknot") throw error(errc::parse, "hknot: wrong header kind");
  const std::size_t n = detail::parse_curve_header(ls, "hknot");
  HKnot k;
  k.points = detail::parse_rows<HKnot::Point>(in, n, lineno, "hknot");
  k.validate();
  return k;
}

// Sniffs the header and loads either curve kind.
inline std::variant<CylCurve, HKnot> read_curve(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string kind;
  in >> kind;
  if (kind == "cylcurve") return read_cylcurve(text);
  if (kind == "hknot") return read_hknot(text);
  throw error(errc::parse, "unknown curve format '" + kind + "'");
}

inline std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::parse, "cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw error(errc::parse, "cannot write file '" + path + "'");
  out << content;
}

// --- diagram dump (golden-file format) --------------------------------
// one line per double point: d k seg_a u_a seg_b u_b x y plus_first

inline std::string dump_diagram(const ProjectedDiagram& diagram) {
  std::string out;
  for (std::size_t i = 0; i < diagram.doubles.size(); ++i) {
    const DoublePoint& d = diagram.doubles[i];
    out += "d " + std::to_string(i) + " " + std::to_string(d.seg_a) + " " +
           detail::fmt_double(d.u_a) + " " + std::to_string(d.seg_b) + " " +
           detail::fmt_double(d.u_b) + " " + detail::fmt_double(d.point.x) + " " +
           detail::fmt_double(d.point.y) + " " + (d.plus_first ? "1" : "0") + "\n";
  }
  return out;
}

// --- FourierSpec JSON ---------------------------------------------------

inline FourierSpec fourier_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw error(errc::parse, "fourier spec: expected a JSON object");
  FourierSpec spec;
  try {
    spec.degree = j.at("degree").get<int>();
    spec.bound = j.at("bound").get<double>();
    spec.h_target = j.at("h_target").get<int>();
    spec.r_min = j.at("r_min").get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("samples")) spec.samples = j.at("samples").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse, std::string("fourier spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

// --- report JSON --------------------------------------------------------
// nlohmann::json orders object keys lexicographically, which is the
// canonical ordering golden files are compared under.

inline nlohmann::json report_to_json(const InvariantReport& rep) {
  nlohmann::json j;
  j["h"] = rep.h;
  j["r"] = rep.r;
  j["w"] = rep.w;
  j["beta"] = rep.beta;
  j["chernov_m"] = rep.chernov_m;
  if (rep.tb) j["tb"] = *rep.tb;
  if (rep.mu) j["mu"] = *rep.mu;
  j["weights"] = nlohmann::json::array();
  for (const auto& w : rep.weights)
    j["weights"].push_back({{"id", w.id},
                            {"w_d", w.w_d},
                            {"h_plus", w.h_plus},
                            {"h_minus", w.h_minus}});
  nlohmann::json oracles = nlohmann::json::object();
  if (rep.beta_oracle_value) oracles["beta"] = *rep.beta_oracle_value;
  if (rep.tb_oracle_value) oracles["tb"] = *rep.tb_oracle_value;
  if (rep.mu_oracle_value) oracles["mu"] = *rep.mu_oracle_value;
  if (!oracles.empty()) {
    oracles["eps"] = rep.oracle_eps;
    oracles["seed"] = rep.oracle_seed;
  }
  j["oracles"] = oracles;
  nlohmann::json flags = nlohmann::json::object();
  for (const auto& [name, ok] : rep.flags) flags[name] = ok;
  j["flags"] = flags;
  j["residuals"] = {{"max_rounding", rep.max_residual}};
  if (rep.legendrian_residual) j["residuals"]["legendrian"] = *rep.legendrian_residual;
  j["tolerances"] = {{"angle_tol", rep.options.dtol.angle_tol},
                     {"sep_tol", rep.options.dtol.sep_tol},
                     {"u_tol", rep.options.dtol.u_tol},
                     {"legendrian_tol", rep.options.legendrian_tol}};
  return j;
}

}  // namespace legcalc
