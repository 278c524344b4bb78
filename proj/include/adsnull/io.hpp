#pragma once

#include <adsnull/config.hpp>
#include <adsnull/errors.hpp>
#include <adsnull/jetalg.hpp>
#include <adsnull/lame.hpp>
#include <adsnull/nullcurve.hpp>

#include <boost/crc.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace adsnull {

using json = nlohmann::json;

// ------------------------------------------------------------------ RunConfig

/// Run settings: numeric tolerances plus sampling density and output directory.
struct RunConfig {
  Tolerances tol = default_tolerances();
  int points_per_period = 400;
  std::string output_dir = ".";

  /// Canonical key=value listing; the digest is taken over this text.
  std::map<std::string, std::string> entries() const {
    auto num = [](double v) {
      std::ostringstream os;
      os << std::setprecision(17) << v;
      return os.str();
    };
    return {{"integrator_rel_tol", num(tol.ode_rel)},
            {"integrator_abs_tol", num(tol.ode_abs)},
            {"integrator_max_steps", num(tol.ode_max_steps)},
            {"evolve_rel_tol", num(tol.evolve_rel)},
            {"evolve_abs_tol", num(tol.evolve_abs)},
            {"floquet_h_tol", num(tol.floquet_h)},
            {"scan_ceiling", num(tol.scan_ceiling)},
            {"rational_cap", num(static_cast<double>(tol.rational_cap))},
            {"rational_tol", num(tol.rational_tol)},
            {"discriminant_tol", num(tol.discriminant_tol)},
            {"kdv_gate", num(tol.kdv_gate)},
            {"points_per_period", std::to_string(points_per_period)}};
  }

  void set(const std::string& key, const std::string& value) {
    double v;
    try {
      std::size_t used = 0;
      v = std::stod(value, &used);
      if (key != "output_dir" && used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      if (key == "output_dir") {
        output_dir = value;
        return;
      }
      throw DomainError("config value for '" + key + "' is not a number: " + value);
    }
    if (key == "integrator_rel_tol") tol.ode_rel = v;
    else if (key == "integrator_abs_tol") tol.ode_abs = v;
    else if (key == "integrator_max_steps") tol.ode_max_steps = v;
    else if (key == "evolve_rel_tol") tol.evolve_rel = v;
    else if (key == "evolve_abs_tol") tol.evolve_abs = v;
    else if (key == "floquet_h_tol") tol.floquet_h = v;
    else if (key == "scan_ceiling") tol.scan_ceiling = v;
    else if (key == "rational_cap") tol.rational_cap = static_cast<long>(v);
    else if (key == "rational_tol") tol.rational_tol = v;
    else if (key == "discriminant_tol") tol.discriminant_tol = v;
    else if (key == "kdv_gate") tol.kdv_gate = v;
    else if (key == "points_per_period") points_per_period = static_cast<int>(v);
    else if (key == "output_dir") output_dir = value;
    else throw DomainError("unknown config key '" + key + "'");
  }

  /// Parses `key = value` lines; '#' starts a comment.
  void merge_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      auto trim = [](std::string x) {
        auto b = x.find_first_not_of(" \t\r"), e = x.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
      };
      line = trim(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw DomainError("config line " + std::to_string(lineno) + " has no '='");
      set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  }

  void merge_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot read config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    merge_text(ss.str());
  }

  void validate() const {
    if (!(tol.ode_rel > 0 && tol.ode_abs > 0 && tol.evolve_rel > 0 && tol.evolve_abs > 0 &&
          tol.floquet_h > 0 && tol.rational_tol > 0 && tol.discriminant_tol > 0 &&
          tol.kdv_gate > 0 && tol.ode_max_steps > 0))
      throw DomainError("all tolerances must be positive");
    if (tol.rational_cap < 1) throw DomainError("rational_cap must be >= 1");
    if (points_per_period < 8) throw DomainError("points_per_period must be >= 8");
  }

  std::string digest() const {
    std::string text;
    for (const auto& [k, v] : entries()) text += k + "=" + v + "\n";
    boost::crc_32_type crc;
    crc.process_bytes(text.data(), text.size());
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
    return std::string("crc32:") + buf;
  }
};

// --------------------------------------------------------------- formatting

/// Decimal with 17 significant digits (round-trips doubles).
inline std::string fmt17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

struct Metadata {
  std::string recipe;
  std::string config_digest;
  json params = json::object();

  json to_json() const {
    return {{"recipe", recipe}, {"config_digest", config_digest}, {"params", params}};
  }
  /// `# key: value` header lines for CSV and OBJ files.
  std::string comment_header() const {
    return "# recipe: " + recipe + "\n# config_digest: " + config_digest +
           "\n# params: " + params.dump() + "\n";
  }
};

inline json to_json(const Mat2& m) { return json::array({m.a, m.b, m.c, m.d}); }

inline json to_json(const Fraction& f) { return f.str(); }

/// {terms: [{coeff: "p/q", monomial: {"i": e_i}}]}.
inline json to_json(const JetPoly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    json mono = json::object();
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) mono[std::to_string(i)] = m[i];
    std::string cs = boost::multiprecision::numerator(c).str() + "/" +
                     boost::multiprecision::denominator(c).str();
    terms.push_back({{"coeff", cs}, {"monomial", mono}});
  }
  return {{"terms", terms}, {"text", to_string(p)}};
}

inline json to_json(const OrbitClassification& c) {
  json j = {{"type", c.label()},
            {"I_plus", c.I_plus},
            {"I_minus", c.I_minus},
            {"M_plus", to_json(c.M_plus)},
            {"M_minus", to_json(c.M_minus)},
            {"theta_plus", c.theta_plus},
            {"theta_minus", c.theta_minus},
            {"theta_plus_over_pi", c.theta_plus / std::numbers::pi},
            {"theta_minus_over_pi", c.theta_minus / std::numbers::pi},
            {"theta_plus_over_2pi", c.theta_plus / (2 * std::numbers::pi)},
            {"theta_minus_over_2pi", c.theta_minus / (2 * std::numbers::pi)},
            {"closed", c.closed}};
  if (c.q_plus) j["q_plus"] = c.q_plus->str();
  if (c.q_minus) j["q_minus"] = c.q_minus->str();
  if (c.closure_count) j["closure_count"] = *c.closure_count;
  if (c.least_period) j["least_period"] = *c.least_period;
  if (c.spin) j["spin"] = to_string(*c.spin);
  return j;
}

/// Curve samples {s, x, y, z, matrix} with torical coordinates.
inline json curve_json(const Metadata& meta, const std::vector<double>& s,
                       const std::vector<Spacetime22>& gamma) {
  json samples = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto p = torical_embed(gamma[i]);
    samples.push_back({{"s", s[i]}, {"x", p[0]}, {"y", p[1]}, {"z", p[2]}, {"matrix", to_json(gamma[i])}});
  }
  return {{"meta", meta.to_json()}, {"samples", samples}};
}

// ------------------------------------------------------------------ writers

class OutputDir {
public:
  explicit OutputDir(std::filesystem::path root) : root_(std::move(root)) {
    std::filesystem::create_directories(root_);
  }

  std::filesystem::path path(const std::string& name) const { return root_ / name; }

  void write_text(const std::string& name, const std::string& text) {
    std::ofstream f(path(name), std::ios::binary);
    if (!f) throw DomainError("cannot write " + path(name).string());
    f << text;
    written_.push_back(path(name).string());
  }

  void write_json(const std::string& name, const json& j) { write_text(name, j.dump(1) + "\n"); }

  void write_curve(const std::string& stem, const Metadata& meta, const std::vector<double>& s,
                   const std::vector<Spacetime22>& gamma) {
    write_json(stem + ".json", curve_json(meta, s, gamma));
    std::ostringstream obj, csv;
    obj << meta.comment_header();
    csv << meta.comment_header() << "s,x,y,z,a,b,c,d\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto p = torical_embed(gamma[i]);
      obj << "v " << fmt17(p[0]) << ' ' << fmt17(p[1]) << ' ' << fmt17(p[2]) << '\n';
      csv << fmt17(s[i]) << ',' << fmt17(p[0]) << ',' << fmt17(p[1]) << ',' << fmt17(p[2]) << ','
          << fmt17(gamma[i].a) << ',' << fmt17(gamma[i].b) << ',' << fmt17(gamma[i].c) << ','
          << fmt17(gamma[i].d) << '\n';
    }
    obj << 'l';
    for (std::size_t i = 1; i <= s.size(); ++i) obj << ' ' << i;
    obj << '\n';
    write_text(stem + ".obj", obj.str());
    write_text(stem + ".csv", csv.str());
  }

  void write_cousins(const std::string& stem, const Metadata& meta, const std::vector<double>& s,
                     const CurveAndCousins& c) {
    for (int sign : {1, -1}) {
      const auto& eta = sign > 0 ? c.eta_plus : c.eta_minus;
      std::ostringstream csv;
      csv << meta.comment_header() << "s,x,y\n";
      for (std::size_t i = 0; i < s.size(); ++i)
        csv << fmt17(s[i]) << ',' << fmt17(eta[i][0]) << ',' << fmt17(eta[i][1]) << '\n';
      write_text(stem + (sign > 0 ? "_plus.csv" : "_minus.csv"), csv.str());
    }
  }

  void write_spectrum(const std::string& name, const Metadata& meta,
                      const std::vector<FloquetRecord>& recs) {
    std::ostringstream csv;
    csv << meta.comment_header() << "index,h,tau,order\n";
    for (const auto& r : recs)
      csv << r.index << ',' << fmt17(r.h) << ',' << fmt17(r.tau()) << ','
          << (r.order ? std::to_string(*r.order) : std::string()) << '\n';
    write_text(name, csv.str());
  }

  const std::vector<std::string>& written() const { return written_; }

private:
  std::filesystem::path root_;
  std::vector<std::string> written_;
};

}  // namespace adsnull
