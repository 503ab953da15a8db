#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hypercert/homogeneous.hpp"
#include "hypercert/hyperbolic.hpp"
#include "hypercert/wronskian.hpp"

namespace hypercert {

class parse_error : public error {
 public:
  using error::error;
};

namespace detail {

inline std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(strip(cur));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Polynomial text format:
//   poly m=<int> deg=<int>
//   <num>/<den> [e1,e2,...,em]
// '#' starts a comment; exponent vectors are emitted in graded-lex order.
// ---------------------------------------------------------------------------

inline void write_poly(std::ostream& os, const HomogeneousPoly& p) {
  os << "poly m=" << p.nvars() << " deg=" << p.degree() << "\n";
  for (auto it = p.sparse().terms().rbegin(); it != p.sparse().terms().rend(); ++it) {
    const auto& [e, c] = *it;
    os << c.get_num().get_str() << "/" << c.get_den().get_str() << " [";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) os << ",";
      os << e[i];
    }
    os << "]\n";
  }
}

inline void write_poly_file(const std::filesystem::path& path, const HomogeneousPoly& p) {
  std::ofstream os(path);
  if (!os) throw error("cannot open " + path.string() + " for writing");
  write_poly(os, p);
}

inline HomogeneousPoly read_poly(std::istream& is, const std::string& where = "<stream>") {
  std::string line;
  int m = -1, deg = -1;
  std::optional<HomogeneousPoly> poly;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = detail::strip(line);
    if (auto pos = t.find('#'); pos != std::string::npos) t = detail::strip(t.substr(0, pos));
    if (t.empty()) continue;
    if (!poly) {
      std::istringstream hs(t);
      std::string tag, ms, ds;
      hs >> tag >> ms >> ds;
      if (tag != "poly" || ms.rfind("m=", 0) != 0 || ds.rfind("deg=", 0) != 0)
        throw parse_error(where + ":" + std::to_string(lineno) +
                          ": expected header 'poly m=<int> deg=<int>'");
      m = std::stoi(ms.substr(2));
      deg = std::stoi(ds.substr(4));
      if (m < 1 || deg < 0)
        throw parse_error(where + ": bad dimensions in polynomial header");
      poly = HomogeneousPoly(m, deg);
      continue;
    }
    auto lb = t.find('[');
    auto rb = t.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb)
      throw parse_error(where + ":" + std::to_string(lineno) + ": expected '<coeff> [e1,...]'");
    Rat c = rat_from_string(detail::strip(t.substr(0, lb)));
    ExpVec e;
    for (const auto& part : detail::split(t.substr(lb + 1, rb - lb - 1), ',')) {
      if (part.empty()) continue;
      int v = std::stoi(part);
      if (v < 0) throw parse_error(where + ": negative exponent");
      e.push_back(static_cast<unsigned>(v));
    }
    if (static_cast<int>(e.size()) != m)
      throw parse_error(where + ":" + std::to_string(lineno) + ": exponent vector length != m");
    if (expvec_degree(e) != static_cast<unsigned>(deg))
      throw parse_error(where + ":" + std::to_string(lineno) +
                        ": exponent vector does not sum to deg");
    poly->add_term(e, c);
  }
  if (!poly) throw parse_error(where + ": missing polynomial header");
  return *poly;
}

inline HomogeneousPoly read_poly_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw parse_error("cannot open polynomial file " + path.string());
  return read_poly(is, path.string());
}

// ---------------------------------------------------------------------------
// Rational vectors "[a, b/c, ...]"
// ---------------------------------------------------------------------------

inline std::string format_vector(const std::vector<Rat>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + "]";
}

inline std::vector<Rat> parse_vector(const std::string& s0) {
  std::string s = detail::strip(s0);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw parse_error("expected a vector like [1, -2/3]");
  std::vector<Rat> out;
  std::string inner = s.substr(1, s.size() - 2);
  if (detail::strip(inner).empty()) return out;
  for (const auto& part : detail::split(inner, ',')) out.push_back(rat_from_string(part));
  return out;
}

// ---------------------------------------------------------------------------
// Hyperbolicity verdict <-> JSON (a single manifest field)
// ---------------------------------------------------------------------------

inline std::string verdict_to_json(const HyperbolicityVerdict& v) {
  nlohmann::json j;
  switch (v.kind) {
    case VerdictKind::certified:
      j["kind"] = "certified";
      j["reason"] = v.reason;
      break;
    case VerdictKind::sampled:
      j["kind"] = "sampled";
      j["n"] = v.num_samples;
      j["seed"] = v.seed;
      break;
    case VerdictKind::refuted: {
      j["kind"] = "refuted";
      std::vector<std::string> w;
      for (const auto& x : v.witness) w.push_back(x.get_str());
      j["witness"] = w;
      break;
    }
  }
  return j.dump();
}

inline HyperbolicityVerdict verdict_from_json(const std::string& s) {
  nlohmann::json j = nlohmann::json::parse(s);
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "certified") return HyperbolicityVerdict::certified(j.value("reason", ""));
  if (kind == "sampled")
    return HyperbolicityVerdict::sampled(j.at("n").get<int>(), j.at("seed").get<u64>());
  if (kind == "refuted") {
    std::vector<Rat> w;
    for (const auto& x : j.at("witness")) w.push_back(rat_from_string(x.get<std::string>()));
    return HyperbolicityVerdict::refuted(w);
  }
  throw parse_error("unknown verdict kind: " + kind);
}

// ---------------------------------------------------------------------------
// Certificate manifest: a key/value text document referencing polynomial
// files. Types: hyperwron | hyperzout | interlacer.
// ---------------------------------------------------------------------------

struct Manifest {
  std::string type;
  std::string p_file;
  std::vector<Rat> e, u, v;
  std::vector<std::string> phi_files;
  std::string q_file;
  int mu = 0;                          // hyperzout
  std::vector<std::string> xi_files;   // hyperzout slot list; "0" marks a zero slot
  std::string interlacer_file;         // interlacer
  u64 seed = 1;
  int samples = 256;
  int psd_samples = 64;
  std::optional<std::string> verdict_json;

  bool operator==(const Manifest&) const = default;
};

inline void write_manifest(std::ostream& os, const Manifest& m) {
  os << "type: " << m.type << "\n";
  os << "p: " << m.p_file << "\n";
  os << "e: " << format_vector(m.e) << "\n";
  os << "u: " << format_vector(m.u) << "\n";
  os << "v: " << format_vector(m.v) << "\n";
  if (!m.phi_files.empty()) {
    os << "phi: ";
    for (std::size_t i = 0; i < m.phi_files.size(); ++i) {
      if (i) os << ", ";
      os << m.phi_files[i];
    }
    os << "\n";
  }
  if (!m.q_file.empty()) os << "q: " << m.q_file << "\n";
  if (m.type == "hyperzout") {
    os << "mu: " << m.mu << "\n";
    os << "xi: ";
    for (std::size_t i = 0; i < m.xi_files.size(); ++i) {
      if (i) os << ", ";
      os << m.xi_files[i];
    }
    os << "\n";
  }
  if (!m.interlacer_file.empty()) os << "interlacer: " << m.interlacer_file << "\n";
  os << "seed: " << m.seed << "\n";
  os << "samples: " << m.samples << "\n";
  os << "psd-samples: " << m.psd_samples << "\n";
  if (m.verdict_json) os << "verdict: " << *m.verdict_json << "\n";
}

inline void write_manifest_file(const std::filesystem::path& path, const Manifest& m) {
  std::ofstream os(path);
  if (!os) throw error("cannot open " + path.string() + " for writing");
  write_manifest(os, m);
}

inline Manifest read_manifest(std::istream& is, const std::string& where = "<stream>") {
  Manifest m;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = detail::strip(line);
    if (t.empty() || t[0] == '#') continue;
    auto pos = t.find(':');
    if (pos == std::string::npos)
      throw parse_error(where + ":" + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = detail::strip(t.substr(0, pos));
    std::string val = detail::strip(t.substr(pos + 1));
    if (key == "type") m.type = val;
    else if (key == "p") m.p_file = val;
    else if (key == "e") m.e = parse_vector(val);
    else if (key == "u") m.u = parse_vector(val);
    else if (key == "v") m.v = parse_vector(val);
    else if (key == "phi") m.phi_files = detail::split(val, ',');
    else if (key == "q") m.q_file = val;
    else if (key == "mu") m.mu = std::stoi(val);
    else if (key == "xi") m.xi_files = detail::split(val, ',');
    else if (key == "interlacer") m.interlacer_file = val;
    else if (key == "seed") m.seed = std::stoull(val);
    else if (key == "samples") m.samples = std::stoi(val);
    else if (key == "psd-samples") m.psd_samples = std::stoi(val);
    else if (key == "verdict") m.verdict_json = val;
    else throw parse_error(where + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  if (m.type.empty()) throw parse_error(where + ": manifest is missing 'type'");
  return m;
}

inline Manifest read_manifest_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw parse_error("cannot open manifest " + path.string());
  return read_manifest(is, path.string());
}

// ---------------------------------------------------------------------------
// Report rendering: one line per check and a machine-readable trailer.
// ---------------------------------------------------------------------------

inline void print_report(std::ostream& os, const VerificationReport& rep) {
  for (const auto& c : rep.checks) {
    os << "check " << c.name << ": " << status_name(c.status);
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  os << "seed: " << rep.seed << "\n";
  os << "samples: " << rep.samples << "\n";
  os << "RESULT: " << (rep.pass() ? "PASS" : "FAIL") << "\n";
}

// ---------------------------------------------------------------------------
// Weighted-squares input file for the SOS embedding:
//   squares m=<int> s=<int>
//   weight: <rat>
//   <num>/<den> [e1,...]   (terms of the square root, degree s)
// ---------------------------------------------------------------------------

inline WeightedSOS read_squares(std::istream& is, const std::string& where = "<stream>") {
  std::string line;
  int lineno = 0;
  int m = -1, s = -1;
  std::optional<WeightedSOS> acc;
  std::optional<Rat> weight;
  std::optional<HomogeneousPoly> cur;
  auto flush = [&]() {
    if (!weight) return;
    if (!cur) throw parse_error(where + ": weight without square-root terms");
    acc->add(*weight, *cur);
    weight.reset();
    cur.reset();
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = detail::strip(line);
    if (auto pos = t.find('#'); pos != std::string::npos) t = detail::strip(t.substr(0, pos));
    if (t.empty()) continue;
    if (!acc) {
      std::istringstream hs(t);
      std::string tag, ms, ss;
      hs >> tag >> ms >> ss;
      if (tag != "squares" || ms.rfind("m=", 0) != 0 || ss.rfind("s=", 0) != 0)
        throw parse_error(where + ": expected header 'squares m=<int> s=<int>'");
      m = std::stoi(ms.substr(2));
      s = std::stoi(ss.substr(2));
      acc = WeightedSOS(m, s);
      continue;
    }
    if (t.rfind("weight:", 0) == 0) {
      flush();
      weight = rat_from_string(detail::strip(t.substr(7)));
      cur = HomogeneousPoly(m, s);
      continue;
    }
    if (!weight) throw parse_error(where + ":" + std::to_string(lineno) + ": term before weight");
    auto lb = t.find('[');
    auto rb = t.find(']');
    if (lb == std::string::npos || rb == std::string::npos)
      throw parse_error(where + ":" + std::to_string(lineno) + ": expected '<coeff> [e1,...]'");
    Rat c = rat_from_string(detail::strip(t.substr(0, lb)));
    ExpVec e;
    for (const auto& part : detail::split(t.substr(lb + 1, rb - lb - 1), ','))
      e.push_back(static_cast<unsigned>(std::stoi(part)));
    cur->add_term(e, c);
  }
  flush();
  if (!acc) throw parse_error(where + ": missing 'squares' header");
  return *acc;
}

inline WeightedSOS read_squares_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw parse_error("cannot open squares file " + path.string());
  return read_squares(is, path.string());
}

inline void write_squares(std::ostream& os, const WeightedSOS& q) {
  os << "squares m=" << q.nvars() << " s=" << q.half_degree() << "\n";
  for (const auto& t : q.terms()) {
    os << "weight: " << t.weight.get_str() << "\n";
    for (auto it = t.square_root.sparse().terms().rbegin();
         it != t.square_root.sparse().terms().rend(); ++it) {
      const auto& [e, c] = *it;
      os << c.get_num().get_str() << "/" << c.get_den().get_str() << " [";
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) os << ",";
        os << e[i];
      }
      os << "]\n";
    }
  }
}

}  // namespace hypercert
