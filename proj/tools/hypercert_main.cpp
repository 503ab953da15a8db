// Command-line surface: certificate verification and construction, the
// dimension-gate tables, Bezoutian printing, hyperbolicity checks, and the
// quaternionic quartic example suite.
//
// Exit codes: 0 pass, 1 verification failure, 2 input error,
//             3 modular disagreement (retry with --mode exact).

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypercert/hypercert.hpp"

namespace fs = std::filesystem;
using namespace hypercert;

namespace {

std::vector<Rat> parse_rat_list(const std::string& s) {
  std::string t = detail::strip(s);
  if (!t.empty() && t.front() == '[') return parse_vector(t);
  std::vector<Rat> out;
  for (const auto& part : detail::split(t, ',')) out.push_back(rat_from_string(part));
  return out;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto pos = s.find("..");
  if (pos == std::string::npos) {
    int v = std::stoi(s);
    return {v, v};
  }
  return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
}

HyperbolicPair pair_from_manifest(const Manifest& man, const fs::path& base, int samples,
                                  u64 seed) {
  HomogeneousPoly p = read_poly_file(base / man.p_file);
  HyperbolicityStrategy strat;
  strat.kind = HyperbolicityStrategy::automatic;
  strat.num_samples = samples;
  strat.seed = seed;
  if (man.verdict_json) {
    HyperbolicityVerdict v = verdict_from_json(*man.verdict_json);
    if (v.kind == VerdictKind::sampled) {
      strat.num_samples = v.num_samples > 0 ? v.num_samples : samples;
      strat.seed = v.seed;
    }
  }
  return HyperbolicPair(p, man.e, check_hyperbolic(p, man.e, strat));
}

PolyMap polymap_from_files(const std::vector<std::string>& files, const fs::path& base) {
  std::vector<HomogeneousPoly> comps;
  for (const auto& f : files) comps.push_back(read_poly_file(base / f));
  if (comps.empty()) throw parse_error("certificate map needs at least one component");
  return PolyMap(comps, comps[0].nvars(), comps[0].degree());
}

int run_verify(const std::string& manifest_path, int samples_override, long seed_override,
               int psd_override, bool exact_psd, const std::string& out_file) {
  Manifest man = read_manifest_file(manifest_path);
  fs::path base = fs::path(manifest_path).parent_path();
  int samples = samples_override > 0 ? samples_override : man.samples;
  u64 seed = seed_override >= 0 ? static_cast<u64>(seed_override) : man.seed;
  int psd_samples = psd_override > 0 ? psd_override : man.psd_samples;
  (void)exact_psd;  // the PSD sampling path is exact either way

  VerificationReport rep;
  if (man.type == "hyperwron") {
    HyperbolicPair pair = pair_from_manifest(man, base, samples, seed);
    PolyMap phi = polymap_from_files(man.phi_files, base);
    HomogeneousPoly q = read_poly_file(base / man.q_file);
    HyperwronWitness w{pair, man.u, man.v, phi};
    rep = verify_hyperwron(w, q, samples, seed);
  } else if (man.type == "hyperzout") {
    HyperbolicPair pair = pair_from_manifest(man, base, samples, seed);
    PolyMap phi = polymap_from_files(man.phi_files, base);
    HomogeneousPoly q = read_poly_file(base / man.q_file);
    int d = pair.degree();
    int k = phi.map_degree();
    int m = phi.domain_vars();
    if (static_cast<int>(man.xi_files.size()) != d)
      throw parse_error("xi must list one slot per matrix row (d slots)");
    std::vector<HomogeneousPoly> slots;
    for (int j = 0; j < d; ++j) {
      int deg = j < d - man.mu ? 0 : (j - (d - man.mu)) * k;
      if (man.xi_files[j] == "0")
        slots.push_back(HomogeneousPoly::zero(m, deg));
      else
        slots.push_back(read_poly_file(base / man.xi_files[j]));
    }
    GradedTuple xi(m, d, man.mu, k, slots);
    HyperzoutWitness w{pair, man.u, man.v, phi, xi};
    rep = verify_hyperzout(w, q, samples, psd_samples, seed);
  } else if (man.type == "interlacer") {
    HyperbolicPair pair = pair_from_manifest(man, base, samples, seed);
    PolyMap phi = polymap_from_files(man.phi_files, base);
    HomogeneousPoly qi = read_poly_file(base / man.interlacer_file);
    auto [cert, irep] = interlacer_certificate(pair, qi, phi, std::max(8, samples / 32), seed);
    rep = irep.report;
    if (!man.q_file.empty()) {
      HomogeneousPoly claimed = read_poly_file(base / man.q_file);
      bool id_ok = cert == claimed;
      rep.add("identity", id_ok ? CheckStatus::pass : CheckStatus::fail,
              id_ok ? "claimed polynomial matches the certificate exactly"
                    : "identity mismatch");
    }
    rep.seed = seed;
    rep.samples = samples;
  } else {
    throw parse_error("unknown certificate type: " + man.type);
  }

  print_report(std::cout, rep);
  if (!out_file.empty()) {
    std::ofstream os(out_file);
    print_report(os, rep);
  }
  return rep.pass() ? 0 : 1;
}

int run_sos2wron(const std::string& squares_file, const std::string& out_dir,
                 bool allow_nonsquare) {
  WeightedSOS q = read_squares_file(squares_file);
  SosToHyperwronOptions opts;
  opts.allow_nonsquare_weights = allow_nonsquare;
  HyperwronWitness w = sos_to_hyperwron(q, opts);
  HomogeneousPoly target = q.expand();

  fs::path dir(out_dir);
  fs::create_directories(dir);
  write_poly_file(dir / "p.poly", w.pair.p());
  for (int i = 0; i < w.phi.component_count(); ++i) {
    std::ostringstream name;
    name << "phi" << i << ".poly";
    write_poly_file(dir / name.str(), w.phi.component(i));
  }
  write_poly_file(dir / "q.poly", target);

  Manifest man;
  man.type = "hyperwron";
  man.p_file = "p.poly";
  man.e = w.pair.e();
  man.u = w.u;
  man.v = w.v;
  for (int i = 0; i < w.phi.component_count(); ++i)
    man.phi_files.push_back("phi" + std::to_string(i) + ".poly");
  man.q_file = "q.poly";
  man.verdict_json = verdict_to_json(w.pair.verdict());
  write_manifest_file(dir / "certificate.manifest", man);
  std::cout << "wrote " << (dir / "certificate.manifest").string() << "\n";
  return 0;
}

template <class Report>
void print_gate_row(std::ostream& os, const Report& rep, bool tsv) {
  std::string profile = rep.argmax >= 0 ? rep.rows[rep.argmax].profile.str() : "-";
  std::string verdict = rep.verdict ? "TRUE" : "FALSE";
  std::string flag = rep.applicable ? (rep.vacuous ? "vacuous" : "ok") : "inapplicable";
  if (tsv) {
    os << rep.m << "\t" << 2 * rep.y << "\t" << rep.lhs << "\t" << profile << "\t" << rep.max_rhs
       << "\t" << rep.margin << "\t" << verdict << "\t" << flag << "\n";
  } else {
    os << std::setw(4) << rep.m << std::setw(5) << 2 * rep.y << std::setw(14) << rep.lhs
       << std::setw(18) << profile << std::setw(14) << rep.max_rhs << std::setw(12) << rep.margin
       << std::setw(7) << verdict << "  " << flag << "\n";
  }
}

int run_gate(const std::string& m_range, const std::string& y_range, bool bezoutian, bool tsv) {
  auto [m_lo, m_hi] = parse_range(m_range);
  auto [y_lo, y_hi] = parse_range(y_range);
  if (m_lo > m_hi || y_lo > y_hi || m_lo < 1 || y_lo < 1)
    throw parse_error("empty or invalid gate ranges");
  if (tsv)
    std::cout << "m\t2y\tlhs\targmax\tmax_rhs\tmargin\tverdict\tflag\n";
  else
    std::cout << std::setw(4) << "m" << std::setw(5) << "2y" << std::setw(14) << "lhs"
              << std::setw(18) << "argmax" << std::setw(14) << "max_rhs" << std::setw(12)
              << "margin" << std::setw(7) << "verdict"
              << "  flag\n";
  for (int m = m_lo; m <= m_hi; ++m) {
    for (int y = y_lo; y <= y_hi; ++y) {
      if (bezoutian)
        print_gate_row(std::cout, bezoutian_gate(m, y), tsv);
      else
        print_gate_row(std::cout, wronskian_gate(m, y), tsv);
    }
  }
  return 0;
}

int run_bezout_univariate(const std::string& fs_, const std::string& gs, int size) {
  UnivariatePoly f(parse_rat_list(fs_));
  UnivariatePoly g(parse_rat_list(gs));
  int d = size > 0 ? size : std::max(1, f.degree());
  BezoutMatrix b(f, g, d);
  for (int j = 0; j < d; ++j) {
    for (int l = 0; l < d; ++l) std::cout << (l ? "\t" : "") << b.entry(j, l).get_str();
    std::cout << "\n";
  }
  return 0;
}

int run_bezout_parameterized(const std::string& poly_file, const std::string& u_s,
                             const std::string& v_s) {
  HomogeneousPoly p = read_poly_file(poly_file);
  std::vector<Rat> u = parse_rat_list(u_s), v = parse_rat_list(v_s);
  ParamBezoutian b(p, u, v);
  for (int j = 0; j < b.size(); ++j)
    for (int l = 0; l < b.size(); ++l)
      std::cout << "B[" << j << "][" << l << "] = " << b.entry(j, l) << "\n";
  return 0;
}

int run_hyperbolic_check(const std::string& poly_file, const std::string& e_s,
                         const std::string& strategy, int samples, long seed) {
  HomogeneousPoly p = read_poly_file(poly_file);
  std::vector<Rat> e = parse_rat_list(e_s);
  HyperbolicityStrategy strat;
  if (strategy == "auto") strat.kind = HyperbolicityStrategy::automatic;
  else if (strategy == "quadratic") strat.kind = HyperbolicityStrategy::quadratic;
  else if (strategy == "sampled") strat.kind = HyperbolicityStrategy::sampled;
  else throw parse_error("unknown strategy: " + strategy);
  strat.num_samples = samples;
  strat.seed = static_cast<u64>(seed);
  HyperbolicityVerdict v = check_hyperbolic(p, e, strat);
  std::cout << "verdict: " << verdict_to_json(v) << "\n";
  if (v.kind == VerdictKind::refuted) {
    std::cout << "RESULT: FAIL\n";
    return 1;
  }
  std::cout << "RESULT: PASS\n";
  return 0;
}

int run_example(const std::string& check, const std::string& mode, long seed, int points) {
  NullspaceSettings set;
  set.mode = mode == "exact" ? NullspaceMode::exact : NullspaceMode::modular;
  set.seed = static_cast<u64>(seed);
  set.points = points;
  bool all = check == "all";
  VerificationReport rep;
  rep.seed = set.seed;

  auto claim = [&](const std::string& name, bool ok, const std::string& detail) {
    rep.add(name, ok ? CheckStatus::pass : CheckStatus::fail, detail);
    std::cout << "check " << name << ": " << (ok ? "PASS" : "FAIL") << "  (" << detail << ")\n";
  };

  if (all || check == "restriction") {
    RestrictionH rh = restriction_h();
    claim("restriction", rh.equals_square, "h(x1,w1) == (x1*w1 - 1)^2");
  }
  if (all || check == "rank-one") {
    bool ok = rank_one_vanishing();
    claim("rank-one", ok, "composition with the rank-one parameterization is the zero polynomial");
  }
  if (all || check == "invariance") {
    Rng rng(set.seed);
    bool ok = true;
    for (int t = 0; t < 50 && ok; ++t) {
      RatQuatMatrix2 p = sample_sp2(rng);
      RatQuatMatrix2 q = sample_sp2(rng);
      ok = sp2_invariance_check(p, q, 20, rng.next_u64(), /*check_symbolic=*/t == 0);
    }
    claim("invariance", ok, "fhat(PXQ) = fhat(X) exactly for 50 rational unitary products");
  }
  if (all || check == "nullspace-U") {
    CubicVanishingResult res = cubics_vanishing_on_rank_one(set);
    std::ostringstream os;
    os << "dim = " << res.dimension << " (expected 16); gradient basis "
       << (res.basis_check() ? "confirmed" : "FAILED") << ", Hessian rank " << res.hessian_rank;
    claim("nullspace-U", res.dimension == 16 && res.basis_check(), os.str());
  }
  if (all || check == "extremal") {
    int dim = extremality_dimension(set);
    std::ostringstream os;
    os << "dim = " << dim << " (expected 1)";
    claim("extremal", dim == 1, os.str());
  }
  if (rep.checks.empty()) throw parse_error("unknown check: " + check);
  std::cout << "seed: " << set.seed << "\n";
  std::cout << "mode: " << (set.mode == NullspaceMode::exact ? "exact" : "modular") << "\n";
  std::cout << "RESULT: " << (rep.pass() ? "PASS" : "FAIL") << "\n";
  return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic certificates of polynomial nonnegativity"};
  app.require_subcommand(1);

  // verify
  std::string manifest_path, out_file;
  int samples = 0, psd_samples = 0;
  long seed = -1;
  bool exact_psd = false;
  auto* verify = app.add_subcommand("verify", "verify a certificate manifest");
  verify->add_option("manifest", manifest_path)->required();
  verify->add_option("--samples", samples, "nonnegativity sample count");
  verify->add_option("--seed", seed, "sample seed");
  verify->add_option("--psd-samples", psd_samples, "Bezoutian PSD sample count");
  verify->add_flag("--exact-psd", exact_psd, "exact Sturm PSD test at every sample (default)");
  verify->add_option("--out", out_file, "also write the report to this file");

  // sos2wron
  std::string squares_file, out_dir = "certificate";
  bool allow_nonsquare = false;
  auto* sos = app.add_subcommand("sos2wron", "build a hyperwron certificate from squares");
  sos->add_option("squares", squares_file)->required();
  sos->add_option("--out-dir", out_dir, "output directory for the certificate files");
  sos->add_flag("--allow-nonsquare-weights", allow_nonsquare,
                "fold non-square weights via four-square decompositions");

  // gate
  std::string m_range = "3..12", y_range = "2..8";
  bool bez = false, tsv = false;
  auto* gate = app.add_subcommand("gate", "dimension-count gate table");
  gate->add_option("--m-range", m_range, "variables, e.g. 3..12");
  gate->add_option("--y-range", y_range, "half-degree, e.g. 2..8");
  gate->add_flag("--bezoutian", bez, "use the degree-restricted Bezoutian gate");
  gate->add_flag("--tsv", tsv, "tab-separated output");

  // bezout
  std::string f_coeffs, g_coeffs, bez_poly, u_s, v_s;
  int bez_size = 0;
  auto* bzc = app.add_subcommand("bezout", "print a Bezout matrix");
  bzc->add_option("--f", f_coeffs, "coefficients of f, ascending (scalar mode)");
  bzc->add_option("--g", g_coeffs, "coefficients of g, ascending (scalar mode)");
  bzc->add_option("--size", bez_size, "matrix size d (default deg f)");
  bzc->add_option("--poly", bez_poly, "polynomial file (parameterized mode)");
  bzc->add_option("--u", u_s, "direction u (parameterized mode)");
  bzc->add_option("--v", v_s, "direction v (parameterized mode)");

  // hyperbolic check
  auto* hyp = app.add_subcommand("hyperbolic", "hyperbolicity tools");
  std::string hpoly, he, hstrategy = "auto";
  int hsamples = 200;
  long hseed = 0;
  auto* hcheck = hyp->add_subcommand("check", "check hyperbolicity of p with respect to e");
  hcheck->add_option("--poly", hpoly)->required();
  hcheck->add_option("--e", he)->required();
  hcheck->add_option("--strategy", hstrategy, "auto | quadratic | sampled");
  hcheck->add_option("--samples", hsamples, "directions for the sampled check");
  hcheck->add_option("--seed", hseed);

  // example
  std::string check = "all", mode = "modular";
  long eseed = 2024;
  int points = 0;
  auto* ex = app.add_subcommand("example", "the 16-variable quaternionic quartic suite");
  ex->add_option("--check", check, "invariance|restriction|rank-one|nullspace-U|extremal|all");
  ex->add_option("--mode", mode, "modular | exact");
  ex->add_option("--seed", eseed);
  ex->add_option("--points", points, "sample points for the modular nullspace runs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify)
      return run_verify(manifest_path, samples, seed, psd_samples, exact_psd, out_file);
    if (*sos) return run_sos2wron(squares_file, out_dir, allow_nonsquare);
    if (*gate) return run_gate(m_range, y_range, bez, tsv);
    if (*bzc) {
      if (!bez_poly.empty()) return run_bezout_parameterized(bez_poly, u_s, v_s);
      return run_bezout_univariate(f_coeffs, g_coeffs, bez_size);
    }
    if (*hyp) {
      if (*hcheck) return run_hyperbolic_check(hpoly, he, hstrategy, hsamples, hseed);
      std::cerr << "hyperbolic: missing subcommand (try 'check')\n";
      return 2;
    }
    if (*ex) return run_example(check, mode, eseed, points);
  } catch (const modular_disagreement_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
