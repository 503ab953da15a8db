// Acceptance suite: every criterion below runs at its stated tolerance and
// prints one PASS/FAIL line. The process exits nonzero if any criterion
// fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hypercert/hypercert.hpp"

using namespace hypercert;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok, double seconds,
            const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", criterion,
              what.c_str(), seconds, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

struct LibraryPair {
  std::string name;
  HyperbolicPair pair;
};

std::vector<LibraryPair> library_pairs() {
  std::vector<LibraryPair> out;
  out.push_back({"x1*x2*x3",
                 family_product_of_linears({{Rat(1), Rat(0), Rat(0)},
                                            {Rat(0), Rat(1), Rat(0)},
                                            {Rat(0), Rat(0), Rat(1)}},
                                           {Rat(1), Rat(1), Rat(1)})});
  out.push_back({"e2(4)", family_elementary_symmetric(4, 2)});
  out.push_back({"det-sym-2", family_det_symmetric_pencil(2)});
  out.push_back({"lorentz-3", family_lorentz({Rat(1), Rat(1), Rat(0)})});
  out.push_back({"lorentz-4", family_lorentz({Rat(1), Rat(1), Rat(0), Rat(0)})});
  return out;
}

std::vector<LibraryPair> cubic_library_pairs() {
  std::vector<LibraryPair> out;
  out.push_back({"x1*x2*x3",
                 family_product_of_linears({{Rat(1), Rat(0), Rat(0)},
                                            {Rat(0), Rat(1), Rat(0)},
                                            {Rat(0), Rat(0), Rat(1)}},
                                           {Rat(1), Rat(1), Rat(1)})});
  out.push_back({"e3(4)", family_elementary_symmetric(4, 3)});
  return out;
}

// ---------------------------------------------------------------------------

void criterion_1_gate_region() {
  auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (int m = 3; m <= 12 && ok; ++m) {
    for (int y = 2; y <= 8 && ok; ++y) {
      WronskianGateReport rep = wronskian_gate(m, y);
      bool expected = theorem_1_1_region(m, y);
      if (rep.verdict != expected) {
        ok = false;
        detail = "mismatch at (" + std::to_string(m) + "," + std::to_string(y) + ")";
      }
    }
  }
  {
    WronskianGateReport rep = wronskian_gate(4, 4);
    if (!(rep.lhs == 165 && rep.max_rhs == 164 && rep.margin == 1)) {
      ok = false;
      detail = "spot value (4,4) off";
    }
  }
  {
    WronskianGateReport rep = wronskian_gate(5, 2);
    if (!(rep.lhs == 70 && rep.max_rhs == 70 && !rep.verdict)) {
      ok = false;
      detail = "spot value (5,2) off";
    }
  }
  for (int y = 2; y <= 8; ++y) {
    if (wronskian_gate(3, y).verdict) ok = false;  // (3, y) all FALSE
  }
  if (wronskian_gate(4, 2).verdict || wronskian_gate(4, 3).verdict || wronskian_gate(5, 2).verdict)
    ok = false;
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  if (dt >= 5.0) {
    ok = false;
    detail = "exceeded the 5 s budget";
  }
  report(1, "gate table 3..12 x 2..8 matches the settled region exactly", ok, dt, detail);
}

void criterion_2_closed_forms() {
  auto t0 = Clock::now();
  bool ok = true;
  for (int m : {4, 5}) {
    for (int y = 2; y <= 16; ++y) {
      for (int k = 1; 2 * k <= y; ++k) {
        if (closed_form_g(m, Rat(k), Rat(y)) != gate_margin_for_k(m, k, y)) ok = false;
      }
    }
  }
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  if (dt >= 1.0) ok = false;
  report(2, "closed forms g(4,k,y), g(5,k,y) equal the gate margins up to y = 16", ok, dt);
}

void criterion_3_bezoutian_bound() {
  auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (int y : {2, 3, 4}) {
    Int bound = theorem_1_5_bound(y);
    long b = bound.get_si();
    for (long m = b + 1; m <= b + 20; ++m) {
      if (!bezoutian_gate(static_cast<int>(m), y).verdict) {
        ok = false;
        detail = "gate FALSE at m=" + std::to_string(m) + ", y=" + std::to_string(y);
      }
    }
  }
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  if (dt >= 5.0) {
    ok = false;
    detail = "exceeded the 5 s budget";
  }
  report(3, "Bezoutian gate TRUE on (10y^2-2y+1, 10y^2-2y+21] for y = 2,3,4", ok, dt, detail);
}

void criterion_4_sos_round_trip() {
  auto t0 = Clock::now();
  bool ok = true;
  Rng rng(40400);
  for (int trial = 0; trial < 100; ++trial) {
    int m = 1 + static_cast<int>(rng.next_below(4));
    int s = 1 + static_cast<int>(rng.next_below(3));
    WeightedSOS q(m, s);
    int count = static_cast<int>(rng.next_below(6));
    auto monos = monomials_of_degree(m, s);
    for (int i = 0; i < count; ++i) {
      Rat root = rat(rng.next_int(1, 9), rng.next_int(1, 4));
      HomogeneousPoly g(m, s);
      for (int t = 0; t < 3; ++t)
        g.add_term(monos[rng.next_below(monos.size())], rng.next_rat(7, 3));
      q.add(root * root, g);
    }
    HyperwronWitness w = sos_to_hyperwron(q);
    if (!(build_hyperwron(w) == q.expand())) ok = false;
  }
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  if (dt >= 60.0) ok = false;
  report(4, "100 seeded weighted-SOS inputs reconstruct exactly through the embedding", ok, dt);
}

void criterion_5_soundness_sampling() {
  auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  Rng rng(50500);
  for (const auto& lib : library_pairs()) {
    for (int pair_idx = 0; pair_idx < 20 && ok; ++pair_idx) {
      std::vector<Rat> u =
          sample_cone_point(lib.pair, rng.next_u64(), ConeSampleStyle::interior);
      std::vector<Rat> v =
          sample_cone_point(lib.pair, rng.next_u64(), ConeSampleStyle::interior);
      HyperwronWitness w{lib.pair, u, v, PolyMap::identity(lib.pair.nvars())};
      HomogeneousPoly q = build_hyperwron(w);
      Rng eval_rng(rng.next_u64());
      for (int t = 0; t < 10000; ++t) {
        if (sgn(q.eval(eval_rng.next_rat_vector(q.nvars(), 8, 2))) < 0) {
          ok = false;
          detail = "negative hyperwron value on " + lib.name;
          break;
        }
      }
      ParamBezoutian bez(lib.pair.p(), u, v);
      Rng psd_rng(rng.next_u64());
      for (int t = 0; t < 1000 && ok; ++t) {
        if (!is_psd_exact(bez.eval(psd_rng.next_rat_vector(lib.pair.nvars(), 8, 2)))) {
          ok = false;
          detail = "Bezoutian not PSD on " + lib.name;
        }
      }
    }
  }
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  if (dt >= 300.0) {
    ok = false;
    detail = "exceeded the 5 min budget";
  }
  report(5, "hyperwron nonnegativity at 10^4 points and exact Bezoutian PSD at 10^3 points",
         ok, dt, detail);
}

void criterion_6_bezout_structure() {
  auto t0 = Clock::now();
  bool ok = true;
  Rng rng(60600);
  for (const auto& lib : library_pairs()) {
    for (int t = 0; t < 20 && ok; ++t) {
      std::vector<Rat> u =
          sample_cone_point(lib.pair, rng.next_u64(), ConeSampleStyle::interior);
      std::vector<Rat> v =
          sample_cone_point(lib.pair, rng.next_u64(), ConeSampleStyle::interior);
      ParamBezoutian bez(lib.pair.p(), u, v);
      if (!bez.grading_holds() || !bez.is_symmetric()) ok = false;
      HyperwronWitness w{lib.pair, u, v, PolyMap::identity(lib.pair.nvars())};
      if (!(bez.entry(0, 0) == build_hyperwron(w))) ok = false;
    }
  }
  // defining identity for random univariate pairs up to degree 8
  for (int trial = 0; trial < 30 && ok; ++trial) {
    int df = 1 + static_cast<int>(rng.next_below(8));
    int dg = static_cast<int>(rng.next_below(static_cast<u64>(df) + 1));
    std::vector<Rat> fc(df + 1), gc(dg + 1);
    for (auto& c : fc) c = rng.next_rat(6, 3);
    for (auto& c : gc) c = rng.next_rat(6, 3);
    if (sgn(fc.back()) == 0) fc.back() = 1;
    if (sgn(gc.back()) == 0) gc.back() = 1;
    UnivariatePoly f(fc), g(gc);
    BezoutMatrix b(f, g, df);
    // check sum c_jl t^j s^l (t-s) == f(t)g(s) - f(s)g(t) at enough points
    // to pin the bivariate polynomials (degree <= 2*df in each variable)
    for (int pt = 0; pt < 12 && ok; ++pt) {
      Rat tv = rng.next_rat(9, 4), sv = rng.next_rat(9, 4);
      Rat sum(0);
      Rat tp(1);
      for (int j = 0; j < df; ++j) {
        Rat sp(1);
        for (int l = 0; l < df; ++l) {
          sum += b.entry(j, l) * tp * sp;
          sp *= sv;
        }
        tp *= tv;
      }
      if (sum * (tv - sv) != f(tv) * g(sv) - f(sv) * g(tv)) ok = false;
    }
  }
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  if (dt >= 30.0) ok = false;
  report(6, "Bezoutian (0,0) = Wronskian, grading, and the defining identity to d = 8", ok, dt);
}

void criterion_7_quartic_decomposition() {
  auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  Rng rng(70700);
  for (const auto& lib : cubic_library_pairs()) {
    for (int t = 0; t < 20 && ok; ++t) {
      std::vector<Rat> u, v;
      // mix interior points with exact boundary points
      if (t % 4 == 0) {
        u = sample_cone_point(lib.pair, rng.next_u64(), ConeSampleStyle::boundary_attempt);
      } else {
        u = sample_cone_point(lib.pair, rng.next_u64(), ConeSampleStyle::interior);
      }
      v = sample_cone_point(lib.pair, rng.next_u64(), ConeSampleStyle::interior);
      QuarticDecomposition dec = decompose_quartic_hyperwron(lib.pair, u, v);
      HomogeneousPoly f = wronskian(lib.pair.p(), u, v);
      if (!(dec.reconstruct() == f)) {
        ok = false;
        detail = "reconstruction failed on " + lib.name;
      }
      for (const auto& term : dec.q1.terms())
        if (sgn(term.weight) < 0) ok = false;
      for (const auto& term : dec.q2.terms())
        if (sgn(term.weight) < 0) ok = false;
      HomogeneousPoly dup = directional_derivative(lib.pair.p(), u);
      HomogeneousPoly duv =
          dup.is_zero() ? HomogeneousPoly::zero(lib.pair.nvars(), 1)
                        : directional_derivative(dup, v);
      if (!duv.is_zero() && !(dec.l == duv)) {
        ok = false;
        detail = "l != D^2_{uv} p on " + lib.name;
      }
    }
  }
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  if (dt >= 60.0) {
    ok = false;
    detail = "exceeded the 60 s budget";
  }
  report(7, "quartic decomposition f = q1 q2 + r l for 20 seeded cone pairs per cubic", ok, dt,
         detail);
}

void criterion_8_example_suite() {
  auto t0 = Clock::now();
  bool ok = true;
  std::string detail;

  if (!restriction_h().equals_square) {
    ok = false;
    detail = "restriction h mismatch";
  }
  if (ok && !rank_one_vanishing()) {
    ok = false;
    detail = "rank-one composition nonzero";
  }
  if (ok) {
    Rng rng(80808);
    for (int t = 0; t < 50 && ok; ++t) {
      RatQuatMatrix2 p = sample_sp2(rng);
      RatQuatMatrix2 q = sample_sp2(rng);
      if (!sp2_invariance_check(p, q, 20, rng.next_u64())) {
        ok = false;
        detail = "invariance failed";
      }
    }
  }
  if (ok && hessian_rank_at_identity() != 16) {
    ok = false;
    detail = "Hessian rank != 16";
  }
  if (ok) {
    // nonnegativity of fhat at 10^5 seeded rational points
    Rng rng(80809);
    for (int t = 0; t < 100000; ++t) {
      if (sgn(fhat_eval(random_quat_matrix(rng, 6, 2))) < 0) {
        ok = false;
        detail = "fhat negative at a sample";
        break;
      }
    }
  }
  if (ok) {
    NullspaceSettings s;
    s.seed = 81111;
    CubicVanishingResult cv = cubics_vanishing_on_rank_one(s);
    if (cv.dimension != 16 || !cv.basis_check()) {
      ok = false;
      detail = "dim U = " + std::to_string(cv.dimension);
    }
  }
  if (ok) {
    NullspaceSettings s;
    s.seed = 81112;
    int dim = extremality_dimension(s);
    if (dim != 1) {
      ok = false;
      detail = "dim L-tilde = " + std::to_string(dim);
    }
  }
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  if (dt >= 600.0) {
    ok = false;
    detail = "exceeded the 10 min budget";
  }
  report(8, "quaternionic quartic suite: h, rank-one, Sp(2), Hessian 16, dims 16 and 1", ok, dt,
         detail);
}

void criterion_9_negative_controls() {
  auto t0 = Clock::now();
  bool ok = true;
  std::string detail;

  // tampered manifest through the command line, with the failing check named
  fs::path dir = fs::temp_directory_path() / "hypercert_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "squares.txt");
    os << "squares m=2 s=2\nweight: 1/1\n1/1 [2,0]\nweight: 1/1\n1/1 [0,2]\n";
  }
  auto cli = [&](const std::string& args, std::string* output) {
    fs::path outf = dir / "out.txt";
    std::string cmd =
        std::string(HYPERCERT_CLI_PATH) + " " + args + " > " + outf.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream is(outf);
    std::stringstream ss;
    ss << is.rdbuf();
    *output = ss.str();
    return WEXITSTATUS(rc);
  };
  std::string out;
  if (cli("sos2wron " + (dir / "squares.txt").string() + " --out-dir " + (dir / "cert").string(),
          &out) != 0) {
    ok = false;
    detail = "sos2wron failed";
  }
  if (ok && cli("verify " + (dir / "cert" / "certificate.manifest").string(), &out) != 0) {
    ok = false;
    detail = "clean certificate did not verify";
  }
  if (ok) {
    HomogeneousPoly q = read_poly_file(dir / "cert" / "q.poly");
    HomogeneousPoly bump(2, 4);
    bump.add_term({2, 2}, Rat(1));
    write_poly_file(dir / "cert" / "q.poly", q + bump);
    int rc = cli("verify " + (dir / "cert" / "certificate.manifest").string(), &out);
    if (rc != 1 || out.find("check identity: FAIL") == std::string::npos) {
      ok = false;
      detail = "tampered manifest not rejected with the identity check named";
    }
  }

  // a non-hyperbolic pair is refuted with a verifiable witness
  if (ok) {
    HomogeneousPoly p(2, 2);
    p.add_term({2, 0}, Rat(1));
    p.add_term({0, 2}, Rat(1));
    HyperbolicityVerdict v = check_hyperbolic(p, {Rat(1), Rat(0)});
    if (v.kind != VerdictKind::refuted ||
        is_real_rooted(restrict_line(p, v.witness, {Rat(1), Rat(0)}))) {
      ok = false;
      detail = "refutation witness missing or not independently confirmable";
    }
  }

  // (mu, d) = (3, 4) violates the degree restriction
  if (ok && degree_restricted(3, 4)) {
    ok = false;
    detail = "degree_restricted(3,4) accepted";
  }
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  report(9, "negative controls: tampering named, refutation witnessed, (3,4) rejected", ok, dt,
         detail);
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_1_gate_region();
  criterion_2_closed_forms();
  criterion_3_bezoutian_bound();
  criterion_4_sos_round_trip();
  criterion_5_soundness_sampling();
  criterion_6_bezout_structure();
  criterion_7_quartic_decomposition();
  criterion_8_example_suite();
  criterion_9_negative_controls();
  if (g_failures) {
    std::printf("RESULT: FAIL (%d criteria)\n", g_failures);
    return 1;
  }
  std::printf("RESULT: PASS\n");
  return 0;
}
