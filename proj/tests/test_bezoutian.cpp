#include <catch2/catch_amalgamated.hpp>

#include "hypercert/bezoutian.hpp"
#include "hypercert/rng.hpp"
#include "hypercert/wronskian.hpp"

using namespace hypercert;

namespace {

HyperbolicPair pair_x1x2() {
  return family_product_of_linears({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {Rat(1), Rat(1)});
}

HyperbolicPair triple_product() {
  return family_product_of_linears(
      {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}},
      {Rat(1), Rat(1), Rat(1)});
}

UnivariatePoly random_univariate(Rng& rng, int deg) {
  std::vector<Rat> c(deg + 1);
  for (auto& v : c) v = rng.next_rat(6, 3);
  if (sgn(c.back()) == 0) c.back() = 1;
  return UnivariatePoly(c);
}

// (f(t) g(s) - f(s) g(t)) and sum c_jl t^j s^l (t - s) as bivariate polys
SparsePoly to_bivariate(const UnivariatePoly& f, int var) {
  SparsePoly out(2);
  for (int i = 0; i <= f.degree(); ++i) {
    if (sgn(f.coeff(i)) == 0) continue;
    ExpVec e(2, 0);
    e[var] = static_cast<unsigned>(i);
    out.add_term(e, f.coeff(i));
  }
  return out;
}

}  // namespace

TEST_CASE("scalar Bezout matrices") {
  SECTION("f = t^2 - 1, g = 2t") {
    BezoutMatrix b(UnivariatePoly({Rat(-1), Rat(0), Rat(1)}), UnivariatePoly({Rat(0), Rat(2)}), 2);
    CHECK(b.entry(0, 0) == 2);
    CHECK(b.entry(0, 1) == 0);
    CHECK(b.entry(1, 0) == 0);
    CHECK(b.entry(1, 1) == 2);
  }
  SECTION("g = 0 gives the zero matrix") {
    BezoutMatrix b(UnivariatePoly({Rat(-1), Rat(0), Rat(1)}), UnivariatePoly::zero(), 2);
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) CHECK(b.entry(j, l) == 0);
  }
  SECTION("degree preconditions") {
    CHECK_THROWS_AS(
        BezoutMatrix(UnivariatePoly({Rat(1), Rat(1)}), UnivariatePoly({Rat(0), Rat(0), Rat(1)}), 2),
        error);
  }
  SECTION("defining identity round-trips for random pairs up to degree 8") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      int df = 1 + static_cast<int>(rng.next_below(8));
      int dg = static_cast<int>(rng.next_below(static_cast<u64>(df) + 1));
      UnivariatePoly f = random_univariate(rng, df);
      UnivariatePoly g = random_univariate(rng, dg);
      int d = df;
      BezoutMatrix b(f, g, d);
      CHECK(b.is_symmetric());
      // lhs: f(t)g(s) - f(s)g(t)
      SparsePoly ft = to_bivariate(f, 0), fs = to_bivariate(f, 1);
      SparsePoly gt = to_bivariate(g, 0), gs = to_bivariate(g, 1);
      SparsePoly lhs = ft * gs - fs * gt;
      // rhs: sum c_jl t^j s^l (t - s)
      SparsePoly sum(2);
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l) {
          if (sgn(b.entry(j, l)) == 0) continue;
          ExpVec e(2, 0);
          e[0] = static_cast<unsigned>(j);
          e[1] = static_cast<unsigned>(l);
          sum.add_term(e, b.entry(j, l));
        }
      SparsePoly t_minus_s(2);
      t_minus_s.add_term({1, 0}, Rat(1));
      t_minus_s.add_term({0, 1}, Rat(-1));
      CHECK(sum * t_minus_s == lhs);
    }
  }
}

TEST_CASE("parameterized Bezoutians") {
  SECTION("x1 x2 at u = v = (1,1)") {
    auto pair = pair_x1x2();
    ParamBezoutian b(pair.p(), pair.e(), pair.e());
    HomogeneousPoly sq(2, 2), lin(2, 1), two(2, 0);
    sq.add_term({2, 0}, Rat(1));
    sq.add_term({0, 2}, Rat(1));
    lin.add_term({1, 0}, Rat(1));
    lin.add_term({0, 1}, Rat(1));
    two.add_term({0, 0}, Rat(2));
    CHECK(b.entry(0, 0) == sq);
    CHECK(b.entry(0, 1) == lin);
    CHECK(b.entry(1, 0) == lin);
    CHECK(b.entry(1, 1) == two);
    CHECK(b.grading_holds());
    CHECK(b.is_symmetric());
  }
  SECTION("the (0,0) entry is the Wronskian") {
    auto cubic = triple_product();
    Rng rng(11);
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<Rat> u = sample_cone_point(cubic, rng.next_u64(), ConeSampleStyle::interior);
      std::vector<Rat> v = sample_cone_point(cubic, rng.next_u64(), ConeSampleStyle::interior);
      ParamBezoutian b(cubic.p(), u, v);
      HyperwronWitness w{cubic, u, v, PolyMap::identity(3)};
      CHECK(b.entry(0, 0) == build_hyperwron(w));
      CHECK(b.grading_holds());
      CHECK(b.is_symmetric());
    }
  }
  SECTION("v = 0 kills the matrix") {
    auto pair = pair_x1x2();
    ParamBezoutian b(pair.p(), pair.e(), {Rat(0), Rat(0)});
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) CHECK(b.entry(j, l).is_zero());
  }
  SECTION("PSD at sampled points for cone data") {
    auto cubic = triple_product();
    Rng rng(13);
    std::vector<Rat> u = sample_cone_point(cubic, 1, ConeSampleStyle::interior);
    std::vector<Rat> v = sample_cone_point(cubic, 2, ConeSampleStyle::interior);
    ParamBezoutian b(cubic.p(), u, v);
    for (int t = 0; t < 40; ++t) {
      std::vector<Rat> x = rng.next_rat_vector(3);
      CHECK(is_psd_exact(b.eval(x)));
    }
  }
}

TEST_CASE("degree restriction predicate") {
  CHECK(degree_restricted(2, 7));
  CHECK(degree_restricted(3, 3));
  CHECK_FALSE(degree_restricted(3, 4));
  CHECK_THROWS_AS(degree_restricted(3, 2), error);
  CHECK_THROWS_AS(degree_restricted(1, 4), error);
}

TEST_CASE("hyperzout construction") {
  SECTION("the Wronskian selector recovers the hyperwron") {
    auto cubic = triple_product();
    GradedTuple xi = GradedTuple::wronskian_selector(3, 3, 1);
    HyperzoutWitness w{cubic, cubic.e(), cubic.e(), PolyMap::identity(3), xi};
    HyperwronWitness hw{cubic, cubic.e(), cubic.e(), PolyMap::identity(3)};
    CHECK(build_hyperzout(w) == build_hyperwron(hw));
  }
  SECTION("mu = 2 quadratic-block witness on x1 x2") {
    auto pair = pair_x1x2();
    HomogeneousPoly xi0 = HomogeneousPoly::constant(2, Rat(1));
    HomogeneousPoly xi1 = HomogeneousPoly::variable(2, 0);  // x1
    GradedTuple xi = GradedTuple::from_tail(2, 2, 2, 1, {xi0, xi1});
    HyperzoutWitness w{pair, pair.e(), pair.e(), PolyMap::identity(2), xi};
    HomogeneousPoly q = build_hyperzout(w);
    HomogeneousPoly expect(2, 2);  // 5 x1^2 + 2 x1 x2 + x2^2
    expect.add_term({2, 0}, Rat(5));
    expect.add_term({1, 1}, Rat(2));
    expect.add_term({0, 2}, Rat(1));
    CHECK(q == expect);
    Rng rng(17);
    for (int t = 0; t < 50; ++t) CHECK(sgn(q.eval(rng.next_rat_vector(2))) >= 0);
  }
  SECTION("an all-zero tuple produces zero") {
    auto pair = pair_x1x2();
    GradedTuple xi = GradedTuple::from_tail(2, 2, 2, 1,
                                            {HomogeneousPoly(2, 0), HomogeneousPoly(2, 1)});
    HyperzoutWitness w{pair, pair.e(), pair.e(), PolyMap::identity(2), xi};
    CHECK(build_hyperzout(w).is_zero());
  }
}

TEST_CASE("hyperzout verification") {
  auto pair = pair_x1x2();
  HomogeneousPoly xi0 = HomogeneousPoly::constant(2, Rat(1));
  HomogeneousPoly xi1 = HomogeneousPoly::variable(2, 0);
  GradedTuple xi = GradedTuple::from_tail(2, 2, 2, 1, {xi0, xi1});
  HyperzoutWitness w{pair, pair.e(), pair.e(), PolyMap::identity(2), xi};
  HomogeneousPoly q = build_hyperzout(w);

  SECTION("valid witness passes, with the PSD sample entry") {
    VerificationReport rep = verify_hyperzout(w, q, 32, 16, 3);
    CHECK(rep.pass());
    CHECK(rep.find("bezoutian-psd-samples")->status == CheckStatus::sampled_ok);
    CHECK(rep.find("degree-restriction")->detail.find("degree-restricted") != std::string::npos);
  }
  SECTION("B(phi(x0)) at x0 = (1,2): char poly t^2 - 7t + 1, PSD") {
    ParamBezoutian b(pair.p(), pair.e(), pair.e());
    RatMatrix m = b.eval({Rat(1), Rat(2)});
    CHECK(m[0][0] == 5);
    CHECK(m[0][1] == 3);
    CHECK(m[1][1] == 2);
    UnivariatePoly chi = char_poly(m);
    CHECK(chi == UnivariatePoly({Rat(1), Rat(-7), Rat(1)}));
    CHECK(is_psd_exact(m));
  }
  SECTION("tampered certificate fails the identity") {
    HomogeneousPoly bad = q + HomogeneousPoly::variable(2, 0) * HomogeneousPoly::variable(2, 1);
    VerificationReport rep = verify_hyperzout(w, bad, 32, 16, 3);
    CHECK_FALSE(rep.pass());
    CHECK(rep.find("identity")->status == CheckStatus::fail);
  }
}

TEST_CASE("2x2 PSD factorization") {
  SECTION("p2 = x1^2 + x2^2, p1 = x1, p0 = 1 reconstructs") {
    HomogeneousPoly p2(2, 2), p1(2, 1);
    p2.add_term({2, 0}, Rat(1));
    p2.add_term({0, 2}, Rat(1));
    p1.add_term({1, 0}, Rat(1));
    PsdFactor2x2 f = factor_2x2_psd(p2, p1, Rat(1));
    auto rec = f.reconstruct();
    CHECK(rec[0][0] == p2);
    CHECK(rec[0][1] == p1);
    CHECK(rec[1][1] == HomogeneousPoly::constant(2, Rat(1)));
  }
  SECTION("p0 = 0 with p1 = 0 factors p2 alone") {
    HomogeneousPoly p2(2, 2);
    p2.add_term({2, 0}, Rat(1));
    PsdFactor2x2 f = factor_2x2_psd(p2, HomogeneousPoly(2, 1), Rat(0));
    auto rec = f.reconstruct();
    CHECK(rec[0][0] == p2);
    CHECK(rec[0][1].is_zero());
    CHECK(rec[1][1].is_zero());
  }
  SECTION("p0 = 0 with p1 != 0 is not PSD") {
    HomogeneousPoly p2(2, 2), p1(2, 1);
    p2.add_term({2, 0}, Rat(1));
    p1.add_term({1, 0}, Rat(1));
    CHECK_THROWS_AS(factor_2x2_psd(p2, p1, Rat(0)), error);
  }
  SECTION("indefinite Schur complement is rejected") {
    HomogeneousPoly p2(2, 2), p1(2, 1);
    p1.add_term({1, 0}, Rat(1));  // p2 = 0, p1 = x1, p0 = 1: Schur = -x1^2
    CHECK_THROWS_AS(factor_2x2_psd(HomogeneousPoly(2, 2), p1, Rat(1)), error);
  }
}

TEST_CASE("mu = 2 hyperzouts are sums of squares") {
  auto pair = pair_x1x2();
  SECTION("the quadratic-block example collapses exactly") {
    HomogeneousPoly xi0 = HomogeneousPoly::constant(2, Rat(1));
    HomogeneousPoly xi1 = HomogeneousPoly::variable(2, 0);
    GradedTuple xi = GradedTuple::from_tail(2, 2, 2, 1, {xi0, xi1});
    HyperzoutWitness w{pair, pair.e(), pair.e(), PolyMap::identity(2), xi};
    WeightedSOS s = mu2_hyperzout_to_sos(w);
    CHECK(s.expand() == build_hyperzout(w));
  }
  SECTION("xi0 = 0 collapses to a single square") {
    HomogeneousPoly xi1 = HomogeneousPoly::variable(2, 1);
    GradedTuple xi = GradedTuple::from_tail(2, 2, 2, 1, {HomogeneousPoly(2, 0), xi1});
    HyperzoutWitness w{pair, pair.e(), pair.e(), PolyMap::identity(2), xi};
    WeightedSOS s = mu2_hyperzout_to_sos(w);
    CHECK(s.expand() == build_hyperzout(w));
    CHECK(s.size() == 1);
  }
  SECTION("the Lorentz mu = d = 2 witness gives the norm form") {
    std::vector<Rat> e{Rat(1), Rat(1), Rat(0)};
    auto lor = family_lorentz(e);
    GradedTuple xi = GradedTuple::wronskian_selector(3, 2, 1);
    HyperzoutWitness w{lor, e, e, PolyMap::identity(3), xi};
    WeightedSOS s = mu2_hyperzout_to_sos(w);
    HomogeneousPoly q = build_hyperzout(w);
    CHECK(s.expand() == q);
    HomogeneousPoly norm(3, 2);
    norm.add_term({2, 0, 0}, Rat(1));
    norm.add_term({0, 2, 0}, Rat(1));
    norm.add_term({0, 0, 2}, Rat(1));
    CHECK(q == norm);
  }
  SECTION("random xi tuples on both library quadratics collapse exactly") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
      HomogeneousPoly xi0 = HomogeneousPoly::constant(2, rng.next_rat(4, 2));
      HomogeneousPoly xi1(2, 1);
      xi1.add_term({1, 0}, rng.next_rat(4, 2));
      xi1.add_term({0, 1}, rng.next_rat(4, 2));
      GradedTuple xi = GradedTuple::from_tail(2, 2, 2, 1, {xi0, xi1});
      std::vector<Rat> u = sample_cone_point(pair, rng.next_u64(), ConeSampleStyle::interior);
      std::vector<Rat> v = sample_cone_point(pair, rng.next_u64(), ConeSampleStyle::interior);
      HyperzoutWitness w{pair, u, v, PolyMap::identity(2), xi};
      WeightedSOS s = mu2_hyperzout_to_sos(w);
      CHECK(s.expand() == build_hyperzout(w));
    }
  }
}

TEST_CASE("graded tuple invariants") {
  SECTION("leading slots must vanish") {
    std::vector<HomogeneousPoly> slots{HomogeneousPoly::constant(2, Rat(1)),
                                       HomogeneousPoly::constant(2, Rat(1)),
                                       HomogeneousPoly::variable(2, 0)};
    CHECK_THROWS_AS(GradedTuple(2, 3, 2, 1, slots), error);
  }
  SECTION("slot degrees follow the grading") {
    std::vector<HomogeneousPoly> slots{HomogeneousPoly::zero(2, 0),
                                       HomogeneousPoly::variable(2, 0),  // degree 1, expected 0
                                       HomogeneousPoly::variable(2, 1)};
    CHECK_THROWS_AS(GradedTuple(2, 3, 2, 1, slots), error);
  }
}
