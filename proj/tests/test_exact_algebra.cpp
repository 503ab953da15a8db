#include <catch2/catch_amalgamated.hpp>

#include "hypercert/exact_matrix.hpp"
#include "hypercert/homogeneous.hpp"
#include "hypercert/polymap.hpp"
#include "hypercert/quadratic.hpp"
#include "hypercert/rng.hpp"
#include "hypercert/univariate.hpp"

using namespace hypercert;

namespace {

HomogeneousPoly random_homogeneous(Rng& rng, int m, int d, int terms) {
  HomogeneousPoly p(m, d);
  auto monos = monomials_of_degree(m, d);
  for (int t = 0; t < terms; ++t) {
    const ExpVec& e = monos[rng.next_below(monos.size())];
    p.add_term(e, rng.next_rat(8, 3));
  }
  return p;
}

UnivariatePoly from_roots(const std::vector<Rat>& roots) {
  UnivariatePoly f({Rat(1)});
  for (const Rat& r : roots) f = f * UnivariatePoly({-r, Rat(1)});
  return f;
}

}  // namespace

TEST_CASE("dim_forms") {
  CHECK(dim_forms(1, 0) == 1);
  CHECK(dim_forms(1, 7) == 1);
  CHECK(dim_forms(3, 6) == 28);
  CHECK(dim_forms(4, 4) == 35);
  CHECK_THROWS_AS(dim_forms(0, 2), error);
}

TEST_CASE("directional derivatives") {
  // p = x1 x2
  HomogeneousPoly p(2, 2);
  p.add_term({1, 1}, Rat(1));

  SECTION("first order in (1,1)") {
    HomogeneousPoly d = directional_derivative(p, {Rat(1), Rat(1)});
    HomogeneousPoly expect(2, 1);
    expect.add_term({1, 0}, Rat(1));
    expect.add_term({0, 1}, Rat(1));
    CHECK(d == expect);
  }
  SECTION("zero direction kills the derivative") {
    CHECK(directional_derivative(p, {Rat(0), Rat(0)}).is_zero());
  }
  SECTION("mixed second derivative of x1 x2 is the constant 2... times 1") {
    HomogeneousPoly d2 = directional_derivative(directional_derivative(p, {Rat(1), Rat(1)}),
                                                {Rat(1), Rat(1)});
    CHECK(d2.degree() == 0);
    CHECK(d2.eval({Rat(0), Rat(0)}) == 2);
  }
  SECTION("order beyond the degree gives zero") {
    CHECK(directional_derivative(p, {Rat(1), Rat(1)}, 3).is_zero());
  }
}

TEST_CASE("composition with polynomial maps") {
  // p = y1^2 + y2^2, phi = (x1^2, x2^2)
  HomogeneousPoly p(2, 2);
  p.add_term({2, 0}, Rat(1));
  p.add_term({0, 2}, Rat(1));
  std::vector<HomogeneousPoly> comps;
  HomogeneousPoly c1(2, 2), c2(2, 2);
  c1.add_term({2, 0}, Rat(1));
  c2.add_term({0, 2}, Rat(1));
  comps = {c1, c2};
  HomogeneousPoly q = compose(p, PolyMap(comps, 2, 2));
  HomogeneousPoly expect(2, 4);
  expect.add_term({4, 0}, Rat(1));
  expect.add_term({0, 4}, Rat(1));
  CHECK(q == expect);

  SECTION("identity map is the identity") {
    CHECK(compose(p, PolyMap::identity(2)) == p);
  }
  SECTION("degree bookkeeping deg(p o phi) = deg(p) deg(phi)") {
    Rng rng(3);
    HomogeneousPoly cubic = random_homogeneous(rng, 2, 3, 4);
    if (cubic.is_zero()) cubic.add_term({3, 0}, Rat(1));
    CHECK(compose(cubic, PolyMap(comps, 2, 2)).degree() == 6);
  }
  SECTION("arity mismatch is a malformed witness") {
    HomogeneousPoly three_vars(3, 2);
    three_vars.add_term({1, 1, 0}, Rat(1));
    CHECK_THROWS_AS(compose(three_vars, PolyMap(comps, 2, 2)), malformed_witness_error);
  }
}

TEST_CASE("line restriction") {
  HomogeneousPoly p(2, 2);
  p.add_term({1, 1}, Rat(1));  // x1 x2
  std::vector<Rat> e{Rat(1), Rat(1)};

  SECTION("p(te) = t^2 p(e)") {
    UnivariatePoly f = restrict_line(p, {Rat(0), Rat(0)}, e);
    CHECK(f == UnivariatePoly({Rat(0), Rat(0), Rat(1)}));
  }
  SECTION("p(te - x) at x=(1,2) is (t-1)(t-2)") {
    UnivariatePoly f = restrict_line(p, {Rat(1), Rat(2)}, e);
    CHECK(f == UnivariatePoly({Rat(2), Rat(-3), Rat(1)}));
  }
  SECTION("derivative-swap identity D_u^k p(x) = k!/(d-k)! D_x^{d-k} p(u)") {
    Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
      int m = 2 + static_cast<int>(rng.next_below(3));
      int d = 2 + static_cast<int>(rng.next_below(3));
      HomogeneousPoly q = random_homogeneous(rng, m, d, 6);
      if (q.is_zero()) continue;
      std::vector<Rat> u = rng.next_rat_vector(m), x = rng.next_rat_vector(m);
      for (int k = 1; k <= d; ++k) {
        HomogeneousPoly duk = directional_derivative(q, u, k);
        Rat lhs = duk.is_zero() ? Rat(0) : duk.eval(x);
        HomogeneousPoly dxk = (d == k) ? q : directional_derivative(q, x, d - k);
        Rat rhs = dxk.is_zero() ? Rat(0) : dxk.eval(u);
        Rat factor(1);
        for (int i = 2; i <= k; ++i) factor *= i;          // k!
        Rat dfact(1);
        for (int i = 2; i <= d - k; ++i) dfact *= i;       // (d-k)!
        CHECK(lhs == factor / dfact * rhs);
      }
    }
  }
  SECTION("Euler identity") {
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
      HomogeneousPoly q = random_homogeneous(rng, 3, 4, 6);
      HomogeneousPoly lhs = euler_sum(q);
      CHECK(lhs == q * Rat(4));
    }
  }
}

TEST_CASE("Sturm counting") {
  UnivariatePoly no_roots({Rat(1), Rat(0), Rat(1)});        // t^2 + 1
  UnivariatePoly three({Rat(0), Rat(-1), Rat(0), Rat(1)});  // t^3 - t
  CHECK(sturm_count(no_roots) == 0);
  CHECK(sturm_count(three) == 3);
  CHECK(sturm_count(three, RealInterval::below(Rat(0))) == 1);
  CHECK_THROWS_AS(sturm_count(UnivariatePoly::zero()), error);

  SECTION("squarefree products of distinct rational roots") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Rat> roots;
      int n = 1 + static_cast<int>(rng.next_below(5));
      for (int i = 0; i < n; ++i) {
        Rat r = rng.next_rat(6, 3);
        bool dup = false;
        for (const Rat& s : roots) dup = dup || s == r;
        if (!dup) roots.push_back(r);
      }
      CHECK(sturm_count(from_roots(roots)) == static_cast<int>(roots.size()));
    }
  }
  SECTION("endpoint semantics") {
    // roots of t^3 - t are -1, 0, 1
    CHECK(sturm_count(three, RealInterval::open(Rat(-1), Rat(1))) == 1);
    CHECK(sturm_count(three, RealInterval::closed(Rat(-1), Rat(1))) == 3);
    CHECK(sturm_count(three, RealInterval{Rat(0), std::nullopt, false, true}) == 2);
  }
}

TEST_CASE("real-rootedness") {
  // (t-1)^2 (t+3)
  UnivariatePoly f = from_roots({Rat(1), Rat(1), Rat(-3)});
  CHECK(is_real_rooted(f));
  CHECK_FALSE(is_real_rooted(UnivariatePoly({Rat(1), Rat(0), Rat(1)})));
  // t^4 + t^2 has roots 0, 0, +-i
  CHECK_FALSE(is_real_rooted(UnivariatePoly({Rat(0), Rat(0), Rat(1), Rat(0), Rat(1)})));
}

TEST_CASE("Lagrange diagonalization") {
  SECTION("x1 x2 splits as difference of squares") {
    HomogeneousPoly q(2, 2);
    q.add_term({1, 1}, Rat(1));
    QuadraticFormDiag d = lagrange_diagonalize(q);
    CHECK(d.reconstruct() == q);
    Signature s = d.signature();
    CHECK(s.positive == 1);
    CHECK(s.negative == 1);
    CHECK(s.zero == 0);
  }
  SECTION("sum of squares is positive definite") {
    HomogeneousPoly q(2, 2);
    q.add_term({2, 0}, Rat(1));
    q.add_term({0, 2}, Rat(1));
    Signature s = lagrange_diagonalize(q).signature();
    CHECK(s == Signature{2, 0, 0});
  }
  SECTION("Lorentz form in three variables has signature (1,2,0)") {
    // <e,y>^2/||e||^2 - ||y||^2/2 with e = (1,1,0)
    HomogeneousPoly q(3, 2);
    q.add_term({2, 0, 0}, Rat(0));
    std::vector<Rat> e{Rat(1), Rat(1), Rat(0)};
    HomogeneousPoly le = HomogeneousPoly::linear_form(e);
    HomogeneousPoly form = le * le * Rat(1, 2);
    for (int i = 0; i < 3; ++i) {
      HomogeneousPoly xi = HomogeneousPoly::variable(3, i);
      form = form - xi * xi * Rat(1, 2);
    }
    QuadraticFormDiag d = lagrange_diagonalize(form);
    CHECK(d.reconstruct() == form);
    CHECK(d.signature() == Signature{1, 2, 0});
  }
  SECTION("zero form") {
    HomogeneousPoly q(3, 2);
    QuadraticFormDiag d = lagrange_diagonalize(q);
    CHECK(d.signature() == Signature{0, 0, 3});
  }
  SECTION("Sylvester invariance under a random congruence") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
      int n = 3;
      HomogeneousPoly q = random_homogeneous(rng, n, 2, 4);
      Signature s1 = lagrange_diagonalize(q).signature();
      // random invertible linear substitution
      std::vector<SparsePoly> sub;
      RatMatrix t;
      for (;;) {
        t.assign(n, std::vector<Rat>(n));
        for (auto& row : t)
          for (auto& v : row) v = rng.next_rat(3, 2);
        try {
          mat_inverse(t);
          break;
        } catch (const error&) {
        }
      }
      for (int i = 0; i < n; ++i) {
        SparsePoly li(n);
        for (int j = 0; j < n; ++j)
          if (sgn(t[i][j]) != 0) li = li + SparsePoly::variable(n, j, t[i][j]);
        sub.push_back(li);
      }
      SparsePoly qs = q.sparse().substitute(sub);
      HomogeneousPoly qt = qs.is_zero() ? HomogeneousPoly(n, 2) : HomogeneousPoly(qs, 2);
      Signature s2 = lagrange_diagonalize(qt).signature();
      CHECK(s1.positive == s2.positive);
      CHECK(s1.negative == s2.negative);
    }
  }
}

TEST_CASE("exact and modular rank") {
  SECTION("identity and outer products") {
    ExactMatrix id3(3, 3);
    for (int i = 0; i < 3; ++i) id3.set(i, i, Rat(1));
    CHECK(matrix_rank_exact(id3).rank == 3);

    ExactMatrix outer(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) outer.set(i, j, Rat((i + 1) * (j + 2)));
    CHECK(matrix_rank_exact(outer).rank == 1);
  }
  SECTION("exact and modular agree on random integer matrices") {
    Rng rng(31);
    for (int trial = 0; trial < 6; ++trial) {
      int rows = 10 + static_cast<int>(rng.next_below(41));
      int cols = 10 + static_cast<int>(rng.next_below(41));
      int rk = 1 + static_cast<int>(rng.next_below(std::min(rows, cols)));
      // random rank-rk product
      ExactMatrix m(rows, cols);
      std::vector<std::vector<long>> a(rows, std::vector<long>(rk)), b(rk, std::vector<long>(cols));
      for (auto& row : a)
        for (auto& v : row) v = rng.next_int(-5, 5);
      for (auto& row : b)
        for (auto& v : row) v = rng.next_int(-5, 5);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
          long s = 0;
          for (int k = 0; k < rk; ++k) s += a[i][k] * b[k][j];
          if (s) m.set(i, j, Rat(s));
        }
      RankResult ex = matrix_rank_exact(m);
      RankResult mod = matrix_rank_auto_modular(m, rng.next_u64());
      CHECK(ex.rank == mod.rank);
      CHECK(ex.rank <= rk);
      CHECK(mod.confidence == RankConfidence::probabilistic);
    }
  }
  SECTION("nullspace bases") {
    ExactMatrix id3(3, 3);
    for (int i = 0; i < 3; ++i) id3.set(i, i, Rat(1));
    CHECK(nullspace_basis(id3).empty());

    ExactMatrix zero23(2, 3);
    CHECK(nullspace_basis(zero23).size() == 3);

    ExactMatrix row(1, 2);
    row.set(0, 0, Rat(1));
    row.set(0, 1, Rat(1));
    auto basis = nullspace_basis(row);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0][0] == -basis[0][1]);
    CHECK(sgn(basis[0][0]) != 0);
  }
  SECTION("nullspace vectors satisfy M v = 0 exactly") {
    Rng rng(37);
    ExactMatrix m(6, 9);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 9; ++j)
        if (rng.next_below(2)) m.set(i, j, rng.next_rat(5, 3));
    auto basis = nullspace_basis(m);
    RankResult r = matrix_rank_exact(m);
    CHECK(static_cast<int>(basis.size()) == 9 - r.rank);
    for (const auto& v : basis) {
      for (const Rat& y : m.apply(v)) CHECK(sgn(y) == 0);
    }
  }
}

TEST_CASE("four-square folding of positive rationals") {
  Rng rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    Rat w = rat(rng.next_int(1, 500), rng.next_int(1, 40));
    auto sq = rat_four_squares(w);
    REQUIRE(!sq.empty());
    Rat sum(0);
    for (const Rat& c : sq) sum += c * c;
    CHECK(sum == w);
    CHECK(sq.size() <= 4);
  }
}

TEST_CASE("polynomial gcd and squarefree machinery") {
  UnivariatePoly f = from_roots({Rat(1), Rat(1), Rat(-3)});
  UnivariatePoly g = squarefree_part(f);
  CHECK(g.degree() == 2);
  CHECK(sgn(g(Rat(1))) == 0);
  CHECK(sgn(g(Rat(-3))) == 0);
  auto parts = squarefree_decomposition(f);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].degree() == 1);  // multiplicity-1 part: t + 3
  CHECK(parts[1].degree() == 1);  // multiplicity-2 part: t - 1
  CHECK(root_count_with_multiplicity(f, RealInterval::all()) == 3);
  CHECK(root_count_with_multiplicity(f, RealInterval::above(Rat(0))) == 2);
}
