#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "tracebound/errors.hpp"
#include "tracebound/operators.hpp"

using namespace tracebound;

namespace {

Presentation c4() {
  return Presentation({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
}

std::vector<Surd> random_vector(std::size_t n, std::mt19937& rng) {
  std::vector<Surd> v;
  for (std::size_t i = 0; i < n; ++i) {
    v.emplace_back(Rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 4) + 1));
  }
  return v;
}

const DefectReport& row(const std::vector<DefectReport>& rows, const std::string& label) {
  for (const auto& r : rows) {
    if (r.label == label) {
      return r;
    }
  }
  FAIL("missing row " << label);
  return rows.front();
}

}  // namespace

TEST_CASE("surd arithmetic") {
  const Surd r2 = Surd::sqrt_of(2);
  const Surd r8 = Surd::sqrt_of(8);
  const Surd sum = r2 + r8;
  CHECK(sum.exact());
  CHECK(sum == Surd::sqrt_of(18));
  CHECK((r2 * r8) == Surd(4));
  CHECK((r2 - r2).is_zero());
  CHECK((r2 - r8) == -Surd::sqrt_of(2));
  CHECK((Surd(3) + Surd(-5)) == Surd(-2));
  const Surd mixed = r2 + Surd::sqrt_of(3);
  CHECK_FALSE(mixed.exact());
  CHECK(mixed.value() == doctest::Approx(std::sqrt(2.0) + std::sqrt(3.0)));
  CHECK(Surd::sqrt_of(Rational(1, 4)) == Surd(Rational(1, 2)));
}

TEST_CASE("adjoint satisfies the weighted adjoint identity") {
  const Presentation p = c4();
  const SphereModel m(p, 4);
  std::mt19937 rng(3);
  for (Letter x = 0; x < 4; ++x) {
    for (std::size_t k = 1; k <= 4; ++k) {
      for (const ChainOperator& a :
           {iso_S(m, x, k), op_T(m, p.generator(x), k),
            compose(iso_S(m, x, k), adjoint_S(m, (x + 1) % 4, k))}) {
        const ChainOperator b = adjoint(m, a);
        const auto f = random_vector(a.cols(), rng);
        const auto g = random_vector(a.rows(), rng);
        const Surd lhs = m.space(a.target_depth()).inner(a.apply(f), g);
        const Surd rhs = m.space(a.source_depth()).inner(f, b.apply(g));
        CHECK(lhs.value() == doctest::Approx(rhs.value()).epsilon(1e-12));
        if (lhs.exact() && rhs.exact()) {
          CHECK(lhs == rhs);
        }
      }
    }
    // The closed form of S_x^* agrees with the generic adjoint.
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto diff = subtract(adjoint(m, iso_S(m, x, k)), adjoint_S(m, x, k));
      CHECK(diff.is_zero());
    }
  }
}

TEST_CASE("S_x is an isometry and S_x S_x^* is a projection") {
  const Presentation p = c4();
  const SphereModel m(p, 5);
  std::mt19937 rng(5);
  for (Letter x = 0; x < 4; ++x) {
    for (std::size_t k = 1; k <= 5; ++k) {
      const ChainOperator s = iso_S(m, x, k);
      const auto f = random_vector(s.cols(), rng);
      CHECK(m.space(k).inner(s.apply(f), s.apply(f)) == m.space(k - 1).inner(f, f));
      const ChainOperator e = compose(s, adjoint_S(m, x, k));
      CHECK(subtract(compose(e, e), e).is_zero());
    }
  }
}

TEST_CASE("operator norms agree with a dense SVD") {
  const Presentation p({"x", "y", "z"}, {{"x", "z"}});
  const SphereModel m(p, 4);
  for (Letter x = 0; x < 3; ++x) {
    for (std::size_t k = 1; k <= 4; ++k) {
      for (const ChainOperator& a :
           {op_T(m, p.generator(x), k), iso_S(m, x, k),
            subtract(compose(adjoint(m, op_T(m, p.generator(x), k)), op_T(m, p.generator(x), k)),
                     identity_operator(m, k)),
            add(compose(iso_S(m, x, k), adjoint_S(m, x, k)), identity_operator(m, k))}) {
        const Eigen::MatrixXd dense = oracle::orthonormal_matrix(m, a);
        CHECK(operator_norm(m, a) == doctest::Approx(oracle::spectral_norm(dense)).epsilon(1e-8));
        CHECK(hs_norm_squared_approx(m, a) ==
              doctest::Approx(dense.squaredNorm()).epsilon(1e-12));
        if (auto hs = hs_norm_squared(m, a)) {
          CHECK(to_double(*hs) == doctest::Approx(dense.squaredNorm()).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("Cuntz relations hold exactly on free monoids") {
  for (std::size_t n : {2, 3}) {
    const auto rows = relation_defects(Presentation::free(n), 6);
    std::size_t checked = 0;
    for (const auto& r : rows) {
      if (r.label.rfind("S.iso[", 0) == 0 || r.label.rfind("S.delta", 0) == 0 ||
          r.label == "S.sum") {
        CHECK(r.norm_defect == 0.0);
        REQUIRE(r.hs_defect.has_value());
        CHECK(*r.hs_defect == 0);
        CHECK(r.exceptional_mass == 0);
        ++checked;
      }
    }
    CHECK(checked == n + n * (n - 1) + 1);
  }
}

TEST_CASE("literal composition operators miss the weight factor") {
  const Presentation p = Presentation::free(2);
  const SphereModel m(p, 3);
  const ChainOperator t = op_T(m, p.generator(0), 3);
  // On functions supported on xW, |T_x f|^2 = 2 |f|^2.
  std::vector<Surd> f(m.space(3).dimension(), Surd(0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (m.space(3).basis[i].word().front() == 0) {
      f[i] = Surd(static_cast<int>(i % 3) + 1);
    }
  }
  CHECK(m.space(2).inner(t.apply(f), t.apply(f)) == Surd(2) * m.space(3).inner(f, f));
  CHECK(operator_norm(m, t) == doctest::Approx(std::sqrt(2.0)));
  const auto rows = relation_defects(m);
  CHECK(row(rows, "T.iso[x]").norm_defect >= 0.4);
  CHECK(row(rows, "T.iso[x]").norm_defect == doctest::Approx(1.0));
  CHECK(beta_action(m, p.generator(0), 3).entries() == t.entries());
}

TEST_CASE("N^2 composition operator norm") {
  const Presentation p({"x", "y"}, {{"x", "y"}});
  const SphereModel m(p, 6);
  for (std::size_t k = 2; k <= 6; ++k) {
    CHECK(operator_norm(m, op_T(m, p.generator(0), k)) == doctest::Approx(std::sqrt(2.0)));
  }
}

TEST_CASE("C4 range projection mass decays like 2^-K") {
  const Presentation p = c4();
  const auto adj = oracle::adjacency(p);
  for (std::size_t k = 4; k <= 8; ++k) {
    const SphereModel m(p, k);
    const ChainOperator proj = range_projection(m, {0, 2}, k);
    // Words of length k whose image has no left divisor a or c.
    std::size_t count = 0;
    for (const FreeWord& w : oracle::all_words(4, k)) {
      count += !oracle::left_divides(adj, {0}, w) && !oracle::left_divides(adj, {2}, w) ? 1 : 0;
    }
    CHECK(support_mass(m, proj) == Rational(Integer(count), ipow(4, k)));
    CHECK(support_mass(m, proj) == Rational(1, Integer(1) << k));
  }
  const auto rows = relation_defects(p, 6);
  for (const auto& r : rows) {
    if (r.label.rfind("S.", 0) == 0 && r.label.rfind("S.proj", 0) != 0 &&
        r.label.rfind("S.iso.ball", 0) != 0) {
      CHECK(r.norm_defect <= 1e-12);
      REQUIRE(r.hs_defect.has_value());
      CHECK(*r.hs_defect == 0);
    }
  }
  CHECK(row(rows, "S.proj[a:c]").exceptional_mass == Rational(1, 64));
  CHECK(row(rows, "S.proj[b:d]").exceptional_mass == Rational(1, 64));
}

TEST_CASE("ball truncation defect sits on the top shell") {
  const auto rows = relation_defects(Presentation::free(2), 4);
  const auto& r = row(rows, "S.iso.ball[x]");
  CHECK(r.exceptional_mass == Rational(1, 5));
  CHECK(r.norm_defect == 1.0);
  REQUIRE(r.hs_defect.has_value());
  CHECK(*r.hs_defect == 16);
}

TEST_CASE("operator shape checks") {
  const SphereModel m(Presentation::free(2), 3);
  CHECK_THROWS_AS(compose(iso_S(m, 0, 2), iso_S(m, 0, 2)), InputError);
  CHECK_THROWS_AS(iso_S(m, 0, 4), InputError);
  CHECK_THROWS_AS(relation_defects(Presentation::free(2), 0), InputError);
}

namespace {

std::vector<Surd> basis_vector(std::size_t dim, std::size_t i) {
  std::vector<Surd> v(dim, Surd(0));
  v[i] = Surd(1);
  return v;
}

std::vector<Presentation> model_presentations() {
  return {Presentation::free(2), Presentation::free(3), Presentation({"x", "y"}, {{"x", "y"}}),
          c4(), Presentation({"x", "y", "z"}, {{"x", "z"}})};
}

}  // namespace

TEST_CASE("isometry and adjoint identities hold exactly on basis vectors") {
  for (const Presentation& p : model_presentations()) {
    const std::size_t depth = p.rank() >= 3 ? 5 : 6;
    const SphereModel m(p, depth);
    for (Letter x = 0; x < p.rank(); ++x) {
      for (std::size_t k = 1; k <= depth; ++k) {
        const ChainOperator s = iso_S(m, x, k);
        const ChainOperator s_star = adjoint_S(m, x, k);
        const auto& lo = m.space(k - 1);
        const auto& hi = m.space(k);
        for (std::size_t i = 0; i < lo.dimension(); ++i) {
          const auto e = basis_vector(lo.dimension(), i);
          REQUIRE(hi.inner(s.apply(e), s.apply(e)) == lo.inner(e, e));
        }
        // Adjointness on all basis pairs, through the sparse entries.
        for (const auto& [key, v] : s.entries()) {
          const Surd lhs = v * Surd(hi.weights[key.first]);
          const Surd rhs = s_star.at(key.second, key.first) * Surd(lo.weights[key.second]);
          REQUIRE(lhs == rhs);
        }
        CHECK(s_star.entries().size() == s.entries().size());
      }
    }
  }
}

TEST_CASE("S-model examples") {
  const Presentation f2 = Presentation::free(2);
  const SphereModel m(f2, 2);
  const ChainOperator s = iso_S(m, 0, 1);
  const auto sx = s.apply(basis_vector(1, 0));
  CHECK(sx[*m.space(1).index_of(f2.parse_element("x"))] == Surd::sqrt_of(2));
  CHECK(sx[*m.space(1).index_of(f2.parse_element("y"))].is_zero());
  const ChainOperator s_star = adjoint_S(m, 0, 1);
  CHECK(s_star.apply(basis_vector(2, 0))[0] == Surd::sqrt_of(Rational(1, 2)));
  CHECK(s_star.apply(basis_vector(2, 1))[0].is_zero());
  CHECK(subtract(op_T(m, f2.identity(), 2), identity_operator(m, 2)).is_zero());
  CHECK(range_projection(m, {0, 1}, 2).is_zero());
  CHECK(iso_S(m, 1, 2).apply(std::vector<Surd>(2, Surd(0)))[3].is_zero());

  const Presentation n2({"x", "y"}, {{"x", "y"}});
  const SphereModel mn(n2, 6);
  const auto& w1 = mn.space(1);
  const auto& w2 = mn.space(2);
  const auto xy = *w2.index_of(n2.parse_element("xy"));
  const auto y = *w1.index_of(n2.parse_element("y"));
  CHECK(iso_S(mn, 0, 2).apply(basis_vector(2, y))[xy] == Surd(1));
  CHECK(adjoint_S(mn, 0, 2).apply(basis_vector(3, xy))[y] == Surd(1));
  const ChainOperator proj = range_projection(mn, {0}, 2);
  REQUIRE(proj.entries().size() == 1);
  CHECK(proj.entries().begin()->first.first == *w2.index_of(n2.parse_element("yy")));
  CHECK(support_mass(mn, proj) == Rational(1, 4));

  // beta_x on N^2 is not contractive in the weighted model.
  const double beta = operator_norm(mn, beta_action(mn, n2.generator(0), 6));
  CHECK(beta > 0.0);
  CHECK(beta <= std::sqrt(2.0) + 1e-12);
  CHECK(beta == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("exact zero table for non-commuting pairs") {
  for (const Presentation& p : model_presentations()) {
    const SphereModel m(p, 4);
    for (Letter x = 0; x < p.rank(); ++x) {
      for (Letter y = 0; y < p.rank(); ++y) {
        if (x == y) {
          continue;
        }
        for (std::size_t k = 1; k <= 4; ++k) {
          const ChainOperator cross = compose(adjoint_S(m, x, k), iso_S(m, y, k));
          if (!p.commutes(x, y)) {
            CHECK(cross.is_zero());
          } else if (k >= 2) {
            CHECK(subtract(compose(iso_S(m, x, k), iso_S(m, y, k - 1)),
                           compose(iso_S(m, y, k), iso_S(m, x, k - 1)))
                      .is_zero());
          }
        }
      }
    }
  }
}

TEST_CASE("range projection mass per coconnected component") {
  for (std::size_t n = 2; n <= 5; ++n) {
    const unsigned pairs = static_cast<unsigned>(n * (n - 1) / 2);
    for (unsigned mask = 0; mask < (1U << pairs); mask += (n == 5 ? 7 : 1)) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < n; ++i) {
        names.push_back(std::string(1, static_cast<char>('a' + i)));
      }
      std::vector<std::pair<std::string, std::string>> edges;
      unsigned bit = 0;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b, ++bit) {
          if ((mask >> bit) & 1U) {
            edges.emplace_back(names[a], names[b]);
          }
        }
      }
      const Presentation p(names, edges);
      const std::size_t k = 3;
      const SphereModel m(p, k);
      for (const auto& r : relation_defects(m)) {
        if (r.label.rfind("S.proj[", 0) != 0) {
          continue;
        }
        const auto size = static_cast<long>(std::count(r.label.begin(), r.label.end(), ':') + 1);
        Rational expected = 1;
        for (std::size_t i = 0; i < k; ++i) {
          expected *= Rational(static_cast<long>(n) - size, static_cast<long>(n));
        }
        REQUIRE(r.exceptional_mass == expected);
      }
    }
  }
}
