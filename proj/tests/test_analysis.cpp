#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bilin/analysis.hpp"
#include "bilin/macaulay.hpp"
#include "oracles.hpp"

using namespace bilin;

TEST_CASE("degree formulas on worked values") {
  CHECK(dreg_formula(4, 4, 8) == 4);
  CHECK(dreg_formula(4, 8, 12) == 5);
  CHECK(dreg_formula(4, 4, 16) == 2);
  CHECK(tff_formula(4, 4, 10) == 4);
  CHECK(tff_formula(4, 6, 15) == 3);
  CHECK(tff_formula(20, 20, 42) == 19);
  CHECK(twit_bound(4, 4, 10) == 5);
  CHECK(twit_bound(4, 5, 11) == 6);
  CHECK(twit_bound(4, 4, 100) == 2);
  CHECK(hxl_degree(20, 20, 42, 19, 0) == 2);
  CHECK(hxl_degree(20, 20, 54, 20, 0) == 2);
  CHECK_THROWS(dreg_formula(4, 4, 4));
  CHECK_THROWS(tff_formula(4, 4, 3));
  CHECK_THROWS(twit_bound(4, 4, 9));
}

TEST_CASE("first fall and regularity differ by divisibility") {
  for (int nx = 1; nx <= 12; ++nx)
    for (int ny = nx; ny <= 16; ++ny)
      for (int m = nx + ny; m <= nx + ny + 20; ++m) {
        const int diff = tff_formula(nx, ny, m) - dreg_formula(nx, ny, m);
        const bool divisible = (nx * (ny - 1)) % (m - nx) == 0;
        CHECK(diff == (divisible ? 1 : 0));
        auto prof = degree_profile(nx, ny, m);
        CHECK(prof.divisible == divisible);
        CHECK(prof.d_wit.has_value() == (nx + ny <= m - 2));
        CHECK(dreg_formula(nx, ny, m) <= nx + 1);
        if (prof.d_wit) CHECK(hxl_degree(nx, ny, m, 0, 0) == *prof.d_wit);
      }
}

TEST_CASE("semiregularity checks agree") {
  Rng rng(200);
  int hits = 0;
  for (int t = 0; t < 20; ++t) {
    auto H = random_sequence({3, 3, 7, 13}, true, rng);
    const bool whole = is_y_semiregular(H);
    CHECK(whole == is_y_semiregular_by_parts(H));
    hits += whole;
  }
  CHECK(hits >= 15);
  FieldCtx F(13);
  auto H = random_sequence({3, 3, 7, 13}, true, rng);
  std::vector<BilinearPoly> dup(H.polys());
  dup[1] = dup[0];
  BilinearSequence D(F, 3, 3, dup);
  CHECK_FALSE(is_y_semiregular(D));
  CHECK(empirical_first_fall(D, 6) == 2);
  CHECK_THROWS(is_y_semiregular(random_sequence({3, 3, 7, 13}, false, rng)));
}

TEST_CASE("empirical degrees") {
  Rng rng(201);
  int at_tff = 0;
  for (int t = 0; t < 10; ++t) {
    auto B = random_sequence({4, 5, 13, 13}, false, rng);
    at_tff += empirical_first_fall(B, 6) == 3;
  }
  CHECK(at_tff >= 9);
  FieldCtx F(13);
  BilinearSequence Z(F, 2, 2, {BilinearPoly::zero(2, 2), BilinearPoly::zero(2, 2)});
  CHECK_FALSE(empirical_dreg(Z, 6).has_value());
  int agree = 0;
  for (int t = 0; t < 10; ++t) {
    auto H = random_sequence({4, 4, 12, 13}, true, rng);
    agree += empirical_dreg(H, 6) == dreg_formula(4, 4, 12);
  }
  CHECK(agree >= 9);
}

TEST_CASE("cramer syzygies verify") {
  Rng rng(202);
  auto H = random_sequence({2, 2, 3, 13}, true, rng);
  auto G = cramer_syzygy(H, {0, 1, 2});
  CHECK(verify_syzygy(H, G));
  int max_deg = 0;
  for (const auto& g : G)
    for (const auto& [mono, c] : g) max_deg = std::max(max_deg, mono.degree());
  CHECK(max_deg == 2);

  std::vector<BilinearPoly> polys(H.polys());
  polys[2] = BilinearPoly::zero(2, 2);
  BilinearSequence Z(H.field(), 2, 2, polys);
  auto G0 = cramer_syzygy(Z, {0, 1, 2});
  CHECK(verify_syzygy(Z, G0));
  CHECK_THROWS(cramer_syzygy(H, {0, 1}));
}

TEST_CASE("cost estimates") {
  const Params p{20, 20, 42, 5};
  CHECK(std::lround(estimate(Algorithm::YMXL, p).log2_mults) == 110);
  CHECK(std::abs(estimate(Algorithm::YHXLGaussian, p, {19, 0, 2.8}).log2_mults - 59) <= 1.0);
  CHECK(std::abs(estimate(Algorithm::YHXLWiedemann, {20, 20, 54, 5}, {20, 0, 2.8}).log2_mults - 60) <= 1.0);
  auto h = optimal_hybrid(p);
  CHECK(std::abs(h.cost.log2_mults - 59) <= 1.0);
  CHECK(h.cost.log2_mults >= 0);

  // Without guessing, the hybrid shape widens the x-block by one column factor.
  for (auto q : {5u, 13u})
    for (int m : {42, 50, 62}) {
      const Params pp{20, 20, m, q};
      const double xl = estimate(Algorithm::YXL, pp).log2_mults;
      const double ge = estimate(Algorithm::YHXLGaussian, pp, {0, 0, 2.8}).log2_mults;
      CHECK(ge - xl == doctest::Approx(1.8 * std::log2(21.0 / 20.0)).epsilon(1e-9));
    }

  for (auto a : {Algorithm::YXL, Algorithm::YMXL, Algorithm::YHXLGaussian, Algorithm::YHXLWiedemann, Algorithm::F4,
                 Algorithm::Exhaustive})
    CHECK(algorithm_from_string(to_string(a)) == a);
  CHECK_THROWS(algorithm_from_string("f5"));
  CHECK(std::isfinite(estimate(Algorithm::F4, p).log2_mults));
  CHECK(estimate(Algorithm::Exhaustive, p).log2_mults ==
        doctest::Approx(20 * std::log2(5.0) + std::log2(42.0) + 1.8 * std::log2(20.0)));
}

TEST_CASE("guessing shrinks as the field grows") {
  int prev = 1 << 30;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 13u, 31u, 61u, 127u, 251u, 509u}) {
    auto h = optimal_hybrid({20, 20, 50, q});
    CHECK(h.a_x + h.a_y <= prev);
    prev = h.a_x + h.a_y;
  }
}
