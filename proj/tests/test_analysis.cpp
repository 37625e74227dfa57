// Result assembly: curves with time-sharing closure, weighted regions,
// the winner map, and the coding-gain table.
#include <doctest.h>

#include <cmath>

#include "comp/analysis.hpp"
#include "comp/errors.hpp"
#include "test_util.hpp"

using namespace comp;

namespace {

Model edge_model(double d1, double d2) {
  Scenario2x2 s;
  s.d1 = d1;
  s.d2 = d2;
  CsiConfig csi;
  return make_model(s, csi);
}

SchemeOptions default_opts() {
  SchemeOptions o;
  o.quant = Quantizer::rate_distortion;
  o.spc = true;
  return o;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("scheme_curve is monotone, concave after closure, and consistent") {
  const Model mod = edge_model(0.4, 0.2);
  const std::vector<double> betas{0, 1, 2, 3, 4, 6, 8, 10, 12};
  const SchemeOptions o = default_opts();

  for (SchemeKind k : {SchemeKind::dis, SchemeKind::cif, SchemeKind::dasd,
                       SchemeKind::dasc, SchemeKind::fdm}) {
    CAPTURE(scheme_name(k));
    const auto curve = scheme_curve(mod, k, betas, o, /*envelope=*/true);
    REQUIRE(curve.size() == betas.size());
    for (size_t i = 0; i < curve.size(); ++i) {
      CAPTURE(betas[i]);
      // Rate tuples stay aligned with the (possibly time-shared) value.
      CHECK(curve[i].rates.sum() ==
            doctest::Approx(curve[i].value).epsilon(1e-9));
      if (i > 0) CHECK(curve[i].value >= curve[i - 1].value - 1e-12);
    }
    // Concavity: every interior point sits on or above its chord.
    for (size_t i = 1; i + 1 < curve.size(); ++i) {
      const double t = (betas[i] - betas[i - 1]) / (betas[i + 1] - betas[i - 1]);
      const double chord =
          (1 - t) * curve[i - 1].value + t * curve[i + 1].value;
      CHECK(curve[i].value >= chord - 1e-9);
    }
    // The raw (non-enveloped) curve is dominated by the closed one.
    const auto raw = scheme_curve(mod, k, betas, o, /*envelope=*/false);
    for (size_t i = 0; i < curve.size(); ++i)
      CHECK(raw[i].value <= curve[i].value + 1e-12);
  }

  SUBCASE("baseline curves are flat") {
    for (SchemeKind k : {SchemeKind::nocoop, SchemeKind::mac}) {
      const auto c = scheme_curve(mod, k, betas, o);
      for (size_t i = 1; i < c.size(); ++i)
        CHECK(c[i].value == doctest::Approx(c[0].value).epsilon(1e-12));
    }
  }

  SUBCASE("a zero-only grid pins every forwarding scheme to no-coop") {
    const double ncb = no_coop_best(mod).sum_rate;
    for (SchemeKind k : {SchemeKind::dis, SchemeKind::cif}) {
      const auto c = scheme_curve(mod, k, {0.0}, o);
      REQUIRE(c.size() == 1);
      CHECK(c[0].value == doctest::Approx(ncb).epsilon(1e-9));
    }
  }
}

TEST_CASE("performance_region structure and dominance") {
  const Model mod = edge_model(0.4, 0.2);
  const std::vector<double> betas{0, 2, 6, 12};
  const auto weights = weight_grid(5);
  const SchemeOptions o = default_opts();
  const double ncb = no_coop_best(mod).sum_rate;
  const double mac = mac_sum_rate(mod, testutil::ones(2));

  const std::vector<SchemeKind> schemes{SchemeKind::nocoop, SchemeKind::dis,
                                        SchemeKind::dasc};
  const PerformanceRegion reg =
      performance_region(mod, schemes, betas, weights, o);

  REQUIRE(reg.schemes.size() == schemes.size());
  REQUIRE(reg.joint.size() == weights.size());

  SUBCASE("per-weight envelopes dominate every emitted extreme point") {
    for (const auto& sr : reg.schemes) {
      for (const auto& p : sr.points) {
        const auto it =
            std::find(reg.betas.begin(), reg.betas.end(), p.beta);
        REQUIRE(it != reg.betas.end());
        const size_t bi = it - reg.betas.begin();
        for (size_t wi = 0; wi < weights.size(); ++wi) {
          const double w = weights[wi];
          const double val = w * p.rates(0) + (1 - w) * p.rates(1);
          CHECK(sr.envelopes[wi].value[bi] >= val - 1e-9);
          CHECK(reg.joint[wi].value[bi] >= val - 1e-9);
        }
      }
    }
  }

  SUBCASE("every point respects the applicable ceiling") {
    for (const auto& sr : reg.schemes) {
      for (const auto& p : sr.points) {
        const double s = p.rates.sum();
        if (sr.scheme == SchemeKind::mac) {
          CHECK(s <= mac + 1e-9);
        } else if (sr.scheme == SchemeKind::nocoop) {
          CHECK(s <= ncb + 1e-9);
        } else {
          CHECK(s <= cut_set_bound(ncb, mac, p.beta) + 1e-9);
        }
      }
    }
  }

  SUBCASE("zero backhaul: the joint boundary contains the no-coop boundary") {
    // Superposition coding lets a neighbour decode a common stream straight
    // off the air, so at zero budget the joint boundary may exceed the
    // no-coop boundary at unequal weights; the sum rate still matches.
    for (size_t wi = 0; wi < weights.size(); ++wi) {
      RVec w(2);
      w << weights[wi], 1.0 - weights[wi];
      const double want = no_coop_weighted(mod, w).weighted;
      CHECK(reg.joint[wi].value[0] >= want - 1e-9);
      if (weights[wi] == 0.5)
        CHECK(reg.joint[wi].value[0] == doctest::Approx(want).epsilon(1e-9));
    }
  }

  SUBCASE("zero backhaul without superposition points is exactly no-coop") {
    const PerformanceRegion plain = performance_region(
        mod, {SchemeKind::nocoop, SchemeKind::dis}, betas, weights, o);
    for (size_t wi = 0; wi < weights.size(); ++wi) {
      RVec w(2);
      w << weights[wi], 1.0 - weights[wi];
      const double want = no_coop_weighted(mod, w).weighted;
      CHECK(plain.joint[wi].value[0] == doctest::Approx(want).epsilon(1e-9));
    }
  }

  SUBCASE("per-weight envelopes are monotone along the budget") {
    for (const auto& sr : reg.schemes)
      for (const auto& wc : sr.envelopes)
        for (size_t b = 1; b < wc.value.size(); ++b)
          CHECK(wc.value[b] >= wc.value[b - 1] - 1e-12);
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_AS(performance_region(mod, {}, betas, weights, o),
                    ConfigError);
    const auto& blk = testutil::golden().at("mc3_frozen");
    const Model mod3(testutil::cmat(blk, "H"), testutil::rmat(blk.at("avg")),
                     0.05, 0.1, 2);
    CHECK_THROWS_AS(performance_region(mod3, schemes, betas, weights, o),
                    ConfigError);
  }
}

TEST_CASE("winner map spot checks and thread invariance") {
  Scenario2x2 tmpl;
  CsiConfig csi;
  const SchemeOptions o = default_opts();

  SUBCASE("known winners at the anchor drops") {
    struct Spot {
      double d1, d2;
      SchemeKind winner;
      bool flag;
    };
    for (const Spot& s : {Spot{0.5, 0.5, SchemeKind::dasc, true},
                          Spot{0.4, 0.2, SchemeKind::dis, false},
                          Spot{0.2, 0.2, SchemeKind::dasd, false},
                          Spot{0.45, 0.25, SchemeKind::dis, false},
                          Spot{0.3, 0.3, SchemeKind::dasd, false}}) {
      CAPTURE(s.d1);
      CAPTURE(s.d2);
      const SchemeMap m =
          best_scheme_map({s.d1}, {s.d2}, 4.0, tmpl, csi, o, 1);
      REQUIRE(m.cells.size() == 1);
      CHECK(m.cells[0].winner == s.winner);
      CHECK(m.cells[0].flag == s.flag);
      // Cell sums agree with direct evaluation of each scheme.
      Scenario2x2 sc = tmpl;
      sc.d1 = s.d1;
      sc.d2 = s.d2;
      const Model mod = make_model(sc, csi);
      const double ncb = no_coop_best(mod).sum_rate;
      REQUIRE(m.schemes.size() == 4);
      const double want[4] = {dis_sum(mod, 4.0, o, ncb),
                              cif_sum(mod, 4.0, o, ncb),
                              dasd_sum(mod, 4.0, o), dasc_sum(mod, 4.0, o)};
      for (int i = 0; i < 4; ++i)
        CHECK(m.cells[0].sums[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
  }

  SUBCASE("thread count does not change the result") {
    const std::vector<double> grid{0.25, 0.4, 0.55};
    const SchemeMap a = best_scheme_map(grid, grid, 4.0, tmpl, csi, o, 1);
    const SchemeMap b = best_scheme_map(grid, grid, 4.0, tmpl, csi, o, 4);
    REQUIRE(a.cells.size() == b.cells.size());
    for (size_t i = 0; i < a.cells.size(); ++i) {
      CHECK(a.cells[i].winner == b.cells[i].winner);
      CHECK(a.cells[i].flag == b.cells[i].flag);
      for (size_t j = 0; j < a.cells[i].sums.size(); ++j)
        CHECK(a.cells[i].sums[j] == b.cells[i].sums[j]);
    }
    // Cells arrive d1-major, d2 ascending.
    for (size_t i1 = 0; i1 < grid.size(); ++i1)
      for (size_t i2 = 0; i2 < grid.size(); ++i2) {
        const MapCell& c = a.cells[i1 * grid.size() + i2];
        CHECK(c.d1 == grid[i1]);
        CHECK(c.d2 == grid[i2]);
      }
  }
}

TEST_CASE("coding-gain table structure and known directions") {
  Scenario2x2 tmpl;
  CsiConfig csi;
  const std::vector<double> betas{0, 1, 2, 4, 8, 12};
  const std::vector<double> ds{0.2, 0.5};
  const auto rows = coding_gain_analysis(ds, tmpl, csi, betas, 9);

  // scheme-major x variant x d ordering, both schemes, three variants.
  REQUIRE(rows.size() == 2 * 3 * ds.size());
  CHECK(rows[0].scheme == SchemeKind::dis);
  CHECK(rows.back().scheme == SchemeKind::dasc);

  double dasc_sc_gain_02 = -1, dasc_sc_gain_05 = -1;
  for (const auto& r : rows) {
    CAPTURE(scheme_name(r.scheme));
    CAPTURE(r.variant);
    CAPTURE(r.d);
    CHECK(r.base_best > 0.0);
    CHECK(r.variant_best > 0.0);
    CHECK(r.gain_pct ==
          doctest::Approx(100.0 * (r.variant_best / r.base_best - 1.0))
              .epsilon(1e-9));
    // Each variant only widens the search space: gains are nonnegative.
    CHECK(r.gain_pct >= -1e-9);
    if (r.scheme == SchemeKind::dasc && r.variant == "sc") {
      if (r.d == 0.2) dasc_sc_gain_02 = r.gain_pct;
      if (r.d == 0.5) dasc_sc_gain_05 = r.gain_pct;
    }
  }
  // Decoder side information pays off most where cooperation matters:
  // at the cell edge, not at the cell center.
  REQUIRE(dasc_sc_gain_02 >= 0.0);
  REQUIRE(dasc_sc_gain_05 >= 0.0);
  CHECK(dasc_sc_gain_05 > dasc_sc_gain_02);
}

}  // TEST_SUITE
