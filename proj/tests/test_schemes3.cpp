// Three-cell strategies against frozen explicit channel draws, plus the
// structural properties the Monte-Carlo study depends on.
#include <doctest.h>

#include <cmath>

#include "comp/baselines.hpp"
#include "comp/schemes3.hpp"
#include "test_util.hpp"

using namespace comp;

namespace {

struct FrozenCase {
  Model mod;
  nlohmann::json blk;
  std::vector<double> betas;
  double nocoop;
};

FrozenCase load_case(const char* key) {
  const auto& blk = testutil::golden().at(key);
  const CMat h = testutil::cmat(blk, "H");
  const RMat avg = testutil::rmat(blk.at("avg"));
  Model mod(h, avg, 0.05, 0.1, 2);
  const double nc = no_coop_best(mod).sum_rate;
  return FrozenCase{std::move(mod), blk, testutil::dvec(blk.at("betas")), nc};
}

void check_curve(const std::vector<double>& got, const nlohmann::json& want,
                 const char* tag) {
  CAPTURE(tag);
  REQUIRE(got.size() == want.size());
  for (size_t i = 0; i < got.size(); ++i) {
    CAPTURE(i);
    CHECK(got[i] == doctest::Approx(want.at(i).get<double>()).epsilon(1e-10));
  }
}

}  // namespace

TEST_SUITE("schemes3") {

TEST_CASE("frozen parity on explicit channel draws") {
  for (const char* key : {"mc3_frozen", "mc3_frozen_center"}) {
    CAPTURE(key);
    const FrozenCase c = load_case(key);
    const Model& mod = c.mod;
    const RVec p = testutil::ones(3);

    CHECK(c.nocoop ==
          doctest::Approx(c.blk.at("nocoop").get<double>()).epsilon(1e-10));
    CHECK(mac_sum_rate(mod, p) ==
          doctest::Approx(c.blk.at("mac").get<double>()).epsilon(1e-10));

    Assignment ident;
    ident.a = {0, 1, 2};
    CHECK(mrc_sum_rate(mod, p, ident) ==
          doctest::Approx(c.blk.at("mrc").get<double>()).epsilon(1e-10));
    CHECK(irc_sum_rate(mod, p, ident) ==
          doctest::Approx(c.blk.at("irc").get<double>()).epsilon(1e-10));
    CHECK(irc_best_assignment(mod, p) ==
          doctest::Approx(c.blk.at("irc_assign").get<double>())
              .epsilon(1e-10));

    using Q = Quantizer;
    check_curve(dis3_curve(mod, c.betas, Q::rate_distortion, c.nocoop),
                c.blk.at("dis_rd"), "dis_rd");
    check_curve(dis3_curve(mod, c.betas, Q::source_coded, c.nocoop),
                c.blk.at("dis_sc"), "dis_sc");
    check_curve(dasc3_curve(mod, c.betas, Q::rate_distortion, c.nocoop),
                c.blk.at("dasc_rd"), "dasc_rd");
    check_curve(dasc3_curve(mod, c.betas, Q::practical, c.nocoop),
                c.blk.at("dasc_practical"), "dasc_practical");
    check_curve(dasc3_curve(mod, c.betas, Q::source_coded, c.nocoop),
                c.blk.at("dasc_sc"), "dasc_sc");
    check_curve(dasn3_curve(mod, c.betas, Q::rate_distortion),
                c.blk.at("dasn_rd"), "dasn_rd");
    check_curve(dasn3_curve(mod, c.betas, Q::practical),
                c.blk.at("dasn_practical"), "dasn_practical");
    check_curve(fdm3_curve(mod, c.betas, Q::rate_distortion),
                c.blk.at("fdm_rd"), "fdm_rd");
    check_curve(fdm3_curve(mod, c.betas, Q::source_coded),
                c.blk.at("fdm_sc"), "fdm_sc");
  }
}

TEST_CASE("structural properties on the frozen channel") {
  const FrozenCase c = load_case("mc3_frozen");
  const Model& mod = c.mod;
  const double mac = mac_sum_rate(mod, testutil::ones(3));
  const std::vector<double> betas{0, 2, 4, 8, 12, 18, 24, 30};

  for (Quantizer q : {Quantizer::practical, Quantizer::rate_distortion,
                      Quantizer::source_coded}) {
    CAPTURE(quantizer_name(q));
    const auto dis = dis3_curve(mod, betas, q, c.nocoop);
    const auto dasc = dasc3_curve(mod, betas, q, c.nocoop);
    const auto dasn = dasn3_curve(mod, betas, q);
    const auto fdm = fdm3_curve(mod, betas, q);

    for (size_t i = 0; i < betas.size(); ++i) {
      CAPTURE(betas[i]);
      if (i > 0) {
        CHECK(dis[i] >= dis[i - 1] - 1e-9);
        CHECK(dasc[i] >= dasc[i - 1] - 1e-9);
        CHECK(dasn[i] >= dasn[i - 1] - 1e-9);
        CHECK(fdm[i] >= fdm[i - 1] - 1e-9);
      }
      // Forwarding decoded messages can never beat the cut-set form;
      // central decoding variants stay below the full joint ceiling.
      CHECK(dis[i] <= std::min(c.nocoop + betas[i], mac) + 1e-9);
      CHECK(dasc[i] <= mac + 1e-9);
      CHECK(dasn[i] <= mac + 1e-9);
      CHECK(fdm[i] <= mac + 1e-9);
    }
    // Zero budget: fallbacks engage (or the scheme produces nothing).
    CHECK(dis[0] == doctest::Approx(c.nocoop).epsilon(1e-12));
    CHECK(dasc[0] == doctest::Approx(c.nocoop).epsilon(1e-12));
    CHECK(dasn[0] == 0.0);
  }

  SUBCASE("quantizer ordering holds pointwise") {
    const auto da_p = dasc3_curve(mod, betas, Quantizer::practical, c.nocoop);
    const auto da_r =
        dasc3_curve(mod, betas, Quantizer::rate_distortion, c.nocoop);
    const auto da_s =
        dasc3_curve(mod, betas, Quantizer::source_coded, c.nocoop);
    const auto dn_p = dasn3_curve(mod, betas, Quantizer::practical);
    const auto dn_r = dasn3_curve(mod, betas, Quantizer::rate_distortion);
    const auto fd_r = fdm3_curve(mod, betas, Quantizer::rate_distortion);
    const auto fd_s = fdm3_curve(mod, betas, Quantizer::source_coded);
    for (size_t i = 0; i < betas.size(); ++i) {
      CHECK(da_p[i] <= da_r[i] + 1e-9);
      CHECK(da_r[i] <= da_s[i] + 1e-9);
      CHECK(dn_p[i] <= dn_r[i] + 1e-9);
      CHECK(fd_r[i] <= fd_s[i] + 1e-9);
    }
  }

  SUBCASE("subset decode bounds compose into the stage tables") {
    const auto tables = dis3_tables(mod, Quantizer::rate_distortion);
    CHECK(tables.size() == 6 * 4 * 2);  // orderings x stage-1 x stage-2 plans
    for (const auto& t : tables) {
      for (int i = 0; i < 3; ++i) CHECK(t.d[i] >= -1e-12);
      // Without decoder side information every link rate is plain.
      for (const auto& sw : t.sw)
        for (double v : sw) CHECK(v == 0.0);
      // The budget-exhausted value equals the sum of decode bounds.
      const double vmax = dis3_value(t, 1e6);
      CHECK(vmax == doctest::Approx(t.d[0] + t.d[1] + t.d[2]).epsilon(1e-9));
      // Greedy allocation is monotone.
      double prev = -1;
      for (double b : {0.0, 1.0, 3.0, 9.0, 27.0}) {
        const double v = dis3_value(t, b);
        CHECK(v >= prev - 1e-12);
        prev = v;
      }
    }
  }

  SUBCASE("single-UE subset rate is the interference-limited link rate") {
    const RVec p = testutil::ones(3);
    // Decoding UE 0 at its serving BS, UEs 1 and 2 as noise.
    const double r = subset_rate(mod, 0, {0}, p);
    auto rows = mod.bs_rows(0);
    RVec others = p;
    others(0) = 0.0;
    const CMat noise = mod.noise_base(rows, p) + mod.sig(rows, others);
    RVec only = RVec::Zero(3);
    only(0) = 1.0;
    const double want = log2_det_rate(noise, mod.sig(rows, only));
    CHECK(r == doctest::Approx(want).epsilon(1e-12));
  }
}

}  // TEST_SUITE
