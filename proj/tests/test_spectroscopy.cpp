#include <spinpair/errors.hpp>
#include <spinpair/lshv_model.hpp>
#include <spinpair/qsm_ensemble.hpp>
#include <spinpair/random.hpp>
#include <spinpair/spectroscopy.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace spinpair;

namespace {

const Beta kLimit = Beta::quantum_limit();

// populations of qsm_pattern levels grouped from the density-matrix eigenvalues
std::vector<double> grouped_density_populations(double x) {
  const auto ev = oracle::eigenvalues(oracle::thermal_state_by_series(x));
  // ascending: three triplet weights then the singlet weight
  return {ev[3], ev[0] + ev[1] + ev[2]};
}

std::vector<double> upward_gaps(const EnergyPattern& p) {
  std::vector<double> gaps;
  for (const auto& line : transition_lines(p))
    for (int k = 0; k < line.multiplicity; ++k) gaps.push_back(line.gap_mev);
  return gaps;
}

}  // namespace

TEST_CASE("transition_lines") {
  for (double alpha : {0.05, 1.0, 3.7}) {
    CAPTURE(alpha);
    const auto q = transition_lines(qsm_pattern(alpha));
    REQUIRE(q.size() == 1);
    CHECK(q[0].gap_mev == doctest::Approx(4 * alpha).epsilon(1e-14));
    CHECK(q[0].multiplicity == 3);
    CHECK(q[0].from_label == "singlet");
    CHECK(q[0].to_label == "triplet");

    const auto l = transition_lines(lshv_pattern(alpha));
    REQUIRE(l.size() == 2);
    CHECK(l[0].gap_mev == doctest::Approx(3 * alpha).epsilon(1e-14));
    CHECK(l[0].multiplicity == 4);
    CHECK(l[0].lower_levels.size() == 2);
    CHECK(l[1].gap_mev == doctest::Approx(6 * alpha).epsilon(1e-14));
    CHECK(l[1].multiplicity == 1);

    // no shared line at any alpha
    for (const auto& a : q)
      for (const auto& b : l) CHECK(std::abs(a.gap_mev - b.gap_mev) >= 0.5 * alpha);
  }

  const EnergyPattern single(Model::qsm, {{0.0, 4, "flat"}});
  CHECK(transition_lines(single).empty());
}

TEST_CASE("emission symmetry") {
  // negating every level energy mirrors the ladder; the gap multiset is unchanged
  for (const auto& p : {qsm_pattern(0.05), lshv_pattern(0.05), qsm_pattern(2.0)}) {
    std::vector<EnergyLevel> mirrored(p.levels().rbegin(), p.levels().rend());
    for (auto& level : mirrored) level.energy_mev = -level.energy_mev;
    const EnergyPattern neg(p.model(), mirrored);
    const auto up = upward_gaps(p);
    const auto down = upward_gaps(neg);
    REQUIRE(up.size() == down.size());
    for (std::size_t k = 0; k < up.size(); ++k) CHECK(up[k] == doctest::Approx(down[k]).epsilon(1e-14));
  }
}

TEST_CASE("boltzmann_populations") {
  const auto flat = boltzmann_populations(lshv_pattern(0.05), Beta::finite(1e-12));
  CHECK(flat[0] == doctest::Approx(0.25));
  CHECK(flat[1] == doctest::Approx(0.5));
  CHECK(flat[2] == doctest::Approx(0.25));

  const auto cold = boltzmann_populations(lshv_pattern(0.05), kLimit);
  CHECK(cold == std::vector<double>{1.0, 0.0, 0.0});

  const auto x1 = boltzmann_populations(qsm_pattern(1.0), Beta::finite(1.0));
  CHECK(x1[0] == doctest::Approx(0.9479149938275156).epsilon(1e-13));
  CHECK(x1[1] == doctest::Approx(0.0520850061724844).epsilon(1e-12));

  SUBCASE("matches grouped density-matrix populations") {
    for (double x : {0.5, 1.0, 2.0, 5.0}) {
      CAPTURE(x);
      const auto got = boltzmann_populations(qsm_pattern(0.05), Beta::finite(x / 0.05));
      const auto ref = grouped_density_populations(x);
      CHECK(std::abs(got[0] - ref[0]) < 1e-10);
      CHECK(std::abs(got[1] - ref[1]) < 1e-10);
      CHECK(std::abs(got[0] + got[1] - 1.0) < 1e-15);
    }
  }
}

TEST_CASE("absorbs") {
  const double a = 0.05, w = 0.01 * a;
  CHECK(absorbs(lshv_pattern(a), kLimit, 3 * a, w) == 1.0);
  CHECK(absorbs(qsm_pattern(a), kLimit, 3 * a, w) == 0.0);
  CHECK(absorbs(qsm_pattern(a), kLimit, 4 * a, w) == 1.0);
  CHECK(absorbs(lshv_pattern(a), kLimit, 4 * a, w) == 0.0);
  // the 6 alpha line starts from the ground level too
  CHECK(absorbs(lshv_pattern(a), kLimit, 6 * a, w) == 1.0);

  // both LSHV lines at 3 alpha share the ground and middle lower levels
  const Beta hot = Beta::finite(1e-12);
  CHECK(absorbs(lshv_pattern(a), hot, 3 * a, w) == doctest::Approx(0.75));
  CHECK(absorbs(lshv_pattern(a), hot, 6 * a, w) == doctest::Approx(0.25));

  SUBCASE("range and step-monotonicity") {
    for (double beta : {1e-3, 1.0, 58.0, 1e4}) {
      for (double photon = 0.01; photon < 0.4; photon += 0.0037) {
        const double p = absorbs(lshv_pattern(a), Beta::finite(beta), photon, 0.1 * a);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        const double nearest = std::min({std::abs(photon - 3 * a), std::abs(photon - 6 * a)});
        if (nearest > 0.1 * a) CHECK(p == 0.0);
        if (nearest <= 0.1 * a) CHECK(p > 0.0);
      }
    }
  }

  SUBCASE("overlapping lines are capped at one") {
    const double wide = 3.5 * a;  // covers both 3 alpha and 6 alpha
    CHECK(absorbs(lshv_pattern(a), hot, 4.5 * a, wide) == 1.0);
  }

  CHECK_THROWS_AS(absorbs(qsm_pattern(a), kLimit, 0.0, w), std::invalid_argument);
  CHECK_THROWS_AS(absorbs(qsm_pattern(a), kLimit, 4 * a, 0.0), std::invalid_argument);
}

TEST_CASE("simulate_photon_stream") {
  const double a = 0.05, w = 0.1 * a;

  SUBCASE("saturated probabilities are exact") {
    for (std::uint64_t seed : {0ULL, 7ULL, 99ULL}) {
      const auto none = simulate_photon_stream(qsm_pattern(a), kLimit, 3 * a, w, 100'000, seed);
      CHECK(none.photons_fired == 100'000);
      CHECK(none.photons_absorbed == 0);
      CHECK(!none.resonant);
      const auto all = simulate_photon_stream(lshv_pattern(a), kLimit, 3 * a, w, 100'000, seed);
      CHECK(all.photons_absorbed == 100'000);
      CHECK(all.resonant);
      CHECK(all.initial_population == 1.0);
    }
  }

  SUBCASE("x = 1, one million photons at 4 alpha") {
    const std::uint64_t n = 1'000'000;
    const double p = grouped_density_populations(1.0)[0];
    const auto out = simulate_photon_stream(qsm_pattern(1.0), Beta::finite(1.0), 4.0, 0.1, n, 7);
    const double sd = oracle::binomial_sd(n, p);
    CHECK(sd == doctest::Approx(222.2).epsilon(1e-3));
    CHECK(std::abs(double(out.photons_absorbed) - n * p) < 4 * sd);
    CHECK(out.initial_population == doctest::Approx(p).epsilon(1e-12));
  }

  SUBCASE("deterministic per seed") {
    const auto s1 = simulate_photon_stream(qsm_pattern(1.0), Beta::finite(1.0), 4.0, 0.1, 20'000, 5);
    const auto s2 = simulate_photon_stream(qsm_pattern(1.0), Beta::finite(1.0), 4.0, 0.1, 20'000, 5);
    const auto s3 = simulate_photon_stream(qsm_pattern(1.0), Beta::finite(1.0), 4.0, 0.1, 20'000, 6);
    CHECK(s1.photons_absorbed == s2.photons_absorbed);
    CHECK(s1.photons_absorbed != s3.photons_absorbed);
  }

  CHECK_THROWS_AS(simulate_photon_stream(qsm_pattern(a), kLimit, 4 * a, w, 0, 1), std::invalid_argument);
}

TEST_CASE("simulate_photon_stream_parallel") {
  const auto pattern = qsm_pattern(1.0);
  const Beta beta = Beta::finite(1.0);
  const std::uint64_t n = 100'001;

  const auto a = simulate_photon_stream_parallel(pattern, beta, 4.0, 0.1, n, 11, 4);
  const auto b = simulate_photon_stream_parallel(pattern, beta, 4.0, 0.1, n, 11, 4);
  CHECK(a.photons_fired == n);
  CHECK(a.photons_absorbed == b.photons_absorbed);
  const double p = a.initial_population;
  CHECK(std::abs(double(a.photons_absorbed) - n * p) < 4 * oracle::binomial_sd(n, p));

  // one worker reduces to the serial stream with the derived seed
  const auto one = simulate_photon_stream_parallel(pattern, beta, 4.0, 0.1, 1000, 3, 1);
  CHECK(one.photons_absorbed ==
        simulate_photon_stream(pattern, beta, 4.0, 0.1, 1000, derive_seed(3, 0)).photons_absorbed);

  const auto cold = simulate_photon_stream_parallel(qsm_pattern(0.05), kLimit, 0.15, 0.005, 100'000, 1, 8);
  CHECK(cold.photons_absorbed == 0);
  CHECK(cold.photons_fired == 100'000);
}

TEST_CASE("distinguish") {
  const auto report = distinguish(0.05, kLimit, 0.005);
  REQUIRE(report.discriminating_energies.size() == 3);
  CHECK(report.discriminating_energies[0].energy_mev == doctest::Approx(0.15).epsilon(1e-14));
  CHECK(report.discriminating_energies[0].absorbed_by == Model::lshv);
  CHECK(report.discriminating_energies[1].energy_mev == doctest::Approx(0.20).epsilon(1e-14));
  CHECK(report.discriminating_energies[1].absorbed_by == Model::qsm);
  CHECK(report.discriminating_energies[2].energy_mev == doctest::Approx(0.30).epsilon(1e-14));
  CHECK(report.discriminating_energies[2].absorbed_by == Model::lshv);

  CHECK(report.qsm.lines.size() == 1);
  CHECK(report.lshv.lines.size() == 2);
  CHECK(report.qsm.populations == std::vector<double>{1.0, 0.0});
  CHECK(report.lshv.populations == std::vector<double>{1.0, 0.0, 0.0});

  SUBCASE("every discriminating energy belongs to exactly one line list") {
    for (double w : {0.001, 0.01, 0.0249}) {
      const auto r = distinguish(0.05, Beta::finite(10.0), w);
      CHECK(r.discriminating_energies.size() == 3);
      for (const auto& d : r.discriminating_energies) {
        auto hits = [&](const std::vector<TransitionLine>& lines) {
          return std::count_if(lines.begin(), lines.end(),
                               [&](const auto& l) { return std::abs(l.gap_mev - d.energy_mev) <= w; });
        };
        CHECK(hits(r.qsm.lines) + hits(r.lshv.lines) == 1);
        const auto& own = d.absorbed_by == Model::qsm ? r.qsm.lines : r.lshv.lines;
        CHECK(hits(own) == 1);
      }
    }
  }

  SUBCASE("linewidth guard") {
    CHECK_THROWS_AS(distinguish(0.05, kLimit, 0.025), PhysicsGuardError);
    CHECK_THROWS_AS(distinguish(0.05, kLimit, 0.03), PhysicsGuardError);
    try {
      distinguish(0.05, kLimit, 0.03);
    } catch (const PhysicsGuardError& e) {
      CHECK(std::string(e.what()).find("--linewidth-mev") != std::string::npos);
    }
    CHECK_THROWS_AS(distinguish(0.0, kLimit, 0.001), std::invalid_argument);
  }

  const auto same = compare_patterns(qsm_pattern(0.05), qsm_pattern(0.05), 0.05, kLimit, 0.005);
  CHECK(same.discriminating_energies.empty());
}
