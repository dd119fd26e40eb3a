#include "slitlogic/quantum_sim.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "slitlogic/error.hpp"
#include "test_support.hpp"

namespace slitlogic {
namespace {

constexpr double kTol = 1e-10;

SlitConfig equal_two_slits() {
  const double a = 1.0 / std::sqrt(2.0);
  return SlitConfig({a, a}, {-5e-5, 5e-5}, 5e-7, 1.0);
}

TEST(AmplitudeTest, Examples) {
  std::mt19937_64 rng(testing::kSeed);
  const SlitConfig config = testing::random_config(rng, 4);
  for (std::size_t i = 1; i <= 4; ++i) EXPECT_EQ(amplitude(config, i, 0.0), config.amplitudes()[i - 1]);

  const SlitConfig reference({0.6, {0.0, 0.8}}, {0.0, 1e-4}, 5e-7, 1.0);
  for (double x : {-0.01, 0.003, 0.2}) {
    EXPECT_EQ(amplitude(reference, 1, x), Amplitude(0.6));
    EXPECT_NEAR(std::abs(amplitude(reference, 2, x)), 0.8, 1e-15);
    EXPECT_NEAR(std::abs(amplitude(reference, 2, x) - testing::direct_amplitude(reference, 1, x)), 0.0, 1e-14);
  }
  EXPECT_THROW(amplitude(reference, 0, 0.0), ArgumentError);
  EXPECT_THROW(amplitude(reference, 3, 0.0), ArgumentError);
  EXPECT_THROW(amplitude(reference, 1, std::numeric_limits<double>::infinity()), ArgumentError);
}

TEST(SubsetProbabilityTest, EqualTwoSlitsAtCenter) {
  const SlitConfig config = equal_two_slits();
  EXPECT_NEAR(subset_probability(config, 0b11, 0.0, Model::born()), 2.0, 1e-15);
  EXPECT_NEAR(subset_probability(config, 0b01, 0.0, Model::born()), 0.5, 1e-15);
  EXPECT_NEAR(subset_probability(config, 0b10, 0.0, Model::born()), 0.5, 1e-15);
  EXPECT_NEAR(subset_probability(config, 0b11, 0.0, Model::decohered()), 1.0, 1e-15);
  const double pab = subset_probability(config, 0b11, 0.0, Model::born());
  const double pa = subset_probability(config, 0b01, 0.0, Model::born());
  const double pb = subset_probability(config, 0b10, 0.0, Model::born());
  EXPECT_NEAR(pab - pa - pb, 1.0, 1e-12);
}

TEST(SubsetProbabilityTest, SingletonsAgreeAcrossModels) {
  std::mt19937_64 rng(testing::kSeed + 1);
  const SlitConfig config = testing::random_config(rng, 5);
  for (double x : {-0.004, 0.0, 0.0071}) {
    for (std::size_t i = 0; i < 5; ++i) {
      const SlitSet s = SlitSet{1} << i;
      const double expected = std::norm(config.amplitudes()[i]);
      EXPECT_NEAR(subset_probability(config, s, x, Model::born()), expected, 1e-15);
      EXPECT_NEAR(subset_probability(config, s, x, Model::decohered()), expected, 1e-15);
    }
  }
}

TEST(SubsetProbabilityTest, Errors) {
  const SlitConfig config = equal_two_slits();
  EXPECT_THROW(subset_probability(config, 0, 0.0, Model::born()), ArgumentError);
  EXPECT_THROW(subset_probability(config, 0b100, 0.0, Model::born()), ArgumentError);
}

TEST(SlitConfigTest, Validation) {
  const double a = 1.0 / std::sqrt(2.0);
  EXPECT_THROW(SlitConfig({}, {}, 5e-7, 1.0), ArgumentError);
  EXPECT_THROW(SlitConfig({1.0, 1.0}, {0.0, 1e-4}, 5e-7, 1.0), ArgumentError);
  EXPECT_THROW(SlitConfig({a, a}, {1e-4, 1e-4}, 5e-7, 1.0), ArgumentError);
  EXPECT_THROW(SlitConfig({a, a}, {0.0}, 5e-7, 1.0), ArgumentError);
  EXPECT_THROW(SlitConfig({a, a}, {0.0, 1e-4}, 0.0, 1.0), ArgumentError);
  EXPECT_THROW(SlitConfig({a, a}, {0.0, 1e-4}, 5e-7, -1.0), ArgumentError);
  EXPECT_THROW(SlitConfig({a, a}, {0.0, std::nan("")}, 5e-7, 1.0), ArgumentError);
  EXPECT_NO_THROW(SlitConfig({a, a}, {0.0, 1e-4}, 5e-7, 1.0));
  EXPECT_NO_THROW(SlitConfig({1.0}, {0.0}, 5e-7, 1.0));
}

TEST(ModelTest, Validation) {
  EXPECT_THROW(Model::nonquantum(-0.1), ArgumentError);
  EXPECT_THROW(Model::nonquantum(std::numeric_limits<double>::infinity()), ArgumentError);
  EXPECT_EQ(Model::nonquantum(0.3).epsilon(), 0.3);
  EXPECT_EQ(Model::decohered().name(), "decohered");
}

TEST(DetectorGridTest, Construction) {
  const auto g = DetectorGrid::linspace(-1.0, 1.0, 5);
  EXPECT_EQ(std::vector<double>(g.positions().begin(), g.positions().end()),
            (std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0}));
  EXPECT_EQ(DetectorGrid::linspace(0.25, 0.25, 1).size(), 1u);
  EXPECT_THROW(DetectorGrid::linspace(0.0, 1.0, 0), ArgumentError);
  EXPECT_THROW(DetectorGrid::linspace(1.0, 0.0, 3), ArgumentError);
  EXPECT_THROW(DetectorGrid({}), ArgumentError);
  EXPECT_THROW(DetectorGrid({0.0, 0.0}), ArgumentError);
  EXPECT_THROW(DetectorGrid({0.0, std::nan("")}), ArgumentError);
}

TEST(GenerateTest, BornDataSatisfiesThreeAndFourSlitIdentities) {
  std::mt19937_64 rng(testing::kSeed + 2);
  const auto grid = DetectorGrid::linspace(-0.01, 0.01, 41);
  for (const auto& point : generate(testing::random_config(rng, 3), grid, Model::born())) {
    const auto& p = point.probabilities;
    ASSERT_LE(std::abs(testing::three_slit_combination([&](SlitSet s) { return p.at(s); })), kTol);
  }
  for (const auto& point : generate(testing::random_config(rng, 4), grid, Model::born())) {
    auto P = [&](const char* label) { return point.probabilities.at(parse_slit_label(label)); };
    const double combination = P("ABCD") - P("AB") - P("AC") - P("AD") - P("BC") - P("BD") - P("CD") +
                               2 * P("A") + 2 * P("B") + 2 * P("C") + 2 * P("D");
    ASSERT_LE(std::abs(combination), kTol);
  }
}

TEST(GenerateTest, ViolatorBreaksThreeSlitIdentity) {
  std::mt19937_64 rng(testing::kSeed + 3);
  const SlitConfig config = testing::random_config(rng, 3);
  const auto grid = DetectorGrid::linspace(-0.01, 0.01, 41);
  double max_abs = 0.0;
  for (const auto& point : generate(config, grid, Model::nonquantum(0.1))) {
    const double computed = sorkin(0b111, point.probabilities);
    const double independent = testing::three_slit_combination(
        [&](SlitSet s) { return testing::direct_intensity(config, s, point.x, 0.1); });
    ASSERT_NEAR(computed, independent, 1e-12);
    max_abs = std::max(max_abs, std::abs(computed));
  }
  EXPECT_GT(max_abs, 1e-6);
}

TEST(GenerateTest, MatchesSubsetProbabilityAndRespectsCap) {
  std::mt19937_64 rng(testing::kSeed + 4);
  const SlitConfig config = testing::random_config(rng, 4);
  const auto grid = DetectorGrid::linspace(-0.002, 0.002, 5);
  const auto pattern = generate(config, grid, Model::nonquantum(0.2));
  ASSERT_EQ(pattern.size(), 5u);
  for (const auto& point : pattern) {
    for (SlitSet s = 1; s < 16; ++s) {
      ASSERT_EQ(point.probabilities.at(s), subset_probability(config, s, point.x, Model::nonquantum(0.2)));
    }
  }
  EXPECT_THROW(generate(testing::random_config(rng, 11), grid, Model::born()), ArgumentError);
  EXPECT_NO_THROW(generate(testing::random_config(rng, 11), grid, Model::born(), 11));
}

TEST(ScanReportTest, BornFiveSlitsVanishes) {
  std::mt19937_64 rng(testing::kSeed + 5);
  const auto scan = scan_report(testing::random_config(rng, 5), DetectorGrid::linspace(-0.01, 0.01, 101),
                                Model::born());
  EXPECT_EQ(scan.points.size(), 101u);
  EXPECT_LE(scan.max_abs_sorkin.at(3), kTol);
  EXPECT_LE(scan.max_abs_sorkin.at(4), kTol);
  EXPECT_LE(scan.max_abs_sorkin.at(5), kTol);
  EXPECT_LE(scan.max_abs_pairwise_residual, kTol);
  EXPECT_GT(scan.max_abs_sorkin.at(2), 1e-3);
}

TEST(ScanReportTest, DecoheredResidualIsZero) {
  std::mt19937_64 rng(testing::kSeed + 6);
  for (std::size_t n = 3; n <= 5; ++n) {
    const auto scan = scan_report(testing::random_config(rng, n), DetectorGrid::linspace(-0.01, 0.01, 101),
                                  Model::decohered());
    EXPECT_LE(scan.max_abs_decohered_residual, 1e-12);
    EXPECT_LE(scan.max_abs_sorkin.at(2), 1e-12);
  }
}

TEST(ScanReportTest, TwoSlitBornHasPairwiseInterference) {
  const auto scan = scan_report(equal_two_slits(), DetectorGrid::linspace(-0.01, 0.01, 101), Model::born());
  EXPECT_GT(scan.max_abs_sorkin.at(2), 0.5);
  EXPECT_THROW(scan_report(SlitConfig({1.0}, {0.0}, 5e-7, 1.0), DetectorGrid({0.0}), Model::born()),
               ArgumentError);
}

TEST(SimPropertyTest, GlobalPhaseInvariance) {
  std::mt19937_64 rng(testing::kSeed + 7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const SlitConfig config = testing::random_config(rng, n);
    const Amplitude phase = std::polar(1.0, 0.37 * trial + 0.1);
    std::vector<Amplitude> rotated(config.amplitudes().begin(), config.amplitudes().end());
    for (auto& c : rotated) c *= phase;
    const SlitConfig turned(rotated, {config.offsets().begin(), config.offsets().end()}, config.wavelength(),
                            config.screen_distance());
    for (double x : {-0.006, 0.0, 0.0042}) {
      for (SlitSet s = 1; s < (SlitSet{1} << n); ++s) {
        for (const Model& m : {Model::born(), Model::decohered(), Model::nonquantum(0.05)}) {
          ASSERT_NEAR(subset_probability(config, s, x, m), subset_probability(turned, s, x, m), 1e-14);
        }
      }
    }
  }
}

TEST(SimPropertyTest, ZeroEpsilonIsBornExactly) {
  std::mt19937_64 rng(testing::kSeed + 8);
  const SlitConfig config = testing::random_config(rng, 6);
  for (double x : {-0.01, -0.0013, 0.0, 0.008}) {
    for (SlitSet s = 1; s < 64; ++s) {
      ASSERT_EQ(subset_probability(config, s, x, Model::nonquantum(0.0)),
                subset_probability(config, s, x, Model::born()));
    }
  }
}

TEST(SimPropertyTest, DecoheredIsAdditiveOverDisjointSets) {
  std::mt19937_64 rng(testing::kSeed + 9);
  const SlitConfig config = testing::random_config(rng, 6);
  const Model m = Model::decohered();
  for (double x : {-0.005, 0.0, 0.003}) {
    for (SlitSet s = 1; s < 64; ++s) {
      for (SlitSet t = 1; t < 64; ++t) {
        if (s & t) continue;
        ASSERT_NEAR(subset_probability(config, s | t, x, m),
                    subset_probability(config, s, x, m) + subset_probability(config, t, x, m), 1e-15);
      }
    }
  }
}

TEST(SimPropertyTest, BornNullityUpToEightSlits) {
  std::mt19937_64 rng(testing::kSeed + 10);
  const auto grid = DetectorGrid::linspace(-0.01, 0.01, 21);
  for (std::size_t n = 3; n <= 8; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      for (const auto& point : generate(testing::random_config(rng, n), grid, Model::born())) {
        const auto& p = point.probabilities;
        for (SlitSet t = 1; t <= p.full_set(); ++t) {
          if (std::popcount(t) >= 3) ASSERT_LE(std::abs(sorkin(t, p)), kTol) << "n=" << n;
        }
        ASSERT_LE(std::abs(pairwise_residual(p)), kTol);
      }
    }
  }
}

TEST(SimPropertyTest, ViolatorIsDetectable) {
  std::mt19937_64 rng(testing::kSeed + 11);
  const auto grid = DetectorGrid::linspace(-0.01, 0.01, 101);
  for (double eps : {0.01, 0.05, 0.5}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto scan = scan_report(testing::random_config(rng, 3), grid, Model::nonquantum(eps));
      ASSERT_GE(scan.max_abs_sorkin.at(3), 1e-6) << eps;
    }
  }
}

TEST(SlitConfigIoTest, ReadsJsonDocuments) {
  std::istringstream in(R"({"n": 2, "wavelength": 5e-7, "screen_distance": 2.0,
                            "amplitudes": [[1, 0], [0, 1]], "offsets": [-1e-4, 1e-4], "normalize": true})");
  const SlitConfig config = read_slit_config(in);
  EXPECT_EQ(config.n(), 2u);
  EXPECT_NEAR(std::abs(config.amplitudes()[1] - Amplitude(0.0, 1.0 / std::sqrt(2.0))), 0.0, 1e-16);
  EXPECT_EQ(config.screen_distance(), 2.0);
  const SlitConfig back = slit_config_from_json(to_json(config));
  EXPECT_EQ(std::vector<Amplitude>(back.amplitudes().begin(), back.amplitudes().end()),
            std::vector<Amplitude>(config.amplitudes().begin(), config.amplitudes().end()));
}

TEST(SlitConfigIoTest, RejectsMalformedDocuments) {
  auto read = [](const char* text) {
    std::istringstream in(text);
    return read_slit_config(in);
  };
  EXPECT_THROW(read("not json"), DataError);
  EXPECT_THROW(read(R"({"n": 2})"), DataError);
  EXPECT_THROW(read(R"({"n": 3, "wavelength": 1, "screen_distance": 1, "amplitudes": [[1,0],[0,0]], "offsets": [0, 1]})"),
               DataError);
  EXPECT_THROW(read(R"({"n": 2, "wavelength": 1, "screen_distance": 1, "amplitudes": [[1,0],[1,0]], "offsets": [0, 1]})"),
               DataError);
  EXPECT_THROW(read(R"({"n": 1, "wavelength": 1, "screen_distance": 1, "amplitudes": [[1]], "offsets": [0]})"),
               DataError);
}

TEST(PatternIoTest, Format) {
  const auto pattern = generate(equal_two_slits(), DetectorGrid({0.0}), Model::born());
  std::ostringstream out;
  write_pattern(out, pattern);
  std::istringstream lines(out.str());
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "x,subset,P");
  EXPECT_EQ(rows[1].rfind("0,A,", 0), 0u);
  EXPECT_EQ(rows[2].rfind("0,B,", 0), 0u);
  EXPECT_EQ(rows[3].rfind("0,AB,", 0), 0u);
  EXPECT_NEAR(std::stod(rows[3].substr(5)), 2.0, 1e-15);
  EXPECT_EQ(std::stod(rows[3].substr(5)), pattern[0].probabilities.at(0b11));
}

}  // namespace
}  // namespace slitlogic
