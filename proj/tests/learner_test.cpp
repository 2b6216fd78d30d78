#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "bhlearn/learner.hpp"
#include "oracles.hpp"

using namespace bhlearn;

namespace {

const BHConstantModel kUnitB = BHConstantModel::fixed(1.0);

double good_event_gap(const EmpiricalSpectrum& alpha, const CoefficientMap& truth) {
  double worst = 0.0;
  const auto subsets = alpha.subsets();
  const auto values = alpha.values();
  for (std::size_t i = 0; i < values.size(); ++i) worst = std::max(worst, std::abs(values[i] - truth.at(subsets[i])));
  return worst;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sample-count formulas
// ---------------------------------------------------------------------------

TEST(SampleCountForB, SpotValue) {
  EXPECT_NEAR(sample_count_for_b_raw(4, 2, 0.1, 0.5), 8.0 * std::log(220.0), 1e-12);
  EXPECT_NEAR(sample_count_for_b_raw(4, 2, 0.1, 0.5), 43.1490204, 1e-7);
  EXPECT_EQ(sample_count_for_b(4, 2, 0.1, 0.5), 44u);
}

TEST(SampleCountForB, LargeBStaysPositive) {
  const double big = std::sqrt(2.0 * std::log(2.0 / 0.1 * 11.0));
  EXPECT_EQ(sample_count_for_b(4, 2, 0.1, big), 1u);
  EXPECT_EQ(sample_count_for_b(4, 2, 0.1, 100.0), 1u);
}

TEST(SampleCountForB, LinearInInverseBSquared) {
  for (double b : {0.01, 0.1, 0.37}) {
    const double base = sample_count_for_b_raw(16, 2, 0.05, b);
    const double half = sample_count_for_b_raw(16, 2, 0.05, b / 2.0);
    EXPECT_DOUBLE_EQ(half, 4.0 * base);
  }
}

TEST(SampleCountForB, Errors) {
  EXPECT_THROW((void)sample_count_for_b(4, 2, 0.1, 0.0), InvalidArgument);
  EXPECT_THROW((void)sample_count_for_b(4, 2, 1.0, 0.5), InvalidArgument);
  EXPECT_THROW((void)sample_count_for_b(4, 5, 0.1, 0.5), InvalidArgument);
  EXPECT_THROW((void)sample_count_for_b(4, 2, 0.1, 1e-160), CapacityError);
}

TEST(ChooseB, Examples) {
  EXPECT_NEAR(choose_b(0.5, 1, kUnitB), std::sqrt(std::exp(-5.0) * 0.25), 1e-15);
  EXPECT_NEAR(choose_b(0.5, 1, kUnitB), 0.0410424993119494, 1e-15);
  for (std::size_t d = 1; d <= 4; ++d) {
    EXPECT_NEAR(choose_b(0.4, d, BHConstantModel::fixed(2.0)) / choose_b(0.4, d, kUnitB), std::pow(2.0, -double(d)),
                1e-12);
  }
  EXPECT_NEAR(choose_b(1.0 - 1e-12, 1, kUnitB), std::exp(-2.5), 1e-12);
}

TEST(ChooseB, Errors) {
  EXPECT_THROW((void)choose_b(1.0, 1, kUnitB), InvalidArgument);
  EXPECT_THROW((void)choose_b(0.5, 0, kUnitB), InvalidArgument);
  EXPECT_THROW((void)choose_b(1e-7, 100, kUnitB), CapacityError);
}

TEST(ThresholdA, Examples) {
  EXPECT_DOUBLE_EQ(threshold_a(0.1, 3), 0.3);
  EXPECT_EQ(threshold_a(1.0, 0), 2.0);
  for (std::size_t d = 0; d < 10; ++d) {
    EXPECT_NEAR(threshold_a(0.2, d) - 0.2, 0.2 * std::sqrt(d + 1.0), 1e-15);
    EXPECT_GT(threshold_a(0.2, d), 0.2);
  }
  EXPECT_THROW((void)threshold_a(0.0, 1), InvalidArgument);
}

TEST(Theorem2, SpotValue) {
  const Theorem2Counts c = theorem2_sample_count(4, 2, 0.5, 0.1, kUnitB);
  const double proof = std::exp(6.0) * 2.0 / 0.125 * std::log(220.0);
  EXPECT_NEAR(c.proof_form_raw, proof, 1e-8 * proof);
  EXPECT_EQ(c.proof_form, 34816u);
  const double statement = std::exp(8.0) * 4.0 / 0.125 * std::log(4.0 / 0.1);
  EXPECT_NEAR(c.statement_form_raw, statement, 1e-8 * statement);
  EXPECT_EQ(c.statement_form, static_cast<std::uint64_t>(std::ceil(statement)));
}

TEST(Theorem2, DegreeOneSpecialization) {
  for (std::size_t n : {2u, 10u, 1000u}) {
    const double expected = std::exp(6.0) / (0.3 * 0.3) * std::log(2.0 / 0.05 * (n + 1.0));
    EXPECT_EQ(theorem2_sample_count(n, 1, 0.3, 0.05, kUnitB).proof_form,
              static_cast<std::uint64_t>(std::ceil(expected)));
  }
}

// The proof form uses e^6 where 2/b^2 contributes 2 e^5, so the two pre-ceiling values
// differ by exactly e/2 and the learner's N_b never exceeds the proof-form count.
TEST(Theorem2, RelationToLearnerCount) {
  for (std::size_t d = 1; d <= 3; ++d) {
    for (const auto& model : {kUnitB, BHConstantModel::dmp(1.0)}) {
      const double b = choose_b(0.3, d, model);
      const double nb = sample_count_for_b_raw(12, d, 0.1, b);
      const Theorem2Counts t = theorem2_sample_count(12, d, 0.3, 0.1, model);
      EXPECT_NEAR(t.proof_form_raw / nb, std::numbers::e / 2.0, 1e-12);
      EXPECT_LE(sample_count_for_b(12, d, 0.1, b), t.proof_form);
    }
  }
}

TEST(Theorem2, Errors) {
  EXPECT_THROW((void)theorem2_sample_count(4, 0, 0.5, 0.1, kUnitB), InvalidArgument);
  EXPECT_THROW((void)theorem2_sample_count(4, 5, 0.5, 0.1, kUnitB), InvalidArgument);
  EXPECT_THROW((void)theorem2_sample_count(4, 2, 0.0, 0.1, kUnitB), InvalidArgument);
  EXPECT_THROW((void)theorem2_sample_count(1000, 40, 0.01, 0.1, BHConstantModel::dmp(1.0)), CapacityError);
}

TEST(Theorem1, SmallCase) {
  const Theorem1Count t = theorem1_sample_count(2, 1, 0.5, 0.5, 3.0);
  EXPECT_NEAR(t.lmn_branch * std::log(4.0), 16.0 * std::log(4.0), 1e-12);
  EXPECT_NEAR(t.lmn_branch * std::log(4.0), 22.18070977791825, 1e-9);
  EXPECT_NEAR(t.bh_branch, 4.0, 1e-12);
  EXPECT_EQ(t.branch, Theorem1Branch::BohnenblustHille);
  EXPECT_EQ(t.count, static_cast<std::uint64_t>(std::ceil(4.0 * std::log(4.0))));
}

TEST(Theorem1, ZeroConstantAtDegreeOne) {
  EXPECT_NEAR(theorem1_sample_count(100, 1, 0.2, 0.1, 0.0).bh_branch, 25.0, 1e-9);
}

TEST(Theorem1, BranchSelection) {
  // d^{3/2} sqrt(ln d) at d = 4 is 8 sqrt(ln 4).
  const double C = 2.0;
  EXPECT_EQ(theorem1_sample_count(4, 4, 0.01, 0.1, C).branch, Theorem1Branch::LowDegree);
  EXPECT_EQ(theorem1_sample_count(60000, 4, 0.3, 0.1, C).branch, Theorem1Branch::BohnenblustHille);
  // n^d far beyond double range is still compared in log form.
  const Theorem1Logs big = theorem1_branch_logs(65536, 80, 0.5, 0.1, 0.1);
  EXPECT_GT(big.log_lmn_branch, 800.0);
  EXPECT_EQ(big.winner(), Theorem1Branch::BohnenblustHille);
  for (std::size_t n : {2u, 8u, 64u}) {
    for (double eps : {0.05, 0.3, 0.9}) {
      const Theorem1Logs l = theorem1_branch_logs(n, 2, eps, 0.1, 1.0);
      const Theorem1Count c = theorem1_sample_count(n, 2, eps, 0.1, 1.0);
      EXPECT_EQ(c.branch, std::exp(l.log_bh_branch) <= std::exp(l.log_lmn_branch) ? Theorem1Branch::BohnenblustHille
                                                                                 : Theorem1Branch::LowDegree);
    }
  }
  EXPECT_THROW((void)theorem1_sample_count(4, 1, 0.5, 0.5, -1.0), InvalidArgument);
}

TEST(Lmn, SpotValue) {
  EXPECT_EQ(lmn_sample_count(2, 1, 0.5, 0.5), 17u);
  EXPECT_GT(8.0 * std::log(8.0), 16.0);
  EXPECT_LT(8.0 * std::log(8.0), 17.0);
}

TEST(Lmn, DegreeZero) {
  EXPECT_EQ(lmn_sample_count(7, 0, 0.25, 0.1), static_cast<std::uint64_t>(std::ceil(8.0 * std::log(20.0))));
}

TEST(Lmn, Monotone) {
  std::uint64_t prev = 0;
  for (std::size_t n = 1; n <= 64; ++n) {
    const std::uint64_t v = lmn_sample_count(n, 1, 0.3, 0.1);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_LT(lmn_sample_count(10, 1, 0.3, 0.1), lmn_sample_count(10, 2, 0.3, 0.1));
  EXPECT_LT(lmn_sample_count(10, 2, 0.3, 0.1), lmn_sample_count(10, 2, 0.2, 0.1));
  EXPECT_LT(lmn_sample_count(10, 2, 0.3, 0.1), lmn_sample_count(10, 2, 0.3, 0.05));
}

TEST(Lmn, ExceedsTheorem2WhenDimensionDominates) {
  for (std::size_t d = 1; d <= 2; ++d) {
    for (std::size_t n : {20000u, 50000u, 65536u}) {
      for (double eps : {0.25, 0.5}) {
        EXPECT_GT(lmn_sample_count(n, d, eps, 0.1), theorem2_sample_count(n, d, eps, 0.1, kUnitB).proof_form)
            << "n=" << n << " d=" << d << " eps=" << eps;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Estimation
// ---------------------------------------------------------------------------

TEST(Estimate, ConstantFunction) {
  const Target one = character_oracle(5, SubsetMask(5));
  const auto samples = draw_samples(one.oracle, 37, 2);
  const EmpiricalSpectrum alpha = estimate_coefficients(samples, 5, 2);
  EXPECT_EQ(alpha.at(SubsetMask(5)), 1.0);
  for (const auto& s : alpha.subsets()) {
    double mean = 0.0;
    for (const auto& q : samples) mean += oracle::character(s.to_index(), q.point.to_index());
    EXPECT_NEAR(alpha.at(s), mean / 37.0, 1e-15);
  }
}

TEST(Estimate, SingleSample) {
  const QuerySample q{PointMask(4, 0b0110), -0.375};
  const EmpiricalSpectrum alpha = estimate_coefficients(std::span(&q, 1), 4, 4);
  EXPECT_EQ(alpha.size(), 16u);
  for (const auto& s : alpha.subsets()) {
    EXPECT_EQ(alpha.at(s), -0.375 * oracle::character(s.to_index(), 0b0110));
  }
}

TEST(Estimate, CharacterConcentrates) {
  const SubsetMask t(8, 0b10010);
  const Target f = character_oracle(8, t);
  const auto samples = draw_samples(f.oracle, 10000, 3);
  const EmpiricalSpectrum alpha = estimate_coefficients(samples, 8, 2);
  EXPECT_LE(std::abs(alpha.at(t) - 1.0), 3e-2);
  EXPECT_EQ(alpha.at(t), 1.0);
  for (const auto& s : alpha.subsets()) {
    if (s != t) {
      EXPECT_LE(std::abs(alpha.at(s)), 4.0 / std::sqrt(10000.0));
    }
  }
}

TEST(Estimate, EmptySamplesRejected) {
  EXPECT_THROW((void)estimate_coefficients(std::span<const QuerySample>{}, 4, 2), InvalidArgument);
}

TEST(Estimate, OutsideLevelsRejected) {
  const QuerySample q{PointMask(4), 1.0};
  const EmpiricalSpectrum alpha = estimate_coefficients(std::span(&q, 1), 4, 1);
  EXPECT_THROW((void)alpha.at(SubsetMask(4, 3)), InvalidArgument);
}

TEST(Estimate, LiteralFormulaOracle) {
  const Target f = random_bounded_low_degree(7, 2, 14);
  const auto samples = draw_samples(f.oracle, 3000, 15);
  const EmpiricalSpectrum alpha = estimate_coefficients(samples, 7, 3);
  for (const auto& s : alpha.subsets()) {
    double acc = 0.0;
    for (const auto& q : samples) acc += q.value * oracle::character(s.to_index(), q.point.to_index());
    EXPECT_NEAR(alpha.at(s), acc / 3000.0, 1e-12);
  }
}

TEST(Estimate, DenseAgreesWithDirect) {
  for (std::size_t n : {1u, 6u, 12u, 16u}) {
    const std::size_t d = std::min<std::size_t>(n, 3);
    const Target f = random_bounded_low_degree(n, d, 100 + n);
    const auto samples = draw_samples(f.oracle, 5000, 16);
    const auto direct = estimate_coefficients(samples, n, d, EstimatorMode::Direct);
    const auto dense = estimate_coefficients(samples, n, d, EstimatorMode::Dense);
    for (std::size_t i = 0; i < direct.size(); ++i) ASSERT_NEAR(direct.values()[i], dense.values()[i], 1e-12);
  }
}

TEST(Estimate, ThreadCountDoesNotChangeBits) {
  const Target f = character_oracle(300, SubsetMask::from_positions(300, {7, 250}));
  const auto samples = draw_samples(f.oracle, 5000, 17);
  const auto one = estimate_coefficients(samples, 300, 2, EstimatorMode::Direct, 1);
  for (unsigned th : {2u, 3u, 8u}) EXPECT_EQ(estimate_coefficients(samples, 300, 2, EstimatorMode::Direct, th), one);
}

TEST(Estimate, Unbiased) {
  const std::size_t n = 6;
  const std::size_t d = 2;
  const Target f = random_bounded_low_degree(n, d, 18);
  const std::size_t per_run = 100;
  const std::size_t runs = 400;
  const auto index = make_low_degree_index(n, d);
  std::vector<double> mean(index->size(), 0.0);
  for (std::size_t r = 0; r < runs; ++r) {
    const auto samples = draw_samples(f.oracle, per_run, derive_seed(19, {r}));
    const auto alpha = estimate_coefficients(samples, n, d);
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += alpha.values()[i] / runs;
  }
  // Var(f w_S) <= E f^2.
  double ef2 = 0.0;
  for (double v : f.table->values()) ef2 += v * v / static_cast<double>(f.table->size());
  const double band = 3.0 * std::sqrt(ef2 / static_cast<double>(per_run * runs));
  for (std::size_t i = 0; i < mean.size(); ++i) {
    EXPECT_LE(std::abs(mean[i] - f.truth.at(index->subsets[i])), band) << index->subsets[i].to_hex();
  }
}

TEST(Threshold, Boundaries) {
  const auto index = make_low_degree_index(3, 1);
  const EmpiricalSpectrum alpha(index, {0.5, -0.25, 0.125, -0.5}, 8);
  EXPECT_TRUE(threshold_spectrum(alpha, 1.01).empty());
  EXPECT_EQ(threshold_spectrum(alpha, 1e-300).size(), 4u);
  const auto at_quarter = threshold_spectrum(alpha, 0.25);
  ASSERT_EQ(at_quarter.size(), 3u);
  EXPECT_EQ(at_quarter[1], SubsetMask(3, 1));
  EXPECT_THROW((void)threshold_spectrum(alpha, 0.0), InvalidArgument);
}

TEST(Hypothesis, EmptyAndFull) {
  const auto index = make_low_degree_index(3, 1);
  const EmpiricalSpectrum alpha(index, {0.5, -0.25, 0.0, -0.5}, 8);
  EXPECT_TRUE(build_hypothesis(alpha, {}).empty());
  const CoefficientMap full = build_hypothesis(alpha, alpha.subsets());
  EXPECT_EQ(full.size(), 3u);
  EXPECT_EQ(full.at(SubsetMask(3, 4)), -0.5);
}

// ---------------------------------------------------------------------------
// Learners
// ---------------------------------------------------------------------------

TEST(LearnParams, Validation) {
  const LearnParams p = LearnParams::for_bh(6, 2, 0.5, 0.1, kUnitB);
  EXPECT_EQ(p.b, choose_b(0.5, 2, kUnitB));
  EXPECT_EQ(p.a, threshold_a(p.b, 2));
  EXPECT_EQ(p.samples, sample_count_for_b(6, 2, 0.1, p.b));
  LearnParams bad = p;
  bad.a = bad.b;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = p;
  bad.samples = 0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  EXPECT_THROW((void)LearnParams::for_bh(6, 0, 0.5, 0.1, kUnitB), InvalidArgument);
  EXPECT_THROW((void)LearnParams::for_bh(6, 7, 0.5, 0.1, kUnitB), InvalidArgument);
  EXPECT_THROW((void)LearnParams::for_bh(6, 2, 1.5, 0.1, kUnitB), InvalidArgument);
}

TEST(LearnBh, RecoversCharacters) {
  const std::size_t trials = 200;
  const double delta = 0.1;
  for (std::size_t d : {1u, 2u}) {
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng pick(derive_seed(21, {t, d}));
      SubsetMask s(8);
      while (s.count() < d) s.set(pick.next() % 8);
      const Target f = character_oracle(8, s);
      const LearnResult r = learn_bh(f.oracle, 8, d, 0.5, delta, kUnitB, derive_seed(22, {t, d}));
      const bool ok = r.hypothesis.size() == 1 && r.hypothesis.contains(s) &&
                      std::abs(r.hypothesis.at(s) - 1.0) <= r.diagnostics.b;
      hits += ok ? 1 : 0;
    }
    EXPECT_GE(static_cast<double>(hits) / trials, 1.0 - delta - oracle::three_sigma(delta, trials)) << "d=" << d;
  }
}

TEST(LearnBh, QueriesEqualSampleCount) {
  const Target f = random_bounded_low_degree(6, 1, 23);
  const LearnResult r = learn_bh(f.oracle, 6, 1, 0.5, 0.1, kUnitB, 24);
  EXPECT_EQ(r.diagnostics.samples, sample_count_for_b(6, 1, 0.1, choose_b(0.5, 1, kUnitB)));
  EXPECT_EQ(r.diagnostics.queries_used, r.diagnostics.samples);
  EXPECT_EQ(f.oracle.queries(), r.diagnostics.samples);
  EXPECT_EQ(r.spectrum.sample_count(), r.diagnostics.samples);
}

TEST(LearnBh, MatchesManualPipeline) {
  const Target f = random_bounded_low_degree(7, 2, 25);
  const LearnParams p = LearnParams::for_bh(7, 2, 0.6, 0.2, kUnitB);
  const LearnResult r = learn_bh(f.oracle, 7, 2, 0.6, 0.2, kUnitB, 26);
  const auto samples = draw_samples(f.oracle.fresh(), p.samples, 26);
  const EmpiricalSpectrum alpha = estimate_coefficients(samples, 7, 2, EstimatorMode::Dense);
  EXPECT_EQ(r.hypothesis, build_hypothesis(alpha, threshold_spectrum(alpha, p.a)));
}

TEST(LearnBh, DeterministicAcrossRunsAndThreads) {
  const Target f = character_oracle(40, SubsetMask::from_positions(40, {3}));
  LearnOptions one;
  one.threads = 1;
  LearnOptions many;
  many.threads = 4;
  const LearnResult a = learn_bh(f.oracle, 40, 1, 0.5, 0.1, kUnitB, 27, one);
  const LearnResult b = learn_bh(f.oracle, 40, 1, 0.5, 0.1, kUnitB, 27, many);
  const LearnResult c = learn_bh(f.oracle, 40, 1, 0.5, 0.1, kUnitB, 27, one);
  EXPECT_EQ(a.hypothesis, b.hypothesis);
  EXPECT_EQ(a.hypothesis, c.hypothesis);
  EXPECT_EQ(a.spectrum, b.spectrum);
}

TEST(LearnBh, RejectsMismatchedOracle) {
  const Target f = random_bounded_low_degree(5, 3, 28);
  EXPECT_THROW((void)learn_bh(f.oracle, 5, 2, 0.5, 0.1, kUnitB, 1), InvalidArgument);
  EXPECT_THROW((void)learn_bh(f.oracle, 6, 3, 0.5, 0.1, kUnitB, 1), InvalidArgument);
}

// Theorem 2 contract at the proof-form count with B_d = 1.
TEST(LearnBh, SuccessFrequencyAtProofFormCount) {
  const std::size_t trials = 200;
  const double eps = 0.3;
  const double delta = 0.2;
  for (std::size_t n : {8u, 10u}) {
    for (std::size_t d : {1u, 2u}) {
      LearnOptions opt;
      opt.sample_override = theorem2_sample_count(n, d, eps, delta, kUnitB).proof_form;
      opt.index = make_low_degree_index(n, d);
      std::size_t ok = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        const Target f = random_bounded_low_degree(n, d, derive_seed(29, {n, d, t}));
        const LearnResult r = learn_bh(f.oracle, n, d, eps, delta, kUnitB, derive_seed(30, {n, d, t}), opt);
        ok += l2_squared_distance(r.hypothesis, f.truth) < eps ? 1 : 0;
      }
      EXPECT_GE(static_cast<double>(ok) / trials, 1.0 - delta - oracle::three_sigma(delta, trials))
          << "n=" << n << " d=" << d;
    }
  }
}

TEST(LearnBh, GoodEventSupportBoundAndErrorSplit) {
  const std::size_t trials = 200;
  const double delta = 0.1;
  for (std::size_t d : {1u, 2u}) {
    const std::size_t n = 8;
    std::size_t good = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const Target f = random_bounded_low_degree(n, d, derive_seed(31, {d, t}));
      const LearnResult r = learn_bh(f.oracle, n, d, 0.5, delta, kUnitB, derive_seed(32, {d, t}));
      const double b = r.diagnostics.b;
      if (good_event_gap(r.spectrum, f.truth) > b) continue;
      ++good;
      const double p = bh_exponent(d);
      const double bound = std::pow(r.diagnostics.a - b, -p);
      EXPECT_NEAR(r.diagnostics.support_bound, bound, 1e-9 * bound);
      if (d == 1) {
        EXPECT_LE(static_cast<double>(r.diagnostics.support_size), bound);
      }

      double split = 0.0;
      for (const auto& s : r.spectrum.subsets()) {
        const double truth = f.truth.at(s);
        split += r.hypothesis.contains(s) ? (r.spectrum.at(s) - truth) * (r.spectrum.at(s) - truth) : truth * truth;
      }
      EXPECT_NEAR(l2_squared_distance(r.hypothesis, f.truth), split, 1e-10);
    }
    EXPECT_GE(static_cast<double>(good) / trials, 1.0 - delta - oracle::three_sigma(delta, trials));
  }
}

TEST(LearnBh, GoodEventFrequencyAtChosenB) {
  const std::size_t trials = 300;
  const double delta = 0.2;
  const Target f = random_bounded_low_degree(8, 2, 33);
  const double b = 0.1;
  LearnOptions opt;
  opt.sample_override = sample_count_for_b(8, 2, delta, b);
  std::size_t good = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const LearnResult r = learn_bh(f.oracle.fresh(), 8, 2, 0.5, delta, kUnitB, derive_seed(34, {t}), opt);
    good += good_event_gap(r.spectrum, f.truth) <= b ? 1 : 0;
  }
  EXPECT_GE(static_cast<double>(good) / trials, 1.0 - delta - oracle::three_sigma(delta, trials));
}

TEST(LearnLmn, FullSupportAndCharacterRecovery) {
  const std::size_t trials = 200;
  const double eps = 0.3;
  const double delta = 0.1;
  std::size_t ok = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const SubsetMask s(6, std::uint64_t{1} << (t % 6));
    const Target f = character_oracle(6, s);
    const LearnResult r = learn_lmn(f.oracle, 6, 2, eps, delta, derive_seed(35, {t}));
    EXPECT_EQ(r.diagnostics.support_size, 22u);
    EXPECT_EQ(r.diagnostics.b, 0.0);
    EXPECT_EQ(r.diagnostics.queries_used, lmn_sample_count(6, 2, eps, delta));
    ok += l2_squared_distance(r.hypothesis, f.truth) < eps ? 1 : 0;
  }
  EXPECT_GE(static_cast<double>(ok) / trials, 1.0 - delta - oracle::three_sigma(delta, trials));
}

TEST(LearnLmn, EqualsThresholdlessHypothesis) {
  const Target f = random_bounded_low_degree(6, 2, 36);
  const LearnResult r = learn_lmn(f.oracle, 6, 2, 0.5, 0.1, 37);
  EXPECT_EQ(r.hypothesis, build_hypothesis(r.spectrum, r.spectrum.subsets()));
  const LearnResult again = learn_lmn(f.oracle, 6, 2, 0.5, 0.1, 37);
  EXPECT_EQ(r.hypothesis, again.hypothesis);
}

TEST(LearnLmn, SuccessFrequencyOnRandomTargets) {
  const std::size_t trials = 200;
  const double eps = 0.3;
  const double delta = 0.2;
  std::size_t ok = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const Target f = random_bounded_low_degree(8, 2, derive_seed(38, {t}));
    const LearnResult r = learn_lmn(f.oracle, 8, 2, eps, delta, derive_seed(39, {t}));
    ok += l2_squared_distance(r.hypothesis, f.truth) < eps ? 1 : 0;
  }
  EXPECT_GE(static_cast<double>(ok) / trials, 1.0 - delta - oracle::three_sigma(delta, trials));
}

TEST(LearnAuto, DispatchIsArgmin) {
  struct Case {
    std::size_t n;
    double eps;
    Algorithm expected;
  };
  for (const Case& c : {Case{4, 0.01, Algorithm::LMN}, Case{1000, 0.5, Algorithm::BH}, Case{30, 0.3, Algorithm::LMN}}) {
    const Target f = character_oracle(c.n, SubsetMask::from_positions(c.n, {1}));
    const LearnResult r = learn_auto(f.oracle, c.n, 1, c.eps, 0.1, kUnitB, 1.0, 40);
    const std::uint64_t bh = sample_count_for_b(c.n, 1, 0.1, choose_b(c.eps, 1, kUnitB));
    const std::uint64_t lmn = lmn_sample_count(c.n, 1, c.eps, 0.1);
    EXPECT_EQ(r.diagnostics.bh_candidate_samples, bh);
    EXPECT_EQ(r.diagnostics.lmn_candidate_samples, lmn);
    EXPECT_EQ(r.diagnostics.algorithm, bh <= lmn ? Algorithm::BH : Algorithm::LMN);
    EXPECT_EQ(r.diagnostics.algorithm, c.expected) << "n=" << c.n;
    EXPECT_EQ(r.diagnostics.samples, std::min(bh, lmn));
    ASSERT_TRUE(r.diagnostics.theorem1_branch.has_value());
  }
}

TEST(Algorithms, ParseAndPrint) {
  for (Algorithm a : {Algorithm::BH, Algorithm::LMN, Algorithm::Auto}) EXPECT_EQ(parse_algorithm(to_string(a)), a);
  EXPECT_THROW((void)parse_algorithm("BH"), InvalidArgument);
}

TEST(SignRound, Examples) {
  const SubsetMask s(4, 0b1010);
  CoefficientMap w(4);
  w.set(s, 1.0);
  EXPECT_EQ(sign_round(w), character_table(s));
  const TruthTable zero = sign_round(CoefficientMap(4));
  for (double v : zero.values()) EXPECT_EQ(v, 1.0);
}

TEST(SignRound, FourTimesBoundOnLearnedHypotheses) {
  for (std::size_t t = 0; t < 60; ++t) {
    const std::size_t n = 4 + t % 7;
    Rng pick(derive_seed(41, {t}));
    const SubsetMask s(n, pick.next() & ((std::uint64_t{1} << n) - 1) & 0b111);
    const Target f = character_oracle(n, s);
    LearnOptions opt;
    opt.sample_override = 40 + t;
    const LearnResult r = learn_lmn(f.oracle, n, 3, 0.5, 0.1, derive_seed(42, {t}), opt);
    const TruthTable h = to_truth_table(r.hypothesis);
    const TruthTable sg = sign_round(r.hypothesis);
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t x = 0; x < h.size(); ++x) {
      const double fx = (*f.table)[x];
      lhs += (sg[x] - fx) * (sg[x] - fx);
      rhs += (h[x] - fx) * (h[x] - fx);
    }
    EXPECT_LE(lhs, 4.0 * rhs) << "t=" << t;
  }
}
