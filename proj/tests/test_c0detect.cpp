#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace framekit;
using testing_support::random_vector;
using testing_support::to_cols;

namespace {

FiniteFrame doubled(Eigen::Index d) { return doubled_frame(Eigen::MatrixXd::Identity(d, d)); }

}  // namespace

TEST(BlockSeq, RejectsBadBlocks) {
  EXPECT_THROW(BlockSeq({}), StructuralError);
  EXPECT_THROW(BlockSeq({Eigen::Vector4d(1, 1, 0, 0), Eigen::Vector4d(0, 1, 1, 0)}), StructuralError);
  EXPECT_THROW(BlockSeq({Eigen::Vector4d(0, 0, 1, 0), Eigen::Vector4d(1, 0, 0, 0)}), StructuralError);
  EXPECT_THROW(BlockSeq({Eigen::Vector4d::Zero()}), StructuralError);
  EXPECT_THROW(BlockSeq({Eigen::Vector4d(1, 0, 0, 0), Eigen::Vector3d(0, 1, 0)}), StructuralError);
  const BlockSeq ok({Eigen::Vector4d(1, -1, 0, 0), Eigen::Vector4d(0, 0, 2, 0)});
  EXPECT_EQ(ok.supports()[1].first, 2);
  EXPECT_EQ(ok.supports()[1].last, 2);
}

TEST(ExampleBlocks, Shapes) {
  const auto b1 = example_blocks(doubled(1));
  ASSERT_EQ(b1.count(), 1u);
  EXPECT_EQ(Eigen::Vector2d(b1.block(0)), Eigen::Vector2d(-1, 1));

  const auto fr = doubled(2);
  const auto b2 = example_blocks(fr);
  ASSERT_EQ(b2.count(), 2u);
  EXPECT_EQ(Eigen::Vector4d(b2.block(0)), Eigen::Vector4d(-1, 1, 0, 0));
  EXPECT_EQ(Eigen::Vector4d(b2.block(1)), Eigen::Vector4d(0, 0, -1, 1));
  for (const auto& u : b2.blocks()) EXPECT_LE(S_apply(fr, u).norm(), 1e-12);
}

TEST(ExampleBlocks, RejectsNonDoubled) {
  EXPECT_THROW(example_blocks(random_frame(2, 3, 0)), StructuralError);
  EXPECT_THROW(example_blocks(random_frame(2, 4, 0)), StructuralError);
}

TEST(C0Constants, SingleBlock) {
  const auto fr = random_frame(2, 5, 1);
  const BlockSeq bs({Eigen::VectorXd(Eigen::VectorXd::LinSpaced(5, 1.0, 2.0))});
  const auto c = c0_constants(fr, bs);
  const double expected = min_norm(fr, bs.block(0));
  EXPECT_DOUBLE_EQ(c.A, expected);
  EXPECT_DOUBLE_EQ(c.B, expected);
  EXPECT_DOUBLE_EQ(c.distortion, 1.0);
}

TEST(C0Constants, DoubledExampleMeasured) {
  const auto fr = doubled(4);
  const auto bs = example_blocks(fr);
  const auto c = c0_constants(fr, bs);
  const double b_oracle = oracle::sign_pattern_max(to_cols(fr.vectors()), to_cols(bs.matrix()), 2.0);
  EXPECT_NEAR(b_oracle, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(c.B, b_oracle, 1e-9);
  EXPECT_NEAR(c.A, 1.0, 1e-9);
  EXPECT_NEAR(c.distortion, std::pow(2.0, 0.25), 1e-9);
  EXPECT_GE(c.A, 1.0 - 1e-12);
  EXPECT_LE(c.B, 2.0);
}

TEST(C0Constants, SampledValuesLieBetweenConstants) {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto fr = random_frame(3, 9, seed);
    const auto ex = extract_kernel_blocks(fr);
    if (!ex.blocks) continue;
    const auto c = c0_constants(fr, *ex.blocks, 7);
    EXPECT_LE(c.A, c.B);
    EXPECT_GT(c.A, 0.0);
    for (int t = 0; t < 200; ++t) {
      Eigen::VectorXd a = random_vector(static_cast<Eigen::Index>(ex.blocks->count()), rng);
      a /= a.cwiseAbs().maxCoeff();
      EXPECT_LE(min_norm(fr, ex.blocks->combine(a)), c.B + 1e-9);
    }
    // B agrees with the independent sign enumeration.
    EXPECT_NEAR(c.B, oracle::sign_pattern_max(to_cols(fr.vectors()), to_cols(ex.blocks->matrix()), 2.0), 1e-12);
  }
}

TEST(C0Constants, AppendingBlocksIsMonotone) {
  std::mt19937_64 rng(10);
  for (Eigen::Index d : {3, 5, 6}) {
    const auto fr = doubled_frame(testing_support::random_normalized_basis(d, rng));
    const auto bs = example_blocks(fr);
    double prev_a = std::numeric_limits<double>::infinity(), prev_b = 0.0;
    for (std::size_t k = 1; k <= bs.count(); ++k) {
      const auto c = c0_constants(fr, bs.prefix(k));
      EXPECT_GE(c.B, prev_b - 1e-12);
      EXPECT_LE(c.A, prev_a + 1e-12);
      prev_a = c.A;
      prev_b = c.B;
    }
  }
}

TEST(C0Constants, KernelBlocksCombineIntoKernel) {
  std::mt19937_64 rng(13);
  const auto fr = doubled(3);
  const auto bs = example_blocks(fr);
  for (int t = 0; t < 50; ++t) {
    EXPECT_LE(S_apply(fr, bs.combine(random_vector(3, rng))).norm(), 1e-12);
  }
}

TEST(C0Constants, EnumerationCap) {
  const auto fr = doubled(21);
  EXPECT_THROW(c0_constants(fr, example_blocks(fr)), EnumerationCap);
}

TEST(C0Constants, Errors) {
  const auto fr = doubled(2);
  EXPECT_THROW(c0_constants(fr, example_blocks(doubled(3))), StructuralError);
  EXPECT_THROW(c0_constants(fr, example_blocks(fr), 0), InvalidParameter);
}

TEST(C0Constants, ExampleBoundsOnNormalizedBases) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 5; ++t) {
    const Eigen::Index d = 2 + t;
    const auto fr = doubled_frame(testing_support::random_normalized_basis(d, rng));
    const auto bs = example_blocks(fr);
    for (int s = 0; s < 200; ++s) {
      const Eigen::VectorXd a = random_vector(d, rng);
      const double m = a.cwiseAbs().maxCoeff();
      const double v = min_norm(fr, bs.combine(a));
      EXPECT_GE(v, m - 1e-12);
      EXPECT_LE(v, 2 * m + 1e-12);
    }
  }
}

TEST(ExtractKernelBlocks, IdentityFrameIsTrivial) {
  const auto ex = extract_kernel_blocks(identity_frame(3));
  EXPECT_FALSE(ex.blocks.has_value());
  EXPECT_NE(ex.message.find("kernel trivial"), std::string::npos);
}

TEST(ExtractKernelBlocks, DoubledFrame) {
  const auto fr = doubled(8);
  const auto ex = extract_kernel_blocks(fr);
  ASSERT_TRUE(ex.blocks.has_value());
  EXPECT_GE(ex.blocks->count(), 4u);
  for (std::size_t k = 0; k < ex.blocks->count(); ++k) {
    const auto& u = ex.blocks->block(k);
    EXPECT_LE(S_apply(fr, u).norm(), 1e-12);
    EXPECT_TRUE(ex.diagnostics[k].semi_normalized);
    EXPECT_NEAR(min_norm(fr, u), 1.0, 1e-12);
    CoeffVec expected = CoeffVec::Zero(fr.size());
    expected[static_cast<Eigen::Index>(2 * k)] = -1.0;
    expected[static_cast<Eigen::Index>(2 * k + 1)] = 1.0;
    EXPECT_LE((u - expected).cwiseAbs().maxCoeff(), ex.diagnostics[k].eps);
  }
}

TEST(ExtractKernelBlocks, KernelConcentratedEarly) {
  // x_1 = x_2 = x_3 = e_1, then e_2 .. e_8: the kernel lives on indices 1..3.
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(8, 10);
  v(0, 0) = v(0, 1) = v(0, 2) = 1.0;
  for (Eigen::Index i = 1; i < 8; ++i) v(i, i + 2) = 1.0;
  const FiniteFrame fr(v, canonical_right_inverse(v));
  ASSERT_TRUE(validate(fr).ok);
  const auto ex = extract_kernel_blocks(fr);
  ASSERT_TRUE(ex.blocks.has_value());
  EXPECT_LE(ex.blocks->count(), 1u);
  EXPECT_LE(ex.blocks->supports()[0].last, 2);
}

TEST(ExtractKernelBlocks, RandomFramesGiveKernelBlocks) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto fr = random_frame(3, 10, seed);
    const auto ex = extract_kernel_blocks(fr);
    ASSERT_TRUE(ex.blocks.has_value());
    for (std::size_t k = 0; k < ex.blocks->count(); ++k) {
      const auto& dg = ex.diagnostics[k];
      EXPECT_LT(dg.tail_min_norm, dg.eps);
      EXPECT_LT(dg.head_image_norm, dg.delta);
      EXPECT_LE(norm(S_apply(fr, ex.blocks->block(k)), fr.norm_spec()), dg.delta);
    }
  }
}

TEST(ExtractKernelBlocks, ScheduleValidation) {
  const auto fr = doubled(2);
  EXPECT_THROW(extract_kernel_blocks(fr, {0.3, 0.3}, {0.5, 0.25}), InvalidParameter);
  EXPECT_THROW(extract_kernel_blocks(fr, {0.1}, {0.0}), InvalidParameter);
  EXPECT_THROW(extract_kernel_blocks(fr, {0.1, 0.1}, {0.5}), InvalidParameter);
  const auto s = default_schedules(3);
  EXPECT_EQ(s.eps, (std::vector<double>{0.125, 0.0625, 0.03125}));
  EXPECT_EQ(s.delta, (std::vector<double>{0.5, 0.25, 0.125}));
}
