#include "hsw/transforms.hpp"

#include <gtest/gtest.h>

#include <cmath>

using hsw::DiscreteMeasure;
using hsw::GaussianMeasure;
using hsw::Rng;
using Mat = hsw::Matrix<double>;
using Vec = hsw::Vector<double>;

namespace {

DiscreteMeasure<double> random_measure(hsw::Index n, hsw::Index d, std::uint64_t seed) {
  Rng rng(seed);
  Mat x(n, d);
  for (hsw::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
  return DiscreteMeasure<double>::uniform(x);
}

hsw::DirectionSet<double> one_direction(double a, double b) {
  Mat m(1, 2);
  m << a, b;
  return hsw::DirectionSet<double>(m);
}

}  // namespace

TEST(RadonProject, CoordinateProjection) {
  Mat x(2, 2);
  x << 1, 0, 0, 1;
  const auto out = hsw::radon_project(DiscreteMeasure<double>::uniform(x), one_direction(1, 0));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].values[0], 1.0);
  EXPECT_EQ(out[0].values[1], 0.0);
  EXPECT_EQ(out[0].weights[0], 0.5);
}

TEST(RadonProject, NegatedDirectionNegatesValues) {
  const auto m = random_measure(10, 2, 1);
  const double c = 0.6, s = 0.8;
  const auto plus = hsw::radon_project(m, one_direction(c, s));
  const auto minus = hsw::radon_project(m, one_direction(-c, -s));
  EXPECT_TRUE((plus[0].values.array() == -minus[0].values.array()).all());
}

TEST(RadonProject, SinglePointDotProduct) {
  Mat x(1, 2);
  x << 3, 4;
  const auto out = hsw::radon_project(DiscreteMeasure<double>::uniform(x), one_direction(0.6, 0.8));
  EXPECT_NEAR(out[0].values[0], 5.0, 1e-15);
}

TEST(RadonProject, DimensionMismatch) {
  const auto m = random_measure(4, 3, 2);
  EXPECT_THROW(hsw::radon_project(m, one_direction(1, 0)), hsw::InvalidArgument);
}

TEST(RadonProject, LinearityThroughRawPath) {
  const auto m = random_measure(12, 4, 3);
  Rng rng(4);
  const Mat t = hsw::sample_unit_columns(4, 2, rng);
  const double a = 1.7, b = -0.4;
  Mat combo(4, 1);
  combo.col(0) = a * t.col(0) + b * t.col(1);
  const Mat lhs = hsw::project_raw(m, combo);
  const Mat parts = hsw::project_raw(m, t);
  EXPECT_LT((lhs.col(0) - (a * parts.col(0) + b * parts.col(1))).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ProjectionBundle, RejectsBadShapes) {
  Rng rng(5);
  const Mat head = hsw::sample_unit_columns(3, 2, rng);
  EXPECT_THROW(hsw::ProjectionBundle<double>({head}, hsw::sample_unit_columns(3, 4, rng)), hsw::InvalidArgument);
  EXPECT_THROW(hsw::ProjectionBundle<double>({head}, Mat::Constant(2, 3, 1.0)), hsw::InvalidArgument);
  EXPECT_THROW(hsw::ProjectionBundle<double>(std::vector<Mat>{}, hsw::sample_unit_columns(2, 3, rng)), hsw::InvalidArgument);
}

TEST(HrtProject, KOneMatchesRadon) {
  const auto m = random_measure(6, 3, 6);
  Rng rng(7);
  const Mat theta = hsw::sample_unit_columns(3, 1, rng);
  const hsw::ProjectionBundle<double> bundle({theta}, Mat::Ones(1, 1));
  const auto grid = hsw::hrt_project(m, bundle);
  const auto ref = hsw::radon_project(m, hsw::DirectionSet<double>(theta.transpose()));
  EXPECT_TRUE((grid[0][0].values.array() == ref[0].values.array()).all());
}

TEST(HrtProject, OrthonormalHeadRecoversUnitValue) {
  Mat theta(3, 2);
  theta << 1, 0, 0, 1, 0, 0;
  Vec psi(2);
  psi << 0.6, 0.8;
  Mat x(1, 3);
  x.row(0) = (theta * psi).transpose();
  const hsw::ProjectionBundle<double> bundle({theta}, Mat(psi));
  const auto grid = hsw::hrt_project(DiscreteMeasure<double>::uniform(x), bundle);
  EXPECT_NEAR(grid[0][0].values[0], 1.0, 1e-15);
}

TEST(HrtProject, TwoStageMatchesDirectProduct) {
  const auto m = random_measure(8, 5, 8);
  const auto bundle = hsw::sample_bundle<double>(5, 3, 4, 1, Rng(9));
  const auto grid = hsw::hrt_project(m, bundle);
  const auto dirs = hsw::final_directions(bundle);
  const Mat direct = hsw::project_raw(m, dirs[0]);
  for (hsw::Index l = 0; l < 4; ++l) {
    EXPECT_LT((grid[0][static_cast<std::size_t>(l)].values - direct.col(l)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(HrtProject, MultiHeadGridShape) {
  const auto m = random_measure(5, 4, 10);
  const auto bundle = hsw::sample_bundle<double>(4, 2, 3, 3, Rng(11));
  const auto grid = hsw::hrt_project(m, bundle);
  ASSERT_EQ(grid.size(), 3u);
  for (const auto &row : grid) EXPECT_EQ(row.size(), 3u);
  const auto dirs = hsw::final_directions(bundle);
  for (std::size_t h = 0; h < 3; ++h) {
    const Mat direct = hsw::project_raw(m, dirs[h]);
    for (hsw::Index l = 0; l < 3; ++l) {
      const double scale = std::max(1.0, direct.col(l).cwiseAbs().maxCoeff());
      EXPECT_LT((grid[h][static_cast<std::size_t>(l)].values - direct.col(l)).cwiseAbs().maxCoeff() / scale, 1e-10);
    }
  }
}

TEST(FinalDirections, KOneIsSignedHead) {
  const auto bundle = hsw::sample_bundle<double>(4, 1, 5, 2, Rng(12));
  const auto dirs = hsw::final_directions(bundle);
  for (std::size_t h = 0; h < 2; ++h) {
    for (hsw::Index l = 0; l < 5; ++l) {
      const double s = bundle.mixing()(0, l);
      EXPECT_TRUE(s == 1.0 || s == -1.0);
      EXPECT_TRUE((dirs[h].col(l).array() == (s * bundle.heads()[h].col(0)).array()).all());
    }
  }
}

TEST(FinalDirections, DuplicatedColumnsScaleBySqrtTwo) {
  Mat theta(2, 2);
  theta << 0.6, 0.6, 0.8, 0.8;
  Vec psi = Vec::Constant(2, 1.0 / std::sqrt(2.0));
  const hsw::ProjectionBundle<double> bundle({theta}, Mat(psi));
  const Vec dir = hsw::final_directions(bundle)[0].col(0);
  EXPECT_NEAR(dir.norm(), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(dir[0] / dir[1], 0.75, 1e-12);
}

TEST(FinalDirections, NormsBoundedBySqrtK) {
  const auto bundle = hsw::sample_bundle<double>(4, 2, 500, 1, Rng(13));
  const Mat dirs = hsw::final_directions(bundle)[0];
  EXPECT_LE(dirs.colwise().norm().maxCoeff(), std::sqrt(2.0) + 1e-12);
}

TEST(GaussianPushforward, StandardGaussianWithOrthonormalHead) {
  Mat theta = Mat::Zero(4, 2);
  theta(1, 0) = 1;
  theta(3, 1) = 1;
  Vec psi(2);
  psi << -0.8, 0.6;
  const auto r = hsw::gaussian_hrt_pushforward(GaussianMeasure<double>(Vec::Zero(4), Mat::Identity(4, 4)), theta, psi);
  EXPECT_NEAR(r.mean, 0.0, 1e-15);
  EXPECT_NEAR(r.variance, 1.0, 1e-15);
}

TEST(GaussianPushforward, DegenerateCovariance) {
  Vec mu(2);
  mu << 3, -1;
  Vec psi(2);
  psi << 0.6, 0.8;
  const auto r = hsw::gaussian_hrt_pushforward(GaussianMeasure<double>(mu, Mat::Zero(2, 2)), Mat(Mat::Identity(2, 2)), psi);
  EXPECT_NEAR(r.mean, 3 * 0.6 - 0.8, 1e-15);
  EXPECT_EQ(r.variance, 0.0);
}

TEST(GaussianPushforward, HandEvaluated) {
  Vec mu(2);
  mu << 1, 2;
  Mat cov(2, 2);
  cov << 2, 0, 0, 1;
  Vec psi(2);
  psi << 0.6, 0.8;
  const auto r = hsw::gaussian_hrt_pushforward(GaussianMeasure<double>(mu, cov), Mat(Mat::Identity(2, 2)), psi);
  EXPECT_NEAR(r.mean, 2.2, 1e-12);
  EXPECT_NEAR(r.variance, 1.36, 1e-12);
}

TEST(GaussianPushforward, MatchesSampledMoments) {
  Vec mu(3);
  mu << 0.5, -1, 2;
  Mat a(3, 3);
  a << 1, 0.2, 0, -0.3, 0.8, 0.1, 0.4, 0, 0.6;
  const GaussianMeasure<double> g(mu, a * a.transpose());
  Rng rng(14);
  const auto bundle = hsw::sample_bundle<double>(3, 2, 1, 1, Rng(15));
  const Vec psi = bundle.mixing().col(0);
  const auto closed = hsw::gaussian_hrt_pushforward(g, bundle.heads()[0], psi);
  const int n = 100000;
  const auto samples = hsw::empirical_from_gaussian(g, n, rng);
  const Vec v = hsw::hrt_project(samples, bundle)[0][0].values;
  const double mean = v.mean();
  const double var = (v.array() - mean).square().sum() / (n - 1);
  const double sd = std::sqrt(closed.variance);
  EXPECT_LT(std::abs(mean - closed.mean), 4 * sd / std::sqrt(n));
  EXPECT_LT(std::abs(var - closed.variance), 8 * closed.variance * std::sqrt(2.0 / n));
}

TEST(GaussianPushforward, ShapeErrors) {
  const GaussianMeasure<double> g(Vec::Zero(2), Mat::Identity(2, 2));
  EXPECT_THROW(hsw::gaussian_hrt_pushforward(g, Mat(Mat::Identity(3, 3)), Vec(Vec::Ones(3))), hsw::InvalidArgument);
  EXPECT_THROW(hsw::gaussian_hrt_pushforward(g, Mat(Mat::Identity(2, 2)), Vec(Vec::Ones(3))), hsw::InvalidArgument);
}

TEST(MixturePushforward, Componentwise) {
  using Mixture = hsw::MixtureGaussian<double>;
  Vec mu(2);
  mu << 1, 2;
  Mat cov(2, 2);
  cov << 2, 0.3, 0.3, 1;
  const GaussianMeasure<double> g(mu, cov);
  Vec psi(2);
  psi << 0.6, 0.8;
  const Mat theta = Mat::Identity(2, 2);
  const auto single = hsw::mixture_hrt_pushforward(Mixture({{1.0, g}}), theta, psi);
  const auto ref = hsw::gaussian_hrt_pushforward(g, theta, psi);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].mean, ref.mean);
  EXPECT_EQ(single[0].variance, ref.variance);

  const auto twin = hsw::mixture_hrt_pushforward(Mixture({{0.3, g}, {0.7, g}}), theta, psi);
  EXPECT_EQ(twin[0].weight, 0.3);
  EXPECT_EQ(twin[1].weight, 0.7);
  EXPECT_EQ(twin[0].mean, twin[1].mean);
  EXPECT_EQ(twin[0].variance, twin[1].variance);
}

TEST(MixturePushforward, MatchesSampledMoments) {
  using Mixture = hsw::MixtureGaussian<double>;
  Vec m1(2), m2(2);
  m1 << -2, 0;
  m2 << 1, 3;
  Mat c1(2, 2), c2(2, 2);
  c1 << 1, 0.2, 0.2, 0.5;
  c2 << 0.3, 0, 0, 2;
  const Mixture mix({{0.35, GaussianMeasure<double>(m1, c1)}, {0.65, GaussianMeasure<double>(m2, c2)}});
  Vec psi(2);
  psi << 0.8, -0.6;
  const Mat theta = Mat::Identity(2, 2);
  const auto parts = hsw::mixture_hrt_pushforward(mix, theta, psi);
  double mean = 0, second = 0;
  for (const auto &c : parts) {
    mean += c.weight * c.mean;
    second += c.weight * (c.variance + c.mean * c.mean);
  }
  const double var = second - mean * mean;
  Rng rng(16);
  const int n = 100000;
  const Vec v = hsw::empirical_from_mixture(mix, n, rng).supports() * psi;
  const double sample_mean = v.mean();
  const double sample_var = (v.array() - sample_mean).square().sum() / (n - 1);
  const double fourth = (v.array() - sample_mean).pow(4).mean();
  EXPECT_LT(std::abs(sample_mean - mean), 3 * std::sqrt(var / n));
  EXPECT_LT(std::abs(sample_var - var), 3 * std::sqrt((fourth - var * var) / n));
}
