#include "hsw/measure_io.hpp"
#include "hsw/measures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

using hsw::DiscreteMeasure;
using hsw::GaussianMeasure;
using hsw::Rng;
using Mat = hsw::Matrix<double>;
using Vec = hsw::Vector<double>;

TEST(SampleUnitSphere, OneDimensionalRowsAreSigns) {
  Rng rng(3);
  const auto dirs = hsw::sample_unit_sphere(1, 5, rng);
  ASSERT_EQ(dirs.count(), 5);
  for (hsw::Index r = 0; r < 5; ++r) {
    const double v = dirs.directions()(r, 0);
    EXPECT_TRUE(v == 1.0 || v == -1.0) << v;
  }
}

TEST(SampleUnitSphere, RowsAreUnitNorm) {
  Rng rng(7);
  const auto dirs = hsw::sample_unit_sphere(3, 1000, rng);
  for (hsw::Index r = 0; r < dirs.count(); ++r) EXPECT_NEAR(dirs.directions().row(r).norm(), 1.0, 1e-9);
}

TEST(SampleUnitSphere, FirstCoordinateMeanIsNearZero) {
  Rng rng(1);
  const auto dirs = hsw::sample_unit_sphere(2, 100000, rng);
  EXPECT_LT(std::abs(dirs.directions().col(0).mean()), 0.02);
}

TEST(SampleUnitSphere, SameSeedIsBitwiseEqual) {
  Rng a(99), b(99);
  const auto x = hsw::sample_unit_sphere(6, 50, a);
  const auto y = hsw::sample_unit_sphere(6, 50, b);
  EXPECT_TRUE((x.directions().array() == y.directions().array()).all());
}

TEST(SampleUnitSphere, RejectsEmptyRequests) {
  Rng rng(0);
  EXPECT_THROW(hsw::sample_unit_sphere(0, 3, rng), hsw::InvalidArgument);
  EXPECT_THROW(hsw::sample_unit_sphere(3, 0, rng), hsw::InvalidArgument);
}

TEST(Rng, SplitStreamsDiffer) {
  const Rng root(5);
  Rng a = root.split(hsw::Stream::kDirections);
  Rng b = root.split(hsw::Stream::kMixing);
  EXPECT_NE(a.normal(), b.normal());
}

TEST(DirectionSet, RejectsNonUnitRows) {
  Mat m(2, 2);
  m << 1, 0, 1, 1;
  EXPECT_THROW(hsw::DirectionSet<double>{m}, hsw::InvalidArgument);
}

TEST(Validate, UniformIsOk) {
  const auto m = DiscreteMeasure<double>::uniform(Mat::Random(7, 3));
  EXPECT_TRUE(hsw::validate(m).ok());
}

TEST(Validate, ReportsWeightSum) {
  Vec w(3);
  w << 0.3, 0.3, 0.3;
  const DiscreteMeasure<double> m(Mat::Zero(3, 2), w);
  const auto report = hsw::validate(m);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0], "weights sum 0.9 ≠ 1");
}

TEST(Validate, ReportsNonFinite) {
  Mat x = Mat::Zero(2, 2);
  x(1, 0) = std::numeric_limits<double>::quiet_NaN();
  const auto report = hsw::validate(DiscreteMeasure<double>::uniform(x));
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0], "non-finite entry");
}

TEST(Validate, ReportsEverything) {
  Vec w(2);
  w << -0.5, 0.5;
  const auto report = hsw::validate(DiscreteMeasure<double>(Mat::Zero(2, 1), w));
  EXPECT_EQ(report.violations.size(), 2u) << report.str();
  EXPECT_FALSE(hsw::validate(DiscreteMeasure<double>(Mat(0, 2), Vec(0))).ok());
  EXPECT_FALSE(hsw::validate(DiscreteMeasure<double>(Mat(2, 0), Vec::Constant(2, 0.5))).ok());
}

TEST(Validate, DoesNotRenormalize) {
  Vec w(2);
  w << 0.2, 0.2;
  const DiscreteMeasure<double> m(Mat::Zero(2, 1), w);
  (void)hsw::validate(m);
  EXPECT_EQ(m.weights()[0], 0.2);
  EXPECT_THROW(hsw::require_valid(m), hsw::InvalidArgument);
}

TEST(DiscreteMeasure, ShapeMismatchThrows) {
  EXPECT_THROW(DiscreteMeasure<double>(Mat::Zero(3, 2), Vec::Constant(2, 0.5)), hsw::InvalidArgument);
}

TEST(EmpiricalFromGaussian, SmallDraw) {
  Rng rng(11);
  const GaussianMeasure<double> g(Vec::Zero(2), Mat::Identity(2, 2));
  const auto m = hsw::empirical_from_gaussian(g, 4, rng);
  EXPECT_EQ(m.size(), 4);
  EXPECT_EQ(m.dim(), 2);
  for (hsw::Index i = 0; i < 4; ++i) EXPECT_EQ(m.weights()[i], 0.25);
}

TEST(EmpiricalFromGaussian, DegenerateCovariance) {
  Rng rng(12);
  const GaussianMeasure<double> g(Vec::Constant(2, 5.0), Mat::Zero(2, 2));
  const auto m = hsw::empirical_from_gaussian(g, 10, rng);
  EXPECT_TRUE((m.supports().array() == 5.0).all());
}

TEST(EmpiricalFromGaussian, NonPsdIsDomainError) {
  Rng rng(0);
  Mat cov(2, 2);
  cov << 1, 2, 2, 1;
  const GaussianMeasure<double> g(Vec::Zero(2), cov);
  EXPECT_THROW(hsw::empirical_from_gaussian(g, 4, rng), hsw::DomainError);
  Mat asym(2, 2);
  asym << 1, 0.5, 0, 1;
  EXPECT_THROW(GaussianMeasure<double>(Vec::Zero(2), asym).require_psd(), hsw::DomainError);
}

TEST(EmpiricalFromGaussian, SampleMeanWithinClt) {
  Rng rng(13);
  const int n = 10000;
  const GaussianMeasure<double> g(Vec::Zero(3), Mat::Identity(3, 3));
  const auto m = hsw::empirical_from_gaussian(g, n, rng);
  EXPECT_LT(m.supports().colwise().mean().norm(), 4.0 / std::sqrt(n));
}

TEST(EmpiricalFromGaussian, SampleCovarianceConverges) {
  Rng rng(14);
  const int n = 100000;
  const int d = 3;
  Mat cov(d, d);
  cov << 2.0, 0.5, 0.0, 0.5, 1.0, -0.3, 0.0, -0.3, 0.5;
  Vec mean(d);
  mean << 1.0, -2.0, 0.5;
  const auto m = hsw::empirical_from_gaussian(GaussianMeasure<double>(mean, cov), n, rng);
  const Mat centered = m.supports().rowwise() - m.supports().colwise().mean();
  const Mat sample_cov = centered.transpose() * centered / double(n - 1);
  EXPECT_LT((sample_cov - cov).norm(), 5.0 * d / std::sqrt(n));
}

TEST(EmpiricalFromMixture, PicksBothComponents) {
  using Mixture = hsw::MixtureGaussian<double>;
  Rng rng(15);
  const Mixture mix({{0.5, GaussianMeasure<double>(Vec::Constant(1, -10.0), Mat::Zero(1, 1))},
                     {0.5, GaussianMeasure<double>(Vec::Constant(1, 10.0), Mat::Zero(1, 1))}});
  const auto m = hsw::empirical_from_mixture(mix, 2000, rng);
  const double frac = (m.supports().array() > 0).cast<double>().mean();
  EXPECT_NEAR(frac, 0.5, 0.05);
  EXPECT_THROW(Mixture({{0.4, GaussianMeasure<double>(Vec::Zero(1), Mat::Identity(1, 1))}}), hsw::InvalidArgument);
}

TEST(MeasureCsv, RoundTripIsBitExact) {
  Rng rng(21);
  Mat x(9, 4);
  for (hsw::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal() * std::pow(10.0, double(i % 7) - 3);
  Vec w = Vec::Constant(9, 1.0 / 9.0);
  const DiscreteMeasure<double> m(x, w);
  for (bool weighted : {false, true}) {
    std::stringstream buf;
    hsw::write_measure_csv(buf, m, weighted);
    const auto back = hsw::read_measure_csv(buf, weighted);
    EXPECT_TRUE((back.supports().array() == x.array()).all());
    EXPECT_TRUE((back.weights().array() == w.array()).all());
  }
}

TEST(MeasureCsv, WeightedColumn) {
  std::istringstream in("0,0,0.25\n1,2,0.75\n");
  const auto m = hsw::read_measure_csv(in, true);
  EXPECT_EQ(m.dim(), 2);
  EXPECT_EQ(m.weights()[1], 0.75);
}

TEST(MeasureCsv, ParseErrorCarriesLine) {
  std::istringstream in("1,2\n3,4\n5,abc\n");
  try {
    hsw::read_measure_csv(in, false);
    FAIL() << "expected ParseError";
  } catch (const hsw::ParseError &e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream ragged("1,2\n3\n");
  try {
    hsw::read_measure_csv(ragged, false);
    FAIL() << "expected ParseError";
  } catch (const hsw::ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream empty("");
  EXPECT_THROW(hsw::read_measure_csv(empty, false), hsw::ParseError);
}
