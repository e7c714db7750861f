#include "helirad/specfun.hpp"
#include "oracle/series_oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace helirad::specfun;

namespace {

const std::vector<int> kOrders = {0, 1, 2, 3, 4, 5, 7, 10, 15, 20, 30, 40, 50};
const std::vector<double> kArgs = {1e-3, 0.01, 0.1, 0.5, 1.0,  1.5,  2.0,
                                   3.0,  5.0,  7.5, 10., 14.0, 20.0, 27.0,
                                   35.0, 50.0, 64.0, 80., 100.0};

// Relative error with an absolute floor at the double-precision noise level
// of functions bounded by one (only matters at the zeros of J and Y).
::testing::AssertionResult close_rel(double got, double want, double rel,
                                     double abs_floor = 1e-15) {
  const double err = std::abs(got - want);
  if (err <= rel * std::abs(want) + abs_floor)
    return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure()
         << "got " << got << " want " << want << " rel err "
         << err / std::abs(want);
}

} // namespace

TEST(Oracle, MatchesTabulatedValues) {
  EXPECT_NEAR(oracle::j(0, 1.0), 0.7651976865579666, 1e-16);
  EXPECT_NEAR(oracle::y(0, 1.0), 0.08825696421567696, 1e-16);
  EXPECT_NEAR(oracle::y(1, 1.0), -0.7812128213002887, 1e-16);
  EXPECT_NEAR(oracle::i(0, 1.0), 1.2660658777520082, 1e-15);
  EXPECT_NEAR(oracle::k(0, 1.0), 0.42102443824070834, 1e-16);
  EXPECT_NEAR(oracle::k(1, 2.0), 0.13986588181652243, 1e-16);
}

TEST(BesselJ, ExamplesAndRoot) {
  EXPECT_EQ(bessel_j(0, 0.0), 1.0);
  EXPECT_EQ(bessel_j(1, 0.0), 0.0);
  // First root of J0 located independently in high precision.
  const double root = oracle::bisect_root(
      [](oracle::hp x) { return oracle::bessel_j(0, x); }, 2.0, 3.0);
  EXPECT_NEAR(root, 2.404825557695773, 1e-14);
  EXPECT_NEAR(bessel_j(0, 2.404825557695773), 0.0, 1e-10);
}

TEST(BesselJ, NegativeOrderParity) {
  for (int m = 0; m <= 30; ++m)
    for (double x : {0.3, 2.0, 9.0, 31.0})
      EXPECT_EQ(bessel_j(-m, x), (m % 2 ? -1.0 : 1.0) * bessel_j(m, x));
}

TEST(BesselJ, AgreesWithSeriesOracle) {
  for (int m : kOrders)
    for (double x : kArgs)
      EXPECT_TRUE(close_rel(bessel_j(m, x), oracle::j(m, x), 1e-12))
          << "m=" << m << " x=" << x;
}

TEST(BesselY, DivergesAtOrigin) {
  EXPECT_LT(bessel_y(0, 1e-8), -10.0);
  EXPECT_LT(bessel_y(1, 1e-8), -1e7);
  EXPECT_THROW(bessel_y(0, 0.0), std::domain_error);
}

TEST(BesselY, FirstRootOfY0) {
  const double root = oracle::bisect_root(
      [](oracle::hp x) { return oracle::bessel_y(0, x); }, 0.5, 1.5);
  EXPECT_NEAR(root, 0.8935769662791675, 1e-14);
  EXPECT_NEAR(bessel_y(0, 0.8935769662791675), 0.0, 1e-10);
}

TEST(BesselY, AgreesWithSeriesOracle) {
  for (int m : kOrders)
    for (double x : kArgs)
      EXPECT_TRUE(close_rel(bessel_y(m, x), oracle::y(m, x), 1e-12))
          << "m=" << m << " x=" << x;
}

TEST(BesselY, OverflowIsReported) {
  EXPECT_THROW(bessel_y(200, 1e-6), std::overflow_error);
}

TEST(BesselIK, LimitsAndExample) {
  auto [i0, k0] = bessel_ik(0, 1e-10);
  EXPECT_NEAR(i0, 1.0, 1e-15);
  EXPECT_GT(k0, 20.0);
  auto [i1, k1] = bessel_ik(1, 1e-10);
  EXPECT_LT(i1, 1e-9);
  EXPECT_GT(k1, 1e9);
  auto [a, b] = bessel_ik(0, 1.0);
  EXPECT_TRUE(close_rel(a * b, oracle::i(0, 1.0) * oracle::k(0, 1.0), 1e-12));
}

TEST(BesselIK, AgreesWithSeriesOracle) {
  for (int m : kOrders)
    for (double x : kArgs) {
      auto [iv, kv] = bessel_ik(m, x);
      EXPECT_TRUE(close_rel(iv, oracle::i(m, x), 1e-12, 0.0))
          << "I m=" << m << " x=" << x;
      EXPECT_TRUE(close_rel(kv, oracle::k(m, x), 1e-12, 0.0))
          << "K m=" << m << " x=" << x;
      EXPECT_GT(iv, 0.0);
      EXPECT_GT(kv, 0.0);
    }
}

TEST(BesselIK, OverflowIsReported) {
  EXPECT_THROW(bessel_ik(0, 800.0), std::overflow_error);
  // The scaled pair stays representable.
  auto [is, ks] = bessel_ik_scaled(0, 800.0);
  EXPECT_NEAR(is * ks, 1.0 / (2.0 * 800.0), 1e-7);
}

TEST(JhProduct, ArgumentZero) {
  auto p0 = jh_product(0, BesselArg::real(0.0));
  EXPECT_EQ(p0.re, 1.0);
  EXPECT_TRUE(p0.im.is_neg_inf());
  auto p3 = jh_product(3, BesselArg::real(0.0));
  EXPECT_EQ(p3.re, 0.0);
  EXPECT_DOUBLE_EQ(p3.im.value(), -1.0 / (3.0 * pi));
}

TEST(JhProduct, ImaginaryArgument) {
  auto p = jh_product(2, BesselArg::imaginary(1.7));
  EXPECT_EQ(p.re, 0.0);
  const double want = -(2.0 / pi) * oracle::i(2, 1.7) * oracle::k(2, 1.7);
  EXPECT_TRUE(close_rel(p.im.value(), want, 1e-12, 0.0));
  EXPECT_LT(p.im.value(), 0.0);
}

TEST(JhProduct, ParityAndRanges) {
  for (int m = 0; m <= 30; ++m) {
    for (double x = 0.05; x <= 50.0; x += 0.37) {
      auto r = jh_product(m, BesselArg::real(x));
      auto rn = jh_product(-m, BesselArg::real(x));
      EXPECT_EQ(r.re, rn.re);
      EXPECT_EQ(r.im.value(), rn.im.value());
      EXPECT_GE(r.re, 0.0);
      EXPECT_LT(r.re, 1.0);
      auto im = jh_product(m, BesselArg::imaginary(x));
      EXPECT_EQ(im.re, 0.0);
      EXPECT_LT(im.im.value(), 0.0);
    }
  }
}

TEST(JhProduct, SmallArgumentLimitIsContinuous) {
  for (int m : {1, 2, 5, 20, 60}) {
    auto r = jh_product(m, BesselArg::real(1e-9));
    EXPECT_NEAR(r.im.value(), -1.0 / (m * pi), 1e-12);
    auto i = jh_product(m, BesselArg::imaginary(1e-9));
    EXPECT_NEAR(i.im.value(), -1.0 / (m * pi), 1e-12);
  }
}

TEST(BesselIdentities, SumOfSquaresTendsToOne) {
  for (double x = 0.25; x <= 10.0; x += 0.25) {
    double sum = 0.0, prev = -1.0;
    for (int M = 0; M <= 40; ++M) {
      sum = 0.0;
      for (int m = -M; m <= M; ++m)
        sum += bessel_j(m, x) * bessel_j(m, x);
      EXPECT_GE(sum, prev);
      prev = sum;
    }
    EXPECT_LT(std::abs(sum - 1.0), 1e-10) << "x=" << x;
  }
}

TEST(BesselIdentities, Wronskian) {
  for (int m = 0; m <= 30; m += 3)
    for (double x = 0.1; x <= 60.0; x *= 1.3) {
      const double w = bessel_j(m + 1, x) * bessel_y(m, x) -
                       bessel_j(m, x) * bessel_y(m + 1, x);
      EXPECT_TRUE(close_rel(w, 2.0 / (pi * x), 1e-10, 0.0))
          << "m=" << m << " x=" << x;
    }
}

TEST(Polylog, KnownConstants) {
  EXPECT_NEAR(polylog_unit_circle(2, 0.0).real(), 1.6449340668482264, 1e-15);
  EXPECT_NEAR(polylog_unit_circle(3, 0.0).real(), 1.2020569031595942, 1e-15);
  auto m1 = polylog_unit_circle(2, pi);
  EXPECT_NEAR(m1.real(), -pi * pi / 12.0, 1e-14);
  EXPECT_NEAR(m1.imag(), 0.0, 1e-14);
  // Li3(-1) = -3/4 zeta(3)
  EXPECT_NEAR(polylog_unit_circle(3, pi).real(), -0.75 * zeta3, 1e-14);
  // Catalan: Im Li2(i) = G
  EXPECT_NEAR(polylog_unit_circle(2, 0.5 * pi).imag(), 0.915965594177219015,
              1e-14);
}

TEST(Polylog, RealPartOfDilogIsQuadratic) {
  for (double th = 0.0; th <= 2.0 * pi; th += 0.01) {
    const double want = pi * pi / 6.0 - pi * th / 2.0 + th * th / 4.0;
    EXPECT_NEAR(polylog_unit_circle(2, th).real(), want, 1e-10);
  }
}

TEST(Polylog, PhaseIsPeriodic) {
  for (double th : {0.3, 1.9, -2.5}) {
    auto a = polylog_unit_circle(3, th);
    auto b = polylog_unit_circle(3, th + 6.0 * pi);
    EXPECT_NEAR(a.real(), b.real(), 1e-13);
    EXPECT_NEAR(a.imag(), b.imag(), 1e-13);
  }
}

TEST(Polylog, AgreesWithQuadratureOracle) {
  for (int s : {2, 3})
    for (double th = -3.1; th <= 6.2; th += 0.173) {
      if (std::abs(std::remainder(th, 2.0 * pi)) < 1e-3)
        continue;
      const auto got = polylog_unit_circle(s, th);
      const auto want = oracle::polylog_unit(s, th);
      EXPECT_NEAR(got.real(), want.real(), 1e-10) << "s=" << s << " th=" << th;
      EXPECT_NEAR(got.imag(), want.imag(), 1e-10) << "s=" << s << " th=" << th;
    }
}

TEST(Polylog, LogOnCircle) {
  EXPECT_TRUE(log_one_minus_unit(0.0).re.is_neg_inf());
  EXPECT_TRUE(log_one_minus_unit(4.0 * pi).re.is_neg_inf());
  auto l = log_one_minus_unit(pi);
  EXPECT_NEAR(l.re.value(), std::log(2.0), 1e-15);
  EXPECT_NEAR(l.im, 0.0, 1e-15);
}

TEST(Constants, EulerGamma) {
  EXPECT_NEAR(euler_gamma(), 0.5772156649015329, 1e-15);
  EXPECT_NEAR(-2.0 * euler_gamma(), -1.1544313298, 1e-10);
  EXPECT_NEAR(std::exp(euler_gamma()), 1.7810724180, 1e-10);
}
