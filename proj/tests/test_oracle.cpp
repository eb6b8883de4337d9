#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tunnelnoise/oracle/airy_quadrature.hpp"
#include "tunnelnoise/oracle/finite_diff.hpp"
#include "tunnelnoise/oracle/transfer_matrix.hpp"
#include "tunnelnoise/scattering.hpp"

using namespace tunnelnoise;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double k_of(double ev) { return std::sqrt(si::two_m_over_hbar2 * ev_to_joule(ev)); }

}  // namespace

TEST(FiniteDiff, Polynomial) {
    const auto d = oracle::finite_diff([](double x) { return x * x; }, 3.0, 1e-3);
    EXPECT_NEAR(d.value, 6.0, 1e-10);
    const auto c = oracle::finite_diff([](double x) { return x * x * x * x * x; }, 0.0, 1e-2);
    EXPECT_NEAR(c.value, 0.0, 1e-12);
}

TEST(FiniteDiff, SymbolicTransmissionSlope) {
    // T(l) for a rectangle and its derivative written out by hand
    const double k = k_of(1.0);
    const double k0 = k_of(4.0);
    const double s2 = (k * k + k0 * k0) * (k * k + k0 * k0);
    const double c4 = 4.0 * k * k * k0 * k0;
    auto T = [&](double l) {
        const double sh = std::sinh(k0 * l);
        return c4 / (s2 * sh * sh + c4);
    };
    auto dT = [&](double l) {
        const double sh = std::sinh(k0 * l);
        const double den = s2 * sh * sh + c4;
        return -c4 * s2 * 2.0 * sh * std::cosh(k0 * l) * k0 / (den * den);
    };
    for (double l : {0.1e-9, 0.5e-9, 1.3e-9}) {
        const auto d = oracle::finite_diff(T, l, 1e-4);
        EXPECT_LE(rel(d.value, dT(l)), 1e-8) << "l=" << l;
        EXPECT_LE(std::abs(d.error_estimate / dT(l)), 1e-6);
    }
}

TEST(FiniteDiff, ErrorEstimateSeesNoise) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> noise(0.0, 1e-13);
    auto noisy = [&](double x) { return std::sin(x) + noise(rng); };
    const double h_rel = 1e-6;
    const auto d = oracle::finite_diff(noisy, 1.0, h_rel);
    const double floor = 1e-13 / h_rel;
    EXPECT_GT(d.error_estimate, 0.01 * floor);
    EXPECT_LE(std::abs(d.value - std::cos(1.0)), 100.0 * floor);
    const auto clean = oracle::finite_diff([](double x) { return std::sin(x); }, 1.0, 1e-3);
    EXPECT_LT(clean.error_estimate, d.error_estimate);
}

TEST(TransferMatrix, FreePropagation) {
    oracle::SlicedPotential p;
    for (int i = 0; i < 6; ++i) p.samples.push_back({1e-10 * i, 0.0});
    const auto r = oracle::transfer_matrix_T(p, Energy::eV(1.0).in_joules());
    EXPECT_NEAR(r.T, 1.0, 1e-14);
    EXPECT_NEAR(r.R, 0.0, 1e-14);
}

TEST(TransferMatrix, SingleSliceIsExactForRectangles) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double v0 = 1.0 + 9.0 * u(rng);
        const double e = v0 * (0.05 + 0.9 * u(rng));
        const double phi = 5.0 * u(rng);
        const auto spec = BarrierSpec::asymmetric(Energy::eV(v0), Energy::eV(phi), Length::nm(0.1 + 1.9 * u(rng)));
        const auto tm = oracle::transfer_matrix_T(oracle::slice_barrier(spec, 1), Energy::eV(e).in_joules());
        const auto s = solve(Energy::eV(e), spec);
        EXPECT_LE(rel(tm.T, s.T), 1e-11);
        EXPECT_LE(std::abs(tm.T + tm.R - 1.0), 1e-12);
    }
}

TEST(TransferMatrix, UnitarityOnSlicedRamp) {
    const auto spec = BarrierSpec::linear_field(Energy::eV(3.0), Energy::eV(2.5), Length::nm(0.6));
    for (double e : {0.2, 1.0, 2.0}) {
        const auto tm = oracle::transfer_matrix_T(oracle::slice_barrier(spec, 300), Energy::eV(e).in_joules());
        EXPECT_LE(std::abs(tm.T + tm.R - 1.0), 1e-12);
    }
}

TEST(TransferMatrix, SecondOrderConvergence) {
    const auto spec = BarrierSpec::linear_field(Energy::eV(5.0), Energy::eV(2.0), Length::nm(1.0));
    const double e = Energy::eV(1.0).in_joules();
    const double exact = solve(Energy::eV(1.0), spec).log_T;
    const double e1 = std::abs(oracle::transfer_matrix_T(oracle::slice_barrier(spec, 100), e).log_T - exact);
    const double e2 = std::abs(oracle::transfer_matrix_T(oracle::slice_barrier(spec, 200), e).log_T - exact);
    const double order = std::log2(e1 / e2);
    EXPECT_GE(order, 1.9);
    EXPECT_LE(order, 2.1);
}

TEST(TransferMatrix, RejectsBadInput) {
    oracle::SlicedPotential p;
    EXPECT_THROW(oracle::transfer_matrix_T(p, 1e-19), DomainError);
    p.samples = {{0.0, 0.0}, {0.0, 1.0}};
    EXPECT_THROW(oracle::transfer_matrix_T(p, 1e-19), DomainError);
    p.samples = {{0.0, 0.0}, {1e-9, 0.0}};
    EXPECT_THROW(oracle::transfer_matrix_T(p, -1.0), DomainError);
    EXPECT_THROW(oracle::slice_barrier(BarrierSpec::symmetric(Energy::eV(1.0), Length::nm(1.0)), 0), DomainError);
}

TEST(AiryQuadrature, OriginAndWronskian) {
    const ScaledAiry q = oracle::airy_by_quadrature(0.0);
    EXPECT_LE(rel(q.scaled.ai, 1.0 / (std::pow(3.0, 2.0 / 3.0) * std::tgamma(2.0 / 3.0))), 1e-13);
    for (double z : {-20.0, -3.3, 0.7, 5.0, 15.0}) {
        const ScaledAiry s = oracle::airy_by_quadrature(z);
        EXPECT_LE(std::abs(s.scaled.wronskian() * std::numbers::pi - 1.0), 1e-11) << "z=" << z;
    }
}
