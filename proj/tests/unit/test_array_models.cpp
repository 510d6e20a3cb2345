#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "ecm/array_models.hpp"
#include "ecm/error.hpp"
#include "oracle.hpp"

using namespace ecm;

namespace {

double max_diff(const CVector& a, const std::vector<cplx>& b)
{
    REQUIRE(std::size_t(a.size()) == b.size());
    double worst = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
        worst = std::max(worst, std::abs(a(Eigen::Index(i)) - b[i]));
    return worst;
}

}  // namespace

TEST_SUITE("array_models")
{
    TEST_CASE("uniform steering")
    {
        CVector a = uniform_steering(4, 0.5, Direction(deg2rad(90), 0.3));
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(a(i) - 1.0) < 1e-15);
        CVector b = uniform_steering(2, 0.5, Direction(0, 0));
        CHECK(std::abs(b(1) + 1.0) < 1e-15);
        CVector c = uniform_steering(16, 0.5, Direction(deg2rad(15), deg2rad(19.471)));
        CHECK(std::arg(c(1)) == doctest::Approx(kPi * std::cos(deg2rad(15)) * std::cos(deg2rad(19.471))).epsilon(1e-12));
        CHECK(std::abs(std::arg(c(1)) - 2.8605) < 1e-3);
        CHECK(c(0) == cplx(1, 0));
        for (int i = 0; i < 16; ++i)
            CHECK(std::abs(std::abs(c(i)) - 1.0) < 1e-14);
    }

    TEST_CASE("range steering")
    {
        CVector a = range_steering(4, 10e6, kSpeedOfLight / (2 * 10e6));
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(a(i) - 1.0) < 1e-9);
        CHECK(range_steering(1, 10e6, 6000).size() == 1);
        CVector b = range_steering(2, 10e6, 6000);
        double want = std::remainder(-2 * kPi * (12000 / kSpeedOfLight) * 1e7, 2 * kPi);
        CHECK(std::arg(b(1)) == doctest::Approx(want).epsilon(1e-9));
        auto o = oracle::range_phases(2, 10e6, 6000);
        CHECK(std::abs(b(1) - o[1]) < 1e-9);
    }

    TEST_CASE("transmit gain")
    {
        Direction d0(0, 0.34);
        CVector w = transmit_weights(16, 0.5, d0);
        CHECK(std::abs(transmit_gain(w, uniform_steering(16, 0.5, d0))) == doctest::Approx(4.0));
        CVector w0 = transmit_weights(16, 0.5, Direction(0, 0));
        CVector a90 = uniform_steering(16, 0.5, Direction(deg2rad(90), 0));
        // 16-term sum oracle
        cplx acc = 0;
        for (int k = 0; k < 16; ++k)
            acc += std::conj(std::polar(1.0, kPi * k)) * 1.0;
        CHECK(std::abs(transmit_gain(w0, a90) - acc / 4.0) < 1e-12);
        CVector w1 = transmit_weights(1, 0.5, d0);
        CHECK(std::abs(transmit_gain(w1, uniform_steering(1, 0.5, Direction(1.0, 0.2))) - 1.0) < 1e-15);
        CHECK_THROWS_AS(transmit_gain(w1, a90), Error);
    }

    TEST_CASE("transmit gain bounded by coherent gain")
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> ang(-kPi / 2, kPi / 2);
        for (int i = 0; i < 200; ++i) {
            Direction a(ang(rng), std::abs(ang(rng))), b(ang(rng), std::abs(ang(rng)));
            double g = std::abs(transmit_gain(transmit_weights(16, 0.5, a), uniform_steering(16, 0.5, b)));
            CHECK(g <= 4.0 + 1e-12);
        }
    }

    TEST_CASE("pa target snapshot")
    {
        Scenario scn;
        RadarConfig cfg = default_radar(scn, 1);
        CVector x = target_snapshot_pa(1.0, cfg, scn);
        CHECK(std::abs(x(0) - 4.0) < 1e-12);
        cplx xi = std::polar(2.0, 0.7);
        CVector y = target_snapshot_pa(xi, cfg, scn);
        for (int i = 0; i < y.size(); ++i)
            CHECK(std::abs(y(i)) == doctest::Approx(8.0));
        scn.target.azimuth_rad = deg2rad(12);
        auto o = oracle::steering(16, 0.5, deg2rad(12), elevation_from_range(2000, 6000));
        for (auto& v : o)
            v *= 4.0;
        CHECK(max_diff(target_snapshot_pa(1.0, cfg, scn), o) < 1e-12);
    }

    TEST_CASE("fdamimo target snapshot")
    {
        Scenario scn;
        CVector pa = target_snapshot_pa(1.0, default_radar(scn, 1), scn);
        CVector f1 = target_snapshot_fdamimo(1.0, default_radar(scn, 1), scn);
        CHECK((pa - f1).cwiseAbs().maxCoeff() < 1e-12);

        RadarConfig cfg = default_radar(scn, 2);
        cplx xi = std::polar(1.5, -0.3);
        CVector x = target_snapshot_fdamimo(xi, cfg, scn);
        REQUIRE(x.size() == 32);
        for (int i = 0; i < x.size(); ++i)
            CHECK(std::abs(x(i)) == doctest::Approx(1.5 * std::sqrt(8.0)));
        CVector c = composite_steering(cfg, scn, scn.target_direction(), scn.target.range_m);
        CHECK(std::abs(x(16) - xi * std::sqrt(8.0) * c(1)) < 1e-12);
        auto o = oracle::virtual_snapshot(ArrayCase::fdamimo, cfg, scn, 0.0, 6000);
        for (auto& v : o)
            v *= xi * std::sqrt(8.0);
        CHECK(max_diff(x, o) < 1e-9);
    }

    TEST_CASE("composite steering is b times d")
    {
        Scenario scn;
        RadarConfig cfg = default_radar(scn, 4);
        Direction d = scn.direction(deg2rad(20), 6500);
        CVector b = subarray_phase_steering(cfg, scn, d);
        CVector r = range_steering(4, cfg.subarray_offset_hz, 6500);
        CVector c = composite_steering(cfg, scn, d, 6500);
        CHECK((c - b.cwiseProduct(r)).cwiseAbs().maxCoeff() == 0.0);
        CHECK(c(0) == cplx(1, 0));
    }

    TEST_CASE("virtual steering matches the loop oracle")
    {
        Scenario scn;
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> az(-1.4, 1.4), rg(2500, 9000);
        for (int S : {1, 2, 4, 16}) {
            RadarConfig cfg = default_radar(scn, S);
            ArrayCase c = S == 1 ? ArrayCase::pa : ArrayCase::fdamimo;
            for (int i = 0; i < 10; ++i) {
                double a = az(rng), r = rg(rng);
                CVector v = virtual_steering(c, cfg, scn, scn.direction(a, r), r);
                CHECK(max_diff(v, oracle::virtual_snapshot(c, cfg, scn, a, r)) < 1e-8);
            }
        }
    }

    TEST_CASE("fdamimo snapshot reshapes to rank one")
    {
        Scenario scn;
        RadarConfig cfg = default_radar(scn, 4);
        CVector x = target_snapshot_fdamimo(std::polar(2.0, 1.0), cfg, scn);
        CMatrix m(4, 16);
        for (int s = 0; s < 4; ++s)
            for (int n = 0; n < 16; ++n)
                m(s, n) = x(s * 16 + n);
        Eigen::JacobiSVD<CMatrix> svd(m);
        CHECK(svd.singularValues()(1) < 1e-9 * svd.singularValues()(0));
    }

    TEST_CASE("coherent counts and sizes")
    {
        Scenario scn;
        RadarConfig cfg = default_radar(scn, 8);
        CHECK(coherent_count(ArrayCase::pa, cfg) == 16);
        CHECK(coherent_count(ArrayCase::fdamimo, cfg) == 2);
        CHECK(snapshot_size(ArrayCase::pa, cfg) == 16);
        CHECK(snapshot_size(ArrayCase::fdamimo, cfg) == 128);
        CHECK(std::abs(transmit_gain_toward(ArrayCase::fdamimo, cfg, scn, scn.target_direction())) ==
              doctest::Approx(std::sqrt(2.0)));
    }
}
