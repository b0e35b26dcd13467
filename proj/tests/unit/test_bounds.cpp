#include <doctest.h>

#include <cmath>

#include "gridfreq/bounds.hpp"
#include "support/helpers.hpp"

using namespace gridfreq;
namespace gt = gridfreq::testing;

namespace {

double mode_f(std::complex<double> lambda, double t) {
    return std::exp(lambda.real() * t) * std::cos(lambda.imag() * t) - 1.0;
}

double mode_df(std::complex<double> lambda, double t) {
    return std::exp(lambda.real() * t) *
           (lambda.real() * std::cos(lambda.imag() * t) -
            lambda.imag() * std::sin(lambda.imag() * t));
}

SystemAnalysis fixture_analysis(const char* name) {
    const NetworkModel model = load_network(gt::data_path(name));
    return analyze(model, Eigen::VectorXd::Ones(model.bus_count));
}

} // namespace

TEST_CASE("critical_times for a purely imaginary mode") {
    const ModeCriticalTimes mct = critical_times({0.0, 1.0});
    CHECK(mct.t0 == doctest::Approx(M_PI));
    CHECK(mct.f_range == doctest::Approx(3.0));
    CHECK(mct.t1 == doctest::Approx(M_PI / 2.0));
    CHECK(mct.df_peak == doctest::Approx(1.0));
}

TEST_CASE("critical_times for a real stable mode") {
    const ModeCriticalTimes mct = critical_times({-2.0, 0.0});
    CHECK(mct.t1 == 0.0);
    CHECK(mct.df_peak == doctest::Approx(2.0));
    CHECK(mct.f_range == doctest::Approx(2.0));
    CHECK(std::isfinite(mct.t0));
    CHECK(mct.t0 > 0.0);
}

TEST_CASE("critical_times maximizers beat a dense grid") {
    const std::complex<double> lambda(-0.5, 2.0);
    const ModeCriticalTimes mct = critical_times(lambda);

    const double window = 20.0 * M_PI / std::abs(lambda.imag());
    const long points = 1'000'000;
    double best_f = 0.0, best_f_t = 0.0, best_df = 0.0, best_df_t = 0.0;
    for (long i = 0; i < points; ++i) {
        const double t = window * static_cast<double>(i) / (points - 1);
        const double vf = std::abs(mode_f(lambda, t) - 1.0);
        if (vf > best_f) {
            best_f = vf;
            best_f_t = t;
        }
        const double vd = std::abs(mode_df(lambda, t));
        if (vd > best_df) {
            best_df = vd;
            best_df_t = t;
        }
    }
    CHECK(mct.f_range >= best_f - 1e-6 * best_f);
    CHECK(mct.df_peak >= best_df - 1e-6 * best_df);
    CHECK(std::abs(mct.t0 - best_f_t) <= 1e-3);
    CHECK(std::abs(mct.t1 - best_df_t) <= 1e-3);
}

TEST_CASE("critical_times is even in the imaginary part") {
    const ModeCriticalTimes plus = critical_times({-0.3, 1.7});
    const ModeCriticalTimes minus = critical_times({-0.3, -1.7});
    CHECK(plus.t0 == minus.t0);
    CHECK(plus.f_range == minus.f_range);
    CHECK(plus.t1 == minus.t1);
    CHECK(plus.df_peak == minus.df_peak);
}

TEST_CASE("critical_times rejects unstable modes") {
    CHECK_THROWS_AS(critical_times({0.5, 1.0}), NumericalError);
}

TEST_CASE("majorant1 basics") {
    SUBCASE("zero disturbance") {
        NetworkModel model = gt::make_two_bus();
        model.disturbance = {0.0, 0.0};
        const SystemAnalysis a = analyze(model, Eigen::VectorXd::Ones(2));
        const MajorantProfile profile = make_majorant_profile(a.traj);
        CHECK(majorant1(profile, 3.0).cwiseAbs().maxCoeff() <= 1e-12);
    }
    SUBCASE("largest at t = 0 and non-increasing") {
        const SystemAnalysis a = fixture_analysis("fixture3.net");
        const MajorantProfile profile = make_majorant_profile(a.traj);
        const Eigen::VectorXd at0 = majorant1(profile, 0.0);
        for (int l = 0; l < 3; ++l) {
            CHECK(at0[l] == doctest::Approx(profile.abs_coeff.row(l).sum() +
                                            profile.offset_abs[l]));
        }
        Eigen::VectorXd prev = at0;
        for (int i = 1; i <= 200; ++i) {
            const Eigen::VectorXd cur = majorant1(profile, 100.0 * i / 200.0);
            for (int l = 0; l < 3; ++l) CHECK(cur[l] <= prev[l] + 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("majorant2 vanishes at t = 0") {
    const SystemAnalysis a = fixture_analysis("fixture3.net");
    const MajorantProfile profile = make_majorant_profile(a.traj);
    for (int l = 0; l < 3; ++l) CHECK(majorant2(profile, l, 0.0) == 0.0);
}

TEST_CASE("majorant takes the entrywise minimum") {
    const SystemAnalysis a = fixture_analysis("fixture3.net");
    const MajorantProfile profile = make_majorant_profile(a.traj);
    for (double t : {0.5, 3.0, 12.0, 60.0}) {
        const Eigen::VectorXd m = majorant(profile, t);
        const Eigen::VectorXd m1 = majorant1(profile, t);
        for (int l = 0; l < 3; ++l) {
            CHECK(m[l] == doctest::Approx(std::min(m1[l], majorant2(profile, l, t))));
        }
    }
}

TEST_CASE("majorants dominate |omega| on the fixtures") {
    for (const char* name : {"fixture3.net", "fixture10.net"}) {
        CAPTURE(name);
        const SystemAnalysis a = fixture_analysis(name);
        const MajorantProfile profile = make_majorant_profile(a.traj);
        const int samples = 10'000;
        const Eigen::MatrixXd omega = sample_omega(a.traj, 0.0, 100.0, samples);
        const double scale = std::max(1.0, omega.cwiseAbs().maxCoeff());
        for (int i = 0; i < samples; ++i) {
            const double t = 100.0 * i / (samples - 1);
            const Eigen::VectorXd m1 = majorant1(profile, t);
            for (int l = 0; l < profile.bus_count(); ++l) {
                const double w = std::abs(omega(l, i));
                const double m2 = majorant2(profile, l, t);
                REQUIRE(m1[l] >= w - 1e-9 * scale);
                REQUIRE(m2 >= w - 1e-9 * scale);
                REQUIRE(std::min(m1[l], m2) >= w - 1e-9 * scale);
            }
        }
    }
}

TEST_CASE("maximize_on_horizon handles a monotone function") {
    const ScalarMaximum m =
        maximize_on_horizon([](double t) { return std::exp(-t) + 1.0; }, 100.0);
    CHECK(m.value == doctest::Approx(2.0));
    CHECK(m.argmax == 0.0);
}

TEST_CASE("maximize_on_horizon never loses to the coarse scan") {
    GoldenOptions opts;
    opts.coarse_samples = 64;
    auto wiggly = [](double t) { return std::sin(0.9 * t) * std::exp(-0.02 * t); };
    const ScalarMaximum m = maximize_on_horizon(wiggly, 100.0, opts);
    double coarse = 0.0;
    for (int i = 0; i < 64; ++i) coarse = std::max(coarse, wiggly(100.0 * i / 63.0));
    CHECK(m.value >= coarse);
}

TEST_CASE("estimate_G") {
    SUBCASE("zero disturbance") {
        NetworkModel model = gt::make_two_bus();
        model.disturbance = {0.0, 0.0};
        const SystemAnalysis a = analyze(model, Eigen::VectorXd::Ones(2));
        const EstimateResult g = estimate_G(make_majorant_profile(a.traj));
        CHECK(g.value <= 1e-12);
    }
    SUBCASE("dominates the sampled majorant and the trajectory") {
        const SystemAnalysis a = fixture_analysis("fixture3.net");
        const MajorantProfile profile = make_majorant_profile(a.traj);
        const EstimateResult g = estimate_G(profile);
        double coarse = 0.0;
        for (int i = 0; i < 64; ++i) {
            coarse = std::max(coarse, majorant(profile, 100.0 * i / 63.0).maxCoeff());
        }
        CHECK(g.value >= coarse);
        CHECK(g.value >= gt::peak_abs_omega(a.traj, 20'000, 100.0) - 1e-9);
    }
}
