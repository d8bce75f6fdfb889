#include "helpers.hpp"

#include "skewgap/csc.hpp"
#include "skewgap/curvature.hpp"
#include "skewgap/error.hpp"
#include "skewgap/profile.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace skewgap;

namespace {

const CscBranch& branch_of(const std::vector<CscBranch>& branches, BranchKind kind)
{
    for (const auto& b : branches) {
        if (b.kind == kind) {
            return b;
        }
    }
    throw std::runtime_error("branch not found");
}

} // namespace

TEST_SUITE("csc")
{
    TEST_CASE("bifurcation value and double root")
    {
        CHECK(csc_bifurcation_value() == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-15));
        const DoubleRoot root = csc_double_root();
        CHECK(std::abs(root.k - (1.0 - std::log(2.0))) < 1e-10);
        CHECK(std::abs(root.t - 0.5) < 1e-10);
    }

    TEST_CASE("radicand: expanded and factored forms agree")
    {
        CHECK(csc_denominator(1.0, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
        for (double k : {-0.3, 0.2, 0.9}) {
            CHECK(csc_denominator(std::exp(k), k) == doctest::Approx(1.0).epsilon(1e-14));
        }
        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> t_dist(0.01, 3.0);
        std::uniform_real_distribution<double> k_dist(-1.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double t = t_dist(rng);
            const double k = k_dist(rng);
            const double expanded = csc_denominator(t, k);
            const double factored = csc_discriminant(t, k);
            worst = std::max(worst, std::abs(expanded - factored) / std::max(1.0, std::abs(factored)));
        }
        CHECK(worst < 1e-12);
        CHECK_THROWS_AS(csc_denominator(0.0, 0.5), DomainError);
    }

    TEST_CASE("branch counts across the bifurcation")
    {
        CHECK(csc_intervals(0.1).size() == 1);
        CHECK(csc_intervals(0.2).size() == 1);
        CHECK(csc_intervals(0.25).size() == 1);
        for (double k : {0.33, 0.5, 0.7}) {
            const auto b = csc_intervals(k);
            REQUIRE(b.size() == 2);
            CHECK(b[0].kind == BranchKind::inner);
            CHECK(b[1].kind == BranchKind::outer);
            CHECK_FALSE(b[0].degenerate);
        }
        const double k0 = csc_bifurcation_value();
        CHECK(csc_intervals(k0 - 1e-6).size() == 1);
        CHECK(csc_intervals(k0 + 1e-6).size() == 2);
        CHECK(csc_intervals(0.307).front().degenerate);
    }

    TEST_CASE("branch end points are roots of the radicand")
    {
        const auto b = csc_intervals(0.5);
        CHECK(branch_of(b, BranchKind::outer).t_lo == doctest::Approx(1.0).epsilon(1e-14));
        for (double k : {0.2, 0.33, 0.5, 0.7}) {
            for (const auto& br : csc_intervals(k)) {
                if (br.t_lo > 0.0) {
                    CHECK(std::abs(csc_discriminant(br.t_lo, k)) < 1e-12);
                }
                CHECK(std::abs(csc_discriminant(br.t_hi, k)) < 1e-12);
                const double mid = 0.5 * (br.t_lo + br.t_hi);
                CHECK(csc_discriminant(mid, k) > 0.0);
            }
        }
    }

    TEST_CASE("slope vanishes at t = e^k and diverges at the ends")
    {
        const CscParams p{0.5, 1};
        CHECK(csc_h(std::exp(0.5), p) == doctest::Approx(0.0));
        const CscBranch outer = branch_of(csc_intervals(0.5), BranchKind::outer);
        CHECK(std::abs(csc_h(outer.t_hi * (1.0 - 1e-12), p)) > 1e4);
        CHECK_THROWS_AS(csc_h(outer.t_hi * 1.01, p), DomainError);
    }

    TEST_CASE("skew curvature is constant along the family")
    {
        for (double k : {0.1, 0.25, 0.33, 0.5, 0.7}) {
            for (const auto& br : csc_intervals(k)) {
                for (int sign : {1, -1}) {
                    const CscParams p{k, sign};
                    const ProfileCurve prof = csc_profile(p, br, 64);
                    for (std::size_t i = 1; i + 1 < prof.size(); ++i) {
                        const double t = prof.samples[i].t;
                        const SorCurvatures c = analytic_sor_curvatures(t, csc_h(t, p), csc_h_prime(t, p));
                        CHECK(std::abs(c.kappa_meridian - c.kappa_parallel) == doctest::Approx(2.0).epsilon(1e-9));
                        CHECK(std::abs(0.25 * c.S_sq - 1.0) < 1e-8);
                    }
                }
            }
        }
    }

    TEST_CASE("slope integration reproduces a circular arc")
    {
        // h = t / sqrt(alpha - t^2) integrates to g = sqrt(alpha) - sqrt(alpha - t^2).
        const double alpha = 2.0;
        const double root = std::sqrt(alpha);
        const AnchoredSlope slope = [&](double t_end, double delta) {
            const double t = t_end + delta;
            const double gap = t_end == root ? -delta : root - t;
            return t / std::sqrt(gap * (root + t));
        };
        const ProfileCurve arc = integrate_slope(slope, 0.0, root, 101);
        double worst = 0.0;
        for (const auto& p : arc.samples) {
            worst = std::max(worst, std::abs(p.g - (root - std::sqrt(std::max(0.0, alpha - p.t * p.t)))));
        }
        CHECK(worst < 1e-8);
        CHECK(arc.arc_length() == doctest::Approx(0.5 * M_PI * root).epsilon(1e-9));
    }

    TEST_CASE("profiles are finite and monotone in t")
    {
        for (double k : {0.33, 0.5, 0.7}) {
            const CscBranch outer = branch_of(csc_intervals(k), BranchKind::outer);
            const ProfileCurve prof = csc_profile({k, 1}, outer, 101);
            CHECK(prof.samples.front().t == outer.t_lo);
            CHECK(prof.samples.back().t == outer.t_hi);
            for (std::size_t i = 1; i < prof.size(); ++i) {
                CHECK(prof.samples[i].t > prof.samples[i - 1].t);
                CHECK(prof.samples[i].s > prof.samples[i - 1].s);
            }
            CHECK(std::isfinite(prof.samples.back().g));
            CHECK(std::isfinite(prof.arc_length()));
            CHECK(*prof.start_tangency < kJoinTangencyTol);
            CHECK(*prof.end_tangency < kJoinTangencyTol);
        }
    }

    TEST_CASE("profile is independent of the sample count")
    {
        const CscBranch outer = branch_of(csc_intervals(0.5), BranchKind::outer);
        const ProfileCurve a = csc_profile({0.5, 1}, outer, 33);
        const ProfileCurve b = csc_profile({0.5, 1}, outer, 257);
        CHECK(a.samples.back().g == doctest::Approx(b.samples.back().g).epsilon(1e-9));
        CHECK(a.arc_length() == doctest::Approx(b.arc_length()).epsilon(1e-9));
    }

    TEST_CASE("stacking: translation symmetry and smooth joins")
    {
        const CscBranch outer = branch_of(csc_intervals(0.33), BranchKind::outer);
        const ProfileCurve base = csc_profile({0.33, 1}, outer, 41);
        const ProfileCurve stacked = stack_profile(base, 3);
        REQUIRE(stacked.period);
        const double A = *stacked.period;
        CHECK(A == doctest::Approx(2.0 * (base.samples.back().g - base.samples.front().g)));
        const std::size_t per = 2 * (base.size() - 1);
        CHECK(stacked.size() == 3 * per + 1);
        const double arc = 2.0 * base.arc_length();
        for (std::size_t i = 0; i + per < stacked.size(); ++i) {
            CHECK(stacked.samples[i + per].t == stacked.samples[i].t);
            CHECK(stacked.samples[i + per].g == doctest::Approx(stacked.samples[i].g + A).epsilon(1e-14));
            CHECK(stacked.samples[i + per].s == doctest::Approx(stacked.samples[i].s + arc).epsilon(1e-14));
        }
        CHECK(stacked.smooth_joins());
        CHECK(stacked.joins.size() == 6);
        // Reflection: the second half mirrors the first about the top join.
        const std::size_t m = base.size() - 1;
        for (std::size_t i = 0; i <= m; ++i) {
            CHECK(stacked.samples[m + i].t == stacked.samples[m - i].t);
        }
    }

    TEST_CASE("inner branch joins are not smooth at the axis")
    {
        const CscBranch inner = branch_of(csc_intervals(0.33), BranchKind::inner);
        const ProfileCurve stacked = stack_profile(csc_profile({0.33, 1}, inner, 41), 2);
        CHECK_FALSE(stacked.smooth_joins());
    }

    TEST_CASE("quotient surface potential is identically one")
    {
        const RevolutionSurface s = csc_quotient_surface({0.7, 1}, 60);
        CHECK(s.closure == Closure::periodic);
        CHECK(s.profile.size() == 61);
        for (double v : s.potential) {
            CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    TEST_CASE("quotient torus refuses degenerate and small parameters")
    {
        CHECK_THROWS_AS(quotient_torus({csc_bifurcation_value(), 1}, 40, 16), DomainError);
        CHECK_THROWS_AS(quotient_torus({0.2, 1}, 40, 16), DomainError);
        CHECK_THROWS_AS(quotient_torus({0.5, 1}, 31, 16), DomainError);
        CHECK_THROWS_AS(quotient_torus({0.5, 1}, 20, 16), DomainError);
        CHECK_THROWS_AS(csc_profile({0.5, 2}, csc_intervals(0.5).back(), 40), DomainError);
    }

    TEST_CASE("quotient torus: willmore over area tends to one")
    {
        double previous = 1.0;
        for (int n : {32, 64, 128}) {
            const GeometricSummary g = geometric_summary(quotient_torus({0.5, 1}, n, 2 * n));
            CHECK(g.euler_characteristic == 0);
            const double error = std::abs(g.willmore / g.area - 1.0);
            CHECK(error < previous);
            previous = error;
        }
        CHECK(previous < 0.01);
    }

    TEST_CASE("profile csv round trip")
    {
        const ProfileCurve prof = csc_profile({0.5, -1}, csc_intervals(0.5).back(), 24);
        std::stringstream io;
        write_profile_csv(io, prof);
        const std::string text = io.str();
        CHECK(text.rfind("t,g,s\n", 0) == 0);
        const ProfileCurve back = read_profile_csv(io);
        REQUIRE(back.size() == prof.size());
        for (std::size_t i = 0; i < prof.size(); ++i) {
            CHECK(back.samples[i].t == prof.samples[i].t);
            CHECK(back.samples[i].g == prof.samples[i].g);
            CHECK(back.samples[i].s == prof.samples[i].s);
        }
        std::istringstream bad("t,g,s\n1,2\n");
        CHECK_THROWS_AS(read_profile_csv(bad, "bad.csv"), ParseError);
    }
}
