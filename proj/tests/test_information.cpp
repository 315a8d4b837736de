#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pyrinfo/information.hpp"
#include "pyrinfo/measurements.hpp"
#include "pyrinfo/pyramid.hpp"

using namespace pyrinfo;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<double> lambda_samples(int n) {
    const double lo = lambda_lower_bound(n);
    return {lo * 0.5, lo * 0.1, 0.0, 0.2, 0.5, 0.77, 0.95};
}

}  // namespace

TEST_CASE("square-root joint distribution has the two-valued structure") {
    for (int n : {2, 3, 5, 10}) {
        for (double lambda : lambda_samples(n)) {
            const auto p = make_pyramid(n, lambda);
            const auto j = joint_distribution(p, srm(p));
            const auto e = eta_pair(p);
            REQUIRE(j.letters() == n);
            REQUIRE(j.outcomes() == n);
            for (int k = 0; k < n; ++k) {
                for (int m = 0; m < n; ++m) {
                    const double expected = (k == m ? e.eta0 : e.eta1) / n;
                    REQUIRE_THAT(j.p(k, m), WithinAbs(expected, 1e-12));
                }
            }
        }
    }
}

TEST_CASE("eta pair is normalized and matches a direct evaluation") {
    for (int n = 2; n <= 12; ++n) {
        for (double lambda : lambda_samples(n)) {
            const auto e = eta_pair(make_pyramid(n, lambda));
            REQUIRE_THAT(e.eta0 + (n - 1) * e.eta1, WithinAbs(1.0, 1e-12));
            REQUIRE(e.eta0 >= 0.0);
            REQUIRE(e.eta1 >= 0.0);
        }
    }
    // two letters with overlap 1/2: eta0 = cos^2(pi/12), eta1 = sin^2(pi/12)
    const auto e = eta_pair(make_pyramid(2, 0.5));
    REQUIRE_THAT(e.eta0, WithinAbs(0.93301270189221932, 1e-15));
    REQUIRE_THAT(e.eta1, WithinAbs(0.066987298107780677, 1e-15));
}

TEST_CASE("scaled eta pair interpolates between full and unambiguous") {
    for (int n : {2, 3, 10}) {
        for (double lambda : {0.0, 0.3, 0.8}) {
            const auto p = make_pyramid(n, lambda);
            const auto base = eta_pair(p);
            const auto at0 = scaled_eta_pair(p, 0.0);
            REQUIRE_THAT(at0.eta0, WithinAbs(base.eta0, 1e-15));
            REQUIRE_THAT(at0.eta1, WithinAbs(base.eta1, 1e-15));
            const auto at1 = scaled_eta_pair(p, 1.0);
            REQUIRE_THAT(at1.eta1, WithinAbs(0.0, 1e-15));
            // conclusive probability at T = 1 is 1 - lambda
            REQUIRE_THAT(at1.eta0 + (n - 1) * at1.eta1, WithinAbs(1.0 - lambda, 1e-12));
        }
    }
}

TEST_CASE("closed-form information matches the measured pipeline") {
    SECTION("square-root measurement, all admissible overlaps") {
        for (int n : {2, 3, 5, 10}) {
            for (double lambda : lambda_samples(n)) {
                const auto p = make_pyramid(n, lambda);
                const double pipeline = mutual_information(joint_distribution(p, srm(p)));
                REQUIRE_THAT(srm_information(p), WithinAbs(pipeline, 1e-10));
            }
        }
    }
    SECTION("family over the rescaled parameter grid") {
        for (int n : {2, 3, 5, 10}) {
            for (double lambda : {0.1, 0.3, 0.5, 0.7, 0.9}) {
                const auto p = make_pyramid(n, lambda);
                for (double T : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                    const auto povm = family_povm(p, family_t(p, T));
                    const double pipeline = mutual_information(joint_distribution(p, povm));
                    REQUIRE_THAT(family_information(p, T), WithinAbs(pipeline, 1e-10));
                }
            }
        }
    }
}

TEST_CASE("family endpoints") {
    for (int n : {2, 3, 5, 10, 20}) {
        for (double lambda : {0.0, 0.2, 0.5, 0.9}) {
            const auto p = make_pyramid(n, lambda);
            REQUIRE_THAT(family_information(p, 0.0), WithinAbs(srm_information(p), 1e-13));
            // unambiguous endpoint: perfect identification on the conclusive fraction
            REQUIRE_THAT(family_information(p, 1.0), WithinAbs(1.0 - lambda, 1e-12));
        }
    }
}

TEST_CASE("optimum agrees with a direct numerical maximization") {
    for (int n : {2, 3, 4, 5, 10}) {
        for (double lambda : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const auto p = make_pyramid(n, lambda);
            const auto r = optimum(p);
            const auto scan = maximize_scalar(
                [&](double T) { return family_information(p, T); }, 0.0, 1.0, 1e-13);
            REQUIRE_THAT(r.i_max, WithinAbs(scan.value, 1e-9));
            // the reported maximizer reproduces the reported value
            REQUIRE_THAT(family_information(p, r.t_star), WithinAbs(r.i_max, 1e-12));
            REQUIRE(r.i_max >= r.i_srm - 1e-12);
        }
    }
}

TEST_CASE("the two optimum branches meet at the regime boundary") {
    for (int n : {3, 4, 5, 10, 30}) {
        const double boundary = regime_boundary(n);
        const auto p = make_pyramid(n, boundary);
        const double family_branch =
            (1.0 - boundary) * (n - 1) / (n - 2) * std::log(double(n - 1)) / std::log(double(n));
        REQUIRE_THAT(srm_information(p), WithinAbs(family_branch, 1e-10));

        // continuity just across the boundary
        const auto below = optimum(make_pyramid(n, boundary - 1e-9));
        const auto above = optimum(make_pyramid(n, boundary + 1e-9));
        REQUIRE(below.regime == Regime::srm_optimal);
        REQUIRE(above.regime == Regime::family_optimal);
        REQUIRE_THAT(below.i_max, WithinAbs(above.i_max, 1e-7));
    }
}

TEST_CASE("two letters always sit in the square-root regime") {
    REQUIRE_THAT(regime_boundary(2), WithinAbs(1.0, 1e-15));
    for (double lambda : {0.1, 0.5, 0.9, 0.99}) {
        const auto r = optimum(make_pyramid(2, lambda));
        REQUIRE(r.regime == Regime::srm_optimal);
        REQUIRE(r.t_star == 0.0);
        REQUIRE_THAT(r.i_max, WithinAbs(r.i_srm, 0.0));
    }
}

TEST_CASE("regime boundary values") {
    REQUIRE_THAT(regime_boundary(3), WithinAbs(5.0 / 6.0, 1e-15));
    REQUIRE_THAT(regime_boundary(4), WithinAbs(2.0 / 3.0, 1e-15));
    REQUIRE_THAT(regime_boundary(5), WithinAbs(0.55, 1e-15));
    REQUIRE_THAT(regime_boundary(10), WithinAbs(13.0 / 45.0, 1e-15));
    REQUIRE(regime_boundary(100) < 0.03);
}

TEST_CASE("optimum-to-square-root ratio approaches its asymptote monotonically") {
    for (int n : {3, 10, 100}) {
        const double limit = asymptotic_ratio(n);
        double previous_gap = std::numeric_limits<double>::infinity();
        for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
            const auto r = optimum(make_pyramid(n, 1.0 - eps));
            const double gap = std::abs(r.i_max / r.i_srm - limit);
            REQUIRE(gap < previous_gap);
            previous_gap = gap;
        }
    }
}

TEST_CASE("mutual information basics") {
    SECTION("independent variables carry no information") {
        JointDistribution j;
        j.p.resize(3, 2);
        j.p << 0.2, 0.1, 0.4, 0.2, 0.066666666666666666, 0.033333333333333333;
        REQUIRE_THAT(mutual_information(j), WithinAbs(0.0, 1e-12));
    }
    SECTION("perfect correlation carries one full letter") {
        JointDistribution j;
        j.p = RealMatrix::Identity(4, 4) / 4.0;
        REQUIRE_THAT(mutual_information(j), WithinAbs(1.0, 1e-12));
    }
    SECTION("rejections") {
        JointDistribution one_letter;
        one_letter.p = RealMatrix::Constant(1, 3, 1.0 / 3.0);
        REQUIRE_THROWS_AS(mutual_information(one_letter), std::invalid_argument);

        JointDistribution negative;
        negative.p = RealMatrix::Constant(2, 2, 0.3);
        negative.p(0, 0) = -0.1;
        REQUIRE_THROWS_AS(mutual_information(negative), std::invalid_argument);

        const auto p2 = make_pyramid(2, 0.5);
        const auto p3 = make_pyramid(3, 0.5);
        REQUIRE_THROWS_AS(joint_distribution(p2, srm(p3)), std::invalid_argument);
    }
}

TEST_CASE("square-root and unambiguous curves cross for large alphabets") {
    for (int n : {10, 20, 100}) {
        const double star = srm_mud_crossing(n);
        REQUIRE(star > regime_boundary(n));
        REQUIRE(star < 1.0);
        const auto p = make_pyramid(n, star);
        REQUIRE_THAT(srm_information(p), WithinAbs(1.0 - star, 1e-9));
        // strictly above below the crossing, strictly below above it
        REQUIRE(srm_information(make_pyramid(n, star - 1e-3)) > 1.0 - (star - 1e-3));
        REQUIRE(srm_information(make_pyramid(n, star + 1e-3)) < 1.0 - (star + 1e-3));
    }
    REQUIRE_THROWS_AS(srm_mud_crossing(3), std::domain_error);
    REQUIRE_THROWS_AS(srm_mud_crossing(4), std::domain_error);
}

TEST_CASE("closed-form domain checks") {
    REQUIRE_THROWS_AS(family_information(make_pyramid(3, 0.5), -0.1), std::invalid_argument);
    REQUIRE_THROWS_AS(family_information(make_pyramid(3, 0.5), 1.1), std::invalid_argument);
    REQUIRE_THROWS_AS(optimum(make_pyramid(3, -0.2)), std::invalid_argument);
    REQUIRE_THROWS_AS(regime_boundary(1), std::invalid_argument);
    REQUIRE_THROWS_AS(asymptotic_ratio(2), std::invalid_argument);
}
