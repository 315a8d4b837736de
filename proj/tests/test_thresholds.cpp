#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pyrinfo/information.hpp"
#include "pyrinfo/thresholds.hpp"

using namespace pyrinfo;
using Catch::Matchers::WithinAbs;

TEST_CASE("channel information endpoints") {
    for (int n : {2, 3, 5, 10}) {
        REQUIRE_THAT(alice_bob_information(n, 0.0), WithinAbs(1.0, 1e-15));
        REQUIRE_THAT(alice_bob_information(n, double(n - 1) / n), WithinAbs(0.0, 1e-13));
        REQUIRE_THAT(eve_information(n, 0.0, Strategy::srm), WithinAbs(0.0, 1e-13));
        REQUIRE_THAT(eve_information(n, 0.0, Strategy::optimal), WithinAbs(0.0, 1e-13));
        REQUIRE_THAT(eve_information(n, double(n - 1) / n, Strategy::optimal),
                     WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("channel information is monotone in the disturbance") {
    for (int n : {2, 3, 10}) {
        double prev_ab = 2.0;
        double prev_ae = -1.0;
        for (int i = 0; i <= 20; ++i) {
            const double d = i / 20.0 * (n - 1) / n;
            const double ab = alice_bob_information(n, d);
            const double ae = eve_information(n, d, Strategy::optimal);
            REQUIRE(ab < prev_ab);
            REQUIRE(ae > prev_ae - 1e-15);
            prev_ab = ab;
            prev_ae = ae;
        }
    }
}

TEST_CASE("optimal eavesdropping dominates the square-root strategy") {
    for (int n : {2, 3, 5, 10, 30}) {
        const double dc = critical_disturbance(n);
        for (int i = 1; i <= 19; ++i) {
            const double d = i / 20.0 * (n - 1) / n;
            const double srm_info = eve_information(n, d, Strategy::srm);
            const double opt_info = eve_information(n, d, Strategy::optimal);
            REQUIRE(opt_info >= srm_info - 1e-12);
            if (n >= 3 && d < dc - 1e-9) {
                // below the critical disturbance the family branch strictly wins
                REQUIRE(opt_info > srm_info + 1e-12);
            } else {
                REQUIRE_THAT(opt_info, WithinAbs(srm_info, 1e-12));
            }
        }
    }
}

TEST_CASE("critical disturbance follows its closed form") {
    REQUIRE_THAT(critical_disturbance(2), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(critical_disturbance(3), WithinAbs(0.25, 1e-15));
    REQUIRE_THAT(critical_disturbance(4), WithinAbs(0.5, 1e-15));
    REQUIRE_THAT(critical_disturbance(5), WithinAbs(9.0 / 14.0, 1e-15));
    REQUIRE_THAT(critical_disturbance(10), WithinAbs(64.0 / 74.0, 1e-15));
    REQUIRE_THROWS_AS(critical_disturbance(1), std::invalid_argument);

    // it marks exactly the disturbance where the mapped overlap meets the
    // measurement regime boundary
    for (int n : {3, 4, 5, 10, 50}) {
        const double dc = critical_disturbance(n);
        REQUIRE_THAT(disturbance_to_lambda(n, dc), WithinAbs(regime_boundary(n), 1e-12));
    }
}

TEST_CASE("threshold is a strict crossing of the two curves") {
    for (int n : {2, 3, 5, 10, 30}) {
        for (Strategy s : {Strategy::srm, Strategy::optimal}) {
            const auto r = ck_threshold(n, s);
            REQUIRE(r.d_star > 0.0);
            REQUIRE(r.d_star < double(n - 1) / n);
            REQUIRE_THAT(alice_bob_information(n, r.d_star),
                         WithinAbs(eve_information(n, r.d_star, s), 1e-9));
            REQUIRE(alice_bob_information(n, r.d_star - 1e-6) >
                    eve_information(n, r.d_star - 1e-6, s));
            REQUIRE(alice_bob_information(n, r.d_star + 1e-6) <
                    eve_information(n, r.d_star + 1e-6, s));
            REQUIRE_THAT(r.info_at_threshold,
                         WithinAbs(alice_bob_information(n, r.d_star), 0.0));
        }
    }
}

TEST_CASE("optimal eavesdropping can only lower the threshold") {
    for (int n : {2, 3, 4, 5, 10, 100}) {
        const double srm_star = ck_threshold(n, Strategy::srm).d_star;
        const double opt_star = ck_threshold(n, Strategy::optimal).d_star;
        REQUIRE(opt_star <= srm_star + 1e-12);
        if (n >= 3) REQUIRE(opt_star < srm_star);
        // at the threshold the eavesdropper is still in the family regime,
        // so the optimal strategy genuinely differs there
        if (n >= 3)
            REQUIRE(disturbance_to_lambda(n, opt_star) > regime_boundary(n));
    }
}

TEST_CASE("thresholds grow with the alphabet") {
    double previous = 0.0;
    for (int n : {2, 3, 4, 5, 10, 30, 50, 100}) {
        const double d = ck_threshold(n, Strategy::optimal).d_star;
        REQUIRE(d > previous);
        previous = d;
    }
    REQUIRE(previous < 0.5);  // bounded well below the random-channel point
}
