#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "msc/errors.hpp"
#include "msc/matrix.hpp"
#include "msc/rng.hpp"
#include "msc/scaling.hpp"

namespace {

msc::Matrix scaled_identity(std::size_t d, double s) {
    msc::Matrix m = msc::Matrix::identity(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = s;
    return m;
}

double max_abs_diff(const msc::Matrix& a, const msc::Matrix& b) {
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    double worst = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
    return worst;
}

}  // namespace

TEST_SUITE("scaling") {

TEST_CASE("classification of signed identities") {
    const msc::ScalingMatrix plus = msc::classify_definite(msc::Matrix::identity(3));
    CHECK(plus.d == 3);
    CHECK(plus.sign == 1);
    CHECK(plus.margin == doctest::Approx(1.0).epsilon(1e-12));

    const msc::ScalingMatrix minus = msc::classify_definite(scaled_identity(3, -2.0));
    CHECK(minus.sign == -1);
    CHECK(minus.margin == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("obtuse planar rotation is negative definite") {
    // Symmetric part of a planar rotation is cos(theta) * I: the sign of
    // the scaling is the sign of the cosine.
    const double theta = 2.0 * M_PI / 3.0;
    const msc::ScalingMatrix rot = msc::classify_definite(msc::rotation2(theta));
    CHECK(rot.sign == -1);
    CHECK(rot.margin == doctest::Approx(0.5).epsilon(1e-12));

    const msc::ScalingMatrix acute = msc::classify_definite(msc::rotation2(0.25));
    CHECK(acute.sign == 1);
    CHECK(acute.margin == doctest::Approx(std::cos(0.25)).epsilon(1e-12));
}

TEST_CASE("indefinite and near singular matrices are rejected") {
    CHECK_THROWS_AS(msc::classify_definite(msc::rotation2(M_PI / 2.0)),
                    msc::IndefiniteScalingError);
    CHECK_THROWS_AS(msc::classify_definite(msc::Matrix::from_rows({{1.0, 0.0}, {0.0, -1.0}})),
                    msc::IndefiniteScalingError);
    // Pure skew: symmetric part is zero.
    CHECK_THROWS_AS(msc::classify_definite(msc::Matrix::from_rows({{0.0, 1.0}, {-1.0, 0.0}})),
                    msc::IndefiniteScalingError);
    msc::Matrix bad(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(msc::classify_definite(bad), msc::IndefiniteScalingError);
}

TEST_CASE("axis rotation matches the planar rotation in its plane") {
    const double theta = 0.6;
    const msc::Matrix r3 = msc::rotation3({0.0, 0.0, 1.0}, theta);
    const msc::Matrix r2 = msc::rotation2(theta);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c)
            CHECK(r3(r, c) == doctest::Approx(r2(r, c)).epsilon(1e-14));
    CHECK(r3(2, 2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r3(0, 2) == 0.0);
    CHECK(r3(2, 0) == 0.0);
}

TEST_CASE("axis rotations are orthogonal with unit determinant") {
    msc::SplitMix64 rng(555);
    for (int trial = 0; trial < 25; ++trial) {
        msc::Vec axis = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const double len = msc::l2_norm(axis);
        if (len < 0.1) continue;
        for (double& a : axis) a /= len;
        const msc::Matrix r = msc::rotation3(axis, rng.uniform(0.0, 2.0 * M_PI));
        const msc::Matrix rtr = r.transpose() * r;
        CHECK(max_abs_diff(rtr, msc::Matrix::identity(3)) < 1e-12);
        CHECK(msc::determinant(r) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("non unit axis is rejected") {
    CHECK_THROWS_AS(msc::rotation3({1.0, 1.0, 0.0}, 0.5), msc::ValidationError);
    try {
        msc::rotation3({0.0, 0.0, 0.0}, 0.5);
    } catch (const msc::ValidationError& e) {
        CHECK(e.field() == "axis");
    }
    CHECK_THROWS_AS(msc::rotation3({1.0, 0.0}, 0.5), msc::ValidationError);
}

TEST_CASE("sign is invariant under transpose and inverse") {
    msc::SplitMix64 rng(808);
    for (int trial = 0; trial < 40; ++trial) {
        // Definite draw: D + skew with D dominating.
        const std::size_t d = 2 + rng.below(2);
        msc::Matrix m(d, d);
        const double sgn = rng.uniform() < 0.5 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < d; ++i) m(i, i) = sgn * rng.uniform(0.5, 2.0);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = r + 1; c < d; ++c) {
                const double v = rng.uniform(-0.3, 0.3);
                m(r, c) += v;
                m(c, r) -= v;
            }
        const msc::ScalingMatrix base = msc::classify_definite(m);
        CHECK(msc::classify_definite(m.transpose()).sign == base.sign);
        CHECK(msc::classify_definite(msc::invert(m)).sign == base.sign);
    }
}

TEST_CASE("block operators have the advertised structure") {
    const msc::Matrix s1 = msc::rotation2(0.3);
    const msc::Matrix s2 = msc::rotation2(2.5);  // negative definite
    const msc::ScalingSet set = msc::ScalingSet::classify({s1, s2});
    REQUIRE(set.agent_count() == 2);
    CHECK(set.d == 2);
    CHECK(set.entries[0].sign == 1);
    CHECK(set.entries[1].sign == -1);

    const msc::Matrix block = set.block_state_scaling();
    REQUIRE(block.rows() == 4);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            CHECK(block(r, c) == s1(r, c));
            CHECK(block(r + 2, c + 2) == s2(r, c));
            CHECK(block(r, c + 2) == 0.0);
            CHECK(block(r + 2, c) == 0.0);
        }

    const msc::Matrix sign = set.block_sign();
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(sign(i, i) == (i < 2 ? 1.0 : -1.0));

    // blkdiag(sign_i S_i) = block_sign * block_state_scaling.
    CHECK(max_abs_diff(set.block_abs(), sign * block) < 1e-15);

    // Inverses invert blockwise.
    CHECK(max_abs_diff(set.block_inverse() * block, msc::Matrix::identity(4)) < 1e-12);
    CHECK(max_abs_diff(set.block_abs_inverse() * set.block_abs(), msc::Matrix::identity(4)) <
          1e-12);
}

TEST_CASE("consensus weight for uniform scalar scalings") {
    // S_i = s*I for n agents gives P = (n/s)^{-1} I = (s/n) I.
    const std::size_t n = 5;
    const double s = 3.0;
    std::vector<msc::Matrix> raw(n, scaled_identity(2, s));
    const msc::ScalingSet set = msc::ScalingSet::classify(raw);
    const msc::Matrix p = set.consensus_weight();
    CHECK(max_abs_diff(p, scaled_identity(2, s / static_cast<double>(n))) < 1e-12);
}

TEST_CASE("consensus weight for the mixed rotation family") {
    // Six identity rotations and ten obtuse ones (cos = -1/2). Each signed
    // inverse is sign * R(-theta), whose symmetric parts sum to
    // 6*I + 10*(1/2)*I = 11*I; skew parts cancel in conjugate angle pairs.
    std::vector<msc::Matrix> raw;
    for (int i = 0; i < 6; ++i) raw.push_back(msc::rotation2(0.0));
    for (int i = 0; i < 5; ++i) raw.push_back(msc::rotation2(2.0 * M_PI / 3.0));
    for (int i = 0; i < 5; ++i) raw.push_back(msc::rotation2(4.0 * M_PI / 3.0));
    const msc::ScalingSet set = msc::ScalingSet::classify(raw);
    const msc::Matrix p = set.consensus_weight();
    CHECK(max_abs_diff(p, scaled_identity(2, 1.0 / 11.0)) < 1e-12);
}

TEST_CASE("classify rejects mixed dimensions and empty input") {
    CHECK_THROWS_AS(msc::ScalingSet::classify({msc::Matrix::identity(2), msc::Matrix::identity(3)}),
                    msc::DimensionError);
    CHECK_THROWS_AS(msc::ScalingSet::classify({}), msc::ValidationError);
    CHECK_THROWS_AS(msc::ScalingSet::classify({msc::Matrix(2, 3)}), msc::DimensionError);
}

}  // TEST_SUITE
