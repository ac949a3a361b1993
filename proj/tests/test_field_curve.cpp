#include <gtest/gtest.h>

#include "birclass/curve.hpp"
#include "support/oracles.hpp"

using namespace birclass;

namespace {

std::vector<EllipticCurve> all_curves(std::int64_t p) {
    std::vector<EllipticCurve> out;
    for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < p; ++b) {
            const std::int64_t disc =
                modarith::add(modarith::mul(4, modarith::pow(a, 3, p), p),
                              modarith::mul(27, modarith::mul(b, b, p), p), p);
            if (disc != 0) out.emplace_back(p, a, b);
        }
    return out;
}

} // namespace

TEST(Field, Arithmetic) {
    FieldElement a(7, 13), b(-2, 13);
    EXPECT_EQ(b.value(), 11);
    EXPECT_EQ((a + b).value(), 5);
    EXPECT_EQ((a * b).value(), 12);
    EXPECT_EQ((a / a).value(), 1);
    EXPECT_EQ((a.inverse() * a).value(), 1);
    EXPECT_EQ(a.pow(12).value(), 1); // Fermat
    EXPECT_THROW(a / FieldElement(0, 13), domain_error);
    EXPECT_THROW(FieldElement(1, 9), domain_error);
}

TEST(Curve, Validation) {
    EXPECT_NO_THROW(EllipticCurve(5, -1, 0));
    EXPECT_THROW(EllipticCurve(5, 0, 0), domain_error); // singular
    EXPECT_THROW(EllipticCurve(4, 1, 1), domain_error); // not prime
    EXPECT_THROW(EllipticCurve(3, 1, 1), domain_error); // p must exceed 3
}

TEST(Curve, AddIdentity) {
    EllipticCurve e(5, -1, 0);
    const CurvePoint P = CurvePoint::affine(2, 1, 5);
    EXPECT_EQ(point_add(e, P, CurvePoint::infinity()), P);
    EXPECT_EQ(point_add(e, CurvePoint::infinity(), P), P);
}

TEST(Curve, AddDoubling) {
    // 2*(2,1) = (0,0) on y^2 = x^3 - x over F_5
    EllipticCurve e(5, -1, 0);
    const CurvePoint P = CurvePoint::affine(2, 1, 5);
    EXPECT_EQ(point_add(e, P, P), CurvePoint::affine(0, 0, 5));
    EXPECT_EQ(point_add(e, P, P), oracles::oracle_add(e, P, P));
}

TEST(Curve, AddTwoTorsionLine) {
    // the three 2-torsion points of y^2 = x^3 + x over F_5 are collinear on y = 0
    EllipticCurve e(5, 1, 0);
    const CurvePoint P = CurvePoint::affine(0, 0, 5);
    const CurvePoint Q = CurvePoint::affine(2, 0, 5);
    EXPECT_EQ(point_add(e, P, Q), CurvePoint::affine(3, 0, 5));
}

TEST(Curve, AddRejectsOffCurvePoints) {
    EllipticCurve e(5, -1, 0);
    try {
        point_add(e, CurvePoint::affine(1, 1, 5), CurvePoint::infinity());
        FAIL() << "expected PointNotOnCurve";
    } catch (const domain_error& err) {
        EXPECT_EQ(err.code(), "PointNotOnCurve");
    }
}

TEST(Curve, EnumerateCounts) {
    EXPECT_EQ(enumerate_points(EllipticCurve(5, 1, 0)).size(), 4u);
    EXPECT_EQ(enumerate_points(EllipticCurve(5, -1, 0)).size(), 8u);
}

TEST(Curve, EnumerateContainsInfinityAndHasse) {
    for (std::int64_t p : {5, 7, 13}) {
        for (const auto& e : all_curves(p)) {
            const auto pts = enumerate_points(e);
            EXPECT_TRUE(pts.front().is_infinity());
            const std::int64_t delta = static_cast<std::int64_t>(pts.size()) - p - 1;
            EXPECT_LE(delta * delta, 4 * p) << e.str();
            for (const auto& q : pts) EXPECT_TRUE(e.on_curve(q));
        }
    }
}

// full Cayley table against the collinear-scan oracle, plus the group axioms,
// on every curve over F_5 and F_7
TEST(Curve, GroupAxiomsExhaustive) {
    for (std::int64_t p : {5, 7}) {
        for (const auto& e : all_curves(p)) {
            const auto pts = enumerate_points(e);
            ASSERT_LE(pts.size(), 200u);
            for (const auto& P : pts) {
                EXPECT_EQ(point_add(e, P, point_neg(e, P)), CurvePoint::infinity());
                for (const auto& Q : pts) {
                    const CurvePoint s = point_add(e, P, Q);
                    EXPECT_TRUE(e.on_curve(s));
                    EXPECT_EQ(s, oracles::oracle_add(e, P, Q)) << e.str();
                    EXPECT_EQ(s, point_add(e, Q, P));
                    for (const auto& R : pts)
                        EXPECT_EQ(point_add(e, s, R), point_add(e, P, point_add(e, Q, R)));
                }
            }
        }
    }
}

TEST(Curve, ScalarMulMatchesRepeatedAddition) {
    for (std::int64_t p : {5, 7}) {
        for (const auto& e : all_curves(p)) {
            for (const auto& P : enumerate_points(e)) {
                const std::int64_t order = point_order(e, P);
                CurvePoint acc = CurvePoint::infinity();
                for (std::int64_t n = 0; n <= order; ++n) {
                    EXPECT_EQ(scalar_mul(e, n, P), acc);
                    acc = point_add(e, acc, P);
                }
            }
        }
    }
}

TEST(Curve, FindTorsion) {
    EllipticCurve e1(5, -1, 0);
    const auto q = find_torsion(e1, 4);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(*q, CurvePoint::affine(2, 1, 5));
    EXPECT_EQ(oracles::oracle_order(e1, *q), 4);
    EXPECT_TRUE(scalar_mul(e1, 4, *q).is_infinity());
    EXPECT_FALSE(scalar_mul(e1, 2, *q).is_infinity());

    EllipticCurve e2(5, 1, 0); // group (Z/2)^2: no point of order 4
    EXPECT_FALSE(find_torsion(e2, 4).has_value());

    EXPECT_TRUE(find_torsion(e1, 1).value().is_infinity());
}
