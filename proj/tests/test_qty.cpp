#include <gtest/gtest.h>

#include "mdyn/qty.hpp"

using namespace mdyn;

TEST(Qty, ExactArithmetic) {
    Qty a(13230), b(7790);
    EXPECT_EQ(a - b, Qty(5440));
    EXPECT_EQ(Qty(94) * Qty(10) + Qty(80) * Qty(20), Qty(2540));
    EXPECT_EQ(Qty(1) / Qty(3) + Qty(2) / Qty(3), Qty(1));
    EXPECT_EQ((Qty(100) + Qty(110)) / Qty(2), Qty(105));
}

TEST(Qty, SubtractionBelowZeroThrows) {
    EXPECT_THROW(Qty(1) - Qty(2), DomainError);
    EXPECT_THROW(Qty(0) - Qty::ratio(1, 1000), DomainError);
    EXPECT_EQ(saturating_sub(Qty(1), Qty(2)), Qty(0));
    EXPECT_EQ(saturating_sub(Qty(5), Qty(2)), Qty(3));
}

TEST(Qty, DivisionByZeroThrows) { EXPECT_THROW(Qty(1) / Qty(0), DomainError); }

TEST(Qty, ParseDecimalStrings) {
    EXPECT_EQ(Qty::parse("123"), Qty(123));
    EXPECT_EQ(Qty::parse("123.45"), Qty::ratio(12345, 100));
    EXPECT_EQ(Qty::parse("0.5"), Qty::ratio(1, 2));
    EXPECT_EQ(Qty::parse(".5"), Qty::ratio(1, 2));
    EXPECT_EQ(Qty::parse("2."), Qty(2));
    EXPECT_EQ(Qty::parse("1/3"), Qty::ratio(1, 3));
    EXPECT_EQ(Qty::parse("0"), Qty(0));
}

TEST(Qty, ParseRejectsJunk) {
    for (const char* bad : {"", "-1", "1e5", "abc", "1.2.3", " 1", "1 ", "+2", "1/-3", "1/0"}) {
        EXPECT_THROW(Qty::parse(bad), ParseError) << bad;
    }
}

TEST(Qty, CanonicalFormatting) {
    EXPECT_EQ(Qty(123).str(), "123");
    EXPECT_EQ(Qty::parse("100.50").str(), "100.5");
    EXPECT_EQ(Qty::ratio(1, 2).str(), "0.5");
    EXPECT_EQ(Qty::ratio(3, 4).str(), "0.75");
    EXPECT_EQ(Qty::ratio(1, 5).str(), "0.2");
    EXPECT_EQ(Qty::ratio(1, 3).str(), "1/3");
    EXPECT_EQ(Qty::ratio(2720, 81).str(), "2720/81");
    EXPECT_EQ(Qty::ratio(1, 1000).str(), "0.001");
    EXPECT_EQ(Qty(0).str(), "0");
}

TEST(Qty, FormatParseRoundTrip) {
    for (const auto& q : {Qty::ratio(7, 3), Qty::ratio(12345, 100), Qty(0), Qty(99),
                          Qty::ratio(1, 1024)}) {
        EXPECT_EQ(Qty::parse(q.str()), q);
    }
}

TEST(Qty, ExactDoubleConversion) {
    EXPECT_EQ(Qty::from_double_exact(0.5), Qty::ratio(1, 2));
    EXPECT_EQ(Qty::from_double_exact(0.75), Qty::ratio(3, 4));
    EXPECT_THROW(Qty::from_double_exact(-1.0), DomainError);
    EXPECT_NEAR(Qty::ratio(1, 3).to_double(), 1.0 / 3.0, 1e-15);
}

TEST(Qty, Ordering) {
    EXPECT_LT(Qty::ratio(1, 3), Qty::ratio(1, 2));
    EXPECT_EQ(min(Qty(3), Qty(5)), Qty(3));
    EXPECT_EQ(max(Qty(3), Qty(5)), Qty(5));
}
