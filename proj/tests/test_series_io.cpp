#include "gar/error.hpp"
#include "gar/series_io.hpp"
#include "sampling.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace gar;

namespace {

Series parse(const std::string& text, std::optional<SpaceTag> expected = std::nullopt) {
    std::istringstream in(text);
    return read_series(in, expected);
}

std::size_t error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

std::string dump(const Series& s, const std::optional<Provenance>& prov = std::nullopt) {
    std::ostringstream out;
    write_series(out, s, prov);
    return out.str();
}

}  // namespace

TEST(SeriesIo, ScalarRoundTripIsLossless) {
    RngStream rng(1, 0);
    ScalarSeries s;
    for (int i = 0; i < 20; ++i) s.points.push_back({rng.normal() * 1e-7 + 1.0 / 3.0});
    const Series back = parse(dump(s));
    ASSERT_EQ(series_tag(back), SpaceTag::Scalar);
    EXPECT_EQ(std::get<ScalarSeries>(back).points, s.points);
}

TEST(SeriesIo, QuantileRoundTrip) {
    const WassersteinSpace sp(32, -2.0, 3.0);
    RngStream rng(2, 0);
    QuantileSeries s{sp, gar::testing::random_points(sp, 5, rng)};
    const Series back = parse(dump(s, Provenance{SpaceTag::Wasserstein, 0.3, 5, 17}));
    const auto& q = std::get<QuantileSeries>(back);
    EXPECT_EQ(q.space.m(), 32u);
    EXPECT_EQ(q.space.support_lo(), -2.0);
    EXPECT_EQ(q.points, s.points);
}

TEST(SeriesIo, SpdRoundTrip) {
    const SpdSpace sp(4);
    RngStream rng(3, 0);
    SpdSeries s{sp, gar::testing::random_points(sp, 6, rng)};
    const Series back = parse(dump(s));
    const auto& r = std::get<SpdSeries>(back);
    ASSERT_EQ(r.points.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_TRUE(sp.approx_equal(r.points[i], s.points[i]));
}

TEST(SeriesIo, SpdRawDiagonal) {
    const Series s = parse("p=2\n2 1 2\n");
    const auto& x = std::get<SpdSeries>(s).points.at(0);
    const DenseMatrix m = spd_to_matrix(x);
    EXPECT_NEAR(m(0, 0), 4.0, 1e-14);
    EXPECT_NEAR(m(1, 0), 2.0, 1e-14);
    EXPECT_NEAR(m(1, 1), 5.0, 1e-14);
}

TEST(SeriesIo, ProvenanceLine) {
    ScalarSeries s{{}, {{1.0}, {2.0}}};
    const std::string text = dump(s, Provenance{SpaceTag::Scalar, 0.5, 2, 99});
    EXPECT_EQ(text.substr(0, text.find('\n')), "# space=scalar phi=0.5 T=2 seed=99");
}

TEST(SeriesIo, CommentsAndBlankLinesIgnored) {
    const Series s = parse("# hello\n\n1.5\n  \n# more\n2.5\n");
    EXPECT_EQ(series_length(s), 2u);
}

TEST(SeriesIo, ErrorsCarryLineNumbers) {
    EXPECT_EQ(error_line("1.0\n2.0\nabc\n"), 3u);
    EXPECT_EQ(error_line("1.0\n2.0 3.0\n"), 2u);
    EXPECT_EQ(error_line("# c\nm=3 lo=0 hi=1\n0.1 0.2 0.3\n0.1 0.2\n"), 4u);
    EXPECT_EQ(error_line("m=3 lo=0 hi=1\n0.3 0.2 0.1\n"), 2u);
    EXPECT_EQ(error_line("m=3 lo=0 hi=1\n0.1 0.2 1.5\n"), 2u);
    EXPECT_EQ(error_line("m=3 lo=1 hi=0\n"), 1u);
    EXPECT_EQ(error_line("m=3 lo=0\n"), 1u);
    EXPECT_EQ(error_line("p=2\n1 0 -1\n"), 2u);
    EXPECT_EQ(error_line("p=2\n1 0\n"), 2u);
    EXPECT_EQ(error_line("p=x\n"), 1u);
    EXPECT_EQ(error_line("1.0\ninf\n"), 2u);
    EXPECT_EQ(error_line(""), 1u);
}

TEST(SeriesIo, ExpectedSpaceEnforced) {
    EXPECT_THROW(parse("1.0\n2.0\n", SpaceTag::Spd), ParseError);
    EXPECT_THROW(parse("# space=spd phi=0 T=2 seed=1\n1.0\n2.0\n"), ParseError);
    EXPECT_NO_THROW(parse("p=1\n1\n2\n", SpaceTag::Spd));
}

TEST(SeriesIo, SpaceTags) {
    EXPECT_EQ(parse_space_tag("wasserstein"), SpaceTag::Wasserstein);
    EXPECT_EQ(to_string(SpaceTag::Spd), "spd");
    EXPECT_THROW(parse_space_tag("hilbert"), ArgumentError);
}

TEST(SeriesIo, FormatDoubleSeventeenDigits) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(2.0), "2");
    EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}
