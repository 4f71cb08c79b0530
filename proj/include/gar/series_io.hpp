#pragma once

// Text formats for one trajectory per file (UTF-8, '#' starts a comment line):
//
//   scalar       one value per line
//   wasserstein  header "m=<int> lo=<real> hi=<real>", then m quantile values per line
//   spd          header "p=<int>", then the p(p+1)/2 lower-triangular Cholesky
//                entries of each point, row-major, diagonal stored raw (> 0)
//
// Simulated trajectories carry a provenance comment
// "# space=<tag> phi=<real> T=<int> seed=<int>" as their first line.

#include "gar/scalar_space.hpp"
#include "gar/spd_space.hpp"
#include "gar/wasserstein_space.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gar {

enum class SpaceTag { Scalar, Wasserstein, Spd };

std::string_view to_string(SpaceTag tag) noexcept;
/// Accepts "scalar", "wasserstein", "spd". Throws ArgumentError otherwise.
SpaceTag parse_space_tag(std::string_view text);

/// Shortest round-trip decimal form is not required; 17 significant digits is lossless.
std::string format_double(double x);

struct Provenance {
    SpaceTag space = SpaceTag::Scalar;
    double phi = 0.0;
    std::size_t T = 0;
    std::uint64_t seed = 0;
};

template <class Space>
struct SeriesOf {
    Space space;
    std::vector<typename Space::Point> points;
};

using ScalarSeries = SeriesOf<ScalarSpace>;
using QuantileSeries = SeriesOf<WassersteinSpace>;
using SpdSeries = SeriesOf<SpdSpace>;
using Series = std::variant<ScalarSeries, QuantileSeries, SpdSeries>;

SpaceTag series_tag(const Series& s) noexcept;
std::size_t series_length(const Series& s) noexcept;

/// Parses a series. The format is taken from the header (or the provenance line);
/// when expected is set, a different format is a ParseError. Every malformed line
/// raises ParseError carrying its 1-based line number.
Series read_series(std::istream& in, std::optional<SpaceTag> expected = std::nullopt);
Series read_series_file(const std::filesystem::path& path, std::optional<SpaceTag> expected = std::nullopt);

void write_series(std::ostream& out, const Series& series, const std::optional<Provenance>& provenance = std::nullopt);
void write_series_file(const std::filesystem::path& path, const Series& series,
                       const std::optional<Provenance>& provenance = std::nullopt);

}  // namespace gar
