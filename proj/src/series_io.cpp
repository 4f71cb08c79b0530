#include "gar/series_io.hpp"

#include "gar/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace gar {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

double parse_real(std::string_view tok, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        throw ParseError("not a finite number: '" + std::string(tok) + "'", line);
    }
    return v;
}

std::uint64_t parse_uint(std::string_view tok, std::size_t line) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("not a non-negative integer: '" + std::string(tok) + "'", line);
    }
    return v;
}

/// Value of "key=value" or nullopt if the token has a different key.
std::optional<std::string_view> keyed(std::string_view tok, std::string_view key) {
    if (tok.size() > key.size() && tok.substr(0, key.size()) == key && tok[key.size()] == '=') {
        return tok.substr(key.size() + 1);
    }
    return std::nullopt;
}

struct Line {
    std::size_t number;
    std::string text;
};

bool blank(std::string_view s) { return split_ws(s).empty(); }

}  // namespace

std::string_view to_string(SpaceTag tag) noexcept {
    switch (tag) {
        case SpaceTag::Scalar: return "scalar";
        case SpaceTag::Wasserstein: return "wasserstein";
        case SpaceTag::Spd: return "spd";
    }
    return "unknown";
}

SpaceTag parse_space_tag(std::string_view text) {
    if (text == "scalar") return SpaceTag::Scalar;
    if (text == "wasserstein") return SpaceTag::Wasserstein;
    if (text == "spd") return SpaceTag::Spd;
    throw ArgumentError("unknown space '" + std::string(text) + "' (expected scalar, wasserstein or spd)");
}

std::string format_double(double x) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf, static_cast<std::size_t>(n));
}

SpaceTag series_tag(const Series& s) noexcept {
    switch (s.index()) {
        case 0: return SpaceTag::Scalar;
        case 1: return SpaceTag::Wasserstein;
        default: return SpaceTag::Spd;
    }
}

std::size_t series_length(const Series& s) noexcept {
    return std::visit([](const auto& x) { return x.points.size(); }, s);
}

Series read_series(std::istream& in, std::optional<SpaceTag> expected) {
    std::optional<SpaceTag> declared;
    std::vector<Line> body;
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
        ++number;
        const auto first = text.find_first_not_of(" \t\r");
        if (first != std::string::npos && text[first] == '#') {
            for (auto tok : split_ws(std::string_view(text).substr(first + 1))) {
                if (auto v = keyed(tok, "space")) {
                    try {
                        declared = parse_space_tag(*v);
                    } catch (const ArgumentError& e) {
                        throw ParseError(e.what(), number);
                    }
                }
            }
            continue;
        }
        if (blank(text)) continue;
        body.push_back({number, std::move(text)});
    }
    if (body.empty()) throw ParseError("series file has no data", number == 0 ? 1 : number);

    const auto head = split_ws(body.front().text);
    SpaceTag detected = SpaceTag::Scalar;
    if (keyed(head.front(), "m")) {
        detected = SpaceTag::Wasserstein;
    } else if (keyed(head.front(), "p")) {
        detected = SpaceTag::Spd;
    }
    if (declared && *declared != detected) {
        throw ParseError("provenance declares space '" + std::string(to_string(*declared)) +
                             "' but the header is for '" + std::string(to_string(detected)) + "'",
                         body.front().number);
    }
    if (expected && *expected != detected) {
        throw ParseError("expected a " + std::string(to_string(*expected)) + " series, found " +
                             std::string(to_string(detected)),
                         body.front().number);
    }

    switch (detected) {
        case SpaceTag::Scalar: {
            ScalarSeries s;
            for (const auto& line : body) {
                const auto toks = split_ws(line.text);
                if (toks.size() != 1) throw ParseError("expected one value per line", line.number);
                s.points.push_back({parse_real(toks.front(), line.number)});
            }
            return s;
        }
        case SpaceTag::Wasserstein: {
            std::optional<std::size_t> m;
            std::optional<double> lo, hi;
            const std::size_t hn = body.front().number;
            for (auto tok : head) {
                if (auto v = keyed(tok, "m")) {
                    m = static_cast<std::size_t>(parse_uint(*v, hn));
                } else if (auto v2 = keyed(tok, "lo")) {
                    lo = parse_real(*v2, hn);
                } else if (auto v3 = keyed(tok, "hi")) {
                    hi = parse_real(*v3, hn);
                } else {
                    throw ParseError("unexpected header token '" + std::string(tok) + "'", hn);
                }
            }
            if (!m || !lo || !hi) throw ParseError("header needs m=, lo= and hi=", hn);
            if (*m == 0 || !(*lo < *hi)) throw ParseError("header requires m > 0 and lo < hi", hn);
            QuantileSeries s{WassersteinSpace(*m, *lo, *hi), {}};
            for (std::size_t i = 1; i < body.size(); ++i) {
                const auto toks = split_ws(body[i].text);
                if (toks.size() != *m) {
                    throw ParseError("expected " + std::to_string(*m) + " values, found " + std::to_string(toks.size()),
                                     body[i].number);
                }
                QuantileFunction q{*lo, *hi, std::vector<double>(*m)};
                for (std::size_t j = 0; j < *m; ++j) q.values[j] = parse_real(toks[j], body[i].number);
                try {
                    s.space.validate(q);
                } catch (const ValidationError& e) {
                    throw ParseError(e.what(), body[i].number);
                }
                s.points.push_back(std::move(q));
            }
            return s;
        }
        case SpaceTag::Spd: {
            const std::size_t hn = body.front().number;
            if (head.size() != 1) throw ParseError("spd header must be 'p=<int>'", hn);
            const auto p = static_cast<std::size_t>(parse_uint(*keyed(head.front(), "p"), hn));
            if (p == 0) throw ParseError("spd header requires p > 0", hn);
            const std::size_t count = p * (p + 1) / 2;
            SpdSeries s{SpdSpace(p), {}};
            for (std::size_t i = 1; i < body.size(); ++i) {
                const auto toks = split_ws(body[i].text);
                if (toks.size() != count) {
                    throw ParseError("expected " + std::to_string(count) + " values, found " +
                                         std::to_string(toks.size()),
                                     body[i].number);
                }
                DenseMatrix l(p);
                std::size_t k = 0;
                for (std::size_t r = 0; r < p; ++r) {
                    for (std::size_t c = 0; c <= r; ++c) l(r, c) = parse_real(toks[k++], body[i].number);
                    if (!(l(r, r) > 0.0)) throw ParseError("Cholesky diagonal must be positive", body[i].number);
                }
                s.points.push_back(spd_from_factor(l));
            }
            return s;
        }
    }
    throw ParseError("unreachable", 0);
}

Series read_series_file(const std::filesystem::path& path, std::optional<SpaceTag> expected) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open series file '" + path.string() + "'");
    return read_series(in, expected);
}

void write_series(std::ostream& out, const Series& series, const std::optional<Provenance>& provenance) {
    if (provenance) {
        out << "# space=" << to_string(provenance->space) << " phi=" << format_double(provenance->phi)
            << " T=" << provenance->T << " seed=" << provenance->seed << '\n';
    }
    std::visit(
        [&out](const auto& s) {
            using Space = std::decay_t<decltype(s.space)>;
            if constexpr (std::is_same_v<Space, ScalarSpace>) {
                for (const auto& x : s.points) out << format_double(x.value) << '\n';
            } else if constexpr (std::is_same_v<Space, WassersteinSpace>) {
                out << "m=" << s.space.m() << " lo=" << format_double(s.space.support_lo())
                    << " hi=" << format_double(s.space.support_hi()) << '\n';
                for (const auto& q : s.points) {
                    for (std::size_t j = 0; j < q.m(); ++j) out << (j ? " " : "") << format_double(q.values[j]);
                    out << '\n';
                }
            } else {
                const std::size_t p = s.space.dim();
                out << "p=" << p << '\n';
                for (const auto& x : s.points) {
                    const DenseMatrix l = cholesky_factor(x);
                    bool first = true;
                    for (std::size_t r = 0; r < p; ++r) {
                        for (std::size_t c = 0; c <= r; ++c) {
                            out << (first ? "" : " ") << format_double(l(r, c));
                            first = false;
                        }
                    }
                    out << '\n';
                }
            }
        },
        series);
}

void write_series_file(const std::filesystem::path& path, const Series& series,
                       const std::optional<Provenance>& provenance) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write series file '" + path.string() + "'");
    write_series(out, series, provenance);
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace gar
