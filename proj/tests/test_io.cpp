#include <cmath>
#include <limits>
#include <bit>
#include <charconv>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "lgkac/error.hpp"
#include "lgkac/io.hpp"

using namespace lgkac;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

io::RecordingSet parse(const std::string& text) {
    std::istringstream in(text);
    return io::read_trajectories(in);
}

std::string error_message(const std::string& text, ErrorKind& kind) {
    try {
        parse(text);
    } catch (const Error& e) {
        kind = e.kind();
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("well-formed recording") {
    const auto set = parse("trial,t,v\n0,0,1.5\n0,0.1,2\n0,0.2,-3\n7,0,4\n7,0.1,5\n7,0.2,6\n");
    REQUIRE(set.trajectories.size() == 2);
    CHECK(set.trial_ids == std::vector<std::int64_t>{0, 7});
    CHECK(set.rejected.empty());
    CHECK(set.trajectories[0].values == std::vector<double>{1.5, 2.0, -3.0});
    CHECK(set.trajectories[1].grid.n_steps == 2);
    CHECK(set.trajectories[1].grid.dt == doctest::Approx(0.1));
}

TEST_CASE("comment lines before the header are skipped") {
    const auto set = parse("# config: {\"seed\":1}\n# another\ntrial,t,v\n1,0,1\n1,1,2\n");
    REQUIRE(set.trajectories.size() == 1);
    CHECK(set.trial_ids[0] == 1);
}

TEST_CASE("missing header names the expected one") {
    ErrorKind kind{};
    const std::string msg = error_message("0,0,1\n0,1,2\n", kind);
    CHECK(kind == ErrorKind::parse_error);
    CHECK(msg.find("trial,t,v") != std::string::npos);
}

TEST_CASE("jittered timestamps are rejected naming the trial") {
    ErrorKind kind{};
    const std::string msg = error_message("trial,t,v\n3,0,1\n3,0.1,2\n3,0.2001,3\n", kind);
    CHECK(kind == ErrorKind::invalid_input);
    CHECK(msg.find("3") != std::string::npos);
    CHECK(msg.find("uniform") != std::string::npos);
    // within relative tolerance
    CHECK(parse("trial,t,v\n3,0,1\n3,0.1,2\n3,0.20000000001,3\n").trajectories.size() == 1);
}

TEST_CASE("malformed rows report their line number") {
    ErrorKind kind{};
    std::string msg = error_message("trial,t,v\n0,0,1\n0,0.1,abc\n", kind);
    CHECK(kind == ErrorKind::parse_error);
    CHECK(msg.find("line 3") != std::string::npos);
    msg = error_message("trial,t,v\n0,0,1\n0,0.1\n", kind);
    CHECK(msg.find("line 3") != std::string::npos);
}

TEST_CASE("trials on a different grid are rejected") {
    const auto set = parse("trial,t,v\n0,0,1\n0,0.1,2\n0,0.2,3\n1,0,1\n1,0.2,2\n1,0.4,3\n2,0,9\n2,0.1,8\n2,0.2,7\n");
    CHECK(set.trial_ids == std::vector<std::int64_t>{0, 2});
    REQUIRE(set.rejected.size() == 1);
    CHECK(set.rejected[0].find("1") != std::string::npos);
}

TEST_CASE("trajectory round trip is bitwise") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    std::vector<Trajectory> trajectories;
    for (int k = 0; k < 5; ++k) {
        Trajectory tr{{0.1 * k, 1.0 / 3.0, 40}, {}};
        for (std::size_t i = 0; i <= 40; ++i) tr.values.push_back(u(rng) * std::pow(10.0, static_cast<int>(i % 20) - 10));
        trajectories.push_back(tr);
    }
    trajectories[0].values[3] = std::numeric_limits<double>::denorm_min();
    trajectories[0].values[4] = -0.0;
    // Shared start so all trials land on the same grid.
    for (auto& tr : trajectories) tr.grid.t0 = 0.7;
    std::stringstream buffer;
    io::write_trajectories(buffer, trajectories);
    const auto back = io::read_trajectories(buffer);
    REQUIRE(back.trajectories.size() == trajectories.size());
    for (std::size_t k = 0; k < trajectories.size(); ++k) {
        const auto& a = trajectories[k].values;
        const auto& b = back.trajectories[k].values;
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::bit_cast<std::uint64_t>(a[i]) == std::bit_cast<std::uint64_t>(b[i]));
        CHECK(back.trajectories[k].grid.t0 == trajectories[k].grid.t0);
    }
}

TEST_CASE("format_double round trips") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10000; ++i) {
        const double x = std::bit_cast<double>(rng());
        if (!std::isfinite(x)) continue;
        const std::string text = io::format_double(x);
        double y = 0.0;
        std::from_chars(text.data(), text.data() + text.size(), y);
        CHECK(y == x);
    }
}

TEST_CASE("Kac and binary CSV round trips") {
    KacTrajectory k{{0.0, 0.25, 4}, {0.0, 0.25, 0.0, -0.25, 0.0}, {1, -1, -1, 1, 1}};
    std::stringstream buffer;
    const std::vector<KacTrajectory> ks{k};
    io::write_kac_trajectories(buffer, ks);
    const auto back = io::read_kac_trajectories(buffer);
    REQUIRE(back.trajectories.size() == 1);
    CHECK(back.trajectories[0].x == k.x);
    CHECK(back.trajectories[0].s == k.s);

    std::vector<BinarySeries> series{{{0.0, 0.5, 3}, {1, -1, 1, 1}, 4}, {{0.0, 0.5, 3}, {-1, -1, 1, -1}, 9}};
    std::stringstream b2;
    io::write_binary_series(b2, series);
    const auto bs = io::read_binary_series(b2);
    REQUIRE(bs.size() == 2);
    CHECK(bs[1].q == series[1].q);
    CHECK(bs[1].trial_id == 9);

    std::istringstream bad("trial,t,q\n0,0,1\n0,1,0\n");
    CHECK_THROWS_AS(io::read_binary_series(bad), Error);
}

TEST_CASE("SVG plots") {
    const io::Curve curve{"k", {0.0, 1.0, 2.0}, {1.0, 1.5, 0.5}};
    const std::vector<io::Curve> one{curve};

    const std::string plain = io::render_svg_plot(one, {"K", "tau", "K", std::nullopt, ""});
    CHECK(plain.rfind("<svg", 0) == 0);
    CHECK(count(plain, "<polyline") == 1);
    CHECK(count(plain, "stroke-dasharray") == 0);

    io::PlotOptions opts{"K", "tau", "K", 1.0, "{\"seed\":3,\"note\":\"a<b & c\"}"};
    const std::string bounded = io::render_svg_plot(one, opts);
    CHECK(count(bounded, "stroke-dasharray") == 1);
    CHECK(bounded.find("a&lt;b &amp; c") != std::string::npos);
    CHECK(bounded == io::render_svg_plot(one, opts));

    const std::vector<io::Curve> two{curve, {"c", {0.0, 2.0}, {0.0, 1.0}}};
    CHECK(count(io::render_svg_plot(two, opts), "<polyline") == 2);

    try {
        io::render_svg_plot({}, opts);
        FAIL("expected empty-series rejection");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_input);
    }
    const std::vector<io::Curve> bad{{"nan", {0.0, 1.0}, {0.0, std::nan("")}}};
    CHECK_THROWS_AS(io::render_svg_plot(bad, opts), Error);
}

TEST_CASE("result JSON") {
    std::vector<BinarySeries> ones;
    for (std::int64_t i = 0; i < 4; ++i) ones.push_back({{0.0, 0.5, 6}, std::vector<std::int8_t>(7, 1), i});
    const LGResult r = lg_from_trials(ones, 0.5, 1.0, 2.0);
    const auto j = io::to_json(r);
    CHECK(j.at("k").get<double>() == 1.0);
    CHECK(j.at("verdict").get<std::string>() == "non-violating");
    const auto m = io::to_json(Moments{1.0, 0.5, 0.25});
    CHECK(m.at("variance").get<double>() == 0.25);
}
