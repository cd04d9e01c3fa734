#include <filesystem>

#include "doctest.h"
#include "hplus/errors.hpp"
#include "hplus/report_io.hpp"
#include "hplus/sequence_gallery.hpp"

using namespace hplus;

TEST_SUITE("report_io") {

TEST_CASE("sequence files in all three forms") {
    const PointSequence a = parse_sequence_json(R"({"label": "c", "points": [[0.1, 0.2], [-0.5, 0.0]]})");
    CHECK(a.label() == "c");
    REQUIRE(a.size() == 2);
    CHECK(a[0].x() == doctest::Approx(0.1));
    const PointSequence b = parse_sequence_json(R"({"polar": [[0.5, 3.0]]})", "fallback");
    CHECK(b.label() == "fallback");
    CHECK(b[0].modulus() == doctest::Approx(0.5));
    const PointSequence c = parse_sequence_json(R"({"depth_polar": [[1e-30, 1.0]]})");
    CHECK(c[0].depth() == 1e-30);
}

TEST_CASE("bad sequence files") {
    CHECK_THROWS_AS(parse_sequence_json("{not json"), InputError);
    CHECK_THROWS_AS(parse_sequence_json(R"({"label": "x"})"), InputError);
    CHECK_THROWS_AS(parse_sequence_json(R"({"points": [[0.1]]})"), InputError);
    try {
        parse_sequence_json("{\"points\": [\n  [0.1, 0.2],\n  [0.9, 0.9]\n]}");
        FAIL("expected an error");
    } catch (const InputError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("point 1") != std::string::npos);
        CHECK(msg.find("line 3") != std::string::npos);
    }
    try {
        parse_sequence_json("{\"points\": [\n  [0.1, 0.2],\n  [0.3, 0.0],\n  [0.1, 0.2]\n]}");
        FAIL("expected an error");
    } catch (const InputError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("point 2 (line 4)") != std::string::npos);
        CHECK(msg.find("point 0 (line 2)") != std::string::npos);
    }
}

TEST_CASE("sequence round trip") {
    for (const auto& s : {radial_geometric(5), counterexample_pair(3).combined}) {
        const PointSequence back = parse_sequence_json(sequence_to_json(s));
        REQUIRE(back.size() == s.size());
        CHECK(back.label() == s.label());
        for (std::size_t n = 0; n < s.size(); ++n) {
            CHECK(back[n].arg() == doctest::Approx(s[n].arg()));
            CHECK(back[n].depth() == doctest::Approx(s[n].depth()).epsilon(1e-9));
        }
        CHECK(sequence_to_json(s) == sequence_to_json(s));
    }
}

TEST_CASE("measures and values") {
    const BoundaryMeasure mu = parse_measure_json(R"({"atoms": [[0.0, 1.0], [3.0, 0.5]]})");
    CHECK(mu.total_mass() == doctest::Approx(1.5));
    CHECK(parse_measure_json(measure_to_json(mu)).atoms().size() == 2);
    CHECK_THROWS_AS(parse_measure_json(R"({"atoms": [[0.0, -1.0]]})"), InputError);
    CHECK(parse_values_json("[1, 2.5]") == std::vector<double>{1.0, 2.5});
    CHECK(parse_values_json(R"({"values": [3]})") == std::vector<double>{3.0});
    CHECK_THROWS_AS(parse_values_json(R"({"v": 1})"), InputError);
}

TEST_CASE("CSV quoting and numbers") {
    CsvTable t({"a", "b"});
    t.add_row({"x,y", "say \"hi\""});
    t.add_row({format_number(0.1), format_number(1e-300)});
    CHECK(t.to_string() == "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n0.1,1e-300\n");
    CHECK_THROWS(t.add_row({"only one"}));
}

TEST_CASE("atomic writes") {
    const auto dir = std::filesystem::temp_directory_path() / "hplus_io_test";
    std::filesystem::remove_all(dir);
    const auto path = dir / "sub" / "f.txt";
    write_file_atomic(path, "one");
    write_file_atomic(path, "two");
    CHECK(read_text_file(path) == "two");
    CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("SVG layers") {
    const PointSequence s = radial_geometric(3);
    SvgLayers layers;
    layers.bands = {ArcSet::from_arc(0.5, 1.0), ArcSet(), ArcSet::full()};
    layers.boxes = {CarlesonBox::over(s[0])};
    const std::string svg = disc_svg(s, layers);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("class=\"disc\"") != std::string::npos);
    std::size_t bands = 0;
    for (auto at = svg.find("class=\"band\""); at != std::string::npos; at = svg.find("class=\"band\"", at + 1)) ++bands;
    CHECK(bands == 2);
    CHECK(svg.find("</svg>") != std::string::npos);
}

}  // TEST_SUITE
