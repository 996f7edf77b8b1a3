#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "hgr/error.hpp"
#include "hgr/replay_io.hpp"
#include "synthetic.hpp"

using namespace hgr;

namespace {

std::string landmarks_json(std::size_t count) {
    std::string s = "[";
    for (std::size_t i = 0; i < count; ++i) {
        if (i) s += ",";
        s += "[0.1," + std::to_string(0.01 * double(i)) + ",-0.02]";
    }
    return s + "]";
}

std::string record(const std::string& id, int db, int dr, std::size_t lms = 21) {
    return R"({"sample_id": ")" + id + R"(", "db": )" + std::to_string(db) + R"(, "dr": )" + std::to_string(dr) +
           R"(, "hands": [{"handedness": "Left", "score": 0.93, "landmarks": )" + landmarks_json(lms) + "}]}";
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    const auto p = std::filesystem::temp_directory_path() / ("hgr_test_" + name);
    std::ofstream(p) << contents;
    return p;
}

}  // namespace

TEST_CASE("empty file loads an empty store") {
    CHECK(load_replay(temp_file("empty.jsonl", "")).empty());
}

TEST_CASE("one record parses and round-trips") {
    const auto p = temp_file("one.jsonl", record("img_001", 30, 0) + "\n");
    const ReplayStore store = load_replay(p);
    REQUIRE(store.size() == 1);
    const auto& f = store.lookup({"img_001", 30, 0});
    REQUIRE(f.hands.size() == 1);
    CHECK(f.hands[0].handedness == Handedness::Left);
    CHECK(f.hands[0].score == 0.93);
    CHECK(f.hands[0].landmarks[20].y == doctest::Approx(0.2));

    std::stringstream ss;
    save_replay(store, ss);
    ReplayStore again;
    load_replay_into(again, ss, "<mem>");
    CHECK(again.records() == store.records());
}

TEST_CASE("twenty landmarks is a format error naming the line") {
    const auto p = temp_file("bad.jsonl", record("a", 0, 0) + "\n" + record("b", 0, 0, 20) + "\n");
    try {
        load_replay(p);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
}

TEST_CASE("schema violations") {
    const char* bad[] = {
        "not json",
        R"([1,2,3])",
        R"({"db": 0, "dr": 0, "hands": []})",
        R"({"sample_id": 5, "db": 0, "dr": 0, "hands": []})",
        R"({"sample_id": "a", "db": 0.5, "dr": 0, "hands": []})",
        R"({"sample_id": "a", "db": 0, "dr": 0})",
        R"({"sample_id": "a", "db": 0, "dr": 0, "hands": [{"handedness": "Middle", "landmarks": []}]})",
    };
    for (const char* line : bad) CHECK_THROWS_AS(parse_replay_line(line, "t", 1), FormatError);
}

TEST_CASE("no-detection record and duplicate warning") {
    const std::string empty = R"({"sample_id": "a", "db": 0, "dr": 0, "hands": []})";
    const auto p = temp_file("dup.jsonl", empty + "\n" + record("a", 0, 0) + "\n");
    LoadDiagnostics diag;
    const ReplayStore store = load_replay(p, &diag);
    CHECK(store.size() == 1);
    CHECK(store.lookup({"a", 0, 0}).hands.size() == 1);
    CHECK(diag.warnings.size() == 1);
}

TEST_CASE("format/parse round trip on random frames") {
    std::mt19937_64 gen(21);
    for (int i = 0; i < 50; ++i) {
        ReplayRecord rec;
        rec.key = {"s" + std::to_string(i), int(gen() % 121) - 60, int(gen() % 61) - 30};
        const int hands = int(gen() % 3);
        for (int h = 0; h < hands; ++h)
            rec.frame.hands.push_back(
                hgr::testing::random_hand(gen, h == 0 ? Handedness::Left : Handedness::Right));
        const auto back = parse_replay_line(format_replay_line(rec));
        CHECK(back.key == rec.key);
        CHECK(back.frame == rec.frame);
    }
}

TEST_CASE("sequence reader groups stages and picks the first success") {
    std::mt19937_64 gen(3);
    LandmarkFrame hand;
    hand.hands.push_back(hgr::testing::random_hand(gen, Handedness::Right));

    std::stringstream ss;
    auto put = [&](std::uint64_t fid, int db, bool with_hand) {
        ReplayRecord r{{"vid", db, 0}, with_hand ? hand : LandmarkFrame{}, true};
        r.frame.frame_id = fid;
        ss << format_replay_line(r) << "\n";
    };
    put(0, 0, true);
    put(1, 0, false);
    put(1, 30, true);
    put(2, 0, false);
    put(2, 30, false);

    SequenceReader reader(ss, builtin_setting(2));
    auto f0 = reader.next();
    auto f1 = reader.next();
    auto f2 = reader.next();
    CHECK_FALSE(reader.next().has_value());
    REQUIRE(f0);
    REQUIRE(f1);
    REQUIRE(f2);
    CHECK(f0->frame_id == 0);
    CHECK(f1->frame_id == 1);
    CHECK(f1->hands == hand.hands);
    CHECK(f2->empty());
}

TEST_CASE("write_sequence/load_sequence round trip sorted by frame id") {
    std::mt19937_64 gen(5);
    std::vector<LandmarkFrame> frames;
    for (std::uint64_t i : {3u, 1u, 2u}) {
        LandmarkFrame f;
        f.frame_id = i;
        f.hands.push_back(hgr::testing::random_hand(gen, Handedness::Left));
        frames.push_back(f);
    }
    std::stringstream ss;
    write_sequence(frames, "seq", ss);
    const auto p = temp_file("seq.jsonl", ss.str());
    const auto loaded = load_sequence(p, builtin_setting(1));
    REQUIRE(loaded.size() == 3);
    CHECK(loaded[0].frame_id == 1);
    CHECK(loaded[1].frame_id == 2);
    CHECK(loaded[2].frame_id == 3);
    CHECK(loaded[0].hands == frames[1].hands);
}
