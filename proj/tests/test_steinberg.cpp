#include <catch2/catch_amalgamated.hpp>

#include "untwist/steinberg.hpp"

using namespace untwist;

TEST_CASE("words parse, canonicalize and print") {
    SteinbergWord w = SteinbergWord::parse("V0,1,V2");
    REQUIRE(w.labels == std::vector<std::string>{"V0", "1", "V2"});
    REQUIRE(w.str() == "V0,1,V2");
    REQUIRE(SteinbergWord::parse("V0,1,1").labels == std::vector<std::string>{"V0"});
    REQUIRE(SteinbergWord().str() == "1");
    REQUIRE(w.nontrivial_count() == 2);
}

TEST_CASE("twist prepends trivial levels") {
    SteinbergWord w = SteinbergWord::parse("V0,V1");
    REQUIRE(twist(w, 2).labels ==
            std::vector<std::string>{"1", "1", "V0", "V1"});
    REQUIRE(twist(w, 0) == w);
}

TEST_CASE("orbit of V0 (x) V2^(2) at u = 5, in action order") {
    SteinbergWord w = SteinbergWord::parse("V0,1,V2");
    auto orbit = orbit_mod_u(w, 5);
    REQUIRE(orbit.size() == 5);
    REQUIRE(orbit[0].str() == "V0,1,V2");
    REQUIRE(orbit[1].str() == "1,V0,1,V2");
    REQUIRE(orbit[2].str() == "1,1,V0,1,V2");
    REQUIRE(orbit[3].str() == "V2,1,1,V0");
    REQUIRE(orbit[4].str() == "1,V2,1,1,V0");
}

TEST_CASE("orbit length divides u and preserves the factor multiset") {
    for (std::size_t u : {1, 2, 4, 5, 6, 12}) {
        for (const char* text : {"V", "V,W", "V,1,W"}) {
            SteinbergWord w = SteinbergWord::parse(text);
            if (w.length() > u) continue;
            auto orbit = orbit_mod_u(w, u);
            REQUIRE(u % orbit.size() == 0);
            for (const auto& rep : orbit)
                REQUIRE(rep.nontrivial_count() == w.nontrivial_count());
        }
    }
    // a fully periodic word has a short orbit
    REQUIRE(orbit_mod_u(SteinbergWord::parse("V,V"), 2).size() == 1);
}

TEST_CASE("q-shifts split the external twist off each orbit representative") {
    SteinbergWord w = SteinbergWord::parse("V0,1,V2");
    auto shifts = q_shifts(w, 5);
    REQUIRE(shifts.size() == 5);
    SteinbergWord v = w;                                // V
    SteinbergWord ww = SteinbergWord::parse("V2,1,1,V0");  // W
    REQUIRE(shifts[0] == QShift{v, 0});
    REQUIRE(shifts[1] == QShift{v, 1});
    REQUIRE(shifts[2] == QShift{v, 2});
    REQUIRE(shifts[3] == QShift{ww, 0});
    REQUIRE(shifts[4] == QShift{ww, 1});
    for (const auto& s : shifts) REQUIRE(s.full().leading_trivial() == s.twist_level);
}

TEST_CASE("find_good_shift returns the first representative with the margins") {
    SteinbergWord w = SteinbergWord::parse("V0,1,V2");
    auto good = find_good_shift(w, 5, 0, 1);
    REQUIRE(good.has_value());
    REQUIRE(good->str() == "V0,1,V2");  // 2 trailing trivial slots in the window
    auto head2 = find_good_shift(w, 5, 2, 0);
    REQUIRE(head2.has_value());
    REQUIRE(head2->str() == "1,1,V0,1,V2");
    REQUIRE_FALSE(find_good_shift(w, 5, 3, 3).has_value());
}

TEST_CASE("words longer than the window are rejected") {
    REQUIRE_THROWS_AS(orbit_mod_u(SteinbergWord::parse("V,W,X"), 2), Error);
}
