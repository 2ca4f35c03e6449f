#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "qturn/word.hpp"

using namespace qturn;

namespace {

CyclicWord W(const char* s) { return CyclicWord::parse(s); }
Window win(const char* s) {
    auto l = oracle::letters(s);
    return {l[0], l[1], l[2]};
}

}  // namespace

TEST_CASE("parse accepts ascii, lower case and arrows") {
    CHECK(W("urdl").ascii() == "URDL");
    CHECK(W("↑→↓←").ascii() == "URDL");
    CHECK(W("U→d←").ascii() == "URDL");
    CHECK(W("URDL").unicode() == "↑→↓←");
}

TEST_CASE("parse errors carry the column") {
    try {
        CyclicWord::parse("URxL");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.column() == 3);
    }
    try {
        CyclicWord::parse("↑→?←");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(CyclicWord::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(CyclicWord::parse("URD"), std::invalid_argument);
}

TEST_CASE("is_allowed") {
    CHECK(is_allowed(W("URDL")));
    CHECK_FALSE(is_allowed(W("UDRL")));
    CHECK(is_allowed(W("URDRURDLDL")));
    CHECK_FALSE(is_allowed(W("UU")));
    // cyclic closing pair counts too
    CHECK_FALSE(is_allowed(W("URDLRU")));
}

TEST_CASE("ip_pair table against the plane-angle oracle") {
    CHECK(ip_pair(Letter::Down, Letter::Right).quarters() == 1);
    CHECK(ip_pair(Letter::Up, Letter::Right).quarters() == -1);
    CHECK(ip_pair(Letter::Left, Letter::Down).quarters() == 1);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Letter la = static_cast<Letter>(a), lb = static_cast<Letter>(b);
            if (is_vertical(la) == is_vertical(lb)) continue;
            CHECK(ip_pair(la, lb).quarters() == oracle::quarter_turns(la, lb));
        }
}

TEST_CASE("the positive pairs are exactly the forbidden pairs of conservative words") {
    std::set<std::pair<Letter, Letter>> plus;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Letter la = static_cast<Letter>(a), lb = static_cast<Letter>(b);
            if (is_vertical(la) != is_vertical(lb) && ip_pair(la, lb).quarters() == 1) plus.insert({la, lb});
        }
    std::set<std::pair<Letter, Letter>> forbidden{{Letter::Up, Letter::Left},
                                                   {Letter::Right, Letter::Up},
                                                   {Letter::Down, Letter::Right},
                                                   {Letter::Left, Letter::Down}};
    CHECK(plus == forbidden);
}

TEST_CASE("ip_path") {
    auto path = [](const char* s) {
        auto l = oracle::letters(s);
        return ip_path(l).str();
    };
    CHECK(path("URD") == "-1/2");
    CHECK(path("DRU") == "1/2");
    CHECK(path("URU") == "0");
}

TEST_CASE("ip_cyclic and symbolic_index") {
    CHECK(ip_cyclic(W("URDL")).str() == "-1");
    CHECK(ip_cyclic(W("URDRURDLDL")).str() == "-1");
    CHECK(ip_cyclic(W("URDR")).str() == "0");
    CHECK(symbolic_index(W("URDRURDLDL")) == 0);
    CHECK(symbolic_index(W("URDLURDL")) == -1);
    CHECK(symbolic_index(W("DRUL")) == 2);
    CHECK(symbolic_index(W("DRULDRUL")) == 3);
    // (D R U R): +1/4 +1/4 -1/4 -1/4, so the index is 1
    CHECK(symbolic_index(W("DRUR")) == 1);
    CHECK(symbolic_index(W("DRURDRUR")) == 1);
}

TEST_CASE("worked example: window contributions sum as in the hand computation") {
    // (-1/2 + 1/2 - 1/2 + 0 - 1/2) + 1 = 0
    CyclicWord w = W("URDRURDLDL");
    std::vector<long> q;
    for (const Window& m : sector_windows(w)) q.push_back(ip_path(m).quarters());
    CHECK(q == std::vector<long>{-2, 2, -2, 0, -2});
}

TEST_CASE("symbolic index matches the oracle for every alternating word with d <= 4") {
    for (std::size_t d = 1; d <= 4; ++d)
        for (const auto& l : oracle::all_alternating(d)) {
            CyclicWord w(l);
            REQUIRE(symbolic_index(w) == oracle::index_of(l));
            REQUIRE(ip_cyclic(w).is_integer());
        }
}

TEST_CASE("Quarter formatting and integer conversion") {
    CHECK(Quarter::from_quarters(-2).str() == "-1/2");
    CHECK(Quarter::from_quarters(3).str() == "3/4");
    CHECK(Quarter::from_quarters(0).str() == "0");
    CHECK(Quarter::from_quarters(-8).str() == "-2");
    CHECK(Quarter::from_quarters(6).denominator() == 2);
    CHECK(Quarter::from_quarters(6).numerator() == 3);
    CHECK(Quarter::from_quarters(8).to_integer() == 2);
    CHECK_THROWS_AS(Quarter::from_quarters(1).to_integer(), std::domain_error);
}

TEST_CASE("alpha_omega") {
    CHECK(alpha_omega(win("DRU")) == AlphaOmega{Limit::Zero, Limit::Zero});
    CHECK(alpha_omega(win("URD")) == AlphaOmega{Limit::Infinity, Limit::Infinity});
    CHECK(alpha_omega(win("DLD")) == AlphaOmega{Limit::Zero, Limit::Infinity});
    CHECK(alpha_omega(win("URU")) == AlphaOmega{Limit::Infinity, Limit::Zero});
}

TEST_CASE("sector types") {
    auto codes = [](const char* s) {
        std::string out;
        for (SectorType t : sector_types(W(s))) out += sector_code(t);
        return out;
    };
    CHECK(codes("URDRURDLDL") == "HEHIH");
    CHECK(codes("URDL") == "HH");
    CHECK(codes("DRUL") == "EE");
    // windows anchor on the first vertical letter whatever the stored rotation
    CHECK(codes("RURDLDLURD") == codes("URDLDLURDR"));
}

TEST_CASE("sector type follows the window's quarter-turn sum") {
    for (std::size_t d = 1; d <= 3; ++d)
        for (const auto& l : oracle::all_alternating(d)) {
            if (!is_vertical(l[0])) continue;
            CyclicWord w(l);
            auto types = sector_types(w);
            for (std::size_t k = 0; k < w.d(); ++k) {
                long q = oracle::window_quarters(l[2 * k], l[2 * k + 1], l[(2 * k + 2) % l.size()]);
                SectorType want = q < 0 ? SectorType::Hyperbolic : q > 0 ? SectorType::Elliptic : SectorType::Indifferent;
                REQUIRE(types[k] == want);
            }
        }
}

TEST_CASE("petals") {
    auto kinds = [](const char* s) {
        std::multiset<std::pair<std::size_t, PetalKind>> out;
        for (const Petal& p : detect_petals(W(s))) out.insert({p.position, p.kind});
        return out;
    };
    auto count = [](const char* s, PetalKind k) {
        std::size_t n = 0;
        for (const Petal& p : detect_petals(W(s))) n += p.kind == k;
        return n;
    };
    // worked example: exactly one repulsive petal at infinity, on the sub-word at position 5
    CHECK(count("URDRURDLDL", PetalKind::RepulsiveAtInfinity) == 1);
    CHECK(kinds("URDRURDLDL").count({5, PetalKind::RepulsiveAtInfinity}) == 1);
    CHECK(count("DRULUR", PetalKind::AttractiveAtZero) == 1);
    CHECK(kinds("DRULUR").count({1, PetalKind::AttractiveAtZero}) == 1);
    // every horizontal-vertical-horizontal sub-word is scanned cyclically:
    // the saddle-like (U R D L) carries one petal of each kind at infinity
    CHECK(kinds("URDL") == std::multiset<std::pair<std::size_t, PetalKind>>{
                               {1, PetalKind::RepulsiveAtInfinity}, {3, PetalKind::AttractiveAtInfinity}});
    CHECK(detect_petals(W("URDR")).size() == 0);
}

TEST_CASE("petal scan agrees with a direct sub-word search") {
    const std::map<std::string, PetalKind> table{{"RUL", PetalKind::AttractiveAtZero},
                                                 {"LDR", PetalKind::RepulsiveAtZero},
                                                 {"RDL", PetalKind::RepulsiveAtInfinity},
                                                 {"LUR", PetalKind::AttractiveAtInfinity}};
    for (std::size_t d = 1; d <= 3; ++d)
        for (const auto& l : oracle::all_alternating(d)) {
            CyclicWord w(l);
            std::multiset<std::pair<std::size_t, PetalKind>> want, got;
            for (std::size_t i = 0; i < l.size(); ++i) {
                std::string s{oracle::code(l[i]), oracle::code(l[(i + 1) % l.size()]), oracle::code(l[(i + 2) % l.size()])};
                auto it = table.find(s);
                if (it != table.end()) want.insert({i, it->second});
            }
            for (const Petal& p : detect_petals(w)) got.insert({p.position, p.kind});
            REQUIRE(got == want);
        }
}

TEST_CASE("conservative words") {
    CHECK(is_conservative_word(W("URDLURDL")));
    CHECK_FALSE(is_conservative_word(W("URDR")));
    CHECK(is_conservative_word(W("URDL")));
    CHECK(is_conservative_word(W("DLUR")));
    CHECK_FALSE(is_conservative_word(W("URDRURDLDL")));
}

TEST_CASE("conservative characterizations agree exhaustively up to d = 6") {
    for (std::size_t d = 1; d <= 6; ++d) {
        std::size_t conservative = 0;
        for (const CyclicWord& w : enumerate_allowed_raw(d)) {
            bool a = is_conservative_word(w);
            auto types = sector_types(w);
            bool b = std::all_of(types.begin(), types.end(), [](SectorType t) { return t == SectorType::Hyperbolic; });
            bool c = !has_forbidden_pair(w);
            // periodic (U R D L) up to rotation, built directly
            bool e = false;
            if (d % 2 == 0) {
                std::string period;
                for (std::size_t i = 0; i < d / 2; ++i) period += "URDL";
                e = oracle::canonical(w.letters()) == oracle::canonical(oracle::letters(period));
            }
            REQUIRE(a == b);
            REQUIRE(a == c);
            REQUIRE(a == e);
            conservative += a;
        }
        // the two rotations (U R D L ...) and (D L U R ...) start on a vertical letter
        CHECK(conservative == (d % 2 == 0 ? 2u : 0u));
    }
}

TEST_CASE("module lower bound") {
    CHECK(module_lower_bound(3) == 4);
    CHECK(module_lower_bound(1) == 0);
    CHECK(module_lower_bound(0) == 2);
    CHECK(module_lower_bound(-1) == 4);
}

TEST_CASE("enumeration") {
    CHECK(enumerate_allowed_raw(1).size() == 4);
    CHECK(enumerate_allowed(1).size() == 4);
    CHECK(enumerate_allowed_raw(2).size() == 16);
    CHECK(enumerate_allowed_raw(3).size() == 64);
    for (std::size_t d = 1; d <= 4; ++d) {
        std::set<std::string> got;
        for (const CyclicWord& w : enumerate_allowed(d)) {
            CHECK(w.ascii() == oracle::canonical(w.letters()));
            got.insert(w.ascii());
        }
        CHECK(got == oracle::classes(d));
        CHECK(got.size() == enumerate_allowed(d).size());
    }
}

TEST_CASE("rotation invariance") {
    CyclicWord w = W("URDRURDLDL");
    for (long k = 0; k < 10; ++k) {
        CyclicWord r = w.rotated(k);
        CHECK(r == w);
        CHECK(r.canonical().same_indexation(w.canonical()));
        CHECK(symbolic_index(r) == symbolic_index(w));
        CHECK(is_conservative_word(r) == is_conservative_word(w));
        CHECK(detect_petals(r).size() == detect_petals(w).size());
    }
    CHECK_FALSE(W("URDL") == W("ULDR"));
    CHECK(W("RDLU").vertical_first().same_indexation(W("DLUR")));
}

TEST_CASE("reversed and flipped word keeps the distance of the index from 1") {
    for (std::size_t d = 1; d <= 4; ++d)
        for (const CyclicWord& w : enumerate_allowed(d)) {
            CyclicWord v = inverse_word(w);
            REQUIRE(is_allowed(v));
            REQUIRE(symbolic_index(v) == 2 - symbolic_index(w));
            REQUIRE(inverse_word(v) == w);
        }
    CHECK(inverse_word(W("URDL")).ascii() == "RULD");
}
