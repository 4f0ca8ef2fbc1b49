#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "doctest.h"
#include "rosa/edgeword.hpp"

using namespace rosa;

namespace {

// Independent billiard oracle: merge the crossing times (k-1/2)/cos(i*pi/n)
// in plain double precision.
Edgeword billiard_oracle(int n, int L) {
    struct Event {
        double t;
        int family;
        long long k;
        bool operator>(const Event& o) const { return t > o.t; }
    };
    std::priority_queue<Event, std::vector<Event>, std::greater<>> q;
    for (int i = 0; i < n / 2; ++i) q.push({0.5 / std::cos(i * M_PI / n), i, 1});
    Edgeword u{n, {}};
    for (int step = 0; step < L; ++step) {
        Event e = q.top();
        q.pop();
        u.letters.push_back(2 * e.family);
        q.push({(e.k + 0.5) / std::cos(e.family * M_PI / n), e.family, e.k + 1});
    }
    return u;
}

}  // namespace

TEST_CASE("edgeword validation and serialization") {
    CHECK(edgeword_to_string(Edgeword{12, {0, 2, 10, 4}}) == "02(10)4");
    CHECK(edgeword_from_string(12, "02(10)4") == Edgeword{12, {0, 2, 10, 4}});
    CHECK(edgeword_from_string(4, "020020") == Edgeword{4, {0, 2, 0, 0, 2, 0}});
    CHECK_THROWS_AS(edgeword_from_string(4, "03"), PreconditionFailed);
    CHECK_THROWS_AS(edgeword_from_string(4, "04"), PreconditionFailed);
    CHECK_THROWS_AS(edgeword_from_string(12, "(10"), PreconditionFailed);
    CHECK_THROWS_AS(edgeword_from_string(4, "0x2"), PreconditionFailed);
}

TEST_CASE("Sub Rosa edgewords match the published small cases") {
    CHECK(edgeword_to_string(subrosa_edgeword(4)) == "020020");
    CHECK(edgeword_to_string(subrosa_edgeword(6)) == "024020020420");
    CHECK(edgeword_to_string(subrosa_edgeword(8)) == "02460204200240206420");
}

TEST_CASE("Sub Rosa edgewords are palindromes with counts 2(n/2 - i)") {
    for (int n = 4; n <= 40; n += 2) {
        Edgeword u = subrosa_edgeword(n);
        validate_edgeword(u);
        CHECK(is_palindrome(u));
        AbelianVector ab = abelianize(u);
        for (int i = 0; i < n / 2; ++i) CHECK(ab[i] == 2 * (n / 2 - i));
        // letter counts are strictly decreasing in the letter, like gamma
        for (int i = 0; i + 1 < n / 2; ++i) CHECK(ab[i] > ab[i + 1]);
    }
}

TEST_CASE("frequency vector is the cosine profile") {
    auto g = frequency_vector(8);
    REQUIRE(g.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(std::fabs(g[i] - std::cos(i * M_PI / 8)) < 1e-12);
    CHECK(std::is_sorted(g.rbegin(), g.rend()));
}

TEST_CASE("billiard prefixes match the published small cases") {
    CHECK(edgeword_to_string(billiard_prefix(4, 7)) == "0202002");
    CHECK(edgeword_to_string(billiard_prefix(6, 9)) == "024020240");
}

TEST_CASE("billiard prefix agrees with the double-precision merge oracle") {
    for (int n : {4, 6, 8, 10, 12}) CHECK(billiard_prefix(n, 2000) == billiard_oracle(n, 2000));
}

TEST_CASE("candidate edgewords are palindromes; P_3(4) = 020020") {
    CHECK(edgeword_to_string(candidate_edgeword(4, 3)) == "020020");
    for (int n : {4, 6, 8})
        for (int i = 1; i <= 12; ++i) {
            Edgeword u = candidate_edgeword(n, i);
            CHECK(static_cast<int>(u.letters.size()) == 2 * i);
            CHECK(is_palindrome(u));
            validate_edgeword(u);
        }
}

TEST_CASE("counting functions form a Galois connection") {
    Edgeword u = edgeword_from_string(6, "024020240024");
    int L = static_cast<int>(u.letters.size());
    for (int j = 0; j <= 4; j += 2) {
        for (int x = 0; x <= L; ++x) {
            int y = counting(u, j, x);
            int inv = counting_inverse(u, j, y);
            CHECK(inv <= x);  // shortest prefix reaching the same count
            if (y > 0) CHECK(counting(u, j, inv) == y);
        }
        for (int y = 0; y <= counting(u, j, L) + 2; ++y) {
            int x = counting_inverse(u, j, y);
            if (x == kInfinity) {
                CHECK(y > counting(u, j, L));
            } else {
                CHECK(counting(u, j, x) >= y);
                if (x > 0) CHECK(counting(u, j, x - 1) < y);
            }
        }
    }
    CHECK(counting_inverse(u, 0, 0) == 0);
    CHECK_THROWS_AS(counting(u, 0, L + 1), PreconditionFailed);
    CHECK_THROWS_AS(counting_inverse(u, 0, -1), PreconditionFailed);
}

TEST_CASE("balance constant on fixed examples") {
    CHECK(balance_constant(edgeword_from_string(4, "2200")) == 2);
    CHECK(balance_constant(edgeword_from_string(4, "00")) == 0);
    CHECK(balance_constant(edgeword_from_string(4, "0202")) == 1);
    CHECK(balance_constant(edgeword_from_string(4, "020020")) == 1);
    CHECK(balance_constant(edgeword_from_string(6, "024020020420")) <= 2);
}

TEST_CASE("billiard prefixes are 1-almost-balanced") {
    for (int n : {4, 6, 8, 10, 12}) {
        Edgeword u = billiard_prefix(n, 3000);
        CHECK(balance_constant(u) <= 1);
    }
}

TEST_CASE("all_letters_present") {
    CHECK(all_letters_present(edgeword_from_string(4, "02")));
    CHECK(!all_letters_present(edgeword_from_string(4, "00")));
    CHECK(!all_letters_present(edgeword_from_string(6, "0202")));
}
