#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "rosa/algebraic.hpp"
#include "rosa/errors.hpp"
#include "rosa/geometry.hpp"

namespace rosa {

// Word over the alphabet A_n = {0, 2, ..., n-2}.
struct Edgeword {
    int n = 4;
    std::vector<int> letters;

    bool operator==(const Edgeword&) const = default;
};

inline void validate_edgeword(const Edgeword& u) {
    require_even_n(u.n);
    for (int l : u.letters)
        if (l < 0 || l > u.n - 2 || l % 2 != 0)
            throw PreconditionFailed("letter outside alphabet {0,2,...,n-2}");
}

inline bool is_palindrome(const Edgeword& u) {
    return std::equal(u.letters.begin(), u.letters.end(), u.letters.rbegin());
}

// "02(10)4" style: single digits plain, letters >= 10 parenthesized.
inline std::string edgeword_to_string(const Edgeword& u) {
    std::string s;
    for (int l : u.letters) {
        if (l < 10)
            s += static_cast<char>('0' + l);
        else
            s += "(" + std::to_string(l) + ")";
    }
    return s;
}

inline Edgeword edgeword_from_string(int n, const std::string& s) {
    Edgeword u{n, {}};
    for (size_t i = 0; i < s.size();) {
        if (s[i] == '(') {
            size_t close = s.find(')', i);
            if (close == std::string::npos) throw PreconditionFailed("unclosed '(' in edgeword");
            u.letters.push_back(std::stoi(s.substr(i + 1, close - i - 1)));
            i = close + 1;
        } else if (s[i] >= '0' && s[i] <= '9') {
            u.letters.push_back(s[i] - '0');
            ++i;
        } else {
            throw PreconditionFailed(std::string("bad edgeword character '") + s[i] + "'");
        }
    }
    validate_edgeword(u);
    return u;
}

// Occurrence counts: entry i = number of occurrences of letter 2i.
using AbelianVector = std::vector<long long>;

inline AbelianVector abelianize(const Edgeword& u) {
    AbelianVector counts(u.n / 2, 0);
    for (int l : u.letters) counts[l / 2]++;
    return counts;
}

// Optimal frequency vector gamma = (cos(i*pi/n))_{0 <= i < n/2}.
inline std::vector<double> frequency_vector(int n) {
    require_even_n(n);
    std::vector<double> g(n / 2);
    for (int i = 0; i < n / 2; ++i) g[i] = std::cos(i * M_PI / n);
    return g;
}

// Sigma(n) = h . reverse(h) with h = s(n) rev(s(2)) rev(s(4)) ... rev(s(n-2)),
// where s(k) = 0 2 4 ... (k-2).
inline Edgeword subrosa_edgeword(int n) {
    require_even_n(n);
    std::vector<int> h;
    for (int l = 0; l <= n - 2; l += 2) h.push_back(l);
    for (int k = 2; k <= n - 2; k += 2)
        for (int l = k - 2; l >= 0; l -= 2) h.push_back(l);
    Edgeword u{n, h};
    u.letters.insert(u.letters.end(), h.rbegin(), h.rend());
    return u;
}

// First L letters of the billiard word w: crossings of the ray
// span(gamma) + (1/2,...,1/2) with hyperplanes x.e_i = k, k >= 1, at
// parameter t = (k - 1/2)/cos(i*pi/n); family i emits letter 2i.
// Crossing ties are impossible by the trigonometric independence of the
// gamma entries; compare_exact raises rather than tie-break.
inline Edgeword billiard_prefix(int n, int L) {
    require_even_n(n);
    if (L < 0) throw PreconditionFailed("negative length");
    int families = n / 2;
    std::vector<long long> next(families, 1);  // next hyperplane index k per family
    std::vector<AlgebraicReal> cosv;
    for (int i = 0; i < families; ++i) cosv.push_back(AlgebraicReal::cos_pi(i, n));
    Edgeword u{n, {}};
    u.letters.reserve(L);
    for (int step = 0; step < L; ++step) {
        int best = 0;
        for (int i = 1; i < families; ++i) {
            // t_i < t_best  <=>  (2k_i - 1) cos_best < (2k_best - 1) cos_i
            auto lhs = AlgebraicReal::rational(2 * next[i] - 1) * cosv[best];
            auto rhs = AlgebraicReal::rational(2 * next[best] - 1) * cosv[i];
            if (compare_exact(lhs, rhs) == Ordering::Less) best = i;
        }
        u.letters.push_back(2 * best);
        next[best]++;
    }
    return u;
}

// P_i = pref_i(w) . reverse(pref_i(w)).
inline Edgeword candidate_edgeword(int n, int i) {
    Edgeword u = billiard_prefix(n, i);
    u.letters.insert(u.letters.end(), u.letters.rbegin(), u.letters.rend());
    return u;
}

inline constexpr int kInfinity = std::numeric_limits<int>::max();

// f_j(x): occurrences of letter j among the first x letters.
inline int counting(const Edgeword& u, int j, int x) {
    if (x < 0 || x > static_cast<int>(u.letters.size()))
        throw PreconditionFailed("counting: prefix length out of range");
    return static_cast<int>(std::count(u.letters.begin(), u.letters.begin() + x, j));
}

// f_j^{-1}(y): length of the shortest prefix with at least y occurrences of
// j, or kInfinity when no prefix suffices.
inline int counting_inverse(const Edgeword& u, int j, int y) {
    if (y < 0) throw PreconditionFailed("counting_inverse: negative count");
    if (y == 0) return 0;
    int seen = 0;
    for (size_t x = 0; x < u.letters.size(); ++x) {
        if (u.letters[x] == j && ++seen >= y) return static_cast<int>(x) + 1;
    }
    return kInfinity;
}

// Smallest k such that u is k-almost-balanced, with letter 2i1 counted as
// more frequent than 2i2 when i1 < i2: over every factor v and every such
// pair, |v|_{2i1} - |v|_{2i2} >= -k.  Equals the maximum drawdown of the
// running difference of prefix counts.
inline int balance_constant(const Edgeword& u) {
    validate_edgeword(u);
    int half = u.n / 2;
    int L = static_cast<int>(u.letters.size());
    int k = 0;
    for (int i1 = 0; i1 < half; ++i1)
        for (int i2 = i1 + 1; i2 < half; ++i2) {
            int g = 0, peak = 0;  // g = f_{2i1}(x) - f_{2i2}(x); peak = max so far
            for (int x = 0; x < L; ++x) {
                if (u.letters[x] == 2 * i1) ++g;
                if (u.letters[x] == 2 * i2) --g;
                peak = std::max(peak, g);
                k = std::max(k, peak - g);
            }
        }
    return k;
}

inline bool all_letters_present(const Edgeword& u) {
    auto ab = abelianize(u);
    return std::all_of(ab.begin(), ab.end(), [](long long c) { return c > 0; });
}

}  // namespace rosa
