#pragma once

#include <string>
#include <vector>

#include "rosa/edgeword.hpp"

namespace rosa::testhelpers {

// All palindromic words of the given length over {0, 2, ..., maxLetter}.
inline std::vector<Edgeword> palindromes(int n, int length, int maxLetter) {
    int half = (length + 1) / 2;
    int alphabet = maxLetter / 2 + 1;
    std::vector<Edgeword> out;
    std::vector<int> digits(half, 0);
    while (true) {
        Edgeword u{n, {}};
        for (int i = 0; i < half; ++i) u.letters.push_back(2 * digits[i]);
        for (int i = length - half - 1; i >= 0; --i) u.letters.push_back(2 * digits[i]);
        out.push_back(std::move(u));
        int pos = half - 1;
        while (pos >= 0 && digits[pos] == alphabet - 1) digits[pos--] = 0;
        if (pos < 0) break;
        digits[pos]++;
    }
    return out;
}

// Eligible for the counting criterion: every letter present, 2-almost-balanced.
inline bool criterion_eligible(const Edgeword& u) {
    return all_letters_present(u) && balance_constant(u) <= 2;
}

}  // namespace rosa::testhelpers
