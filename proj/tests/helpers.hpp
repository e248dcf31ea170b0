#pragma once
// Compact fixture notation: "bca" is the ranking b > c > a over the canonical
// axis a, b, c, ...

#include <initializer_list>
#include <string_view>
#include <utility>
#include <vector>

#include "spdiff/core.hpp"

namespace fx {

inline spdiff::Ranking R(std::string_view letters) {
    std::vector<spdiff::Candidate> order;
    for (char ch : letters) order.push_back(ch - 'a');
    return spdiff::Ranking(order);
}

/// {{count, "abc"}, ...}
inline spdiff::Profile P(std::initializer_list<std::pair<int, std::string_view>> groups) {
    int m = static_cast<int>(groups.begin()->second.size());
    spdiff::Profile p(m);
    for (const auto& [count, letters] : groups) p.add(R(letters), count);
    return p;
}

}  // namespace fx
