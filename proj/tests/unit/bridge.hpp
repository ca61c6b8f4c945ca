#pragma once

#include <vector>

#include "hurwitz/perm.hpp"
#include "oracles.hpp"

namespace testing_bridge {

inline oracle::Perm to_oracle(const hurwitz::Permutation& p) {
    oracle::Perm out(p.degree());
    for (int i = 0; i < p.degree(); ++i) out[i] = p.image0(i);
    return out;
}

inline std::vector<oracle::Perm> to_oracle(const std::vector<hurwitz::Permutation>& ps) {
    std::vector<oracle::Perm> out;
    for (const auto& p : ps) out.push_back(to_oracle(p));
    return out;
}

inline hurwitz::Permutation from_oracle(const oracle::Perm& p) {
    std::vector<int> images;
    for (int x : p) images.push_back(x + 1);
    return hurwitz::Permutation::from_images(images);
}

}  // namespace testing_bridge
