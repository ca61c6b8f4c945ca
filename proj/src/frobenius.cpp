#include "hurwitz/frobenius.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "hurwitz/errors.hpp"

namespace hurwitz {

std::vector<Partition> partitions(int n) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int rest, int max_part) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

namespace {

/// A partition as a beta-set (first-column hook lengths), the convenient form
/// for removing rim hooks: a rim hook of length k is a bead moved k places
/// down onto an empty position.
std::vector<int> beta_set(const Partition& lambda) {
    const int m = static_cast<int>(lambda.size());
    std::vector<int> beta(m);
    for (int i = 0; i < m; ++i) beta[i] = lambda[i] + (m - 1 - i);
    return beta;
}

long long mn_rec(std::vector<int>& beta, const Partition& mu, std::size_t k,
                 std::map<std::pair<std::vector<int>, std::size_t>, long long>& memo) {
    if (k == mu.size()) return 1;
    const auto key = std::make_pair(beta, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const int len = mu[k];
    long long total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        const int target = beta[i] - len;
        if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        // Sign = (-1)^(number of beads strictly between target and beta[i]).
        int between = 0;
        for (int b : beta) {
            if (b > target && b < beta[i]) ++between;
        }
        const int saved = beta[i];
        beta[i] = target;
        const long long sub = mn_rec(beta, mu, k + 1, memo);
        beta[i] = saved;
        total += between % 2 ? -sub : sub;
    }
    memo.emplace(key, total);
    return total;
}

BigInt big_factorial(int n) {
    BigInt r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

}  // namespace

long long character(const Partition& lambda, const Partition& mu) {
    const int n = std::accumulate(lambda.begin(), lambda.end(), 0);
    if (std::accumulate(mu.begin(), mu.end(), 0) != n) throw UsageError("character arguments of different size");
    std::vector<int> beta = beta_set(lambda);
    std::map<std::pair<std::vector<int>, std::size_t>, long long> memo;
    return mn_rec(beta, mu, 0, memo);
}

std::vector<std::vector<long long>> character_table(int n) {
    const auto ps = partitions(n);
    std::vector<std::vector<long long>> table(ps.size(), std::vector<long long>(ps.size()));
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = 0; j < ps.size(); ++j) table[i][j] = character(ps[i], ps[j]);
    }
    return table;
}

BigInt frobenius_count(int d, int h, int w) {
    if (d < 1 || h < 0 || w < 0) throw UsageError("frobenius_count needs d >= 1, h >= 0, w >= 0");
    if (d > kMaxFrobeniusDegree) {
        throw Unsupported("character table of S_" + std::to_string(d) + " is beyond the supported degree " +
                          std::to_string(kMaxFrobeniusDegree));
    }
    if (d == 1) return w == 0 ? BigInt(1) : BigInt(0);

    const BigInt order = big_factorial(d);
    const long long class_size = static_cast<long long>(d) * (d - 1) / 2;
    Partition tau_type{2};
    tau_type.resize(d - 1, 1);
    const Partition identity_type(d, 1);

    BigInt sum = 0;
    for (const auto& lambda : partitions(d)) {
        const long long dim = character(lambda, identity_type);
        const long long at_tau = character(lambda, tau_type);
        if ((class_size * at_tau) % dim != 0) throw std::logic_error("central character is not integral");
        const BigInt omega = BigInt(class_size * at_tau / dim);
        const BigInt index = order / dim;
        BigInt term = BigInt(dim) * dim * boost::multiprecision::pow(omega, static_cast<unsigned>(w)) *
                      boost::multiprecision::pow(index, static_cast<unsigned>(2 * h));
        sum += term;
    }
    if (sum % order != 0) throw std::logic_error("character sum is not divisible by |G|");
    return sum / order;
}

}  // namespace hurwitz
