#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hurwitz {

using BigInt = boost::multiprecision::cpp_int;

using Partition = std::vector<int>;

/// Partitions of n in reverse lexicographic order, (n) first.
std::vector<Partition> partitions(int n);

/// Irreducible character chi_lambda of S_n at the class of cycle type mu,
/// by the Murnaghan-Nakayama rule.
long long character(const Partition& lambda, const Partition& mu);

/// Character table of S_n: rows indexed by partitions(n) as irreducibles,
/// columns by partitions(n) as classes.
std::vector<std::vector<long long>> character_table(int n);

/// Largest degree accepted by frobenius_count.
inline constexpr int kMaxFrobeniusDegree = 12;

/**
 * Number of tuples (t_1..t_w; a_1,b_1..a_h,b_h) in S_d with every t_j a
 * transposition and t_1...t_w [a_1,b_1]...[a_h,b_h] = 1:
 *
 *   N = |G|^{2h-1} sum_chi chi(1)^{2-2h} (|C| chi(tau) / chi(1))^w.
 *
 * Evaluated in exact integers as
 *   N = sum_chi chi(1)^2 omega_chi^w (|G|/chi(1))^{2h} / |G|,
 * where omega_chi = |C| chi(tau) / chi(1) is an integer.
 */
BigInt frobenius_count(int d, int h, int w);

}  // namespace hurwitz
