#pragma once

#include <vector>

#include "fermi/qalg.hpp"

namespace fermi {

using Partition = std::vector<int>;
using Composition = std::vector<int>;
using Word = std::vector<int>;
using Tableau = std::vector<std::vector<int>>;

bool is_partition(const std::vector<int>& v);
int size_of(const std::vector<int>& v);
Partition trimmed(const Composition& c);  // drop trailing zeros
Partition sorted_partition(const Composition& c);
// all partitions of n, reverse lexicographic
std::vector<Partition> partitions(int n);
std::vector<Partition> partitions_in_box(int n, int max_part, int max_len);
// all compositions of n into positive parts
std::vector<Composition> compositions(int n);
// all compositions of n with exactly k parts (zeros allowed)
std::vector<Composition> weak_compositions(int n, int k);
long n_statistic(const Partition& mu);  // sum (i-1) mu_i
Partition conjugate(const Partition& p);

std::vector<Tableau> enumerate_ssyt(const Partition& shape, const Composition& content);
Word reading_word(const Tableau& t);  // bottom row first, rows left to right
Tableau insertion_tableau(const Word& w);  // Schensted row insertion
void row_insert(Tableau& t, int x);
Composition content_of(const Word& w);

long charge(const Word& w);
IntPolynomial kostka_foulkes(const Partition& lambda, const Partition& mu);
Int kostka_number(const Partition& lambda, const Composition& mu);

}  // namespace fermi
